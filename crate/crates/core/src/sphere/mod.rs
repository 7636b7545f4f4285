//! Spherical geometry and the geometric lower-bound construction.

pub mod construction;
pub mod geometry;
pub mod partition;
pub mod verify;

pub use construction::{build_construction, ConstructionGraph, ConstructionSpec, PointMode};
pub use geometry::{
    cap_measure, cap_measure_closed_form, check_be_quadruple, chord_to_angle, height_to_angle, max_pairwise_distance,
    dist, norm, quadruple_margin, random_unit, search_be_quadruples, QuadrupleSearchReport, UNIT_TOLERANCE,
};
pub use partition::{partition_sphere, Cell, SpherePartition};
pub use verify::{kernel_scan, verify_construction, ConstructionReport, KernelReport, VerifyOptions};
