use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::coloring::{has_admissible_subset, ColoringJson, OrderedColoring};
use crate::error::{Error, Result};

pub const CHECKER_VERSION: &str = concat!("blowup-core ", env!("CARGO_PKG_VERSION"));

/// A coloring claimed to have no admissible k-subset, i.e. a proof that
/// f(k) > n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub k: usize,
    pub n: usize,
    /// 1-based red pairs, as in the coloring JSON.
    pub red: Vec<[usize; 2]>,
    /// Seconds since the Unix epoch.
    #[serde(default)]
    pub checked_at: u64,
    pub checker_version: String,
}

impl WitnessCertificate {
    pub fn new(k: usize, coloring: &OrderedColoring) -> Self {
        let json = ColoringJson::from(coloring.clone());
        let checked_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self { k, n: json.n, red: json.red, checked_at, checker_version: CHECKER_VERSION.into() }
    }

    pub fn coloring(&self) -> Result<OrderedColoring> {
        OrderedColoring::try_from(ColoringJson { n: self.n, red: self.red.clone() })
    }
}

/// Full exhaustive check: true iff no k-subset of the stored coloring is
/// admissible.
pub fn check_certificate(cert: &WitnessCertificate) -> Result<bool> {
    let c = cert.coloring()?;
    if cert.k == 0 || cert.k > c.n() {
        return Err(Error::ParameterOutOfRange { name: "k", detail: format!("k={} with n={}", cert.k, c.n()) });
    }
    Ok(has_admissible_subset(&c, cert.k)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let bad = OrderedColoring::from_red_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(check_certificate(&WitnessCertificate::new(4, &bad)).unwrap());
        let blue = OrderedColoring::all_blue(3);
        assert!(!check_certificate(&WitnessCertificate::new(3, &blue)).unwrap());
    }

    #[test]
    fn malformed_rejected() {
        let mut cert = WitnessCertificate::new(2, &OrderedColoring::all_blue(3));
        cert.red.push([0, 2]);
        assert!(check_certificate(&cert).is_err());
        let cert = WitnessCertificate::new(5, &OrderedColoring::all_blue(3));
        assert!(check_certificate(&cert).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = OrderedColoring::from_red_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let cert = WitnessCertificate::new(4, &c);
        let s = serde_json::to_string(&cert).unwrap();
        assert!(s.contains(r#""red":[[1,2],[3,4]]"#));
        let back: WitnessCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.coloring().unwrap(), c);
    }
}
