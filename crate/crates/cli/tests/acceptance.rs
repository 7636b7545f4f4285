//! One line per acceptance criterion. Runs as a plain binary so the lines
//! appear in `cargo test` output; the exit status is nonzero if any fails.

use std::time::Instant;

use blowup_cli::repro::{run, CRITERIA};

fn main() {
    // `cargo test -- --list` and similar harness probes pass flags; run only
    // for a plain invocation or an explicit filter.
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let filter: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    let start = Instant::now();
    let mut failed = 0;
    for c in &CRITERIA {
        let id = c.id.to_string();
        if !filter.is_empty() && !filter.iter().any(|x| **x == id || c.name.contains(x.as_str())) {
            continue;
        }
        let (r, t) = run(c.id);
        if !r.pass {
            failed += 1;
        }
        println!("criterion {id:>2} [{}] {}: {} ({t:.1?})", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    println!("acceptance: {failed} failed, total {:.1?}", start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
