//! The `blowup` command-line tool: argument parsing, configuration, report
//! serialization and the reproduction experiments.
//!
//! Exit codes: 0 on success (including a timed-out search, reported with
//! status `timeout`), 2 on a verified negative answer, 1 on any error.

pub mod app;
pub mod config;
mod input;
pub mod report;
pub mod repro;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde_json::Value;

use app::{Cli, Outcome};
use config::{Format, RunConfig};
use report::{Report, Timings, VERSION};

pub const EXIT_ERROR: i32 = 1;

/// Parses `argv` (program name first), runs the command, writes the report
/// and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    let cfg = match RunConfig::resolve(&cli.global) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    if let Some(w) = cfg.workers {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let (outcome, wall_ms) = app::timed(|| app::execute(&cli.command, &cfg));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let code = outcome.status.exit_code();
    let text = match render(&argv, &cfg, outcome, wall_ms) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let written = match &cfg.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => code,
        Err(e) => fail(&e),
    }
}

fn fail(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_ERROR
}

fn render(argv: &[OsString], cfg: &RunConfig, outcome: Outcome, wall_ms: u64) -> Result<String, String> {
    match cfg.format {
        Format::Json => {
            let report = Report {
                command: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
                config: cfg.clone(),
                status: outcome.status,
                results: outcome.results,
                timings: Timings { wall_ms, parts: outcome.timings },
                version: VERSION.into(),
            };
            let mut s = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        Format::Dot => match outcome.graph {
            Some(g) => Ok(g.to_dot()),
            None => Err("dot output is only available for commands that produce a graph".into()),
        },
        Format::Csv => Ok(match outcome.graph {
            Some(g) => {
                let mut s = String::from("u,v\n");
                for (a, b) in g.edges() {
                    s.push_str(&format!("{},{}\n", a + 1, b + 1));
                }
                s
            }
            None => results_csv(&outcome.results),
        }),
    }
}

/// `key,value` rows for the top-level fields; nested values as JSON text.
fn results_csv(results: &Value) -> String {
    let mut s = String::from("key,value\n");
    let cell = |v: &Value| {
        let raw = match v {
            Value::String(x) => x.clone(),
            other => other.to_string(),
        };
        if raw.contains([',', '"', '\n']) {
            format!("\"{}\"", raw.replace('"', "\"\""))
        } else {
            raw
        }
    };
    match results {
        Value::Object(map) => {
            for (k, v) in map {
                s.push_str(&format!("{k},{}\n", cell(v)));
            }
        }
        other => s.push_str(&format!("result,{}\n", cell(other))),
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        let v = serde_json::json!({"a": 1, "b": [1, 2], "c": "x\"y"});
        assert_eq!(results_csv(&v), "key,value\na,1\nb,\"[1,2]\"\nc,\"x\"\"y\"\n");
    }
}
