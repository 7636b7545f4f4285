//! Reading module-defined JSON files, either bare or wrapped in a report.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

/// Parses `path` as `T`. A report written by this tool is also accepted: the
/// first of `results.<key>` for `key` in `keys` that parses is used, falling
/// back to `results` itself.
pub fn load<T: DeserializeOwned>(path: &Path, keys: &[&str]) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let direct = serde_json::from_str::<T>(&text);
    let err = match direct {
        Ok(v) => return Ok(v),
        Err(e) => e,
    };
    if let Ok(Value::Object(mut obj)) = serde_json::from_str::<Value>(&text) {
        if obj.contains_key("command") {
            if let Some(results) = obj.remove("results") {
                for k in keys {
                    if let Some(inner) = results.get(k) {
                        if let Ok(v) = serde_json::from_value(inner.clone()) {
                            return Ok(v);
                        }
                    }
                }
                return serde_json::from_value(results).map_err(|e| {
                    format!("{}: report results hold no usable {}: {e}", path.display(), keys.join("/"))
                });
            }
        }
    }
    Err(format!("{}: {err}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use blowup_core::OrderedGraph;

    #[test]
    fn bare_wrapped_and_malformed() {
        let dir = std::env::temp_dir().join(format!("blowup-input-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let bare = dir.join("g.json");
        std::fs::write(&bare, r#"{"n": 3, "edges": [[1, 2]]}"#).unwrap();
        let g: OrderedGraph = load(&bare, &[]).unwrap();
        assert_eq!(g.edge_count(), 1);

        let wrapped = dir.join("r.json");
        std::fs::write(&wrapped, r#"{"command": ["graph"], "results": {"graph": {"n": 2, "edges": [[1, 2]]}}}"#).unwrap();
        let g: OrderedGraph = load(&wrapped, &["poset", "graph"]).unwrap();
        assert_eq!(g.n(), 2);

        let bad = dir.join("bad.json");
        std::fs::write(&bad, "{\"n\": 3,\n \"edges\": [[1, 2]\n").unwrap();
        let e = load::<OrderedGraph>(&bad, &[]).unwrap_err();
        assert!(e.contains("line") && e.contains("column"), "{e}");
        let range = dir.join("range.json");
        std::fs::write(&range, r#"{"n": 2, "edges": [[1, 3]]}"#).unwrap();
        assert!(load::<OrderedGraph>(&range, &[]).unwrap_err().contains("out of range"));
    }
}
