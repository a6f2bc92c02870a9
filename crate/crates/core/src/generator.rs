//! Groupoids from short generator strings.
//!
//! | spec | groupoid |
//! |------|----------|
//! | `trg:<group>:<n>` | `n` objects, all isotropy groups equal to `<group>` |
//! | `pair:<n>` | pair groupoid on `n` objects |
//! | `trivial:<n>` | `n` objects, identities only |
//! | `equiv:<n>:<x>-<y>;...` | equivalence relation generated by the pairs |
//! | `action:<group>:<n>:<file>` | action groupoid, `file` holding the JSON matrix `act[x][g]` |
//! | `coprod:<spec>,<spec>,...` | coproduct; wrap nested specs in parentheses |
//!
//! A group is a name understood by [`GroupTable::by_name`] (`C2`..`C24`, `S3`, `D4`, `Q8`, ...)
//! or a path to a JSON group table.
//!
//! ```
//! use groupoid_burnside::generator::generate;
//!
//! let g = generate("coprod:trg:C2:2,pair:3").unwrap();
//! assert_eq!(g.num_objects(), 5);
//! assert_eq!(g.connected_components().len(), 2);
//! ```

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::group::{GroupError, GroupTable, RawGroup};
use crate::groupoid::{FiniteGroupoid, GroupoidError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("cannot parse generator `{spec}`: {reason}")]
    Syntax { spec: String, reason: String },
    #[error("cannot read `{path}`: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

impl GeneratorError {
    pub fn kind(&self) -> &'static str {
        match self {
            GeneratorError::Syntax { .. } => "GeneratorSyntax",
            GeneratorError::Io { .. } => "Io",
            GeneratorError::Group(e) => e.kind(),
            GeneratorError::Groupoid(e) => e.kind(),
        }
    }
}

/// The JSON form `{"gen": "<spec>"}`.
#[derive(Debug, Clone, Deserialize)]
pub struct GeneratorSpec {
    pub gen: String,
}

fn syntax(spec: &str, reason: impl Into<String>) -> GeneratorError {
    GeneratorError::Syntax {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn read(path: &str) -> Result<String, GeneratorError> {
    std::fs::read_to_string(path).map_err(|e| GeneratorError::Io {
        path: path.to_string(),
        reason: e.to_string(),
    })
}

/// A named group, or a group table read from a JSON file.
pub fn group(name: &str) -> Result<GroupTable, GeneratorError> {
    match GroupTable::by_name(name) {
        Ok(g) => Ok(g),
        Err(e) if Path::new(name).is_file() => {
            let raw: RawGroup = serde_json::from_str(&read(name)?).map_err(|j| {
                syntax(name, format!("group file: {j} (and not a group name: {e})"))
            })?;
            Ok(GroupTable::from_raw(&raw)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn count(spec: &str, s: &str) -> Result<usize, GeneratorError> {
    s.trim()
        .parse()
        .map_err(|_| syntax(spec, format!("`{s}` is not a count")))
}

/// Splits on commas outside parentheses and strips one layer of parentheses from each part.
fn split_top(spec: &str, s: &str) -> Result<Vec<String>, GeneratorError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(syntax(spec, "unbalanced parentheses"));
        }
        if c == ',' && depth == 0 {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(syntax(spec, "unbalanced parentheses"));
    }
    parts.push(cur);
    Ok(parts
        .into_iter()
        .map(|p| {
            let t = p.trim();
            match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                Some(inner) => inner.to_string(),
                None => t.to_string(),
            }
        })
        .collect())
}

pub fn generate(spec: &str) -> Result<FiniteGroupoid, GeneratorError> {
    let spec = spec.trim();
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| syntax(spec, "expected `<kind>:...`"))?;
    match head {
        "trg" => {
            let (name, n) = rest
                .rsplit_once(':')
                .ok_or_else(|| syntax(spec, "expected trg:<group>:<n>"))?;
            Ok(FiniteGroupoid::trg(&group(name)?, count(spec, n)?))
        }
        "pair" => Ok(FiniteGroupoid::pair_groupoid(count(spec, rest)?)),
        "trivial" => Ok(FiniteGroupoid::trivial(count(spec, rest)?)),
        "equiv" => {
            let (n, pairs) = rest.split_once(':').unwrap_or((rest, ""));
            let n = count(spec, n)?;
            let pairs = pairs
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(|p| {
                    let (x, y) = p
                        .split_once('-')
                        .ok_or_else(|| syntax(spec, format!("`{p}` is not x-y")))?;
                    Ok((count(spec, x)?, count(spec, y)?))
                })
                .collect::<Result<Vec<_>, GeneratorError>>()?;
            Ok(FiniteGroupoid::generated_equivalence(n, &pairs)?)
        }
        "action" => {
            let mut it = rest.splitn(3, ':');
            let (Some(name), Some(n), Some(file)) = (it.next(), it.next(), it.next()) else {
                return Err(syntax(spec, "expected action:<group>:<n>:<table-file>"));
            };
            let g = group(name)?;
            let n = count(spec, n)?;
            let act: Vec<Vec<usize>> = serde_json::from_str(&read(file)?)
                .map_err(|e| syntax(spec, format!("action table: {e}")))?;
            if act.len() != n {
                return Err(syntax(
                    spec,
                    format!("action table has {} rows, expected {n}", act.len()),
                ));
            }
            Ok(FiniteGroupoid::action_groupoid(&g, &act)?)
        }
        "coprod" => {
            let parts = split_top(spec, rest)?
                .iter()
                .map(|p| generate(p))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FiniteGroupoid::coproduct(&parts))
        }
        _ => Err(syntax(spec, format!("unknown kind `{head}`"))),
    }
}

/// Accepts either a bare spec or the JSON object `{"gen": "<spec>"}`.
pub fn generate_from_text(text: &str) -> Result<FiniteGroupoid, GeneratorError> {
    let t = text.trim();
    if t.starts_with('{') {
        let s: GeneratorSpec = serde_json::from_str(t).map_err(|e| syntax(t, e.to_string()))?;
        generate(&s.gen)
    } else {
        generate(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_specs() {
        let g = generate("trg:C3:2").unwrap();
        assert_eq!((g.num_objects(), g.num_arrows()), (2, 12));
        assert_eq!(generate("pair:4").unwrap().num_arrows(), 16);
        assert_eq!(generate("trivial:3").unwrap().num_arrows(), 3);
        let e = generate("equiv:5:0-1;2-3").unwrap();
        assert_eq!(e.connected_components().len(), 3);
        assert_eq!(generate("trg:C2xC2:1").unwrap().num_arrows(), 4);
    }

    #[test]
    fn nested_coproducts() {
        let g = generate("coprod:(coprod:pair:1,pair:2),trg:S3:1").unwrap();
        assert_eq!(g.num_objects(), 4);
        assert_eq!(g.connected_components().len(), 3);
        let j = generate_from_text(r#"{"gen": "coprod:pair:1,pair:1"}"#).unwrap();
        assert_eq!(j.connected_components().len(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            generate("blob:3"),
            Err(GeneratorError::Syntax { .. })
        ));
        assert!(matches!(
            generate("pair:x"),
            Err(GeneratorError::Syntax { .. })
        ));
        assert!(matches!(
            generate("coprod:(pair:1"),
            Err(GeneratorError::Syntax { .. })
        ));
        assert!(matches!(
            generate("trg:W9:1"),
            Err(GeneratorError::Group(_))
        ));
    }

    #[test]
    fn action_from_file() {
        let dir = std::env::temp_dir().join(format!("gen-action-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("act.json");
        std::fs::write(&file, "[[0,1],[1,0]]").unwrap();
        // C2 acting on two points by the swap: one component with trivial isotropy
        let g = generate(&format!("action:C2:2:{}", file.display())).unwrap();
        assert_eq!(g.connected_components().len(), 1);
        assert_eq!(g.num_arrows(), 4);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
