//! Plain-text model files.
//!
//! ```text
//! # the two-element chain
//! name: two
//! elements: 0 1
//! unit: 1
//! leq:
//!   1 1
//!   0 1
//! op:
//!   0 0
//!   0 1
//! kappa: 0 1
//! bang: 0 1
//! ```
//!
//! `leq` rows hold 0/1 flags, `op` rows element names. `kappa: centre`
//! derives κ from the centre. Residuals are always computed, and a file that
//! fails validation is refused.

use std::collections::BTreeMap;

use super::{center_kappa, validate, AlgebraError, FinBiclosedPoset};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}` section")]
    Missing(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("model fails validation: {0}")]
    Invalid(String),
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, ModelFileError> {
    Err(ModelFileError::Syntax {
        line,
        message: message.into(),
    })
}

/// Line of the key, inline words, indented rows.
type Section = (usize, Vec<String>, Vec<Vec<String>>);

pub fn parse_model(text: &str) -> Result<FinBiclosedPoset, ModelFileError> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with(char::is_whitespace) {
            let Some(key) = &current else {
                return syntax(line_no, "indented row outside a section");
            };
            let row = line.split_whitespace().map(str::to_string).collect();
            sections.get_mut(key).unwrap().2.push(row);
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return syntax(line_no, "expected `key: ...`");
        };
        let key = key.trim().to_string();
        if sections.contains_key(&key) {
            return syntax(line_no, format!("duplicate section `{key}`"));
        }
        let words = rest.split_whitespace().map(str::to_string).collect();
        sections.insert(key.clone(), (line_no, words, vec![]));
        current = Some(key);
    }

    let get = |k: &'static str| sections.get(k).ok_or(ModelFileError::Missing(k));
    let names = get("elements")?.1.clone();
    let n = names.len();
    let index = |line: usize, w: &str| -> Result<usize, ModelFileError> {
        names
            .iter()
            .position(|x| x == w)
            .map_or_else(|| syntax(line, format!("unknown element `{w}`")), Ok)
    };
    let (uline, uw, _) = get("unit")?;
    if uw.len() != 1 {
        return syntax(*uline, "unit takes one element");
    }
    let unit = index(*uline, &uw[0])?;

    let (lline, _, lrows) = get("leq")?;
    if lrows.len() != n || lrows.iter().any(|r| r.len() != n) {
        return syntax(*lline, format!("leq needs {n} rows of {n} flags"));
    }
    let leq = lrows
        .iter()
        .map(|r| {
            r.iter()
                .map(|w| match w.as_str() {
                    "1" => Ok(true),
                    "0" => Ok(false),
                    _ => syntax(*lline, format!("bad flag `{w}`")),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let (oline, _, orows) = get("op")?;
    if orows.len() != n || orows.iter().any(|r| r.len() != n) {
        return syntax(*oline, format!("op needs {n} rows of {n} elements"));
    }
    let op = orows
        .iter()
        .map(|r| r.iter().map(|w| index(*oline, w)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;

    let label = sections
        .get("name")
        .map(|(_, w, _)| w.join(" "))
        .unwrap_or_else(|| "model".into());
    let mut m = FinBiclosedPoset::from_tables(&label, names.clone(), leq, op, unit)?;

    let unary = |key: &str| -> Result<Option<Vec<usize>>, ModelFileError> {
        match sections.get(key) {
            None => Ok(None),
            Some((line, words, _)) => {
                if words.len() != n {
                    return syntax(*line, format!("{key} needs {n} elements"));
                }
                words.iter().map(|w| index(*line, w)).collect::<Result<_, _>>().map(Some)
            }
        }
    };
    m.kappa = match sections.get("kappa") {
        Some((_, w, _)) if w.len() == 1 && w[0] == "centre" => Some(center_kappa(&m)?),
        _ => unary("kappa")?,
    };
    m.bang = unary("bang")?;
    for key in sections.keys() {
        if !["name", "elements", "unit", "leq", "op", "kappa", "bang"].contains(&key.as_str()) {
            return syntax(sections[key].0, format!("unknown section `{key}`"));
        }
    }

    let report = validate(&m);
    if !report.ok() {
        let msgs: Vec<String> = report.failures.iter().map(|f| f.to_string()).collect();
        return Err(ModelFileError::Invalid(msgs.join("; ")));
    }
    Ok(m)
}

pub fn write_model(m: &FinBiclosedPoset) -> String {
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", m.label));
    out.push_str(&format!("elements: {}\n", m.names.join(" ")));
    out.push_str(&format!("unit: {}\n", m.names[m.unit]));
    out.push_str("leq:\n");
    for row in &m.leq {
        let r: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&format!("  {}\n", r.join(" ")));
    }
    out.push_str("op:\n");
    for row in &m.op {
        let r: Vec<&str> = row.iter().map(|&x| m.names[x].as_str()).collect();
        out.push_str(&format!("  {}\n", r.join(" ")));
    }
    for (key, t) in [("kappa", &m.kappa), ("bang", &m.bang)] {
        if let Some(t) = t {
            let r: Vec<&str> = t.iter().map(|&x| m.names[x].as_str()).collect();
            out.push_str(&format!("{key}: {}\n", r.join(" ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rel_quantale, two};

    #[test]
    fn round_trip() {
        for m in [two(), rel_quantale(2)] {
            let back = parse_model(&write_model(&m)).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn refuses_invalid_models() {
        let text = "elements: 0 1\nunit: 1\nleq:\n  1 1\n  0 1\nop:\n  0 0\n  0 1\nbang: 1 1\n";
        assert!(matches!(parse_model(text), Err(ModelFileError::Invalid(_))));
        let text = "elements: 0 1\nunit: 1\nleq:\n  1 1\n  0 1\nop:\n  0 0\n  0 1\nkappa: centre\n";
        assert_eq!(parse_model(text).unwrap().kappa, Some(vec![0, 1]));
        assert!(matches!(parse_model("elements: 0\n"), Err(ModelFileError::Missing("unit"))));
    }
}
