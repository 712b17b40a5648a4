use std::collections::BTreeMap;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::matroid::{BinaryMatroid, GroundLabel};

/// Per-element `(a, b)` parameter pair: `a` weights subsets containing the
/// element, `b` those that omit it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParameterAssignment {
    entries: BTreeMap<GroundLabel, (MultiPoly, MultiPoly)>,
}

impl ParameterAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Independent indeterminates `a_<v>_<kind>`, `b_<v>_<kind>` for every
    /// ground element.
    pub fn symbolic(m: &BinaryMatroid) -> Self {
        let entries = m
            .labels()
            .iter()
            .map(|l| (l.clone(), (MultiPoly::var(&l.a_var()), MultiPoly::var(&l.b_var()))))
            .collect();
        Self { entries }
    }

    /// The same `(a, b)` for every element.
    pub fn uniform(m: &BinaryMatroid, a: &MultiPoly, b: &MultiPoly) -> Self {
        let entries = m
            .labels()
            .iter()
            .map(|l| (l.clone(), (a.clone(), b.clone())))
            .collect();
        Self { entries }
    }

    pub fn insert(&mut self, label: GroundLabel, a: MultiPoly, b: MultiPoly) {
        self.entries.insert(label, (a, b));
    }

    pub fn get(&self, label: &GroundLabel) -> Option<&(MultiPoly, MultiPoly)> {
        self.entries.get(label)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroundLabel, &(MultiPoly, MultiPoly))> {
        self.entries.iter()
    }

    /// Parameter pairs in the matroid's column order.
    pub fn for_matroid(&self, m: &BinaryMatroid) -> Result<Vec<(MultiPoly, MultiPoly)>> {
        m.labels()
            .iter()
            .map(|l| {
                self.entries
                    .get(l)
                    .cloned()
                    .ok_or_else(|| Error::MissingAssignment(l.to_string()))
            })
            .collect()
    }

    /// Parses one entry per line: `<vertex> <phi|chi|psi> a=<poly> b=<poly>`.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let err = |message: String| Error::ParamParse {
                line: line_no,
                message,
            };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut head = line.splitn(3, char::is_whitespace);
            let (Some(vertex), Some(kind), Some(rest)) = (head.next(), head.next(), head.next()) else {
                return Err(err("expected `<vertex> <kind> a=<poly> b=<poly>`".into()));
            };
            let kind = kind.parse().map_err(|_| err(format!("unknown kind `{kind}`")))?;
            let rest = rest.trim_start();
            let a_text = rest
                .strip_prefix("a=")
                .ok_or_else(|| err("missing `a=`".into()))?;
            let (a_text, b_text) = split_b(a_text).ok_or_else(|| err("missing `b=`".into()))?;
            let a: MultiPoly = a_text.parse().map_err(|e| err(format!("{e}")))?;
            let b: MultiPoly = b_text.parse().map_err(|e| err(format!("{e}")))?;
            let label = GroundLabel::new(vertex, kind);
            if out.entries.contains_key(&label) {
                return Err(err(format!("duplicate entry for {label}")));
            }
            out.insert(label, a, b);
        }
        Ok(out)
    }
}

/// Splits `"<a> b=<b>"` at the last whitespace-preceded `b=`.
fn split_b(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    (1..bytes.len().saturating_sub(1))
        .rev()
        .find(|&i| &bytes[i..i + 2] == b"b=" && bytes[i - 1].is_ascii_whitespace())
        .map(|i| (s[..i].trim(), s[i + 2..].trim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::LoopedGraph;

    #[test]
    fn parses_parameter_files() {
        let text = "# weights\nv phi a=1 b=1\nv chi a=x - 1 b=1\n\nv psi a=0 b=y^2 + 1\n";
        let asg = ParameterAssignment::parse(text).unwrap();
        assert_eq!(asg.len(), 3);
        let (a, b) = asg.get(&GroundLabel::chi("v")).unwrap();
        assert_eq!(a, &"x - 1".parse().unwrap());
        assert!(b.is_one());
        let (a, b) = asg.get(&GroundLabel::psi("v")).unwrap();
        assert!(a.is_zero());
        assert_eq!(b, &"y^2 + 1".parse().unwrap());
    }

    #[test]
    fn rejects_bad_parameter_lines() {
        for bad in [
            "v phi a=1",
            "v phi b=1 a=1",
            "v rho a=1 b=1",
            "v phi a=(1 b=1",
            "v",
            "v phi a=1 b=1\nv phi a=2 b=2",
        ] {
            assert!(
                matches!(ParameterAssignment::parse(bad), Err(Error::ParamParse { .. })),
                "accepted {bad:?}"
            );
        }
    }

    #[test]
    fn missing_entries_are_reported() {
        let m = BinaryMatroid::build_ia(&"vertices: v".parse::<LoopedGraph>().unwrap());
        let asg = ParameterAssignment::parse("v phi a=1 b=1").unwrap();
        assert_eq!(
            asg.for_matroid(&m),
            Err(Error::MissingAssignment("v_chi".into()))
        );
        assert_eq!(ParameterAssignment::symbolic(&m).for_matroid(&m).unwrap().len(), 2);
    }
}
