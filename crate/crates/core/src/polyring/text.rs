//! Text and JSON forms of [`MultiPoly`], and exact rational literals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::MultiPoly;
use crate::error::{Error, Result};

/// `x^2 - 2*x + 2*y`, terms in canonical order; `0` for the zero polynomial.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (exps, coeff)) in self.terms().enumerate() {
            let negative = coeff.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = coeff.abs();
            let factors: Vec<String> = self
                .variables()
                .iter()
                .zip(exps)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Accepts integers, identifiers, `+ - * ^` and parentheses.
impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::PolyParse(format!(
                "unexpected `{}`",
                parser.tokens[parser.pos]
            )));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(n) => write!(f, "{n}"),
            Token::Ident(s) => write!(f, "{s}"),
            Token::Op(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Int(s[start..i].parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token::Ident(s[start..i].to_string()));
        } else if "+-*^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::PolyParse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.peek_op() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.tokens.get(self.pos) {
            Some(Token::Int(n)) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| Error::PolyParse(format!("exponent `{n}` too large")))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(Error::PolyParse("expected an integer exponent after `^`".into())),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::PolyParse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Int(n) => Ok(MultiPoly::constant(n)),
            Token::Ident(name) => Ok(MultiPoly::var(&name)),
            Token::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::PolyParse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::Op(c) => Err(Error::PolyParse(format!("unexpected `{c}`"))),
        }
    }
}

/// Wire form: `{"variables": [...], "terms": [{"coeff": "1", "exp": [..]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<u32>,
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        PolyJson {
            variables: p.variables().to_vec(),
            terms: p
                .terms()
                .map(|(e, c)| TermJson {
                    coeff: c.to_string(),
                    exp: e.to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        let terms = j
            .terms
            .into_iter()
            .map(|t| {
                let c: BigInt = t
                    .coeff
                    .parse()
                    .map_err(|_| Error::PolyParse(format!("bad coefficient `{}`", t.coeff)))?;
                Ok((t.exp, c))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(&j.variables, terms)
    }
}

impl MultiPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::PolyParse(e.to_string()))?;
        Self::try_from(j)
    }
}

/// Parses `p/q` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_forms() {
        let p: MultiPoly = "x^2 - 2*x + 2*y".parse().unwrap();
        assert_eq!(p.to_string(), "x^2 - 2*x + 2*y");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(MultiPoly::one().to_string(), "1");
        assert_eq!("-x + 1".parse::<MultiPoly>().unwrap().to_string(), "-x + 1");
        assert_eq!("-(3)".parse::<MultiPoly>().unwrap().to_string(), "-3");
        assert_eq!("y*x*x".parse::<MultiPoly>().unwrap().to_string(), "x^2*y");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x +", "(x", "x^y", "x ^ -1", "2 $ 3", "x)"] {
            assert!(bad.parse::<MultiPoly>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn json_matches_documented_layout() {
        let p: MultiPoly = "x^2 - 2*x + 2*y".parse().unwrap();
        assert_eq!(
            p.to_json(),
            r#"{"variables":["x","y"],"terms":[{"coeff":"1","exp":[2,0]},{"coeff":"-2","exp":[1,0]},{"coeff":"2","exp":[0,1]}]}"#
        );
        let spaced = r#"{"variables": ["x","y"], "terms": [{"coeff": "1", "exp": [2,0]}, {"coeff": "-2", "exp": [1,0]}, {"coeff": "2", "exp": [0,1]}]}"#;
        assert_eq!(MultiPoly::from_json(spaced).unwrap(), p);
        assert_eq!(MultiPoly::zero().to_json(), r#"{"variables":[],"terms":[]}"#);
    }

    #[test]
    fn json_rejects_malformed_terms() {
        assert!(MultiPoly::from_json(r#"{"variables":["x"],"terms":[{"coeff":"1","exp":[1,2]}]}"#).is_err());
        assert!(MultiPoly::from_json(r#"{"variables":["x"],"terms":[{"coeff":"one","exp":[1]}]}"#).is_err());
        assert!(MultiPoly::from_json(r#"{"variables":["x","x"],"terms":[]}"#).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-4").unwrap(), BigRational::from_integer((-4).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((0u32..4, 0u32..3, -50i64..50), 0..6).prop_map(|ts| {
            let vars = vec!["b_v_phi".to_string(), "x".to_string()];
            MultiPoly::from_terms(&vars, ts.into_iter().map(|(a, b, k)| (vec![a, b], BigInt::from(k)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(p in small_poly()) {
            prop_assert_eq!(p.to_string().parse::<MultiPoly>().unwrap(), p);
        }

        #[test]
        fn json_round_trip_is_byte_identical(p in small_poly()) {
            let once = p.to_json();
            let twice = MultiPoly::from_json(&once).unwrap().to_json();
            prop_assert_eq!(once, twice);
        }
    }
}
