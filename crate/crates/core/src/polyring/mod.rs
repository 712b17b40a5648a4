//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients over named variables.
//!
//! A polynomial keeps its variable list sorted and trimmed to the variables
//! that actually occur, so structural equality is mathematical equality.
//! Terms are kept in graded lexicographic order, largest first.

mod assignment;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use assignment::ParameterAssignment;
pub use text::{parse_rational, PolyJson, TermJson};

/// Exponent vector ordered so that iteration runs from the largest monomial
/// in graded lexicographic order down to the constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Monomial(Vec<u32>);

impl Monomial {
    fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Default for MultiPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        Self {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), BigInt::one());
        Self {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// `name^exp`.
    pub fn monomial(name: &str, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![exp]), BigInt::one());
        Self {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs over `vars`.
    /// Variables may be in any order; like terms are combined.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let sorted: Vec<String> = order.iter().map(|&i| vars[i].clone()).collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::PolyParse("duplicate variable".into()));
        }
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (exps, coeff) in terms {
            if exps.len() != vars.len() {
                return Err(Error::DimensionMismatch {
                    expected: vars.len(),
                    found: exps.len(),
                });
            }
            let key = Monomial(order.iter().map(|&i| exps[i]).collect());
            *map.entry(key).or_default() += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self { vars: sorted, terms: map }.trimmed())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 if self.vars.is_empty() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    /// Sorted names of the variables that occur.
    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order as `(exponents, coefficient)`, exponents
    /// aligned with [`variables`](Self::variables).
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(k) => self.terms.keys().map(|m| m.0[k]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coefficient(&self, monomial: &[(&str, u32)]) -> BigInt {
        let mut exps = vec![0u32; self.vars.len()];
        for &(name, e) in monomial {
            match self.vars.iter().position(|v| v == name) {
                Some(k) => exps[k] += e,
                None if e == 0 => {}
                None => return BigInt::zero(),
            }
        }
        self.terms.get(&Monomial(exps)).cloned().unwrap_or_default()
    }

    /// Keeps the terms for which `keep(variables, exponents)` holds.
    pub fn filter_terms(&self, mut keep: impl FnMut(&[String], &[u32]) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(&self.vars, &m.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self {
            vars: self.vars.clone(),
            terms,
        }
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|k| self.terms.keys().any(|m| m.0[k] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        self.vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let e = m.0.iter().zip(&used).filter(|(_, &u)| u).map(|(&e, _)| e).collect();
                (Monomial(e), c)
            })
            .collect();
        self
    }

    /// Re-expresses the terms over a sorted superset of this polynomial's variables.
    fn aligned_to(&self, vars: &[String]) -> BTreeMap<Monomial, BigInt> {
        if self.vars == vars {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("superset of variables"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; vars.len()];
                for (k, &x) in m.0.iter().enumerate() {
                    e[map[k]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
        if a == b {
            return a.to_vec();
        }
        let mut v: Vec<String> = a.iter().chain(b).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let vars = Self::union_vars(&self.vars, &other.vars);
        let mut terms = self.aligned_to(&vars);
        for (m, c) in other.aligned_to(&vars) {
            match terms.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        Self { vars, terms }.trimmed()
    }

    pub fn add_assign(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.vars == other.vars {
            for (m, c) in &other.terms {
                match self.terms.entry(m.clone()) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c.clone());
                    }
                }
            }
            *self = std::mem::take(self).trimmed();
        } else {
            *self = Self::add(self, other);
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let vars = Self::union_vars(&self.vars, &other.vars);
        let a = self.aligned_to(&vars);
        let b = other.aligned_to(&vars);
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                *terms.entry(Monomial(e)).or_default() += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self { vars, terms }.trimmed()
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Self::mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = Self::mul(&base, &base);
            }
        }
        acc
    }

    /// Replaces every occurrence of `var` by `value`, expanded exactly.
    pub fn substitute(&self, var: &str, value: &Self) -> Self {
        let Some(k) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        // Group by the exponent of `var`, then combine with powers of `value`.
        let mut by_power: BTreeMap<u32, BTreeMap<Monomial, BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let p = std::mem::replace(&mut e[k], 0);
            by_power.entry(p).or_default().insert(Monomial(e), c.clone());
        }
        let mut result = Self::zero();
        let mut power = Self::one();
        let mut at = 0u32;
        for (p, terms) in by_power {
            while at < p {
                power = Self::mul(&power, value);
                at += 1;
            }
            let rest = Self {
                vars: self.vars.clone(),
                terms,
            }
            .trimmed();
            result.add_assign(&Self::mul(&rest, &power));
        }
        result
    }

    /// Exact evaluation at a rational point; every variable must be assigned.
    pub fn eval_rational(&self, point: &HashMap<String, BigRational>) -> Result<BigRational> {
        let values: Vec<&BigRational> = self
            .vars
            .iter()
            .map(|v| point.get(v).ok_or_else(|| Error::UnassignedVariable(v.clone())))
            .collect::<Result<_>>()?;
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (val, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow((*val).clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact quotient `self / divisor`; fails unless the division leaves no
    /// remainder.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = divisor.as_constant() {
            let mut terms = BTreeMap::new();
            for (m, a) in &self.terms {
                let (q, r) = a.div_rem(&c);
                if !r.is_zero() {
                    return Err(Error::NotExact);
                }
                terms.insert(m.clone(), q);
            }
            return Ok(Self {
                vars: self.vars.clone(),
                terms,
            });
        }
        let vars = Self::union_vars(&self.vars, &divisor.vars);
        let mut rem = Self {
            vars: vars.clone(),
            terms: self.aligned_to(&vars),
        };
        let d = Self {
            vars: vars.clone(),
            terms: divisor.aligned_to(&vars),
        };
        let (lead_m, lead_c) = d.terms.iter().next().expect("nonzero divisor");
        let mut quotient: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        while let Some((m, c)) = rem.terms.iter().next() {
            if !lead_m.divides(m) {
                return Err(Error::NotExact);
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(Error::NotExact);
            }
            let qm = Monomial(m.0.iter().zip(&lead_m.0).map(|(a, b)| a - b).collect());
            // rem -= (qc * x^qm) * d
            for (dm, dc) in &d.terms {
                let e = Monomial(dm.0.iter().zip(&qm.0).map(|(a, b)| a + b).collect());
                let entry = rem.terms.entry(e.clone()).or_default();
                *entry -= &qc * dc;
                if entry.is_zero() {
                    rem.terms.remove(&e);
                }
            }
            quotient.insert(qm, qc);
        }
        Ok(Self {
            vars,
            terms: quotient,
        }
        .trimmed())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$method(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                MultiPoly::$method(&self, &rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(&self)
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        let mut acc = MultiPoly::zero();
        for p in iter {
            acc.add_assign(&p);
        }
        acc
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}
