//! The two-variable interlace polynomial
//! `q(G) = sum_S (x-1)^r(A[S]) (y-1)^(|S|-r(A[S]))`, computed by vertex-subset
//! expansion, by the local-complement and pivot recursions, and by reading
//! it off the transversal section of the identity-adjacency matroid.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::WordBasis;
use crate::graphs::LoopedGraph;
use crate::matroid::{BinaryMatroid, ElementKind};
use crate::polyring::{MultiPoly, ParameterAssignment};
use crate::tutte::{chunk_ranges, section_transversal_with, EnumOptions, TransversalScheme, VAR_U};

pub const VAR_X: &str = "x";
pub const VAR_Y: &str = "y";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Subset,
    Recursive,
    Section,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Subset, Method::Recursive, Method::Section];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Subset => "subset",
            Method::Recursive => "recursive",
            Method::Section => "section",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlaceResult {
    pub polynomial: MultiPoly,
    pub method: Method,
    pub graph_fingerprint: String,
}

/// `q(G)` by the chosen method, tagged with the graph's fingerprint.
pub fn interlace(g: &LoopedGraph, method: Method, opts: &EnumOptions) -> Result<InterlaceResult> {
    let polynomial = match method {
        Method::Subset => q_subset_with(g, opts)?,
        Method::Recursive => q_recursive(g),
        Method::Section => q_from_section_with(g, opts)?,
    };
    Ok(InterlaceResult {
        polynomial,
        method,
        graph_fingerprint: g.fingerprint(),
    })
}

pub fn q_subset(g: &LoopedGraph) -> Result<MultiPoly> {
    q_subset_with(g, &EnumOptions::default())
}

/// Sum over all `2^n` vertex subsets; ranks of principal submatrices are
/// tallied by `(rank, size)` and expanded once at the end.
pub fn q_subset_with(g: &LoopedGraph, opts: &EnumOptions) -> Result<MultiPoly> {
    let n = g.vertex_count();
    opts.check_ground(n)?;
    let rows = g.adjacency_words();
    let tally = |lo: u64, hi: u64| -> Vec<u64> {
        let mut counts = vec![0u64; (n + 1) * (n + 1)];
        for mask in lo..hi {
            let mut basis = WordBasis::default();
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                basis.insert(rows[i] & mask);
            }
            counts[basis.rank() * (n + 1) + mask.count_ones() as usize] += 1;
        }
        counts
    };
    let add = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    let chunks = chunk_ranges(1u64 << n, opts.parallel);
    let empty = || vec![0u64; (n + 1) * (n + 1)];
    let counts = if opts.parallel {
        chunks.into_par_iter().map(|(lo, hi)| tally(lo, hi)).reduce(empty, add)
    } else {
        chunks.into_iter().map(|(lo, hi)| tally(lo, hi)).fold(empty(), add)
    };

    let xm1 = x_minus_1();
    let ym1 = y_minus_1();
    let mut out = MultiPoly::zero();
    for rank in 0..=n {
        for size in rank..=n {
            let c = counts[rank * (n + 1) + size];
            if c > 0 {
                let term = xm1.pow(rank as u32).mul(&ym1.pow((size - rank) as u32));
                out.add_assign(&term.scale(&BigInt::from(c)));
            }
        }
    }
    Ok(out)
}

/// The recursion:
///
/// 1. isolated vertices contribute a factor `x` (looped) or `y` (unlooped);
/// 2. at the first looped vertex `v`: `q(G-v) + (x-1) q(G^v - v)`;
/// 3. otherwise at the first edge `vw`:
///    `q(G-v) + q(G^vw - w) - q(G^vw - v - w) + (x-1)^2 q(G^vw - v - w)`.
pub fn q_recursive(g: &LoopedGraph) -> MultiPoly {
    let x = MultiPoly::var(VAR_X);
    let y = MultiPoly::var(VAR_Y);
    let xm1 = x_minus_1();
    let xm1_sq = xm1.pow(2);
    q_rec(g.clone(), &Consts { x, y, xm1, xm1_sq })
}

struct Consts {
    x: MultiPoly,
    y: MultiPoly,
    xm1: MultiPoly,
    xm1_sq: MultiPoly,
}

fn q_rec(mut g: LoopedGraph, k: &Consts) -> MultiPoly {
    let mut factor = MultiPoly::one();
    for i in (0..g.vertex_count()).rev() {
        if g.is_isolated(i) {
            factor = factor.mul(if g.is_looped(i) { &k.x } else { &k.y });
            g = g.delete_index(i);
        }
    }
    if g.vertex_count() == 0 {
        return factor;
    }
    let rest = if let Some(v) = (0..g.vertex_count()).find(|&i| g.is_looped(i)) {
        let minus_v = q_rec(g.delete_index(v), k);
        let complemented = q_rec(g.local_complement_index(v).delete_index(v), k);
        minus_v.add(&k.xm1.mul(&complemented))
    } else {
        let (v, w) = g.edges()[0];
        let p = g.pivot_index(v, w);
        let minus_v = q_rec(g.delete_index(v), k);
        let p_minus_w = q_rec(p.delete_index(w), k);
        // Deleting the larger index first keeps the smaller one valid.
        let p_minus_vw = q_rec(p.delete_index(w).delete_index(v), k);
        minus_v
            .add(&p_minus_w)
            .sub(&p_minus_vw)
            .add(&k.xm1_sq.mul(&p_minus_vw))
    };
    factor.mul(&rest)
}

/// Parameters turning the section into `q`: `a(v_phi) = 1`,
/// `a(v_chi) = x - 1`, every `b = 1`, and `(0, 1)` on any `psi` elements.
pub fn q_assignment(m: &BinaryMatroid) -> ParameterAssignment {
    let one = MultiPoly::one();
    let mut asg = ParameterAssignment::new();
    for l in m.labels() {
        let a = match l.kind {
            ElementKind::Phi => one.clone(),
            ElementKind::Chi => x_minus_1(),
            ElementKind::Psi => MultiPoly::zero(),
        };
        asg.insert(l.clone(), a, one.clone());
    }
    asg
}

pub fn q_from_section(g: &LoopedGraph) -> Result<MultiPoly> {
    q_from_section_with(g, &EnumOptions::default())
}

pub fn q_from_section_with(g: &LoopedGraph, opts: &EnumOptions) -> Result<MultiPoly> {
    let m = BinaryMatroid::build_ia(g);
    let scheme = TransversalScheme::from_matroid(&m)?;
    let section = section_transversal_with(&m, &scheme, &q_assignment(&m), opts)?;
    section_to_q(&section)
}

/// Rewrites a section polynomial in `x` and `u` as a polynomial in `x` and
/// `y`: each `c(x) u^e` becomes `c(x) (y-1)^e / (x-1)^e`, the division being
/// exact. This realizes `s = y - 1`, `z = 1/(x-1)` without leaving the
/// polynomial ring.
pub fn section_to_q(section: &MultiPoly) -> Result<MultiPoly> {
    if let Some(v) = section.variables().iter().find(|v| *v != VAR_X && *v != VAR_U) {
        return Err(Error::ForeignVariable(v.clone()));
    }
    let vars = section.variables();
    let ui = vars.iter().position(|v| v == VAR_U);
    let mut by_power: BTreeMap<u32, Vec<(Vec<u32>, BigInt)>> = BTreeMap::new();
    for (exps, c) in section.terms() {
        let e = ui.map_or(0, |i| exps[i]);
        let mut rest = exps.to_vec();
        if let Some(i) = ui {
            rest[i] = 0;
        }
        by_power.entry(e).or_default().push((rest, c.clone()));
    }
    let xm1 = x_minus_1();
    let ym1 = y_minus_1();
    let mut out = MultiPoly::zero();
    for (e, terms) in by_power {
        let coeff = MultiPoly::from_terms(vars, terms)?;
        let reduced = coeff.divide_exact(&xm1.pow(e))?;
        out.add_assign(&reduced.mul(&ym1.pow(e)));
    }
    Ok(out)
}

/// Exact value of a polynomial in `x` and `y`.
pub fn q_evaluate(p: &MultiPoly, x: &BigRational, y: &BigRational) -> Result<BigRational> {
    if let Some(v) = p.variables().iter().find(|v| *v != VAR_X && *v != VAR_Y) {
        return Err(Error::ForeignVariable(v.clone()));
    }
    let point = HashMap::from([(VAR_X.to_string(), x.clone()), (VAR_Y.to_string(), y.clone())]);
    p.eval_rational(&point)
}

pub(crate) fn x_minus_1() -> MultiPoly {
    MultiPoly::var(VAR_X).sub(&MultiPoly::one())
}

pub(crate) fn y_minus_1() -> MultiPoly {
    MultiPoly::var(VAR_Y).sub(&MultiPoly::one())
}
