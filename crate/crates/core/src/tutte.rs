//! Parametrized rank polynomials of binary matroids, computed three ways:
//! subset expansion, deletion/contraction, and enumeration of transversals
//! of a partition of the ground set into per-vertex classes.
//!
//! Outputs use the variables `s` and `z`, except section outputs which use a
//! single variable `u` standing for the product `s*z`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, WordBasis};
use crate::matroid::{contract_column, is_coloop_column, BinaryMatroid, ElementKind, GroundLabel};
use crate::polyring::{MultiPoly, ParameterAssignment};

pub const VAR_S: &str = "s";
pub const VAR_Z: &str = "z";
pub const VAR_U: &str = "u";

/// Size limits for the exponential enumerations and whether they may fan out
/// over the rayon pool. Parallel and serial runs return identical results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest ground set (or vertex set, for vertex-subset sums) enumerated
    /// subset by subset.
    pub max_ground: usize,
    /// Largest number of transversal classes.
    pub max_vertices: usize,
    pub parallel: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            max_ground: 30,
            max_vertices: 24,
            parallel: true,
        }
    }
}

impl EnumOptions {
    pub fn serial() -> Self {
        Self {
            parallel: false,
            ..Self::default()
        }
    }

    pub(crate) fn check_ground(&self, size: usize) -> Result<()> {
        if size > self.max_ground || size > 63 {
            return Err(Error::CapExceeded {
                what: "ground set",
                size,
                cap: self.max_ground.min(63),
            });
        }
        Ok(())
    }
}

/// Partition of a ground set into one class per vertex: `{v_phi, v_chi}`
/// for IA matroids, `{v_phi, v_chi, v_psi}` for IAS matroids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalScheme {
    classes: Vec<Vec<GroundLabel>>,
}

impl TransversalScheme {
    pub fn new(classes: Vec<Vec<GroundLabel>>) -> Result<Self> {
        let size = classes.first().map_or(2, Vec::len);
        if !(2..=3).contains(&size) || classes.iter().any(|c| c.len() != size) {
            return Err(Error::SchemeMismatch(
                "classes must all have size 2 or all have size 3".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        for l in classes.iter().flatten() {
            if !seen.insert(l) {
                return Err(Error::SchemeMismatch(format!("{l} is in two classes")));
            }
        }
        Ok(Self { classes })
    }

    /// Groups a matroid's labels by vertex, in order of first appearance.
    pub fn from_matroid(m: &BinaryMatroid) -> Result<Self> {
        let mut order: Vec<&str> = Vec::new();
        let mut groups: BTreeMap<&str, Vec<GroundLabel>> = BTreeMap::new();
        for l in m.labels() {
            if !groups.contains_key(l.vertex.as_str()) {
                order.push(&l.vertex);
            }
            groups.entry(&l.vertex).or_default().push(l.clone());
        }
        let classes = order
            .into_iter()
            .map(|v| {
                let mut c = groups.remove(v).expect("grouped");
                c.sort_by_key(|l| l.kind);
                c
            })
            .collect();
        Self::new(classes)
    }

    pub fn classes(&self) -> &[Vec<GroundLabel>] {
        &self.classes
    }

    pub fn class_size(&self) -> usize {
        self.classes.first().map_or(2, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class members as column indices of `m`; every column must be covered.
    fn column_classes(&self, m: &BinaryMatroid) -> Result<Vec<Vec<usize>>> {
        let total: usize = self.classes.iter().map(Vec::len).sum();
        if total != m.len() {
            return Err(Error::SchemeMismatch(format!(
                "classes cover {total} elements, matroid has {}",
                m.len()
            )));
        }
        self.classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|l| {
                        m.index_of(l)
                            .map_err(|_| Error::SchemeMismatch(format!("{l} is not in the matroid")))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Ordinary Tutte polynomial `sum_T s^(r(W)-r(T)) z^(|T|-r(T))`.
pub fn tutte_subset(m: &BinaryMatroid) -> Result<MultiPoly> {
    tutte_subset_with(m, &EnumOptions::default())
}

pub fn tutte_subset_with(m: &BinaryMatroid, opts: &EnumOptions) -> Result<MultiPoly> {
    opts.check_ground(m.len())?;
    let full = m.rank();
    let profile = rank_profile(m, opts);
    let mut out = MultiPoly::zero();
    for ((size, rank), count) in profile {
        let term = MultiPoly::monomial(VAR_S, (full - rank) as u32)
            .mul(&MultiPoly::monomial(VAR_Z, (size - rank) as u32))
            .scale(&BigInt::from(count));
        out.add_assign(&term);
    }
    Ok(out)
}

/// Counts of subsets by `(|T|, r(T))`.
fn rank_profile(m: &BinaryMatroid, opts: &EnumOptions) -> BTreeMap<(usize, usize), u64> {
    let n = m.len();
    let accumulate = |lo: u64, hi: u64| -> BTreeMap<(usize, usize), u64> {
        let mut counts = BTreeMap::new();
        match m.column_words() {
            Some(cols) => {
                for mask in lo..hi {
                    let r = BinaryMatroid::rank_of_mask(&cols, mask);
                    *counts.entry((mask.count_ones() as usize, r)).or_insert(0) += 1;
                }
            }
            None => {
                for mask in lo..hi {
                    let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                    let r = m.rank_of_indices(&idx);
                    *counts.entry((idx.len(), r)).or_insert(0) += 1;
                }
            }
        }
        counts
    };
    let total = 1u64 << n;
    let chunks = chunk_ranges(total, opts.parallel);
    let merge = |mut a: BTreeMap<(usize, usize), u64>, b: BTreeMap<(usize, usize), u64>| {
        for (k, v) in b {
            *a.entry(k).or_insert(0) += v;
        }
        a
    };
    if opts.parallel {
        chunks
            .into_par_iter()
            .map(|(lo, hi)| accumulate(lo, hi))
            .reduce(BTreeMap::new, merge)
    } else {
        chunks
            .into_iter()
            .map(|(lo, hi)| accumulate(lo, hi))
            .fold(BTreeMap::new(), merge)
    }
}

/// Splits `0..total` into contiguous ranges.
pub(crate) fn chunk_ranges(total: u64, parallel: bool) -> Vec<(u64, u64)> {
    let pieces = if parallel { 256u64.min(total.max(1)) } else { 1 };
    let step = total.div_ceil(pieces).max(1);
    (0..pieces)
        .map(|k| (k * step, ((k + 1) * step).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect()
}

/// Parametrized rank polynomial by subset expansion:
/// `sum_T (prod_{t in T} a(t)) (prod_{w not in T} b(w)) s^(r(W)-r(T)) z^(|T|-r(T))`.
pub fn param_rank_subset(m: &BinaryMatroid, asg: &ParameterAssignment) -> Result<MultiPoly> {
    param_rank_subset_with(m, asg, &EnumOptions::default())
}

pub fn param_rank_subset_with(
    m: &BinaryMatroid,
    asg: &ParameterAssignment,
    opts: &EnumOptions,
) -> Result<MultiPoly> {
    let params = asg.for_matroid(m)?;
    opts.check_ground(m.len())?;
    let full = m.rank();
    let buckets = match m.column_words() {
        Some(cols) => subset_buckets(&params, opts, |mask| BinaryMatroid::rank_of_mask(&cols, mask)),
        None => subset_buckets(&params, opts, |mask| {
            let idx: Vec<usize> = (0..m.len()).filter(|&i| mask >> i & 1 == 1).collect();
            m.rank_of_indices(&idx)
        }),
    };
    let mut out = MultiPoly::zero();
    for ((size, rank), weight) in buckets {
        let sz = MultiPoly::monomial(VAR_S, (full - rank) as u32)
            .mul(&MultiPoly::monomial(VAR_Z, (size - rank) as u32));
        out.add_assign(&weight.mul(&sz));
    }
    Ok(out)
}

type Buckets = BTreeMap<(usize, usize), MultiPoly>;

fn merge_buckets(mut a: Buckets, b: Buckets) -> Buckets {
    for (k, v) in b {
        a.entry(k).or_default().add_assign(&v);
    }
    a
}

/// Sums subset weights by `(|T|, r(T))`. The weight of a subset is built up
/// element by element along a depth-first walk, so shared prefixes are
/// multiplied once and zero prefixes prune their whole subtree.
fn subset_buckets<R>(params: &[(MultiPoly, MultiPoly)], opts: &EnumOptions, rank: R) -> Buckets
where
    R: Fn(u64) -> usize + Sync,
{
    let n = params.len();
    // Fan out over the first few elements, then walk each prefix serially.
    let split = if opts.parallel { n.min(8) } else { 0 };
    let mut prefixes = vec![(0u64, MultiPoly::one())];
    for (i, (a, b)) in params.iter().enumerate().take(split) {
        let mut next = Vec::with_capacity(prefixes.len() * 2);
        for (mask, w) in prefixes {
            let out = w.mul(b);
            if !out.is_zero() {
                next.push((mask, out));
            }
            let inn = w.mul(a);
            if !inn.is_zero() {
                next.push((mask | 1 << i, inn));
            }
        }
        prefixes = next;
    }
    let walk = |(mask, weight): (u64, MultiPoly)| {
        let mut buckets = Buckets::new();
        subset_walk(params, split, mask, weight, &rank, &mut buckets);
        buckets
    };
    if opts.parallel {
        prefixes.into_par_iter().map(walk).reduce(Buckets::new, merge_buckets)
    } else {
        prefixes.into_iter().map(walk).fold(Buckets::new(), merge_buckets)
    }
}

fn subset_walk<R: Fn(u64) -> usize>(
    params: &[(MultiPoly, MultiPoly)],
    depth: usize,
    mask: u64,
    weight: MultiPoly,
    rank: &R,
    buckets: &mut Buckets,
) {
    if depth == params.len() {
        let key = (mask.count_ones() as usize, rank(mask));
        buckets.entry(key).or_default().add_assign(&weight);
        return;
    }
    let (a, b) = &params[depth];
    let out = weight.mul(b);
    if !out.is_zero() {
        subset_walk(params, depth + 1, mask, out, rank, buckets);
    }
    let inn = weight.mul(a);
    if !inn.is_zero() {
        subset_walk(params, depth + 1, mask | 1 << depth, inn, rank, buckets);
    }
}

/// Parametrized rank polynomial by deletion and contraction, always
/// processing the first remaining ground element:
///
/// * empty matroid: 1
/// * coloop `w`: `(a(w) + s b(w)) tau(M/w)`
/// * loop `w`: `(b(w) + z a(w)) tau(M-w)`
/// * otherwise: `b(w) tau(M-w) + a(w) tau(M/w)`
pub fn param_rank_recursive(m: &BinaryMatroid, asg: &ParameterAssignment) -> Result<MultiPoly> {
    param_rank_recursive_with(m, asg, &EnumOptions::default())
}

pub fn param_rank_recursive_with(
    m: &BinaryMatroid,
    asg: &ParameterAssignment,
    opts: &EnumOptions,
) -> Result<MultiPoly> {
    let params = asg.for_matroid(m)?;
    opts.check_ground(m.len())?;
    let s = MultiPoly::var(VAR_S);
    let z = MultiPoly::var(VAR_Z);
    Ok(tau(m.matrix(), &params, &s, &z))
}

fn tau(matrix: &BitMatrix, params: &[(MultiPoly, MultiPoly)], s: &MultiPoly, z: &MultiPoly) -> MultiPoly {
    let Some(((a, b), rest)) = params.split_first() else {
        return MultiPoly::one();
    };
    if matrix.column_is_zero(0) {
        let factor = b.add(&z.mul(a));
        if factor.is_zero() {
            return factor;
        }
        return factor.mul(&tau(&matrix.without_column(0), rest, s, z));
    }
    if is_coloop_column(matrix, 0) {
        let factor = a.add(&s.mul(b));
        if factor.is_zero() {
            return factor;
        }
        return factor.mul(&tau(&contract_column(matrix, 0), rest, s, z));
    }
    let mut out = MultiPoly::zero();
    if !b.is_zero() {
        out.add_assign(&b.mul(&tau(&matrix.without_column(0), rest, s, z)));
    }
    if !a.is_zero() {
        out.add_assign(&a.mul(&tau(&contract_column(matrix, 0), rest, s, z)));
    }
    out
}

/// Projection modulo the monomial ideal generated, per class, by the
/// products of two `a` parameters and by the product of all of the class's
/// `b` parameters (the pair `b_phi b_chi` for two-element classes; the
/// triple `b_phi b_chi b_psi` for three-element classes). For inputs that
/// are multilinear in the parameters this keeps exactly the transversal
/// terms.
pub fn pi_project(p: &MultiPoly, scheme: &TransversalScheme) -> MultiPoly {
    let mut class_of: BTreeMap<GroundLabel, usize> = BTreeMap::new();
    for (k, c) in scheme.classes().iter().enumerate() {
        for l in c {
            class_of.insert(l.clone(), k);
        }
    }
    // For each variable: Some((class, is_a)) when it is a parameter of the scheme.
    let roles: Vec<Option<(usize, bool)>> = p
        .variables()
        .iter()
        .map(|v| {
            let (is_a, label) = GroundLabel::parse_param_var(v)?;
            class_of.get(&label).map(|&k| (k, is_a))
        })
        .collect();
    let size = scheme.class_size();
    p.filter_terms(|_, exps| {
        let mut a_count: BTreeMap<usize, usize> = BTreeMap::new();
        let mut b_count: BTreeMap<usize, usize> = BTreeMap::new();
        for (role, &e) in roles.iter().zip(exps) {
            if let (Some((k, is_a)), true) = (role, e > 0) {
                *if *is_a { &mut a_count } else { &mut b_count }.entry(*k).or_insert(0) += 1;
            }
        }
        a_count.values().all(|&c| c < 2) && b_count.values().all(|&c| c < size)
    })
}

/// The transversal section
/// `sum_{T transversal} (prod_{t in T} a(t)) (prod_{w not in T} b(w)) u^(r(W)-r(T))`,
/// enumerating one element per class. Requires `r(W)` to equal the number
/// of classes, so that `s` and `z` share an exponent in every term.
pub fn section_transversal(
    m: &BinaryMatroid,
    scheme: &TransversalScheme,
    asg: &ParameterAssignment,
) -> Result<MultiPoly> {
    section_restricted(m, scheme, asg, &[], &EnumOptions::default())
}

pub fn section_transversal_with(
    m: &BinaryMatroid,
    scheme: &TransversalScheme,
    asg: &ParameterAssignment,
    opts: &EnumOptions,
) -> Result<MultiPoly> {
    section_restricted(m, scheme, asg, &[], opts)
}

/// [`section_transversal`] summed only over transversals containing every
/// label in `required`.
pub fn section_restricted(
    m: &BinaryMatroid,
    scheme: &TransversalScheme,
    asg: &ParameterAssignment,
    required: &[GroundLabel],
    opts: &EnumOptions,
) -> Result<MultiPoly> {
    let classes = scheme.column_classes(m)?;
    let params = asg.for_matroid(m)?;
    if classes.len() > opts.max_vertices {
        return Err(Error::CapExceeded {
            what: "transversal class count",
            size: classes.len(),
            cap: opts.max_vertices,
        });
    }
    let full = m.rank();
    if full != classes.len() {
        return Err(Error::SchemeMismatch(format!(
            "matroid rank {full} differs from the {} classes",
            classes.len()
        )));
    }
    let required: Vec<usize> = required
        .iter()
        .map(|l| m.index_of(l))
        .collect::<Result<_>>()?;

    // Per class: the admissible choices with their weight factor
    // a(choice) * prod_{other in class} b(other).
    let choices: Vec<Vec<(usize, MultiPoly)>> = classes
        .iter()
        .map(|class| {
            let forced: Vec<usize> = class.iter().copied().filter(|c| required.contains(c)).collect();
            class
                .iter()
                .copied()
                .filter(|c| forced.is_empty() || forced == [*c])
                .map(|c| {
                    let w = class
                        .iter()
                        .filter(|&&o| o != c)
                        .fold(params[c].0.clone(), |acc, &o| acc.mul(&params[o].1));
                    (c, w)
                })
                .filter(|(_, w)| !w.is_zero())
                .collect()
        })
        .collect();
    if required.iter().any(|r| !classes.iter().flatten().any(|c| c == r)) {
        return Ok(MultiPoly::zero());
    }

    let by_rank = match m.column_words() {
        Some(cols) => transversal_buckets(&choices, opts, &cols),
        None => {
            // Wide matrices: rank each transversal from scratch.
            let mut buckets: BTreeMap<usize, MultiPoly> = BTreeMap::new();
            let mut stack = vec![(0usize, Vec::<usize>::new(), MultiPoly::one())];
            while let Some((depth, picked, w)) = stack.pop() {
                if depth == choices.len() {
                    buckets.entry(m.rank_of_indices(&picked)).or_default().add_assign(&w);
                    continue;
                }
                for (c, f) in &choices[depth] {
                    let mut p = picked.clone();
                    p.push(*c);
                    stack.push((depth + 1, p, w.mul(f)));
                }
            }
            buckets
        }
    };
    let mut out = MultiPoly::zero();
    for (rank, weight) in by_rank {
        out.add_assign(&weight.mul(&MultiPoly::monomial(VAR_U, (full - rank) as u32)));
    }
    Ok(out)
}

fn transversal_buckets(
    choices: &[Vec<(usize, MultiPoly)>],
    opts: &EnumOptions,
    cols: &[u64],
) -> BTreeMap<usize, MultiPoly> {
    type RankBuckets = BTreeMap<usize, MultiPoly>;
    fn walk(
        choices: &[Vec<(usize, MultiPoly)>],
        cols: &[u64],
        depth: usize,
        basis: WordBasis,
        weight: MultiPoly,
        out: &mut RankBuckets,
    ) {
        if depth == choices.len() {
            out.entry(basis.rank()).or_default().add_assign(&weight);
            return;
        }
        for (c, f) in &choices[depth] {
            let mut b = basis.clone();
            b.insert(cols[*c]);
            walk(choices, cols, depth + 1, b, weight.mul(f), out);
        }
    }
    fn merge(mut a: RankBuckets, b: RankBuckets) -> RankBuckets {
        for (k, v) in b {
            a.entry(k).or_default().add_assign(&v);
        }
        a
    }

    let split = if opts.parallel { choices.len().min(5) } else { 0 };
    let mut prefixes = vec![(WordBasis::default(), MultiPoly::one())];
    for class in &choices[..split] {
        let mut next = Vec::new();
        for (basis, w) in &prefixes {
            for (c, f) in class {
                let mut b = basis.clone();
                b.insert(cols[*c]);
                next.push((b, w.mul(f)));
            }
        }
        prefixes = next;
    }
    let run = |(basis, w): (WordBasis, MultiPoly)| {
        let mut out = RankBuckets::new();
        walk(choices, cols, split, basis, w, &mut out);
        out
    };
    if opts.parallel {
        prefixes.into_par_iter().map(run).reduce(RankBuckets::new, merge)
    } else {
        prefixes.into_iter().map(run).fold(RankBuckets::new(), merge)
    }
}

/// Rewrites `u^k` as `s^k z^k`.
pub fn expand_u(p: &MultiPoly) -> MultiPoly {
    p.substitute(VAR_U, &MultiPoly::var(VAR_S).mul(&MultiPoly::var(VAR_Z)))
}

/// Rewrites `s^k z^k` as `u^k`; fails if some term has unequal `s` and `z`
/// exponents.
pub fn collapse_sz(p: &MultiPoly) -> Result<MultiPoly> {
    let vars = p.variables();
    let si = vars.iter().position(|v| v == VAR_S);
    let zi = vars.iter().position(|v| v == VAR_Z);
    let mut out_vars: Vec<String> = vars
        .iter()
        .filter(|v| *v != VAR_S && *v != VAR_Z)
        .cloned()
        .collect();
    out_vars.push(VAR_U.to_string());
    let mut terms = Vec::with_capacity(p.term_count());
    for (exps, c) in p.terms() {
        let es = si.map_or(0, |i| exps[i]);
        let ez = zi.map_or(0, |i| exps[i]);
        if es != ez {
            return Err(Error::SchemeMismatch(format!(
                "term has s^{es} but z^{ez}; not a section polynomial"
            )));
        }
        let mut e: Vec<u32> = exps
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != si && Some(*i) != zi)
            .map(|(_, &x)| x)
            .collect();
        e.push(es);
        terms.push((e, c.clone()));
    }
    MultiPoly::from_terms(&out_vars, terms)
}

/// Parameter pairs restricted to one element kind, e.g. to pin every
/// `psi` element to `(0, 1)`.
pub fn with_kind_fixed(
    asg: &ParameterAssignment,
    kind: ElementKind,
    a: &MultiPoly,
    b: &MultiPoly,
) -> ParameterAssignment {
    let mut out = ParameterAssignment::new();
    for (l, (pa, pb)) in asg.iter() {
        if l.kind == kind {
            out.insert(l.clone(), a.clone(), b.clone());
        } else {
            out.insert(l.clone(), pa.clone(), pb.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::LoopedGraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(text: &str) -> LoopedGraph {
        text.parse().unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn unlooped() -> BinaryMatroid {
        BinaryMatroid::build_ia(&g("vertices: v"))
    }

    fn looped() -> BinaryMatroid {
        BinaryMatroid::build_ia(&g("vertices: v\nloops: v"))
    }

    fn empty() -> BinaryMatroid {
        BinaryMatroid::build_ia(&LoopedGraph::empty())
    }

    fn symbolic_single() -> MultiPoly {
        p("b_v_phi*b_v_chi*s + a_v_phi*b_v_chi + a_v_chi*b_v_phi*s*z + a_v_phi*a_v_chi*z")
    }

    fn random_graph(rng: &mut impl Rng, n: usize) -> LoopedGraph {
        LoopedGraph::from_code(n, rng.gen_range(0..LoopedGraph::labeled_count(n)))
    }

    fn random_integer_params(rng: &mut impl Rng, m: &BinaryMatroid) -> ParameterAssignment {
        let mut asg = ParameterAssignment::new();
        for l in m.labels() {
            asg.insert(
                l.clone(),
                MultiPoly::constant(rng.gen_range(-3i64..=3)),
                MultiPoly::constant(rng.gen_range(-3i64..=3)),
            );
        }
        asg
    }

    #[test]
    fn tutte_subset_examples() {
        assert_eq!(tutte_subset(&empty()).unwrap(), MultiPoly::one());
        assert_eq!(tutte_subset(&unlooped()).unwrap(), p("1 + s + z + s*z"));
        assert_eq!(tutte_subset(&looped()).unwrap(), p("2 + s + z"));
    }

    #[test]
    fn param_rank_subset_examples() {
        let m = BinaryMatroid::build_ia(&g("vertices: a b\nloops: a\nedges: a-b"));
        let ones = ParameterAssignment::uniform(&m, &MultiPoly::one(), &MultiPoly::one());
        assert_eq!(param_rank_subset(&m, &ones).unwrap(), tutte_subset(&m).unwrap());
        let zero_a = ParameterAssignment::uniform(&m, &MultiPoly::zero(), &MultiPoly::one());
        assert_eq!(param_rank_subset(&m, &zero_a).unwrap(), MultiPoly::monomial(VAR_S, 2));
        let single = unlooped();
        assert_eq!(
            param_rank_subset(&single, &ParameterAssignment::symbolic(&single)).unwrap(),
            symbolic_single()
        );
    }

    #[test]
    fn param_rank_recursive_examples() {
        let e = empty();
        assert_eq!(
            param_rank_recursive(&e, &ParameterAssignment::new()).unwrap(),
            MultiPoly::one()
        );
        let coloop = BinaryMatroid::new(BitMatrix::identity(1), vec![GroundLabel::phi("e")]).unwrap();
        assert_eq!(
            param_rank_recursive(&coloop, &ParameterAssignment::symbolic(&coloop)).unwrap(),
            p("a_e_phi + s*b_e_phi")
        );
        let single = unlooped();
        assert_eq!(
            param_rank_recursive(&single, &ParameterAssignment::symbolic(&single)).unwrap(),
            symbolic_single()
        );
    }

    #[test]
    fn missing_parameters_and_caps_are_errors() {
        let m = unlooped();
        assert!(matches!(
            param_rank_subset(&m, &ParameterAssignment::new()),
            Err(Error::MissingAssignment(_))
        ));
        assert!(matches!(
            param_rank_recursive(&m, &ParameterAssignment::new()),
            Err(Error::MissingAssignment(_))
        ));
        let big = BinaryMatroid::build_ia(&LoopedGraph::from_code(16, 0));
        assert!(matches!(tutte_subset(&big), Err(Error::CapExceeded { .. })));
        let tight = EnumOptions {
            max_vertices: 3,
            ..EnumOptions::default()
        };
        let four = BinaryMatroid::build_ia(&LoopedGraph::from_code(4, 0));
        let scheme = TransversalScheme::from_matroid(&four).unwrap();
        assert!(matches!(
            section_transversal_with(&four, &scheme, &ParameterAssignment::symbolic(&four), &tight),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn pi_project_examples() {
        let scheme = TransversalScheme::from_matroid(&unlooped()).unwrap();
        assert_eq!(
            pi_project(&symbolic_single(), &scheme),
            p("a_v_phi*b_v_chi + a_v_chi*b_v_phi*s*z")
        );
        assert_eq!(pi_project(&MultiPoly::one(), &scheme), MultiPoly::one());
        assert!(pi_project(&p("a_v_phi*a_v_chi*(s + 3*z)"), &scheme).is_zero());
    }

    #[test]
    fn pi_project_three_element_classes() {
        let m = BinaryMatroid::build_ias(&g("vertices: v"));
        let scheme = TransversalScheme::from_matroid(&m).unwrap();
        assert_eq!(scheme.class_size(), 3);
        // Two b's survive, three do not; any two a's die.
        let kept = p("a_v_phi*b_v_chi*b_v_psi");
        assert_eq!(pi_project(&kept, &scheme), kept);
        assert!(pi_project(&p("b_v_phi*b_v_chi*b_v_psi"), &scheme).is_zero());
        assert!(pi_project(&p("a_v_chi*a_v_psi*b_v_phi"), &scheme).is_zero());
        assert_eq!(pi_project(&p("b_v_phi*b_v_chi"), &scheme), p("b_v_phi*b_v_chi"));
    }

    #[test]
    fn section_examples() {
        let single = unlooped();
        let scheme = TransversalScheme::from_matroid(&single).unwrap();
        assert_eq!(
            section_transversal(&single, &scheme, &ParameterAssignment::symbolic(&single)).unwrap(),
            p("a_v_phi*b_v_chi + a_v_chi*b_v_phi*u")
        );
        let l = looped();
        let scheme = TransversalScheme::from_matroid(&l).unwrap();
        assert_eq!(
            section_transversal(&l, &scheme, &ParameterAssignment::symbolic(&l)).unwrap(),
            p("a_v_phi*b_v_chi + a_v_chi*b_v_phi")
        );
    }

    #[test]
    fn section_equals_projected_expansion_on_small_graphs() {
        for n in 0..=3 {
            for code in 0..LoopedGraph::labeled_count(n) {
                let graph = LoopedGraph::from_code(n, code);
                for m in [BinaryMatroid::build_ia(&graph), BinaryMatroid::build_ias(&graph)] {
                    let scheme = TransversalScheme::from_matroid(&m).unwrap();
                    let asg = ParameterAssignment::symbolic(&m);
                    let section = section_transversal(&m, &scheme, &asg).unwrap();
                    let filtered = pi_project(&param_rank_subset(&m, &asg).unwrap(), &scheme);
                    assert_eq!(expand_u(&section), filtered, "{graph}");
                    assert_eq!(collapse_sz(&filtered).unwrap(), section);
                }
            }
        }
    }

    #[test]
    fn recursion_is_independent_of_element_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let graph = random_graph(&mut rng, n);
            let m = BinaryMatroid::build_ia(&graph);
            let mut order: Vec<usize> = (0..m.len()).collect();
            rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
            let r = m.reordered(&order).unwrap();
            let asg = random_integer_params(&mut rng, &m);
            assert_eq!(
                param_rank_recursive(&m, &asg).unwrap(),
                param_rank_recursive(&r, &asg).unwrap()
            );
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..10 {
            let graph = random_graph(&mut rng, 5);
            let m = BinaryMatroid::build_ias(&graph);
            let asg = random_integer_params(&mut rng, &m);
            let scheme = TransversalScheme::from_matroid(&m).unwrap();
            let serial = EnumOptions::serial();
            let par = EnumOptions::default();
            assert_eq!(
                param_rank_subset_with(&m, &asg, &serial).unwrap(),
                param_rank_subset_with(&m, &asg, &par).unwrap()
            );
            assert_eq!(tutte_subset_with(&m, &serial).unwrap(), tutte_subset_with(&m, &par).unwrap());
            assert_eq!(
                section_transversal_with(&m, &scheme, &asg, &serial).unwrap(),
                section_transversal_with(&m, &scheme, &asg, &par).unwrap()
            );
        }
    }

    #[test]
    fn wide_matrices_take_the_generic_path() {
        // 70 rows forces the multiword rank path.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut mat = BitMatrix::zeros(70, 6);
        for r in 0..70 {
            for c in 0..6 {
                mat.set(r, c, rng.gen_bool(0.1));
            }
        }
        let labels: Vec<GroundLabel> = (0..6).map(|c| GroundLabel::phi(format!("e{c}"))).collect();
        let m = BinaryMatroid::new(mat.clone(), labels).unwrap();
        let asg = random_integer_params(&mut rng, &m);
        assert_eq!(
            param_rank_subset(&m, &asg).unwrap(),
            param_rank_recursive(&m, &asg).unwrap()
        );
    }

    #[test]
    fn restricted_sections_partition_the_section() {
        let graph = g("vertices: a b c\nloops: c\nedges: a-b b-c");
        let m = BinaryMatroid::build_ia(&graph);
        let scheme = TransversalScheme::from_matroid(&m).unwrap();
        let asg = ParameterAssignment::symbolic(&m);
        let opts = EnumOptions::default();
        let whole = section_transversal(&m, &scheme, &asg).unwrap();
        let with_phi = section_restricted(&m, &scheme, &asg, &[GroundLabel::phi("b")], &opts).unwrap();
        let with_chi = section_restricted(&m, &scheme, &asg, &[GroundLabel::chi("b")], &opts).unwrap();
        assert_eq!(&with_phi + &with_chi, whole);
        let both = section_restricted(
            &m,
            &scheme,
            &asg,
            &[GroundLabel::phi("b"), GroundLabel::chi("b")],
            &opts,
        )
        .unwrap();
        assert!(both.is_zero());
    }

    #[test]
    fn scheme_validation() {
        let m = unlooped();
        let bad = TransversalScheme::new(vec![vec![GroundLabel::phi("v"), GroundLabel::chi("w")]]).unwrap();
        assert!(matches!(
            section_transversal(&m, &bad, &ParameterAssignment::symbolic(&m)),
            Err(Error::SchemeMismatch(_))
        ));
        assert!(TransversalScheme::new(vec![vec![GroundLabel::phi("v")]]).is_err());
        assert!(TransversalScheme::new(vec![
            vec![GroundLabel::phi("v"), GroundLabel::chi("v")],
            vec![GroundLabel::phi("v"), GroundLabel::chi("w")],
        ])
        .is_err());
        assert!(collapse_sz(&p("s^2*z")).is_err());
    }
}
