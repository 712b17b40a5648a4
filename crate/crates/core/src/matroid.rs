//! Binary matroids represented by GF(2) matrices, with labeled ground
//! elements so that minors keep readable names.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, WordBasis};
use crate::graphs::LoopedGraph;

/// Which block of the representing matrix a ground element came from:
/// identity (`phi`), adjacency (`chi`) or adjacency plus identity (`psi`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKind {
    Phi,
    Chi,
    Psi,
}

impl ElementKind {
    pub const ALL: [ElementKind; 3] = [ElementKind::Phi, ElementKind::Chi, ElementKind::Psi];

    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Phi => "phi",
            ElementKind::Chi => "chi",
            ElementKind::Psi => "psi",
        }
    }
}

impl FromStr for ElementKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(ElementKind::Phi),
            "chi" => Ok(ElementKind::Chi),
            "psi" => Ok(ElementKind::Psi),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundLabel {
    pub vertex: String,
    pub kind: ElementKind,
}

impl GroundLabel {
    pub fn new(vertex: impl Into<String>, kind: ElementKind) -> Self {
        Self {
            vertex: vertex.into(),
            kind,
        }
    }

    pub fn phi(vertex: impl Into<String>) -> Self {
        Self::new(vertex, ElementKind::Phi)
    }

    pub fn chi(vertex: impl Into<String>) -> Self {
        Self::new(vertex, ElementKind::Chi)
    }

    pub fn psi(vertex: impl Into<String>) -> Self {
        Self::new(vertex, ElementKind::Psi)
    }

    /// Name of the in-subset parameter variable, `a_<vertex>_<kind>`.
    pub fn a_var(&self) -> String {
        format!("a_{}_{}", self.vertex, self.kind.as_str())
    }

    /// Name of the out-of-subset parameter variable, `b_<vertex>_<kind>`.
    pub fn b_var(&self) -> String {
        format!("b_{}_{}", self.vertex, self.kind.as_str())
    }

    /// Inverse of [`a_var`](Self::a_var)/[`b_var`](Self::b_var): returns
    /// `(is_a, label)` for a parameter variable name.
    pub fn parse_param_var(name: &str) -> Option<(bool, GroundLabel)> {
        let (is_a, rest) = if let Some(r) = name.strip_prefix("a_") {
            (true, r)
        } else {
            (false, name.strip_prefix("b_")?)
        };
        let (vertex, kind) = rest.rsplit_once('_')?;
        if vertex.is_empty() {
            return None;
        }
        Some((is_a, GroundLabel::new(vertex, kind.parse().ok()?)))
    }
}

impl fmt::Display for GroundLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.vertex, self.kind.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatroid {
    matrix: BitMatrix,
    labels: Vec<GroundLabel>,
}

impl BinaryMatroid {
    pub fn new(matrix: BitMatrix, labels: Vec<GroundLabel>) -> Result<Self> {
        if labels.len() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.cols(),
                found: labels.len(),
            });
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
            return Err(Error::SchemeMismatch(format!("duplicate label {dup}")));
        }
        Ok(Self { matrix, labels })
    }

    /// M(IA(G)), represented by `(I | A(G))`.
    pub fn build_ia(g: &LoopedGraph) -> Self {
        let n = g.vertex_count();
        let matrix = BitMatrix::identity(n)
            .hconcat(&g.adjacency_matrix())
            .expect("same row count");
        let labels = block_labels(g, &[ElementKind::Phi, ElementKind::Chi]);
        Self { matrix, labels }
    }

    /// M(IAS(G)), represented by `(I | A(G) | A(G) + I)`.
    pub fn build_ias(g: &LoopedGraph) -> Self {
        let n = g.vertex_count();
        let a = g.adjacency_matrix();
        let matrix = BitMatrix::identity(n)
            .hconcat(&a)
            .and_then(|m| m.hconcat(&a.plus_identity()?))
            .expect("same row count");
        let labels = block_labels(g, &ElementKind::ALL);
        Self { matrix, labels }
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[GroundLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &GroundLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    fn indices_of(&self, t: &[GroundLabel]) -> Result<Vec<usize>> {
        t.iter().map(|l| self.index_of(l)).collect()
    }

    pub fn rank_of(&self, t: &[GroundLabel]) -> Result<usize> {
        Ok(self.rank_of_indices(&self.indices_of(t)?))
    }

    pub fn rank_of_indices(&self, idx: &[usize]) -> usize {
        self.matrix
            .select_columns(idx)
            .expect("indices in range")
            .rank()
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_loop(&self, w: &GroundLabel) -> Result<bool> {
        Ok(self.matrix.column_is_zero(self.index_of(w)?))
    }

    pub fn is_coloop(&self, w: &GroundLabel) -> Result<bool> {
        let i = self.index_of(w)?;
        Ok(is_coloop_column(&self.matrix, i))
    }

    /// Two non-loop elements whose columns coincide.
    pub fn are_parallel(&self, v: &GroundLabel, w: &GroundLabel) -> Result<bool> {
        let (i, j) = (self.index_of(v)?, self.index_of(w)?);
        Ok(i != j
            && !self.matrix.column_is_zero(i)
            && (0..self.matrix.rows()).all(|r| self.matrix.get(r, i) == self.matrix.get(r, j)))
    }

    pub fn delete(&self, w: &GroundLabel) -> Result<Self> {
        Ok(self.delete_index(self.index_of(w)?))
    }

    pub fn contract(&self, w: &GroundLabel) -> Result<Self> {
        Ok(self.contract_index(self.index_of(w)?))
    }

    /// Contracts each listed element in turn.
    pub fn contract_all(&self, ws: &[GroundLabel]) -> Result<Self> {
        ws.iter().try_fold(self.clone(), |m, w| m.contract(w))
    }

    pub(crate) fn delete_index(&self, i: usize) -> Self {
        let mut labels = self.labels.clone();
        labels.remove(i);
        Self {
            matrix: self.matrix.without_column(i),
            labels,
        }
    }

    pub(crate) fn contract_index(&self, i: usize) -> Self {
        let mut labels = self.labels.clone();
        labels.remove(i);
        Self {
            matrix: contract_column(&self.matrix, i),
            labels,
        }
    }

    /// The same matroid with its ground elements listed in a new order.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let mut check: Vec<usize> = order.to_vec();
        check.sort_unstable();
        if check != (0..self.len()).collect::<Vec<_>>() {
            return Err(Error::SchemeMismatch("order is not a permutation".into()));
        }
        Ok(Self {
            matrix: self.matrix.select_columns(order)?,
            labels: order.iter().map(|&i| self.labels[i].clone()).collect(),
        })
    }

    /// Columns packed as single words, when the matrix has at most 64 rows.
    pub(crate) fn column_words(&self) -> Option<Vec<u64>> {
        if self.matrix.rows() > 64 {
            return None;
        }
        let t = self.matrix.transpose();
        Some(
            (0..t.rows())
                .map(|c| t.row_words(c).first().copied().unwrap_or(0))
                .collect(),
        )
    }

    /// Rank of the columns selected by `mask` (bit `i` = column `i`).
    pub(crate) fn rank_of_mask(columns: &[u64], mask: u64) -> usize {
        let mut basis = WordBasis::default();
        let mut bits = mask;
        while bits != 0 {
            basis.insert(columns[bits.trailing_zeros() as usize]);
            bits &= bits - 1;
        }
        basis.rank()
    }
}

fn block_labels(g: &LoopedGraph, kinds: &[ElementKind]) -> Vec<GroundLabel> {
    kinds
        .iter()
        .flat_map(|&k| g.names().iter().map(move |v| GroundLabel::new(v.clone(), k)))
        .collect()
}

pub(crate) fn is_coloop_column(m: &BitMatrix, col: usize) -> bool {
    !m.column_is_zero(col) && m.without_column(col).rank() < m.rank()
}

/// Representation of `M / col`: pivot on the lowest row with a 1 in `col`,
/// clear the column elsewhere, then drop that row and the column. A zero
/// column is simply deleted.
pub(crate) fn contract_column(m: &BitMatrix, col: usize) -> BitMatrix {
    let Some(pivot) = (0..m.rows()).find(|&r| m.get(r, col)) else {
        return m.without_column(col);
    };
    let mut work = m.clone();
    for r in 0..m.rows() {
        if r != pivot && m.get(r, col) {
            work.add_row(pivot, r);
        }
    }
    work.delete_row_col(pivot, col).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(text: &str) -> LoopedGraph {
        text.parse().unwrap()
    }

    fn single(looped: bool) -> LoopedGraph {
        if looped {
            g("vertices: v\nloops: v")
        } else {
            g("vertices: v")
        }
    }

    fn k2() -> LoopedGraph {
        g("vertices: v w\nedges: v-w")
    }

    fn bits(rows: &[&[u8]]) -> BitMatrix {
        BitMatrix::from_bits(rows).unwrap()
    }

    /// Random matroid on up to `max` elements with synthetic labels.
    fn random_matroid(rng: &mut impl Rng, max: usize) -> BinaryMatroid {
        let cols = rng.gen_range(0..=max);
        let rows = rng.gen_range(0..=5);
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.gen_bool(0.45));
            }
        }
        let labels = (0..cols).map(|c| GroundLabel::phi(format!("e{c}"))).collect();
        BinaryMatroid::new(m, labels).unwrap()
    }

    fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
        (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
    }

    #[test]
    fn build_ia_examples() {
        let m = BinaryMatroid::build_ia(&single(false));
        assert_eq!(m.matrix(), &bits(&[&[1, 0]]));
        assert_eq!(m.labels(), &[GroundLabel::phi("v"), GroundLabel::chi("v")]);
        assert_eq!(BinaryMatroid::build_ia(&single(true)).matrix(), &bits(&[&[1, 1]]));
        assert_eq!(
            BinaryMatroid::build_ia(&k2()).matrix(),
            &bits(&[&[1, 0, 0, 1], &[0, 1, 1, 0]])
        );
    }

    #[test]
    fn build_ias_examples() {
        assert_eq!(BinaryMatroid::build_ias(&single(false)).matrix(), &bits(&[&[1, 0, 1]]));
        assert_eq!(BinaryMatroid::build_ias(&single(true)).matrix(), &bits(&[&[1, 1, 0]]));
        let m = BinaryMatroid::build_ias(&k2());
        assert_eq!(m.matrix(), &bits(&[&[1, 0, 0, 1, 1, 1], &[0, 1, 1, 0, 1, 1]]));
        assert_eq!(m.labels()[4], GroundLabel::psi("v"));
    }

    #[test]
    fn rank_and_loop_examples() {
        let m = BinaryMatroid::build_ia(&single(false));
        assert_eq!(m.rank_of(&[]).unwrap(), 0);
        assert_eq!(m.rank_of(&[GroundLabel::chi("v")]).unwrap(), 0);
        let k = BinaryMatroid::build_ia(&k2());
        assert_eq!(k.rank_of(&[GroundLabel::phi("v"), GroundLabel::phi("w")]).unwrap(), 2);
        assert!(m.rank_of(&[GroundLabel::psi("v")]).is_err());

        assert!(m.is_loop(&GroundLabel::chi("v")).unwrap());
        assert!(!m.is_loop(&GroundLabel::phi("v")).unwrap());
        let looped = BinaryMatroid::build_ia(&single(true));
        assert!(!looped.is_loop(&GroundLabel::chi("v")).unwrap());
        assert!(m.is_loop(&GroundLabel::chi("q")).is_err());
    }

    #[test]
    fn coloop_examples() {
        let m = BinaryMatroid::build_ia(&single(false));
        assert!(m.is_coloop(&GroundLabel::phi("v")).unwrap());
        let looped = BinaryMatroid::build_ia(&single(true));
        assert!(!looped.is_coloop(&GroundLabel::phi("v")).unwrap());
        let k = BinaryMatroid::build_ia(&k2());
        for l in k.labels() {
            assert!(!k.is_coloop(l).unwrap(), "{l} is a coloop");
        }
        assert!(m.is_coloop(&GroundLabel::phi("q")).is_err());
    }

    #[test]
    fn delete_examples() {
        let m = BinaryMatroid::build_ia(&single(false));
        let d = m.delete(&GroundLabel::chi("v")).unwrap();
        assert_eq!(d.matrix(), &bits(&[&[1]]));
        assert_eq!(d.labels(), &[GroundLabel::phi("v")]);
        let d2 = m.delete(&GroundLabel::phi("v")).unwrap();
        assert!(d2.is_loop(&GroundLabel::chi("v")).unwrap());

        let k = BinaryMatroid::build_ias(&k2());
        let (x, y) = (GroundLabel::chi("v"), GroundLabel::psi("w"));
        assert_eq!(
            k.delete(&x).unwrap().delete(&y).unwrap(),
            k.delete(&y).unwrap().delete(&x).unwrap()
        );
    }

    #[test]
    fn contract_examples() {
        let m = BinaryMatroid::build_ia(&single(false));
        let c = m.contract(&GroundLabel::phi("v")).unwrap();
        assert_eq!(c.labels(), &[GroundLabel::chi("v")]);
        assert_eq!(c.matrix().rows(), 0);
        assert_eq!(c.rank_of(&[GroundLabel::chi("v")]).unwrap(), 0);

        let loop_label = GroundLabel::chi("v");
        assert_eq!(m.contract(&loop_label).unwrap(), m.delete(&loop_label).unwrap());

        let k = BinaryMatroid::build_ia(&k2());
        let kc = k.contract(&GroundLabel::phi("v")).unwrap();
        assert_eq!(kc.matrix(), &k.matrix().delete_row_col(0, 0).unwrap());
    }

    #[test]
    fn param_var_names_round_trip() {
        let l = GroundLabel::psi("v_1");
        assert_eq!(l.a_var(), "a_v_1_psi");
        assert_eq!(GroundLabel::parse_param_var(&l.a_var()), Some((true, l.clone())));
        assert_eq!(GroundLabel::parse_param_var(&l.b_var()), Some((false, l)));
        assert_eq!(GroundLabel::parse_param_var("x"), None);
        assert_eq!(GroundLabel::parse_param_var("a_v_rho"), None);
    }

    #[test]
    fn rank_axioms_on_random_matroids() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let m = random_matroid(&mut rng, 6);
            let n = m.len();
            let r = |mask: u32| {
                let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                m.rank_of_indices(&idx)
            };
            for t in 0u32..1 << n {
                let rt = r(t);
                assert!(rt <= t.count_ones() as usize && rt <= m.matrix().rows());
                for u in 0u32..1 << n {
                    if t & u == t {
                        assert!(rt <= r(u), "not monotone");
                    }
                    assert!(r(t | u) + r(t & u) <= rt + r(u), "not submodular");
                }
            }
        }
    }

    #[test]
    fn contraction_matches_rank_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let m = random_matroid(&mut rng, 6);
            for w in 0..m.len() {
                let c = m.contract_index(w);
                let rw = m.rank_of_indices(&[w]);
                for t in subsets(c.len()) {
                    // Map minor indices back to the original numbering.
                    let mut orig: Vec<usize> = t.iter().map(|&i| if i < w { i } else { i + 1 }).collect();
                    let lhs = c.rank_of_indices(&t);
                    orig.push(w);
                    assert_eq!(lhs, m.rank_of_indices(&orig) - rw);
                }
            }
        }
    }

    #[test]
    fn contraction_pivot_choice_does_not_change_the_matroid() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let m = random_matroid(&mut rng, 6);
            for w in 0..m.len() {
                let low = m.contract_index(w);
                // Pivot on the highest eligible row instead.
                let Some(p) = (0..m.matrix().rows()).rev().find(|&r| m.matrix().get(r, w)) else {
                    continue;
                };
                let mut work = m.matrix().clone();
                for r in 0..work.rows() {
                    if r != p && m.matrix().get(r, w) {
                        work.add_row(p, r);
                    }
                }
                let high = work.delete_row_col(p, w).unwrap();
                for t in subsets(low.len()) {
                    assert_eq!(
                        low.rank_of_indices(&t),
                        high.select_columns(&t).unwrap().rank()
                    );
                }
            }
        }
    }

    #[test]
    fn mask_rank_matches_matrix_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let m = random_matroid(&mut rng, 8);
            let cols = m.column_words().unwrap();
            for mask in 0u64..1 << m.len() {
                let idx: Vec<usize> = (0..m.len()).filter(|&i| mask >> i & 1 == 1).collect();
                assert_eq!(BinaryMatroid::rank_of_mask(&cols, mask), m.rank_of_indices(&idx));
            }
        }
    }

    #[test]
    fn reordered_keeps_ranks() {
        let m = BinaryMatroid::build_ias(&g("vertices: a b c\nloops: b\nedges: a-b b-c"));
        let order: Vec<usize> = (0..m.len()).rev().collect();
        let r = m.reordered(&order).unwrap();
        for l in m.labels() {
            assert_eq!(r.rank_of(std::slice::from_ref(l)).unwrap(), m.rank_of(std::slice::from_ref(l)).unwrap());
        }
        assert_eq!(r.rank(), m.rank());
        assert!(m.reordered(&[0, 0, 1]).is_err());
    }

    #[test]
    fn new_validates_labels() {
        let m = BitMatrix::identity(2);
        assert!(BinaryMatroid::new(m.clone(), vec![GroundLabel::phi("a")]).is_err());
        assert!(BinaryMatroid::new(m, vec![GroundLabel::phi("a"), GroundLabel::phi("a")]).is_err());
    }
}
