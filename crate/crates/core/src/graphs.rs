//! Looped simple graphs and the vertex operations used by the interlace
//! recursions: deletion, local complementation and pivoting.
//!
//! A graph is stored as its GF(2) adjacency matrix: the diagonal carries loop
//! flags and the off-diagonal part carries the (symmetric) edge relation.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopedGraph {
    names: Vec<String>,
    adj: BitMatrix,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl LoopedGraph {
    pub fn empty() -> Self {
        Self {
            names: Vec::new(),
            adj: BitMatrix::zeros(0, 0),
        }
    }

    /// Edgeless, loopless graph on the given vertex names.
    pub fn with_vertices<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !valid_name(n) || !seen.insert(n.as_str()) {
                return Err(Error::GraphParse {
                    line: 0,
                    message: format!("invalid or duplicate vertex name `{n}`"),
                });
            }
        }
        let n = names.len();
        Ok(Self {
            names,
            adj: BitMatrix::zeros(n, n),
        })
    }

    /// Builds a graph from names, loop flags and index pairs. Used by the
    /// generators; panics on malformed input.
    pub fn from_parts(names: Vec<String>, loops: &[bool], edges: &[(usize, usize)]) -> Self {
        let n = names.len();
        assert_eq!(loops.len(), n);
        let mut adj = BitMatrix::zeros(n, n);
        for (i, &l) in loops.iter().enumerate() {
            adj.set(i, i, l);
        }
        for &(i, j) in edges {
            assert!(i != j && i < n && j < n, "bad edge ({i}, {j})");
            adj.set(i, j, true);
            adj.set(j, i, true);
        }
        Self { names, adj }
    }

    /// Graph on vertices `v0..v{n-1}` from a symmetric adjacency matrix.
    pub fn from_adjacency(adj: BitMatrix) -> Result<Self> {
        if !adj.is_symmetric() {
            return Err(Error::NotSquare {
                rows: adj.rows(),
                cols: adj.cols(),
            });
        }
        let names = (0..adj.rows()).map(|i| format!("v{i}")).collect();
        Ok(Self { names, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, v: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn is_looped(&self, i: usize) -> bool {
        self.adj.get(i, i)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.adj.get(i, j)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&j| self.adjacent(i, j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.neighbors(i).next().is_none()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adj.get(i, j))
            .collect()
    }

    pub fn set_loop(&mut self, i: usize, looped: bool) {
        self.adj.set(i, i, looped);
    }

    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        assert_ne!(i, j, "self-edges are loops");
        self.adj.set(i, j, present);
        self.adj.set(j, i, present);
    }

    fn toggle_edge(&mut self, i: usize, j: usize) {
        self.adj.toggle(i, j);
        self.adj.toggle(j, i);
    }

    /// A(G): symmetric, loops on the diagonal, rows in vertex order.
    pub fn adjacency_matrix(&self) -> BitMatrix {
        self.adj.clone()
    }

    /// Rows of A(G) as single words; only valid for at most 64 vertices.
    pub(crate) fn adjacency_words(&self) -> Vec<u64> {
        assert!(self.vertex_count() <= 64);
        (0..self.vertex_count())
            .map(|r| self.adj.row_words(r).first().copied().unwrap_or(0))
            .collect()
    }

    pub fn delete_vertex(&self, v: &str) -> Result<Self> {
        let i = self.index_of(v)?;
        Ok(self.delete_index(i))
    }

    pub(crate) fn delete_index(&self, i: usize) -> Self {
        let mut names = self.names.clone();
        names.remove(i);
        Self {
            names,
            adj: self.adj.delete_row_col(i, i).expect("index in range"),
        }
    }

    /// G^v: toggle every adjacency among neighbors of `v` and the loop flag
    /// of every neighbor of `v`.
    pub fn local_complement(&self, v: &str) -> Result<Self> {
        let i = self.index_of(v)?;
        Ok(self.local_complement_index(i))
    }

    pub(crate) fn local_complement_index(&self, i: usize) -> Self {
        let nbrs: Vec<usize> = self.neighbors(i).collect();
        let mut g = self.clone();
        for (k, &x) in nbrs.iter().enumerate() {
            g.adj.toggle(x, x);
            for &y in &nbrs[k + 1..] {
                g.toggle_edge(x, y);
            }
        }
        g
    }

    /// G^{vw}: toggle the adjacency of every pair of vertices outside
    /// `{v, w}` whose neighborhoods within `{v, w}` are nonempty and differ.
    pub fn pivot(&self, v: &str, w: &str) -> Result<Self> {
        let i = self.index_of(v)?;
        let j = self.index_of(w)?;
        if i == j {
            return Err(Error::SameVertex(v.to_string()));
        }
        if !self.adjacent(i, j) {
            return Err(Error::NotAdjacent(v.to_string(), w.to_string()));
        }
        Ok(self.pivot_index(i, j))
    }

    pub(crate) fn pivot_index(&self, v: usize, w: usize) -> Self {
        // 1 = adjacent to v only, 2 = w only, 3 = both, 0 = neither.
        let class: Vec<u8> = (0..self.vertex_count())
            .map(|x| {
                if x == v || x == w {
                    0
                } else {
                    u8::from(self.adjacent(x, v)) | (u8::from(self.adjacent(x, w)) << 1)
                }
            })
            .collect();
        let mut g = self.clone();
        for x in 0..self.vertex_count() {
            for y in (x + 1)..self.vertex_count() {
                if class[x] != 0 && class[y] != 0 && class[x] != class[y] {
                    g.toggle_edge(x, y);
                }
            }
        }
        g
    }

    /// Disjoint union; colliding names from `other` get a `_<k>` suffix.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut taken: HashSet<String> = self.names.iter().cloned().collect();
        let mut names = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            let mut k = 1;
            while taken.contains(&candidate) {
                candidate = format!("{name}_{k}");
                k += 1;
            }
            taken.insert(candidate.clone());
            names.push(candidate);
        }
        let (n, m) = (self.vertex_count(), other.vertex_count());
        let mut adj = BitMatrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                adj.set(i, j, self.adj.get(i, j));
            }
        }
        for i in 0..m {
            for j in 0..m {
                adj.set(n + i, n + j, other.adj.get(i, j));
            }
        }
        Self { names, adj }
    }

    /// Hex SHA-256 of the canonical text serialization.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Every looped simple graph on `n` labeled vertices `v0..`, indexed by
    /// `code`: bits `0..n` are loop flags, the remaining bits are the pairs
    /// `(i, j)`, `i < j`, in row-major order. Bits past 63 read as zero.
    pub fn from_code(n: usize, code: u64) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let bit_of = |b: usize| b < 64 && code >> b & 1 == 1;
        let loops: Vec<bool> = (0..n).map(bit_of).collect();
        let mut edges = Vec::new();
        let mut bit = n;
        for i in 0..n {
            for j in (i + 1)..n {
                if bit_of(bit) {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        Self::from_parts(names, &loops, &edges)
    }

    /// Number of looped simple graphs on `n` labeled vertices. Panics for
    /// `n > 10`, where the count no longer fits in a `u64`.
    pub fn labeled_count(n: usize) -> u64 {
        let bits = n + n * n.saturating_sub(1) / 2;
        assert!(bits < 64, "too many labeled graphs on {n} vertices");
        1u64 << bits
    }
}

impl fmt::Debug for LoopedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopedGraph({:?})", self.to_string())
    }
}

/// Canonical text form: `vertices:`, `loops:`, `edges:` lines in that order.
impl fmt::Display for LoopedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices:")?;
        for n in &self.names {
            write!(f, " {n}")?;
        }
        write!(f, "\nloops:")?;
        for i in (0..self.vertex_count()).filter(|&i| self.is_looped(i)) {
            write!(f, " {}", self.names[i])?;
        }
        write!(f, "\nedges:")?;
        for (i, j) in self.edges() {
            write!(f, " {}-{}", self.names[i], self.names[j])?;
        }
        writeln!(f)
    }
}

impl FromStr for LoopedGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::GraphParse { line, message };
        let mut vertices: Option<(usize, Vec<&str>)> = None;
        let mut loops: Option<(usize, Vec<&str>)> = None;
        let mut edges: Option<(usize, Vec<&str>)> = None;

        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| err(line_no, format!("expected `key: ...`, got `{line}`")))?;
            let slot = match key.trim() {
                "vertices" => &mut vertices,
                "loops" => &mut loops,
                "edges" => &mut edges,
                other => return Err(err(line_no, format!("unknown header `{other}`"))),
            };
            if slot.is_some() {
                return Err(err(line_no, format!("repeated `{}:` line", key.trim())));
            }
            *slot = Some((line_no, rest.split_whitespace().collect()));
        }

        let (vline, names) = vertices.ok_or_else(|| err(0, "missing `vertices:` line".into()))?;
        let mut seen = HashSet::new();
        for name in &names {
            if !valid_name(name) {
                return Err(err(vline, format!("invalid vertex name `{name}`")));
            }
            if !seen.insert(*name) {
                return Err(err(vline, format!("duplicate vertex `{name}`")));
            }
        }
        let mut g = Self::with_vertices(names.iter().copied())?;
        let lookup = |g: &Self, line: usize, name: &str| {
            g.index_of(name)
                .map_err(|_| err(line, format!("unknown vertex `{name}`")))
        };

        if let Some((lline, ls)) = loops {
            for name in ls {
                let i = lookup(&g, lline, name)?;
                if g.is_looped(i) {
                    return Err(err(lline, format!("duplicate loop `{name}`")));
                }
                g.set_loop(i, true);
            }
        }
        if let Some((eline, es)) = edges {
            for token in es {
                let mut parts = token.split('-');
                let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(err(eline, format!("malformed edge `{token}`")));
                };
                let i = lookup(&g, eline, a)?;
                let j = lookup(&g, eline, b)?;
                if i == j {
                    return Err(err(eline, format!("self-edge `{token}`")));
                }
                if g.adjacent(i, j) {
                    return Err(err(eline, format!("duplicate edge `{token}`")));
                }
                g.set_edge(i, j, true);
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(text: &str) -> LoopedGraph {
        text.parse().unwrap()
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(
            g("vertices: a b").adjacency_matrix(),
            BitMatrix::zeros(2, 2)
        );
        assert_eq!(
            g("vertices: a\nloops: a").adjacency_matrix(),
            BitMatrix::from_bits(&[&[1]]).unwrap()
        );
        assert_eq!(
            g("vertices: a b\nedges: a-b").adjacency_matrix(),
            BitMatrix::from_bits(&[&[0, 1], &[1, 0]]).unwrap()
        );
    }

    #[test]
    fn delete_vertex_examples() {
        assert_eq!(g("vertices: a b\nedges: a-b").delete_vertex("a").unwrap(), g("vertices: b"));
        assert_eq!(
            g("vertices: a\nloops: a").delete_vertex("a").unwrap(),
            LoopedGraph::empty()
        );
        assert_eq!(
            g("vertices: a b c\nedges: a-b b-c").delete_vertex("b").unwrap(),
            g("vertices: a c")
        );
        assert_eq!(
            g("vertices: a").delete_vertex("z"),
            Err(Error::UnknownVertex("z".into()))
        );
    }

    #[test]
    fn local_complement_examples() {
        let h = g("vertices: v a b\nloops: v\nedges: v-a v-b");
        assert_eq!(
            h.local_complement("v").unwrap(),
            g("vertices: v a b\nloops: v a b\nedges: v-a v-b a-b")
        );
        let one = g("vertices: v a\nloops: v\nedges: v-a");
        assert_eq!(
            one.local_complement("v").unwrap(),
            g("vertices: v a\nloops: v a\nedges: v-a")
        );
        let lonely = g("vertices: v\nloops: v");
        assert_eq!(lonely.local_complement("v").unwrap(), lonely);
        let star = g("vertices: v a b c\nloops: v\nedges: v-a v-b v-c");
        assert_eq!(
            star.local_complement("v").unwrap(),
            g("vertices: v a b c\nloops: v a b c\nedges: v-a v-b v-c a-b a-c b-c")
        );
        assert!(star.local_complement("q").is_err());
    }

    #[test]
    fn pivot_examples() {
        let path = g("vertices: a v w b\nedges: a-v v-w w-b");
        assert_eq!(
            path.pivot("v", "w").unwrap(),
            g("vertices: a v w b\nedges: a-v v-w w-b a-b")
        );
        let k2 = g("vertices: v w\nedges: v-w");
        assert_eq!(k2.pivot("v", "w").unwrap(), k2);

        // x, x2 see both of v, w; y sees v only.
        let h = g("vertices: v w x x2 y\nedges: v-w x-v x-w x2-v x2-w y-v");
        let p = h.pivot("v", "w").unwrap();
        let (x, x2, y) = (2, 3, 4);
        assert!(p.adjacent(x, y));
        assert!(p.adjacent(x2, y));
        assert!(!p.adjacent(x, x2));

        assert_eq!(k2.pivot("v", "v"), Err(Error::SameVertex("v".into())));
        assert!(k2.pivot("v", "q").is_err());
        assert!(g("vertices: v w").pivot("v", "w").is_err());
    }

    #[test]
    fn pivot_ignores_vertices_outside_both_neighborhoods() {
        let h = g("vertices: v w a z\nedges: v-w a-v");
        // z is adjacent to neither v nor w, so it is never distinguished.
        assert_eq!(h.pivot("v", "w").unwrap(), h);
    }

    #[test]
    fn disjoint_union_examples() {
        let a = g("vertices: a\nloops: a");
        assert_eq!(a.disjoint_union(&LoopedGraph::empty()), a);
        let u = a.disjoint_union(&g("vertices: b"));
        assert_eq!(u, g("vertices: a b\nloops: a"));
        let k2 = g("vertices: a b\nedges: a-b");
        let kk = k2.disjoint_union(&k2);
        assert_eq!(kk.vertex_count(), 4);
        assert_eq!(kk.edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(kk.names(), &["a", "b", "a_1", "b_1"]);
    }

    #[test]
    fn parse_accepts_any_header_order_and_comments() {
        let h = g("# a comment\nedges: a-b\n\nloops: b\nvertices: a b c\n");
        assert_eq!(h, g("vertices: a b c\nloops: b\nedges: a-b"));
        assert_eq!(g("vertices:"), LoopedGraph::empty());
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "vertices: a a",
            "vertices: a\nedges: a-b",
            "vertices: a\nloops: b",
            "vertices: a b\nedges: a-a",
            "vertices: a b\nedges: a-b b-a",
            "vertices: a b\nedges: a--b",
            "vertices: a b\nedges: ab",
            "vertices: a-b",
            "loops: a",
            "vertices: a\nvertices: b",
            "colors: a",
            "vertices: a\nloops: a a",
        ] {
            assert!(
                matches!(bad.parse::<LoopedGraph>(), Err(Error::GraphParse { .. })),
                "accepted {bad:?}"
            );
        }
    }

    #[test]
    fn labeled_enumeration_counts() {
        assert_eq!(LoopedGraph::labeled_count(1), 2);
        assert_eq!(LoopedGraph::labeled_count(3), 64);
        assert_eq!(LoopedGraph::labeled_count(5), 32768);
        let all: HashSet<LoopedGraph> = (0..64).map(|c| LoopedGraph::from_code(3, c)).collect();
        assert_eq!(all.len(), 64);
    }

    fn any_graph(max_n: usize) -> impl Strategy<Value = LoopedGraph> {
        (0..=max_n).prop_flat_map(|n| {
            (Just(n), 0..LoopedGraph::labeled_count(n)).prop_map(|(n, c)| LoopedGraph::from_code(n, c))
        })
    }

    proptest! {
        #[test]
        fn adjacency_is_symmetric(h in any_graph(7)) {
            prop_assert!(h.adjacency_matrix().is_symmetric());
        }

        #[test]
        fn text_round_trip(h in any_graph(7)) {
            let text = h.to_string();
            prop_assert_eq!(text.parse::<LoopedGraph>().unwrap(), h);
        }

        #[test]
        fn local_complement_is_involution(h in any_graph(7), v in 0usize..7) {
            prop_assume!(v < h.vertex_count());
            let once = h.local_complement_index(v);
            prop_assert_eq!(once.local_complement_index(v), h);
        }

        #[test]
        fn pivot_is_involution(h in any_graph(7), k in 0usize..64) {
            let edges = h.edges();
            prop_assume!(!edges.is_empty());
            let (v, w) = edges[k % edges.len()];
            prop_assert_eq!(h.pivot_index(v, w).pivot_index(v, w), h);
        }

        #[test]
        fn deletions_commute(h in any_graph(7), x in 0usize..7, y in 0usize..7) {
            prop_assume!(x < h.vertex_count() && y < h.vertex_count() && x != y);
            let (a, b) = (h.name(x).to_string(), h.name(y).to_string());
            let xy = h.delete_vertex(&a).unwrap().delete_vertex(&b).unwrap();
            let yx = h.delete_vertex(&b).unwrap().delete_vertex(&a).unwrap();
            prop_assert_eq!(xy, yx);
        }
    }
}
