//! Cross-checks between the independent evaluators, and the rank identities
//! that tie graph operations to matroid minors. Used by `itp check`,
//! `itp selfcheck` and the acceptance harness.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graphs::LoopedGraph;
use crate::interlace::{q_assignment, q_from_section_with, q_recursive, q_subset_with, section_to_q, x_minus_1};
use crate::matroid::{BinaryMatroid, ElementKind, GroundLabel};
use crate::polyring::{MultiPoly, ParameterAssignment};
use crate::tutte::{
    expand_u, param_rank_recursive_with, param_rank_subset_with, pi_project, section_restricted,
    section_transversal_with, with_kind_fixed, EnumOptions, TransversalScheme,
};

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            failure: None,
        }
    }

    pub fn fail(name: impl Into<String>, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            failure: Some(why.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}", self.name),
            Some(why) => write!(f, "FAIL {}: {why}", self.name),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Methods,
    Section,
    Ias,
    Identities,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "methods" => Suite::Methods,
            "section" => Suite::Section,
            "ias" => Suite::Ias,
            "identities" => Suite::Identities,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite `{s}`")),
        })
    }
}

/// Settings for [`run_suite`].
#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub opts: EnumOptions,
    /// Ground sets up to this size get fully symbolic parameters; larger
    /// ones get seeded integers in `[-3, 3]`.
    pub symbolic_ground_limit: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            opts: EnumOptions::default(),
            symbolic_ground_limit: 12,
            seed: 0,
        }
    }
}

/// Runs one suite on a graph. Computation errors (caps) propagate; identity
/// failures are reported in the outcomes.
pub fn run_suite(g: &LoopedGraph, suite: Suite, cfg: &CheckConfig) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Methods {
        out.extend(check_q_methods(g, &cfg.opts)?);
    }
    if all || suite == Suite::Section {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for (tag, m) in [("IA", BinaryMatroid::build_ia(g)), ("IAS", BinaryMatroid::build_ias(g))] {
            let asg = if m.len() <= cfg.symbolic_ground_limit {
                ParameterAssignment::symbolic(&m)
            } else {
                random_integer_assignment(&m, &mut rng)
            };
            let mut tau = check_tau_methods(&m, &asg, &cfg.opts)?;
            tau.name = format!("tau {tag}: recursive == subset");
            out.push(tau);
            let mut sec = check_section_filter(&m, &asg, &cfg.opts)?;
            sec.name = format!("section {tag}: transversal sum == filtered expansion");
            out.push(sec);
        }
        out.push(check_rank_identity(g));
    }
    if all || suite == Suite::Ias {
        out.push(check_ias_restriction(g, &cfg.opts)?);
        out.push(check_ias_q(g, &cfg.opts)?);
    }
    if all || suite == Suite::Identities {
        out.push(check_looped_lemma(g));
        out.push(check_pivot_lemmas(g));
        out.push(check_minor_identity(g));
        out.push(check_deletion_contraction_formula(g, &cfg.opts)?);
        out.push(check_pivot_splits(g, &cfg.opts)?);
        out.push(check_pendants_and_twins(g));
    }
    Ok(out)
}

pub fn random_integer_assignment(m: &BinaryMatroid, rng: &mut impl Rng) -> ParameterAssignment {
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

/// Pairwise agreement of the three `q` evaluators; always three outcomes.
pub fn check_q_methods(g: &LoopedGraph, opts: &EnumOptions) -> Result<Vec<CheckOutcome>> {
    let subset = q_subset_with(g, opts)?;
    let recursive = q_recursive(g);
    let section = q_from_section_with(g, opts)?;
    let pair = |name: &str, a: &MultiPoly, b: &MultiPoly| {
        if a == b {
            CheckOutcome::pass(name)
        } else {
            CheckOutcome::fail(name, format!("{a} != {b}"))
        }
    };
    Ok(vec![
        pair("q: subset == recursive", &subset, &recursive),
        pair("q: subset == section", &subset, &section),
        pair("q: recursive == section", &recursive, &section),
    ])
}

pub fn check_tau_methods(
    m: &BinaryMatroid,
    asg: &ParameterAssignment,
    opts: &EnumOptions,
) -> Result<CheckOutcome> {
    let subset = param_rank_subset_with(m, asg, opts)?;
    let recursive = param_rank_recursive_with(m, asg, opts)?;
    Ok(if subset == recursive {
        CheckOutcome::pass("tau: recursive == subset")
    } else {
        CheckOutcome::fail(
            "tau: recursive == subset",
            format!("{} terms vs {} terms", recursive.term_count(), subset.term_count()),
        )
    })
}

/// The transversal sum, with `u` expanded, against the full subset
/// expansion restricted by the monomial filter. Each parameter is tagged
/// with a per-vertex marker variable so the filter also applies when the
/// parameters are plain numbers; for fully symbolic parameters the untagged
/// [`pi_project`] is compared as well.
pub fn check_section_filter(
    m: &BinaryMatroid,
    asg: &ParameterAssignment,
    opts: &EnumOptions,
) -> Result<CheckOutcome> {
    const NAME: &str = "section: transversal sum == filtered expansion";
    let scheme = TransversalScheme::from_matroid(m)?;
    let section = expand_u(&section_transversal_with(m, &scheme, asg, opts)?);

    let vertices: Vec<&str> = scheme.classes().iter().map(|c| c[0].vertex.as_str()).collect();
    let marker_a = |v: &str| format!("mark_a_{v}");
    let marker_b = |v: &str| format!("mark_b_{v}");
    let mut tagged = ParameterAssignment::new();
    for (l, (a, b)) in asg.iter() {
        tagged.insert(
            l.clone(),
            a.mul(&MultiPoly::var(&marker_a(&l.vertex))),
            b.mul(&MultiPoly::var(&marker_b(&l.vertex))),
        );
    }
    let expansion = param_rank_subset_with(m, &tagged, opts)?;
    let a_markers: Vec<String> = vertices.iter().map(|v| marker_a(v)).collect();
    let filtered = expansion.filter_terms(|vars, exps| {
        vars.iter()
            .zip(exps)
            .filter(|(name, _)| a_markers.contains(name))
            .all(|(_, &e)| e == 1)
            && a_markers.iter().all(|mk| vars.contains(mk))
    });
    let mut oracle = filtered;
    for v in &vertices {
        oracle = oracle
            .substitute(&marker_a(v), &MultiPoly::one())
            .substitute(&marker_b(v), &MultiPoly::one());
    }
    if oracle != section {
        return Ok(CheckOutcome::fail(NAME, "marker-filtered expansion differs"));
    }
    if *asg == ParameterAssignment::symbolic(m) {
        let projected = pi_project(&param_rank_subset_with(m, asg, opts)?, &scheme);
        if projected != section {
            return Ok(CheckOutcome::fail(NAME, "projected expansion differs"));
        }
    }
    Ok(CheckOutcome::pass(NAME))
}

/// Every transversal of `IA(G)`: bit `i` of the mask picks `chi` for vertex
/// `i`, otherwise `phi`.
pub fn transversal_labels(g: &LoopedGraph, mask: u64) -> Vec<GroundLabel> {
    (0..g.vertex_count())
        .map(|i| {
            let kind = if mask >> i & 1 == 1 {
                ElementKind::Chi
            } else {
                ElementKind::Phi
            };
            GroundLabel::new(g.name(i), kind)
        })
        .collect()
}

fn without(t: &[GroundLabel], drop: &[GroundLabel]) -> Vec<GroundLabel> {
    t.iter().filter(|l| !drop.contains(l)).cloned().collect()
}

/// `r(T) = |V| - |S(T)| + rank(A[S(T)])` for every transversal `T`, where
/// `S(T)` is the set of vertices whose `chi` element is in `T`.
pub fn check_rank_identity(g: &LoopedGraph) -> CheckOutcome {
    const NAME: &str = "rank identity over transversals";
    let n = g.vertex_count();
    let m = BinaryMatroid::build_ia(g);
    let a = g.adjacency_matrix();
    for mask in 0..1u64 << n {
        let t = transversal_labels(g, mask);
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let lhs = m.rank_of(&t).expect("labels from the graph");
        let rhs = n - s.len() + a.principal_submatrix(&s).expect("indices in range").rank();
        if lhs != rhs {
            return CheckOutcome::fail(NAME, format!("transversal mask {mask:b}: {lhs} != {rhs}"));
        }
    }
    CheckOutcome::pass(NAME)
}

/// For looped `v` and transversals containing `v_chi`:
/// `r^G(T) = 1 + r^(G^v - v)(T - v_chi)`.
pub fn check_looped_lemma(g: &LoopedGraph) -> CheckOutcome {
    const NAME: &str = "looped local complement rank lemma";
    let n = g.vertex_count();
    let m = BinaryMatroid::build_ia(g);
    for v in (0..n).filter(|&v| g.is_looped(v)) {
        let name = g.name(v);
        let h = g.local_complement(name).and_then(|h| h.delete_vertex(name)).expect("vertex exists");
        let mh = BinaryMatroid::build_ia(&h);
        let v_chi = GroundLabel::chi(name);
        for mask in (0..1u64 << n).filter(|mask| mask >> v & 1 == 1) {
            let t = transversal_labels(g, mask);
            let lhs = m.rank_of(&t).expect("labels from the graph");
            let rhs = 1 + mh.rank_of(&without(&t, std::slice::from_ref(&v_chi))).expect("labels from the minor");
            if lhs != rhs {
                return CheckOutcome::fail(NAME, format!("v={name}, mask {mask:b}: {lhs} != {rhs}"));
            }
        }
    }
    CheckOutcome::pass(NAME)
}

/// Ordered pairs `(v, w)` of adjacent unlooped vertices.
fn unlooped_edges(g: &LoopedGraph) -> Vec<(usize, usize)> {
    g.edges()
        .into_iter()
        .filter(|&(v, w)| !g.is_looped(v) && !g.is_looped(w))
        .flat_map(|(v, w)| [(v, w), (w, v)])
        .collect()
}

/// For adjacent unlooped `v, w`:
/// `r^G(T) - 1 = r^(G^vw - w)(T - w_phi)` when `v_chi, w_phi` are in `T`, and
/// `r^G(T) = 2 + r^(G^vw - v - w)(T - v_chi - w_chi)` when `v_chi, w_chi` are.
pub fn check_pivot_lemmas(g: &LoopedGraph) -> CheckOutcome {
    const NAME: &str = "pivot rank lemmas";
    let n = g.vertex_count();
    let m = BinaryMatroid::build_ia(g);
    for (v, w) in unlooped_edges(g) {
        let (vn, wn) = (g.name(v), g.name(w));
        let p = g.pivot(vn, wn).expect("adjacent");
        let minus_w = BinaryMatroid::build_ia(&p.delete_vertex(wn).expect("present"));
        let minus_vw = BinaryMatroid::build_ia(
            &p.delete_vertex(wn).and_then(|h| h.delete_vertex(vn)).expect("present"),
        );
        let (v_chi, w_phi, w_chi) = (GroundLabel::chi(vn), GroundLabel::phi(wn), GroundLabel::chi(wn));
        for mask in (0..1u64 << n).filter(|mask| mask >> v & 1 == 1) {
            let t = transversal_labels(g, mask);
            let r = m.rank_of(&t).expect("labels from the graph");
            let (lhs, rhs) = if mask >> w & 1 == 0 {
                (r, 1 + minus_w.rank_of(&without(&t, std::slice::from_ref(&w_phi))).expect("labels"))
            } else {
                (
                    r,
                    2 + minus_vw
                        .rank_of(&without(&t, &[v_chi.clone(), w_chi.clone()]))
                        .expect("labels"),
                )
            };
            if lhs != rhs {
                return CheckOutcome::fail(
                    NAME,
                    format!("v={vn}, w={wn}, mask {mask:b}: {lhs} != {rhs}"),
                );
            }
        }
    }
    CheckOutcome::pass(NAME)
}

/// `M(IA(G - v))` and `(M(IA(G)) / v_phi) - v_chi` have the same rank on
/// every subset, for every vertex `v`.
pub fn check_minor_identity(g: &LoopedGraph) -> CheckOutcome {
    const NAME: &str = "vertex deletion is a matroid minor";
    let m = BinaryMatroid::build_ia(g);
    for v in 0..g.vertex_count() {
        let name = g.name(v);
        let direct = BinaryMatroid::build_ia(&g.delete_vertex(name).expect("present"));
        let minor = m
            .contract(&GroundLabel::phi(name))
            .and_then(|x| x.delete(&GroundLabel::chi(name)))
            .expect("labels present");
        let labels = direct.labels();
        if labels.len() > 63 {
            continue;
        }
        for mask in 0..1u64 << labels.len() {
            let t: Vec<GroundLabel> = (0..labels.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| labels[i].clone())
                .collect();
            let (a, b) = (direct.rank_of(&t), minor.rank_of(&t));
            if a != b {
                return CheckOutcome::fail(NAME, format!("v={name}, subset mask {mask:b}"));
            }
        }
    }
    CheckOutcome::pass(NAME)
}

/// `q(G) = q(G - v) + (x-1) * [section of (M(IA(G)) - v_phi) / v_chi]` for
/// every non-isolated `v`, with the section read as a polynomial in `x, y`.
pub fn check_deletion_contraction_formula(g: &LoopedGraph, opts: &EnumOptions) -> Result<CheckOutcome> {
    const NAME: &str = "q(G) = q(G-v) + (x-1) section((M - v_phi) / v_chi)";
    let q = q_subset_with(g, opts)?;
    let m = BinaryMatroid::build_ia(g);
    for v in (0..g.vertex_count()).filter(|&v| !g.is_isolated(v)) {
        let name = g.name(v);
        let minus_v = q_subset_with(&g.delete_vertex(name)?, opts)?;
        let minor = m.delete(&GroundLabel::phi(name))?.contract(&GroundLabel::chi(name))?;
        let scheme = TransversalScheme::from_matroid(&minor)?;
        let section = section_transversal_with(&minor, &scheme, &q_assignment(&minor), opts)?;
        let rhs = minus_v.add(&section_to_q(&x_minus_1().mul(&section))?);
        if rhs != q {
            return Ok(CheckOutcome::fail(NAME, format!("v={name}: {rhs} != {q}")));
        }
    }
    Ok(CheckOutcome::pass(NAME))
}

/// For adjacent unlooped `v, w`, split the minor's section by whether the
/// transversal uses `w_phi` or `w_chi` (`S_phi`, `S_chi`), and split
/// `q(G^vw - w)` by `v_phi` or `v_chi` (`q_phi`, `q_chi`). Then
/// `(x-1) S_phi = q_chi`, `q_phi = q(G^vw - v - w)` and
/// `S_chi = (x-1) q(G^vw - v - w)`.
pub fn check_pivot_splits(g: &LoopedGraph, opts: &EnumOptions) -> Result<CheckOutcome> {
    const NAME: &str = "pivot recursion split identities";
    let m = BinaryMatroid::build_ia(g);
    let xm1 = x_minus_1();
    for (v, w) in unlooped_edges(g) {
        let (vn, wn) = (g.name(v), g.name(w));
        let minor = m.delete(&GroundLabel::phi(vn))?.contract(&GroundLabel::chi(vn))?;
        let minor_scheme = TransversalScheme::from_matroid(&minor)?;
        let minor_asg = q_assignment(&minor);
        let split = |mat: &BinaryMatroid, scheme: &TransversalScheme, asg: &ParameterAssignment, l: GroundLabel| {
            section_restricted(mat, scheme, asg, &[l], opts)
        };
        let s_phi = split(&minor, &minor_scheme, &minor_asg, GroundLabel::phi(wn))?;
        let s_chi = split(&minor, &minor_scheme, &minor_asg, GroundLabel::chi(wn))?;

        let p = g.pivot(vn, wn)?;
        let h = p.delete_vertex(wn)?;
        let mh = BinaryMatroid::build_ia(&h);
        let h_scheme = TransversalScheme::from_matroid(&mh)?;
        let h_asg = q_assignment(&mh);
        let q_phi = section_to_q(&split(&mh, &h_scheme, &h_asg, GroundLabel::phi(vn))?)?;
        let q_chi = section_to_q(&split(&mh, &h_scheme, &h_asg, GroundLabel::chi(vn))?)?;
        let q_k = q_subset_with(&h.delete_vertex(vn)?, opts)?;

        let at = format!("v={vn}, w={wn}");
        if section_to_q(&xm1.mul(&s_phi))? != q_chi {
            return Ok(CheckOutcome::fail(NAME, format!("{at}: (x-1) S_phi != q_chi")));
        }
        if q_phi != q_k {
            return Ok(CheckOutcome::fail(NAME, format!("{at}: q_phi != q(G^vw-v-w)")));
        }
        if section_to_q(&s_chi)? != xm1.mul(&q_k) {
            return Ok(CheckOutcome::fail(NAME, format!("{at}: S_chi != (x-1) q(G^vw-v-w)")));
        }
    }
    Ok(CheckOutcome::pass(NAME))
}

/// Pendant `v` on `w`: `v` unlooped with `w` as its only neighbor.
pub fn pendant_pairs(g: &LoopedGraph) -> Vec<(usize, usize)> {
    (0..g.vertex_count())
        .filter(|&v| !g.is_looped(v) && g.degree(v) == 1)
        .map(|v| (v, g.neighbors(v).next().expect("degree one")))
        .collect()
}

/// Twins: same loop flag and the same nonempty set of neighbors outside
/// `{v, w}`; whether `v` and `w` are adjacent is not restricted.
pub fn twin_pairs(g: &LoopedGraph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let outer = |x: usize, v: usize, w: usize| -> Vec<usize> {
        g.neighbors(x).filter(|&y| y != v && y != w).collect()
    };
    let mut out = Vec::new();
    for v in 0..n {
        for w in (v + 1)..n {
            let nv = outer(v, v, w);
            if g.is_looped(v) == g.is_looped(w) && !nv.is_empty() && nv == outer(w, v, w) {
                out.push((v, w));
            }
        }
    }
    out
}

/// Pendant `v` on `w`: `v_chi` and `w_phi` are parallel in `M(IA(G))`.
/// Twins `v, w`: `v_chi` and `w_chi` are parallel in
/// `M(IA(G)) / {v_phi, w_phi}`.
pub fn check_pendants_and_twins(g: &LoopedGraph) -> CheckOutcome {
    const NAME: &str = "pendant and twin parallel elements";
    let m = BinaryMatroid::build_ia(g);
    for (v, w) in pendant_pairs(g) {
        let (vn, wn) = (g.name(v), g.name(w));
        if !m.are_parallel(&GroundLabel::chi(vn), &GroundLabel::phi(wn)).expect("labels") {
            return CheckOutcome::fail(NAME, format!("pendant {vn} on {wn}"));
        }
    }
    for (v, w) in twin_pairs(g) {
        let (vn, wn) = (g.name(v), g.name(w));
        let contracted = m
            .contract_all(&[GroundLabel::phi(vn), GroundLabel::phi(wn)])
            .expect("labels");
        if !contracted.are_parallel(&GroundLabel::chi(vn), &GroundLabel::chi(wn)).expect("labels") {
            return CheckOutcome::fail(NAME, format!("twins {vn}, {wn}"));
        }
    }
    CheckOutcome::pass(NAME)
}

/// The `IAS` section with `a(v_psi) = 0`, `b(v_psi) = 1` equals the `IA`
/// section, symbolic in the `phi` and `chi` parameters.
pub fn check_ias_restriction(g: &LoopedGraph, opts: &EnumOptions) -> Result<CheckOutcome> {
    const NAME: &str = "IAS section with psi fixed to (0, 1) == IA section";
    let ia = BinaryMatroid::build_ia(g);
    let ias = BinaryMatroid::build_ias(g);
    let ia_section = section_transversal_with(
        &ia,
        &TransversalScheme::from_matroid(&ia)?,
        &ParameterAssignment::symbolic(&ia),
        opts,
    )?;
    let restricted = with_kind_fixed(
        &ParameterAssignment::symbolic(&ias),
        ElementKind::Psi,
        &MultiPoly::zero(),
        &MultiPoly::one(),
    );
    let ias_section = section_transversal_with(&ias, &TransversalScheme::from_matroid(&ias)?, &restricted, opts)?;
    Ok(if ia_section == ias_section {
        CheckOutcome::pass(NAME)
    } else {
        CheckOutcome::fail(NAME, format!("{ias_section} != {ia_section}"))
    })
}

/// `q` recovered from the `IAS` section under the restricted assignment.
pub fn check_ias_q(g: &LoopedGraph, opts: &EnumOptions) -> Result<CheckOutcome> {
    const NAME: &str = "q from IAS section == q";
    let ias = BinaryMatroid::build_ias(g);
    let section = section_transversal_with(&ias, &TransversalScheme::from_matroid(&ias)?, &q_assignment(&ias), opts)?;
    let from_ias = section_to_q(&section)?;
    let q = q_subset_with(g, opts)?;
    Ok(if from_ias == q {
        CheckOutcome::pass(NAME)
    } else {
        CheckOutcome::fail(NAME, format!("{from_ias} != {q}"))
    })
}

/// Summary of an exhaustive run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelfcheckReport {
    pub graphs: u64,
    pub random_graphs: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SelfcheckReport {
    fn record(&mut self, g: &LoopedGraph, outcomes: Result<Vec<CheckOutcome>>) {
        let failed: Vec<String> = match outcomes {
            Ok(list) => list.into_iter().filter(|o| !o.passed()).map(|o| o.to_string()).collect(),
            Err(e) => vec![format!("error: {e}")],
        };
        if !failed.is_empty() {
            self.failures += 1;
            if self.first_failure.is_none() {
                let graph = g.to_string().trim_end().replace('\n', "; ");
                self.first_failure = Some(format!("[{graph}] {}", failed.join(" | ")));
            }
        }
    }
}

/// Largest vertex count for which the `IAS` subset expansion is part of the
/// per-graph selfcheck suite.
const SELFCHECK_IAS_EXPANSION_MAX: usize = 4;

/// The per-graph suite used by [`selfcheck`]: everything in
/// [`Suite::All`], with seeded integer parameters for the evaluator and
/// filter comparisons.
pub fn selfcheck_graph(g: &LoopedGraph, rng: &mut impl Rng, opts: &EnumOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = check_q_methods(g, opts)?;
    let ia = BinaryMatroid::build_ia(g);
    let asg = random_integer_assignment(&ia, rng);
    out.push(check_tau_methods(&ia, &asg, opts)?);
    out.push(check_section_filter(&ia, &asg, opts)?);
    if g.vertex_count() <= SELFCHECK_IAS_EXPANSION_MAX {
        let ias = BinaryMatroid::build_ias(g);
        let asg = random_integer_assignment(&ias, rng);
        out.push(check_tau_methods(&ias, &asg, opts)?);
        out.push(check_section_filter(&ias, &asg, opts)?);
    }
    out.push(check_rank_identity(g));
    out.push(check_ias_restriction(g, opts)?);
    out.push(check_ias_q(g, opts)?);
    out.push(check_looped_lemma(g));
    out.push(check_pivot_lemmas(g));
    out.push(check_minor_identity(g));
    out.push(check_deletion_contraction_formula(g, opts)?);
    out.push(check_pivot_splits(g, opts)?);
    out.push(check_pendants_and_twins(g));
    Ok(out)
}

/// Runs [`selfcheck_graph`] on every looped simple graph with exactly
/// `vertices` labeled vertices, then the three-way `q` comparison on
/// `random_extra` seeded random graphs with 6 to 9 vertices.
pub fn selfcheck(vertices: usize, seed: u64, random_extra: u64) -> SelfcheckReport {
    let opts = EnumOptions::serial();
    let mut report = SelfcheckReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for code in 0..LoopedGraph::labeled_count(vertices) {
        let g = LoopedGraph::from_code(vertices, code);
        let outcome = selfcheck_graph(&g, &mut rng, &opts);
        report.graphs += 1;
        report.record(&g, outcome);
    }
    for _ in 0..random_extra {
        let g = random_graph(&mut rng, 6..=9);
        let outcome = check_q_methods(&g, &opts);
        report.random_graphs += 1;
        report.record(&g, outcome);
    }
    report
}

/// Uniform random looped simple graph with a vertex count drawn from `sizes`.
pub fn random_graph(rng: &mut impl Rng, sizes: std::ops::RangeInclusive<usize>) -> LoopedGraph {
    let n = rng.gen_range(sizes);
    let mut g = LoopedGraph::from_code(n, 0);
    for i in 0..n {
        g.set_loop(i, rng.gen_bool(0.5));
        for j in (i + 1)..n {
            g.set_edge(i, j, rng.gen_bool(0.5));
        }
    }
    g
}

/// A random graph on `n - 1` vertices plus a new unlooped vertex `p`
/// attached to one existing vertex.
pub fn plant_pendant(rng: &mut impl Rng, n: usize) -> LoopedGraph {
    let base = random_graph(rng, (n - 1)..=(n - 1));
    let mut names = base.names().to_vec();
    names.push("p".into());
    let mut g = LoopedGraph::from_parts(names, &vec![false; n], &[]);
    for i in 0..n - 1 {
        g.set_loop(i, base.is_looped(i));
        for j in (i + 1)..n - 1 {
            g.set_edge(i, j, base.adjacent(i, j));
        }
    }
    g.set_edge(n - 1, rng.gen_range(0..n - 1), true);
    g
}

/// A random graph on `n - 1 >= 2` vertices plus a twin `t` of one vertex
/// with a nonempty outer neighborhood; the twin pair's own adjacency is
/// random.
pub fn plant_twin(rng: &mut impl Rng, n: usize) -> LoopedGraph {
    loop {
        let base = random_graph(rng, (n - 1)..=(n - 1));
        let w = rng.gen_range(0..n - 1);
        if base.degree(w) == 0 {
            continue;
        }
        let mut names = base.names().to_vec();
        names.push("t".into());
        let mut g = LoopedGraph::from_parts(names, &vec![false; n], &[]);
        for i in 0..n - 1 {
            g.set_loop(i, base.is_looped(i));
            for j in (i + 1)..n - 1 {
                g.set_edge(i, j, base.adjacent(i, j));
            }
        }
        let t = n - 1;
        g.set_loop(t, base.is_looped(w));
        for x in base.neighbors(w) {
            g.set_edge(t, x, true);
        }
        g.set_edge(t, w, rng.gen_bool(0.5));
        return g;
    }
}
