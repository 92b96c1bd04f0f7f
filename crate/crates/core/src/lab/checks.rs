//! Exhaustive checks: the edge-count bound on decomposable graphs, the
//! sum-over-roots morphism into pre-Lie, and the spanning-tree suboperads.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::Result;
use crate::graphs::{
    connected_multigraphs, trees, Mark, MultiGraph, RootedOrientedMultiGraph, RootedTree, Tree,
};
use crate::insertion::{mg_insert, orient_by_spanning_tree, psi, psi_graphs, psi_multigraph, rooted_insert};
use crate::rational::Rational;
use crate::species::{standard_labels, Bijection, Label, LinComb, Structure};
use crate::subspace::{GradedSubspace, Subspace};

use super::{find_generators, ClosureState, GraphOperad, Operad, PlieOperad};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub arity: usize,
    /// `C(n-1, 2) + 1`
    pub threshold: usize,
    /// graphs with at least `threshold` edges
    pub checked: usize,
    /// those missing from the generators reported by the search
    pub not_reported: Vec<String>,
    /// those occurring in the support of a composite of smaller graphs
    pub in_composite_support: Vec<String>,
    /// those lying individually in the span of such composites
    pub decomposable: Vec<String>,
    /// largest edge count carried by a nonzero composite
    pub max_composite_edges: usize,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.not_reported.is_empty()
    }

    /// `(not reported, in composite support)` restricted to at least `edges` edges.
    pub fn counts_from(&self, edges: usize) -> (usize, usize) {
        let count = |gs: &[String]| {
            gs.iter()
                .filter(|g| g.parse::<MultiGraph>().map(|g| g.edge_count() >= edges).unwrap_or(false))
                .count()
        };
        (count(&self.not_reported), count(&self.in_composite_support))
    }
}

/// For simple graphs on `n` vertices with at least `C(n-1,2) + 1` edges:
/// whether the generator search through arity `n` reports each of them, and
/// whether any occurs in composites of smaller graphs.
pub fn lemma_edge_bound(n: usize) -> Result<LemmaReport> {
    let op = GraphOperad::simple();
    let (_, search) = find_generators(&op, n)?;
    let reported: BTreeSet<MultiGraph> = search
        .generator_grades()
        .filter(|((k, _), _)| *k == n)
        .flat_map(|(_, gens)| gens.iter().flat_map(|g| g.basis_elements().cloned().collect::<Vec<_>>()))
        .collect();

    let mut state = ClosureState::new(op, n, None);
    for m in 2..n {
        for w in 0..=binomial(m, 2) {
            for g in op.ambient(m, w) {
                state.add_generator(&LinComb::basis(g))?;
            }
        }
    }
    let threshold = binomial(n - 1, 2) + 1;
    let mut report = LemmaReport {
        arity: n,
        threshold,
        checked: 0,
        not_reported: Vec::new(),
        in_composite_support: Vec::new(),
        decomposable: Vec::new(),
        max_composite_edges: 0,
    };
    for w in 0..=binomial(n, 2) {
        let ambient = state.set_ambient((n, w));
        let support: BTreeSet<MultiGraph> = if w >= threshold {
            state.composites((n, w))?.iter().flat_map(|c| c.basis_elements().cloned().collect::<Vec<_>>()).collect()
        } else {
            BTreeSet::new()
        };
        if state.close_grade((n, w))? > 0 {
            report.max_composite_edges = w;
        }
        if w < threshold {
            continue;
        }
        for g in ambient {
            report.checked += 1;
            if !reported.contains(&g) {
                report.not_reported.push(g.to_string());
            }
            if support.contains(&g) {
                report.in_composite_support.push(g.to_string());
            }
            if state.contains(&LinComb::basis(g.clone()))? {
                report.decomposable.push(g.to_string());
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub pairs_checked: usize,
    pub failures: Vec<String>,
    /// `(arity, number of trees, rank of their images)`
    pub injectivity: Vec<(usize, usize, usize)>,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.injectivity.iter().all(|&(_, t, r)| t == r)
    }
}

fn inner_labels(n: usize) -> Vec<Label> {
    (0..n).map(|i| Label::new(&format!("u{i}")).expect("valid")).collect()
}

fn outer_labels(n: usize) -> Vec<Label> {
    let mut vs = standard_labels(n - 1);
    vs.push(Label::hole());
    vs
}

/// Checks `ψ(t1 ∘ t2) = ψ(t1) ∘ ψ(t2)` for every pair of labeled trees whose
/// composite has arity at most `max_arity`, and injectivity of ψ per arity.
pub fn psi_morphism_check(max_arity: usize) -> Result<PsiReport> {
    let mut report = PsiReport { pairs_checked: 0, failures: Vec::new(), injectivity: Vec::new() };
    for n1 in 1..=max_arity {
        for n2 in 1..=(max_arity + 1 - n1) {
            let outer = trees(&outer_labels(n1));
            let inner = trees(&inner_labels(n2));
            for t1 in &outer {
                for t2 in &inner {
                    report.pairs_checked += 1;
                    let left = psi_graphs(&mg_insert(t1.multigraph(), t2.multigraph())?)?;
                    let right = PlieOperad.compose_linear(
                        &psi(&LinComb::basis(t1.clone())),
                        &Label::hole(),
                        &psi(&LinComb::basis(t2.clone())),
                    )?;
                    if left != right {
                        report.failures.push(format!("{t1} with {t2}"));
                    }
                }
            }
        }
    }
    for n in 1..=max_arity {
        let ts = trees(&standard_labels(n));
        let mut span = Subspace::new();
        for t in &ts {
            span.insert(&psi(&LinComb::basis(t.clone())));
        }
        report.injectivity.push((n, ts.len(), span.rank()));
    }
    Ok(report)
}

/// Whether `h` is `g` oriented by some spanning tree from its root: the
/// arrow/plain edges form a spanning tree with arrows at parent ends, and
/// every other edge carries arrows at both ends.
pub fn is_st_element(h: &RootedOrientedMultiGraph) -> bool {
    let mut tree_edges = Vec::new();
    for (a, b) in h.graph().edges() {
        match (a.mark, b.mark) {
            (Mark::Arrow, Mark::Arrow) => {}
            (Mark::Plain, Mark::Plain) => return false,
            _ => {
                if a.vertex == b.vertex {
                    return false;
                }
                tree_edges.push((a.vertex.clone(), b.vertex.clone()));
            }
        }
    }
    let Ok(g) = MultiGraph::new(h.vertices().to_vec(), tree_edges) else { return false };
    let Ok(t) = Tree::new(g) else { return false };
    let Ok(rooted) = RootedTree::new(t, h.root().clone()) else { return false };
    let expected = crate::graphs::orient_rooted_tree(&rooted);
    h.graph().edges().iter().filter(|(a, b)| a.mark != b.mark).all(|e| expected.edges().contains(e))
}

fn distinct_spanning_trees(g: &MultiGraph) -> Result<Vec<Tree>> {
    let mut ts = g.spanning_trees()?;
    ts.dedup();
    Ok(ts)
}

fn oriented(g: &MultiGraph, t: &Tree, r: &Label) -> Result<RootedOrientedMultiGraph> {
    RootedOrientedMultiGraph::new(orient_by_spanning_tree(g, t, r)?, r.clone())
}

/// The basis of 𝐒𝐓 on `vertices` with at most `max_edges` edges.
pub fn st_basis(vertices: &[Label], max_edges: usize) -> Result<Vec<RootedOrientedMultiGraph>> {
    let mut out = Vec::new();
    for e in 0..=max_edges {
        for g in connected_multigraphs(vertices, e) {
            for t in distinct_spanning_trees(&g)? {
                for r in g.vertices() {
                    out.push(oriented(&g, &t, r)?);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Spanning sums `Σ_r g→(t(r), r)` over all choice functions, per connected `g`.
fn o1_generators(vertices: &[Label], max_edges: usize) -> Result<Vec<LinComb<RootedOrientedMultiGraph>>> {
    let mut out = Vec::new();
    for e in 0..=max_edges {
        for g in connected_multigraphs(vertices, e) {
            let ts = distinct_spanning_trees(&g)?;
            let roots = g.vertices();
            let mut digits = vec![0usize; roots.len()];
            loop {
                let choice: BTreeMap<Label, Tree> =
                    roots.iter().zip(&digits).map(|(r, &i)| (r.clone(), ts[i].clone())).collect();
                out.push(psi_multigraph(&g, &choice)?);
                let mut i = 0;
                while i < digits.len() {
                    digits[i] += 1;
                    if digits[i] < ts.len() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == digits.len() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Differences `g→(t1, r) − g→(t2, r)` of two spanning trees at one root.
fn o2_generators(vertices: &[Label], max_edges: usize) -> Result<Vec<LinComb<RootedOrientedMultiGraph>>> {
    let mut out = Vec::new();
    for e in 0..=max_edges {
        for g in connected_multigraphs(vertices, e) {
            let ts = distinct_spanning_trees(&g)?;
            for r in g.vertices() {
                for (i, t1) in ts.iter().enumerate() {
                    for t2 in &ts[i + 1..] {
                        let mut d = LinComb::basis(oriented(&g, t1, r)?);
                        d.add_term(oriented(&g, t2, r)?, -Rational::one());
                        out.push(d);
                    }
                }
            }
        }
    }
    Ok(out)
}

type WeightedSpan = GradedSubspace<(usize, usize), RootedOrientedMultiGraph>;

fn span_by_grade(gens: &[LinComb<RootedOrientedMultiGraph>]) -> WeightedSpan {
    let mut span = GradedSubspace::new();
    for x in gens {
        let Some(b) = x.basis_elements().next() else { continue };
        span.span_insert((b.arity(), b.graph().edge_count()), x);
    }
    span
}

type SpanningFamily = fn(&[Label], usize) -> Result<Vec<LinComb<RootedOrientedMultiGraph>>>;

fn span_up_to(max_arity: usize, max_edges: usize, f: SpanningFamily) -> Result<WeightedSpan> {
    let mut all = Vec::new();
    for n in 1..=max_arity {
        all.extend(f(&standard_labels(n), max_edges)?);
    }
    Ok(span_by_grade(&all))
}

/// Span of 𝒪₁ on standard labels through the given arity and edge bound.
pub fn o1_span(max_arity: usize, max_edges: usize) -> Result<WeightedSpan> {
    span_up_to(max_arity, max_edges, o1_generators)
}

/// Span of 𝒪₂ on standard labels through the given arity and edge bound.
pub fn o2_span(max_arity: usize, max_edges: usize) -> Result<WeightedSpan> {
    span_up_to(max_arity, max_edges, o2_generators)
}

fn span_contains(span: &WeightedSpan, x: &LinComb<RootedOrientedMultiGraph>) -> Result<bool> {
    let Some(vs) = x.vertex_set()? else { return Ok(true) };
    let sigma = Bijection::zip(&vs, &standard_labels(vs.len()))?;
    let x = x.relabel(&sigma)?;
    let mut parts: BTreeMap<usize, LinComb<RootedOrientedMultiGraph>> = BTreeMap::new();
    for (b, c) in x.iter() {
        parts.entry(b.graph().edge_count()).or_default().add_term(b.clone(), c.clone());
    }
    Ok(parts.iter().all(|(&w, part)| span.contains(&(vs.len(), w), part)))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyCount {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyCount {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StReport {
    pub max_arity: usize,
    pub max_edges: usize,
    /// 𝐒𝐓 basis sizes per arity
    pub st_sizes: Vec<usize>,
    pub st_suboperad: PropertyCount,
    pub o1_suboperad: PropertyCount,
    pub o2_ideal: PropertyCount,
    pub choice_independence: PropertyCount,
}

impl StReport {
    pub fn passed(&self) -> bool {
        [&self.st_suboperad, &self.o1_suboperad, &self.o2_ideal, &self.choice_independence]
            .iter()
            .all(|p| p.failures.is_empty() && p.checked > 0)
    }
}

fn relabel_onto(
    x: &LinComb<RootedOrientedMultiGraph>,
    labels: &[Label],
) -> Result<LinComb<RootedOrientedMultiGraph>> {
    let Some(vs) = x.vertex_set()? else { return Ok(LinComb::zero()) };
    x.relabel(&Bijection::zip(&vs, labels)?)
}

fn compose_lin(
    x: &LinComb<RootedOrientedMultiGraph>,
    y: &LinComb<RootedOrientedMultiGraph>,
) -> Result<LinComb<RootedOrientedMultiGraph>> {
    crate::insertion::compose_linear(x, y, rooted_insert)
}

/// The three closure properties of 𝐒𝐓 ⊃ 𝒪₁ ⊃ 𝒪₂ for composites of arity at
/// most `max_arity` and at most `max_edges` edges, plus independence of the
/// spanning-tree choice for ψ on the triangle.
pub fn st_checks(max_arity: usize, max_edges: usize) -> Result<StReport> {
    let o1 = o1_span(max_arity, max_edges)?;
    let o2 = o2_span(max_arity, max_edges)?;
    let mut report = StReport {
        max_arity,
        max_edges,
        st_sizes: Vec::new(),
        st_suboperad: PropertyCount::default(),
        o1_suboperad: PropertyCount::default(),
        o2_ideal: PropertyCount::default(),
        choice_independence: PropertyCount::default(),
    };
    for n in 1..=max_arity {
        report.st_sizes.push(st_basis(&standard_labels(n), max_edges)?.len());
    }
    for n1 in 1..=max_arity {
        for n2 in 1..=(max_arity + 1 - n1) {
            let (outer, inner) = (outer_labels(n1), inner_labels(n2));
            let st_outer = st_basis(&outer, max_edges)?;
            let st_inner = st_basis(&inner, max_edges)?;
            for x in &st_outer {
                for y in &st_inner {
                    if x.graph().edge_count() + y.graph().edge_count() > max_edges {
                        continue;
                    }
                    let z = rooted_insert(x, y)?;
                    let ok = z.basis_elements().all(is_st_element);
                    report.st_suboperad.record(ok, || format!("{x} with {y}"));
                }
            }
            let within = |x: &LinComb<RootedOrientedMultiGraph>, y: &LinComb<RootedOrientedMultiGraph>| {
                let wx = x.basis_elements().next().map_or(0, |b| b.graph().edge_count());
                let wy = y.basis_elements().next().map_or(0, |b| b.graph().edge_count());
                wx + wy <= max_edges
            };
            let o1_outer: Vec<_> = o1_generators(&standard_labels(n1), max_edges)?
                .iter()
                .map(|x| relabel_onto(x, &outer))
                .collect::<Result<_>>()?;
            let o1_inner: Vec<_> = o1_generators(&standard_labels(n2), max_edges)?
                .iter()
                .map(|x| relabel_onto(x, &inner))
                .collect::<Result<_>>()?;
            let o2_outer: Vec<_> = o2_generators(&standard_labels(n1), max_edges)?
                .iter()
                .map(|x| relabel_onto(x, &outer))
                .collect::<Result<_>>()?;
            let o2_inner: Vec<_> = o2_generators(&standard_labels(n2), max_edges)?
                .iter()
                .map(|x| relabel_onto(x, &inner))
                .collect::<Result<_>>()?;
            for x in &o1_outer {
                for y in &o1_inner {
                    if within(x, y) {
                        let ok = span_contains(&o1, &compose_lin(x, y)?)?;
                        report.o1_suboperad.record(ok, || format!("{x} with {y}"));
                    }
                }
                for y in &o2_inner {
                    if within(x, y) {
                        let ok = span_contains(&o2, &compose_lin(x, y)?)?;
                        report.o2_ideal.record(ok, || format!("{x} with {y}"));
                    }
                }
            }
            for x in &o2_outer {
                for y in &o1_inner {
                    if within(x, y) {
                        let ok = span_contains(&o2, &compose_lin(x, y)?)?;
                        report.o2_ideal.record(ok, || format!("{x} with {y}"));
                    }
                }
            }
        }
    }
    let triangle: MultiGraph = "vertices=a,b,c; edges=a-b,a-c,b-c".parse().expect("valid");
    let default = crate::insertion::psi_multigraph_default(&triangle)?;
    let ts = distinct_spanning_trees(&triangle)?;
    for t in &ts {
        for r in triangle.vertices() {
            let mut choice = crate::insertion::default_spanning_choice(&triangle)?;
            choice.insert(r.clone(), t.clone());
            let diff = psi_multigraph(&triangle, &choice)? - default.clone();
            let ok = span_contains(&o2, &diff)?;
            report.choice_independence.record(ok, || format!("tree {t} at root {r}"));
        }
    }
    Ok(report)
}

/// `(a–∗)∘(b–c) + (c–∗)∘(b–a) − (b–∗)∘(a–c) − 2·(a–b–c)` in 𝕂G, which is zero
/// although it is a nontrivial combination of composites.
pub fn nf_combination() -> Result<LinComb<MultiGraph>> {
    let op = GraphOperad::simple();
    let g = |s: &str| -> Result<LinComb<MultiGraph>> { Ok(LinComb::basis(s.parse::<MultiGraph>()?)) };
    let hole = Label::hole();
    let term = |outer: &str, inner: &str| -> Result<LinComb<MultiGraph>> { op.compose_linear(&g(outer)?, &hole, &g(inner)?) };
    let mut x = term("vertices=a,*; edges=a-*", "vertices=b,c; edges=b-c")?;
    x += term("vertices=c,*; edges=c-*", "vertices=a,b; edges=a-b")?;
    x -= term("vertices=b,*; edges=b-*", "vertices=a,c; edges=a-c")?;
    x -= g("vertices=a,b,c; edges=a-b,b-c")?.scale(&Rational::from_int(2));
    Ok(x)
}

#[derive(Clone, Debug, Serialize)]
pub struct LpReport {
    pub edge_bound: usize,
    /// `(arity, LP dimension)` through the checked arity
    pub lp_dims: Vec<(usize, usize)>,
    /// SP basis vectors tested for membership in LP
    pub sp_checked: usize,
    pub sp_outside_lp: Vec<String>,
    pub witness: String,
    pub witness_in_lp: bool,
}

impl LpReport {
    pub fn passed(&self) -> bool {
        self.sp_checked > 0 && self.sp_outside_lp.is_empty() && !self.witness_in_lp
    }
}

/// The suboperad of 𝕂MG generated by the loop and the edgeless pair, checked
/// to contain the one generated by the edgeless pair and the edge through
/// `max_arity`, and to miss the multigraph `a–b, b=c` at arity 3.
pub fn lp_checks(max_arity: usize, edge_bound: usize) -> Result<LpReport> {
    let g = |s: &str| -> Result<LinComb<MultiGraph>> { Ok(LinComb::basis(s.parse::<MultiGraph>()?)) };
    let lp = super::close(
        &GraphOperad::multigraphs(),
        &[g("vertices=a; edges=a-a")?, g("vertices=a,b; edges=")?],
        max_arity,
        Some(edge_bound),
    )?;
    let sp = super::close(
        &GraphOperad::simple(),
        &[g("vertices=a,b; edges=")?, g("vertices=a,b; edges=a-b")?],
        max_arity,
        Some(edge_bound),
    )?;
    let witness = "vertices=a,b,c; edges=a-b,b-c,b-c".to_string();
    let mut report = LpReport {
        edge_bound,
        lp_dims: lp.hilbert_dims()?,
        sp_checked: 0,
        sp_outside_lp: Vec::new(),
        witness_in_lp: lp.contains(&g(&witness)?)?,
        witness,
    };
    for grade in sp.grades()? {
        for v in sp.basis(grade) {
            report.sp_checked += 1;
            if !lp.contains(v)? {
                report.sp_outside_lp.push(v.to_string());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::RootedOperad;

    #[test]
    fn st_membership_matches_enumeration() {
        for n in 1..=3 {
            for e in 0..=2 {
                let by_filter: Vec<_> =
                    RootedOperad.ambient(n, e).into_iter().filter(is_st_element).collect();
                let mut by_construction: Vec<_> = st_basis(&standard_labels(n), e)
                    .unwrap()
                    .into_iter()
                    .filter(|h| h.graph().edge_count() == e)
                    .collect();
                by_construction.sort();
                assert_eq!(by_filter, by_construction, "n={n} e={e}");
            }
        }
    }

    #[test]
    fn o2_is_inside_o1() {
        let o1 = o1_span(3, 2).unwrap();
        for x in o2_generators(&standard_labels(3), 2).unwrap() {
            assert!(span_contains(&o1, &x).unwrap());
        }
    }

    #[test]
    fn nf_vanishes() {
        assert!(nf_combination().unwrap().is_zero());
    }

    #[test]
    fn lp_small() {
        let r = lp_checks(3, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        // without the witness's double edge, the path is in LP
        let lp = crate::lab::close(
            &GraphOperad::multigraphs(),
            &[LinComb::basis("vertices=a; edges=a-a".parse().unwrap()), LinComb::basis("vertices=a,b; edges=".parse().unwrap())],
            3,
            Some(3),
        )
        .unwrap();
        assert!(lp.contains(&LinComb::basis("vertices=a,b,c; edges=a-b,b-c".parse().unwrap())).unwrap());
    }

    #[test]
    fn psi_small() {
        let r = psi_morphism_check(3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.injectivity, vec![(1, 1, 1), (2, 1, 1), (3, 3, 3)]);
    }

    #[test]
    fn lemma_at_three() {
        // threshold 2: the path a-b-c is a composite (edge into edge), the triangle is a generator
        let r = lemma_edge_bound(3).unwrap();
        assert_eq!(r.threshold, 2);
        assert_eq!(r.max_composite_edges, 2);
        assert_eq!(r.counts_from(3), (0, 0));
        assert_eq!(r.not_reported.len(), 3);
        assert_eq!(r.decomposable.len(), 3);
    }

    #[test]
    fn four_cycles_escape_the_bound_at_four() {
        let r = lemma_edge_bound(4).unwrap();
        assert_eq!(r.threshold, 4);
        assert_eq!(r.max_composite_edges, 4);
        assert_eq!(r.not_reported.len(), 3);
        for g in &r.not_reported {
            let g: MultiGraph = g.parse().unwrap();
            assert_eq!(g.canonical_shape(), "vertices=a,b,c,d; edges=a-b,a-c,b-d,c-d");
        }
        assert!(r.decomposable.is_empty());
        // one edge more and nothing is composite
        assert_eq!(r.counts_from(5), (0, 0));
    }
}
