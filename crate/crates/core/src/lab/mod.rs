//! Generic operad machinery: operad handles, axiom checks, suboperad closure
//! and generator search.

mod axioms;
mod checks;
mod closure;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graphs::{
    multigraphs, trees, End, GraphFamily, Mark, MultiGraph, OrientedMultiGraph,
    RootedOrientedMultiGraph, RootedTree, Tree,
};
use crate::insertion::{mg_insert_at, plie_compose_at, rooted_insert_at};
use crate::species::{permutations, standard_labels, Bijection, Label, LinComb, Structure};

pub use axioms::{check_axioms, random_samples, AxiomFailure, AxiomReport, AxiomSample, Diagram};
pub use checks::{
    is_st_element, lemma_edge_bound, lp_checks, nf_combination, o1_span, o2_span, psi_morphism_check,
    st_basis, st_checks, LemmaReport, LpReport, PropertyCount, PsiReport, StReport,
};
pub use closure::{close, find_generators, find_generators_bounded, ArityReport, ClosureState, GeneratorReport, GeneratorShape, Grade};

/// A linear operad whose basis is a species of labeled structures, graded by
/// arity and an additive weight (the edge count for every graph operad here).
pub trait Operad: Sync + Send + Clone {
    type Basis: Structure;

    fn name(&self) -> String;

    /// Partial composition `x ∘_hole y` on basis elements.
    fn compose_at(&self, x: &Self::Basis, hole: &Label, y: &Self::Basis) -> Result<LinComb<Self::Basis>>;

    /// The identity element on the one-point set `{v}`.
    fn unit(&self, v: &Label) -> Self::Basis;

    /// Additive weight under composition.
    fn weight(&self, b: &Self::Basis) -> usize;

    /// Largest weight occurring at arity `n`, when finite.
    fn max_weight(&self, n: usize) -> Option<usize>;

    /// All basis elements on `a, b, ...` of arity `n` and the given weight, in canonical order.
    fn ambient(&self, n: usize, weight: usize) -> Vec<Self::Basis>;

    /// A random basis element on the given vertex set.
    fn random_element(&self, vertices: &[Label], rng: &mut ChaCha8Rng) -> Self::Basis;

    /// Isomorphism-class code: the least serialization over relabelings onto `a, b, ...`.
    fn shape(&self, b: &Self::Basis) -> String {
        relabelings_onto_standard(b.vertices())
            .map(|sigma| b.transport(&sigma).expect("domain matches").1.to_string())
            .min()
            .unwrap_or_default()
    }

    /// Linear extension of [`Operad::compose_at`].
    fn compose_linear(
        &self,
        x: &LinComb<Self::Basis>,
        hole: &Label,
        y: &LinComb<Self::Basis>,
    ) -> Result<LinComb<Self::Basis>> {
        crate::insertion::compose_linear(x, y, |a, b| self.compose_at(a, hole, b))
    }
}

/// Multigraph-valued operads: 𝕂MG and its suboperads of connected, simple and
/// tree-shaped graphs, all composed by insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphOperad {
    family: GraphFamily,
}

impl GraphOperad {
    pub fn new(family: GraphFamily) -> Self {
        GraphOperad { family }
    }
    pub fn multigraphs() -> Self {
        Self::new(GraphFamily::Multi)
    }
    pub fn connected_multigraphs() -> Self {
        Self::new(GraphFamily::ConnectedMulti)
    }
    pub fn simple() -> Self {
        Self::new(GraphFamily::Simple)
    }
    pub fn connected_simple() -> Self {
        Self::new(GraphFamily::ConnectedSimple)
    }
    pub fn trees() -> Self {
        Self::new(GraphFamily::Trees)
    }
    pub fn family(&self) -> GraphFamily {
        self.family
    }
}

fn random_tree_edges(vertices: &[Label], rng: &mut ChaCha8Rng) -> Vec<(Label, Label)> {
    let mut order = vertices.to_vec();
    order.shuffle(rng);
    (1..order.len()).map(|i| (order[rng.gen_range(0..i)].clone(), order[i].clone())).collect()
}

fn random_pair(vertices: &[Label], loops: bool, rng: &mut ChaCha8Rng) -> Option<(Label, Label)> {
    if !loops && vertices.len() < 2 {
        return None;
    }
    loop {
        let u = vertices.choose(rng)?.clone();
        let v = vertices.choose(rng)?.clone();
        if loops || u != v {
            return Some((u, v));
        }
    }
}

impl Operad for GraphOperad {
    type Basis = MultiGraph;

    fn name(&self) -> String {
        match self.family {
            GraphFamily::Multi => "MG",
            GraphFamily::ConnectedMulti => "MGc",
            GraphFamily::Simple => "G",
            GraphFamily::ConnectedSimple => "Gc",
            GraphFamily::Trees => "T",
        }
        .to_string()
    }

    fn compose_at(&self, x: &MultiGraph, hole: &Label, y: &MultiGraph) -> Result<LinComb<MultiGraph>> {
        for g in [x, y] {
            if !self.family.admits(g) {
                return Err(Error::NotInFamily { element: g.to_string(), operad: self.name() });
            }
        }
        mg_insert_at(x, hole, y)
    }

    fn unit(&self, v: &Label) -> MultiGraph {
        MultiGraph::vertex(v.clone())
    }

    fn weight(&self, b: &MultiGraph) -> usize {
        b.edge_count()
    }

    fn max_weight(&self, n: usize) -> Option<usize> {
        self.family.max_edges(n)
    }

    fn ambient(&self, n: usize, weight: usize) -> Vec<MultiGraph> {
        self.family.basis(&standard_labels(n), weight)
    }

    fn random_element(&self, vertices: &[Label], rng: &mut ChaCha8Rng) -> MultiGraph {
        let vs = vertices.to_vec();
        let edges: Vec<(Label, Label)> = match self.family {
            GraphFamily::Multi => {
                let k = rng.gen_range(0..=3);
                (0..k).filter_map(|_| random_pair(vertices, true, rng)).collect()
            }
            GraphFamily::ConnectedMulti => {
                let mut es = random_tree_edges(vertices, rng);
                let k = rng.gen_range(0..=2);
                es.extend((0..k).filter_map(|_| random_pair(vertices, true, rng)));
                es
            }
            GraphFamily::Simple => {
                let mut es = Vec::new();
                for (i, u) in vertices.iter().enumerate() {
                    for v in &vertices[i + 1..] {
                        if rng.gen_bool(0.5) {
                            es.push((u.clone(), v.clone()));
                        }
                    }
                }
                es
            }
            GraphFamily::ConnectedSimple => {
                let mut es = random_tree_edges(vertices, rng);
                if let Some(extra) = random_pair(vertices, false, rng) {
                    let present = es.iter().any(|(a, b)| {
                        (a == &extra.0 && b == &extra.1) || (a == &extra.1 && b == &extra.0)
                    });
                    if !present {
                        es.push(extra);
                    }
                }
                es
            }
            GraphFamily::Trees => random_tree_edges(vertices, rng),
        };
        MultiGraph::new(vs, edges).expect("endpoints are vertices")
    }

    fn shape(&self, b: &MultiGraph) -> String {
        b.canonical_shape()
    }
}

/// Rooted oriented multigraphs under rooted insertion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RootedOperad;

fn oriented_edge_types(vertices: &[Label]) -> Vec<(End, End)> {
    let marks = [Mark::Plain, Mark::Arrow];
    let mut out = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        for v in &vertices[i..] {
            for mu in marks {
                for mv in marks {
                    if u == v && mu > mv {
                        continue;
                    }
                    out.push((End::new(u.clone(), mu), End::new(v.clone(), mv)));
                }
            }
        }
    }
    out
}

impl Operad for RootedOperad {
    type Basis = RootedOrientedMultiGraph;

    fn name(&self) -> String {
        "MGorc".to_string()
    }

    fn compose_at(
        &self,
        x: &RootedOrientedMultiGraph,
        hole: &Label,
        y: &RootedOrientedMultiGraph,
    ) -> Result<LinComb<RootedOrientedMultiGraph>> {
        rooted_insert_at(x, hole, y)
    }

    fn unit(&self, v: &Label) -> RootedOrientedMultiGraph {
        let g = OrientedMultiGraph::new([v.clone()], []).expect("single vertex");
        RootedOrientedMultiGraph::new(g, v.clone()).expect("root is the vertex")
    }

    fn weight(&self, b: &RootedOrientedMultiGraph) -> usize {
        b.graph().edge_count()
    }

    fn max_weight(&self, _n: usize) -> Option<usize> {
        None
    }

    fn ambient(&self, n: usize, weight: usize) -> Vec<RootedOrientedMultiGraph> {
        let vs = standard_labels(n);
        let types = oriented_edge_types(&vs);
        let mut out = Vec::new();
        let mut idx = vec![0usize; weight];
        fn rec(
            types: &[(End, End)],
            vs: &[Label],
            start: usize,
            depth: usize,
            idx: &mut Vec<usize>,
            out: &mut Vec<RootedOrientedMultiGraph>,
        ) {
            if depth == idx.len() {
                let edges: Vec<(End, End)> = idx.iter().map(|&i| types[i].clone()).collect();
                let g = OrientedMultiGraph::from_sorted(vs.to_vec(), edges);
                for r in vs {
                    out.push(RootedOrientedMultiGraph::new(g.clone(), r.clone()).expect("vertex"));
                }
                return;
            }
            for i in start..types.len() {
                idx[depth] = i;
                rec(types, vs, i, depth + 1, idx, out);
            }
        }
        rec(&types, &vs, 0, 0, &mut idx, &mut out);
        out.sort();
        out
    }

    fn random_element(&self, vertices: &[Label], rng: &mut ChaCha8Rng) -> RootedOrientedMultiGraph {
        let k = rng.gen_range(0..=3);
        let mark = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { Mark::Arrow } else { Mark::Plain };
        let mut edges: Vec<(End, End)> = Vec::new();
        for _ in 0..k {
            if let Some((u, v)) = random_pair(vertices, true, rng) {
                edges.push((End::new(u, mark(rng)), End::new(v, mark(rng))));
            }
        }
        let g = OrientedMultiGraph::new(vertices.to_vec(), edges).expect("endpoints are vertices");
        let root = vertices.choose(rng).expect("nonempty").clone();
        RootedOrientedMultiGraph::new(g, root).expect("root is a vertex")
    }
}

/// Rooted trees with the pre-Lie composition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlieOperad;

impl Operad for PlieOperad {
    type Basis = RootedTree;

    fn name(&self) -> String {
        "PLie".to_string()
    }

    fn compose_at(&self, x: &RootedTree, hole: &Label, y: &RootedTree) -> Result<LinComb<RootedTree>> {
        plie_compose_at(x, hole, y)
    }

    fn unit(&self, v: &Label) -> RootedTree {
        let t = Tree::new(MultiGraph::vertex(v.clone())).expect("single vertex");
        RootedTree::new(t, v.clone()).expect("root is the vertex")
    }

    fn weight(&self, b: &RootedTree) -> usize {
        b.tree().edge_count()
    }

    fn max_weight(&self, n: usize) -> Option<usize> {
        Some(n.saturating_sub(1))
    }

    fn ambient(&self, n: usize, weight: usize) -> Vec<RootedTree> {
        if weight + 1 != n {
            return Vec::new();
        }
        let vs = standard_labels(n);
        let mut out: Vec<RootedTree> = trees(&vs)
            .into_iter()
            .flat_map(|t| vs.iter().map(move |r| RootedTree::new(t.clone(), r.clone()).expect("vertex")))
            .collect();
        out.sort();
        out
    }

    fn random_element(&self, vertices: &[Label], rng: &mut ChaCha8Rng) -> RootedTree {
        let g = MultiGraph::new(vertices.to_vec(), random_tree_edges(vertices, rng)).expect("valid");
        let root = vertices.choose(rng).expect("nonempty").clone();
        RootedTree::new(Tree::new(g).expect("random tree"), root).expect("root is a vertex")
    }
}

/// All bijections from `vertices` onto `a, b, ...`.
pub(crate) fn relabelings_onto_standard(vertices: &[Label]) -> impl Iterator<Item = Bijection> + '_ {
    let target = standard_labels(vertices.len());
    permutations(vertices.len()).into_iter().map(move |p| {
        let images: Vec<Label> = p.iter().map(|&i| target[i].clone()).collect();
        Bijection::zip(vertices, &images).expect("same length, distinct labels")
    })
}

/// Every relabeling of `x` onto `a, b, ...`, keeping only linearly independent images.
pub(crate) fn standard_orbit<B: Structure>(x: &LinComb<B>) -> Result<Vec<LinComb<B>>> {
    let Some(vs) = x.vertex_set()? else { return Ok(Vec::new()) };
    let mut span = crate::subspace::Subspace::new();
    let mut out = Vec::new();
    for sigma in relabelings_onto_standard(&vs) {
        let y = x.relabel(&sigma)?;
        if span.insert(&y) {
            out.push(y);
        }
    }
    Ok(out)
}

/// The weight shared by every term of `x`.
pub(crate) fn homogeneous_weight<O: Operad>(op: &O, x: &LinComb<O::Basis>) -> Result<Option<usize>> {
    let mut weights = x.basis_elements().map(|b| op.weight(b));
    let Some(w) = weights.next() else { return Ok(None) };
    if weights.any(|v| v != w) {
        return Err(Error::Inhomogeneous(x.to_string()));
    }
    Ok(Some(w))
}

/// All multigraphs on `n` vertices up to `max_edges` edges; a convenience for tests.
pub fn multigraphs_up_to(n: usize, max_edges: usize) -> Vec<MultiGraph> {
    (0..=max_edges).flat_map(|e| multigraphs(&standard_labels(n), e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn shapes_agree_with_graph_canonical_form() {
        let g: MultiGraph = "vertices=a,b,c; edges=a-b,b-c".parse().unwrap();
        let op = GraphOperad::simple();
        assert_eq!(op.shape(&g), g.canonical_shape());
    }

    #[test]
    fn rooted_tree_shapes_distinguish_roots() {
        let op = PlieOperad;
        let leaf: RootedTree = "vertices=a,b,c; edges=a-b,b-c; root=a".parse().unwrap();
        let leaf2: RootedTree = "vertices=a,b,c; edges=a-b,b-c; root=c".parse().unwrap();
        let mid: RootedTree = "vertices=a,b,c; edges=a-b,b-c; root=b".parse().unwrap();
        assert_eq!(op.shape(&leaf), op.shape(&leaf2));
        assert_ne!(op.shape(&leaf), op.shape(&mid));
    }

    #[test]
    fn random_elements_belong_to_their_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let vs = standard_labels(4);
        for fam in [
            GraphFamily::Multi,
            GraphFamily::ConnectedMulti,
            GraphFamily::Simple,
            GraphFamily::ConnectedSimple,
            GraphFamily::Trees,
        ] {
            let op = GraphOperad::new(fam);
            for _ in 0..20 {
                assert!(fam.admits(&op.random_element(&vs, &mut rng)));
            }
        }
    }

    #[test]
    fn ambient_sizes() {
        assert_eq!(PlieOperad.ambient(3, 2).len(), 9);
        // 3 vertices: 3 loop types x 3 + 4 marked types x 3 pairs = 21 edge types, times 3 roots
        assert_eq!(RootedOperad.ambient(3, 1).len(), 63);
        assert_eq!(GraphOperad::trees().ambient(4, 3).len(), 16);
    }

    #[test]
    fn orbits() {
        let path: MultiGraph = "vertices=x,y,z; edges=x-y,y-z".parse().unwrap();
        assert_eq!(standard_orbit(&LinComb::basis(path)).unwrap().len(), 3);
        let tri: MultiGraph = "vertices=x,y,z; edges=x-y,y-z,x-z".parse().unwrap();
        assert_eq!(standard_orbit(&LinComb::basis(tri)).unwrap().len(), 1);
    }
}
