//! Labeled multigraphs, simple graphs, trees, and their oriented/rooted variants.
//!
//! Every type keeps a canonical text form (the one-line `vertices=...; edges=...`
//! format) computed at construction. Equality, hashing, and ordering all go
//! through that form, so "canonical order" means byte order of the serialization.

mod enumerate;
mod oriented;
mod text;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::species::{permutations, standard_labels, Bijection, Label, Structure};

pub use enumerate::{
    connected_multigraphs, multigraphs, simple_graphs, simple_graphs_all, trees, GraphFamily,
};
pub use oriented::{
    orient_rooted_tree, End, Mark, OrientedMultiGraph, RootedOrientedMultiGraph, RootedTree,
};

fn sorted_pair(u: Label, v: Label) -> (Label, Label) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A finite vertex set with a multiset of unordered pairs (loops allowed).
#[derive(Clone)]
pub struct MultiGraph {
    vertices: Vec<Label>,
    edges: Vec<(Label, Label)>,
    key: String,
}

impl MultiGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<MultiGraph>
    where
        V: IntoIterator<Item = Label>,
        E: IntoIterator<Item = (Label, Label)>,
    {
        let mut vs: Vec<Label> = vertices.into_iter().collect();
        vs.sort();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].to_string()));
        }
        let mut es = Vec::new();
        for (u, v) in edges {
            for x in [&u, &v] {
                if vs.binary_search(x).is_err() {
                    return Err(Error::UnknownEndpoint(x.to_string()));
                }
            }
            es.push(sorted_pair(u, v));
        }
        Ok(Self::from_sorted(vs, es))
    }

    /// Builds from a sorted, duplicate-free vertex list and endpoints that are
    /// known to be vertices.
    pub(crate) fn from_sorted(vertices: Vec<Label>, mut edges: Vec<(Label, Label)>) -> MultiGraph {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        edges.sort();
        let key = text::render_multigraph(&vertices, &edges);
        MultiGraph { vertices, edges, key }
    }

    /// Parses and builds from string labels; panics on invalid input. Handy in tests.
    pub fn from_strs(vertices: &[&str], edges: &[(&str, &str)]) -> MultiGraph {
        let vs = vertices.iter().map(|s| crate::species::lbl(s));
        let es = edges.iter().map(|(u, v)| (crate::species::lbl(u), crate::species::lbl(v)));
        MultiGraph::new(vs, es).unwrap_or_else(|e| panic!("{e}"))
    }

    /// A single vertex, no edges.
    pub fn vertex(v: Label) -> MultiGraph {
        Self::from_sorted(vec![v], Vec::new())
    }

    pub fn edges(&self) -> &[(Label, Label)] {
        &self.edges
    }

    /// Multiset cardinality of the edges; a loop counts once.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &Label) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    /// Multiplicity of the unordered pair `{u, v}`.
    pub fn multiplicity(&self, u: &Label, v: &Label) -> usize {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        self.edges.iter().filter(|(x, y)| x == a && y == b).count()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|(u, v)| u != v) && self.edges.windows(2).all(|w| w[0] != w[1])
    }

    /// Number of edge ends at `v` (a loop contributes two).
    pub fn degree(&self, v: &Label) -> usize {
        self.edges.iter().map(|(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn neighbours(&self, v: &Label) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        for (a, b) in &self.edges {
            if a == v {
                out.insert(b.clone());
            }
            if b == v {
                out.insert(a.clone());
            }
        }
        out
    }

    /// Whether every two vertices are joined by a chain of edges sharing endpoints.
    pub fn is_connected(&self) -> Result<bool> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        Ok(self.component_count() == 1)
    }

    pub fn component_count(&self) -> usize {
        let index: BTreeMap<&Label, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut uf = UnionFind::new(self.vertices.len());
        for (u, v) in &self.edges {
            uf.union(index[u], index[v]);
        }
        uf.count()
    }

    /// The lexicographically least serialization over all relabelings onto
    /// `a, b, c, ...`; equal exactly for isomorphic graphs.
    pub fn canonical_shape(&self) -> String {
        let target = standard_labels(self.vertices.len());
        let pos: BTreeMap<&Label, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let coded: Vec<(usize, usize)> = self.edges.iter().map(|(u, v)| (pos[u], pos[v])).collect();
        let mut best: Option<Vec<(usize, usize)>> = None;
        for perm in permutations(self.vertices.len()) {
            let mut img: Vec<(usize, usize)> = coded
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u], perm[v]);
                    if a <= b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            img.sort();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
        let edges: Vec<(Label, Label)> = best
            .unwrap_or_default()
            .into_iter()
            .map(|(a, b)| (target[a].clone(), target[b].clone()))
            .collect();
        MultiGraph::from_sorted(target, edges).key
    }

    /// Spanning-tree selections: index sets into [`MultiGraph::edges`] with
    /// `|V| - 1` non-loop edges forming a tree. Parallel copies give distinct
    /// selections.
    pub fn spanning_tree_selections(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_connected()? {
            return Err(Error::Disconnected(self.key.clone()));
        }
        let n = self.vertices.len();
        let index: BTreeMap<&Label, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let candidates: Vec<usize> =
            (0..self.edges.len()).filter(|&i| self.edges[i].0 != self.edges[i].1).collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        fn rec(
            g: &MultiGraph,
            index: &BTreeMap<&Label, usize>,
            candidates: &[usize],
            start: usize,
            need: usize,
            chosen: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if chosen.len() == need {
                let mut uf = UnionFind::new(index.len());
                let acyclic = chosen.iter().all(|&i| {
                    let (u, v) = &g.edges[i];
                    uf.union(index[u], index[v])
                });
                if acyclic {
                    out.push(chosen.clone());
                }
                return;
            }
            for k in start..candidates.len() {
                if candidates.len() - k < need - chosen.len() {
                    break;
                }
                chosen.push(candidates[k]);
                rec(g, index, candidates, k + 1, need, chosen, out);
                chosen.pop();
            }
        }
        rec(self, &index, &candidates, 0, n - 1, &mut chosen, &mut out);
        Ok(out)
    }

    /// All spanning trees, one per selection, in canonical order.
    pub fn spanning_trees(&self) -> Result<Vec<Tree>> {
        let mut out: Vec<Tree> = self
            .spanning_tree_selections()?
            .into_iter()
            .map(|sel| {
                let edges = sel.iter().map(|&i| self.edges[i].clone()).collect();
                Tree(SimpleGraph(MultiGraph::from_sorted(self.vertices.clone(), edges)))
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// The subgraph keeping only the edges at the given indices.
    pub fn with_edges(&self, indices: &[usize]) -> MultiGraph {
        let edges = indices.iter().map(|&i| self.edges[i].clone()).collect();
        MultiGraph::from_sorted(self.vertices.clone(), edges)
    }

    pub fn as_str(&self) -> &str {
        &self.key
    }
}

impl Structure for MultiGraph {
    fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    fn transport(&self, sigma: &Bijection) -> Result<(bool, MultiGraph)> {
        if !sigma.has_domain(&self.vertices) {
            return Err(Error::DomainMismatch(self.key.clone()));
        }
        let map = |v: &Label| sigma.apply(v).expect("domain checked").clone();
        let mut vs: Vec<Label> = self.vertices.iter().map(map).collect();
        vs.sort();
        let es = self.edges.iter().map(|(u, v)| (map(u), map(v))).collect();
        Ok((false, MultiGraph::from_sorted(vs, es)))
    }
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for MultiGraph {}
impl Hash for MultiGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}
impl Ord for MultiGraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}
impl PartialOrd for MultiGraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}
impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}
impl FromStr for MultiGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parsed = text::parse(s)?;
        if parsed.root.is_some() {
            return Err(Error::Parse("unrooted graph expected".into()));
        }
        let edges = parsed.unoriented_edges()?;
        MultiGraph::new(parsed.vertices, edges)
    }
}

macro_rules! graph_newtype {
    ($name:ident, $inner:ty) => {
        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                self.0 == other.0
            }
        }
        impl Eq for $name {}
        impl Hash for $name {
            fn hash<H: Hasher>(&self, state: &mut H) {
                self.0.hash(state)
            }
        }
        impl Ord for $name {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                self.0.cmp(&other.0)
            }
        }
        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }
        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }
        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }
        impl std::ops::Deref for $name {
            type Target = $inner;
            fn deref(&self) -> &$inner {
                &self.0
            }
        }
    };
}

/// A multigraph whose edges form a set and contain no loops.
#[derive(Clone)]
pub struct SimpleGraph(MultiGraph);

graph_newtype!(SimpleGraph, MultiGraph);

impl SimpleGraph {
    pub fn new(g: MultiGraph) -> Result<SimpleGraph> {
        if !g.is_simple() {
            return Err(Error::NotSimple(g.key));
        }
        Ok(SimpleGraph(g))
    }

    pub fn multigraph(&self) -> &MultiGraph {
        &self.0
    }

    pub fn into_multigraph(self) -> MultiGraph {
        self.0
    }
}

impl Structure for SimpleGraph {
    fn vertices(&self) -> &[Label] {
        self.0.vertices()
    }
    fn transport(&self, sigma: &Bijection) -> Result<(bool, SimpleGraph)> {
        let (neg, g) = self.0.transport(sigma)?;
        Ok((neg, SimpleGraph(g)))
    }
}

impl FromStr for SimpleGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SimpleGraph::new(s.parse()?)
    }
}

/// A connected simple graph with `|V| - 1` edges.
#[derive(Clone)]
pub struct Tree(SimpleGraph);

graph_newtype!(Tree, SimpleGraph);

impl Tree {
    pub fn new(g: MultiGraph) -> Result<Tree> {
        let g = SimpleGraph::new(g).map_err(|e| Error::NotTree(e.to_string()))?;
        if g.vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if g.edge_count() + 1 != g.vertices.len() {
            return Err(Error::NotTree(format!("{} has the wrong number of edges", g.0.key)));
        }
        if !g.is_connected()? {
            return Err(Error::NotTree(format!("{} is disconnected", g.0.key)));
        }
        Ok(Tree(g))
    }

    pub fn multigraph(&self) -> &MultiGraph {
        &self.0 .0
    }

    pub fn simple(&self) -> &SimpleGraph {
        &self.0
    }
}

impl Structure for Tree {
    fn vertices(&self) -> &[Label] {
        self.0.vertices()
    }
    fn transport(&self, sigma: &Bijection) -> Result<(bool, Tree)> {
        let (neg, g) = self.0.transport(sigma)?;
        Ok((neg, Tree(g)))
    }
}

impl FromStr for Tree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Tree::new(s.parse()?)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.components
    }
}

/// Breadth-first parent map of a tree rooted at `root` (root maps to itself).
pub(crate) fn parent_map(tree: &MultiGraph, root: &Label) -> BTreeMap<Label, Label> {
    let mut parent = BTreeMap::new();
    parent.insert(root.clone(), root.clone());
    let mut queue = VecDeque::from([root.clone()]);
    while let Some(u) = queue.pop_front() {
        for w in tree.neighbours(&u) {
            if !parent.contains_key(&w) {
                parent.insert(w.clone(), u.clone());
                queue.push_back(w);
            }
        }
    }
    parent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::lbl;

    #[test]
    fn connectivity() {
        assert!(MultiGraph::from_strs(&["a"], &[]).is_connected().unwrap());
        assert!(!MultiGraph::from_strs(&["a", "b"], &[]).is_connected().unwrap());
        let path = MultiGraph::from_strs(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(path.is_connected().unwrap());
        let empty = MultiGraph::new(Vec::new(), Vec::new()).unwrap();
        assert_eq!(empty.is_connected(), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn edge_counts() {
        assert_eq!(MultiGraph::from_strs(&["a", "b"], &[]).edge_count(), 0);
        assert_eq!(MultiGraph::from_strs(&["a"], &[("a", "a")]).edge_count(), 1);
        let g1 = MultiGraph::from_strs(&["a", "*"], &[("a", "*"), ("a", "*"), ("*", "*")]);
        assert_eq!(g1.edge_count(), 3);
    }

    #[test]
    fn shapes() {
        let p1 = MultiGraph::from_strs(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let p2 = MultiGraph::from_strs(&["x", "y", "z"], &[("x", "z"), ("z", "y")]);
        assert_eq!(p1.canonical_shape(), p2.canonical_shape());
        let tri = MultiGraph::from_strs(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_ne!(tri.canonical_shape(), p1.canonical_shape());
    }

    #[test]
    fn labeled_trees_on_four_vertices_have_two_shapes() {
        let ts = trees(&standard_labels(4));
        assert_eq!(ts.len(), 16);
        let shapes: BTreeSet<String> = ts.iter().map(|t| t.canonical_shape()).collect();
        assert_eq!(shapes.len(), 2);
    }

    #[test]
    fn spanning_tree_counts() {
        let path = MultiGraph::from_strs(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let ts = path.spanning_trees().unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].multigraph(), &path);
        let tri = MultiGraph::from_strs(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(tri.spanning_trees().unwrap().len(), 3);
        let double = MultiGraph::from_strs(&["a", "b"], &[("a", "b"), ("a", "b")]);
        let ts = double.spanning_trees().unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[0], ts[1]);
        let disc = MultiGraph::from_strs(&["a", "b"], &[]);
        assert!(matches!(disc.spanning_trees(), Err(Error::Disconnected(_))));
    }

    #[test]
    fn tree_validation() {
        assert!(Tree::new(MultiGraph::from_strs(&["a", "b"], &[("a", "b")])).is_ok());
        assert!(Tree::new(MultiGraph::from_strs(&["a", "b", "c"], &[("a", "b")])).is_err());
        let tri = MultiGraph::from_strs(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert!(Tree::new(tri).is_err());
        let dbl = MultiGraph::from_strs(&["a", "b", "c"], &[("a", "b"), ("a", "b")]);
        assert!(Tree::new(dbl).is_err());
    }

    #[test]
    fn swap_fixes_unordered_edge() {
        let e = MultiGraph::from_strs(&["a", "b"], &[("a", "b")]);
        let swap = Bijection::zip(&[lbl("a"), lbl("b")], &[lbl("b"), lbl("a")]).unwrap();
        assert_eq!(e.transport(&swap).unwrap().1, e);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            MultiGraph::new(vec![lbl("a")], vec![(lbl("a"), lbl("b"))]),
            Err(Error::UnknownEndpoint(_))
        ));
        assert!(matches!(
            MultiGraph::new(vec![lbl("a"), lbl("a")], vec![]),
            Err(Error::DuplicateVertex(_))
        ));
    }
}
