use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::species::{Bijection, Label, Structure};

use super::{parent_map, text, MultiGraph, Tree};

/// Decoration of an edge end: `.` plain, `>` arrow head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Plain,
    Arrow,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct End {
    pub vertex: Label,
    pub mark: Mark,
}

impl End {
    pub fn new(vertex: Label, mark: Mark) -> End {
        End { vertex, mark }
    }

    pub fn plain(vertex: Label) -> End {
        End::new(vertex, Mark::Plain)
    }

    pub fn arrow(vertex: Label) -> End {
        End::new(vertex, Mark::Arrow)
    }
}

fn sorted_ends(a: End, b: End) -> (End, End) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

macro_rules! keyed {
    ($name:ident) => {
        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                self.key == other.key
            }
        }
        impl Eq for $name {}
        impl Hash for $name {
            fn hash<H: Hasher>(&self, state: &mut H) {
                self.key.hash(state)
            }
        }
        impl Ord for $name {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                self.key.cmp(&other.key)
            }
        }
        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }
        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.key)
            }
        }
        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.key)
            }
        }
    };
}

/// A multigraph whose edge ends are each plain or arrow-marked.
#[derive(Clone)]
pub struct OrientedMultiGraph {
    vertices: Vec<Label>,
    edges: Vec<(End, End)>,
    key: String,
}

keyed!(OrientedMultiGraph);

impl OrientedMultiGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<OrientedMultiGraph>
    where
        V: IntoIterator<Item = Label>,
        E: IntoIterator<Item = (End, End)>,
    {
        let mut vs: Vec<Label> = vertices.into_iter().collect();
        vs.sort();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].to_string()));
        }
        let edges: Vec<(End, End)> = edges.into_iter().collect();
        for (a, b) in &edges {
            for x in [&a.vertex, &b.vertex] {
                if vs.binary_search(x).is_err() {
                    return Err(Error::UnknownEndpoint(x.to_string()));
                }
            }
        }
        Ok(Self::from_sorted(vs, edges))
    }

    pub(crate) fn from_sorted(vertices: Vec<Label>, edges: Vec<(End, End)>) -> OrientedMultiGraph {
        let mut edges: Vec<(End, End)> = edges.into_iter().map(|(a, b)| sorted_ends(a, b)).collect();
        edges.sort();
        let key = text::render_oriented(&vertices, &edges);
        OrientedMultiGraph { vertices, edges, key }
    }

    /// Every end of `g` marked the same way.
    pub fn uniform(g: &MultiGraph, mark: Mark) -> OrientedMultiGraph {
        let edges = g
            .edges()
            .iter()
            .map(|(u, v)| (End::new(u.clone(), mark), End::new(v.clone(), mark)))
            .collect();
        Self::from_sorted(g.vertices().to_vec(), edges)
    }

    pub fn edges(&self) -> &[(End, End)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Forgets the marks.
    pub fn underlying(&self) -> MultiGraph {
        let edges = self.edges.iter().map(|(a, b)| (a.vertex.clone(), b.vertex.clone())).collect();
        MultiGraph::from_sorted(self.vertices.clone(), edges)
    }

    pub fn as_str(&self) -> &str {
        &self.key
    }
}

impl Structure for OrientedMultiGraph {
    fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    fn transport(&self, sigma: &Bijection) -> Result<(bool, OrientedMultiGraph)> {
        if !sigma.has_domain(&self.vertices) {
            return Err(Error::DomainMismatch(self.key.clone()));
        }
        let map = |v: &Label| sigma.apply(v).expect("domain checked").clone();
        let mut vs: Vec<Label> = self.vertices.iter().map(map).collect();
        vs.sort();
        let es = self
            .edges
            .iter()
            .map(|(a, b)| (End::new(map(&a.vertex), a.mark), End::new(map(&b.vertex), b.mark)))
            .collect();
        Ok((false, Self::from_sorted(vs, es)))
    }
}

impl FromStr for OrientedMultiGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parsed = text::parse(s)?;
        if parsed.root.is_some() {
            return Err(Error::Parse("unrooted graph expected".into()));
        }
        let edges = parsed.oriented_edges()?;
        OrientedMultiGraph::new(parsed.vertices, edges)
    }
}

/// An oriented multigraph with a distinguished root vertex.
#[derive(Clone)]
pub struct RootedOrientedMultiGraph {
    graph: OrientedMultiGraph,
    root: Label,
    key: String,
}

keyed!(RootedOrientedMultiGraph);

impl RootedOrientedMultiGraph {
    pub fn new(graph: OrientedMultiGraph, root: Label) -> Result<RootedOrientedMultiGraph> {
        if graph.vertices.binary_search(&root).is_err() {
            return Err(Error::BadRoot(root.to_string()));
        }
        let key = format!("{}; root={}", graph.key, root);
        Ok(RootedOrientedMultiGraph { graph, root, key })
    }

    pub fn graph(&self) -> &OrientedMultiGraph {
        &self.graph
    }

    pub fn root(&self) -> &Label {
        &self.root
    }

    pub fn as_str(&self) -> &str {
        &self.key
    }
}

impl Structure for RootedOrientedMultiGraph {
    fn vertices(&self) -> &[Label] {
        &self.graph.vertices
    }

    fn transport(&self, sigma: &Bijection) -> Result<(bool, RootedOrientedMultiGraph)> {
        let (_, g) = self.graph.transport(sigma)?;
        let root = sigma.apply(&self.root).expect("domain checked").clone();
        Ok((false, RootedOrientedMultiGraph::new(g, root)?))
    }
}

impl FromStr for RootedOrientedMultiGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parsed = text::parse(s)?;
        let root = parsed.root.clone().ok_or_else(|| Error::Parse("missing root=".into()))?;
        let edges = parsed.oriented_edges()?;
        RootedOrientedMultiGraph::new(OrientedMultiGraph::new(parsed.vertices, edges)?, root)
    }
}

/// A tree with a distinguished root.
#[derive(Clone)]
pub struct RootedTree {
    tree: Tree,
    root: Label,
    key: String,
}

keyed!(RootedTree);

impl RootedTree {
    pub fn new(tree: Tree, root: Label) -> Result<RootedTree> {
        if !tree.contains_vertex(&root) {
            return Err(Error::BadRoot(root.to_string()));
        }
        let key = format!("{}; root={}", tree.as_str(), root);
        Ok(RootedTree { tree, root, key })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn root(&self) -> &Label {
        &self.root
    }

    /// The parent of every non-root vertex.
    pub fn parents(&self) -> std::collections::BTreeMap<Label, Label> {
        let mut p = parent_map(self.tree.multigraph(), &self.root);
        p.remove(&self.root);
        p
    }

    /// Recovers the rooted tree whose parent-arrow orientation is `h`.
    pub fn from_oriented(h: &RootedOrientedMultiGraph) -> Result<RootedTree> {
        let tree = Tree::new(h.graph().underlying())?;
        let t = RootedTree::new(tree, h.root().clone())?;
        if orient_rooted_tree(&t) != *h.graph() {
            return Err(Error::NotTree(format!("{h} is not oriented from its root")));
        }
        Ok(t)
    }

    pub fn as_str(&self) -> &str {
        &self.key
    }
}

impl Structure for RootedTree {
    fn vertices(&self) -> &[Label] {
        self.tree.vertices()
    }

    fn transport(&self, sigma: &Bijection) -> Result<(bool, RootedTree)> {
        let (_, t) = self.tree.transport(sigma)?;
        let root = sigma.apply(&self.root).expect("domain checked").clone();
        Ok((false, RootedTree::new(t, root)?))
    }
}

impl FromStr for RootedTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parsed = text::parse(s)?;
        let root = parsed.root.clone().ok_or_else(|| Error::Parse("missing root=".into()))?;
        let edges = parsed.unoriented_edges()?;
        RootedTree::new(Tree::new(MultiGraph::new(parsed.vertices, edges)?)?, root)
    }
}

/// Marks each edge's parent end (nearer the root) with an arrow and leaves
/// the child end plain.
pub fn orient_rooted_tree(t: &RootedTree) -> OrientedMultiGraph {
    let parent = parent_map(t.tree.multigraph(), &t.root);
    let edges = t
        .tree
        .edges()
        .iter()
        .map(|(u, v)| {
            if parent[v] == *u {
                (End::arrow(u.clone()), End::plain(v.clone()))
            } else {
                (End::plain(u.clone()), End::arrow(v.clone()))
            }
        })
        .collect();
    OrientedMultiGraph::from_sorted(t.vertices().to_vec(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::lbl;

    fn rooted(s: &str) -> RootedTree {
        s.parse().unwrap()
    }

    #[test]
    fn orientation_marks_parent_ends() {
        let single = rooted("vertices=a; edges=; root=a");
        assert_eq!(orient_rooted_tree(&single).edge_count(), 0);
        let edge = rooted("vertices=a,b; edges=a-b; root=a");
        assert_eq!(orient_rooted_tree(&edge).to_string(), "vertices=a,b; edges=a>.b");
        let path = rooted("vertices=a,b,c; edges=a-b,b-c; root=b");
        assert_eq!(orient_rooted_tree(&path).to_string(), "vertices=a,b,c; edges=a.>b,b>.c");
    }

    #[test]
    fn pull_back_inverts_orientation() {
        let t = rooted("vertices=a,b,c,d; edges=a-b,b-c,b-d; root=c");
        let h = RootedOrientedMultiGraph::new(orient_rooted_tree(&t), lbl("c")).unwrap();
        assert_eq!(RootedTree::from_oriented(&h).unwrap(), t);
        let wrong = RootedOrientedMultiGraph::new(orient_rooted_tree(&t), lbl("a")).unwrap();
        assert!(RootedTree::from_oriented(&wrong).is_err());
    }

    #[test]
    fn forgetting_marks_then_plain_marking_is_identity() {
        let g: MultiGraph = "vertices=a,b,c; edges=a-b,a-b,c-c".parse().unwrap();
        let plain = OrientedMultiGraph::uniform(&g, Mark::Plain);
        assert_eq!(plain.underlying(), g);
        let h: OrientedMultiGraph = "vertices=a,b; edges=a>.b,b>>b".parse().unwrap();
        assert_eq!(OrientedMultiGraph::uniform(&h.underlying(), Mark::Plain).underlying(), h.underlying());
    }

    #[test]
    fn bad_roots() {
        let t: Tree = "vertices=a,b; edges=a-b".parse().unwrap();
        assert_eq!(RootedTree::new(t, lbl("z")).unwrap_err(), Error::BadRoot("z".into()));
    }
}
