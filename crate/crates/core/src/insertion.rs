//! Partial compositions by insertion, and the sum-over-roots maps.
//!
//! Every composition comes in two forms: `*_at(x, hole, y)` substitutes `y`
//! into an arbitrary vertex `hole` of `x`, and the short form uses the
//! reserved hole label `*`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graphs::{
    orient_rooted_tree, End, Mark, MultiGraph, OrientedMultiGraph, RootedOrientedMultiGraph,
    RootedTree, SimpleGraph, Tree,
};
use crate::rational::Rational;
use crate::species::{Label, LinComb, Structure};

fn check_operands(outer: &[Label], outer_name: &str, hole: &Label, inner: &[Label], inner_name: &str) -> Result<()> {
    if outer.binary_search(hole).is_err() {
        return Err(Error::MissingHole { hole: hole.to_string(), outer: outer_name.to_string() });
    }
    if inner.binary_search(hole).is_ok() {
        return Err(Error::HoleInInner { hole: hole.to_string(), inner: inner_name.to_string() });
    }
    let shared: Vec<&str> = outer
        .iter()
        .filter(|v| inner.binary_search(v).is_ok())
        .map(Label::as_str)
        .collect();
    if !shared.is_empty() {
        return Err(Error::OverlappingVertices(shared.join(",")));
    }
    Ok(())
}

fn merged_vertices(outer: &[Label], hole: &Label, inner: &[Label]) -> Vec<Label> {
    let mut vs: Vec<Label> = outer.iter().filter(|v| *v != hole).cloned().collect();
    vs.extend(inner.iter().cloned());
    vs.sort();
    vs
}

/// Calls `f` on every map from `0..slots` to `0..range`, as a digit vector.
fn for_each_assignment(slots: usize, range: usize, mut f: impl FnMut(&[usize])) {
    let mut digits = vec![0usize; slots];
    if range == 0 && slots > 0 {
        return;
    }
    loop {
        f(&digits);
        let mut i = 0;
        loop {
            if i == slots {
                return;
            }
            digits[i] += 1;
            if digits[i] < range {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn counts_to_lincomb<B: Ord + Clone>(counts: BTreeMap<B, i64>) -> LinComb<B> {
    counts.into_iter().map(|(b, c)| (b, Rational::from_int(c))).collect()
}

/// Insertion of `g2` into the vertex `hole` of `g1`: the hole is deleted and
/// each loose end (one per non-loop edge at the hole, two per loop) is
/// reattached to any vertex of `g2`, summing over all assignments.
pub fn mg_insert_at(g1: &MultiGraph, hole: &Label, g2: &MultiGraph) -> Result<LinComb<MultiGraph>> {
    check_operands(g1.vertices(), g1.as_str(), hole, g2.vertices(), g2.as_str())?;
    let vertices = merged_vertices(g1.vertices(), hole, g2.vertices());
    let mut kept: Vec<(Label, Label)> = g2.edges().to_vec();
    // one entry per edge at the hole: the surviving endpoint, or None for a loop
    let mut dangling: Vec<Option<Label>> = Vec::new();
    for (u, v) in g1.edges() {
        match (u == hole, v == hole) {
            (false, false) => kept.push((u.clone(), v.clone())),
            (true, true) => dangling.push(None),
            (true, false) => dangling.push(Some(v.clone())),
            (false, true) => dangling.push(Some(u.clone())),
        }
    }
    let slots: usize = dangling.iter().map(|d| if d.is_some() { 1 } else { 2 }).sum();
    let targets = g2.vertices();
    let mut counts: BTreeMap<MultiGraph, i64> = BTreeMap::new();
    for_each_assignment(slots, targets.len(), |digits| {
        let mut edges = kept.clone();
        let mut k = 0;
        for d in &dangling {
            match d {
                Some(x) => {
                    edges.push((x.clone(), targets[digits[k]].clone()));
                    k += 1;
                }
                None => {
                    edges.push((targets[digits[k]].clone(), targets[digits[k + 1]].clone()));
                    k += 2;
                }
            }
        }
        *counts.entry(MultiGraph::from_sorted(vertices.clone(), edges)).or_default() += 1;
    });
    Ok(counts_to_lincomb(counts))
}

pub fn mg_insert(g1: &MultiGraph, g2: &MultiGraph) -> Result<LinComb<MultiGraph>> {
    mg_insert_at(g1, &Label::hole(), g2)
}

/// Insertion restricted to simple graphs: every neighbour of the hole is
/// joined to one vertex of `g2`, each outcome with coefficient 1.
pub fn g_insert_at(g1: &SimpleGraph, hole: &Label, g2: &SimpleGraph) -> Result<LinComb<SimpleGraph>> {
    let x = mg_insert_at(g1.multigraph(), hole, g2.multigraph())?;
    x.try_flat_map(|g| Ok(LinComb::basis(SimpleGraph::new(g.clone())?)))
}

pub fn g_insert(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<LinComb<SimpleGraph>> {
    g_insert_at(g1, &Label::hole(), g2)
}

/// Rooted insertion: plain loose ends go to the root of `h2`, arrow-marked
/// loose ends to any vertex of `h2`. The root is `h1`'s, or `h2`'s when `h1`
/// was rooted at the hole.
pub fn rooted_insert_at(
    h1: &RootedOrientedMultiGraph,
    hole: &Label,
    h2: &RootedOrientedMultiGraph,
) -> Result<LinComb<RootedOrientedMultiGraph>> {
    check_operands(h1.vertices(), h1.as_str(), hole, h2.vertices(), h2.as_str())?;
    let vertices = merged_vertices(h1.vertices(), hole, h2.vertices());
    let root = if h1.root() == hole { h2.root().clone() } else { h1.root().clone() };
    let mut kept: Vec<(End, End)> = h2.graph().edges().to_vec();
    // (surviving end or None for a loop, marks of the end(s) at the hole)
    let mut dangling: Vec<(Option<End>, Vec<Mark>)> = Vec::new();
    for (a, b) in h1.graph().edges() {
        match (&a.vertex == hole, &b.vertex == hole) {
            (false, false) => kept.push((a.clone(), b.clone())),
            (true, true) => dangling.push((None, vec![a.mark, b.mark])),
            (true, false) => dangling.push((Some(b.clone()), vec![a.mark])),
            (false, true) => dangling.push((Some(a.clone()), vec![b.mark])),
        }
    }
    let free_slots = dangling.iter().flat_map(|d| &d.1).filter(|m| **m == Mark::Arrow).count();
    let targets = h2.vertices();
    let mut counts: BTreeMap<RootedOrientedMultiGraph, i64> = BTreeMap::new();
    let mut result = Ok(());
    for_each_assignment(free_slots, targets.len(), |digits| {
        let mut k = 0;
        let mut place = |m: Mark| {
            let v = match m {
                Mark::Plain => h2.root().clone(),
                Mark::Arrow => {
                    k += 1;
                    targets[digits[k - 1]].clone()
                }
            };
            End::new(v, m)
        };
        let mut edges = kept.clone();
        for (survivor, marks) in &dangling {
            match survivor {
                Some(end) => edges.push((end.clone(), place(marks[0]))),
                None => {
                    let first = place(marks[0]);
                    edges.push((first, place(marks[1])));
                }
            }
        }
        let g = OrientedMultiGraph::from_sorted(vertices.clone(), edges);
        match RootedOrientedMultiGraph::new(g, root.clone()) {
            Ok(h) => *counts.entry(h).or_default() += 1,
            Err(e) => result = Err(e),
        }
    });
    result?;
    Ok(counts_to_lincomb(counts))
}

pub fn rooted_insert(
    h1: &RootedOrientedMultiGraph,
    h2: &RootedOrientedMultiGraph,
) -> Result<LinComb<RootedOrientedMultiGraph>> {
    rooted_insert_at(h1, &Label::hole(), h2)
}

fn rooted_orientation(t: &RootedTree) -> RootedOrientedMultiGraph {
    RootedOrientedMultiGraph::new(orient_rooted_tree(t), t.root().clone())
        .expect("root of a rooted tree is a vertex")
}

/// The pre-Lie composition on rooted trees: rooted insertion of the
/// parent-arrow orientations, pulled back to trees.
pub fn plie_compose_at(t1: &RootedTree, hole: &Label, t2: &RootedTree) -> Result<LinComb<RootedTree>> {
    let x = rooted_insert_at(&rooted_orientation(t1), hole, &rooted_orientation(t2))?;
    x.try_flat_map(|h| Ok(LinComb::basis(RootedTree::from_oriented(h)?)))
}

pub fn plie_compose(t1: &RootedTree, t2: &RootedTree) -> Result<LinComb<RootedTree>> {
    plie_compose_at(t1, &Label::hole(), t2)
}

/// Sum over all rootings of a tree.
pub fn psi_tree(t: &Tree) -> LinComb<RootedTree> {
    t.vertices()
        .iter()
        .map(|r| (RootedTree::new(t.clone(), r.clone()).expect("r is a vertex"), Rational::one()))
        .collect()
}

/// Linear extension of [`psi_tree`].
pub fn psi(x: &LinComb<Tree>) -> LinComb<RootedTree> {
    x.flat_map(psi_tree)
}

/// Same as [`psi`] for combinations of multigraphs whose support must be trees.
pub fn psi_graphs(x: &LinComb<MultiGraph>) -> Result<LinComb<RootedTree>> {
    let trees = x.try_flat_map(|g| Ok(LinComb::basis(Tree::new(g.clone())?)))?;
    Ok(psi(&trees))
}

/// Marks the edges of the spanning tree `t` parent-arrow/child-plain from `r`
/// and every other edge with arrows on both ends.
pub fn orient_by_spanning_tree(g: &MultiGraph, t: &Tree, r: &Label) -> Result<OrientedMultiGraph> {
    let not_spanning = || Error::NotSpanningTree(t.to_string(), g.to_string());
    if t.vertices() != g.vertices() {
        return Err(not_spanning());
    }
    let mut rest: Vec<(Label, Label)> = g.edges().to_vec();
    for e in t.edges() {
        let pos = rest.iter().position(|x| x == e).ok_or_else(not_spanning)?;
        rest.remove(pos);
    }
    let rooted = RootedTree::new(t.clone(), r.clone())?;
    let mut edges = orient_rooted_tree(&rooted).edges().to_vec();
    edges.extend(rest.into_iter().map(|(u, v)| (End::arrow(u), End::arrow(v))));
    OrientedMultiGraph::new(g.vertices().to_vec(), edges)
}

/// Sum over roots `r` of `g` oriented by the chosen spanning tree `choice[r]`.
pub fn psi_multigraph(
    g: &MultiGraph,
    choice: &BTreeMap<Label, Tree>,
) -> Result<LinComb<RootedOrientedMultiGraph>> {
    let mut out = LinComb::zero();
    for r in g.vertices() {
        let t = choice.get(r).ok_or_else(|| Error::MissingChoice(r.to_string()))?;
        let h = RootedOrientedMultiGraph::new(orient_by_spanning_tree(g, t, r)?, r.clone())?;
        out.add_term(h, Rational::one());
    }
    Ok(out)
}

/// The choice assigning the canonically least spanning tree to every root.
pub fn default_spanning_choice(g: &MultiGraph) -> Result<BTreeMap<Label, Tree>> {
    let least = g.spanning_trees()?.into_iter().next().ok_or_else(|| Error::Disconnected(g.to_string()))?;
    Ok(g.vertices().iter().map(|r| (r.clone(), least.clone())).collect())
}

pub fn psi_multigraph_default(g: &MultiGraph) -> Result<LinComb<RootedOrientedMultiGraph>> {
    psi_multigraph(g, &default_spanning_choice(g)?)
}

/// Bilinear extension of a composition of basis elements.
pub fn compose_linear<B, F>(x: &LinComb<B>, y: &LinComb<B>, mut f: F) -> Result<LinComb<B>>
where
    B: Ord + Clone,
    F: FnMut(&B, &B) -> Result<LinComb<B>>,
{
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&f(a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// The vertex set shared by every support element, if any.
pub fn common_vertices<B: Structure>(x: &LinComb<B>) -> Result<BTreeSet<Label>> {
    Ok(x.vertex_set()?.map(|v| v.into_iter().collect()).unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::{lbl, Bijection};

    fn mg(s: &str) -> MultiGraph {
        s.parse().unwrap()
    }
    fn sg(s: &str) -> SimpleGraph {
        s.parse().unwrap()
    }
    fn ro(s: &str) -> RootedOrientedMultiGraph {
        s.parse().unwrap()
    }
    fn rt(s: &str) -> RootedTree {
        s.parse().unwrap()
    }
    fn coeffs<B: Ord + Clone>(x: &LinComb<B>) -> Vec<i64> {
        let mut v: Vec<i64> = x.iter().map(|(_, c)| c.to_i64().unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn worked_multigraph_insertion() {
        let g1 = mg("vertices=a,*; edges=a-*,a-*,*-*");
        let g2 = mg("vertices=b,c; edges=b-c,c-c");
        let x = mg_insert(&g1, &g2).unwrap();
        assert_eq!(x.len(), 9);
        assert_eq!(coeffs(&x), vec![1, 1, 1, 1, 2, 2, 2, 2, 4]);
        assert_eq!(x.mass(), Rational::from_int(16));
        for g in x.basis_elements() {
            assert_eq!(g.edge_count(), g1.edge_count() + g2.edge_count());
        }
    }

    #[test]
    fn loop_at_hole_into_edge() {
        let x = mg_insert(&mg("vertices=*; edges=*-*"), &mg("vertices=b,c; edges=b-c")).unwrap();
        let expected = LinComb::from_terms([
            (mg("vertices=b,c; edges=b-b,b-c"), Rational::one()),
            (mg("vertices=b,c; edges=b-c,c-c"), Rational::one()),
            (mg("vertices=b,c; edges=b-c,b-c"), Rational::from_int(2)),
        ]);
        assert_eq!(x, expected);
    }

    #[test]
    fn unit_law() {
        let g = mg("vertices=a,*; edges=a-*,*-*");
        let x = mg_insert(&g, &MultiGraph::vertex(lbl("v"))).unwrap();
        let sigma = Bijection::rename(g.vertices(), &lbl("*"), &lbl("v")).unwrap();
        assert_eq!(x, LinComb::basis(g.transport(&sigma).unwrap().1));
    }

    #[test]
    fn simple_insertions() {
        let x = g_insert(&sg("vertices=a,*,b; edges=a-*,*-b"), &sg("vertices=c,d; edges=c-d")).unwrap();
        assert_eq!(x.len(), 4);
        assert!(x.iter().all(|(_, c)| c.is_one()));
        let y = g_insert(&sg("vertices=a,*; edges=a-*"), &sg("vertices=b,c; edges=b-c")).unwrap();
        let expected = LinComb::from_terms([
            (sg("vertices=a,b,c; edges=a-b,b-c"), Rational::one()),
            (sg("vertices=a,b,c; edges=a-c,b-c"), Rational::one()),
        ]);
        assert_eq!(y, expected);
        let z = g_insert(&sg("vertices=a,*; edges="), &sg("vertices=b,c; edges=")).unwrap();
        assert_eq!(z, LinComb::basis(sg("vertices=a,b,c; edges=")));
    }

    #[test]
    fn rooted_example_forces_plain_end_to_root() {
        let h1 = ro("vertices=*,a,b; edges=a.>*,*.>b; root=a");
        let h2 = ro("vertices=c,d; edges=c.>d; root=c");
        let x = rooted_insert(&h1, &h2).unwrap();
        let expected = LinComb::from_terms([
            (ro("vertices=a,b,c,d; edges=a.>c,c.>b,c.>d; root=a"), Rational::one()),
            (ro("vertices=a,b,c,d; edges=a.>d,c.>d,c.>b; root=a"), Rational::one()),
        ]);
        assert_eq!(x, expected);
    }

    #[test]
    fn plain_loose_end_is_forced_to_root() {
        let h1 = ro("vertices=*,b; edges=*..b; root=*");
        let h2 = ro("vertices=c,d; edges=; root=c");
        let x = rooted_insert(&h1, &h2).unwrap();
        assert_eq!(x, LinComb::basis(ro("vertices=b,c,d; edges=b..c; root=c")));
    }

    #[test]
    fn prelie_compositions() {
        let x = plie_compose(&rt("vertices=*,b; edges=*-b; root=*"), &rt("vertices=a; edges=; root=a")).unwrap();
        assert_eq!(x, LinComb::basis(rt("vertices=a,b; edges=a-b; root=a")));
        // the parent of the hole is attached to the root of the inserted tree
        let y = plie_compose(&rt("vertices=a,*; edges=a-*; root=a"), &rt("vertices=c,d; edges=c-d; root=c")).unwrap();
        assert_eq!(y, LinComb::basis(rt("vertices=a,c,d; edges=a-c,c-d; root=a")));
        // a child of the hole may land on any vertex
        let z = plie_compose(
            &rt("vertices=a,*,b; edges=a-*,*-b; root=a"),
            &rt("vertices=c,d; edges=c-d; root=c"),
        )
        .unwrap();
        let expected = LinComb::from_terms([
            (rt("vertices=a,b,c,d; edges=a-c,b-c,c-d; root=a"), Rational::one()),
            (rt("vertices=a,b,c,d; edges=a-c,b-d,c-d; root=a"), Rational::one()),
        ]);
        assert_eq!(z, expected);
        for t in z.basis_elements() {
            assert_eq!(t.arity(), 4);
        }
    }

    #[test]
    fn psi_on_small_trees() {
        let single: Tree = "vertices=a; edges=".parse().unwrap();
        assert_eq!(psi_tree(&single).len(), 1);
        let edge: Tree = "vertices=a,b; edges=a-b".parse().unwrap();
        let expected = LinComb::from_terms([
            (rt("vertices=a,b; edges=a-b; root=a"), Rational::one()),
            (rt("vertices=a,b; edges=a-b; root=b"), Rational::one()),
        ]);
        assert_eq!(psi_tree(&edge), expected);
        let path: Tree = "vertices=a,b,c; edges=a-b,b-c".parse().unwrap();
        assert_eq!(psi_tree(&path).len(), 3);
        assert!(psi_graphs(&LinComb::basis(mg("vertices=a,b; edges=a-b,a-b"))).is_err());
    }

    #[test]
    fn spanning_tree_orientation() {
        let tri = mg("vertices=a,b,c; edges=a-b,b-c,a-c");
        let t: Tree = "vertices=a,b,c; edges=a-b,b-c".parse().unwrap();
        let o = orient_by_spanning_tree(&tri, &t, &lbl("a")).unwrap();
        assert_eq!(o.to_string(), "vertices=a,b,c; edges=a>.b,a>>c,b>.c");
        let dbl = mg("vertices=a,b; edges=a-b,a-b");
        let e: Tree = "vertices=a,b; edges=a-b".parse().unwrap();
        let o = orient_by_spanning_tree(&dbl, &e, &lbl("a")).unwrap();
        assert_eq!(o.to_string(), "vertices=a,b; edges=a>.b,a>>b");
        let other: Tree = "vertices=a,b,c; edges=a-b,a-c".parse().unwrap();
        let path = mg("vertices=a,b,c; edges=a-b,b-c");
        assert!(matches!(
            orient_by_spanning_tree(&path, &other, &lbl("a")),
            Err(Error::NotSpanningTree(..))
        ));
        let psi = psi_multigraph_default(&tri).unwrap();
        assert_eq!(psi.len(), 3);
        assert!(matches!(psi_multigraph(&tri, &BTreeMap::new()), Err(Error::MissingChoice(_))));
    }

    #[test]
    fn precondition_errors() {
        let e = mg("vertices=a,b; edges=a-b");
        assert!(matches!(mg_insert(&e, &mg("vertices=c; edges=")), Err(Error::MissingHole { .. })));
        let h = mg("vertices=a,*; edges=a-*");
        assert!(matches!(mg_insert(&h, &mg("vertices=*,c; edges=")), Err(Error::HoleInInner { .. })));
        assert!(matches!(mg_insert(&h, &mg("vertices=a; edges=")), Err(Error::OverlappingVertices(_))));
    }
}
