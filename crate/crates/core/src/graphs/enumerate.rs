//! Exhaustive enumeration of graphs on a fixed vertex set, in canonical order.

use crate::species::Label;

use super::{MultiGraph, Tree};

fn pairs(vertices: &[Label], loops: bool) -> Vec<(Label, Label)> {
    let mut out = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        let start = if loops { i } else { i + 1 };
        for v in &vertices[start..] {
            out.push((u.clone(), v.clone()));
        }
    }
    out
}

fn sorted_vertices(vertices: &[Label]) -> Vec<Label> {
    let mut vs = vertices.to_vec();
    vs.sort();
    vs.dedup();
    vs
}

/// Size-`k` sub-multisets (or subsets) of `0..n`, as nondecreasing (or increasing) index lists.
fn choose(n: usize, k: usize, repeat: bool, f: &mut dyn FnMut(&[usize])) {
    fn rec(n: usize, k: usize, repeat: bool, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for i in start..n {
            acc.push(i);
            rec(n, k, repeat, if repeat { i } else { i + 1 }, acc, f);
            acc.pop();
        }
    }
    rec(n, k, repeat, 0, &mut Vec::with_capacity(k), f);
}

/// All multigraphs (loops allowed) with exactly `edges` edges.
pub fn multigraphs(vertices: &[Label], edges: usize) -> Vec<MultiGraph> {
    let vs = sorted_vertices(vertices);
    let ps = pairs(&vs, true);
    let mut out = Vec::new();
    choose(ps.len(), edges, true, &mut |idx| {
        let es = idx.iter().map(|&i| ps[i].clone()).collect();
        out.push(MultiGraph::from_sorted(vs.clone(), es));
    });
    out.sort();
    out
}

/// All connected multigraphs with exactly `edges` edges.
pub fn connected_multigraphs(vertices: &[Label], edges: usize) -> Vec<MultiGraph> {
    multigraphs(vertices, edges).into_iter().filter(|g| g.component_count() == 1).collect()
}

/// All simple graphs with exactly `edges` edges.
pub fn simple_graphs(vertices: &[Label], edges: usize) -> Vec<MultiGraph> {
    let vs = sorted_vertices(vertices);
    let ps = pairs(&vs, false);
    let mut out = Vec::new();
    choose(ps.len(), edges, false, &mut |idx| {
        let es = idx.iter().map(|&i| ps[i].clone()).collect();
        out.push(MultiGraph::from_sorted(vs.clone(), es));
    });
    out.sort();
    out
}

/// All `2^C(n,2)` simple graphs on the vertex set.
pub fn simple_graphs_all(vertices: &[Label]) -> Vec<MultiGraph> {
    let n = vertices.len();
    let mut out: Vec<MultiGraph> =
        (0..=n * n.saturating_sub(1) / 2).flat_map(|e| simple_graphs(vertices, e)).collect();
    out.sort();
    out
}

/// All labeled trees on the vertex set.
pub fn trees(vertices: &[Label]) -> Vec<Tree> {
    if vertices.is_empty() {
        return Vec::new();
    }
    simple_graphs(vertices, vertices.len() - 1)
        .into_iter()
        .filter_map(|g| Tree::new(g).ok())
        .collect()
}

/// The graph families carried by the multigraph-valued operads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    Multi,
    ConnectedMulti,
    Simple,
    ConnectedSimple,
    Trees,
}

impl GraphFamily {
    pub fn admits(self, g: &MultiGraph) -> bool {
        let connected = || g.component_count() == 1;
        match self {
            GraphFamily::Multi => true,
            GraphFamily::ConnectedMulti => connected(),
            GraphFamily::Simple => g.is_simple(),
            GraphFamily::ConnectedSimple => g.is_simple() && connected(),
            GraphFamily::Trees => {
                g.is_simple() && g.edge_count() + 1 == g.vertices_len() && connected()
            }
        }
    }

    /// Basis elements on `vertices` with exactly `edges` edges.
    pub fn basis(self, vertices: &[Label], edges: usize) -> Vec<MultiGraph> {
        match self {
            GraphFamily::Multi => multigraphs(vertices, edges),
            GraphFamily::ConnectedMulti => connected_multigraphs(vertices, edges),
            GraphFamily::Simple => simple_graphs(vertices, edges),
            GraphFamily::ConnectedSimple | GraphFamily::Trees => simple_graphs(vertices, edges)
                .into_iter()
                .filter(|g| self.admits(g))
                .collect(),
        }
    }

    /// Whether the family has finitely many elements per arity.
    pub fn is_finite(self) -> bool {
        !matches!(self, GraphFamily::Multi | GraphFamily::ConnectedMulti)
    }

    /// The largest edge count occurring at arity `n` (finite families only).
    pub fn max_edges(self, n: usize) -> Option<usize> {
        match self {
            GraphFamily::Multi | GraphFamily::ConnectedMulti => None,
            GraphFamily::Simple | GraphFamily::ConnectedSimple => Some(n * n.saturating_sub(1) / 2),
            GraphFamily::Trees => Some(n.saturating_sub(1)),
        }
    }
}

impl MultiGraph {
    pub(crate) fn vertices_len(&self) -> usize {
        crate::species::Structure::vertices(self).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::standard_labels;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_match_closed_forms() {
        let v3 = standard_labels(3);
        // multisets of size e from 6 pairs
        assert_eq!(multigraphs(&v3, 2).len(), binomial(7, 2));
        assert_eq!(simple_graphs_all(&standard_labels(4)).len(), 64);
        assert_eq!(simple_graphs(&standard_labels(4), 3).len(), binomial(6, 3));
        // Cayley: n^(n-2)
        for n in 1..=5 {
            assert_eq!(trees(&standard_labels(n)).len(), n.pow(n.saturating_sub(2) as u32));
        }
    }

    #[test]
    fn enumerations_are_sorted_and_distinct() {
        let gs = multigraphs(&standard_labels(3), 3);
        assert!(gs.windows(2).all(|w| w[0] < w[1]));
        for g in connected_multigraphs(&standard_labels(3), 2) {
            assert!(g.is_connected().unwrap());
        }
    }

    #[test]
    fn families_agree_with_filters() {
        let v = standard_labels(4);
        for fam in [GraphFamily::ConnectedSimple, GraphFamily::Trees, GraphFamily::Simple] {
            for e in 0..=6 {
                let expected: Vec<MultiGraph> =
                    simple_graphs(&v, e).into_iter().filter(|g| fam.admits(g)).collect();
                assert_eq!(fam.basis(&v, e), expected);
            }
        }
        assert_eq!(GraphFamily::Trees.basis(&v, 3).len(), 16);
    }
}
