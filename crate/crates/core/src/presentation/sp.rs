//! The operad generated by the edgeless pair `P` and the edge `S`, its
//! quadratic presentation, and its Koszul dual.

use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::lab::{GraphOperad, Operad};
use crate::species::{Label, LinComb};

use super::{graft, signed, FreeTree, Generator, GeneratorSpecies, Node, Presentation};

/// `P` (two isolated vertices) and `S` (an edge), both symmetric.
pub fn sp_generators() -> GeneratorSpecies {
    GeneratorSpecies::symmetric(&["P", "S"]).expect("valid names")
}

/// `top(u, ∗) ∘_∗ low(v, w)`.
pub(crate) fn quadratic(top: &Generator, u: &str, low: &Generator, v: &str, w: &str) -> Result<LinComb<FreeTree>> {
    let outer = FreeTree::corolla(top, u, Label::hole().as_str())?;
    let inner = FreeTree::corolla(low, v, w)?;
    let mut out = LinComb::zero();
    for (a, ca) in outer.iter() {
        for (b, cb) in inner.iter() {
            let (neg, t) = graft(a, &Label::hole(), b)?;
            out.add_scaled(&signed(neg, t), &(ca * cb));
        }
    }
    Ok(out)
}

fn pair(species: &GeneratorSpecies) -> (Generator, Generator) {
    let gs = species.generators();
    (gs[0].clone(), gs[1].clone())
}

/// The two relations `r₁`, `r₂`.
pub fn sp_relations() -> Vec<LinComb<FreeTree>> {
    let (p, s) = pair(&sp_generators());
    let q = |t: &Generator, u, l: &Generator, v, w| quadratic(t, u, l, v, w).expect("valid");
    vec![
        q(&p, "c", &p, "a", "b") - q(&p, "a", &p, "b", "c"),
        q(&s, "a", &p, "b", "c") - q(&p, "c", &s, "a", "b") - q(&p, "b", &s, "a", "c"),
    ]
}

/// The three dual relations `r'₁`, `r'₂`, `r'₃`.
///
/// The dual generators are antisymmetric, so the orientation of each inner
/// pair matters: in `r'₂` the last term is `S∨(b, P∨(c, a))`, cyclic like
/// `r'₃`. With `P∨(a, c)` there instead, the orbit of `r'₂` is 6-dimensional
/// and the ideal is no longer the orthogonal of the relations of `SP`.
pub fn sp_dual_relations() -> Vec<LinComb<FreeTree>> {
    let (p, s) = pair(&sp_generators().dual());
    let q = |t: &Generator, u, l: &Generator, v, w| quadratic(t, u, l, v, w).expect("valid");
    vec![
        q(&s, "a", &s, "b", "c"),
        q(&p, "a", &s, "b", "c") + q(&s, "c", &p, "a", "b") + q(&s, "b", &p, "c", "a"),
        q(&p, "a", &p, "b", "c") + q(&p, "c", &p, "a", "b") + q(&p, "b", &p, "c", "a"),
    ]
}

pub fn sp_presentation() -> Presentation {
    Presentation::new(sp_generators(), sp_relations()).expect("quadratic")
}

pub fn sp_dual_presentation() -> Presentation {
    Presentation::new(sp_generators().dual(), sp_dual_relations()).expect("quadratic")
}

fn eval_node(op: &GraphOperad, node: &Node) -> Result<LinComb<MultiGraph>> {
    match node {
        Node::Leaf(l) => Ok(LinComb::basis(MultiGraph::vertex(l.clone()))),
        Node::Op { generator, children } => {
            let (h1, h2) = (Label::new("∗1")?, Label::new("∗2")?);
            let edges = match generator.name.as_str() {
                "P" => vec![],
                "S" => vec![(h1.clone(), h2.clone())],
                other => return Err(Error::Unsupported(format!("no graph for generator {other}"))),
            };
            let g = LinComb::basis(MultiGraph::new(vec![h1.clone(), h2.clone()], edges)?);
            let left = eval_node(op, &children[0])?;
            let right = eval_node(op, &children[1])?;
            op.compose_linear(&op.compose_linear(&g, &h1, &left)?, &h2, &right)
        }
    }
}

/// The evaluation morphism into 𝕂G: `P` and `S` become the edgeless pair and
/// the edge, grafting becomes insertion.
pub fn evaluate(x: &LinComb<FreeTree>) -> Result<LinComb<MultiGraph>> {
    let op = GraphOperad::simple();
    let mut out = LinComb::zero();
    for (t, c) in x.iter() {
        out.add_scaled(&eval_node(&op, &t.root)?, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{free_basis, ideal_closure, koszul_pair, orthogonal_complement, quotient_dims};
    use crate::subspace::Subspace;

    #[test]
    fn relations_evaluate_to_zero() {
        for r in sp_relations() {
            assert!(evaluate(&r).unwrap().is_zero(), "{r}");
        }
        let (_, s) = pair(&sp_generators());
        let x = quadratic(&s, "a", &s, "b", "c").unwrap();
        assert_eq!(evaluate(&x).unwrap().len(), 2);
    }

    #[test]
    fn arity_three_dimensions() {
        let i = ideal_closure(&sp_presentation(), 3).unwrap();
        let j = ideal_closure(&sp_dual_presentation(), 3).unwrap();
        assert_eq!(free_basis(&sp_generators(), 3).len(), 12);
        assert_eq!(i.rank(&3), 5);
        assert_eq!(j.rank(&3), 7);
    }

    #[test]
    fn dual_relations_are_the_orthogonal() {
        let i = ideal_closure(&sp_presentation(), 3).unwrap();
        let j = ideal_closure(&sp_dual_presentation(), 3).unwrap();
        let (i3, j3) = (i.grade(&3).unwrap(), j.grade(&3).unwrap());
        for f in j3.basis() {
            for x in i3.basis() {
                assert!(koszul_pair(&f, &x).unwrap().is_zero(), "{f} against {x}");
            }
        }
        let perp = orthogonal_complement(i3, &sp_generators()).unwrap();
        assert_eq!(perp.rank(), 7);
        let mut both: Subspace<FreeTree> = perp.clone();
        for f in j3.basis() {
            assert!(perp.contains(&f));
            both.insert(&f);
        }
        assert_eq!(both.rank(), 7);
    }

    #[test]
    fn quotient_dimensions() {
        assert_eq!(quotient_dims(&sp_presentation(), 4).unwrap(), vec![(1, 1), (2, 2), (3, 7), (4, 37)]);
        assert_eq!(quotient_dims(&sp_dual_presentation(), 4).unwrap(), vec![(1, 1), (2, 2), (3, 5), (4, 17)]);
    }

    #[test]
    fn acyclic_orientation_breaks_the_dual() {
        let (p, s) = pair(&sp_generators().dual());
        let q = |t: &Generator, u, l: &Generator, v, w| quadratic(t, u, l, v, w).unwrap();
        let mut rels = sp_dual_relations();
        rels[1] = q(&p, "a", &s, "b", "c") + q(&s, "c", &p, "a", "b") + q(&s, "b", &p, "a", "c");
        let j = ideal_closure(&Presentation::new(sp_generators().dual(), rels).unwrap(), 3).unwrap();
        assert_eq!(j.rank(&3), 9);
    }
}
