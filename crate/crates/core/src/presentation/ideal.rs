//! Quadratic presentations, their ideals, and the arity-3 Koszul pairing.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lab::Operad;
use crate::rational::Rational;
use crate::species::{standard_labels, Bijection, Label, LinComb, Structure};
use crate::subspace::{GradedSubspace, Subspace};

use super::{free_basis, FreeOperad, FreeTree, Generator, GeneratorSpecies};

/// Largest arity handled by [`ideal_closure`].
pub const MAX_IDEAL_ARITY: usize = 6;

/// `Ope(G, R)`: the free operad on `G` modulo the ideal generated by `R`.
#[derive(Clone, Debug)]
pub struct Presentation {
    generators: GeneratorSpecies,
    relations: Vec<LinComb<FreeTree>>,
}

fn check_quadratic(species: &GeneratorSpecies, x: &LinComb<FreeTree>) -> Result<()> {
    for t in x.basis_elements() {
        let Some((top, _, low)) = t.quadratic_parts() else {
            return Err(Error::NotQuadratic(t.to_string()));
        };
        if !species.generators().contains(top) || !species.generators().contains(low) {
            return Err(Error::NotQuadratic(format!("{t} uses a foreign generator")));
        }
    }
    x.vertex_set()?;
    Ok(())
}

impl Presentation {
    pub fn new(generators: GeneratorSpecies, relations: Vec<LinComb<FreeTree>>) -> Result<Self> {
        for r in &relations {
            check_quadratic(&generators, r)?;
        }
        Ok(Presentation { generators, relations })
    }

    pub fn generators(&self) -> &GeneratorSpecies {
        &self.generators
    }

    pub fn relations(&self) -> &[LinComb<FreeTree>] {
        &self.relations
    }
}

/// The ideal generated by the relations, per arity from 3 through `max_arity`,
/// as spans over the free basis on `a, b, ...`.
///
/// Arity `n` is spanned by the relabelings of the relations (`n = 3`) or by
/// `x ∘ g` and `g ∘ x` for `x` in arity `n - 1` and `g` a generator.
pub fn ideal_closure(p: &Presentation, max_arity: usize) -> Result<GradedSubspace<usize, FreeTree>> {
    if max_arity > MAX_IDEAL_ARITY {
        return Err(Error::ArityOutOfRange { arity: max_arity, max: MAX_IDEAL_ARITY });
    }
    let op = FreeOperad::new(p.generators.clone());
    let mut ideal = GradedSubspace::new();
    if max_arity < 3 {
        return Ok(ideal);
    }
    ideal.set_ambient(3, free_basis(&p.generators, 3));
    for r in &p.relations {
        let Some(vs) = r.vertex_set()? else { continue };
        let std = r.relabel(&Bijection::zip(&vs, &standard_labels(3))?)?;
        for sigma in Bijection::all_permutations(&standard_labels(3)) {
            ideal.span_insert(3, &std.relabel(&sigma)?);
        }
    }
    let hole = Label::hole();
    for n in 4..=max_arity {
        ideal.set_ambient(n, free_basis(&p.generators, n));
        let lower = ideal.grade(&(n - 1)).map(Subspace::basis).unwrap_or_default();
        let target = standard_labels(n);
        let mut jobs: Vec<(LinComb<FreeTree>, LinComb<FreeTree>)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                // x with its hole last, the generator on {i, j}
                let mut rest: Vec<Label> =
                    (0..n).filter(|&k| k != i && k != j).map(|k| target[k].clone()).collect();
                rest.push(hole.clone());
                let tau = Bijection::zip(&standard_labels(n - 1), &rest)?;
                for g in p.generators.generators() {
                    let gt = FreeTree::corolla(g, target[i].as_str(), target[j].as_str())?;
                    for x in &lower {
                        jobs.push((x.relabel(&tau)?, gt.clone()));
                    }
                }
            }
        }
        let mut outer_jobs: Vec<(LinComb<FreeTree>, LinComb<FreeTree>)> = Vec::new();
        for i in 0..n {
            let rest: Vec<Label> = (0..n).filter(|&k| k != i).map(|k| target[k].clone()).collect();
            let tau = Bijection::zip(&standard_labels(n - 1), &rest)?;
            for g in p.generators.generators() {
                let gt = FreeTree::corolla(g, target[i].as_str(), hole.as_str())?;
                for x in &lower {
                    outer_jobs.push((gt.clone(), x.relabel(&tau)?));
                }
            }
        }
        jobs.extend(outer_jobs);
        let composites: Vec<LinComb<FreeTree>> = jobs
            .par_iter()
            .map(|(x, y)| op.compose_linear(x, &hole, y))
            .collect::<Result<_>>()?;
        for c in &composites {
            ideal.span_insert(n, c);
        }
    }
    Ok(ideal)
}

/// `dim Free[n] - dim (R)[n]` for `n = 1..=max_arity`.
pub fn quotient_dims(p: &Presentation, max_arity: usize) -> Result<Vec<(usize, usize)>> {
    let ideal = ideal_closure(p, max_arity)?;
    Ok((1..=max_arity)
        .map(|n| (n, free_basis(&p.generators, n).len() - ideal.rank(&n)))
        .collect())
}

/// Sign turning a canonical two-node tree into its cyclic planar form
/// `g(h(x, y), z)` with `(x, y, z)` a rotation of the sorted leaves.
fn cyclic_sign(t: &FreeTree) -> Option<(Rational, &Generator, &Label, &Generator)> {
    let (top, leaf, low) = t.quadratic_parts()?;
    let vs = t.vertices();
    let odd = if *leaf == vs[0] {
        top.odd
    } else if *leaf == vs[1] {
        low.odd
    } else {
        false
    };
    let sign = if odd { -Rational::one() } else { Rational::one() };
    Some((sign, top, leaf, low))
}

fn is_dual(f: &Generator, x: &Generator) -> bool {
    super::dual_name(&f.name) == x.name && f.odd != x.odd
}

/// `⟨f₁ ∘ f₂, x₁ ∘ x₂⟩ = f₁(x₁) f₂(x₂)` on cyclic planar forms, extended
/// bilinearly; `f` lives over the dual generators.
pub fn koszul_pair(f: &LinComb<FreeTree>, x: &LinComb<FreeTree>) -> Result<Rational> {
    let mut leaves: Option<Vec<Label>> = None;
    for t in f.basis_elements().chain(x.basis_elements()) {
        if t.arity() != 3 || t.quadratic_parts().is_none() {
            return Err(Error::NotQuadratic(t.to_string()));
        }
        match &leaves {
            None => leaves = Some(t.vertices().to_vec()),
            Some(vs) if vs.as_slice() != t.vertices() => return Err(Error::MixedVertexSets(t.to_string())),
            Some(_) => {}
        }
    }
    let mut total = Rational::zero();
    for (tf, cf) in f.iter() {
        let (sf, top_f, leaf_f, low_f) = cyclic_sign(tf).expect("checked");
        for (tx, cx) in x.iter() {
            let (sx, top_x, leaf_x, low_x) = cyclic_sign(tx).expect("checked");
            if leaf_f == leaf_x && is_dual(top_f, top_x) && is_dual(low_f, low_x) {
                total += &(&(cf * cx) * &(&sf * &sx));
            }
        }
    }
    Ok(total)
}

/// The annihilator of `r` (inside the arity-3 free operad on `species`,
/// leaves `a, b, c`) in the arity-3 free operad on the dual species.
pub fn orthogonal_complement(r: &Subspace<FreeTree>, species: &GeneratorSpecies) -> Result<Subspace<FreeTree>> {
    let dual = free_basis(&species.dual(), 3);
    let mut gram = Subspace::with_ambient(dual.clone());
    for row in r.basis() {
        let mut v = LinComb::zero();
        for d in &dual {
            v.add_term(d.clone(), koszul_pair(&LinComb::basis(d.clone()), &row)?);
        }
        gram.insert(&v);
    }
    let mut out = Subspace::with_ambient(dual);
    for v in gram.annihilator() {
        out.insert(&v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(top: &Generator, u: &str, low: &Generator, v: &str, w: &str) -> LinComb<FreeTree> {
        super::super::sp::quadratic(top, u, low, v, w).unwrap()
    }

    #[test]
    fn commutative_dual_is_lie() {
        let com = GeneratorSpecies::symmetric(&["m"]).unwrap();
        let m = com.get("m").unwrap().clone();
        let assoc = q(&m, "c", &m, "a", "b") - q(&m, "a", &m, "b", "c");
        let p = Presentation::new(com.clone(), vec![assoc]).unwrap();
        let ideal = ideal_closure(&p, 4).unwrap();
        assert_eq!(ideal.rank(&3), 2);
        assert_eq!(quotient_dims(&p, 4).unwrap(), vec![(1, 1), (2, 1), (3, 1), (4, 1)]);

        let lie = com.dual();
        let l = lie.get("m∨").unwrap().clone();
        let jacobi = q(&l, "a", &l, "b", "c") + q(&l, "b", &l, "c", "a") + q(&l, "c", &l, "a", "b");
        let perp = orthogonal_complement(ideal.grade(&3).unwrap(), &com).unwrap();
        assert_eq!(perp.rank(), 1);
        assert!(perp.contains(&jacobi));
        let lie_p = Presentation::new(lie, vec![jacobi]).unwrap();
        // Lie: (n-1)!
        assert_eq!(quotient_dims(&lie_p, 5).unwrap(), vec![(1, 1), (2, 1), (3, 2), (4, 6), (5, 24)]);
    }

    #[test]
    fn pairing_basics() {
        let sp = GeneratorSpecies::symmetric(&["P", "S"]).unwrap();
        let dual = sp.dual();
        let (p, s) = (sp.get("P").unwrap().clone(), sp.get("S").unwrap().clone());
        let (pd, sd) = (dual.get("P∨").unwrap().clone(), dual.get("S∨").unwrap().clone());
        let x = q(&p, "c", &s, "a", "b");
        // P∨(c, S∨(a, b)) is minus the cyclic form P∨(S∨(a, b), c)
        assert_eq!(koszul_pair(&q(&pd, "c", &sd, "a", "b"), &x).unwrap(), -Rational::one());
        assert!(koszul_pair(&q(&pd, "a", &sd, "b", "c"), &x).unwrap().is_zero());
        assert!(koszul_pair(&q(&sd, "c", &pd, "a", "b"), &x).unwrap().is_zero());
        let bad = FreeTree::corolla(&p, "a", "b").unwrap();
        assert!(matches!(koszul_pair(&bad, &x), Err(Error::NotQuadratic(_))));
        // nondegenerate on bases: each dual tree pairs to ±1 with exactly one tree
        for d in free_basis(&dual, 3) {
            let nonzero: Vec<Rational> = free_basis(&sp, 3)
                .into_iter()
                .map(|t| koszul_pair(&LinComb::basis(d.clone()), &LinComb::basis(t)).unwrap())
                .filter(|c| !c.is_zero())
                .collect();
            assert_eq!(nonzero.len(), 1);
            assert!(nonzero[0].abs().is_one());
        }
    }

    #[test]
    fn complement_extremes() {
        let sp = GeneratorSpecies::symmetric(&["P", "S"]).unwrap();
        assert_eq!(orthogonal_complement(&Subspace::new(), &sp).unwrap().rank(), 12);
        let mut full = Subspace::new();
        for t in free_basis(&sp, 3) {
            full.insert(&LinComb::basis(t));
        }
        assert_eq!(orthogonal_complement(&full, &sp).unwrap().rank(), 0);
    }

    #[test]
    fn empty_relations() {
        let sp = GeneratorSpecies::symmetric(&["P", "S"]).unwrap();
        let p = Presentation::new(sp.clone(), Vec::new()).unwrap();
        let ideal = ideal_closure(&p, 5).unwrap();
        for n in 3..=5 {
            assert_eq!(ideal.rank(&n), 0);
        }
        assert_eq!(quotient_dims(&p, 4).unwrap(), vec![(1, 1), (2, 2), (3, 12), (4, 120)]);
        assert!(matches!(ideal_closure(&p, 7), Err(Error::ArityOutOfRange { .. })));
    }

    #[test]
    fn non_quadratic_relations_are_rejected() {
        let sp = GeneratorSpecies::symmetric(&["P"]).unwrap();
        let c = FreeTree::corolla(sp.get("P").unwrap(), "a", "b").unwrap();
        assert!(matches!(Presentation::new(sp, vec![c]), Err(Error::NotQuadratic(_))));
    }
}
