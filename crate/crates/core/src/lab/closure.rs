//! Suboperad closure over the (arity, weight) bigrading, and generator search.
//!
//! All spans live on the standard label sets `a, b, ...`. Grades are filled in
//! lexicographic order: a composite `x ∘ g` of a stored `x` with a generator
//! `g` of arity `k` lands in a strictly larger grade (larger arity when
//! `k ≥ 2`, larger weight when `k = 1` since arity-one generators other than
//! the unit have positive weight). Every element of the suboperad is a sum of
//! such composites where `g` sits at a node whose inputs are all leaves, so
//! one pass per grade suffices. Placing `x`'s hole at its last label and `g` on
//! every label subset in every relabeling keeps each grade relabel-closed.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::species::{standard_labels, Bijection, Label, LinComb};
use crate::subspace::GradedSubspace;

use super::{homogeneous_weight, standard_orbit, Operad};

/// `(arity, weight)`.
pub type Grade = (usize, usize);

#[derive(Clone, Debug)]
pub struct ClosureState<O: Operad> {
    op: O,
    max_arity: usize,
    edge_bound: Option<usize>,
    spans: GradedSubspace<Grade, O::Basis>,
    /// vectors that grew each grade; sparse, and a basis of the grade's span
    spanning: BTreeMap<Grade, Vec<LinComb<O::Basis>>>,
    /// labeled generators on standard labels (independent orbit members)
    generators: BTreeMap<Grade, Vec<LinComb<O::Basis>>>,
    /// ambient dimensions of the grades whose column order was fixed
    ambient_dims: BTreeMap<Grade, usize>,
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            acc.push(i);
            rec(n, k, i + 1, acc, out);
            acc.pop();
        }
    }
    rec(n, k, 0, &mut acc, &mut out);
    out
}

impl<O: Operad> ClosureState<O> {
    /// An empty state; grades are filled by [`ClosureState::close_grade`].
    pub fn new(op: O, max_arity: usize, edge_bound: Option<usize>) -> Self {
        ClosureState {
            op,
            max_arity,
            edge_bound,
            spans: GradedSubspace::new(),
            spanning: BTreeMap::new(),
            generators: BTreeMap::new(),
            ambient_dims: BTreeMap::new(),
        }
    }

    pub fn operad(&self) -> &O {
        &self.op
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn edge_bound(&self) -> Option<usize> {
        self.edge_bound
    }

    /// Largest weight considered at arity `n`.
    pub fn weight_limit(&self, n: usize) -> Result<usize> {
        match (self.op.max_weight(n), self.edge_bound) {
            (Some(a), Some(b)) => Ok(a.min(b)),
            (Some(a), None) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Err(Error::Unsupported(format!(
                "closure in {} needs an edge bound",
                self.op.name()
            ))),
        }
    }

    /// Normalizes `x` onto standard labels and returns its grade.
    fn standardize(&self, x: &LinComb<O::Basis>) -> Result<Option<(Grade, LinComb<O::Basis>)>> {
        let Some(vs) = x.vertex_set()? else { return Ok(None) };
        let n = vs.len();
        if n == 0 || n > self.max_arity {
            return Err(Error::ArityOutOfRange { arity: n, max: self.max_arity });
        }
        let w = homogeneous_weight(&self.op, x)?.expect("nonzero");
        let limit = self.weight_limit(n)?;
        if w > limit {
            return Err(Error::WeightOutOfRange { weight: w, max: limit });
        }
        let sigma = Bijection::zip(&vs, &standard_labels(n))?;
        Ok(Some(((n, w), x.relabel(&sigma)?)))
    }

    /// Adjoins `x` with its whole orbit as generators. Returns the number of
    /// independent orbit members and the rank increase.
    pub fn add_generator(&mut self, x: &LinComb<O::Basis>) -> Result<(usize, usize)> {
        let Some((grade, std)) = self.standardize(x)? else { return Ok((0, 0)) };
        if grade == (1, 0) {
            return Ok((0, 0));
        }
        let orbit = standard_orbit(&std)?;
        let size = orbit.len();
        let mut grew = 0;
        for y in orbit {
            if self.spans.span_insert(grade, &y) {
                grew += 1;
                self.spanning.entry(grade).or_default().push(y.clone());
            }
            self.generators.entry(grade).or_default().push(y);
        }
        Ok((size, grew))
    }

    /// Composites landing in `grade` of stored vectors with generators.
    pub fn composites(&self, grade: Grade) -> Result<Vec<LinComb<O::Basis>>> {
        let (n, w) = grade;
        let target = standard_labels(n);
        let hole = Label::hole();
        // (stored vector, its relabeling, generator, its relabeling)
        type Job<'a, B> = (&'a LinComb<B>, Bijection, &'a LinComb<B>, Bijection);
        let mut jobs: Vec<Job<O::Basis>> = Vec::new();
        for (&(k, wg), gens) in &self.generators {
            if k > n || wg > w {
                continue;
            }
            let n1 = n + 1 - k;
            let Some(stored) = self.spanning.get(&(n1, w - wg)) else { continue };
            for subset in k_subsets(n, k) {
                let onto: Vec<Label> = subset.iter().map(|&i| target[i].clone()).collect();
                let mut rest: Vec<Label> =
                    (0..n).filter(|i| !subset.contains(i)).map(|i| target[i].clone()).collect();
                rest.push(hole.clone());
                let tau = Bijection::zip(&standard_labels(n1), &rest)?;
                let rho = Bijection::zip(&standard_labels(k), &onto)?;
                for x in stored {
                    for g in gens {
                        jobs.push((x, tau.clone(), g, rho.clone()));
                    }
                }
            }
        }
        jobs.par_iter()
            .map(|(x, tau, g, rho)| {
                let x = x.relabel(tau)?;
                let g = g.relabel(rho)?;
                self.op.compose_linear(&x, &hole, &g)
            })
            .collect()
    }

    /// Fills `grade` with the composites landing there. Returns the rank.
    pub fn close_grade(&mut self, grade: Grade) -> Result<usize> {
        let composites = self.composites(grade)?;
        let full = self.ambient_dim(grade);
        for v in composites {
            if full.is_some_and(|d| self.spans.rank(&grade) >= d) {
                break;
            }
            if self.spans.span_insert(grade, &v) {
                self.spanning.entry(grade).or_default().push(v);
            }
        }
        Ok(self.spans.rank(&grade))
    }

    fn ambient_dim(&self, grade: Grade) -> Option<usize> {
        self.ambient_dims.get(&grade).copied()
    }

    /// Fixes the column order of `grade` to the ambient enumeration.
    pub fn set_ambient(&mut self, grade: Grade) -> Vec<O::Basis> {
        let ambient = self.op.ambient(grade.0, grade.1);
        self.spans.set_ambient(grade, ambient.clone());
        self.ambient_dims.insert(grade, ambient.len());
        ambient
    }

    /// Whether `x` lies in the closure.
    pub fn contains(&self, x: &LinComb<O::Basis>) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        let Some(vs) = x.vertex_set()? else { return Ok(true) };
        let n = vs.len();
        if n == 0 || n > self.max_arity {
            return Err(Error::ArityOutOfRange { arity: n, max: self.max_arity });
        }
        let limit = self.weight_limit(n)?;
        let sigma = Bijection::zip(&vs, &standard_labels(n))?;
        let mut parts: BTreeMap<usize, LinComb<O::Basis>> = BTreeMap::new();
        for (b, c) in x.relabel(&sigma)?.iter() {
            parts.entry(self.op.weight(b)).or_default().add_term(b.clone(), c.clone());
        }
        for (w, part) in parts {
            if w > limit {
                return Err(Error::WeightOutOfRange { weight: w, max: limit });
            }
            if n == 1 && w == 0 {
                // only the unit lives here
                let unit = LinComb::basis(self.op.unit(&standard_labels(1)[0]));
                let mut probe = crate::subspace::Subspace::new();
                probe.insert(&unit);
                if !probe.contains(&part) {
                    return Ok(false);
                }
                continue;
            }
            if !self.spans.contains(&(n, w), &part) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn rank(&self, grade: Grade) -> usize {
        if grade == (1, 0) {
            return 1;
        }
        self.spans.rank(&grade)
    }

    /// `(arity, dimension)` for arities `1..=max_arity`; arity one counts the unit.
    pub fn hilbert_dims(&self) -> Result<Vec<(usize, usize)>> {
        (1..=self.max_arity)
            .map(|n| Ok((n, (0..=self.weight_limit(n)?).map(|w| self.rank((n, w))).sum())))
            .collect()
    }

    /// The stored spanning vectors of a grade (a basis of its span).
    pub fn basis(&self, grade: Grade) -> &[LinComb<O::Basis>] {
        self.spanning.get(&grade).map_or(&[], Vec::as_slice)
    }

    pub fn generator_grades(&self) -> impl Iterator<Item = (&Grade, &Vec<LinComb<O::Basis>>)> {
        self.generators.iter()
    }

    /// All grades up to `max_arity`, in processing order.
    pub fn grades(&self) -> Result<Vec<Grade>> {
        let mut out = Vec::new();
        for n in 1..=self.max_arity {
            for w in 0..=self.weight_limit(n)? {
                out.push((n, w));
            }
        }
        Ok(out)
    }
}

/// The suboperad generated by `generators`, through `max_arity` (and weight at
/// most `edge_bound` when given). Each generator must be homogeneous in weight.
pub fn close<O: Operad>(
    op: &O,
    generators: &[LinComb<O::Basis>],
    max_arity: usize,
    edge_bound: Option<usize>,
) -> Result<ClosureState<O>> {
    let mut state = ClosureState::new(op.clone(), max_arity, edge_bound);
    let mut pending: BTreeMap<Grade, Vec<LinComb<O::Basis>>> = BTreeMap::new();
    for g in generators {
        if let Some((grade, std)) = state.standardize(g)? {
            pending.entry(grade).or_default().push(std);
        }
    }
    for grade in state.grades()? {
        state.close_grade(grade)?;
        for g in pending.remove(&grade).unwrap_or_default() {
            state.add_generator(&g)?;
        }
    }
    Ok(state)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GeneratorShape {
    pub shape: String,
    pub weight: usize,
    /// the labeled representative adjoined
    pub representative: String,
    /// size of its orbit on standard labels
    pub orbit: usize,
    /// rank gained by adjoining the orbit
    pub span_increment: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ArityReport {
    pub arity: usize,
    pub ambient_dim: usize,
    /// rank of the span of composites of lower-arity elements
    pub closed_rank: usize,
    pub generators: Vec<GeneratorShape>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GeneratorReport {
    pub operad: String,
    pub arities: Vec<ArityReport>,
}

impl GeneratorReport {
    /// Number of generator shapes per reported arity: from arity 2, or from
    /// arity 1 when that arity has generators (loops).
    pub fn shape_counts(&self) -> Vec<usize> {
        self.arities.iter().map(|a| a.generators.len()).collect()
    }

    pub fn arity(&self, n: usize) -> Option<&ArityReport> {
        self.arities.iter().find(|a| a.arity == n)
    }
}

/// Searches a generating family arity by arity: close what is known, then
/// adjoin the ambient elements outside the span, greedily in canonical order,
/// each with its whole orbit.
pub fn find_generators<O: Operad>(op: &O, max_arity: usize) -> Result<(GeneratorReport, ClosureState<O>)> {
    find_generators_bounded(op, max_arity, None)
}

/// [`find_generators`] restricted to weight at most `edge_bound`; needed when
/// arities carry infinitely many weights.
pub fn find_generators_bounded<O: Operad>(
    op: &O,
    max_arity: usize,
    edge_bound: Option<usize>,
) -> Result<(GeneratorReport, ClosureState<O>)> {
    let mut state = ClosureState::new(op.clone(), max_arity, edge_bound);
    let mut arities = Vec::new();
    for n in 1..=max_arity {
        let mut report = ArityReport { arity: n, ambient_dim: 0, closed_rank: 0, generators: Vec::new() };
        for w in 0..=state.weight_limit(n)? {
            let grade = (n, w);
            let ambient = state.set_ambient(grade);
            state.close_grade(grade)?;
            report.ambient_dim += ambient.len();
            if grade == (1, 0) {
                report.closed_rank += 1;
                continue;
            }
            report.closed_rank += state.spans.rank(&grade);
            for b in ambient {
                let x = LinComb::basis(b.clone());
                if state.spans.contains(&grade, &x) {
                    continue;
                }
                let (orbit, span_increment) = state.add_generator(&x)?;
                report.generators.push(GeneratorShape {
                    shape: op.shape(&b),
                    weight: w,
                    representative: b.to_string(),
                    orbit,
                    span_increment,
                });
            }
        }
        arities.push(report);
    }
    let arities = arities.into_iter().filter(|a| a.arity >= 2 || !a.generators.is_empty()).collect();
    Ok((GeneratorReport { operad: op.name(), arities }, state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::MultiGraph;
    use crate::lab::{GraphOperad, PlieOperad};

    fn g(s: &str) -> LinComb<MultiGraph> {
        LinComb::basis(s.parse().unwrap())
    }

    #[test]
    fn com_and_commag() {
        let op = GraphOperad::simple();
        let com = close(&op, &[g("vertices=a,b; edges=")], 5, None).unwrap();
        let dims: Vec<usize> = com.hilbert_dims().unwrap().into_iter().map(|d| d.1).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 1]);
        let commag = close(&op, &[g("vertices=a,b; edges=a-b")], 5, None).unwrap();
        let dims: Vec<usize> = commag.hilbert_dims().unwrap().into_iter().map(|d| d.1).collect();
        assert_eq!(dims, vec![1, 1, 3, 15, 105]);
    }

    #[test]
    fn tree_composites_span_arity_three() {
        let op = GraphOperad::trees();
        let state = close(&op, &[g("vertices=a,b; edges=a-b")], 3, None).unwrap();
        assert_eq!(state.rank((3, 2)), 3);
        let path = g("vertices=p,q,r; edges=p-q,q-r");
        assert!(state.contains(&path).unwrap());
    }

    #[test]
    fn tree_generators() {
        let (report, _) = find_generators(&GraphOperad::trees(), 4).unwrap();
        assert_eq!(report.shape_counts(), vec![1, 0, 1]);
        let path = report.arity(4).unwrap();
        assert_eq!(path.generators[0].weight, 3);
        for a in &report.arities {
            let inc: usize = a.generators.iter().map(|g| g.span_increment).sum();
            assert_eq!(a.closed_rank + inc, a.ambient_dim);
        }
    }

    #[test]
    fn connected_multigraph_generators_start_with_the_loop() {
        let (report, state) = find_generators_bounded(&GraphOperad::connected_multigraphs(), 3, Some(2)).unwrap();
        assert_eq!(report.arities[0].arity, 1);
        assert_eq!(report.arities[0].generators.len(), 1);
        assert_eq!(report.arities[0].generators[0].representative, "vertices=a; edges=a-a");
        for a in &report.arities {
            let inc: usize = a.generators.iter().map(|g| g.span_increment).sum();
            assert_eq!(a.closed_rank + inc, a.ambient_dim);
        }
        assert!(find_generators(&GraphOperad::connected_multigraphs(), 2).is_err());
        assert_eq!(state.edge_bound(), Some(2));
    }

    #[test]
    fn plie_is_generated_in_arity_two() {
        let op = PlieOperad;
        let (report, _) = find_generators(&op, 4).unwrap();
        assert_eq!(report.shape_counts(), vec![1, 0, 0]);
    }

    #[test]
    fn contains_checks_ranges() {
        let op = GraphOperad::simple();
        let state = close(&op, &[g("vertices=a,b; edges=")], 3, None).unwrap();
        assert!(state.contains(&g("vertices=x,y,z; edges=")).unwrap());
        assert!(!state.contains(&g("vertices=x,y,z; edges=x-y")).unwrap());
        assert!(matches!(
            state.contains(&g("vertices=a,b,c,d; edges=")),
            Err(Error::ArityOutOfRange { arity: 4, max: 3 })
        ));
        assert!(state.contains(&g("vertices=u; edges=")).unwrap());
    }

    #[test]
    fn generator_order_does_not_matter() {
        let op = GraphOperad::simple();
        let a = g("vertices=a,b; edges=");
        let b = g("vertices=a,b; edges=a-b");
        let s1 = close(&op, &[a.clone(), b.clone()], 4, None).unwrap();
        let s2 = close(&op, &[b, a], 4, None).unwrap();
        assert_eq!(s1.hilbert_dims().unwrap(), s2.hilbert_dims().unwrap());
        assert_eq!(s1.hilbert_dims().unwrap(), vec![(1, 1), (2, 2), (3, 7), (4, 37)]);
    }
}
