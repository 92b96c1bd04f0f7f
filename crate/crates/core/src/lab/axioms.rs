//! Exact checks of the sequential, parallel and unit diagrams on sampled operands.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::species::{Bijection, Label, LinComb, Structure};

use super::Operad;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Diagram {
    Sequential,
    Parallel,
    Unit,
}

/// One instance of one diagram.
#[derive(Clone, Debug)]
pub enum AxiomSample<B> {
    /// `(x ∘_h1 y) ∘_h2 z = x ∘_h1 (y ∘_h2 z)` with `h2` a vertex of `y`.
    Sequential { x: B, h1: Label, y: B, h2: Label, z: B },
    /// `(x ∘_h1 y) ∘_h2 z = (x ∘_h2 z) ∘_h1 y` with both holes in `x`.
    Parallel { x: B, h1: Label, h2: Label, y: B, z: B },
    /// `x ∘_h 1_v = x[h ↦ v]` and `1_h ∘_h x[h ↦ v] = x[h ↦ v]`.
    Unit { x: B, h: Label, v: Label },
}

impl<B> AxiomSample<B> {
    pub fn diagram(&self) -> Diagram {
        match self {
            AxiomSample::Sequential { .. } => Diagram::Sequential,
            AxiomSample::Parallel { .. } => Diagram::Parallel,
            AxiomSample::Unit { .. } => Diagram::Unit,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomFailure {
    pub diagram: Diagram,
    pub operands: Vec<String>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub operad: String,
    pub sequential: usize,
    pub parallel: usize,
    pub unit: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn disjoint(a: &[Label], b: &[Label]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_err())
}

fn malformed(msg: &str) -> Error {
    Error::MalformedSample(msg.to_string())
}

fn validate<B: Structure>(sample: &AxiomSample<B>) -> Result<()> {
    match sample {
        AxiomSample::Sequential { x, h1, y, h2, z } => {
            if x.vertices().binary_search(h1).is_err() || y.vertices().binary_search(h2).is_err() {
                return Err(malformed("holes must be vertices of x and y"));
            }
            if !disjoint(x.vertices(), y.vertices())
                || !disjoint(x.vertices(), z.vertices())
                || !disjoint(y.vertices(), z.vertices())
            {
                return Err(malformed("operands must have disjoint vertex sets"));
            }
        }
        AxiomSample::Parallel { x, h1, h2, y, z } => {
            if h1 == h2
                || x.vertices().binary_search(h1).is_err()
                || x.vertices().binary_search(h2).is_err()
            {
                return Err(malformed("x needs two distinct holes"));
            }
            if !disjoint(x.vertices(), y.vertices())
                || !disjoint(x.vertices(), z.vertices())
                || !disjoint(y.vertices(), z.vertices())
            {
                return Err(malformed("operands must have disjoint vertex sets"));
            }
        }
        AxiomSample::Unit { x, h, v } => {
            if x.vertices().binary_search(h).is_err() {
                return Err(malformed("hole must be a vertex of x"));
            }
            if h != v && x.vertices().binary_search(v).is_ok() {
                return Err(malformed("unit label clashes with x"));
            }
        }
    }
    Ok(())
}

/// Verifies every sample exactly; failures carry the full operands.
pub fn check_axioms<O: Operad>(op: &O, samples: &[AxiomSample<O::Basis>]) -> Result<AxiomReport> {
    for s in samples {
        validate(s)?;
    }
    let mut report = AxiomReport { operad: op.name(), ..AxiomReport::default() };
    for s in samples {
        let (operands, left, right) = match s {
            AxiomSample::Sequential { x, h1, y, h2, z } => {
                report.sequential += 1;
                let (x, y, z) = (LinComb::basis(x.clone()), LinComb::basis(y.clone()), LinComb::basis(z.clone()));
                let left = op.compose_linear(&op.compose_linear(&x, h1, &y)?, h2, &z)?;
                let right = op.compose_linear(&x, h1, &op.compose_linear(&y, h2, &z)?)?;
                (vec![x.to_string(), y.to_string(), z.to_string()], left, right)
            }
            AxiomSample::Parallel { x, h1, h2, y, z } => {
                report.parallel += 1;
                let (x, y, z) = (LinComb::basis(x.clone()), LinComb::basis(y.clone()), LinComb::basis(z.clone()));
                let left = op.compose_linear(&op.compose_linear(&x, h1, &y)?, h2, &z)?;
                let right = op.compose_linear(&op.compose_linear(&x, h2, &z)?, h1, &y)?;
                (vec![x.to_string(), y.to_string(), z.to_string()], left, right)
            }
            AxiomSample::Unit { x, h, v } => {
                report.unit += 1;
                let xs = LinComb::basis(x.clone());
                let right_unit = op.compose_at(x, h, &op.unit(v))?;
                let renamed = xs.relabel(&Bijection::rename(x.vertices(), h, v)?)?;
                let (_, x_renamed) = x.transport(&Bijection::rename(x.vertices(), h, v)?)?;
                let left_unit = if h == v { xs.clone() } else { op.compose_at(&op.unit(h), h, &x_renamed)? };
                let operands = vec![x.to_string(), h.to_string(), v.to_string()];
                if right_unit != renamed {
                    report.failures.push(AxiomFailure {
                        diagram: Diagram::Unit,
                        operands: operands.clone(),
                        left: right_unit.to_string(),
                        right: renamed.to_string(),
                    });
                }
                (operands, left_unit, renamed)
            }
        };
        if left != right {
            report.failures.push(AxiomFailure {
                diagram: s.diagram(),
                operands,
                left: left.to_string(),
                right: right.to_string(),
            });
        }
    }
    Ok(report)
}

fn fresh(prefix: &str, n: usize) -> Vec<Label> {
    (0..n).map(|i| Label::new(&format!("{prefix}{i}")).expect("valid label")).collect()
}

fn with(mut labels: Vec<Label>, extra: &[&Label]) -> Vec<Label> {
    labels.extend(extra.iter().map(|l| (*l).clone()));
    labels.sort();
    labels
}

/// `count` random instances of `diagram`, reproducible from `seed`.
/// Operands have at most three vertices each.
pub fn random_samples<O: Operad>(op: &O, diagram: Diagram, count: usize, seed: u64) -> Vec<AxiomSample<O::Basis>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h1 = Label::new("*1").expect("valid");
    let h2 = Label::new("*2").expect("valid");
    (0..count)
        .map(|_| match diagram {
            Diagram::Sequential => {
                let x = op.random_element(&with(fresh("x", rng.gen_range(0..3)), &[&h1]), &mut rng);
                let y = op.random_element(&with(fresh("y", rng.gen_range(0..3)), &[&h2]), &mut rng);
                let z = op.random_element(&fresh("z", rng.gen_range(1..3)), &mut rng);
                AxiomSample::Sequential { x, h1: h1.clone(), y, h2: h2.clone(), z }
            }
            Diagram::Parallel => {
                let x = op.random_element(&with(fresh("x", rng.gen_range(0..2)), &[&h1, &h2]), &mut rng);
                let y = op.random_element(&fresh("y", rng.gen_range(1..3)), &mut rng);
                let z = op.random_element(&fresh("z", rng.gen_range(1..3)), &mut rng);
                AxiomSample::Parallel { x, h1: h1.clone(), h2: h2.clone(), y, z }
            }
            Diagram::Unit => {
                let x = op.random_element(&with(fresh("x", rng.gen_range(0..4)), &[&h1]), &mut rng);
                AxiomSample::Unit { x, h: h1.clone(), v: Label::new("v").expect("valid") }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{GraphOperad, PlieOperad, RootedOperad};

    fn run<O: Operad>(op: O, seed: u64) {
        for d in [Diagram::Sequential, Diagram::Parallel, Diagram::Unit] {
            let samples = random_samples(&op, d, 25, seed);
            let report = check_axioms(&op, &samples).unwrap();
            assert!(report.passed(), "{}: {:?}", op.name(), report.failures.first());
        }
    }

    #[test]
    fn all_compositions_satisfy_the_axioms() {
        run(GraphOperad::multigraphs(), 1);
        run(GraphOperad::simple(), 2);
        run(GraphOperad::trees(), 3);
        run(RootedOperad, 4);
        run(PlieOperad, 5);
    }

    #[test]
    fn malformed_samples_are_rejected() {
        let op = GraphOperad::simple();
        let x: crate::graphs::MultiGraph = "vertices=a,b; edges=a-b".parse().unwrap();
        let bad = AxiomSample::Unit { x: x.clone(), h: Label::new("*").unwrap(), v: Label::new("v").unwrap() };
        assert!(matches!(check_axioms(&op, &[bad]), Err(Error::MalformedSample(_))));
        let clash = AxiomSample::Sequential {
            x: x.clone(),
            h1: Label::new("a").unwrap(),
            y: x.clone(),
            h2: Label::new("a").unwrap(),
            z: x,
        };
        assert!(matches!(check_axioms(&op, &[clash]), Err(Error::MalformedSample(_))));
    }
}
