//! Property suites for `graphop verify`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lab::{
    check_axioms, close, lemma_edge_bound, lp_checks, nf_combination, psi_morphism_check, random_samples, st_checks,
    Diagram, GraphOperad, Operad, PlieOperad, PropertyCount, RootedOperad,
};
use crate::presentation::{
    check_koszul_inverse, evaluate, free_basis, ideal_closure, koszul_pair, orthogonal_complement, quotient_dims,
    series_sp_dual, sp_dual_presentation, sp_generators, sp_presentation, PowerSeries,
};
use crate::species::LinComb;

use super::{Check, ResultDocument};

/// Instances per diagram and composition in the axiom suite.
pub const AXIOM_SAMPLES: usize = 200;

/// Dimensions of the Koszul dual of the edgeless-pair-and-edge operad, arities 1 to 9.
pub const SP_DUAL_DIMS: [i64; 9] = [1, 2, 5, 17, 74, 394, 2484, 18108, 149904];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// associativity and unit diagrams on random operands
    Axioms,
    /// the vanishing combination showing simple graphs are not free
    Nf,
    /// ψ is an injective morphism of operads on trees
    Psi,
    /// closure properties of 𝐒𝐓 ⊃ 𝒪₁ ⊃ 𝒪₂
    Lemmfond,
    /// dimensions and the functional equation of the Koszul dual series
    Koszul,
    /// the loop-and-pair suboperad of multigraphs
    Lp,
    /// the edge-bound lemma on generators of simple graphs
    Lemma,
    /// the quadratic presentation and its dual at low arity
    Sp,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::Axioms, Suite::Nf, Suite::Psi, Suite::Lemmfond, Suite::Koszul, Suite::Lp, Suite::Lemma, Suite::Sp];

    fn default_arity(self) -> usize {
        match self {
            Suite::Psi | Suite::Lemma | Suite::Sp => 5,
            Suite::Lemmfond => 3,
            Suite::Lp => 4,
            Suite::Koszul => 6,
            Suite::Axioms | Suite::Nf => 0,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.to_string() == s).ok_or_else(|| {
            let names: Vec<String> = Suite::ALL.iter().map(Suite::to_string).collect();
            Error::Parse(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Axioms => "axioms",
            Suite::Nf => "nf",
            Suite::Psi => "psi",
            Suite::Lemmfond => "lemmfond",
            Suite::Koszul => "koszul",
            Suite::Lp => "lp",
            Suite::Lemma => "lemma",
            Suite::Sp => "sp",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// overrides the suite's default arity range
    pub max_arity: Option<usize>,
    pub edge_bound: Option<usize>,
    /// include arity 5 in the edge-bound lemma
    pub opt_in_arity5: bool,
}

fn count_check(name: String, p: &PropertyCount) -> Check {
    let mut detail = format!("{} checked, {} failures", p.checked, p.failures.len());
    if let Some(first) = p.failures.first() {
        detail += &format!("; first: {first}");
    }
    Check::new(name, p.checked > 0 && p.failures.is_empty(), detail)
}

fn axiom_checks<O: Operad>(doc: &mut ResultDocument, key: &str, op: &O, seed: u64) -> Result<()> {
    for (i, d) in [Diagram::Sequential, Diagram::Parallel, Diagram::Unit].into_iter().enumerate() {
        let samples = random_samples(op, d, AXIOM_SAMPLES, seed.wrapping_add(i as u64));
        let report = check_axioms(op, &samples)?;
        let name = format!("{key} {}", serde_json::to_value(d).expect("plain enum").as_str().unwrap_or_default());
        let mut detail = format!("{} instances, {} failures", samples.len(), report.failures.len());
        if let Some(f) = report.failures.first() {
            detail += &format!("; first: {} gives {} vs {}", f.operands.join(" ; "), f.left, f.right);
        }
        doc.push_check(Check::new(name, report.passed(), detail));
    }
    Ok(())
}

fn dims_text(dims: &[(usize, usize)]) -> String {
    dims.iter().map(|(_, d)| d.to_string()).collect::<Vec<_>>().join(",")
}

fn sp_closure_dims(max_arity: usize) -> Result<Vec<(usize, usize)>> {
    let g = |s: &str| -> Result<LinComb<_>> { Ok(LinComb::basis(s.parse()?)) };
    let gens = [g("vertices=a,b; edges=")?, g("vertices=a,b; edges=a-b")?];
    close(&GraphOperad::simple(), &gens, max_arity, None)?.hilbert_dims()
}

/// Runs one property suite. The document fails when any property fails.
pub fn cmd_verify(suite: Suite, opts: &VerifyOptions) -> Result<ResultDocument> {
    let arity = opts.max_arity.unwrap_or(suite.default_arity());
    let mut command = format!("verify {suite} --seed {}", opts.seed);
    if let Some(n) = opts.max_arity {
        command += &format!(" --max-arity {n}");
    }
    if let Some(b) = opts.edge_bound {
        command += &format!(" --edge-bound {b}");
    }
    if opts.opt_in_arity5 {
        command += " --opt-in-arity5";
    }
    let mut doc = ResultDocument::new(command);
    match suite {
        Suite::Axioms => {
            axiom_checks(&mut doc, "mg", &GraphOperad::multigraphs(), opts.seed)?;
            axiom_checks(&mut doc, "g", &GraphOperad::simple(), opts.seed)?;
            axiom_checks(&mut doc, "rooted", &RootedOperad, opts.seed)?;
            axiom_checks(&mut doc, "plie", &PlieOperad, opts.seed)?;
        }
        Suite::Nf => {
            let x = nf_combination()?;
            doc = doc.with_terms(&x);
            doc.push_check(Check::new("nf combination vanishes", x.is_zero(), format!("{} surviving terms", x.len())));
        }
        Suite::Psi => {
            let r = psi_morphism_check(arity)?;
            let mut detail = format!("{} tree pairs, {} failures", r.pairs_checked, r.failures.len());
            if let Some(f) = r.failures.first() {
                detail += &format!("; first: {f}");
            }
            doc.push_check(Check::new("psi intertwines composition", r.failures.is_empty() && r.pairs_checked > 0, detail));
            for (n, trees, rank) in r.injectivity {
                doc.push_check(Check::new(
                    format!("psi injective at arity {n}"),
                    trees == rank,
                    format!("{trees} trees, image rank {rank}"),
                ));
            }
        }
        Suite::Lemmfond => {
            let edges = opts.edge_bound.unwrap_or(3);
            let r = st_checks(arity, edges)?;
            let sizes: Vec<String> = r.st_sizes.iter().map(usize::to_string).collect();
            doc.push_check(Check::new(
                "st basis enumerated",
                r.st_sizes.iter().all(|&s| s > 0),
                format!("sizes {} for arities 1..={arity}, at most {edges} edges", sizes.join(",")),
            ));
            doc.push_check(count_check("st is a suboperad".into(), &r.st_suboperad));
            doc.push_check(count_check("o1 is a suboperad".into(), &r.o1_suboperad));
            doc.push_check(count_check("o2 is an ideal of o1".into(), &r.o2_ideal));
            doc.push_check(count_check("psi independent of the spanning-tree choice".into(), &r.choice_independence));
        }
        Suite::Koszul => {
            let series = series_sp_dual(SP_DUAL_DIMS.len());
            let dims: Vec<Option<i64>> = series.dims().iter().map(|d| d.to_i64()).collect();
            let expected: Vec<Option<i64>> = SP_DUAL_DIMS.iter().map(|&d| Some(d)).collect();
            let shown: Vec<String> = dims.iter().map(|d| d.map_or("?".into(), |d| d.to_string())).collect();
            doc.push_check(Check::new("dual series dimensions", dims == expected, shown.join(",")));
            let quotient = quotient_dims(&sp_dual_presentation(), arity.min(4))?;
            let agree = quotient.iter().all(|&(n, d)| Some(d as i64) == dims[n - 1]);
            doc.push_check(Check::new("dual presentation matches the series", agree, dims_text(&quotient)));
            let sp = sp_closure_dims(arity)?;
            let h_sp = PowerSeries::from_dims(&sp, arity);
            let ok = check_koszul_inverse(&h_sp, &series_sp_dual(arity), arity)?;
            doc.push_check(Check::new(
                format!("functional equation through order {arity}"),
                ok,
                format!("closure dimensions {}", dims_text(&sp)),
            ));
        }
        Suite::Lp => {
            let edges = opts.edge_bound.unwrap_or(6);
            let r = lp_checks(arity, edges)?;
            doc.push_check(Check::new(
                "sp inside lp",
                r.sp_checked > 0 && r.sp_outside_lp.is_empty(),
                format!("{} basis vectors through arity {arity}, {} outside", r.sp_checked, r.sp_outside_lp.len()),
            ));
            // the witness lives at (3, 3), so the bound is pinned there
            let at_three = lp_checks(3, 3)?;
            doc.push_check(Check::new(
                "witness outside lp",
                !at_three.witness_in_lp,
                format!("{} at arity 3, edge bound 3", at_three.witness),
            ));
            doc.dimensions = super::dimensions(r.lp_dims);
        }
        Suite::Lemma => {
            let mut arities = vec![4];
            if opts.opt_in_arity5 || opts.max_arity.is_some_and(|n| n >= 5) {
                arities.push(5);
            }
            for n in arities {
                let r = lemma_edge_bound(n)?;
                let mut detail = format!(
                    "threshold {}, {} graphs checked, {} not generators, composites reach {} edges",
                    r.threshold,
                    r.checked,
                    r.not_reported.len(),
                    r.max_composite_edges
                );
                if !r.not_reported.is_empty() {
                    detail += &format!("; e.g. {}", r.not_reported[0]);
                }
                doc.push_check(Check::new(format!("dense graphs on {n} vertices are generators"), r.passed(), detail));
                let (missing, reached) = r.counts_from(r.threshold + 1);
                doc.push_check(Check::new(
                    format!("dense graphs on {n} vertices, one edge above the threshold"),
                    missing == 0,
                    format!("{missing} not generators, {reached} in composite support"),
                ));
            }
        }
        Suite::Sp => {
            let species = sp_generators();
            let free = free_basis(&species, 3).len();
            let i = ideal_closure(&sp_presentation(), 3)?;
            let j = ideal_closure(&sp_dual_presentation(), 3)?;
            let (i3, j3) = (i.rank(&3), j.rank(&3));
            doc.push_check(Check::new("free dimension at arity 3", free == 12, free.to_string()));
            doc.push_check(Check::new("ideal dimension at arity 3", i3 == 5, i3.to_string()));
            doc.push_check(Check::new("dual ideal dimension at arity 3", j3 == 7, j3.to_string()));
            let vanish = sp_presentation().relations().iter().all(|r| evaluate(r).is_ok_and(|x| x.is_zero()));
            doc.push_check(Check::new("relations vanish in graphs", vanish, ""));
            let mut orthogonal = true;
            if let (Some(ig), Some(jg)) = (i.grade(&3), j.grade(&3)) {
                for f in jg.basis() {
                    for x in ig.basis() {
                        orthogonal &= koszul_pair(&f, &x)?.is_zero();
                    }
                }
                orthogonal &= orthogonal_complement(ig, &species)?.rank() == j3;
            } else {
                orthogonal = false;
            }
            doc.push_check(Check::new("dual ideal is the orthogonal", orthogonal, ""));
            let quotient = quotient_dims(&sp_presentation(), arity)?;
            let closure = sp_closure_dims(arity)?;
            doc.push_check(Check::new(
                format!("presentation matches the closure through arity {arity}"),
                quotient == closure,
                format!("quotient {}, closure {}", dims_text(&quotient), dims_text(&closure)),
            ));
            doc.dimensions = super::dimensions(quotient);
        }
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn nf_suite_passes() {
        let doc = cmd_verify(Suite::Nf, &VerifyOptions::default()).unwrap();
        assert!(doc.passed);
        assert!(doc.terms.is_empty());
    }

    #[test]
    fn small_suites() {
        let opts = VerifyOptions { max_arity: Some(3), ..Default::default() };
        for s in [Suite::Psi, Suite::Sp, Suite::Lp] {
            let doc = cmd_verify(s, &opts).unwrap();
            assert!(doc.passed, "{doc}");
        }
    }
}
