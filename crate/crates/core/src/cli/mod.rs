//! The command layer behind the `graphop` binary and the browser demo: parsed
//! requests in, one self-describing [`ResultDocument`] out.

mod verify;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{MultiGraph, RootedOrientedMultiGraph, RootedTree, SimpleGraph};
use crate::insertion::{g_insert_at, mg_insert_at, plie_compose_at, rooted_insert_at};
use crate::lab::{close, find_generators_bounded, ArityReport, GraphOperad, Operad};
use crate::presentation::series_sp_dual;
use crate::species::{Label, LinComb, Structure};

pub use verify::{cmd_verify, Suite, VerifyOptions};

/// Largest order accepted by `hilbert sp-dual`.
pub const MAX_SERIES_ORDER: usize = 9;
/// Largest arity accepted for closure Hilbert series.
pub const MAX_CLOSURE_ORDER: usize = 6;

/// One-line graph text, `vertices=...; edges=...[; root=...]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GraphText(pub String);

impl GraphText {
    pub fn of<S: Structure>(s: &S) -> Self {
        GraphText(s.to_string())
    }

    pub fn parse<S: FromStr<Err = Error>>(&self) -> Result<S> {
        self.0.parse()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for GraphText {
    fn from(s: &str) -> Self {
        GraphText(s.to_string())
    }
}

impl fmt::Display for GraphText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "json" => Ok(Format::Structured),
            other => Err(Error::Parse(format!("unknown format {other:?}; expected text or structured"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coefficient: String,
    pub graph: GraphText,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dimension {
    pub arity: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// Everything one invocation reports. Every list is in a canonical order, so
/// the serialized document depends only on the command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub passed: bool,
    pub terms: Vec<Term>,
    pub dimensions: Vec<Dimension>,
    pub generators: Vec<ArityReport>,
    pub checks: Vec<Check>,
}

impl ResultDocument {
    pub fn new(command: impl Into<String>) -> Self {
        ResultDocument {
            command: command.into(),
            passed: true,
            terms: Vec::new(),
            dimensions: Vec::new(),
            generators: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn with_terms<B: Structure>(mut self, x: &LinComb<B>) -> Self {
        self.terms = x.iter().map(|(b, c)| Term { coefficient: c.to_string(), graph: GraphText::of(b) }).collect();
        self
    }

    pub fn push_check(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.dimensions.iter().map(|d| d.dimension).collect()
    }

    /// 0 when everything passed, 1 on a failed property.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => serde_json::to_string_pretty(self).expect("plain data") + "\n",
            Format::Text => self.to_string(),
        }
    }
}

impl fmt::Display for ResultDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        writeln!(out, "# {}", self.command)?;
        for t in &self.terms {
            writeln!(out, "{}\t{}", t.coefficient, t.graph)?;
        }
        if !self.dimensions.is_empty() {
            writeln!(out, "arity\tdimension")?;
            for d in &self.dimensions {
                writeln!(out, "{}\t{}", d.arity, d.dimension)?;
            }
        }
        for a in &self.generators {
            writeln!(out, "arity {}: ambient {}, composites {}, {} generator shape(s)", a.arity, a.ambient_dim, a.closed_rank, a.generators.len())?;
            for g in &a.generators {
                writeln!(out, "  [{} edges, orbit {}, +{}] {}", g.weight, g.orbit, g.span_increment, g.shape)?;
            }
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(out, "{mark} {}", c.name)?;
            } else {
                writeln!(out, "{mark} {}: {}", c.name, c.detail)?;
            }
        }
        writeln!(out, "{}", if self.passed { "passed" } else { "failed" })?;
        f.write_str(&out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComposeKind {
    /// multigraph insertion
    Mg,
    /// simple-graph insertion
    G,
    /// rooted insertion of rooted oriented multigraphs
    Rooted,
    /// pre-Lie grafting of rooted trees
    Plie,
}

impl FromStr for ComposeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mg" => Ok(ComposeKind::Mg),
            "g" => Ok(ComposeKind::G),
            "rooted" => Ok(ComposeKind::Rooted),
            "plie" => Ok(ComposeKind::Plie),
            other => Err(Error::Parse(format!("unknown composition {other:?}; expected mg, g, rooted or plie"))),
        }
    }
}

impl fmt::Display for ComposeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComposeKind::Mg => "mg",
            ComposeKind::G => "g",
            ComposeKind::Rooted => "rooted",
            ComposeKind::Plie => "plie",
        })
    }
}

/// `g1 ∘_hole g2` as an exact linear combination.
pub fn cmd_compose(kind: ComposeKind, g1: &GraphText, hole: &str, g2: &GraphText) -> Result<ResultDocument> {
    let hole = Label::new(hole)?;
    let doc = ResultDocument::new(format!("compose {kind} {hole} [{g1}] [{g2}]"));
    Ok(match kind {
        ComposeKind::Mg => doc.with_terms(&mg_insert_at(&g1.parse::<MultiGraph>()?, &hole, &g2.parse()?)?),
        ComposeKind::G => doc.with_terms(&g_insert_at(&g1.parse::<SimpleGraph>()?, &hole, &g2.parse()?)?),
        ComposeKind::Rooted => {
            doc.with_terms(&rooted_insert_at(&g1.parse::<RootedOrientedMultiGraph>()?, &hole, &g2.parse()?)?)
        }
        ComposeKind::Plie => doc.with_terms(&plie_compose_at(&g1.parse::<RootedTree>()?, &hole, &g2.parse()?)?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphOperadName {
    /// simple graphs
    G,
    /// trees
    T,
    /// connected multigraphs
    MGc,
    /// all multigraphs
    MG,
}

impl GraphOperadName {
    pub fn operad(self) -> GraphOperad {
        match self {
            GraphOperadName::G => GraphOperad::simple(),
            GraphOperadName::T => GraphOperad::trees(),
            GraphOperadName::MGc => GraphOperad::connected_multigraphs(),
            GraphOperadName::MG => GraphOperad::multigraphs(),
        }
    }

    /// Whether each arity has finitely many basis elements.
    fn is_finite(self) -> bool {
        matches!(self, GraphOperadName::G | GraphOperadName::T)
    }
}

impl FromStr for GraphOperadName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" => Ok(GraphOperadName::G),
            "T" | "t" => Ok(GraphOperadName::T),
            "MGc" | "mgc" => Ok(GraphOperadName::MGc),
            "MG" | "mg" => Ok(GraphOperadName::MG),
            other => Err(Error::Parse(format!("unknown operad {other:?}; expected G, T, MGc or MG"))),
        }
    }
}

impl fmt::Display for GraphOperadName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphOperadName::G => "G",
            GraphOperadName::T => "T",
            GraphOperadName::MGc => "MGc",
            GraphOperadName::MG => "MG",
        })
    }
}

fn dimensions(dims: Vec<(usize, usize)>) -> Vec<Dimension> {
    dims.into_iter().map(|(arity, dimension)| Dimension { arity, dimension }).collect()
}

fn need_edge_bound(operad: GraphOperadName, edge_bound: Option<usize>) -> Result<()> {
    if !operad.is_finite() && edge_bound.is_none() {
        return Err(Error::Unsupported(format!("{operad} has infinitely many elements per arity; pass an edge bound")));
    }
    Ok(())
}

/// Generator search through `max_arity`: the dimension table of what the
/// found generators span, and the generator shapes per arity.
pub fn cmd_generators(
    operad: GraphOperadName,
    max_arity: usize,
    opt_in_arity5: bool,
    edge_bound: Option<usize>,
) -> Result<ResultDocument> {
    let limit = match operad {
        GraphOperadName::G if opt_in_arity5 => 5,
        GraphOperadName::G => 4,
        GraphOperadName::T => 6,
        GraphOperadName::MGc | GraphOperadName::MG => 4,
    };
    if max_arity == 0 || max_arity > limit {
        let hint = if operad == GraphOperadName::G && max_arity == 5 { " (arity 5 needs --opt-in-arity5)" } else { "" };
        return Err(Error::Unsupported(format!("generator search for {operad} supports arities 1..={limit}{hint}")));
    }
    need_edge_bound(operad, edge_bound)?;
    let (report, state) = find_generators_bounded(&operad.operad(), max_arity, edge_bound)?;
    let mut command = format!("generators {operad} --max-arity {max_arity}");
    if let Some(b) = edge_bound {
        write!(command, " --edge-bound {b}").expect("string");
    }
    let mut doc = ResultDocument::new(command);
    doc.dimensions = dimensions(state.hilbert_dims()?);
    doc.generators = report.arities;
    Ok(doc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HilbertTarget {
    /// the closed form for the Koszul dual of the edgeless-pair-and-edge operad
    SpDual,
    /// the suboperad of a graph operad generated by the given graphs
    Closure { operad: GraphOperadName, generators: Vec<GraphText> },
}

impl FromStr for HilbertTarget {
    type Err = Error;
    /// `sp-dual`, or `<operad>:<graph>|<graph>|...`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "sp-dual" {
            return Ok(HilbertTarget::SpDual);
        }
        let Some((operad, gens)) = s.split_once(':') else {
            return Err(Error::Parse(format!("expected sp-dual or <operad>:<graph>|..., got {s:?}")));
        };
        let generators: Vec<GraphText> = gens.split('|').map(|g| GraphText(g.trim().to_string())).collect();
        if generators.iter().any(|g| g.0.is_empty()) {
            return Err(Error::Parse(format!("empty generator in {s:?}")));
        }
        Ok(HilbertTarget::Closure { operad: operad.trim().parse()?, generators })
    }
}

impl fmt::Display for HilbertTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertTarget::SpDual => f.write_str("sp-dual"),
            HilbertTarget::Closure { operad, generators } => {
                let gens: Vec<&str> = generators.iter().map(GraphText::as_str).collect();
                write!(f, "{operad}:{}", gens.join("|"))
            }
        }
    }
}

/// `(arity, dimension)` pairs for arities `1..=order`.
pub fn cmd_hilbert(target: &HilbertTarget, order: usize, edge_bound: Option<usize>) -> Result<ResultDocument> {
    let mut command = format!("hilbert {target} --max-arity {order}");
    let dims = match target {
        HilbertTarget::SpDual => {
            if order == 0 || order > MAX_SERIES_ORDER {
                return Err(Error::Unsupported(format!("sp-dual series supports orders 1..={MAX_SERIES_ORDER}")));
            }
            series_sp_dual(order)
                .dims()
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    let d = d.to_i64().filter(|&d| d >= 0).expect("nonnegative integer dimension");
                    (i + 1, d as usize)
                })
                .collect()
        }
        HilbertTarget::Closure { operad, generators } => {
            if order == 0 || order > MAX_CLOSURE_ORDER {
                return Err(Error::Unsupported(format!("closures support orders 1..={MAX_CLOSURE_ORDER}")));
            }
            need_edge_bound(*operad, edge_bound)?;
            if let Some(b) = edge_bound {
                write!(command, " --edge-bound {b}").expect("string");
            }
            let gens = generators
                .iter()
                .map(|g| Ok(LinComb::basis(g.parse::<MultiGraph>()?)))
                .collect::<Result<Vec<_>>>()?;
            let op = operad.operad();
            for g in gens.iter().flat_map(|x| x.basis_elements()) {
                if !op.family().admits(g) {
                    return Err(Error::NotInFamily { element: g.to_string(), operad: op.name() });
                }
            }
            close(&op, &gens, order, edge_bound)?.hilbert_dims()?
        }
    };
    let mut doc = ResultDocument::new(command);
    doc.dimensions = dimensions(dims);
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_simple_graphs() {
        let doc = cmd_compose(ComposeKind::G, &"vertices=a,*,b; edges=a-*,*-b".into(), "*", &"vertices=c,d; edges=c-d".into())
            .unwrap();
        assert_eq!(doc.terms.len(), 4);
        assert!(doc.terms.iter().all(|t| t.coefficient == "1"));
        for t in &doc.terms {
            let g: SimpleGraph = t.graph.parse().unwrap();
            assert_eq!(GraphText::of(&g), t.graph);
        }
    }

    #[test]
    fn compose_errors_name_the_precondition() {
        let err = cmd_compose(ComposeKind::Mg, &"vertices=a,b; edges=a-b".into(), "*", &"vertices=c; edges=".into())
            .unwrap_err();
        assert!(matches!(err, Error::MissingHole { .. }));
        let err = cmd_compose(ComposeKind::Mg, &"vertices=a,*; edges=a-*".into(), "*", &"vertices=a; edges=".into())
            .unwrap_err();
        assert!(matches!(err, Error::OverlappingVertices(_)));
        assert!("xyz".parse::<ComposeKind>().is_err());
    }

    #[test]
    fn generator_arity_limits() {
        assert!(cmd_generators(GraphOperadName::G, 5, false, None).is_err());
        assert!(cmd_generators(GraphOperadName::T, 7, false, None).is_err());
        assert!(cmd_generators(GraphOperadName::MGc, 2, false, None).is_err());
        let doc = cmd_generators(GraphOperadName::T, 2, false, None).unwrap();
        let shapes: Vec<usize> = doc.generators.iter().map(|a| a.generators.len()).collect();
        assert_eq!(shapes, vec![1]);
    }

    #[test]
    fn hilbert_targets() {
        let t: HilbertTarget = "G:vertices=a,b; edges=a-b".parse().unwrap();
        assert_eq!(t.to_string().parse::<HilbertTarget>().unwrap(), t);
        assert_eq!(cmd_hilbert(&t, 4, None).unwrap().dims(), vec![1, 1, 3, 15]);
        assert_eq!(cmd_hilbert(&HilbertTarget::SpDual, 4, None).unwrap().dims(), vec![1, 2, 5, 17]);
        assert!(cmd_hilbert(&HilbertTarget::SpDual, 10, None).is_err());
        assert!(cmd_hilbert(&t, 7, None).is_err());
        let bad: HilbertTarget = "T:vertices=a,b,c; edges=a-b,b-c,a-c".parse().unwrap();
        assert!(matches!(cmd_hilbert(&bad, 3, None), Err(Error::NotInFamily { .. })));
        assert!("nonsense".parse::<HilbertTarget>().is_err());
    }

    #[test]
    fn documents_render() {
        let mut doc = ResultDocument::new("test");
        doc.push_check(Check::new("ok", true, ""));
        doc.push_check(Check::new("bad", false, "why"));
        assert_eq!(doc.exit_code(), 1);
        let text = doc.render(Format::Text);
        assert!(text.contains("PASS ok") && text.contains("FAIL bad: why"));
        let json: serde_json::Value = serde_json::from_str(&doc.render(Format::Structured)).unwrap();
        assert_eq!(json["passed"], false);
    }
}
