//! The one-line graph text format:
//! `vertices=a,b,c; edges=a-b,b.>c[; root=a]`.

use crate::error::{Error, Result};
use crate::species::Label;

use super::oriented::{End, Mark};

pub(crate) enum EdgeToken {
    Plain(Label, Label),
    Oriented(End, End),
}

pub(crate) struct ParsedGraph {
    pub vertices: Vec<Label>,
    pub edges: Vec<EdgeToken>,
    pub root: Option<Label>,
}

impl ParsedGraph {
    pub fn unoriented_edges(&self) -> Result<Vec<(Label, Label)>> {
        self.edges
            .iter()
            .map(|e| match e {
                EdgeToken::Plain(u, v) => Ok((u.clone(), v.clone())),
                EdgeToken::Oriented(a, b) => Err(Error::Parse(format!(
                    "oriented edge {} in an unoriented graph",
                    render_oriented_edge(a, b)
                ))),
            })
            .collect()
    }

    pub fn oriented_edges(&self) -> Result<Vec<(End, End)>> {
        self.edges
            .iter()
            .map(|e| match e {
                EdgeToken::Oriented(a, b) => Ok((a.clone(), b.clone())),
                EdgeToken::Plain(u, v) => {
                    Err(Error::Parse(format!("edge {u}-{v} is missing its end marks")))
                }
            })
            .collect()
    }
}

fn mark_char(m: Mark) -> char {
    match m {
        Mark::Plain => '.',
        Mark::Arrow => '>',
    }
}

pub(crate) fn render_oriented_edge(a: &End, b: &End) -> String {
    format!("{}{}{}{}", a.vertex, mark_char(a.mark), mark_char(b.mark), b.vertex)
}

fn join_labels(vertices: &[Label]) -> String {
    vertices.iter().map(Label::as_str).collect::<Vec<_>>().join(",")
}

pub(crate) fn render_multigraph(vertices: &[Label], edges: &[(Label, Label)]) -> String {
    let es: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("vertices={}; edges={}", join_labels(vertices), es.join(","))
}

pub(crate) fn render_oriented(vertices: &[Label], edges: &[(End, End)]) -> String {
    let es: Vec<String> = edges.iter().map(|(a, b)| render_oriented_edge(a, b)).collect();
    format!("vertices={}; edges={}", join_labels(vertices), es.join(","))
}

fn parse_edge(token: &str) -> Result<EdgeToken> {
    let bad = || Error::Parse(format!("malformed edge token {token:?}"));
    let split = token.find(['-', '.', '>']).ok_or_else(bad)?;
    let u = Label::new(&token[..split]).map_err(|_| bad())?;
    let rest = &token[split..];
    if let Some(v) = rest.strip_prefix('-') {
        let v = Label::new(v).map_err(|_| bad())?;
        return Ok(EdgeToken::Plain(u, v));
    }
    let mut chars = rest.chars();
    let mark = |c: Option<char>| match c {
        Some('.') => Ok(Mark::Plain),
        Some('>') => Ok(Mark::Arrow),
        _ => Err(bad()),
    };
    let mu = mark(chars.next())?;
    let mv = mark(chars.next())?;
    let v = Label::new(chars.as_str()).map_err(|_| bad())?;
    Ok(EdgeToken::Oriented(End::new(u, mu), End::new(v, mv)))
}

pub(crate) fn parse(s: &str) -> Result<ParsedGraph> {
    let mut vertices = None;
    let mut edges = None;
    let mut root = None;
    for part in s.trim().split(';') {
        let part = part.trim();
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, found {part:?}")))?;
        let items: Vec<&str> = if value.trim().is_empty() {
            Vec::new()
        } else {
            value.split(',').map(str::trim).collect()
        };
        let slot_taken = || Error::Parse(format!("field {:?} given twice", key.trim()));
        match key.trim() {
            "vertices" => {
                if vertices.is_some() {
                    return Err(slot_taken());
                }
                let vs = items
                    .iter()
                    .map(|x| Label::new(x).map_err(|e| Error::Parse(e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                vertices = Some(vs);
            }
            "edges" => {
                if edges.is_some() {
                    return Err(slot_taken());
                }
                edges = Some(items.iter().map(|x| parse_edge(x)).collect::<Result<Vec<_>>>()?);
            }
            "root" => {
                if root.is_some() {
                    return Err(slot_taken());
                }
                let [r] = items.as_slice() else {
                    return Err(Error::Parse("root takes exactly one label".into()));
                };
                root = Some(Label::new(r).map_err(|e| Error::Parse(e.to_string()))?);
            }
            other => return Err(Error::Parse(format!("unknown field {other:?}"))),
        }
    }
    Ok(ParsedGraph {
        vertices: vertices.ok_or_else(|| Error::Parse("missing vertices=".into()))?,
        edges: edges.ok_or_else(|| Error::Parse("missing edges=".into()))?,
        root,
    })
}

#[cfg(test)]
mod tests {
    use crate::graphs::{MultiGraph, OrientedMultiGraph, RootedOrientedMultiGraph, RootedTree};
    use proptest::prelude::*;

    #[test]
    fn multigraph_round_trip() {
        let g: MultiGraph = "vertices=a,*; edges=a-*,*-a,*-*".parse().unwrap();
        assert_eq!(g.to_string(), "vertices=*,a; edges=*-*,*-a,*-a");
        assert_eq!(g.to_string().parse::<MultiGraph>().unwrap(), g);
        let empty: MultiGraph = "vertices=a,b; edges=".parse().unwrap();
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn oriented_round_trip() {
        let h: RootedOrientedMultiGraph =
            "vertices=a,b,*; edges=a.>*,*.>b; root=a".parse().unwrap();
        assert_eq!(h.to_string(), "vertices=*,a,b; edges=*.>b,*>.a; root=a");
        assert_eq!(h.to_string().parse::<RootedOrientedMultiGraph>().unwrap(), h);
        let g: OrientedMultiGraph = "vertices=a,b; edges=b>>a".parse().unwrap();
        assert_eq!(g.to_string(), "vertices=a,b; edges=a>>b");
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "vertices=a,b",
            "edges=a-b",
            "vertices=a,b; edges=a~b",
            "vertices=a,b; edges=a-c",
            "vertices=a,b; edges=a-b; colour=red",
            "vertices=a,a; edges=",
            "vertices=a,b; edges=a.b",
        ] {
            assert!(bad.parse::<MultiGraph>().is_err(), "{bad}");
        }
        assert!("vertices=a,b; edges=a-b".parse::<OrientedMultiGraph>().is_err());
        assert!("vertices=a,b; edges=a.>b; root=c".parse::<RootedOrientedMultiGraph>().is_err());
        assert!("vertices=a,b; edges=; root=a".parse::<RootedTree>().is_err());
    }

    proptest! {
        #[test]
        fn random_multigraphs_round_trip(
            n in 1usize..5,
            raw in prop::collection::vec((0usize..5, 0usize..5), 0..6),
        ) {
            let vs = crate::species::standard_labels(n);
            let es: Vec<_> = raw.iter().map(|&(u, v)| (vs[u % n].clone(), vs[v % n].clone())).collect();
            let g = MultiGraph::new(vs, es).unwrap();
            prop_assert_eq!(g.to_string().parse::<MultiGraph>().unwrap(), g);
        }
    }
}
