//! Browser bindings: composition with SVG drawings, generator search and
//! Hilbert series, each returning the structured result document as JSON.

mod svg;

use graphop::cli::{cmd_compose, cmd_generators, cmd_hilbert, Format, GraphText, HilbertTarget, ResultDocument};
use wasm_bindgen::prelude::*;

pub use svg::render;

/// Arities above this are refused in the browser, whatever the engine allows.
const BROWSER_MAX_ARITY: usize = 5;

fn json(doc: graphop::Result<ResultDocument>) -> Result<String, String> {
    doc.map(|d| d.render(Format::Structured)).map_err(|e| e.to_string())
}

pub fn compose_json(kind: &str, g1: &str, hole: &str, g2: &str) -> Result<String, String> {
    let kind = kind.parse().map_err(|e: graphop::Error| e.to_string())?;
    json(cmd_compose(kind, &GraphText::from(g1), hole, &GraphText::from(g2)))
}

pub fn generators_json(operad: &str, max_arity: usize, edge_bound: Option<usize>) -> Result<String, String> {
    if max_arity > BROWSER_MAX_ARITY {
        return Err(format!("the demo stops at arity {BROWSER_MAX_ARITY}"));
    }
    let operad = operad.parse().map_err(|e: graphop::Error| e.to_string())?;
    json(cmd_generators(operad, max_arity, true, edge_bound))
}

pub fn hilbert_json(target: &str, order: usize, edge_bound: Option<usize>) -> Result<String, String> {
    let target: HilbertTarget = target.parse().map_err(|e: graphop::Error| e.to_string())?;
    if matches!(target, HilbertTarget::Closure { .. }) && order > BROWSER_MAX_ARITY {
        return Err(format!("the demo computes closures up to arity {BROWSER_MAX_ARITY}"));
    }
    json(cmd_hilbert(&target, order, edge_bound))
}

#[wasm_bindgen]
pub fn compose(kind: &str, g1: &str, hole: &str, g2: &str) -> Result<String, JsValue> {
    compose_json(kind, g1, hole, g2).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generators(operad: &str, max_arity: u32, edge_bound: Option<u32>) -> Result<String, JsValue> {
    generators_json(operad, max_arity as usize, edge_bound.map(|b| b as usize)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn hilbert(target: &str, order: u32, edge_bound: Option<u32>) -> Result<String, JsValue> {
    hilbert_json(target, order as usize, edge_bound.map(|b| b as usize)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn render_svg(graph: &str, size: u32) -> Result<String, JsValue> {
    render(graph, size).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_return_documents() {
        let doc: serde_json::Value =
            serde_json::from_str(&compose_json("g", "vertices=a,*,b; edges=a-*,*-b", "*", "vertices=c,d; edges=c-d").unwrap())
                .unwrap();
        assert_eq!(doc["terms"].as_array().unwrap().len(), 4);
        let doc: serde_json::Value = serde_json::from_str(&hilbert_json("sp-dual", 5, None).unwrap()).unwrap();
        assert_eq!(doc["dimensions"][4]["dimension"], 74);
        assert!(generators_json("T", 4, None).is_ok());
        assert!(generators_json("G", 6, None).is_err());
        assert!(hilbert_json("G:vertices=a,b; edges=a-b", 6, None).is_err());
        assert!(compose_json("nope", "", "*", "").is_err());
    }
}
