//! Browser bindings. Each export takes plain strings and returns a JSON
//! string, either the result or `{"error": …}`, so the same functions run
//! natively in tests.

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use tropical::arith::{format_rational, Rational};
use tropical::cycles::TropicalCycle;
use tropical::functions::{parse_polynomial_in, polynomial_divisor};
use tropical::intersection::stable_intersect;
use tropical::moduli::{curve_to_metric, pruefer_to_curve, PrueferSequence};
use tropical::polyhedra::Polyhedron;

fn float(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn point(p: &[Rational]) -> Value {
    json!({
        "exact": p.iter().map(format_rational).collect::<Vec<_>>(),
        "xy": p.iter().map(float).collect::<Vec<_>>(),
    })
}

/// A cell of a plane curve: a segment, a ray from a vertex, or a line.
fn cell(c: &Polyhedron, weight: i64) -> Value {
    let vertices = c.vertices();
    let dirs: Vec<Vec<f64>> = c
        .rays()
        .iter()
        .chain(c.lineality().iter())
        .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    json!({
        "weight": weight,
        "vertices": vertices.iter().map(|v| point(v)).collect::<Vec<_>>(),
        "rays": c.rays().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "lineality": !c.lineality().is_empty(),
        "directions": dirs,
    })
}

fn plane_curve_of(poly: &str) -> tropical::Result<TropicalCycle> {
    polynomial_divisor(&parse_polynomial_in(poly, 2)?, &TropicalCycle::whole_space(2))
}

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// The tropical curve of a polynomial in `x, y`, with its cells and weights.
#[wasm_bindgen]
pub fn plane_curve(poly: &str) -> String {
    respond((|| {
        let c = plane_curve_of(poly).map_err(|e| e.to_string())?;
        let cells: Vec<Value> = c.cells().iter().zip(c.weights()).map(|(s, &w)| cell(s, w)).collect();
        Ok(json!({ "balanced": c.is_balanced(), "cells": cells }))
    })())
}

/// Stable intersection of two plane curves: points with multiplicities.
#[wasm_bindgen]
pub fn intersect_curves(f: &str, g: &str) -> String {
    respond((|| {
        let a = plane_curve_of(f).map_err(|e| format!("first polynomial: {e}"))?;
        let b = plane_curve_of(g).map_err(|e| format!("second polynomial: {e}"))?;
        let x = stable_intersect(&a, &b).map_err(|e| e.to_string())?;
        let points: Vec<Value> = x
            .cells()
            .iter()
            .zip(x.weights())
            .map(|(c, &w)| json!({ "point": point(&c.vertices()[0]), "weight": w }))
            .collect();
        let total: i64 = x.weights().iter().sum();
        Ok(json!({ "points": points, "total": total }))
    })())
}

/// Decodes a Prüfer sequence such as `5,6,5,6` into a curve and its metric.
#[wasm_bindgen]
pub fn decode_pruefer(n: usize, sequence: &str) -> String {
    respond((|| {
        let entries = sequence
            .split(|c: char| c == ',' || c.is_whitespace() || c == '(' || c == ')')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| format!("bad entry {t:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        let p = PrueferSequence::new(n, entries).map_err(|e| e.to_string())?;
        let c = pruefer_to_curve(&p).map_err(|e| e.to_string())?;
        let edges: Vec<Value> = c
            .split_sets()
            .iter()
            .map(|s| {
                let rest: Vec<usize> = (1..=n).filter(|i| !s.contains(i)).collect();
                json!([s, rest])
            })
            .collect();
        Ok(json!({
            "curve": c.to_string(),
            "splits": edges,
            "metric": curve_to_metric(&c).iter().map(format_rational).collect::<Vec<_>>(),
        }))
    })())
}
