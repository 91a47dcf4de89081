//! WebAssembly bindings for the demo page in `www/`.
//!
//! Each export returns a JSON string. The `*_json` functions without the
//! `wasm_` prefix carry the logic and are what the native tests call.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sofic_core::instance::{parse_instance, InstanceError};
use sofic_core::sofic::torus_coords;
use sofic_core::transfer::{ApproxSpec, Limits, Mode};
use sofic_core::{run_experiment, weiss_select, GroupElement, GroupModel, VertexSet};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; the CLI has no such cap.
const MAX_DEMO_VERTICES: usize = 2500;

#[derive(Serialize)]
struct BallView {
    group: String,
    radius: usize,
    size: usize,
    points: Vec<Vec<i64>>,
    /// Word length of each point.
    layer: Vec<usize>,
    /// `(from, to, label)` with self-loops dropped.
    edges: Vec<(usize, usize, String)>,
}

/// Elements and edges of `N_r(B)` in `Z^1` or `Z^2`, for drawing.
pub fn cayley_ball_json(k: usize, radius: usize) -> Result<String, String> {
    if !(1..=2).contains(&k) || radius > 30 {
        return Err("the demo draws Z^1 and Z^2 balls up to radius 30".into());
    }
    let group = GroupModel::free_abelian(k);
    let ball = group.cayley_ball(radius).map_err(|e| e.to_string())?;
    let points = ball
        .elements()
        .iter()
        .map(|g| match g {
            GroupElement::Vector(v) => v.clone(),
            GroupElement::Index(_) => unreachable!("free abelian"),
        })
        .collect();
    let labels = group.labels();
    let edges = ball
        .graph()
        .edges()
        .filter(|(s, t, _)| s != t)
        .map(|(s, t, l)| (s, t, labels[l].clone()))
        .collect();
    let view = BallView {
        group: group.description().to_string(),
        radius,
        size: ball.len(),
        points,
        layer: ball.distances().to_vec(),
        edges,
    };
    Ok(serde_json::to_string(&view).expect("serializable"))
}

#[derive(Serialize)]
struct WeissView {
    n: usize,
    r0: usize,
    coords: Vec<Vec<i64>>,
    good: VertexSet,
    selected: VertexSet,
    ball_size: usize,
    density_bound: String,
    achieved_density: String,
    min_pairwise_distance: Option<usize>,
}

/// Weiss selection on the `n × n` torus with a seeded random good set of
/// `good_percent` percent (at least half) of the vertices.
pub fn torus_weiss_json(n: usize, r0: usize, good_percent: u32, seed: u64) -> Result<String, String> {
    if n * n > MAX_DEMO_VERTICES {
        return Err(format!("n = {n} is too large for the demo"));
    }
    let radius = 2 * r0 + 1;
    let approx = sofic_core::sofic::torus_approximation(2, n, radius).map_err(|e| e.to_string())?;
    let total = n * n;
    let mut order: Vec<usize> = (0..total).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let take = (total * good_percent.clamp(50, 100) as usize).div_ceil(100);
    let good = VertexSet::new(order[..take].to_vec());
    let sel = weiss_select(approx.graph(), &good, r0, approx.ball()).map_err(|e| e.to_string())?;
    let view = WeissView {
        n,
        r0,
        coords: (0..total).map(|v| torus_coords(v, 2, n)).collect(),
        good,
        ball_size: approx.ball().len(),
        density_bound: sel.density_bound.to_string(),
        achieved_density: sel.achieved_density.to_string(),
        min_pairwise_distance: sel.min_pairwise_distance,
        selected: sel.selected,
    };
    Ok(serde_json::to_string(&view).expect("serializable"))
}

/// Runs the transfer on the first `transfer` directive of an instance text.
/// Only `Z^k` groups are available in the browser.
pub fn transfer_json(instance: &str, mode: &str) -> Result<String, String> {
    let mode: Mode = mode.parse()?;
    let inst = parse_instance(instance, |path| {
        Err(InstanceError::Table {
            path: path.into(),
            message: "table files are not available in the browser".into(),
        })
    })
    .map_err(|e| e.to_string())?;
    let (phi, psi) = inst
        .directives
        .iter()
        .find_map(|d| match d {
            sofic_core::Directive::Transfer { phi, psi } => Some((phi, psi.as_ref())),
            _ => None,
        })
        .ok_or("the instance has no `transfer` directive")?;
    let phi = inst.element(phi).ok_or("unknown phi")?;
    let psi = psi.map(|n| inst.element(n).ok_or("unknown psi")).transpose()?;
    let limits = Limits {
        max_vertices: MAX_DEMO_VERTICES,
        ..Limits::default()
    };
    let report = run_experiment(phi, psi, ApproxSpec::Torus { n: None }, mode, limits).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&report).expect("serializable"))
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn wasm_cayley_ball(k: usize, radius: usize) -> Result<String, JsValue> {
    js(cayley_ball_json(k, radius))
}

#[wasm_bindgen]
pub fn wasm_torus_weiss(n: usize, r0: usize, good_percent: u32, seed: u64) -> Result<String, JsValue> {
    js(torus_weiss_json(n, r0, good_percent, seed))
}

#[wasm_bindgen]
pub fn wasm_transfer(instance: &str, mode: &str) -> Result<String, JsValue> {
    js(transfer_json(instance, mode))
}
