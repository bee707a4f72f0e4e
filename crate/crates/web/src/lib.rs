//! Browser bindings: each export takes JSON text and returns JSON text, or
//! an error message.

use gperm::exact::{format_vec, rat, Rat};
use gperm::hypergraph::{Hypergraph, HypergraphJson};
use gperm::{GPerm, Polynomial, SetFn};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

fn gperm_of(setfn: &str) -> Result<GPerm, String> {
    GPerm::new(parse::<SetFn>(setfn)?).map_err(|e| e.to_string())
}

fn poly_json(p: &Polynomial) -> Value {
    json!({ "coefficients": p.to_strings(), "text": p.to_string() })
}

fn sign(n: usize) -> Rat {
    if n.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Vertices, faces and the number of faces per dimension.
pub fn faces_json(setfn: &str) -> Result<String, String> {
    let p = gperm_of(setfn)?;
    let faces = p.face_lattice().map_err(|e| e.to_string())?;
    let mut f_vector = vec![0u64; p.dim() + 1];
    for f in faces {
        f_vector[f.dim] += 1;
    }
    let vertices: Vec<Vec<String>> = p.vertices().iter().map(|v| format_vec(v)).collect();
    Ok(json!({
        "d": p.d(),
        "dim": p.dim(),
        "vertices": vertices,
        "faces": faces,
        "f_vector": f_vector,
    })
    .to_string())
}

/// `chi_{d,k}` with one table row per `m`: value, direct count, and both
/// sides of the reciprocity.
pub fn chi_json(setfn: &str, k: usize, m_max: i64) -> Result<String, String> {
    let p = gperm_of(setfn)?;
    let err = |e: gperm::Error| e.to_string();
    let chi = p.chi_dk_polynomial(k).map_err(err)?;
    let s = sign(p.d() - k);
    let rows = (1..=m_max)
        .map(|m| {
            let count = p.chi_dk(k, m)?;
            let rhs = p.reciprocity_rhs(k, m)?;
            let lhs = &s * chi.eval_int(-m);
            Ok(json!({
                "m": m,
                "p_m": chi.eval_int(m).to_string(),
                "count": count,
                "signed_p_neg_m": lhs.to_string(),
                "face_sum": rhs,
                "pass": lhs == rat(rhs as i64) && chi.eval_int(m) == rat(count as i64),
            }))
        })
        .collect::<gperm::Result<Vec<_>>>()
        .map_err(err)?;
    Ok(json!({ "d": p.d(), "k": k, "polynomial": poly_json(&chi), "rows": rows }).to_string())
}

/// Chromatic polynomial, acyclic headings and compatible-pair counts.
pub fn hypergraph_json(hg: &str, m_max: u32) -> Result<String, String> {
    let h = Hypergraph::try_from(parse::<HypergraphJson>(hg)?).map_err(|e| e.to_string())?;
    let err = |e: gperm::Error| e.to_string();
    let chi = h.chromatic_polynomial().map_err(err)?;
    let s = sign(h.d());
    let rows = (1..=m_max)
        .map(|m| {
            let colorings = h.chromatic_count(m)?;
            let pairs = h.compatible_pairs_count(m)?;
            let lhs = &s * chi.eval_int(-(m as i64));
            Ok(json!({
                "m": m,
                "colorings": colorings,
                "signed_chi_neg_m": lhs.to_string(),
                "compatible_pairs": pairs,
                "pass": lhs == rat(pairs as i64),
            }))
        })
        .collect::<gperm::Result<Vec<_>>>()
        .map_err(err)?;
    let acyclic = h.acyclic_headings().map_err(err)?.len();
    let vertices = h.vertices_via_headings().map_err(err)?;
    Ok(json!({
        "nodes": h.names(),
        "polynomial": poly_json(&chi),
        "acyclic_headings": acyclic,
        "vertices": vertices,
        "rows": rows,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn faces(setfn: &str) -> Result<String, String> {
    faces_json(setfn)
}

#[wasm_bindgen]
pub fn chi(setfn: &str, k: usize, m_max: i64) -> Result<String, String> {
    chi_json(setfn, k, m_max)
}

#[wasm_bindgen]
pub fn hypergraph(hg: &str, m_max: u32) -> Result<String, String> {
    hypergraph_json(hg, m_max)
}
