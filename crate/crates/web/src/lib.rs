//! WebAssembly entry points for the static page in `www/`. Each takes the
//! ideal in the file grammar (`vars ...; gens ...`) and a characteristic.

use wasm_bindgen::prelude::*;

use monres::classify::{classify as classify_ideal, Context};
use monres::io::parse_ideal_file;
use monres::resolution::{atomic_lattice_resolution, verify_with_lattice, BettiTable};
use monres::{FieldSpec, LcmLattice, MonomialIdeal};

fn load(text: &str, characteristic: u32) -> monres::Result<(MonomialIdeal, FieldSpec)> {
    let f = parse_ideal_file(text)?;
    let field = FieldSpec::new(characteristic)?;
    Ok((MonomialIdeal::minimized(f.vars, f.gens)?, field))
}

pub fn betti_text(text: &str, characteristic: u32) -> monres::Result<String> {
    let (ideal, field) = load(text, characteristic)?;
    let lat = LcmLattice::build(&ideal);
    let table = BettiTable::from_homology(&lat, &lat.betti_poset(field));
    Ok(table.render(&ideal))
}

pub fn resolve_text(text: &str, characteristic: u32) -> monres::Result<String> {
    let (ideal, field) = load(text, characteristic)?;
    let lat = LcmLattice::build(&ideal);
    let out = atomic_lattice_resolution(&lat, field)?;
    let report = verify_with_lattice(&out.resolution, &lat);
    let mut s = out.resolution.render();
    s.push_str(&match report.failure {
        None => format!("verified: yes, minimal: {}\n", if report.minimal { "yes" } else { "no" }),
        Some(f) => format!("verified: no ({f})\n"),
    });
    s.push_str("Taylor basis:\n");
    s.push_str(&out.basis.render());
    Ok(s)
}

pub fn classify_text(text: &str, characteristic: u32) -> monres::Result<String> {
    let (ideal, field) = load(text, characteristic)?;
    let lat = LcmLattice::build(&ideal);
    let ctx = Context::new(&lat, field)?;
    Ok(classify_ideal(&ctx)?.render())
}

fn js(r: monres::Result<String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn betti(text: &str, characteristic: u32) -> Result<String, JsValue> {
    js(betti_text(text, characteristic))
}

#[wasm_bindgen]
pub fn resolve(text: &str, characteristic: u32) -> Result<String, JsValue> {
    js(resolve_text(text, characteristic))
}

#[wasm_bindgen]
pub fn classify(text: &str, characteristic: u32) -> Result<String, JsValue> {
    js(classify_text(text, characteristic))
}
