//! CSV and JSON renderings of density grids and kernel values.
//!
//! Floats are written in the shortest form that parses back to the same
//! `f64`, so an emitted file reproduces the in-memory values exactly.

use std::fmt::Write;

use clap::ValueEnum;
use ellipse_gas::{Complex64, DensityGrid};
use serde_json::{json, Value};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `x,y,rho` rows at the cell centres, row by row in `y`.
pub fn grid_csv(d: &DensityGrid) -> String {
    let spec = d.spec();
    let mut out = String::with_capacity(48 * d.values.len() + 8);
    out.push_str("x,y,rho\n");
    for j in 0..d.ny {
        let y = spec.y(j);
        for i in 0..d.nx {
            writeln!(out, "{:?},{:?},{:?}", spec.x(i), y, d.value(i, j)).expect("writing to a String");
        }
    }
    out
}

/// One object: `meta` plus the grid shape and its row-major values.
pub fn grid_json(d: &DensityGrid, mut meta: Value) -> String {
    meta["x_range"] = json!([d.x_range.0, d.x_range.1]);
    meta["y_range"] = json!([d.y_range.0, d.y_range.1]);
    meta["nx"] = json!(d.nx);
    meta["ny"] = json!(d.ny);
    meta["values"] = json!(d.values);
    meta.to_string() + "\n"
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}
