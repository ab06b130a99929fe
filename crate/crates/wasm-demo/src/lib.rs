//! Browser bindings: density heat maps and kernel values.

// the bindings take flat scalars so that plain JS can call them
#![allow(clippy::too_many_arguments)]

use ellipse_gas::correlations::density_grid;
use ellipse_gas::{Complex64, EllipseGeometry, FiniteKernel, GasFamily, GridSpec, LimitKernelSpec, Rescale};
use wasm_bindgen::prelude::*;

fn js_err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn gas(family: &str, a: f64) -> Result<GasFamily, JsValue> {
    let g = match family {
        "gegenbauer" => GasFamily::Gegenbauer { a },
        "jacobi-plus" => GasFamily::JacobiPlus { a },
        "jacobi-minus" => GasFamily::JacobiMinus { a },
        "chebyshev-t" => GasFamily::ChebyshevT,
        "chebyshev-v" => GasFamily::ChebyshevV,
        _ => return Err(js_err(format!("unknown family {family:?}"))),
    };
    g.validate().map_err(js_err)?;
    Ok(g)
}

/// Density on an `nx x ny` grid over the rescaled image of the ellipse.
/// Returns `[xmin, xmax, ymin, ymax, values...]`, values row-major in `y`.
#[wasm_bindgen]
pub fn density(family: &str, a: f64, tau: f64, n: usize, nx: usize, ny: usize, rescale: &str) -> Result<Vec<f64>, JsValue> {
    let gas = gas(family, a)?;
    let g = EllipseGeometry::new(tau).map_err(js_err)?;
    let r = Rescale::parse(rescale).ok_or_else(|| js_err(format!("unknown rescaling {rescale:?}")))?;
    let (xr, yr) = r.window(&g, n, gas.a()).map_err(js_err)?;
    let grid = GridSpec::new(xr, yr, nx, ny).map_err(js_err)?;
    let k = FiniteKernel::new(gas, g, n).map_err(js_err)?;
    let d = density_grid(&k, &grid, r).map_err(js_err)?;
    let mut out = vec![xr.0, xr.1, yr.0, yr.1];
    out.extend(d.values);
    Ok(out)
}

/// `[re, im]` of the finite-`N` kernel.
#[wasm_bindgen]
pub fn finite_kernel(family: &str, a: f64, tau: f64, n: usize, x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Vec<f64>, JsValue> {
    let k = FiniteKernel::new(gas(family, a)?, EllipseGeometry::new(tau).map_err(js_err)?, n).map_err(js_err)?;
    let v = k.eval(Complex64::new(x1, y1), Complex64::new(x2, y2)).map_err(js_err)?;
    Ok(vec![v.re, v.im])
}

/// `[re, im]` of a limiting kernel; `a`, `s` and `tau` are read as needed.
#[wasm_bindgen]
pub fn limit_kernel(name: &str, a: f64, s: f64, tau: f64, x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Vec<f64>, JsValue> {
    use LimitKernelSpec::*;
    let spec = match name {
        "bulk-weak" => BulkWeak { a, s },
        "edge-weak" => EdgeWeak { a, s },
        "edge-weak-minus-sine" => EdgeWeakMinusSine { a, s },
        "edge-weak-minus-cosine" => EdgeWeakMinusCosine { a, s },
        "bulk-strong" => BulkStrong { a },
        "edge-strong" => EdgeStrong { a },
        "sine" => Sine,
        "bessel" => Bessel { a },
        "ginibre" => Ginibre,
        "global-u" => GlobalU { tau },
        "global-t" => GlobalT { tau },
        "global-v" => GlobalV { tau },
        _ => return Err(js_err(format!("unknown kernel {name:?}"))),
    };
    let v = spec.eval(Complex64::new(x1, y1), Complex64::new(x2, y2)).map_err(js_err)?;
    Ok(vec![v.re, v.im])
}
