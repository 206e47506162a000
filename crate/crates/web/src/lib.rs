//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The exported functions return flat `Float64Array`s; the plotting lives in
//! `www/main.js`. Each one wraps a plain Rust function from [`demo`] so the
//! logic can be tested natively.

use wasm_bindgen::prelude::*;

pub mod demo {
    use sudler::analysis::{subsequence_limits, SubseqOptions};
    use sudler::precision::{RealSpec, DEFAULT_PRECISION_BITS};
    use sudler::sudler::{log_sudler_f64, sudler_series, sup_norm, SUP_NORM_GRID_PER_FACTOR, SUP_NORM_REFINE_ITERS};

    /// Caps that keep a single call within a fraction of a second.
    pub const MAX_SERIES: u64 = 200_000;
    pub const SUBSEQ_BUDGET: u64 = 2_000_000;
    pub const MAX_SUP_N: u64 = 2_000;
    pub const MAX_PROFILE_SAMPLES: usize = 20_000;

    fn spec(alpha: &str) -> Result<RealSpec, String> {
        alpha.parse().map_err(|e: sudler::Error| e.to_string())
    }

    fn at_most(name: &str, value: u64, max: u64) -> Result<(), String> {
        if value == 0 || value > max {
            return Err(format!("{name} must be between 1 and {max}"));
        }
        Ok(())
    }

    /// `log P_n(alpha)` for `n = 1..=n_max`.
    pub fn series(alpha: &str, n_max: u64) -> Result<Vec<f64>, String> {
        at_most("n_max", n_max, MAX_SERIES)?;
        let s = sudler_series(&spec(alpha)?, n_max, DEFAULT_PRECISION_BITS).map_err(|e| e.to_string())?;
        s.map(|p| p.map(|p| p.log_p).map_err(|e| e.to_string())).collect()
    }

    /// Rows `(residue, index, q, P_q)` flattened, in stream order.
    pub fn subsequence(alpha: &str, m_max: u64) -> Result<Vec<f64>, String> {
        at_most("m_max", m_max, 60)?;
        let spec = spec(alpha)?;
        let cf = spec
            .continued_fraction()
            .filter(|c| c.is_periodic())
            .ok_or_else(|| format!("{spec} has no known periodic continued fraction"))?;
        let options = SubseqOptions {
            n_budget: SUBSEQ_BUDGET,
            ..SubseqOptions::new(m_max as usize)
        };
        let reports = subsequence_limits(&cf, options).map_err(|e| e.to_string())?;
        let mut rows: Vec<[f64; 4]> = reports
            .iter()
            .flat_map(|r| {
                r.samples
                    .iter()
                    .map(move |s| [r.residue as f64, s.index as f64, s.q as f64, s.point.p])
            })
            .collect();
        rows.sort_by(|a, b| a[1].total_cmp(&b[1]));
        Ok(rows.concat())
    }

    /// `log P_n(alpha)` at `samples` evenly spaced interior points of `(0, 1)`.
    pub fn profile(n: u64, samples: usize) -> Result<Vec<f64>, String> {
        at_most("n", n, MAX_SUP_N)?;
        at_most("samples", samples as u64, MAX_PROFILE_SAMPLES as u64)?;
        Ok((1..=samples)
            .map(|i| log_sudler_f64(n, i as f64 / (samples + 1) as f64))
            .collect())
    }

    /// `[alpha*, log ||P_n||, ||P_n||^(1/n)]`.
    pub fn maximum(n: u64) -> Result<Vec<f64>, String> {
        at_most("n", n, MAX_SUP_N)?;
        let s = sup_norm(n, SUP_NORM_GRID_PER_FACTOR * n as usize, SUP_NORM_REFINE_ITERS)
            .map_err(|e| e.to_string())?;
        Ok(vec![s.alpha_star, s.log_norm, s.root])
    }
}

fn js(r: Result<Vec<f64>, String>) -> Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn series(alpha: &str, n_max: u32) -> Result<Vec<f64>, JsError> {
    js(demo::series(alpha, n_max.into()))
}

#[wasm_bindgen]
pub fn subsequence(alpha: &str, m_max: u32) -> Result<Vec<f64>, JsError> {
    js(demo::subsequence(alpha, m_max.into()))
}

#[wasm_bindgen]
pub fn profile(n: u32, samples: u32) -> Result<Vec<f64>, JsError> {
    js(demo::profile(n.into(), samples as usize))
}

#[wasm_bindgen]
pub fn maximum(n: u32) -> Result<Vec<f64>, JsError> {
    js(demo::maximum(n.into()))
}
