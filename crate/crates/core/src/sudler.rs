//! Sudler products `P_n(alpha) = prod_{r=1}^n |2 sin(pi r alpha)|`.
//!
//! Everything is accumulated in the log domain: `log_p` is authoritative and
//! `p = exp(log_p)` is a convenience that may overflow.

use num_bigint::BigUint;

use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::ostrowski::OstrowskiBase;
use crate::precision::{
    BigReal, FracKernel, NamedConstant, NeumaierSum, RealSpec, DEFAULT_PRECISION_BITS,
};

/// `(n, log P_n, P_n)` with a bound on the accumulated error of `log_p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductPoint {
    pub n: u64,
    pub log_p: f64,
    pub p: f64,
    pub err: f64,
}

/// Streaming evaluation of `P_1, P_2, ..., P_{n_max}`.
///
/// Each factor's argument `{r alpha}` comes from a fresh exact multiply,
/// and the logs are added with compensated summation. The `err` field is
/// the sum of the per-factor bounds plus the summation bound.
#[derive(Clone, Debug)]
pub struct SudlerSeries {
    kernel: FracKernel,
    sum: NeumaierSum,
    factor_err: f64,
    next: u64,
    n_max: u64,
    failed: bool,
}

impl SudlerSeries {
    pub fn new(alpha: &BigReal, n_max: u64) -> Self {
        SudlerSeries {
            kernel: FracKernel::new(alpha),
            sum: NeumaierSum::new(),
            factor_err: 0.0,
            next: 1,
            n_max,
            failed: false,
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.kernel.precision_bits()
    }

    /// Index of the next point to be produced.
    pub fn next_n(&self) -> u64 {
        self.next
    }

    fn step(&mut self) -> Result<ProductPoint> {
        let r = self.next;
        let (value, bound) = self.kernel.log_two_sin(r)?;
        self.sum.add(value);
        self.factor_err += bound;
        self.next += 1;
        let log_p = self.sum.value();
        Ok(ProductPoint {
            n: r,
            log_p,
            p: log_p.exp(),
            err: self.factor_err + self.sum.error_bound(),
        })
    }

    /// Advances to `n` (which must not be behind the stream) and returns `P_n`.
    pub fn advance_to(&mut self, n: u64) -> Result<ProductPoint> {
        if n < self.next || n == 0 {
            return Err(Error::InvalidArgument(format!(
                "cannot rewind the series to n = {n} (next is {})",
                self.next
            )));
        }
        while self.next < n {
            self.step()?;
        }
        self.step()
    }
}

impl Iterator for SudlerSeries {
    type Item = Result<ProductPoint>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.next > self.n_max {
            return None;
        }
        let point = self.step();
        self.failed = point.is_err();
        Some(point)
    }
}

/// Series for `alpha` at the given precision. Rational `alpha` is rejected:
/// its product vanishes identically from `n = q` on.
pub fn sudler_series(alpha: &RealSpec, n_max: u64, precision_bits: u32) -> Result<SudlerSeries> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let x = alpha.to_irrational(precision_bits)?;
    Ok(SudlerSeries::new(&x, n_max))
}

/// `P_n(alpha)` as a single point.
pub fn sudler_point(alpha: &BigReal, n: u64) -> Result<ProductPoint> {
    SudlerSeries::new(alpha, n).advance_to(n)
}

/// `sum_{r=1}^{count} log|2 sin(pi (r + shift) alpha)|` and its error bound.
pub fn shifted_log_product(alpha: &BigReal, count: u64, shift: u64) -> Result<(f64, f64)> {
    let mut kernel = FracKernel::new(alpha);
    let mut sum = NeumaierSum::new();
    let mut err = 0.0;
    for r in 1..=count {
        let (v, e) = kernel.log_two_sin(r + shift)?;
        sum.add(v);
        err += e;
    }
    Ok((sum.value(), err + sum.error_bound()))
}

/// Golden mean at the default precision.
pub fn golden_mean() -> BigReal {
    RealSpec::Named(NamedConstant::Phi)
        .to_bigreal(DEFAULT_PRECISION_BITS)
        .expect("default precision is valid")
}

/// Fibonacci number `F_n` (`F_0 = 0`, `F_1 = 1`), `None` past `u64`.
pub fn fibonacci(n: u32) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 1..n {
        (a, b) = (b, a.checked_add(b)?);
    }
    Some(b)
}

/// Inner factor `prod_{r=1}^{F_{n_j}} |2 sin(pi (r + k) phi)|` of the
/// Zeckendorf double-product decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbedProduct {
    /// 1-based position in a decomposition (1 for a standalone product).
    pub position: usize,
    pub fib_index: u32,
    /// `F_{fib_index}`, the number of factors.
    pub modulus: u64,
    pub shift: u64,
    pub log_value: f64,
    pub value: f64,
    pub err: f64,
}

/// Perturbed golden product with `F_{fib_index}` factors and shift `k`.
pub fn perturbed_product(fib_index: u32, shift: u64) -> Result<PerturbedProduct> {
    perturbed_product_with(&golden_mean(), fib_index, shift, 1)
}

fn perturbed_product_with(
    phi: &BigReal,
    fib_index: u32,
    shift: u64,
    position: usize,
) -> Result<PerturbedProduct> {
    if fib_index < 2 {
        return Err(Error::InvalidArgument(format!(
            "Fibonacci index must be at least 2, got {fib_index}"
        )));
    }
    let modulus = fibonacci(fib_index)
        .ok_or_else(|| Error::InvalidArgument(format!("F_{fib_index} exceeds u64")))?;
    let (log_value, err) = shifted_log_product(phi, modulus, shift)?;
    Ok(PerturbedProduct {
        position,
        fib_index,
        modulus,
        shift,
        log_value,
        value: log_value.exp(),
        err,
    })
}

/// Splits `P_N(phi)` into perturbed products along the Zeckendorf digits of
/// `N`, leading (largest) index first. Factor `j` has shift
/// `k_j = F_{n_{j+1}} + ... + F_{n_m}`, so the blocks of `r` tile `1..=N`.
pub fn double_product(n: u64) -> Result<Vec<PerturbedProduct>> {
    let phi = golden_mean();
    let base = OstrowskiBase::new(ContinuedFraction::periodic(vec![1]), &BigUint::from(n))?;
    let digits = base.encode_u64(n)?;
    let indices: Vec<u32> = digits.nonzero().iter().rev().map(|&(j, _)| j as u32).collect();
    let mut tail: u64 = indices.iter().map(|&j| fibonacci(j).unwrap_or(0)).sum();
    indices
        .iter()
        .enumerate()
        .map(|(pos, &j)| {
            tail -= fibonacci(j).unwrap_or(0);
            perturbed_product_with(&phi, j, tail, pos + 1)
        })
        .collect()
}

/// Empirical range of the perturbed factors over a set of decompositions.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbedBracket {
    /// Smallest factor seen (an empirical stand-in for `K_1`).
    pub k1: f64,
    /// Largest factor seen (an empirical stand-in for `K_2`).
    pub k2: f64,
    /// Largest Fibonacci index whose factor fell below 1; every factor with
    /// a larger index was at least 1. `None` if no factor was below 1.
    pub observed_threshold: Option<u32>,
    pub factors: usize,
}

/// Decomposes every `N` in `ns` and records the range of the factors.
pub fn perturbed_bracket(ns: impl IntoIterator<Item = u64>) -> Result<PerturbedBracket> {
    let mut bracket = PerturbedBracket {
        k1: f64::INFINITY,
        k2: f64::NEG_INFINITY,
        observed_threshold: None,
        factors: 0,
    };
    for n in ns {
        for f in double_product(n)? {
            bracket.k1 = bracket.k1.min(f.value);
            bracket.k2 = bracket.k2.max(f.value);
            bracket.factors += 1;
            if f.value < 1.0 {
                bracket.observed_threshold = bracket.observed_threshold.max(Some(f.fib_index));
            }
        }
    }
    Ok(bracket)
}

/// Result of the sup-norm search.
#[derive(Clone, Debug, PartialEq)]
pub struct SupNorm {
    pub n: u64,
    pub alpha_star: f64,
    pub log_norm: f64,
    /// `max P_n(alpha)`; may overflow for large `n`, `log_norm` is exact.
    pub norm: f64,
    /// `norm^(1/n)`.
    pub root: f64,
    /// Every `(alpha, log P_n(alpha))` evaluated: grid points then
    /// refinement probes.
    pub probes: Vec<(f64, f64)>,
}

/// Default grid density per factor of the product.
pub const SUP_NORM_GRID_PER_FACTOR: usize = 8;
pub const SUP_NORM_REFINE_ITERS: usize = 40;
/// Number of best grid cells refined by golden-section search.
pub const SUP_NORM_CELLS: usize = 16;

/// `log P_n(alpha)` in plain `f64`, for the sup-norm search where `alpha`
/// is a free variable. Returns `-inf` at zeros of the product.
pub fn log_sudler_f64(n: u64, alpha: f64) -> f64 {
    let mut sum = NeumaierSum::new();
    for r in 1..=n {
        let t = r as f64 * alpha;
        let f = t - t.floor();
        let y = f.min(1.0 - f);
        if y <= 0.0 {
            return f64::NEG_INFINITY;
        }
        sum.add((2.0 * (std::f64::consts::PI * y).sin()).ln());
    }
    sum.value()
}

/// Heuristic maximizer of `P_n` over `(0, 1)`: a uniform grid of
/// `grid_size` cells, then golden-section refinement of the best
/// [`SUP_NORM_CELLS`] cells. Ties go to the smallest `alpha`.
pub fn sup_norm(n: u64, grid_size: usize, refine_iters: usize) -> Result<SupNorm> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if (grid_size as u64) < 4 * n {
        return Err(Error::InvalidArgument(format!(
            "grid of {grid_size} cells cannot resolve P_{n}; need at least {}",
            4 * n
        )));
    }
    let h = 1.0 / grid_size as f64;
    let grid = grid_values(n, grid_size);

    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[b].1.total_cmp(&grid[a].1).then(a.cmp(&b)));
    order.truncate(SUP_NORM_CELLS);

    let refined: Vec<Vec<(f64, f64)>> = order
        .iter()
        .map(|&i| {
            let centre = grid[i].0;
            let lo = (centre - h).max(0.0);
            let hi = (centre + h).min(1.0);
            golden_section_max(|a| log_sudler_f64(n, a), lo, hi, refine_iters)
        })
        .collect();

    let mut probes = grid;
    probes.extend(refined.into_iter().flatten());

    let (alpha_star, log_norm) = probes
        .iter()
        .copied()
        .filter(|&(a, _)| a > 0.0 && a < 1.0)
        .fold((f64::NAN, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 || (cand.1 == best.1 && cand.0 < best.0) {
                cand
            } else {
                best
            }
        });
    Ok(SupNorm {
        n,
        alpha_star,
        log_norm,
        norm: log_norm.exp(),
        root: (log_norm / n as f64).exp(),
        probes,
    })
}

fn grid_values(n: u64, grid_size: usize) -> Vec<(f64, f64)> {
    let eval = |i: usize| {
        let a = i as f64 / grid_size as f64;
        (a, log_sudler_f64(n, a))
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (1..grid_size).into_par_iter().map(eval).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (1..grid_size).map(eval).collect()
    }
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`; returns every
/// probe `(x, f(x))` in evaluation order.
fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> Vec<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut probes = Vec::with_capacity(iters + 2);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    probes.push((x1, f1));
    probes.push((x2, f2));
    for _ in 0..iters {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
            probes.push((x1, f1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
            probes.push((x2, f2));
        }
    }
    probes
}
