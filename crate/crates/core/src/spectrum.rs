//! Spectrum of the walk operator from its Fourier symbol.
//!
//! In momentum space the walk is multiplication by the 2x2 unitary
//! `U(k) = e^{ik} [top row of C] + e^{-ik} [bottom row of C]`; the spectrum is
//! the closure of the eigenvalue curves of `U(k)` over `k`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use serde::Serialize;

use crate::coin::CoinMatrix;
use crate::error::{Error, Result};
use crate::linalg::{cis, Mat2, C64};
use crate::sweep::Execution;

pub const MIN_GRID: usize = 16;
/// Gaps up to this many grid steps are closed when merging arcs.
pub const MERGE_STEPS: f64 = 3.0;

pub fn fourier_symbol(coin: &CoinMatrix, k: f64) -> Mat2 {
    let [[c11, c12], [c21, c22]] = coin.matrix().m;
    let (e, ec) = (cis(k), cis(-k));
    Mat2::new(e * c11, e * c12, ec * c21, ec * c22)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolEigenvalues {
    pub k: f64,
    pub lambda1: C64,
    pub lambda2: C64,
}

/// `(+-sqrt(1 + cos^2 k) + i sin k) / sqrt 2`.
pub fn hadamard_symbol_eigenvalues(k: f64) -> SymbolEigenvalues {
    let (s, c) = k.sin_cos();
    let r = (1.0 + c * c).sqrt();
    SymbolEigenvalues {
        k,
        lambda1: C64::new(r, s) * FRAC_1_SQRT_2,
        lambda2: C64::new(-r, s) * FRAC_1_SQRT_2,
    }
}

/// Closed form for the Hadamard coin, the quadratic formula otherwise.
pub fn symbol_eigenvalues(coin: &CoinMatrix, k: f64) -> SymbolEigenvalues {
    if coin.is_hadamard(1e-15) {
        return hadamard_symbol_eigenvalues(k);
    }
    let (lambda1, lambda2) = fourier_symbol(coin, k).eigenvalues();
    SymbolEigenvalues { k, lambda1, lambda2 }
}

/// Closed interval of arguments `[lo, hi]` inside `[0, 2 pi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Arc {
    pub lo: f64,
    pub hi: f64,
}

impl Arc {
    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < MIN_GRID {
        return Err(Error::InvalidGrid { grid, min: MIN_GRID });
    }
    Ok(())
}

/// Eigenvalues at `k_j = -pi + 2 pi j / grid`, `j = 0..grid`.
pub fn dispersion(coin: &CoinMatrix, grid: usize, exec: Execution) -> Result<Vec<SymbolEigenvalues>> {
    check_grid(grid)?;
    Ok(exec.map_range(grid, |j| symbol_eigenvalues(coin, -PI + TAU * j as f64 / grid as f64)))
}

pub fn spectrum_arcs(coin: &CoinMatrix, grid: usize) -> Result<Vec<Arc>> {
    spectrum_arcs_with(coin, grid, Execution::default())
}

pub fn spectrum_arcs_with(coin: &CoinMatrix, grid: usize, exec: Execution) -> Result<Vec<Arc>> {
    let table = dispersion(coin, grid, exec)?;
    let mut angles: Vec<f64> = table
        .iter()
        .flat_map(|e| [e.lambda1, e.lambda2])
        .map(|l| l.arg().rem_euclid(TAU))
        .collect();
    angles.sort_by(f64::total_cmp);
    Ok(merge_angles(&angles, MERGE_STEPS * TAU / grid as f64))
}

/// Merge sorted angles in `[0, 2 pi)` into maximal arcs whose internal gaps
/// are at most `threshold`. A small gap across zero stretches the first arc
/// down to `0` and the last up to `2 pi`.
pub fn merge_angles(sorted: &[f64], threshold: f64) -> Vec<Arc> {
    let Some((&first, rest)) = sorted.split_first() else {
        return Vec::new();
    };
    let mut arcs = vec![Arc { lo: first, hi: first }];
    for &a in rest {
        let last = arcs.last_mut().expect("nonempty");
        if a - last.hi <= threshold {
            last.hi = a;
        } else {
            arcs.push(Arc { lo: a, hi: a });
        }
    }
    let wrap_gap = first + TAU - arcs.last().expect("nonempty").hi;
    if wrap_gap <= threshold {
        arcs[0].lo = 0.0;
        arcs.last_mut().expect("nonempty").hi = TAU;
    }
    arcs
}
