//! Spinors, spinor fields on finite lattice windows, and the measure map.
//!
//! A window is a closed integer interval `[xmin, xmax]` that always contains
//! the origin. Values are stored densely, `values[i]` belongs to site
//! `xmin + i`.

use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};

/// Two-component amplitude `(L, R)` at one lattice site.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Spinor {
    pub l: C64,
    pub r: C64,
}

impl Spinor {
    pub const fn new(l: C64, r: C64) -> Self {
        Spinor { l, r }
    }

    pub const fn zero() -> Self {
        Spinor { l: ZERO, r: ZERO }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.l.norm_sqr() + self.r.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: C64) -> Spinor {
        Spinor::new(self.l * s, self.r * s)
    }

    /// Largest component modulus.
    pub fn max_abs(&self) -> f64 {
        self.l.norm().max(self.r.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.l.is_finite() && self.r.is_finite()
    }
}

impl Add for Spinor {
    type Output = Spinor;

    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.l + rhs.l, self.r + rhs.r)
    }
}

impl Sub for Spinor {
    type Output = Spinor;

    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.l - rhs.l, self.r - rhs.r)
    }
}

/// The value `Psi(0) = (phi1, phi2)` that seeds an eigenfunction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialVector {
    pub phi1: C64,
    pub phi2: C64,
}

impl InitialVector {
    pub fn new(phi1: C64, phi2: C64) -> Result<Self> {
        if phi1 == ZERO && phi2 == ZERO {
            return Err(Error::ZeroInput);
        }
        if !(phi1.is_finite() && phi2.is_finite()) {
            return Err(Error::Invariant("initial vector must be finite".into()));
        }
        Ok(InitialVector { phi1, phi2 })
    }

    /// `|phi1|^2 + |phi2|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.phi1.norm_sqr() + self.phi2.norm_sqr()
    }

    pub fn as_spinor(&self) -> Spinor {
        Spinor::new(self.phi1, self.phi2)
    }

    pub fn scale(&self, s: C64) -> Result<Self> {
        InitialVector::new(self.phi1 * s, self.phi2 * s)
    }
}

impl From<InitialVector> for Spinor {
    fn from(v: InitialVector) -> Spinor {
        v.as_spinor()
    }
}

fn check_window(xmin: i64, xmax: i64) -> Result<()> {
    if xmin > 0 || xmax < 0 {
        return Err(Error::WindowMissingOrigin { xmin, xmax });
    }
    Ok(())
}

/// A spinor-valued function on the window `[xmin, xmax]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    xmin: i64,
    values: Vec<Spinor>,
}

impl SpinorField {
    pub fn new(xmin: i64, values: Vec<Spinor>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::WindowTooSmall { len: 0, required: 1 });
        }
        check_window(xmin, xmin + values.len() as i64 - 1)?;
        Ok(SpinorField { xmin, values })
    }

    pub fn from_fn(xmin: i64, xmax: i64, mut f: impl FnMut(i64) -> Spinor) -> Result<Self> {
        check_window(xmin, xmax)?;
        let values = (xmin..=xmax).map(&mut f).collect();
        Ok(SpinorField { xmin, values })
    }

    pub fn zeros(xmin: i64, xmax: i64) -> Result<Self> {
        Self::from_fn(xmin, xmax, |_| Spinor::zero())
    }

    pub fn constant(xmin: i64, xmax: i64, value: Spinor) -> Result<Self> {
        Self::from_fn(xmin, xmax, |_| value)
    }

    /// `value` at the origin, zero elsewhere.
    pub fn delta(xmin: i64, xmax: i64, value: Spinor) -> Result<Self> {
        Self::from_fn(xmin, xmax, |x| if x == 0 { value } else { Spinor::zero() })
    }

    pub fn xmin(&self) -> i64 {
        self.xmin
    }

    pub fn xmax(&self) -> i64 {
        self.xmin + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Spinor] {
        &self.values
    }

    pub fn get(&self, x: i64) -> Option<Spinor> {
        let idx = x.checked_sub(self.xmin)?;
        usize::try_from(idx).ok().and_then(|i| self.values.get(i).copied())
    }

    /// Overwrite the value at site `x`; returns `false` when `x` is outside the window.
    pub fn set(&mut self, x: i64, value: Spinor) -> bool {
        match usize::try_from(x - self.xmin).ok().and_then(|i| self.values.get_mut(i)) {
            Some(slot) => {
                *slot = value;
                true
            }
            None => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Spinor)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.xmin + i as i64, *v))
    }

    /// Multiply every site by the same complex factor.
    pub fn scale(&self, s: C64) -> SpinorField {
        SpinorField {
            xmin: self.xmin,
            values: self.values.iter().map(|v| v.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == Spinor::zero())
    }

    pub fn measure(&self) -> Measure {
        measure_of(self)
    }
}

/// Nonnegative function on a lattice window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Measure {
    xmin: i64,
    values: Vec<f64>,
}

impl Measure {
    pub fn new(xmin: i64, values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::Invariant("measure values must be nonnegative".into()));
        }
        if values.is_empty() {
            return Err(Error::WindowTooSmall { len: 0, required: 1 });
        }
        Ok(Measure { xmin, values })
    }

    pub fn xmin(&self) -> i64 {
        self.xmin
    }

    pub fn xmax(&self) -> i64 {
        self.xmin + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: i64) -> Option<f64> {
        let idx = x.checked_sub(self.xmin)?;
        usize::try_from(idx).ok().and_then(|i| self.values.get(i).copied())
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.xmin + i as i64, *v))
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Site-wise squared norm `|Psi^L(x)|^2 + |Psi^R(x)|^2`.
pub fn measure_of(field: &SpinorField) -> Measure {
    Measure {
        xmin: field.xmin,
        values: field.values.iter().map(Spinor::norm_sqr).collect(),
    }
}
