//! Continued-fraction convergents of a real number.

/// A fraction `p / q` with `q > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Fraction {
    pub p: i64,
    pub q: i64,
}

impl Fraction {
    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// Convergents of `x` in order, stopping before the first denominator above
/// `max_den` or once the expansion terminates.
pub fn convergents(x: f64, max_den: i64) -> Vec<Fraction> {
    let mut out = Vec::new();
    if !x.is_finite() || max_den < 1 {
        return out;
    }
    let (mut h_prev, mut h) = (0i128, 1i128);
    let (mut k_prev, mut k) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h_next = ai * h + h_prev;
        let k_next = ai * k + k_prev;
        if k_next > max_den as i128 {
            break;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
        out.push(Fraction {
            p: h as i64,
            q: k as i64,
        });
        let frac = rest - a;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    out
}

/// First convergent within `tol` of `x` with denominator at most `max_den`.
pub fn rational_approx(x: f64, max_den: i64, tol: f64) -> Option<Fraction> {
    convergents(x, max_den)
        .into_iter()
        .find(|f| (x - f.value()).abs() < tol)
}
