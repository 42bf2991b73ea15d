//! Characteristic roots of the eigenfunction recurrence and the explicit
//! eigenfunctions they produce.
//!
//! On each half-line the components of `Psi` satisfy a second-order linear
//! recurrence whose characteristic roots are `Lambda+-` (right) and
//! `Gamma+-` (left). A double root yields linear-times-geometric solutions,
//! distinct roots yield a two-term geometric interpolation.

use log::warn;

use crate::coin::CoinMatrix;
use crate::error::{Error, Result};
use crate::field::{InitialVector, Spinor, SpinorField};
use crate::linalg::C64;
use crate::transfer::{boundary_values, check_corner, check_lambda};

/// `|disc|` at or below this counts as a double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-12;
/// Tolerance on comparing `|Lambda+|` with `|Lambda-|`.
pub const MODULUS_TOL: f64 = 1e-10;
/// Distance of `lambda^2` from a double-root value that selects the double-root formula.
pub const CASE_TOL: f64 = 1e-10;
/// Below this distance (but above [`CASE_TOL`]) both formulas are evaluated and compared.
pub const NEAR_CASE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharRoots {
    pub lambda: C64,
    /// `lambda^2 + Delta`.
    pub h: C64,
    /// `h^2 - 4 lambda^2 c11 c22`.
    pub discriminant: C64,
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    pub gamma_plus: C64,
    pub gamma_minus: C64,
    pub is_double: bool,
}

/// Principal branch for the square root of the discriminant.
pub fn char_roots(coin: &CoinMatrix, lambda: C64) -> Result<CharRoots> {
    check_corner(coin)?;
    check_lambda(lambda)?;
    let (c11, c22) = (coin.c11(), coin.c22());
    let h = lambda * lambda + coin.delta();
    let discriminant = h * h - 4.0 * lambda * lambda * c11 * c22;
    let root = discriminant.sqrt();
    let (a, b) = (2.0 * c11 * lambda, 2.0 * c22 * lambda);
    Ok(CharRoots {
        lambda,
        h,
        discriminant,
        lambda_plus: (h + root) / a,
        lambda_minus: (h - root) / a,
        gamma_plus: (h + root) / b,
        gamma_minus: (h - root) / b,
        is_double: discriminant.norm() <= DOUBLE_ROOT_TOL,
    })
}

impl CharRoots {
    /// Largest residual of `Lambda+-` in `x^2 + l x + c22/c11` with
    /// `l = -(lambda + Delta/lambda)/c11`.
    pub fn polynomial_residual(&self, coin: &CoinMatrix) -> f64 {
        let l = -(self.lambda + coin.delta() / self.lambda) / coin.c11();
        let k = coin.c22() / coin.c11();
        [self.lambda_plus, self.lambda_minus]
            .iter()
            .map(|x| (x * x + l * x + k).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    /// `Lambda+ = Lambda-`.
    Double,
    /// Distinct roots of equal modulus (both on the unit circle).
    EqualModulus,
    /// One root strictly inside the unit circle, one strictly outside.
    SplitModulus,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootType {
    pub kind: RootKind,
    /// `(|Lambda+|, |Lambda-|)`.
    pub moduli: (f64, f64),
}

pub fn root_type(roots: &CharRoots) -> RootType {
    let moduli = (roots.lambda_plus.norm(), roots.lambda_minus.norm());
    let kind = if roots.is_double {
        RootKind::Double
    } else if (moduli.0 - moduli.1).abs() <= MODULUS_TOL {
        RootKind::EqualModulus
    } else {
        RootKind::SplitModulus
    };
    RootType { kind, moduli }
}

/// Which explicit formula a [`ClosedForm`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaCase {
    DoubleRoot,
    DistinctRoots,
}

/// Distance from `lambda^2` to the nearest value `Delta~ +- 2 sqrt(c11 c12 c21 c22)`.
pub fn double_root_distance(coin: &CoinMatrix, lambda: C64) -> f64 {
    let [[c11, c12], [c21, c22]] = coin.matrix().m;
    let s = 2.0 * (c11 * c12 * c21 * c22).sqrt();
    let l2 = lambda * lambda;
    let dt = coin.delta_tilde();
    (l2 - (dt + s)).norm().min((l2 - (dt - s)).norm())
}

/// An eigenfunction given by explicit formulas, prepared once for a fixed
/// coin, eigenvalue and initial vector.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    case: FormulaCase,
    phi: InitialVector,
    roots: CharRoots,
    double: Option<DoubleRootData>,
    distinct: DistinctRootData,
}

#[derive(Clone, Copy, Debug)]
struct DoubleRootData {
    right_base: C64,
    left_base: C64,
    l2: C64,
    inv_h: C64,
    delta: C64,
    delta_tilde: C64,
    c12c22: C64,
    c11c21: C64,
}

#[derive(Clone, Copy, Debug)]
struct DistinctRootData {
    plus: Spinor,
    minus: Spinor,
}

impl ClosedForm {
    pub fn new(coin: &CoinMatrix, lambda: C64, phi: InitialVector) -> Result<Self> {
        let roots = char_roots(coin, lambda)?;
        let (plus, minus) = boundary_values(coin, lambda, phi)?;
        let distinct = DistinctRootData { plus, minus };
        let distance = double_root_distance(coin, lambda);
        let case = if distance <= CASE_TOL {
            FormulaCase::DoubleRoot
        } else {
            FormulaCase::DistinctRoots
        };
        let double = if distance <= NEAR_CASE_TOL {
            let h = roots.h;
            if h.norm() <= DOUBLE_ROOT_TOL {
                if case == FormulaCase::DoubleRoot {
                    return Err(Error::DegeneratePrefactor);
                }
                None
            } else {
                let [[c11, c12], [c21, c22]] = coin.matrix().m;
                Some(DoubleRootData {
                    right_base: h / (2.0 * c11 * lambda),
                    left_base: h / (2.0 * c22 * lambda),
                    l2: lambda * lambda,
                    inv_h: h.inv(),
                    delta: coin.delta(),
                    delta_tilde: coin.delta_tilde(),
                    c12c22: c12 * c22,
                    c11c21: c11 * c21,
                })
            }
        } else {
            None
        };
        let cf = ClosedForm {
            case,
            phi,
            roots,
            double,
            distinct,
        };
        if distance > CASE_TOL && cf.double.is_some() {
            cf.compare_near_threshold(distance);
        }
        Ok(cf)
    }

    pub fn case(&self) -> FormulaCase {
        self.case
    }

    pub fn roots(&self) -> &CharRoots {
        &self.roots
    }

    /// Close to a double root both formulas are valid approximations but the
    /// distinct-root one loses accuracy; flag large disagreement.
    fn compare_near_threshold(&self, distance: f64) {
        for x in [-4, -1, 1, 4] {
            let a = self.double_root_at(x);
            let b = self.distinct_root_at(x);
            let scale = a.max_abs().max(b.max_abs()).max(1.0);
            let gap = (a - b).max_abs() / scale;
            if gap > 1e-6 {
                warn!(
                    "eigenvalue is {distance:.2e} from a double root; explicit formulas differ by {gap:.2e} at x = {x}"
                );
                return;
            }
        }
    }

    fn double_root_at(&self, x: i64) -> Spinor {
        let d = self.double.expect("double-root data prepared");
        let (p1, p2) = (self.phi.phi1, self.phi.phi2);
        let xf = x as f64;
        let top = p1 * (1.0 + xf) * d.l2 - (p1 * d.delta_tilde + 2.0 * d.c12c22 * p2) * xf + p1 * d.delta;
        let bottom = p2 * (1.0 - xf) * d.l2 + (p2 * d.delta_tilde + 2.0 * d.c11c21 * p1) * xf + p2 * d.delta;
        let prefactor = if x >= 1 {
            d.right_base.powi(x as i32)
        } else {
            d.left_base.powi((-x) as i32)
        };
        Spinor::new(top, bottom).scale(prefactor * d.inv_h)
    }

    fn distinct_root_at(&self, x: i64) -> Spinor {
        let r = &self.roots;
        let (p1, p2) = (self.phi.phi1, self.phi.phi2);
        let (plus, minus, edge, n) = if x >= 1 {
            (r.lambda_plus, r.lambda_minus, self.distinct.plus, x)
        } else {
            (r.gamma_plus, r.gamma_minus, self.distinct.minus, -x)
        };
        let (ap, am) = (plus.powi(n as i32), minus.powi(n as i32));
        let comp = |edge: C64, p: C64| (ap * (edge - minus * p) - am * (edge - plus * p)) / (plus - minus);
        Spinor::new(comp(edge.l, p1), comp(edge.r, p2))
    }

    /// `Psi(x)`; the origin returns the initial vector.
    pub fn at(&self, x: i64) -> Spinor {
        if x == 0 {
            return self.phi.as_spinor();
        }
        match self.case {
            FormulaCase::DoubleRoot => self.double_root_at(x),
            FormulaCase::DistinctRoots => self.distinct_root_at(x),
        }
    }

    pub fn field(&self, xmin: i64, xmax: i64) -> Result<SpinorField> {
        let f = SpinorField::from_fn(xmin, xmax, |x| self.at(x))?;
        if let Some((x, _)) = f.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Overflow { site: x });
        }
        Ok(f)
    }
}

pub fn closed_form_eigenfunction(coin: &CoinMatrix, lambda: C64, phi: InitialVector, x: i64) -> Result<Spinor> {
    Ok(ClosedForm::new(coin, lambda, phi)?.at(x))
}

pub fn closed_form_field(
    coin: &CoinMatrix,
    lambda: C64,
    phi: InitialVector,
    xmin: i64,
    xmax: i64,
) -> Result<SpinorField> {
    ClosedForm::new(coin, lambda, phi)?.field(xmin, xmax)
}
