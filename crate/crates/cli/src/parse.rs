//! Text grammars for the command-line values.

use std::f64::consts::PI;

use qwalk_core::classify::normalize_angle;
use qwalk_core::{cis, CoinMatrix, InitialVector, Mat2, C64};

/// A bad flag value. Carries the flag name so messages point at it.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueError {
    pub flag: &'static str,
    pub message: String,
}

impl ValueError {
    pub fn new(flag: &'static str, message: impl Into<String>) -> Self {
        ValueError {
            flag,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ValueError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "--{}: {}", self.flag, self.message)
    }
}

fn real(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// `1.5`, `pi`, `-pi/4`, `2*pi/3`, `11pi/6`. Not normalised.
pub fn angle(s: &str) -> Option<f64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(at) = s.find("pi") else {
        return real(&s);
    };
    let head = s[..at].trim_end_matches('*');
    let coef = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => real(h)?,
    };
    let tail = &s[at + 2..];
    let den = if tail.is_empty() {
        1.0
    } else {
        real(tail.strip_prefix('/')?)?
    };
    (den != 0.0).then(|| coef * PI / den)
}

/// `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`. Exponents like `1e-3` are allowed.
pub fn complex(s: &str) -> Option<C64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return real(&s).map(|re| C64::new(re, 0.0));
    };
    // Split before the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_txt, im_txt) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_txt.is_empty() { 0.0 } else { real(re_txt)? };
    let im = match im_txt {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(t)?,
    };
    Some(C64::new(re, im))
}

/// Clap value parser for `--theta`.
pub fn theta_arg(s: &str) -> Result<f64, String> {
    angle(s)
        .map(normalize_angle)
        .ok_or_else(|| format!("cannot read '{s}' as an angle"))
}

/// Two comma-separated complex literals, not yet checked for being nonzero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiSpec(pub C64, pub C64);

impl PhiSpec {
    pub fn build(self, flag: &'static str) -> Result<InitialVector, ValueError> {
        InitialVector::new(self.0, self.1).map_err(|e| ValueError::new(flag, e.to_string()))
    }
}

pub fn phi_arg(s: &str) -> Result<PhiSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("expected two values 'a,b', got '{s}'"));
    };
    let a = complex(a).ok_or_else(|| format!("bad complex number '{a}'"))?;
    let b = complex(b).ok_or_else(|| format!("bad complex number '{b}'"))?;
    Ok(PhiSpec(a, b))
}

/// A coin as written on the command line, not yet checked for unitarity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoinSpec {
    Hadamard,
    Identity,
    Rotation(f64),
    Entries([C64; 4]),
}

impl CoinSpec {
    pub fn build(self) -> Result<CoinMatrix, ValueError> {
        match self {
            CoinSpec::Hadamard => Ok(CoinMatrix::hadamard()),
            CoinSpec::Identity => Ok(CoinMatrix::identity()),
            CoinSpec::Rotation(z) => Ok(CoinMatrix::rotation(z)),
            CoinSpec::Entries([a, b, c, d]) => {
                CoinMatrix::from_matrix(Mat2::new(a, b, c, d)).map_err(|e| ValueError::new("coin", e.to_string()))
            }
        }
    }
}

/// `hadamard`, `identity`, `rotation:<angle>` or four complex entries `c11,c12,c21,c22`.
pub fn coin_arg(s: &str) -> Result<CoinSpec, String> {
    let t = s.trim();
    match t {
        "hadamard" => return Ok(CoinSpec::Hadamard),
        "identity" => return Ok(CoinSpec::Identity),
        _ => {}
    }
    if let Some(a) = t.strip_prefix("rotation:") {
        return angle(a)
            .map(CoinSpec::Rotation)
            .ok_or_else(|| format!("bad rotation angle '{a}'"));
    }
    let parts: Vec<C64> = t
        .split(',')
        .map(|p| complex(p).ok_or_else(|| format!("bad entry '{p}'")))
        .collect::<Result<_, _>>()?;
    let [c11, c12, c21, c22] = parts.as_slice() else {
        return Err("expected hadamard, identity, rotation:<angle> or four entries c11,c12,c21,c22".into());
    };
    Ok(CoinSpec::Entries([*c11, *c12, *c21, *c22]))
}

/// Initial condition for `evolve`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Init {
    /// `phi` at the origin, zero elsewhere.
    Delta(PhiSpec),
    /// `phi` everywhere.
    Constant(PhiSpec),
    /// Transfer eigenfunction for `e^{i theta}` with `Psi(0) = phi`.
    Eigen { theta: f64, phi: PhiSpec },
}

impl Init {
    pub fn lambda(&self) -> Option<C64> {
        match self {
            Init::Eigen { theta, .. } => Some(cis(*theta)),
            _ => None,
        }
    }
}

/// `delta:a,b`, `const:a,b` or `eigen:<angle>:a,b`.
pub fn init_arg(s: &str) -> Result<Init, String> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or("expected delta:a,b, const:a,b or eigen:<angle>:a,b")?;
    match kind {
        "delta" => Ok(Init::Delta(phi_arg(rest)?)),
        "const" => Ok(Init::Constant(phi_arg(rest)?)),
        "eigen" => {
            let (t, p) = rest.split_once(':').ok_or("expected eigen:<angle>:a,b")?;
            let theta = angle(t).ok_or_else(|| format!("bad angle '{t}'"))?;
            Ok(Init::Eigen {
                theta: normalize_angle(theta),
                phi: phi_arg(p)?,
            })
        }
        other => Err(format!("unknown initial condition '{other}'")),
    }
}
