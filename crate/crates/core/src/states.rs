//! Catalog of the entangled states used by the checks, and the
//! uniform-magnitude canonical-form verification.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::kernel::{tensor_apply, LocalOp, StateVector};

/// Largest supported player count for cataloged states (dense vectors).
pub const MAX_PLAYERS: usize = 16;

/// Default tolerance on |c|^2 deviations in the uniform-form check.
pub const UNIFORM_TOL: f64 = 1e-10;

/// Specification of a shared entangled state.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Ghz { n: usize },
    W { n: usize },
    Dicke { n: usize, m: usize },
    Bell,
    Product { n: usize },
    Custom { amps: Vec<C64> },
}

impl StateSpec {
    pub fn n_players(&self) -> Result<usize> {
        match self {
            StateSpec::Ghz { n } | StateSpec::W { n } | StateSpec::Product { n } => Ok(*n),
            StateSpec::Dicke { n, .. } => Ok(*n),
            StateSpec::Bell => Ok(2),
            StateSpec::Custom { amps } => {
                let dim = amps.len();
                if dim < 2 || !dim.is_power_of_two() {
                    return Err(Error::InvalidArgument(format!(
                        "custom amplitude count {dim} is not a power of two"
                    )));
                }
                Ok(dim.trailing_zeros() as usize)
            }
        }
    }

    /// Dicke excitation count (m), when this is a Dicke-class state
    /// (W is the m = 1 member).
    pub fn dicke_class(&self) -> Option<(usize, usize)> {
        match self {
            StateSpec::W { n } => Some((*n, 1)),
            StateSpec::Dicke { n, m } => Some((*n, *m)),
            _ => None,
        }
    }

    /// Parse a spec string, loading `custom:@file` amplitudes from disk.
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

fn parse_count(part: Option<&str>, what: &str) -> Result<usize> {
    part.ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("invalid {what}")))
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let head = parts.next().unwrap_or_default().to_ascii_lowercase();
        let spec = match head.as_str() {
            "ghz" => StateSpec::Ghz {
                n: parse_count(parts.next(), "player count in ghz:N")?,
            },
            "w" => StateSpec::W {
                n: parse_count(parts.next(), "player count in w:N")?,
            },
            "dicke" => StateSpec::Dicke {
                n: parse_count(parts.next(), "player count in dicke:N:m")?,
                m: parse_count(parts.next(), "excitation count in dicke:N:m")?,
            },
            "bell" => StateSpec::Bell,
            "product" => StateSpec::Product {
                n: parse_count(parts.next(), "player count in product:N")?,
            },
            "custom" => {
                let arg = parts
                    .next()
                    .ok_or_else(|| Error::Parse("custom needs @file".into()))?;
                let path = arg
                    .strip_prefix('@')
                    .ok_or_else(|| Error::Parse("custom argument must be @file".into()))?;
                StateSpec::Custom {
                    amps: read_amplitude_file(Path::new(path))?,
                }
            }
            other => return Err(Error::Parse(format!("unknown state kind '{other}'"))),
        };
        if parts.next().is_some() {
            return Err(Error::Parse(format!("trailing fields in state spec '{s}'")));
        }
        Ok(spec)
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Ghz { n } => write!(f, "ghz:{n}"),
            StateSpec::W { n } => write!(f, "w:{n}"),
            StateSpec::Dicke { n, m } => write!(f, "dicke:{n}:{m}"),
            StateSpec::Bell => write!(f, "bell"),
            StateSpec::Product { n } => write!(f, "product:{n}"),
            StateSpec::Custom { amps } => write!(f, "custom({} amplitudes)", amps.len()),
        }
    }
}

/// Amplitude file: one `re im` pair per line, index order as in the kernel;
/// `#` starts a comment.
pub fn read_amplitude_file(path: &Path) -> Result<Vec<C64>> {
    let text = std::fs::read_to_string(path)?;
    let mut amps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let re: f64 = fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("line {}: expected 're im'", lineno + 1)))?;
        let im: f64 = fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("line {}: expected 're im'", lineno + 1)))?;
        if fields.next().is_some() {
            return Err(Error::Parse(format!(
                "line {}: too many fields",
                lineno + 1
            )));
        }
        amps.push(C64::new(re, im));
    }
    Ok(amps)
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn check_players(n: usize) -> Result<()> {
    if n < 1 || n > MAX_PLAYERS {
        return Err(Error::InvalidArgument(format!(
            "player count {n} outside supported range 1..={MAX_PLAYERS}"
        )));
    }
    Ok(())
}

/// Construct the normalized state vector for a spec.
///
/// Conventions:
/// - GHZ carries a relative phase between the two branches that depends on
///   the parity of N: (|0..0> + i|1..1>)/sqrt(2) for even N and
///   (|0..0> + |1..1>)/sqrt(2) for odd N. These are the members of the
///   GHZ local-unitary class for which the strategy pair {I, i sigma_y}
///   satisfies the strong criterion at every N.
/// - Dicke |N-m, m> is the equal superposition of all C(N,m) basis states
///   with m ones; W is the m = 1 case.
pub fn make_state(spec: &StateSpec) -> Result<StateVector> {
    match spec {
        StateSpec::Ghz { n } => {
            check_players(*n)?;
            if *n < 2 {
                return Err(Error::InvalidArgument("ghz needs at least 2 players".into()));
            }
            let dim = 1_usize << n;
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let mut amps = vec![C64::new(0.0, 0.0); dim];
            amps[0] = C64::new(s, 0.0);
            amps[dim - 1] = if n % 2 == 0 {
                C64::new(0.0, s)
            } else {
                C64::new(s, 0.0)
            };
            StateVector::new(*n, amps)
        }
        StateSpec::W { n } => make_state(&StateSpec::Dicke { n: *n, m: 1 }),
        StateSpec::Dicke { n, m } => {
            check_players(*n)?;
            if *m == 0 || *m >= *n {
                return Err(Error::InvalidArgument(format!(
                    "dicke excitation count must satisfy 0 < m < N, got m={m}, N={n}"
                )));
            }
            let dim = 1_usize << n;
            let amp = 1.0 / (binomial(*n, *m) as f64).sqrt();
            let mut amps = vec![C64::new(0.0, 0.0); dim];
            for (idx, a) in amps.iter_mut().enumerate() {
                if idx.count_ones() as usize == *m {
                    *a = C64::new(amp, 0.0);
                }
            }
            StateVector::new(*n, amps)
        }
        StateSpec::Bell => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            StateVector::new(
                2,
                vec![
                    C64::new(s, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(s, 0.0),
                ],
            )
        }
        StateSpec::Product { n } => {
            check_players(*n)?;
            Ok(StateVector::basis(*n, 0))
        }
        StateSpec::Custom { amps } => {
            let n = spec.n_players()?;
            check_players(n)?;
            StateVector::new(n, amps.clone())
        }
    }
}

/// Result of the uniform-magnitude canonical-form check.
#[derive(Debug, Clone)]
pub struct CanonicalReport {
    /// All |c|^2 equal 2^-N within tolerance.
    pub uniform: bool,
    /// max | |c|^2 - 2^-N | over the transformed amplitudes.
    pub max_dev: f64,
    /// The locally transformed state.
    pub transformed: StateVector,
}

/// Apply the per-player locals and test whether the result has every
/// squared magnitude equal to 2^-N within `tol`.
///
/// Existence of transforming locals is not decided here; candidates are
/// supplied by the caller and only verified.
pub fn verify_uniform_form(
    state: &StateVector,
    locals: &[LocalOp],
    tol: f64,
) -> Result<CanonicalReport> {
    for op in locals {
        let r = op.unitarity_residual();
        if r > 1e-10 {
            return Err(Error::NotUnitary { residual: r });
        }
    }
    let transformed = tensor_apply(locals, state)?;
    let target = 1.0 / transformed.dim() as f64;
    let max_dev = transformed
        .amps()
        .iter()
        .map(|a| (a.norm_sqr() - target).abs())
        .fold(0.0_f64, f64::max);
    Ok(CanonicalReport {
        uniform: max_dev <= tol,
        max_dev,
        transformed,
    })
}

/// Local operator for player 1 that, together with Hadamards on the other
/// players, carries the cataloged GHZ state onto the uniform-magnitude form.
///
/// For even N this is diag(e^{i pi/4}, e^{-i pi/4})·H; for odd N it is
/// H·diag(1, i). Both are unitary by construction.
pub fn ghz_uniform_local(n: usize) -> LocalOp {
    let h = LocalOp::hadamard();
    if n % 2 == 0 {
        let t = LocalOp::diag(
            C64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
        );
        t.mul(&h)
    } else {
        let s = LocalOp::diag(C64::new(1.0, 0.0), C64::new(0.0, 1.0));
        h.mul(&s)
    }
}

/// Locals carrying a cataloged state onto the uniform-magnitude form, when
/// one is known: Hadamards for the product state, the phase-adjusted
/// Hadamard of [`ghz_uniform_local`] plus Hadamards for GHZ.
pub fn uniform_form_locals(spec: &StateSpec) -> Option<Vec<LocalOp>> {
    match spec {
        StateSpec::Product { n } => Some(vec![LocalOp::hadamard(); *n]),
        StateSpec::Ghz { n } => {
            let mut ops = vec![LocalOp::hadamard(); *n];
            ops[0] = ghz_uniform_local(*n);
            Some(ops)
        }
        _ => None,
    }
}
