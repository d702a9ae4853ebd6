//! Recurrence parameters and the named presets.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The pair `(p, q)` driving the recurrence `X_n = p*X_{n-1} - q*X_{n-2}`,
/// together with the derived discriminant `delta = p^2 - 4q`.
///
/// Constructed only through [`validate_params`] (or a [`Preset`]), so a value
/// of this type always satisfies `p != 0`, `q != 0` and `delta != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SequenceParams {
    p: i64,
    q: i64,
    delta: i64,
}

impl SequenceParams {
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `p^2 - 4q`, always nonzero.
    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// Whether `q` is a unit (`q = +/-1`).
    ///
    /// Unit `q` is what makes the sequences integral at negative indices and
    /// every closed-form division exact; the sum and identity engines refuse
    /// anything else.
    pub fn unit_q(&self) -> bool {
        self.q == 1 || self.q == -1
    }

    /// `q^e` for a unit `q`; exponents may be negative since `q^2 = 1`
    /// collapses everything to parity.
    pub(crate) fn unit_q_pow(&self, exponent: i64) -> i64 {
        debug_assert!(self.unit_q());
        if exponent.rem_euclid(2) == 0 {
            1
        } else {
            self.q
        }
    }

    pub(crate) fn require_unit_q(&self) -> Result<()> {
        if self.unit_q() {
            Ok(())
        } else {
            Err(Error::SumRequiresUnitQ { q: self.q })
        }
    }
}

impl fmt::Display for SequenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={})", self.p, self.q)
    }
}

/// Validate `(p, q)` and derive the discriminant.
pub fn validate_params(p: i64, q: i64) -> Result<SequenceParams> {
    if p == 0 || q == 0 {
        return Err(Error::ZeroParameter { p, q });
    }
    let delta = i128::from(p) * i128::from(p) - 4 * i128::from(q);
    if delta == 0 {
        return Err(Error::ZeroDiscriminant { p, q });
    }
    let delta = i64::try_from(delta)
        .map_err(|_| Error::DomainViolation(format!("discriminant of (p={p}, q={q}) overflows")))?;
    Ok(SequenceParams { p, q, delta })
}

/// The classical specializations of `(U, V)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Fibonacci / Lucas: `(p, q) = (1, -1)`.
    Fibonacci,
    /// Pell / Pell-Lucas: `(p, q) = (2, -1)`.
    Pell,
    /// Jacobsthal / Jacobsthal-Lucas: `(p, q) = (1, -2)`.
    ///
    /// Note `|q| != 1`: the evaluation engine accepts this preset, the sum
    /// and identity engines reject it.
    Jacobsthal,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fibonacci, Preset::Pell, Preset::Jacobsthal];

    pub fn params(&self) -> SequenceParams {
        let (p, q) = match self {
            Preset::Fibonacci => (1, -1),
            Preset::Pell => (2, -1),
            Preset::Jacobsthal => (1, -2),
        };
        validate_params(p, q).expect("preset parameters are valid")
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fibonacci => "fibonacci",
            Preset::Pell => "pell",
            Preset::Jacobsthal => "jacobsthal",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fibonacci" => Ok(Preset::Fibonacci),
            "pell" => Ok(Preset::Pell),
            "jacobsthal" => Ok(Preset::Jacobsthal),
            other => Err(format!(
                "unknown preset '{other}' (expected fibonacci, pell or jacobsthal)"
            )),
        }
    }
}
