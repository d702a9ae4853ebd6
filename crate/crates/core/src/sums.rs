//! Sums and alternating sums of products of sequence terms.
//!
//! The two operators are
//!
//! ```text
//! S_n^(r,s)(X, Y) = sum_{i=0}^{n} X_{r+2i} Y_{s+2i}
//! A_n^(r,s)(X, Y) = sum_{i=0}^{n} (-1)^i X_{r+2i} Y_{s+2i}
//! ```
//!
//! over the pairs `(U,U)`, `(V,V)` and `(U,V)`, and every query can be
//! answered three ways:
//!
//! - [`sum_naive`]: literal term-by-term summation (the oracle),
//! - [`sum_theorem1`]: the direct closed forms in `U`/`V` values,
//! - [`sum_corollary1`]: the closed forms phrased through the derived
//!   sequences `a`, `c`, `d`, split on the parity of `n`.
//!
//! All three agree exactly on every valid query; the closed forms assemble a
//! single integer numerator and perform one checked division, so any slip
//! shows up as an `InexactDivision` alarm rather than a silently wrong value.
//!
//! Everything here requires `q = +/-1`: shifted indices go negative for
//! negative `r`, `s`, and the closed-form divisions are only guaranteed exact
//! for unit `q`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::derived::{derived_closed, DerivedKind};
use crate::error::Result;
use crate::params::SequenceParams;
use crate::sequences::{eval_pair, exact_div, Component, Cursor};

/// Plain sum (`S`) or alternating sum (`A`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SumKind {
    S,
    A,
}

/// Which component pair the products range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SumPair {
    UU,
    VV,
    UV,
}

impl SumPair {
    fn components(&self) -> (Component, Component) {
        match self {
            SumPair::UU => (Component::U, Component::U),
            SumPair::VV => (Component::V, Component::V),
            SumPair::UV => (Component::U, Component::V),
        }
    }
}

/// One sum query: kind, pair, offsets `r`, `s` and term count `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SumQuery {
    pub kind: SumKind,
    pub pair: SumPair,
    pub r: i64,
    pub s: i64,
    pub n: u64,
}

impl SumQuery {
    pub fn new(kind: SumKind, pair: SumPair, r: i64, s: i64, n: u64) -> Self {
        SumQuery { kind, pair, r, s, n }
    }

    /// Parity indicator `(1 + (-1)^n) / 2`: 1 for even `n`, 0 for odd.
    pub fn epsilon(&self) -> i64 {
        if self.n % 2 == 0 {
            1
        } else {
            0
        }
    }

    /// `m` in the parity split `n = 2m` / `n = 2m + 1`.
    pub fn half(&self) -> i64 {
        (self.n / 2) as i64
    }
}

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SumPath {
    Naive,
    Theorem1,
    Corollary1,
}

impl SumPath {
    pub fn name(&self) -> &'static str {
        match self {
            SumPath::Naive => "naive",
            SumPath::Theorem1 => "theorem1",
            SumPath::Corollary1 => "corollary1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumResult {
    pub value: BigInt,
    pub path: SumPath,
}

/// Term-by-term summation. O(n) rolling recurrence steps; the oracle every
/// closed form is checked against.
pub fn sum_naive(params: &SequenceParams, query: &SumQuery) -> Result<SumResult> {
    params.require_unit_q()?;
    let (cx, cy) = query.pair.components();
    let mut xs = Cursor::seek(params, cx, query.r)?;
    let mut ys = Cursor::seek(params, cy, query.s)?;

    let mut total = BigInt::from(0);
    for i in 0..=query.n {
        if i > 0 {
            xs.advance(2);
            ys.advance(2);
        }
        let term = xs.value() * ys.value();
        match query.kind {
            SumKind::S => total += term,
            SumKind::A => {
                if i % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
        }
    }
    Ok(SumResult {
        value: total,
        path: SumPath::Naive,
    })
}

/// Closed forms in terms of `U`/`V` values at shifted indices.
///
/// For the plain sums (with `w = 4n + r + s + 2`):
///
/// ```text
/// S(U,U) = [U_w - U_{r+s-2} - (n+1) p q^r V_{s-r}] / (p delta)
/// S(V,V) = [U_w - U_{r+s-2} + (n+1) p q^r V_{s-r}] / p
/// S(U,V) = [V_w - V_{r+s-2} - (n+1) p delta q^r U_{s-r}] / (p delta)
/// ```
///
/// and for the alternating sums (sign `(-1)^n`, parity indicator `eps`):
///
/// ```text
/// A(U,U) = [V_{r+s-2} + (-1)^n V_w - eps V_2 q^r V_{s-r}] / (delta V_2)
/// A(V,V) = [V_{r+s-2} + (-1)^n V_w + eps V_2 q^r V_{s-r}] / V_2
/// A(U,V) = [U_{r+s-2} + (-1)^n U_w - eps V_2 q^r U_{s-r}] / V_2
/// ```
///
/// Each is assembled as one integer numerator and divided once, with the
/// remainder asserted zero.
pub fn sum_theorem1(params: &SequenceParams, query: &SumQuery) -> Result<SumResult> {
    params.require_unit_q()?;
    let (r, s, n) = (query.r, query.s, query.n as i64);
    let p = BigInt::from(params.p());
    let delta = BigInt::from(params.delta());
    let qr = params.unit_q_pow(r);
    let count = BigInt::from(n + 1);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let eps = query.epsilon();

    let high = 4 * n + r + s + 2;
    let low = r + s - 2;

    let value = match (query.kind, query.pair) {
        (SumKind::S, SumPair::UU) => {
            let numer = eval_pair(params, high)?.u - eval_pair(params, low)?.u
                - count * &p * qr * eval_pair(params, s - r)?.v;
            exact_div(numer, &(&p * &delta), "S(U,U) closed form")?
        }
        (SumKind::S, SumPair::VV) => {
            let numer = eval_pair(params, high)?.u - eval_pair(params, low)?.u
                + count * &p * qr * eval_pair(params, s - r)?.v;
            exact_div(numer, &p, "S(V,V) closed form")?
        }
        (SumKind::S, SumPair::UV) => {
            let numer = eval_pair(params, high)?.v - eval_pair(params, low)?.v
                - count * &p * &delta * qr * eval_pair(params, s - r)?.u;
            exact_div(numer, &(&p * &delta), "S(U,V) closed form")?
        }
        (SumKind::A, SumPair::UU) => {
            let v2 = eval_pair(params, 2)?.v;
            let numer = eval_pair(params, low)?.v + sign * eval_pair(params, high)?.v
                - eps * &v2 * qr * eval_pair(params, s - r)?.v;
            exact_div(numer, &(&delta * &v2), "A(U,U) closed form")?
        }
        (SumKind::A, SumPair::VV) => {
            let v2 = eval_pair(params, 2)?.v;
            let numer = eval_pair(params, low)?.v + sign * eval_pair(params, high)?.v
                + eps * &v2 * qr * eval_pair(params, s - r)?.v;
            exact_div(numer, &v2, "A(V,V) closed form")?
        }
        (SumKind::A, SumPair::UV) => {
            let v2 = eval_pair(params, 2)?.v;
            let numer = eval_pair(params, low)?.u + sign * eval_pair(params, high)?.u
                - eps * &v2 * qr * eval_pair(params, s - r)?.u;
            exact_div(numer, &v2, "A(U,V) closed form")?
        }
    };

    Ok(SumResult {
        value,
        path: SumPath::Theorem1,
    })
}

/// Closed forms phrased through the derived sequences:
///
/// ```text
/// S(U,U) = [a_{n+1} V_{2n+r+s} - (n+1) q^r V_{s-r}] / delta
/// S(V,V) =  a_{n+1} V_{2n+r+s} + (n+1) q^r V_{s-r}
/// S(U,V) =  a_{n+1} U_{2n+r+s} - (n+1) q^r U_{s-r}
/// ```
///
/// and, splitting `n = 2m` / `n = 2m + 1`:
///
/// ```text
/// A(U,U) = [d_m V_{4m+r+s} - q^r V_{s-r}] / delta   |  -p c_m U_{4m+r+s+2}
/// A(V,V) =  d_m V_{4m+r+s} + q^r V_{s-r}            |  -p delta c_m U_{4m+r+s+2}
/// A(U,V) =  d_m U_{4m+r+s} - q^r U_{s-r}            |  -p c_m V_{4m+r+s+2}
/// ```
pub fn sum_corollary1(params: &SequenceParams, query: &SumQuery) -> Result<SumResult> {
    params.require_unit_q()?;
    let (r, s, n) = (query.r, query.s, query.n as i64);
    let p = BigInt::from(params.p());
    let delta = BigInt::from(params.delta());
    let qr = params.unit_q_pow(r);
    let count = BigInt::from(n + 1);
    let m = query.half();

    let value = match (query.kind, query.pair) {
        (SumKind::S, SumPair::UU) => {
            let a = derived_closed(params, DerivedKind::A, n + 1)?;
            let numer =
                a * eval_pair(params, 2 * n + r + s)?.v - count * qr * eval_pair(params, s - r)?.v;
            exact_div(numer, &delta, "S(U,U) derived form")?
        }
        (SumKind::S, SumPair::VV) => {
            let a = derived_closed(params, DerivedKind::A, n + 1)?;
            a * eval_pair(params, 2 * n + r + s)?.v + count * qr * eval_pair(params, s - r)?.v
        }
        (SumKind::S, SumPair::UV) => {
            let a = derived_closed(params, DerivedKind::A, n + 1)?;
            a * eval_pair(params, 2 * n + r + s)?.u - count * qr * eval_pair(params, s - r)?.u
        }
        (SumKind::A, SumPair::UU) => {
            if n % 2 == 0 {
                let d = derived_closed(params, DerivedKind::D, m)?;
                let numer =
                    d * eval_pair(params, 4 * m + r + s)?.v - qr * eval_pair(params, s - r)?.v;
                exact_div(numer, &delta, "A(U,U) derived form")?
            } else {
                let c = derived_closed(params, DerivedKind::C, m)?;
                -&p * c * eval_pair(params, 4 * m + r + s + 2)?.u
            }
        }
        (SumKind::A, SumPair::VV) => {
            if n % 2 == 0 {
                let d = derived_closed(params, DerivedKind::D, m)?;
                d * eval_pair(params, 4 * m + r + s)?.v + qr * eval_pair(params, s - r)?.v
            } else {
                let c = derived_closed(params, DerivedKind::C, m)?;
                -&p * &delta * c * eval_pair(params, 4 * m + r + s + 2)?.u
            }
        }
        (SumKind::A, SumPair::UV) => {
            if n % 2 == 0 {
                let d = derived_closed(params, DerivedKind::D, m)?;
                d * eval_pair(params, 4 * m + r + s)?.u - qr * eval_pair(params, s - r)?.u
            } else {
                let c = derived_closed(params, DerivedKind::C, m)?;
                -&p * c * eval_pair(params, 4 * m + r + s + 2)?.v
            }
        }
    };

    Ok(SumResult {
        value,
        path: SumPath::Corollary1,
    })
}

/// The four single-sequence partial sums with stride 4:
///
/// ```text
/// 1: delta U_2 sum U_{r+4i} = V_{4n+r+2} - V_{r-2}        = delta U_{2n+r} U_{2n+2}
/// 2:       U_2 sum V_{r+4i} = U_{4n+r+2} - U_{r-2}        = V_{2n+r} U_{2n+2}
/// 3: V_2 sum (-1)^i U_{r+4i} = (-1)^n U_{4n+r+2} + U_{r-2} = +/- (U/V product, by parity)
/// 4: V_2 sum (-1)^i V_{r+4i} = (-1)^n V_{4n+r+2} + V_{r-2} = +/- (product, by parity)
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaCVariant {
    V1,
    V2,
    V3,
    V4,
}

impl LemmaCVariant {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(LemmaCVariant::V1),
            2 => Some(LemmaCVariant::V2),
            3 => Some(LemmaCVariant::V3),
            4 => Some(LemmaCVariant::V4),
            _ => None,
        }
    }
}

/// The three printed expressions for one partial-sum variant, scaled by the
/// variant's multiplier (`delta U_2`, `U_2`, `V_2`, `V_2` respectively):
/// the scaled naive sum, the difference form and the product form.
pub fn lemma_c_forms(
    params: &SequenceParams,
    variant: LemmaCVariant,
    r: i64,
    n: u64,
) -> Result<(BigInt, BigInt, BigInt)> {
    params.require_unit_q()?;
    let ni = n as i64;
    let delta = BigInt::from(params.delta());
    let u2 = eval_pair(params, 2)?.u;
    let v2 = eval_pair(params, 2)?.v;
    let sign = if n % 2 == 0 { 1 } else { -1 };

    let component = match variant {
        LemmaCVariant::V1 | LemmaCVariant::V3 => Component::U,
        LemmaCVariant::V2 | LemmaCVariant::V4 => Component::V,
    };
    let alternating = matches!(variant, LemmaCVariant::V3 | LemmaCVariant::V4);

    let mut cursor = Cursor::seek(params, component, r)?;
    let mut sum = BigInt::from(0);
    for i in 0..=n {
        if i > 0 {
            cursor.advance(4);
        }
        if alternating && i % 2 == 1 {
            sum -= cursor.value();
        } else {
            sum += cursor.value();
        }
    }

    let scaled = match variant {
        LemmaCVariant::V1 => &delta * &u2 * &sum,
        LemmaCVariant::V2 => &u2 * &sum,
        LemmaCVariant::V3 | LemmaCVariant::V4 => &v2 * &sum,
    };

    let difference = match variant {
        LemmaCVariant::V1 => eval_pair(params, 4 * ni + r + 2)?.v - eval_pair(params, r - 2)?.v,
        LemmaCVariant::V2 => eval_pair(params, 4 * ni + r + 2)?.u - eval_pair(params, r - 2)?.u,
        LemmaCVariant::V3 => {
            sign * eval_pair(params, 4 * ni + r + 2)?.u + eval_pair(params, r - 2)?.u
        }
        LemmaCVariant::V4 => {
            sign * eval_pair(params, 4 * ni + r + 2)?.v + eval_pair(params, r - 2)?.v
        }
    };

    let product = match variant {
        LemmaCVariant::V1 => {
            &delta * eval_pair(params, 2 * ni + r)?.u * eval_pair(params, 2 * ni + 2)?.u
        }
        LemmaCVariant::V2 => eval_pair(params, 2 * ni + r)?.v * eval_pair(params, 2 * ni + 2)?.u,
        LemmaCVariant::V3 => {
            if n % 2 == 0 {
                eval_pair(params, 2 * ni + r)?.u * eval_pair(params, 2 * ni + 2)?.v
            } else {
                -(eval_pair(params, 2 * ni + r)?.v * eval_pair(params, 2 * ni + 2)?.u)
            }
        }
        LemmaCVariant::V4 => {
            if n % 2 == 0 {
                eval_pair(params, 2 * ni + r)?.v * eval_pair(params, 2 * ni + 2)?.v
            } else {
                -(&delta * eval_pair(params, 2 * ni + r)?.u * eval_pair(params, 2 * ni + 2)?.u)
            }
        }
    };

    Ok((scaled, difference, product))
}

/// The partial sum itself (`sum X_{r+4i}` or its alternating variant),
/// asserting on the way that all three printed expressions coincide.
pub fn lemma_c_partial(
    params: &SequenceParams,
    variant: LemmaCVariant,
    r: i64,
    n: u64,
) -> Result<BigInt> {
    let (scaled, difference, product) = lemma_c_forms(params, variant, r, n)?;
    assert_eq!(
        scaled, difference,
        "partial-sum difference form diverged at {params}, r = {r}, n = {n}"
    );
    assert_eq!(
        scaled, product,
        "partial-sum product form diverged at {params}, r = {r}, n = {n}"
    );
    let multiplier = match variant {
        LemmaCVariant::V1 => {
            BigInt::from(params.delta()) * eval_pair(params, 2)?.u
        }
        LemmaCVariant::V2 => eval_pair(params, 2)?.u,
        LemmaCVariant::V3 | LemmaCVariant::V4 => eval_pair(params, 2)?.v,
    };
    exact_div(scaled, &multiplier, "partial sum unscaling")
}

/// Both equalities relating shifted sums to a single product:
///
/// ```text
/// S_n^(s,s)(U) - q^{s-r} S_n^(r,r)(U)
///     = [S_n^(s,s)(V) - q^{s-r} S_n^(r,r)(V)] / delta
///     = a_{n+1} U_{s-r} U_{2n+r+s}
///
/// S_n^(s,s+t)(V) + delta q^{s-r} S_n^(r,r+t)(U) = a_{n+1} V_{s-r} V_{2n+r+s+t}
/// ```
///
/// The trailing index of the first product is `2n + r + s`, with no `t`
/// contribution: its left-hand sides do not involve `t`, and the
/// `t`-shifted variant is checked (and falsified) in tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corollary2Report {
    pub u_difference: BigInt,
    pub v_difference_over_delta: BigInt,
    pub first_product: BigInt,
    pub first_holds: bool,
    pub mixed_lhs: BigInt,
    pub mixed_rhs: BigInt,
    pub second_holds: bool,
}

impl Corollary2Report {
    pub fn both_hold(&self) -> bool {
        self.first_holds && self.second_holds
    }
}

pub fn corollary2_check(
    params: &SequenceParams,
    r: i64,
    s: i64,
    t: i64,
    n: u64,
) -> Result<Corollary2Report> {
    params.require_unit_q()?;
    let ni = n as i64;
    let delta = BigInt::from(params.delta());
    let q_sr = params.unit_q_pow(s - r);
    let a = derived_closed(params, DerivedKind::A, ni + 1)?;

    let sum = |kind, pair, r, s| -> Result<BigInt> {
        Ok(sum_naive(params, &SumQuery::new(kind, pair, r, s, n))?.value)
    };

    let u_difference =
        sum(SumKind::S, SumPair::UU, s, s)? - q_sr * sum(SumKind::S, SumPair::UU, r, r)?;
    let v_numer = sum(SumKind::S, SumPair::VV, s, s)? - q_sr * sum(SumKind::S, SumPair::VV, r, r)?;
    let v_difference_over_delta = exact_div(v_numer, &delta, "scaled V difference")?;
    let first_product =
        &a * eval_pair(params, s - r)?.u * eval_pair(params, 2 * ni + r + s)?.u;
    let first_holds = u_difference == v_difference_over_delta && u_difference == first_product;

    let mixed_lhs = sum(SumKind::S, SumPair::VV, s, s + t)?
        + &delta * q_sr * sum(SumKind::S, SumPair::UU, r, r + t)?;
    let mixed_rhs = a * eval_pair(params, s - r)?.v * eval_pair(params, 2 * ni + r + s + t)?.v;
    let second_holds = mixed_lhs == mixed_rhs;

    Ok(Corollary2Report {
        u_difference,
        v_difference_over_delta,
        first_product,
        first_holds,
        mixed_lhs,
        mixed_rhs,
        second_holds,
    })
}
