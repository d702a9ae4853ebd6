//! Exact evaluation of `U_n` and `V_n`.
//!
//! Two independent paths are exposed:
//!
//! - [`eval_pair`]: O(log |n|) big-integer operations via doubling steps,
//! - [`eval_naive`]: O(|n|) iteration of the defining recurrence.
//!
//! Both return identical values everywhere; the naive path exists so it can
//! serve as the oracle for the fast one. Negative indices are defined only
//! for `q = +/-1`, via the reflections `U_{-n} = -q^n U_n` and
//! `V_{-n} = q^n V_n` (with unit `q`, `q^{-n} = q^n`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::SequenceParams;

/// The exact pair `(U_n, V_n)` at one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePoint {
    pub index: i64,
    pub u: BigInt,
    pub v: BigInt,
}

impl SequencePoint {
    /// `V_n^2 - delta * U_n^2`, which always equals `4 q^n`.
    pub fn pell_form(&self, params: &SequenceParams) -> BigInt {
        &self.v * &self.v - params.delta() * (&self.u * &self.u)
    }
}

/// `q^e` as an exact integer. Negative exponents require unit `q`.
pub(crate) fn q_pow(params: &SequenceParams, exponent: i64) -> Result<BigInt> {
    if params.unit_q() {
        return Ok(BigInt::from(params.unit_q_pow(exponent)));
    }
    if exponent < 0 {
        return Err(Error::DomainViolation(format!(
            "q^{exponent} is not an integer for q = {}",
            params.q()
        )));
    }
    Ok(BigInt::from(params.q()).pow(exponent as u32))
}

/// Divide `numerator` by `denominator`, insisting on a zero remainder.
pub(crate) fn exact_div(
    numerator: BigInt,
    denominator: &BigInt,
    context: &'static str,
) -> Result<BigInt> {
    debug_assert!(!denominator.is_zero());
    let (quot, rem) = numerator.div_rem(denominator);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(Error::InexactDivision {
            context,
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        })
    }
}

fn check_index(params: &SequenceParams, n: i64) -> Result<()> {
    if n < 0 && !params.unit_q() {
        return Err(Error::NegativeIndexUnsupported {
            q: params.q(),
            index: n,
        });
    }
    Ok(())
}

/// Evaluate `(U_n, V_n)` in O(log |n|) big-integer operations.
pub fn eval_pair(params: &SequenceParams, n: i64) -> Result<SequencePoint> {
    eval_pair_counted(params, n).map(|(point, _)| point)
}

/// Like [`eval_pair`], but also reports how many doubling steps were taken.
///
/// The step count is exactly the bit length of `|n|`, which tests assert to
/// pin the logarithmic cost.
pub fn eval_pair_counted(params: &SequenceParams, n: i64) -> Result<(SequencePoint, u32)> {
    check_index(params, n)?;
    let magnitude = n.unsigned_abs();
    let (u, v, steps) = doubling(params, magnitude);
    let point = if n < 0 {
        reflect(params, n, u, v)
    } else {
        SequencePoint { index: n, u, v }
    };
    Ok((point, steps))
}

/// One doubling pass over the bits of `n`, most significant first.
///
/// The state carries `(U_k, V_k, U_{k+1}, V_{k+1}, q^k)` for the prefix `k`
/// of `n` consumed so far, advanced with
///
/// - `U_{2k}   = U_k V_k`
/// - `V_{2k}   = V_k^2 - 2 q^k`
/// - `U_{2k+1} = U_{k+1} V_k - q^k`
/// - `V_{2k+1} = V_{k+1} V_k - p q^k`
///
/// (the `m = k` and `m = k + 1` instances of the index-addition rules
/// `U_a V_b = U_{a+b} + q^b U_{a-b}` and `V_a V_b = V_{a+b} + q^b V_{a-b}`).
fn doubling(params: &SequenceParams, n: u64) -> (BigInt, BigInt, u32) {
    let p = params.p();
    let q = params.q();

    // (U_0, V_0, U_1, V_1, q^0)
    let mut uk = BigInt::zero();
    let mut vk = BigInt::from(2);
    let mut uk1 = BigInt::one();
    let mut vk1 = BigInt::from(p);
    let mut qk = BigInt::one();

    if n == 0 {
        return (uk, vk, 0);
    }

    let bits = 64 - n.leading_zeros();
    for shift in (0..bits).rev() {
        let bit = (n >> shift) & 1;

        let u_even = &uk * &vk;
        let v_even = &vk * &vk - 2 * &qk;
        let u_odd = &uk1 * &vk - &qk;
        let v_odd = &vk1 * &vk - p * &qk;

        if bit == 0 {
            uk = u_even;
            vk = v_even;
            uk1 = u_odd;
            vk1 = v_odd;
            qk = &qk * &qk;
        } else {
            let u_next = &uk1 * &vk1;
            let v_next = &vk1 * &vk1 - 2 * q * &qk;
            uk = u_odd;
            vk = v_odd;
            uk1 = u_next;
            vk1 = v_next;
            qk = &qk * &qk * q;
        }
    }

    (uk, vk, bits)
}

fn reflect(params: &SequenceParams, n: i64, u_abs: BigInt, v_abs: BigInt) -> SequencePoint {
    // U_{-m} = -q^m U_m, V_{-m} = q^m V_m for unit q.
    let sign = params.unit_q_pow(n);
    SequencePoint {
        index: n,
        u: -sign * u_abs,
        v: sign * v_abs,
    }
}

/// Evaluate `(U_n, V_n)` by iterating the recurrence; the oracle path.
pub fn eval_naive(params: &SequenceParams, n: i64) -> Result<SequencePoint> {
    check_index(params, n)?;
    let mut iter = SequenceIter::new(params);
    let point = iter
        .nth(n.unsigned_abs() as usize)
        .expect("iterator is infinite");
    if n < 0 {
        Ok(reflect(params, n, point.u, point.v))
    } else {
        Ok(point)
    }
}

/// Infinite iterator over consecutive `(U_n, V_n)` points, starting at
/// index 0 and stepping the recurrence once per item.
#[derive(Debug, Clone)]
pub struct SequenceIter {
    p: i64,
    q: i64,
    index: i64,
    // (U_{index}, V_{index}) and (U_{index+1}, V_{index+1})
    u: BigInt,
    v: BigInt,
    u_next: BigInt,
    v_next: BigInt,
}

impl SequenceIter {
    pub fn new(params: &SequenceParams) -> Self {
        SequenceIter {
            p: params.p(),
            q: params.q(),
            index: 0,
            u: BigInt::zero(),
            v: BigInt::from(2),
            u_next: BigInt::one(),
            v_next: BigInt::from(params.p()),
        }
    }
}

impl Iterator for SequenceIter {
    type Item = SequencePoint;

    fn next(&mut self) -> Option<SequencePoint> {
        let point = SequencePoint {
            index: self.index,
            u: self.u.clone(),
            v: self.v.clone(),
        };
        let u_step = self.p * &self.u_next - self.q * &self.u;
        let v_step = self.p * &self.v_next - self.q * &self.v;
        self.u = std::mem::replace(&mut self.u_next, u_step);
        self.v = std::mem::replace(&mut self.v_next, v_step);
        self.index += 1;
        Some(point)
    }
}

/// Rolling evaluation of a single component (`U` or `V`) along consecutive
/// indices, seeded anywhere the parameters allow. Used by the sum engine to
/// walk `X_{r}, X_{r+1}, X_{r+2}, ...` without re-running the doubling path
/// per term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Component {
    U,
    V,
}

#[derive(Debug, Clone)]
pub(crate) struct Cursor {
    p: i64,
    q: i64,
    prev: BigInt,
    cur: BigInt,
}

impl Cursor {
    /// Position a cursor so that [`Cursor::value`] returns `X_start`.
    pub(crate) fn seek(params: &SequenceParams, component: Component, start: i64) -> Result<Self> {
        let pick = |point: SequencePoint| match component {
            Component::U => point.u,
            Component::V => point.v,
        };
        let prev = pick(eval_pair(params, start - 1)?);
        let cur = pick(eval_pair(params, start)?);
        Ok(Cursor {
            p: params.p(),
            q: params.q(),
            prev,
            cur,
        })
    }

    pub(crate) fn value(&self) -> &BigInt {
        &self.cur
    }

    pub(crate) fn advance(&mut self, steps: u32) {
        for _ in 0..steps {
            let next = self.p * &self.cur - self.q * &self.prev;
            self.prev = std::mem::replace(&mut self.cur, next);
        }
    }
}
