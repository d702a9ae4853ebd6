//! Correction sequences: closed-form offsets that turn a product expression
//! into the exact value of an alternating sum.
//!
//! With `m = floor(index / 2)`:
//!
//! ```text
//! (delta_{2m}, delta_{2m+1}) = (-q V_{2m+1}^2,      -p q delta U_{4m+4})
//! (theta_{2m}, theta_{2m+1}) = (-2q (1 + d_m),      -p^2 q delta c_m)
//! (xi_{2m},    xi_{2m+1})    = (-p q (1 + d_m),     -p delta c_m)
//! ```
//!
//! `lambda` is query-shaped rather than index-shaped: given `(r, s, t)`,
//! `lambda_n = -q^{r-s} delta S_n^(r,r+t)(U)`.

use num_bigint::BigInt;

use crate::derived::{derived_closed, DerivedKind};
use crate::error::{Error, Result};
use crate::params::SequenceParams;
use crate::sequences::eval_pair;
use crate::sums::{sum_theorem1, SumKind, SumPair, SumQuery};

/// Selector for the four correction sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectionKind {
    Delta,
    Theta,
    Xi,
    Lambda,
}

/// The `(r, s, t)` context `lambda` needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaContext {
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

/// Evaluate one correction term.
///
/// `delta`, `theta` and `xi` take `index >= 0` and ignore `context`;
/// `lambda` takes `index = n >= 0` and requires `context`.
pub fn eval_correction(
    params: &SequenceParams,
    kind: CorrectionKind,
    index: i64,
    context: Option<LambdaContext>,
) -> Result<BigInt> {
    params.require_unit_q()?;
    if index < 0 {
        return Err(Error::DomainViolation(format!(
            "correction sequences are defined for indices >= 0 (got {index})"
        )));
    }
    let p = BigInt::from(params.p());
    let q = params.q();
    let delta = params.delta();
    let m = index / 2;
    let even = index % 2 == 0;

    match kind {
        CorrectionKind::Delta => {
            if even {
                let v = eval_pair(params, 2 * m + 1)?.v;
                Ok(-q * &v * &v)
            } else {
                Ok(-&p * q * delta * eval_pair(params, 4 * m + 4)?.u)
            }
        }
        CorrectionKind::Theta => {
            if even {
                let d = derived_closed(params, DerivedKind::D, m)?;
                Ok(-2 * q * (1 + d))
            } else {
                let c = derived_closed(params, DerivedKind::C, m)?;
                Ok(-&p * &p * q * delta * c)
            }
        }
        CorrectionKind::Xi => {
            if even {
                let d = derived_closed(params, DerivedKind::D, m)?;
                Ok(-&p * q * (1 + d))
            } else {
                let c = derived_closed(params, DerivedKind::C, m)?;
                Ok(-&p * delta * c)
            }
        }
        CorrectionKind::Lambda => {
            let ctx = context.ok_or(Error::MissingContext)?;
            let sum = sum_theorem1(
                params,
                &SumQuery::new(SumKind::S, SumPair::UU, ctx.r, ctx.r + ctx.t, index as u64),
            )?;
            Ok(-params.unit_q_pow(ctx.r - ctx.s) * delta * sum.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_params;
    use crate::sums::sum_naive;

    fn fib() -> SequenceParams {
        validate_params(1, -1).unwrap()
    }

    #[test]
    fn spot_values() {
        let corr = |kind, index| {
            i64::try_from(&eval_correction(&fib(), kind, index, None).unwrap()).unwrap()
        };
        assert_eq!(corr(CorrectionKind::Delta, 0), 1);
        assert_eq!(corr(CorrectionKind::Theta, 0), 4);
        assert_eq!(corr(CorrectionKind::Xi, 1), -5);
        assert_eq!(corr(CorrectionKind::Delta, 1), 15);
        assert_eq!(corr(CorrectionKind::Xi, 0), 2);
    }

    #[test]
    fn lambda_needs_context() {
        assert_eq!(
            eval_correction(&fib(), CorrectionKind::Lambda, 2, None),
            Err(Error::MissingContext)
        );
    }

    #[test]
    fn negative_index_rejected() {
        assert!(matches!(
            eval_correction(&fib(), CorrectionKind::Delta, -1, None),
            Err(Error::DomainViolation(_))
        ));
    }

    /// lambda has a second closed form,
    /// `-p^{-1} q^{s-r} (U_{4n+2r+t+2} - U_{2r+t-2}) + (n+1) q^s V_t`,
    /// and both must match the direct `-q^{r-s} delta S` evaluation.
    #[test]
    fn lambda_closed_form_agrees() {
        for (p, q) in [(1, -1), (2, -1), (-3, 1)] {
            let params = validate_params(p, q).unwrap();
            for r in -3..=3 {
                for s in -3..=3 {
                    for t in -3..=3 {
                        for n in 0..=5i64 {
                            let ctx = LambdaContext { r, s, t };
                            let lambda = eval_correction(
                                &params,
                                CorrectionKind::Lambda,
                                n,
                                Some(ctx),
                            )
                            .unwrap();

                            // Direct expression, as one exact quotient by p.
                            let q_sr = params.unit_q_pow(s - r);
                            let q_s = params.unit_q_pow(s);
                            let numer = -q_sr
                                * (eval_pair(&params, 4 * n + 2 * r + t + 2).unwrap().u
                                    - eval_pair(&params, 2 * r + t - 2).unwrap().u)
                                + BigInt::from(n + 1)
                                    * q_s
                                    * params.p()
                                    * eval_pair(&params, t).unwrap().v;
                            let direct = crate::sequences::exact_div(
                                numer,
                                &BigInt::from(params.p()),
                                "lambda closed form",
                            )
                            .unwrap();
                            assert_eq!(lambda, direct, "{params} r={r} s={s} t={t} n={n}");

                            // And against the naive sum route.
                            let sum = sum_naive(
                                &params,
                                &SumQuery::new(SumKind::S, SumPair::UU, r, r + t, n as u64),
                            )
                            .unwrap();
                            assert_eq!(
                                lambda,
                                -params.unit_q_pow(r - s) * params.delta() * sum.value
                            );
                        }
                    }
                }
            }
        }
    }
}
