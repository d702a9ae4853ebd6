//! The identity catalog: every bilinear relation the crate can audit,
//! evaluated exactly on both sides for a concrete variable binding.
//!
//! Entries carry a status:
//!
//! - `AssumedTrue` relations are load-bearing; a counterexample anywhere is a
//!   correctness alarm that aborts a catalog run.
//! - `Audit` relations are checked, not trusted. Several printed variants in
//!   circulation are wrong, and the sweep records a definitive verdict with
//!   counterexamples instead of assuming them. Audit entries never abort a
//!   run.
//!
//! Three audit entries exist specifically to document transcription defects
//! in classical displays of these relations:
//!
//! - `T94-printed`: the odd branch of `T94` with the `U`/`V` factors
//!   transposed (`... U_{2k+2m} V_{2k+2m+1}`). Falsified; the catalog's `T94`
//!   carries the corrected factors, which are forced by `H94A`.
//! - `R-e-printed`: the `e` recurrence with constant `p^3 (p^2 - 4)`.
//!   Falsified for `q = -1` (it agrees with the corrected `p^3 delta` only
//!   when `q = 1`).
//! - `H92-printed`: `V_{4k+4m} = delta U_{2k+2m+1} V_{2k+2m-1} + q V_2`.
//!   Falsified; `H92-corrected` replaces the stray `V` with `U_{2k+2m-1}`.

use num_bigint::BigInt;

use crate::corrections::{eval_correction, CorrectionKind, LambdaContext};
use crate::derived::{derived_closed, DerivedKind};
use crate::error::{Error, Result};
use crate::params::SequenceParams;
use crate::sequences::{eval_pair, q_pow};
use crate::sums::{lemma_c_forms, sum_naive, LemmaCVariant, SumKind, SumPair, SumQuery};

/// Stable identifier of one catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum IdentityId {
    L1_1,
    L1_2,
    L1_3,
    L1_4,
    L1_5,
    L1_6,
    L1_7,
    L1_8,
    L1_9,
    L1_10,
    L2_1,
    L2_2,
    L2_3,
    L2_4,
    T91,
    T92,
    T93,
    T94,
    RDelta,
    RThetaOdd,
    RThetaEven,
    T5_71,
    T5_81,
    T5_91,
    T5_101,
    TProd,
    PellStar,
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    T94Printed,
    REPrinted,
    RECorrected,
    H92Printed,
    H92Corrected,
    H93A,
    H93B,
    H94A,
    H94B,
}

/// Whether a relation is trusted (alarm on counterexample) or audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    AssumedTrue,
    Audit,
}

/// Free variables an identity may bind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    N,
    M,
    H,
    K,
    R,
    S,
    T,
}

impl Var {
    pub fn name(&self) -> &'static str {
        match self {
            Var::N => "n",
            Var::M => "m",
            Var::H => "h",
            Var::K => "k",
            Var::R => "r",
            Var::S => "s",
            Var::T => "t",
        }
    }
}

/// How a variable ranges in a sweep: signed shift index, or a count
/// constrained to small nonnegative values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarClass {
    Index,
    Count,
}

/// A concrete assignment of all variables (unused ones are ignored).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Binding {
    pub n: i64,
    pub m: i64,
    pub h: i64,
    pub k: i64,
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

impl Binding {
    pub fn get(&self, var: Var) -> i64 {
        match var {
            Var::N => self.n,
            Var::M => self.m,
            Var::H => self.h,
            Var::K => self.k,
            Var::R => self.r,
            Var::S => self.s,
            Var::T => self.t,
        }
    }

    pub fn set(&mut self, var: Var, value: i64) {
        match var {
            Var::N => self.n = value,
            Var::M => self.m = value,
            Var::H => self.h = value,
            Var::K => self.k = value,
            Var::R => self.r = value,
            Var::S => self.s = value,
            Var::T => self.t = value,
        }
    }
}

/// Catalog metadata for one identity.
#[derive(Debug, Clone, Copy)]
pub struct IdentityInfo {
    pub id: IdentityId,
    /// The relation itself, written out.
    pub statement: &'static str,
    pub signature: &'static [(Var, VarClass)],
    pub constraints: &'static str,
    pub status: Status,
}

/// Result of evaluating one identity at one binding: the list of (lhs, rhs)
/// pairs that must all be equal (chains contribute several pairs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub pairs: Vec<(BigInt, BigInt)>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(|(lhs, rhs)| lhs == rhs)
    }

    /// The decisive pair: the first unequal one, or the first overall.
    pub fn decisive(&self) -> &(BigInt, BigInt) {
        self.pairs
            .iter()
            .find(|(lhs, rhs)| lhs != rhs)
            .unwrap_or(&self.pairs[0])
    }
}

const INDEX: VarClass = VarClass::Index;
const COUNT: VarClass = VarClass::Count;

macro_rules! sig {
    ($(($var:ident, $class:ident)),* $(,)?) => {
        &[$((Var::$var, $class)),*]
    };
}

static CATALOG: &[IdentityInfo] = &[
    IdentityInfo {
        id: IdentityId::L1_1,
        statement: "U_{-n} = -q^{-n} U_n",
        signature: sig![(N, INDEX)],
        constraints: "q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L1_2,
        statement: "V_{-n} = q^{-n} V_n",
        signature: sig![(N, INDEX)],
        constraints: "q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L1_3,
        statement: "delta U_n U_m = V_{n+m} - q^m V_{n-m}",
        signature: sig![(N, INDEX), (M, INDEX)],
        constraints: "indices and q-exponents must stay integral (any q if nonnegative)",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L1_4,
        statement: "V_n V_m = V_{n+m} + q^m V_{n-m}",
        signature: sig![(N, INDEX), (M, INDEX)],
        constraints: "indices and q-exponents must stay integral (any q if nonnegative)",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L1_5,
        statement: "U_n V_m = U_{n+m} + q^m U_{n-m}",
        signature: sig![(N, INDEX), (M, INDEX)],
        constraints: "indices and q-exponents must stay integral (any q if nonnegative)",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L1_6,
        statement: "V_n U_m = U_{n+m} - q^m U_{n-m}",
        signature: sig![(N, INDEX), (M, INDEX)],
        constraints: "indices and q-exponents must stay integral (any q if nonnegative)",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L1_7,
        statement: "U_n U_{m+h} - U_{n+h} U_m = q^m U_h U_{n-m}",
        signature: sig![(N, INDEX), (M, INDEX), (H, INDEX)],
        constraints: "indices and q-exponents must stay integral (any q if nonnegative)",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L1_8,
        statement: "V_n V_{m+h} - V_{n+h} V_m = -q^m delta U_h U_{n-m}",
        signature: sig![(N, INDEX), (M, INDEX), (H, INDEX)],
        constraints: "indices and q-exponents must stay integral (any q if nonnegative)",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L1_9,
        statement: "V_n V_{m+h} - delta U_{n+h} U_m = q^m V_h V_{n-m}",
        signature: sig![(N, INDEX), (M, INDEX), (H, INDEX)],
        constraints: "indices and q-exponents must stay integral (any q if nonnegative)",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L1_10,
        statement: "U_n V_{m+h} - U_{n+h} V_m = -q^m U_h V_{n-m}",
        signature: sig![(N, INDEX), (M, INDEX), (H, INDEX)],
        constraints: "indices and q-exponents must stay integral (any q if nonnegative)",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L2_1,
        statement: "delta U_2 sum_{i<=n} U_{r+4i} = V_{4n+r+2} - V_{r-2} = delta U_{2n+r} U_{2n+2}",
        signature: sig![(R, INDEX), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L2_2,
        statement: "U_2 sum_{i<=n} V_{r+4i} = U_{4n+r+2} - U_{r-2} = V_{2n+r} U_{2n+2}",
        signature: sig![(R, INDEX), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L2_3,
        statement: "V_2 sum_{i<=n} (-1)^i U_{r+4i} = (-1)^n U_{4n+r+2} + U_{r-2} = U_{2n+r} V_{2n+2} (n even) | -V_{2n+r} U_{2n+2} (n odd)",
        signature: sig![(R, INDEX), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::L2_4,
        statement: "V_2 sum_{i<=n} (-1)^i V_{r+4i} = (-1)^n V_{4n+r+2} + V_{r-2} = V_{2n+r} V_{2n+2} (n even) | -delta U_{2n+r} U_{2n+2} (n odd)",
        signature: sig![(R, INDEX), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::T91,
        statement: "-p^2 q + V_{2k}^2 = delta U_{2k-1} U_{2k+1}; -q V_2^2 + V_{2k-1}^2 = delta U_{2k-3} U_{2k+1}",
        signature: sig![(K, COUNT)],
        constraints: "q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::T92,
        statement: "delta_n + A_n^(2k,2k)(V) = delta d_m U_{2k+2m+1} U_{2k+2m-1} (n = 2m) | -p delta c_m U_{2k+2m+3} V_{2k+2m-1} (n = 2m+1)",
        signature: sig![(K, COUNT), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::T93,
        statement: "theta_n + A_n^(2k-1,2k-1)(V) = delta d_m U_{2k+2m-1}^2 (n = 2m) | -p delta c_m U_{2k+2m+1} V_{2k+2m-1} (n = 2m+1)",
        signature: sig![(K, COUNT), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::T94,
        statement: "xi_n + A_n^(2k-1,2k)(V) = delta d_m U_{2k+2m-1} U_{2k+2m} (n = 2m) | -p delta c_m V_{2k+2m} U_{2k+2m+1} (n = 2m+1)",
        signature: sig![(K, COUNT), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::RDelta,
        statement: "delta_m = delta_{m-2} - p^2 q delta V_{2m} (m odd)",
        signature: sig![(M, COUNT)],
        constraints: "m odd, m >= 3; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::RThetaOdd,
        statement: "theta_m = theta_{m-2} - p^2 q delta d_{(m-1)/2} (m odd)",
        signature: sig![(M, COUNT)],
        constraints: "m odd, m >= 3; q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::RThetaEven,
        statement: "theta_m = -theta_{m-2} - 2q V_{m/2}^2 (m even)",
        signature: sig![(M, COUNT)],
        constraints: "m even, m >= 2; q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::T5_71,
        statement: "S_n^(s,s+t)(V) = lambda_n + a_{n+1} V_{s-r} V_{2n+r+s+t}, lambda_n = -q^{r-s} delta S_n^(r,r+t)(U)",
        signature: sig![(R, INDEX), (S, INDEX), (T, INDEX), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::T5_81,
        statement: "A_n^(2k,2k)(V) = d_m V_{2k+2m}^2 - 2 p^2 delta b_{m-1} (n = 2m) | p^2 delta c_m (1 - a_{k+m+1} V_{2k+2m}) (n = 2m+1)",
        signature: sig![(K, COUNT), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::T5_91,
        statement: "A_n^(2k+1,2k+1)(V) = -delta U_{2m+1}^2 + d_m V_{2k+2m} V_{2k+2m+2} (n = 2m) | -p^2 delta c_m a_{k+m+1} V_{2k+2m+2} (n = 2m+1)",
        signature: sig![(K, COUNT), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::T5_101,
        statement: "A_n^(2k,2k+1)(V) = d_m V_{2k+2m} V_{2k+2m+1} - e_m (n = 2m) | -p delta c_m (U_{2k+2m+3} V_{2k+2m} - p^2 + q) (n = 2m+1)",
        signature: sig![(K, COUNT), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::TProd,
        statement: "V_n V_m = V_{n+r} V_{m-r} + q^n delta U_r U_{m-n-r} = delta U_{n+s} U_{m-s} + q^{m-s} V_s V_{n-m+s}",
        signature: sig![(N, INDEX), (M, INDEX), (R, INDEX), (S, INDEX)],
        constraints: "q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::PellStar,
        statement: "Q_{2k} Q_{2k+1} = Q_{2k+3} Q_{2k-2} - 80 = 8 P_{2k+2} P_{2k-1} - 12 = 2 (P*_{2k+2} P*_{2k-1} - 6), P*_n = 2 P_n",
        signature: sig![(K, COUNT)],
        constraints: "(p, q) = (2, -1) only",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::H1,
        statement: "U_{4k+4m+2} = U_{2k+2m+3} V_{2k+2m-1} - q U_4",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::H2,
        statement: "V_{4m+2} + 2q = V_{2m+1}^2",
        signature: sig![(M, COUNT)],
        constraints: "q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::H3,
        statement: "V_{4k+4m+t} = V_{2k+2m+t} V_{2k+2m} - V_t",
        signature: sig![(K, COUNT), (M, COUNT), (T, INDEX)],
        constraints: "q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::H4,
        statement: "U_{4k+4m+2} = U_{2k+2m+2} V_{2k+2m} - U_2 (t = 0 instance of the shift template)",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::H5,
        statement: "U_{4k+4m+3} = U_{2k+2m+3} V_{2k+2m} - U_3 (t = 1 instance of the shift template)",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::H6,
        statement: "U_{4k+4m+4} = U_{2k+2m+2} V_{2k+2m+2} - U_0 (t = 2 instance of the shift template)",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::T94Printed,
        statement: "T94 with the odd branch transposed: xi_n + A_n^(2k-1,2k)(V) = ... | -p delta c_m U_{2k+2m} V_{2k+2m+1} (n = 2m+1)",
        signature: sig![(K, COUNT), (N, COUNT)],
        constraints: "n >= 0; q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::REPrinted,
        statement: "e_m = V_4 e_{m-1} - e_{m-2} + p^3 (p^2 - 4)",
        signature: sig![(M, COUNT)],
        constraints: "m >= 1; q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::RECorrected,
        statement: "e_m = V_4 e_{m-1} - e_{m-2} + p^3 delta",
        signature: sig![(M, COUNT)],
        constraints: "m >= 1; q = +/-1",
        status: Status::AssumedTrue,
    },
    IdentityInfo {
        id: IdentityId::H92Printed,
        statement: "V_{4k+4m} = delta U_{2k+2m+1} V_{2k+2m-1} + q V_2",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::H92Corrected,
        statement: "V_{4k+4m} = delta U_{2k+2m+1} U_{2k+2m-1} + q V_2",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::H93A,
        statement: "U_{4k+4m} = U_{2k+2m+1} V_{2k+2m-1} - q U_2",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::H93B,
        statement: "V_{4k+4m-2} = delta U_{2k+2m-1}^2 + 2q",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::H94A,
        statement: "U_{4k+4m+1} = U_{2k+2m} V_{2k+2m+1} + 1",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::Audit,
    },
    IdentityInfo {
        id: IdentityId::H94B,
        statement: "V_{4k+4m-1} = delta U_{2k+2m-1} U_{2k+2m} + p q",
        signature: sig![(K, COUNT), (M, COUNT)],
        constraints: "q = +/-1",
        status: Status::Audit,
    },
];

/// The full catalog, in stable order.
pub fn catalog() -> &'static [IdentityInfo] {
    CATALOG
}

impl IdentityId {
    pub fn info(&self) -> &'static IdentityInfo {
        CATALOG
            .iter()
            .find(|info| info.id == *self)
            .expect("every id is cataloged")
    }

    pub fn status(&self) -> Status {
        self.info().status
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::L1_1 => "L1.1",
            IdentityId::L1_2 => "L1.2",
            IdentityId::L1_3 => "L1.3",
            IdentityId::L1_4 => "L1.4",
            IdentityId::L1_5 => "L1.5",
            IdentityId::L1_6 => "L1.6",
            IdentityId::L1_7 => "L1.7",
            IdentityId::L1_8 => "L1.8",
            IdentityId::L1_9 => "L1.9",
            IdentityId::L1_10 => "L1.10",
            IdentityId::L2_1 => "L2.1",
            IdentityId::L2_2 => "L2.2",
            IdentityId::L2_3 => "L2.3",
            IdentityId::L2_4 => "L2.4",
            IdentityId::T91 => "T91",
            IdentityId::T92 => "T92",
            IdentityId::T93 => "T93",
            IdentityId::T94 => "T94",
            IdentityId::RDelta => "R-delta",
            IdentityId::RThetaOdd => "R-theta-odd",
            IdentityId::RThetaEven => "R-theta-even",
            IdentityId::T5_71 => "T5.71",
            IdentityId::T5_81 => "T5.81",
            IdentityId::T5_91 => "T5.91",
            IdentityId::T5_101 => "T5.101",
            IdentityId::TProd => "TPROD",
            IdentityId::PellStar => "PELLSTAR",
            IdentityId::H1 => "H1",
            IdentityId::H2 => "H2",
            IdentityId::H3 => "H3",
            IdentityId::H4 => "H4",
            IdentityId::H5 => "H5",
            IdentityId::H6 => "H6",
            IdentityId::T94Printed => "T94-printed",
            IdentityId::REPrinted => "R-e-printed",
            IdentityId::RECorrected => "R-e-corrected",
            IdentityId::H92Printed => "H92-printed",
            IdentityId::H92Corrected => "H92-corrected",
            IdentityId::H93A => "H93A",
            IdentityId::H93B => "H93B",
            IdentityId::H94A => "H94A",
            IdentityId::H94B => "H94B",
        }
    }

    pub fn from_str_id(s: &str) -> Option<IdentityId> {
        CATALOG.iter().map(|info| info.id).find(|id| id.as_str() == s)
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

struct Ctx<'a> {
    params: &'a SequenceParams,
}

impl<'a> Ctx<'a> {
    fn u(&self, i: i64) -> Result<BigInt> {
        Ok(eval_pair(self.params, i)?.u)
    }

    fn v(&self, i: i64) -> Result<BigInt> {
        Ok(eval_pair(self.params, i)?.v)
    }

    fn qp(&self, e: i64) -> Result<BigInt> {
        q_pow(self.params, e)
    }

    fn p(&self) -> i64 {
        self.params.p()
    }

    fn q(&self) -> i64 {
        self.params.q()
    }

    fn delta(&self) -> i64 {
        self.params.delta()
    }

    fn derived(&self, kind: DerivedKind, n: i64) -> Result<BigInt> {
        derived_closed(self.params, kind, n)
    }

    fn alt_vv(&self, r: i64, s: i64, n: i64) -> Result<BigInt> {
        let query = SumQuery::new(SumKind::A, SumPair::VV, r, s, count(n, "n")?);
        Ok(sum_naive(self.params, &query)?.value)
    }

    fn plain_vv(&self, r: i64, s: i64, n: i64) -> Result<BigInt> {
        let query = SumQuery::new(SumKind::S, SumPair::VV, r, s, count(n, "n")?);
        Ok(sum_naive(self.params, &query)?.value)
    }

    fn corr(&self, kind: CorrectionKind, index: i64) -> Result<BigInt> {
        eval_correction(self.params, kind, index, None)
    }
}

fn count(value: i64, what: &str) -> Result<u64> {
    u64::try_from(value)
        .map_err(|_| Error::DomainViolation(format!("{what} must be >= 0 (got {value})")))
}

fn require_odd_at_least(m: i64, min: i64) -> Result<()> {
    if m < min || m % 2 == 0 {
        return Err(Error::DomainViolation(format!(
            "index must be odd and >= {min} (got {m})"
        )));
    }
    Ok(())
}

fn require_even_at_least(m: i64, min: i64) -> Result<()> {
    if m < min || m % 2 != 0 {
        return Err(Error::DomainViolation(format!(
            "index must be even and >= {min} (got {m})"
        )));
    }
    Ok(())
}

/// Evaluate both sides of an identity at a concrete binding.
///
/// Returns `DomainViolation` (or an index/unit-q error) when the binding
/// falls outside the identity's domain; sweeps count those as skipped.
pub fn check_identity(
    id: IdentityId,
    params: &SequenceParams,
    binding: &Binding,
) -> Result<IdentityCheck> {
    // Everything except the pure index-addition rules leans on q = +/-1.
    let general_q_ok = matches!(
        id,
        IdentityId::L1_3
            | IdentityId::L1_4
            | IdentityId::L1_5
            | IdentityId::L1_6
            | IdentityId::L1_7
            | IdentityId::L1_8
            | IdentityId::L1_9
            | IdentityId::L1_10
    );
    if !general_q_ok {
        params.require_unit_q()?;
    }

    let ctx = Ctx { params };
    let b = *binding;
    let delta = ctx.delta();
    let p = ctx.p();
    let q = ctx.q();
    let pairs = match id {
        IdentityId::L1_1 => {
            vec![(ctx.u(-b.n)?, -(ctx.qp(-b.n)? * ctx.u(b.n)?))]
        }
        IdentityId::L1_2 => {
            vec![(ctx.v(-b.n)?, ctx.qp(-b.n)? * ctx.v(b.n)?)]
        }
        IdentityId::L1_3 => {
            vec![(
                delta * ctx.u(b.n)? * ctx.u(b.m)?,
                ctx.v(b.n + b.m)? - ctx.qp(b.m)? * ctx.v(b.n - b.m)?,
            )]
        }
        IdentityId::L1_4 => {
            vec![(
                ctx.v(b.n)? * ctx.v(b.m)?,
                ctx.v(b.n + b.m)? + ctx.qp(b.m)? * ctx.v(b.n - b.m)?,
            )]
        }
        IdentityId::L1_5 => {
            vec![(
                ctx.u(b.n)? * ctx.v(b.m)?,
                ctx.u(b.n + b.m)? + ctx.qp(b.m)? * ctx.u(b.n - b.m)?,
            )]
        }
        IdentityId::L1_6 => {
            vec![(
                ctx.v(b.n)? * ctx.u(b.m)?,
                ctx.u(b.n + b.m)? - ctx.qp(b.m)? * ctx.u(b.n - b.m)?,
            )]
        }
        IdentityId::L1_7 => {
            vec![(
                ctx.u(b.n)? * ctx.u(b.m + b.h)? - ctx.u(b.n + b.h)? * ctx.u(b.m)?,
                ctx.qp(b.m)? * ctx.u(b.h)? * ctx.u(b.n - b.m)?,
            )]
        }
        IdentityId::L1_8 => {
            vec![(
                ctx.v(b.n)? * ctx.v(b.m + b.h)? - ctx.v(b.n + b.h)? * ctx.v(b.m)?,
                -(ctx.qp(b.m)? * delta * ctx.u(b.h)? * ctx.u(b.n - b.m)?),
            )]
        }
        IdentityId::L1_9 => {
            vec![(
                ctx.v(b.n)? * ctx.v(b.m + b.h)? - delta * ctx.u(b.n + b.h)? * ctx.u(b.m)?,
                ctx.qp(b.m)? * ctx.v(b.h)? * ctx.v(b.n - b.m)?,
            )]
        }
        IdentityId::L1_10 => {
            vec![(
                ctx.u(b.n)? * ctx.v(b.m + b.h)? - ctx.u(b.n + b.h)? * ctx.v(b.m)?,
                -(ctx.qp(b.m)? * ctx.u(b.h)? * ctx.v(b.n - b.m)?),
            )]
        }
        IdentityId::L2_1 | IdentityId::L2_2 | IdentityId::L2_3 | IdentityId::L2_4 => {
            let variant = match id {
                IdentityId::L2_1 => LemmaCVariant::V1,
                IdentityId::L2_2 => LemmaCVariant::V2,
                IdentityId::L2_3 => LemmaCVariant::V3,
                _ => LemmaCVariant::V4,
            };
            let (scaled, difference, product) =
                lemma_c_forms(params, variant, b.r, count(b.n, "n")?)?;
            vec![(scaled, difference.clone()), (difference, product)]
        }
        IdentityId::T91 => {
            let k = b.k;
            let v2 = ctx.v(2)?;
            vec![
                (
                    -p * p * q + ctx.v(2 * k)?.pow(2),
                    delta * ctx.u(2 * k - 1)? * ctx.u(2 * k + 1)?,
                ),
                (
                    -q * &v2 * &v2 + ctx.v(2 * k - 1)?.pow(2),
                    delta * ctx.u(2 * k - 3)? * ctx.u(2 * k + 1)?,
                ),
            ]
        }
        IdentityId::T92 => {
            let (k, n) = (b.k, b.n);
            let m = count(n, "n")? as i64 / 2;
            let lhs = ctx.corr(CorrectionKind::Delta, n)? + ctx.alt_vv(2 * k, 2 * k, n)?;
            let rhs = if n % 2 == 0 {
                delta
                    * ctx.derived(DerivedKind::D, m)?
                    * ctx.u(2 * k + 2 * m + 1)?
                    * ctx.u(2 * k + 2 * m - 1)?
            } else {
                -p * delta
                    * ctx.derived(DerivedKind::C, m)?
                    * ctx.u(2 * k + 2 * m + 3)?
                    * ctx.v(2 * k + 2 * m - 1)?
            };
            vec![(lhs, rhs)]
        }
        IdentityId::T93 => {
            let (k, n) = (b.k, b.n);
            let m = count(n, "n")? as i64 / 2;
            let lhs = ctx.corr(CorrectionKind::Theta, n)? + ctx.alt_vv(2 * k - 1, 2 * k - 1, n)?;
            let rhs = if n % 2 == 0 {
                delta * ctx.derived(DerivedKind::D, m)? * ctx.u(2 * k + 2 * m - 1)?.pow(2)
            } else {
                -p * delta
                    * ctx.derived(DerivedKind::C, m)?
                    * ctx.u(2 * k + 2 * m + 1)?
                    * ctx.v(2 * k + 2 * m - 1)?
            };
            vec![(lhs, rhs)]
        }
        IdentityId::T94 | IdentityId::T94Printed => {
            let (k, n) = (b.k, b.n);
            let m = count(n, "n")? as i64 / 2;
            let lhs = ctx.corr(CorrectionKind::Xi, n)? + ctx.alt_vv(2 * k - 1, 2 * k, n)?;
            let rhs = if n % 2 == 0 {
                delta
                    * ctx.derived(DerivedKind::D, m)?
                    * ctx.u(2 * k + 2 * m - 1)?
                    * ctx.u(2 * k + 2 * m)?
            } else if id == IdentityId::T94 {
                -p * delta
                    * ctx.derived(DerivedKind::C, m)?
                    * ctx.v(2 * k + 2 * m)?
                    * ctx.u(2 * k + 2 * m + 1)?
            } else {
                // The transposed variant under audit.
                -p * delta
                    * ctx.derived(DerivedKind::C, m)?
                    * ctx.u(2 * k + 2 * m)?
                    * ctx.v(2 * k + 2 * m + 1)?
            };
            vec![(lhs, rhs)]
        }
        IdentityId::RDelta => {
            require_odd_at_least(b.m, 3)?;
            vec![(
                ctx.corr(CorrectionKind::Delta, b.m)?,
                ctx.corr(CorrectionKind::Delta, b.m - 2)? - p * p * q * delta * ctx.v(2 * b.m)?,
            )]
        }
        IdentityId::RThetaOdd => {
            require_odd_at_least(b.m, 3)?;
            vec![(
                ctx.corr(CorrectionKind::Theta, b.m)?,
                ctx.corr(CorrectionKind::Theta, b.m - 2)?
                    - p * p * q * delta * ctx.derived(DerivedKind::D, (b.m - 1) / 2)?,
            )]
        }
        IdentityId::RThetaEven => {
            require_even_at_least(b.m, 2)?;
            vec![(
                ctx.corr(CorrectionKind::Theta, b.m)?,
                -ctx.corr(CorrectionKind::Theta, b.m - 2)? - 2 * q * ctx.v(b.m / 2)?.pow(2),
            )]
        }
        IdentityId::T5_71 => {
            let (r, s, t, n) = (b.r, b.s, b.t, b.n);
            let lambda = eval_correction(
                params,
                CorrectionKind::Lambda,
                count(n, "n")? as i64,
                Some(LambdaContext { r, s, t }),
            )?;
            let lhs = ctx.plain_vv(s, s + t, n)?;
            let rhs = lambda
                + ctx.derived(DerivedKind::A, n + 1)?
                    * ctx.v(s - r)?
                    * ctx.v(2 * n + r + s + t)?;
            vec![(lhs, rhs)]
        }
        IdentityId::T5_81 => {
            let (k, n) = (b.k, b.n);
            let m = count(n, "n")? as i64 / 2;
            let lhs = ctx.alt_vv(2 * k, 2 * k, n)?;
            let rhs = if n % 2 == 0 {
                ctx.derived(DerivedKind::D, m)? * ctx.v(2 * k + 2 * m)?.pow(2)
                    - 2 * p * p * delta * ctx.derived(DerivedKind::B, m - 1)?
            } else {
                p * p
                    * delta
                    * ctx.derived(DerivedKind::C, m)?
                    * (1 - ctx.derived(DerivedKind::A, k + m + 1)? * ctx.v(2 * k + 2 * m)?)
            };
            vec![(lhs, rhs)]
        }
        IdentityId::T5_91 => {
            let (k, n) = (b.k, b.n);
            let m = count(n, "n")? as i64 / 2;
            let lhs = ctx.alt_vv(2 * k + 1, 2 * k + 1, n)?;
            let rhs = if n % 2 == 0 {
                -delta * ctx.u(2 * m + 1)?.pow(2)
                    + ctx.derived(DerivedKind::D, m)?
                        * ctx.v(2 * k + 2 * m)?
                        * ctx.v(2 * k + 2 * m + 2)?
            } else {
                -p * p
                    * delta
                    * ctx.derived(DerivedKind::C, m)?
                    * ctx.derived(DerivedKind::A, k + m + 1)?
                    * ctx.v(2 * k + 2 * m + 2)?
            };
            vec![(lhs, rhs)]
        }
        IdentityId::T5_101 => {
            let (k, n) = (b.k, b.n);
            let m = count(n, "n")? as i64 / 2;
            let lhs = ctx.alt_vv(2 * k, 2 * k + 1, n)?;
            let rhs = if n % 2 == 0 {
                ctx.derived(DerivedKind::D, m)? * ctx.v(2 * k + 2 * m)? * ctx.v(2 * k + 2 * m + 1)?
                    - ctx.derived(DerivedKind::E, m)?
            } else {
                -p * delta
                    * ctx.derived(DerivedKind::C, m)?
                    * (ctx.u(2 * k + 2 * m + 3)? * ctx.v(2 * k + 2 * m)? - p * p + q)
            };
            vec![(lhs, rhs)]
        }
        IdentityId::TProd => {
            let (n, m, r, s) = (b.n, b.m, b.r, b.s);
            let first = ctx.v(n)? * ctx.v(m)?;
            let second =
                ctx.v(n + r)? * ctx.v(m - r)? + ctx.qp(n)? * delta * ctx.u(r)? * ctx.u(m - n - r)?;
            let third = delta * ctx.u(n + s)? * ctx.u(m - s)?
                + ctx.qp(m - s)? * ctx.v(s)? * ctx.v(n - m + s)?;
            vec![(first, second.clone()), (second, third)]
        }
        IdentityId::PellStar => {
            if (p, q) != (2, -1) {
                return Err(Error::DomainViolation(format!(
                    "the Pell product chain is specific to (p, q) = (2, -1), got {params}"
                )));
            }
            let k = b.k;
            let pstar = |i: i64| -> Result<BigInt> { Ok(2 * ctx.u(i)?) };
            let first = ctx.v(2 * k)? * ctx.v(2 * k + 1)?;
            let second = ctx.v(2 * k + 3)? * ctx.v(2 * k - 2)? - BigInt::from(80);
            let third = 8i64 * ctx.u(2 * k + 2)? * ctx.u(2 * k - 1)? - BigInt::from(12);
            let fourth = 2i64 * (pstar(2 * k + 2)? * pstar(2 * k - 1)? - BigInt::from(6));
            vec![
                (first, second.clone()),
                (second, third.clone()),
                (third, fourth),
            ]
        }
        IdentityId::H1 => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.u(4 * k + 4 * m + 2)?,
                ctx.u(2 * k + 2 * m + 3)? * ctx.v(2 * k + 2 * m - 1)? - q * ctx.u(4)?,
            )]
        }
        IdentityId::H2 => {
            vec![(ctx.v(4 * b.m + 2)? + 2 * q, ctx.v(2 * b.m + 1)?.pow(2))]
        }
        IdentityId::H3 => {
            let (k, m, t) = (b.k, b.m, b.t);
            vec![(
                ctx.v(4 * k + 4 * m + t)?,
                ctx.v(2 * k + 2 * m + t)? * ctx.v(2 * k + 2 * m)? - ctx.v(t)?,
            )]
        }
        IdentityId::H4 => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.u(4 * k + 4 * m + 2)?,
                ctx.u(2 * k + 2 * m + 2)? * ctx.v(2 * k + 2 * m)? - ctx.u(2)?,
            )]
        }
        IdentityId::H5 => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.u(4 * k + 4 * m + 3)?,
                ctx.u(2 * k + 2 * m + 3)? * ctx.v(2 * k + 2 * m)? - ctx.u(3)?,
            )]
        }
        IdentityId::H6 => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.u(4 * k + 4 * m + 4)?,
                ctx.u(2 * k + 2 * m + 2)? * ctx.v(2 * k + 2 * m + 2)? - ctx.u(0)?,
            )]
        }
        IdentityId::REPrinted | IdentityId::RECorrected => {
            let m = b.m;
            if m < 1 {
                return Err(Error::DomainViolation(format!(
                    "the e recurrence starts at m = 1 (got {m})"
                )));
            }
            let constant = if id == IdentityId::RECorrected {
                BigInt::from(p).pow(3) * delta
            } else {
                BigInt::from(p).pow(3) * (p * p - 4)
            };
            vec![(
                ctx.derived(DerivedKind::E, m)?,
                ctx.v(4)? * ctx.derived(DerivedKind::E, m - 1)?
                    - ctx.derived(DerivedKind::E, m - 2)?
                    + constant,
            )]
        }
        IdentityId::H92Printed => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.v(4 * k + 4 * m)?,
                delta * ctx.u(2 * k + 2 * m + 1)? * ctx.v(2 * k + 2 * m - 1)? + q * ctx.v(2)?,
            )]
        }
        IdentityId::H92Corrected => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.v(4 * k + 4 * m)?,
                delta * ctx.u(2 * k + 2 * m + 1)? * ctx.u(2 * k + 2 * m - 1)? + q * ctx.v(2)?,
            )]
        }
        IdentityId::H93A => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.u(4 * k + 4 * m)?,
                ctx.u(2 * k + 2 * m + 1)? * ctx.v(2 * k + 2 * m - 1)? - q * ctx.u(2)?,
            )]
        }
        IdentityId::H93B => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.v(4 * k + 4 * m - 2)?,
                delta * ctx.u(2 * k + 2 * m - 1)?.pow(2) + 2 * q,
            )]
        }
        IdentityId::H94A => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.u(4 * k + 4 * m + 1)?,
                ctx.u(2 * k + 2 * m)? * ctx.v(2 * k + 2 * m + 1)? + 1,
            )]
        }
        IdentityId::H94B => {
            let (k, m) = (b.k, b.m);
            vec![(
                ctx.v(4 * k + 4 * m - 1)?,
                delta * ctx.u(2 * k + 2 * m - 1)? * ctx.u(2 * k + 2 * m)? + p * q,
            )]
        }
    };

    Ok(IdentityCheck { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_params;

    fn fib() -> SequenceParams {
        validate_params(1, -1).unwrap()
    }

    fn pell() -> SequenceParams {
        validate_params(2, -1).unwrap()
    }

    fn check(id: IdentityId, params: &SequenceParams, binding: Binding) -> IdentityCheck {
        check_identity(id, params, &binding).unwrap()
    }

    #[test]
    fn catalog_is_complete_and_unique() {
        assert!(CATALOG.len() >= 30, "catalog has {} entries", CATALOG.len());
        let mut ids: Vec<&str> = CATALOG.iter().map(|info| info.id.as_str()).collect();
        let total = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), total, "duplicate identity ids");
        for info in CATALOG {
            assert_eq!(IdentityId::from_str_id(info.id.as_str()), Some(info.id));
        }
        assert_eq!(IdentityId::from_str_id("NOPE"), None);
    }

    #[test]
    fn h1_statement_as_cataloged() {
        assert_eq!(
            IdentityId::H1.info().statement,
            "U_{4k+4m+2} = U_{2k+2m+3} V_{2k+2m-1} - q U_4"
        );
    }

    #[test]
    fn index_addition_spot_case() {
        let result = check(IdentityId::L1_3, &fib(), Binding { n: 3, m: 2, ..Default::default() });
        assert!(result.holds());
        assert_eq!(*result.decisive(), (BigInt::from(10), BigInt::from(10)));
    }

    #[test]
    fn shift_rule_degenerate_h() {
        // h = 0 collapses item 7 to 0 = 0 for any parameters.
        for params in [fib(), pell(), validate_params(1, -2).unwrap()] {
            let result = check(
                IdentityId::L1_7,
                &params,
                Binding { n: 5, m: 2, h: 0, ..Default::default() },
            );
            assert!(result.holds());
            assert_eq!(*result.decisive(), (BigInt::from(0), BigInt::from(0)));
        }
    }

    #[test]
    fn general_q_requires_nonnegative_shifts() {
        let jac = validate_params(1, -2).unwrap();
        // Fine when every index and exponent stays nonnegative...
        assert!(check(
            IdentityId::L1_3,
            &jac,
            Binding { n: 5, m: 3, ..Default::default() }
        )
        .holds());
        // ...domain error when the inner index goes negative.
        assert!(check_identity(
            IdentityId::L1_3,
            &jac,
            &Binding { n: 2, m: 5, ..Default::default() }
        )
        .is_err());
        // Unit-q-only identities reject non-unit parameters outright.
        assert!(matches!(
            check_identity(IdentityId::T91, &jac, &Binding::default()),
            Err(Error::SumRequiresUnitQ { q: -2 })
        ));
    }

    #[test]
    fn t91_spot_case() {
        let result = check(IdentityId::T91, &fib(), Binding { k: 1, ..Default::default() });
        assert!(result.holds());
        assert_eq!(result.pairs[0], (BigInt::from(10), BigInt::from(10)));
    }

    #[test]
    fn t581_spot_case() {
        let result = check(
            IdentityId::T5_81,
            &fib(),
            Binding { k: 1, n: 2, ..Default::default() },
        );
        assert!(result.holds());
        assert_eq!(result.pairs[0], (BigInt::from(284), BigInt::from(284)));
    }

    #[test]
    fn t5101_spot_case() {
        let result = check(
            IdentityId::T5_101,
            &fib(),
            Binding { k: 1, n: 2, ..Default::default() },
        );
        assert!(result.holds());
        assert_eq!(result.pairs[0], (BigInt::from(457), BigInt::from(457)));
    }

    #[test]
    fn pell_star_spot_case() {
        let result = check(IdentityId::PellStar, &pell(), Binding { k: 1, ..Default::default() });
        assert!(result.holds());
        assert_eq!(result.pairs[0].0, BigInt::from(84));
        assert!(matches!(
            check_identity(IdentityId::PellStar, &fib(), &Binding { k: 1, ..Default::default() }),
            Err(Error::DomainViolation(_))
        ));
    }

    /// The transposed odd branch under audit really is wrong: at
    /// (1,-1), k = 1, n = 1 the left side is -30 but the transposed
    /// product gives -20. The corrected T94 matches.
    #[test]
    fn t94_printed_variant_fails_where_t94_holds() {
        let binding = Binding { k: 1, n: 1, ..Default::default() };
        let good = check(IdentityId::T94, &fib(), binding);
        assert!(good.holds());
        assert_eq!(good.pairs[0], (BigInt::from(-30), BigInt::from(-30)));

        let bad = check(IdentityId::T94Printed, &fib(), binding);
        assert!(!bad.holds());
        assert_eq!(*bad.decisive(), (BigInt::from(-30), BigInt::from(-20)));

        // Even n agrees for both variants.
        let binding = Binding { k: 1, n: 2, ..Default::default() };
        assert!(check(IdentityId::T94, &fib(), binding).holds());
        assert!(check(IdentityId::T94Printed, &fib(), binding).holds());
    }

    #[test]
    fn theta_even_relation_fails_as_printed() {
        let result = check(IdentityId::RThetaEven, &fib(), Binding { m: 2, ..Default::default() });
        assert!(!result.holds());
        // theta_2 = 14 while the printed relation gives -theta_0 - 2q V_1^2 = -2.
        assert_eq!(*result.decisive(), (BigInt::from(14), BigInt::from(-2)));
    }

    #[test]
    fn e_constant_variants() {
        // Corrected constant holds at q = -1, printed one does not.
        let binding = Binding { m: 1, ..Default::default() };
        assert!(check(IdentityId::RECorrected, &fib(), binding).holds());
        let printed = check(IdentityId::REPrinted, &fib(), binding);
        assert!(!printed.holds());
        assert_eq!(*printed.decisive(), (BigInt::from(5), BigInt::from(-3)));

        // For q = 1 the two constants coincide.
        let q1 = validate_params(3, 1).unwrap();
        assert!(check(IdentityId::REPrinted, &q1, binding).holds());
        assert!(check(IdentityId::RECorrected, &q1, binding).holds());
    }

    #[test]
    fn h92_printed_fails_corrected_holds() {
        let binding = Binding { k: 1, m: 1, ..Default::default() };
        assert!(!check(IdentityId::H92Printed, &fib(), binding).holds());
        assert!(check(IdentityId::H92Corrected, &fib(), binding).holds());
    }

    #[test]
    fn parity_constraints_enforced() {
        assert!(check_identity(
            IdentityId::RDelta,
            &fib(),
            &Binding { m: 4, ..Default::default() }
        )
        .is_err());
        assert!(check_identity(
            IdentityId::RThetaEven,
            &fib(),
            &Binding { m: 3, ..Default::default() }
        )
        .is_err());
        assert!(check_identity(
            IdentityId::T92,
            &fib(),
            &Binding { k: 1, n: -1, ..Default::default() }
        )
        .is_err());
    }
}
