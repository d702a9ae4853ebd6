//! Grid verification of the identity catalog.
//!
//! A sweep enumerates every binding of an identity's free variables over a
//! [`SweepGrid`] (index variables over one signed range, count variables
//! over a nonnegative one, parameter pairs from a fixed list), evaluates
//! both sides exactly, and reports either `verified-on-grid` or `falsified`
//! with the full list of counterexamples. Grid points outside an identity's
//! domain are skipped and counted.
//!
//! Reports are deterministic: parameters and bindings are enumerated in a
//! fixed lexicographic order, so two sweeps over the same grid serialize to
//! byte-identical JSON.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{check_identity, Binding, IdentityId, Status, VarClass};
use crate::params::{validate_params, SequenceParams};

/// Parameter pairs plus variable ranges for a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepGrid {
    pub params: Vec<SequenceParams>,
    /// Inclusive range for index-class variables.
    pub index_range: (i64, i64),
    /// Inclusive range for count-class variables.
    pub count_range: (i64, i64),
}

impl SweepGrid {
    /// The default verification grid: `p` in `[-3, 3]` without 0, `q` in
    /// `{-1, 1}`, minus the two pairs with a vanishing discriminant; index
    /// variables in `[-6, 6]`, count variables in `[0, 12]`.
    pub fn default_grid() -> Self {
        let mut params = Vec::new();
        for p in [-3, -2, -1, 1, 2, 3] {
            for q in [-1, 1] {
                if let Ok(valid) = validate_params(p, q) {
                    params.push(valid);
                }
            }
        }
        SweepGrid {
            params,
            index_range: (-6, 6),
            count_range: (0, 12),
        }
    }

    /// Restrict to a single parameter pair, keeping the ranges.
    pub fn with_params(mut self, params: SequenceParams) -> Self {
        self.params = vec![params];
        self
    }

    fn range(&self, class: VarClass) -> std::ops::RangeInclusive<i64> {
        let (lo, hi) = match class {
            VarClass::Index => self.index_range,
            VarClass::Count => self.count_range,
        };
        lo..=hi
    }

    fn describe(&self) -> GridDescription {
        GridDescription {
            params: self.params.iter().map(|p| ParamPair { p: p.p(), q: p.q() }).collect(),
            index_range: [self.index_range.0, self.index_range.1],
            count_range: [self.count_range.0, self.count_range.1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamPair {
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridDescription {
    pub params: Vec<ParamPair>,
    pub index_range: [i64; 2],
    pub count_range: [i64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "verified-on-grid")]
    VerifiedOnGrid,
    #[serde(rename = "falsified")]
    Falsified,
}

/// One failing grid point, reproducible through a single identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: ParamPair,
    /// Signature variables in declaration order.
    pub binding: Vec<(String, i64)>,
    /// Decimal values of the first unequal side pair.
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub statement: String,
    pub status: String,
    pub grid: GridDescription,
    pub cases_checked: u64,
    pub cases_skipped: u64,
    pub counterexamples: Vec<Counterexample>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.verdict == Verdict::VerifiedOnGrid
    }
}

fn is_domain_skip(err: &Error) -> bool {
    matches!(
        err,
        Error::DomainViolation(_)
            | Error::NegativeIndexUnsupported { .. }
            | Error::SumRequiresUnitQ { .. }
    )
}

/// Exhaustively check one identity over a grid.
pub fn sweep(id: IdentityId, grid: &SweepGrid) -> Result<VerificationReport> {
    let info = id.info();
    let mut checked = 0u64;
    let mut skipped = 0u64;
    let mut counterexamples = Vec::new();

    for params in &grid.params {
        let mut binding = Binding::default();
        let mut visit = |binding: &Binding| -> Result<()> {
            match check_identity(id, params, binding) {
                Ok(result) => {
                    checked += 1;
                    if !result.holds() {
                        let (lhs, rhs) = result.decisive();
                        counterexamples.push(Counterexample {
                            params: ParamPair { p: params.p(), q: params.q() },
                            binding: info
                                .signature
                                .iter()
                                .map(|(var, _)| (var.name().to_string(), binding.get(*var)))
                                .collect(),
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                    Ok(())
                }
                Err(err) if is_domain_skip(&err) => {
                    skipped += 1;
                    Ok(())
                }
                Err(err) => Err(err),
            }
        };
        enumerate(grid, info.signature, 0, &mut binding, &mut visit)?;
    }

    let verdict = if counterexamples.is_empty() {
        Verdict::VerifiedOnGrid
    } else {
        Verdict::Falsified
    };
    Ok(VerificationReport {
        identity: id.as_str().to_string(),
        statement: info.statement.to_string(),
        status: match info.status {
            Status::AssumedTrue => "assumed-true".to_string(),
            Status::Audit => "audit".to_string(),
        },
        grid: grid.describe(),
        cases_checked: checked,
        cases_skipped: skipped,
        counterexamples,
        verdict,
    })
}

fn enumerate(
    grid: &SweepGrid,
    signature: &[(crate::identities::Var, VarClass)],
    slot: usize,
    binding: &mut Binding,
    visit: &mut impl FnMut(&Binding) -> Result<()>,
) -> Result<()> {
    if slot == signature.len() {
        return visit(binding);
    }
    let (var, class) = signature[slot];
    for value in grid.range(class) {
        binding.set(var, value);
        enumerate(grid, signature, slot + 1, binding, visit)?;
    }
    Ok(())
}

/// A falsified assumed-true identity: the distinguished correctness alarm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectnessAlarm {
    pub report: VerificationReport,
}

impl std::fmt::Display for CorrectnessAlarm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "correctness alarm: assumed-true identity {} falsified with {} counterexample(s)",
            self.report.identity,
            self.report.counterexamples.len()
        )
    }
}

/// Outcome of sweeping a list of identities.
///
/// An assumed-true identity that falsifies aborts the run: `reports` holds
/// everything swept so far (including the offending report) and `alarm` is
/// set. Audit identities record their verdicts and never abort.
#[derive(Debug, Clone)]
pub struct CatalogRun {
    pub reports: Vec<VerificationReport>,
    pub alarm: Option<CorrectnessAlarm>,
}

impl CatalogRun {
    pub fn clean(&self) -> bool {
        self.alarm.is_none()
    }
}

/// Sweep several identities in order, stopping at the first correctness
/// alarm.
pub fn run_catalog(ids: &[IdentityId], grid: &SweepGrid) -> Result<CatalogRun> {
    let mut reports = Vec::with_capacity(ids.len());
    for &id in ids {
        let report = sweep(id, grid)?;
        let alarmed = id.status() == Status::AssumedTrue && !report.verified();
        reports.push(report);
        if alarmed {
            let report = reports.last().cloned().expect("just pushed");
            return Ok(CatalogRun {
                reports,
                alarm: Some(CorrectnessAlarm { report }),
            });
        }
    }
    Ok(CatalogRun { reports, alarm: None })
}

/// Every cataloged identity, in catalog order.
pub fn all_identity_ids() -> Vec<IdentityId> {
    crate::identities::catalog().iter().map(|info| info.id).collect()
}
