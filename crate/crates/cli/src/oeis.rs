//! Cross-checks of locally computed terms against reference b-files.
//!
//! A b-file is plain ASCII, one `index value` pair per line, `#` comments
//! ignored. Offline mode reads fixtures bundled into the binary; online mode
//! fetches `https://oeis.org/<id>/b<digits>.txt`. Comparison is positional:
//! the first `n` data lines of the reference against our terms from index 0,
//! which is how all the cataloged sequences are aligned.

use num_bigint::BigInt;

use lucas_core::derived::{derived_table, DerivedKind};
use lucas_core::{SequenceIter, SequenceParams, validate_params};

/// How one cataloged A-number maps onto the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    U,
    V,
    Derived(DerivedKind),
}

#[derive(Debug, Clone, Copy)]
pub struct OeisEntry {
    pub id: &'static str,
    pub p: i64,
    pub q: i64,
    pub source: Source,
    pub describe: &'static str,
}

pub const CATALOG: &[OeisEntry] = &[
    OeisEntry { id: "A000045", p: 1, q: -1, source: Source::U, describe: "U at (1,-1): Fibonacci" },
    OeisEntry { id: "A000032", p: 1, q: -1, source: Source::V, describe: "V at (1,-1): Lucas" },
    OeisEntry { id: "A000129", p: 2, q: -1, source: Source::U, describe: "U at (2,-1): Pell" },
    OeisEntry { id: "A002203", p: 2, q: -1, source: Source::V, describe: "V at (2,-1): Pell-Lucas" },
    OeisEntry { id: "A001045", p: 1, q: -2, source: Source::U, describe: "U at (1,-2): Jacobsthal" },
    OeisEntry { id: "A014551", p: 1, q: -2, source: Source::V, describe: "V at (1,-2): Jacobsthal-Lucas" },
    OeisEntry { id: "A001906", p: 1, q: -1, source: Source::Derived(DerivedKind::A), describe: "a at (1,-1): even-indexed Fibonacci" },
    OeisEntry { id: "A092521", p: 1, q: -1, source: Source::Derived(DerivedKind::B), describe: "b at (1,-1)" },
    OeisEntry { id: "A004187", p: 1, q: -1, source: Source::Derived(DerivedKind::C), describe: "c at (1,-1)" },
    OeisEntry { id: "A049685", p: 1, q: -1, source: Source::Derived(DerivedKind::D), describe: "d at (1,-1)" },
    OeisEntry { id: "A001109", p: 2, q: -1, source: Source::Derived(DerivedKind::A), describe: "a at (2,-1)" },
    OeisEntry { id: "A029546", p: 2, q: -1, source: Source::Derived(DerivedKind::B), describe: "b at (2,-1)" },
    OeisEntry { id: "A029547", p: 2, q: -1, source: Source::Derived(DerivedKind::C), describe: "c at (2,-1)" },
    OeisEntry { id: "A077420", p: 2, q: -1, source: Source::Derived(DerivedKind::D), describe: "d at (2,-1)" },
];

pub fn lookup(id: &str) -> Option<&'static OeisEntry> {
    CATALOG.iter().find(|entry| entry.id == id)
}

/// Bundled fixture content for one entry.
pub fn fixture(id: &str) -> Option<&'static str> {
    Some(match id {
        "A000045" => include_str!("../fixtures/b000045.txt"),
        "A000032" => include_str!("../fixtures/b000032.txt"),
        "A000129" => include_str!("../fixtures/b000129.txt"),
        "A002203" => include_str!("../fixtures/b002203.txt"),
        "A001045" => include_str!("../fixtures/b001045.txt"),
        "A014551" => include_str!("../fixtures/b014551.txt"),
        "A001906" => include_str!("../fixtures/b001906.txt"),
        "A092521" => include_str!("../fixtures/b092521.txt"),
        "A004187" => include_str!("../fixtures/b004187.txt"),
        "A049685" => include_str!("../fixtures/b049685.txt"),
        "A001109" => include_str!("../fixtures/b001109.txt"),
        "A029546" => include_str!("../fixtures/b029546.txt"),
        "A029547" => include_str!("../fixtures/b029547.txt"),
        "A077420" => include_str!("../fixtures/b077420.txt"),
        _ => return None,
    })
}

/// Parse b-file text into term values, in order of appearance.
pub fn parse_b_file(text: &str) -> Result<Vec<BigInt>, String> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let _index = fields
            .next()
            .ok_or_else(|| format!("line {}: missing index", lineno + 1))?;
        let value = fields
            .next()
            .ok_or_else(|| format!("line {}: missing value", lineno + 1))?;
        let value: BigInt = value
            .parse()
            .map_err(|_| format!("line {}: bad integer '{value}'", lineno + 1))?;
        values.push(value);
    }
    Ok(values)
}

/// Our own first `count` terms of a cataloged sequence.
pub fn local_terms(entry: &OeisEntry, count: usize) -> Vec<BigInt> {
    let params: SequenceParams =
        validate_params(entry.p, entry.q).expect("catalog parameters are valid");
    match entry.source {
        Source::U => SequenceIter::new(&params).take(count).map(|pt| pt.u).collect(),
        Source::V => SequenceIter::new(&params).take(count).map(|pt| pt.v).collect(),
        Source::Derived(kind) => derived_table(&params, kind, 0, count)
            .expect("derived sequences exist for unit q")
            .values,
    }
}

/// Position and values of the first discrepancy, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub position: usize,
    pub local: BigInt,
    pub reference: BigInt,
}

pub fn compare(entry: &OeisEntry, reference: &[BigInt], count: usize) -> Result<Option<Mismatch>, String> {
    if reference.len() < count {
        return Err(format!(
            "{}: reference holds only {} terms (need {count})",
            entry.id,
            reference.len()
        ));
    }
    let local = local_terms(entry, count);
    for (position, (ours, theirs)) in local.iter().zip(reference).enumerate() {
        if ours != theirs {
            return Ok(Some(Mismatch {
                position,
                local: ours.clone(),
                reference: theirs.clone(),
            }));
        }
    }
    Ok(None)
}
