//! Finite prefixes of the Hilbert–Kunz function and the relative sequences
//! `rjj`, `sjj`, `vjj`, `l_e`/`f_e` and `f_e(J) - f_e(I)`.
//!
//! Every entry carries the raw length and the exact rational `raw / q^d`.
//! Nothing here extrapolates or claims a limit.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::lengths::{
    finite_colength_length, gamma_length, gamma_submodule, subquotient_length, LengthResult,
};

/// Exact rational used for `q` and the scaled values.
pub type Rational = Ratio<i128>;

pub const CSV_HEADER: &str = "kind,e,q,raw,scaled_num,scaled_den";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Hk,
    Rjj,
    Sjj,
    Vjj,
    Le,
    Fe,
    Fdiff,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SequenceKind::Hk => "hk",
            SequenceKind::Rjj => "rjj",
            SequenceKind::Sjj => "sjj",
            SequenceKind::Vjj => "vjj",
            SequenceKind::Le => "le",
            SequenceKind::Fe => "fe",
            SequenceKind::Fdiff => "fdiff",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceEntry {
    pub e: i32,
    /// `p^e`; equals `1/p` for the `e = -1` entry of `l_e`.
    pub q: Rational,
    pub raw: i64,
    pub scaled: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    pub kind: SequenceKind,
    pub p: u32,
    pub d: u32,
    pub entries: Vec<SequenceEntry>,
    /// Free-form context (ring, ideals) carried into JSON output.
    pub metadata: BTreeMap<String, String>,
}

fn p_power(p: u32, e: i32) -> Rational {
    let base = Rational::from_integer(p as i128);
    if e >= 0 {
        (0..e).fold(Rational::from_integer(1), |acc, _| acc * base)
    } else {
        (0..-e).fold(Rational::from_integer(1), |acc, _| acc / base)
    }
}

impl SequenceReport {
    pub fn new(kind: SequenceKind, p: u32, d: u32) -> Self {
        SequenceReport {
            kind,
            p,
            d,
            entries: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    /// Appends the entry for exponent `e`; exponents must increase.
    pub fn push(&mut self, e: i32, raw: i64) {
        assert!(
            self.entries.last().is_none_or(|last| last.e < e),
            "sequence exponents must increase"
        );
        let q = p_power(self.p, e);
        let qd = (0..self.d).fold(Rational::from_integer(1), |acc, _| acc * q);
        self.entries.push(SequenceEntry {
            e,
            q,
            raw,
            scaled: Rational::from_integer(raw as i128) / qd,
        });
    }

    pub fn raw_values(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.raw).collect()
    }

    pub fn scaled_values(&self) -> Vec<Rational> {
        self.entries.iter().map(|e| e.scaled).collect()
    }

    /// Running maximum of the scaled values.
    pub fn running_max(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let v = out.last().map_or(e.scaled, |m| (*m).max(e.scaled));
            out.push(v);
        }
        out
    }

    /// Running minimum of the scaled values.
    pub fn running_min(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let v = out.last().map_or(e.scaled, |m| (*m).min(e.scaled));
            out.push(v);
        }
        out
    }

    /// CSV rows in the `kind,e,q,raw,scaled_num,scaled_den` schema.
    pub fn to_csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str(CSV_HEADER);
            out.push('\n');
        }
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.kind,
                e.e,
                e.q,
                e.raw,
                e.scaled.numer(),
                e.scaled.denom()
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "e": e.e,
                    "q": e.q.to_string(),
                    "raw": e.raw,
                    "scaled_num": e.scaled.numer().to_string(),
                    "scaled_den": e.scaled.denom().to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "p": self.p,
            "d": self.d,
            "metadata": self.metadata,
            "entries": entries,
            "running_max": self.running_max().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "running_min": self.running_min().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn require(len: LengthResult, cap: usize) -> Result<i64> {
    len.value
        .map(|v| v as i64)
        .ok_or(Error::InfiniteLength(cap))
}

fn check_contained(j: &Ideal, i: &Ideal) -> Result<()> {
    if i.contains_ideal(j) {
        Ok(())
    } else {
        Err(Error::NotContained("J ⊄ I".into()))
    }
}

/// Krull dimension of the ambient quotient `A/(relations)`: the default
/// scaling exponent `d`.
pub fn ambient_dimension(ideal: &Ideal) -> Result<u32> {
    let zero = ideal.sibling([])?;
    Ok(zero.dimension()? as u32)
}

/// `len(R/I^{[q]})` for `e = 0..=e_max`.
pub fn hk_function(i: &Ideal, e_max: u32, d: u32) -> Result<SequenceReport> {
    let mut report = SequenceReport::new(SequenceKind::Hk, i.ring().characteristic(), d);
    for e in 0..=e_max {
        let len = finite_colength_length(&i.bracket_power(e)?);
        let v = len.value.ok_or(Error::InfiniteColength)?;
        report.push(e as i32, v as i64);
    }
    Ok(report)
}

/// `len(Γ_m(I^{[q]}/J^{[q]}))`.
pub fn rjj_sequence(j: &Ideal, i: &Ideal, e_max: u32, d: u32) -> Result<SequenceReport> {
    check_contained(j, i)?;
    let cap = i.ring().config().nilpotency_cap;
    let mut report = SequenceReport::new(SequenceKind::Rjj, i.ring().characteristic(), d);
    for e in 0..=e_max {
        let len = gamma_length(&j.bracket_power(e)?, &i.bracket_power(e)?)?;
        report.push(e as i32, require(len, cap)?);
    }
    Ok(report)
}

/// Length of the image of `H^{[q]}` in `R/J^{[q]}`, where `Γ_m(I/J) = H/J`.
pub fn sjj_sequence(j: &Ideal, i: &Ideal, e_max: u32, d: u32) -> Result<SequenceReport> {
    let h = gamma_submodule(j, i)?;
    let cap = i.ring().config().nilpotency_cap;
    let mut report = SequenceReport::new(SequenceKind::Sjj, i.ring().characteristic(), d);
    for e in 0..=e_max {
        let je = j.bracket_power(e)?;
        let he = h.bracket_power(e)?.sum(&je)?;
        report.push(e as i32, require(subquotient_length(&he, &je)?, cap)?);
    }
    Ok(report)
}

/// `len(I^{[q]} / (J + mI)^{[q]})`.
pub fn vjj_sequence(j: &Ideal, i: &Ideal, e_max: u32, d: u32) -> Result<SequenceReport> {
    check_contained(j, i)?;
    let k = j.sum(&i.times_maximal())?;
    let cap = i.ring().config().nilpotency_cap;
    let mut report = SequenceReport::new(SequenceKind::Vjj, i.ring().characteristic(), d);
    for e in 0..=e_max {
        let len = subquotient_length(&i.bracket_power(e)?, &k.bracket_power(e)?)?;
        report.push(e as i32, require(len, cap)?);
    }
    Ok(report)
}

/// `l_e(K)` for `e = -1..e_max-1` and `f_n(K)` for `n = 0..=e_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfSequences {
    pub p: u32,
    /// `(e, l_e)`, starting at `e = -1`.
    pub l: Vec<(i32, i64)>,
    /// `(n, f_n)`, starting at `n = 0` with `f_0 = l_{-1}`.
    pub f: Vec<(i32, i64)>,
}

impl LfSequences {
    pub fn l_report(&self, d: u32) -> SequenceReport {
        let mut r = SequenceReport::new(SequenceKind::Le, self.p, d);
        for &(e, v) in &self.l {
            r.push(e, v);
        }
        r
    }

    pub fn f_report(&self, d: u32) -> SequenceReport {
        let mut r = SequenceReport::new(SequenceKind::Fe, self.p, d);
        for &(n, v) in &self.f {
            r.push(n, v);
        }
        r
    }

    pub fn f_at(&self, n: i32) -> Option<i64> {
        self.f.iter().find(|(k, _)| *k == n).map(|(_, v)| *v)
    }
}

/// `l_e(K) = len(Γ_m(K^{[p^e]}/K^{[p^{e+1}]}))` with `K^{[p^{-1}]} = R`, and
/// the prefix sums `f_n(K) = Σ_{e=-1}^{n-1} l_e(K)`.
pub fn lf_sequences(k: &Ideal, e_max: u32) -> Result<LfSequences> {
    let cap = k.ring().config().nilpotency_cap;
    let mut upper = k.sibling([k.ring().one()])?;
    let mut lower = k.clone();
    let mut l = Vec::with_capacity(e_max as usize + 1);
    for e in -1..e_max as i32 {
        l.push((e, require(gamma_length(&lower, &upper)?, cap)?));
        if e + 1 < e_max as i32 {
            upper = lower;
            lower = k.bracket_power((e + 2) as u32)?;
        }
    }
    let mut f = Vec::with_capacity(e_max as usize + 1);
    let mut running = 0i64;
    for (n, &(_, v)) in l.iter().enumerate() {
        running += v;
        f.push((n as i32, running));
    }
    Ok(LfSequences {
        p: k.ring().characteristic(),
        l,
        f,
    })
}

/// `f_n(J) - f_n(I)` for `n = 0..=e_max`, signed.
pub fn f_difference_sequence(j: &Ideal, i: &Ideal, e_max: u32, d: u32) -> Result<SequenceReport> {
    check_contained(j, i)?;
    let fj = lf_sequences(j, e_max)?;
    let fi = lf_sequences(i, e_max)?;
    let mut report = SequenceReport::new(SequenceKind::Fdiff, i.ring().characteristic(), d);
    for (&(n, a), &(_, b)) in fj.f.iter().zip(&fi.f) {
        report.push(n, a - b);
    }
    Ok(report)
}

/// One instance of `len(I^{[pⁿ]}/J^{[pⁿ]}) ≤ f_n(J) - f_n(I) ≤ Σ_{j≤n} len(I^{[p^j]}/J^{[p^j]})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SandwichRecord {
    pub n: u32,
    pub lower: i64,
    pub middle: i64,
    pub upper: i64,
}

impl SandwichRecord {
    pub fn holds(&self) -> bool {
        self.lower <= self.middle && self.middle <= self.upper
    }
}

/// Computes the three sandwich quantities for `J ⊆ I` with `len(I/J)` finite.
pub fn check_sandwich(j: &Ideal, i: &Ideal, n: u32) -> Result<SandwichRecord> {
    check_contained(j, i)?;
    let (sat, _) = j.saturate(&j.sibling(j.ring().variables())?)?;
    if !sat.contains_ideal(i) {
        return Err(Error::Precondition(
            "len(I/J) is not finite: I ⊄ (J : m^∞)".into(),
        ));
    }
    let cap = i.ring().config().nilpotency_cap;
    let mut lens = Vec::with_capacity(n as usize + 1);
    for e in 0..=n {
        let len = subquotient_length(&i.bracket_power(e)?, &j.bracket_power(e)?)?;
        lens.push(require(len, cap)?);
    }
    let fj = lf_sequences(j, n)?.f_at(n as i32).unwrap_or(0);
    let fi = lf_sequences(i, n)?.f_at(n as i32).unwrap_or(0);
    Ok(SandwichRecord {
        n,
        lower: lens[n as usize],
        middle: fj - fi,
        upper: lens.iter().sum(),
    })
}

/// Window boundedness of `raw_e / q^{d-1}`.
///
/// The constant in the length bound is not effective, so the observed maximum
/// over `e ≤ 2` stands in for it. This is a heuristic, not a proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundednessCheck {
    pub normalized: Vec<String>,
    pub window_max: String,
    pub non_increasing: bool,
    pub bounded: bool,
    pub heuristic: bool,
}

pub fn boundedness_check(report: &SequenceReport) -> BoundednessCheck {
    let dm1 = report.d.saturating_sub(1);
    let norm: Vec<Rational> = report
        .entries
        .iter()
        .map(|en| {
            let qd = (0..dm1).fold(Rational::from_integer(1), |acc, _| acc * en.q);
            Rational::from_integer(en.raw as i128) / qd
        })
        .collect();
    let window_max = report
        .entries
        .iter()
        .zip(&norm)
        .filter(|(en, _)| en.e <= 2)
        .map(|(_, v)| *v)
        .max()
        .unwrap_or_else(|| Rational::from_integer(0));
    let non_increasing = norm.windows(2).all(|w| w[1] <= w[0]);
    let bounded = non_increasing || norm.iter().all(|v| *v <= window_max);
    BoundednessCheck {
        normalized: norm.iter().map(|r| r.to_string()).collect(),
        window_max: window_max.to_string(),
        non_increasing,
        bounded,
        heuristic: true,
    }
}
