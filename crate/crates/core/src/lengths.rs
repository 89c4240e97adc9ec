//! Lengths of finite-length quotients and subquotients, `Γ_m` submodules, and
//! a brute-force linear-algebra oracle.
//!
//! `Γ_m` is always taken at the irrelevant maximal ideal. A module supported
//! there has the same length over the polynomial ring as over its
//! localization, so no localization is ever formed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideals::{pure_power_bounds, Ideal, CANONICAL_ORDER};
use crate::linalg::Echelon;
use crate::polyring::{Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthMethod {
    StandardMonomials,
    Subquotient,
    Oracle,
}

/// A length, or the verdict that it is not finite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthResult {
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    pub method: LengthMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl LengthResult {
    pub fn finite(value: u64, method: LengthMethod) -> Self {
        LengthResult {
            finite: true,
            value: Some(value),
            method,
            diagnostic: None,
        }
    }

    pub fn infinite(method: LengthMethod, diagnostic: impl Into<String>) -> Self {
        LengthResult {
            finite: false,
            value: None,
            method,
            diagnostic: Some(diagnostic.into()),
        }
    }

    /// The value, or [`Error::InfiniteLength`] / [`Error::InfiniteColength`].
    pub fn require(&self) -> Result<u64> {
        match (self.value, self.method) {
            (Some(v), _) => Ok(v),
            (None, LengthMethod::StandardMonomials) => Err(Error::InfiniteColength),
            (None, _) => Err(Error::InfiniteLength(0)),
        }
    }
}

/// Number of standard monomials of `gb`, given pure-power bounds `box_`.
fn count_standard_monomials(gb: &GroebnerBasis, box_: &[u32]) -> u64 {
    let n = box_.len();
    if box_.contains(&0) {
        return 0;
    }
    let lms = gb.leading_monomials();
    if n == 1 {
        return box_[0] as u64;
    }
    // walk the box over all but the last variable; along the last one the
    // standard exponents form an initial segment
    let mut prefix = vec![0u32; n - 1];
    let mut total = 0u64;
    loop {
        let mut limit = box_[n - 1];
        for m in &lms {
            let e = m.exponents();
            if e[..n - 1].iter().zip(&prefix).all(|(a, b)| a <= b) {
                limit = limit.min(e[n - 1]);
            }
        }
        total += limit as u64;
        let mut k = n - 1;
        loop {
            if k == 0 {
                return total;
            }
            k -= 1;
            prefix[k] += 1;
            if prefix[k] < box_[k] {
                break;
            }
            prefix[k] = 0;
        }
    }
}

/// `len(R/I)`, counted as standard monomials; infinite unless the initial
/// ideal contains a power of every variable.
pub fn finite_colength_length(ideal: &Ideal) -> LengthResult {
    let gb = ideal.groebner_basis();
    match pure_power_bounds(&gb) {
        Some(bounds) => LengthResult::finite(
            count_standard_monomials(&gb, &bounds),
            LengthMethod::StandardMonomials,
        ),
        None => LengthResult::infinite(
            LengthMethod::StandardMonomials,
            "initial ideal misses a pure power of some variable",
        ),
    }
}

/// `H` with `Γ_m(I/J) = H/J`, namely `H = (J : m^∞) ∩ I`.
pub fn gamma_submodule(j: &Ideal, i: &Ideal) -> Result<Ideal> {
    if !i.contains_ideal(j) {
        return Err(Error::NotContained("J ⊄ I".into()));
    }
    if j.has_finite_colength() {
        // (J : m^∞) is the whole ring
        return Ok(i.clone());
    }
    let m = j.sibling(j.ring().variables())?;
    let (sat, _) = j.saturate(&m)?;
    if sat.is_unit() {
        return Ok(i.clone());
    }
    sat.intersect(i)
}

/// `len((U + J)/J)` by the layered span of `NF_J(μ·u)`: layer `t` spans
/// the normal forms of `m^t·U`, the first empty layer is the nilpotency
/// index `n`, and the length is the rank of all layers below `n`.
pub fn subquotient_length_by_rank(u: &Ideal, j: &Ideal) -> LengthResult {
    let cap = j.ring().config().nilpotency_cap;
    let gb = j.groebner_basis();
    let canon = gb.ring().clone();
    let vars: Vec<Monomial> = (0..canon.nvars())
        .map(|i| Monomial::variable(canon.nvars(), i))
        .collect();
    let mut layer = Echelon::new();
    for g in u.all_generators() {
        layer.insert(&gb.reduce(&g));
    }
    let mut total = Echelon::new();
    for t in 0..=cap {
        if layer.is_empty() {
            return LengthResult::finite(total.rank() as u64, LengthMethod::Subquotient);
        }
        if t == cap {
            break;
        }
        for row in layer.rows() {
            total.insert(row);
        }
        let mut next = Echelon::new();
        for row in layer.rows() {
            for v in &vars {
                next.insert(&gb.reduce(&row.mul_monomial(v)));
            }
        }
        layer = next;
    }
    LengthResult::infinite(
        LengthMethod::Subquotient,
        format!("possibly infinite length: m^{cap}·U ⊄ J"),
    )
}

/// `len((U + J)/J)`.
pub fn subquotient_length(u: &Ideal, j: &Ideal) -> Result<LengthResult> {
    let w = if u.contains_ideal(j) {
        u.clone()
    } else {
        u.sum(j)?
    };
    if j.has_finite_colength() {
        let lj = finite_colength_length(j).require()?;
        let lw = finite_colength_length(&w).require()?;
        return Ok(LengthResult::finite(lj - lw, LengthMethod::Subquotient));
    }
    Ok(subquotient_length_by_rank(&w, j))
}

/// `len(Γ_m(I/J))`.
pub fn gamma_length(j: &Ideal, i: &Ideal) -> Result<LengthResult> {
    let h = gamma_submodule(j, i)?;
    subquotient_length(&h, j)
}

/// Brute-force `dim_k` of (polynomials of degree ≤ `bound`) modulo the span of
/// `{μ·g : deg(μ·g) ≤ bound}`, by Gaussian elimination alone.
pub fn oracle_quotient_dimension(ideal: &Ideal, bound: u32) -> u64 {
    OracleSpan::new(ideal).dimension_at(bound)
}

/// Incremental form of [`oracle_quotient_dimension`]: rows for larger degree
/// bounds extend those for smaller ones.
pub struct OracleSpan {
    gens: Vec<Polynomial>,
    nvars: usize,
    echelon: Echelon,
    done: Option<u32>,
}

impl OracleSpan {
    pub fn new(ideal: &Ideal) -> Self {
        let canon = ideal.ring().with_order(&CANONICAL_ORDER);
        let gens = ideal
            .all_generators()
            .iter()
            .map(|g| g.to_ring(&canon).unwrap())
            .collect();
        OracleSpan {
            gens,
            nvars: canon.nvars(),
            echelon: Echelon::new(),
            done: None,
        }
    }

    fn monomials_up_to(&self, degree: u32) -> u64 {
        // C(degree + n, n)
        let n = self.nvars as u64;
        let mut acc = 1u64;
        for k in 1..=n {
            acc = acc * (degree as u64 + k) / k;
        }
        acc
    }

    pub fn dimension_at(&mut self, bound: u32) -> u64 {
        let start = match self.done {
            Some(d) if d <= bound => d + 1,
            Some(_) => {
                self.echelon = Echelon::new();
                0
            }
            None => 0,
        };
        for total in start..=bound {
            for g in &self.gens {
                let dg = g.total_degree() as u32;
                if dg > total {
                    continue;
                }
                for mu in Monomial::all_of_degree(self.nvars, total - dg) {
                    self.echelon.insert(&g.mul_monomial(&mu));
                }
            }
        }
        self.done = Some(bound);
        self.monomials_up_to(bound) - self.echelon.rank() as u64
    }

    /// Raises the bound until `window` consecutive values agree.
    pub fn stable_dimension(&mut self, window: usize, max_bound: u32) -> Option<u64> {
        let start = self
            .gens
            .iter()
            .map(|g| g.total_degree() as u32)
            .max()
            .unwrap_or(0);
        let mut last = None;
        let mut run = 0;
        for d in start..=max_bound {
            let v = self.dimension_at(d);
            if Some(v) == last {
                run += 1;
                if run + 1 >= window {
                    return Some(v);
                }
            } else {
                run = 0;
                last = Some(v);
            }
        }
        None
    }
}
