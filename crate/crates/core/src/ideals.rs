//! Ideals with cached Gröbner bases, and the ideal-level operations built on
//! them: bracket powers, sums, elimination-based intersection, colon,
//! saturation and Krull dimension.
//!
//! An ideal of a quotient ring `A/(relations)` is represented by its
//! preimage in `A`: the relations are adjoined to every Gröbner computation
//! but are never raised to Frobenius powers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::{groebner_in_ring, GroebnerBasis};
use crate::polyring::{Monomial, MonomialOrder, Polynomial, Ring};

/// Order used for ideal equality and all internal Gröbner computations.
pub const CANONICAL_ORDER: MonomialOrder = MonomialOrder::DegRevLex;

/// A finitely generated ideal with a per-order cache of reduced Gröbner bases.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    relations: Arc<Vec<Polynomial>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            relations: self.relations.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|g| g.to_string()).collect();
            write!(f, " mod ({})", rels.join(", "))?;
        }
        Ok(())
    }
}

fn into_ring(ring: &Ring, polys: impl IntoIterator<Item = Polynomial>) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for p in polys {
        let p = p.to_ring(ring)?;
        if !p.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

impl Ideal {
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        Ok(Ideal {
            ring: ring.clone(),
            gens: into_ring(ring, gens)?,
            relations: Arc::new(Vec::new()),
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Parses each string as a generator.
    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let polys = gens
            .iter()
            .map(|g| ring.parse(g))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, []).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, [ring.one()]).unwrap()
    }

    /// The irrelevant maximal ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::new(ring, ring.variables()).unwrap()
    }

    /// `(x_{i_1}, ..., x_{i_k})^degree` as a monomial ideal.
    pub fn monomial_power(ring: &Ring, vars: &[usize], degree: u32) -> Ideal {
        let gens = Monomial::all_of_degree(vars.len(), degree)
            .into_iter()
            .map(|m| {
                let mut exps = vec![0u32; ring.nvars()];
                for (k, &v) in vars.iter().enumerate() {
                    exps[v] += m.exponents()[k];
                }
                ring.monomial(1, Monomial::new(exps))
            });
        Ideal::new(ring, gens).unwrap()
    }

    /// The same generators, read in the quotient ring `A/(relations)`.
    pub fn with_relations(
        mut self,
        relations: impl IntoIterator<Item = Polynomial>,
    ) -> Result<Ideal> {
        self.relations = Arc::new(into_ring(&self.ring, relations)?);
        self.cache = Mutex::new(HashMap::new());
        Ok(self)
    }

    /// New ideal in the same (quotient) ring as `self`.
    pub fn sibling(&self, gens: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        Ok(Ideal {
            ring: self.ring.clone(),
            gens: into_ring(&self.ring, gens)?,
            relations: self.relations.clone(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Generators of the preimage in the polynomial ring.
    pub fn all_generators(&self) -> Vec<Polynomial> {
        self.gens
            .iter()
            .chain(self.relations.iter())
            .cloned()
            .collect()
    }

    fn same_quotient(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_variables(&other.ring) && self.relations == other.relations {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Gröbner basis of the preimage under `ord` (cached).
    pub fn groebner_basis_in(&self, ord: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().unwrap().get(ord) {
            return Ok(gb.clone());
        }
        let ring = self.ring.with_order(ord);
        let gb = Arc::new(groebner_in_ring(&ring, &self.all_generators())?);
        self.cache.lock().unwrap().insert(ord.clone(), gb.clone());
        Ok(gb)
    }

    /// Reduced Gröbner basis under the canonical order.
    pub fn groebner_basis(&self) -> Arc<GroebnerBasis> {
        self.groebner_basis_in(&CANONICAL_ORDER)
            .expect("generators live in the ideal's ring")
    }

    fn seed_cache(&self, gb: GroebnerBasis) {
        self.cache
            .lock()
            .unwrap()
            .insert(gb.order().clone(), Arc::new(gb));
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.groebner_basis().contains(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        let gb = self.groebner_basis();
        other.all_generators().iter().all(|g| gb.contains(g))
    }

    /// Equality of reduced Gröbner bases under the canonical order.
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.ring.same_variables(&other.ring)
            && self.groebner_basis().elements() == other.groebner_basis().elements()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.groebner_basis().is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_quotient(other)?;
        self.sibling(self.gens.iter().chain(other.gens.iter()).cloned())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_quotient(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        self.sibling(gens)
    }

    /// Ordinary power `I^k`.
    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = self.sibling([self.ring.one()]).unwrap();
        for _ in 0..k {
            acc = acc.product(self).unwrap();
        }
        acc
    }

    /// `m·I` for the irrelevant maximal ideal `m`.
    pub fn times_maximal(&self) -> Ideal {
        let m = self.sibling(self.ring.variables()).unwrap();
        m.product(self).unwrap()
    }

    /// `I^{[p^e]}`: generators raised to the `p^e`-th power; relations kept.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        let cap = self.ring.config().e_cap;
        if e > cap {
            return Err(Error::ExponentCap { e, cap });
        }
        if e == 0 {
            return Ok(self.clone());
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_power(e))
            .collect::<Result<Vec<_>>>()?;
        let out = self.sibling(gens)?;
        if self.relations.is_empty() {
            // x_i -> x_i^q maps a Gröbner basis onto a Gröbner basis of the image
            let gb = self.groebner_basis();
            let image = gb
                .elements()
                .iter()
                .map(|g| g.frobenius_power(e))
                .collect::<Result<Vec<_>>>()?;
            out.seed_cache(GroebnerBasis::from_known_basis(gb.ring(), image));
        }
        Ok(out)
    }

    /// `I ∩ K`, by eliminating an auxiliary variable.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_quotient(other)?;
        let (gens, gb) =
            intersect_generators(&self.ring, &self.all_generators(), &other.all_generators())?;
        let out = self.sibling(gens)?;
        out.seed_cache(gb);
        Ok(out)
    }

    /// `(I : u) = {f : f u ∈ I}`.
    pub fn colon_element(&self, u: &Polynomial) -> Result<Ideal> {
        let u = u.to_ring(&self.ring)?;
        if u.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if u.is_constant() {
            return Ok(self.clone());
        }
        let (meet, _) =
            intersect_generators(&self.ring, &self.all_generators(), std::slice::from_ref(&u))?;
        let gens = meet
            .iter()
            .map(|h| h.exact_div(&u))
            .collect::<Result<Vec<_>>>()?;
        // quotients of a Gröbner basis of u·(I:u) by u form a Gröbner basis of (I:u)
        let canon = self.ring.with_order(&CANONICAL_ORDER);
        let canon_gens = gens
            .iter()
            .map(|g| g.to_ring(&canon))
            .collect::<Result<Vec<_>>>()?;
        let out = self.sibling(gens)?;
        out.seed_cache(GroebnerBasis::from_known_basis(&canon, canon_gens));
        Ok(out)
    }

    /// `(I : K) = ∩_j (I : k_j)`.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal> {
        if other.gens().is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let mut divisors: Vec<Polynomial> = Vec::new();
        for k in other.gens() {
            let k = k.to_ring(&self.ring)?;
            if !self.contains(&k) {
                divisors.push(k);
            }
        }
        if divisors.is_empty() {
            return self.sibling([self.ring.one()]);
        }
        let mut acc = self.colon_element(&divisors[0])?;
        for k in &divisors[1..] {
            if acc.is_unit() {
                break;
            }
            acc = acc.intersect(&self.colon_element(k)?)?;
        }
        Ok(acc)
    }

    /// `(I : K^∞)` and the number of strict colon steps taken.
    pub fn saturate(&self, by: &Ideal) -> Result<(Ideal, usize)> {
        let cap = self.ring.config().saturation_cap;
        let mut current = self.clone();
        for steps in 0..=cap {
            let next = current.colon_ideal(by)?;
            if next.same_ideal(&current) {
                return Ok((current, steps));
            }
            current = next;
        }
        Err(Error::SaturationCap(cap))
    }

    /// `(I : u^∞)`.
    pub fn saturate_element(&self, u: &Polynomial) -> Result<(Ideal, usize)> {
        let by = self.sibling([u.to_ring(&self.ring)?])?;
        if by.gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        self.saturate(&by)
    }

    /// Whether the initial ideal contains a pure power of every variable.
    pub fn has_finite_colength(&self) -> bool {
        pure_power_bounds(&self.groebner_basis()).is_some()
    }

    /// Krull dimension of `A/I`.
    pub fn dimension(&self) -> Result<usize> {
        let gb = self.groebner_basis();
        if gb.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = gb
            .elements()
            .iter()
            .map(|g| g.lm().support().fold(0u64, |acc, i| acc | 1 << i))
            .collect();
        let mut best = 0;
        for subset in 0u64..(1 << n) {
            let size = subset.count_ones() as usize;
            if size > best && supports.iter().all(|&s| s & !subset != 0) {
                best = size;
            }
        }
        Ok(best)
    }
}

/// For each variable, the least exponent `a` with `x_i^a` a leading monomial.
pub(crate) fn pure_power_bounds(gb: &GroebnerBasis) -> Option<Vec<u32>> {
    let n = gb.ring().nvars();
    let mut bounds = vec![None; n];
    for m in gb.leading_monomials() {
        let support: Vec<usize> = m.support().collect();
        match support.as_slice() {
            [] => return Some(vec![0; n]),
            [i] => {
                let e = m.exponents()[*i];
                bounds[*i] = Some(bounds[*i].map_or(e, |b: u32| b.min(e)));
            }
            _ => {}
        }
    }
    bounds.into_iter().collect()
}

/// Generators (and a canonical reduced Gröbner basis) of `(a) ∩ (b)`,
/// computed from `r·(a) + (1 − r)·(b)` under an elimination order for `r`.
fn intersect_generators(
    ring: &Ring,
    a: &[Polynomial],
    b: &[Polynomial],
) -> Result<(Vec<Polynomial>, GroebnerBasis)> {
    let canon = ring.with_order(&CANONICAL_ORDER);
    if a.is_empty() || b.is_empty() {
        return Ok((
            Vec::new(),
            GroebnerBasis::from_known_basis(&canon, Vec::new()),
        ));
    }
    let elim = MonomialOrder::elimination(1, CANONICAL_ORDER);
    let big = ring.with_prepended_variable("r", elim);
    let mut gens = Vec::with_capacity(a.len() + 2 * b.len());
    for f in a {
        gens.push(f.lift_with_prepended(&big, 1));
    }
    for f in b {
        let lifted = f.lift_with_prepended(&big, 0);
        let r_lifted = f.lift_with_prepended(&big, 1);
        gens.push(&lifted - &r_lifted);
    }
    let gb = groebner_in_ring(&big, &gens)?;
    let eliminated: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|g| g.lm().exponents()[0] == 0)
        .map(|g| g.drop_first_variable(&canon))
        .collect();
    let gens = eliminated
        .iter()
        .map(|g| g.to_ring(ring))
        .collect::<Result<Vec<_>>>()?;
    Ok((gens, GroebnerBasis::from_known_basis(&canon, eliminated)))
}

pub fn bracket_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    ideal.bracket_power(e)
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.intersect(b)
}

pub fn colon_element(ideal: &Ideal, u: &Polynomial) -> Result<Ideal> {
    ideal.colon_element(u)
}

pub fn colon_ideal(ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
    ideal.colon_ideal(by)
}

/// What to saturate by.
pub enum SaturateBy<'a> {
    Ideal(&'a Ideal),
    Element(&'a Polynomial),
}

pub fn saturate(ideal: &Ideal, by: SaturateBy<'_>) -> Result<(Ideal, usize)> {
    match by {
        SaturateBy::Ideal(k) => ideal.saturate(k),
        SaturateBy::Element(u) => ideal.saturate_element(u),
    }
}

pub fn dimension(ideal: &Ideal) -> Result<usize> {
    ideal.dimension()
}

/// `f ∈ I`, decided by a normal form against the Gröbner basis under `ord`.
pub fn ideal_member(f: &Polynomial, ideal: &Ideal, ord: &MonomialOrder) -> Result<bool> {
    Ok(ideal.groebner_basis_in(ord)?.contains(f))
}
