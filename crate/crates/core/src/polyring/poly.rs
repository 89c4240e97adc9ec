use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::PrimeFieldElement;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::ring::Ring;
use crate::error::{Error, Result};

/// A nonzero coefficient attached to a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
}

/// Sparse polynomial. Terms are kept strictly descending in the ring's order,
/// with no zero coefficients and no repeated monomials.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

/// Binary operations exposed through [`Polynomial::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    /// Normalizing constructor: sorts, merges repeated monomials, drops zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (u32, Monomial)>) -> Self {
        let field = *ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (c, m) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let c = c % field.characteristic();
            let slot = acc.entry(m).or_insert(0);
            *slot = field.add(*slot, c);
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already in canonical form.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under the ring's order.
    #[inline]
    pub fn lt(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Leading monomial under the ring's order. Panics on zero.
    #[inline]
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    pub fn leading_coefficient(&self) -> Option<PrimeFieldElement> {
        self.lt()
            .map(|t| PrimeFieldElement::from_raw(t.coeff, self.ring.characteristic()))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.mono.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn coefficient_of(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|t| &t.mono == m)
            .map_or(0, |t| t.coeff)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `self + c * other`, merging sorted term lists.
    fn add_scaled(&self, c: u32, other: &Polynomial) -> Polynomial {
        let field = *self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: field.mul(c, b[j].coeff),
                        mono: b[j].mono.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = field.add(a[i].coeff, field.mul(c, b[j].coeff));
                    if v != 0 {
                        out.push(Term {
                            coeff: v,
                            mono: a[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push(Term {
                coeff: field.mul(c, t.coeff),
                mono: t.mono.clone(),
            });
        }
        if c == 0 {
            out.retain(|t| t.coeff != 0);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let field = *self.ring.field();
        let c = c % field.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(c, t.coeff),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: u32, m: &Monomial) -> Polynomial {
        let field = *self.ring.field();
        let c = c % field.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(c, t.coeff),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        self.mul_term(1, m)
    }

    /// Scales to leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.lt() {
            None => self.clone(),
            Some(t) if t.coeff == 1 => self.clone(),
            Some(t) => self.scale(self.ring.field().inv(t.coeff)),
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let t = &small.terms[0];
            return big.mul_term(t.coeff, &t.mono);
        }
        let field = *self.ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(small.len() * big.len());
        for a in &small.terms {
            for b in &big.terms {
                let slot = acc.entry(a.mono.mul(&b.mono)).or_insert(0);
                *slot = field.add(*slot, field.mul(a.coeff, b.coeff));
            }
        }
        Polynomial::from_terms(&self.ring, acc.into_iter().map(|(m, c)| (c, m)))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// Checked binary arithmetic.
    pub fn arith(&self, other: &Polynomial, op: PolyOp) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = *self.ring.field();
        Ok(match op {
            PolyOp::Add => self.add_scaled(1, other),
            PolyOp::Sub => self.add_scaled(field.neg(1), other),
            PolyOp::Mul => self.mul_impl(other),
        })
    }

    /// `f^(p^e)`, computed termwise as `(c, a) -> (c, p^e a)`.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let cap = self.ring.config().e_cap;
        if e > cap {
            return Err(Error::ExponentCap { e, cap });
        }
        let q = (self.ring.characteristic() as u64)
            .checked_pow(e)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(Error::ExponentOverflow)? as u32;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                coeff: t.coeff,
                mono: t.mono.scaled(q)?,
            });
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// The same polynomial viewed in `ring` (same field and variables,
    /// possibly another order).
    pub fn to_ring(&self, ring: &Ring) -> Result<Polynomial> {
        if &self.ring == ring {
            return Ok(self.clone());
        }
        if !self.ring.same_variables(ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    pub fn to_order(&self, order: &MonomialOrder) -> Polynomial {
        self.to_ring(&self.ring.with_order(order))
            .expect("same variables")
    }

    /// Embeds into a ring with one extra leading variable, raised to `power`.
    pub(crate) fn lift_with_prepended(&self, ring: &Ring, power: u32) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|t| (t.coeff, t.mono.with_prepended(power))),
        )
    }

    /// Drops the first variable; only valid when it does not occur.
    pub(crate) fn drop_first_variable(&self, ring: &Ring) -> Polynomial {
        debug_assert!(self.terms.iter().all(|t| t.mono.exponents()[0] == 0));
        Polynomial::from_terms(
            ring,
            self.terms.iter().map(|t| (t.coeff, t.mono.without_first())),
        )
    }

    /// Exact quotient `self / divisor`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let d = super::division::divide(self, std::slice::from_ref(divisor));
        if !d.remainder.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(d.quotients.into_iter().next().unwrap())
    }
}

/// Maximal term of `f` under `ord`.
pub fn leading_term(f: &Polynomial, ord: &MonomialOrder) -> Result<(PrimeFieldElement, Monomial)> {
    let p = f.ring().characteristic();
    let best = if f.ring().order() == ord {
        f.lt()
    } else {
        f.terms().iter().max_by(|a, b| ord.cmp(&a.mono, &b.mono))
    };
    best.map(|t| (PrimeFieldElement::from_raw(t.coeff, p), t.mono.clone()))
        .ok_or(Error::ZeroPolynomial)
}

/// Checked `f op g`, or `c * f` for [`scale`](Polynomial::scale).
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    f.arith(g, op)
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Polynomial) -> bool {
        self.ring.same_variables(&other.ring)
            && if self.ring.order() == other.ring.order() {
                self.terms == other.terms
            } else {
                self.len() == other.len()
                    && other.to_ring(&self.ring).map(|o| o.terms == self.terms) == Ok(true)
            }
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.arith(rhs, $op).expect("ring mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, PolyOp::Add);
binop!(Sub, sub, PolyOp::Sub);
binop!(Mul, mul, PolyOp::Mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.characteristic() - 1)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.characteristic();
        let names = self.ring.var_names();
        for (k, t) in self.terms.iter().enumerate() {
            let c = PrimeFieldElement::from_raw(t.coeff, p).signed();
            let (neg, mag) = if c < 0 { (true, -c) } else { (false, c) };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if mag != 1 || t.mono.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
