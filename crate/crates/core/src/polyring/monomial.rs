use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Dense exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u32; 6]>,
}

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = u32>) -> Self {
        Monomial {
            exps: exps.into_iter().collect(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// `self | other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    /// Product. Panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Every exponent multiplied by `q`.
    pub fn scaled(&self, q: u32) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for a in &self.exps {
            exps.push(a.checked_mul(q).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    /// Indices of variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// All monomials in `nvars` variables of total degree exactly `degree`,
    /// in descending lex order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<Monomial>) {
            if left == 1 {
                prefix.push(remaining);
                out.push(Monomial::new(prefix.iter().copied()));
                prefix.pop();
                return;
            }
            for e in (0..=remaining).rev() {
                prefix.push(e);
                rec(prefix, left - 1, remaining - e, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
        out
    }

    pub(crate) fn with_prepended(&self, extra: u32) -> Monomial {
        let mut exps = SmallVec::with_capacity(self.exps.len() + 1);
        exps.push(extra);
        exps.extend_from_slice(&self.exps);
        Monomial { exps }
    }

    pub(crate) fn without_first(&self) -> Monomial {
        Monomial {
            exps: SmallVec::from_slice(&self.exps[1..]),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}
