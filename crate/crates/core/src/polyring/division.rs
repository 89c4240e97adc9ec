use std::cmp::Ordering;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::{Polynomial, Term};
use crate::error::{Error, Result};

/// Result of dividing `f` by a list `G`: `f = Σ quotients[i]·G[i] + remainder`.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// `a - c*m*g`, where `a` and `g` are sorted descending under `order`.
pub(crate) fn sub_mul_terms(
    a: &[Term],
    c: u32,
    m: &Monomial,
    g: &[Term],
    field: &PrimeField,
    order: &MonomialOrder,
) -> Vec<Term> {
    let neg = field.neg(c);
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 0;
    for t in g {
        let mono = t.mono.mul(m);
        let coeff = field.mul(neg, t.coeff);
        while i < a.len() && order.cmp(&a[i].mono, &mono) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].mono == mono {
            let v = field.add(a[i].coeff, coeff);
            if v != 0 {
                out.push(Term { coeff: v, mono });
            }
            i += 1;
        } else if coeff != 0 {
            out.push(Term { coeff, mono });
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

/// Division core. All inputs must live in the same ring. When `record` is
/// false the quotients are left empty.
fn divide_impl(f: &Polynomial, divisors: &[Polynomial], record: bool) -> Division {
    let ring = f.ring().clone();
    let field = *ring.field();
    let order = ring.order().clone();
    let inv_lc: Vec<u32> = divisors
        .iter()
        .map(|g| field.inv(g.lt().expect("nonzero divisor").coeff))
        .collect();
    let mut quotient_terms: Vec<Vec<Term>> =
        vec![Vec::new(); if record { divisors.len() } else { 0 }];
    let mut work: Vec<Term> = f.terms().to_vec();
    let mut pos = 0;
    let mut rem: Vec<Term> = Vec::new();
    while pos < work.len() {
        let lead = &work[pos];
        let hit = divisors
            .iter()
            .enumerate()
            .find(|(_, g)| g.lm().divides(&lead.mono));
        match hit {
            Some((i, g)) => {
                let m = lead.mono.checked_div(g.lm()).expect("divides");
                let c = field.mul(lead.coeff, inv_lc[i]);
                if record {
                    quotient_terms[i].push(Term {
                        coeff: c,
                        mono: m.clone(),
                    });
                }
                work = sub_mul_terms(&work[pos..], c, &m, g.terms(), &field, &order);
                pos = 0;
            }
            None => {
                rem.push(work[pos].clone());
                pos += 1;
            }
        }
    }
    Division {
        quotients: quotient_terms
            .into_iter()
            .map(|ts| Polynomial::from_sorted(&ring, ts))
            .collect(),
        remainder: Polynomial::from_sorted(&ring, rem),
    }
}

/// Division with quotient bookkeeping. Divisors are tried in list order and
/// the largest reducible term is always reduced first.
pub fn divide(f: &Polynomial, divisors: &[Polynomial]) -> Division {
    divide_impl(f, divisors, true)
}

pub(crate) fn reduce(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    divide_impl(f, divisors, false).remainder
}

fn to_order_all(
    f: &Polynomial,
    gs: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<(Polynomial, Vec<Polynomial>)> {
    let ring = f.ring().with_order(ord);
    let f = f.to_ring(&ring)?;
    let mut out = Vec::with_capacity(gs.len());
    for g in gs {
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        out.push(g.to_ring(&ring)?);
    }
    Ok((f, out))
}

/// Remainder of `f` on division by `divisors` under `ord`.
pub fn normal_form(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<Polynomial> {
    let (f, gs) = to_order_all(f, divisors, ord)?;
    Ok(reduce(&f, &gs))
}

/// Division under `ord` with quotients.
pub fn divide_in(f: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Result<Division> {
    let (f, gs) = to_order_all(f, divisors, ord)?;
    Ok(divide(&f, &gs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;
    use proptest::prelude::*;

    #[test]
    fn basic_remainders() {
        let r = Ring::new(7, &["x", "y"], MonomialOrder::Lex).unwrap();
        let xy = r.parse("x*y").unwrap();
        let f = r.parse("x^2*y").unwrap();
        assert!(
            normal_form(&f, std::slice::from_ref(&xy), &MonomialOrder::Lex)
                .unwrap()
                .is_zero()
        );
        let g = r.parse("x^2 - 3*y + 1").unwrap();
        assert!(
            normal_form(&g, std::slice::from_ref(&g), &MonomialOrder::Lex)
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            normal_form(&f, &[r.zero()], &MonomialOrder::Lex).unwrap_err(),
            Error::ZeroDivisor
        );
    }

    #[test]
    fn quotients_reassemble() {
        let r = Ring::new(5, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let f = r.parse("x^3*y^2 + 2*x*y^4 - y + 1").unwrap();
        let gs = vec![r.parse("x*y - 1").unwrap(), r.parse("y^2 + x").unwrap()];
        let d = divide(&f, &gs);
        let mut back = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&gs) {
            back = &back + &(q * g);
        }
        assert_eq!(back, f);
        for t in d.remainder.terms() {
            assert!(gs.iter().all(|g| !g.lm().divides(&t.mono)));
        }
    }

    fn poly(r: Ring, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((1u32..5, 0u32..4, 0u32..4), 1..=max_terms).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter().map(|(c, a, b)| (c, Monomial::new([a, b]))),
            )
        })
    }

    proptest! {
        #[test]
        fn normal_form_is_idempotent_and_certified(
            f in poly(Ring::new(5, &["x", "y"], MonomialOrder::DegRevLex).unwrap(), 6),
            g1 in poly(Ring::new(5, &["x", "y"], MonomialOrder::DegRevLex).unwrap(), 3),
            g2 in poly(Ring::new(5, &["x", "y"], MonomialOrder::DegRevLex).unwrap(), 3),
        ) {
            prop_assume!(!g1.is_zero() && !g2.is_zero());
            let gs = vec![g1, g2];
            let ord = MonomialOrder::DegRevLex;
            let r = normal_form(&f, &gs, &ord).unwrap();
            prop_assert_eq!(normal_form(&r, &gs, &ord).unwrap(), r.clone());
            let d = divide(&f, &gs);
            let mut diff = &f - &r;
            for (q, g) in d.quotients.iter().zip(&gs) {
                diff = &diff - &(q * g);
            }
            prop_assert!(diff.is_zero());
        }
    }
}
