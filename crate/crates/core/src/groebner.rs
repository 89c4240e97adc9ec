//! Buchberger's algorithm, reduced Gröbner bases and Gröbner certificates.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{divide, reduce, Monomial, MonomialOrder, Polynomial, Ring};

/// A Gröbner basis together with the order it was computed for.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    /// Ring whose order the basis is a Gröbner basis for.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.lm().clone()).collect()
    }

    /// True for the basis `{1}` of the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.lm().is_one())
    }

    /// Normal form of `f` in the basis's ring.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let f = f.to_ring(&self.ring).expect("same variables");
        reduce(&f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Wraps a list already known to be a Gröbner basis, interreducing it.
    pub(crate) fn from_known_basis(ring: &Ring, elements: Vec<Polynomial>) -> GroebnerBasis {
        GroebnerBasis {
            ring: ring.clone(),
            elements: reduce_basis(elements),
            reduced: true,
        }
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elements == other.elements
    }
}

/// `lc(g)·(L/lm f)·f − lc(f)·(L/lm g)·g` with `L = lcm(lm f, lm g)`, i.e. the
/// S-polynomial whose lcm term carries the coefficient `lc(f)·lc(g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    let ring = f.ring().with_order(ord);
    let f = f.to_ring(&ring)?;
    let g = g.to_ring(&ring)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(spoly(&f, &g))
}

fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (tf, tg) = (f.lt().unwrap(), g.lt().unwrap());
    let l = tf.mono.lcm(&tg.mono);
    let a = f.mul_term(tg.coeff, &l.checked_div(&tf.mono).unwrap());
    let b = g.mul_term(tf.coeff, &l.checked_div(&tg.mono).unwrap());
    &a - &b
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Normal selection: smallest lcm, ties broken by `(j, i)`.
fn select_pair(pairs: &mut Vec<Pair>, order: &MonomialOrder) -> Option<Pair> {
    let best = pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| order.cmp(&a.lcm, &b.lcm).then((a.j, a.i).cmp(&(b.j, b.i))))
        .map(|(k, _)| k)?;
    Some(pairs.swap_remove(best))
}

/// Gebauer–Möller update after adding basis element `h`.
fn gm_update(basis: &[Polynomial], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = basis[h].lm();
    let mut candidates: Vec<(usize, Monomial)> =
        active.iter().map(|&g| (g, lh.lcm(basis[g].lm()))).collect();
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    while !candidates.is_empty() {
        let (g1, l1) = candidates.remove(0);
        let coprime = lh.is_coprime(basis[g1].lm());
        let dominated = candidates
            .iter()
            .chain(kept.iter())
            .any(|(_, l2)| l2.divides(&l1));
        if coprime || !dominated {
            kept.push((g1, l1));
        }
    }
    pairs.retain(|p| {
        !lh.divides(&p.lcm) || basis[p.i].lm().lcm(lh) == p.lcm || basis[p.j].lm().lcm(lh) == p.lcm
    });
    for (g, l) in kept {
        if !lh.is_coprime(basis[g].lm()) {
            pairs.push(Pair { i: g, j: h, lcm: l });
        }
    }
    active.retain(|&g| !lh.divides(basis[g].lm()));
    active.push(h);
}

/// Minimalizes and tail-reduces a Gröbner basis; output is monic and sorted
/// by descending leading monomial.
fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.retain(|g| !g.is_zero());
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring().clone();
    if basis.iter().any(|g| g.lm().is_one()) {
        return vec![ring.one()];
    }
    let order = ring.order().clone();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, g)| g.clone())
                .collect();
            reduce(&minimal[k], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    out
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring` (whose
/// order is used).
pub(crate) fn groebner_in_ring(ring: &Ring, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let order = ring.order().clone();
    let use_gm = ring.config().gebauer_moller;
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut active: Vec<usize> = Vec::new();

    let push = |h: Polynomial,
                basis: &mut Vec<Polynomial>,
                pairs: &mut Vec<Pair>,
                active: &mut Vec<usize>| {
        basis.push(h.monic());
        let j = basis.len() - 1;
        if use_gm {
            gm_update(basis, active, pairs, j);
        } else {
            for i in 0..j {
                pairs.push(Pair {
                    i,
                    j,
                    lcm: basis[i].lm().lcm(basis[j].lm()),
                });
            }
        }
    };

    let mut inputs: Vec<Polynomial> = Vec::with_capacity(gens.len());
    for g in gens {
        let g = g.to_ring(ring)?;
        if !g.is_zero() {
            inputs.push(g);
        }
    }
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for g in inputs {
        let r = reduce(&g, &basis);
        if !r.is_zero() {
            if r.lm().is_one() {
                return Ok(GroebnerBasis {
                    ring: ring.clone(),
                    elements: vec![ring.one()],
                    reduced: true,
                });
            }
            push(r, &mut basis, &mut pairs, &mut active);
        }
    }

    while let Some(pair) = select_pair(&mut pairs, &order) {
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if !use_gm && fi.lm().is_coprime(fj.lm()) {
            continue;
        }
        let s = spoly(fi, fj);
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.lm().is_one() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                elements: vec![ring.one()],
                reduced: true,
            });
        }
        push(r, &mut basis, &mut pairs, &mut active);
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        elements: reduce_basis(basis),
        reduced: true,
    })
}

/// Reduced Gröbner basis of `(gens)` under `ord`. All-zero input gives the
/// empty basis of the zero ideal.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Result<GroebnerBasis> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Precondition("no generators (ring unknown)".into()))?;
    let ring = first.ring().with_order(ord);
    groebner_in_ring(&ring, gens)
}

/// Division certificate for one S-pair.
#[derive(Debug, Clone)]
pub struct PairCertificate {
    pub j: usize,
    pub k: usize,
    pub s_polynomial: Polynomial,
    /// `a_ijk`, aligned with the basis.
    pub quotients: Vec<Polynomial>,
}

/// Standard representations `S(g_j, g_k) = Σ_i a_ijk g_i` for every pair.
#[derive(Debug, Clone)]
pub struct GBCertificate {
    pub ring: Ring,
    pub basis: Vec<Polynomial>,
    pub pairs: Vec<PairCertificate>,
}

#[derive(Debug, Clone)]
pub enum Certification {
    Certified(GBCertificate),
    /// The first pair whose S-polynomial leaves a nonzero remainder.
    Counterexample {
        j: usize,
        k: usize,
        remainder: Polynomial,
    },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified(_))
    }

    /// JSON export: pairs, quotients in text syntax, pass/fail flag.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct PairJson {
            j: usize,
            k: usize,
            s_polynomial: String,
            quotients: Vec<String>,
        }
        match self {
            Certification::Certified(cert) => serde_json::json!({
                "certified": true,
                "order": cert.ring.order().to_string(),
                "basis": cert.basis.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "pairs": cert.pairs.iter().map(|p| PairJson {
                    j: p.j,
                    k: p.k,
                    s_polynomial: p.s_polynomial.to_string(),
                    quotients: p.quotients.iter().map(|q| q.to_string()).collect(),
                }).collect::<Vec<_>>(),
            }),
            Certification::Counterexample { j, k, remainder } => serde_json::json!({
                "certified": false,
                "pair": [j, k],
                "remainder": remainder.to_string(),
            }),
        }
    }
}

impl GBCertificate {
    /// Re-checks both conditions of the certificate: the identity
    /// `S = Σ a_i g_i` and `lm(S) ≥ lm(a_i g_i)` for every nonzero `a_i`.
    pub fn verify(&self) -> bool {
        let order = self.ring.order();
        self.pairs.iter().all(|pc| {
            let mut sum = self.ring.zero();
            for (a, g) in pc.quotients.iter().zip(&self.basis) {
                if a.is_zero() {
                    continue;
                }
                let prod = a * g;
                if pc.s_polynomial.is_zero()
                    || order.cmp(pc.s_polynomial.lm(), prod.lm()) == Ordering::Less
                {
                    return false;
                }
                sum = &sum + &prod;
            }
            sum == pc.s_polynomial && spoly(&self.basis[pc.j], &self.basis[pc.k]) == pc.s_polynomial
        })
    }
}

/// Certifies `basis` as a Gröbner basis under `ord` by dividing every
/// S-polynomial by the basis and recording the quotients.
pub fn certify_groebner(basis: &[Polynomial], ord: &MonomialOrder) -> Result<Certification> {
    let first = basis
        .first()
        .ok_or_else(|| Error::Precondition("empty basis".into()))?;
    let ring = first.ring().with_order(ord);
    let mut gs = Vec::with_capacity(basis.len());
    for g in basis {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        gs.push(g.to_ring(&ring)?);
    }
    let mut pairs = Vec::new();
    for j in 0..gs.len() {
        for k in j + 1..gs.len() {
            let s = spoly(&gs[j], &gs[k]);
            let d = divide(&s, &gs);
            if !d.remainder.is_zero() {
                return Ok(Certification::Counterexample {
                    j,
                    k,
                    remainder: d.remainder,
                });
            }
            pairs.push(PairCertificate {
                j,
                k,
                s_polynomial: s,
                quotients: d.quotients,
            });
        }
    }
    Ok(Certification::Certified(GBCertificate {
        ring,
        basis: gs,
        pairs,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use proptest::prelude::*;

    fn lex3(p: u64) -> Ring {
        Ring::new(p, &["s", "x", "y"], MonomialOrder::Lex).unwrap()
    }

    #[test]
    fn s_polynomial_of_monomials_vanishes() {
        let r = lex3(5);
        let a = r.parse("x^3*y").unwrap();
        let b = r.parse("s*y^4").unwrap();
        assert!(s_polynomial(&a, &b, &MonomialOrder::Lex).unwrap().is_zero());
        let g = r.parse("x*y*(x-y)*(x+y-s*y)").unwrap();
        assert!(s_polynomial(&g, &g, &MonomialOrder::Lex).unwrap().is_zero());
        assert_eq!(
            s_polynomial(&g, &r.zero(), &MonomialOrder::Lex).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn s_polynomial_against_x_power() {
        let r = lex3(5);
        let n = 9;
        let g = r.parse("x*y*(x-y)*(x+y-s*y)").unwrap();
        let xn = r.parse(&format!("x^{n}")).unwrap();
        let expected = r
            .parse(&format!(
                "-s*x^{}*y^3 - x^{}*y + x^{}*y^3",
                n - 1,
                n + 1,
                n - 1
            ))
            .unwrap();
        assert_eq!(
            s_polynomial(&xn, &g, &MonomialOrder::Lex).unwrap(),
            expected
        );
    }

    #[test]
    fn coprime_generators_are_already_a_basis() {
        let r = Ring::new(3, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let gb = buchberger(&[r.var(0), r.var(1)], &MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.elements(), &[r.var(0), r.var(1)]);
        let zero = buchberger(&[r.zero()], &MonomialOrder::Lex).unwrap();
        assert!(zero.is_empty());
    }

    #[test]
    fn counterexample_pair_is_reported() {
        let r = Ring::new(7, &["x", "y"], MonomialOrder::Lex).unwrap();
        let gs = vec![r.parse("x^2").unwrap(), r.parse("x*y + y^2").unwrap()];
        match certify_groebner(&gs, &MonomialOrder::Lex).unwrap() {
            Certification::Counterexample { j, k, remainder } => {
                assert_eq!((j, k), (0, 1));
                // S = y*x^2 - x*(xy + y^2) = -x*y^2 -> +y^3 after one division step
                assert_eq!(remainder, r.parse("y^3").unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
        let single = certify_groebner(&gs[1..], &MonomialOrder::Lex).unwrap();
        assert!(single.is_certified());
    }

    #[test]
    fn gebauer_moller_agrees_with_plain_buchberger() {
        let plain = Ring::new(5, &["s", "x", "y"], MonomialOrder::DegRevLex).unwrap();
        let gm = plain.with_config(Config {
            gebauer_moller: true,
            ..Config::default()
        });
        let gens = ["x^5", "y^5", "x*y*(x-y)*(x+y-s*y)", "s^2*x - y^3"];
        let a: Vec<_> = gens.iter().map(|t| plain.parse(t).unwrap()).collect();
        let b: Vec<_> = gens.iter().map(|t| gm.parse(t).unwrap()).collect();
        for ord in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            let ga = buchberger(&a, &ord).unwrap();
            let gb = buchberger(&b, &ord).unwrap();
            assert_eq!(ga.elements(), gb.elements());
        }
    }

    fn random_poly(r: Ring) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((1u32..3, 0u32..4, 0u32..4), 1..4).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter().map(|(c, a, b)| (c, Monomial::new([a, b]))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn output_is_certified_and_canonical(
            f in random_poly(Ring::new(3, &["x", "y"], MonomialOrder::DegRevLex).unwrap()),
            g in random_poly(Ring::new(3, &["x", "y"], MonomialOrder::DegRevLex).unwrap()),
            c in 1u32..3,
        ) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            for ord in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
                let gb = buchberger(&[f.clone(), g.clone()], &ord).unwrap();
                let cert = certify_groebner(gb.elements(), &ord).unwrap();
                match &cert {
                    Certification::Certified(c) => prop_assert!(c.verify()),
                    other => prop_assert!(false, "not certified: {:?}", other),
                }
                // permuted and rescaled generators give the identical basis
                let other = buchberger(&[g.scale(c), f.clone(), (&f + &g)], &ord).unwrap();
                prop_assert_eq!(gb.elements(), other.elements());
                prop_assert!(gb.contains(&f) && gb.contains(&g));
            }
        }
    }
}
