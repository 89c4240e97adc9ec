//! Mechanical checks of the `(xⁿ, yⁿ, g)` construction in `F_p[s,x,y]` and of
//! the Katzman example `F_p[s,x,y]/(g)` with `J = (x^p, y^p)`, `I = (x,y)^p`.
//!
//! Failed claims are report entries, not errors.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, certify_groebner};
use crate::ideals::Ideal;
use crate::lengths::gamma_length;
use crate::polyring::{Monomial, MonomialOrder, Polynomial, PrimeField, Ring};

/// Instantiated polynomials and ideals of the construction, in lex `s > x > y`.
#[derive(Debug, Clone)]
pub struct ConstructionData {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub ring: Ring,
    /// `xy(x-y)(x+y-sy)`
    pub g: Polynomial,
    /// `Σ_{j=2}^{n-1} (-1)^j x^{n+1-j} y^j`
    pub f: Polynomial,
    /// `(x,y)^{n+2}`
    pub b: Ideal,
    /// `(xⁿ, yⁿ, g)`
    pub e: Ideal,
    /// `e + (f)`
    pub h: Ideal,
}

impl ConstructionData {
    fn mono(&self, s: u32, x: u32, y: u32) -> Polynomial {
        self.ring.monomial(1, Monomial::new([s, x, y]))
    }

    /// `{g, xⁿ, x^{n-1}y³, x^{n-2}y⁴, ..., x³y^{n-1}, yⁿ}`
    pub fn stated_basis(&self) -> Vec<Polynomial> {
        let n = self.n;
        let mut out = vec![self.g.clone(), self.mono(0, n, 0)];
        for i in (3..=n - 1).rev() {
            out.push(self.mono(0, i, n + 2 - i));
        }
        out.push(self.mono(0, 0, n));
        out
    }

    /// The length `n+5` vector in `F_p[r,s,x,y]` (lex `r > s > x > y`)
    /// generating `r·h + (1-r)·s`.
    pub fn elimination_vector(&self) -> Result<Vec<Polynomial>> {
        let ring = Ring::new(self.p as u64, &["r", "s", "x", "y"], MonomialOrder::Lex)?
            .with_config(self.ring.config().clone());
        let (n, m) = (self.n as i64, self.m as i64);
        let t = |c: i64, r: u32, s: u32, x: u32, y: u32| (c, [r, s, x, y]);
        let build = |terms: Vec<(i64, [u32; 4])>| -> Result<Polynomial> {
            let refs: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, &e[..])).collect();
            ring.poly(&refs)
        };
        let nu = self.n;
        let mut out = vec![
            build(vec![t(1, 1, 1, 0, 0), t(-1, 0, 1, 0, 0)])?,
            build(vec![t(1, 1, 0, nu, 0)])?,
            build(vec![
                t(1, 1, 0, 3, 1),
                t(-1, 1, 0, 1, 3),
                t(-1, 0, 1, 2, 2),
                t(1, 0, 1, 1, 3),
            ])?,
        ];
        let mut d = vec![t(m, 1, 0, 2, nu - 1)];
        for j in 1..=n - 3 {
            let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
            d.push(t(sign * j, 0, 1, (n - 1 - j) as u32, (j + 2) as u32));
        }
        out.push(build(d)?);
        out.push(build(vec![t(1, 1, 0, 0, nu)])?);
        out.push(build(vec![
            t(1, 0, 2, 2, 2),
            t(-1, 0, 2, 1, 3),
            t(-1, 0, 1, 3, 1),
            t(1, 0, 1, 1, 3),
        ])?);
        out.push(build(vec![t(1, 0, 1, nu, 0)])?);
        let sf = (2..=n - 1)
            .map(|j| {
                t(
                    if j % 2 == 0 { 1 } else { -1 },
                    0,
                    1,
                    (n + 1 - j) as u32,
                    j as u32,
                )
            })
            .collect();
        out.push(build(sf)?);
        for i in (3..=nu - 2).rev() {
            out.push(build(vec![t(1, 0, 1, i, nu + 2 - i)])?);
        }
        out.push(build(vec![t(1, 0, 1, 0, nu)])?);
        Ok(out)
    }
}

fn sxy_ring(p: u32) -> Result<Ring> {
    Ring::new(p as u64, &["s", "x", "y"], MonomialOrder::Lex)
}

fn g_poly(ring: &Ring) -> Result<Polynomial> {
    ring.parse("x*y*(x-y)*(x+y-s*y)")
}

fn f_poly(ring: &Ring, n: u32) -> Polynomial {
    let terms = (2..n).map(|j| {
        let c = if j % 2 == 0 {
            1
        } else {
            ring.characteristic() - 1
        };
        (c, Monomial::new([0, n + 1 - j, j]))
    });
    Polynomial::from_terms(ring, terms)
}

fn check_odd_prime(p: u32) -> Result<()> {
    if p < 3 {
        return Err(Error::Precondition(format!("p = {p} must be an odd prime")));
    }
    PrimeField::new(p as u64)?;
    Ok(())
}

pub fn build_construction(p: u32, m: u32) -> Result<ConstructionData> {
    if m < 4 {
        return Err(Error::Precondition(format!("m = {m} must be at least 4")));
    }
    check_odd_prime(p)?;
    if m.is_multiple_of(p) {
        return Err(Error::Precondition(format!("p = {p} divides m = {m}")));
    }
    construction_for_n(sxy_ring(p)?, p, m, 2 * m + 1)
}

fn construction_for_n(ring: Ring, p: u32, m: u32, n: u32) -> Result<ConstructionData> {
    let g = g_poly(&ring)?;
    let f = f_poly(&ring, n);
    let b = Ideal::monomial_power(&ring, &[1, 2], n + 2);
    let xn = ring.monomial(1, Monomial::new([0, n, 0]));
    let yn = ring.monomial(1, Monomial::new([0, 0, n]));
    let e = Ideal::new(&ring, [xn, yn, g.clone()])?;
    let h = e.sum(&Ideal::new(&ring, [f.clone()])?)?;
    Ok(ConstructionData {
        p,
        m,
        n,
        ring,
        g,
        f,
        b,
        e,
        h,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub witness: Value,
}

impl Claim {
    fn new(id: &str, description: &str, passed: bool, witness: Value) -> Self {
        Claim {
            id: id.into(),
            description: description.into(),
            passed,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub subject: String,
    pub parameters: BTreeMap<String, u64>,
    pub claims: Vec<Claim>,
    /// Extra checks that do not count toward the enumerated claims.
    pub supplementary: Vec<Claim>,
}

impl ClaimReport {
    /// True when every enumerated claim passed.
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    /// True when the claims and the supplementary checks all passed.
    pub fn fully_passed(&self) -> bool {
        self.all_passed() && self.supplementary.iter().all(|c| c.passed)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims
            .iter()
            .chain(&self.supplementary)
            .find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["passed"] = json!(self.fully_passed());
        v
    }
}

fn basis_strings(ideal: &Ideal) -> Vec<String> {
    ideal
        .groebner_basis()
        .elements()
        .iter()
        .map(|g| g.to_string())
        .collect()
}

/// Checks the seven claims of the construction for `(p, m)`, plus
/// certification of the stated lex basis and of the elimination vector.
pub fn verify_construction(p: u32, m: u32) -> Result<ClaimReport> {
    let data = build_construction(p, m)?;
    let ring = &data.ring;
    let (n, e, h, f) = (data.n, &data.e, &data.h, &data.f);
    let s = ring.var(0);
    let x = ring.var(1);
    let y = ring.var(2);
    let maximal = Ideal::maximal(ring);
    let mut claims = Vec::with_capacity(7);

    let outside: Vec<String> = data
        .b
        .gens()
        .iter()
        .filter(|g| !e.contains(g))
        .map(|g| g.to_string())
        .collect();
    claims.push(Claim::new(
        "1",
        "(x,y)^{n+2} ⊆ e",
        outside.is_empty(),
        json!({ "generators": data.b.gens().len(), "not_in_e": outside }),
    ));

    let sf = &s * f;
    let in2 = e.contains(&sf);
    claims.push(Claim::new("2", "s·f ∈ e", in2, json!({ "sf_in_e": in2 })));

    let (xf, yf) = (e.contains(&(&x * f)), e.contains(&(&y * f)));
    claims.push(Claim::new(
        "3",
        "x·f ∈ e and y·f ∈ e",
        xf && yf,
        json!({ "xf_in_e": xf, "yf_in_e": yf }),
    ));

    let f_in = e.contains(f);
    let colon_f = e.colon_element(f)?;
    let colon_is_max = colon_f.same_ideal(&maximal);
    claims.push(Claim::new(
        "4",
        "f ∉ e and (e : f) = m",
        !f_in && colon_is_max,
        json!({
            "f_in_e": f_in,
            "colon_basis": basis_strings(&colon_f),
            "colon_is_maximal": colon_is_max,
        }),
    ));

    let h_cap_s = h.intersect(&Ideal::new(ring, [s.clone()])?)?;
    let mut stated = vec![&s * &y.pow(n), &s * f, &s * &x.pow(n), &s * &data.g];
    let x3y4 = ring.monomial(1, Monomial::new([1, 3, 4]));
    for mono in Ideal::monomial_power(ring, &[1, 2], n - 5).gens() {
        stated.push(&x3y4 * mono);
    }
    let stated = Ideal::new(ring, stated)?;
    let witness_ok = h_cap_s.same_ideal(&stated);
    let colon_s = h.colon_element(&s)?;
    let saturated = colon_s.same_ideal(h);
    claims.push(Claim::new(
        "5",
        "(h : s) = h",
        saturated && witness_ok,
        json!({
            "colon_equals_h": saturated,
            "h_cap_s_matches_stated_generators": witness_ok,
            "h_cap_s_basis": basis_strings(&h_cap_s),
        }),
    ));

    let (sat_s, steps_s) = e.saturate_element(&s)?;
    let (sat_m, steps_m) = e.saturate(&maximal)?;
    let (eq_s, eq_m) = (sat_s.same_ideal(h), sat_m.same_ideal(h));
    claims.push(Claim::new(
        "6",
        "(e : s^∞) = (e : m^∞) = h",
        eq_s && eq_m,
        json!({
            "s_saturation_equals_h": eq_s,
            "m_saturation_equals_h": eq_m,
            "s_saturation_steps": steps_s,
            "m_saturation_steps": steps_m,
        }),
    ));

    let len = gamma_length(e, &Ideal::unit(ring))?;
    claims.push(Claim::new(
        "7",
        "len(Γ_m(A/e)) = 1",
        len.value == Some(1),
        serde_json::to_value(&len).expect("length serializes"),
    ));

    let mut supplementary = Vec::new();
    let stated_basis = data.stated_basis();
    let cert = certify_groebner(&stated_basis, &MonomialOrder::Lex)?;
    supplementary.push(Claim::new(
        "stated_basis_certified",
        "{g, xⁿ, x^{n-1}y³, ..., x³y^{n-1}, yⁿ} is a lex Gröbner basis of e",
        cert.is_certified() && Ideal::new(ring, stated_basis.clone())?.same_ideal(e),
        json!({ "pairs_checked": pair_count(&cert) }),
    ));

    let computed = buchberger(e.gens(), &MonomialOrder::Lex)?;
    let mut got: Vec<Vec<u32>> = computed
        .leading_monomials()
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect();
    let mut want: Vec<Vec<u32>> = stated_basis
        .iter()
        .map(|g| g.to_order(&MonomialOrder::Lex).lm().exponents().to_vec())
        .collect();
    got.sort();
    want.sort();
    supplementary.push(Claim::new(
        "buchberger_leading_monomials",
        "the reduced lex basis of e has the stated leading monomials",
        got == want,
        json!({ "basis_size": computed.len() }),
    ));

    let fvec = data.elimination_vector()?;
    let fcert = certify_groebner(&fvec, &MonomialOrder::Lex)?;
    let big = fvec[0].ring().clone();
    let r = big.var(0);
    let one_minus_r = &big.one() - &r;
    let s_big = big.var(1);
    let mut a_gens: Vec<Polynomial> = h
        .gens()
        .iter()
        .map(|g| Ok(&r * &lift_sxy(g, &big)?))
        .collect::<Result<_>>()?;
    a_gens.push(&one_minus_r * &s_big);
    let same = Ideal::new(&big, a_gens)?.same_ideal(&Ideal::new(&big, fvec.clone())?);
    supplementary.push(Claim::new(
        "elimination_vector_certified",
        "the n+5 vector generates r·h + (1-r)·s and is a lex Gröbner basis",
        fcert.is_certified() && same,
        json!({ "length": fvec.len(), "generates": same, "pairs_checked": pair_count(&fcert) }),
    ));

    let mut parameters = BTreeMap::new();
    parameters.insert("p".into(), p as u64);
    parameters.insert("m".into(), m as u64);
    parameters.insert("n".into(), n as u64);
    Ok(ClaimReport {
        subject: "construction".into(),
        parameters,
        claims,
        supplementary,
    })
}

fn pair_count(cert: &crate::groebner::Certification) -> Value {
    match cert {
        crate::groebner::Certification::Certified(c) => json!(c.pairs.len()),
        crate::groebner::Certification::Counterexample { j, k, .. } => {
            json!(format!("failed at ({j}, {k})"))
        }
    }
}

/// Embeds a polynomial of `F_p[s,x,y]` into `F_p[r,s,x,y]`.
fn lift_sxy(f: &Polynomial, big: &Ring) -> Result<Polynomial> {
    Ok(Polynomial::from_terms(
        big,
        f.terms().iter().map(|t| {
            let ex = t.mono.exponents();
            (t.coeff, Monomial::new([0, ex[0], ex[1], ex[2]]))
        }),
    ))
}

/// Checks (i)–(v) of the Katzman example at `q = p^e`, `n = pq`.
pub fn verify_katzman(p: u32, e: u32) -> Result<ClaimReport> {
    verify_katzman_with_config(p, e, &Config::default())
}

pub fn verify_katzman_with_config(p: u32, e: u32, config: &Config) -> Result<ClaimReport> {
    check_odd_prime(p)?;
    if e == 0 {
        return Err(Error::Precondition("e must be at least 1".into()));
    }
    let ring = sxy_ring(p)?.with_config(config.clone());
    let cap = ring.config().e_cap;
    if e > cap {
        return Err(Error::ExponentCap { e, cap });
    }
    let q = (p as u64).pow(e) as u32;
    let n = p * q;
    let g = g_poly(&ring)?;
    let f = f_poly(&ring, n);

    let j = Ideal::new(
        &ring,
        [
            ring.parse(&format!("x^{p}"))?,
            ring.parse(&format!("y^{p}"))?,
        ],
    )?
    .with_relations([g.clone()])?;
    let i = Ideal::monomial_power(&ring, &[1, 2], p).with_relations([g.clone()])?;
    let jq = j.bracket_power(e)?;
    let iq = i.bracket_power(e)?;
    let mut claims = Vec::with_capacity(5);

    let z_in_i = iq.contains(&f);
    claims.push(Claim::new(
        "i",
        "z ∈ I^[q]",
        z_in_i,
        json!({ "member": z_in_i }),
    ));

    let z_in_j = jq.contains(&f);
    claims.push(Claim::new(
        "ii",
        "z ∉ J^[q]",
        !z_in_j,
        json!({ "member": z_in_j }),
    ));

    let colon = jq.colon_element(&f)?;
    let is_max = colon.same_ideal(&jq.sibling(ring.variables())?);
    claims.push(Claim::new(
        "iii",
        "(J^[q] : z) = m",
        is_max,
        json!({ "colon_basis": basis_strings(&colon) }),
    ));

    let c = Ideal::new(
        &ring,
        [
            ring.parse(&format!("x^{n}"))?,
            ring.parse(&format!("y^{n}"))?,
            ring.parse("x*y*(x-y)")?,
        ],
    )?;
    let w = ring.monomial(1, Monomial::new([0, q, (p - 1) * q]));
    let s = ring.var(0);
    let (sat, steps) = c.saturate_element(&s)?;
    let in_sat = sat.contains(&w);
    let mut by_power = Vec::new();
    for k in 0..=2u32 {
        let ck = if k == 0 {
            c.clone()
        } else {
            c.colon_element(&s.pow(k))?
        };
        by_power.push(ck.contains(&w));
    }
    claims.push(Claim::new(
        "iv",
        "x^q y^{(p-1)q} ∉ ((x^{pq}, y^{pq}, xy(x-y)) : s^∞)",
        !in_sat && by_power.iter().all(|b| !b),
        json!({
            "member_of_saturation": in_sat,
            "saturation_steps": steps,
            "member_after_colon_by_s^k": by_power,
        }),
    ));

    let len = gamma_length(&jq, &iq)?;
    claims.push(Claim::new(
        "v",
        "len(Γ_m(I^[q]/J^[q])) ≤ 1",
        matches!(len.value, Some(v) if v <= 1),
        serde_json::to_value(&len).expect("length serializes"),
    ));

    let mut parameters = BTreeMap::new();
    parameters.insert("p".into(), p as u64);
    parameters.insert("e".into(), e as u64);
    parameters.insert("q".into(), q as u64);
    parameters.insert("n".into(), n as u64);
    Ok(ClaimReport {
        subject: "katzman".into(),
        parameters,
        claims,
        supplementary: Vec::new(),
    })
}
