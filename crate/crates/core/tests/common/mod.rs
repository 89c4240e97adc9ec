//! Test-side oracles: sparse Gaussian elimination over F_p on degree-bounded
//! spans, plain term-list multiplication, and seeded random ideals. None of
//! this goes through the Gröbner engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use hkforge_core::{Ideal, Monomial, MonomialOrder, Polynomial, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Terms = Vec<(u64, Vec<u32>)>;

pub fn terms_of(f: &Polynomial) -> Terms {
    f.terms()
        .iter()
        .map(|t| (t.coeff as u64, t.mono.exponents().to_vec()))
        .collect()
}

pub fn from_terms(ring: &Ring, terms: &Terms) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms.iter().map(|(c, e)| {
            (
                (*c % ring.characteristic() as u64) as u32,
                Monomial::new(e.iter().copied()),
            )
        }),
    )
}

/// Schoolbook product of term lists.
pub fn naive_mul(p: u64, a: &Terms, b: &Terms) -> Terms {
    let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
    for (ca, ea) in a {
        for (cb, eb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = acc.entry(e).or_insert(0);
            *slot = (*slot + ca * cb) % p;
        }
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(e, c)| (c, e))
        .collect()
}

pub fn naive_pow(p: u64, nvars: usize, a: &Terms, k: u64) -> Terms {
    let mut acc: Terms = vec![(1, vec![0; nvars])];
    for _ in 0..k {
        acc = naive_mul(p, &acc, a);
    }
    acc
}

pub fn same_terms(a: &Terms, b: &Terms) -> bool {
    let norm = |t: &Terms| {
        let mut v: Vec<(Vec<u32>, u64)> = t
            .iter()
            .filter(|(c, _)| *c != 0)
            .map(|(c, e)| (e.clone(), *c))
            .collect();
        v.sort();
        v
    };
    norm(a) == norm(b)
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn inv(p: u64, a: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// The span of `{μ·g : deg(μ·g) ≤ D}` for growing `D`, kept in echelon form.
pub struct SpanOracle {
    p: u64,
    nvars: usize,
    gens: Vec<Terms>,
    cols: HashMap<Vec<u32>, usize>,
    pivots: HashMap<usize, BTreeMap<usize, u64>>,
    done: Option<u32>,
}

impl SpanOracle {
    pub fn new(ideal: &Ideal) -> Self {
        let ring = ideal.ring();
        SpanOracle {
            p: ring.characteristic() as u64,
            nvars: ring.nvars(),
            gens: ideal.all_generators().iter().map(terms_of).collect(),
            cols: HashMap::new(),
            pivots: HashMap::new(),
            done: None,
        }
    }

    fn col(&mut self, e: &[u32]) -> usize {
        let n = self.cols.len();
        *self.cols.entry(e.to_vec()).or_insert(n)
    }

    fn row(&mut self, t: &Terms) -> BTreeMap<usize, u64> {
        let mut row = BTreeMap::new();
        for (c, e) in t {
            let k = self.col(e);
            let slot = row.entry(k).or_insert(0);
            *slot = (*slot + c) % self.p;
        }
        row.retain(|_, c| *c != 0);
        row
    }

    fn reduce(&self, mut row: BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        while let Some((&c, &v)) = row.iter().next() {
            match self.pivots.get(&c) {
                Some(piv) => {
                    for (&k, &pv) in piv {
                        let slot = row.entry(k).or_insert(0);
                        *slot = (*slot + self.p - v * pv % self.p) % self.p;
                        if *slot == 0 {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    row.remove(&c);
                    out.insert(c, v);
                }
            }
        }
        out
    }

    fn insert(&mut self, t: &Terms) {
        let row = self.row(t);
        let mut red = self.reduce(row);
        // pivots must reduce later rows fully, so re-reduce the remainder
        // against itself by picking its first column as the new pivot
        if let Some((&lead, &v)) = red.iter().next() {
            let s = inv(self.p, v);
            for c in red.values_mut() {
                *c = *c * s % self.p;
            }
            // eliminate `lead` from existing pivots so that reduce() stays
            // a single pass per column
            let new = red.clone();
            for piv in self.pivots.values_mut() {
                if let Some(&f) = piv.get(&lead) {
                    for (&k, &nv) in &new {
                        let slot = piv.entry(k).or_insert(0);
                        *slot = (*slot + self.p - f * nv % self.p) % self.p;
                        if *slot == 0 {
                            piv.remove(&k);
                        }
                    }
                }
            }
            red = new;
            self.pivots.insert(lead, red);
        }
    }

    fn extend_to(&mut self, bound: u32) {
        let start = match self.done {
            Some(d) if d >= bound => return,
            Some(d) => d + 1,
            None => 0,
        };
        for d in start..=bound {
            for m in monomials_of_degree(self.nvars, d) {
                self.col(&m);
            }
            for g in self.gens.clone() {
                let gd = g
                    .iter()
                    .map(|(_, e)| e.iter().sum::<u32>())
                    .max()
                    .unwrap_or(0);
                if gd > d {
                    continue;
                }
                for mu in monomials_of_degree(self.nvars, d - gd) {
                    let shifted: Terms = g
                        .iter()
                        .map(|(c, e)| (*c, e.iter().zip(&mu).map(|(a, b)| a + b).collect()))
                        .collect();
                    self.insert(&shifted);
                }
            }
        }
        self.done = Some(bound);
    }

    /// `dim_k` of polynomials of degree ≤ `bound` modulo the span.
    pub fn quotient_dimension(&mut self, bound: u32) -> u64 {
        self.extend_to(bound);
        let total: usize = (0..=bound)
            .map(|d| monomials_of_degree(self.nvars, d).len())
            .sum();
        (total - self.pivots.len()) as u64
    }

    /// First value repeated `window` times in a row, scanning bounds up to `max_bound`.
    pub fn stable_dimension(&mut self, window: usize, max_bound: u32) -> Option<u64> {
        let mut last = None;
        let mut run = 0;
        for d in 0..=max_bound {
            let v = self.quotient_dimension(d);
            if Some(v) == last {
                run += 1;
                if run + 1 >= window {
                    return Some(v);
                }
            } else {
                last = Some(v);
                run = 0;
            }
        }
        None
    }

    /// Whether `f` lies in the span at degree bound `bound`.
    pub fn spans(&mut self, f: &Polynomial, bound: u32) -> bool {
        self.extend_to(bound);
        let row = self.row(&terms_of(f));
        self.reduce(row).is_empty()
    }
}

/// Membership by the degree-bounded span, trying bounds up to `deg f + slack`.
pub fn oracle_member(ideal: &Ideal, f: &Polynomial, slack: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let mut o = SpanOracle::new(ideal);
    o.spans(f, f.total_degree() as u32 + slack)
}

/// Colength of a finite-colength ideal by the stabilized span.
pub fn oracle_colength(ideal: &Ideal) -> u64 {
    SpanOracle::new(ideal)
        .stable_dimension(4, 40)
        .expect("oracle dimension stabilizes")
}

/// Monomial ideals only: count exponent vectors in the box that no
/// generator divides.
pub fn monomial_colength(nvars: usize, gens: &[Vec<u32>]) -> u64 {
    let mut bounds = vec![0u32; nvars];
    for g in gens {
        let support: Vec<usize> = (0..nvars).filter(|&i| g[i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            bounds[i] = if bounds[i] == 0 {
                g[i]
            } else {
                bounds[i].min(g[i])
            };
        }
    }
    assert!(bounds.iter().all(|&b| b > 0), "not finite colength");
    let mut count = 0;
    let mut e = vec![0u32; nvars];
    loop {
        if !gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == nvars {
                return count;
            }
            e[k] += 1;
            if e[k] < bounds[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

pub fn ring(p: u64, vars: &[&str]) -> Ring {
    Ring::new(p, vars, MonomialOrder::DegRevLex).unwrap()
}

/// Random polynomial with up to `terms` terms of total degree in `lo..=hi`.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    terms: usize,
    lo: u32,
    hi: u32,
) -> Polynomial {
    let n = ring.nvars();
    let p = ring.characteristic();
    let mut out = Vec::new();
    for _ in 0..terms {
        let d = rng.gen_range(lo..=hi);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        out.push((rng.gen_range(1..p), Monomial::new(e)));
    }
    Polynomial::from_terms(ring, out)
}

/// Finite-colength ideal: a pure power of each variable (exponent ≤ `max_pure`)
/// plus `extra` random polynomials of degree ≤ `max_deg`.
pub fn random_finite_colength(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    max_pure: u32,
    extra: usize,
    max_deg: u32,
) -> Ideal {
    let n = ring.nvars();
    let mut gens = Vec::new();
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = rng.gen_range(1..=max_pure);
        gens.push(ring.monomial(1, Monomial::new(e)));
    }
    for _ in 0..extra {
        gens.push(random_poly(rng, ring, 3, 1, max_deg));
    }
    Ideal::new(ring, gens).unwrap()
}

/// Monomial ideal with pure powers `≤ max_pure` and a few mixed monomials.
pub fn random_monomial_ideal(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    max_pure: u32,
    mixed: usize,
) -> Vec<Vec<u32>> {
    let mut gens = Vec::new();
    for i in 0..nvars {
        let mut e = vec![0u32; nvars];
        e[i] = rng.gen_range(1..=max_pure);
        gens.push(e);
    }
    for _ in 0..mixed {
        gens.push((0..nvars).map(|_| rng.gen_range(0..max_pure)).collect());
    }
    gens
}

pub fn monomial_ideal(ring: &Ring, gens: &[Vec<u32>]) -> Ideal {
    Ideal::new(
        ring,
        gens.iter()
            .map(|e| ring.monomial(1, Monomial::new(e.iter().copied()))),
    )
    .unwrap()
}
