mod common;

use common::{oracle_member, random_poly, ring};
use hkforge_core::ideals::{saturate, SaturateBy};
use hkforge_core::verify::build_construction;
use hkforge_core::{Error, Ideal, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn katzman_ring(p: u64) -> Ring {
    Ring::new(p, &["s", "x", "y"], MonomialOrder::DegRevLex).unwrap()
}

#[test]
fn bracket_power_examples() {
    let r = ring(3, &["x", "y"]);
    let m = Ideal::maximal(&r);
    let b = m.bracket_power(1).unwrap();
    assert!(b.same_ideal(&Ideal::parse(&r, &["x^3", "y^3"]).unwrap()));
    assert!(m.bracket_power(0).unwrap().same_ideal(&m));
    let i = Ideal::parse(&r, &["x^2 + y", "x*y^2"]).unwrap();
    assert!(i.bracket_power(0).unwrap().same_ideal(&i));
}

#[test]
fn bracket_of_ordinary_power() {
    for (p, e) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let r = katzman_ring(p);
        let q = p.pow(e);
        let xy = Ideal::monomial_power(&r, &[1, 2], 1);
        let lhs = xy.power(p as u32).bracket_power(e).unwrap();
        let rhs = Ideal::parse(&r, &[&format!("x^{q}"), &format!("y^{q}")])
            .unwrap()
            .power(p as u32);
        assert!(lhs.same_ideal(&rhs), "p={p} e={e}");
    }
}

#[test]
fn bracket_power_respects_cap() {
    let r = ring(3, &["x", "y"]);
    let m = Ideal::maximal(&r);
    let cap = r.config().e_cap;
    assert!(matches!(
        m.bracket_power(cap + 1),
        Err(Error::ExponentCap { .. })
    ));
}

#[test]
fn intersection_with_s() {
    for (p, m) in [(5, 4), (3, 5)] {
        let c = build_construction(p, m).unwrap();
        let r = &c.ring;
        let n = c.n;
        let s = r.var(0);
        let got = c.h.intersect(&c.h.sibling([s.clone()]).unwrap()).unwrap();
        let mut want = vec![
            r.monomial(1, Monomial::new([1, 0, n])),
            &s * &c.f,
            r.monomial(1, Monomial::new([1, n, 0])),
            &s * &c.g,
        ];
        for a in 0..=(n - 5) {
            want.push(r.monomial(1, Monomial::new([1, 3 + a, 4 + n - 5 - a])));
        }
        let want = Ideal::new(r, want).unwrap();
        assert!(got.same_ideal(&want), "p={p} m={m}");
    }
}

#[test]
fn basic_intersections() {
    let r = ring(5, &["x", "y"]);
    let i = Ideal::parse(&r, &["x^2 - y", "x*y^3"]).unwrap();
    assert!(i.intersect(&i).unwrap().same_ideal(&i));
    let x = Ideal::parse(&r, &["x"]).unwrap();
    let y = Ideal::parse(&r, &["y"]).unwrap();
    assert!(x
        .intersect(&y)
        .unwrap()
        .same_ideal(&Ideal::parse(&r, &["x*y"]).unwrap()));
    let unit = Ideal::unit(&r);
    assert!(i.intersect(&unit).unwrap().same_ideal(&i));
}

#[test]
fn colon_examples() {
    let c = build_construction(5, 4).unwrap();
    let m = Ideal::maximal(&c.ring);
    assert!(c.e.colon_element(&c.f).unwrap().same_ideal(&m));
    assert!(c.h.colon_element(&c.ring.var(0)).unwrap().same_ideal(&c.h));
    assert!(c.e.colon_element(&c.ring.one()).unwrap().same_ideal(&c.e));
    assert!(matches!(
        c.e.colon_element(&c.ring.zero()),
        Err(Error::ZeroDivisor)
    ));

    let em = c.e.colon_ideal(&m).unwrap();
    assert!(em.contains_ideal(&c.e));
    assert!(em.contains(&c.f));
    assert!(c
        .e
        .colon_ideal(&Ideal::unit(&c.ring))
        .unwrap()
        .same_ideal(&c.e));
}

#[test]
fn colon_by_maximal_in_the_plane() {
    let r = ring(3, &["x", "y"]);
    let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
    let got = i.colon_ideal(&Ideal::maximal(&r)).unwrap();
    assert!(got.same_ideal(&Ideal::parse(&r, &["x"]).unwrap()));
    // every f with f·x, f·y in I within degree 4 lies in the computed colon
    for mono in (0..=4).flat_map(|d| Monomial::all_of_degree(2, d)) {
        let f = r.monomial(1, mono);
        let inside =
            oracle_member(&i, &(&f * &r.var(0)), 2) && oracle_member(&i, &(&f * &r.var(1)), 2);
        assert_eq!(inside, got.contains(&f), "{f}");
    }
}

#[test]
fn saturation_examples() {
    let c = build_construction(5, 4).unwrap();
    let s = c.ring.var(0);
    let (by_s, _) = saturate(&c.e, SaturateBy::Element(&s)).unwrap();
    assert!(by_s.same_ideal(&c.h));
    let m = Ideal::maximal(&c.ring);
    let (by_m, steps) = saturate(&c.e, SaturateBy::Ideal(&m)).unwrap();
    assert!(by_m.same_ideal(&c.h));
    assert!(steps >= 1);
    let (same, steps) = c.e.saturate_element(&c.ring.one()).unwrap();
    assert!(same.same_ideal(&c.e));
    assert_eq!(steps, 0);
}

#[test]
fn dimension_examples() {
    let c = build_construction(5, 4).unwrap();
    assert_eq!(c.e.sibling([c.g.clone()]).unwrap().dimension().unwrap(), 2);
    assert_eq!(c.e.dimension().unwrap(), 1);
    let r = ring(3, &["x", "y"]);
    assert_eq!(Ideal::maximal(&r).dimension().unwrap(), 0);
    assert_eq!(Ideal::zero(&r).dimension().unwrap(), 2);
    assert!(Ideal::unit(&r).dimension().is_err());
}

#[test]
fn relations_are_not_bracketed() {
    let r = katzman_ring(3);
    let g = r.parse("x*y*(x-y)*(x+y-s*y)").unwrap();
    let j = Ideal::parse(&r, &["x^3", "y^3"])
        .unwrap()
        .with_relations([g.clone()])
        .unwrap();
    let jq = j.bracket_power(1).unwrap();
    assert!(jq.contains(&g));
    let plain = Ideal::parse(&r, &["x^9", "y^9"]).unwrap();
    assert!(jq.same_ideal(&plain.sum(&Ideal::new(&r, [g]).unwrap()).unwrap()));
}

fn two_poly_ideal(seed: u64, p: u64) -> (Ring, Vec<Polynomial>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = ring(p, &["x", "y"]);
    let mut gens = Vec::new();
    while gens.len() < 2 {
        let g = random_poly(&mut rng, &r, 3, 1, 3);
        if !g.is_zero() {
            gens.push(g);
        }
    }
    (r, gens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_power_is_well_defined(seed in any::<u64>(), c in 1u32..3, e in 0u32..2) {
        let (r, g) = two_poly_ideal(seed, 3);
        let a = Ideal::new(&r, g.clone()).unwrap();
        let shear = &g[0] + &g[1].scale(c);
        let b = Ideal::new(&r, [shear, g[1].scale(2), &g[0] * &g[1]]).unwrap();
        prop_assert!(a.same_ideal(&b));
        prop_assert!(a.bracket_power(e).unwrap().same_ideal(&b.bracket_power(e).unwrap()));
    }

    #[test]
    fn bracket_commutes_with_sums(seed in any::<u64>(), e in 0u32..3) {
        let (r, g) = two_poly_ideal(seed, 3);
        let i = Ideal::new(&r, [g[0].clone()]).unwrap();
        let k = Ideal::new(&r, [g[1].clone()]).unwrap();
        let lhs = i.sum(&k).unwrap().bracket_power(e).unwrap();
        let rhs = i.bracket_power(e).unwrap().sum(&k.bracket_power(e).unwrap()).unwrap();
        prop_assert!(lhs.same_ideal(&rhs));
    }

    #[test]
    fn saturation_is_stable(seed in any::<u64>()) {
        let (r, g) = two_poly_ideal(seed, 5);
        let i = Ideal::new(&r, g).unwrap();
        let m = Ideal::maximal(&r);
        let (sat, _) = i.saturate(&m).unwrap();
        prop_assert!(sat.contains_ideal(&i));
        prop_assert!(sat.colon_ideal(&m).unwrap().same_ideal(&sat));
        let x = r.var(0);
        let (sx, _) = i.saturate_element(&x).unwrap();
        prop_assert!(sx.colon_element(&x).unwrap().same_ideal(&sx));
    }

    #[test]
    fn colon_and_intersection_containments(seed in any::<u64>()) {
        let (r, g) = two_poly_ideal(seed, 5);
        let (_, h) = two_poly_ideal(seed.wrapping_add(1), 5);
        let i = Ideal::new(&r, g).unwrap();
        let k = Ideal::new(&r, h).unwrap();
        let meet = i.intersect(&k).unwrap();
        prop_assert!(i.contains_ideal(&meet));
        prop_assert!(k.contains_ideal(&meet));
        prop_assert!(meet.contains_ideal(&i.product(&k).unwrap()));
        let colon = i.colon_ideal(&k).unwrap();
        prop_assert!(colon.contains_ideal(&i));
        prop_assert!(i.contains_ideal(&colon.product(&k).unwrap()));
    }
}
