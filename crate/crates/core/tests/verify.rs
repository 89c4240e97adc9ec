use hkforge_core::verify::{
    build_construction, verify_construction, verify_katzman, verify_katzman_with_config,
};
use hkforge_core::{Config, Error};

#[test]
fn construction_grid() {
    for p in [3u32, 5, 7] {
        for m in [4u32, 5, 6, 7] {
            if m % p == 0 {
                assert!(matches!(
                    build_construction(p, m),
                    Err(Error::Precondition(_))
                ));
                continue;
            }
            let report = verify_construction(p, m).unwrap();
            assert_eq!(report.claims.len(), 7);
            let ids: Vec<&str> = report.claims.iter().map(|c| c.id.as_str()).collect();
            assert_eq!(ids, ["1", "2", "3", "4", "5", "6", "7"]);
            assert!(report.fully_passed(), "p={p} m={m}: {}", report.to_json());
            assert_eq!(report.claim("7").unwrap().witness["value"], 1);
        }
    }
}

#[test]
fn construction_data() {
    let c = build_construction(5, 4).unwrap();
    assert_eq!(c.n, 9);
    // Σ_{j=2}^{n-1} (-1)^j x^{n+1-j} y^j
    let want: String = (2..=8)
        .map(|j: u32| {
            format!(
                "{}x^{}*y^{}",
                if j.is_multiple_of(2) { "+" } else { "-" },
                10 - j,
                j
            )
        })
        .collect();
    assert_eq!(c.f, c.ring.parse(&want).unwrap());
    assert_eq!(c.f.len(), 7);
    assert!(build_construction(3, 4).is_ok());
    assert!(build_construction(3, 6).is_err());
    assert!(build_construction(5, 3).is_err());
    assert!(build_construction(2, 5).is_err());
    assert!(build_construction(9, 5).is_err());
}

#[test]
fn katzman_small() {
    for (p, e) in [(3u32, 1u32), (5, 1), (3, 2)] {
        let report = verify_katzman(p, e).unwrap();
        assert_eq!(report.claims.len(), 5);
        assert!(report.all_passed(), "p={p} e={e}: {}", report.to_json());
        assert_eq!(report.claim("v").unwrap().witness["value"], 1);
        assert_eq!(report.parameters["q"], (p as u64).pow(e));
    }
}

#[test]
fn katzman_preconditions() {
    assert!(verify_katzman(3, 0).is_err());
    assert!(verify_katzman(4, 1).is_err());
    let config = Config {
        e_cap: 1,
        ..Config::default()
    };
    assert!(matches!(
        verify_katzman_with_config(3, 2, &config),
        Err(Error::ExponentCap { e: 2, cap: 1 })
    ));
}

#[test]
fn reports_serialize() {
    let report = verify_construction(3, 4).unwrap();
    let json = report.to_json();
    assert_eq!(json["subject"], "construction");
    assert_eq!(json["passed"], true);
    assert_eq!(json["parameters"]["n"], 9);
    assert_eq!(json["claims"].as_array().unwrap().len(), 7);
}
