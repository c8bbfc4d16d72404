//! Ext dimensions against published Adams charts, and the vanishing region.

use motext_core::resolution::verify_vanishing;
use motext_core::{AlgebraSpec, Error, Resolution, TriDegree};

#[test]
fn classical_spot_dimensions() {
    let mut res = Resolution::new(AlgebraSpec::CLASSICAL);
    res.extend(9, 27).unwrap();
    let table = res.ext();
    // (stem, f, dim): h₀⁵, h₁, h₁², h₀²h₂, h₀³h₃, d₀, {h₀⁴h₄, h₁d₀}, e₀.
    for (stem, f, dim) in [
        (0, 5, 1),
        (1, 1, 1),
        (2, 2, 1),
        (3, 3, 1),
        (7, 4, 1),
        (14, 4, 1),
        (15, 5, 2),
        (17, 4, 1),
    ] {
        assert_eq!(table.stable_dim(stem, f).unwrap(), dim, "({stem},{f})");
    }
    for f in 0..=9 {
        assert_eq!(table.stable_dim(0, f).unwrap(), 1);
    }
    let column = |stem| (0..=9).map(|f| table.stable_dim(stem, f).unwrap()).collect::<Vec<_>>();
    assert_eq!(column(1), [0, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
    assert_eq!(column(2), [0, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
    assert_eq!(column(3), [0, 1, 1, 1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(column(7), [0, 1, 1, 1, 1, 0, 0, 0, 0, 0]);
    assert_eq!(column(15), [0, 1, 1, 1, 1, 2, 1, 1, 1, 0]);
}

#[test]
fn motivic_dimensions() {
    let mut res = Resolution::new(AlgebraSpec::MOTIVIC);
    res.extend(6, 26).unwrap();
    let table = res.ext();
    for ((s, f, w), dim) in [
        ((1, 1, 1), 1),
        ((2, 2, 2), 1),
        ((4, 4, 4), 1),
        ((4, 4, 3), 0),
        ((17, 4, 10), 1),
        ((17, 4, 9), 1),
        ((20, 4, 12), 0),
        ((20, 4, 11), 1),
    ] {
        assert_eq!(table.dim(TriDegree::new(s, f, w)).unwrap(), dim, "({s},{f},{w})");
    }
}

#[test]
fn queries_outside_the_range_fail() {
    let mut res = Resolution::new(AlgebraSpec::MOTIVIC);
    res.extend(4, 12).unwrap();
    let table = res.ext();
    assert!(matches!(
        table.dim(TriDegree::new(17, 4, 10)),
        Err(Error::OutOfRange { .. })
    ));
    // The top stage only bounds the kernel, so motivic Ext stops one short.
    assert!(table.dim(TriDegree::new(0, 4, 0)).is_err());
    assert!(table.dim(TriDegree::new(0, 3, 0)).is_ok());
}

#[test]
fn tau_inverted_motivic_matches_classical() {
    let (max_s, max_t) = (7, 27);
    let mut mot = Resolution::new(AlgebraSpec::MOTIVIC);
    mot.extend(max_s, max_t).unwrap();
    let mut cl = Resolution::new(AlgebraSpec::CLASSICAL);
    cl.extend(max_s, max_t).unwrap();
    let (mt, ct) = (mot.ext(), cl.ext());
    for stem in 0..=20 {
        for f in 0..max_s as i32 {
            if stem + f > max_t as i32 {
                continue;
            }
            assert_eq!(mt.stable_dim(stem, f).unwrap(), ct.stable_dim(stem, f).unwrap(), "({stem},{f})");
        }
    }
}

#[test]
fn vanishing_below_intercept_minus_three() {
    let mut res = Resolution::new(AlgebraSpec::CLASSICAL);
    res.extend(16, 46).unwrap();
    let report = verify_vanishing(&res.ext(), 30);
    assert!(report.passed(), "{report:?}");
    let degrees: Vec<(i32, i32)> = report
        .intercept_minus_three
        .iter()
        .map(|(d, _)| (d.stem, d.filtration))
        .collect();
    assert_eq!(degrees, [(3, 3), (11, 7), (19, 11), (27, 15)]);
}

#[test]
fn empty_range_vanishing_is_vacuous() {
    let res = Resolution::new(AlgebraSpec::CLASSICAL);
    let report = verify_vanishing(&res.ext(), -1);
    assert!(report.passed());
    assert!(report.intercept_minus_three.is_empty());
}
