//! h₁-localization, restriction to A(2) and τ-localization.

use motext_core::compare::*;
use motext_core::linalg::Echelon;
use motext_core::products::ProductEngine;
use motext_core::{AlgebraSpec, ExtClass, ExtTable, Resolution, TriDegree};

const MARGIN: u32 = DEFAULT_STABILITY_MARGIN;

fn resolve(spec: AlgebraSpec, s: u32, t: u32) -> Resolution {
    let mut r = Resolution::new(spec);
    r.extend(s, t).unwrap();
    r
}

fn class(table: &ExtTable, s: i32, f: i32, w: i32) -> ExtClass {
    table.unique_class(TriDegree::new(s, f, w)).unwrap().unwrap()
}

fn monomial(l: Localization) -> String {
    match l {
        Localization::Monomial(m) => m.to_string(),
        other => panic!("{other:?}"),
    }
}

#[test]
fn h1_localizations() {
    let res = resolve(AlgebraSpec::MOTIVIC, 15, 44);
    let table = res.ext();
    let mut e = ProductEngine::new(&res, &table);
    let h1 = class(&table, 1, 1, 1);
    let ring = LocalizedRing::full(5);
    let mut image = |d: (i32, i32, i32)| {
        let x = class(&table, d.0, d.1, d.2);
        h1_localized_image(&mut e, &x, &h1, &ring, MARGIN).unwrap()
    };
    assert_eq!(monomial(image((9, 5, 5))), "v1^4·h1");
    assert_eq!(monomial(image((8, 3, 5))), "v2·h1^2");
    assert_eq!(monomial(image((17, 4, 10))), "v3·h1^3");
    assert_eq!(monomial(image((14, 4, 8))), "v2^2·h1^2");
    assert_eq!(image((0, 1, 0)), Localization::H1Torsion(1));
    assert!(matches!(image((3, 1, 2)), Localization::H1Torsion(_)));

    let x3 = class(&table, 17, 4, 10);
    let tower = e.h_tower(&x3, &h1, 40).unwrap();
    assert!(tower.alive_at_boundary && tower.last_nonzero >= 10);

    for (n, stem) in [(None, 9), (Some(2), 8), (Some(3), 17)] {
        let mut m = LocalizedMonomial::one();
        match n {
            None => m.v1_fourth = 1,
            Some(n) => m.set_v(n, 1),
        }
        let pre = minimal_stem_preimage(&mut e, &m, &h1, &ring, MARGIN).unwrap().unwrap();
        assert_eq!(pre.degree.stem, stem, "{m}");
    }
}

#[test]
fn short_towers_are_inconclusive() {
    let res = resolve(AlgebraSpec::MOTIVIC, 6, 24);
    let table = res.ext();
    let mut e = ProductEngine::new(&res, &table);
    let h1 = class(&table, 1, 1, 1);
    let x3 = class(&table, 17, 4, 10);
    let l = h1_localized_image(&mut e, &x3, &h1, &LocalizedRing::full(4), MARGIN).unwrap();
    assert!(matches!(l, Localization::Inconclusive(_)));
}

#[test]
fn restriction_to_a2() {
    let a = resolve(AlgebraSpec::MOTIVIC, 15, 44);
    let b = resolve(AlgebraSpec::A2_MOTIVIC, 15, 44);
    let (at, bt) = (a.ext(), b.ext());
    let mut map = ComparisonMap::new(&b, &a).unwrap();

    let one = restrict_to_a2(&mut map, &class(&at, 0, 0, 0), &bt).unwrap();
    assert_eq!(one, class(&bt, 0, 0, 0));
    let x3 = class(&at, 17, 4, 10);
    let r = restrict_to_a2(&mut map, &x3, &bt).unwrap();
    assert!(!bt.is_zero(&r).unwrap());
    assert_eq!(r, class(&bt, 17, 4, 10));
    // g lives over A(2) but not over A.
    assert_eq!(bt.dim(TriDegree::new(20, 4, 12)).unwrap(), 1);
    assert_eq!(at.dim(TriDegree::new(20, 4, 12)).unwrap(), 0);

    // Ring map on a few products.
    let mut ae = ProductEngine::new(&a, &at);
    let mut be = ProductEngine::new(&b, &bt);
    let h1 = class(&at, 1, 1, 1);
    let h2 = class(&at, 3, 1, 2);
    for x in [x3.clone(), class(&at, 8, 3, 5), class(&at, 9, 5, 5)] {
        for h in [&h1, &h2] {
            let lhs = restrict_to_a2(&mut map, &ae.yoneda_product(&x, h).unwrap(), &bt).unwrap();
            let rx = restrict_to_a2(&mut map, &x, &bt).unwrap();
            let rh = restrict_to_a2(&mut map, h, &bt).unwrap();
            assert_eq!(lhs, be.yoneda_product(&rx, &rh).unwrap());
        }
    }

    // u from the chart, and the commuting square for x₃.
    let bh1 = class(&bt, 1, 1, 1);
    let (u, _) = locate_u(&mut be, &bh1, MARGIN).unwrap().unwrap();
    assert_eq!(u, TriDegree::new(8, 0, 4));
    let ring = LocalizedRing::a2(u);
    let down = h1_localized_image(&mut be, &r, &bh1, &ring, MARGIN).unwrap();
    let mut ae = ProductEngine::new(&a, &at);
    let up = h1_localized_image(&mut ae, &x3, &h1, &LocalizedRing::full(4), MARGIN).unwrap();
    match (up, down) {
        (Localization::Monomial(m), Localization::Monomial(n)) => {
            assert_eq!(restrict_monomial(&m), n);
            assert_eq!(n.to_string(), "v2·u·h1^3");
        }
        other => panic!("{other:?}"),
    }

    // Along each line of slope one, the h₁-periodic part never exceeds the
    // monomials in v₁⁴, v₂, u of that degree, and reaches them on the lines
    // that have room to stabilize.
    let mut lines: std::collections::BTreeMap<(i32, i32), (usize, usize)> = Default::default();
    for d in bt.nonzero_degrees() {
        if d.filtration + MARGIN as i32 >= 14 {
            continue;
        }
        let mut span: Option<Echelon> = None;
        let mut periodic = 0;
        for c in &bt.classes(d).unwrap() {
            let t = be.h_tower(c, &bh1, MARGIN).unwrap();
            if t.dies_at.is_none() && t.last_nonzero >= MARGIN {
                let top = t.classes.last().unwrap().clone();
                let span = span.get_or_insert_with(|| Echelon::new(top.coords.len(), 0));
                periodic += span.insert_plain(top.coords) as usize;
            }
        }
        let monomials = ring.monomials_in(d).len();
        assert!(periodic <= monomials, "{d}");
        let e = lines.entry(h1_key(d)).or_default();
        *e = (e.0.max(periodic), monomials);
    }
    for (key, (periodic, monomials)) in lines {
        // u·v₁⁸ on the line (16,4) first appears as (11,3,7)·P²h₁², beyond
        // filtration 14.
        if key.0 < 16 {
            assert_eq!(periodic, monomials, "line {key:?}");
        }
    }
}

#[test]
fn tau_localization() {
    let (s, t) = (8, 28);
    let mot = resolve(AlgebraSpec::MOTIVIC, s, t);
    let cl = resolve(AlgebraSpec::CLASSICAL, s, t);
    let (mt, ct) = (mot.ext(), cl.ext());
    let mut map = ComparisonMap::new(&cl, &mot).unwrap();
    let x3 = class(&mt, 17, 4, 10);
    let e0 = ct.unique_class(TriDegree::classical(17, 4)).unwrap().unwrap();
    assert_eq!(tau_localized_image(&mut map, &x3, &mt, &ct).unwrap(), TauLocalization::Class(e0));
    let h1 = class(&mt, 1, 1, 1);
    let ch1 = ct.unique_class(TriDegree::classical(1, 1)).unwrap().unwrap();
    assert_eq!(tau_localized_image(&mut map, &h1, &mt, &ct).unwrap(), TauLocalization::Class(ch1));
    let h1_4 = class(&mt, 4, 4, 4);
    assert_eq!(tau_localized_image(&mut map, &h1_4, &mt, &ct).unwrap(), TauLocalization::Torsion(1));

    // The image is injective on τ-free generators per degree.
    for stem in 0..=14 {
        for f in 0..s as i32 - 1 {
            let Some(g) = mt.group(stem, f).unwrap() else { continue };
            let mut span = Echelon::new(ct.stable_dim(stem, f).unwrap(), 0);
            for m in g.module_generators().into_iter().filter(|m| m.tau_order.is_none()) {
                match tau_localized_image(&mut map, &m.class, &mt, &ct).unwrap() {
                    TauLocalization::Class(c) => assert!(span.insert_plain(c.coords)),
                    other => panic!("{other:?}"),
                }
            }
            assert_eq!(span.rank(), ct.stable_dim(stem, f).unwrap());
        }
    }
}
