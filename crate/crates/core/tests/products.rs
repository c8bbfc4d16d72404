//! Algebraic properties of Yoneda products.

use motext_core::products::{ProductEngine, ScanOutcome};
use motext_core::{AlgebraSpec, ExtClass, ExtTable, Resolution, TriDegree};

fn basis(table: &ExtTable, max_stem: i32, max_f: i32) -> Vec<ExtClass> {
    let mut out = Vec::new();
    for g in table.groups() {
        let (stem, f) = (g.t() as i32 - g.filtration() as i32, g.filtration() as i32);
        if (1..=max_f).contains(&f) && stem <= max_stem {
            for w in g.nonzero_weights() {
                out.extend(g.classes(w));
            }
        }
    }
    out
}

fn add(a: &ExtClass, b: &ExtClass) -> ExtClass {
    assert_eq!(a.degree, b.degree);
    let mut c = a.coords.clone();
    c.xor_assign(&b.coords);
    ExtClass::new(a.degree, c)
}

fn in_range(table: &ExtTable, d: TriDegree) -> bool {
    table.covers(d.stem, d.filtration)
}

fn motivic(max_s: u32, max_t: u32) -> Resolution {
    let mut res = Resolution::new(AlgebraSpec::MOTIVIC);
    res.extend(max_s, max_t).unwrap();
    res
}

#[test]
fn commutative_and_bilinear() {
    let res = motivic(6, 26);
    let table = res.ext();
    let mut e = ProductEngine::new(&res, &table);
    let classes = basis(&table, 20, 5);
    let mut checked = 0;
    for a in &classes {
        for b in &classes {
            let d = a.degree + b.degree;
            if d.stem > 20 || !in_range(&table, d) {
                continue;
            }
            let ab = e.yoneda_product(a, b).unwrap();
            let ba = e.yoneda_product(b, a).unwrap();
            assert_eq!(ab, ba, "{} · {}", a.degree, b.degree);
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
    // (a + a') · b = a·b + a'·b wherever a degree holds two classes.
    for a in &classes {
        for a2 in classes.iter().filter(|c| c.degree == a.degree && c.coords != a.coords) {
            for b in classes.iter().take(6) {
                let d = a.degree + b.degree;
                if !in_range(&table, d) {
                    continue;
                }
                let lhs = e.yoneda_product(&add(a, a2), b).unwrap();
                let rhs = add(&e.yoneda_product(a, b).unwrap(), &e.yoneda_product(a2, b).unwrap());
                assert_eq!(lhs, table.reduce(&rhs).unwrap());
            }
        }
    }
}

#[test]
fn associative() {
    let res = motivic(7, 22);
    let table = res.ext();
    let mut e = ProductEngine::new(&res, &table);
    let classes = basis(&table, 12, 3);
    let mut checked = 0;
    for a in &classes {
        for b in &classes {
            for c in &classes {
                let d = a.degree + b.degree + c.degree;
                if d.stem > 12 || !in_range(&table, d) {
                    continue;
                }
                let ab = e.yoneda_product(a, b).unwrap();
                let bc = e.yoneda_product(b, c).unwrap();
                let left = e.yoneda_product(&ab, c).unwrap();
                let right = e.yoneda_product(a, &bc).unwrap();
                assert_eq!(left, right, "{} {} {}", a.degree, b.degree, c.degree);
                checked += 1;
            }
        }
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn tau_natural() {
    let res = motivic(6, 24);
    let table = res.ext();
    let mut e = ProductEngine::new(&res, &table);
    let classes = basis(&table, 16, 4);
    for a in &classes {
        for b in classes.iter().filter(|b| b.degree.stem <= 8) {
            let d = a.degree + b.degree;
            if d.stem > 16 || !in_range(&table, d) {
                continue;
            }
            let ab = e.yoneda_product(a, b).unwrap();
            let tau_ab = table.reduce(&table.tau_times(&ab)).unwrap();
            let ta_b = e.yoneda_product(&table.tau_times(a), b).unwrap();
            let a_tb = e.yoneda_product(a, &table.tau_times(b)).unwrap();
            assert_eq!(tau_ab, ta_b);
            assert_eq!(tau_ab, a_tb);
        }
    }
}

/// Products of the τ-free parts agree with classical products: compare
/// h₀, h₁, h₂ multiplication ranks per classical degree.
#[test]
fn products_specialize_to_classical() {
    let (max_s, max_t) = (6, 24);
    let mres = motivic(max_s, max_t);
    let mut cres = Resolution::new(AlgebraSpec::CLASSICAL);
    cres.extend(max_s, max_t).unwrap();
    let (mt, ct) = (mres.ext(), cres.ext());
    let mut me = ProductEngine::new(&mres, &mt);
    let mut ce = ProductEngine::new(&cres, &ct);
    for (hs, hw) in [(0, 0), (1, 1), (3, 2)] {
        let hm = mt.unique_class(TriDegree::new(hs, 1, hw)).unwrap().unwrap();
        let hc = ct.unique_class(TriDegree::classical(hs, 1)).unwrap().unwrap();
        for stem in 0..=12 {
            for f in 1..max_s as i32 - 1 {
                let target = (stem + hs, f + 1);
                if !mt.covers(target.0, target.1) {
                    continue;
                }
                // Classical rank of h· out of (stem, f).
                let cl = ct.classes(TriDegree::classical(stem, f)).unwrap();
                let crank = rank(cl.iter().map(|x| ce.yoneda_product(x, &hc).unwrap()).collect());
                // Motivic: multiply the τ-free generators, read off in the
                // stable slice.
                let g = match mt.group(stem, f).unwrap() {
                    Some(g) => g,
                    None => {
                        assert_eq!(crank, 0);
                        continue;
                    }
                };
                let free: Vec<ExtClass> = g
                    .module_generators()
                    .into_iter()
                    .filter(|m| m.tau_order.is_none())
                    .map(|m| m.class)
                    .collect();
                let tg = mt.group(target.0, target.1).unwrap();
                let images: Vec<ExtClass> = free
                    .iter()
                    .map(|x| {
                        let p = me.yoneda_product(x, &hm).unwrap();
                        let lo = tg.map_or(0, |g| g.weight_range().0);
                        let mut q = p.clone();
                        while q.degree.weight > lo {
                            q = mt.tau_times(&q);
                        }
                        mt.reduce(&q).unwrap()
                    })
                    .collect();
                assert_eq!(rank(images), crank, "h·({stem},{f}) with h in stem {hs}");
            }
        }
    }
}

fn rank(classes: Vec<ExtClass>) -> usize {
    use motext_core::linalg::Echelon;
    let width = classes.first().map_or(0, |c| c.coords.len());
    let mut e = Echelon::new(width, 0);
    classes.into_iter().filter(|c| e.insert_plain(c.coords.clone())).count()
}

#[test]
fn h_towers() {
    let res = motivic(8, 28);
    let table = res.ext();
    let mut e = ProductEngine::new(&res, &table);
    let class = |d| table.unique_class(d).unwrap().unwrap();
    let h0 = class(TriDegree::new(0, 1, 0));
    let h1 = class(TriDegree::new(1, 1, 1));
    let one = class(TriDegree::new(0, 0, 0));
    let t = e.h_tower(&one, &h1, 20).unwrap();
    assert!(t.alive_at_boundary && t.dies_at.is_none());
    assert_eq!(e.h_tower(&h0, &h1, 5).unwrap().dies_at, Some(1));
    let x3 = class(TriDegree::new(17, 4, 10));
    let t = e.h_tower(&x3, &h1, 20).unwrap();
    assert!(t.alive_at_boundary && t.dies_at.is_none());
}

#[test]
fn scans() {
    let res = motivic(6, 26);
    let table = res.ext();
    let mut e = ProductEngine::new(&res, &table);
    let class = |d| table.unique_class(d).unwrap().unwrap();
    let h1 = class(TriDegree::new(1, 1, 1));
    let h1sq = class(TriDegree::new(2, 2, 2));
    match e.indecomposability_scan(&h1sq).unwrap().outcome {
        ScanOutcome::Decomposable(w) => assert_eq!(w, vec![(h1.clone(), h1)]),
        other => panic!("{other:?}"),
    }
    let x3 = class(TriDegree::new(17, 4, 10));
    assert_eq!(e.indecomposability_scan(&x3).unwrap().outcome, ScanOutcome::Indecomposable);
    // The golden value for τg, fixed by the first verified run.
    let tau_g = class(TriDegree::new(20, 4, 11));
    assert_eq!(e.indecomposability_scan(&tau_g).unwrap().outcome, ScanOutcome::Indecomposable);
}

#[test]
fn scan_finds_h0_h2() {
    let res = motivic(4, 12);
    let table = res.ext();
    let mut e = ProductEngine::new(&res, &table);
    let x = table.unique_class(TriDegree::new(3, 2, 2)).unwrap().unwrap();
    let report = e.indecomposability_scan(&x).unwrap();
    match report.outcome {
        ScanOutcome::Decomposable(w) => {
            assert_eq!(w.len(), 1);
            let (a, b) = &w[0];
            let mut stems = [a.degree.stem, b.degree.stem];
            stems.sort();
            assert_eq!(stems, [0, 3]);
        }
        other => panic!("{other:?}"),
    }
}
