//! The Burklund-Xu spectral sequence in Chow degree one, as far as it can be
//! assembled from classical Ext: the E1-page `⊕ qₙ·Ext`, its strata by
//! v₁-intercept, the known d₁, the h₀-localized pages, and a prover that
//! certifies permanent cycles when no target degree can be reached.
//!
//! Degrees here are Burklund-Xu bidegrees `(stem, filtration)` with `qₙ` in
//! `(2ⁿ−1, 1)`. A differential `d_r` goes from `(s, f)` to `(s−1, f+r)`.
//!
//! Only d₁ on `q₀` and `q₁` is known; d₁ on `qₙ·x` for `n ≥ 2` is left
//! unapplied, so surviving counts are upper bounds and the prover errs on
//! the side of declining.
//!
//! Not computed: the operator `w₁^{2^{n+2}}·(−)` taking `e₀g^{2ⁿ−1}` to
//! `e₀g^{2^{n+1}−1}`. Only its degree is used, which must be that of
//! `g^{2ⁿ}`, i.e. `(20·2ⁿ, 4·2ⁿ, 12·2ⁿ)`; see the `operator_degree` test.

mod chart;

pub use chart::{ChartClass, ClassicalChart, CHART_PRODUCTS};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::degree::v1_intercept;
use crate::error::{Error, Result};
use crate::linalg::{BitVec, Echelon};

/// The generator `qₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BXGenerator {
    pub n: u32,
}

impl BXGenerator {
    pub const fn new(n: u32) -> Self {
        BXGenerator { n }
    }

    pub const fn degree(self) -> (i32, i32) {
        ((1 << self.n) - 1, 1)
    }

    pub const fn intercept(self) -> i32 {
        let (s, f) = self.degree();
        v1_intercept(s, f)
    }
}

impl fmt::Display for BXGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Alive,
    /// Hit by a d₁.
    KilledByD1,
    /// Supports a nonzero d₁.
    Kills,
}

/// A classical class inside a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRef {
    pub stem: i32,
    pub filtration: i32,
    pub index: usize,
    pub id: String,
}

/// `qₙ · x` on the E1-page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BXElement {
    pub generator: BXGenerator,
    pub class: ClassRef,
    pub status: Status,
    /// d₁ is not known on this element (`n ≥ 2`).
    pub d1_unknown: bool,
}

impl BXElement {
    pub fn degree(&self) -> (i32, i32) {
        let (s, f) = self.generator.degree();
        (s + self.class.stem, f + self.class.filtration)
    }

    pub fn intercept(&self) -> i32 {
        let (s, f) = self.degree();
        v1_intercept(s, f)
    }

    pub fn label(&self) -> String {
        format!("{}·{}", self.generator, self.class.id)
    }
}

impl fmt::Display for BXElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, fl) = self.degree();
        write!(f, "{} ({s},{fl})", self.label())
    }
}

/// A recorded d₁, by element index. `targets` is empty when the target
/// degree lies outside the page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub source: usize,
    pub target_degree: (i32, i32),
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct BXPage {
    pub max_n: u32,
    pub max_stem: i32,
    pub max_filtration: i32,
    elements: Vec<BXElement>,
    differentials: Vec<Differential>,
    d1_applied: bool,
    chart: ClassicalChart,
}

/// E1 = `⊕_{n ≤ max_n} qₙ·Ext` in stems `0..=max_stem` and filtrations
/// `0..=max_filtration`, ordered by degree, then `n`, then class.
pub fn assemble_e1(chart: &ClassicalChart, max_n: u32, max_stem: i32, max_filtration: i32) -> Result<BXPage> {
    // qₙ shifts by at least (0, 1), so the chart must reach (max_stem, max_filtration − 1).
    if max_stem > chart.max_stem || max_filtration - 1 > chart.max_filtration {
        return Err(Error::Invalid(format!(
            "classical chart covers stems ≤ {} and filtrations ≤ {}; the page needs stems ≤ {max_stem} and filtrations ≤ {}",
            chart.max_stem,
            chart.max_filtration,
            max_filtration - 1
        )));
    }
    let mut elements = Vec::new();
    for s in 0..=max_stem {
        for f in 0..=max_filtration {
            for n in 0..=max_n {
                let g = BXGenerator::new(n);
                let (gs, gf) = g.degree();
                let (cs, cf) = (s - gs, f - gf);
                if cs < 0 || cf < 0 {
                    continue;
                }
                for (index, c) in chart.classes(cs, cf).iter().enumerate() {
                    elements.push(BXElement {
                        generator: g,
                        class: ClassRef {
                            stem: cs,
                            filtration: cf,
                            index,
                            id: c.id.clone(),
                        },
                        status: Status::Alive,
                        d1_unknown: n >= 2,
                    });
                }
            }
        }
    }
    Ok(BXPage {
        max_n,
        max_stem,
        max_filtration,
        elements,
        differentials: Vec::new(),
        d1_applied: false,
        chart: chart.clone(),
    })
}

fn rank(rows: Vec<BitVec>) -> usize {
    let width = rows.first().map_or(0, BitVec::len);
    let mut e = Echelon::new(width, 0);
    for r in rows {
        e.insert_plain(r);
    }
    e.rank()
}

impl BXPage {
    pub fn elements(&self) -> &[BXElement] {
        &self.elements
    }

    pub fn differentials(&self) -> &[Differential] {
        &self.differentials
    }

    pub fn chart(&self) -> &ClassicalChart {
        &self.chart
    }

    pub fn d1_applied(&self) -> bool {
        self.d1_applied
    }

    pub fn covers(&self, s: i32, f: i32) -> bool {
        s <= self.max_stem && f <= self.max_filtration
    }

    pub fn at(&self, s: i32, f: i32) -> impl Iterator<Item = (usize, &BXElement)> {
        self.elements.iter().enumerate().filter(move |(_, e)| e.degree() == (s, f))
    }

    fn find(&self, n: u32, stem: i32, f: i32, index: usize) -> Option<usize> {
        self.elements.iter().position(|e| {
            e.generator.n == n && e.class.stem == stem && e.class.filtration == f && e.class.index == index
        })
    }

    pub fn e1_dim(&self, s: i32, f: i32) -> usize {
        (0..=self.max_n)
            .map(|n| {
                let (gs, gf) = BXGenerator::new(n).degree();
                self.chart.dim(s - gs, f - gf)
            })
            .sum()
    }

    /// Rank of the known d₁ leaving `(s, f)`: `q₁·x ↦ q₀·h₀x` with `x` in
    /// classical degree `(s−1, f−1)`.
    fn d1_rank_out(&self, s: i32, f: i32) -> usize {
        if self.max_n < 1 || s < 1 || f < 1 {
            return 0;
        }
        rank(self.chart.product_rows("h0", s - 1, f - 1))
    }

    /// d₁-cycles at `(s, f)` among the E1 elements.
    pub fn e1_cycles_dim(&self, s: i32, f: i32) -> usize {
        self.e1_dim(s, f) - self.d1_rank_out(s, f)
    }

    /// Dimension after the known d₁; an upper bound for E2 since d₁ on
    /// `qₙ` for `n ≥ 2` is not applied.
    pub fn e2_dim(&self, s: i32, f: i32) -> usize {
        self.e1_cycles_dim(s, f) - self.d1_rank_out(s + 1, f - 1)
    }

    /// Apply `d₁(q₁·x) = q₀·h₀x` and `d₁(q₀·x) = 0`.
    pub fn apply_d1(&mut self) {
        if self.d1_applied {
            return;
        }
        self.d1_applied = true;
        if self.max_n < 1 {
            return;
        }
        let mut killed: Vec<usize> = Vec::new();
        for i in 0..self.elements.len() {
            let e = &self.elements[i];
            if e.generator.n != 1 {
                continue;
            }
            let (cs, cf, ci) = (e.class.stem, e.class.filtration, e.class.index);
            let h0x = self.chart.product_vector("h0", cs, cf, ci);
            if h0x.is_zero() {
                continue;
            }
            let target_degree = (cs, cf + 2);
            let targets: Vec<usize> = if self.covers(target_degree.0, target_degree.1) {
                h0x.iter_ones().filter_map(|j| self.find(0, cs, cf + 1, j)).collect()
            } else {
                Vec::new()
            };
            self.elements[i].status = Status::Kills;
            self.differentials.push(Differential {
                source: i,
                target_degree,
                targets,
            });
        }
        // q₀·y is hit when y lies in the image of h₀.
        for (i, e) in self.elements.iter().enumerate() {
            if e.generator.n != 0 || e.class.filtration < 1 {
                continue;
            }
            let (cs, cf) = (e.class.stem, e.class.filtration);
            let mut image = Echelon::new(self.chart.dim(cs, cf), 0);
            for r in self.chart.product_rows("h0", cs, cf - 1) {
                image.insert_plain(r);
            }
            if image.contains(&BitVec::unit(self.chart.dim(cs, cf), e.class.index)) {
                killed.push(i);
            }
        }
        for i in killed {
            self.elements[i].status = Status::KilledByD1;
        }
    }

    /// Elements with the given v₁-intercept.
    pub fn enumerate_intercept(&self, c: i32) -> Vec<&BXElement> {
        self.elements.iter().filter(|e| e.intercept() == c).collect()
    }

    /// Classical stems carrying an h₀-tower: a class at `(s, f_low)` whose
    /// h₀-multiples stay nonzero up to the top filtration of the chart,
    /// with `f_low` half the top filtration.
    pub fn h0_tower_stems(&self) -> Vec<i32> {
        let top = self.chart.max_filtration;
        let low = top / 2;
        (0..=self.chart.max_stem)
            .filter(|&s| {
                (0..self.chart.dim(s, low)).any(|i| {
                    let mut v = BitVec::unit(self.chart.dim(s, low), i);
                    for f in low..top {
                        let rows = self.chart.product_rows("h0", s, f);
                        let mut next = BitVec::zeros(self.chart.dim(s, f + 1));
                        for j in v.iter_ones() {
                            next.xor_assign(&rows[j]);
                        }
                        v = next;
                        if v.is_zero() {
                            return false;
                        }
                    }
                    true
                })
            })
            .collect()
    }

    /// h₀-localized E1 and E∞: one tower `qₙ·h₀^{±1}·x` per `n` and per
    /// classical tower stem; d₁ pairs the `q₁` tower on `x` with the `q₀`
    /// tower on `h₀x`.
    pub fn h0_localized_pages(&self) -> LocalizedPages {
        let stems = self.h0_tower_stems();
        let mut e1 = Vec::new();
        for n in 0..=self.max_n {
            for &cs in &stems {
                let stem = BXGenerator::new(n).degree().0 + cs;
                if stem <= self.max_stem {
                    e1.push(LocalizedTower {
                        generator: BXGenerator::new(n),
                        classical_stem: cs,
                        stem,
                    });
                }
            }
        }
        let pairs = |t: &LocalizedTower, n: u32| {
            e1.iter().any(|o| o.generator.n == n && o.classical_stem == t.classical_stem)
        };
        let e_inf = if self.d1_applied {
            e1.iter()
                .filter(|t| match t.generator.n {
                    0 => !pairs(t, 1),
                    1 => !pairs(t, 0),
                    _ => true,
                })
                .cloned()
                .collect()
        } else {
            e1.clone()
        };
        LocalizedPages { e1, e_inf }
    }

    /// Try to show `self.elements()[index]` is a permanent cycle by
    /// degree reasons, checking targets of `d_r` for `1 ≤ r ≤ r_max`.
    ///
    /// For `r = 1` every d₁-cycle at the target counts; for `r ≥ 2` only
    /// classes surviving the known d₁. Beyond `r_max` the target must be
    /// excluded by the vanishing line of classical Ext.
    pub fn prove_permanent_cycle(&self, index: usize, r_max: u32) -> ProofReport {
        let e = self.elements[index].clone();
        let (s, f) = e.degree();
        let mut report = ProofReport {
            element: e.clone(),
            targets: Vec::new(),
            sources: Vec::new(),
            verdict: Verdict::PermanentCycle,
            not_hit: NotHit::Unknown,
        };
        if !self.d1_applied {
            report.verdict = Verdict::Inconclusive(String::from("d₁ has not been applied"));
            return report;
        }
        if e.status == Status::Kills {
            report.verdict = Verdict::NotCertified(String::from("supports a nonzero d₁"));
            return report;
        }
        for r in 1..=r_max as i32 {
            let (ts, tf) = (s - 1, f + r);
            if !self.covers(ts, tf) {
                report.verdict = Verdict::Inconclusive(format!("target ({ts},{tf}) lies outside the page"));
                return report;
            }
            let count = if r == 1 {
                self.e1_cycles_dim(ts, tf)
            } else {
                self.e2_dim(ts, tf)
            };
            let survivors = self
                .at(ts, tf)
                .filter(|(_, x)| match x.status {
                    Status::Kills => false,
                    Status::KilledByD1 => r == 1,
                    Status::Alive => true,
                })
                .map(|(_, x)| x.label())
                .collect();
            report.targets.push(DegreeCount {
                r: r as u32,
                degree: (ts, tf),
                count,
                elements: survivors,
            });
            if f - r >= 0 && s < self.max_stem {
                report.sources.push(DegreeCount {
                    r: r as u32,
                    degree: (s + 1, f - r),
                    count: self.e2_dim(s + 1, f - r),
                    elements: self.at(s + 1, f - r).map(|(_, x)| x.label()).collect(),
                });
            }
        }
        if let Some(t) = report.targets.iter().find(|t| t.count > 0) {
            report.verdict = Verdict::NotCertified(format!(
                "d{} may hit {} classes in ({},{})",
                t.r, t.count, t.degree.0, t.degree.1
            ));
        } else if let Some(why) = self.tail_obstruction(s - 1, f + r_max as i32) {
            report.verdict = Verdict::Inconclusive(why);
        }
        if report.verdict == Verdict::PermanentCycle {
            report.not_hit = self.not_hit(&e);
        }
        report
    }

    /// Why targets in stem `ts` above filtration `f_max` might be nonzero,
    /// if the classical vanishing line does not exclude them.
    fn tail_obstruction(&self, ts: i32, f_max: i32) -> Option<String> {
        for n in 0..=self.max_n.max(31 - ts.max(1).leading_zeros()) {
            let (gs, gf) = BXGenerator::new(n).degree();
            let a = ts - gs;
            if a < 0 {
                break;
            }
            // Classical filtration of any target beyond r_max is ≥ f_max + 1 − gf.
            let b = f_max + 1 - gf;
            if a == 0 || v1_intercept(a, b) >= -3 {
                return Some(format!(
                    "targets q{n}·x in ({ts}, > {f_max}) are not excluded by the vanishing line"
                ));
            }
        }
        None
    }

    fn not_hit(&self, e: &BXElement) -> NotHit {
        if e.generator.n < 2 || !self.h0_tower_stems().contains(&e.class.stem) {
            return NotHit::Unknown;
        }
        let pages = self.h0_localized_pages();
        match pages
            .e_inf
            .iter()
            .find(|t| t.generator == e.generator && t.classical_stem == e.class.stem)
        {
            Some(t) => NotHit::Certified(t.clone()),
            None => NotHit::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedTower {
    pub generator: BXGenerator,
    pub classical_stem: i32,
    pub stem: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedPages {
    pub e1: Vec<LocalizedTower>,
    pub e_inf: Vec<LocalizedTower>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCount {
    pub r: u32,
    pub degree: (i32, i32),
    /// Dimension of possible targets (or sources).
    pub count: usize,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    PermanentCycle,
    NotCertified(String),
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotHit {
    /// The element maps to a surviving tower in the h₀-localized E∞.
    Certified(LocalizedTower),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofReport {
    pub element: BXElement,
    pub targets: Vec<DegreeCount>,
    pub sources: Vec<DegreeCount>,
    pub verdict: Verdict,
    pub not_hit: NotHit,
}

impl ProofReport {
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::PermanentCycle && matches!(self.not_hit, NotHit::Certified(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn class(stem: i32, f: i32, id: &str, h0: &[&str]) -> ChartClass {
        let mut products = BTreeMap::new();
        if !h0.is_empty() {
            products.insert(String::from("h0"), h0.iter().map(|s| String::from(*s)).collect());
        }
        ChartClass {
            stem,
            filtration: f,
            id: String::from(id),
            products,
        }
    }

    /// h₀-tower at stem 0 and h₁ at (1,1), through filtration 6.
    fn small_chart() -> ClassicalChart {
        let mut rows = vec![class(1, 1, "h1", &[])];
        for k in 0..=6 {
            let next = format!("h0^{}", k + 1);
            let h0 = if k < 6 { vec![next.as_str()] } else { vec![] };
            rows.push(class(0, k, &format!("h0^{k}"), &h0));
        }
        ClassicalChart::from_classes(4, 6, rows).unwrap()
    }

    #[test]
    fn generator_intercepts() {
        for n in 0..6 {
            assert_eq!(BXGenerator::new(n).intercept(), (1 << n) - 3);
        }
    }

    #[test]
    fn empty_chart_gives_empty_page() {
        let page = assemble_e1(&ClassicalChart::empty(10, 5), 3, 10, 6).unwrap();
        assert!(page.elements().is_empty());
        assert!(page.enumerate_intercept(0).is_empty());
    }

    #[test]
    fn insufficient_range_is_an_error() {
        let err = assemble_e1(&small_chart(), 2, 8, 4).unwrap_err();
        assert!(matches!(err, Error::Invalid(m) if m.contains("stems ≤ 8")));
    }

    #[test]
    fn degrees_add() {
        let page = assemble_e1(&small_chart(), 2, 4, 7).unwrap();
        for e in page.elements() {
            let (gs, gf) = e.generator.degree();
            assert_eq!(e.degree(), (gs + e.class.stem, gf + e.class.filtration));
            assert!(page.covers(e.degree().0, e.degree().1));
        }
    }

    #[test]
    fn d1_on_q1_kills_q0_h0() {
        let mut page = assemble_e1(&small_chart(), 2, 4, 7).unwrap();
        page.apply_d1();
        let q1 = page.find(1, 0, 0, 0).unwrap();
        assert_eq!(page.elements()[q1].status, Status::Kills);
        let d = page.differentials().iter().find(|d| d.source == q1).unwrap();
        assert_eq!(d.target_degree, (0, 2));
        assert_eq!(page.elements()[d.targets[0]].label(), "q0·h0^1");
        assert_eq!(page.elements()[d.targets[0]].status, Status::KilledByD1);
        // q₀·h₁ supports nothing and is not hit.
        let q0h1 = page.find(0, 1, 1, 0).unwrap();
        assert_eq!(page.elements()[q0h1].status, Status::Alive);
        // d₁² = 0: no target is a source.
        for d in page.differentials() {
            for t in &d.targets {
                assert!(page.differentials().iter().all(|o| o.source != *t));
            }
        }
    }

    #[test]
    fn localized_towers_cancel_in_low_n() {
        let mut page = assemble_e1(&small_chart(), 3, 4, 7).unwrap();
        page.apply_d1();
        let loc = page.h0_localized_pages();
        let ns: Vec<u32> = loc.e1.iter().map(|t| t.generator.n).collect();
        assert_eq!(ns, vec![0, 1, 2]);
        let surviving: Vec<u32> = loc.e_inf.iter().map(|t| t.generator.n).collect();
        assert_eq!(surviving, vec![2]);

        let mut page = assemble_e1(&small_chart(), 1, 4, 7).unwrap();
        page.apply_d1();
        assert!(page.h0_localized_pages().e_inf.is_empty());
    }

    #[test]
    fn q1_is_not_certified() {
        let mut page = assemble_e1(&small_chart(), 2, 4, 7).unwrap();
        page.apply_d1();
        let q1 = page.find(1, 0, 0, 0).unwrap();
        let report = page.prove_permanent_cycle(q1, 2);
        assert!(matches!(report.verdict, Verdict::NotCertified(_)));
    }

    #[test]
    fn operator_degree() {
        use crate::compare::family_degree;
        use crate::degree::TriDegree;
        let g = TriDegree::new(20, 4, 12);
        for n in 0..4u32 {
            let from = family_degree((1 << n) - 1);
            let to = family_degree((1 << (n + 1)) - 1);
            assert_eq!(to - from, (1 << n) * g);
        }
    }
}
