//! The `verify paper-checks` runner: eleven numbered criteria, each ending
//! PASS, FAIL or INCONCLUSIVE with the evidence gathered on the way.
//!
//! A criterion is INCONCLUSIVE when the time budget runs out before or
//! between its steps, when the motivic stem cap excludes a degree it needs,
//! or (for the long criterion) when it was not requested. A computation
//! already under way is not interrupted, so the budget is checked only
//! between steps.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use motext_core::bx::{assemble_e1, BXPage, ClassicalChart, LocalizedTower, Verdict};
use motext_core::compare::{
    family_degree, h1_localized_image, locate_u, minimal_stem_preimage, restrict_monomial, restrict_to_a2,
    ComparisonMap, Localization, LocalizedMonomial, LocalizedRing, DEFAULT_STABILITY_MARGIN,
};
use motext_core::products::{ProductEngine, ScanOutcome};
use motext_core::resolution::verify_vanishing;
use motext_core::{AlgebraSpec, ExtClass, ExtTable, Resolution, TriDegree};
use serde::Serialize;

use crate::cache::{Entry, ResolutionCache};
use crate::chart::ChartDocument;
use crate::checkpoint;
use crate::error::{MotextError, Result};

pub const FORMAT: &str = "motext-paper-checks";
pub const VERSION: u32 = 1;

/// Classical: stems ≤ 30, filtrations ≤ 16.
const CLASSICAL: (u32, u32) = (16, 46);
/// Motivic and A(2)-motivic: stems ≤ 30 at filtrations ≤ 14.
const MOTIVIC: (u32, u32) = (15, 44);
/// Motivic and A(2)-motivic through stem 57 at filtration 12.
const LONG: (u32, u32) = (13, 70);
/// Motivic rectangle for the thread-count comparison.
const DETERMINISM: (u32, u32) = (8, 28);

const CLASSICAL_LIMIT: Duration = Duration::from_secs(5 * 60);
const MOTIVIC_LIMIT: Duration = Duration::from_secs(10 * 60);
const A2_LIMIT: Duration = Duration::from_secs(60);
const LONG_LIMIT: Duration = Duration::from_secs(2 * 60 * 60);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub status: Status,
    pub seconds: f64,
    pub evidence: Vec<String>,
}

impl CriterionResult {
    /// `PASS  5  x3 at (17,4,10)  [1.2s]`, plus the failed steps on a FAIL.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{:<12} {:>2}  {}  [{:.1}s]",
            self.status.as_str(),
            self.id,
            self.title,
            self.seconds
        );
        if self.status != Status::Pass {
            for e in self.evidence.iter().filter(|e| !e.starts_with("ok: ")) {
                s.push_str("\n                 ");
                s.push_str(e);
            }
        }
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct Settings {
    /// Run criterion 10.
    pub long: bool,
    pub budget: Option<Duration>,
    /// Largest motivic stem any criterion may use.
    pub motivic_stem_cap: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
struct SettingsJson {
    long: bool,
    budget_secs: Option<u64>,
    motivic_stem_cap: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub version: u32,
    settings: SettingsJson,
    pub criteria: Vec<CriterionResult>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.criteria.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

enum Stop {
    Inconclusive(String),
    Fail(String),
    Fatal(MotextError),
}

impl From<MotextError> for Stop {
    fn from(e: MotextError) -> Self {
        match e {
            MotextError::Core(e) => Stop::Fail(format!("computation error: {e}")),
            e => Stop::Fatal(e),
        }
    }
}

impl From<motext_core::Error> for Stop {
    fn from(e: motext_core::Error) -> Self {
        Stop::Fail(format!("computation error: {e}"))
    }
}

type Step<T = ()> = std::result::Result<T, Stop>;

/// Evidence lines for one criterion.
#[derive(Default)]
struct Check {
    evidence: Vec<String>,
    failed: bool,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.failed |= !ok;
        self.evidence
            .push(if ok { format!("ok: {what}") } else { format!("failed: {what}") });
    }

    fn note(&mut self, what: impl Into<String>) {
        self.evidence.push(format!("note: {}", what.into()));
    }
}

struct Ctx<'c> {
    settings: Settings,
    cache: &'c mut ResolutionCache,
    deadline: Option<Instant>,
    page: Option<BXPage>,
}

impl Ctx<'_> {
    fn budget(&self) -> Step {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Stop::Inconclusive("time budget used up".into())),
            _ => Ok(()),
        }
    }

    fn motivic_stem(&self, stem: u32) -> Step {
        match self.settings.motivic_stem_cap {
            Some(cap) if stem > cap => Err(Stop::Inconclusive(format!(
                "needs motivic stem {stem}, beyond the cap of {cap}"
            ))),
            _ => Ok(()),
        }
    }

    /// The motivic rectangle, narrowed by the stem cap.
    fn motivic_range(&self) -> (u32, u32) {
        motivic_rectangle(self.settings.motivic_stem_cap)
    }

    /// Make a resolution available, returning how long that took.
    fn ensure(&mut self, spec: AlgebraSpec, (s, t): (u32, u32)) -> Step<Duration> {
        self.budget()?;
        let start = Instant::now();
        self.cache.ensure(spec, s, t)?;
        Ok(start.elapsed())
    }

    fn entry(&self, spec: AlgebraSpec, (s, t): (u32, u32)) -> &Entry {
        self.cache.entry(spec, s, t).expect("ensured before use")
    }

    fn bx_page(&mut self) -> Step<&BXPage> {
        if self.page.is_none() {
            self.ensure(AlgebraSpec::CLASSICAL, CLASSICAL)?;
            self.budget()?;
            let e = self.entry(AlgebraSpec::CLASSICAL, CLASSICAL);
            let mut engine = ProductEngine::new(&e.res, &e.table);
            let chart = ClassicalChart::from_ext(&mut engine, 30)?;
            let mut page = assemble_e1(&chart, 4, 30, 17)?;
            page.apply_d1();
            self.page = Some(page);
        }
        Ok(self.page.as_ref().expect("built above"))
    }
}

fn class(table: &ExtTable, d: TriDegree) -> Step<ExtClass> {
    table
        .unique_class(d)?
        .ok_or_else(|| Stop::Fail(format!("no unique class at {d} (dimension {})", table.dim(d).unwrap_or(0))))
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

type Criterion = fn(&mut Ctx, &mut Check) -> Step;

const CRITERIA: [(&str, Criterion); 11] = [
    ("classical Ext through stem 30", classical_sanity),
    ("intercept -4 elements of the Burklund-Xu E1 page", intercept_minus_four),
    ("h0-localized towers", localized_towers),
    ("permanent cycle certificates", permanent_cycles),
    ("x3 at (17,4,10)", x3_exists),
    ("g and tau g in stem 20", g_classes),
    ("h1-periodicity of x3", h1_periodicity),
    ("restriction to A(2)", a2_restriction),
    ("indecomposability of x3", indecomposability),
    ("long range: x4 and stem 57", long_range),
    ("algebraic properties and determinism", properties),
];

/// Run every criterion in order, calling `progress` after each one.
/// Unreadable or corrupted checkpoints abort the run.
pub fn run(
    settings: Settings,
    cache: &mut ResolutionCache,
    mut progress: impl FnMut(&CriterionResult),
) -> Result<Report> {
    let deadline = settings.budget.map(|b| Instant::now() + b);
    let json = SettingsJson {
        long: settings.long,
        budget_secs: settings.budget.map(|b| b.as_secs()),
        motivic_stem_cap: settings.motivic_stem_cap,
    };
    let mut ctx = Ctx {
        settings,
        cache,
        deadline,
        page: None,
    };
    let mut criteria = Vec::new();
    for (i, (title, f)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let mut check = Check::default();
        let status = match ctx.budget().and_then(|()| f(&mut ctx, &mut check)) {
            Ok(()) if check.failed => Status::Fail,
            Ok(()) => Status::Pass,
            Err(Stop::Fail(why)) => {
                check.evidence.push(format!("failed: {why}"));
                Status::Fail
            }
            Err(Stop::Inconclusive(why)) => {
                check.evidence.push(format!("inconclusive: {why}"));
                if check.failed {
                    Status::Fail
                } else {
                    Status::Inconclusive
                }
            }
            Err(Stop::Fatal(e)) => return Err(e),
        };
        let result = CriterionResult {
            id: i as u32 + 1,
            title: title.to_string(),
            status,
            seconds: (start.elapsed().as_secs_f64() * 10.0).round() / 10.0,
            evidence: check.evidence,
        };
        progress(&result);
        criteria.push(result);
    }
    Ok(Report {
        format: FORMAT,
        version: VERSION,
        settings: json,
        criteria,
    })
}

fn classical_sanity(ctx: &mut Ctx, c: &mut Check) -> Step {
    let took = ctx.ensure(AlgebraSpec::CLASSICAL, CLASSICAL)?;
    c.expect(
        took < CLASSICAL_LIMIT,
        format!("resolution to stem 30, filtration 16 in {}", secs(took)),
    );
    let e = ctx.entry(AlgebraSpec::CLASSICAL, CLASSICAL);
    let table = &e.table;
    // h₀⁵, h₁, h₁², h₀²h₂, h₀³h₃, d₀, {h₀⁴h₄, h₁d₀}, e₀.
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
        let got = table.stable_dim(stem, f)?;
        c.expect(got == dim, format!("dim({stem},{f}) = {got}, chart value {dim}"));
    }
    let v = verify_vanishing(table, 30);
    c.expect(
        v.offending.is_empty(),
        format!("no classes below intercept -3 off the h0-tower ({} found)", v.offending.len()),
    );
    c.expect(
        v.unexpected_minus_three.is_empty(),
        format!(
            "intercept -3 is one-dimensional exactly at (8k+3,4k+3): {:?}",
            v.intercept_minus_three.iter().map(|(d, _)| (d.stem, d.filtration)).collect::<Vec<_>>()
        ),
    );
    // Each intercept −3 class is h₁²·Pᵏh₁.
    let mut engine = ProductEngine::new(&e.res, table);
    let h1 = class(table, TriDegree::classical(1, 1))?;
    for (d, _) in &v.intercept_minus_three {
        let k = (d.stem - 3) / 8;
        let p = class(table, TriDegree::classical(8 * k + 1, 4 * k + 1))?;
        let x = class(table, *d)?;
        let h1p = engine.yoneda_product(&h1, &p)?;
        let prod = engine.yoneda_product(&h1, &h1p)?;
        c.expect(
            table.reduce(&prod)? == x && !table.is_zero(&x)?,
            format!("class at ({},{}) is h1^2 times the class at ({},{})", d.stem, d.filtration, 8 * k + 1, 4 * k + 1),
        );
    }
    Ok(())
}

fn intercept_minus_four(ctx: &mut Ctx, c: &mut Check) -> Step {
    let page = ctx.bx_page()?;
    let found: BTreeSet<(u32, i32, i32)> = page
        .enumerate_intercept(-4)
        .iter()
        .map(|e| (e.generator.n, e.degree().0, e.degree().1))
        .collect();
    // q₀·h₀ at (0,2), q₀·Pᵏh₁ style classes at (8k+2, 4k+3), q₁ on the
    // P-family at (8k+4, 4k+4).
    let mut expected = BTreeSet::from([(0, 0, 2)]);
    for k in 0..4 {
        if 8 * k + 2 <= 30 {
            expected.insert((0, 8 * k + 2, 4 * k + 3));
        }
        if 8 * k + 4 <= 30 {
            expected.insert((1, 8 * k + 4, 4 * k + 4));
        }
    }
    let labels: Vec<String> = page.enumerate_intercept(-4).iter().map(|e| e.to_string()).collect();
    c.expect(
        found == expected,
        format!("{} elements in stems <= 30: {}", found.len(), labels.join(", ")),
    );
    Ok(())
}

fn localized_towers(ctx: &mut Ctx, c: &mut Check) -> Step {
    let page = ctx.bx_page()?;
    let loc = page.h0_localized_pages();
    let ns = |v: &[LocalizedTower]| v.iter().map(|t| t.generator.n).collect::<Vec<_>>();
    c.expect(ns(&loc.e1) == [0, 1, 2, 3, 4], format!("E1 towers on q_n for n = {:?}", ns(&loc.e1)));
    c.expect(
        ns(&loc.e_inf) == [2, 3, 4],
        format!("after d1, towers survive for n = {:?}", ns(&loc.e_inf)),
    );
    Ok(())
}

fn permanent_cycles(ctx: &mut Ctx, c: &mut Check) -> Step {
    let page = ctx.bx_page()?;
    let prove = |n: u32, f: i32| -> Step<_> {
        let i = page
            .elements()
            .iter()
            .position(|e| e.generator.n == n && e.class.stem == 0 && e.class.filtration == f)
            .ok_or_else(|| Stop::Fail(format!("q{n} on h0^{f} missing from the page")))?;
        let r = (page.max_filtration - page.elements()[i].degree().1) as u32;
        Ok(page.prove_permanent_cycle(i, r))
    };
    for (n, f) in [(3, 3), (4, 7)] {
        let r = prove(n, f)?;
        c.expect(r.certified(), format!("{} certified: {:?}, {:?}", r.element, r.verdict, r.not_hit));
    }
    for (n, f) in [(1, 0), (2, 1)] {
        let r = prove(n, f)?;
        let declined = matches!(r.verdict, Verdict::NotCertified(_));
        c.expect(declined, format!("{} declined: {:?}", r.element, r.verdict));
    }
    Ok(())
}

fn x3_exists(ctx: &mut Ctx, c: &mut Check) -> Step {
    ctx.motivic_stem(17)?;
    let range = ctx.motivic_range();
    let took = ctx.ensure(AlgebraSpec::MOTIVIC, range)?;
    c.expect(took < MOTIVIC_LIMIT, format!("motivic resolution in {}", secs(took)));
    let t = &ctx.entry(AlgebraSpec::MOTIVIC, range).table;
    let dim = |w| t.dim(TriDegree::new(17, 4, w));
    c.expect(dim(10)? == 1, format!("dim(17,4,10) = {}", dim(10)?));
    c.expect(dim(11)? == 0, format!("top weight is 10: dim(17,4,11) = {}", dim(11)?));
    let x3 = class(t, TriDegree::new(17, 4, 10))?;
    let tau_x3 = t.tau_times(&x3);
    let tau_free = t.tau_order(&x3)?.is_none();
    c.expect(
        dim(9)? == 1 && !t.is_zero(&tau_x3)? && tau_free,
        format!("dim(17,4,9) = {}, spanned by tau x3", dim(9)?),
    );
    Ok(())
}

fn g_classes(ctx: &mut Ctx, c: &mut Check) -> Step {
    ctx.motivic_stem(20)?;
    let range = ctx.motivic_range();
    ctx.ensure(AlgebraSpec::MOTIVIC, range)?;
    let t = &ctx.entry(AlgebraSpec::MOTIVIC, range).table;
    let d12 = t.dim(TriDegree::new(20, 4, 12))?;
    let d11 = t.dim(TriDegree::new(20, 4, 11))?;
    c.expect(d12 == 0, format!("dim(20,4,12) = {d12}"));
    c.expect(d11 == 1, format!("dim(20,4,11) = {d11}"));
    Ok(())
}

fn monomial(l: &Localization) -> String {
    match l {
        Localization::Monomial(m) => m.to_string(),
        other => format!("{other:?}"),
    }
}

fn h1_periodicity(ctx: &mut Ctx, c: &mut Check) -> Step {
    ctx.motivic_stem(17)?;
    let range = ctx.motivic_range();
    ctx.ensure(AlgebraSpec::MOTIVIC, range)?;
    let e = ctx.entry(AlgebraSpec::MOTIVIC, range);
    let t = &e.table;
    let mut engine = ProductEngine::new(&e.res, t);
    let h1 = class(t, TriDegree::new(1, 1, 1))?;
    let x3 = class(t, TriDegree::new(17, 4, 10))?;
    let tower = engine.h_tower(&x3, &h1, 40)?;
    c.expect(
        tower.alive_at_boundary && tower.dies_at.is_none() && tower.last_nonzero >= 10,
        format!("h1^k x3 nonzero for k <= {} and alive at the range boundary", tower.last_nonzero),
    );
    let ring = LocalizedRing::full(5);
    for (name, d, want) in [
        ("Ph1", (9, 5, 5), "v1^4·h1"),
        ("c0", (8, 3, 5), "v2·h1^2"),
        ("x3", (17, 4, 10), "v3·h1^3"),
    ] {
        let x = class(t, TriDegree::new(d.0, d.1, d.2))?;
        let got = monomial(&h1_localized_image(&mut engine, &x, &h1, &ring, DEFAULT_STABILITY_MARGIN)?);
        c.expect(got == want, format!("{name} maps to {got}"));
    }
    let mut v3 = LocalizedMonomial::one();
    v3.set_v(3, 1);
    let pre = minimal_stem_preimage(&mut engine, &v3, &h1, &ring, DEFAULT_STABILITY_MARGIN)?;
    let stem = pre.as_ref().map(|p| p.degree.stem);
    c.expect(stem == Some(17), format!("lowest-stem preimage of v3·h1^k lies in stem {stem:?}"));
    Ok(())
}

fn a2_restriction(ctx: &mut Ctx, c: &mut Check) -> Step {
    ctx.motivic_stem(17)?;
    let range = ctx.motivic_range();
    ctx.ensure(AlgebraSpec::MOTIVIC, range)?;
    let took = ctx.ensure(AlgebraSpec::A2_MOTIVIC, MOTIVIC)?;
    c.expect(took < A2_LIMIT, format!("A(2)-motivic resolution in {}", secs(took)));
    ctx.budget()?;
    let start = Instant::now();
    let a = ctx.entry(AlgebraSpec::MOTIVIC, range);
    let b = ctx.entry(AlgebraSpec::A2_MOTIVIC, MOTIVIC);
    let (at, bt) = (&a.table, &b.table);
    let mut map = ComparisonMap::new(&b.res, &a.res)?;
    let x3 = class(at, TriDegree::new(17, 4, 10))?;
    let e0 = class(bt, TriDegree::new(17, 4, 10))?;
    let r = restrict_to_a2(&mut map, &x3, bt)?;
    c.expect(r == e0 && !bt.is_zero(&r)?, "x3 restricts to e0, which is nonzero");

    let mut be = ProductEngine::new(&b.res, bt);
    let bh1 = class(bt, TriDegree::new(1, 1, 1))?;
    let Some((u, _)) = locate_u(&mut be, &bh1, DEFAULT_STABILITY_MARGIN)? else {
        return Err(Stop::Fail("no u found in the A(2) chart".into()));
    };
    c.note(format!("u read off the A(2) chart at {u}"));
    let mut ae = ProductEngine::new(&a.res, at);
    let h1 = class(at, TriDegree::new(1, 1, 1))?;
    let up = h1_localized_image(&mut ae, &x3, &h1, &LocalizedRing::full(4), DEFAULT_STABILITY_MARGIN)?;
    let down = h1_localized_image(&mut be, &r, &bh1, &LocalizedRing::a2(u), DEFAULT_STABILITY_MARGIN)?;
    match (&up, &down) {
        (Localization::Monomial(m), Localization::Monomial(n)) => {
            let image = restrict_monomial(m);
            c.expect(
                image == *n && n.v_exp(2) == 1 && n.u == 1,
                format!("square commutes: {m} restricts to {image}, and e0 localizes to {n}"),
            );
        }
        _ => c.expect(false, format!("localizations {} and {}", monomial(&up), monomial(&down))),
    }
    let took = start.elapsed();
    c.expect(took < A2_LIMIT, format!("comparison computations in {}", secs(took)));
    Ok(())
}

fn indecomposability(ctx: &mut Ctx, c: &mut Check) -> Step {
    ctx.motivic_stem(17)?;
    let range = ctx.motivic_range();
    ctx.ensure(AlgebraSpec::MOTIVIC, range)?;
    let e = ctx.entry(AlgebraSpec::MOTIVIC, range);
    let mut engine = ProductEngine::new(&e.res, &e.table);
    let x3 = class(&e.table, TriDegree::new(17, 4, 10))?;
    let report = engine.indecomposability_scan(&x3)?;
    c.expect(
        report.outcome == ScanOutcome::Indecomposable,
        format!(
            "scan of (17,4,10): {:?} after {} factor degree pairs, {} products",
            report.outcome,
            report.pairs_checked.len(),
            report.products_computed
        ),
    );
    Ok(())
}

fn long_range(ctx: &mut Ctx, c: &mut Check) -> Step {
    if !ctx.settings.long {
        return Err(Stop::Inconclusive("not run; pass --long".into()));
    }
    ctx.motivic_stem(57)?;
    let took = ctx.ensure(AlgebraSpec::MOTIVIC, LONG)?;
    c.expect(took < LONG_LIMIT, format!("motivic resolution through stem 57 in {}", secs(took)));
    let t = &ctx.entry(AlgebraSpec::MOTIVIC, LONG).table;
    let x4 = family_degree(1);
    let d = t.dim(x4)?;
    c.expect(d == 1, format!("dim{x4} = {d}"));
    let next = family_degree(2);
    let d = t.dim(next)?;
    c.expect(d == 0, format!("dim{next} = {d}"));
    ctx.ensure(AlgebraSpec::A2_MOTIVIC, LONG)?;
    ctx.budget()?;
    let a = ctx.entry(AlgebraSpec::MOTIVIC, LONG);
    let b = ctx.entry(AlgebraSpec::A2_MOTIVIC, LONG);
    let mut map = ComparisonMap::new(&b.res, &a.res)?;
    let mut be = ProductEngine::new(&b.res, &b.table);
    let e0 = class(&b.table, TriDegree::new(17, 4, 10))?;
    let g = class(&b.table, TriDegree::new(20, 4, 12))?;
    let e0g = be.yoneda_product(&e0, &g)?;
    let r = restrict_to_a2(&mut map, &class(&a.table, x4)?, &b.table)?;
    c.expect(
        r == e0g && !b.table.is_zero(&r)?,
        "x4 restricts to e0·g, which is nonzero",
    );
    Ok(())
}

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

fn resolve_with_threads(threads: usize, (s, t): (u32, u32)) -> Step<(String, String)> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Stop::Fail(format!("thread pool: {e}")))?;
    pool.install(|| {
        let mut res = Resolution::new(AlgebraSpec::MOTIVIC);
        res.extend(s, t)?;
        let table = res.ext();
        let chart = ChartDocument::build(&res, &table, 20)?;
        Ok((checkpoint::to_string(&res), chart.to_json()))
    })
}

fn properties(ctx: &mut Ctx, c: &mut Check) -> Step {
    ctx.motivic_stem(20)?;
    ctx.ensure(AlgebraSpec::MOTIVIC, (7, 22))?;
    let e = ctx.entry(AlgebraSpec::MOTIVIC, (7, 22));
    let t = &e.table;
    let mut engine = ProductEngine::new(&e.res, t);
    let classes = basis(t, 12, 3);
    let (mut pairs, mut triples, mut bad) = (0, 0, Vec::new());
    for a in &classes {
        for b in &classes {
            let d = a.degree + b.degree;
            if d.stem > 12 || !t.covers(d.stem, d.filtration) {
                continue;
            }
            let ab = engine.yoneda_product(a, b)?;
            if ab != engine.yoneda_product(b, a)? {
                bad.push(format!("{} · {} not commutative", a.degree, b.degree));
            }
            pairs += 1;
            for x in &classes {
                let d = d + x.degree;
                if d.stem > 12 || !t.covers(d.stem, d.filtration) {
                    continue;
                }
                let left = engine.yoneda_product(&ab, x)?;
                let bx = engine.yoneda_product(b, x)?;
                if left != engine.yoneda_product(a, &bx)? {
                    bad.push(format!("({} {} {}) not associative", a.degree, b.degree, x.degree));
                }
                triples += 1;
            }
        }
    }
    c.expect(
        bad.is_empty() && triples > 0,
        format!("{pairs} pairs commute and {triples} triples associate in stems <= 12 {bad:?}"),
    );
    ctx.budget()?;

    let range = ctx.motivic_range();
    ctx.ensure(AlgebraSpec::MOTIVIC, range)?;
    ctx.ensure(AlgebraSpec::CLASSICAL, CLASSICAL)?;
    for (spec, r) in [(AlgebraSpec::CLASSICAL, CLASSICAL), (AlgebraSpec::MOTIVIC, range)] {
        let ok = ctx.entry(spec, r).res.verify();
        c.expect(ok.is_ok(), format!("d∘d = 0 and minimality on the {} resolution {ok:?}", spec.name()));
    }
    let (mt, ct) = (
        &ctx.entry(AlgebraSpec::MOTIVIC, range).table,
        &ctx.entry(AlgebraSpec::CLASSICAL, CLASSICAL).table,
    );
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for stem in 0..=20 {
        for f in 0..range.0 as i32 {
            if !mt.covers(stem, f) || !ct.covers(stem, f) {
                continue;
            }
            compared += 1;
            let (m, k) = (mt.stable_dim(stem, f)?, ct.stable_dim(stem, f)?);
            if m != k {
                mismatches.push((stem, f, m, k));
            }
        }
    }
    c.expect(
        mismatches.is_empty(),
        format!("tau-inverted motivic Ext equals classical Ext in {compared} degrees of stems <= 20 {mismatches:?}"),
    );
    ctx.budget()?;

    let one = resolve_with_threads(1, DETERMINISM)?;
    let many = resolve_with_threads(4, DETERMINISM)?;
    c.expect(
        one.0 == many.0,
        format!("checkpoints from 1 and 4 threads are byte-identical ({} bytes)", one.0.len()),
    );
    c.expect(one.1 == many.1, "charts from 1 and 4 threads are byte-identical");
    Ok(())
}

/// The motivic rectangle used by the checks: stems ≤ 30 at filtration 14,
/// or stems ≤ `cap`.
pub fn motivic_rectangle(cap: Option<u32>) -> (u32, u32) {
    let (s, t) = MOTIVIC;
    cap.map_or((s, t), |c| (s, t.min(c + s - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capped_run_is_inconclusive_above_the_cap() {
        let settings = Settings {
            long: false,
            budget: None,
            motivic_stem_cap: Some(16),
        };
        let mut cache = ResolutionCache::new();
        let mut ctx = Ctx {
            settings,
            cache: &mut cache,
            deadline: None,
            page: None,
        };
        let mut c = Check::default();
        assert!(matches!(x3_exists(&mut ctx, &mut c), Err(Stop::Inconclusive(_))));
        assert!(matches!(long_range(&mut ctx, &mut c), Err(Stop::Inconclusive(_))));
        assert!(c.evidence.is_empty());
    }

    #[test]
    fn exhausted_budget_is_inconclusive() {
        let mut cache = ResolutionCache::new();
        let settings = Settings {
            budget: Some(Duration::ZERO),
            ..Settings::default()
        };
        let report = run(settings, &mut cache, |_| {}).unwrap();
        assert_eq!(report.criteria.len(), 11);
        assert_eq!(report.count(Status::Inconclusive), 11);
        assert_eq!(report.count(Status::Fail), 0);
    }
}
