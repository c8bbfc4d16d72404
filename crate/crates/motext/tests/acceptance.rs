//! The numbered acceptance criteria, one PASS/FAIL line each, including
//! the long-range criterion.

use std::io::Write;

use motext::cache::ResolutionCache;
use motext::checks::{self, Settings, Status};

#[test]
fn acceptance() {
    let settings = Settings {
        long: true,
        budget: None,
        motivic_stem_cap: None,
    };
    let mut cache = ResolutionCache::new();
    // Written past the harness's capture so the lines show in every run.
    let mut err = std::io::stderr().lock();
    let report = checks::run(settings, &mut cache, |r| {
        writeln!(err, "{}", r.line()).unwrap();
    })
    .unwrap();
    writeln!(
        err,
        "{} passed, {} failed, {} inconclusive",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Inconclusive)
    )
    .unwrap();
    let bad: Vec<String> = report
        .criteria
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| c.line())
        .collect();
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
