use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use motext::cache::{self, ResolutionCache};
use motext::chart::ChartDocument;
use motext::checks::{self, Settings, Status};
use motext::{checkpoint, ingest};
use motext_core::bx::{assemble_e1, ClassicalChart, Verdict};
use motext_core::products::{ProductEngine, ScanOutcome};
use motext_core::{AlgebraSpec, ExtTable, Resolution, TriDegree};

#[derive(Parser)]
#[command(name = "motext", version, about = "Ext over the classical and C-motivic Steenrod algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimal resolution and write a checkpoint.
    Resolve(ResolveArgs),
    /// Draw the chart of a checkpoint.
    Chart(ChartArgs),
    /// Multiply classes, or scan a degree for decomposables.
    Products(ProductsArgs),
    /// Assemble the Burklund-Xu E1-page from classical Ext.
    Bx(BxArgs),
    /// Validate a classical class file and print it in canonical form.
    Ingest(IngestArgs),
    /// Run the built-in checks.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Classical,
    Motivic,
    A2Classical,
    A2Motivic,
}

impl Algebra {
    fn spec(self) -> AlgebraSpec {
        match self {
            Algebra::Classical => AlgebraSpec::CLASSICAL,
            Algebra::Motivic => AlgebraSpec::MOTIVIC,
            Algebra::A2Classical => AlgebraSpec::A2_CLASSICAL,
            Algebra::A2Motivic => AlgebraSpec::A2_MOTIVIC,
        }
    }
}

#[derive(Args)]
struct ResolveArgs {
    #[arg(long, value_enum, default_value = "classical")]
    algebra: Algebra,
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=200))]
    max_stem: u32,
    /// Defaults to max_stem / 2 + 2.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=100))]
    max_filtration: Option<u32>,
    /// Checkpoint to write.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Extend this checkpoint instead of starting over.
    #[arg(long)]
    resume: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartFormat {
    Tsv,
    Json,
    Svg,
    /// The class file read by `ingest` and `bx --chart` (classical only).
    Classes,
}

#[derive(Args)]
struct ChartArgs {
    #[arg(long)]
    checkpoint: PathBuf,
    #[arg(long, value_enum, default_value = "tsv")]
    format: ChartFormat,
    /// Largest stem drawn (default: the largest stem covered in every
    /// filtration).
    #[arg(long)]
    max_stem: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProductsArgs {
    #[arg(long)]
    checkpoint: PathBuf,
    /// Degree `stem,f[,w]` of the left factors.
    #[arg(long, requires = "right", value_parser = parse_degree)]
    left: Option<(i32, i32, i32)>,
    #[arg(long, value_parser = parse_degree)]
    right: Option<(i32, i32, i32)>,
    /// Degree `stem,f[,w]` whose basis classes are tested for
    /// decomposability.
    #[arg(long, value_parser = parse_degree)]
    scan: Option<(i32, i32, i32)>,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct BxSource {
    /// Classical class file (see `ingest`).
    #[arg(long)]
    chart: Option<PathBuf>,
    /// Classical checkpoint.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Args)]
struct BxArgs {
    #[command(flatten)]
    source: BxSource,
    #[arg(long, default_value_t = 4)]
    max_n: u32,
    #[arg(long)]
    max_stem: Option<i32>,
    /// Page filtration bound (default: one above the chart's).
    #[arg(long)]
    max_filtration: Option<i32>,
    /// Print the elements on these lines of slope ½.
    #[arg(long, allow_negative_numbers = true)]
    intercept: Vec<i32>,
    /// Try to certify these elements, given as `q3·h0^3` or `q3*h0^3`.
    #[arg(long)]
    prove: Vec<String>,
}

#[derive(Args)]
struct IngestArgs {
    file: PathBuf,
    /// Write the canonical form here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verify {
    /// Run the numbered acceptance criteria.
    PaperChecks(PaperChecksArgs),
}

#[derive(Args)]
struct PaperChecksArgs {
    /// Also run the long-range criterion.
    #[arg(long)]
    long: bool,
    #[arg(long)]
    budget_secs: Option<u64>,
    #[arg(long)]
    motivic_stem_cap: Option<u32>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Checkpoint directory (default: $MOTEXT_CACHE_DIR, else none).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

fn parse_degree(s: &str) -> Result<(i32, i32, i32), String> {
    let parts: Vec<i32> = s
        .split(',')
        .map(|p| p.trim().parse::<i32>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [s, f] => Ok((s, f, 0)),
        [s, f, w] => Ok((s, f, w)),
        _ => Err("expected stem,f or stem,f,w".into()),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn degree_line(table: &ExtTable, d: TriDegree, dim: usize) -> String {
    if table.spec().is_motivic() {
        format!("dim({},{},{})={dim}", d.stem, d.filtration, d.weight)
    } else {
        format!("dim({},{})={dim}", d.stem, d.filtration)
    }
}

fn resolve(args: ResolveArgs) -> anyhow::Result<()> {
    if let Some(k) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k as usize)
            .build_global()
            .context("configuring worker threads")?;
    }
    let spec = args.algebra.spec();
    let max_f = args.max_filtration.unwrap_or_else(|| cache::default_filtration(args.max_stem));
    let (max_s, max_t) = cache::rectangle(spec, args.max_stem, max_f);
    let mut res = match &args.resume {
        Some(p) => {
            let r = checkpoint::load(p)?;
            if r.spec() != spec {
                bail!("{} holds a {} resolution, not {}", p.display(), r.spec().name(), spec.name());
            }
            r
        }
        None => Resolution::new(spec),
    };
    res.extend(max_s, max_t)?;
    res.verify().context("internal inconsistency in the resolution")?;
    if let Some(p) = &args.out {
        checkpoint::save(&res, p)?;
    }
    let table = res.ext();
    let mut out = String::new();
    for d in table.nonzero_degrees() {
        if d.stem <= args.max_stem as i32 && d.filtration <= max_f as i32 {
            out.push_str(&degree_line(&table, d, table.dim(d)?));
            out.push('\n');
        }
    }
    write_out(None, &out)?;
    let vanishing = (args.max_stem + 3) / 2;
    if max_f < vanishing {
        eprintln!(
            "warning: filtrations above {max_f} were not computed; stems up to {} can have Ext up to filtration {vanishing}",
            args.max_stem
        );
    }
    if let Some(rs) = res.range().filter(|&(s, t)| s > max_s || t > max_t) {
        eprintln!("warning: the resumed checkpoint already covered {rs:?}; summary limited to the requested range");
    }
    Ok(())
}

fn chart(args: ChartArgs) -> anyhow::Result<()> {
    let res = checkpoint::load(&args.checkpoint)?;
    let table = res.ext();
    let max_stem = match args.max_stem {
        Some(s) => s as i32,
        None => match (table.max_filtration(), res.range()) {
            (Some(f), Some(_)) => table.max_t() as i32 - f as i32,
            _ => -1,
        },
    };
    let text = match args.format {
        ChartFormat::Classes => {
            if table.spec() != AlgebraSpec::CLASSICAL {
                bail!("class files hold classical Ext; this checkpoint is {}", table.spec().name());
            }
            let mut engine = ProductEngine::new(&res, &table);
            ingest::format(&ClassicalChart::from_ext(&mut engine, max_stem)?)
        }
        f => {
            let doc = ChartDocument::build(&res, &table, max_stem)?;
            match f {
                ChartFormat::Tsv => doc.to_tsv(),
                ChartFormat::Json => doc.to_json(),
                _ => doc.to_svg(),
            }
        }
    };
    write_out(args.out.as_deref(), &text)
}

fn products(args: ProductsArgs) -> anyhow::Result<()> {
    let res = checkpoint::load(&args.checkpoint)?;
    let table = res.ext();
    let mut engine = ProductEngine::new(&res, &table);
    let degree = |(s, f, w): (i32, i32, i32)| TriDegree::new(s, f, w);
    let mut out = String::new();
    if let (Some(l), Some(r)) = (args.left, args.right) {
        let (a, b) = (table.classes(degree(l))?, table.classes(degree(r))?);
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let p = engine.yoneda_product(x, y)?;
                let coords = match table.group(p.degree.stem, p.degree.filtration)? {
                    Some(g) => g.coordinates(p.degree.weight, &p.coords)?.iter_ones().collect(),
                    None => Vec::new(),
                };
                out.push_str(&format!("{}[{i}] * {}[{j}] = {} {coords:?}\n", x.degree, y.degree, p.degree));
            }
        }
    }
    if let Some(d) = args.scan {
        for (i, x) in table.classes(degree(d))?.iter().enumerate() {
            let r = engine.indecomposability_scan(x)?;
            let verdict = match r.outcome {
                ScanOutcome::Indecomposable => "indecomposable".to_string(),
                ScanOutcome::Decomposable(w) => format!(
                    "decomposable: {}",
                    w.iter().map(|(a, b)| format!("{} * {}", a.degree, b.degree)).collect::<Vec<_>>().join(" + ")
                ),
                ScanOutcome::Inconclusive(at) => format!("inconclusive: ({},{}) is out of range", at.stem, at.filtration),
            };
            out.push_str(&format!("{}[{i}] {verdict} ({} products)\n", x.degree, r.products_computed));
        }
    }
    write_out(None, &out)
}

fn bx(args: BxArgs) -> anyhow::Result<()> {
    let chart = match (&args.source.chart, &args.source.checkpoint) {
        (Some(p), _) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            ingest::parse(&text)?
        }
        (None, Some(p)) => {
            let res = checkpoint::load(p)?;
            if res.spec() != AlgebraSpec::CLASSICAL {
                bail!("the Burklund-Xu page needs classical Ext; {} is {}", p.display(), res.spec().name());
            }
            let table = res.ext();
            let mut engine = ProductEngine::new(&res, &table);
            let max_stem = table.max_t() as i32 - table.max_filtration().map_or(0, |f| f as i32);
            ClassicalChart::from_ext(&mut engine, max_stem)?
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let max_stem = args.max_stem.unwrap_or(chart.max_stem);
    let max_f = args.max_filtration.unwrap_or(chart.max_filtration + 1);
    let mut page = assemble_e1(&chart, args.max_n, max_stem, max_f)?;
    page.apply_d1();
    let mut out = format!(
        "E1 page: q0..q{} over stems <= {max_stem}, filtrations <= {max_f}, {} elements\n",
        args.max_n,
        page.elements().len()
    );
    for c in &args.intercept {
        out.push_str(&format!("intercept {c}:\n"));
        for e in page.enumerate_intercept(*c) {
            out.push_str(&format!("  {e} {:?}\n", e.status));
        }
    }
    let loc = page.h0_localized_pages();
    let towers = |v: &[motext_core::bx::LocalizedTower]| {
        v.iter().map(|t| t.generator.to_string()).collect::<Vec<_>>().join(" ")
    };
    out.push_str(&format!("h0-localized E1 towers: {}\n", towers(&loc.e1)));
    out.push_str(&format!("h0-localized E-infinity towers: {}\n", towers(&loc.e_inf)));
    for label in &args.prove {
        let want = label.replace('*', "·");
        let Some(i) = page.elements().iter().position(|e| e.label() == want) else {
            bail!("no element {label} on the page");
        };
        let r_max = (page.max_filtration - page.elements()[i].degree().1).max(0) as u32;
        let r = page.prove_permanent_cycle(i, r_max);
        let verdict = match &r.verdict {
            Verdict::PermanentCycle => "permanent cycle".to_string(),
            Verdict::NotCertified(why) => format!("not certified: {why}"),
            Verdict::Inconclusive(why) => format!("inconclusive: {why}"),
        };
        out.push_str(&format!("{}: {verdict}; not hit: {:?}\n", r.element, r.not_hit));
    }
    write_out(None, &out)
}

fn ingest_cmd(args: IngestArgs) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let chart = ingest::parse(&text)?;
    eprintln!(
        "{}: {} classes, stems <= {}, filtrations <= {}",
        args.file.display(),
        chart.all_classes().count(),
        chart.max_stem,
        chart.max_filtration
    );
    if let Some(p) = &args.out {
        write_out(Some(p), &ingest::format(&chart))?;
    }
    Ok(())
}

fn paper_checks(args: PaperChecksArgs) -> anyhow::Result<bool> {
    let mut cache = match &args.cache_dir {
        Some(d) => ResolutionCache::in_dir(d),
        None => ResolutionCache::from_env(),
    };
    let settings = Settings {
        long: args.long,
        budget: args.budget_secs.map(Duration::from_secs),
        motivic_stem_cap: args.motivic_stem_cap,
    };
    let report = checks::run(settings, &mut cache, |r| println!("{}", r.line()))?;
    println!(
        "{} passed, {} failed, {} inconclusive",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Inconclusive)
    );
    if let Some(p) = &args.json {
        write_out(Some(p), &report.to_json())?;
    }
    Ok(report.count(Status::Fail) == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Resolve(a) => resolve(a).map(|()| true),
        Command::Chart(a) => chart(a).map(|()| true),
        Command::Products(a) => products(a).map(|()| true),
        Command::Bx(a) => bx(a).map(|()| true),
        Command::Ingest(a) => ingest_cmd(a).map(|()| true),
        Command::Verify {
            which: Verify::PaperChecks(a),
        } => paper_checks(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
