//! Chart documents: dots for F₂[τ]-module generators of Ext, structure lines
//! for h₀, h₁ and h₂ multiplication, emitted as TSV, JSON or SVG.

use std::collections::BTreeMap;
use std::fmt::Write;

use motext_core::compare::NamedClassRegistry;
use motext_core::linalg::{BitVec, Echelon};
use motext_core::products::ProductEngine;
use motext_core::{ExtClass, ExtTable, Resolution, TriDegree};
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const FORMAT: &str = "motext-chart";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dot {
    pub id: String,
    pub stem: i32,
    pub filtration: i32,
    pub weight: i32,
    pub name: Option<String>,
    /// Smallest `k` with `τᵏ·x = 0`, if any.
    pub tau_order: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    /// `h0`, `h1` or `h2`.
    pub kind: String,
    pub from: String,
    pub to: String,
    /// The product hits `τ^tau · to`.
    pub tau: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDocument {
    pub format: String,
    pub version: u32,
    pub algebra: String,
    pub max_stem: i32,
    pub max_filtration: i32,
    pub dots: Vec<Dot>,
    pub lines: Vec<Line>,
    /// Rows of the TSV form: `(stem, f, w, dim, names)`.
    #[serde(skip)]
    degrees: Vec<(TriDegree, usize, Vec<String>)>,
}

/// Display names, with the family alias where one applies.
fn display_name(name: &str) -> String {
    match name {
        "x3" => "x3 = e0g^0".to_string(),
        "x4" => "x4 = e0g^1".to_string(),
        _ => name.to_string(),
    }
}

const STRUCTURE: [(&str, (i32, i32, i32)); 3] = [("h0", (0, 1, 0)), ("h1", (1, 1, 1)), ("h2", (3, 1, 2))];

fn tau_power(table: &ExtTable, c: &ExtClass, k: i32) -> Result<ExtClass> {
    let mut c = c.clone();
    for _ in 0..k {
        c = table.tau_times(&c);
    }
    Ok(table.reduce(&c)?)
}

struct GenRef {
    id: String,
    class: ExtClass,
}

impl ChartDocument {
    /// The chart of `res` in stems `0..=max_stem`.
    pub fn build(res: &Resolution, table: &ExtTable, max_stem: i32) -> Result<Self> {
        let motivic = table.spec().is_motivic();
        let registry = NamedClassRegistry::standard(table);
        let max_f = table.max_filtration().map_or(-1, |f| f as i32);
        let mut doc = ChartDocument {
            format: FORMAT.to_string(),
            version: VERSION,
            algebra: table.spec().name(),
            max_stem,
            max_filtration: max_f,
            dots: Vec::new(),
            lines: Vec::new(),
            degrees: Vec::new(),
        };
        // Module generators per (stem, f), ordered by weight then index.
        let mut gens: BTreeMap<(i32, i32), Vec<GenRef>> = BTreeMap::new();
        let mut dot_degrees: BTreeMap<TriDegree, usize> = BTreeMap::new();
        for stem in 0..=max_stem {
            for f in 0..=max_f {
                if !table.covers(stem, f) {
                    continue;
                }
                let Some(g) = table.group(stem, f)? else { continue };
                let mut mg = g.module_generators();
                mg.sort_by_key(|m| (-m.class.degree.weight, m.class.coords.iter_ones().collect::<Vec<_>>()));
                for m in mg {
                    let d = m.class.degree;
                    let n = dot_degrees.entry(d).or_default();
                    let id = if motivic {
                        format!("{}_{}_{}_{}", d.stem, d.filtration, d.weight, n)
                    } else {
                        format!("{}_{}_{}", d.stem, d.filtration, n)
                    };
                    *n += 1;
                    doc.dots.push(Dot {
                        id: id.clone(),
                        stem: d.stem,
                        filtration: d.filtration,
                        weight: d.weight,
                        name: None,
                        tau_order: m.tau_order,
                    });
                    gens.entry((stem, f)).or_default().push(GenRef { id, class: m.class });
                }
            }
        }
        for dot in &mut doc.dots {
            let d = TriDegree::new(dot.stem, dot.filtration, dot.weight);
            if dot_degrees[&d] == 1 {
                dot.name = registry.name_at(d).map(display_name);
            }
        }
        for &d in dot_degrees.keys() {
            let names = doc
                .dots
                .iter()
                .filter(|x| TriDegree::new(x.stem, x.filtration, x.weight) == d)
                .filter_map(|x| x.name.clone())
                .collect();
            doc.degrees.push((d, table.dim(d)?, names));
        }
        let mut engine = ProductEngine::new(res, table);
        for (kind, (hs, hf, hw)) in STRUCTURE {
            let hd = if motivic { TriDegree::new(hs, hf, hw) } else { TriDegree::classical(hs, hf) };
            let Some(h) = table.unique_class(hd).ok().flatten() else { continue };
            for (&(stem, f), sources) in &gens {
                let (ts, tf) = (stem + hs, f + hf);
                if ts > max_stem || !table.covers(ts, tf) {
                    continue;
                }
                let targets = gens.get(&(ts, tf));
                for src in sources {
                    let p = engine.yoneda_product(&src.class, &h)?;
                    if table.is_zero(&p)? {
                        continue;
                    }
                    let targets = targets.expect("a nonzero product lands on some generator");
                    for (id, tau) in decompose(table, &p, targets)? {
                        doc.lines.push(Line {
                            kind: kind.to_string(),
                            from: src.id.clone(),
                            to: id,
                            tau,
                        });
                    }
                }
            }
        }
        Ok(doc)
    }

    pub fn dot(&self, id: &str) -> Option<&Dot> {
        self.dots.iter().find(|d| d.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("chart serializes");
        s.push('\n');
        s
    }

    /// One row per tridegree holding a dot: `s, f, w, dim, names`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("s\tf\tw\tdim\tnames\n");
        for (d, dim, names) in &self.degrees {
            let names = if names.is_empty() { "-".to_string() } else { names.join(",") };
            writeln!(out, "{}\t{}\t{}\t{dim}\t{names}", d.stem, d.filtration, d.weight).expect("write to string");
        }
        out
    }

    pub fn to_svg(&self) -> String {
        const UNIT: i32 = 32;
        const PAD: i32 = 40;
        let width = (self.max_stem.max(0) + 1) * UNIT + 2 * PAD;
        let height = (self.max_filtration.max(0) + 1) * UNIT + 2 * PAD;
        let mut pos: BTreeMap<&str, (i32, i32)> = BTreeMap::new();
        let mut seen: BTreeMap<(i32, i32), i32> = BTreeMap::new();
        for d in &self.dots {
            let k = seen.entry((d.stem, d.filtration)).or_default();
            let x = PAD + d.stem * UNIT + *k * 6;
            let y = height - PAD - d.filtration * UNIT - *k * 3;
            *k += 1;
            pos.insert(&d.id, (x, y));
        }
        let mut out = String::new();
        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
        )
        .expect("write to string");
        writeln!(out, "<title>{} Ext, stems 0..{}</title>", self.algebra, self.max_stem).expect("write to string");
        for s in (0..=self.max_stem).step_by(4) {
            writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{s}</text>",
                PAD + s * UNIT,
                height - PAD / 3
            )
            .expect("write to string");
        }
        for l in &self.lines {
            let (Some(&(x1, y1)), Some(&(x2, y2))) = (pos.get(l.from.as_str()), pos.get(l.to.as_str())) else {
                continue;
            };
            let dash = if l.tau > 0 { " stroke-dasharray=\"3,2\"" } else { "" };
            writeln!(
                out,
                "<line class=\"{}\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#555\" stroke-width=\"1\"{dash}/>",
                l.kind
            )
            .expect("write to string");
        }
        for d in &self.dots {
            let (x, y) = pos[d.id.as_str()];
            let fill = if d.tau_order.is_some() { "#c0392b" } else { "#000" };
            writeln!(
                out,
                "<circle id=\"{}\" cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"{fill}\"><title>({},{},{})</title></circle>",
                d.id, d.stem, d.filtration, d.weight
            )
            .expect("write to string");
            if let Some(name) = &d.name {
                writeln!(out, "<text x=\"{}\" y=\"{}\" font-size=\"9\">{name}</text>", x + 4, y - 4)
                    .expect("write to string");
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Write `p` as a sum of `τᵏ·g` over the generators `g` at its (stem, f).
fn decompose(table: &ExtTable, p: &ExtClass, targets: &[GenRef]) -> Result<Vec<(String, u32)>> {
    let w = p.degree.weight;
    let usable: Vec<(&GenRef, i32)> = targets
        .iter()
        .filter(|g| g.class.degree.weight >= w)
        .map(|g| (g, g.class.degree.weight - w))
        .collect();
    let width = p.coords.len();
    let mut ech = Echelon::new(width, usable.len());
    for (i, (g, k)) in usable.iter().enumerate() {
        let v = tau_power(table, &g.class, *k)?;
        ech.insert(v.coords, BitVec::unit(usable.len(), i));
    }
    let pre = ech
        .solve(&p.coords)
        .expect("module generators span each slice");
    Ok(pre.iter_ones().map(|i| (usable[i].0.id.clone(), usable[i].1 as u32)).collect())
}
