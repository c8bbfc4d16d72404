//! Classical charts as tab-separated class rows.
//!
//! ```text
//! motext-classes<TAB>max_stem=30<TAB>max_filtration=16
//! 0<TAB>1<TAB>h0<TAB>h0:h0^2
//! 16<TAB>2<TAB>x16_2_0<TAB>h0:a+b<TAB>h1:c
//! ```
//!
//! The first non-comment line gives the range. Each following row is
//! `stem, filtration, id`, then optional `h:ids` fields for `h` in h0, h1,
//! h2, with `ids` a `+`-separated sum of class ids in the product degree.
//! Lines starting with `#` and blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt::Write;

use motext_core::bx::{ChartClass, ClassicalChart, CHART_PRODUCTS};

use crate::error::{MotextError, Result};

pub const MAGIC: &str = "motext-classes";

fn err(line: usize, message: impl Into<String>) -> MotextError {
    MotextError::Chart {
        line,
        message: message.into(),
    }
}

fn int(line: usize, field: &str, what: &str) -> Result<i32> {
    field.trim().parse().map_err(|_| err(line, format!("bad {what} {field:?}")))
}

pub fn parse(text: &str) -> Result<ClassicalChart> {
    let mut range = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if range.is_none() {
            if fields[0] != MAGIC || fields.len() != 3 {
                return Err(err(n, format!("expected header `{MAGIC}\\tmax_stem=N\\tmax_filtration=F`")));
            }
            let value = |f: &str, key: &str| -> Result<i32> {
                let v = f
                    .strip_prefix(key)
                    .and_then(|r| r.strip_prefix('='))
                    .ok_or_else(|| err(n, format!("expected {key}=…")))?;
                int(n, v, key)
            };
            range = Some((value(fields[1], "max_stem")?, value(fields[2], "max_filtration")?));
            continue;
        }
        if fields.len() < 3 {
            return Err(err(n, "expected stem, filtration and id"));
        }
        let stem = int(n, fields[0], "stem")?;
        let filtration = int(n, fields[1], "filtration")?;
        let id = fields[2].trim();
        if id.is_empty() || id.contains('+') || id.contains(':') {
            return Err(err(n, format!("bad class id {id:?}")));
        }
        let mut products = BTreeMap::new();
        for f in &fields[3..] {
            let (h, ids) = f.split_once(':').ok_or_else(|| err(n, format!("expected h:ids, got {f:?}")))?;
            if !CHART_PRODUCTS.contains(&h) {
                return Err(err(n, format!("unknown product {h}")));
            }
            let ids: Vec<String> = ids.split('+').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            if products.insert(h.to_string(), ids).is_some() {
                return Err(err(n, format!("{h} given twice")));
            }
        }
        rows.push(ChartClass {
            stem,
            filtration,
            id: id.to_string(),
            products,
        });
    }
    let (max_stem, max_f) = range.ok_or_else(|| err(0, "missing header"))?;
    Ok(ClassicalChart::from_classes(max_stem, max_f, rows)?)
}

/// Canonical text: rows ordered by stem, filtration, then class order.
pub fn format(chart: &ClassicalChart) -> String {
    let mut out = format!("{MAGIC}\tmax_stem={}\tmax_filtration={}\n", chart.max_stem, chart.max_filtration);
    for c in chart.all_classes() {
        write!(out, "{}\t{}\t{}", c.stem, c.filtration, c.id).expect("write to string");
        for (h, ids) in &c.products {
            write!(out, "\t{h}:{}", ids.join("+")).expect("write to string");
        }
        out.push('\n');
    }
    out
}
