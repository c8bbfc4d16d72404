use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::compare::NamedClassRegistry;
use crate::error::{Error, Result};
use crate::linalg::BitVec;
use crate::products::ProductEngine;
use crate::resolution::ExtTable;

/// Multiplications recorded in a chart.
pub const CHART_PRODUCTS: [&str; 3] = ["h0", "h1", "h2"];

/// A basis class of classical Ext in a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartClass {
    pub stem: i32,
    pub filtration: i32,
    pub id: String,
    /// `h · x` as a sum of class ids, for `h` in [`CHART_PRODUCTS`].
    pub products: BTreeMap<String, Vec<String>>,
}

/// Classical Ext as a list of named basis classes with their h₀, h₁ and h₂
/// multiples, either computed or read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalChart {
    pub max_stem: i32,
    pub max_filtration: i32,
    classes: BTreeMap<(i32, i32), Vec<ChartClass>>,
}

fn product_degree(h: &str) -> Option<i32> {
    match h {
        "h0" => Some(0),
        "h1" => Some(1),
        "h2" => Some(3),
        _ => None,
    }
}

impl ClassicalChart {
    pub fn empty(max_stem: i32, max_filtration: i32) -> Self {
        ClassicalChart {
            max_stem,
            max_filtration,
            classes: BTreeMap::new(),
        }
    }

    /// Build from rows, checking ids are unique per degree and products
    /// refer to classes in the right degree. Products landing outside the
    /// range are kept but not checked.
    pub fn from_classes(max_stem: i32, max_filtration: i32, rows: Vec<ChartClass>) -> Result<Self> {
        let mut chart = Self::empty(max_stem, max_filtration);
        for row in rows {
            let entry = chart.classes.entry((row.stem, row.filtration)).or_default();
            if entry.iter().any(|c| c.id == row.id) {
                return Err(Error::Invalid(format!(
                    "duplicate class {} at ({}, {})",
                    row.id, row.stem, row.filtration
                )));
            }
            entry.push(row);
        }
        for c in chart.classes.values().flatten() {
            for (h, targets) in &c.products {
                let dh = product_degree(h).ok_or_else(|| Error::Invalid(format!("unknown product {h}")))?;
                let (s, f) = (c.stem + dh, c.filtration + 1);
                if !chart.covers(s, f) {
                    continue;
                }
                for t in targets {
                    if chart.index_of(s, f, t).is_none() {
                        return Err(Error::Invalid(format!(
                            "{h}·{} refers to missing class {t} at ({s}, {f})",
                            c.id
                        )));
                    }
                }
            }
        }
        Ok(chart)
    }

    /// Classical Ext from a computed table, with products by Yoneda
    /// composition. Ids are registry names where one applies, `h0^k` on
    /// the stem-0 tower, and `x{stem}_{f}_{i}` otherwise.
    pub fn from_ext(engine: &mut ProductEngine<'_>, max_stem: i32) -> Result<Self> {
        let table: &ExtTable = engine.table();
        let max_f = table.max_filtration().map_or(-1, |f| f as i32);
        let registry = NamedClassRegistry::standard(table);
        let id = |s: i32, f: i32, i: usize, dim: usize| -> String {
            let d = crate::degree::TriDegree::classical(s, f);
            match (s, f) {
                (0, 0) => return String::from("1"),
                (0, 1) => return String::from("h0"),
                (0, _) => return format!("h0^{f}"),
                _ => {}
            }
            match registry.name_at(d) {
                Some(n) if dim == 1 => n.replace(' ', ""),
                _ => format!("x{s}_{f}_{i}"),
            }
        };
        let h: Vec<_> = CHART_PRODUCTS
            .iter()
            .map(|name| {
                let d = product_degree(name).expect("known product");
                table.unique_class(crate::degree::TriDegree::classical(d, 1)).ok().flatten()
            })
            .collect();
        let mut rows = Vec::new();
        for s in 0..=max_stem {
            for f in 0..=max_f {
                if !table.covers(s, f) {
                    continue;
                }
                let classes = table.classes(crate::degree::TriDegree::classical(s, f))?;
                for (i, c) in classes.iter().enumerate() {
                    let mut products = BTreeMap::new();
                    for (k, name) in CHART_PRODUCTS.iter().enumerate() {
                        let Some(hc) = &h[k] else { continue };
                        let d = c.degree + hc.degree;
                        if d.stem > max_stem || !table.covers(d.stem, d.filtration) {
                            continue;
                        }
                        let p = engine.yoneda_product(c, hc)?;
                        let g = table.group(d.stem, d.filtration)?;
                        let coords = match g {
                            Some(g) => g.coordinates(0, &p.coords)?,
                            None => BitVec::zeros(0),
                        };
                        let dim = coords.len();
                        let ids: Vec<String> = coords.iter_ones().map(|j| id(d.stem, d.filtration, j, dim)).collect();
                        if !ids.is_empty() {
                            products.insert(String::from(*name), ids);
                        }
                    }
                    rows.push(ChartClass {
                        stem: s,
                        filtration: f,
                        id: id(s, f, i, classes.len()),
                        products,
                    });
                }
            }
        }
        Self::from_classes(max_stem, max_f, rows)
    }

    pub fn covers(&self, stem: i32, f: i32) -> bool {
        (0..=self.max_stem).contains(&stem) && (0..=self.max_filtration).contains(&f)
    }

    pub fn classes(&self, stem: i32, f: i32) -> &[ChartClass] {
        self.classes.get(&(stem, f)).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, stem: i32, f: i32) -> usize {
        self.classes(stem, f).len()
    }

    pub fn index_of(&self, stem: i32, f: i32, id: &str) -> Option<usize> {
        self.classes(stem, f).iter().position(|c| c.id == id)
    }

    pub fn all_classes(&self) -> impl Iterator<Item = &ChartClass> {
        self.classes.values().flatten()
    }

    /// `h · x` for the `i`-th class at `(stem, f)`, as a vector over the
    /// classes of the target degree.
    pub fn product_vector(&self, h: &str, stem: i32, f: i32, i: usize) -> BitVec {
        let dh = product_degree(h).unwrap_or(0);
        let (ts, tf) = (stem + dh, f + 1);
        let mut v = BitVec::zeros(self.dim(ts, tf));
        if let Some(ids) = self.classes(stem, f)[i].products.get(h) {
            for id in ids {
                if let Some(j) = self.index_of(ts, tf, id) {
                    v.flip(j);
                }
            }
        }
        v
    }

    /// Matrix of `h·` out of `(stem, f)`, one row per class.
    pub fn product_rows(&self, h: &str, stem: i32, f: i32) -> Vec<BitVec> {
        (0..self.dim(stem, f)).map(|i| self.product_vector(h, stem, f, i)).collect()
    }
}
