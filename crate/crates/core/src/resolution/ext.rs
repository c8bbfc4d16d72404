//! Ext from a minimal resolution.
//!
//! A cochain of weight `w` in filtration `f` and internal degree `t` is a
//! homomorphism sending each generator `x` of `F_f[t]` to `τ^{ω(x) - w}`, so
//! the cochains of weight `w` are spanned by the duals of generators with
//! `ω(x) ≥ w`. Call that set the slice at `w`. The dual differential only
//! sees the coefficient of `(x, 1)` in `d(y)`, which minimality forces to
//! be a positive power of τ; each slice is therefore a subcomplex and
//! multiplication by τ is the inclusion of the slice at `w` into the slice
//! at `w - 1`. Below the smallest weight in sight the slices stop changing
//! and compute classical Ext.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::Resolution;
use crate::degree::TriDegree;
use crate::error::{Error, Result};
use crate::linalg::{reduce_by_rref, BitVec, Echelon, F2Matrix};
use crate::steenrod::AlgebraSpec;

/// A class in Ext, given by its reduced cocycle in the basis dual to the
/// generators of `F_f` in internal degree `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtClass {
    pub degree: TriDegree,
    pub coords: BitVec,
    pub name: Option<String>,
}

impl ExtClass {
    pub fn new(degree: TriDegree, coords: BitVec) -> Self {
        ExtClass {
            degree,
            coords,
            name: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn filtration(&self) -> u32 {
        self.degree.filtration as u32
    }

    pub fn t(&self) -> u32 {
        self.degree.t() as u32
    }
}

/// A minimal generator of Ext as an F₂[τ]-module, with its τ-torsion order
/// (`None` for τ-free).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGenerator {
    pub class: ExtClass,
    pub tau_order: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Slice {
    /// Boundaries in reduced row echelon form.
    boundary_rows: Vec<BitVec>,
    boundary_pivots: Vec<usize>,
    /// Canonical class representatives, in reduced row echelon form and
    /// reduced against the boundaries.
    class_rows: Vec<BitVec>,
    class_pivots: Vec<usize>,
}

/// Ext in one filtration and internal degree, all weights at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGroup {
    filtration: u32,
    t: u32,
    motivic: bool,
    weights: Vec<i32>,
    /// `δ(x_i*)` over the generators one filtration up.
    coboundary: Vec<BitVec>,
    /// Weight of each generator one filtration down and its `δ`.
    incoming: Vec<(i32, BitVec)>,
    lo: i32,
    hi: i32,
    slices: Vec<Slice>,
}

fn rref_rows(rows: Vec<BitVec>, width: usize) -> (Vec<BitVec>, Vec<usize>) {
    let rr = F2Matrix::from_rows(width, rows).rref();
    let rows = rr.reduced.rows()[..rr.rank].to_vec();
    (rows, rr.pivots)
}

impl ExtGroup {
    pub(crate) fn compute(res: &Resolution, f: u32, t: u32) -> ExtGroup {
        let here = res.gens_in_degree(f, t);
        let n = here.len();
        let weights: Vec<i32> = res.generators(f)[here.clone()].iter().map(|g| g.weight).collect();
        let layout = res.layout(f, t);

        let up = if res.is_computed(f + 1, t) {
            res.gens_in_degree(f + 1, t)
        } else {
            0..0
        };
        let mut coboundary = vec_of(n, BitVec::zeros(up.len()));
        for (yi, y) in res.generators(f + 1)[up].iter().enumerate() {
            for (i, xi) in here.clone().enumerate() {
                if y.diff().get(layout.offsets[xi]) {
                    coboundary[i].set(yi, true);
                }
            }
        }

        let mut incoming = Vec::new();
        if f > 0 {
            let below = res.layout(f - 1, t);
            for z in res.gens_in_degree(f - 1, t) {
                let mut v = BitVec::zeros(n);
                for (i, xi) in here.clone().enumerate() {
                    if res.generator(f, xi).diff().get(below.offsets[z]) {
                        v.set(i, true);
                    }
                }
                incoming.push((res.generator(f - 1, z).weight, v));
            }
        }

        let lo = weights
            .iter()
            .chain(incoming.iter().map(|(w, _)| w))
            .copied()
            .min()
            .unwrap_or(0);
        let hi = weights.iter().copied().max().unwrap_or(lo - 1);
        let mut g = ExtGroup {
            filtration: f,
            t,
            motivic: res.spec().is_motivic(),
            weights,
            coboundary,
            incoming,
            lo,
            hi,
            slices: Vec::new(),
        };
        g.slices = (lo..=hi.max(lo)).map(|w| g.build_slice(w)).collect();
        g
    }

    fn build_slice(&self, w: i32) -> Slice {
        let n = self.weights.len();
        let boundaries = self
            .incoming
            .iter()
            .filter(|(wz, _)| *wz >= w)
            .map(|(_, v)| v.clone())
            .collect();
        let (boundary_rows, boundary_pivots) = rref_rows(boundaries, n);
        let mut ech = Echelon::new(self.coboundary.first().map_or(0, BitVec::len), n);
        let mut residues = Vec::new();
        for (i, row) in self.coboundary.iter().enumerate() {
            if self.weights[i] < w {
                continue;
            }
            if let Some(mut z) = ech.insert(row.clone(), BitVec::unit(n, i)) {
                reduce_by_rref(&mut z, &boundary_rows, &boundary_pivots);
                if !z.is_zero() {
                    residues.push(z);
                }
            }
        }
        let (class_rows, class_pivots) = rref_rows(residues, n);
        Slice {
            boundary_rows,
            boundary_pivots,
            class_rows,
            class_pivots,
        }
    }

    pub fn filtration(&self) -> u32 {
        self.filtration
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Number of generators of the resolution in this degree.
    pub fn num_gens(&self) -> usize {
        self.weights.len()
    }

    pub fn gen_weights(&self) -> &[i32] {
        &self.weights
    }

    /// Weights where the slices can change; below `lo` they are constant,
    /// above `hi` they are zero.
    pub fn weight_range(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    fn slice(&self, w: i32) -> Option<&Slice> {
        if w > self.hi {
            None
        } else {
            self.slices.get((w.max(self.lo) - self.lo) as usize)
        }
    }

    /// Dimension of Ext in weight `w`; classically the weight is ignored.
    pub fn dim(&self, w: i32) -> usize {
        let w = if self.motivic { w } else { self.lo };
        self.slice(w).map_or(0, |s| s.class_rows.len())
    }

    /// Dimension after inverting τ, equal to classical Ext.
    pub fn stable_dim(&self) -> usize {
        self.dim(self.lo)
    }

    /// Weights with nonzero Ext, from the top down to `lo`.
    pub fn nonzero_weights(&self) -> Vec<i32> {
        (self.lo..=self.hi).rev().filter(|&w| self.dim(w) > 0).collect()
    }

    pub fn degree_at(&self, w: i32) -> TriDegree {
        TriDegree::new(
            self.t as i32 - self.filtration as i32,
            self.filtration as i32,
            if self.motivic { w } else { 0 },
        )
    }

    /// The canonical basis of Ext in weight `w`.
    pub fn classes(&self, w: i32) -> Vec<ExtClass> {
        let w = if self.motivic { w } else { self.lo };
        let deg = self.degree_at(w);
        self.slice(w)
            .map(|s| s.class_rows.iter().map(|r| ExtClass::new(deg, r.clone())).collect())
            .unwrap_or_default()
    }

    /// Whether `v` lies in the slice at `w`.
    pub fn in_slice(&self, w: i32, v: &BitVec) -> bool {
        v.iter_ones().all(|i| !self.motivic || self.weights[i] >= w)
    }

    pub fn is_cocycle(&self, v: &BitVec) -> bool {
        let mut out = BitVec::zeros(self.coboundary.first().map_or(0, BitVec::len));
        for i in v.iter_ones() {
            out.xor_assign(&self.coboundary[i]);
        }
        out.is_zero()
    }

    /// Reduce a cocycle of weight `w` to its canonical representative.
    pub fn reduce(&self, w: i32, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.num_gens() {
            return Err(Error::Invalid(format!(
                "cochain of length {} in a degree with {} generators",
                v.len(),
                self.num_gens()
            )));
        }
        if !self.in_slice(w, v) || !self.is_cocycle(v) {
            return Err(Error::NotACocycle(self.degree_at(w)));
        }
        let Some(s) = self.slice(if self.motivic { w } else { self.lo }) else {
            return Ok(BitVec::zeros(self.num_gens()));
        };
        let mut v = v.clone();
        reduce_by_rref(&mut v, &s.boundary_rows, &s.boundary_pivots);
        Ok(v)
    }

    /// Coordinates of a cocycle in the canonical basis of weight `w`.
    pub fn coordinates(&self, w: i32, v: &BitVec) -> Result<BitVec> {
        let r = self.reduce(w, v)?;
        let s = self.slice(if self.motivic { w } else { self.lo });
        let pivots = s.map_or(&[][..], |s| s.class_pivots.as_slice());
        Ok(BitVec::from_ones(
            pivots.len(),
            pivots.iter().enumerate().filter(|(_, &p)| r.get(p)).map(|(i, _)| i),
        ))
    }

    pub fn is_zero(&self, w: i32, v: &BitVec) -> Result<bool> {
        Ok(self.reduce(w, v)?.is_zero())
    }

    /// Least `k` with `τᵏ·[v] = 0`, or `None` if `[v]` is τ-free.
    pub fn tau_order(&self, w: i32, v: &BitVec) -> Result<Option<u32>> {
        if !self.motivic {
            return Ok(if self.is_zero(w, v)? { Some(0) } else { None });
        }
        let mut k = 0;
        loop {
            let wk = w - k as i32;
            if self.is_zero(wk, v)? {
                return Ok(Some(k));
            }
            if wk <= self.lo {
                return Ok(None);
            }
            k += 1;
        }
    }

    /// Minimal generators of Ext in this degree as an F₂[τ]-module, from
    /// the top weight down.
    pub fn module_generators(&self) -> Vec<ModuleGenerator> {
        let n = self.num_gens();
        let mut out = Vec::new();
        if !self.motivic {
            for c in self.classes(0) {
                out.push(ModuleGenerator {
                    class: c,
                    tau_order: None,
                });
            }
            return out;
        }
        for w in (self.lo..=self.hi).rev() {
            let Some(s) = self.slice(w) else { continue };
            let mut span = Echelon::new(n, 0);
            for b in &s.boundary_rows {
                span.insert_plain(b.clone());
            }
            if let Some(above) = self.slice(w + 1).filter(|_| w < self.hi) {
                for c in &above.class_rows {
                    span.insert_plain(c.clone());
                }
            }
            for c in self.classes(w) {
                if span.insert_plain(c.coords.clone()) {
                    let tau_order = self.tau_order(w, &c.coords).expect("canonical classes are cocycles");
                    out.push(ModuleGenerator { class: c, tau_order });
                }
            }
        }
        out
    }
}

fn vec_of(n: usize, v: BitVec) -> Vec<BitVec> {
    (0..n).map(|_| v.clone()).collect()
}

/// Ext groups for every filtration and internal degree in range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    spec: AlgebraSpec,
    max_f: Option<u32>,
    max_t: u32,
    groups: BTreeMap<(u32, u32), ExtGroup>,
}

impl ExtTable {
    pub fn new(res: &Resolution) -> ExtTable {
        let mut groups = BTreeMap::new();
        let max_f = res.ext_max_filtration();
        let max_t = res.max_t().unwrap_or(0);
        if let Some(mf) = max_f {
            for f in 0..=mf {
                for t in f..=max_t {
                    groups.insert((f, t), ExtGroup::compute(res, f, t));
                }
            }
        }
        ExtTable {
            spec: res.spec(),
            max_f,
            max_t,
            groups,
        }
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn max_filtration(&self) -> Option<u32> {
        self.max_f
    }

    pub fn max_t(&self) -> u32 {
        self.max_t
    }

    /// Whether `(stem, f)` is inside the computed range.
    pub fn covers(&self, stem: i32, f: i32) -> bool {
        f >= 0 && self.max_f.is_some_and(|m| f as u32 <= m) && stem + f <= self.max_t as i32
    }

    pub fn group(&self, stem: i32, f: i32) -> Result<Option<&ExtGroup>> {
        if !self.covers(stem, f) {
            return Err(Error::OutOfRange {
                degree: TriDegree::new(stem, f, 0),
                reason: "outside the computed range",
            });
        }
        if stem < 0 {
            return Ok(None);
        }
        Ok(self.groups.get(&(f as u32, (stem + f) as u32)))
    }

    pub fn dim(&self, d: TriDegree) -> Result<usize> {
        Ok(self
            .group(d.stem, d.filtration)
            .map_err(|_| Error::OutOfRange {
                degree: d,
                reason: "outside the computed range",
            })?
            .map_or(0, |g| g.dim(d.weight)))
    }

    /// Classical dimension, or the τ-inverted dimension for the motivic flavor.
    pub fn stable_dim(&self, stem: i32, f: i32) -> Result<usize> {
        Ok(self.group(stem, f)?.map_or(0, ExtGroup::stable_dim))
    }

    pub fn classes(&self, d: TriDegree) -> Result<Vec<ExtClass>> {
        Ok(self.group(d.stem, d.filtration)?.map_or(Vec::new(), |g| g.classes(d.weight)))
    }

    /// The unique class in `d`, if the group there is one-dimensional.
    pub fn unique_class(&self, d: TriDegree) -> Result<Option<ExtClass>> {
        let cs = self.classes(d)?;
        Ok(if cs.len() == 1 { cs.into_iter().next() } else { None })
    }

    pub fn groups(&self) -> impl Iterator<Item = &ExtGroup> {
        self.groups.values()
    }

    pub fn is_zero(&self, c: &ExtClass) -> Result<bool> {
        match self.group(c.degree.stem, c.degree.filtration)? {
            None => Ok(true),
            Some(g) => g.is_zero(c.degree.weight, &c.coords),
        }
    }

    pub fn reduce(&self, c: &ExtClass) -> Result<ExtClass> {
        match self.group(c.degree.stem, c.degree.filtration)? {
            None => Ok(c.clone()),
            Some(g) => Ok(ExtClass {
                degree: c.degree,
                coords: g.reduce(c.degree.weight, &c.coords)?,
                name: c.name.clone(),
            }),
        }
    }

    pub fn tau_order(&self, c: &ExtClass) -> Result<Option<u32>> {
        match self.group(c.degree.stem, c.degree.filtration)? {
            None => Ok(Some(0)),
            Some(g) => g.tau_order(c.degree.weight, &c.coords),
        }
    }

    /// `τ·c`, the same cocycle one weight down.
    pub fn tau_times(&self, c: &ExtClass) -> ExtClass {
        ExtClass::new(c.degree + TriDegree::TAU, c.coords.clone())
    }

    /// Tridegrees with nonzero Ext, ordered by stem, filtration, weight
    /// descending.
    pub fn nonzero_degrees(&self) -> Vec<TriDegree> {
        let mut out = Vec::new();
        for g in self.groups.values() {
            if self.spec.is_motivic() {
                out.extend(g.nonzero_weights().into_iter().map(|w| g.degree_at(w)));
            } else if g.stable_dim() > 0 {
                out.push(g.degree_at(0));
            }
        }
        out.sort_by_key(|d| (d.stem, d.filtration, -d.weight));
        out
    }
}

impl Resolution {
    pub fn ext(&self) -> ExtTable {
        ExtTable::new(self)
    }
}
