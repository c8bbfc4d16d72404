//! Chain maps between resolutions, Yoneda products and tower probes.
//!
//! A cocycle `φ` on `F_{s₀}` in degree `t₀` lifts to a chain map
//! `fᵢ : F_{s₀+i} → Fᵢ` of degree `t₀`, and the product of `[φ]` with a
//! class `[ψ]` on `F_{s₁}` is represented by `ψ ∘ f_{s₁}`. The same lifting,
//! started from the identity of the ground module, gives the comparison
//! maps used for restriction to a subalgebra and for setting τ = 1.
//!
//! Lifts solve `d(v) = r` in the target with an echelon form built in
//! increasing weight, so a homogeneous right-hand side always gets a
//! homogeneous solution.

mod scan;

pub use scan::{ScanOutcome, ScanReport};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::degree::TriDegree;
use crate::error::{Error, Result};
use crate::linalg::{BitVec, Echelon};
use crate::resolution::{ExtClass, ExtTable, Layout, Resolution};

/// Solvers for `d : F_s[t] → F_{s-1}[t]`, built on first use.
#[derive(Clone, Debug, Default)]
pub struct SolverCache {
    map: BTreeMap<(u32, u32), Echelon>,
}

impl SolverCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn build(res: &Resolution, s: u32, t: u32) -> Echelon {
        let source = res.layout(s, t);
        let target = if s == 0 {
            Layout {
                t,
                offsets: alloc::vec![0],
                dim: res.dim(-1, t),
            }
        } else {
            res.layout(s - 1, t)
        };
        let weights = res.weights(s, t);
        let mut order: Vec<usize> = (0..source.dim).collect();
        order.sort_by_key(|&i| (weights[i], i));
        let mut ech = Echelon::new(target.dim, source.dim);
        for i in order {
            let (j, op) = source.locate(i);
            let row = res.image_row(s, j, op, &target);
            ech.insert(row, BitVec::unit(source.dim, i));
        }
        ech
    }

    /// Some `v ∈ F_s[t]` with `d(v) = r`.
    pub fn solve(&mut self, res: &Resolution, s: u32, t: u32, r: &BitVec) -> Option<BitVec> {
        if r.is_zero() {
            return Some(BitVec::zeros(res.dim(s as i32, t)));
        }
        self.map
            .entry((s, t))
            .or_insert_with(|| Self::build(res, s, t))
            .solve(r)
    }
}

/// A chain map `fᵢ : G_{shift+i} → Fᵢ` of internal degree `t0`, lifting a
/// cocycle on `G_shift`. `G` may be a resolution over a subalgebra of the
/// algebra of `F`, or over the classical algebra when `F` is motivic.
#[derive(Clone, Debug)]
pub struct ChainMap {
    shift: u32,
    t0: u32,
    cocycle: BitVec,
    values: Vec<Vec<Option<BitVec>>>,
    op_map: BTreeMap<(u32, u32), u32>,
    same_algebra: bool,
}

impl ChainMap {
    /// Lift `cocycle`, a vector over the generators of `G_shift` in degree `t0`.
    pub fn new(source: &Resolution, target: &Resolution, shift: u32, t0: u32, cocycle: BitVec) -> Result<Self> {
        if cocycle.len() != source.gens_in_degree(shift, t0).len() {
            return Err(Error::Invalid(format!(
                "cocycle of length {} on {} generators",
                cocycle.len(),
                source.gens_in_degree(shift, t0).len()
            )));
        }
        Ok(ChainMap {
            shift,
            t0,
            cocycle,
            values: Vec::new(),
            op_map: BTreeMap::new(),
            same_algebra: source.spec() == target.spec(),
        })
    }

    /// The chain map lifting the identity of the ground module.
    pub fn comparison(source: &Resolution, target: &Resolution) -> Result<Self> {
        Self::new(source, target, 0, 0, BitVec::unit(1, 0))
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn t0(&self) -> u32 {
        self.t0
    }

    fn map_op(&mut self, source: &Resolution, target: &Resolution, op_t: u32, op: u32) -> Result<u32> {
        if self.same_algebra {
            return Ok(op);
        }
        if let Some(&o) = self.op_map.get(&(op_t, op)) {
            return Ok(o);
        }
        let seq = source.algebra().seq(op_t, op as usize);
        let o = target
            .algebra()
            .index_of(seq)
            .ok_or_else(|| Error::NotInAlgebra(format!("{seq:?} in {}", target.spec())))? as u32;
        self.op_map.insert((op_t, op), o);
        Ok(o)
    }

    /// `f_i(y_j)` for generator `j` of `G_{shift+i}`, in `F_i[t_j - t0]`.
    pub fn value(
        &mut self,
        source: &Resolution,
        target: &Resolution,
        solvers: &mut SolverCache,
        i: u32,
        j: usize,
    ) -> Result<BitVec> {
        let s = self.shift + i;
        while self.values.len() <= i as usize {
            self.values.push(Vec::new());
        }
        let n = source.num_gens(s);
        if self.values[i as usize].len() < n {
            self.values[i as usize].resize(n, None);
        }
        if let Some(v) = &self.values[i as usize][j] {
            return Ok(v.clone());
        }
        let y = source.generator(s, j);
        if y.t < self.t0 {
            let v = BitVec::zeros(0);
            self.values[i as usize][j] = Some(v.clone());
            return Ok(v);
        }
        let u = y.t - self.t0;
        if !target.is_computed(i, u) {
            return Err(Error::OutOfRange {
                degree: TriDegree::new(u as i32 - i as i32, i as i32, 0),
                reason: "chain map target not computed",
            });
        }
        let v = if i == 0 {
            let here = source.gens_in_degree(s, self.t0);
            let hit = u == 0 && here.contains(&j) && self.cocycle.get(j - here.start);
            BitVec::from_ones(target.dim(0, u), hit.then_some(0))
        } else {
            let layout = target.layout(i - 1, u);
            let mut rhs = BitVec::zeros(layout.dim);
            for term in source.generator(s, j).terms().to_vec() {
                let x = self.value(source, target, solvers, i - 1, term.gen as usize)?;
                if x.is_zero() {
                    continue;
                }
                let op = self.map_op(source, target, term.op_t, term.op)?;
                let xt = source.generator(s - 1, term.gen as usize).t - self.t0;
                let from = target.layout(i - 1, xt);
                for bit in x.iter_ones() {
                    let (g, k) = from.locate(bit);
                    let kt = xt - target.generator(i - 1, g).t;
                    let base = layout.offsets[g];
                    for &c in target.algebra().product(term.op_t, op as usize, kt, k) {
                        rhs.flip(base + c as usize);
                    }
                }
            }
            solvers
                .solve(target, i, u, &rhs)
                .ok_or(Error::LiftFailed { s: i, t: u })?
        };
        self.values[i as usize][j] = Some(v.clone());
        Ok(v)
    }

    /// `ψ ∘ f_s` for a cochain `ψ` over the generators of `F_s` in degree
    /// `t1`, as a cochain over the generators of `G_{shift+s}` in degree
    /// `t0 + t1`.
    pub fn pull_back(
        &mut self,
        source: &Resolution,
        target: &Resolution,
        solvers: &mut SolverCache,
        s: u32,
        t1: u32,
        psi: &BitVec,
    ) -> Result<BitVec> {
        let there = target.gens_in_degree(s, t1);
        let layout = target.layout(s, t1);
        let here = source.gens_in_degree(self.shift + s, self.t0 + t1);
        let mut out = BitVec::zeros(here.len());
        for (zi, z) in here.enumerate() {
            let v = self.value(source, target, solvers, s, z)?;
            let mut bit = false;
            for (xi, x) in there.clone().enumerate() {
                if psi.get(xi) && v.get(layout.offsets[x]) {
                    bit = !bit;
                }
            }
            out.set(zi, bit);
        }
        Ok(out)
    }
}

/// Outcome of multiplying by `h` repeatedly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    /// Largest `k` checked with `hᵏx ≠ 0`.
    pub last_nonzero: u32,
    /// First `k` with `hᵏx = 0`, if the tower died in range.
    pub dies_at: Option<u32>,
    /// The tower was still alive when the next power left the range.
    pub alive_at_boundary: bool,
    pub classes: Vec<ExtClass>,
}

/// Yoneda products on one resolution, caching solvers and lifts.
pub struct ProductEngine<'a> {
    res: &'a Resolution,
    table: &'a ExtTable,
    solvers: SolverCache,
    lifts: BTreeMap<(TriDegree, Vec<usize>), ChainMap>,
}

impl<'a> ProductEngine<'a> {
    pub fn new(res: &'a Resolution, table: &'a ExtTable) -> Self {
        ProductEngine {
            res,
            table,
            solvers: SolverCache::new(),
            lifts: BTreeMap::new(),
        }
    }

    pub fn table(&self) -> &'a ExtTable {
        self.table
    }

    pub fn resolution(&self) -> &'a Resolution {
        self.res
    }

    pub fn solvers(&mut self) -> &mut SolverCache {
        &mut self.solvers
    }

    /// `a · b`, lifting `b`. The result is reduced and may be zero.
    pub fn yoneda_product(&mut self, a: &ExtClass, b: &ExtClass) -> Result<ExtClass> {
        let d = a.degree + b.degree;
        if !self.table.covers(d.stem, d.filtration) {
            return Err(Error::OutOfRange {
                degree: d,
                reason: "product lands outside the computed range",
            });
        }
        let key = (b.degree, b.coords.iter_ones().collect::<Vec<_>>());
        let res = self.res;
        if !self.lifts.contains_key(&key) {
            let map = ChainMap::new(res, res, b.filtration(), b.t(), b.coords.clone())?;
            self.lifts.insert(key.clone(), map);
        }
        let map = self.lifts.get_mut(&key).expect("inserted above");
        let v = map.pull_back(res, res, &mut self.solvers, a.filtration(), a.t(), &a.coords)?;
        let c = ExtClass::new(d, v);
        let g = self.table.group(d.stem, d.filtration)?;
        match g {
            None => Ok(c),
            Some(g) => {
                if !g.in_slice(d.weight, &c.coords) {
                    return Err(Error::Inhomogeneous(format!("product in {d}")));
                }
                self.table.reduce(&c)
            }
        }
    }

    /// `hᵏ·x` for `k = 1, 2, …, kmax` until it vanishes or leaves the range.
    pub fn h_tower(&mut self, x: &ExtClass, h: &ExtClass, kmax: u32) -> Result<TowerReport> {
        let mut cur = x.clone();
        let mut report = TowerReport {
            last_nonzero: 0,
            dies_at: None,
            alive_at_boundary: false,
            classes: Vec::new(),
        };
        if self.table.is_zero(x)? {
            report.dies_at = Some(0);
            return Ok(report);
        }
        for k in 1..=kmax {
            let d = cur.degree + h.degree;
            if !self.table.covers(d.stem, d.filtration) {
                report.alive_at_boundary = true;
                return Ok(report);
            }
            cur = self.yoneda_product(&cur, h)?;
            if self.table.is_zero(&cur)? {
                report.dies_at = Some(k);
                return Ok(report);
            }
            report.last_nonzero = k;
            report.classes.push(cur.clone());
        }
        Ok(report)
    }
}
