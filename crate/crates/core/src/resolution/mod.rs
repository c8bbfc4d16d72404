//! Minimal free resolutions of the ground module.
//!
//! Everything is stored at τ = 1 with a weight attached to each basis
//! vector; see [`crate::linalg::tau`] for why that loses nothing. A basis
//! vector of `F_s` in internal degree `t` is a pair `(j, b)` of a generator
//! `x_j` of degree `t_j ≤ t` and a Milnor basis element `b ∈ A_{t - t_j}`.
//! Generators are numbered in creation order, which is by internal degree,
//! so the vectors of `F_s[t]` are laid out generator by generator, each
//! block being the basis of `A_{t - t_j}` in canonical order.
//!
//! Each step `(s, t)` inserts the images of the existing basis vectors and
//! the kernel of the previous differential into one echelon form in
//! increasing weight. A kernel vector still outside the image when its
//! weight is reached becomes a new generator. The rows that reduce to zero
//! are the kernel handed to the next stage.
//!
//! The classical flavor is the same computation with every weight zero.

mod ext;
mod vanishing;

pub use ext::{ExtClass, ExtGroup, ExtTable, ModuleGenerator};
pub use vanishing::{verify_vanishing, VanishingReport};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::degree::AlgDegree;
use crate::error::{Error, Result};
use crate::linalg::{BitVec, Echelon};
use crate::steenrod::{Algebra, AlgebraSpec};

/// One summand `b · y_k` of a differential: generator `k` of the stage below
/// times basis element `op` of `A_{op_t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub gen: u32,
    pub op_t: u32,
    pub op: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub t: u32,
    pub weight: i32,
    /// `d(x)` in the basis of `F_{s-1}[t]`; for `s = 0`, the augmentation.
    diff: BitVec,
    terms: Vec<Term>,
}

impl Generator {
    pub fn degree(&self) -> AlgDegree {
        AlgDegree::new(self.t as i32, self.weight)
    }

    pub fn diff(&self) -> &BitVec {
        &self.diff
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Stage {
    gens: Vec<Generator>,
    /// `upto[t]` is the number of generators of degree at most `t`.
    upto: Vec<usize>,
}

/// Offsets of the generator blocks of `F_s[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub t: u32,
    pub offsets: Vec<usize>,
    pub dim: usize,
}

impl Layout {
    /// The generator and the index into `A_{t - t_j}` of a basis vector.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let j = self.offsets.partition_point(|&o| o <= i) - 1;
        (j, i - self.offsets[j])
    }
}

/// Weighted kernel vectors of a differential, handed to the next stage.
type Kernel = Vec<(BitVec, i32)>;

struct StepOutput {
    new_gens: Vec<(i32, BitVec)>,
    kernel: Kernel,
}

/// A minimal free resolution computed on the rectangle `s ≤ max_s`,
/// `t ≤ max_t`.
#[derive(Clone, Debug)]
pub struct Resolution {
    algebra: Algebra,
    stages: Vec<Stage>,
    max_s: Option<u32>,
    max_t: Option<u32>,
}

impl PartialEq for Resolution {
    fn eq(&self, o: &Resolution) -> bool {
        self.spec() == o.spec()
            && self.stages == o.stages
            && self.max_s == o.max_s
            && self.max_t == o.max_t
    }
}

impl Eq for Resolution {}

/// A generator as stored in a checkpoint: degree and the differential as a
/// list of `(generator of the stage below, Milnor sequence)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub t: u32,
    pub weight: i32,
    pub diff: Vec<(u32, Vec<u32>)>,
}

impl Resolution {
    pub fn new(spec: AlgebraSpec) -> Self {
        Self::with_algebra(Algebra::new(spec))
    }

    pub fn with_algebra(algebra: Algebra) -> Self {
        Resolution {
            algebra,
            stages: Vec::new(),
            max_s: None,
            max_t: None,
        }
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.algebra.spec()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Computed range `(max_s, max_t)`, if anything has been computed.
    pub fn range(&self) -> Option<(u32, u32)> {
        Some((self.max_s?, self.max_t?))
    }

    pub fn max_s(&self) -> Option<u32> {
        self.max_s
    }

    pub fn max_t(&self) -> Option<u32> {
        self.max_t
    }

    pub fn is_computed(&self, s: u32, t: u32) -> bool {
        matches!(self.range(), Some((ms, mt)) if s <= ms && t <= mt)
    }

    /// Largest filtration at which Ext is known through `max_t`. Motivic
    /// Ext at filtration `f` needs stage `f + 1`; classically the dual
    /// differential of a minimal resolution vanishes.
    pub fn ext_max_filtration(&self) -> Option<u32> {
        let s = self.max_s?;
        if self.spec().is_motivic() {
            s.checked_sub(1)
        } else {
            Some(s)
        }
    }

    pub fn num_gens(&self, s: u32) -> usize {
        self.stages.get(s as usize).map_or(0, |st| st.gens.len())
    }

    pub fn generators(&self, s: u32) -> &[Generator] {
        self.stages.get(s as usize).map_or(&[], |st| st.gens.as_slice())
    }

    pub fn generator(&self, s: u32, j: usize) -> &Generator {
        &self.stages[s as usize].gens[j]
    }

    /// Number of generators of `F_s` of degree at most `t`.
    pub fn gens_upto(&self, s: u32, t: u32) -> usize {
        match self.stages.get(s as usize) {
            None => 0,
            Some(st) => match st.upto.get(t as usize) {
                Some(&n) => n,
                None => st.gens.len(),
            },
        }
    }

    /// Number of generators of `F_s` of degree below `t`.
    pub fn gens_below(&self, s: u32, t: u32) -> usize {
        if t == 0 {
            0
        } else {
            self.gens_upto(s, t - 1)
        }
    }

    /// Indices of the generators of `F_s` in degree exactly `t`.
    pub fn gens_in_degree(&self, s: u32, t: u32) -> core::ops::Range<usize> {
        self.gens_below(s, t)..self.gens_upto(s, t)
    }

    pub fn layout(&self, s: u32, t: u32) -> Layout {
        let n = self.gens_upto(s, t);
        let mut offsets = Vec::with_capacity(n + 1);
        let mut dim = 0;
        for g in &self.generators(s)[..n] {
            offsets.push(dim);
            dim += self.algebra.dim(t - g.t);
        }
        offsets.push(dim);
        Layout { t, offsets, dim }
    }

    /// Dimension of `F_s[t]` at τ = 1; `s = -1` is the ground module.
    pub fn dim(&self, s: i32, t: u32) -> usize {
        if s < 0 {
            (t == 0) as usize
        } else {
            self.layout(s as u32, t).dim
        }
    }

    /// Weights of the basis vectors of `F_s[t]`.
    pub fn weights(&self, s: u32, t: u32) -> Vec<i32> {
        let n = self.gens_upto(s, t);
        let mut out = Vec::new();
        for g in &self.generators(s)[..n] {
            out.extend(self.algebra.weights(t - g.t).iter().map(|w| w + g.weight));
        }
        out
    }

    /// `d(b · x_j)` in `F_{s-1}[t]`, where `b` is basis element `op` of
    /// `A_{t - t_j}` and `target` is the layout of `F_{s-1}[t]`.
    pub fn image_row(&self, s: u32, j: usize, op: usize, target: &Layout) -> BitVec {
        let t = target.t;
        let g = self.generator(s, j);
        let op_t = t - g.t;
        if s == 0 {
            return BitVec::from_ones(self.dim(-1, t), (t == 0).then_some(0));
        }
        let mut row = BitVec::zeros(target.dim);
        for term in &g.terms {
            let base = target.offsets[term.gen as usize];
            for &c in self.algebra.product(op_t, op, term.op_t, term.op as usize) {
                row.flip(base + c as usize);
            }
        }
        row
    }

    /// `d(v)` for `v ∈ F_s[t]`.
    pub fn apply_differential(&self, s: u32, t: u32, v: &BitVec) -> BitVec {
        let source = self.layout(s, t);
        let target = if s == 0 {
            Layout {
                t,
                offsets: vec![0],
                dim: self.dim(-1, t),
            }
        } else {
            self.layout(s - 1, t)
        };
        let mut out = BitVec::zeros(target.dim);
        for i in v.iter_ones() {
            let (j, op) = source.locate(i);
            out.xor_assign(&self.image_row(s, j, op, &target));
        }
        out
    }

    /// `b · v` for `v ∈ F_s[t]` and `b` basis element `op` of `A_{op_t}`.
    pub fn act(&self, s: u32, t: u32, op_t: u32, op: usize, v: &BitVec) -> BitVec {
        let source = self.layout(s, t);
        let target = self.layout(s, t + op_t);
        let mut out = BitVec::zeros(target.dim);
        for i in v.iter_ones() {
            let (j, k) = source.locate(i);
            let base = target.offsets[j];
            let kt = t - self.generator(s, j).t;
            for &c in self.algebra.product(op_t, op, kt, k) {
                out.flip(base + c as usize);
            }
        }
        out
    }

    fn layout_below(&self, s: u32, t: u32) -> Layout {
        if s == 0 {
            Layout {
                t,
                offsets: vec![0],
                dim: self.dim(-1, t),
            }
        } else {
            self.layout(s - 1, t)
        }
    }

    /// One step of the algorithm. Generators of `F_s` below degree `t` are
    /// final; `candidates` is the kernel of `d_{s-1}` at `t` in increasing
    /// weight.
    fn step(&self, s: u32, t: u32, candidates: &[(BitVec, i32)]) -> StepOutput {
        let target = self.layout_below(s, t);
        let old = self.gens_below(s, t);
        let mut basis: Vec<(i32, usize, usize, usize)> = Vec::new();
        let mut v_old = 0;
        for (j, g) in self.generators(s)[..old].iter().enumerate() {
            for (op, w) in self.algebra.weights(t - g.t).iter().enumerate() {
                basis.push((w + g.weight, v_old, j, op));
                v_old += 1;
            }
        }
        basis.sort_unstable_by_key(|&(w, i, _, _)| (w, i));
        let mut cand: Vec<usize> = (0..candidates.len()).collect();
        cand.sort_by_key(|&c| candidates[c].1);

        let pre_width = v_old + candidates.len();
        let mut ech = Echelon::new(target.dim, pre_width);
        let mut accepted: Vec<usize> = Vec::new();
        let mut kernel: Kernel = Vec::new();
        let (mut bi, mut ci) = (0, 0);
        while bi < basis.len() || ci < cand.len() {
            let take_image = match (basis.get(bi), cand.get(ci)) {
                (Some(b), Some(&c)) => b.0 <= candidates[c].1,
                (Some(_), None) => true,
                _ => false,
            };
            if take_image {
                let (w, i, j, op) = basis[bi];
                bi += 1;
                let row = self.image_row(s, j, op, &target);
                if let Some(k) = ech.insert(row, BitVec::unit(pre_width, i)) {
                    kernel.push((k, w));
                }
            } else {
                let c = cand[ci];
                ci += 1;
                let (v, _) = &candidates[c];
                if ech.insert(v.clone(), BitVec::unit(pre_width, v_old + c)).is_none() {
                    accepted.push(c);
                }
            }
        }

        // Weight descending, then discovery order.
        let mut order: Vec<usize> = (0..accepted.len()).collect();
        order.sort_by_key(|&a| (-candidates[accepted[a]].1, a));
        let mut slot = vec![usize::MAX; candidates.len()];
        let mut new_gens = Vec::with_capacity(order.len());
        for (m, &a) in order.iter().enumerate() {
            let c = accepted[a];
            slot[c] = m;
            new_gens.push((candidates[c].1, candidates[c].0.clone()));
        }
        let width = v_old + new_gens.len();
        let kernel = kernel
            .into_iter()
            .map(|(k, w)| {
                let mut out = BitVec::zeros(width);
                for i in k.iter_ones() {
                    if i < v_old {
                        out.set(i, true);
                    } else {
                        let m = slot[i - v_old];
                        debug_assert!(m != usize::MAX, "kernel uses a rejected candidate");
                        out.set(v_old + m, true);
                    }
                }
                (out, w)
            })
            .collect();
        StepOutput { new_gens, kernel }
    }

    /// Kernel of `d_s` at `t`, recomputed from the stored generators.
    fn replay_kernel(&self, s: u32, t: u32) -> Kernel {
        let range = self.gens_in_degree(s, t);
        let mut cands: Vec<(BitVec, i32)> = self.generators(s)[range]
            .iter()
            .map(|g| (g.diff.clone(), g.weight))
            .collect();
        // Creation order within a weight is preserved by a stable sort.
        cands.sort_by_key(|c| c.1);
        self.step(s, t, &cands).kernel
    }

    fn ground_kernel(&self, t: u32) -> Kernel {
        if t == 0 {
            vec![(BitVec::unit(1, 0), 0)]
        } else {
            Vec::new()
        }
    }

    fn decode(&self, s: u32, t: u32, diff: &BitVec) -> Vec<Term> {
        if s == 0 {
            return Vec::new();
        }
        let layout = self.layout(s - 1, t);
        diff.iter_ones()
            .map(|i| {
                let (j, op) = layout.locate(i);
                Term {
                    gen: j as u32,
                    op_t: t - self.generator(s - 1, j).t,
                    op: op as u32,
                }
            })
            .collect()
    }

    /// Extend the computed rectangle to cover `s ≤ max_s`, `t ≤ max_t`.
    pub fn extend(&mut self, max_s: u32, max_t: u32) -> Result<()> {
        let (old_s, old_t) = (self.max_s, self.max_t);
        let max_s = old_s.map_or(max_s, |o| o.max(max_s));
        let max_t = old_t.map_or(max_t, |o| o.max(max_t));
        self.algebra.extend_to(max_t)?;
        while self.stages.len() <= max_s as usize {
            self.stages.push(Stage::default());
        }
        let was = |s: u32, t: u32| matches!((old_s, old_t), (Some(os), Some(ot)) if s <= os && t <= ot);
        let mut kernels: BTreeMap<(u32, u32), Kernel> = BTreeMap::new();
        for diag in 0..=max_s + max_t {
            let tasks: Vec<(u32, u32, Option<Kernel>)> = (0..=max_s.min(diag))
                .map(|s| (s, diag - s))
                .filter(|&(s, t)| t <= max_t && !was(s, t))
                .map(|(s, t)| {
                    let input = if s == 0 {
                        Some(self.ground_kernel(t))
                    } else {
                        kernels.remove(&(s - 1, t))
                    };
                    (s, t, input)
                })
                .collect();
            let this = &*self;
            let run = |(s, t, input): (u32, u32, Option<Kernel>)| {
                let input = input.unwrap_or_else(|| this.replay_kernel(s - 1, t));
                let out = this.step(s, t, &input);
                (s, t, out)
            };
            #[cfg(feature = "parallel")]
            let outputs: Vec<_> = {
                use rayon::prelude::*;
                tasks.into_par_iter().map(run).collect()
            };
            #[cfg(not(feature = "parallel"))]
            let outputs: Vec<_> = tasks.into_iter().map(run).collect();

            for (s, t, out) in outputs {
                let stage = &self.stages[s as usize];
                if stage.upto.len() != t as usize {
                    return Err(Error::Invalid(format!(
                        "stage {s} reached degree {} before {t}",
                        stage.upto.len()
                    )));
                }
                let mut gens = Vec::with_capacity(out.new_gens.len());
                for (weight, diff) in out.new_gens {
                    let terms = self.decode(s, t, &diff);
                    gens.push(Generator {
                        t,
                        weight,
                        diff,
                        terms,
                    });
                }
                let stage = &mut self.stages[s as usize];
                stage.gens.extend(gens);
                stage.upto.push(stage.gens.len());
                if s < max_s {
                    kernels.insert((s, t), out.kernel);
                }
            }
        }
        self.max_s = Some(max_s);
        self.max_t = Some(max_t);
        Ok(())
    }

    /// Generators in checkpoint form.
    pub fn records(&self, s: u32) -> Vec<GeneratorRecord> {
        self.generators(s)
            .iter()
            .map(|g| GeneratorRecord {
                t: g.t,
                weight: g.weight,
                diff: g
                    .terms
                    .iter()
                    .map(|term| (term.gen, self.algebra.seq(term.op_t, term.op as usize).to_vec()))
                    .collect(),
            })
            .collect()
    }

    /// Rebuild a resolution from checkpointed generators, checking that every
    /// differential is well formed. Exactness is not re-verified; callers
    /// that distrust the source should run [`Resolution::verify`].
    pub fn from_records(
        spec: AlgebraSpec,
        max_s: u32,
        max_t: u32,
        stages: Vec<Vec<GeneratorRecord>>,
    ) -> Result<Self> {
        let mut res = Resolution::new(spec);
        res.algebra.extend_to(max_t)?;
        if stages.len() != max_s as usize + 1 {
            return Err(Error::Invalid(format!(
                "expected {} stages, found {}",
                max_s + 1,
                stages.len()
            )));
        }
        for (s, recs) in stages.into_iter().enumerate() {
            let s = s as u32;
            let mut stage = Stage::default();
            let mut last_t = 0;
            for rec in recs {
                if rec.t > max_t || rec.t < last_t {
                    return Err(Error::Invalid(format!("generator degree {} out of order", rec.t)));
                }
                last_t = rec.t;
                while stage.upto.len() < rec.t as usize {
                    stage.upto.push(stage.gens.len());
                }
                let mut terms = Vec::with_capacity(rec.diff.len());
                for (gen, seq) in &rec.diff {
                    let below = res.generators(s.wrapping_sub(1));
                    let g = below.get(*gen as usize).filter(|_| s > 0).ok_or_else(|| {
                        Error::Invalid(format!("stage {s}: no generator {gen} below"))
                    })?;
                    let op = res
                        .algebra
                        .index_of(seq)
                        .ok_or_else(|| Error::NotInAlgebra(format!("{seq:?}")))?;
                    let op_t = crate::steenrod::milnor::seq_degree(seq);
                    if g.t + op_t != rec.t {
                        return Err(Error::Inhomogeneous(format!("stage {s} generator in degree {}", rec.t)));
                    }
                    terms.push(Term {
                        gen: *gen,
                        op_t,
                        op: op as u32,
                    });
                }
                terms.sort();
                let diff = if s == 0 {
                    if rec.t != 0 || !terms.is_empty() {
                        return Err(Error::Invalid("stage 0 must be the single unit generator".into()));
                    }
                    BitVec::unit(1, 0)
                } else {
                    let layout = res.layout(s - 1, rec.t);
                    let mut v = BitVec::zeros(layout.dim);
                    for term in &terms {
                        v.flip(layout.offsets[term.gen as usize] + term.op as usize);
                    }
                    v
                };
                let terms = res.decode(s, rec.t, &diff);
                stage.gens.push(Generator {
                    t: rec.t,
                    weight: rec.weight,
                    diff,
                    terms,
                });
            }
            while stage.upto.len() <= max_t as usize {
                stage.upto.push(stage.gens.len());
            }
            res.stages.push(stage);
        }
        res.max_s = Some(max_s);
        res.max_t = Some(max_t);
        Ok(res)
    }

    /// Check `d ∘ d = 0` on every generator, homogeneity, and minimality
    /// (no differential has a unit coefficient on a generator).
    pub fn verify(&self) -> Result<()> {
        let Some((max_s, _)) = self.range() else {
            return Ok(());
        };
        for s in 0..=max_s {
            for g in self.generators(s) {
                if s == 0 {
                    continue;
                }
                let below = self.weights(s - 1, g.t);
                for i in g.diff.iter_ones() {
                    if below[i] > g.weight {
                        return Err(Error::Inhomogeneous(format!(
                            "generator of stage {s} in {} has a term of weight {}",
                            g.degree(),
                            below[i]
                        )));
                    }
                }
                for term in &g.terms {
                    if term.op_t == 0 && below_weight_of(self, s - 1, term.gen) == g.weight {
                        return Err(Error::Invalid(format!(
                            "stage {s} generator in {} is not minimal",
                            g.degree()
                        )));
                    }
                }
                if s >= 1 {
                    let dd = self.apply_differential(s - 1, g.t, &g.diff);
                    if !dd.is_zero() {
                        return Err(Error::Invalid(format!(
                            "d∘d ≠ 0 on a generator of stage {s} in {}",
                            g.degree()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn below_weight_of(res: &Resolution, s: u32, j: u32) -> i32 {
    res.generator(s, j as usize).weight
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(res: &Resolution, s: u32, t: u32) -> usize {
        res.gens_in_degree(s, t).len()
    }

    #[test]
    fn classical_low_stems() {
        let mut res = Resolution::new(AlgebraSpec::CLASSICAL);
        res.extend(6, 10).unwrap();
        res.verify().unwrap();
        for s in 0..=6 {
            assert_eq!(counts(&res, s, s), 1, "h0^{s}");
        }
        // h1, h1^2, h1^3 = h0^2 h2; h2, h0 h2.
        assert_eq!(counts(&res, 1, 2), 1);
        assert_eq!(counts(&res, 2, 3), 0);
        assert_eq!(counts(&res, 2, 4), 1);
        assert_eq!(counts(&res, 1, 4), 1);
        assert_eq!(counts(&res, 2, 5), 1);
        assert_eq!(counts(&res, 3, 6), 1);
        assert_eq!(counts(&res, 3, 5), 0);
    }

    #[test]
    fn extension_matches_direct() {
        let mut a = Resolution::new(AlgebraSpec::MOTIVIC);
        a.extend(3, 8).unwrap();
        a.extend(5, 12).unwrap();
        let mut b = Resolution::new(AlgebraSpec::MOTIVIC);
        b.extend(5, 12).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn records_round_trip() {
        let mut a = Resolution::new(AlgebraSpec::MOTIVIC);
        a.extend(4, 10).unwrap();
        let stages = (0..=4).map(|s| a.records(s)).collect();
        let b = Resolution::from_records(AlgebraSpec::MOTIVIC, 4, 10, stages).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn motivic_is_minimal_and_exact_in_low_degrees() {
        let mut res = Resolution::new(AlgebraSpec::MOTIVIC);
        res.extend(5, 12).unwrap();
        res.verify().unwrap();
    }
}
