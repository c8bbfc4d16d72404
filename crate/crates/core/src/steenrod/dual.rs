//! The dual Steenrod algebra and products by dualizing its coproduct.
//!
//! Motivically the dual is `F₂[τ][τ₀, τ₁, …, ξ₁, ξ₂, …]/(τᵢ² = τξᵢ₊₁)` with
//!
//! ```text
//! Δξₖ = Σᵢ ξₖ₋ᵢ^{2ⁱ} ⊗ ξᵢ        Δτₖ = τₖ ⊗ 1 + Σᵢ ξₖ₋ᵢ^{2ⁱ} ⊗ τᵢ
//! ```
//!
//! and the monomial `τ(E)ξ(R)` is dual to `Q(E)P(R)`. Classically the dual is
//! the polynomial algebra on `ξᵢ` of degree `2ⁱ - 1` with the same `Δξₖ`, and
//! `ξ(R)` is dual to `Sq(R)`. Products come from `⟨ab, m⟩ = ⟨a ⊗ b, Δm⟩`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::algebra::{AlgebraElement, Flavor, MilnorBasisElement};
use super::milnor::{seq_degree, sequences_of_degree};
use crate::degree::AlgDegree;
use crate::error::Result;
use crate::linalg::TauPoly;

/// A monomial `τ^k · τ(E) · ξ(R)` of the dual algebra, kept reduced: each
/// `τᵢ` appears at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualMonomial {
    /// Exponent of `ξᵢ` at index `i - 1`, trailing zeros removed.
    pub xi: Vec<u32>,
    /// Bit `i` set means `τᵢ` divides the monomial. Always empty classically.
    pub tau: u32,
    /// Power of the ground-ring element τ.
    pub tau_power: u32,
}

impl DualMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn xi(i: usize, n: u32) -> Self {
        let mut xi = vec![0; i];
        xi[i - 1] = n;
        DualMonomial {
            xi,
            ..Self::default()
        }
    }

    pub fn tau_i(i: u32) -> Self {
        DualMonomial {
            tau: 1 << i,
            ..Self::default()
        }
    }

    /// The monomial dual to a Milnor basis element.
    pub fn dual_of(m: &MilnorBasisElement) -> Self {
        DualMonomial {
            xi: m.r.clone(),
            tau: m.e,
            tau_power: 0,
        }
    }

    /// The Milnor basis element this monomial is dual to, ignoring `τ^k`.
    pub fn dual_basis(&self) -> MilnorBasisElement {
        MilnorBasisElement {
            e: self.tau,
            r: self.xi.clone(),
        }
    }

    fn xi_exp(&self, i: usize) -> u32 {
        self.xi.get(i - 1).copied().unwrap_or(0)
    }

    fn normalize(&mut self) {
        while self.xi.last() == Some(&0) {
            self.xi.pop();
        }
    }

    /// Product in the dual algebra, reducing `τᵢ² = τξᵢ₊₁`.
    pub fn mul(&self, o: &DualMonomial) -> DualMonomial {
        let mut xi = vec![0; self.xi.len().max(o.xi.len())];
        for (i, x) in xi.iter_mut().enumerate() {
            *x = self.xi.get(i).copied().unwrap_or(0) + o.xi.get(i).copied().unwrap_or(0);
        }
        let both = self.tau & o.tau;
        let mut out = DualMonomial {
            xi,
            tau: self.tau ^ o.tau,
            tau_power: self.tau_power + o.tau_power + both.count_ones(),
        };
        for i in 0..32 {
            if both >> i & 1 == 1 {
                let k = i + 1;
                if out.xi.len() < k {
                    out.xi.resize(k, 0);
                }
                out.xi[k - 1] += 1;
            }
        }
        out.normalize();
        out
    }

    pub fn degree(&self, flavor: Flavor) -> AlgDegree {
        let mut t = 0i32;
        let mut w = -(self.tau_power as i32);
        for (i, &x) in self.xi.iter().enumerate() {
            let i = i as u32 + 1;
            match flavor {
                Flavor::Classical => t += x as i32 * ((1 << i) - 1),
                Flavor::Motivic => {
                    t += x as i32 * ((1 << (i + 1)) - 2);
                    w += x as i32 * ((1 << i) - 1);
                }
            }
        }
        for i in 0..32u32 {
            if self.tau >> i & 1 == 1 {
                t += (1 << (i + 1)) - 1;
                w += (1 << i) - 1;
            }
        }
        AlgDegree::new(t, w)
    }
}

/// A formal sum of tensors `m₁ ⊗ m₂` with τ-powers gathered into the
/// coefficient; both factors have `tau_power = 0`.
pub type Tensor = BTreeMap<(DualMonomial, DualMonomial), TauPoly>;

fn add_to(t: &mut Tensor, mut l: DualMonomial, mut r: DualMonomial, c: TauPoly) {
    let k = l.tau_power + r.tau_power;
    l.tau_power = 0;
    r.tau_power = 0;
    let c = c.shift(k);
    if c.is_zero() {
        return;
    }
    let key = (l, r);
    let sum = match t.remove(&key) {
        Some(old) => &old + &c,
        None => c,
    };
    if !sum.is_zero() {
        t.insert(key, sum);
    }
}

fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for ((al, ar), ac) in a {
        for ((bl, br), bc) in b {
            add_to(&mut out, al.mul(bl), ar.mul(br), ac * bc);
        }
    }
    out
}

fn tensor_one() -> Tensor {
    let mut t = Tensor::new();
    t.insert((DualMonomial::one(), DualMonomial::one()), TauPoly::one());
    t
}

fn xi_power(i: usize, n: u32) -> DualMonomial {
    if i == 0 || n == 0 {
        DualMonomial::one()
    } else {
        DualMonomial::xi(i, n)
    }
}

fn coproduct_xi(k: usize) -> Tensor {
    let mut t = Tensor::new();
    for i in 0..=k {
        add_to(&mut t, xi_power(k - i, 1 << i), xi_power(i, 1), TauPoly::one());
    }
    t
}

fn coproduct_tau(k: u32) -> Tensor {
    let mut t = Tensor::new();
    add_to(&mut t, DualMonomial::tau_i(k), DualMonomial::one(), TauPoly::one());
    for i in 0..=k {
        add_to(
            &mut t,
            xi_power((k - i) as usize, 1 << i),
            DualMonomial::tau_i(i),
            TauPoly::one(),
        );
    }
    t
}

/// The coproduct of a reduced monomial.
pub fn coproduct(m: &DualMonomial) -> Tensor {
    let mut out = tensor_one();
    for i in 0..32 {
        if m.tau >> i & 1 == 1 {
            out = tensor_mul(&out, &coproduct_tau(i));
        }
    }
    for k in 1..=m.xi.len() {
        let dk = coproduct_xi(k);
        for _ in 0..m.xi_exp(k) {
            out = tensor_mul(&out, &dk);
        }
    }
    if m.tau_power > 0 {
        out = out.into_iter().map(|(k, c)| (k, c.shift(m.tau_power))).collect();
    }
    out
}

/// Counit: the coefficient of the unit monomial.
pub fn counit(m: &DualMonomial) -> TauPoly {
    if m.xi.is_empty() && m.tau == 0 {
        TauPoly::monomial(m.tau_power)
    } else {
        TauPoly::zero()
    }
}

/// Every τ-free monomial of internal degree `t`, one per basis element.
fn monomials_of_degree(flavor: Flavor, t: u32) -> Vec<DualMonomial> {
    let mut out = Vec::new();
    // Both flavors are indexed by classical Milnor sequences of degree t.
    for s in sequences_of_degree(t, None) {
        debug_assert_eq!(seq_degree(&s), t);
        out.push(DualMonomial::dual_of(&MilnorBasisElement::from_seq(flavor, &s)));
    }
    out
}

/// `a · b` for basis elements, computed by pairing with the coproduct of
/// every monomial of the product degree. This is the reference
/// multiplication; [`super::multiply`] must agree with it.
pub fn multiply_by_pairing(
    flavor: Flavor,
    a: &MilnorBasisElement,
    b: &MilnorBasisElement,
) -> Result<AlgebraElement> {
    let ta = a.degree(flavor)?.t as u32;
    let tb = b.degree(flavor)?.t as u32;
    let (da, db) = (DualMonomial::dual_of(a), DualMonomial::dual_of(b));
    let mut out = AlgebraElement::zero();
    for m in monomials_of_degree(flavor, ta + tb) {
        if let Some(c) = coproduct(&m).get(&(da.clone(), db.clone())) {
            out.add_term(m.dual_basis(), c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(l: DualMonomial, r: DualMonomial) -> (DualMonomial, DualMonomial) {
        (l, r)
    }

    #[test]
    fn primitives() {
        let d = coproduct(&DualMonomial::xi(1, 1));
        assert_eq!(d.len(), 2);
        assert!(d.contains_key(&single(DualMonomial::xi(1, 1), DualMonomial::one())));
        assert!(d.contains_key(&single(DualMonomial::one(), DualMonomial::xi(1, 1))));
        let d = coproduct(&DualMonomial::tau_i(0));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn tau_one_coproduct() {
        let d = coproduct(&DualMonomial::tau_i(1));
        let mut expect = Tensor::new();
        add_to(&mut expect, DualMonomial::tau_i(1), DualMonomial::one(), TauPoly::one());
        add_to(&mut expect, DualMonomial::xi(1, 1), DualMonomial::tau_i(0), TauPoly::one());
        add_to(&mut expect, DualMonomial::one(), DualMonomial::tau_i(1), TauPoly::one());
        assert_eq!(d, expect);
    }

    #[test]
    fn reduction_rule() {
        let t0 = DualMonomial::tau_i(0);
        let sq = t0.mul(&t0);
        assert_eq!(sq.xi, alloc::vec![1]);
        assert_eq!(sq.tau, 0);
        assert_eq!(sq.tau_power, 1);
        assert_eq!(sq.degree(Flavor::Motivic), t0.degree(Flavor::Motivic) + t0.degree(Flavor::Motivic));
    }

    fn apply_left_counit(t: &Tensor) -> BTreeMap<DualMonomial, TauPoly> {
        let mut out: BTreeMap<DualMonomial, TauPoly> = BTreeMap::new();
        for ((l, r), c) in t {
            let e = &counit(l) * c;
            if !e.is_zero() {
                let entry = out.entry(r.clone()).or_default();
                *entry = &*entry + &e;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn apply_right_counit(t: &Tensor) -> BTreeMap<DualMonomial, TauPoly> {
        let swapped: Tensor = t.iter().map(|((l, r), c)| ((r.clone(), l.clone()), c.clone())).collect();
        apply_left_counit(&swapped)
    }

    fn sample_monomials() -> Vec<DualMonomial> {
        let mut out = Vec::new();
        for t in 0..=12 {
            out.extend(monomials_of_degree(Flavor::Motivic, t));
        }
        out
    }

    #[test]
    fn counit_axioms() {
        for m in sample_monomials() {
            let d = coproduct(&m);
            let mut expect = BTreeMap::new();
            expect.insert(m.clone(), TauPoly::one());
            assert_eq!(apply_left_counit(&d), expect, "{m:?}");
            assert_eq!(apply_right_counit(&d), expect, "{m:?}");
        }
    }

    /// Sum of `(m₁, m₂, m₃) ↦ coefficient` for a triple tensor.
    type Triple = BTreeMap<(DualMonomial, DualMonomial, DualMonomial), TauPoly>;

    fn add3(t: &mut Triple, key: (DualMonomial, DualMonomial, DualMonomial), c: TauPoly) {
        let e = t.entry(key).or_default();
        *e = &*e + &c;
    }

    #[test]
    fn coassociativity() {
        for m in sample_monomials() {
            let d = coproduct(&m);
            let mut left = Triple::new();
            let mut right = Triple::new();
            for ((l, r), c) in &d {
                for ((ll, lr), c2) in coproduct(l) {
                    add3(&mut left, (ll, lr, r.clone()), c * &c2);
                }
                for ((rl, rr), c2) in coproduct(r) {
                    add3(&mut right, (l.clone(), rl, rr), c * &c2);
                }
            }
            left.retain(|_, c| !c.is_zero());
            right.retain(|_, c| !c.is_zero());
            assert_eq!(left, right, "{m:?}");
        }
    }

    #[test]
    fn coproduct_is_homogeneous() {
        for m in sample_monomials() {
            let deg = m.degree(Flavor::Motivic);
            for ((l, r), c) in coproduct(&m) {
                for &k in c.exponents() {
                    let mut lk = l.clone();
                    lk.tau_power = k;
                    assert_eq!(lk.degree(Flavor::Motivic) + r.degree(Flavor::Motivic), deg);
                }
            }
        }
    }
}
