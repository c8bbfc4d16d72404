use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::milnor::{milnor_product, seq_degree, seq_weight, sequences_of_degree, trim, Seq};
use crate::degree::AlgDegree;
use crate::error::{Error, Result};
use crate::linalg::TauPoly;

/// Internal degree bound used unless a run configures another.
pub const DEFAULT_DEGREE_BOUND: u32 = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Classical,
    Motivic,
}

/// Which sub-Hopf-algebra: everything, or `A(n)` generated by
/// `Sq¹, Sq², …, Sq^{2ⁿ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Profile {
    Full,
    A(u8),
}

impl Profile {
    /// Bounds `sᵢ < 2^{bounds[i-1]}` on classical Milnor sequences.
    fn bounds(self) -> Option<Vec<u8>> {
        match self {
            Profile::Full => None,
            Profile::A(n) => Some((1..=n + 1).map(|i| n + 2 - i).collect()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraSpec {
    pub flavor: Flavor,
    pub profile: Profile,
}

impl AlgebraSpec {
    pub const CLASSICAL: AlgebraSpec = AlgebraSpec {
        flavor: Flavor::Classical,
        profile: Profile::Full,
    };
    pub const MOTIVIC: AlgebraSpec = AlgebraSpec {
        flavor: Flavor::Motivic,
        profile: Profile::Full,
    };
    pub const A2_CLASSICAL: AlgebraSpec = AlgebraSpec {
        flavor: Flavor::Classical,
        profile: Profile::A(2),
    };
    pub const A2_MOTIVIC: AlgebraSpec = AlgebraSpec {
        flavor: Flavor::Motivic,
        profile: Profile::A(2),
    };

    pub fn is_motivic(self) -> bool {
        self.flavor == Flavor::Motivic
    }

    /// The name used on the command line and in files.
    pub fn name(self) -> String {
        let base = match self.profile {
            Profile::Full => String::new(),
            Profile::A(n) => format!("a{n}-"),
        };
        match self.flavor {
            Flavor::Classical => format!("{base}classical"),
            Flavor::Motivic => format!("{base}motivic"),
        }
    }

    pub fn parse(name: &str) -> Option<AlgebraSpec> {
        let (profile, rest) = match name.strip_prefix('a').and_then(|r| r.split_once('-')) {
            Some((n, rest)) => (Profile::A(n.parse().ok()?), rest),
            None => (Profile::Full, name),
        };
        let flavor = match rest {
            "classical" => Flavor::Classical,
            "motivic" => Flavor::Motivic,
            _ => return None,
        };
        Some(AlgebraSpec { flavor, profile })
    }

    /// Whether the Milnor sequence lies in this profile.
    pub fn contains_seq(self, s: &[u32]) -> bool {
        match self.profile.bounds() {
            None => true,
            Some(b) => s
                .iter()
                .enumerate()
                .all(|(i, &x)| b.get(i).is_some_and(|&p| x < (1 << p))),
        }
    }

    /// Weight of the basis element indexed by `s` (zero classically).
    pub fn seq_weight(self, s: &[u32]) -> i32 {
        match self.flavor {
            Flavor::Classical => 0,
            Flavor::Motivic => seq_weight(s),
        }
    }

    /// The other flavor with the same profile.
    pub fn with_flavor(self, flavor: Flavor) -> AlgebraSpec {
        AlgebraSpec { flavor, ..self }
    }

    pub fn with_profile(self, profile: Profile) -> AlgebraSpec {
        AlgebraSpec { profile, ..self }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A Milnor basis element `Q(E)P(R)`; classically `E` is empty and
/// `P(R)` is read as `Sq(R)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MilnorBasisElement {
    /// Bit `i` set means `Qᵢ` is present.
    pub e: u32,
    pub r: Vec<u32>,
}

impl MilnorBasisElement {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn sq(r: &[u32]) -> Self {
        MilnorBasisElement {
            e: 0,
            r: trim(r.to_vec()),
        }
    }

    pub fn q(e: &[u32], r: &[u32]) -> Self {
        MilnorBasisElement {
            e: e.iter().fold(0, |m, i| m | 1 << i),
            r: trim(r.to_vec()),
        }
    }

    /// The element indexed by a classical Milnor sequence.
    pub fn from_seq(flavor: Flavor, s: &[u32]) -> Self {
        match flavor {
            Flavor::Classical => Self::sq(s),
            Flavor::Motivic => {
                let e = s.iter().enumerate().fold(0, |m, (i, x)| m | (x & 1) << i);
                let r: Vec<u32> = s.iter().map(|x| x >> 1).collect();
                MilnorBasisElement { e, r: trim(r) }
            }
        }
    }

    pub fn to_seq(&self, flavor: Flavor) -> Result<Seq> {
        match flavor {
            Flavor::Classical => {
                if self.e != 0 {
                    return Err(Error::NotInAlgebra(format!("{self:?} in the classical algebra")));
                }
                Ok(self.r.clone())
            }
            Flavor::Motivic => {
                let len = self.r.len().max(32 - self.e.leading_zeros() as usize);
                let s = (0..len)
                    .map(|i| 2 * self.r.get(i).copied().unwrap_or(0) + (self.e >> i & 1))
                    .collect();
                Ok(trim(s))
            }
        }
    }

    pub fn degree(&self, flavor: Flavor) -> Result<AlgDegree> {
        let s = self.to_seq(flavor)?;
        let weight = match flavor {
            Flavor::Classical => 0,
            Flavor::Motivic => seq_weight(&s),
        };
        Ok(AlgDegree::new(seq_degree(&s) as i32, weight))
    }
}

impl fmt::Debug for MilnorBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MilnorBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 0 && self.r.is_empty() {
            return write!(f, "1");
        }
        for i in 0..32 {
            if self.e >> i & 1 == 1 {
                write!(f, "Q{i}")?;
            }
        }
        if !self.r.is_empty() {
            write!(f, "P(")?;
            for (i, x) in self.r.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// An F₂[τ]-linear combination of Milnor basis elements.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: BTreeMap<MilnorBasisElement, TauPoly>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(m: MilnorBasisElement) -> Self {
        Self::term(m, TauPoly::one())
    }

    pub fn term(m: MilnorBasisElement, c: TauPoly) -> Self {
        let mut a = Self::zero();
        a.add_term(m, c);
        a
    }

    pub fn unit() -> Self {
        Self::basis(MilnorBasisElement::unit())
    }

    pub fn tau() -> Self {
        Self::term(MilnorBasisElement::unit(), TauPoly::monomial(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: MilnorBasisElement, c: TauPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Set τ = 1, giving a classical element indexed by Milnor sequences.
    pub fn at_tau_one(&self, flavor: Flavor) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (m, c) in &self.terms {
            if c.at_one() {
                out.add_term(MilnorBasisElement::sq(&m.to_seq(flavor)?), TauPoly::one());
            }
        }
        Ok(out)
    }

    /// The common degree of all terms, or an error if there is none.
    pub fn degree(&self, flavor: Flavor) -> Result<Option<AlgDegree>> {
        let mut deg = None;
        for (m, c) in &self.terms {
            let d = m.degree(flavor)?;
            for &k in c.exponents() {
                let dk = AlgDegree::new(d.t, d.weight + k as i32);
                match deg {
                    None => deg = Some(dk),
                    Some(prev) if prev != dk => {
                        return Err(Error::Inhomogeneous(format!("{self:?}")));
                    }
                    _ => {}
                }
            }
        }
        Ok(deg)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c != TauPoly::one() {
                write!(f, "({c})")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn check_element(spec: AlgebraSpec, a: &AlgebraElement, bound: u32) -> Result<()> {
    for (m, c) in &a.terms {
        let s = m.to_seq(spec.flavor)?;
        if !spec.contains_seq(&s) {
            return Err(Error::NotInAlgebra(format!("{m} in {spec}")));
        }
        if spec.flavor == Flavor::Classical && *c != TauPoly::one() {
            return Err(Error::NotInAlgebra(format!("coefficient {c} in {spec}")));
        }
        let t = seq_degree(&s);
        if t > bound {
            return Err(Error::DegreeBound {
                requested: t,
                bound,
            });
        }
    }
    Ok(())
}

/// Product of two basis elements through the Milnor product formula. The
/// τ-exponent of each motivic term is forced by the weights.
pub fn multiply_basis(
    spec: AlgebraSpec,
    a: &MilnorBasisElement,
    b: &MilnorBasisElement,
) -> Result<AlgebraElement> {
    let (sa, sb) = (a.to_seq(spec.flavor)?, b.to_seq(spec.flavor)?);
    let wab = spec.seq_weight(&sa) + spec.seq_weight(&sb);
    let mut out = AlgebraElement::zero();
    let mut err = None;
    milnor_product(&sa, &sb, |t| {
        let k = wab - spec.seq_weight(t);
        if k < 0 {
            err = Some(Error::Inhomogeneous(format!("{a} * {b} has negative τ-exponent")));
            return;
        }
        let coeff = match spec.flavor {
            Flavor::Classical => TauPoly::one(),
            Flavor::Motivic => TauPoly::monomial(k as u32),
        };
        out.add_term(MilnorBasisElement::from_seq(spec.flavor, t), coeff);
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Product in the algebra named by `spec`, rejecting inputs outside the
/// algebra or past the default degree bound.
pub fn multiply(spec: AlgebraSpec, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    multiply_bounded(spec, a, b, DEFAULT_DEGREE_BOUND)
}

pub fn multiply_bounded(
    spec: AlgebraSpec,
    a: &AlgebraElement,
    b: &AlgebraElement,
    bound: u32,
) -> Result<AlgebraElement> {
    check_element(spec, a, bound)?;
    check_element(spec, b, bound)?;
    let mut out = AlgebraElement::zero();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let t = seq_degree(&ma.to_seq(spec.flavor)?) + seq_degree(&mb.to_seq(spec.flavor)?);
            if t > bound {
                return Err(Error::DegreeBound {
                    requested: t,
                    bound,
                });
            }
            let c = ca * cb;
            for (m, k) in multiply_basis(spec, ma, mb)?.terms {
                out.add_term(m, &c * &k);
            }
        }
    }
    Ok(out)
}

/// Products of basis elements `A_{t₁} × A_{t₂}`.
#[derive(Clone, Debug, Default)]
struct Block {
    start: Vec<u32>,
    data: Vec<u32>,
}

/// The basis of an algebra degree by degree, with a multiplication table
/// filled in up to a chosen internal degree.
///
/// Within each degree, basis elements are ordered by `(E, R)`
/// lexicographically. Products are stored at τ = 1; the τ-exponent of
/// any term is recovered from the weights.
#[derive(Clone, Debug)]
pub struct Algebra {
    spec: AlgebraSpec,
    bound: u32,
    basis: Vec<Vec<Seq>>,
    weights: Vec<Vec<i32>>,
    index: Vec<BTreeMap<Seq, u32>>,
    table: Vec<Vec<Block>>,
}

impl Algebra {
    pub fn new(spec: AlgebraSpec) -> Self {
        Self::with_bound(spec, DEFAULT_DEGREE_BOUND)
    }

    pub fn with_bound(spec: AlgebraSpec, bound: u32) -> Self {
        let mut a = Algebra {
            spec,
            bound,
            basis: Vec::new(),
            weights: Vec::new(),
            index: Vec::new(),
            table: Vec::new(),
        };
        a.extend_basis(0);
        a
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Largest `t` for which products `A_{t₁}·A_{t₂}` with `t₁ + t₂ ≤ t`
    /// are tabulated.
    pub fn computed_degree(&self) -> u32 {
        self.table.len() as u32 - 1
    }

    fn extend_basis(&mut self, t: u32) {
        let bounds = self.spec.profile.bounds();
        while self.basis.len() as u32 <= t {
            let d = self.basis.len() as u32;
            let mut seqs = sequences_of_degree(d, bounds.as_deref());
            let flavor = self.spec.flavor;
            seqs.sort_by_cached_key(|s| MilnorBasisElement::from_seq(flavor, s));
            let w = seqs.iter().map(|s| self.spec.seq_weight(s)).collect();
            let idx = seqs
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i as u32))
                .collect();
            self.basis.push(seqs);
            self.weights.push(w);
            self.index.push(idx);
        }
    }

    /// Tabulate all products landing in degree at most `t`.
    pub fn extend_to(&mut self, t: u32) -> Result<()> {
        if t > self.bound {
            return Err(Error::DegreeBound {
                requested: t,
                bound: self.bound,
            });
        }
        self.extend_basis(t);
        while self.table.len() as u32 <= t {
            self.table.push(Vec::new());
        }
        for a in 0..=t as usize {
            while self.table[a].len() <= t as usize - a {
                let b = self.table[a].len();
                let block = self.compute_block(a as u32, b as u32);
                self.table[a].push(block);
            }
        }
        Ok(())
    }

    fn compute_block(&self, t1: u32, t2: u32) -> Block {
        let (b1, b2) = (&self.basis[t1 as usize], &self.basis[t2 as usize]);
        let target = &self.index[(t1 + t2) as usize];
        let mut block = Block {
            start: Vec::with_capacity(b1.len() * b2.len() + 1),
            data: Vec::new(),
        };
        block.start.push(0);
        let mut scratch: Vec<u32> = Vec::new();
        for x in b1 {
            for y in b2 {
                scratch.clear();
                milnor_product(x, y, |t| {
                    let i = *target
                        .get(t)
                        .expect("sub-Hopf algebra closed under products");
                    scratch.push(i);
                });
                scratch.sort_unstable();
                let mut k = 0;
                while k < scratch.len() {
                    if k + 1 < scratch.len() && scratch[k] == scratch[k + 1] {
                        k += 2;
                    } else {
                        block.data.push(scratch[k]);
                        k += 1;
                    }
                }
                block.start.push(block.data.len() as u32);
            }
        }
        block
    }

    pub fn dim(&self, t: u32) -> usize {
        self.basis.get(t as usize).map_or(0, Vec::len)
    }

    pub fn basis_seqs(&self, t: u32) -> &[Seq] {
        self.basis.get(t as usize).map_or(&[], Vec::as_slice)
    }

    pub fn basis(&self, t: u32) -> Vec<MilnorBasisElement> {
        self.basis_seqs(t)
            .iter()
            .map(|s| MilnorBasisElement::from_seq(self.spec.flavor, s))
            .collect()
    }

    pub fn weight(&self, t: u32, i: usize) -> i32 {
        self.weights[t as usize][i]
    }

    pub fn weights(&self, t: u32) -> &[i32] {
        self.weights.get(t as usize).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let t = seq_degree(s) as usize;
        self.index.get(t)?.get(s).map(|&i| i as usize)
    }

    pub fn seq(&self, t: u32, i: usize) -> &[u32] {
        &self.basis[t as usize][i]
    }

    /// The product of basis elements `i₁ ∈ A_{t₁}` and `i₂ ∈ A_{t₂}` at
    /// τ = 1, as indices into `A_{t₁+t₂}`.
    #[inline]
    pub fn product(&self, t1: u32, i1: usize, t2: u32, i2: usize) -> &[u32] {
        let block = &self.table[t1 as usize][t2 as usize];
        let k = i1 * self.dim(t2) + i2;
        &block.data[block.start[k] as usize..block.start[k + 1] as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn spec_names_round_trip() {
        for spec in [
            AlgebraSpec::CLASSICAL,
            AlgebraSpec::MOTIVIC,
            AlgebraSpec::A2_CLASSICAL,
            AlgebraSpec::A2_MOTIVIC,
        ] {
            assert_eq!(AlgebraSpec::parse(&spec.name()), Some(spec));
        }
        assert_eq!(AlgebraSpec::parse("a2-motivic"), Some(AlgebraSpec::A2_MOTIVIC));
        assert_eq!(AlgebraSpec::parse("mot"), None);
    }

    #[test]
    fn sequences_and_motivic_names_agree() {
        let m = MilnorBasisElement::q(&[0, 1], &[]);
        assert_eq!(m.to_seq(Flavor::Motivic).unwrap(), vec![1, 1]);
        assert_eq!(MilnorBasisElement::from_seq(Flavor::Motivic, &[1, 1]), m);
        assert_eq!(m.degree(Flavor::Motivic).unwrap(), AlgDegree::new(4, 1));
        let p = MilnorBasisElement::sq(&[1]);
        assert_eq!(p.degree(Flavor::Motivic).unwrap(), AlgDegree::new(2, 1));
        assert_eq!(p.degree(Flavor::Classical).unwrap(), AlgDegree::new(1, 0));
    }

    #[test]
    fn table_matches_direct_products() {
        let mut a = Algebra::new(AlgebraSpec::CLASSICAL);
        a.extend_to(10).unwrap();
        for t1 in 0..=10u32 {
            for t2 in 0..=10 - t1 {
                for i in 0..a.dim(t1) {
                    for j in 0..a.dim(t2) {
                        let direct = multiply_basis(
                            AlgebraSpec::CLASSICAL,
                            &MilnorBasisElement::sq(a.seq(t1, i)),
                            &MilnorBasisElement::sq(a.seq(t2, j)),
                        )
                        .unwrap();
                        let tabled: Vec<_> = a
                            .product(t1, i, t2, j)
                            .iter()
                            .map(|&k| MilnorBasisElement::sq(a.seq(t1 + t2, k as usize)))
                            .collect();
                        assert_eq!(direct.terms.keys().cloned().collect::<Vec<_>>().len(), tabled.len());
                        for m in tabled {
                            assert!(direct.terms.contains_key(&m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let big = AlgebraElement::basis(MilnorBasisElement::sq(&[100]));
        assert!(matches!(
            multiply(AlgebraSpec::CLASSICAL, &big, &big),
            Err(Error::DegreeBound { .. })
        ));
        let mut a = Algebra::with_bound(AlgebraSpec::CLASSICAL, 8);
        assert!(a.extend_to(9).is_err());
    }

    #[test]
    fn a2_rejects_outside_elements() {
        let sq8 = AlgebraElement::basis(MilnorBasisElement::sq(&[8]));
        assert!(matches!(
            multiply(AlgebraSpec::A2_CLASSICAL, &sq8, &AlgebraElement::unit()),
            Err(Error::NotInAlgebra(_))
        ));
    }
}
