//! Comparison maps and localizations.
//!
//! * Restriction `Ext_A → Ext_B` for a subalgebra `B`, through the chain map
//!   from the `B`-resolution into the `A`-resolution lifting the identity.
//! * τ = 1, through the chain map from the classical resolution into the
//!   motivic one read at τ = 1.
//! * h₁-localization, detected by a long enough h₁-tower and matched by
//!   degree against monomials in `v₁⁴, v₂, v₃, …` (or `v₁⁴, v₂, u` over
//!   `A(2)`). Monomials are compared up to powers of h₁, so only the
//!   residue `(stem - f, weight - f)` matters.

mod registry;

pub use registry::{NamedClass, NamedClassRegistry};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::degree::TriDegree;
use crate::error::{Error, Result};
use crate::products::{ChainMap, ProductEngine, SolverCache};
use crate::resolution::{ExtClass, ExtTable, Resolution};

/// Towers must survive this many h₁-multiplications before a match counts.
pub const DEFAULT_STABILITY_MARGIN: u32 = 4;

/// Degree of `v_n`.
pub const fn v_degree(n: u32) -> TriDegree {
    TriDegree::new((1 << (n + 1)) - 2, 1, (1 << n) - 1)
}

pub const V1_FOURTH: TriDegree = TriDegree::new(8, 4, 4);
pub const H1: TriDegree = TriDegree::new(1, 1, 1);

/// Residue of a degree modulo h₁.
pub fn h1_key(d: TriDegree) -> (i32, i32) {
    (d.stem - d.filtration, d.weight - d.filtration)
}

/// Degree of the `k`-th member `e₀gᵏ` of the sparse family.
pub fn family_degree(k: u32) -> TriDegree {
    TriDegree::new(20 * k as i32 + 17, 4 * k as i32 + 4, 12 * k as i32 + 10)
}

/// The localization of `e₀g^{2ʲ-1}` forced by degrees: `v_{j+3}·h₁^{4·2ʲ-1}`.
pub fn family_localization(j: u32) -> LocalizedMonomial {
    let mut m = LocalizedMonomial::one();
    m.set_v(j + 3, 1);
    m.h1 = 4 * (1 << j) - 1;
    m
}

/// A monomial in the h₁-localized Ext, `h₁^k · (v₁⁴)^a · Π vₙ^{bₙ} · u^c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalizedMonomial {
    pub v1_fourth: u32,
    /// Exponent of `vₙ` at index `n - 2`.
    pub v: Vec<u32>,
    pub u: u32,
    pub h1: i32,
}

impl LocalizedMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn v_exp(&self, n: u32) -> u32 {
        self.v.get(n as usize - 2).copied().unwrap_or(0)
    }

    pub fn set_v(&mut self, n: u32, e: u32) {
        let i = n as usize - 2;
        if self.v.len() <= i {
            self.v.resize(i + 1, 0);
        }
        self.v[i] = e;
        while self.v.last() == Some(&0) {
            self.v.pop();
        }
    }

    pub fn degree(&self, u_degree: TriDegree) -> TriDegree {
        let mut d = self.v1_fourth as i32 * V1_FOURTH + self.h1 * H1 + self.u as i32 * u_degree;
        for (i, &e) in self.v.iter().enumerate() {
            d = d + e as i32 * v_degree(i as u32 + 2);
        }
        d
    }

    /// The same monomial with the h₁ power dropped.
    pub fn without_h1(&self) -> Self {
        LocalizedMonomial { h1: 0, ..self.clone() }
    }
}

impl fmt::Display for LocalizedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let pow = |name: &str, e: i64| -> Option<String> {
            match e {
                0 => None,
                1 => Some(String::from(name)),
                _ => Some(format!("{name}^{e}")),
            }
        };
        match self.v1_fourth {
            0 => {}
            1 => parts.push(String::from("v1^4")),
            e => parts.push(format!("v1^{}", 4 * e)),
        }
        for (i, &e) in self.v.iter().enumerate() {
            parts.extend(pow(&format!("v{}", i + 2), e as i64));
        }
        parts.extend(pow("u", self.u as i64));
        parts.extend(pow("h1", self.h1 as i64));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// The map of localized rings induced by restriction to `A(2)`: `vₙ` goes
/// to `u^{2^{n-2}-1}·v₂`, while `v₁⁴` and `h₁` are kept.
pub fn restrict_monomial(m: &LocalizedMonomial) -> LocalizedMonomial {
    let mut out = LocalizedMonomial {
        v1_fourth: m.v1_fourth,
        v: Vec::new(),
        u: m.u,
        h1: m.h1,
    };
    let mut v2 = 0;
    for (i, &e) in m.v.iter().enumerate() {
        let n = i as u32 + 2;
        v2 += e;
        out.u += e * ((1 << (n - 2)) - 1);
    }
    out.set_v(2, v2);
    out
}

/// The generators of an h₁-localized target and how to enumerate monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedRing {
    /// `vₙ` for `2 ≤ n ≤ max_v` (full algebra).
    pub max_v: u32,
    /// Degree of `u`, for the `A(2)` target.
    pub u_degree: Option<TriDegree>,
}

impl LocalizedRing {
    /// `F₂[h₁^{±1}][v₁⁴, v₂, v₃, …]`.
    pub fn full(max_v: u32) -> Self {
        LocalizedRing {
            max_v,
            u_degree: None,
        }
    }

    /// `F₂[h₁^{±1}][v₁⁴, v₂, u]`.
    pub fn a2(u_degree: TriDegree) -> Self {
        LocalizedRing {
            max_v: 2,
            u_degree: Some(u_degree),
        }
    }

    fn u_deg(&self) -> TriDegree {
        self.u_degree.unwrap_or(TriDegree::ZERO)
    }

    /// All monomials (with the h₁ power chosen to fit) of degree `d`.
    pub fn monomials_in(&self, d: TriDegree) -> Vec<LocalizedMonomial> {
        let key = h1_key(d);
        let mut gens: Vec<(TriDegree, usize)> = Vec::new();
        gens.push((V1_FOURTH, 0));
        for n in 2..=self.max_v {
            gens.push((v_degree(n), n as usize));
        }
        if let Some(u) = self.u_degree {
            gens.push((u, usize::MAX));
        }
        let mut out = Vec::new();
        let mut cur = LocalizedMonomial::one();
        self.enumerate(&gens, 0, key, &mut cur, &mut out);
        for m in &mut out {
            m.h1 = d.filtration - m.degree(self.u_deg()).filtration;
        }
        out.retain(|m| m.degree(self.u_deg()) == d);
        out.sort();
        out
    }

    fn enumerate(
        &self,
        gens: &[(TriDegree, usize)],
        i: usize,
        left: (i32, i32),
        cur: &mut LocalizedMonomial,
        out: &mut Vec<LocalizedMonomial>,
    ) {
        if i == gens.len() {
            if left == (0, 0) {
                out.push(cur.clone());
            }
            return;
        }
        let (deg, which) = gens[i];
        let step = h1_key(deg);
        let mut e = 0u32;
        let mut left = left;
        loop {
            match which {
                0 => cur.v1_fourth = e,
                usize::MAX => cur.u = e,
                n => cur.set_v(n as u32, e),
            }
            self.enumerate(gens, i + 1, left, cur, out);
            left = (left.0 - step.0, left.1 - step.1);
            e += 1;
            if left.0 < 0 || left.1 < 0 || step == (0, 0) {
                break;
            }
        }
        match which {
            0 => cur.v1_fourth = 0,
            usize::MAX => cur.u = 0,
            n => cur.set_v(n as u32, 0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Localization {
    Monomial(LocalizedMonomial),
    /// The h₁-tower dies after this many multiplications.
    H1Torsion(u32),
    /// The tower reached the edge of the range before the margin.
    Inconclusive(String),
}

/// The h₁-localized image of `x`, by tower survival and degree matching.
pub fn h1_localized_image(
    engine: &mut ProductEngine<'_>,
    x: &ExtClass,
    h1: &ExtClass,
    ring: &LocalizedRing,
    margin: u32,
) -> Result<Localization> {
    let tower = engine.h_tower(x, h1, margin)?;
    if let Some(k) = tower.dies_at {
        return Ok(Localization::H1Torsion(k));
    }
    if tower.last_nonzero < margin {
        return Ok(Localization::Inconclusive(format!(
            "h1-tower on {} reaches the range boundary after {} steps",
            x.degree, tower.last_nonzero
        )));
    }
    let ms = ring.monomials_in(x.degree);
    match ms.len() {
        1 => Ok(Localization::Monomial(ms.into_iter().next().expect("one element"))),
        0 => Err(Error::Invalid(format!(
            "h1-periodic class in {} matches no localized monomial",
            x.degree
        ))),
        _ => Err(Error::Invalid(format!(
            "h1-periodic class in {} matches several monomials: {ms:?}",
            x.degree
        ))),
    }
}

/// The h₁-periodic class of smallest stem localizing to `m` times a power
/// of h₁. `Ok(None)` means none exists in range.
pub fn minimal_stem_preimage(
    engine: &mut ProductEngine<'_>,
    m: &LocalizedMonomial,
    h1: &ExtClass,
    ring: &LocalizedRing,
    margin: u32,
) -> Result<Option<ExtClass>> {
    let table = engine.table();
    let base = m.without_h1().degree(ring.u_deg());
    let Some(max_f) = table.max_filtration() else {
        return Ok(None);
    };
    let mut f = 0;
    while f <= max_f as i32 {
        let d = TriDegree::new(base.stem - base.filtration + f, f, base.weight - base.filtration + f);
        if d.stem < 0 || !table.covers(d.stem, d.filtration) {
            f += 1;
            continue;
        }
        for c in table.classes(d)? {
            if let Localization::Monomial(found) = h1_localized_image(engine, &c, h1, ring, margin)? {
                if found.without_h1() == m.without_h1() {
                    return Ok(Some(c));
                }
            }
        }
        f += 1;
    }
    Ok(None)
}

/// Locate `u` in the `A(2)` chart: the h₁-periodic class of smallest stem
/// not matched by any monomial in `v₁⁴, v₂`. Returns the base degree of `u`
/// (filtration 0 modulo h₁) and the class found.
pub fn locate_u(
    engine: &mut ProductEngine<'_>,
    h1: &ExtClass,
    margin: u32,
) -> Result<Option<(TriDegree, ExtClass)>> {
    let table = engine.table();
    let ring = LocalizedRing::full(2);
    let mut degrees = table.nonzero_degrees();
    degrees.sort_by_key(|d| (d.stem, d.filtration, -d.weight));
    for d in degrees {
        if !ring.monomials_in(d).is_empty() {
            continue;
        }
        for c in table.classes(d)? {
            let tower = engine.h_tower(&c, h1, margin)?;
            if tower.dies_at.is_none() && tower.last_nonzero >= margin {
                let (a, b) = h1_key(d);
                return Ok(Some((TriDegree::new(a, 0, b), c)));
            }
        }
    }
    Ok(None)
}

/// Restriction along a subalgebra inclusion, or the map to τ = 1 from the
/// classical resolution into the motivic one.
pub struct ComparisonMap<'a> {
    source: &'a Resolution,
    target: &'a Resolution,
    map: ChainMap,
    solvers: SolverCache,
}

impl<'a> ComparisonMap<'a> {
    /// `source` resolves the ground module over the smaller algebra (or the
    /// classical one), `target` over the larger (or motivic) one.
    pub fn new(source: &'a Resolution, target: &'a Resolution) -> Result<Self> {
        Ok(ComparisonMap {
            source,
            target,
            map: ChainMap::comparison(source, target)?,
            solvers: SolverCache::new(),
        })
    }

    /// The cocycle on the source resolution representing the image of `x`.
    pub fn image_cocycle(&mut self, x: &ExtClass) -> Result<crate::linalg::BitVec> {
        self.map.pull_back(
            self.source,
            self.target,
            &mut self.solvers,
            x.filtration(),
            x.t(),
            &x.coords,
        )
    }

    /// Image of `x` in `source_table`, reduced.
    pub fn image(&mut self, x: &ExtClass, source_table: &ExtTable) -> Result<ExtClass> {
        let v = self.image_cocycle(x)?;
        let mut d = x.degree;
        if !source_table.spec().is_motivic() {
            d.weight = 0;
        }
        source_table.reduce(&ExtClass::new(d, v))
    }
}

/// Restriction `Ext_A → Ext_{A(2)}` of `x`.
pub fn restrict_to_a2(map: &mut ComparisonMap<'_>, x: &ExtClass, a2_table: &ExtTable) -> Result<ExtClass> {
    map.image(x, a2_table)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauLocalization {
    Class(ExtClass),
    /// `τᵏ·x = 0`.
    Torsion(u32),
}

/// The classical class corresponding to a τ-free motivic class.
pub fn tau_localized_image(
    map: &mut ComparisonMap<'_>,
    x: &ExtClass,
    motivic: &ExtTable,
    classical: &ExtTable,
) -> Result<TauLocalization> {
    if let Some(k) = motivic.tau_order(x)? {
        return Ok(TauLocalization::Torsion(k));
    }
    Ok(TauLocalization::Class(map.image(x, classical)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_matching() {
        let ring = LocalizedRing::full(4);
        let ms = ring.monomials_in(TriDegree::new(9, 5, 5));
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].v1_fourth, 1);
        assert_eq!(ms[0].h1, 1);
        let ms = ring.monomials_in(TriDegree::new(8, 3, 5));
        assert_eq!(ms[0].v_exp(2), 1);
        assert_eq!(ms[0].h1, 2);
        let ms = ring.monomials_in(family_degree(0));
        assert_eq!(ms, alloc::vec![family_localization(0)]);
        assert_eq!(ring.monomials_in(family_degree(1)), alloc::vec![family_localization(1)]);
        assert_eq!(ring.monomials_in(TriDegree::new(15, 2, 8))[0].h1, 1);
        assert!(ring.monomials_in(TriDegree::new(15, 1, 8)).is_empty());
    }

    #[test]
    fn a2_ring_has_u() {
        let ring = LocalizedRing::a2(TriDegree::new(8, 0, 4));
        let ms = ring.monomials_in(TriDegree::new(17, 4, 10));
        assert_eq!(ms.len(), 1);
        assert_eq!((ms[0].u, ms[0].v_exp(2), ms[0].h1), (1, 1, 3));
        assert_eq!(ms[0].to_string(), "v2·u·h1^3");
    }

    #[test]
    fn restriction_preserves_degrees() {
        let u = TriDegree::new(8, 0, 4);
        for j in 0..3 {
            let m = family_localization(j);
            let r = restrict_monomial(&m);
            assert_eq!(r.degree(u), m.degree(u));
            assert_eq!((r.v_exp(2), r.u), (1, (1 << (j + 1)) - 1));
        }
    }
}
