//! Grading arithmetic.
//!
//! Ext classes live in a tridegree `(stem, filtration, weight)`; algebra
//! elements and free-module basis vectors live in an internal degree
//! `(t, weight)`. The two are related by `t = stem + filtration`.
//!
//! Multiplication by τ lowers the weight of an Ext class by one, so that
//! τ itself sits in tridegree `(0, 0, -1)`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// A tridegree `(stem, filtration, weight)` of a class in Ext.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriDegree {
    pub stem: i32,
    pub filtration: i32,
    pub weight: i32,
}

impl TriDegree {
    pub const ZERO: TriDegree = TriDegree::new(0, 0, 0);
    /// Degree of multiplication by τ.
    pub const TAU: TriDegree = TriDegree::new(0, 0, -1);

    pub const fn new(stem: i32, filtration: i32, weight: i32) -> Self {
        TriDegree {
            stem,
            filtration,
            weight,
        }
    }

    /// A classical bidegree, with the weight set to zero.
    pub const fn classical(stem: i32, filtration: i32) -> Self {
        TriDegree::new(stem, filtration, 0)
    }

    /// Internal degree `t = stem + filtration`.
    pub const fn t(self) -> i32 {
        self.stem + self.filtration
    }

    pub const fn internal(self) -> AlgDegree {
        AlgDegree {
            t: self.t(),
            weight: self.weight,
        }
    }

    pub const fn chow_degree(self) -> i32 {
        chow_degree(self)
    }

    pub const fn v1_intercept(self) -> i32 {
        v1_intercept(self.stem, self.filtration)
    }
}

impl Add for TriDegree {
    type Output = TriDegree;
    fn add(self, o: TriDegree) -> TriDegree {
        TriDegree::new(
            self.stem + o.stem,
            self.filtration + o.filtration,
            self.weight + o.weight,
        )
    }
}

impl Sub for TriDegree {
    type Output = TriDegree;
    fn sub(self, o: TriDegree) -> TriDegree {
        TriDegree::new(
            self.stem - o.stem,
            self.filtration - o.filtration,
            self.weight - o.weight,
        )
    }
}

impl Neg for TriDegree {
    type Output = TriDegree;
    fn neg(self) -> TriDegree {
        TriDegree::new(-self.stem, -self.filtration, -self.weight)
    }
}

impl Mul<TriDegree> for i32 {
    type Output = TriDegree;
    fn mul(self, d: TriDegree) -> TriDegree {
        TriDegree::new(self * d.stem, self * d.filtration, self * d.weight)
    }
}

impl fmt::Display for TriDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.stem, self.filtration, self.weight)
    }
}

/// Internal degree of an algebra element or free-module basis vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgDegree {
    pub t: i32,
    pub weight: i32,
}

impl AlgDegree {
    pub const fn new(t: i32, weight: i32) -> Self {
        AlgDegree { t, weight }
    }

    /// The tridegree of a cocycle of this internal degree in filtration `f`.
    pub const fn at_filtration(self, filtration: i32) -> TriDegree {
        TriDegree::new(self.t - filtration, filtration, self.weight)
    }
}

impl Add for AlgDegree {
    type Output = AlgDegree;
    fn add(self, o: AlgDegree) -> AlgDegree {
        AlgDegree::new(self.t + o.t, self.weight + o.weight)
    }
}

impl fmt::Display for AlgDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t={},w={})", self.t, self.weight)
    }
}

/// Chow degree `s + f - 2w`.
pub const fn chow_degree(d: TriDegree) -> i32 {
    d.stem + d.filtration - 2 * d.weight
}

/// The x-intercept `s - 2f` of the slope one-half line through `(s, f)`.
pub const fn v1_intercept(stem: i32, filtration: i32) -> i32 {
    stem - 2 * filtration
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chow_degree_examples() {
        assert_eq!(chow_degree(TriDegree::new(17, 4, 10)), 1);
        assert_eq!(chow_degree(TriDegree::new(20, 4, 12)), 0);
        assert_eq!(chow_degree(TriDegree::ZERO), 0);
    }

    #[test]
    fn v1_intercept_examples() {
        assert_eq!(v1_intercept(0, 2), -4);
        assert_eq!(v1_intercept(7, 4), -1);
        assert_eq!(v1_intercept(0, 0), 0);
    }

    #[test]
    fn family_degree_has_chow_degree_one() {
        for k in 0..8 {
            let d = k * TriDegree::new(20, 4, 12) + TriDegree::new(17, 4, 10);
            assert_eq!(d.chow_degree(), 1);
        }
    }

    proptest::proptest! {
        #[test]
        fn gradings_are_additive(a in -50i32..50, b in 0i32..30, c in -40i32..40,
                                 x in -50i32..50, y in 0i32..30, z in -40i32..40) {
            let d1 = TriDegree::new(a, b, c);
            let d2 = TriDegree::new(x, y, z);
            proptest::prop_assert_eq!(chow_degree(d1 + d2), chow_degree(d1) + chow_degree(d2));
            proptest::prop_assert_eq!((d1 + d2).v1_intercept(), d1.v1_intercept() + d2.v1_intercept());
            proptest::prop_assert_eq!((d1 + d2).internal(), d1.internal() + d2.internal());
        }
    }
}
