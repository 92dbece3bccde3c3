//! Coweights of the degree-4 symplectic similitude group: integer 4-tuples
//! with the similitude relation `a1 + a4 = a2 + a3`. Dominant tuples index
//! the double-coset basis of the spherical Hecke algebra.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// A (not necessarily dominant) weight: a 4-tuple with `a1 + a4 = a2 + a3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(pub [i64; 4]);

/// A dominant coweight: `a1 >= a2 >= a3 >= a4` with `a1 + a4 = a2 + a3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DominantCoweight([i64; 4]);

impl Weight {
    pub fn new(a: [i64; 4]) -> Result<Self, AlgebraError> {
        if a[0] + a[3] != a[1] + a[2] {
            return Err(AlgebraError::SimilitudeViolation(a));
        }
        Ok(Weight(a))
    }

    pub fn entries(&self) -> [i64; 4] {
        self.0
    }

    /// The similitude `c = a1 + a4`.
    pub fn similitude(&self) -> i64 {
        self.0[0] + self.0[3]
    }

    /// Simple reflection `s1`: swaps `a1 <-> a2` and `a3 <-> a4`.
    pub fn s1(&self) -> Weight {
        let [a, b, c, d] = self.0;
        Weight([b, a, d, c])
    }

    /// Simple reflection `s2`: swaps `a2 <-> a3`.
    pub fn s2(&self) -> Weight {
        let [a, b, c, d] = self.0;
        Weight([a, c, b, d])
    }

    /// Reflection `s3`: swaps `a1 <-> a4` (equal to `s1 s2 s1`).
    pub fn s3(&self) -> Weight {
        let [a, b, c, d] = self.0;
        Weight([d, b, c, a])
    }

    pub fn is_dominant(&self) -> bool {
        let [a, b, c, d] = self.0;
        a >= b && b >= c && c >= d
    }

    /// The dominant representative of the Weyl orbit of this weight.
    pub fn dominant_representative(&self) -> DominantCoweight {
        // a1 >= a2 and a2 >= a3 suffice; a3 >= a4 follows from the
        // similitude relation.
        let mut w = *self;
        loop {
            if w.0[0] < w.0[1] {
                w = w.s1();
            } else if w.0[1] < w.0[2] {
                w = w.s2();
            } else if w.0[0] < w.0[3] {
                w = w.s3();
            } else {
                debug_assert!(w.is_dominant());
                return DominantCoweight(w.0);
            }
        }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        let mut a = [0i64; 4];
        for i in 0..4 {
            a[i] = self.0[i] + other.0[i];
        }
        Weight(a)
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        let mut a = [0i64; 4];
        for i in 0..4 {
            a[i] = self.0[i] - other.0[i];
        }
        Weight(a)
    }
}

impl DominantCoweight {
    pub fn new(a: [i64; 4]) -> Result<Self, AlgebraError> {
        if a[0] + a[3] != a[1] + a[2] {
            return Err(AlgebraError::SimilitudeViolation(a));
        }
        if !(a[0] >= a[1] && a[1] >= a[2] && a[2] >= a[3]) {
            return Err(AlgebraError::NotDominant(a));
        }
        Ok(DominantCoweight(a))
    }

    pub fn entries(&self) -> [i64; 4] {
        self.0
    }

    pub fn similitude(&self) -> i64 {
        self.0[0] + self.0[3]
    }

    pub fn weight(&self) -> Weight {
        Weight(self.0)
    }

    /// The central coweight `k*(1,1,1,1)`.
    pub fn central(k: i64) -> Self {
        DominantCoweight([k; 4])
    }

    /// `nu_2 = (1,1,0,0)`.
    pub fn nu2() -> Self {
        DominantCoweight([1, 1, 0, 0])
    }

    /// `nu_1 = (2,1,1,0)`.
    pub fn nu1() -> Self {
        DominantCoweight([2, 1, 1, 0])
    }

    /// `2*nu_2 = (2,2,0,0)`.
    pub fn two_nu2() -> Self {
        DominantCoweight([2, 2, 0, 0])
    }

    /// `nu_0 = (1,1,1,1)`.
    pub fn nu0() -> Self {
        DominantCoweight::central(1)
    }

    /// Twice the pairing with the half-sum of positive roots:
    /// `2<nu, rho> = 4*a1 + 2*a2 - 3*c`.
    pub fn two_rho_pairing(&self) -> i64 {
        4 * self.0[0] + 2 * self.0[1] - 3 * self.similitude()
    }

    /// The dominant coweight of the inverse double coset:
    /// `(c - a4, c - a3, c - a2, c - a1)` negated similitude convention,
    /// i.e. the sorted negation of the tuple.
    pub fn inverse_position(&self) -> DominantCoweight {
        let [a, b, c, d] = self.0;
        DominantCoweight([-d, -c, -b, -a])
    }
}

/// Dominance order: `xi <= nu` iff `nu - xi` is a nonnegative integer
/// combination of `(0,1,-1,0)` and `(1,0,0,-1)`.
pub fn dominance_leq(xi: &DominantCoweight, nu: &DominantCoweight) -> bool {
    let d = nu.weight().sub(&xi.weight()).0;
    // d = m*(0,1,-1,0) + n*(1,0,0,-1) forces n = d1, m = d2.
    let n = d[0];
    let m = d[1];
    m >= 0 && n >= 0 && d == [n, m, -m, -n]
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({},{},{},{})", a, b, c, d)
    }
}

impl fmt::Display for DominantCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.weight().fmt(f)
    }
}

/// Enumerate all dominant coweights with entries in `[-bound, bound]`.
/// Test support; exhaustive small sweeps.
#[cfg(test)]
pub(crate) fn all_small_dominant(bound: i64) -> Vec<DominantCoweight> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=a {
            for c in -bound..=b {
                let d = b + c - a;
                if d <= c && d >= -bound {
                    out.push(DominantCoweight::new([a, b, c, d]).unwrap());
                }
            }
        }
    }
    out
}
