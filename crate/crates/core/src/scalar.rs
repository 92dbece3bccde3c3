//! Exact Laurent polynomials in the formal variable `q`, with the global
//! convention `p = q^2`. Half-integral powers of `p` (such as `p^{3/2}`)
//! are therefore honest monomials `q^3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// A Laurent polynomial in `q` with integer coefficients.
///
/// Canonical form stores no zero coefficients; the map is keyed by the
/// exponent of `q`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Scalar {
    coeffs: BTreeMap<i64, BigInt>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::q_power(0)
    }

    /// The monomial `q^e`.
    pub fn q_power(e: i64) -> Self {
        Scalar::monomial(e, BigInt::from(1))
    }

    /// The monomial `p^e = q^{2e}`.
    pub fn p_power(e: i64) -> Self {
        Scalar::q_power(2 * e)
    }

    pub fn monomial(e: i64, c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Scalar { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::monomial(0, BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::monomial(0, n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    /// Largest exponent with nonzero coefficient, if any.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// True if the scalar is a single nonnegative integer times `q^0`.
    pub fn is_nonneg_constant(&self) -> bool {
        match self.coeffs.len() {
            0 => true,
            1 => self
                .coeffs
                .get(&0)
                .map(|c| !c.is_negative())
                .unwrap_or(false),
            _ => false,
        }
    }

    /// True if any coefficient is negative.
    pub fn has_negative_coeff(&self) -> bool {
        self.coeffs.values().any(|c| c.is_negative())
    }

    /// Substitute a concrete prime for `p`, i.e. evaluate at `q = sqrt(p)`.
    /// Only valid when all exponents are even; returns `None` otherwise.
    pub fn eval_p(&self, p: i64) -> Option<BigInt> {
        let p = BigInt::from(p);
        let mut acc = BigInt::zero();
        for (e, c) in &self.coeffs {
            if e % 2 != 0 {
                return None;
            }
            let half = e / 2;
            if half < 0 {
                return None;
            }
            acc += c * p.pow(half as u32);
        }
        Some(acc)
    }

    /// Exact equality after evaluating at `q = sqrt(p)`, i.e. in the ring
    /// `Z[sqrt(p), 1/p]`. Distinct polynomials can agree here (for
    /// instance `8` and `q^6` at `p = 2`); this is the comparison the
    /// counting oracles need.
    pub fn equals_at_prime(&self, other: &Scalar, p: u64) -> bool {
        let diff = self - other;
        if diff.is_zero() {
            return true;
        }
        // Clear denominators, then split into the 1 and sqrt(p) parts.
        let min = *diff.coeffs.keys().next().unwrap();
        let shift = if min < 0 { (-min + 1) / 2 * 2 } else { 0 };
        let p = BigInt::from(p);
        let mut even = BigInt::zero();
        let mut odd = BigInt::zero();
        for (e, c) in &diff.coeffs {
            let ee = e + shift;
            if ee % 2 == 0 {
                even += c * p.pow((ee / 2) as u32);
            } else {
                odd += c * p.pow(((ee - 1) / 2) as u32);
            }
        }
        even.is_zero() && odd.is_zero()
    }

    fn insert_add(&mut self, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.insert_add(*e, c);
        }
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.coeffs {
            self.insert_add(*e, c);
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.insert_add(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    /// Renders like `q^3 + 2 - q^-1`, highest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let one = mag == BigInt::from(1);
            match (*e, one) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", mag)?,
                (_, true) => write!(f, "q^{}", e)?,
                (_, false) => write!(f, "{}*q^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = Scalar::q_power(3);
        let b = -&a;
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn p_is_q_squared() {
        assert_eq!(Scalar::p_power(1), Scalar::q_power(2));
        let p32 = Scalar::q_power(3);
        assert_eq!(&p32 * &p32, Scalar::p_power(3));
    }

    #[test]
    fn mul_distributes() {
        let a = &Scalar::q_power(1) + &Scalar::from_int(2);
        let b = &Scalar::q_power(-1) + &Scalar::from_int(-1);
        let ab = &a * &b;
        // (q + 2)(q^-1 - 1) = 1 - q + 2q^-1 - 2
        let mut expect = Scalar::from_int(-1);
        expect += &(-&Scalar::q_power(1));
        expect += &Scalar::monomial(-1, BigInt::from(2));
        assert_eq!(ab, expect);
    }

    #[test]
    fn eval_p_rejects_odd_exponents() {
        assert_eq!(Scalar::q_power(3).eval_p(2), None);
        assert_eq!(Scalar::p_power(2).eval_p(3), Some(BigInt::from(9)));
    }

    #[test]
    fn display_format() {
        let mut s = Scalar::q_power(3);
        s += &Scalar::from_int(2);
        s += &(-&Scalar::q_power(-1));
        assert_eq!(s.to_string(), "q^3 + 2 - q^-1");
    }
}
