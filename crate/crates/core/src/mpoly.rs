//! Minimal multivariate polynomials with big-integer coefficients, used
//! for symbolic matrix entries and exact expansion checks. Variables are
//! indexed; exponent vectors are kept trimmed so equality is canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A polynomial in finitely many commuting variables over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MPoly {
    /// Trimmed exponent vector -> coefficient.
    terms: BTreeMap<Vec<u32>, BigInt>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(BigInt::from(n))
    }

    /// The variable with the given index.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0u32; i + 1];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn insert_add(&mut self, e: Vec<u32>, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Substitute polynomials for the variables.
    pub fn substitute(&self, values: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    let v = values
                        .get(i)
                        .cloned()
                        .unwrap_or_else(|| MPoly::var(i));
                    term = &term * &v.pow(exp);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Render with the given variable names.
    pub fn display(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &exp) in e.iter().enumerate() {
                if exp == 1 {
                    factors.push(names[i].to_string());
                } else if exp > 1 {
                    factors.push(format!("{}^{}", names[i], exp));
                }
            }
            let body = factors.join("*");
            let part = if body.is_empty() {
                format!("{}", c)
            } else if c.is_one() {
                body
            } else if (-c).is_one() {
                format!("-{}", body)
            } else {
                format!("{}*{}", c, body)
            };
            parts.push(part);
        }
        let mut out = String::new();
        for (i, part) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(part);
            } else if let Some(rest) = part.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(part);
            }
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c);
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, other: &MPoly) -> MPoly {
        self + &(-other)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let n = e1.len().max(e2.len());
                let mut e = vec![0u32; n];
                for (i, ei) in e.iter_mut().enumerate() {
                    *ei = e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0);
                }
                out.insert_add(e, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Generic names x0, x1, ...
        let max = self.terms.keys().map(|e| e.len()).max().unwrap_or(0);
        let names: Vec<String> = (0..max).map(|i| format!("x{}", i)).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.display(&refs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_axioms_smoke() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let f = &(&x * &x) + &y;
        let g = f.substitute(&[MPoly::int(3), MPoly::var(1)]);
        assert_eq!(g, &MPoly::int(9) + &MPoly::var(1));
    }

    #[test]
    fn display_names() {
        let f = &(&MPoly::int(-2) * &MPoly::var(0)) + &MPoly::var(1).pow(2);
        assert_eq!(f.display(&["a", "b"]), "-2*a + b^2");
    }
}
