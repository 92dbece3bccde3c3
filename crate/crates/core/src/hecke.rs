//! Elements of the spherical Hecke algebra in the double-coset basis.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coweight::DominantCoweight;
use crate::scalar::Scalar;

/// A finitely supported function from dominant coweights to scalars.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HeckeElement {
    terms: BTreeMap<DominantCoweight, Scalar>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    pub fn basis(nu: DominantCoweight) -> Self {
        let mut out = HeckeElement::zero();
        out.add_term(nu, Scalar::one());
        out
    }

    pub fn add_term(&mut self, nu: DominantCoweight, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(nu).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&nu);
        }
    }

    pub fn coeff(&self, nu: &DominantCoweight) -> Scalar {
        self.terms.get(nu).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DominantCoweight, &Scalar)> {
        self.terms.iter()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (nu, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*c_{}", c, nu)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zeros() {
        let mut h = HeckeElement::basis(DominantCoweight::nu2());
        h.add_term(DominantCoweight::nu2(), -&Scalar::one());
        assert!(h.is_zero());
    }

    #[test]
    fn display() {
        let mut h = HeckeElement::zero();
        h.add_term(DominantCoweight::nu0(), Scalar::from_int(15));
        h.add_term(DominantCoweight::two_nu2(), Scalar::one());
        assert_eq!(h.to_string(), "(15)*c_(1,1,1,1) + (1)*c_(2,2,0,0)");
    }
}
