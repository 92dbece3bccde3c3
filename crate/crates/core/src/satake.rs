//! Table-driven Satake transform on the span of double cosets the Hecke
//! identity needs, and the symbolic verification of that identity.
//!
//! The table covers the central cosets `c_{k*nu0}`, the degree-p coset
//! `c_{nu2}`, `c_{nu1}` and `c_{2*nu2}`. A general Kazhdan-Lusztig engine
//! is deliberately out of scope; this span suffices for every identity
//! computed here.

use serde::{Deserialize, Serialize};

use crate::character::{char_mul, weyl_character, CharacterElement};
use crate::coweight::DominantCoweight;
use crate::error::AlgebraError;
use crate::scalar::Scalar;

/// Satake transform of the double-coset basis element `c_nu`, for `nu` in
/// the table span.
///
/// - `S(c_{k*nu0}) = e^{k*nu0}`
/// - `S(c_{nu2})   = q^3 * chi_{nu2}`
/// - `S(c_{nu1})   = q^4 * chi_{nu1} - e^{nu0}`
/// - `S(c_{2nu2})  = q^6 * chi_{2nu2} - S(c_{nu1}) - (1 + q^4) * e^{nu0}`
///
/// The correction terms carry the Kazhdan-Lusztig coefficients `1` and
/// `1 + p^2` at `nu1` and the central coset below `2*nu2`.
pub fn satake_table(nu: &DominantCoweight) -> Result<CharacterElement, AlgebraError> {
    let e = nu.entries();
    if e[0] == e[1] && e[1] == e[2] && e[2] == e[3] {
        return Ok(CharacterElement::central(e[0]));
    }
    if *nu == DominantCoweight::nu2() {
        return Ok(weyl_character(nu).scale(&Scalar::q_power(3)));
    }
    if *nu == DominantCoweight::nu1() {
        let chi = weyl_character(nu).scale(&Scalar::q_power(4));
        return Ok(chi.sub(&CharacterElement::central(1)));
    }
    if *nu == DominantCoweight::two_nu2() {
        let chi = weyl_character(nu).scale(&Scalar::q_power(6));
        let s_nu1 = satake_table(&DominantCoweight::nu1())?;
        let kl0 = &Scalar::one() + &Scalar::q_power(4);
        return Ok(chi.sub(&s_nu1).sub(&CharacterElement::central(1).scale(&kl0)));
    }
    Err(AlgebraError::OutsideSatakeSpan(nu.to_string()))
}

/// Certificate returned by the symbolic Hecke-identity check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeckeIdentityCertificate {
    /// Canonical form of `S(c_{nu2})^2`.
    pub lhs: CharacterElement,
    /// Canonical form of `S(c_{2nu2}) + (p+1) S(c_{nu1}) + (p+1)(p^2+1) S(c_{nu0})`.
    pub rhs: CharacterElement,
    /// The common value, which must be `q^6 (chi_{2nu2} + chi_{nu1} + e^{nu0})`.
    pub expected: CharacterElement,
}

/// Symbolically verify the spherical Hecke identity
/// `S(c_{nu2})^2 = S(c_{2nu2}) + (p+1) S(c_{nu1}) + (p+1)(p^2+1) S(c_{nu0})`
/// in the character ring, with `p = q^2`. The constant term is the
/// central-coset multiple `(p+1)(p^2+1) c_{nu0}`, forced by similitude
/// homogeneity.
pub fn verify_hecke_identity() -> Result<HeckeIdentityCertificate, AlgebraError> {
    let s_nu2 = satake_table(&DominantCoweight::nu2())?;
    let lhs = char_mul(&s_nu2, &s_nu2);

    let p = Scalar::p_power(1);
    let p_plus_1 = &p + &Scalar::one();
    let p2_plus_1 = &Scalar::p_power(2) + &Scalar::one();
    let rhs = satake_table(&DominantCoweight::two_nu2())?
        .add(&satake_table(&DominantCoweight::nu1())?.scale(&p_plus_1))
        .add(
            &satake_table(&DominantCoweight::nu0())?.scale(&(&p_plus_1 * &p2_plus_1)),
        );

    let expected = weyl_character(&DominantCoweight::two_nu2())
        .add(&weyl_character(&DominantCoweight::nu1()))
        .add(&CharacterElement::central(1))
        .scale(&Scalar::q_power(6));

    for (w, c) in expected.iter() {
        let l = lhs.coeff(w);
        if l != *c {
            return Err(AlgebraError::IdentityMismatch {
                weight: w.to_string(),
                lhs: l.to_string(),
                rhs: c.to_string(),
            });
        }
    }
    if lhs != expected || rhs != expected {
        // Report the first weight where the two sides disagree.
        for (w, c) in lhs.iter() {
            let r = rhs.coeff(w);
            if r != *c {
                return Err(AlgebraError::IdentityMismatch {
                    weight: w.to_string(),
                    lhs: c.to_string(),
                    rhs: r.to_string(),
                });
            }
        }
        return Err(AlgebraError::IdentityMismatch {
            weight: "(support)".into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(HeckeIdentityCertificate { lhs, rhs, expected })
}
