//! The Weyl-invariant character ring of the dual group, with exact weight
//! multiplicities computed by Freudenthal recursion.
//!
//! The weight lattice is the set of 4-tuples with `a1 + a4 = a2 + a3`; the
//! Weyl group (order 8) acts by the coordinate permutations generated by
//! `s1, s2, s3`. The standard dot product on `Z^4` is invariant under this
//! action and is used for all pairings below.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coweight::{DominantCoweight, Weight};
use crate::error::AlgebraError;
use crate::scalar::Scalar;

/// Positive roots of the dual root system on the constrained lattice,
/// ordered as (short simple, long simple, and the two other positives).
const POSITIVE_ROOTS: [[i64; 4]; 4] = [
    [0, 1, -1, 0],
    [1, -1, 1, -1],
    [1, 0, 0, -1],
    [1, 1, -1, -1],
];

/// Twice the half-sum of the positive roots above.
const TWO_RHO: [i64; 4] = [3, 1, -1, -3];

fn dot(a: &[i64; 4], b: &[i64; 4]) -> i64 {
    (0..4).map(|i| a[i] * b[i]).sum()
}

/// A finitely supported function from weights to scalars, invariant under
/// the Weyl group in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CharacterElement {
    weights: BTreeMap<Weight, Scalar>,
}

impl CharacterElement {
    pub fn zero() -> Self {
        CharacterElement::default()
    }

    /// The single central weight `e^{k*(1,1,1,1)}`; fixed by W, so a valid
    /// character element on its own.
    pub fn central(k: i64) -> Self {
        let mut out = CharacterElement::zero();
        out.add_term(Weight([k; 4]), Scalar::one());
        out
    }

    pub fn add_term(&mut self, w: Weight, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.weights.entry(w).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.weights.remove(&w);
        }
    }

    pub fn coeff(&self, w: &Weight) -> Scalar {
        self.weights.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &Scalar)> {
        self.weights.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    /// Sum of all coefficients (the "mass"; equals the dimension for a
    /// character with integral multiplicities).
    pub fn mass(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.weights.values() {
            acc += c;
        }
        acc
    }

    pub fn scale(&self, s: &Scalar) -> CharacterElement {
        let mut out = CharacterElement::zero();
        for (w, c) in &self.weights {
            out.add_term(*w, s * c);
        }
        out
    }

    pub fn add(&self, other: &CharacterElement) -> CharacterElement {
        let mut out = self.clone();
        for (w, c) in &other.weights {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CharacterElement) -> CharacterElement {
        let mut out = self.clone();
        for (w, c) in &other.weights {
            out.add_term(*w, -c);
        }
        out
    }

    /// Coefficient-wise equality after evaluating scalars at `q = sqrt(p)`.
    pub fn equals_at_prime(&self, other: &CharacterElement, p: u64) -> bool {
        let mut support: std::collections::BTreeSet<Weight> =
            self.weights.keys().copied().collect();
        support.extend(other.weights.keys().copied());
        support
            .iter()
            .all(|w| self.coeff(w).equals_at_prime(&other.coeff(w), p))
    }

    /// True if the element is fixed by `s1`, `s2`, `s3`.
    pub fn is_weyl_invariant(&self) -> bool {
        self.weights.iter().all(|(w, c)| {
            [w.s1(), w.s2(), w.s3()]
                .iter()
                .all(|v| self.coeff(v) == *c)
        })
    }
}

/// Pointwise convolution of weight functions (the ring product).
pub fn char_mul(x: &CharacterElement, y: &CharacterElement) -> CharacterElement {
    let mut out = CharacterElement::zero();
    for (w1, c1) in x.iter() {
        for (w2, c2) in y.iter() {
            out.add_term(w1.add(w2), c1 * c2);
        }
    }
    out
}

/// The Weyl orbit of a weight: closure under `s1`, `s2`, `s3`.
pub fn weyl_orbit(w: &Weight) -> BTreeSet<Weight> {
    let mut orbit = BTreeSet::new();
    let mut stack = vec![*w];
    while let Some(v) = stack.pop() {
        if orbit.insert(v) {
            stack.push(v.s1());
            stack.push(v.s2());
            stack.push(v.s3());
        }
    }
    orbit
}

/// Weight multiplicities of the irreducible dual-group representation of
/// highest weight `nu`, by Freudenthal recursion.
pub fn weyl_character(nu: &DominantCoweight) -> CharacterElement {
    let lam = nu.entries();
    let f_lam = dot(&lam, &TWO_RHO);

    // Candidate dominant weights lam - i*beta1 - j*beta2 (simple roots).
    let mut dominant: Vec<[i64; 4]> = Vec::new();
    let b1 = POSITIVE_ROOTS[0];
    let b2 = POSITIVE_ROOTS[1];
    for j in 0..=(f_lam / 2).max(0) {
        for i in 0..=f_lam.max(0) {
            let mu = [
                lam[0] - i * b1[0] - j * b2[0],
                lam[1] - i * b1[1] - j * b2[1],
                lam[2] - i * b1[2] - j * b2[2],
                lam[3] - i * b1[3] - j * b2[3],
            ];
            if mu[0] >= mu[1] && mu[1] >= mu[2] && mu[2] >= mu[3] {
                dominant.push(mu);
            }
        }
    }
    // Process in decreasing order of pairing with 2*rho; lam itself first.
    dominant.sort_by_key(|mu| (-dot(mu, &TWO_RHO), *mu));

    let norm2 = |v: &[i64; 4]| -> i64 {
        let shifted = [
            2 * v[0] + TWO_RHO[0],
            2 * v[1] + TWO_RHO[1],
            2 * v[2] + TWO_RHO[2],
            2 * v[3] + TWO_RHO[3],
        ];
        dot(&shifted, &shifted)
    };
    let n_lam = norm2(&lam);

    let mut mult: BTreeMap<[i64; 4], i64> = BTreeMap::new();
    mult.insert(lam, 1);
    for mu in dominant.iter().skip(1) {
        let mut total: i64 = 0;
        for alpha in &POSITIVE_ROOTS {
            let mut k = 1;
            loop {
                let shifted = [
                    mu[0] + k * alpha[0],
                    mu[1] + k * alpha[1],
                    mu[2] + k * alpha[2],
                    mu[3] + k * alpha[3],
                ];
                if dot(&shifted, &TWO_RHO) > f_lam {
                    break;
                }
                let rep = Weight(shifted).dominant_representative().entries();
                if let Some(m) = mult.get(&rep) {
                    total += m * dot(&shifted, alpha);
                }
                k += 1;
            }
        }
        let denom = n_lam - norm2(mu);
        debug_assert!(denom > 0, "Freudenthal denominator must be positive");
        let num = 8 * total;
        debug_assert_eq!(num % denom, 0, "Freudenthal divisibility");
        let m = num / denom;
        if m > 0 {
            mult.insert(*mu, m);
        }
    }

    let mut out = CharacterElement::zero();
    for (mu, m) in mult {
        for w in weyl_orbit(&Weight(mu)) {
            out.add_term(w, Scalar::from_int(m));
        }
    }
    out
}

/// Dimension of the irreducible of highest weight `nu`, by the Weyl
/// dimension formula.
pub fn weyl_dimension(nu: &DominantCoweight) -> i64 {
    let lam = nu.entries();
    let mut num: i64 = 1;
    let mut den: i64 = 1;
    for alpha in &POSITIVE_ROOTS {
        let shifted = [
            2 * lam[0] + TWO_RHO[0],
            2 * lam[1] + TWO_RHO[1],
            2 * lam[2] + TWO_RHO[2],
            2 * lam[3] + TWO_RHO[3],
        ];
        num *= dot(&shifted, alpha);
        den *= dot(&TWO_RHO, alpha);
    }
    debug_assert_eq!(num % den, 0);
    num / den
}

/// Express a character as highest-weight multiplicities by repeatedly
/// stripping the maximal surviving dominant weight.
pub fn char_decompose(
    x: &CharacterElement,
) -> Result<BTreeMap<DominantCoweight, Scalar>, AlgebraError> {
    let mut rest = x.clone();
    let mut out: BTreeMap<DominantCoweight, Scalar> = BTreeMap::new();
    while !rest.is_zero() {
        // Lexicographic max of a Weyl-invariant support is dominant.
        let (&w, c) = rest.weights.iter().next_back().expect("nonempty");
        let c = c.clone();
        let nu = DominantCoweight::new(w.entries())
            .map_err(|_| AlgebraError::NegativeMultiplicity(w.to_string()))?;
        if c.has_negative_coeff() {
            return Err(AlgebraError::NegativeMultiplicity(nu.to_string()));
        }
        rest = rest.sub(&weyl_character(&nu).scale(&c));
        out.insert(nu, c);
    }
    Ok(out)
}

impl fmt::Display for CharacterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weights.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.weights {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*e^{}", c, w)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn central_orbit_is_singleton() {
        let orbit = weyl_orbit(&Weight([1, 1, 1, 1]));
        assert_eq!(orbit.len(), 1);
    }

    #[test]
    fn nu2_orbit() {
        let orbit = weyl_orbit(&Weight([1, 1, 0, 0]));
        let expect: BTreeSet<Weight> = [
            Weight([1, 1, 0, 0]),
            Weight([1, 0, 1, 0]),
            Weight([0, 1, 0, 1]),
            Weight([0, 0, 1, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(orbit, expect);
    }

    #[test]
    fn nu1_orbit() {
        let orbit = weyl_orbit(&Weight([2, 1, 1, 0]));
        let expect: BTreeSet<Weight> = [
            Weight([2, 1, 1, 0]),
            Weight([1, 2, 0, 1]),
            Weight([1, 0, 2, 1]),
            Weight([0, 1, 1, 2]),
        ]
        .into_iter()
        .collect();
        assert_eq!(orbit, expect);
    }

    #[test]
    fn standard_rep_is_minuscule() {
        let chi = weyl_character(&DominantCoweight::nu2());
        assert_eq!(chi.support_size(), 4);
        assert_eq!(chi.mass(), int(4));
        for (_, c) in chi.iter() {
            assert_eq!(*c, int(1));
        }
    }

    #[test]
    fn five_dim_orthogonal_rep() {
        let chi = weyl_character(&DominantCoweight::nu1());
        assert_eq!(chi.mass(), int(5));
        assert_eq!(chi.coeff(&Weight([1, 1, 1, 1])), int(1));
        assert_eq!(chi.coeff(&Weight([2, 1, 1, 0])), int(1));
    }

    #[test]
    fn adjoint_rep_dimension() {
        let chi = weyl_character(&DominantCoweight::two_nu2());
        assert_eq!(chi.mass(), int(10));
        assert_eq!(weyl_dimension(&DominantCoweight::two_nu2()), 10);
    }

    #[test]
    fn mass_equals_weyl_dimension_small_sweep() {
        for nu in crate::coweight::all_small_dominant(4) {
            let chi = weyl_character(&nu);
            assert_eq!(
                chi.mass(),
                int(weyl_dimension(&nu)),
                "dimension mismatch at {}",
                nu
            );
            assert!(chi.is_weyl_invariant(), "not W-invariant at {}", nu);
        }
    }

    #[test]
    fn central_twist() {
        let chi0 = weyl_character(&DominantCoweight::nu0());
        let chi2 = weyl_character(&DominantCoweight::nu2());
        let prod = char_mul(&chi0, &chi2);
        assert_eq!(prod.support_size(), 4);
        assert_eq!(prod.coeff(&Weight([2, 2, 1, 1])), int(1));
        assert_eq!(prod.coeff(&Weight([1, 1, 2, 2])), int(1));
    }

    #[test]
    fn nu2_squared_mass_and_decomposition() {
        let chi2 = weyl_character(&DominantCoweight::nu2());
        let sq = char_mul(&chi2, &chi2);
        assert_eq!(sq.mass(), int(16));
        let decomp = char_decompose(&sq).unwrap();
        let expect: BTreeMap<DominantCoweight, Scalar> = [
            (DominantCoweight::two_nu2(), int(1)),
            (DominantCoweight::nu1(), int(1)),
            (DominantCoweight::nu0(), int(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(decomp, expect);
    }

    #[test]
    fn decompose_round_trips() {
        for nu in [
            DominantCoweight::nu0(),
            DominantCoweight::nu1(),
            DominantCoweight::two_nu2(),
        ] {
            let decomp = char_decompose(&weyl_character(&nu)).unwrap();
            assert_eq!(decomp.len(), 1);
            assert!(decomp[&nu].coeff(0).is_one());
        }
    }

    #[test]
    fn decompose_random_combinations() {
        // Small deterministic sweep of nonnegative combinations.
        let basis = [
            DominantCoweight::nu0(),
            DominantCoweight::nu2(),
            DominantCoweight::nu1(),
            DominantCoweight::two_nu2(),
        ];
        let mut seed: u64 = 0x9e3779b97f4a7c15;
        for _ in 0..10 {
            let mut x = CharacterElement::zero();
            let mut mults = BTreeMap::new();
            for nu in basis {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
                let m = (seed >> 33) % 4;
                if m > 0 {
                    x = x.add(&weyl_character(&nu).scale(&int(m as i64)));
                    mults.insert(nu, int(m as i64));
                }
            }
            assert_eq!(char_decompose(&x).unwrap(), mults);
        }
    }

    #[test]
    fn decompose_rejects_non_character() {
        let chi2 = weyl_character(&DominantCoweight::nu2());
        let bad = chi2.scale(&int(-1));
        assert!(matches!(
            char_decompose(&bad),
            Err(AlgebraError::NegativeMultiplicity(_))
        ));
    }

}
