//! Brute-force coset enumeration: all lattices at a fixed relative
//! position, convolution of double cosets by explicit counting, the
//! numeric Satake transform, and the chain-pattern counts used in the
//! intersection-matrix arguments.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::character::CharacterElement;
use crate::coweight::{DominantCoweight, Weight};
use crate::error::LatticeError;
use crate::hecke::HeckeElement;
use crate::lattice::{
    iwasawa_invariant, position_of_sublattice_matrix, relative_position, PadicLattice, VertexType,
};
use crate::satake::satake_table;
use crate::scalar::Scalar;

/// Hard bound on the coweight spread `a1 - a4` accepted by enumeration.
pub const DEFAULT_WINDOW_BOUND: i64 = 4;

fn pow_i128(p: u64, e: i64) -> i128 {
    (p as i128).pow(e as u32)
}

/// All self-dual-up-to-scaling lattices `L'` with
/// `relative_position(base, L') = mu`, in canonical order.
///
/// The position is normalized so that its last entry vanishes; candidates
/// are then upper-triangular Hermite bases of sublattices of `base`
/// containing `p^{a1} base`, filtered by elementary divisors and
/// self-duality, and shifted back by the central part.
pub fn enumerate_at_position(
    base: &PadicLattice,
    mu: &DominantCoweight,
    window_bound: i64,
) -> Result<Vec<PadicLattice>, LatticeError> {
    let e = mu.entries();
    let spread = e[0] - e[3];
    if spread > window_bound {
        return Err(LatticeError::WindowOverflow {
            spread,
            bound: window_bound,
        });
    }
    let p = base.prime();
    let k = e[3];
    let norm = [e[0] - k, e[1] - k, e[2] - k, 0i64];
    let m = norm[0];
    let total: i64 = norm.iter().sum();
    let mut found: BTreeSet<PadicLattice> = BTreeSet::new();
    if m == 0 {
        found.insert(base.rescale(k));
        return Ok(found.into_iter().collect());
    }

    let base_h = *base.basis();
    let mut diag = [0i64; 4];
    'diag: loop {
        if diag.iter().sum::<i64>() == total {
            collect_candidates(p, &diag, &norm, base, &base_h, k, &mut found)?;
        }
        // Odometer over diagonal exponent tuples in [0, m]^4.
        for i in 0..4 {
            if diag[i] < m {
                diag[i] += 1;
                for d in diag.iter_mut().take(i) {
                    *d = 0;
                }
                continue 'diag;
            }
        }
        break;
    }
    Ok(found.into_iter().collect())
}

/// Enumerate all HNF matrices with the given diagonal p-exponents and
/// keep the lattices matching the normalized position.
fn collect_candidates(
    p: u64,
    diag: &[i64; 4],
    norm: &[i64; 4],
    base: &PadicLattice,
    base_h: &[[i128; 4]; 4],
    shift: i64,
    found: &mut BTreeSet<PadicLattice>,
) -> Result<(), LatticeError> {
    let pivots = [
        pow_i128(p, diag[0]),
        pow_i128(p, diag[1]),
        pow_i128(p, diag[2]),
        pow_i128(p, diag[3]),
    ];
    // Free entries sit above each pivot: (row, col) with row < col,
    // ranging over [0, pivot_col).
    let slots: Vec<(usize, usize)> = (0..4)
        .flat_map(|c| (0..c).map(move |r| (r, c)))
        .filter(|&(_, c)| pivots[c] > 1)
        .collect();
    let mut vals: Vec<i128> = vec![0; slots.len()];
    loop {
        let mut n = [[0i128; 4]; 4];
        for i in 0..4 {
            n[i][i] = pivots[i];
        }
        for (s, &(r, c)) in slots.iter().enumerate() {
            n[r][c] = vals[s];
        }
        if position_of_sublattice_matrix(p, &n)? == *norm {
            // Lift the candidate to ambient coordinates.
            let mut rows = [[0i128; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = 0i128;
                    for t in 0..4 {
                        acc += n[i][t] * base_h[t][j];
                    }
                    rows[i][j] = acc;
                }
            }
            let cand = PadicLattice::from_generators(p, &rows, base.scale() + shift)?;
            if cand.gsp_class().scaling_exponent.is_some() {
                found.insert(cand);
            }
        }
        // Odometer over the free entries.
        let mut done = true;
        for (s, &(_, c)) in slots.iter().enumerate() {
            if vals[s] + 1 < pivots[c] {
                vals[s] += 1;
                for v in vals.iter_mut().take(s) {
                    *v = 0;
                }
                done = false;
                break;
            }
        }
        if done {
            return Ok(());
        }
    }
}

/// Convolution of two double-coset basis elements by explicit counting.
///
/// The coefficient at `lambda` is the number of intermediate lattices
/// `L'` at position `mu` from the base point with `L''` at position `nu`
/// from `L'`, for one fixed representative `L''` at position `lambda`.
pub fn convolve_oracle(
    mu: &DominantCoweight,
    nu: &DominantCoweight,
    p: u64,
    window_bound: i64,
) -> Result<HeckeElement, LatticeError> {
    let base = PadicLattice::standard(p);
    let firsts = enumerate_at_position(&base, mu, window_bound)?;
    // Support discovery: every composite position that actually occurs.
    let mut support: BTreeSet<DominantCoweight> = BTreeSet::new();
    for l1 in &firsts {
        for l2 in enumerate_at_position(l1, nu, window_bound)? {
            support.insert(relative_position(&base, &l2)?);
        }
    }
    let mut out = HeckeElement::zero();
    for lambda in support {
        let fixed = PadicLattice::diagonal(p, lambda.entries());
        debug_assert_eq!(relative_position(&base, &fixed).unwrap(), lambda);
        let mut count: u64 = 0;
        for l1 in &firsts {
            if relative_position(l1, &fixed).ok().as_ref() == Some(nu) {
                count += 1;
            }
        }
        if count > 0 {
            out.add_term(lambda, Scalar::from_bigint(BigInt::from(count)));
        }
    }
    Ok(out)
}

/// Number of lattices in the double coset at `mu` over the standard base
/// point.
pub fn coset_size(mu: &DominantCoweight, p: u64, window_bound: i64) -> Result<u64, LatticeError> {
    Ok(enumerate_at_position(&PadicLattice::standard(p), mu, window_bound)?.len() as u64)
}

fn two_rho_pairing_weight(w: &Weight) -> i64 {
    let [a, b, _, _] = w.entries();
    4 * a + 2 * b - 3 * w.similitude()
}

/// Numeric Satake transform: Iwasawa stratum counts of the coset at `mu`,
/// weighted by `q^{-2<lambda,rho>}`. The sign of the exponent is not
/// assumed; it is pinned by requiring the `nu2` anchor to reproduce
/// `q^3 * chi_{nu2}`.
pub fn satake_oracle(
    mu: &DominantCoweight,
    p: u64,
    window_bound: i64,
) -> Result<CharacterElement, LatticeError> {
    let sign = pin_satake_sign(p, window_bound)?;
    satake_with_sign(mu, p, window_bound, sign)
}

fn satake_with_sign(
    mu: &DominantCoweight,
    p: u64,
    window_bound: i64,
    sign: i64,
) -> Result<CharacterElement, LatticeError> {
    let base = PadicLattice::standard(p);
    let mut strata: BTreeMap<Weight, u64> = BTreeMap::new();
    for l in enumerate_at_position(&base, mu, window_bound)? {
        *strata.entry(iwasawa_invariant(&l)?).or_insert(0) += 1;
    }
    let mut out = CharacterElement::zero();
    for (lambda, count) in strata {
        // The count is a p-power; fold it into the q-exponent exactly.
        let mut coeff = Scalar::from_bigint(BigInt::from(count));
        coeff = &coeff * &Scalar::q_power(sign * two_rho_pairing_weight(&lambda));
        out.add_term(lambda, coeff);
    }
    Ok(out)
}

fn pin_satake_sign(p: u64, window_bound: i64) -> Result<i64, LatticeError> {
    let anchor = satake_table(&DominantCoweight::nu2()).expect("nu2 is in the table span");
    for sign in [-1i64, 1] {
        let got = satake_with_sign(&DominantCoweight::nu2(), p, window_bound, sign)?;
        // Counts are integers, the table has q-monomials; equality holds
        // only in Z[sqrt(p)].
        if got.equals_at_prime(&anchor, p) {
            return Ok(sign);
        }
    }
    Err(LatticeError::SatakeSignUnpinned(p))
}

/// Index valuation `v_p([L : L'])` for `L' ⊆ L`.
fn index_valuation(l: &PadicLattice, sub: &PadicLattice) -> Result<i64, LatticeError> {
    Ok(relative_position(l, sub)?.entries().iter().sum())
}

/// Colength-one sublattices of `base` (index p), as ambient lattices.
fn index_p_sublattices(base: &PadicLattice) -> Vec<PadicLattice> {
    let p = base.prime();
    let h = *base.basis();
    let mut out = Vec::new();
    for piv in 0..4 {
        // HNF with p at one pivot and free entries above it.
        let mut free = vec![0i128; piv];
        loop {
            let mut n = [[0i128; 4]; 4];
            for i in 0..4 {
                n[i][i] = if i == piv { p as i128 } else { 1 };
            }
            for (r, &v) in free.iter().enumerate() {
                n[r][piv] = v;
            }
            let mut rows = [[0i128; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = 0i128;
                    for t in 0..4 {
                        acc += n[i][t] * h[t][j];
                    }
                    rows[i][j] = acc;
                }
            }
            out.push(
                PadicLattice::from_generators(p, &rows, base.scale())
                    .expect("index-p sublattice is full rank"),
            );
            let mut done = true;
            for v in free.iter_mut() {
                if *v + 1 < p as i128 {
                    *v += 1;
                    done = false;
                    break;
                }
                *v = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}

/// Lattices between `lower` and `upper` (inclusive), enumerated through
/// Hermite bases in `upper`-coordinates with pivots 1 or p.
fn lattices_between(
    lower: &PadicLattice,
    upper: &PadicLattice,
) -> Result<Vec<PadicLattice>, LatticeError> {
    let p = upper.prime();
    let h = *upper.basis();
    let mut out = Vec::new();
    for mask in 0u32..16 {
        let pivots: Vec<i128> = (0..4)
            .map(|i| if mask & (1 << i) != 0 { p as i128 } else { 1 })
            .collect();
        let slots: Vec<(usize, usize)> = (0..4)
            .flat_map(|c| (0..c).map(move |r| (r, c)))
            .filter(|&(_, c)| pivots[c] > 1)
            .collect();
        let mut vals = vec![0i128; slots.len()];
        loop {
            let mut n = [[0i128; 4]; 4];
            for i in 0..4 {
                n[i][i] = pivots[i];
            }
            for (s, &(r, c)) in slots.iter().enumerate() {
                n[r][c] = vals[s];
            }
            let mut rows = [[0i128; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = 0i128;
                    for t in 0..4 {
                        acc += n[i][t] * h[t][j];
                    }
                    rows[i][j] = acc;
                }
            }
            let cand = PadicLattice::from_generators(p, &rows, upper.scale())?;
            if cand.contains(lower) {
                out.push(cand);
            }
            let mut done = true;
            for (s, &(_, c)) in slots.iter().enumerate() {
                if vals[s] + 1 < pivots[c] {
                    vals[s] += 1;
                    for v in vals.iter_mut().take(s) {
                        *v = 0;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    Ok(out)
}

/// Exact counts of the finite incidence configurations appearing in the
/// intersection-matrix computations.
///
/// Recognized patterns:
/// - `kl-index`, `type1-under-type0`: index-p sublattices of the standard
///   lattice that are paramodular (type 1).
/// - `sie-index`: isotropic 2-planes in the 4-dimensional symplectic
///   space over F_p.
/// - `type2-under-type1`: colength-one type-2 sublattices of a fixed
///   paramodular lattice.
/// - `lines-in-2-space`: lines in a 2-dimensional F_p-space.
/// - `type2-between-type0-pairs(d)` for d in {0,2,4}: type-2 lattices
///   sandwiched between a pair of hyperspecial lattices whose
///   intersection quotient has dimension d.
pub fn count_chain_pattern(pattern: &str, p: u64) -> Result<u64, LatticeError> {
    match pattern {
        "kl-index" | "type1-under-type0" => {
            let base = PadicLattice::standard(p);
            Ok(index_p_sublattices(&base)
                .iter()
                .filter(|l| l.vertex_type() == VertexType::Type1)
                .count() as u64)
        }
        "sie-index" => Ok(count_isotropic_planes(p)),
        "type2-under-type1" => {
            // The paramodular lattice span(e1, e2, e3, p*e4).
            let para = PadicLattice::from_generators(
                p,
                &[
                    [1, 0, 0, 0],
                    [0, 1, 0, 0],
                    [0, 0, 1, 0],
                    [0, 0, 0, p as i128],
                ],
                0,
            )
            .expect("paramodular basis");
            debug_assert_eq!(para.vertex_type(), VertexType::Type1);
            Ok(index_p_sublattices(&para)
                .iter()
                .filter(|l| l.vertex_type() == VertexType::Type2)
                .count() as u64)
        }
        "lines-in-2-space" => {
            // Canonical representatives (1, t) and (0, 1) over F_p.
            let mut count = 0u64;
            for x in 0..p {
                for y in 0..p {
                    if (x, y) == (0, 0) {
                        continue;
                    }
                    let normalized = x == 1 || (x == 0 && y == 1);
                    if normalized {
                        count += 1;
                    }
                }
            }
            Ok(count)
        }
        _ => {
            if let Some(d) = pattern
                .strip_prefix("type2-between-type0-pairs(")
                .and_then(|s| s.strip_suffix(')'))
            {
                let d: i64 = d
                    .parse()
                    .map_err(|_| LatticeError::UnknownPattern(pattern.to_string()))?;
                count_type2_between(p, d).ok_or(LatticeError::UnknownPattern(pattern.to_string()))
            } else {
                Err(LatticeError::UnknownPattern(pattern.to_string()))
            }
        }
    }
}

fn count_isotropic_planes(p: u64) -> u64 {
    // Reduced row-echelon bases of 2-planes in F_p^4, with the pairing
    // <x,y> = x1 y4 - x4 y1 + x2 y3 - x3 y2.
    let pi = p as i64;
    let pair = |x: &[i64; 4], y: &[i64; 4]| -> i64 {
        (x[0] * y[3] - x[3] * y[0] + x[1] * y[2] - x[2] * y[1]).rem_euclid(pi)
    };
    let mut count = 0u64;
    // Pivot columns c1 < c2; free entries elsewhere.
    for c1 in 0..4usize {
        for c2 in c1 + 1..4 {
            let free1: Vec<usize> = (0..4).filter(|&j| j > c1 && j != c2).collect();
            let free2: Vec<usize> = (0..4).filter(|&j| j > c2).collect();
            let nfree = free1.len() + free2.len();
            let total = pi.pow(nfree as u32);
            for code in 0..total {
                let mut r1 = [0i64; 4];
                let mut r2 = [0i64; 4];
                r1[c1] = 1;
                r2[c2] = 1;
                let mut rem = code;
                for &j in &free1 {
                    r1[j] = rem % pi;
                    rem /= pi;
                }
                for &j in &free2 {
                    r2[j] = rem % pi;
                    rem /= pi;
                }
                if pair(&r1, &r2) == 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

fn count_type2_between(p: u64, d: i64) -> Option<u64> {
    let base = PadicLattice::standard(p);
    let partner = match d {
        0 => PadicLattice::diagonal(p, [1, 1, -1, -1]),
        2 => PadicLattice::diagonal(p, [1, 0, 0, -1]),
        4 => base.clone(),
        _ => return None,
    };
    debug_assert_eq!(partner.vertex_type(), VertexType::Type0);
    let upper = base.intersect(&partner);
    let lower = base.rescale(1).sum(&partner.rescale(1));
    let mut count = 0u64;
    for cand in lattices_between(&lower, &upper).ok()? {
        if cand.vertex_type() != VertexType::Type2 {
            continue;
        }
        // Colength 2 in each hyperspecial neighbour.
        if index_valuation(&base, &cand).ok()? == 2 && index_valuation(&partner, &cand).ok()? == 2 {
            count += 1;
        }
    }
    Some(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_coset_is_a_point() {
        let base = PadicLattice::standard(2);
        let got = enumerate_at_position(&base, &DominantCoweight::nu0(), 4).unwrap();
        assert_eq!(got, vec![base.rescale(1)]);
    }

    #[test]
    fn nu2_coset_sizes() {
        assert_eq!(coset_size(&DominantCoweight::nu2(), 2, 4).unwrap(), 15);
        assert_eq!(coset_size(&DominantCoweight::nu2(), 3, 4).unwrap(), 40);
    }

    #[test]
    fn window_bound_enforced() {
        let mu = DominantCoweight::new([5, 3, 2, 0]).unwrap();
        assert!(matches!(
            enumerate_at_position(&PadicLattice::standard(2), &mu, 4),
            Err(LatticeError::WindowOverflow { spread: 5, bound: 4 })
        ));
    }

    #[test]
    fn enumeration_respects_position() {
        let base = PadicLattice::standard(2);
        for mu in [DominantCoweight::nu2(), DominantCoweight::nu1()] {
            for l in enumerate_at_position(&base, &mu, 4).unwrap() {
                assert_eq!(relative_position(&base, &l).unwrap(), mu);
                assert!(l.gsp_class().scaling_exponent.is_some());
            }
        }
    }

    #[test]
    fn enumeration_is_basepoint_covariant() {
        // The coset over a shifted or transformed base has the same size.
        let mu = DominantCoweight::nu2();
        let n = coset_size(&mu, 2, 4).unwrap();
        for base in [
            PadicLattice::standard(2).rescale(-1),
            PadicLattice::diagonal(2, [1, 0, 0, -1]),
        ] {
            let got = enumerate_at_position(&base, &mu, 4).unwrap();
            assert_eq!(got.len() as u64, n);
            for l in &got {
                assert_eq!(relative_position(&base, l).unwrap(), mu);
            }
        }
    }

    #[test]
    fn convolution_nu2_squared_p2() {
        let h = convolve_oracle(&DominantCoweight::nu2(), &DominantCoweight::nu2(), 2, 4).unwrap();
        assert_eq!(h.coeff(&DominantCoweight::two_nu2()), Scalar::from_int(1));
        assert_eq!(h.coeff(&DominantCoweight::nu1()), Scalar::from_int(3));
        assert_eq!(h.coeff(&DominantCoweight::nu0()), Scalar::from_int(15));
        assert_eq!(h.support_size(), 3);
    }

    #[test]
    fn convolution_with_central_is_translation() {
        let h = convolve_oracle(&DominantCoweight::nu0(), &DominantCoweight::nu2(), 2, 4).unwrap();
        let shifted = DominantCoweight::new([2, 2, 1, 1]).unwrap();
        assert_eq!(h.coeff(&shifted), Scalar::from_int(1));
        assert_eq!(h.support_size(), 1);
    }

    #[test]
    fn convolution_commutes() {
        let mu = DominantCoweight::nu2();
        let nu = DominantCoweight::nu1();
        let a = convolve_oracle(&mu, &nu, 2, 4).unwrap();
        let b = convolve_oracle(&nu, &mu, 2, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mass_is_multiplicative() {
        let mu = DominantCoweight::nu2();
        let nu = DominantCoweight::nu2();
        let h = convolve_oracle(&mu, &nu, 2, 4).unwrap();
        let mut mass = 0u64;
        for (lambda, c) in h.iter() {
            let n = coset_size(lambda, 2, 4).unwrap();
            let coeff: u64 = c.to_string().parse().expect("integer coefficient");
            mass += coeff * n;
        }
        assert_eq!(mass, coset_size(&mu, 2, 4).unwrap() * coset_size(&nu, 2, 4).unwrap());
    }

    #[test]
    fn basepoint_independence_of_coefficients() {
        // The counting coefficient must not depend on which representative
        // of the target coset is fixed.
        let p = 2;
        let base = PadicLattice::standard(p);
        let mu = DominantCoweight::nu2();
        let firsts = enumerate_at_position(&base, &mu, 4).unwrap();
        let lambda = DominantCoweight::nu1();
        let reps = enumerate_at_position(&base, &lambda, 4).unwrap();
        assert!(reps.len() >= 3);
        let mut counts = BTreeSet::new();
        for rep in reps.iter().take(5) {
            let c = firsts
                .iter()
                .filter(|l| relative_position(l, rep).ok().as_ref() == Some(&mu))
                .count();
            counts.insert(c);
        }
        assert_eq!(counts.len(), 1);
        assert_eq!(counts.into_iter().next().unwrap(), 3);
    }

    #[test]
    fn satake_oracle_strata_at_nu2() {
        // Raw Iwasawa strata of the nu2 coset at p=2.
        let base = PadicLattice::standard(2);
        let mut strata: BTreeMap<Weight, u64> = BTreeMap::new();
        for l in enumerate_at_position(&base, &DominantCoweight::nu2(), 4).unwrap() {
            *strata.entry(iwasawa_invariant(&l).unwrap()).or_insert(0) += 1;
        }
        let expect = [
            (Weight([1, 1, 0, 0]), 8u64),
            (Weight([1, 0, 1, 0]), 4),
            (Weight([0, 1, 0, 1]), 2),
            (Weight([0, 0, 1, 1]), 1),
        ];
        for (w, n) in expect {
            assert_eq!(strata.get(&w), Some(&n), "stratum {}", w);
        }
        assert_eq!(strata.len(), 4);
    }

    #[test]
    fn satake_oracle_matches_table_at_p2() {
        for mu in [
            DominantCoweight::nu0(),
            DominantCoweight::nu2(),
            DominantCoweight::nu1(),
        ] {
            let got = satake_oracle(&mu, 2, 4).unwrap();
            assert!(
                got.equals_at_prime(&satake_table(&mu).unwrap(), 2),
                "at {}",
                mu
            );
        }
    }

    #[test]
    fn chain_counts() {
        for p in [2u64, 3, 5] {
            let expect = (p + 1) * (p * p + 1);
            assert_eq!(count_chain_pattern("kl-index", p).unwrap(), expect);
            assert_eq!(count_chain_pattern("sie-index", p).unwrap(), expect);
            assert_eq!(count_chain_pattern("type1-under-type0", p).unwrap(), expect);
            assert_eq!(count_chain_pattern("lines-in-2-space", p).unwrap(), p + 1);
        }
    }

    #[test]
    fn chain_counts_type2_chains() {
        for p in [2u64, 3] {
            assert_eq!(count_chain_pattern("type2-under-type1", p).unwrap(), p + 1);
            assert_eq!(
                count_chain_pattern("type2-between-type0-pairs(0)", p).unwrap(),
                1
            );
            assert_eq!(
                count_chain_pattern("type2-between-type0-pairs(2)", p).unwrap(),
                p + 1
            );
            assert_eq!(
                count_chain_pattern("type2-between-type0-pairs(4)", p).unwrap(),
                (p + 1) * (p * p + 1)
            );
        }
    }

    #[test]
    fn unknown_pattern_rejected() {
        assert!(matches!(
            count_chain_pattern("no-such-pattern", 2),
            Err(LatticeError::UnknownPattern(_))
        ));
        assert!(matches!(
            count_chain_pattern("type2-between-type0-pairs(3)", 2),
            Err(LatticeError::UnknownPattern(_))
        ));
    }
}
