//! Property suites: algebraic laws of the exact scalar ring, Weyl
//! combinatorics, lattice canonical forms, and the counting oracles.
//! Randomized sweeps use proptest (universally true properties) or a
//! fixed-seed linear congruential generator (expensive counting checks).

use std::collections::BTreeSet;

use proptest::prelude::*;

use gsp4_hecke::lattice::relative_position;
use gsp4_hecke::{
    convolve_oracle, coset_size, dominance_leq, enumerate_at_position, satake_table, weyl_character,
    weyl_orbit, DominantCoweight, PadicLattice, Scalar, Weight,
};

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    proptest::collection::vec((-6i64..=6, -9i64..=9), 0..5).prop_map(|terms| {
        let mut s = Scalar::zero();
        for (e, c) in terms {
            s += &Scalar::monomial(e, c.into());
        }
        s
    })
}

fn weight_strategy() -> impl Strategy<Value = Weight> {
    // (a1, a2, a3) free, a4 forced by the similitude relation.
    (-4i64..=4, -4i64..=4, -4i64..=4)
        .prop_map(|(a, b, c)| Weight::new([a, b, c, b + c - a]).unwrap())
}

proptest! {
    #[test]
    fn scalar_ring_laws(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
    }

    #[test]
    fn dominant_representative_is_idempotent_and_in_orbit(w in weight_strategy()) {
        let d = w.dominant_representative();
        prop_assert_eq!(d.weight().dominant_representative(), d);
        prop_assert!(weyl_orbit(&d.weight()).contains(&w));
    }

    #[test]
    fn dominance_is_a_partial_order(w in weight_strategy(), v in weight_strategy()) {
        let a = w.dominant_representative();
        let b = v.dominant_representative();
        prop_assert!(dominance_leq(&a, &a));
        if dominance_leq(&a, &b) && dominance_leq(&b, &a) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn weyl_characters_are_invariant(w in weight_strategy()) {
        let nu = w.dominant_representative();
        prop_assert!(weyl_character(&nu).is_weyl_invariant());
    }

    #[test]
    fn satake_table_values_are_invariant(k in -3i64..=3) {
        // Every character element produced by the table is W-invariant.
        for nu in [
            DominantCoweight::central(k),
            DominantCoweight::nu2(),
            DominantCoweight::nu1(),
            DominantCoweight::two_nu2(),
        ] {
            prop_assert!(satake_table(&nu).unwrap().is_weyl_invariant());
        }
    }
}

/// Deterministic generator for the expensive sweeps.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn range(&mut self, lo: i128, hi: i128) -> i128 {
        lo + (self.next() as i128) % (hi - lo + 1)
    }
}

const SEED: u64 = 0x5eed_4c47_7e57_0001;

#[test]
fn canonical_form_is_independent_of_generators() {
    // Random unimodular rewrites of a basis canonicalize identically.
    let mut rng = Lcg(SEED);
    for p in [2u64, 3] {
        for _ in 0..40 {
            let exps = [
                rng.range(0, 2) as i64,
                rng.range(0, 2) as i64,
                rng.range(0, 2) as i64,
                rng.range(0, 2) as i64,
            ];
            let l = PadicLattice::diagonal(p, exps);
            let mut rows: Vec<[i128; 4]> = l.basis().to_vec();
            // Row shuffles and additions preserve the span.
            for _ in 0..8 {
                let i = rng.range(0, 3) as usize;
                let j = rng.range(0, 3) as usize;
                if i != j {
                    let c = rng.range(-3, 3);
                    for k in 0..4 {
                        let add = c * rows[j][k];
                        rows[i][k] += add;
                    }
                }
            }
            let again = PadicLattice::from_generators(p, &rows, l.scale()).unwrap();
            assert_eq!(again, l);
            // Idempotence: canonical basis re-canonicalizes to itself.
            let twice =
                PadicLattice::from_generators(p, &again.basis().to_vec(), again.scale()).unwrap();
            assert_eq!(twice, again);
        }
    }
}

#[test]
fn dual_is_involutive_on_random_lattices() {
    let mut rng = Lcg(SEED ^ 0xdead);
    for p in [2u64, 3] {
        for _ in 0..40 {
            let mut rows = [[0i128; 4]; 4];
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = (p as i128).pow(rng.range(0, 2) as u32);
                for v in row.iter_mut().skip(i + 1) {
                    *v = rng.range(0, p as i128 - 1);
                }
            }
            let l = PadicLattice::from_generators(p, &rows, rng.range(-1, 1) as i64).unwrap();
            assert_eq!(l.dual().dual(), l);
        }
    }
}

#[test]
fn relative_position_inverts_correctly() {
    let mut rng = Lcg(SEED ^ 0xbeef);
    for p in [2u64, 3] {
        let base = PadicLattice::standard(p);
        for _ in 0..30 {
            let a1 = rng.range(0, 2) as i64;
            let a2 = rng.range(0, a1 as i128) as i64;
            let c = rng.range(0, 2) as i64 + a1;
            let tuple = [a1, a2, c - a2, c - a1];
            let Ok(mu) = DominantCoweight::new(tuple) else {
                continue;
            };
            let l = PadicLattice::diagonal(p, mu.entries());
            let fwd = relative_position(&base, &l).unwrap();
            let bwd = relative_position(&l, &base).unwrap();
            assert_eq!(fwd, mu);
            assert_eq!(bwd, mu.inverse_position());
        }
    }
}

#[test]
fn convolution_commutes_on_small_pairs() {
    let pairs = [
        (2u64, DominantCoweight::nu2(), DominantCoweight::nu1()),
        (2, DominantCoweight::nu2(), DominantCoweight::nu0()),
        (3, DominantCoweight::nu2(), DominantCoweight::nu0()),
        (3, DominantCoweight::nu0(), DominantCoweight::nu1()),
    ];
    for (p, mu, nu) in &pairs {
        let a = convolve_oracle(mu, nu, *p, 4).unwrap();
        let b = convolve_oracle(nu, mu, *p, 4).unwrap();
        assert_eq!(a, b, "p={} mu={} nu={}", p, mu, nu);
    }
}

#[test]
fn convolution_mass_is_multiplicative() {
    for (p, mu, nu) in [
        (2u64, DominantCoweight::nu2(), DominantCoweight::nu2()),
        (3, DominantCoweight::nu2(), DominantCoweight::nu2()),
        (2, DominantCoweight::nu2(), DominantCoweight::nu1()),
    ] {
        {
            let h = convolve_oracle(&mu, &nu, p, 4).unwrap();
            let mut mass = 0u64;
            for (lambda, c) in h.iter() {
                let coeff: u64 = c.coeff(0).try_into().expect("integer coefficient");
                mass += coeff * coset_size(lambda, p, 4).unwrap();
            }
            assert_eq!(
                mass,
                coset_size(&mu, p, 4).unwrap() * coset_size(&nu, p, 4).unwrap(),
                "p={} mu={} nu={}",
                p,
                mu,
                nu
            );
        }
    }
}

#[test]
fn convolution_coefficients_are_basepoint_independent() {
    // At least three representatives of each target coset give the same
    // incidence count.
    for p in [2u64, 3] {
        let base = PadicLattice::standard(p);
        let mu = DominantCoweight::nu2();
        let firsts = enumerate_at_position(&base, &mu, 4).unwrap();
        for lambda in [DominantCoweight::nu1(), DominantCoweight::two_nu2()] {
            let reps = enumerate_at_position(&base, &lambda, 4).unwrap();
            assert!(reps.len() >= 3);
            let mut counts = BTreeSet::new();
            for rep in reps.iter().take(3) {
                let c = firsts
                    .iter()
                    .filter(|l| relative_position(l, rep).ok().as_ref() == Some(&mu))
                    .count();
                counts.insert(c);
            }
            assert_eq!(counts.len(), 1, "p={} lambda={}", p, lambda);
        }
    }
}
