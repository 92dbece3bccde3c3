//! Level-raising diagnostics from spherical Hecke eigenvalues: the local
//! Hecke polynomial, the quadratic satisfied by the pair-sums of its
//! roots, the congruence checker, and the symbolic level-raising and
//! supersingular matrices with their determinant evaluations.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::eigen::{is_prime, EigenData};
use crate::error::EigenError;
use crate::mpoly::MPoly;

/// Variable indices for symbolic Hecke matrix entries.
pub mod symbols {
    /// `T0^{-1} T_{p,1}` (with trivial central character, just `T_{p,1}`).
    pub const T0INV_T1: usize = 0;
    /// The raising operator `T_{02}`.
    pub const T02: usize = 1;
    /// The lowering operator `T_{20}`.
    pub const T20: usize = 2;
    /// The residue characteristic as a symbol.
    pub const P: usize = 3;
    /// The composite `T20 ∘ T02`.
    pub const T20_T02: usize = 4;
    /// The composite `T02 ∘ T20`.
    pub const T02_T20: usize = 5;

    pub const NAMES: [&str; 6] = ["T0inv*T1", "T02", "T20", "p", "T20T02", "T02T20"];
}

/// Coefficients of the degree-4 Hecke polynomial, leading term first:
/// `X^4 - a2 X^3 + (p a1 + p^3 + p) X^2 - p^3 a2 X + p^6`.
pub fn hecke_polynomial(e: &EigenData) -> [BigInt; 5] {
    let p = BigInt::from(e.p);
    let p3 = p.pow(3);
    [
        BigInt::from(1),
        -&e.a2,
        &p * &e.a1 + &p3 + &p,
        -&p3 * &e.a2,
        p.pow(6),
    ]
}

/// The monic quadratic `R(Y) = Y^2 - a2 Y + (p a1 + p - p^3)` whose roots
/// are the pair-sums `s_i = root + p^3/root` of the Hecke parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairQuadratic {
    /// `[1, -a2, p*a1 + p - p^3]`, leading term first.
    pub coefficients: [BigInt; 3],
}

impl PairQuadratic {
    pub fn eval(&self, y: &BigInt) -> BigInt {
        let [_, b, c] = &self.coefficients;
        y * y + b * y + c
    }
}

pub fn pair_quadratic(e: &EigenData) -> PairQuadratic {
    let p = BigInt::from(e.p);
    PairQuadratic {
        coefficients: [BigInt::from(1), -&e.a2, &p * &e.a1 + &p - p.pow(3)],
    }
}

/// Pass/fail record for the conditions of the level-raising definition,
/// at a fixed sign `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionFlags {
    /// `ell` does not divide `p^2 - 1`.
    pub ell_coprime: bool,
    /// `R(u(p + p^2)) ≡ 0 mod ell`.
    pub congruence: bool,
    /// The complementary pair-sum stays away from `±(p + p^2) mod ell`.
    pub complementary_noncongruence: bool,
    /// `a2 ≢ ±2(p + p^2) mod ell`.
    pub trace_noncongruence: bool,
}

impl ConditionFlags {
    fn all(&self) -> bool {
        self.ell_coprime && self.congruence && self.complementary_noncongruence
            && self.trace_noncongruence
    }
}

/// Fixed caveat attached to every report: cohomological hypotheses are
/// not visible in eigenvalue data.
pub const ASSUMPTION_CAVEAT: &str = "eigenvalue-only check: the vanishing, rigidity and \
residual-image hypotheses of the underlying theorems are not verified here";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelRaisingReport {
    pub special: bool,
    /// The sign u for which all conditions hold, when special.
    pub u: Option<i32>,
    /// `ell`-adic valuation of `R(u(p+p^2))`, when special.
    pub depth: Option<u32>,
    pub condition_flags: ConditionFlags,
    /// Both displayed non-congruences `R(±(p+p^2)) ≢ 0 mod ell` hold.
    pub generic_nonlr: bool,
    /// Purity advisory only: the pair-sums should obey `|s| <= 2 p^{3/2}`.
    pub weil_bound_ok: bool,
    pub assumption_caveat: &'static str,
}

fn mod_ell(x: &BigInt, ell: u64) -> u64 {
    let ell = BigInt::from(ell);
    let r = x % &ell;
    let r = if r.is_negative() { r + &ell } else { r };
    r.to_u64().expect("residue fits")
}

fn val_ell(mut x: BigInt, ell: u64) -> u32 {
    assert!(!x.is_zero());
    let ell = BigInt::from(ell);
    let mut v = 0u32;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&x, &ell);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// Purity lint: both roots of R real and bounded by `2 p^{3/2}` in
/// absolute value (floating point; advisory only).
fn weil_bound_ok(e: &EigenData, r: &PairQuadratic) -> bool {
    let a2 = match e.a2.to_f64() {
        Some(x) => x,
        None => return false,
    };
    let c0 = match r.coefficients[2].to_f64() {
        Some(x) => x,
        None => return false,
    };
    let disc = a2 * a2 - 4.0 * c0;
    if disc < 0.0 {
        return false;
    }
    let bound = 2.0 * (e.p as f64).powf(1.5) * (1.0 + 1e-9) + 1e-9;
    let sq = disc.sqrt();
    let s1 = (a2 + sq) / 2.0;
    let s2 = (a2 - sq) / 2.0;
    s1.abs() <= bound && s2.abs() <= bound
}

fn flags_for(e: &EigenData, r: &PairQuadratic, ell: u64, u: i32) -> ConditionFlags {
    let p = BigInt::from(e.p);
    let c = &p + &p * &p;
    let uc = if u >= 0 { c.clone() } else { -&c };
    let c_mod = mod_ell(&c, ell);
    let neg_c_mod = (ell - c_mod % ell) % ell;
    let two_c = mod_ell(&(&c * BigInt::from(2)), ell);
    let neg_two_c = (ell - two_c % ell) % ell;
    let comp = mod_ell(&(&e.a2 - &uc), ell);
    let a2_mod = mod_ell(&e.a2, ell);
    ConditionFlags {
        ell_coprime: (e.p * e.p - 1) % ell != 0,
        congruence: mod_ell(&r.eval(&uc), ell) == 0,
        complementary_noncongruence: comp != c_mod && comp != neg_c_mod,
        trace_noncongruence: a2_mod != two_c && a2_mod != neg_two_c,
    }
}

/// Evaluate the level-raising conditions at the odd prime `ell`,
/// scanning both signs `u = ±1` unless a hint is given.
///
/// A pair-sum equal to `u(p+p^2)` exactly (in the integers) makes the
/// depth unbounded and signals a non-tempered input; this is rejected.
pub fn check_level_raising(
    e: &EigenData,
    ell: u64,
    u_hint: Option<i32>,
) -> Result<LevelRaisingReport, EigenError> {
    if ell == 2 || ell == e.p || !is_prime(ell) {
        return Err(EigenError::BadEll(ell));
    }
    let r = pair_quadratic(e);
    let p = BigInt::from(e.p);
    let c = &p + &p * &p;
    let signs: Vec<i32> = match u_hint {
        Some(u) => vec![u.signum()],
        None => vec![1, -1],
    };
    let mut chosen: Option<(i32, ConditionFlags)> = None;
    let mut fallback: Option<(i32, ConditionFlags)> = None;
    for &u in &signs {
        let uc = if u >= 0 { c.clone() } else { -&c };
        if r.eval(&uc).is_zero() {
            return Err(EigenError::NonTempered(u));
        }
        let flags = flags_for(e, &r, ell, u);
        if fallback.is_none() || (flags.congruence && !fallback.as_ref().unwrap().1.congruence) {
            fallback = Some((u, flags));
        }
        if flags.all() && chosen.is_none() {
            chosen = Some((u, flags));
        }
    }
    let generic_nonlr = mod_ell(&r.eval(&c), ell) != 0 && mod_ell(&r.eval(&(-&c)), ell) != 0;
    let weil = weil_bound_ok(e, &r);
    match chosen {
        Some((u, flags)) => {
            let uc = if u >= 0 { c.clone() } else { -&c };
            let depth = val_ell(r.eval(&uc), ell);
            Ok(LevelRaisingReport {
                special: true,
                u: Some(u),
                depth: Some(depth),
                condition_flags: flags,
                generic_nonlr,
                weil_bound_ok: weil,
                assumption_caveat: ASSUMPTION_CAVEAT,
            })
        }
        None => {
            let (_, flags) = fallback.expect("at least one sign scanned");
            Ok(LevelRaisingReport {
                special: false,
                u: None,
                depth: None,
                condition_flags: flags,
                generic_nonlr,
                weil_bound_ok: weil,
                assumption_caveat: ASSUMPTION_CAVEAT,
            })
        }
    }
}

/// Genericity report: the Hecke-parameter part of the generic /
/// level-raising dichotomy at `ell`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericReport {
    /// `R(±(p+p^2)) ≢ 0 mod ell`: no level-raising congruence at all.
    pub generic_nonlr: bool,
    /// The full level-raising conditions hold for some sign.
    pub level_raising: bool,
    pub assumption_caveat: &'static str,
}

pub fn check_generic(e: &EigenData, ell: u64) -> Result<GenericReport, EigenError> {
    if ell == 2 || ell == e.p || !is_prime(ell) {
        return Err(EigenError::BadEll(ell));
    }
    let r = pair_quadratic(e);
    let p = BigInt::from(e.p);
    let c = &p + &p * &p;
    let generic_nonlr = mod_ell(&r.eval(&c), ell) != 0 && mod_ell(&r.eval(&(-&c)), ell) != 0;
    let level_raising = match check_level_raising(e, ell, None) {
        Ok(rep) => rep.special,
        // Non-tempered input can raise no level; not a generic failure
        // worth an exception here.
        Err(EigenError::NonTempered(_)) => false,
        Err(other) => return Err(other),
    };
    Ok(GenericReport {
        generic_nonlr,
        level_raising,
        assumption_caveat: ASSUMPTION_CAVEAT,
    })
}

/// A 2x2 matrix of symbolic Hecke-operator combinations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeMatrix {
    pub entries: [[MPoly; 2]; 2],
}

impl HeckeMatrix {
    pub fn display(&self) -> String {
        let f = |e: &MPoly| e.display(&symbols::NAMES);
        format!(
            "[[{}, {}], [{}, {}]]",
            f(&self.entries[0][0]),
            f(&self.entries[0][1]),
            f(&self.entries[1][0]),
            f(&self.entries[1][1])
        )
    }
}

fn p_poly(p: Option<u64>) -> MPoly {
    match p {
        Some(p) => MPoly::int(p as i64),
        None => MPoly::var(symbols::P),
    }
}

/// The level-raising matrix
/// `-2 [[T0inv*T1 + (p+1)(p^2+1), (p+1) T02], [(p+1) T20, T0inv*T1 + (p+1)(p^2+1)]]`,
/// symbolic in p unless a prime is supplied. The overall factor -2 is the
/// self-intersection number of the cycles being paired.
pub fn lr_matrix(p: Option<u64>) -> HeckeMatrix {
    let pp = p_poly(p);
    let one = MPoly::one();
    let p_plus_1 = &pp + &one;
    let index = &p_plus_1 * &(&(&pp * &pp) + &one);
    let diag = &MPoly::int(-2) * &(&MPoly::var(symbols::T0INV_T1) + &index);
    let off = &MPoly::int(-2) * &p_plus_1;
    HeckeMatrix {
        entries: [
            [diag.clone(), &off * &MPoly::var(symbols::T02)],
            [&off * &MPoly::var(symbols::T20), diag],
        ],
    }
}

/// The supersingular matrix
/// `[[4p^2(p+1)^2 + T20∘T02, -4p(p+1) T02], [-4p(p+1) T20, 4p^2(p+1)^2 + T02∘T20]]`.
pub fn ss_matrix(p: Option<u64>) -> HeckeMatrix {
    let pp = p_poly(p);
    let p_plus_1 = &pp + &MPoly::one();
    let corner = &MPoly::int(4) * &(&(&pp * &pp) * &(&p_plus_1 * &p_plus_1));
    let off = &MPoly::int(-4) * &(&pp * &p_plus_1);
    HeckeMatrix {
        entries: [
            [
                &corner + &MPoly::var(symbols::T20_T02),
                &off * &MPoly::var(symbols::T02),
            ],
            [
                &off * &MPoly::var(symbols::T20),
                &corner + &MPoly::var(symbols::T02_T20),
            ],
        ],
    }
}

/// The composite `T20 ∘ T02` as a spherical operator:
/// `T0inv*T_{p^2,2} + (p+1) T0inv*T_{p,1} + (p^2+1)(p+1)`, which with
/// trivial central character and the Hecke identity equals `T_{p,2}^2`.
/// On eigen-data this is just `a2^2`.
fn composite_on_eigendata(e: &EigenData) -> BigInt {
    &e.a2 * &e.a2
}

/// Determinant of the level-raising matrix on an eigenvector:
/// `4 [(a1 + (p+1)(p^2+1))^2 - (p+1)^2 a2^2]`, with the optional residue
/// mod `ell`.
pub fn det_lr_eval(e: &EigenData, ell: Option<u64>) -> (BigInt, Option<u64>) {
    let p = BigInt::from(e.p);
    let index = (&p + 1) * (&p * &p + 1);
    let lhs = &e.a1 + &index;
    let off = (&p + 1) * &e.a2;
    let det = BigInt::from(4) * (&lhs * &lhs - &off * &off);
    let residue = ell.map(|l| mod_ell(&det, l));
    (det, residue)
}

/// Determinant of the supersingular matrix on an eigenvector:
/// `(a2^2 - 4p^2(p+1)^2)^2`, from
/// `(a2^2 + 4p^2(p+1)^2)^2 - 16 p^2 (p+1)^2 a2^2` with `T20∘T02 = a2^2`.
pub fn det_ss_eval(e: &EigenData, ell: Option<u64>) -> (BigInt, Option<u64>) {
    let p = BigInt::from(e.p);
    let c2 = BigInt::from(4) * &p * &p * (&p + 1) * (&p + 1);
    let a2sq = composite_on_eigendata(e);
    let factor = &a2sq - &c2;
    let det = &factor * &factor;
    let residue = ell.map(|l| mod_ell(&det, l));
    (det, residue)
}
