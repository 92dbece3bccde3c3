//! Full-rank lattices in the standard 4-dimensional symplectic space over
//! the p-adic rationals, stored in a canonical reduced basis.
//!
//! A lattice is represented as `p^scale * M` where `M` is the Z_p-span of
//! the rows of a 4x4 integer matrix in Hermite normal form, saturated so
//! that its index in `Z^4` is a p-power, and primitive (not every entry
//! divisible by p). Two bases of the same lattice canonicalize to the same
//! representative.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coweight::{DominantCoweight, Weight};
use crate::error::LatticeError;

/// The antisymmetric form J: `J(e1,e4) = J(e2,e3) = 1`,
/// `J(e3,e2) = J(e4,e1) = -1`.
pub const FORM_J: [[i128; 4]; 4] = [
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, -1, 0, 0],
    [-1, 0, 0, 0],
];

/// Vertex-lattice type per the colength of `Lambda` in its integral dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexType {
    /// `p L^v subset^4 L subset^0 L^v` (hyperspecial).
    Type0,
    /// `p L^v subset^2 L subset^2 L^v` (paramodular).
    Type1,
    /// `p L^v subset^0 L subset^4 L^v` (the other hyperspecial).
    Type2,
    /// Not a vertex lattice after rescaling.
    None,
}

/// Self-duality class: `L^v = p^{-c} L` when present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GspClass {
    pub scaling_exponent: Option<i64>,
}

/// A full-rank lattice in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PadicLattice {
    p: u64,
    scale: i64,
    basis: [[i128; 4]; 4],
}

pub(crate) fn valp(p: u64, mut n: i128) -> Option<i64> {
    if n == 0 {
        return None;
    }
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

fn valp_big(p: u64, n: &BigInt) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut n = n.abs();
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

fn pow_i128(p: u64, e: i64) -> i128 {
    (p as i128).pow(e as u32)
}

/// Row-style Hermite normal form of a full-rank set of integer generators.
/// Pivots are positive and entries above each pivot are reduced into
/// `[0, pivot)`.
fn hnf(rows: &[[i128; 4]]) -> Result<[[i128; 4]; 4], LatticeError> {
    let mut m: Vec<[i128; 4]> = rows.to_vec();
    let mut rank = 0usize;
    for col in 0..4 {
        // Gcd elimination below the current rank.
        loop {
            let mut pivot: Option<usize> = None;
            for i in rank..m.len() {
                if m[i][col] != 0 {
                    pivot = match pivot {
                        Some(j) if m[j][col].abs() <= m[i][col].abs() => Some(j),
                        _ => Some(i),
                    };
                }
            }
            let Some(piv) = pivot else { break };
            m.swap(rank, piv);
            let mut reduced_any = false;
            for i in rank + 1..m.len() {
                if m[i][col] != 0 {
                    let q = m[i][col].div_euclid(m[rank][col]);
                    for k in 0..4 {
                        m[i][k] -= q * m[rank][k];
                    }
                    reduced_any = reduced_any || m[i][col] != 0;
                }
            }
            if !reduced_any {
                break;
            }
        }
        if rank < m.len() && m[rank][col] != 0 {
            if m[rank][col] < 0 {
                for k in 0..4 {
                    m[rank][k] = -m[rank][k];
                }
            }
            // Reduce the entries above the pivot.
            for i in 0..rank {
                let q = m[i][col].div_euclid(m[rank][col]);
                for k in 0..4 {
                    m[i][k] -= q * m[rank][k];
                }
            }
            rank += 1;
        }
    }
    if rank != 4 {
        return Err(LatticeError::SingularBasis);
    }
    let mut out = [[0i128; 4]; 4];
    for i in 0..4 {
        out[i] = m[i];
    }
    Ok(out)
}

fn det4(m: &[[i128; 4]; 4]) -> i128 {
    let minor3 = |r: [usize; 3], c: [usize; 3]| -> i128 {
        m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
            - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
            + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
    };
    let mut det = 0i128;
    for j in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
        let sub = minor3([1, 2, 3], [cols[0], cols[1], cols[2]]);
        let term = m[0][j] * sub;
        det += if j % 2 == 0 { term } else { -term };
    }
    det
}

/// Adjugate matrix, so `m * adj(m) = det(m) * I`.
fn adjugate(m: &[[i128; 4]; 4]) -> [[i128; 4]; 4] {
    let mut adj = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let rows: Vec<usize> = (0..4).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
            let sub = m[rows[0]][cols[0]]
                * (m[rows[1]][cols[1]] * m[rows[2]][cols[2]]
                    - m[rows[1]][cols[2]] * m[rows[2]][cols[1]])
                - m[rows[0]][cols[1]]
                    * (m[rows[1]][cols[0]] * m[rows[2]][cols[2]]
                        - m[rows[1]][cols[2]] * m[rows[2]][cols[0]])
                + m[rows[0]][cols[2]]
                    * (m[rows[1]][cols[0]] * m[rows[2]][cols[1]]
                        - m[rows[1]][cols[1]] * m[rows[2]][cols[0]]);
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            // Adjugate is the transpose of the cofactor matrix.
            adj[j][i] = sign * sub;
        }
    }
    adj
}

fn mat_mul(a: &[[i128; 4]; 4], b: &[[i128; 4]; 4]) -> [[i128; 4]; 4] {
    let mut out = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0i128;
            for k in 0..4 {
                acc += a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

impl PadicLattice {
    /// The standard lattice `Lambda = Z_p^4`.
    pub fn standard(p: u64) -> Self {
        let mut basis = [[0i128; 4]; 4];
        for i in 0..4 {
            basis[i][i] = 1;
        }
        PadicLattice { p, scale: 0, basis }
    }

    /// Build the lattice spanned by `p^scale` times the given generator
    /// rows (at least 4, full rank). Generators need not be reduced.
    pub fn from_generators(
        p: u64,
        rows: &[[i128; 4]],
        scale: i64,
    ) -> Result<Self, LatticeError> {
        let h0 = hnf(rows)?;
        // Saturate at primes away from p: the Z_p-span is unchanged by
        // adjoining p^m * e_i where p^m is the p-part of the index.
        let d = det4(&h0).abs();
        let m = valp(p, d).expect("nonzero determinant");
        let pm = pow_i128(p, m);
        let mut gens: Vec<[i128; 4]> = h0.to_vec();
        for i in 0..4 {
            let mut e = [0i128; 4];
            e[i] = pm;
            gens.push(e);
        }
        let mut basis = hnf(&gens)?;
        let mut scale = scale;
        // Primitivity: factor out common powers of p into the scale.
        let pi = p as i128;
        loop {
            let all_div = basis
                .iter()
                .flatten()
                .all(|&x| x == 0 || x % pi == 0);
            if !all_div {
                break;
            }
            for row in basis.iter_mut() {
                for x in row.iter_mut() {
                    *x /= pi;
                }
            }
            scale += 1;
        }
        Ok(PadicLattice { p, scale, basis })
    }

    /// Build from basis columns scaled by `p^{-denom_exp}`; this matches
    /// the usual "matrix times the standard lattice" description.
    pub fn from_cols(
        p: u64,
        cols: &[[i128; 4]; 4],
        denom_exp: i64,
    ) -> Result<Self, LatticeError> {
        let mut rows = [[0i128; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                rows[j][i] = cols[i][j];
            }
        }
        // Here cols[j] is the j-th basis vector; rows are its transpose.
        PadicLattice::from_generators(p, &rows, -denom_exp)
    }

    /// Diagonal lattice `diag(p^{e1},...,p^{e4}) * Lambda`.
    pub fn diagonal(p: u64, exps: [i64; 4]) -> Self {
        let min = *exps.iter().min().unwrap();
        let mut rows = [[0i128; 4]; 4];
        for i in 0..4 {
            rows[i][i] = pow_i128(p, exps[i] - min);
        }
        PadicLattice::from_generators(p, &rows, min).expect("diagonal is nonsingular")
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn basis(&self) -> &[[i128; 4]; 4] {
        &self.basis
    }

    /// `p^k * L`.
    pub fn rescale(&self, k: i64) -> Self {
        PadicLattice {
            p: self.p,
            scale: self.scale + k,
            basis: self.basis,
        }
    }

    /// p-valuation of the index `[Z_p^4 : M]` of the primitive part.
    fn index_val(&self) -> i64 {
        valp(self.p, det4(&self.basis).abs()).expect("full rank")
    }

    /// Membership of `p^e * v` (v integral) in this lattice.
    pub fn contains_vector(&self, v: &[i128; 4], e: i64) -> bool {
        // v * adj(H) has all entries with valuation >= m - (e - scale)
        // iff p^e v lies in p^scale * span(H).
        let adj = adjugate(&self.basis);
        let m = self.index_val();
        let shift = e - self.scale;
        for j in 0..4 {
            let mut acc = BigInt::zero();
            for k in 0..4 {
                acc += BigInt::from(v[k]) * BigInt::from(adj[k][j]);
            }
            match valp_big(self.p, &acc) {
                None => {}
                Some(val) => {
                    if val + shift < m {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `other` is a sublattice of `self`.
    pub fn contains(&self, other: &PadicLattice) -> bool {
        other
            .basis
            .iter()
            .all(|row| self.contains_vector(row, other.scale))
    }

    /// Integral dual with respect to the form J:
    /// `{x : J(x, L) in Z_p}`. Involutive.
    pub fn dual(&self) -> PadicLattice {
        // For row basis B = p^s H, the dual has row basis ((H J)^T)^{-1}
        // scaled by p^{-s}.
        let a = mat_mul(&self.basis, &FORM_J);
        let mut at = [[0i128; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                at[i][j] = a[j][i];
            }
        }
        let adj = adjugate(&at);
        let d = det4(&at);
        let m = valp(self.p, d.abs()).expect("full rank");
        let mut rows: Vec<[i128; 4]> = Vec::with_capacity(4);
        for i in 0..4 {
            rows.push(adj[i]);
        }
        PadicLattice::from_generators(self.p, &rows, -self.scale - m)
            .expect("dual of a full-rank lattice is full rank")
    }

    /// Sum `L1 + L2` (smallest lattice containing both).
    pub fn sum(&self, other: &PadicLattice) -> PadicLattice {
        let s = self.scale.min(other.scale);
        let mut rows: Vec<[i128; 4]> = Vec::with_capacity(8);
        let lift = |basis: &[[i128; 4]; 4], from: i64, rows: &mut Vec<[i128; 4]>| {
            let f = pow_i128(self.p, from - s);
            for r in basis {
                let mut v = [0i128; 4];
                for k in 0..4 {
                    v[k] = r[k] * f;
                }
                rows.push(v);
            }
        };
        lift(&self.basis, self.scale, &mut rows);
        lift(&other.basis, other.scale, &mut rows);
        PadicLattice::from_generators(self.p, &rows, s).expect("sum is full rank")
    }

    /// Intersection `L1 ∩ L2`, via duality: `(A + B)^v = A^v ∩ B^v`.
    pub fn intersect(&self, other: &PadicLattice) -> PadicLattice {
        self.dual().sum(&other.dual()).dual()
    }

    /// Scaling exponent `c` with `L^v = p^{-c} L`, when self-dual up to
    /// p-power scaling.
    pub fn gsp_class(&self) -> GspClass {
        let d = self.dual();
        if d.basis == self.basis {
            GspClass {
                scaling_exponent: Some(self.scale - d.scale),
            }
        } else {
            GspClass {
                scaling_exponent: None,
            }
        }
    }

    /// Vertex type after rescaling so that `p L^v subset L subset L^v`.
    pub fn vertex_type(&self) -> VertexType {
        // Minimal t making the form integral on p^t L.
        let gram = mat_mul(&mat_mul(&self.basis, &FORM_J), &transpose(&self.basis));
        let vmin = gram
            .iter()
            .flatten()
            .filter_map(|&x| valp(self.p, x))
            .min();
        let Some(vmin) = vmin else {
            return VertexType::None; // degenerate form cannot happen for full rank
        };
        let total = vmin + 2 * self.scale;
        // Need 2t + total >= 0 minimal: t = ceil(-total / 2).
        let t = (-total).div_euclid(2) + if (-total).rem_euclid(2) != 0 { 1 } else { 0 };
        let m = self.rescale(t);
        let mdual = m.dual();
        if !mdual.contains(&m) || !m.contains(&mdual.rescale(1)) {
            return VertexType::None;
        }
        // Colength of M in M^v from the index valuations.
        let k = (4 * m.scale + m.index_val()) - (4 * mdual.scale + mdual.index_val());
        match k {
            0 => VertexType::Type0,
            2 => VertexType::Type1,
            4 => VertexType::Type2,
            _ => VertexType::None,
        }
    }

    /// Both classifications at once.
    pub fn classify(&self) -> (GspClass, VertexType) {
        (self.gsp_class(), self.vertex_type())
    }
}

fn transpose(m: &[[i128; 4]; 4]) -> [[i128; 4]; 4] {
    let mut out = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[j][i];
        }
    }
    out
}

/// Elementary-divisor valuations of an integer matrix, largest first,
/// computed from gcds of k x k minors with exact big-integer arithmetic.
fn elementary_divisor_vals_big(p: u64, n: &[[BigInt; 4]; 4]) -> Result<[i64; 4], LatticeError> {
    let mut dvals = [0i64; 5];
    for k in 1..=4usize {
        let mut best: Option<i64> = None;
        for rows in subsets(k) {
            for cols in subsets(k) {
                let m = minor_big(n, &rows, &cols);
                if let Some(v) = valp_big(p, &m) {
                    best = Some(match best {
                        Some(b) => b.min(v),
                        None => v,
                    });
                    if best == Some(0) {
                        break;
                    }
                }
            }
        }
        let Some(b) = best else {
            return Err(LatticeError::SingularBasis);
        };
        dvals[k] = b;
    }
    let mut a = [0i64; 4];
    for k in 1..=4 {
        a[k - 1] = dvals[k] - dvals[k - 1];
    }
    // Determinantal divisors give ascending elementary divisors.
    a.reverse();
    Ok(a)
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..16 {
        if mask.count_ones() as usize == k {
            out.push((0..4).filter(|&i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

fn minor_big(n: &[[BigInt; 4]; 4], rows: &[usize], cols: &[usize]) -> BigInt {
    match rows.len() {
        1 => n[rows[0]][cols[0]].clone(),
        2 => {
            &n[rows[0]][cols[0]] * &n[rows[1]][cols[1]]
                - &n[rows[0]][cols[1]] * &n[rows[1]][cols[0]]
        }
        3 => {
            let det2 = |r1: usize, r2: usize, c1: usize, c2: usize| {
                &n[r1][c1] * &n[r2][c2] - &n[r1][c2] * &n[r2][c1]
            };
            &n[rows[0]][cols[0]] * det2(rows[1], rows[2], cols[1], cols[2])
                - &n[rows[0]][cols[1]] * det2(rows[1], rows[2], cols[0], cols[2])
                + &n[rows[0]][cols[2]] * det2(rows[1], rows[2], cols[0], cols[1])
        }
        4 => {
            let mut acc = BigInt::zero();
            for j in 0..4 {
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != cols[j]).collect();
                let sub = minor_big(n, &rows[1..].to_vec(), &sub_cols);
                let term = &n[rows[0]][cols[j]] * sub;
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        _ => unreachable!(),
    }
}

/// Relative position of two lattices: the sorted p-valuations of the
/// elementary divisors of a basis-change matrix from `l1` to `l2`,
/// validated against the similitude constraint.
pub fn relative_position(
    l1: &PadicLattice,
    l2: &PadicLattice,
) -> Result<DominantCoweight, LatticeError> {
    assert_eq!(l1.p, l2.p);
    let adj1 = adjugate(&l1.basis);
    let m1 = l1.index_val();
    // Transition N = H2 * adj(H1); total shift scale2 - scale1 - m1.
    let mut n: [[BigInt; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = BigInt::zero();
            for k in 0..4 {
                acc += BigInt::from(l2.basis[i][k]) * BigInt::from(adj1[k][j]);
            }
            n[i][j] = acc;
        }
    }
    let shift = l2.scale - l1.scale - m1;
    let vals = elementary_divisor_vals_big(l1.p, &n)?;
    let a = [
        vals[0] + shift,
        vals[1] + shift,
        vals[2] + shift,
        vals[3] + shift,
    ];
    DominantCoweight::new(a).map_err(|_| LatticeError::NonSymplecticPair(a))
}

/// Fast path used by the enumeration: elementary-divisor valuations of a
/// small integer HNF matrix expressing a sublattice in base coordinates.
pub(crate) fn position_of_sublattice_matrix(
    p: u64,
    n: &[[i128; 4]; 4],
) -> Result<[i64; 4], LatticeError> {
    let mut big: [[BigInt; 4]; 4] = Default::default();
    let mut small_ok = true;
    for i in 0..4 {
        for j in 0..4 {
            if n[i][j].abs() > 1 << 40 {
                small_ok = false;
            }
            big[i][j] = BigInt::from(n[i][j]);
        }
    }
    if small_ok {
        // Entries are tiny; i128 minors cannot overflow.
        return elementary_divisor_vals_small(p, n);
    }
    elementary_divisor_vals_big(p, &big)
}

fn elementary_divisor_vals_small(p: u64, n: &[[i128; 4]; 4]) -> Result<[i64; 4], LatticeError> {
    let mut dvals = [0i64; 5];
    for k in 1..=4usize {
        let mut best: Option<i64> = None;
        'outer: for rows in subsets(k) {
            for cols in subsets(k) {
                let m = minor_small(n, &rows, &cols);
                if let Some(v) = valp(p, m) {
                    best = Some(match best {
                        Some(b) => b.min(v),
                        None => v,
                    });
                    if best == Some(0) {
                        break 'outer;
                    }
                }
            }
        }
        let Some(b) = best else {
            return Err(LatticeError::SingularBasis);
        };
        dvals[k] = b;
    }
    let mut a = [0i64; 4];
    for k in 1..=4 {
        a[k - 1] = dvals[k] - dvals[k - 1];
    }
    a.reverse();
    Ok(a)
}

fn minor_small(n: &[[i128; 4]; 4], rows: &[usize], cols: &[usize]) -> i128 {
    match rows.len() {
        1 => n[rows[0]][cols[0]],
        2 => n[rows[0]][cols[0]] * n[rows[1]][cols[1]] - n[rows[0]][cols[1]] * n[rows[1]][cols[0]],
        3 => {
            let det2 = |r1: usize, r2: usize, c1: usize, c2: usize| {
                n[r1][c1] * n[r2][c2] - n[r1][c2] * n[r2][c1]
            };
            n[rows[0]][cols[0]] * det2(rows[1], rows[2], cols[1], cols[2])
                - n[rows[0]][cols[1]] * det2(rows[1], rows[2], cols[0], cols[2])
                + n[rows[0]][cols[2]] * det2(rows[1], rows[2], cols[0], cols[1])
        }
        4 => {
            let mut acc = 0i128;
            for j in 0..4 {
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != cols[j]).collect();
                let sub = minor_small(n, &rows[1..].to_vec(), &sub_cols);
                let term = n[rows[0]][cols[j]] * sub;
                acc += if j % 2 == 0 { term } else { -term };
            }
            acc
        }
        _ => unreachable!(),
    }
}

/// Iwasawa invariant: the 4-tuple of valuations of the graded pieces of
/// the lattice against the standard coordinate flag `F_i = <e_1..e_i>`.
pub fn iwasawa_invariant(l: &PadicLattice) -> Result<Weight, LatticeError> {
    let p = l.p;
    let mut rows: Vec<[i128; 4]> = l.basis.to_vec();
    let mut vals = [0i64; 4];
    // Eliminate from the last coordinate down; pivots give the graded
    // valuations. Row combinations only ever multiply a row by a p-unit.
    for c in (0..4).rev() {
        let active = 0..=c; // rows 0..=c remain after previous pivots are moved out
        let mut piv: Option<usize> = None;
        for i in active.clone() {
            if rows[i][c] != 0 {
                let v = valp(p, rows[i][c]).unwrap();
                piv = match piv {
                    Some(j) => {
                        if valp(p, rows[j][c]).unwrap() <= v {
                            Some(j)
                        } else {
                            Some(i)
                        }
                    }
                    None => Some(i),
                };
            }
        }
        let Some(piv) = piv else {
            return Err(LatticeError::SingularBasis);
        };
        rows.swap(c, piv);
        let pv = valp(p, rows[c][c]).unwrap();
        let unit = rows[c][c] / pow_i128(p, pv);
        for i in 0..c {
            if rows[i][c] != 0 {
                let a = rows[i][c] / pow_i128(p, pv);
                // unit * row_i - a * pivot zeroes coordinate c and scales
                // row_i by the p-unit `unit`.
                for k in 0..4 {
                    rows[i][k] = unit * rows[i][k] - a * rows[c][k];
                }
            }
        }
        vals[c] = pv + l.scale;
    }
    Weight::new(vals).map_err(|_| {
        LatticeError::NonSymplecticPair(vals)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_is_canonical() {
        let l = PadicLattice::standard(2);
        assert_eq!(l.scale(), 0);
        let again = PadicLattice::from_generators(2, &l.basis().to_vec(), 0).unwrap();
        assert_eq!(l, again);
    }

    #[test]
    fn permuted_basis_canonicalizes_identically() {
        let rows = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]];
        let l = PadicLattice::from_generators(2, &rows, 0).unwrap();
        assert_eq!(l, PadicLattice::standard(2));
    }

    #[test]
    fn scaled_basis_is_distinct() {
        let l = PadicLattice::diagonal(2, [1, 1, 1, 1]);
        assert_ne!(l, PadicLattice::standard(2));
        assert_eq!(l.scale(), 1);
        assert_eq!(l.basis(), PadicLattice::standard(2).basis());
    }

    #[test]
    fn unimodular_change_of_basis_is_invisible() {
        // Mixing in unit multiples and row sums must not change the lattice.
        let rows = [[3, 0, 0, 0], [5, 1, 0, 0], [0, 7, 1, 0], [1, 1, 1, 1]];
        let l = PadicLattice::from_generators(2, &rows, 0).unwrap();
        assert_eq!(l, PadicLattice::standard(2));
    }

    #[test]
    fn singular_basis_rejected() {
        let rows = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1]];
        assert!(matches!(
            PadicLattice::from_generators(2, &rows, 0),
            Err(LatticeError::SingularBasis)
        ));
    }

    #[test]
    fn dual_of_standard_is_standard() {
        for p in [2u64, 3, 5] {
            let l = PadicLattice::standard(p);
            assert_eq!(l.dual(), l);
        }
    }

    #[test]
    fn dual_of_scaled() {
        let l = PadicLattice::diagonal(3, [1, 1, 1, 1]);
        assert_eq!(l.dual(), PadicLattice::diagonal(3, [-1, -1, -1, -1]));
    }

    #[test]
    fn dual_is_involutive() {
        let l = PadicLattice::diagonal(2, [2, 1, 1, 0]);
        assert_eq!(l.dual().dual(), l);
        let m = PadicLattice::from_generators(3, &[[3, 1, 0, 0], [0, 1, 0, 0], [0, 0, 9, 1], [0, 0, 0, 1]], -1)
            .unwrap();
        assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn dual_of_type2_shape() {
        let l = PadicLattice::diagonal(2, [1, 1, 0, 0]);
        assert_eq!(l.dual(), l.rescale(-1));
    }

    #[test]
    fn classify_standard() {
        let (g, t) = PadicLattice::standard(5).classify();
        assert_eq!(g.scaling_exponent, Some(0));
        assert_eq!(t, VertexType::Type0);
    }

    #[test]
    fn classify_homothety() {
        let (g, t) = PadicLattice::diagonal(3, [1, 1, 1, 1]).classify();
        assert_eq!(g.scaling_exponent, Some(2));
        assert_eq!(t, VertexType::Type0);
    }

    #[test]
    fn classify_type2() {
        let (g, t) = PadicLattice::diagonal(2, [1, 1, 0, 0]).classify();
        assert_eq!(g.scaling_exponent, Some(1));
        assert_eq!(t, VertexType::Type2);
    }

    #[test]
    fn classify_paramodular() {
        let (g, t) = PadicLattice::diagonal(2, [1, 0, 0, 0]).classify();
        assert_eq!(g.scaling_exponent, None);
        assert_eq!(t, VertexType::Type1);
    }

    #[test]
    fn relative_position_examples() {
        let p = 2;
        let std = PadicLattice::standard(p);
        assert_eq!(
            relative_position(&std, &std.rescale(1)).unwrap(),
            DominantCoweight::nu0()
        );
        assert_eq!(
            relative_position(&std, &PadicLattice::diagonal(p, [1, 1, 0, 0])).unwrap(),
            DominantCoweight::nu2()
        );
        assert_eq!(
            relative_position(&std, &PadicLattice::diagonal(p, [2, 1, 1, 0])).unwrap(),
            DominantCoweight::nu1()
        );
    }

    #[test]
    fn relative_position_symmetry() {
        let p = 3;
        let std = PadicLattice::standard(p);
        for exps in [[1, 1, 0, 0], [2, 1, 1, 0], [2, 2, 0, 0], [1, 0, 0, -1]] {
            let l = PadicLattice::diagonal(p, exps);
            let fwd = relative_position(&std, &l).unwrap();
            let bwd = relative_position(&l, &std).unwrap();
            assert_eq!(bwd, fwd.inverse_position());
        }
    }

    #[test]
    fn sum_and_intersection() {
        let p = 2;
        let std = PadicLattice::standard(p);
        let l = PadicLattice::diagonal(p, [1, 0, 0, -1]);
        let s = std.sum(&l);
        let i = std.intersect(&l);
        assert!(s.contains(&std) && s.contains(&l));
        assert!(std.contains(&i) && l.contains(&i));
        assert_eq!(s, PadicLattice::diagonal(p, [0, 0, 0, -1]));
        assert_eq!(i, PadicLattice::diagonal(p, [1, 0, 0, 0]));
    }

    #[test]
    fn iwasawa_examples() {
        let p = 2;
        assert_eq!(
            iwasawa_invariant(&PadicLattice::standard(p).rescale(1)).unwrap(),
            Weight::new([1, 1, 1, 1]).unwrap()
        );
        assert_eq!(
            iwasawa_invariant(&PadicLattice::diagonal(p, [1, 1, 0, 0])).unwrap(),
            Weight::new([1, 1, 0, 0]).unwrap()
        );
        // Antidominant diagonal: Iwasawa sees the unsorted exponents,
        // the Cartan invariant sorts them.
        let anti = PadicLattice::diagonal(p, [0, 0, 1, 1]);
        assert_eq!(
            iwasawa_invariant(&anti).unwrap(),
            Weight::new([0, 0, 1, 1]).unwrap()
        );
        assert_eq!(
            relative_position(&PadicLattice::standard(p), &anti).unwrap(),
            DominantCoweight::nu2()
        );
    }

    #[test]
    fn iwasawa_off_diagonal_coset() {
        // diag(p,p,1,1) composed with a unipotent moving e3 into e1:
        // the Iwasawa weight comes from the flag, not from sorting.
        let p = 2;
        let rows = [[2, 0, 0, 0], [0, 2, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1]];
        let l = PadicLattice::from_generators(p, &rows, 0).unwrap();
        assert_eq!(
            iwasawa_invariant(&l).unwrap(),
            Weight::new([1, 1, 0, 0]).unwrap()
        );
    }
}
