//! Exact arithmetic over the prime field F_p and exact rationals.
//!
//! Everything here is integer arithmetic. Moduli are restricted to primes
//! below 2^32 so that a product of two reduced residues fits in a `u64`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Deterministic primality test by trial division; fine for p < 2^32.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut q = 3u64;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 2;
    }
    true
}

fn check_modulus(p: u64) -> Result<(), FieldError> {
    if p < MAX_MODULUS && is_prime(p) {
        Ok(())
    } else {
        Err(FieldError::NotPrime(p))
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue (Fermat).
#[inline]
fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// An element of F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u64,
    p: u64,
}

impl FpScalar {
    pub fn new(value: i64, p: u64) -> Result<Self, FieldError> {
        check_modulus(p)?;
        Ok(Self::new_unchecked(value, p))
    }

    /// Reduces `value` mod `p` without re-validating `p`.
    pub(crate) fn new_unchecked(value: i64, p: u64) -> Self {
        let value = value.rem_euclid(p as i64) as u64;
        Self { value, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) -> Result<(), FieldError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(FieldError::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn add(self, other: Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(Self {
            value: (self.value + other.value) % self.p,
            p: self.p,
        })
    }

    pub fn sub(self, other: Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(Self {
            value: (self.value + self.p - other.value) % self.p,
            p: self.p,
        })
    }

    pub fn mul(self, other: Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(Self {
            value: mul_mod(self.value, other.value, self.p),
            p: self.p,
        })
    }

    pub fn neg(self) -> Self {
        Self {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }

    /// `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| Self {
            value: inv_mod(self.value, self.p),
            p: self.p,
        })
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Result<Self, FieldError> {
        check_modulus(p)?;
        Ok(Self::zeros_unchecked(rows, cols, p))
    }

    pub(crate) fn zeros_unchecked(rows: usize, cols: usize, p: u64) -> Self {
        Self {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Result<Self, FieldError> {
        let mut m = Self::zeros(n, n, p)?;
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        Ok(m)
    }

    /// Builds a matrix from signed integer entries, reducing each mod `p`.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        p: u64,
        entries: &[i64],
    ) -> Result<Self, FieldError> {
        check_modulus(p)?;
        if entries.len() != rows * cols {
            return Err(FieldError::EntryCount {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let data = entries
            .iter()
            .map(|&e| e.rem_euclid(p as i64) as u64)
            .collect();
        Ok(Self {
            rows,
            cols,
            p,
            data,
        })
    }

    /// Row-by-row constructor; all rows must have equal length.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, Vec::len);
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_entries(rows.len(), cols, p, &flat)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn scalar(&self, r: usize, c: usize) -> FpScalar {
        FpScalar {
            value: self.get(r, c),
            p: self.p,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.data[r * self.cols + c] = value % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .all(|(c, &x)| x == u64::from(r == c))
            })
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), FieldError> {
        if self.p != other.p {
            return Err(FieldError::ModulusMismatch(self.p, other.p));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FieldError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        let p = self.p;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = (*a + b) % p;
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self {
            data: self.data.iter().map(|&x| (p - x) % p).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, k: u64) -> Self {
        let p = self.p;
        let k = k % p;
        Self {
            data: self.data.iter().map(|&x| mul_mod(x, k, p)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros_unchecked(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at (`r0`, `c0`).
    pub(crate) fn put_block(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub(crate) fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        let mut out = Self::zeros_unchecked(rows, cols, self.p);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let mut out = Self::zeros_unchecked(rows.len(), cols.len(), self.p);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// `self += a * b` without shape checks.
    pub(crate) fn mul_add_assign_unchecked(&mut self, a: &FpMatrix, b: &FpMatrix) {
        let p = self.p;
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.data[i * a.cols + k];
                if x == 0 {
                    continue;
                }
                let brow = &b.data[k * b.cols..(k + 1) * b.cols];
                let orow = &mut self.data[i * self.cols..(i + 1) * self.cols];
                for (o, &y) in orow.iter_mut().zip(brow) {
                    *o = (*o + mul_mod(x, y, p)) % p;
                }
            }
        }
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Exact product `a · b` mod p.
pub fn mat_mul(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix, FieldError> {
    if a.p != b.p {
        return Err(FieldError::ModulusMismatch(a.p, b.p));
    }
    if a.cols != b.rows {
        return Err(FieldError::DimensionMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    let mut out = FpMatrix::zeros_unchecked(a.rows, b.cols, a.p);
    out.mul_add_assign_unchecked(a, b);
    Ok(out)
}

/// Reduced row echelon form; returns the pivot columns in increasing order.
fn rref(m: &mut FpMatrix) -> Vec<usize> {
    let (rows, cols, p) = (m.rows, m.cols, m.p);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(m.data[r * cols + c], p);
        for j in c..cols {
            m.data[r * cols + j] = mul_mod(m.data[r * cols + j], inv, p);
        }
        let (before, rest) = m.data.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [u64]| {
            let f = row[c];
            if f == 0 {
                return;
            }
            let nf = p - f;
            for j in c..cols {
                row[j] = (row[j] + mul_mod(nf, pivot_row[j], p)) % p;
            }
        };
        before.chunks_exact_mut(cols).for_each(eliminate);
        after.chunks_exact_mut(cols).for_each(eliminate);
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row rank over F_2 using bit-packed rows.
fn rank_gf2(m: &FpMatrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            let mut packed = vec![0u64; words];
            for (c, &x) in m.row(r).iter().enumerate() {
                if x == 1 {
                    packed[c / 64] |= 1 << (c % 64);
                }
            }
            packed
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & bit != 0 {
                for (x, &y) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank by exact elimination mod p.
pub fn rank(m: &FpMatrix) -> usize {
    if m.p == 2 {
        return rank_gf2(m);
    }
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right null space `{x : m x = 0}` as column vectors.
///
/// One vector per free column of the reduced echelon form, with a 1 in
/// that free position.
pub fn kernel_basis(m: &FpMatrix) -> Vec<FpMatrix> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let p = m.p;
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = FpMatrix::zeros_unchecked(m.cols, 1, p);
            v.data[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let x = work.data[r * m.cols + free];
                v.data[pc] = (p - x) % p;
            }
            v
        })
        .collect()
}

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(num: i128, den: i128) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(Self(Ratio::new(num, den)))
    }

    pub fn from_integer(n: i128) -> Self {
        Self(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Cross-multiplication; denominators are positive.
        (self.numer() * other.denom()).cmp(&(other.numer() * self.denom()))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl std::ops::Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl std::str::FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let num: i128 = n.trim().parse().map_err(|e| format!("bad numerator {n:?}: {e}"))?;
        let den: i128 = d.trim().parse().map_err(|e| format!("bad denominator {d:?}: {e}"))?;
        Rational::new(num, den).map_err(|e| e.to_string())
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("den", &self.denom())?;
        st.serialize_field("num", &self.numer())?;
        st.end()
    }
}

/// `a < b`, exactly.
pub fn rational_lt(a: Rational, b: Rational) -> bool {
    a < b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(FpScalar::new(1, 6), Err(FieldError::NotPrime(6)));
        assert!(FpMatrix::zeros(2, 2, 1).is_err());
        assert!(FpMatrix::zeros(2, 2, MAX_MODULUS + 15).is_err());
    }

    #[test]
    fn scalar_arithmetic() {
        let a = FpScalar::new(-1, 7).unwrap();
        assert_eq!(a.value(), 6);
        let b = FpScalar::new(3, 7).unwrap();
        assert_eq!(a.mul(b).unwrap().value(), 4);
        assert_eq!(b.inv().unwrap().value(), 5);
        assert!(FpScalar::new(0, 7).unwrap().inv().is_none());
        assert!(a.add(FpScalar::new(1, 5).unwrap()).is_err());
    }

    #[test]
    fn mat_mul_examples() {
        let id = FpMatrix::identity(2, 5).unwrap();
        let x = m(5, &[&[1, 2], &[3, 4]]);
        assert_eq!(mat_mul(&id, &x).unwrap(), x);

        let u = m(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(mat_mul(&u, &u).unwrap(), FpMatrix::identity(2, 2).unwrap());

        let z = FpMatrix::zeros(3, 2, 5).unwrap();
        assert!(mat_mul(&z, &x).unwrap().is_zero());
    }

    #[test]
    fn mat_mul_errors() {
        let a = FpMatrix::zeros(2, 3, 5).unwrap();
        assert!(matches!(
            mat_mul(&a, &a),
            Err(FieldError::DimensionMismatch { .. })
        ));
        let b = FpMatrix::zeros(3, 3, 7).unwrap();
        assert_eq!(mat_mul(&a, &b), Err(FieldError::ModulusMismatch(5, 7)));
    }

    #[test]
    fn rank_examples() {
        for n in 0..5 {
            assert_eq!(rank(&FpMatrix::identity(n, 3).unwrap()), n);
            assert_eq!(rank(&FpMatrix::identity(n, 2).unwrap()), n);
        }
        assert_eq!(rank(&FpMatrix::zeros(3, 4, 5).unwrap()), 0);
        assert_eq!(rank(&m(2, &[&[1, 1], &[1, 1]])), 1);
        // 2 ≡ 0 mod 2 but not mod 3
        assert_eq!(rank(&m(2, &[&[1, 0], &[1, 2]])), 1);
        assert_eq!(rank(&m(3, &[&[1, 0], &[1, 2]])), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&FpMatrix::identity(4, 11).unwrap()).is_empty());
        assert_eq!(kernel_basis(&FpMatrix::zeros(3, 3, 11).unwrap()).len(), 3);
        let k = kernel_basis(&m(2, &[&[1, 1]]));
        assert_eq!(k, vec![m(2, &[&[1], &[1]])]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(7, &[&[1, 2, 3, 4], &[2, 4, 6, 1], &[3, 6, 2, 5]]);
        let basis = kernel_basis(&a);
        assert_eq!(rank(&a) + basis.len(), 4);
        for v in &basis {
            assert!(mat_mul(&a, v).unwrap().is_zero());
        }
    }

    #[test]
    fn rational_comparisons() {
        let r = |a, b| Rational::new(a, b).unwrap();
        assert!(rational_lt(r(1, 3), r(1, 2)));
        assert!(!rational_lt(r(1, 2), r(1, 2)));
        assert!(!rational_lt(r(6, 14), r(3, 7)));
        assert_eq!(r(6, 14), r(3, 7));
        assert_eq!(r(3, -6).denom(), 2);
        assert_eq!(r(3, -6).numer(), -1);
        assert!(Rational::new(1, 0).is_err());
        assert_eq!("6/14".parse::<Rational>().unwrap(), r(3, 7));
    }
}
