//! Polynomial matrices, Pfaffians, the check-adjoint and the φ_{r,s} family.

use std::collections::HashMap;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Ring};

/// Dense matrix of polynomials over one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = Polynomial::one(ring);
        }
        m
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Polynomial) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Row-major construction; panics if the row lengths disagree.
    pub fn from_rows(ring: Ring, rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            ring,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.entries.iter()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.checked_mul(other).expect("matrix shapes")
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.ring, self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.ring, self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn neg(&self) -> Matrix {
        self.map(|p| -p)
    }

    pub fn scale(&self, p: &Polynomial) -> Matrix {
        self.map(|q| q * p)
    }

    pub fn scale_int(&self, c: &BigInt) -> Matrix {
        self.map(|q| q.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Matrix {
        let entries: Vec<Polynomial> = self.entries.iter().map(f).collect();
        let ring = entries.first().map_or(self.ring, |p| p.ring());
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().any(|p| !p.is_zero() && p.is_constant())
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(self.ring, r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// `[[a, b], [c, d]]` block assembly.
    pub fn blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (r, s) = (a.rows, a.cols);
        Matrix::from_fn(a.ring, a.rows + c.rows, a.cols + b.cols, |i, j| match (i < r, j < s) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - s)].clone(),
            (false, true) => c[(i - r, j)].clone(),
            (false, false) => d[(i - r, j - s)].clone(),
        })
    }

    pub fn hstack(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        Matrix::from_fn(a.ring, a.rows, a.cols + b.cols, |i, j| {
            if j < a.cols {
                a[(i, j)].clone()
            } else {
                b[(i, j - a.cols)].clone()
            }
        })
    }

    pub fn vstack(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.cols, b.cols);
        Matrix::from_fn(a.ring, a.rows + b.rows, a.cols, |i, j| {
            if i < a.rows {
                a[(i, j)].clone()
            } else {
                b[(i - a.rows, j)].clone()
            }
        })
    }

    /// Determinant by cofactor expansion (small matrices only).
    pub fn det(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols);
        let idx: Vec<usize> = (0..self.cols).collect();
        self.det_rec(0, &idx)
    }

    fn det_rec(&self, row: usize, cols: &[usize]) -> Polynomial {
        if cols.is_empty() {
            return Polynomial::one(self.ring);
        }
        let mut acc = Polynomial::zero(self.ring);
        for (k, &c) in cols.iter().enumerate() {
            let e = &self[(row, c)];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e * &self.det_rec(row + 1, &rest);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    /// Determinant of the submatrix on the given rows (all columns).
    pub fn minor_rows(&self, rows: &[usize]) -> Polynomial {
        let sub = Matrix::from_fn(self.ring, rows.len(), self.cols, |i, j| self[(rows[i], j)].clone());
        sub.det()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Polynomial;
    fn index(&self, (i, j): (usize, usize)) -> &Polynomial {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Polynomial {
        assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Serialize for Matrix {
    /// Row-major array of rows.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&self.row(i))?;
        }
        seq.end()
    }
}

/// Square skew matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct AlternatingMatrix(Matrix);

impl AlternatingMatrix {
    /// Validates the alternating property.
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::SizeMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        for i in 0..m.rows() {
            if !m[(i, i)].is_zero() {
                return Err(Error::SizeMismatch(format!("nonzero diagonal entry {i}")));
            }
            for j in i + 1..m.rows() {
                if m[(j, i)] != -&m[(i, j)] {
                    return Err(Error::SizeMismatch(format!("entry ({j},{i}) is not skew")));
                }
            }
        }
        Ok(AlternatingMatrix(m))
    }

    /// Builds from the strict upper triangle, given row by row.
    pub fn from_upper(ring: Ring, size: usize, upper: impl Fn(usize, usize) -> Polynomial) -> Self {
        let mut m = Matrix::zeros(ring, size, size);
        for i in 0..size {
            for j in i + 1..size {
                let e = upper(i, j);
                m[(j, i)] = -&e;
                m[(i, j)] = e;
            }
        }
        AlternatingMatrix(m)
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn ring(&self) -> Ring {
        self.0.ring()
    }

    pub fn neg(&self) -> AlternatingMatrix {
        AlternatingMatrix(self.0.neg())
    }

    /// Deletes the listed rows and the same columns.
    pub fn delete(&self, idx: &[usize]) -> AlternatingMatrix {
        let keep: Vec<usize> = (0..self.size()).filter(|i| !idx.contains(i)).collect();
        let m = Matrix::from_fn(self.ring(), keep.len(), keep.len(), |i, j| self.0[(keep[i], keep[j])].clone());
        AlternatingMatrix(m)
    }
}

fn pf_rec(m: &Matrix, mask: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    let idx: Vec<usize> = (0..32).filter(|i| mask >> i & 1 == 1).collect();
    let s = idx.len();
    if s % 2 == 1 {
        return Polynomial::zero(m.ring());
    }
    if s == 0 {
        return Polynomial::one(m.ring());
    }
    if s == 2 {
        return m[(idx[0], idx[1])].clone();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let first = idx[0];
    let mut acc = Polynomial::zero(m.ring());
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let e = &m[(first, j)];
        if e.is_zero() {
            continue;
        }
        let sub = pf_rec(m, mask & !(1 << first) & !(1 << j), memo);
        let term = e * &sub;
        // (-1)^j with 1-based column index j = pos + 1.
        acc = if pos % 2 == 1 { acc + term } else { acc - term };
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian(phi: &AlternatingMatrix) -> Polynomial {
    let s = phi.size();
    assert!(s < 32);
    pf_rec(phi.matrix(), (1u32 << s) - 1, &mut HashMap::new())
}

fn pf_without(phi: &AlternatingMatrix, del: &[usize], memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    let mut mask = (1u32 << phi.size()) - 1;
    for &d in del {
        mask &= !(1 << d);
    }
    pf_rec(phi.matrix(), mask, memo)
}

/// `Pf_l(φ) = (-1)^(l+1) Pf(φ without row/column l)`, `l` 1-based, odd size.
pub fn pf_minor(phi: &AlternatingMatrix, l: usize) -> Result<Polynomial> {
    let s = phi.size();
    if l == 0 || l > s {
        return Err(Error::IndexOutOfRange { index: l, size: s });
    }
    if s % 2 == 0 {
        return Err(Error::SizeMismatch(format!("Pf_l needs odd size, got {s}")));
    }
    let p = pf_without(phi, &[l - 1], &mut HashMap::new());
    Ok(if l % 2 == 0 { -p } else { p })
}

/// All maximal-order Pfaffians `Pf_1..Pf_s` of an odd alternating matrix.
pub fn pf_minors(phi: &AlternatingMatrix) -> Result<Vec<Polynomial>> {
    let s = phi.size();
    if s % 2 == 0 {
        return Err(Error::SizeMismatch(format!("Pf_l needs odd size, got {s}")));
    }
    let mut memo = HashMap::new();
    Ok((1..=s)
        .map(|l| {
            let p = pf_without(phi, &[l - 1], &mut memo);
            if l % 2 == 0 {
                -p
            } else {
                p
            }
        })
        .collect())
}

/// The alternating matrix φ̌ with φφ̌ = Pf(φ)·I.
pub fn check_adjoint(phi: &AlternatingMatrix) -> Result<AlternatingMatrix> {
    let s = phi.size();
    if s % 2 == 1 {
        return Err(Error::OddSize(s));
    }
    let mut memo = HashMap::new();
    let mut m = Matrix::zeros(phi.ring(), s, s);
    for i in 0..s {
        for j in i + 1..s {
            let p = pf_without(phi, &[i, j], &mut memo);
            // 1-based (-1)^(i+j) equals 0-based (-1)^(i+j).
            let e = if (i + j) % 2 == 0 { p } else { -p };
            m[(j, i)] = -&e;
            m[(i, j)] = e;
        }
    }
    let out = AlternatingMatrix(m);
    debug_assert!({
        let pf = pfaffian(phi);
        phi.matrix().mul(out.matrix()) == Matrix::identity(phi.ring(), s).scale(&pf)
    });
    Ok(out)
}

/// The 4×4 matrix φ_{r,s} over k[x,y,z] in characteristic `c`.
pub fn phi_rs(c: u64, r: u32, s: u32) -> AlternatingMatrix {
    let ring = Ring::xyz(c);
    let v = |i: usize, e: u32| Polynomial::var_pow(ring, i, e);
    AlternatingMatrix::from_upper(ring, 4, |i, j| match (i, j) {
        (0, 1) => v(2, r),
        (0, 2) => -v(1, r),
        (0, 3) => v(0, s),
        (1, 2) => v(0, r),
        (1, 3) => v(1, s),
        (2, 3) => v(2, s),
        _ => unreachable!(),
    })
}

/// Checks `Pf_{m+l}(d₂) = Pf_l(ψφ̌ψᵀ) + Pf(φ)·Pf_l(Φ)` for the assembled `d₂`.
pub fn pf2_identity(
    phi: &AlternatingMatrix,
    psi: &Matrix,
    big_phi: &AlternatingMatrix,
    l: usize,
) -> Result<bool> {
    let m = phi.size();
    if m % 2 == 1 {
        return Err(Error::OddSize(m));
    }
    if psi.rows() != 3 || psi.cols() != m || big_phi.size() != 3 {
        return Err(Error::SizeMismatch("need φ m×m, ψ 3×m, Φ 3×3".into()));
    }
    if !(1..=3).contains(&l) {
        return Err(Error::IndexOutOfRange { index: l, size: 3 });
    }
    let d2 = assemble(phi, psi, big_phi);
    let lhs = pf_minor(&d2, m + l)?;
    let check = check_adjoint(phi)?;
    let inner = AlternatingMatrix::new(psi.mul(check.matrix()).mul(&psi.transpose()))?;
    let rhs = pf_minor(&inner, l)? + &pfaffian(phi) * &pf_minor(big_phi, l)?;
    Ok(lhs == rhs)
}

/// `[[φ, ψᵀ], [-ψ, Φ]]`.
pub fn assemble(phi: &AlternatingMatrix, psi: &Matrix, big_phi: &AlternatingMatrix) -> AlternatingMatrix {
    AlternatingMatrix(Matrix::blocks(
        phi.matrix(),
        &psi.transpose(),
        &psi.neg(),
        big_phi.matrix(),
    ))
}
