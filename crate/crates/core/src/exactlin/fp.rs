//! Linear algebra over prime fields.

use super::{LinError, Matrix};

/// Matrix over `F_p`, entries kept in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    m: Matrix<u64>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

impl FpMatrix {
    pub fn new(p: u64, m: Matrix<u64>) -> Result<Self, LinError> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(LinError::NotPrime(p));
        }
        Ok(Self { p, m: m.map(|x| x % p) })
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>, cols: usize) -> Result<Self, LinError> {
        Self::new(p, Matrix::from_rows(rows, cols)?)
    }

    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self { p, m: Matrix::zeros(rows, cols) }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        Self { p, m: Matrix::identity(n) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn matrix(&self) -> &Matrix<u64> {
        &self.m
    }

    pub fn rows(&self) -> usize {
        self.m.rows()
    }

    pub fn cols(&self) -> usize {
        self.m.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.m.shape()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        *self.m.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    fn check_field(&self, other: &Self) -> Result<(), LinError> {
        if self.p != other.p {
            return Err(LinError::FieldMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinError> {
        self.check_field(rhs)?;
        let prod = self.m.mul(&rhs.m)?;
        Ok(Self { p: self.p, m: prod.map(|x| x % self.p) })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinError> {
        self.check_field(rhs)?;
        let sum = self.m.add(&rhs.m)?;
        Ok(Self { p: self.p, m: sum.map(|x| x % self.p) })
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self { p, m: self.m.map(|x| (p - x) % p) }
    }

    pub fn kronecker(&self, rhs: &Self) -> Result<Self, LinError> {
        self.check_field(rhs)?;
        Ok(Self { p: self.p, m: self.m.kronecker(&rhs.m).map(|x| x % self.p) })
    }

    pub fn transpose(&self) -> Self {
        Self { p: self.p, m: self.m.transpose() }
    }

    pub fn direct_sum(&self, rhs: &Self) -> Self {
        Self { p: self.p, m: self.m.direct_sum(&rhs.m) }
    }

    pub fn vstack(&self, rhs: &Self) -> Result<Self, LinError> {
        self.check_field(rhs)?;
        Ok(Self { p: self.p, m: self.m.vstack(&rhs.m)? })
    }

    pub fn hstack(&self, rhs: &Self) -> Result<Self, LinError> {
        self.check_field(rhs)?;
        Ok(Self { p: self.p, m: self.m.hstack(&rhs.m)? })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let p = self.p;
        let mut a = self.m.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols() {
            if r == a.rows() {
                break;
            }
            let Some(pr) = (r..a.rows()).find(|&i| *a.get(i, c) != 0) else {
                continue;
            };
            a.swap_rows(r, pr);
            let inv = inv_mod(*a.get(r, c), p).expect("nonzero in a field");
            for j in 0..a.cols() {
                let v = a.get(r, j) * inv % p;
                a.set(r, j, v);
            }
            for i in 0..a.rows() {
                if i == r {
                    continue;
                }
                let f = *a.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..a.cols() {
                    let v = (a.get(i, j) + p * p - f * a.get(r, j)) % p;
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Self { p, m: a }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}` as the columns of the returned matrix.
    pub fn kernel(&self) -> Self {
        let p = self.p;
        let (r, pivots) = self.rref();
        let n = self.cols();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(n, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = (p - r.get(row, f)) % p;
                k.set(pc, col, v);
            }
        }
        Self { p, m: k }
    }

    /// A surjection `Q` with `ker Q = im A`; rows span the left kernel.
    pub fn cokernel_projection(&self) -> Self {
        self.transpose().kernel().transpose()
    }

    /// Some `S` with `A S = I` for a surjective `A`.
    pub fn right_inverse(&self) -> Result<Self, LinError> {
        // A S = I  ⇔  Sᵀ Aᵀ = I: solve column by column
        let n = self.rows();
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = Matrix::zeros(n, 1);
            e.set(i, 0, 1);
            let col = self.solve(&Self { p: self.p, m: e })?;
            cols.push(col);
        }
        let mut s = Self::zeros(self.p, self.cols(), 0);
        for c in cols {
            s = s.hstack(&c)?;
        }
        Ok(s)
    }

    /// One solution `x` of `A x = b` (b a column), if any.
    pub fn solve(&self, b: &Self) -> Result<Self, LinError> {
        let aug = self.hstack(b)?;
        let (r, pivots) = aug.rref();
        let n = self.cols();
        if pivots.contains(&n) {
            return Err(LinError::NotInvertible);
        }
        let mut x = Matrix::zeros(n, 1);
        for (row, &pc) in pivots.iter().enumerate() {
            x.set(pc, 0, r.get(row, n));
        }
        Ok(Self { p: self.p, m: x })
    }

    pub fn inverse(&self) -> Result<Self, LinError> {
        if !self.m.is_square() {
            return Err(LinError::NotSquare(self.shape()));
        }
        if self.rank() != self.rows() {
            return Err(LinError::NotInvertible);
        }
        self.right_inverse()
    }
}
