//! Smith normal form over ℤ and the cokernel read-off.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinError};

/// How the next pivot is chosen inside the active submatrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Smallest nonzero absolute value, ties broken row-major.
    #[default]
    MinAbs,
    /// First nonzero entry in row-major order.
    FirstNonzero,
}

/// `U · m · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_i` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelDecomposition {
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    smith_normal_form_with(m, PivotRule::MinAbs)
}

pub fn smith_normal_form_with(m: &IntMatrix, rule: PivotRule) -> Smith {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some(mut pivot) = find_pivot(&a, t, rule) else {
            return Smith { u, d: a, v };
        };
        loop {
            let (pi, pj) = pivot;
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // remainders in row and column t are smaller than the pivot
                pivot = smallest_in_cross(&a, t);
                continue;
            }
            // pivot must divide the rest of the active block
            let p = a.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
            match offender {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                    pivot = (t, t);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    Smith { u, d: a, v }
}

/// `coker(m) ≅ ⊕ ℤ/dᵢ ⊕ ℤ^free_rank`.
pub fn cokernel_decomposition(m: &IntMatrix) -> CokernelDecomposition {
    cokernel_from_smith(&smith_normal_form(m), m.rows())
}

pub fn cokernel_from_smith(s: &Smith, rows: usize) -> CokernelDecomposition {
    let diag = s.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    CokernelDecomposition { torsion: diag.into_iter().filter(|d| *d > BigInt::one()).collect(), free_rank: rows - rank }
}

/// Two-sided inverse over ℤ, or `NotInvertible`.
pub fn invert_int(m: &IntMatrix) -> Result<IntMatrix, LinError> {
    if !m.is_square() {
        return Err(LinError::NotSquare(m.shape()));
    }
    let s = smith_normal_form(m);
    if s.diagonal().iter().any(|d| !d.is_one()) {
        return Err(LinError::NotInvertible);
    }
    // U m V = I  ⇒  m⁻¹ = V U
    s.v.mul(&s.u)
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LinError> {
    if !m.is_square() {
        return Err(LinError::NotSquare(m.shape()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, val);
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(sign * a.get(n - 1, n - 1))
}

fn find_pivot(a: &IntMatrix, t: usize, rule: PivotRule) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            match rule {
                PivotRule::FirstNonzero => return Some((i, j)),
                PivotRule::MinAbs => {
                    if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let column = (t..a.rows()).map(|i| (i, t));
    let row = (t + 1..a.cols()).map(|j| (t, j));
    column
        .chain(row)
        .filter(|&(i, j)| !a.get(i, j).is_zero())
        .min_by(|&(i, j), &(k, l)| a.get(i, j).abs().cmp(&a.get(k, l).abs()))
        .expect("the pivot itself is nonzero")
}

/// row_i -= q · row_k
fn row_axpy(a: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for j in 0..a.cols() {
        let v = a.get(i, j) - q * a.get(k, j);
        a.set(i, j, v);
    }
}

/// col_j -= q · col_k
fn col_axpy(a: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for i in 0..a.rows() {
        let v = a.get(i, j) - q * a.get(i, k);
        a.set(i, j, v);
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for j in 0..a.cols() {
        let v = -a.get(i, j);
        a.set(i, j, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: usize, cols: usize, d: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, d).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let s = smith_normal_form(&int(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.d, int(2, 2, &[1, 0, 0, 6]));
        assert_eq!(s.u.mul(&int(2, 2, &[2, 0, 0, 3])).unwrap().mul(&s.v).unwrap(), s.d);
    }

    #[test]
    fn zero_matrix_is_fixed() {
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.d, z);
        assert!(s.u.is_identity());
        assert!(s.v.is_identity());
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_decomposition(&int(1, 1, &[6]));
        assert_eq!((c.torsion, c.free_rank), (big(&[6]), 0));
        let c = cokernel_decomposition(&int(2, 1, &[1, 1]));
        assert_eq!((c.torsion, c.free_rank), (vec![], 1));
        let c = cokernel_decomposition(&int(2, 2, &[2, 0, 0, 0]));
        assert_eq!((c.torsion, c.free_rank), (big(&[2]), 1));
    }

    #[test]
    fn invert_over_z() {
        assert_eq!(invert_int(&int(1, 1, &[2])), Err(LinError::NotInvertible));
        assert!(invert_int(&IntMatrix::identity(3)).unwrap().is_identity());
        let m = int(2, 2, &[2, 1, 1, 1]);
        let inv = invert_int(&m).unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        assert!(matches!(invert_int(&int(1, 2, &[1, 0])), Err(LinError::NotSquare(_))));
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(determinant(&int(2, 2, &[2, 1, 1, 1])).unwrap(), BigInt::one());
        assert_eq!(determinant(&int(3, 3, &[0, 1, 2, 1, 0, 3, 4, -3, 8])).unwrap(), BigInt::from(-2));
        assert_eq!(determinant(&int(2, 2, &[1, 2, 2, 4])).unwrap(), BigInt::zero());
    }
}
