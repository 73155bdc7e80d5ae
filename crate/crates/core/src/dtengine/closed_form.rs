use std::collections::VecDeque;

use super::DtError;
use crate::exactalg::{gauss_decompose, lift_word, AlgError, Field, Matrix};

/// Lifts `(ū, v̄)` of the Weyl group pair encoded by a word: `u` is the
/// product of the negative letters, `v` of the positive ones, in word order.
pub fn word_lifts<T: Field>(n: usize, letters: &[i32]) -> (Matrix<T>, Matrix<T>) {
    let neg: Vec<usize> = letters.iter().filter(|&&a| a < 0).map(|a| a.unsigned_abs() as usize).collect();
    let pos: Vec<usize> = letters.iter().filter(|&&a| a > 0).map(|&a| a as usize).collect();
    (lift_word(n, &neg), lift_word(n, &pos))
}

/// `([ū⁻¹x]_-⁻¹ ū⁻¹ x v̄⁻¹ [x v̄⁻¹]_+⁻¹)ᵗ`.
pub fn dt_closed_form<T: Field>(n: usize, letters: &[i32], x: &Matrix<T>) -> Result<Matrix<T>, DtError> {
    let (u, v) = word_lifts::<T>(n, letters);
    let u_inv = u.inverse()?;
    let v_inv = v.inverse()?;
    let ux = u_inv.mul(x);
    let xv = x.mul(&v_inv);
    let (lower, _, _) = gauss_decompose(&ux)?;
    let (_, _, upper) = gauss_decompose(&xv)?;
    Ok(lower
        .inverse()?
        .mul(&ux)
        .mul(&v_inv)
        .mul(&upper.inverse()?)
        .transpose())
}

/// Whether `m1 = D m2 D'` for invertible diagonal `D`, `D'`.
///
/// Requires equal zero patterns and all cross-ratio identities
/// `m1_ij m1_kl m2_il m2_kj = m1_il m1_kj m2_ij m2_kl` on rectangles of
/// nonzero entries; then solves for the row and column scalings along a
/// spanning forest of the support and checks every entry, which also covers
/// supports too sparse for rectangles to connect.
pub fn check_h_equiv<T: Field>(m1: &Matrix<T>, m2: &Matrix<T>) -> Result<bool, DtError> {
    if m1.rows() != m2.rows() || m1.cols() != m2.cols() {
        return Err(AlgError::Dimension("matrices differ in shape".into()).into());
    }
    if m1.det().is_zero() || m2.det().is_zero() {
        return Err(AlgError::SingularMatrix.into());
    }
    if m1.zero_pattern() != m2.zero_pattern() {
        return Ok(false);
    }
    let (r, c) = (m1.rows(), m1.cols());
    let nz = |i: usize, j: usize| !m1.get(i, j).is_zero();
    for i in 0..r {
        for k in i + 1..r {
            for j in 0..c {
                for l in j + 1..c {
                    if !(nz(i, j) && nz(k, l) && nz(i, l) && nz(k, j)) {
                        continue;
                    }
                    let lhs = m1.get(i, j).mul(m1.get(k, l)).mul(m2.get(i, l)).mul(m2.get(k, j));
                    let rhs = m1.get(i, l).mul(m1.get(k, j)).mul(m2.get(i, j)).mul(m2.get(k, l));
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    // q_ij = m1_ij / m2_ij must factor as a_i b_j.
    let q = |i: usize, j: usize| m1.get(i, j).div(m2.get(i, j)).expect("nonzero by pattern");
    let mut row: Vec<Option<T>> = vec![None; r];
    let mut col: Vec<Option<T>> = vec![None; c];
    for start in 0..r {
        if row[start].is_some() {
            continue;
        }
        row[start] = Some(T::one());
        let mut queue = VecDeque::from([(true, start)]);
        while let Some((is_row, idx)) = queue.pop_front() {
            if is_row {
                let a = row[idx].clone().unwrap();
                for j in 0..c {
                    if nz(idx, j) && col[j].is_none() {
                        col[j] = Some(q(idx, j).div(&a).expect("scalings are nonzero"));
                        queue.push_back((false, j));
                    }
                }
            } else {
                let b = col[idx].clone().unwrap();
                for i in 0..r {
                    if nz(i, idx) && row[i].is_none() {
                        row[i] = Some(q(i, idx).div(&b).expect("scalings are nonzero"));
                        queue.push_back((true, i));
                    }
                }
            }
        }
    }
    for i in 0..r {
        for j in 0..c {
            if nz(i, j) {
                let (a, b) = (row[i].as_ref().unwrap(), col[j].as_ref().unwrap());
                if q(i, j) != a.mul(b) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
