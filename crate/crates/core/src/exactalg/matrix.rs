//! Dense matrices over a [`Ring`], with minors, inversion and Gaussian
//! decomposition over a [`Field`], plus the generators of `GL_n`.
//!
//! Row and column indices in [`Matrix::minor`] are 1-based, as in the
//! notation `Δ^{I,J}`; everything else is 0-based.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgError, Field, RatFunc, Ring};
use crate::weyl::{greedy_word, Permutation};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RFMatrix = Matrix<RatFunc>;

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<T: Serialize + Clone> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<T>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        rows.serialize(s)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(d)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }
}

impl<T: Ring> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n(&self) -> usize {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(o.get(i, j)))
    }

    /// Right multiplication by `e_i = I + E_{i,i+1}` (1-based `i`): column i+1 += column i.
    pub fn mul_e_plus(&mut self, i: usize) {
        for r in 0..self.rows {
            let a = self.get(r, i - 1).clone();
            if !a.is_zero() {
                let b = self.get(r, i).add(&a);
                self.set(r, i, b);
            }
        }
    }

    /// Right multiplication by `e_{-i} = I + E_{i+1,i}`: column i += column i+1.
    pub fn mul_e_minus(&mut self, i: usize) {
        for r in 0..self.rows {
            let a = self.get(r, i).clone();
            if !a.is_zero() {
                let b = self.get(r, i - 1).add(&a);
                self.set(r, i - 1, b);
            }
        }
    }

    /// Right multiplication by `h^i(x)`: scales columns `1..=i` by `x`.
    pub fn mul_h(&mut self, i: usize, x: &T) {
        if x.is_one() {
            return;
        }
        for r in 0..self.rows {
            for c in 0..i.min(self.cols) {
                let v = self.get(r, c).mul(x);
                self.set(r, c, v);
            }
        }
    }

    /// Determinant of the full square matrix.
    pub fn det(&self) -> T {
        let n = self.n();
        let idx: Vec<usize> = (1..=n).collect();
        self.minor(&idx, &idx)
    }

    /// `Δ^{I,J}`: determinant of the submatrix on rows `I`, columns `J`
    /// (1-based, taken in ascending order). Empty sets give 1, different
    /// sizes give 0.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> T {
        if rows.len() != cols.len() {
            return T::zero();
        }
        let k = rows.len();
        if k == 0 {
            return T::one();
        }
        let mut r: Vec<usize> = rows.iter().map(|&x| x - 1).collect();
        let mut c: Vec<usize> = cols.iter().map(|&x| x - 1).collect();
        r.sort_unstable();
        c.sort_unstable();
        assert!(k <= 20, "minor too large for cofactor expansion");
        // Laplace expansion with memoization over column subsets: d[S] is the
        // determinant of the last |S| selected rows against the columns in S.
        let mut d: Vec<Option<T>> = vec![None; 1 << k];
        d[0] = Some(T::one());
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
        for s in 1usize..(1 << k) {
            by_size[s.count_ones() as usize].push(s);
        }
        for t in 1..=k {
            let row = r[k - t];
            for &s in &by_size[t] {
                let mut acc = T::zero();
                let mut pos = 0;
                for j in 0..k {
                    if s >> j & 1 == 0 {
                        continue;
                    }
                    let a = self.get(row, c[j]);
                    if !a.is_zero() {
                        let sub = d[s & !(1 << j)].as_ref().unwrap();
                        if !sub.is_zero() {
                            let term = a.mul(sub);
                            acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                        }
                    }
                    pos += 1;
                }
                d[s] = Some(acc);
            }
            // free the layer two below, no longer needed
            if t >= 2 {
                for &s in &by_size[t - 2] {
                    if s != 0 {
                        d[s] = None;
                    }
                }
            }
        }
        d[(1 << k) - 1].take().unwrap()
    }

    /// Matrix of the entry-wise predicate `is_zero`.
    pub fn zero_pattern(&self) -> Vec<bool> {
        self.data.iter().map(|x| x.is_zero()).collect()
    }
}

impl<T: Field> Matrix<T> {
    pub fn inverse(&self) -> Result<Self, AlgError> {
        let n = self.n();
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(AlgError::SingularMatrix)?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).inv().ok_or(AlgError::SingularMatrix)?;
            for j in 0..n {
                let v = a.get(col, j).mul(&p);
                a.set(col, j, v);
                let w = inv.get(col, j).mul(&p);
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, v);
                    let w = inv.get(r, j).sub(&f.mul(inv.get(col, j)));
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }

    /// `g* = w̄0 (g^{-1})^t w̄0^{-1}`.
    pub fn star(&self) -> Result<Self, AlgError> {
        let n = self.n();
        let w0 = lift_weyl::<T>(&Permutation::longest(n));
        let w0_inv = w0.inverse()?;
        Ok(w0.mul(&self.inverse()?.transpose()).mul(&w0_inv))
    }
}

/// `x = L D U` with `L` lower unipotent, `D` diagonal, `U` upper unipotent.
pub fn gauss_decompose<T: Field>(
    x: &Matrix<T>,
) -> Result<(Matrix<T>, Matrix<T>, Matrix<T>), AlgError> {
    let n = x.n();
    let mut l = Matrix::<T>::identity(n);
    let mut u = x.clone();
    for k in 0..n {
        let pivot = u.get(k, k).clone();
        let pinv = pivot
            .inv()
            .ok_or(AlgError::NotGaussianDecomposable { k: k + 1 })?;
        for r in k + 1..n {
            let f = u.get(r, k).mul(&pinv);
            if f.is_zero() {
                continue;
            }
            l.set(r, k, f.clone());
            for j in k..n {
                let v = u.get(r, j).sub(&f.mul(u.get(k, j)));
                u.set(r, j, v);
            }
        }
    }
    let diag: Vec<T> = (0..n).map(|i| u.get(i, i).clone()).collect();
    let mut upper = u;
    for (i, di) in diag.iter().enumerate() {
        let dinv = di.inv().ok_or(AlgError::NotGaussianDecomposable { k: i + 1 })?;
        for j in 0..n {
            let v = if j == i {
                T::one()
            } else if j < i {
                T::zero()
            } else {
                upper.get(i, j).mul(&dinv)
            };
            upper.set(i, j, v);
        }
    }
    Ok((l, Matrix::diagonal(&diag), upper))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    EPlus,
    EMinus,
    H,
}

/// The generators `e_i`, `e_{-i}` and `h^i(x)` of `GL_n`.
pub fn generator<T: Ring>(
    kind: Generator,
    i: usize,
    x: Option<&T>,
    n: usize,
) -> Result<Matrix<T>, AlgError> {
    let mut m = Matrix::<T>::identity(n);
    match kind {
        Generator::EPlus | Generator::EMinus => {
            if i < 1 || i >= n {
                return Err(AlgError::IndexOutOfRange { index: i as i64, n });
            }
            if kind == Generator::EPlus {
                m.set(i - 1, i, T::one());
            } else {
                m.set(i, i - 1, T::one());
            }
        }
        Generator::H => {
            if i > n {
                return Err(AlgError::IndexOutOfRange { index: i as i64, n });
            }
            let x = x.ok_or(AlgError::ZeroValue)?;
            if x.is_zero() {
                return Err(AlgError::ZeroValue);
            }
            for r in 0..i {
                m.set(r, r, x.clone());
            }
        }
    }
    Ok(m)
}

/// `s̄_i = e_i^{-1} e_{-i} e_i^{-1}`.
fn sbar<T: Ring>(i: usize, n: usize) -> Matrix<T> {
    let mut e_inv = Matrix::<T>::identity(n);
    e_inv.set(i - 1, i, T::one().neg());
    let em = generator::<T>(Generator::EMinus, i, None, n).expect("index checked by caller");
    e_inv.mul(&em).mul(&e_inv)
}

/// Product of `s̄_i` along a word of simple-reflection indices.
pub fn lift_word<T: Ring>(n: usize, word: &[usize]) -> Matrix<T> {
    let mut m = Matrix::<T>::identity(n);
    for &i in word {
        m = m.mul(&sbar::<T>(i, n));
    }
    m
}

/// The lift `w̄`, computed along the greedy reduced word of `w`.
pub fn lift_weyl<T: Ring>(w: &Permutation) -> Matrix<T> {
    lift_word(w.n(), &greedy_word(w))
}


#[cfg(test)]
mod three_term {
    use super::*;
    use crate::exactalg::{LaurentPoly, VarId};

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (1..=n).filter(|i| m & (1 << (i - 1)) != 0).collect())
            .collect()
    }

    fn with(s: &[usize], extra: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().chain(extra).copied().collect();
        v.sort_unstable();
        v
    }

    // Δ^{I,J∪k} Δ^{I∪i,J∪{j,l}} = Δ^{I,J∪j} Δ^{I∪i,J∪{k,l}} + Δ^{I,J∪l} Δ^{I∪i,J∪{j,k}}
    // for |I| = |J| + 1, i ∉ I and j < k < l outside J.
    #[test]
    fn minor_exchange_identity_on_a_generic_matrix() {
        let n = 4;
        let m = Matrix::from_fn(n, n, |r, c| LaurentPoly::var(VarId((n * r + c) as u32)));
        let mut checked = 0;
        for size in 1..n {
            for rows in subsets(n, size) {
                for i in (1..=n).filter(|i| !rows.contains(i)) {
                    for cols in subsets(n, size - 1) {
                        let free: Vec<usize> = (1..=n).filter(|c| !cols.contains(c)).collect();
                        for (a, &j) in free.iter().enumerate() {
                            for (b, &k) in free.iter().enumerate().skip(a + 1) {
                                for &l in &free[b + 1..] {
                                    let ri = with(&rows, &[i]);
                                    let d = |r: &[usize], extra: &[usize]| m.minor(r, &with(&cols, extra));
                                    let lhs = d(&rows, &[k]).mul(&d(&ri, &[j, l]));
                                    let rhs = d(&rows, &[j])
                                        .mul(&d(&ri, &[k, l]))
                                        .add(&d(&rows, &[l]).mul(&d(&ri, &[j, k])));
                                    assert_eq!(lhs, rhs, "I={rows:?} i={i} J={cols:?} j,k,l={j},{k},{l}");
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }
}
