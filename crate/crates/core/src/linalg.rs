//! Dense exact linear algebra over the rationals.
//!
//! Rank and nullspace computations clear denominators row by row and run
//! fraction-free (Bareiss) elimination on integer rows; the reduced row
//! echelon form is only formed afterwards, in rationals.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{common_denominator, format_scalar, int, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn vec_from_i64(values: &[i64]) -> Vector {
    values.iter().map(|&v| int(v)).collect()
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| s * x).collect()
}

/// `acc += s * v`
pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// Index and value of the first nonzero coordinate.
pub fn first_nonzero(v: &[Scalar]) -> Option<(usize, &Scalar)> {
    v.iter().enumerate().find(|(_, x)| !x.is_zero())
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Self { rows: r, cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| vec_from_i64(r)).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| s * x).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// `M v`
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `M^k` for square `M`.
    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Exact nilpotency test: `M^n = 0` with `n` the size (Cayley-Hamilton bound).
    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// Smallest `k` with `M^k = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert!(self.is_square(), "nilpotency of a non-square matrix");
        let n = self.rows;
        let mut p = Self::identity(n);
        for k in 0..=n {
            if p.is_zero() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "stack: column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::of_rows(&self.row_vectors(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of `{ v : M v = 0 }` in reduced form: one vector per free column.
    pub fn nullspace(&self) -> Vec<Vector> {
        self.echelon().nullspace()
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        // Bareiss on cleared rows; the last pivot is det times the row scalings.
        let mut scale = Scalar::one();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let (row, d) = clear_row(self.row(i));
            scale *= BigRational::from_integer(d);
            rows.push(row);
        }
        let (reduced, pivots, swaps) = bareiss(rows, n);
        if pivots.len() < n {
            return Scalar::zero();
        }
        let mut det = BigRational::from_integer(reduced[n - 1][n - 1].clone()) / scale;
        if swaps % 2 == 1 {
            det = -det;
        }
        det
    }

    /// Exact inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let mut aug = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend(unit(n, i));
            aug.push(row);
        }
        let ech = Echelon::of_rows(&aug, 2 * n);
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for (i, row) in ech.rref.iter().enumerate().take(n) {
            for j in 0..n {
                inv[(i, j)] = row[n + j].clone();
            }
        }
        Some(inv)
    }

    /// All solutions of `M x = b`: `None` when inconsistent.
    pub fn solve_affine(&self, b: &[Scalar]) -> Option<AffineSolution> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = self.row(i).to_vec();
            row.push(b[i].clone());
            aug.push(row);
        }
        let ech = Echelon::of_rows(&aug, self.cols + 1);
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut particular = zero_vector(self.cols);
        for (row, &p) in ech.rref.iter().zip(&ech.pivots) {
            particular[p] = row[self.cols].clone();
        }
        Some(AffineSolution {
            particular,
            kernel: self.nullspace(),
        })
    }

    /// Whether `v` lies in the column space of `M`.
    pub fn column_space_contains(&self, v: &[Scalar]) -> bool {
        self.solve_affine(v).is_some()
    }

    /// `P^{-1} M P`, for an invertible change of basis `P`.
    pub fn conjugate(&self, p: &Self, p_inv: &Self) -> Self {
        &(p_inv * self) * p
    }
}

/// Particular solution plus a kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

impl AffineSolution {
    /// `particular + sum coeffs[i] * kernel[i]`
    pub fn point(&self, coeffs: &[Scalar]) -> Vector {
        let mut v = self.particular.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            axpy(&mut v, c, k);
        }
        v
    }
}

/// Reduced row echelon form of a row list, with pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows of the RREF, one per pivot.
    pub rref: Vec<Vector>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn of_rows(rows: &[Vector], cols: usize) -> Self {
        let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_row(r).0).collect();
        let (reduced, pivots, _) = bareiss(int_rows, cols);
        // Back-substitute in rationals from the integer echelon form.
        let mut rref: Vec<Vector> = reduced
            .into_iter()
            .take(pivots.len())
            .zip(&pivots)
            .map(|(row, &p)| {
                let lead = BigRational::from_integer(row[p].clone());
                row.into_iter()
                    .map(|x| BigRational::from_integer(x) / &lead)
                    .collect()
            })
            .collect();
        for r in (0..pivots.len()).rev() {
            let p = pivots[r];
            let (above, rest) = rref.split_at_mut(r);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let factor = row[p].clone();
                if !factor.is_zero() {
                    for (x, y) in row.iter_mut().zip(pivot_row).skip(p) {
                        if !y.is_zero() {
                            *x -= &factor * y;
                        }
                    }
                }
            }
        }
        Self { rref, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullspace(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = unit(self.cols, f);
                for (row, &p) in self.rref.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

/// Scales a rational row to a primitive integer row; returns the row and the
/// positive multiplier applied.
fn clear_row(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let d = common_denominator(row);
    let ints: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&d / x.denom()))
        .collect();
    (ints, d)
}

/// Fraction-free forward elimination. Returns the echelon rows, the pivot
/// columns and the number of row swaps.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>, usize) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Smallest nonzero entry as pivot keeps the numbers small.
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
        else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots, swaps)
}

impl Matrix {
    /// Characteristic polynomial `det(xI - M)`, coefficients constant term
    /// first, by the Faddeev-LeVerrier recursion (exact over the rationals).
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            m = &(self * &m) + &Self::identity(n).scale(&coeffs[n - k + 1]);
            let am = self * &m;
            coeffs[n - k] = -am.trace() / int(k as i64);
        }
        coeffs
    }

    /// Minimal polynomial, monic, coefficients constant term first.
    pub fn minimal_polynomial(&self) -> Vec<Scalar> {
        assert!(self.is_square(), "minimal polynomial of a non-square matrix");
        let n = self.rows;
        let mut powers: Vec<Vector> = vec![Self::identity(n).data];
        let mut p = Self::identity(n);
        for k in 1..=n {
            p = &p * self;
            let basis = Self::from_columns(&powers, n * n);
            if let Some(sol) = basis.solve_affine(&p.data) {
                let mut poly: Vector = sol.particular.iter().map(|c| -c).collect();
                debug_assert_eq!(poly.len(), k);
                poly.push(Scalar::one());
                return poly;
            }
            powers.push(p.data.clone());
        }
        unreachable!("Cayley-Hamilton bounds the degree by n")
    }

    /// Distinct rational eigenvalues in increasing order, or `None` when the
    /// rational root search would need to factor integers above `2^48`.
    pub fn rational_eigenvalues(&self) -> Option<Vec<Scalar>> {
        rational_roots(&self.charpoly())
    }
}

/// `p(x)` for coefficients constant term first.
pub fn eval_poly(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

const ROOT_SEARCH_LIMIT: u64 = 1 << 48;

fn positive_divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let v = v.abs().to_u64().filter(|&v| v <= ROOT_SEARCH_LIMIT)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d * d != v {
                large.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Distinct rational roots of a polynomial (constant term first), sorted.
/// `None` when the candidate enumeration exceeds the size cap.
pub fn rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut c: Vec<Scalar> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    let lead_zeros = c.iter().take_while(|x| x.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Scalar::zero());
        c.drain(..lead_zeros);
    }
    if c.len() > 1 {
        let (ints, _) = clear_row(&c);
        let low = positive_divisors(&ints[0])?;
        let high = positive_divisors(ints.last().expect("nonempty"))?;
        for p in &low {
            for q in &high {
                for s in [BigRational::new(p.clone(), q.clone()), BigRational::new(-p.clone(), q.clone())] {
                    if !roots.contains(&s) && eval_poly(&c, &s).is_zero() {
                        roots.push(s);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// Canonical basis (RREF rows) of the span of `vectors` in dimension `n`.
pub fn span_basis(vectors: &[Vector], n: usize) -> Vec<Vector> {
    Echelon::of_rows(vectors, n).rref
}

pub fn span_dim(vectors: &[Vector], n: usize) -> usize {
    Echelon::of_rows(vectors, n).rank()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector], v: &[Scalar]) -> bool {
    let n = v.len();
    let before = span_dim(basis, n);
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_dim(&all, n) == before
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use proptest::prelude::*;

    #[test]
    fn identity_has_full_rank() {
        let m = Matrix::identity(3);
        assert_eq!(m.rank(), 3);
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn zero_matrix_nullspace_is_everything() {
        let m = Matrix::zeros(2, 5);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.nullspace().len(), 5);
    }

    #[test]
    fn rank_one_example() {
        // Hand elimination: row2 - 2 row1 = 0, x + 2y = 0.
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace(), vec![vec_from_i64(&[-2, 1])]);
    }

    #[test]
    fn rational_entries() {
        let m = Matrix::from_rows(
            vec![vec![frac(1, 2), frac(1, 3)], vec![frac(3, 2), int(1)]],
            2,
        );
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace(), vec![vec![frac(-2, 3), int(1)]]);
        assert_eq!(m.determinant(), int(0));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        // det = 2(1-0) - 1(0-3) + 0 = 5
        assert_eq!(m.determinant(), int(5));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.determinant(), int(-1));
    }

    #[test]
    fn affine_solve() {
        let m = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
        let sol = m.solve_affine(&vec_from_i64(&[3, 2])).unwrap();
        assert_eq!(m.apply(&sol.particular), vec_from_i64(&[3, 2]));
        assert_eq!(sol.kernel.len(), 1);
        let inconsistent = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(inconsistent.solve_affine(&vec_from_i64(&[1, 3])).is_none());
    }

    #[test]
    fn nilpotency() {
        let n = Matrix::from_i64(&[&[0, 1, 5], &[0, 0, 2], &[0, 0, 0]]);
        assert_eq!(n.nilpotency_index(), Some(3));
        assert!(!Matrix::identity(2).is_nilpotent());
        assert_eq!(Matrix::zeros(2, 2).nilpotency_index(), Some(1));
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec_from_i64(&[1, 0, 1]), vec_from_i64(&[0, 1, 1])];
        assert!(in_span(&basis, &vec_from_i64(&[2, 3, 5])));
        assert!(!in_span(&basis, &vec_from_i64(&[0, 0, 1])));
        assert_eq!(span_basis(&[vec_from_i64(&[2, 4])], 2), vec![vec_from_i64(&[1, 2])]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |vals| {
                Matrix::from_rows(vals.chunks(c).map(vec_from_i64).collect(), c)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let kernel = m.nullspace();
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(is_zero_vector(&m.apply(v)));
            }
        }

        #[test]
        fn rank_matches_transpose(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn charpoly_and_minpoly() {
        let m = Matrix::from_i64(&[&[2, 1], &[0, 2]]);
        assert_eq!(m.charpoly(), vec_from_i64(&[4, -4, 1]));
        assert_eq!(m.minimal_polynomial(), vec_from_i64(&[4, -4, 1]));
        assert_eq!(Matrix::identity(3).minimal_polynomial(), vec_from_i64(&[-1, 1]));
        let n = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(n.minimal_polynomial(), vec_from_i64(&[0, 0, 0, 1]));
        assert_eq!(Matrix::zeros(0, 0).charpoly(), vec_from_i64(&[1]));
    }

    #[test]
    fn eigenvalues_are_found() {
        let m = Matrix::from_rows(
            vec![vec![frac(1, 2), int(0)], vec![int(3), int(-2)]],
            2,
        );
        assert_eq!(m.rational_eigenvalues().unwrap(), vec![int(-2), frac(1, 2)]);
        // x^2 - 2 has no rational roots.
        let r = Matrix::from_i64(&[&[0, 2], &[1, 0]]);
        assert!(r.rational_eigenvalues().unwrap().is_empty());
        assert_eq!(rational_roots(&vec_from_i64(&[0, 0, 6, -5, 1])).unwrap(), vec_from_i64(&[0, 2, 3]));
    }
}
