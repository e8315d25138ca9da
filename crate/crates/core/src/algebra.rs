//! Finite-dimensional nonassociative algebras given by structure constants,
//! bilinear forms, and the maps derived from them.

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{axpy, dot, span_basis, zero_vector, Matrix, Vector};
use crate::scalar::Scalar;

/// Structure tensor `c[i][j][k]`: the `e_k` coefficient of `e_i * e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    /// Builds the tensor from a function returning the vector `e_i * e_j`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim, "tensor slot has wrong length");
                t.slot_mut(i, j).clone_from_slice(&v);
            }
        }
        t
    }

    /// From nested `[i][j][k]` values.
    pub fn from_nested(values: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = values.len();
        let mut t = Self::zeros(n);
        for (i, plane) in values.into_iter().enumerate() {
            check_dim("tensor rows", n, plane.len())?;
            for (j, row) in plane.into_iter().enumerate() {
                check_dim("tensor entries", n, row.len())?;
                t.slot_mut(i, j).clone_from_slice(&row);
            }
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        self.data[(i * self.dim + j) * self.dim + k] = value;
    }

    /// The coefficient vector stored at `(i, j)`.
    pub fn slot(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.data[start..start + self.dim]
    }

    pub fn slot_mut(&mut self, i: usize, j: usize) -> &mut [Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &mut self.data[start..start + self.dim]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.slot(i, j).to_vec()).collect())
            .collect()
    }
}

/// A bilinear product on `Q^n` given by its structure tensor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Algebra {
    product: Tensor3,
}

impl Algebra {
    pub fn new(product: Tensor3) -> Self {
        Self { product }
    }

    /// The null product on `Q^n`.
    pub fn zero(dim: usize) -> Self {
        Self::new(Tensor3::zeros(dim))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Vector) -> Self {
        Self::new(Tensor3::from_fn(dim, f))
    }

    pub fn dim(&self) -> usize {
        self.product.dim
    }

    pub fn tensor(&self) -> &Tensor3 {
        &self.product
    }

    /// `e_i * e_j`
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        self.product.slot(i, j)
    }

    /// `x * y` for arbitrary coefficient vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        assert_eq!(x.len(), n, "left factor has wrong length");
        assert_eq!(y.len(), n, "right factor has wrong length");
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.product.slot(i, j));
            }
        }
        out
    }

    /// `e_i * y`
    pub fn mul_basis_left(&self, i: usize, y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (j, yj) in y.iter().enumerate() {
            axpy(&mut out, yj, self.product.slot(i, j));
        }
        out
    }

    /// `x * e_j`
    pub fn mul_basis_right(&self, x: &[Scalar], j: usize) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, xi) in x.iter().enumerate() {
            axpy(&mut out, xi, self.product.slot(i, j));
        }
        out
    }

    /// Matrix of `L_x : y -> x*y` in the standard basis.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        check_dim("left_mult_matrix", self.dim(), x.len())?;
        let n = self.dim();
        let columns: Vec<Vector> = (0..n).map(|j| self.mul_basis_right(x, j)).collect();
        Ok(Matrix::from_columns(&columns, n))
    }

    /// Matrix of `R_x : y -> y*x` in the standard basis.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        check_dim("right_mult_matrix", self.dim(), x.len())?;
        let n = self.dim();
        let columns: Vec<Vector> = (0..n).map(|j| self.mul_basis_left(j, x)).collect();
        Ok(Matrix::from_columns(&columns, n))
    }

    /// `L_{e_i}`
    pub fn left_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let columns: Vec<Vector> = (0..n).map(|j| self.product.slot(i, j).to_vec()).collect();
        Matrix::from_columns(&columns, n)
    }

    /// `R_{e_i}`
    pub fn right_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let columns: Vec<Vector> = (0..n).map(|j| self.product.slot(j, i).to_vec()).collect();
        Matrix::from_columns(&columns, n)
    }

    /// `ad_{e_i} = L_{e_i} - R_{e_i}`
    pub fn ad_basis(&self, i: usize) -> Matrix {
        &self.left_basis(i) - &self.right_basis(i)
    }

    /// The algebra with product `[x, y] = x*y - y*x`.
    pub fn commutator_algebra(&self) -> Algebra {
        let n = self.dim();
        Algebra::from_fn(n, |i, j| {
            self.product
                .slot(i, j)
                .iter()
                .zip(self.product.slot(j, i))
                .map(|(a, b)| a - b)
                .collect()
        })
    }

    /// `[x, y]` of the commutator bracket.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        crate::linalg::sub_vec(&self.mul(x, y), &self.mul(y, x))
    }

    /// The same product written in a new basis whose vectors are the
    /// columns of `p` (in old coordinates).
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        let n = self.dim();
        check_dim("change_basis rows", n, p.rows())?;
        check_dim("change_basis cols", n, p.cols())?;
        let p_inv = p
            .inverse()
            .ok_or_else(|| Error::Hypothesis("basis change is singular".into()))?;
        let columns: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
        Ok(Algebra::from_fn(n, |i, j| {
            p_inv.apply(&self.mul(&columns[i], &columns[j]))
        }))
    }

    /// Basis of `{ b : L_b = 0 and R_b = 0 }`.
    pub fn two_sided_annihilator(&self) -> Vec<Vector> {
        let n = self.dim();
        // For each j, k: sum_i b_i c[i][j][k] = 0 and sum_i b_i c[j][i][k] = 0.
        let mut rows = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.product.get(i, j, k).clone()).collect());
                rows.push((0..n).map(|i| self.product.get(j, i, k).clone()).collect());
            }
        }
        span_basis(&Matrix::from_rows(rows, n).nullspace(), n)
    }

    /// Basis of `{ b : L_b = 0 }`.
    pub fn left_kernel(&self) -> Vec<Vector> {
        let n = self.dim();
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.product.get(i, j, k).clone()).collect());
            }
        }
        span_basis(&Matrix::from_rows(rows, n).nullspace(), n)
    }

    pub fn is_zero(&self) -> bool {
        self.product.is_zero()
    }
}

/// A bilinear form given by its Gram matrix `G`, `w(x, y) = x^T G y`.
///
/// Skewness and nondegeneracy are checkable predicates, not construction
/// invariants, so that non-symplectic forms can be fed to the verifier.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymplecticForm {
    gram: Matrix,
}

impl SymplecticForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        check_dim("gram matrix", gram.rows(), gram.cols())?;
        Ok(Self { gram })
    }

    /// `w(e_i, e_{k+i}) = 1` on `Q^{2k}`.
    pub fn standard(dim: usize) -> Self {
        assert!(dim % 2 == 0, "standard symplectic form needs even dimension");
        let k = dim / 2;
        let mut g = Matrix::zeros(dim, dim);
        for i in 0..k {
            g[(i, k + i)] = Scalar::one();
            g[(k + i, i)] = -Scalar::one();
        }
        Self { gram: g }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.gram.apply(y))
    }

    /// The covector `w(x, .)` as a coefficient row.
    pub fn flat(&self, x: &[Scalar]) -> Vector {
        self.gram.transpose().apply(x)
    }

    pub fn is_skew(&self) -> bool {
        (&self.gram + &self.gram.transpose()).is_zero()
    }

    /// Full rank; always false in odd dimension for skew forms.
    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// The `w`-adjoint `M*` with `w(Mx, y) = w(x, M*y)`, i.e. `G^{-1} M^T G`.
    pub fn adjoint(&self, m: &Matrix) -> Result<Matrix> {
        check_dim("adjoint", self.dim(), m.rows())?;
        let g_inv = self.gram.inverse().ok_or(Error::DegenerateForm)?;
        Ok(&(&g_inv * &m.transpose()) * &self.gram)
    }

    /// Whether `w(Mx, y) + w(x, My) = 0`, i.e. `M^T G + G M = 0`.
    pub fn is_infinitesimal_isometry(&self, m: &Matrix) -> bool {
        (&(&m.transpose() * &self.gram) + &(&self.gram * m)).is_zero()
    }

    /// The form in the basis given by the columns of `p`: `P^T G P`.
    pub fn change_basis(&self, p: &Matrix) -> Self {
        Self {
            gram: &(&p.transpose() * &self.gram) * p,
        }
    }

    /// Solves `w(v, .) = covector` for `v`.
    pub fn sharp(&self, covector: &[Scalar]) -> Result<Vector> {
        let sol = self
            .gram
            .transpose()
            .solve_affine(covector)
            .ok_or(Error::DegenerateForm)?;
        if !sol.kernel.is_empty() {
            return Err(Error::DegenerateForm);
        }
        Ok(sol.particular)
    }
}

/// Basis of `{ y : w(x, y) = 0 for all x in span(subspace) }`, in reduced form.
pub fn omega_perp(omega: &SymplecticForm, subspace: &[Vector]) -> Result<Vec<Vector>> {
    let n = omega.dim();
    for v in subspace {
        check_dim("omega_perp", n, v.len())?;
    }
    let rows: Vec<Vector> = subspace.iter().map(|x| omega.flat(x)).collect();
    let m = Matrix::from_rows(rows, n);
    Ok(span_basis(&m.nullspace(), n))
}

/// An algebra together with a bilinear form, the candidate data of a flat
/// affine symplectic Lie algebra. Whether the axioms hold is decided by
/// [`crate::verifier::check_fasla`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FaslaTriple {
    pub algebra: Algebra,
    pub omega: SymplecticForm,
}

impl FaslaTriple {
    pub fn new(algebra: Algebra, omega: SymplecticForm) -> Result<Self> {
        check_dim("form vs algebra", algebra.dim(), omega.dim())?;
        Ok(Self { algebra, omega })
    }

    /// The zero-dimensional triple.
    pub fn trivial() -> Self {
        Self {
            algebra: Algebra::zero(0),
            omega: SymplecticForm::standard(0),
        }
    }

    /// `(Q^{2k}, 0, standard form)`.
    pub fn abelian(dim: usize) -> Self {
        Self {
            algebra: Algebra::zero(dim),
            omega: SymplecticForm::standard(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Same triple in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        Ok(Self {
            algebra: self.algebra.change_basis(p)?,
            omega: self.omega.change_basis(p),
        })
    }

    /// Returns the triple if it satisfies every axiom, otherwise the report.
    pub fn verified(self) -> Result<Self> {
        let report = crate::verifier::check_fasla(&self);
        if report.passed() {
            Ok(self)
        } else {
            Err(Error::NotFasla(report))
        }
    }
}
