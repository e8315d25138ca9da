//! Double extension of a flat affine symplectic Lie algebra by a hyperbolic
//! plane `span{e, d}`, and the inverse reduction by a one-dimensional
//! bilateral ideal.

use num_traits::{One, Zero};

use crate::algebra::{omega_perp, Algebra, FaslaTriple, SymplecticForm};
use crate::cohomology::{is_lie_1cocycle, omega_up, Cochain, Bimodule, nijenhuis_differential};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{
    add_vec, axpy, first_nonzero, in_span, is_zero_vector, scale_vec, span_basis, sub_vec, unit,
    zero_vector, Matrix, Vector,
};
use crate::scalar::Scalar;
use crate::verifier::{
    check_fasla, matrix_check, matrix_witness, scalar_check, vector_witness, Check,
    VerificationReport,
};

/// Data `(u, D, x0, z0, beta, lambda, mu)` of a double extension over a base
/// of dimension `2n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtensionParams {
    pub u: Matrix,
    pub d: Matrix,
    pub x0: Vector,
    pub z0: Vector,
    pub beta: Scalar,
    pub lambda: Scalar,
    pub mu: Scalar,
}

impl ExtensionParams {
    /// All-zero data over a base of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Self {
            u: Matrix::zeros(dim, dim),
            d: Matrix::zeros(dim, dim),
            x0: zero_vector(dim),
            z0: zero_vector(dim),
            beta: Scalar::zero(),
            lambda: Scalar::zero(),
            mu: Scalar::zero(),
        }
    }

    /// Data over the zero-dimensional base.
    pub fn scalars(beta: Scalar, lambda: Scalar, mu: Scalar) -> Self {
        Self {
            beta,
            lambda,
            mu,
            ..Self::zero(0)
        }
    }

    pub fn base_dim(&self) -> usize {
        self.x0.len()
    }

    fn check_shapes(&self, n: usize) -> Result<()> {
        check_dim("u rows", n, self.u.rows())?;
        check_dim("u cols", n, self.u.cols())?;
        check_dim("D rows", n, self.d.rows())?;
        check_dim("D cols", n, self.d.cols())?;
        check_dim("x0", n, self.x0.len())?;
        check_dim("z0", n, self.z0.len())
    }
}

fn first_vector_failure(
    n: usize,
    arity: usize,
    mut f: impl FnMut(&[usize]) -> (Vector, Vector),
) -> Option<crate::verifier::Witness> {
    crate::cohomology::tuples(n, arity).find_map(|t| {
        let (lhs, rhs) = f(&t);
        vector_witness(&t, &lhs, &rhs)
    })
}

/// Checks every condition on the extension data, one report line each.
pub fn validate_extension(base: &FaslaTriple, p: &ExtensionParams) -> Result<VerificationReport> {
    let n = base.dim();
    p.check_shapes(n)?;
    let a = &base.algebra;
    let w = &base.omega;
    let mut r = VerificationReport::new();

    let base_report = check_fasla(base);
    r.push(match base_report.first_failure() {
        None => Check::pass("base is a FASLA"),
        Some(c) => Check {
            name: format!("base is a FASLA ({})", c.name),
            passed: false,
            witness: c.witness.clone(),
        },
    });
    if !base_report.passed() {
        return Ok(r);
    }

    let (lambda, mu) = (&p.lambda, &p.mu);
    let two = Scalar::from_integer(2.into());
    r.push(scalar_check(
        "lambda = mu or 2 lambda = mu",
        &[],
        (lambda - mu) * (&two * lambda - mu),
    ));

    let bracket = a.commutator_algebra();
    let cocycle = first_vector_failure(n, 2, |t| {
        let lhs = p.u.apply(bracket.basis_product(t[0], t[1]));
        let rhs = sub_vec(
            &a.mul_basis_left(t[0], &p.u.column(t[1])),
            &a.mul_basis_left(t[1], &p.u.column(t[0])),
        );
        (lhs, rhs)
    });
    debug_assert_eq!(cocycle.is_none(), is_lie_1cocycle(a, &p.u));
    r.push(Check::from_witness("u is a Lie 1-cocycle", cocycle));

    let du = &p.d + &p.u;
    let g = w.gram();
    r.push(matrix_check(
        "D + u is infinitesimally symplectic",
        &(&du.transpose() * g),
        &-&(g * &du),
    ));

    let rx0 = a.right_mult_matrix(&p.x0)?;
    r.push(matrix_check(
        "[u, D] = u^2 + lambda u - R_x0",
        &p.u.commutator(&p.d),
        &(&(&(&p.u * &p.u) + &p.u.scale(lambda)) - &rx0),
    ));

    // w_{u,p} against the coboundary of phi = -w'(x0, .).
    let wup = omega_up(base, &p.u, &p.d, lambda)?;
    let phi: Vector = w.flat(&p.x0).iter().map(|v| -v).collect();
    let dphi = nijenhuis_differential(
        &Bimodule::trivial(a, 1),
        &Cochain::from_coeffs(1, n, 1, phi)?,
    )?
    .to_bilinear()?;
    r.push(Check::from_witness(
        "omega_up is a scalar 2-coboundary",
        matrix_witness(&wup, &dphi),
    ));

    let adj = |m: &Matrix| w.adjoint(m);
    let (u_star, d_star) = if n == 0 {
        (Matrix::zeros(0, 0), Matrix::zeros(0, 0))
    } else {
        (adj(&p.u)?, adj(&p.d)?)
    };
    let xz = sub_vec(&p.x0, &p.z0);
    let mut c3 = d_star.apply(&xz);
    axpy(&mut c3, &-&two, &u_star.apply(&p.x0));
    axpy(&mut c3, &-(&two * lambda), &xz);
    axpy(&mut c3, &(lambda - mu), &p.z0);
    r.push(Check::from_witness(
        "x0 z0 constraint",
        vector_witness(&[], &c3, &zero_vector(n)),
    ));

    let derivation = first_vector_failure(n, 2, |t| {
        let (x, y) = (unit(n, t[0]), unit(n, t[1]));
        let xy = a.mul(&x, &y);
        let mut lhs = a.mul(&p.d.apply(&x), &y);
        axpy(&mut lhs, &Scalar::one(), &a.mul(&x, &p.d.apply(&y)));
        axpy(&mut lhs, &-Scalar::one(), &p.d.apply(&xy));
        let rhs = sub_vec(&p.u.apply(&xy), &a.mul(&x, &p.u.apply(&y)));
        (lhs, rhs)
    });
    r.push(Check::from_witness("D coboundary relation", derivation));

    let uu = &p.u + &u_star;
    let uus = &u_star * &p.u;
    let mut adjoint_rel = None;
    for i in 0..n {
        let mut lhs = scale_vec(&(lambda - mu), &uu.column(i));
        axpy(&mut lhs, &-&two, &uus.column(i));
        let rx_star = adj(&a.right_basis(i))?;
        let rhs = add_vec(&a.mul_basis_left(i, &xz), &rx_star.apply(&xz));
        if let Some(wit) = vector_witness(&[i], &lhs, &rhs) {
            adjoint_rel = Some(wit);
            break;
        }
    }
    r.push(Check::from_witness("u adjoint relation", adjoint_rel));
    Ok(r)
}

/// The extended product and form, without validating the data.
///
/// Basis order `(e, b_1, ..., b_2n, d)`; `w(e, d) = 1` and `span{e, d}` is
/// orthogonal to the base.
pub fn extension_product(base: &FaslaTriple, p: &ExtensionParams) -> Result<FaslaTriple> {
    let n = base.dim();
    p.check_shapes(n)?;
    let big = n + 2;
    let (ie, id) = (0, n + 1);
    let a = &base.algebra;
    let w = &base.omega;
    let embed = |coef_e: Scalar, b: &[Scalar], coef_d: Scalar| -> Vector {
        let mut v = Vec::with_capacity(big);
        v.push(coef_e);
        v.extend_from_slice(b);
        v.push(coef_d);
        v
    };
    let du = &p.d + &p.u;
    let xz = sub_vec(&p.x0, &p.z0);
    let zero_b = zero_vector(n);
    let algebra = Algebra::from_fn(big, |i, j| {
        let z = Scalar::zero;
        match (i, j) {
            (i, j) if i == ie && j == id => embed(&p.lambda - &p.mu, &zero_b, z()),
            (i, j) if i == ie || j == ie => {
                if i == id {
                    embed(p.lambda.clone(), &zero_b, z())
                } else {
                    zero_vector(big)
                }
            }
            (i, j) if i == id && j == id => embed(p.beta.clone(), &p.x0, -p.lambda.clone()),
            (i, j) if i == id => {
                let x = unit(n, j - 1);
                embed(w.eval(&p.x0, &x), &du.column(j - 1), z())
            }
            (i, j) if j == id => {
                let x = unit(n, i - 1);
                embed(w.eval(&xz, &x), &p.u.column(i - 1), z())
            }
            (i, j) => {
                let (x, y) = (i - 1, j - 1);
                let coef = w.eval(&p.u.column(x), &unit(n, y));
                embed(coef, a.basis_product(x, y), z())
            }
        }
    });
    let mut g = Matrix::zeros(big, big);
    g[(ie, id)] = Scalar::one();
    g[(id, ie)] = -Scalar::one();
    for i in 0..n {
        for j in 0..n {
            g[(i + 1, j + 1)] = w.gram()[(i, j)].clone();
        }
    }
    FaslaTriple::new(algebra, SymplecticForm::new(g)?)
}

/// Validates the data and builds the `(2n+2)`-dimensional extension.
pub fn double_extend(base: &FaslaTriple, p: &ExtensionParams) -> Result<FaslaTriple> {
    let report = validate_extension(base, p)?;
    if !report.passed() {
        return Err(Error::ValidationFailed {
            what: "extension parameters",
            report,
        });
    }
    let t = extension_product(base, p)?;
    if let Some(c) = check_fasla(&t).first_failure() {
        return Err(Error::Invariant(format!("extension of valid data fails {}", c.name)));
    }
    Ok(t)
}

/// Basis of the two-sided annihilator `{ e : L_e = R_e = 0 }`.
pub fn find_degenerate_ideal_vectors(t: &FaslaTriple) -> Vec<Vector> {
    t.algebra.two_sided_annihilator()
}

/// Whether `span(basis)` is closed under left and right multiplication by
/// every basis vector.
pub fn is_bilateral_ideal(a: &Algebra, basis: &[Vector]) -> bool {
    let n = a.dim();
    let basis = span_basis(basis, n);
    basis.iter().all(|v| {
        (0..n).all(|i| {
            in_span(&basis, &a.mul_basis_left(i, v)) && in_span(&basis, &a.mul_basis_right(v, i))
        })
    })
}

/// `(span{e} is bilateral, its w-orthogonal is bilateral)`.
pub fn check_bilateral_ideal(t: &FaslaTriple, e: &[Scalar]) -> Result<(bool, bool)> {
    check_dim("ideal generator", t.dim(), e.len())?;
    if is_zero_vector(e) {
        return Err(Error::ZeroVector);
    }
    let line = vec![e.to_vec()];
    let perp = omega_perp(&t.omega, &line)?;
    Ok((is_bilateral_ideal(&t.algebra, &line), is_bilateral_ideal(&t.algebra, &perp)))
}

/// Result of reducing by `span{e}`: `t` in the basis given by the columns of
/// `basis_change` (the vectors `e, b_1, ..., b_2n, d` in original
/// coordinates) equals `double_extend(base, params)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionResult {
    pub base: FaslaTriple,
    pub params: ExtensionParams,
    pub basis_change: Matrix,
}

/// Recovers `(B, u, D, x0, z0, beta, lambda, mu)` from a bilateral ideal
/// `span{e}` with bilateral orthogonal and a vector `d` with `w(e, d) = 1`.
pub fn reduce_by_ideal(t: &FaslaTriple, e: &[Scalar], d: &[Scalar]) -> Result<ReductionResult> {
    let big = t.dim();
    check_dim("d", big, d.len())?;
    let (i_ok, perp_ok) = check_bilateral_ideal(t, e)?;
    if !i_ok || !perp_ok {
        return Err(Error::Hypothesis(format!(
            "span{{e}} bilateral: {i_ok}, its orthogonal bilateral: {perp_ok}"
        )));
    }
    if t.omega.eval(e, d) != Scalar::one() {
        return Err(Error::Hypothesis("w(e, d) must equal 1".into()));
    }
    let n = big - 2;
    let bbar = omega_perp(&t.omega, &[e.to_vec(), d.to_vec()])?;
    check_dim("complement of span{e, d}", n, bbar.len())?;
    let mut cols = vec![e.to_vec()];
    cols.extend(bbar);
    cols.push(d.to_vec());
    let pmat = Matrix::from_columns(&cols, big);
    let s = t.change_basis(&pmat)?;
    let (ie, id) = (0, big - 1);
    let a = &s.algebra;
    let b_part = |v: &[Scalar]| v[1..=n].to_vec();

    let base_alg = Algebra::from_fn(n, |i, j| b_part(a.basis_product(i + 1, j + 1)));
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = s.omega.gram()[(i + 1, j + 1)].clone();
        }
    }
    let base = FaslaTriple::new(base_alg, SymplecticForm::new(g)?)?;

    let u_cols: Vec<Vector> = (0..n).map(|j| b_part(a.basis_product(j + 1, id))).collect();
    let u = Matrix::from_columns(&u_cols, n);
    let d_cols: Vec<Vector> = (0..n)
        .map(|j| sub_vec(&b_part(a.basis_product(id, j + 1)), &u_cols[j]))
        .collect();
    let dmat = Matrix::from_columns(&d_cols, n);
    let dd = a.basis_product(id, id);
    let x0 = b_part(dd);
    let beta = dd[ie].clone();
    let lambda = a.basis_product(id, ie)[ie].clone();
    let gamma = a.basis_product(ie, id)[ie].clone();
    let mu = &lambda - &gamma;
    let covector: Vector = (0..n).map(|j| a.basis_product(j + 1, id)[ie].clone()).collect();
    let xz = if n == 0 {
        Vec::new()
    } else {
        base.omega.sharp(&covector)?
    };
    let z0 = sub_vec(&x0, &xz);
    let params = ExtensionParams {
        u,
        d: dmat,
        x0,
        z0,
        beta,
        lambda,
        mu,
    };
    let rebuilt = double_extend(&base, &params)?;
    if rebuilt != s {
        return Err(Error::Hypothesis(
            "the product is not of double extension form in this splitting".into(),
        ));
    }
    Ok(ReductionResult {
        base,
        params,
        basis_change: pmat,
    })
}

/// Common eigenvectors of all `L_{e_i}` and `R_{e_i}`: each spans a
/// one-dimensional bilateral ideal. Returns basis vectors of the common
/// eigenspaces with rational eigenvalues.
pub fn one_dim_bilateral_ideals(a: &Algebra) -> Vec<Vector> {
    let n = a.dim();
    let ops: Vec<Matrix> = (0..n)
        .flat_map(|i| [a.left_basis(i), a.right_basis(i)])
        .filter(|m| !m.is_zero())
        .collect();
    let mut leaves = Vec::new();
    let full: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    common_eigenspaces(&ops, full, n, &mut leaves);
    let mut out: Vec<Vector> = Vec::new();
    for leaf in leaves {
        for v in span_basis(&leaf, n) {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

fn common_eigenspaces(ops: &[Matrix], space: Vec<Vector>, n: usize, out: &mut Vec<Vec<Vector>>) {
    if space.is_empty() {
        return;
    }
    let Some((m, rest)) = ops.split_first() else {
        out.push(space);
        return;
    };
    let Some(eigs) = m.rational_eigenvalues() else {
        return;
    };
    let w = Matrix::from_columns(&space, n);
    for lam in eigs {
        let shifted = m - &Matrix::identity(n).scale(&lam);
        let coeffs = (&shifted * &w).nullspace();
        let sub: Vec<Vector> = coeffs.iter().map(|c| w.apply(c)).collect();
        common_eigenspaces(rest, sub, n, out);
    }
}

/// The reduction chain ended before reaching dimension 0.
#[derive(Clone, Debug, thiserror::Error)]
#[error("no admissible (e, d) pair in dimension {} after {} reduction steps (annihilator and common-eigenvector search only)", .stuck.dim(), .steps.len())]
pub struct DecompositionFailure {
    pub steps: Vec<ReductionResult>,
    pub stuck: FaslaTriple,
}

/// First admissible `(e, d)` for [`reduce_by_ideal`]: annihilator basis
/// vectors first, then other one-dimensional bilateral ideals; `d` is the
/// first basis vector pairing nontrivially with `e`, rescaled so `w(e, d) = 1`.
pub fn reduction_candidates(t: &FaslaTriple) -> Vec<(Vector, Vector)> {
    let n = t.dim();
    let mut gens = find_degenerate_ideal_vectors(t);
    for v in one_dim_bilateral_ideals(&t.algebra) {
        if !gens.contains(&v) {
            gens.push(v);
        }
    }
    gens.into_iter()
        .filter_map(|e| {
            let (j, c) = (0..n)
                .map(|j| (j, t.omega.eval(&e, &unit(n, j))))
                .find(|(_, c)| !c.is_zero())?;
            Some((e, scale_vec(&c.recip(), &unit(n, j))))
        })
        .collect()
}

/// Repeatedly reduces until dimension 0.
pub fn decompose_to_zero(t: &FaslaTriple) -> std::result::Result<Vec<ReductionResult>, DecompositionFailure> {
    let mut steps = Vec::new();
    let mut current = t.clone();
    while current.dim() > 0 {
        let step = reduction_candidates(&current)
            .into_iter()
            .find_map(|(e, d)| reduce_by_ideal(&current, &e, &d).ok());
        match step {
            Some(s) => {
                current = s.base.clone();
                steps.push(s);
            }
            None => {
                return Err(DecompositionFailure {
                    steps,
                    stuck: current,
                })
            }
        }
    }
    Ok(steps)
}

/// Rebuilds the original triple from a decomposition chain.
pub fn recompose(steps: &[ReductionResult]) -> Result<FaslaTriple> {
    let mut t = FaslaTriple::trivial();
    for s in steps.iter().rev() {
        if s.base != t {
            return Err(Error::Invariant("decomposition chain is inconsistent".into()));
        }
        let ext = double_extend(&t, &s.params)?;
        let back = s
            .basis_change
            .inverse()
            .ok_or_else(|| Error::Invariant("singular basis change".into()))?;
        t = ext.change_basis(&back)?;
    }
    Ok(t)
}

/// Leading index and coefficient of a vector, for deterministic labels.
pub fn leading(v: &[Scalar]) -> Option<(usize, Scalar)> {
    first_nonzero(v).map(|(i, c)| (i, c.clone()))
}
