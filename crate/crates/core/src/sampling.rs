//! Seeded random generators for vectors, left-symmetric algebras, extension
//! data, cotangent data and bimodules. Free coefficients are drawn from
//! `{-2, ..., 2}`; every generated object is validated before it is returned.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, FaslaTriple, Tensor3};
use crate::cohomology::{
    differential_matrix, lie_1cocycle_space, nijenhuis_differential, omega_up, Bimodule, Cochain,
};
use crate::cotangent::{hess_product, validate_cotangent, CotangentData};
use crate::extension::{double_extend, validate_extension, ExtensionParams};
use crate::linalg::{axpy, sub_vec, unit, zero_vector, AffineSolution, Matrix, Vector};
use crate::scalar::{frac, int, Scalar};
use crate::verifier::is_left_symmetric;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `{-2, ..., 2}`.
pub fn small_scalar(rng: &mut SampleRng) -> Scalar {
    int(rng.gen_range(-2..=2))
}

pub fn small_vector(rng: &mut SampleRng, n: usize) -> Vector {
    (0..n).map(|_| small_scalar(rng)).collect()
}

/// `count` vectors of length `n` from a generator seeded with `seed`.
pub fn small_vectors(n: usize, count: usize, seed: u64) -> Vec<Vector> {
    let mut r = rng(seed);
    (0..count).map(|_| small_vector(&mut r, n)).collect()
}

fn table(n: usize, entries: &[(usize, usize, &[i64])]) -> Algebra {
    let mut t = Tensor3::zeros(n);
    for (i, j, v) in entries {
        for (k, c) in v.iter().enumerate() {
            t.set(*i, *j, k, int(*c));
        }
    }
    Algebra::new(t)
}

/// Direct sum of two products.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
    let (n, m) = (a.dim(), b.dim());
    Algebra::from_fn(n + m, |i, j| {
        let mut v = zero_vector(n + m);
        if i < n && j < n {
            v[..n].clone_from_slice(a.basis_product(i, j));
        } else if i >= n && j >= n {
            v[n..].clone_from_slice(b.basis_product(i - n, j - n));
        }
        v
    })
}

/// Hand-picked left-symmetric products of dimension 1 to 3.
pub fn left_symmetric_pool(dim: usize) -> Vec<Algebra> {
    let one = table(1, &[(0, 0, &[1])]);
    let pool2 = vec![
        Algebra::zero(2),
        // e0 e0 = e0, e0 e1 = e1
        table(2, &[(0, 0, &[1, 0]), (0, 1, &[0, 1])]),
        // e0 e0 = e1
        table(2, &[(0, 0, &[0, 1])]),
        // d d = -d, d e = e on basis (e, d)
        table(2, &[(1, 1, &[0, -1]), (1, 0, &[1, 0])]),
        // d d = 2e - d, d e = e, e d = -e
        table(2, &[(1, 1, &[2, -1]), (1, 0, &[1, 0]), (0, 1, &[-1, 0])]),
        direct_sum(&one, &one),
        direct_sum(&one, &Algebra::zero(1)),
    ];
    match dim {
        0 => vec![Algebra::zero(0)],
        1 => vec![Algebra::zero(1), one],
        2 => pool2,
        3 => {
            let mut v = vec![
                Algebra::zero(3),
                // e0 e1 = e2
                table(3, &[(0, 1, &[0, 0, 1])]),
                // e0 acts as the identity
                table(3, &[(0, 0, &[1, 0, 0]), (0, 1, &[0, 1, 0]), (0, 2, &[0, 0, 1])]),
                // e0 e0 = e1, e0 e1 = e2, e1 e0 = e2
                table(3, &[(0, 0, &[0, 1, 0]), (0, 1, &[0, 0, 1]), (1, 0, &[0, 0, 1])]),
            ];
            for a in &pool2 {
                v.push(direct_sum(a, &one));
                v.push(direct_sum(a, &Algebra::zero(1)));
            }
            v
        }
        _ => Vec::new(),
    }
}

/// Unit upper-triangular integer matrix with entries from `{-2..2}`.
fn unimodular(rng: &mut SampleRng, n: usize) -> Matrix {
    let mut p = Matrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            p[(i, j)] = small_scalar(rng);
        }
    }
    p
}

/// A pool element, scaled and written in a random integral basis.
pub fn random_left_symmetric(rng: &mut SampleRng, dim: usize) -> Algebra {
    let pool = left_symmetric_pool(dim);
    let base = pool.choose(rng).expect("dimensions 0 to 3 are covered");
    let s = int(*[1, 2, -1].choose(rng).unwrap());
    let scaled = Algebra::from_fn(dim, |i, j| base.basis_product(i, j).iter().map(|c| c * &s).collect());
    let p = unimodular(rng, dim);
    let a = scaled.change_basis(&p).expect("unimodular change of basis");
    debug_assert!(is_left_symmetric(&a));
    a
}

/// Solves `f(v) = 0` for an affine map `f` on `Q^unknowns`.
fn solve_affine_map(unknowns: usize, f: impl Fn(&[Scalar]) -> Vector) -> Option<AffineSolution> {
    let b0 = f(&zero_vector(unknowns));
    let cols: Vec<Vector> = (0..unknowns).map(|k| sub_vec(&f(&unit(unknowns, k)), &b0)).collect();
    let a = Matrix::from_columns(&cols, b0.len());
    let rhs: Vector = b0.iter().map(|v| -v).collect();
    a.solve_affine(&rhs)
}

fn random_point(rng: &mut SampleRng, sol: &AffineSolution) -> Vector {
    let coeffs: Vec<Scalar> = sol.kernel.iter().map(|_| int(rng.gen_range(-1..=1))).collect();
    sol.point(&coeffs)
}

fn matrix_from_flat(v: &[Scalar], n: usize) -> Matrix {
    Matrix::from_rows((0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect(), n)
}

/// Residuals of every condition on `(D, x0)` for fixed `u` and `lambda`.
fn d_x0_residual(base: &FaslaTriple, u: &Matrix, lambda: &Scalar, v: &[Scalar]) -> Vector {
    let n = base.dim();
    let a = &base.algebra;
    let g = base.omega.gram();
    let d = matrix_from_flat(&v[..n * n], n);
    let x0 = &v[n * n..];
    let mut out = Vec::new();
    let du = &d + u;
    out.extend_from_slice((&(&du.transpose() * g) + &(g * &du)).entries());
    let rx0 = a.right_mult_matrix(x0).expect("shape");
    let comm = &(&(&u.commutator(&d) - &(u * u)) - &u.scale(lambda)) + &rx0;
    out.extend_from_slice(comm.entries());
    let wup = omega_up(base, u, &d, lambda).expect("shape");
    let phi: Vector = base.omega.flat(x0).iter().map(|c| -c).collect();
    let dphi = nijenhuis_differential(
        &Bimodule::trivial(a, 1),
        &Cochain::from_coeffs(1, n, 1, phi).expect("shape"),
    )
    .expect("shape")
    .to_bilinear()
    .expect("degree 2");
    out.extend_from_slice((&wup - &dphi).entries());
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (unit(n, i), unit(n, j));
            let xy = a.mul(&x, &y);
            let mut r = a.mul(&d.apply(&x), &y);
            axpy(&mut r, &int(1), &a.mul(&x, &d.apply(&y)));
            axpy(&mut r, &int(-1), &d.apply(&xy));
            axpy(&mut r, &int(-1), &u.apply(&xy));
            axpy(&mut r, &int(1), &a.mul(&x, &u.apply(&y)));
            out.extend(r);
        }
    }
    out
}

/// Residuals of the conditions on `z0` once `u`, `D`, `x0` are fixed.
fn z0_residual(base: &FaslaTriple, p: &ExtensionParams, z0: &[Scalar]) -> Vector {
    let n = base.dim();
    let w = &base.omega;
    let two = int(2);
    let u_star = w.adjoint(&p.u).expect("nondegenerate");
    let d_star = w.adjoint(&p.d).expect("nondegenerate");
    let xz = sub_vec(&p.x0, z0);
    let mut out = d_star.apply(&xz);
    axpy(&mut out, &-&two, &u_star.apply(&p.x0));
    axpy(&mut out, &-(&two * &p.lambda), &xz);
    axpy(&mut out, &(&p.lambda - &p.mu), z0);
    let uu = &p.u + &u_star;
    let uus = &u_star * &p.u;
    for i in 0..n {
        let mut r = (&uu.column(i)).iter().map(|c| c * (&p.lambda - &p.mu)).collect::<Vector>();
        axpy(&mut r, &-&two, &uus.column(i));
        axpy(&mut r, &int(-1), &base.algebra.mul_basis_left(i, &xz));
        let rx_star = w.adjoint(&base.algebra.right_basis(i)).expect("nondegenerate");
        axpy(&mut r, &int(-1), &rx_star.apply(&xz));
        out.extend(r);
    }
    out
}

/// Random `(lambda, mu)` on one of the two admissible lines.
pub fn random_lambda_mu(rng: &mut SampleRng) -> (Scalar, Scalar) {
    let mu = small_scalar(rng);
    let lambda = if rng.gen_bool(0.5) { mu.clone() } else { &mu * frac(1, 2) };
    (lambda, mu)
}

fn try_params(rng: &mut SampleRng, base: &FaslaTriple, with_u: bool) -> Option<ExtensionParams> {
    let n = base.dim();
    let (lambda, mu) = random_lambda_mu(rng);
    let beta = small_scalar(rng);
    let mut u = Matrix::zeros(n, n);
    if with_u {
        for m in lie_1cocycle_space(base) {
            u = &u + &m.scale(&int(rng.gen_range(-1..=1)));
        }
    }
    let sol = solve_affine_map(n * n + n, |v| d_x0_residual(base, &u, &lambda, v))?;
    let v = random_point(rng, &sol);
    let mut p = ExtensionParams {
        u,
        d: matrix_from_flat(&v[..n * n], n),
        x0: v[n * n..].to_vec(),
        z0: zero_vector(n),
        beta,
        lambda,
        mu,
    };
    let zsol = solve_affine_map(n, |z| z0_residual(base, &p, z))?;
    p.z0 = random_point(rng, &zsol);
    validate_extension(base, &p).ok()?.passed().then_some(p)
}

/// Validated extension data over `base`. Falls back to `u = 0` and finally
/// to `D = 0`, `x0 = z0 = 0`, which are always admissible.
pub fn random_extension_params(rng: &mut SampleRng, base: &FaslaTriple) -> ExtensionParams {
    for attempt in 0..8 {
        if let Some(p) = try_params(rng, base, attempt < 4) {
            return p;
        }
    }
    let (lambda, mu) = random_lambda_mu(rng);
    ExtensionParams {
        beta: small_scalar(rng),
        lambda,
        mu,
        ..ExtensionParams::zero(base.dim())
    }
}

/// A random FASLA base of dimension 0, 2 or 4.
pub fn random_base(rng: &mut SampleRng, dim: usize) -> FaslaTriple {
    match dim {
        0 => FaslaTriple::trivial(),
        2 => {
            let p = random_extension_params(rng, &FaslaTriple::trivial());
            double_extend(&FaslaTriple::trivial(), &p).expect("validated")
        }
        4 => match rng.gen_range(0..3) {
            0 => FaslaTriple::abelian(4),
            1 => {
                let b = random_base(rng, 2);
                let p = random_extension_params(rng, &b);
                double_extend(&b, &p).expect("validated")
            }
            _ => hess_product(&random_left_symmetric(rng, 2)).expect("left-symmetric"),
        },
        _ => panic!("random bases exist in dimensions 0, 2 and 4"),
    }
}

/// Solutions of the conditions on `circ` that are linear in it.
fn circ_candidates(base: &Algebra) -> AffineSolution {
    let n = base.dim();
    solve_affine_map(n * n * n, |v| {
        let c = Algebra::new(Tensor3::from_fn(n, |i, j| v[(i * n + j) * n..(i * n + j + 1) * n].to_vec()));
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                out.extend(sub_vec(c.basis_product(i, j), c.basis_product(j, i)));
                for k in 0..n {
                    let (x, y, z) = (unit(n, i), unit(n, j), unit(n, k));
                    let mut r = base.mul(&x, &c.mul(&y, &z));
                    axpy(&mut r, &int(-1), &c.mul(&base.mul(&x, &y), &z));
                    axpy(&mut r, &int(-1), &c.mul(&y, &base.mul(&x, &z)));
                    out.extend(r);
                }
            }
        }
        out
    })
    .expect("zero is a solution")
}

/// `f` from the cocycles of the dual bimodule that are symmetric in the
/// last two slots.
fn random_f(rng: &mut SampleRng, base: &Algebra, circ: &Tensor3) -> Tensor3 {
    let n = base.dim();
    let module = Bimodule::dual(base, circ).expect("shapes");
    let delta = differential_matrix(&module, 2).expect("degree 2");
    let mut rows = delta.row_vectors();
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                let mut r = zero_vector(n * n * n);
                r[(i * n + j) * n + k] = int(1);
                r[(i * n + k) * n + j] = int(-1);
                rows.push(r);
            }
        }
    }
    let kernel = Matrix::from_rows(rows, n * n * n).nullspace();
    let mut v = zero_vector(n * n * n);
    for k in &kernel {
        axpy(&mut v, &int(rng.gen_range(-1..=1)), k);
    }
    Tensor3::from_fn(n, |i, j| v[(i * n + j) * n..(i * n + j + 1) * n].to_vec())
}

/// Validated cotangent data over a random left-symmetric base of dimension `dim`.
pub fn random_cotangent_data(rng: &mut SampleRng, dim: usize) -> CotangentData {
    let base = random_left_symmetric(rng, dim);
    let n = dim;
    let mut circ = Tensor3::zeros(n);
    if rng.gen_bool(0.5) {
        let cand = circ_candidates(&base);
        for _ in 0..4 {
            let v = random_point(rng, &cand);
            let c = Tensor3::from_fn(n, |i, j| v[(i * n + j) * n..(i * n + j + 1) * n].to_vec());
            let probe = CotangentData {
                base: base.clone(),
                circ: c.clone(),
                f: Tensor3::zeros(n),
            };
            if validate_cotangent(&probe).map(|r| r.passed()).unwrap_or(false) {
                circ = c;
                break;
            }
        }
    }
    let f = if rng.gen_bool(0.7) { random_f(rng, &base, &circ) } else { Tensor3::zeros(n) };
    let d = CotangentData { base, circ, f };
    debug_assert!(validate_cotangent(&d).unwrap().passed());
    d
}

/// A random bimodule over a random left-symmetric base of dimension at most 3:
/// regular, trivial, `(L, 0)`, `(L*, 0)` or the canonical dual.
pub fn random_bimodule(rng: &mut SampleRng) -> Bimodule {
    let dim = rng.gen_range(1..=3);
    let base = random_left_symmetric(rng, dim);
    let n = base.dim();
    let zeros = vec![Matrix::zeros(n, n); n];
    match rng.gen_range(0..5) {
        0 => Bimodule::regular(&base),
        1 => Bimodule::trivial(&base, rng.gen_range(1..=3)),
        2 => {
            let l = (0..n).map(|i| base.left_basis(i)).collect();
            Bimodule::new(base, n, l, zeros).expect("shapes")
        }
        3 => {
            let l = (0..n).map(|i| -&base.left_basis(i).transpose()).collect();
            Bimodule::new(base, n, l, zeros).expect("shapes")
        }
        _ => Bimodule::canonical_dual(&base),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::differential_matrix;
    use crate::verifier::check_fasla;

    fn is_small(v: &[Scalar]) -> bool {
        v.iter().all(|c| c.is_integer() && *c >= int(-2) && *c <= int(2))
    }

    #[test]
    fn vectors_are_seeded_and_small() {
        assert_eq!(small_vectors(3, 5, 7), small_vectors(3, 5, 7));
        assert_ne!(small_vectors(3, 5, 7), small_vectors(3, 5, 8));
        assert!(small_vectors(4, 10, 1).iter().all(|v| is_small(v)));
    }

    #[test]
    fn pool_is_left_symmetric() {
        for dim in 0..=3 {
            for a in left_symmetric_pool(dim) {
                assert_eq!(a.dim(), dim);
                assert!(is_left_symmetric(&a), "{a:?}");
            }
        }
    }

    #[test]
    fn generated_params_validate() {
        let mut r = rng(11);
        for dim in [0, 2, 2, 4] {
            let base = random_base(&mut r, dim);
            assert!(check_fasla(&base).passed());
            let p = random_extension_params(&mut r, &base);
            let t = double_extend(&base, &p).unwrap();
            assert!(check_fasla(&t).passed());
        }
    }

    #[test]
    fn generated_cotangent_data_validates() {
        let mut r = rng(3);
        for dim in 1..=3 {
            let d = random_cotangent_data(&mut r, dim);
            assert!(validate_cotangent(&d).unwrap().passed());
        }
    }

    #[test]
    fn generated_bimodules_verify() {
        let mut r = rng(5);
        for _ in 0..10 {
            let b = random_bimodule(&mut r);
            assert!(b.verify().passed());
            let d1 = differential_matrix(&b, 1).unwrap();
            let d2 = differential_matrix(&b, 2).unwrap();
            assert!((&d2 * &d1).is_zero());
        }
    }
}
