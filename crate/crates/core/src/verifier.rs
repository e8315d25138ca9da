//! Decision procedures for the defining identities, with witness-bearing reports.
//!
//! Every identity is multilinear, so it is checked on basis tuples only.
//! Tuples are scanned in lexicographic order and the first failure is kept.

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{Algebra, FaslaTriple, SymplecticForm};
use crate::error::{check_dim, Result};
use crate::linalg::{first_nonzero, sub_vec, unit, Matrix, Vector};
use crate::scalar::{format_scalar, Scalar};

/// Where an identity fails: the basis indices it was evaluated on and the
/// first nonzero coordinate of `lhs - rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub discrepancy: Scalar,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, indices: Vec<usize>, discrepancy: Scalar) -> Self {
        debug_assert!(!discrepancy.is_zero(), "witness discrepancy must be nonzero");
        Self {
            name: name.into(),
            passed: false,
            witness: Some(Witness {
                indices,
                discrepancy,
            }),
        }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<Witness>) -> Self {
        Self {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.witness {
            Some(w) => json!({
                "check": self.name,
                "passed": self.passed,
                "witness": w.indices,
                "discrepancy": format_scalar(&w.discrepancy),
            }),
            None => json!({
                "check": self.name,
                "passed": self.passed,
                "witness": null,
                "discrepancy": null,
            }),
        }
    }
}

/// Ordered list of named checks.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(check: Check) -> Self {
        Self {
            checks: vec![check],
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Appends `other` with every check name prefixed by `prefix`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(Check::to_json).collect())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{status}  ")?;
            if let Some(w) = &c.witness {
                write!(f, "{:width$}", c.name)?;
                let idx: Vec<String> = w.indices.iter().map(usize::to_string).collect();
                write!(
                    f,
                    "  witness ({})  discrepancy {}",
                    idx.join(","),
                    format_scalar(&w.discrepancy)
                )?;
            } else {
                write!(f, "{}", c.name)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Witness for `lhs != rhs`, if any.
pub fn vector_witness(indices: &[usize], lhs: &[Scalar], rhs: &[Scalar]) -> Option<Witness> {
    let diff = sub_vec(lhs, rhs);
    first_nonzero(&diff).map(|(_, v)| Witness {
        indices: indices.to_vec(),
        discrepancy: v.clone(),
    })
}

/// Witness for `lhs != rhs`, the first differing entry in row-major order.
pub fn matrix_witness(lhs: &Matrix, rhs: &Matrix) -> Option<Witness> {
    assert_eq!((lhs.rows(), lhs.cols()), (rhs.rows(), rhs.cols()));
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            let d = &lhs[(i, j)] - &rhs[(i, j)];
            if !d.is_zero() {
                return Some(Witness {
                    indices: vec![i, j],
                    discrepancy: d,
                });
            }
        }
    }
    None
}

/// Named check of a matrix identity.
pub fn matrix_check(name: &str, lhs: &Matrix, rhs: &Matrix) -> Check {
    Check::from_witness(name, matrix_witness(lhs, rhs))
}

/// Named check of a vector identity with the given index tuple.
pub fn vector_check(name: &str, indices: &[usize], lhs: &[Scalar], rhs: &[Scalar]) -> Check {
    Check::from_witness(name, vector_witness(indices, lhs, rhs))
}

/// Named check that a scalar vanishes.
pub fn scalar_check(name: &str, indices: &[usize], value: Scalar) -> Check {
    if value.is_zero() {
        Check::pass(name)
    } else {
        Check::fail(name, indices.to_vec(), value)
    }
}

fn associator(a: &Algebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
    sub_vec(&a.mul(x, &a.mul(y, z)), &a.mul(&a.mul(x, y), z))
}

fn scan_triples(n: usize, mut f: impl FnMut(usize, usize, usize) -> Option<Witness>) -> Option<Witness> {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let Some(w) = f(i, j, k) {
                    return Some(w);
                }
            }
        }
    }
    None
}

fn left_symmetric_witness(a: &Algebra) -> Option<Witness> {
    let n = a.dim();
    let e: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    scan_triples(n, |i, j, k| {
        let lhs = associator(a, &e[i], &e[j], &e[k]);
        let rhs = associator(a, &e[j], &e[i], &e[k]);
        vector_witness(&[i, j, k], &lhs, &rhs)
    })
}

/// `x(yz) - (xy)z = y(xz) - (yx)z` on basis triples.
pub fn check_left_symmetric(a: &Algebra) -> VerificationReport {
    VerificationReport::single(Check::from_witness("left-symmetric", left_symmetric_witness(a)))
}

pub fn is_left_symmetric(a: &Algebra) -> bool {
    left_symmetric_witness(a).is_none()
}

fn jacobi_witness(bracket: &Algebra) -> Option<Witness> {
    let n = bracket.dim();
    let e: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    scan_triples(n, |i, j, k| {
        let b = |x: &[Scalar], y: &[Scalar]| bracket.mul(x, y);
        let s1 = b(&e[i], &b(&e[j], &e[k]));
        let s2 = b(&e[j], &b(&e[k], &e[i]));
        let s3 = b(&e[k], &b(&e[i], &e[j]));
        let sum = crate::linalg::add_vec(&crate::linalg::add_vec(&s1, &s2), &s3);
        vector_witness(&[i, j, k], &sum, &crate::linalg::zero_vector(n))
    })
}

fn antisymmetry_witness(bracket: &Algebra) -> Option<Witness> {
    let n = bracket.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = bracket.basis_product(i, j);
            let rhs: Vector = bracket.basis_product(j, i).iter().map(|v| -v).collect();
            if let Some(w) = vector_witness(&[i, j], lhs, &rhs) {
                return Some(w);
            }
        }
    }
    None
}

/// Antisymmetry and Jacobi of the commutator bracket of `a`.
pub fn check_jacobi(a: &Algebra) -> VerificationReport {
    check_lie_bracket(&a.commutator_algebra())
}

/// Antisymmetry and Jacobi of a bracket given directly by its tensor.
pub fn check_lie_bracket(bracket: &Algebra) -> VerificationReport {
    let mut r = VerificationReport::new();
    r.push(Check::from_witness("antisymmetry", antisymmetry_witness(bracket)));
    r.push(Check::from_witness("jacobi", jacobi_witness(bracket)));
    r
}

/// `w(e_i, e_j) = -w(e_j, e_i)`.
pub fn check_skew(omega: &SymplecticForm) -> VerificationReport {
    let g = omega.gram();
    let neg_t = -&g.transpose();
    VerificationReport::single(matrix_check("skew", g, &neg_t))
}

/// Full rank of the Gram matrix. Always false in odd dimension for a skew form.
pub fn check_nondegenerate(omega: &SymplecticForm) -> bool {
    omega.is_nondegenerate()
}

fn nondegenerate_check(omega: &SymplecticForm) -> Check {
    // Witness: a kernel vector of G, reported by its leading index and coefficient.
    let kernel = omega.gram().nullspace();
    match kernel.first() {
        None => Check::pass("nondegenerate"),
        Some(v) => {
            let (idx, val) = first_nonzero(v).expect("nullspace vectors are nonzero");
            Check::fail("nondegenerate", vec![idx], val.clone())
        }
    }
}

/// Cyclic sum `w([x,y],z) + w([y,z],x) + w([z,x],y)` over the commutator bracket.
pub fn check_scalar_2cocycle(a: &Algebra, omega: &SymplecticForm) -> VerificationReport {
    let name = "scalar 2-cocycle";
    if let Err(e) = check_dim("2-cocycle", a.dim(), omega.dim()) {
        return shape_failure(name, e);
    }
    let n = a.dim();
    let br = a.commutator_algebra();
    let g = omega.gram();
    let w = |v: &[Scalar], k: usize| -> Scalar { (0..n).map(|i| &v[i] * &g[(i, k)]).sum() };
    let witness = scan_triples(n, |i, j, k| {
        let s = w(br.basis_product(i, j), k) + w(br.basis_product(j, k), i) + w(br.basis_product(k, i), j);
        (!s.is_zero()).then(|| Witness {
            indices: vec![i, j, k],
            discrepancy: s,
        })
    });
    VerificationReport::single(Check::from_witness(name, witness))
}

/// `w(L_x y, z) + w(y, L_x z) = 0` on basis triples `(x, y, z)`.
pub fn check_compatibility(a: &Algebra, omega: &SymplecticForm) -> VerificationReport {
    let name = "compatibility";
    if let Err(e) = check_dim("compatibility", a.dim(), omega.dim()) {
        return shape_failure(name, e);
    }
    let n = a.dim();
    let g = omega.gram();
    let witness = scan_triples(n, |i, j, k| {
        let xy = a.basis_product(i, j);
        let xz = a.basis_product(i, k);
        let s: Scalar = (0..n).map(|l| &xy[l] * &g[(l, k)] + &g[(j, l)] * &xz[l]).sum();
        (!s.is_zero()).then(|| Witness {
            indices: vec![i, j, k],
            discrepancy: s,
        })
    });
    VerificationReport::single(Check::from_witness(name, witness))
}

fn shape_failure(name: &str, e: crate::error::Error) -> VerificationReport {
    let mut c = Check::pass(format!("{name} ({e})"));
    c.passed = false;
    VerificationReport::single(c)
}

/// All axioms of a flat affine symplectic Lie algebra, one line each.
pub fn check_fasla(t: &FaslaTriple) -> VerificationReport {
    let mut r = check_left_symmetric(&t.algebra);
    r.extend(check_jacobi(&t.algebra));
    r.extend(check_skew(&t.omega));
    r.push(nondegenerate_check(&t.omega));
    r.extend(check_scalar_2cocycle(&t.algebra, &t.omega));
    r.extend(check_compatibility(&t.algebra, &t.omega));
    r
}

fn associative_witness(a: &Algebra) -> Option<Witness> {
    let n = a.dim();
    let e: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    scan_triples(n, |i, j, k| {
        let lhs = a.mul(&a.mul(&e[i], &e[j]), &e[k]);
        let rhs = a.mul(&e[i], &a.mul(&e[j], &e[k]));
        vector_witness(&[i, j, k], &lhs, &rhs)
    })
}

/// `(xy)z = x(yz)` on basis triples.
pub fn check_associative(a: &Algebra) -> bool {
    associative_witness(a).is_none()
}

pub fn check_associative_report(a: &Algebra) -> VerificationReport {
    VerificationReport::single(Check::from_witness("associative", associative_witness(a)))
}

/// Bimodule axioms for actions indexed by the basis of `b`, acting on a
/// module of dimension `module_dim`:
/// `x.(y.v) - y.(x.v) = [x,y].v` and `x.(v*y) - (x.v)*y = v*(xy) - (v*x)*y`.
///
/// Witness indices are `(x, y, module basis vector)`.
pub fn check_bimodule(
    b: &Algebra,
    left_action: &[Matrix],
    right_action: &[Matrix],
    module_dim: usize,
) -> Result<VerificationReport> {
    let n = b.dim();
    check_dim("left action count", n, left_action.len())?;
    check_dim("right action count", n, right_action.len())?;
    for m in left_action.iter().chain(right_action) {
        check_dim("action rows", module_dim, m.rows())?;
        check_dim("action cols", module_dim, m.cols())?;
    }
    let combine = |ms: &[Matrix], coeffs: &[Scalar]| -> Matrix {
        let mut acc = Matrix::zeros(module_dim, module_dim);
        for (m, c) in ms.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        acc
    };
    let bracket = b.commutator_algebra();
    let mut w1 = None;
    let mut w2 = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let (li, lj) = (&left_action[i], &left_action[j]);
            let (ri, rj) = (&right_action[i], &right_action[j]);
            let lhs1 = &(li * lj) - &(lj * li);
            let rhs1 = combine(left_action, bracket.basis_product(i, j));
            let lhs2 = &(li * rj) - &(rj * li);
            let rhs2 = &combine(right_action, b.basis_product(i, j)) - &(rj * ri);
            for k in 0..module_dim {
                if w1.is_none() {
                    w1 = vector_witness(&[i, j, k], &lhs1.column(k), &rhs1.column(k));
                }
                if w2.is_none() {
                    w2 = vector_witness(&[i, j, k], &lhs2.column(k), &rhs2.column(k));
                }
            }
            if w1.is_some() && w2.is_some() {
                break 'outer;
            }
        }
    }
    let mut r = VerificationReport::new();
    r.push(Check::from_witness("bimodule left representation", w1));
    r.push(Check::from_witness("bimodule mixed", w2));
    Ok(r)
}
