//! Twisted cotangent construction on `B* + B` and detection of Lagrangian
//! bilateral ideals.

use num_traits::Zero;

use crate::algebra::{omega_perp, Algebra, FaslaTriple, SymplecticForm, Tensor3};
use crate::cohomology::{dual_valued_cochain, nijenhuis_differential, tuples, Bimodule};
use crate::error::{check_dim, Error, Result};
use crate::extension::{is_bilateral_ideal, one_dim_bilateral_ideals};
use crate::linalg::{
    add_vec, in_span, span_basis, span_dim, unit, zero_vector, Matrix, Vector,
};
use crate::scalar::frac;
use crate::verifier::{check_left_symmetric, vector_witness, Check, VerificationReport, Witness};

/// A left-symmetric `base`, a commutative product `circ` on it, and a
/// 2-cochain `f` with values in the dual: `f[i][j][k] = f(e_i, e_j)(e_k)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CotangentData {
    pub base: Algebra,
    pub circ: Tensor3,
    pub f: Tensor3,
}

impl CotangentData {
    /// `circ = 0`, `f = 0`.
    pub fn classical(base: Algebra) -> Self {
        let n = base.dim();
        Self {
            base,
            circ: Tensor3::zeros(n),
            f: Tensor3::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    fn check_shapes(&self) -> Result<()> {
        check_dim("circ product", self.dim(), self.circ.dim())?;
        check_dim("cocycle f", self.dim(), self.f.dim())
    }

    /// The dual bimodule `a . beta = L*_a(beta)`, `alpha [] b = alpha o L'_b`.
    pub fn bimodule(&self) -> Result<Bimodule> {
        Bimodule::dual(&self.base, &self.circ)
    }
}

fn scan(n: usize, arity: usize, mut f: impl FnMut(&[usize]) -> Option<Witness>) -> Option<Witness> {
    tuples(n, arity).find_map(|t| f(&t))
}

/// Every hypothesis of the construction, one line each.
pub fn validate_cotangent(d: &CotangentData) -> Result<VerificationReport> {
    d.check_shapes()?;
    let n = d.dim();
    let b = &d.base;
    let circ = Algebra::new(d.circ.clone());
    let mut r = VerificationReport::new();
    let mut ls = check_left_symmetric(b);
    ls.checks[0].name = "base left-symmetric".into();
    r.extend(ls);

    r.push(Check::from_witness(
        "circ commutative",
        scan(n, 2, |t| {
            vector_witness(t, circ.basis_product(t[0], t[1]), circ.basis_product(t[1], t[0]))
        }),
    ));

    // a o (b o c) + a (b o c) = (ab) o c + b o (ac)
    r.push(Check::from_witness(
        "circ compatibility",
        scan(n, 3, |t| {
            let (x, y, z) = (unit(n, t[0]), unit(n, t[1]), unit(n, t[2]));
            let yz = circ.mul(&y, &z);
            let lhs = add_vec(&circ.mul(&x, &yz), &b.mul(&x, &yz));
            let rhs = add_vec(&circ.mul(&b.mul(&x, &y), &z), &circ.mul(&y, &b.mul(&x, &z)));
            vector_witness(t, &lhs, &rhs)
        }),
    ));

    let module = d.bimodule()?;
    r.extend_prefixed("dual bimodule: ", module.verify());

    let df = nijenhuis_differential(&module, &dual_valued_cochain(&d.f))?;
    r.push(Check::from_witness(
        "f is a 2-cocycle",
        scan(n, 3, |t| vector_witness(t, df.value(t), &zero_vector(n))),
    ));

    r.push(Check::from_witness(
        "f symmetric in its last two slots",
        scan(n, 3, |t| {
            let diff = d.f.get(t[0], t[1], t[2]) - d.f.get(t[0], t[2], t[1]);
            (!diff.is_zero()).then(|| Witness {
                indices: t.to_vec(),
                discrepancy: diff,
            })
        }),
    ));
    Ok(r)
}

/// The product on `B* + B` without validation.
///
/// Basis order `(e*_1, ..., e*_n, e_1, ..., e_n)`, form `w(alpha + a, beta + b) = alpha(b) - beta(a)`.
pub fn cotangent_product(d: &CotangentData) -> Result<FaslaTriple> {
    d.check_shapes()?;
    let n = d.dim();
    let c = d.base.tensor();
    let algebra = Algebra::from_fn(2 * n, |i, j| {
        let mut v = zero_vector(2 * n);
        match (i < n, j < n) {
            (true, true) => {}
            // e*_i . e_j = e*_i o L'_{e_j}
            (true, false) => {
                let j = j - n;
                for k in 0..n {
                    v[k] = d.circ.get(j, k, i).clone();
                }
            }
            // e_i . e*_j = L*_{e_i}(e*_j)
            (false, true) => {
                let i = i - n;
                for k in 0..n {
                    v[k] = -c.get(i, k, j).clone();
                }
            }
            (false, false) => {
                let (i, j) = (i - n, j - n);
                for k in 0..n {
                    v[k] = d.f.get(i, j, k).clone();
                    v[n + k] = c.get(i, j, k).clone();
                }
            }
        }
        v
    });
    FaslaTriple::new(algebra, SymplecticForm::standard(2 * n))
}

/// Validates and builds the twisted cotangent algebra.
pub fn twisted_cotangent(d: &CotangentData) -> Result<FaslaTriple> {
    let report = validate_cotangent(d)?;
    if !report.passed() {
        return Err(Error::ValidationFailed {
            what: "cotangent data",
            report,
        });
    }
    cotangent_product(d)
}

/// The classical cotangent with its Hess product (`circ = 0`, `f = 0`).
/// Checks that `B.B` lies in `B`, `B.B*` in `B*`, and `B*` annihilates from the left.
pub fn hess_product(base: &Algebra) -> Result<FaslaTriple> {
    if !check_left_symmetric(base).passed() {
        return Err(Error::NotLeftSymmetric);
    }
    let t = twisted_cotangent(&CotangentData::classical(base.clone()))?;
    let n = base.dim();
    if !hess_blocks_hold(&t.algebra, n) {
        return Err(Error::Invariant("Hess product does not respect the splitting".into()));
    }
    Ok(t)
}

/// Block test: `B.B` in `B`, `B.B*` in `B*`, `B*.g = 0`.
pub fn hess_blocks_hold(a: &Algebra, n: usize) -> bool {
    (0..2 * n).all(|i| {
        (0..2 * n).all(|j| {
            let v = a.basis_product(i, j);
            let dual_part = v[..n].iter().all(Zero::is_zero);
            let base_part = v[n..].iter().all(Zero::is_zero);
            match (i < n, j < n) {
                (true, _) => dual_part && base_part,
                (false, true) => base_part,
                (false, false) => dual_part,
            }
        })
    })
}

/// A Lagrangian bilateral ideal and the cotangent data it induces:
/// `t` in the basis given by the columns of `basis_change` equals
/// `twisted_cotangent(data)`; the first `n` columns span `ideal`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LagrangianSplit {
    pub ideal: Vec<Vector>,
    pub data: CotangentData,
    pub basis_change: Matrix,
}

fn is_isotropic(omega: &SymplecticForm, basis: &[Vector]) -> bool {
    basis
        .iter()
        .all(|x| basis.iter().all(|y| omega.eval(x, y).is_zero()))
}

/// Smallest bilateral ideal containing `span(gens)`.
fn ideal_closure(a: &Algebra, gens: &[Vector]) -> Vec<Vector> {
    let n = a.dim();
    let mut basis = span_basis(gens, n);
    loop {
        let mut grown = basis.clone();
        for v in &basis {
            for i in 0..n {
                grown.push(a.mul_basis_left(i, v));
                grown.push(a.mul_basis_right(v, i));
            }
        }
        let next = span_basis(&grown, n);
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Candidate Lagrangian subspaces, in search order.
fn lagrangian_candidates(t: &FaslaTriple) -> Vec<Vec<Vector>> {
    let dim = t.dim();
    let n = dim / 2;
    let mut out: Vec<Vec<Vector>> = Vec::new();
    let push = |c: Vec<Vector>, out: &mut Vec<Vec<Vector>>| {
        let c = span_basis(&c, dim);
        if c.len() == n && !out.contains(&c) {
            out.push(c);
        }
    };
    for s in subsets(dim, n) {
        push(s.iter().map(|&i| unit(dim, i)).collect(), &mut out);
    }
    let ann = t.algebra.two_sided_annihilator();
    if ann.len() == n && is_isotropic(&t.omega, &ann) {
        push(ann.clone(), &mut out);
    }
    // Grow ideals from annihilator vectors and common eigenvectors while
    // they stay isotropic.
    let mut seeds = ann;
    for v in one_dim_bilateral_ideals(&t.algebra) {
        if !seeds.contains(&v) {
            seeds.push(v);
        }
    }
    let extras: Vec<Vector> = seeds.iter().cloned().chain((0..dim).map(|i| unit(dim, i))).collect();
    for seed in &seeds {
        let mut j = ideal_closure(&t.algebra, std::slice::from_ref(seed));
        if !is_isotropic(&t.omega, &j) {
            continue;
        }
        while j.len() < n {
            let perp = omega_perp(&t.omega, &j).unwrap_or_default();
            let next = extras.iter().filter(|w| in_span(&perp, w) && !in_span(&j, w)).find_map(|w| {
                let mut gens = j.clone();
                gens.push(w.clone());
                let k = ideal_closure(&t.algebra, &gens);
                (k.len() <= n && is_isotropic(&t.omega, &k)).then_some(k)
            });
            match next {
                Some(k) => j = k,
                None => break,
            }
        }
        if j.len() == n {
            push(j, &mut out);
        }
    }
    out
}

/// Reads cotangent data off a Lagrangian bilateral ideal, or `None` if the
/// split does not reproduce `t`.
fn split_along(t: &FaslaTriple, ideal: &[Vector]) -> Option<LagrangianSplit> {
    let dim = t.dim();
    let n = dim / 2;
    if !is_isotropic(&t.omega, ideal) || !is_bilateral_ideal(&t.algebra, ideal) {
        return None;
    }
    // Complement with w(alpha_i, b_j) = delta_ij.
    let rows = Matrix::from_rows(ideal.iter().map(|a| t.omega.flat(a)).collect(), dim);
    let mut comp: Vec<Vector> = Vec::with_capacity(n);
    for j in 0..n {
        comp.push(rows.solve_affine(&unit(n, j))?.particular);
    }
    // Make the complement Lagrangian: b_i += sum_k c_ik alpha_k, c_ik = -w(b_i, b_k)/2.
    let half = frac(1, 2);
    let corrected: Vec<Vector> = (0..n)
        .map(|i| {
            let mut v = comp[i].clone();
            for k in 0..n {
                let c = -(t.omega.eval(&comp[i], &comp[k]) * &half);
                crate::linalg::axpy(&mut v, &c, &ideal[k]);
            }
            v
        })
        .collect();
    let mut cols: Vec<Vector> = ideal.to_vec();
    cols.extend(corrected);
    let p = Matrix::from_columns(&cols, dim);
    let s = t.change_basis(&p).ok()?;
    let a = &s.algebra;
    let base = Algebra::from_fn(n, |i, j| a.basis_product(n + i, n + j)[n..].to_vec());
    let mut f = Tensor3::zeros(n);
    let mut circ = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let bb = a.basis_product(n + i, n + j);
            let ab = a.basis_product(i, n + j);
            for k in 0..n {
                f.set(i, j, k, bb[k].clone());
                circ.set(j, k, i, ab[k].clone());
            }
        }
    }
    let data = CotangentData { base, circ, f };
    let rebuilt = twisted_cotangent(&data).ok()?;
    (rebuilt == s).then(|| LagrangianSplit {
        ideal: ideal.to_vec(),
        data,
        basis_change: p,
    })
}

/// Searches a restricted family of Lagrangian bilateral ideals: coordinate
/// subspaces, the annihilator, and isotropic ideals grown from annihilator
/// vectors and common eigenvectors. Failure means "not found", not "none exist".
pub fn detect_lagrangian_ideal(t: &FaslaTriple) -> Result<LagrangianSplit> {
    if t.dim() % 2 != 0 {
        return Err(Error::Hypothesis("odd dimension".into()));
    }
    lagrangian_candidates(t)
        .iter()
        .find_map(|c| split_along(t, c))
        .ok_or_else(|| {
            Error::NotFound("no Lagrangian bilateral ideal among the searched candidates".into())
        })
}

/// Right multiplications `R~_x` of the built algebra for every basis vector,
/// checked blockwise: `R~_a(b) = f(b,a) + ba`, `R~_a(beta) = beta o L'_a`,
/// `R~_beta(a) = L*_a(beta)`, `R~_alpha(beta) = 0`.
pub fn cotangent_right_mults(d: &CotangentData) -> Result<Vec<Matrix>> {
    let t = twisted_cotangent(d)?;
    let n = d.dim();
    let mults: Vec<Matrix> = (0..2 * n).map(|i| t.algebra.right_basis(i)).collect();
    let c = d.base.tensor();
    for x in 0..2 * n {
        for y in 0..2 * n {
            let got = mults[x].column(y);
            let mut expect = zero_vector(2 * n);
            match (x < n, y < n) {
                (true, true) => {}
                (false, false) => {
                    let (a, b) = (x - n, y - n);
                    for k in 0..n {
                        expect[k] = d.f.get(b, a, k).clone();
                        expect[n + k] = c.get(b, a, k).clone();
                    }
                }
                (false, true) => {
                    for k in 0..n {
                        expect[k] = d.circ.get(x - n, k, y).clone();
                    }
                }
                (true, false) => {
                    for k in 0..n {
                        expect[k] = -c.get(y - n, k, x).clone();
                    }
                }
            }
            if got != expect {
                return Err(Error::Invariant(format!(
                    "right multiplication block mismatch at ({x}, {y})"
                )));
            }
        }
    }
    Ok(mults)
}

/// Whether the `B` block is closed under the commutator bracket.
pub fn base_is_lie_subalgebra(t: &FaslaTriple, n: usize) -> bool {
    let br = t.algebra.commutator_algebra();
    (n..2 * n).all(|i| (n..2 * n).all(|j| br.basis_product(i, j)[..n].iter().all(Zero::is_zero)))
}

/// Whether the first `n` basis vectors span an abelian isotropic subalgebra
/// with null product.
pub fn dual_block_is_abelian_lagrangian(t: &FaslaTriple, n: usize) -> bool {
    let duals: Vec<Vector> = (0..n).map(|i| unit(2 * n, i)).collect();
    let null = (0..n).all(|i| (0..n).all(|j| t.algebra.basis_product(i, j).iter().all(Zero::is_zero)));
    null && is_isotropic(&t.omega, &duals) && span_dim(&duals, 2 * n) == n
}

/// `f` read as a map `B x B -> B*`; `true` when `f(a, b) = f(b, a)`.
pub fn f_is_symmetric(f: &Tensor3) -> bool {
    let n = f.dim();
    tuples(n, 3).all(|t| f.get(t[0], t[1], t[2]) == f.get(t[1], t[0], t[2]))
}
