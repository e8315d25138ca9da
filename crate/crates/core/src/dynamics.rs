//! Completeness criteria, the Chu product, the étale affine representation
//! and central translations.

use num_traits::{One, Zero};

use crate::algebra::{Algebra, FaslaTriple, SymplecticForm};
use crate::cotangent::{cotangent_product, validate_cotangent, CotangentData};
use crate::error::{check_dim, Error, Result};
use crate::extension::decompose_to_zero;
use crate::linalg::{add_vec, axpy, span_basis, unit, Matrix, Vector};
use crate::sampling::small_vectors;
use crate::scalar::{format_scalar, int, to_f64, Scalar};
use crate::verifier::{
    check_associative, check_fasla, check_lie_bracket, check_scalar_2cocycle, check_left_symmetric,
    matrix_check, Check, VerificationReport,
};

/// Number of random vectors used by nilpotency falsifiers.
pub const SAMPLE_COUNT: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Complete,
    Incomplete,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Complete => "complete",
            Verdict::Incomplete => "incomplete",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompletenessReport {
    pub unimodular: bool,
    pub traces_ad: Vec<Scalar>,
    pub traces_l: Vec<Scalar>,
    pub traces_r: Vec<Scalar>,
    /// `R_x` nilpotent for every basis vector and every sampled vector.
    /// A falsifier only: sampling cannot prove nilpotency for all `x`.
    pub right_mults_nilpotent: bool,
    /// First basis or sampled vector whose right multiplication is not nilpotent.
    pub non_nilpotent_witness: Option<Vector>,
    /// Decided by `tr(R_x) = 0` on the basis.
    pub verdict: Verdict,
}

/// Traces of `ad`, `L`, `R` on the basis, and the completeness verdict.
pub fn completeness(t: &FaslaTriple, seed: u64) -> Result<CompletenessReport> {
    let report = check_fasla(t);
    if !report.passed() {
        return Err(Error::NotFasla(report));
    }
    let n = t.dim();
    let a = &t.algebra;
    let traces_l: Vec<Scalar> = (0..n).map(|i| a.left_basis(i).trace()).collect();
    let traces_r: Vec<Scalar> = (0..n).map(|i| a.right_basis(i).trace()).collect();
    let traces_ad: Vec<Scalar> = (0..n).map(|i| a.ad_basis(i).trace()).collect();
    if let Some(i) = traces_l.iter().position(|x| !x.is_zero()) {
        return Err(Error::Invariant(format!("tr L_e{i} = {} is nonzero", traces_l[i])));
    }
    let unimodular = traces_ad.iter().all(Zero::is_zero);
    let verdict = if traces_r.iter().all(Zero::is_zero) {
        Verdict::Complete
    } else {
        Verdict::Incomplete
    };
    if (verdict == Verdict::Complete) != unimodular {
        return Err(Error::Invariant("trace criterion disagrees with unimodularity".into()));
    }
    let probes = (0..n).map(|i| unit(n, i)).chain(small_vectors(n, SAMPLE_COUNT, seed));
    let mut non_nilpotent_witness = None;
    for v in probes {
        if !a.right_mult_matrix(&v)?.is_nilpotent() {
            non_nilpotent_witness = Some(v);
            break;
        }
    }
    Ok(CompletenessReport {
        unimodular,
        traces_ad,
        traces_l,
        traces_r,
        right_mults_nilpotent: non_nilpotent_witness.is_none(),
        non_nilpotent_witness,
        verdict,
    })
}

/// The product with `w(x.y, z) = -w(y, [x, z])` for a Lie bracket with a
/// nondegenerate 2-cocycle. Its commutator is the bracket and it is
/// left-symmetric; both facts are checked.
pub fn chu_connection(bracket: &Algebra, omega: &SymplecticForm) -> Result<Algebra> {
    check_dim("form vs bracket", bracket.dim(), omega.dim())?;
    if !check_lie_bracket(bracket).passed() {
        return Err(Error::NotLieBracket);
    }
    if !omega.is_skew() || !omega.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    if !check_scalar_2cocycle(bracket, omega).passed() {
        return Err(Error::NotCocycle);
    }
    let n = bracket.dim();
    let gt = omega.gram().transpose();
    let gt_inv = gt.inverse().ok_or(Error::DegenerateForm)?;
    let product = Algebra::from_fn(n, |i, j| {
        // (G^T v)_k = w(v, e_k) = -w(e_j, [e_i, e_k])
        let rhs: Vector = (0..n)
            .map(|k| -omega.eval(&unit(n, j), bracket.basis_product(i, k)))
            .collect();
        gt_inv.apply(&rhs)
    });
    if product.commutator_algebra() != *bracket {
        return Err(Error::Invariant("Chu product commutator differs from the bracket".into()));
    }
    if !check_left_symmetric(&product).passed() {
        return Err(Error::Invariant("Chu product is not left-symmetric".into()));
    }
    Ok(product)
}

/// `(Q, F)` acting by `v -> F v + Q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineSymplecticElement {
    pub translation: Vector,
    pub linear: Matrix,
}

impl AffineSymplecticElement {
    pub fn identity(n: usize) -> Self {
        Self {
            translation: vec![Scalar::zero(); n],
            linear: Matrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }
}

fn factorial(k: usize) -> Scalar {
    (1..=k).fold(Scalar::one(), |acc, i| acc * int(i as i64))
}

/// `Q = sum_{k>=1} L_x^{k-1} x / k!` and `F = sum_{k>=0} L_x^k / k!`,
/// exact when `L_x` is nilpotent.
pub fn etale_representation(t: &FaslaTriple, x: &[Scalar], order_cap: usize) -> Result<AffineSymplecticElement> {
    let report = check_fasla(t);
    if !report.passed() {
        return Err(Error::NotFasla(report));
    }
    let n = t.dim();
    check_dim("etale vector", n, x.len())?;
    let l = t.algebra.left_mult_matrix(x)?;
    let Some(index) = l.nilpotency_index() else {
        return Err(Error::NonNilpotent {
            min_poly: l.minimal_polynomial().iter().map(format_scalar).collect(),
        });
    };
    if index > order_cap {
        return Err(Error::OrderCapExceeded { cap: order_cap, index });
    }
    let mut linear = Matrix::zeros(n, n);
    let mut translation = vec![Scalar::zero(); n];
    let mut power = Matrix::identity(n);
    for k in 0..index.max(1) {
        // power = L^k
        linear = &linear + &power.scale(&factorial(k).recip());
        axpy(&mut translation, &factorial(k + 1).recip(), &power.apply(x));
        power = &power * &l;
    }
    Ok(AffineSymplecticElement { translation, linear })
}

/// `F^T G F = G`.
pub fn symplectic_check(el: &AffineSymplecticElement, omega: &SymplecticForm) -> bool {
    if el.linear.rows() != omega.dim() || el.dim() != omega.dim() {
        return false;
    }
    let g = omega.gram();
    &(&el.linear.transpose() * g) * &el.linear == *g
}

/// `(Q_a + F_a Q_b, F_a F_b)`.
pub fn compose_affine(a: &AffineSymplecticElement, b: &AffineSymplecticElement) -> Result<AffineSymplecticElement> {
    check_dim("compose", a.dim(), b.dim())?;
    Ok(AffineSymplecticElement {
        translation: add_vec(&a.translation, &a.linear.apply(&b.translation)),
        linear: &a.linear * &b.linear,
    })
}

/// Floating truncation of the exponential series, for exploration only.
#[derive(Clone, PartialEq, Debug)]
pub struct ApproxElement {
    pub translation: Vec<f64>,
    pub linear: Vec<Vec<f64>>,
    pub order: usize,
    /// Tail estimate `e^r r^{N+1} / (N+1)!` with `r` the max-row-sum norm of `L_x`,
    /// scaled by `|x|` for the translation part.
    pub error_bound: f64,
}

/// Truncates both series after `order` terms in floating point.
pub fn etale_approx(t: &FaslaTriple, x: &[Scalar], order: usize) -> Result<ApproxElement> {
    let n = t.dim();
    check_dim("etale vector", n, x.len())?;
    let l = t.algebra.left_mult_matrix(x)?;
    let lf: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| to_f64(&l[(i, j)])).collect()).collect();
    let xf: Vec<f64> = x.iter().map(to_f64).collect();
    let mul = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    };
    let mut power: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect()).collect();
    let mut linear = vec![vec![0.0; n]; n];
    let mut translation = vec![0.0; n];
    let mut fact = 1.0;
    for k in 0..=order {
        for i in 0..n {
            for j in 0..n {
                linear[i][j] += power[i][j] / fact;
            }
            let px: f64 = (0..n).map(|j| power[i][j] * xf[j]).sum();
            translation[i] += px / (fact * (k as f64 + 1.0));
        }
        power = mul(&power, &lf);
        fact *= k as f64 + 1.0;
    }
    let r = lf.iter().map(|row| row.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let xn = xf.iter().map(|v| v.abs()).fold(0.0, f64::max);
    // fact = (order + 1)!
    let tail = r.exp() * r.powi(order as i32 + 1) / fact;
    Ok(ApproxElement {
        translation,
        linear,
        order,
        error_bound: tail * xn.max(1.0),
    })
}

/// Basis of `{ b : L_b = 0, R_b = 0 }`; each `b` gives the central
/// translations `(t b, Id)`.
pub fn central_translations(t: &FaslaTriple) -> Vec<Vector> {
    t.algebra.two_sided_annihilator()
}

/// Basis of `{ b : L_b = 0 }`: directions whose one-parameter group acts by
/// pure translations.
pub fn translation_directions(t: &FaslaTriple) -> Vec<Vector> {
    t.algebra.left_kernel()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiinvariantReport {
    pub report: VerificationReport,
    /// `dim g, dim g^2, ...` down to 0, where `g^{k+1} = g g^k + g^k g`.
    pub power_chain: Vec<usize>,
    pub central: Vec<Vector>,
    pub decomposition_steps: Option<usize>,
}

/// Consequences of associativity: `L_x L_y + L_y L_x = 0`, `L_x^2 = 0`,
/// nilpotency, central translations and decomposability.
pub fn biinvariant_analysis(t: &FaslaTriple) -> Result<BiinvariantReport> {
    if !check_associative(&t.algebra) {
        return Err(Error::NotAssociative);
    }
    let n = t.dim();
    let a = &t.algebra;
    let ls: Vec<Matrix> = (0..n).map(|i| a.left_basis(i)).collect();
    let mut r = VerificationReport::new();
    let mut anti = Check::pass("L_x L_y + L_y L_x = 0");
    'outer: for i in 0..n {
        for j in 0..n {
            let c = matrix_check("", &(&(&ls[i] * &ls[j]) + &(&ls[j] * &ls[i])), &Matrix::zeros(n, n));
            if let Some(mut w) = c.witness {
                w.indices = [vec![i, j], w.indices].concat();
                anti = Check::from_witness(anti.name, Some(w));
                break 'outer;
            }
        }
    }
    r.push(anti);
    let mut sq = Check::pass("L_x^2 = 0");
    for (i, l) in ls.iter().enumerate() {
        if let Some(mut w) = matrix_check("", &(l * l), &Matrix::zeros(n, n)).witness {
            w.indices.insert(0, i);
            sq = Check::from_witness(sq.name, Some(w));
            break;
        }
    }
    r.push(sq);

    let mut chain = vec![n];
    let mut current: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for v in &current {
            for i in 0..n {
                next.push(a.mul_basis_left(i, v));
                next.push(a.mul_basis_right(v, i));
            }
        }
        let next = span_basis(&next, n);
        if next.len() == current.len() {
            break;
        }
        chain.push(next.len());
        current = next;
    }
    let nilpotent = chain.last() == Some(&0) || n == 0;
    let mut nil = Check::pass("algebra is nilpotent");
    if !nilpotent {
        nil = Check::fail("algebra is nilpotent", vec![chain.len() - 1], int(*chain.last().unwrap() as i64));
    }
    r.push(nil);

    let central = central_translations(t);
    if n > 0 && central.is_empty() {
        let mut c = Check::pass("nonzero central translation");
        c.passed = false;
        r.push(c);
    } else {
        r.push(Check::pass("nonzero central translation"));
    }
    let decomposition_steps = decompose_to_zero(t).ok().map(|s| s.len());
    let mut dec = Check::pass("decomposes to {0}");
    dec.passed = decomposition_steps.is_some();
    r.push(dec);
    Ok(BiinvariantReport {
        report: r,
        power_chain: chain,
        central,
        decomposition_steps,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CotangentCompleteness {
    /// `R_a` and `L'_a` nilpotent on basis and sampled base vectors.
    pub base_side: bool,
    /// `R~` nilpotent on basis and sampled vectors of `B* + B`.
    pub built_side: bool,
    pub agree: bool,
}

/// Compares nilpotency of the base data against the built algebra's right
/// multiplications. The base side is probed at the `B`-components of the
/// same sample vectors.
pub fn cotangent_completeness(d: &CotangentData, seed: u64) -> Result<CotangentCompleteness> {
    let report = validate_cotangent(d)?;
    if !report.passed() {
        return Err(Error::ValidationFailed {
            what: "cotangent data",
            report,
        });
    }
    let n = d.dim();
    let t = cotangent_product(d)?;
    let circ = Algebra::new(d.circ.clone());
    let probes: Vec<Vector> = (0..2 * n)
        .map(|i| unit(2 * n, i))
        .chain(small_vectors(2 * n, SAMPLE_COUNT, seed))
        .collect();
    let mut built_side = true;
    let mut base_side = true;
    for p in &probes {
        built_side &= t.algebra.right_mult_matrix(p)?.is_nilpotent();
        let a = &p[n..];
        base_side &= d.base.right_mult_matrix(a)?.is_nilpotent()
            && circ.left_mult_matrix(a)?.is_nilpotent();
    }
    Ok(CotangentCompleteness {
        base_side,
        built_side,
        agree: base_side == built_side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotangent::hess_product;
    use crate::extension::{double_extend, ExtensionParams};
    use crate::linalg::{scale_vec, vec_from_i64};
    use crate::scalar::frac;

    fn dim2(beta: i64, lambda: i64, mu: i64) -> FaslaTriple {
        double_extend(
            &FaslaTriple::trivial(),
            &ExtensionParams::scalars(int(beta), int(lambda), int(mu)),
        )
        .unwrap()
    }

    #[test]
    fn completeness_examples() {
        let t = dim2(1, 0, 0);
        let r = completeness(&t, 0).unwrap();
        assert!(r.unimodular);
        assert_eq!(r.verdict, Verdict::Complete);
        assert!(r.right_mults_nilpotent);
        let rd = t.algebra.right_basis(1);
        assert!((&rd * &rd).is_zero());

        let mu = 3;
        let t = dim2(1, mu, mu);
        let r = completeness(&t, 0).unwrap();
        assert!(!r.unimodular);
        assert_eq!(r.verdict, Verdict::Incomplete);
        // ad_d(e) = [d, e] = mu e, so tr ad_d = mu.
        assert_eq!(r.traces_ad[1], int(mu));
        assert!(r.traces_l.iter().all(Zero::is_zero));
        // R_d = [[0, beta], [0, -mu]] in basis (e, d).
        assert_eq!(t.algebra.right_basis(1).rational_eigenvalues().unwrap(), vec![int(-mu), int(0)]);
        assert!(r.non_nilpotent_witness.is_some());
    }

    #[test]
    fn chu_examples() {
        let abelian = Algebra::zero(2);
        assert!(chu_connection(&abelian, &SymplecticForm::standard(2)).unwrap().is_zero());

        // aff: [d, e] = e, basis (e, d), w(e, d) = 1.
        let br = Algebra::from_fn(2, |i, j| match (i, j) {
            (1, 0) => vec_from_i64(&[1, 0]),
            (0, 1) => vec_from_i64(&[-1, 0]),
            _ => vec_from_i64(&[0, 0]),
        });
        let w = SymplecticForm::standard(2);
        let p = chu_connection(&br, &w).unwrap();
        // Hand solve: w(d.y, z) = -w(y, [d, z]); y = d, z = d: w(d.d, d) = -w(d, 0) = 0,
        // z = e: w(d.d, e) = -w(d, e) = 1, so d.d has e-coefficient 0 and d-coefficient -1.
        assert_eq!(p.basis_product(1, 1), &vec_from_i64(&[0, -1])[..]);
        let t = FaslaTriple::new(p, w).unwrap();
        assert!(!crate::verifier::check_compatibility(&t.algebra, &t.omega).passed());

        let hess = hess_product(&dim2(0, 1, 1).algebra).unwrap();
        let chu = chu_connection(&hess.algebra.commutator_algebra(), &hess.omega).unwrap();
        assert!(check_left_symmetric(&chu).passed());
    }

    #[test]
    fn etale_closed_form() {
        let beta = 3;
        let t = dim2(beta, 0, 0);
        for tt in [frac(1, 2), int(2), int(-3), frac(-5, 7), int(0)] {
            let x = scale_vec(&tt, &unit(2, 1));
            let el = etale_representation(&t, &x, 8).unwrap();
            let expect_q = vec![&tt * &tt * int(beta) / int(2), tt.clone()];
            let mut expect_f = Matrix::identity(2);
            expect_f[(0, 1)] = &tt * int(beta);
            assert_eq!(el.translation, expect_q);
            assert_eq!(el.linear, expect_f);
            assert!(symplectic_check(&el, &t.omega));
        }
        let id = etale_representation(&dim2(0, 0, 0), &vec_from_i64(&[1, 1]), 8).unwrap();
        assert_eq!(id.linear, Matrix::identity(2));
        assert_eq!(id.translation, vec_from_i64(&[1, 1]));
    }

    #[test]
    fn etale_non_nilpotent_and_cap() {
        let t = dim2(0, 2, 2);
        match etale_representation(&t, &unit(2, 1), 8) {
            Err(Error::NonNilpotent { min_poly }) => assert_eq!(min_poly, vec!["-4", "0", "1"]),
            other => panic!("unexpected {other:?}"),
        }
        let t = dim2(1, 0, 0);
        assert!(matches!(
            etale_representation(&t, &unit(2, 1), 1),
            Err(Error::OrderCapExceeded { cap: 1, index: 2 })
        ));
    }

    #[test]
    fn composition_and_symplectic_check() {
        let t = dim2(2, 0, 0);
        let x = unit(2, 1);
        for (a, b) in [(1, 2), (-1, 3), (0, 5)] {
            let ea = etale_representation(&t, &scale_vec(&int(a), &x), 8).unwrap();
            let eb = etale_representation(&t, &scale_vec(&int(b), &x), 8).unwrap();
            let ab = etale_representation(&t, &scale_vec(&int(a + b), &x), 8).unwrap();
            assert_eq!(compose_affine(&ea, &eb).unwrap(), ab);
        }
        let id = AffineSymplecticElement::identity(2);
        let q1 = AffineSymplecticElement { translation: vec_from_i64(&[1, 2]), linear: Matrix::identity(2) };
        let q2 = AffineSymplecticElement { translation: vec_from_i64(&[-3, 5]), linear: Matrix::identity(2) };
        assert_eq!(compose_affine(&q1, &id).unwrap(), q1);
        assert_eq!(compose_affine(&q1, &q2).unwrap().translation, vec_from_i64(&[-2, 7]));
        let w = SymplecticForm::standard(2);
        assert!(symplectic_check(&id, &w));
        let bad = AffineSymplecticElement {
            translation: vec_from_i64(&[0, 0]),
            linear: Matrix::from_i64(&[&[2, 0], &[0, 2]]),
        };
        assert!(!symplectic_check(&bad, &w));
    }

    #[test]
    fn central_examples() {
        assert!(central_translations(&dim2(0, 1, 2)).is_empty());
        assert_eq!(central_translations(&dim2(1, 0, 0)), vec![unit(2, 0)]);
        assert!(central_translations(&dim2(0, 1, 1)).is_empty());
        assert_eq!(translation_directions(&dim2(0, 1, 1)), vec![unit(2, 0)]);
    }

    #[test]
    fn biinvariant_dd_algebra() {
        let r = biinvariant_analysis(&dim2(1, 0, 0)).unwrap();
        assert!(r.report.passed(), "{}", r.report);
        assert_eq!(r.power_chain, vec![2, 1, 0]);
        assert!(matches!(biinvariant_analysis(&dim2(0, 1, 1)), Err(Error::NotAssociative)));
        let r = biinvariant_analysis(&FaslaTriple::abelian(4)).unwrap();
        assert!(r.report.passed());
        assert_eq!(r.power_chain, vec![4, 0]);
    }

    #[test]
    fn cotangent_completeness_examples() {
        let aff = dim2(0, 1, 1).algebra;
        let r = cotangent_completeness(&CotangentData::classical(aff), 0).unwrap();
        assert!(!r.base_side && !r.built_side && r.agree);
        let r = cotangent_completeness(&CotangentData::classical(Algebra::zero(2)), 0).unwrap();
        assert!(r.base_side && r.built_side);
    }

    #[test]
    fn approx_series_matches_exact_when_nilpotent() {
        let t = dim2(2, 0, 0);
        let x = vec_from_i64(&[0, 1]);
        let ex = etale_representation(&t, &x, 8).unwrap();
        let ap = etale_approx(&t, &x, 6).unwrap();
        for i in 0..2 {
            assert!((ap.translation[i] - to_f64(&ex.translation[i])).abs() < 1e-9);
        }
    }
}
