//! Built-in examples: the dimension-2 families, the even-dimensional
//! family over an abelian base, and cotangent instances.

use num_traits::Zero;

use crate::algebra::{Algebra, FaslaTriple, Tensor3};
use crate::cotangent::{hess_blocks_hold, hess_product, twisted_cotangent, CotangentData};
use crate::dynamics::{central_translations, completeness, Verdict};
use crate::error::{check_dim, Error, Result};
use crate::extension::{decompose_to_zero, double_extend, ExtensionParams};
use crate::linalg::{unit, zero_vector, Matrix, Vector};
use crate::scalar::{format_scalar, frac, int, Scalar};
use crate::verifier::{check_associative, check_fasla};

/// Properties recorded with each catalog entry.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Annotations {
    pub complete: bool,
    pub unimodular: bool,
    pub central_translations: usize,
    pub associative: bool,
    pub decomposes: bool,
}

impl Annotations {
    /// Computes every annotation of `t` from scratch.
    pub fn compute(t: &FaslaTriple) -> Result<Self> {
        let c = completeness(t, 0)?;
        Ok(Self {
            complete: c.verdict == Verdict::Complete,
            unimodular: c.unimodular,
            central_translations: central_translations(t).len(),
            associative: check_associative(&t.algebra),
            decomposes: decompose_to_zero(t).is_ok(),
        })
    }

    pub fn fields(&self) -> [(&'static str, String); 5] {
        [
            ("complete", self.complete.to_string()),
            ("unimodular", self.unimodular.to_string()),
            ("central_translations", self.central_translations.to_string()),
            ("associative", self.associative.to_string()),
            ("decomposes", self.decomposes.to_string()),
        ]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Builder call and its arguments.
    pub builder: String,
    pub triple: FaslaTriple,
    pub expected: Annotations,
    /// Basis labels, in basis order.
    pub labels: Vec<String>,
    pub notes: Vec<String>,
}

impl CatalogEntry {
    /// Re-checks the axioms and every expected annotation.
    pub fn verify(&self) -> Result<()> {
        let report = check_fasla(&self.triple);
        if !report.passed() {
            return Err(Error::NotFasla(report));
        }
        let actual = Annotations::compute(&self.triple)?;
        for ((name, want), (_, got)) in self.expected.fields().iter().zip(actual.fields()) {
            if *want != got {
                return Err(Error::Invariant(format!(
                    "catalog entry {}: {name} expected {want}, found {got}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// `lambda = mu` or `2 lambda = mu`.
pub fn admissible_lambda_mu(lambda: &Scalar, mu: &Scalar) -> bool {
    lambda == mu || &(lambda * int(2)) == mu
}

/// The two-dimensional FASLA on basis `(e, d)` with `w(e, d) = 1` and
/// `d.d = beta e - lambda d`, `d.e = lambda e`, `e.d = (lambda - mu) e`.
pub fn dim2_family(beta: Scalar, lambda: Scalar, mu: Scalar) -> Result<FaslaTriple> {
    if !admissible_lambda_mu(&lambda, &mu) {
        return Err(Error::Hypothesis(format!(
            "need lambda = mu or 2 lambda = mu, got lambda = {}, mu = {}",
            format_scalar(&lambda),
            format_scalar(&mu)
        )));
    }
    double_extend(&FaslaTriple::trivial(), &ExtensionParams::scalars(beta, lambda, mu))
}

/// The `2n`-dimensional double extension of the abelian `(Q^{2n-2}, 0, w0)`
/// with `u = 0` and `z0 = x0`.
pub fn even_dim_family(
    n: usize,
    d: &Matrix,
    mu: Scalar,
    lambda: Scalar,
    beta: Scalar,
    x0: &[Scalar],
) -> Result<FaslaTriple> {
    if n < 2 {
        return Err(Error::Hypothesis(format!("n must be at least 2, got {n}")));
    }
    let m = 2 * n - 2;
    check_dim("D rows", m, d.rows())?;
    check_dim("D cols", m, d.cols())?;
    check_dim("x0", m, x0.len())?;
    let base = FaslaTriple::abelian(m);
    if !base.omega.is_infinitesimal_isometry(d) {
        return Err(Error::Hypothesis("D is not in sp(w0)".into()));
    }
    if lambda != mu {
        if &lambda * int(2) != mu {
            return Err(Error::Hypothesis("need lambda = mu or 2 lambda = mu".into()));
        }
        if x0.iter().any(|c| !c.is_zero()) {
            return Err(Error::Hypothesis("2 lambda = mu != lambda forces x0 = 0".into()));
        }
    }
    let params = ExtensionParams {
        u: Matrix::zeros(m, m),
        d: d.clone(),
        x0: x0.to_vec(),
        z0: x0.to_vec(),
        beta,
        lambda,
        mu,
    };
    double_extend(&base, &params)
}

/// The default `D`: the nilpotent upper-triangular element of `sp(2)`.
pub fn default_sp2_element() -> Matrix {
    Matrix::from_i64(&[&[0, 1], &[0, 0]])
}

fn ext_labels(n: usize) -> Vec<String> {
    let mut v = vec!["e".to_string()];
    v.extend((1..=n).map(|i| format!("b{i}")));
    v.push("d".into());
    v
}

fn cot_labels(names: &[&str]) -> Vec<String> {
    names
        .iter()
        .map(|s| format!("{s}*"))
        .chain(names.iter().map(|s| s.to_string()))
        .collect()
}

/// The affine line algebra `d.d = -d`, `d.e = e` on basis `(e, d)`.
pub fn aff_line() -> Algebra {
    let mut t = Tensor3::zeros(2);
    t.set(1, 1, 1, int(-1));
    t.set(1, 0, 0, int(1));
    Algebra::new(t)
}

/// Dimension 1 with `a.a = a` and `f(a, a) = a*`.
pub fn twisted_line_data() -> CotangentData {
    let mut base = Tensor3::zeros(1);
    base.set(0, 0, 0, int(1));
    let mut f = Tensor3::zeros(1);
    f.set(0, 0, 0, int(1));
    CotangentData {
        base: Algebra::new(base),
        circ: Tensor3::zeros(1),
        f,
    }
}

fn annotations(complete: bool, central: usize, associative: bool, decomposes: bool) -> Annotations {
    Annotations {
        complete,
        unimodular: complete,
        central_translations: central,
        associative,
        decomposes,
    }
}

fn builder_call(name: &str, args: &[(&str, &Scalar)]) -> String {
    let parts: Vec<String> = args
        .iter()
        .map(|(k, v)| format!("{k}={}", format_scalar(v)))
        .collect();
    format!("{name}({})", parts.join(", "))
}

fn dim2_entry(name: &'static str, beta: i64, lambda: i64, mu: i64, expected: Annotations) -> Result<CatalogEntry> {
    let (b, l, m) = (int(beta), int(lambda), int(mu));
    let builder = builder_call("dim2_family", &[("beta", &b), ("lambda", &l), ("mu", &m)]);
    let mut notes = Vec::new();
    if lambda * 2 == mu && lambda != mu {
        notes.push(
            "the printed table gives d.d = beta e - (mu/2) e; this entry uses the general \
             formula d.d = beta e - lambda d"
                .to_string(),
        );
    }
    Ok(CatalogEntry {
        name,
        builder,
        triple: dim2_family(b, l, m)?,
        expected,
        labels: ext_labels(0),
        notes,
    })
}

/// Every built-in example with its annotations, in a fixed order.
pub fn reference_suite() -> Result<Vec<CatalogEntry>> {
    let mut entries = vec![
        dim2_entry("dim2-abelian-beta0", 0, 0, 0, annotations(true, 2, true, true))?,
        dim2_entry("dim2-abelian-beta1", 1, 0, 0, annotations(true, 1, true, true))?,
        dim2_entry("dim2-lambda-eq-mu", 0, 1, 1, annotations(false, 0, false, true))?,
        dim2_entry("dim2-lambda-half-mu", 0, 1, 2, annotations(false, 0, false, true))?,
    ];

    let d = default_sp2_element();
    entries.push(CatalogEntry {
        name: "even-dim-n2",
        builder: "even_dim_family(n=2, D=[[0,1],[0,0]], mu=0, lambda=0, beta=0, x0=0)".into(),
        triple: even_dim_family(2, &d, int(0), int(0), int(0), &zero_vector(2))?,
        expected: annotations(true, 2, true, true),
        labels: ext_labels(2),
        notes: Vec::new(),
    });
    entries.push(CatalogEntry {
        name: "even-dim-n3",
        builder: "even_dim_family(n=3, D=0, mu=1, lambda=1, beta=0, x0=b1)".into(),
        triple: even_dim_family(3, &Matrix::zeros(4, 4), int(1), int(1), int(0), &unit(4, 0))?,
        expected: annotations(false, 4, false, true),
        labels: ext_labels(4),
        notes: Vec::new(),
    });

    let hess = hess_product(&aff_line())?;
    if !hess_blocks_hold(&hess.algebra, 2) {
        return Err(Error::Invariant("Hess blocks".into()));
    }
    entries.push(CatalogEntry {
        name: "cotangent-aff(R)-hess",
        builder: "hess_product(aff: d.d = -d, d.e = e)".into(),
        triple: hess,
        expected: annotations(false, 0, false, true),
        labels: cot_labels(&["e", "d"]),
        notes: Vec::new(),
    });
    entries.push(CatalogEntry {
        name: "twisted-cotangent-sym-f",
        builder: "twisted_cotangent(a.a = a, circ = 0, f(a, a) = a*)".into(),
        triple: twisted_cotangent(&twisted_line_data())?,
        expected: annotations(false, 0, false, true),
        labels: cot_labels(&["a"]),
        notes: Vec::new(),
    });
    for e in &entries {
        e.verify()?;
    }
    Ok(entries)
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    reference_suite()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::NotFound(format!("no catalog entry named {name}")))
}

/// Structure constants of the `(e, d)` table as `(d.d, d.e, e.d)`.
pub fn dim2_table(t: &FaslaTriple) -> (Vector, Vector, Vector) {
    let a = &t.algebra;
    (
        a.basis_product(1, 1).to_vec(),
        a.basis_product(1, 0).to_vec(),
        a.basis_product(0, 1).to_vec(),
    )
}

/// The `lambda = mu / 2` table for a given `mu` and `beta`.
pub fn half_mu_table(beta: &Scalar, mu: &Scalar) -> (Vector, Vector, Vector) {
    let l = mu * frac(1, 2);
    (
        vec![beta.clone(), -l.clone()],
        vec![l.clone(), Scalar::zero()],
        vec![-l, Scalar::zero()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cohomology_dims, lie_h1_dim, Bimodule};
    use crate::extension::reduce_by_ideal;
    use crate::linalg::vec_from_i64;

    #[test]
    fn suite_loads_and_verifies() {
        let s = reference_suite().unwrap();
        assert_eq!(s.len(), 8);
        let names: Vec<_> = s.iter().map(|e| e.name).collect();
        assert_eq!(names[0], "dim2-abelian-beta0");
        assert_eq!(names[6], "cotangent-aff(R)-hess");
        for e in &s {
            assert_eq!(e.labels.len(), e.triple.dim(), "{}", e.name);
        }
    }

    #[test]
    fn dim2_tables_match_printed_entries() {
        let ab = dim2_family(int(1), int(0), int(0)).unwrap();
        assert_eq!(dim2_table(&ab), (vec_from_i64(&[1, 0]), vec_from_i64(&[0, 0]), vec_from_i64(&[0, 0])));
        assert!(dim2_family(int(0), int(0), int(0)).unwrap().algebra.is_zero());
        let aff = dim2_family(int(0), int(1), int(1)).unwrap();
        assert_eq!(dim2_table(&aff), (vec_from_i64(&[0, -1]), vec_from_i64(&[1, 0]), vec_from_i64(&[0, 0])));
        let half = dim2_family(int(0), int(1), int(2)).unwrap();
        assert_eq!(dim2_table(&half), half_mu_table(&int(0), &int(2)));
        assert!(matches!(dim2_family(int(0), int(1), int(3)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn even_dim_preconditions() {
        let not_sp = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert!(even_dim_family(2, &not_sp, int(0), int(0), int(0), &zero_vector(2)).is_err());
        assert!(even_dim_family(2, &Matrix::zeros(2, 2), int(2), int(1), int(0), &unit(2, 0)).is_err());
        assert!(even_dim_family(2, &Matrix::zeros(2, 2), int(2), int(1), int(0), &zero_vector(2)).is_ok());
        let abelian = even_dim_family(2, &Matrix::zeros(2, 2), int(0), int(0), int(0), &zero_vector(2)).unwrap();
        assert!(abelian.algebra.is_zero());
    }

    #[test]
    fn even_dim_reduces_back() {
        let d = default_sp2_element();
        let x0 = vec_from_i64(&[1, -1]);
        let t = even_dim_family(2, &d, int(1), int(1), int(2), &x0).unwrap();
        let r = reduce_by_ideal(&t, &unit(4, 0), &unit(4, 3)).unwrap();
        assert!(r.base.algebra.is_zero());
        assert_eq!(r.params.d, d);
        assert_eq!(r.params.x0, x0);
        assert_eq!(r.params.z0, x0);
        assert!(r.params.u.is_zero());
    }

    #[test]
    fn cohomology_dimension_equality_on_suite() {
        for e in reference_suite().unwrap() {
            let trivial = Bimodule::trivial(&e.triple.algebra, 1);
            assert_eq!(
                cohomology_dims(&trivial, 2).unwrap().cohomology,
                lie_h1_dim(&e.triple),
                "{}",
                e.name
            );
        }
    }

    #[test]
    fn wrong_annotation_is_caught() {
        let mut e = entry("dim2-lambda-eq-mu").unwrap();
        e.expected.complete = true;
        assert!(e.verify().is_err());
    }
}
