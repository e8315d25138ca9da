//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p fasla-core --test acceptance -- --nocapture` to see them.

use std::time::Instant;

use fasla_core::catalog::{dim2_family, dim2_table, half_mu_table, reference_suite};
use fasla_core::cohomology::{cohomology_dims, differential_matrix, lie_h1_dim, Bimodule};
use fasla_core::cotangent::{detect_lagrangian_ideal, hess_product, twisted_cotangent, CotangentData};
use fasla_core::dynamics::{
    biinvariant_analysis, central_translations, completeness, compose_affine, cotangent_completeness,
    etale_representation, symplectic_check, Verdict,
};
use fasla_core::extension::{decompose_to_zero, double_extend, reduce_by_ideal, ExtensionParams};
use fasla_core::io::{parse_text, to_text, AlgebraFile};
use fasla_core::linalg::{scale_vec, unit, Matrix};
use fasla_core::sampling::{
    random_base, random_bimodule, random_cotangent_data, random_extension_params, random_left_symmetric, rng,
    SampleRng,
};
use fasla_core::scalar::{frac, int};
use fasla_core::verifier::check_fasla;
use fasla_core::FaslaTriple;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dim2_reproduction() -> Outcome {
    let cases: [(i64, i64, i64); 4] = [(0, 0, 0), (1, 0, 0), (0, 1, 1), (0, 1, 2)];
    for (beta, lambda, mu) in cases {
        let t = dim2_family(int(beta), int(lambda), int(mu)).map_err(|e| e.to_string())?;
        let (b, l, m) = (int(beta), int(lambda), int(mu));
        // Printed tables: d.d, d.e, e.d; e.e = 0.
        let expected = if lambda * 2 == mu && lambda != mu {
            half_mu_table(&b, &m)
        } else {
            (
                vec![b.clone(), -l.clone()],
                vec![l.clone(), int(0)],
                vec![&l - &m, int(0)],
            )
        };
        ensure(dim2_table(&t) == expected, || format!("table mismatch at ({beta},{lambda},{mu})"))?;
        ensure(t.algebra.basis_product(0, 0).iter().all(|c| *c == int(0)), || "e.e != 0".into())?;
        let r = check_fasla(&t);
        ensure(r.passed(), || format!("axioms fail for ({beta},{lambda},{mu}):\n{r}"))?;
    }
    Ok("4 tables exact".into())
}

fn random_extension(r: &mut SampleRng, base_dim: usize) -> (FaslaTriple, ExtensionParams, FaslaTriple) {
    let base = random_base(r, base_dim);
    let p = random_extension_params(r, &base);
    let t = double_extend(&base, &p).expect("generated parameters validate");
    (base, p, t)
}

fn completeness_theorem() -> Outcome {
    let mut triples: Vec<FaslaTriple> = reference_suite().map_err(|e| e.to_string())?.into_iter().map(|e| e.triple).collect();
    let mut r = rng(2);
    for i in 0..50 {
        triples.push(random_extension(&mut r, [0, 2, 4][i % 3]).2);
    }
    let (mut complete, mut incomplete) = (0, 0);
    for (i, t) in triples.iter().enumerate() {
        let c = completeness(t, 0).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(c.traces_l.iter().all(|x| *x == int(0)), || format!("instance {i}: tr L != 0"))?;
        ensure((c.verdict == Verdict::Complete) == c.unimodular, || format!("instance {i}: verdict vs unimodular"))?;
        if c.right_mults_nilpotent {
            ensure(c.verdict == Verdict::Complete, || format!("instance {i}: nilpotent R but incomplete"))?;
        }
        if c.verdict == Verdict::Incomplete {
            ensure(c.non_nilpotent_witness.is_some(), || format!("instance {i}: no non-nilpotent witness"))?;
            incomplete += 1;
        } else {
            complete += 1;
        }
    }
    Ok(format!("{} instances, {complete} complete, {incomplete} incomplete", triples.len()))
}

struct Soundness {
    extensions: Vec<(FaslaTriple, ExtensionParams, FaslaTriple)>,
    cotangents: Vec<(CotangentData, FaslaTriple)>,
}

fn constructor_soundness() -> (Outcome, Soundness) {
    let mut r = rng(3);
    let mut s = Soundness {
        extensions: Vec::new(),
        cotangents: Vec::new(),
    };
    let start = Instant::now();
    let outcome = (|| {
        for i in 0..100 {
            let (base, p, t) = random_extension(&mut r, [0, 2, 4][i % 3]);
            let rep = check_fasla(&t);
            ensure(rep.passed(), || format!("extension {i} fails:\n{rep}"))?;
            s.extensions.push((base, p, t));
        }
        for i in 0..50 {
            let d = random_cotangent_data(&mut r, 1 + i % 3);
            let t = twisted_cotangent(&d).map_err(|e| format!("cotangent {i}: {e}"))?;
            let rep = check_fasla(&t);
            ensure(rep.passed(), || format!("cotangent {i} fails:\n{rep}"))?;
            s.cotangents.push((d, t));
        }
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
        let twisted = s.cotangents.iter().filter(|(d, _)| !d.f.is_zero() || !d.circ.is_zero()).count();
        let with_u = s.extensions.iter().filter(|(_, p, _)| !p.u.is_zero()).count();
        Ok(format!("100 extensions ({with_u} with u != 0), 50 cotangents ({twisted} twisted), {secs:.1} s"))
    })();
    (outcome, s)
}

fn round_trips(s: &Soundness) -> Outcome {
    let start = Instant::now();
    for (i, (base, p, t)) in s.extensions.iter().enumerate() {
        let n = t.dim();
        let red = reduce_by_ideal(t, &unit(n, 0), &unit(n, n - 1)).map_err(|e| format!("extension {i}: {e}"))?;
        ensure(red.params == *p, || format!("extension {i}: parameters differ"))?;
        ensure(red.base == *base, || format!("extension {i}: base differs"))?;
    }
    for (i, (d, t)) in s.cotangents.iter().enumerate() {
        let split = detect_lagrangian_ideal(t).map_err(|e| format!("cotangent {i}: {e}"))?;
        ensure(split.data == *d, || format!("cotangent {i}: recovered data differ"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} + {} exact round trips, {secs:.1} s", s.extensions.len(), s.cotangents.len()))
}

fn cohomology_engine() -> Outcome {
    let mut r = rng(5);
    for i in 0..20 {
        let b = random_bimodule(&mut r);
        let d: Vec<Matrix> = (1..=3).map(|p| differential_matrix(&b, p).unwrap()).collect();
        ensure((&d[1] * &d[0]).is_zero(), || format!("bimodule {i}: d2 d1 != 0"))?;
        ensure((&d[2] * &d[1]).is_zero(), || format!("bimodule {i}: d3 d2 != 0"))?;
    }
    for e in reference_suite().map_err(|e| e.to_string())? {
        let h2 = cohomology_dims(&Bimodule::trivial(&e.triple.algebra, 1), 2).unwrap().cohomology;
        let h1 = lie_h1_dim(&e.triple);
        ensure(h2 == h1, || format!("{}: H2 = {h2}, H1_L = {h1}", e.name))?;
    }
    let z = dim2_family(int(0), int(0), int(0)).unwrap();
    let dims = cohomology_dims(&Bimodule::trivial(&z.algebra, 1), 2).unwrap();
    ensure(
        (dims.cocycles, dims.coboundaries, dims.cohomology) == (4, 0, 4),
        || format!("zero product gives {dims:?}"),
    )?;
    Ok("20 bimodules, 8 catalog entries, (4,0,4)".into())
}

fn biinvariant_structure() -> Outcome {
    let mut count = 0;
    for e in reference_suite().map_err(|e| e.to_string())? {
        if !e.expected.associative {
            continue;
        }
        count += 1;
        let b = biinvariant_analysis(&e.triple).map_err(|x| format!("{}: {x}", e.name))?;
        ensure(b.report.get("L_x L_y + L_y L_x = 0").unwrap().passed, || format!("{}: anticommutation", e.name))?;
        ensure(!central_translations(&e.triple).is_empty(), || format!("{}: no central translation", e.name))?;
        ensure(decompose_to_zero(&e.triple).is_ok(), || format!("{}: does not decompose", e.name))?;
    }
    ensure(count > 0, || "no associative entries".into())?;
    Ok(format!("{count} associative entries"))
}

fn etale() -> Outcome {
    let beta = int(3);
    let t = dim2_family(beta.clone(), int(0), int(0)).unwrap();
    let x = unit(2, 1);
    let ts = [frac(1, 2), int(2), int(-1), frac(-4, 3), frac(7, 5)];
    for tt in &ts {
        let el = etale_representation(&t, &scale_vec(tt, &x), 8).map_err(|e| e.to_string())?;
        let q = vec![tt * tt * &beta / int(2), tt.clone()];
        let mut f = Matrix::identity(2);
        f[(0, 1)] = tt * &beta;
        ensure(el.translation == q && el.linear == f, || format!("closed form differs at t = {tt}"))?;
        ensure(symplectic_check(&el, &t.omega), || format!("not symplectic at t = {tt}"))?;
    }
    for a in &ts {
        for b in &ts {
            let ea = etale_representation(&t, &scale_vec(a, &x), 8).unwrap();
            let eb = etale_representation(&t, &scale_vec(b, &x), 8).unwrap();
            let eab = etale_representation(&t, &scale_vec(&(a + b), &x), 8).unwrap();
            ensure(compose_affine(&ea, &eb).unwrap() == eab, || format!("composition fails at ({a}, {b})"))?;
            ensure(symplectic_check(&eab, &t.omega), || "composite not symplectic".into())?;
        }
    }
    Ok("5 closed forms, 25 compositions".into())
}

fn cotangent_completeness_criterion() -> Outcome {
    let mut r = rng(8);
    let (mut nil, mut non_nil) = (0, 0);
    for i in 0..20 {
        let d = random_cotangent_data(&mut r, 1 + i % 3);
        let c = cotangent_completeness(&d, 0).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(c.agree, || format!("instance {i}: base {} vs built {}", c.base_side, c.built_side))?;
        if c.base_side {
            nil += 1;
        } else {
            non_nil += 1;
        }
    }
    ensure(nil > 0 && non_nil > 0, || format!("sample not mixed: {nil} nilpotent, {non_nil} not"))?;
    for i in 0..10 {
        let base = random_left_symmetric(&mut r, 1 + i % 3);
        let hess = hess_product(&base).map_err(|e| e.to_string())?;
        let c = cotangent_completeness(&CotangentData::classical(base), 0).unwrap();
        let verdict = completeness(&hess, 0).map_err(|e| e.to_string())?.verdict;
        ensure((verdict == Verdict::Complete) == c.base_side, || format!("Hess instance {i}"))?;
    }
    Ok(format!("20 instances ({nil} nilpotent, {non_nil} not), 10 Hess"))
}

fn file_determinism() -> Outcome {
    for e in reference_suite().map_err(|e| e.to_string())? {
        let f = AlgebraFile::from_triple(&e.triple).with_labels(e.labels.clone());
        let text = to_text(&f.to_json());
        let back = AlgebraFile::from_json(&parse_text(&text).map_err(|x| x.to_string())?).map_err(|x| x.to_string())?;
        ensure(to_text(&back.to_json()) == text, || format!("{}: bytes differ", e.name))?;
        ensure(back.triple().unwrap() == e.triple, || format!("{}: triple differs", e.name))?;
    }
    Ok("8 entries byte-identical".into())
}

#[test]
fn acceptance() {
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("1 dimension-2 reproduction", dim2_reproduction()));
    results.push(("2 completeness theorem", completeness_theorem()));
    let (sound, samples) = constructor_soundness();
    results.push(("3 constructor soundness", sound));
    results.push(("4 round trips", round_trips(&samples)));
    results.push(("5 cohomology engine", cohomology_engine()));
    results.push(("6 bi-invariant structure", biinvariant_structure()));
    results.push(("7 etale representation", etale()));
    results.push(("8 cotangent completeness", cotangent_completeness_criterion()));
    results.push(("9 file-format determinism", file_determinism()));
    let mut failed = Vec::new();
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
