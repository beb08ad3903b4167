//! End-to-end acceptance suite: one pass/fail line per criterion.

use std::process::Command;

use repalg::artheory::{knit_ar_quiver, knit_ar_quiver_bounded, Certificate};
use repalg::constructions::{ind_modules, t2_algebra};
use repalg::decomp::{decompose, iso_test};
use repalg::module::{dual_module, hom_dim, projective_module, simple_module, FDModule};
use repalg::repdim::{add_m_resolution, generator_thm31, generator_thm32, generator_thm47, is_generator_cogenerator, repdim_bound};
use repalg::tilting::{corollary44_check, lemma43_check, thm41_check, tilting_modules, Verdict};
use repalg::{ar_translate, ext_dim, path_algebra, parse_quiver_json, AlgRef, Matrix, Q, Scalar};

fn load(name: &str) -> AlgRef<Q> {
    let path = format!("{}/../../data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    let (q, r) = parse_quiver_json(&text).unwrap();
    path_algebra(&q, &r).unwrap()
}

fn check<F: FnOnce() -> Result<String, String>>(
    n: usize,
    title: &str,
    failures: &mut Vec<String>,
    f: F,
) {
    match f() {
        Ok(detail) => println!("criterion {n} [{title}]: PASS ({detail})"),
        Err(why) => {
            println!("criterion {n} [{title}]: FAIL ({why})");
            failures.push(format!("criterion {n}: {why}"));
        }
    }
}

fn criterion1() -> Result<String, String> {
    let mut bounds = Vec::new();
    for name in ["a1", "a2", "a3", "a4", "d4"] {
        let a = load(name);
        let (t2, bundle) = generator_thm31(&a, 400).map_err(|e| format!("{name}: {e}"))?;
        let r = repdim_bound(&t2.lambda, &bundle.summands, 1, 400)
            .map_err(|e| format!("{name}: {e}"))?;
        match r.bound {
            Some(b) if b <= 3 => bounds.push(format!("{name}:{b}")),
            other => return Err(format!("{name}: bound {other:?}")),
        }
        if let Some(g) = r.end_gldim {
            if g > 3 {
                return Err(format!("{name}: gl.dim End(M) = {g}"));
            }
        }
    }
    Ok(format!("T2 rep.dim bounds {}", bounds.join(" ")))
}

fn criterion2() -> Result<String, String> {
    for (name, expect) in [("a2", 3usize), ("a3", 6), ("a4", 10), ("d4", 12)] {
        let a = load(name);
        let q = knit_ar_quiver(&a, 100).map_err(|e| format!("{name}: {e}"))?;
        if q.certificate != Certificate::Complete {
            return Err(format!("{name}: knitting incomplete"));
        }
        if q.vertices.len() != expect {
            return Err(format!("{name}: {} indecomposables, expected {expect}", q.vertices.len()));
        }
    }
    Ok("indecomposable counts 3/6/10/12 with complete certificates".into())
}

fn criterion3() -> Result<String, String> {
    let a = load("kronecker");
    let (t2, bundle) = generator_thm32(&a).map_err(|e| e.to_string())?;
    if !is_generator_cogenerator(&bundle.summands).map_err(|e| e.to_string())? {
        return Err("bundle is not a generator-cogenerator".into());
    }
    let q = knit_ar_quiver_bounded(&t2.lambda, 400, Some(8)).map_err(|e| e.to_string())?;
    let mut sampled = 0usize;
    let mut max_len = 0usize;
    for v in q.vertices.iter().filter(|v| v.dim <= 8) {
        let res = add_m_resolution(&bundle.summands, v, 2)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no length-2 resolution for {}", v.name))?;
        max_len = max_len.max(res.length());
        sampled += 1;
    }
    if sampled == 0 || max_len > 2 {
        return Err(format!("{sampled} sampled, max length {max_len}"));
    }
    Ok(format!("{sampled} Kronecker T2 modules of dim <= 8 resolved, max length {max_len}"))
}

fn criterion4() -> Result<String, String> {
    let mut seen = Vec::new();
    for (name, expect) in [("a2", 2usize), ("a3", 5)] {
        let a = load(name);
        let tilts = tilting_modules(&a, 100).map_err(|e| format!("{name}: {e}"))?;
        if tilts.len() != expect {
            return Err(format!("{name}: {} tilting modules, expected {expect}", tilts.len()));
        }
        for t in &tilts {
            let r = lemma43_check(&a, t, 100).map_err(|e| format!("{name}: {e}"))?;
            if !(r.holds() && r.ii_y_tau_inv && r.ii_x_tau_inv) {
                return Err(format!("{name}/{}: {r:?}", t.module.name));
            }
        }
        seen.push(format!("{name}:{}", tilts.len()));
    }
    Ok(format!(
        "set identities hold with the inverse translate for all tilting modules ({})",
        seen.join(" ")
    ))
}

fn criterion5() -> Result<String, String> {
    let mut n = 0usize;
    for name in ["a2", "a3"] {
        let a = load(name);
        for t in tilting_modules(&a, 100).map_err(|e| e.to_string())? {
            let r = thm41_check(&a, &t, 500).map_err(|e| format!("{name}: {e}"))?;
            if r.verdict != Verdict::Agree || r.count_relation != Some(true) {
                return Err(format!("{name}/{}: verdict {:?}", t.module.name, r.verdict));
            }
            n += 1;
        }
    }
    Ok(format!("finiteness agreement and count relation for {n} tilting modules"))
}

fn criterion6() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_repalg"))
        .arg("example-e6")
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code();
    let stdout = String::from_utf8_lossy(&out.stdout);
    if code != Some(2) {
        return Err(format!("exit code {code:?}, expected 2"));
    }
    for needle in [
        "Gamma: 7 vertices, 8 arrows",
        "one quadratic relation",
        "APR module at the sink is tilting",
    ] {
        if !stdout.contains(needle) {
            return Err(format!("missing witness: {needle}"));
        }
    }
    if stdout.matches("consistent with representation infinite").count() != 2 {
        return Err("expected two inconclusive knitting witnesses".into());
    }
    Ok("E6 example inconclusive (exit 2) with the expected witnesses".into())
}

fn criterion7() -> Result<String, String> {
    let mut bounds = Vec::new();
    for name in ["a2", "a3"] {
        let a = load(name);
        for t in tilting_modules(&a, 100).map_err(|e| e.to_string())? {
            let (tri, bundle) =
                generator_thm47(&a, &t, 400).map_err(|e| format!("{name}: {e}"))?;
            if !is_generator_cogenerator(&bundle.summands).map_err(|e| e.to_string())? {
                return Err(format!("{name}/{}: not a generator-cogenerator", t.module.name));
            }
            let r = repdim_bound(&tri.lambda, &bundle.summands, 1, 400)
                .map_err(|e| format!("{name}: {e}"))?;
            match r.bound {
                Some(b) if b <= 3 => bounds.push(b),
                other => return Err(format!("{name}/{}: bound {other:?}", t.module.name)),
            }
        }
    }
    Ok(format!("rep.dim End(T-bar) <= 3 for {} tilting modules", bounds.len()))
}

fn criterion8() -> Result<String, String> {
    let a = load("a3");
    let r = corollary44_check(&a, 100).map_err(|e| e.to_string())?;
    if r.tilting_count != 5 || r.arrow_count < 4 || !r.target_in_source {
        return Err(format!(
            "{} tiltings, {} arrows, target_in_source {}",
            r.tilting_count, r.arrow_count, r.target_in_source
        ));
    }
    Ok(format!(
        "{} arrows on 5 tiltings, torsion classes monotone along every arrow",
        r.arrow_count
    ))
}

fn criterion9() -> Result<String, String> {
    let a = load("a3");
    let ind = ind_modules(&a, 100).map_err(|e| e.to_string())?;

    // projective Hom dimensions match dimension vectors
    for m in &ind.reps {
        let dv = m.dimension_vector();
        for v in 0..a.idempotents.len() {
            let h = hom_dim(&projective_module(&a, v), m).map_err(|e| e.to_string())?;
            if h != dv[v] {
                return Err(format!("Hom(P_{v}, {}) = {h}, dim vector entry {}", m.name, dv[v]));
            }
        }
    }

    // Ext1(X, Y) and Hom(Y, tau X) dimensions agree over the hereditary a3
    for x in &ind.reps {
        let tx = ar_translate(x).map_err(|e| e.to_string())?;
        for y in &ind.reps {
            let e1 = ext_dim(x, y, 1).map_err(|e| e.to_string())?;
            let h = hom_dim(y, &tx).map_err(|e| e.to_string())?;
            if e1 != h {
                return Err(format!("Ext1({}, {}) = {e1} but Hom(-, tau) = {h}", x.name, y.name));
            }
        }
    }

    // decomposition fingerprint is stable under random base change
    let p1 = projective_module(&a, 0);
    let p2 = projective_module(&a, 1);
    let s2 = simple_module(&a, 1).map_err(|e| e.to_string())?;
    let m = FDModule::direct_sum(&[&p1, &p2, &s2, &p2]);
    let base = decompose(&m).map_err(|e| e.to_string())?.fingerprint();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 3) as i64 - 1
    };
    for round in 0..20 {
        let u = loop {
            let cand: Matrix<Q> = Matrix::from_fn(m.dim, m.dim, |_, _| Q::from_i64(next()));
            if cand.is_invertible() {
                break cand;
            }
        };
        let u_inv = u.inverse().unwrap();
        let actions = m.gen_actions.iter().map(|g| u.mul(g).mul(&u_inv)).collect();
        let twisted = FDModule::new(m.algebra.clone(), actions, "twisted".into());
        if !twisted.check_module() {
            return Err(format!("round {round}: base change broke the module axioms"));
        }
        let fp = decompose(&twisted).map_err(|e| e.to_string())?.fingerprint();
        if fp != base {
            return Err(format!("round {round}: decomposition fingerprint changed"));
        }
    }

    // duality swaps Hom dimensions and preserves total dimension
    for x in &ind.reps {
        if dual_module(x).dim != x.dim {
            return Err(format!("dual of {} changed dimension", x.name));
        }
        for y in &ind.reps {
            let h = hom_dim(x, y).map_err(|e| e.to_string())?;
            let hd = hom_dim(&dual_module(y), &dual_module(x)).map_err(|e| e.to_string())?;
            if h != hd {
                return Err(format!("Hom({}, {}) = {h} but dual Hom = {hd}", x.name, y.name));
            }
        }
    }

    // flatten and unflatten are mutually inverse up to isomorphism
    let t2 = t2_algebra(&a).map_err(|e| e.to_string())?;
    for x in &ind.reps {
        let triple = t2.induced_triple(x).map_err(|e| e.to_string())?;
        let flat = t2.flatten(&triple).map_err(|e| e.to_string())?;
        let back = t2.unflatten(&flat).map_err(|e| e.to_string())?;
        let reflat = t2.flatten(&back).map_err(|e| e.to_string())?;
        if back.x.dim != triple.x.dim || back.y.dim != triple.y.dim {
            return Err(format!("unflatten of {} changed component dimensions", x.name));
        }
        if iso_test(&flat, &reflat).map_err(|e| e.to_string())?.is_none() {
            return Err(format!("round trip of {} is not isomorphic", x.name));
        }
    }

    Ok("projective Hom, translate duality, base-change stability, duality, round trips".into())
}

fn criterion10() -> Result<String, String> {
    let data = format!("{}/../../data", env!("CARGO_MANIFEST_DIR"));
    let runs: Vec<Vec<String>> = vec![
        vec!["indec".into(), format!("{data}/a3.json")],
        vec!["check-thm31".into(), format!("{data}/a2.json")],
        vec!["check-thm31".into(), format!("{data}/a3.json")],
        vec!["check-thm32".into(), format!("{data}/kronecker.json"), "--dim-bound".into(), "8".into()],
        vec!["check-lemma43".into(), format!("{data}/a2.json")],
        vec!["check-thm41".into(), format!("{data}/a2.json")],
        vec!["check-thm47".into(), format!("{data}/a2.json")],
        vec!["check-cor44".into(), format!("{data}/a3.json")],
    ];
    for args in &runs {
        let out = Command::new(env!("CARGO_BIN_EXE_repalg"))
            .args(args)
            .arg("--field-check")
            .output()
            .map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        if out.status.code() != Some(0) {
            return Err(format!("{}: exit {:?}", args.join(" "), out.status.code()));
        }
        if !stdout.contains("field check over F101: all counts agree") {
            return Err(format!("{}: no field agreement witness", args.join(" ")));
        }
    }
    Ok(format!("{} commands agree between Q and F101", runs.len()))
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    check(1, "T2 representation dimension over Dynkin quivers", &mut failures, criterion1);
    check(2, "complete AR quivers with known counts", &mut failures, criterion2);
    check(3, "Kronecker T2 sampled resolutions", &mut failures, criterion3);
    check(4, "tilting set identities", &mut failures, criterion4);
    check(5, "finiteness transfer and count relation", &mut failures, criterion5);
    check(6, "E6 worked example", &mut failures, criterion6);
    check(7, "End(T-bar) representation dimension", &mut failures, criterion7);
    check(8, "torsion class monotonicity on the tilting quiver", &mut failures, criterion8);
    check(9, "module category invariants", &mut failures, criterion9);
    check(10, "cross-field agreement", &mut failures, criterion10);
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
