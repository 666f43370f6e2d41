//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use twistcross::action::{check_derived_identities, verify_action, Postulate, TwistedPartialAction};
use twistcross::criteria::{check_criteria, matrix_amplify, CriteriaConfig, CriteriaReport, Route, Verdict};
use twistcross::crossed::build_crossed_product;
use twistcross::dsl::{self, ErrorKind};
use twistcross::graded::{check_condition_i, check_homogeneous_nondegeneracy, GradedAlgebra};
use twistcross::random::random_verified_actions;
use twistcross::report::{emit_report, CriteriaOutput, Format};
use twistcross::search::SearchBudget;
use twistcross::{Field, Matrix};

use common::*;

const RANDOM_SEED: u64 = 20240601;
const RANDOM_COUNT: usize = 50;
const LIMIT_ASSOC: Duration = Duration::from_secs(60);
const LIMIT_ROUND_TRIP: Duration = Duration::from_secs(120);
const LIMIT_AMPLIFY: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t <= limit, || {
        format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs())
    })?;
    Ok(t)
}

fn certificate(gb: &GradedAlgebra, route: Route) -> Result<CriteriaReport, String> {
    let config = CriteriaConfig {
        route,
        budget: SearchBudget::default(),
    };
    let r = check_criteria(gb, &config).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Certificate, || {
        format!("verdict {:?}: {:?} {:?}", r.verdict, r.rejections, r.undecided)
    })?;
    Ok(r)
}

fn criterion_1(actions: &[TwistedPartialAction]) -> Outcome {
    let start = Instant::now();
    ensure(actions.len() >= 50, || format!("only {} actions", actions.len()))?;
    for (i, th) in actions.iter().enumerate() {
        ensure(th.ambient().field() == Field::Prime(5), || {
            format!("action {i} not over F 5")
        })?;
        let cp = build_crossed_product(th).map_err(|e| format!("action {i}: {e}"))?;
        ensure(associative_on_basis(cp.algebra()), || {
            format!("action {i}: crossed product not associative")
        })?;
    }
    let t = within(start, LIMIT_ASSOC)?;
    Ok(format!(
        "{} crossed products associative, {:.1}s",
        actions.len(),
        t.as_secs_f64()
    ))
}

fn criterion_2(actions: &[TwistedPartialAction]) -> Outcome {
    for (i, th) in actions.iter().enumerate() {
        let r = check_derived_identities(th).map_err(|e| format!("action {i}: {e}"))?;
        ensure(r.checks.len() == 9, || {
            format!("action {i}: {} identities checked", r.checks.len())
        })?;
        if let Some(c) = r.checks.iter().find(|c| c.witness.is_some()) {
            return Err(format!("action {i}: {:?} fails {:?}", c.check, c.witness));
        }
    }
    Ok(format!("9 identities on {} actions", actions.len()))
}

fn criterion_3(actions: &[TwistedPartialAction]) -> Outcome {
    let start = Instant::now();
    for (i, th) in actions.iter().enumerate() {
        let cp = build_crossed_product(th).map_err(|e| format!("action {i}: {e}"))?;
        let gb = cp.canonical_grading().map_err(|e| e.to_string())?;
        ensure(check_condition_i(&gb).passed(), || {
            format!("action {i}: condition (i) fails")
        })?;
        ensure(check_homogeneous_nondegeneracy(&gb).passed(), || {
            format!("action {i}: degenerate")
        })?;
        let r = certificate(&gb, Route::Auto).map_err(|e| format!("action {i}: {e}"))?;
        let c = r.certificate.unwrap();
        phi_is_graded_isomorphism(&gb, &c.crossed, &c.phi).map_err(|e| format!("action {i}: {e}"))?;
    }
    let t = within(start, LIMIT_ROUND_TRIP)?;
    Ok(format!(
        "{} certificates with verified phi, {:.1}s",
        actions.len(),
        t.as_secs_f64()
    ))
}

fn criterion_4() -> Outcome {
    let f = Field::Rational;
    // (a) M2(Q): D_g is all of B_1 = k x k and theta_g swaps the idempotents.
    let gb = corpus_grading("m2_z2", "B");
    let c = certificate(&gb, Route::Auto)?.certificate.unwrap();
    phi_is_graded_isomorphism(&gb, &c.crossed, &c.phi)?;
    let th = &c.action;
    let g = th.group().index_of("g").unwrap();
    ensure(th.ambient().dim() == 2 && th.domain(g).dim() == 2, || {
        "D_g is not 2-dimensional".into()
    })?;
    let a = th.ambient();
    let e = |i: usize| a.names().iter().position(|n| n == ["e11", "e22"][i]);
    ensure(e(0).is_some() && e(1).is_some(), || {
        format!("B_1 basis {:?}", a.names())
    })?;
    ensure(a.associativity_defect().is_none() && a.unit_element().is_some(), || {
        "B_1 not unital".into()
    })?;
    let swap = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
    ensure(*th.theta(g) == swap, || format!("theta_g = {}", th.theta(g)))?;

    // (b) quaternions with the brute-force cocycle.
    let tables = quaternion_sign_tables();
    ensure(!tables.is_empty(), || "no quaternion cocycle found".into())?;
    let q = sign_twisted_action(&tables[0]);
    ensure(verify_action(&q).passed(), || {
        "oracle cocycle fails verification".into()
    })?;
    let cp = build_crossed_product(&q).map_err(|e| e.to_string())?;
    let gb = cp.canonical_grading().map_err(|e| e.to_string())?;
    let c = certificate(&gb, Route::Auto)?.certificate.unwrap();
    phi_is_graded_isomorphism(&gb, &c.crossed, &c.phi)?;
    ensure(verify_action(&c.action).passed(), || {
        "reconstructed action fails".into()
    })?;

    // (c) the partial action on k x k with a 3-dimensional crossed product.
    let p = corpus_action("partial_e1", "P");
    let cp = build_crossed_product(&p).map_err(|e| e.to_string())?;
    ensure(cp.dim() == 3, || {
        format!("partial crossed product has dim {}", cp.dim())
    })?;
    let gb = cp.canonical_grading().map_err(|e| e.to_string())?;
    let c = certificate(&gb, Route::Auto)?.certificate.unwrap();
    phi_is_graded_isomorphism(&gb, &c.crossed, &c.phi)?;
    Ok(format!(
        "M2, quaternions ({} oracle cocycles), partial k x k",
        tables.len()
    ))
}

fn criterion_5() -> Outcome {
    let gb = corpus_grading("dual_numbers", "B");
    let r = check_criteria(&gb, &CriteriaConfig::default()).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Rejected, || {
        format!("dual numbers: {:?}", r.verdict)
    })?;
    let ci = r.condition_i.failures().next().ok_or("no condition (i) defect")?;
    let nd = r.nondegeneracy.failures().next().ok_or("no degeneracy witness")?;
    ensure(ci.witness.is_some() && nd.witness.is_some(), || {
        "missing witness".into()
    })?;

    let bad = corpus_action("quaternion_corrupt", "H");
    let v = verify_action(&bad);
    let w = v
        .failure(Postulate::CocycleIdentity)
        .ok_or("corrupted cocycle passes the cocycle identity")?;
    ensure(w.elements.len() == 3 && w.basis_index.is_some(), || {
        format!("witness {w:?}")
    })?;
    Ok(format!(
        "dual numbers rejected (witnesses {}, {}); corrupted cocycle fails at ({}) basis {}",
        ci.witness.as_deref().unwrap(),
        nd.witness.as_deref().unwrap(),
        w.elements.join(", "),
        w.basis_index.unwrap()
    ))
}

fn positive_corpus_gradings() -> Vec<(String, GradedAlgebra)> {
    let mut out: Vec<(String, GradedAlgebra)> = corpus_gradings()
        .into_iter()
        .filter(|(_, _, gb)| check_condition_i(gb).passed() && check_homogeneous_nondegeneracy(gb).passed())
        .map(|(f, n, gb)| (format!("{f}/{n}"), gb))
        .collect();
    for (f, n, th) in corpus_verified_actions() {
        let gb = build_crossed_product(&th).unwrap().canonical_grading().unwrap();
        out.push((format!("{f}/{n} crossed"), gb));
    }
    out
}

fn criterion_6() -> Outcome {
    let mut pairs = 0;
    for (name, gb) in positive_corpus_gradings() {
        for route in [Route::Psi, Route::Uv] {
            let r = certificate(&gb, route).map_err(|e| format!("{name} {route:?}: {e}"))?;
            for rep in &r.certificate.unwrap().uv_reports {
                ensure(rep.identities.len() == 24, || {
                    format!("{name}: {} identities", rep.identities.len())
                })?;
                ensure(rep.passed(), || format!("{name} {route:?} g={}: {rep:?}", rep.g))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("24 identities and multiplicativity on {pairs} corner pairs"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (file, name, gb) in corpus_gradings() {
        let passes = check_criteria(&gb, &CriteriaConfig::default()).unwrap().verdict == Verdict::Certificate;
        let fails_i = !check_condition_i(&gb).passed();
        if !passes && !fails_i {
            continue;
        }
        for n in [2, 3] {
            let amp = matrix_amplify(&gb, n).map_err(|e| e.to_string())?;
            let r = check_criteria(&amp, &CriteriaConfig::default()).map_err(|e| e.to_string())?;
            if passes {
                ensure(r.verdict == Verdict::Certificate, || {
                    format!("M{n}({file}/{name}): {:?}", r.verdict)
                })?;
            } else {
                ensure(r.verdict == Verdict::Rejected && !r.condition_i.passed(), || {
                    format!("M{n}({file}/{name}) not rejected by condition (i)")
                })?;
            }
            checked += 1;
        }
    }
    let t = within(start, LIMIT_AMPLIFY)?;
    Ok(format!("{checked} amplifications stable, {:.1}s", t.as_secs_f64()))
}

fn criterion_8() -> Outcome {
    let config = CriteriaConfig {
        route: Route::Auto,
        budget: SearchBudget {
            seed: 7,
            ..SearchBudget::default()
        },
    };
    let mut inputs: Vec<(String, GradedAlgebra)> = corpus_gradings()
        .into_iter()
        .map(|(f, n, gb)| (format!("{f}/{n}"), gb))
        .collect();
    inputs.extend(positive_corpus_gradings());
    for (name, gb) in &inputs {
        let run = || {
            let r = check_criteria(gb, &config).unwrap();
            emit_report(&CriteriaOutput::new(name, gb, &r), Format::Json)
        };
        ensure(run() == run(), || format!("{name}: reports differ"))?;
    }
    Ok(format!("{} reports byte-identical across runs", inputs.len()))
}

fn criterion_9() -> Outcome {
    let files = corpus_files();
    ensure(files.len() >= 10, || format!("corpus has {} documents", files.len()))?;
    for (name, text) in &files {
        let doc = dsl::parse(text).map_err(|e| format!("{name}: {e}"))?;
        let printed = dsl::print(&doc);
        let again = dsl::parse(&printed).map_err(|e| format!("{name} reprinted: {e}"))?;
        ensure(again == doc && dsl::print(&again) == printed, || {
            format!("{name}: not a fixpoint")
        })?;
    }
    let fixtures = [
        ("unknown_basis", ErrorKind::Semantic, Some("e3"), 6, 6),
        ("unknown_element", ErrorKind::Semantic, Some("h"), 18, 3),
        ("unknown_group", ErrorKind::Semantic, Some("Z7"), 8, 19),
        ("theta_shape", ErrorKind::Semantic, Some("g"), 18, 12),
        ("bad_literal", ErrorKind::Semantic, None, 5, 11),
        ("syntax", ErrorKind::Syntax, None, 6, 3),
    ];
    for (file, kind, name, line, column) in fixtures {
        let text = std::fs::read_to_string(corpus_dir().join("errors").join(format!("{file}.tc"))).unwrap();
        let e = dsl::parse(&text).err().ok_or_else(|| format!("{file} parses"))?;
        ensure(
            e.kind == kind && e.name.as_deref() == name && (e.line, e.column) == (line, column),
            || format!("{file}: got {e} ({:?})", e.name),
        )?;
    }
    Ok(format!(
        "{} documents round-trip, {} error fixtures located",
        files.len(),
        fixtures.len()
    ))
}

fn main() {
    let (actions, rejected) = random_verified_actions(RANDOM_SEED, RANDOM_COUNT);
    println!(
        "generated {} verified actions over F 5 ({rejected} candidates rejected)",
        actions.len()
    );
    let criteria: Vec<(u32, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(|| criterion_1(&actions))),
        (2, Box::new(|| criterion_2(&actions))),
        (3, Box::new(|| criterion_3(&actions))),
        (4, Box::new(criterion_4)),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (n, run) in &criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(msg) => println!("criterion {n}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL  {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
