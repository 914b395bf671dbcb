//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use lambdamu::behavior::{lookup, probe, probe_peirce, probe_tertium, BehaviorReport, Law, ProbeOptions, Wrapper};
use lambdamu::metatheory::{
    check_confluence, check_strong_normalization, check_subject_reduction, enumerate_typed_terms, negative_controls,
    strong_normalization_of_terms, Corpus, PropertyReport, DEFAULT_MAX_SIZE,
};
use lambdamu::reduction::{normalize, DEFAULT_FUEL, DEFAULT_NODE_CAP};
use lambdamu::syntax::{alpha_equal, parse_formula, parse_term, print_term, ESequence, Formula, Term};
use lambdamu::typing::{check, erase, infer, Context, NameContext};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let elapsed = start.elapsed();
    let result = match (result, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
        (r, _) => r,
    };
    let ok = result.is_ok();
    let detail = result.unwrap_or_else(|e| e);
    println!("criterion {n} ({name}): {} [{elapsed:.2?}] {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn named(name: &str) -> Term {
    lookup(name).unwrap_or_else(|| panic!("no canonical term {name}")).term
}

fn golden_types() -> Outcome {
    let (g, d) = (Context::new(), NameContext::new());
    for (name, ty) in [("T", "_|_ -> P"), ("C1", "(~P -> P) -> P"), ("C2", "(~P -> P) -> P"), ("Wprime", "~P \\/ P")] {
        check(&g, &d, &named(name), &f(ty)).map_err(|e| format!("{name}: {e}"))?;
    }
    let w = infer(&g, &d, &named("W")).map_err(|e| format!("W: {e}"))?;
    ensure(*w.formula() == f("P \\/ ~P"), format!("W inferred {}", w.formula()))?;
    ensure(check(&g, &d, &named("W"), &f("~P \\/ P")).is_err(), "W must not check at ~P \\/ P")?;
    Ok("T, C1, C2, Wprime check; W : P \\/ ~P".into())
}

/// `\y. [a] (y tail)` with `a` bound by one of the spine's μ-wrappers.
fn is_continuation(theta: &Term, tail: &ESequence, spine: &[Wrapper]) -> bool {
    spine.iter().any(|w| match w {
        Wrapper::Mu(a, _) => {
            let expected = Term::abs("y", None, Term::named(a.clone(), tail.apply_to(Term::var("y"))));
            alpha_equal(&erase(theta), &expected)
        }
        Wrapper::Named(_) => false,
    })
}

fn confirmed(r: &BehaviorReport, m: usize) -> Result<(), String> {
    ensure(r.verdict.is_confirmed(), format!("{}: {}", r.law, r.verdict))?;
    ensure(r.m == m, format!("{}: m = {}, expected {m}", r.law, r.m))?;
    r.revalidate()
}

fn golden_traces() -> Outcome {
    let input = Term::apply(Term::apply(named("T"), Term::var("t")), Term::var("u"));
    let (nf, _) = normalize(&input, DEFAULT_FUEL).map_err(|e| e.to_string())?;
    ensure(alpha_equal(&erase(&nf), &parse_term("mu a. t").unwrap()), format!("((T t) u) normalized to {}", print_term(&nf)))?;

    let c1 = probe_peirce(&named("C1"), 1, 2000, 4).map_err(|e| e.to_string())?;
    confirmed(&c1, 1)?;
    ensure(
        is_continuation(&c1.thetas[0], &c1.tails[0], &c1.stages[0].found.witness.wrappers),
        format!("C1 theta1 = {}", print_term(&c1.thetas[0])),
    )?;

    let c2 = probe_peirce(&named("C2"), 1, 2000, 4).map_err(|e| e.to_string())?;
    confirmed(&c2, 2)?;

    for name in ["W", "Wprime"] {
        let r = probe_tertium(&named(name), 1, 5000, 4).map_err(|e| e.to_string())?;
        confirmed(&r, 2)?;
        let tail = &r.tails[0];
        ensure(matches!(r.thetas[0], Term::Mu(..)), format!("{name}: theta1 = {}", print_term(&r.thetas[0])))?;
        ensure(alpha_equal(&r.stages[1].input, &tail.apply_to(r.thetas[0].clone())), format!("{name}: theta1 not fed the sequence"))?;
        ensure(
            is_continuation(&r.thetas[1], tail, &r.stages[1].found.witness.wrappers),
            format!("{name}: theta2 = {}", print_term(&r.thetas[1])),
        )?;
        let terminal = tail.apply_to(Term::var(r.values[0].clone()));
        ensure(alpha_equal(&r.stages[2].found.witness.leaf, &terminal), format!("{name}: terminal leaf"))?;
    }
    Ok(format!(
        "((T t) u) ->* {}; C1 m=1 theta1 = {}; C2 m=2; W m=2",
        print_term(&nf),
        print_term(&c1.thetas[0])
    ))
}

fn property(report: PropertyReport, corpus: &Corpus) -> Outcome {
    ensure(report.passed(), format!("{} failures, first: {:?}", report.failures.len(), report.failures.first()))?;
    ensure(report.incomplete.is_empty(), format!("{} incomplete", report.incomplete.len()))?;
    ensure(report.checked == corpus.len(), format!("checked {} of {}", report.checked, corpus.len()))?;
    Ok(format!("{} terms, 0 failures", report.checked))
}

fn universality() -> Outcome {
    let mut summary = Vec::new();
    for (law, ty) in [
        (Law::Exfalso, "_|_ -> P"),
        (Law::Peirce, "(~P -> P) -> P"),
        (Law::Tertium, "~P \\/ P"),
        (Law::Tertium, "P \\/ ~P"),
    ] {
        let corpus = enumerate_typed_terms(DEFAULT_MAX_SIZE, Some(&f(ty)));
        ensure(!corpus.is_empty(), format!("no terms of type {ty}"))?;
        let opts = ProbeOptions::default();
        let bad: Vec<String> = corpus
            .entries
            .par_iter()
            .filter_map(|e| match probe(law, &e.term, &opts) {
                Ok(r) if r.verdict.is_confirmed() => r.revalidate().err().map(|err| format!("{}: {err}", print_term(&e.term))),
                Ok(r) => Some(format!("{}: {}", print_term(&e.term), r.verdict)),
                Err(err) => Some(format!("{}: {err}", print_term(&e.term))),
            })
            .collect();
        ensure(bad.is_empty(), format!("{law} at {ty}: {} not confirmed, first: {}", bad.len(), bad.first().cloned().unwrap_or_default()))?;
        summary.push(format!("{law} {}/{}", corpus.len(), corpus.len()));
    }
    Ok(summary.join(", "))
}

fn lmu(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lmu")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn round_trip_and_determinism(corpus: &Corpus) -> Outcome {
    for t in corpus.terms() {
        let printed = print_term(t);
        let back = parse_term(&printed).map_err(|e| format!("{printed}: {e}"))?;
        ensure(alpha_equal(&back, t), format!("{printed} does not round-trip"))?;
    }
    let again = enumerate_typed_terms(DEFAULT_MAX_SIZE, None);
    ensure(corpus.terms().eq(again.terms()), "enumeration differs between runs")?;
    let runs: [&[&str]; 4] = [
        &["probe", "--law", "lem", "--term", "W", "--seed", "7", "--json"],
        &["probe", "--law", "peirce", "--term", "C2", "--seed", "7", "--json"],
        &["suite", "--max-size", "7", "--seed", "7", "--json"],
        &["corpus", "--max-size", "7"],
    ];
    for args in runs {
        let first = lmu(args)?;
        let second = lmu(args)?;
        ensure(first.0 == 0, format!("lmu {} exited {}", args.join(" "), first.0))?;
        ensure(first == second, format!("lmu {} differs between runs", args.join(" ")))?;
    }
    Ok(format!("{} terms round-trip; 4 CLI invocations reproducible", corpus.len()))
}

fn main() {
    let minute = Duration::from_secs(60);
    let mut ok = true;
    ok &= criterion(1, "golden types", Some(Duration::from_secs(1)), golden_types);
    ok &= criterion(2, "golden traces", Some(Duration::from_secs(5)), golden_traces);

    let mut corpus = None;
    ok &= criterion(3, "subject reduction", Some(2 * minute), || {
        let c = enumerate_typed_terms(DEFAULT_MAX_SIZE, None);
        let r = property(check_subject_reduction(&c), &c);
        corpus = Some(c);
        r
    });
    let corpus = corpus.unwrap_or_else(|| enumerate_typed_terms(DEFAULT_MAX_SIZE, None));
    ok &= criterion(4, "confluence", Some(2 * minute), || property(check_confluence(&corpus), &corpus));
    ok &= criterion(5, "strong normalization", Some(2 * minute), || {
        let sn = check_strong_normalization(&corpus);
        let longest = sn.longest_paths.iter().max().copied().unwrap_or(0);
        let detail = property(sn, &corpus)?;
        let control = strong_normalization_of_terms(&negative_controls(), DEFAULT_NODE_CAP);
        ensure(control.failures.len() == 1, "omega not flagged as cyclic")?;
        Ok(format!("{detail}, longest reduction {longest}; omega flagged cyclic"))
    });
    ok &= criterion(6, "behavior universality", None, universality);
    ok &= criterion(7, "round-trip and determinism", None, || round_trip_and_determinism(&corpus));

    if !ok {
        std::process::exit(1);
    }
}
