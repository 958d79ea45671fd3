//! Acceptance criteria, one line each. Criteria recorded as unattainable in
//! `KNOWN_FAILING` are still evaluated in full; the run fails if any other
//! criterion fails or if a known failure changes.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use algebroid_forge::calculus::{Algebroid, Endo, GradedSection, Variance};
use algebroid_forge::courant::Submanifold;
use algebroid_forge::coeff::Var;
use algebroid_forge::frontend::{parse, run, RunConfig};
use algebroid_forge::paired::{build_deformed_double, check_torsion_blocks, PairedOperator};
use algebroid_forge::pn::qlb::QuasiLieBialgebroid;
use algebroid_forge::{RationalFunction, Report};

type RF = RationalFunction;

/// Criterion 3: no rotation block N satisfies Nπ♯ = π♯N* for π = ∂1∧∂2.
const KNOWN_FAILING: [(usize, &str); 1] = [(3, "n-pi-sharp(E1)")];

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name)
}

fn corpus(name: &str) -> String {
    std::fs::read_to_string(corpus_path(name)).expect("corpus file")
}

fn run_file(name: &str, config: &RunConfig) -> Vec<Report> {
    run(&parse(&corpus(name)).expect("corpus parses"), config)
}

fn first_failure(reps: &[Report]) -> String {
    reps.iter()
        .find(|r| !r.passed())
        .map(|r| match r.failing().next() {
            Some(c) => format!("{} at {} ({})", r.task, c.name, c.residue),
            None => format!("{}: {}", r.task, r.verdict),
        })
        .unwrap_or_else(|| "none".into())
}

fn within(start: Instant, budget: u64, out: Outcome) -> Outcome {
    let t = start.elapsed();
    if t > Duration::from_secs(budget) {
        return fail(format!("{} [{:.2}s exceeds {budget}s]", out.detail, t.as_secs_f64()));
    }
    Outcome {
        detail: format!("{} [{:.2}s]", out.detail, t.as_secs_f64()),
        ..out
    }
}

fn tangent(n: usize) -> Algebroid {
    Algebroid::tangent((1..=n).map(|i| Var::from(format!("x{i}").as_str())).collect())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cfg = RunConfig::default();
    for f in ["so3.alg", "aff1.alg"] {
        let reps = run_file(f, &cfg);
        if !reps.iter().all(|r| r.passed()) {
            return fail(format!("{f}: {}", first_failure(&reps)));
        }
    }
    for n in 1..=4 {
        let a = tangent(n);
        if !a.check_axioms().passed() || !a.check_d_squared().passed() {
            return fail(format!("TR^{n} fails"));
        }
    }
    let bad = run_file("so3_corrupt.alg", &cfg);
    match bad[0].clause("jacobi(1,2,3)") {
        Some(c) if !c.pass && c.residue == "e3:1" => {}
        other => return fail(format!("corrupted so(3): {other:?}")),
    }
    within(start, 5, ok("so(3), aff(1), TR^1..4 pass with d^2 = 0; corrupted so(3) Jacobiator = e3"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cfg = RunConfig {
        samples: 20,
        ..RunConfig::default()
    };
    let reps = run_file("e3_pqn.alg", &cfg);
    let want = ["check-axioms", "check-pqn", "build-qlb", "check-qlb"];
    for (r, t) in reps.iter().zip(want) {
        if r.task != t || !r.passed() {
            return fail(format!("{t}: {}", first_failure(&reps)));
        }
    }
    let fam = reps[3].family.as_ref().map(|f| f.samples);
    if fam != Some(20) {
        return fail(format!("check-qlb family samples {fam:?}"));
    }
    within(
        start,
        60,
        ok(format!(
            "diagonal PQN structure on R^3 passes check-pqn; its quasi-Lie bialgebroid passes {} check-qlb clauses with 20 samples",
            reps[3].clauses.len()
        )),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let reps = run_file("tr2_triangular.alg", &RunConfig::default());
    let out = if reps.iter().all(|r| r.passed()) {
        ok("triangular pair on TR2 passes check-compatible, check-pqn, the lemma and check-qlb")
    } else {
        let names: Vec<String> = reps.iter().map(|r| format!("{}={}", r.task, r.verdict)).collect();
        fail(format!("{}; first failure {}", names.join(" "), first_failure(&reps)))
    };
    within(start, 10, out)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let half = run_file("tr2_courant.alg", &RunConfig::default());
    if !half[0].passed() {
        return fail(format!("kappa 1/2: {}", first_failure(&half)));
    }
    let one = run_file(
        "tr2_courant.alg",
        &RunConfig {
            kappa: RF::integer(1),
            ..RunConfig::default()
        },
    );
    let failing: Vec<&str> = one[0].failing().map(|c| c.name.as_str()).collect();
    if failing != ["C2"] {
        return fail(format!("kappa 1 fails {failing:?}, expected C2 only"));
    }
    let twisted = run_file("twisted_nonclosed_r4.alg", &RunConfig::default());
    if twisted[0].clause("C1").map(|c| c.pass) != Some(false) {
        return fail("twisting by a non-closed 3-form keeps C1");
    }
    within(
        start,
        60,
        ok("standard TR2 double passes C1-C5 at kappa 1/2, fails only C2 at kappa 1; non-closed twist fails C1"),
    )
}

/// i*φ on a coordinate subspace, from the components of φ.
fn pulls_back_to_zero(a: &Algebroid, phi: &GradedSection, vanishing: &[&str]) -> bool {
    let p = Submanifold::coordinate_subspace(a.coords(), vanishing).unwrap();
    let idx: Vec<usize> = vanishing
        .iter()
        .map(|v| a.coords().iter().position(|c| c.as_ref() == *v).unwrap())
        .collect();
    phi.terms()
        .all(|(k, c)| k.iter().any(|i| idx.contains(i)) || p.restrict(c).is_zero())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let a = tangent(4);
    let phi = a.coframe(0).wedge(&a.coframe(1)).wedge(&a.coframe(2));
    let reps = run_file("twisted_dirac_r4.alg", &RunConfig::default());
    let pairs = [(["x3"], &reps[0]), (["x4"], &reps[1])];
    for (v, r) in pairs {
        let expect = pulls_back_to_zero(&a, &phi, &v);
        if r.passed() != expect {
            return fail(format!("P = {{{} = 0}}: D1-D3 {} but i*phi = 0 is {expect}", v[0], r.verdict));
        }
    }
    if !(reps[0].passed() && !reps[1].passed()) {
        return fail("expected pass on {x3 = 0} and fail on {x4 = 0}");
    }
    within(start, 30, ok("TP + conormal passes on {x3=0}, fails on {x4=0}, matching i*phi = 0"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let text = corpus("split_dirac.alg");
    let file = parse(&text).unwrap();
    let reps = run(&file, &RunConfig::default());
    let tasks: Vec<_> = file.tasks().collect();
    let tr2 = tangent(2);
    let pi = tr2.frame(0).wedge(&tr2.frame(1));
    let t = QuasiLieBialgebroid::from_twisted_poisson(&tr2, &pi, &GradedSection::zero(Variance::Form, 2, 3)).unwrap();
    if !t.x.is_zero() {
        return fail("the T instance should have X_A = 0");
    }
    let (mut count, mut with_zero_x) = (0, 0);
    for (task, r) in tasks.iter().zip(&reps) {
        if task.name != "check-split-dirac" {
            continue;
        }
        count += 1;
        if task.positional()[0] == "T" {
            with_zero_x += 1;
        }
        let four = r.clauses.iter().filter(|c| c.name.starts_with("cond")).all(|c| c.pass);
        let direct = r.clauses.iter().filter(|c| c.name.starts_with("dirac.")).all(|c| c.pass);
        if four != direct {
            return fail(format!("instance {count}: conditions {four}, D1-D3 {direct}"));
        }
    }
    if count < 4 || with_zero_x == 0 {
        return fail(format!("{count} instances, {with_zero_x} with X_A = 0"));
    }
    within(
        start,
        300,
        ok(format!("{count} instances ({with_zero_x} with X_A = 0): four-condition verdict equals D1-D3 verdict")),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let reps = run_file("e3_pqn.alg", &RunConfig::default());
    let by_task = |t: &str| reps.iter().find(|r| r.task == t).unwrap();
    if !by_task("build-morphism-graph").passed() {
        return fail(format!("graph: {}", first_failure(&reps)));
    }
    if !by_task("check-qlb-morphism").passed() {
        return fail(format!("N*: {}", first_failure(&reps)));
    }
    let bad = run_file("e3_pqn_corrupt.alg", &RunConfig::default());
    let m = bad.iter().find(|r| r.task == "check-qlb-morphism").unwrap();
    let failing: Vec<&str> = m.failing().map(|c| c.name.as_str()).collect();
    if failing != ["twist"] {
        return fail(format!("corrupted target fails {failing:?}, expected the twist clause only"));
    }
    within(
        start,
        300,
        ok("N* graph is Dirac in E1 x conj(E2); N* is a quasi-Lie bialgebroid morphism; corrupted target fails the twist clause"),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let cfg = RunConfig::default();
    let reps = run_file("e5_gc.alg", &cfg);
    let want = ["check-paired", "check-gc", "check-torsion-blocks", "build-deformed-double"];
    for (r, t) in reps.iter().zip(want) {
        if r.task != t || !r.passed() {
            return fail(format!("{t}: {}", first_failure(&reps)));
        }
    }
    if reps[2].clauses.iter().any(|c| c.residue != "0") {
        return fail("nonzero torsion residue");
    }
    for c in ["bracket", "anchor", "pairing"] {
        if reps[3].clause(c).map(|c| c.pass) != Some(true) {
            return fail(format!("identification clause {c}"));
        }
    }
    let a = tangent(2);
    let op = PairedOperator::new(
        Endo::zero(2),
        a.frame(0).wedge(&a.frame(1)),
        a.coframe(0).wedge(&a.coframe(1)),
    )
    .unwrap();
    let zero = GradedSection::zero(Variance::Form, 2, 3);
    let plain = build_deformed_double(&a, &op, None, &cfg.family()).unwrap().1;
    let twisted = build_deformed_double(&a, &op, Some(&zero), &cfg.family()).unwrap().1;
    let tb = check_torsion_blocks(&a, &op, Some(&zero));
    if plain.verdict != twisted.verdict
        || plain.clauses.iter().map(|c| c.pass).ne(twisted.clauses.iter().map(|c| c.pass))
        || tb.verdict != reps[2].verdict
    {
        return fail("phi = 0 twisted run differs");
    }
    within(
        start,
        60,
        ok("TR2 paired operator (N = 0, pi = d1^d2, sigma = dx1^dx2) is paired, generalized complex, torsion-free; bracket/anchor/pairing agree with the double of (A*_pi, d_N, d sigma); phi = 0 run identical"),
    )
}

fn forge(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().expect("forge runs")
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    for f in ["e3_pqn.alg", "split_dirac.alg", "e5_gc.alg", "tr2_courant.alg"] {
        let p = corpus_path(f);
        let args = ["check", p.to_str().unwrap(), "--format", "records", "--seed", "7"];
        let (a, b) = (forge(&args), forge(&args));
        if a.stdout != b.stdout || a.stdout.is_empty() {
            return fail(format!("{f}: records differ between runs"));
        }
    }
    let codes = [
        ("so3.alg", 0),
        ("e3_pqn.alg", 0),
        ("so3_corrupt.alg", 1),
        ("e3_pqn_corrupt.alg", 1),
        ("syntax_error.alg", 2),
        ("undeclared.alg", 2),
        ("bad_index.alg", 2),
    ];
    for (f, want) in codes {
        let p = corpus_path(f);
        let got = forge(&["check", p.to_str().unwrap()]).status.code();
        if got != Some(want) {
            return fail(format!("{f}: exit {got:?}, expected {want}"));
        }
    }
    within(start, 300, ok("records byte-identical across runs; exit codes 0/1/2 as specified"))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_path(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "alg"))
        .collect();
    files.sort();
    let mut tasks = 0;
    for f in &files {
        let out = forge(&["check", f.to_str().unwrap(), "--format", "records"]);
        if out.status.code().is_none() {
            return fail(format!("{} crashed", f.display()));
        }
        tasks += String::from_utf8_lossy(&out.stdout).lines().count();
    }
    within(start, 300, ok(format!("{} corpus files, {tasks} record lines", files.len())))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut unexpected = 0;
    for (i, c) in criteria.iter().enumerate() {
        let n = i + 1;
        let out = c();
        let known = KNOWN_FAILING.iter().find(|(k, _)| *k == n);
        let status = if out.pass { "PASS" } else { "FAIL" };
        let note = match known {
            Some(_) if !out.pass => " (known failure, see decisions ledger)",
            _ => "",
        };
        println!("criterion {n:>2}: {status}{note} - {}", out.detail);
        let expected = match known {
            Some((_, clause)) => !out.pass && out.detail.contains(clause),
            None => out.pass,
        };
        if !expected {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criterion result(s) differ from the expected outcome");
        ExitCode::FAILURE
    }
}
