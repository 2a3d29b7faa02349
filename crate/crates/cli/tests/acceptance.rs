//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p oddsmo --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use oddsmo_core::orders::{build_grid, check_order, classify_shape};
use oddsmo_core::sampling::UniformStream;
use oddsmo_core::stability::experiment_against;
use oddsmo_core::{
    Baseline, ContinuousDistribution, DistortedOdds, EnlargedLogLogistic, GridSpec, OrderStatus,
    ParamTriple, Relation,
};
use statrs::distribution::{ContinuousCDF, Gamma};

/// Cases whose disagreement in the sweep is a genuine counterexample.
const KNOWN_COUNTEREXAMPLES: &[&str] = &["ELL-HR-A0"];

type Criterion = (&'static str, fn() -> Verdict, Duration);

struct Verdict {
    pass: bool,
    detail: String,
    /// Failing for a documented reason; does not fail the run.
    known: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
            known: false,
            notes: Vec::new(),
        }
    }
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_oddsmo"));
    c.env_remove("ODDSMO_THREADS");
    c
}

fn exp1() -> Baseline {
    Baseline::exponential(1.0).unwrap()
}

fn baselines() -> Vec<Baseline> {
    vec![
        exp1(),
        Baseline::weibull(2.0, 1.0).unwrap(),
        Baseline::gamma(4.0, 1.0).unwrap(),
        Baseline::std_log_logistic(),
        Baseline::gamma(1.13, 116.6).unwrap(),
        Baseline::weibull(0.7, 3.0).unwrap(),
    ]
}

fn random_params(rng: &mut UniformStream) -> ParamTriple {
    let a = if rng.next_open() < 0.1 { 0.0 } else { rng.log_uniform(0.01, 4.0) };
    ParamTriple::new(a, rng.log_uniform(0.1, 10.0), rng.log_uniform(0.2, 5.0)).unwrap()
}

/// Baseline odds from closed forms, or statrs for the gamma family.
fn oracle_odds(b: &Baseline, x: f64) -> f64 {
    let (cdf, sf) = match *b {
        Baseline::Exponential { rate } => (-(-rate * x).exp_m1(), (-rate * x).exp()),
        Baseline::Weibull { shape, scale } => {
            let z = (x / scale).powf(shape);
            (-(-z).exp_m1(), (-z).exp())
        }
        Baseline::StdLogLogistic => (x / (1.0 + x), 1.0 / (1.0 + x)),
        Baseline::Gamma { shape, scale } => {
            let g = Gamma::new(shape, 1.0 / scale).unwrap();
            (g.cdf(x), g.sf(x))
        }
    };
    cdf / sf
}

fn rel(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / want.abs()
    }
}

fn reductions() -> Verdict {
    let e = exp1();
    let xs = GridSpec::default().abscissas(&e).unwrap();
    let mut worst: f64 = 0.0;
    for beta in [0.1, 0.5, 1.0, 2.0, 7.5] {
        let g = DistortedOdds::new(e, ParamTriple::omo(beta, 1.0).unwrap());
        for &x in &xs {
            let (f, s) = (-(-x).exp_m1(), (-x).exp());
            worst = worst.max((g.sf(x) - s / (beta * f + s)).abs());
        }
    }
    for theta in [0.3, 1.0, 2.0, 4.5] {
        let g = DistortedOdds::new(e, ParamTriple::new(1.0, 1.0, theta).unwrap());
        for &x in &xs {
            worst = worst.max((g.sf(x) - (-theta * x).exp()).abs());
        }
    }
    Verdict::new(xs.len() == 2049 && worst < 1e-12, format!("max abs error {worst:.2e} on 2049 points"))
}

fn composition() -> Verdict {
    let mut rng = UniformStream::new(2);
    let bs = baselines();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let b = bs[rng.below(bs.len())];
        let p = random_params(&mut rng);
        let x = b.quantile(rng.uniform(0.01, 0.99)).unwrap();
        let lam = oracle_odds(&b, x);
        let want = p.beta() * ((p.alpha() + lam).powf(p.theta()) - p.alpha().powf(p.theta()));
        let g = DistortedOdds::new(b, p);
        let k = EnlargedLogLogistic::new(p);
        worst = worst.max(rel(g.cdf(x) / g.sf(x), want));
        worst = worst.max(rel(k.quantile(b.cdf(x)).unwrap(), want));
    }
    Verdict::new(worst < 1e-11, format!("max relative error {worst:.2e} over 1000 draws"))
}

fn round_trips() -> Verdict {
    let mut rng = UniformStream::new(3);
    let bs = baselines();
    let mut worst: [f64; 3] = [0.0; 3];
    for _ in 0..1000 {
        let b = bs[rng.below(bs.len())];
        let p = random_params(&mut rng);
        let g = DistortedOdds::new(b, p);
        let k = EnlargedLogLogistic::new(p);
        let u = rng.next_open();
        worst[0] = worst[0].max((b.cdf(b.quantile(u).unwrap()) - u).abs());
        worst[1] = worst[1].max((g.cdf(g.quantile(u).unwrap()) - u).abs());
        worst[2] = worst[2].max((k.cdf(k.quantile(u).unwrap()) - u).abs());
    }
    Verdict::new(
        worst.iter().all(|&w| w < 1e-10),
        format!("baseline {:.1e}, domo {:.1e}, ell {:.1e}", worst[0], worst[1], worst[2]),
    )
}

fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// `∫ pdf` between the `ε` and `1 − ε` quantiles in `ln x`, plus `2ε`.
fn total_mass(d: &dyn ContinuousDistribution, rule: &[(f64, f64)]) -> f64 {
    let eps = 1e-13;
    let (a, b) = (d.quantile(eps).unwrap().ln(), d.isf(eps).unwrap().ln());
    let panels = 400;
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for &(t, w) in rule {
            let x = (mid + 0.5 * h * t).exp();
            sum += w * d.pdf(x) * x;
        }
    }
    sum * 0.5 * h + 2.0 * eps
}

fn normalization() -> Verdict {
    let rule = gauss_legendre(20);
    let mut rng = UniformStream::new(4);
    let bs = baselines();
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let g = DistortedOdds::new(bs[i % bs.len()], random_params(&mut rng));
        worst = worst.max((total_mass(&g, &rule) - 1.0).abs());
    }
    let example = DistortedOdds::new(Baseline::gamma(1.13, 116.6).unwrap(), ParamTriple::omo(4.4324, 0.6822).unwrap());
    let ex = (total_mass(&example, &rule) - 1.0).abs();
    Verdict::new(worst < 1e-8 && ex < 1e-6, format!("random max {worst:.1e}, example {ex:.1e}"))
}

fn sweep() -> Verdict {
    let dir = std::env::temp_dir().join(format!("oddsmo-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("verify.json");
    let out = bin()
        .args(["verify", "--trials", "200", "--seed", "42", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    if !out.status.success() {
        return Verdict::new(false, format!("verify exited with {:?}", out.status.code()));
    }
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_dir_all(&dir);
    let mut unflagged = Vec::new();
    let mut notes = Vec::new();
    let tally = |c: &serde_json::Value| {
        (c["disagreements"].as_array().unwrap().len(), c["trials_applicable"].as_u64().unwrap())
    };
    let all = doc["cases"].as_array().unwrap();
    for c in all {
        let id = c["id"].as_str().unwrap();
        let (bad, applicable) = tally(c);
        match c.get("flag").and_then(|f| f.as_str()) {
            Some(flag) => {
                let mut note = format!("flagged {id} ({flag}): {bad} of {applicable} applicable trials disagree");
                if let Some(base) = id.strip_suffix("-PRINTED") {
                    if let Some(other) = all.iter().find(|o| o["id"] == base) {
                        let (b, a) = tally(other);
                        note.push_str(&format!("; corrected reading {base}: {b} of {a}"));
                    }
                }
                if id.ends_with("-HR6") {
                    note.push_str("; the misprinted symbol only enters the proof, so both readings share this hypothesis, which forces theta < 1");
                }
                notes.push(note);
            }
            None if bad > 0 => unflagged.push(format!("{id} ({bad} of {applicable})")),
            None => {}
        }
    }
    let cases = doc["cases"].as_array().unwrap().len();
    let mut v = Verdict::new(
        unflagged.is_empty(),
        if unflagged.is_empty() {
            format!("{cases} cases, no unflagged disagreements")
        } else {
            format!("{cases} cases, unflagged disagreements: {}", unflagged.join(", "))
        },
    );
    v.known = !unflagged.is_empty()
        && unflagged
            .iter()
            .all(|u| KNOWN_COUNTEREXAMPLES.iter().any(|k| u.split(' ').next() == Some(k)));
    if v.known {
        notes.push("ELL-HR-A0: with alpha = 0 and theta < 1 the log-logistic hazard vanishes at 0 while the other stays positive, so the claimed hr order fails near 0".into());
    }
    v.notes = notes;
    v
}

fn noncomparability() -> Verdict {
    let mut ok = 0;
    for theta in [0.5, 2.0] {
        for beta in [0.5, 1.0, 2.0] {
            let g = DistortedOdds::new(exp1(), ParamTriple::omo(beta, theta).unwrap());
            let v = check_order(Relation::Stochastic, &exp1(), &g, &GridSpec::default()).unwrap();
            ok += usize::from(v.status == OrderStatus::Crosses && v.witness.is_some_and(f64::is_finite));
        }
    }
    Verdict::new(ok == 6, format!("{ok}/6 cross with a finite witness"))
}

fn hazard_bounds() -> Verdict {
    let f = Baseline::weibull(2.0, 1.0).unwrap();
    let mut violations = 0;
    let mut points = 0;
    for beta in [0.25, 4.0] {
        let g = DistortedOdds::new(f, ParamTriple::omo(beta, 1.0).unwrap());
        for x in build_grid(&f, &g, &GridSpec::default()).unwrap() {
            let (hf, hg) = (f.hazard(x), g.hazard(x));
            let (lo, hi) = (beta.min(1.0) * hf, beta.max(1.0) * hf);
            points += 1;
            violations += usize::from(lo > hg * (1.0 + 1e-10) || hg > hi * (1.0 + 1e-10));
        }
    }
    Verdict::new(violations == 0, format!("{violations} violations at {points} points"))
}

fn key(stdout: &[u8], name: &str) -> Option<String> {
    String::from_utf8_lossy(stdout)
        .lines()
        .find_map(|l| l.strip_prefix(name).and_then(|r| r.strip_prefix('=')).map(str::to_string))
}

fn stability() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for p in ["0.2", "0.5", "0.9"] {
        let out = bin()
            .args(["stability", "--dist", "domo:1,1,2@exp:1", "--p", p, "--n", "100000", "--seed", "7"])
            .output()
            .unwrap();
        let ok = out.status.success() && key(&out.stdout, "passed").as_deref() == Some("true");
        pass &= ok;
        parts.push(format!(
            "p={p} ks_min={} ks_max={}",
            key(&out.stdout, "ks_min").unwrap_or_default(),
            key(&out.stdout, "ks_max").unwrap_or_default()
        ));
    }
    let g = DistortedOdds::new(exp1(), ParamTriple::new(1.0, 1.0, 2.0).unwrap());
    let control = experiment_against(&g, &g, &g, 0.25, 100_000, 7).unwrap();
    pass &= !control.min_pass && !control.max_pass;
    parts.push(format!("control ks_min={:.3} ks_max={:.3} rejected", control.ks_min, control.ks_max));
    Verdict::new(pass, parts.join(", "))
}

fn shapes() -> Verdict {
    let mut rng = UniformStream::new(9);
    let grid = GridSpec::default();
    let (mut seen, mut bad) = ([0; 3], 0);
    while seen.iter().any(|&c| c < 50) {
        let p = random_params(&mut rng);
        let s = classify_shape(&EnlargedLogLogistic::new(p), &grid).unwrap();
        for (i, (applies, holds)) in [
            (p.alpha() + p.theta() > 1.0, s.dhr),
            (p.theta() <= 1.0, s.ior),
            (p.theta() >= 1.0, s.dor),
        ]
        .into_iter()
        .enumerate()
        {
            if applies && seen[i] < 50 {
                seen[i] += 1;
                bad += usize::from(!holds);
            }
        }
    }
    Verdict::new(bad == 0, format!("{bad} failures in 150 checks (dhr, ior, dor)"))
}

fn convex_brackets() -> Verdict {
    let grid = GridSpec::default();
    let (mut checks, mut bad) = (0, 0);
    for theta in [1.0, 2.0, 4.0] {
        for alpha in [0.5, 1.0, 2.0] {
            for beta in [0.5, 2.0] {
                let k = EnlargedLogLogistic::from_parts(alpha, beta, theta).unwrap();
                let ll = EnlargedLogLogistic::from_parts(0.0, beta, 1.0).unwrap();
                let mut check = |a: &EnlargedLogLogistic, b: &EnlargedLogLogistic| {
                    checks += 1;
                    bad += usize::from(!check_order(Relation::ConvexTransform, a, b, &grid).unwrap().holds());
                };
                if theta >= 1.0 {
                    check(&ll, &k);
                }
                if theta <= 1.0 {
                    check(&k, &ll);
                }
            }
        }
    }
    Verdict::new(bad == 0, format!("{bad} failures in {checks} checks"))
}

fn determinism() -> Verdict {
    let dir = std::env::temp_dir().join(format!("oddsmo-determinism-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("out");
    let commands: Vec<(Vec<&str>, bool)> = vec![
        (vec!["eval", "--dist", "domo:0.5,2,1.5@gamma:4,1"], false),
        (vec!["classify", "--dist", "ell:0.5,2,0.7"], false),
        (vec!["order", "--relation", "c", "--left", "loglogistic", "--right", "ell:1,1,2"], false),
        (vec!["stability", "--dist", "domo:1,1,2@exp:1", "--p", "0.5", "--n", "10000", "--seed", "3"], false),
        (vec!["verify", "--trials", "5", "--seed", "42"], true),
        (vec!["prentice"], true),
    ];
    let mut differing = Vec::new();
    for (args, to_file) in &commands {
        let run = || {
            let mut c = bin();
            c.args(args);
            if *to_file {
                c.arg("--out").arg(&file);
            }
            let out = c.output().unwrap();
            let body = if *to_file { std::fs::read(&file).unwrap() } else { out.stdout };
            (out.status.code(), body)
        };
        if run() != run() {
            differing.push(args[0]);
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Verdict::new(
        differing.is_empty(),
        if differing.is_empty() {
            format!("{} commands repeated byte-identically", commands.len())
        } else {
            format!("outputs differ for {}", differing.join(", "))
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("reduction identities", reductions, Duration::from_secs(1)),
        ("odds composition", composition, Duration::from_secs(5)),
        ("quantile round trips", round_trips, Duration::from_secs(5)),
        ("density normalization", normalization, Duration::from_secs(30)),
        ("theorem sweep", sweep, Duration::from_secs(300)),
        ("st non-comparability", noncomparability, Duration::from_secs(60)),
        ("hazard bounds", hazard_bounds, Duration::from_secs(60)),
        ("geometric stability", stability, Duration::from_secs(60)),
        ("ell shape classes", shapes, Duration::from_secs(60)),
        ("convex transform brackets", convex_brackets, Duration::from_secs(60)),
        ("determinism", determinism, Duration::from_secs(300)),
    ];
    let mut unexpected = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut v = check();
        let elapsed = start.elapsed();
        if elapsed > limit {
            v.pass = false;
            v.known = false;
            v.detail.push_str(&format!("; over the {:.0} s budget", limit.as_secs_f64()));
        }
        let status = match (v.pass, v.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {}: {status} {name}: {} [{:.2} s]", i + 1, v.detail, elapsed.as_secs_f64());
        for note in &v.notes {
            println!("    {note}");
        }
        if !v.pass && !v.known {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
