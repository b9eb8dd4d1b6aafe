//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Criteria 1 to 11 run the library suite at both reference parameter sets and
//! add oracles written here from scratch (explicit Hermite sums, a term-wise
//! Hamiltonian). Criterion 12 drives the `ppb` binary.

use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};

use num_complex::Complex64;
use ppb_core::eigenstates::{degeneracy, energy};
use ppb_core::hermite::hermite_pm;
use ppb_core::verify::{self, CheckResult, SuiteConfig};
use ppb_core::{Branch, Degeneracy, PhysParams, StateLabel};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 42;
const N_MAX: usize = 8;

/// Number, name and runner.
type Criterion = (u8, &'static str, fn(&mut Outcome));

struct Outcome {
    passed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            passed: true,
            notes: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, note: impl Into<String>) {
        self.passed &= ok;
        let note = note.into();
        if !ok {
            self.notes.push(format!("FAILED {note}"));
        } else {
            self.notes.push(note);
        }
    }

    fn suite(&mut self, tag: &str, checks: &[CheckResult]) {
        for c in checks {
            self.record(c.passed, format!("{tag}: {c}"));
        }
    }
}

fn param_sets() -> [(&'static str, PhysParams); 2] {
    [
        ("natural", PhysParams::natural()),
        (
            "(2,0.5,1.5,-3)",
            PhysParams::new(2.0, 0.5, 1.5, -3.0).unwrap(),
        ),
    ]
}

/// `n! Σ (∓i)^k (2ξ)^(n−2k) / (k! (n−2k)!)` as coefficients in ξ.
fn explicit_hermite(n: usize, branch: Branch) -> Vec<Complex64> {
    let unit = match branch {
        Branch::Plus => Complex64::new(0.0, -1.0),
        Branch::Minus => Complex64::new(0.0, 1.0),
    };
    let fact = |m: usize| (1..=m as u128).product::<u128>();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in 0..=n / 2 {
        let magnitude = fact(n) / (fact(k) * fact(n - 2 * k)) * (1u128 << (n - 2 * k));
        coeffs[n - 2 * k] = unit.powi(k as i32) * magnitude as f64;
    }
    coeffs
}

fn horner(coeffs: &[Complex64], x: f64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &c)| c * j as f64)
        .collect()
}

/// Value and second ξ-derivative of `H(ξ) exp(i s ξ²/2)` without the common phase.
fn factor_terms(h: &[Complex64], s: f64, xi: f64) -> (Complex64, Complex64) {
    let i = Complex64::new(0.0, 1.0);
    let d1 = derivative(h);
    let d2 = derivative(&d1);
    let f = horner(h, xi);
    let f2 = horner(&d2, xi) + 2.0 * i * s * xi * horner(&d1, xi) + i * s * f - xi * xi * f;
    (f, f2)
}

fn table_energy(t: u8, nx: usize, ny: usize, p: &PhysParams) -> Complex64 {
    let (nx, ny) = (nx as f64, ny as f64);
    let k = match t {
        1 => -(nx + ny + 1.0),
        2 => ny - nx,
        3 => nx - ny,
        _ => nx + ny + 1.0,
    };
    Complex64::new(p.v0(), k * p.hbar() * p.gamma())
}

fn criterion_1(out: &mut Outcome) {
    for (tag, p) in param_sets() {
        let cfg = SuiteConfig::new(p, N_MAX, SEED);
        out.suite(tag, &verify::spectrum(&cfg));

        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let points: Vec<(f64, f64)> = (0..100)
            .map(|_| (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)))
            .collect();
        let hg = p.hbar() * p.gamma();
        let mut exact = true;
        let mut worst: f64 = 0.0;
        for t in 1..=4u8 {
            for nx in 0..=N_MAX {
                for ny in 0..=N_MAX {
                    let label = StateLabel::from_type(t, nx, ny).unwrap();
                    let e = table_energy(t, nx, ny, &p);
                    exact &= energy(label, &p).value() == e;
                    let hx = explicit_hermite(nx, label.bx);
                    let hy = explicit_hermite(ny, label.by);
                    for &(x, y) in &points {
                        let (xi, eta) = (p.beta() * x, p.beta() * y);
                        let (f, fxx) = factor_terms(&hx, label.bx.sign(), xi);
                        let (g, gyy) = factor_terms(&hy, label.by.sign(), eta);
                        let kinetic = -0.5 * hg * (fxx * g + f * gyy);
                        let barrier = -0.5 * hg * (xi * xi + eta * eta) * f * g;
                        let shift = (p.v0() - e) * f * g;
                        let r = (kinetic + barrier + shift).norm();
                        let scale = kinetic.norm() + barrier.norm() + shift.norm();
                        if r > 0.0 {
                            worst = worst.max(r / scale);
                        }
                    }
                }
            }
        }
        out.record(
            exact,
            format!("{tag}: energy equals independent table, nx, ny <= {N_MAX}"),
        );
        out.record(
            worst <= 1e-10,
            format!("{tag}: term-wise Hamiltonian oracle residual {worst:.3e} <= 1e-10"),
        );
    }
}

fn criterion_2(out: &mut Outcome) {
    let cfg = SuiteConfig::new(PhysParams::natural(), N_MAX, SEED);
    out.suite("natural", &verify::polynomials(&cfg));
    let mut identical = true;
    for n in 0..=16 {
        for b in [Branch::Plus, Branch::Minus] {
            identical &= hermite_pm(n, b).coeffs() == explicit_hermite(n, b).as_slice();
        }
    }
    out.record(
        identical,
        "recurrence equals explicit sum exactly for n <= 16",
    );
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let low_order = hermite_pm(0, Branch::Plus).coeffs() == [c(1.0, 0.0)]
        && hermite_pm(1, Branch::Plus).coeffs() == [c(0.0, 0.0), c(2.0, 0.0)]
        && hermite_pm(2, Branch::Plus).coeffs() == [c(0.0, -2.0), c(0.0, 0.0), c(4.0, 0.0)]
        && hermite_pm(2, Branch::Minus).coeffs() == [c(0.0, 2.0), c(0.0, 0.0), c(4.0, 0.0)];
    out.record(
        low_order,
        "low-order coefficients [1], [0,2], [-2i,0,4] and conjugate",
    );
}

fn criterion_3(out: &mut Outcome) {
    let cfg = SuiteConfig::new(PhysParams::natural(), N_MAX, SEED);
    out.suite("natural", &verify::degeneracy_counts(&cfg));
    let ok = (0..=10).all(|n| {
        [1u8, 4]
            .iter()
            .all(|&t| degeneracy(t, n).unwrap() == Degeneracy::Finite(n as u64 + 1))
    });
    out.record(ok, "degeneracy(1|4, n) = n + 1 for n <= 10");
    out.record(
        degeneracy(1, 2).unwrap() == Degeneracy::Finite(3),
        "threefold degenerate at n = 2",
    );
}

fn suite_criterion(out: &mut Outcome, group: fn(&SuiteConfig) -> Vec<CheckResult>) {
    for (tag, p) in param_sets() {
        out.suite(tag, &group(&SuiteConfig::new(p, N_MAX, SEED)));
    }
}

fn ppb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppb"))
        .env_remove("PPB_DEFAULT_FORMAT")
        .args(args)
        .output()
        .expect("ppb runs")
}

fn criterion_12(out: &mut Outcome) {
    let schema_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();

    let cases: [(&[&str], i32, &str); 6] = [
        (&["verify", "--n-max", "6", "--seed", "42"], 0, "verify"),
        (
            &[
                "--hbar", "2", "--mass", "0.5", "--gamma", "1.5", "--v0", "-3", "verify",
                "--n-max", "4",
            ],
            0,
            "verify at (2,0.5,1.5,-3)",
        ),
        (
            &["verify", "--n-max", "3", "--inject-fault"],
            1,
            "verify with corrupted basis",
        ),
        (&["verify", "--n-max", "-1"], 2, "usage error"),
        (
            &["potentials", "--type", "1"],
            3,
            "potentials on a diverging flow",
        ),
        (
            &["energies", "--type", "7", "--n-max", "1"],
            2,
            "invalid type",
        ),
    ];
    for (args, want, what) in cases {
        let got = ppb(args).status.code();
        out.record(
            got == Some(want),
            format!("{what}: exit {got:?}, want {want}"),
        );
    }

    let csv = ppb(&["verify", "--n-max", "2"]);
    let text = String::from_utf8_lossy(&csv.stdout);
    out.record(
        text.starts_with("criterion,status,measured,bound,limit,check,detail\n"),
        "verify CSV header",
    );

    let json_runs: [&[&str]; 6] = [
        &["verify", "--n-max", "2", "--format", "json"],
        &[
            "verify",
            "--n-max",
            "2",
            "--inject-fault",
            "--format",
            "json",
        ],
        &[
            "energies", "--type", "3", "--n-max", "2", "--format", "json",
        ],
        &[
            "field", "--type", "2", "--nx", "1", "--ny", "1", "--which", "velocity", "--res",
            "5,5", "--format", "json",
        ],
        &[
            "streamline",
            "--type",
            "2",
            "--from",
            "1,1",
            "--format",
            "json",
        ],
        &["potentials", "--type", "4", "--format", "json"],
    ];
    for args in json_runs {
        let doc: Option<Value> = serde_json::from_slice(&ppb(args).stdout).ok();
        let ok = doc.as_ref().is_some_and(|d| validator.is_valid(d));
        out.record(ok, format!("JSON schema for `{}`", args.join(" ")));
    }

    for args in [
        &["verify", "--n-max", "4", "--seed", "7"][..],
        &["verify", "--n-max", "4", "--seed", "7", "--format", "json"][..],
    ] {
        let same = ppb(args).stdout == ppb(args).stdout;
        out.record(
            same,
            format!("byte-identical rerun of `{}`", args.join(" ")),
        );
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "spectrum", criterion_1),
        (2, "polynomials", criterion_2),
        (3, "degeneracy", criterion_3),
        (4, "angular momentum", |o| {
            suite_criterion(o, verify::angular_momentum)
        }),
        (5, "irrotationality", |o| {
            suite_criterion(o, verify::irrotationality)
        }),
        (6, "solenoidality dichotomy", |o| {
            suite_criterion(o, verify::solenoidality)
        }),
        (7, "closed-form currents", |o| {
            suite_criterion(o, verify::closed_form_currents)
        }),
        (8, "potentials", |o| suite_criterion(o, verify::potentials)),
        (9, "streamlines", |o| {
            suite_criterion(o, verify::streamlines)
        }),
        (10, "conjugation and parity", |o| {
            suite_criterion(o, verify::conjugation_and_parity)
        }),
        (11, "oracle cross-check", |o| {
            suite_criterion(o, verify::oracle_cross_check)
        }),
        (12, "CLI contract", criterion_12),
    ];
    let verbose = std::env::var_os("PPB_ACCEPTANCE_VERBOSE").is_some();
    let mut failed = 0;
    for (n, name, run) in criteria {
        let mut out = Outcome::new();
        run(&mut out);
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {n:>2}: {name} ({} checks)",
            out.notes.len()
        );
        for note in &out.notes {
            if verbose || note.starts_with("FAILED") {
                println!("    {note}");
            }
        }
        failed += usize::from(!out.passed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
