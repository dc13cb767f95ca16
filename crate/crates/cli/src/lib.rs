//! Command-line front end: parses a command into [`Check`]s, runs them and
//! writes one JSON report per check to stdout and a summary to stderr.

pub mod checks;
pub mod report;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

pub use checks::Check;
pub use report::{classify, Config, Status, VerificationReport, SCHEMA_VERSION, VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "kwverify",
    version,
    about = "Exact verification certificates for cyclotomic and Kummer-theoretic checks"
)]
pub struct Cli {
    /// Worker threads for independent checks; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Add wall-clock timing to each report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a single verification.
    #[command(subcommand)]
    Verify(Verify),
    /// Compute and certify the class group of Q(ζ_p).
    Classgroup(ClassgroupArgs),
    /// Minimal polynomial and invariants of the subfield of Q(ζ_n) fixed by a subgroup.
    Subfield {
        #[arg(long)]
        n: u64,
        /// Comma-separated elements of the fixing subgroup.
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<u64>,
    },
    /// Run a fixed battery of checks.
    Suite {
        #[arg(long, value_enum, default_value_t = Profile::Quick)]
        profile: Profile,
    },
}

#[derive(Args, Debug)]
pub struct ClassgroupArgs {
    #[arg(long)]
    p: u64,
    /// Norm bound for the factor base; defaults to the Minkowski bound when feasible.
    #[arg(long)]
    factor_base: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// θ annihilates the class group of Q(ζ_p).
    Stickelberger(ClassgroupArgs),
    /// Factorization of (g(χ)^p) for the order-p character mod q.
    GaussSum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Exhaustive exponent-p sweep over cyclotomic units and ζ.
    PropExp {
        #[arg(long)]
        p: u64,
    },
    /// Quadratic fields unramified outside 2, by two routes.
    PropPex2 {
        #[arg(long)]
        bound: u64,
    },
    /// Cyclic subdirect subgroups of Z/p^a × Z/p^b.
    LemmaLc {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        amax: u32,
        #[arg(long)]
        bmax: u32,
    },
    /// Uniqueness of the cyclic degree-p^m subfield.
    PropCp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
    /// Φ-product identity and norm/trace sanity for m ≤ m_max.
    Kernel {
        #[arg(long, default_value_t = 100)]
        m_max: u64,
    },
    /// Splitting of rational primes q ≤ q_max in Q(ζ_p).
    Splitting {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 100)]
        q_max: u64,
    },
    /// Abelian-criterion instances and Kummer-class invariance.
    Kummer {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// μ = ζ^t(αρ)^p on seeded constructed instances.
    Reduction {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        instances: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    Quick,
    Full,
}

impl Command {
    fn checks(&self) -> Vec<Check> {
        match self {
            Command::Verify(v) => vec![match *v {
                Verify::Stickelberger(ClassgroupArgs { p, factor_base }) => {
                    Check::Stickelberger { p, factor_base }
                }
                Verify::GaussSum { p, q } => Check::GaussSum { p, q },
                Verify::PropExp { p } => Check::PropExp { p },
                Verify::PropPex2 { bound } => Check::PropPex2 { bound },
                Verify::LemmaLc { p, amax, bmax } => Check::LemmaLc { p, amax, bmax },
                Verify::PropCp { p, m } => Check::PropCp { p, m },
                Verify::Kernel { m_max } => Check::Kernel { m_max },
                Verify::Splitting { p, q_max } => Check::Splitting { p, q_max },
                Verify::Kummer { p, samples, seed } => Check::Kummer { p, samples, seed },
                Verify::Reduction { p, instances, seed } => Check::Reduction { p, instances, seed },
            }],
            Command::Classgroup(ClassgroupArgs { p, factor_base }) => {
                vec![Check::Classgroup {
                    p: *p,
                    factor_base: *factor_base,
                }]
            }
            Command::Subfield { n, subgroup } => vec![Check::Subfield {
                n: *n,
                subgroup: subgroup.clone(),
            }],
            Command::Suite { profile } => suite(*profile),
        }
    }
}

/// The battery for a profile, in output order. Quick keeps to p ≤ 7 and the
/// Gauss-sum pair (3, 7); full goes through p = 23.
pub fn suite(profile: Profile) -> Vec<Check> {
    let full = profile == Profile::Full;
    let class_primes: &[u64] = if full {
        &[3, 5, 7, 11, 13, 17, 19, 23]
    } else {
        &[3, 5, 7]
    };
    let small_primes: &[u64] = if full { &[3, 5, 7, 11, 13] } else { &[3, 5, 7] };
    let mut v = vec![Check::Kernel {
        m_max: if full { 100 } else { 30 },
    }];
    v.extend(
        small_primes
            .iter()
            .map(|&p| Check::Splitting { p, q_max: 100 }),
    );
    v.extend(class_primes.iter().map(|&p| Check::Classgroup {
        p,
        factor_base: None,
    }));
    v.extend(class_primes.iter().map(|&p| Check::Stickelberger {
        p,
        factor_base: None,
    }));
    let pairs: &[(u64, u64)] = if full {
        &[(3, 7), (3, 13), (5, 11), (7, 29)]
    } else {
        &[(3, 7)]
    };
    v.extend(pairs.iter().map(|&(p, q)| Check::GaussSum { p, q }));
    v.extend([3, 5, 7].map(|p| Check::PropExp { p }));
    v.push(Check::PropPex2 { bound: 10_000 });
    v.extend([2, 3].map(|p| Check::LemmaLc {
        p,
        amax: 3,
        bmax: 3,
    }));
    let cp: &[(u64, u32)] = if full {
        &[(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]
    } else {
        &[(2, 1), (3, 1), (5, 1), (7, 1)]
    };
    v.extend(cp.iter().map(|&(p, m)| Check::PropCp { p, m }));
    v.push(Check::Subfield {
        n: 9,
        subgroup: vec![1, 8],
    });
    v.push(Check::Subfield {
        n: 8,
        subgroup: vec![1, 7],
    });
    v.push(Check::Subfield {
        n: 5,
        subgroup: vec![1, 4],
    });
    let kummer: &[(u64, u64)] = if full {
        &[(3, 100), (5, 100), (7, 20)]
    } else {
        &[(3, 20), (5, 20)]
    };
    v.extend(kummer.iter().map(|&(p, samples)| Check::Kummer {
        p,
        samples,
        seed: 0,
    }));
    let reduction: &[(u64, u64)] = if full {
        &[(5, 17), (7, 17), (11, 16)]
    } else {
        &[(5, 5), (7, 5)]
    };
    v.extend(
        reduction
            .iter()
            .enumerate()
            .map(|(i, &(p, instances))| Check::Reduction {
                p,
                instances,
                seed: 1000 * i as u64,
            }),
    );
    v
}

/// A finished check; `internal` carries the diagnostic for a bug.
pub struct Outcome {
    pub report: VerificationReport,
    pub internal: Option<String>,
}

pub fn execute(check: &Check, config: &Config) -> Outcome {
    let (name, params) = check.describe();
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| check.run()));
    let timing_ms = config.timing.then(|| start.elapsed().as_millis() as u64);
    let (status, witness, internal) = match result {
        Ok(Ok((true, w))) => (Status::Pass, w, None),
        Ok(Ok((false, w))) => (Status::Undecided, w, None),
        Ok(Err(e)) => match classify(&e) {
            Some(s) => (s, json!({ "error": e.to_string() }), None),
            None => (
                Status::Fail,
                json!({ "error": e.to_string() }),
                Some(e.to_string()),
            ),
        },
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (Status::Fail, json!({ "error": msg }), Some(msg))
        }
    };
    let report = VerificationReport {
        schema: SCHEMA_VERSION,
        check: name,
        params,
        status,
        witness,
        timing_ms,
        version: VERSION,
        config: config.clone(),
    };
    Outcome { report, internal }
}

/// Runs checks on a pool of `config.threads` workers, returning outcomes in
/// input order.
pub fn execute_all(checks: &[Check], config: &Config) -> Vec<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .expect("thread pool");
    pool.install(|| checks.par_iter().map(|c| execute(c, config)).collect())
}

/// Parses `args` (program name first), runs the checks and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    let std::result::Result::Ok(code) = emit(&cli, out, err) else {
        return EXIT_INTERNAL;
    };
    code
}

fn emit(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let config = Config {
        threads: cli.threads,
        timing: cli.timing,
    };
    let checks = cli.command.checks();
    let outcomes = execute_all(&checks, &config);
    let mut counts = [0usize; 4];
    let mut internal = false;
    for o in &outcomes {
        let line = serde_json::to_string(&o.report).expect("reports serialize");
        writeln!(out, "{line}")?;
        counts[o.report.status as usize] += 1;
        writeln!(
            err,
            "{:<12} {} {}",
            status_word(o.report.status),
            o.report.check,
            o.report.params
        )?;
        if let Some(msg) = &o.internal {
            internal = true;
            writeln!(err, "internal error in {}: {msg}", o.report.check)?;
        }
    }
    writeln!(
        err,
        "{} checks: {} pass, {} fail, {} inapplicable, {} undecided",
        outcomes.len(),
        counts[0],
        counts[1],
        counts[2],
        counts[3]
    )?;
    out.flush()?;
    Ok(if internal {
        EXIT_INTERNAL
    } else if counts[0] == outcomes.len() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Inapplicable => "inapplicable",
        Status::Undecided => "undecided",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn describe_splits_name_and_params() {
        let (name, params) = Check::LemmaLc {
            p: 3,
            amax: 2,
            bmax: 1,
        }
        .describe();
        assert_eq!(name, "lemma-lc");
        assert_eq!(params, json!({ "p": 3, "amax": 2, "bmax": 1 }));
        let (name, params) = Check::Classgroup {
            p: 5,
            factor_base: None,
        }
        .describe();
        assert_eq!(name, "classgroup");
        assert_eq!(params["factor_base"], serde_json::Value::Null);
    }

    #[test]
    fn statuses_follow_error_kinds() {
        let config = Config {
            threads: 1,
            timing: false,
        };
        assert_eq!(
            execute(&Check::PropExp { p: 3 }, &config).report.status,
            Status::Pass
        );
        let o = execute(&Check::PropExp { p: 9 }, &config);
        assert_eq!(o.report.status, Status::Inapplicable);
        assert!(o.internal.is_none());
        assert_eq!(
            execute(&Check::GaussSum { p: 3, q: 11 }, &config)
                .report
                .status,
            Status::Inapplicable
        );
    }

    #[test]
    fn suites_are_ordered_and_nested() {
        let quick = suite(Profile::Quick);
        let full = suite(Profile::Full);
        assert!(quick.len() < full.len());
        assert_eq!(
            full.iter()
                .filter(|c| matches!(c, Check::GaussSum { .. }))
                .count(),
            4
        );
        assert!(full.contains(&Check::Stickelberger {
            p: 23,
            factor_base: None
        }));
        assert!(quick.iter().all(|c| match c {
            Check::Classgroup { p, .. } | Check::Stickelberger { p, .. } | Check::PropExp { p } =>
                *p <= 7,
            _ => true,
        }));
    }

    #[test]
    fn run_in_process() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            ["kwverify", "verify", "prop-cp", "--p", "3", "--m", "1"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_PASS);
        let line: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(
            line["witness"]["k_prime_polynomial"]["coefficients"],
            json!([1, -3, 0, 1])
        );
        let code = run(["kwverify", "verify"], &mut Vec::new(), &mut Vec::new());
        assert_eq!(code, EXIT_USAGE);
    }
}
