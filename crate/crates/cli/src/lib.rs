//! The `covers` command line: read a system in the `a mod n` format, run one
//! analysis or check and report it.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails on inputs that
//! satisfy its hypotheses, 2 for usage and precondition errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use covers::gensearch::{erdos_example, find_covers, random_refinement, random_system, SearchSpec, SplitMix64};
use covers::identities::{
    average_equality_check, default_samples, lemma1_check, lemma2_constancy_check, lemma3_check,
    product_identity_check, SparsePolynomial, DEFAULT_TOLERANCE,
};
use covers::localglobal::{check_local_global_cover, check_local_global_exact};
use covers::unitfrac::{corollary1_check, exact_cover_bound_check, subset_sum_set, theorem1_check, SubsetSumProfile};
use covers::{parse_system, write_system, CoverError, CoverSystem, Limits};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "covers", version, about = "Analyze finite systems of residue classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// System file, one "a mod n" per line; "-" reads stdin.
    #[arg(value_name = "FILE", required_unless_present = "inline", conflicts_with = "inline")]
    file: Option<String>,
    /// System given on the command line, classes separated by ';' (e.g. "0 mod 2; 1 mod 2").
    #[arg(long)]
    inline: Option<String>,
    /// Largest period N_A that will be tabulated.
    #[arg(long, default_value_t = Limits::default().table)]
    cap: u64,
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Period, covering table, multiplicity, minimal period and irredundant classes.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Multiplicity used for irredundancy [default: m(A)].
        #[arg(long)]
        m: Option<u32>,
    },
    /// Subset sums of 1/n_s, or their profile modulo 1/n_t with --class.
    Sums {
        #[command(flatten)]
        input: Input,
        /// Leave out class t and group the sums by fractional part r/n_t.
        #[arg(long = "class")]
        class: Option<usize>,
    },
    /// Distinct integer parts per fractional class r/n_t versus m.
    Theorem1 {
        #[command(flatten)]
        input: Input,
        /// Index t (1-based) of an irredundant class whose modulus is a period.
        #[arg(long = "class")]
        class: usize,
        /// Multiplicity [default: m(A)].
        #[arg(long)]
        m: Option<u32>,
    },
    /// Subset-count bound binom(m-1, floor(a/n_t)) for an exact m-cover.
    Exactbound {
        #[command(flatten)]
        input: Input,
        /// Class index t [default: last class].
        #[arg(long = "class")]
        class: Option<usize>,
        /// Multiplicity [default: m(A)].
        #[arg(long)]
        m: Option<u32>,
    },
    /// Every r/n_0 is attained with integer part outside D.
    Corollary1 {
        #[command(flatten)]
        input: Input,
        /// Excluded integer parts D, comma separated, |D| = m(A).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d: Vec<i64>,
        /// Period n_0 [default: minimal period].
        #[arg(long)]
        period: Option<u64>,
    },
    /// Root-of-unity identities for class t, one PASS/FAIL line each.
    Identities {
        #[command(flatten)]
        input: Input,
        /// Class index t.
        #[arg(long = "class")]
        class: usize,
        /// Multiplicity [default: m(A)].
        #[arg(long)]
        m: Option<u32>,
        /// Point z for the product over non-covering classes [default: a_t].
        #[arg(long, allow_hyphen_values = true)]
        z: Option<i64>,
        /// Relative residual tolerance.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Finite-window certificates for m-covers and exact m-covers.
    Localglobal {
        #[command(flatten)]
        input: Input,
        /// Multiplicity to certify [default: max(m(A), 1)].
        #[arg(long)]
        m: Option<u32>,
        /// Start of the window.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        x0: i64,
    },
    /// Print a system: the classical cover, a random system or a refinement.
    Generate {
        #[arg(long, value_enum, default_value_t = Kind::Erdos)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of classes (random).
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Largest modulus (random).
        #[arg(long, default_value_t = 12)]
        max_modulus: u64,
        /// Number of random splits (refine).
        #[arg(long, default_value_t = 3)]
        steps: usize,
        /// Largest system the refinement may grow to.
        #[arg(long, default_value_t = 20)]
        max_len: usize,
    },
    /// Search residues making the given moduli an m-cover.
    Search {
        /// Moduli, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
        /// Target multiplicity.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Require an exact m-cover.
        #[arg(long)]
        exact: bool,
        /// Print every solution, separated by blank lines.
        #[arg(long)]
        all: bool,
        /// Largest number of residue assignments scanned.
        #[arg(long, default_value_t = Limits::default().search)]
        cap: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// {0(2), 0(3), 1(4), 5(6), 7(12)}
    Erdos,
    Random,
    /// Random splits of the classical cover.
    Refine,
}

/// Exit code and text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(pass: bool, stdout: String) -> Self {
        Outcome {
            code: if pass { EXIT_PASS } else { EXIT_FAIL },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

enum Failure {
    Usage(String),
    Cover(CoverError),
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        Failure::Cover(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::report(true, text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(Failure::Usage(msg)) => Outcome::usage(format!("error: {msg}\n")),
        Err(Failure::Cover(e)) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn read_input(input: &Input) -> Res<(CoverSystem, Limits)> {
    let text = match (&input.file, &input.inline) {
        (_, Some(inline)) => inline.replace(';', "\n"),
        (Some(path), None) if path == "-" => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            buf
        }
        (Some(path), None) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
        (None, None) => return Err(Failure::Usage("no input system".into())),
    };
    let limits = Limits {
        table: input.cap,
        ..Limits::default()
    };
    Ok((parse_system(&text)?, limits))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

/// `1..5` style runs.
fn ranges(indices: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < indices.len() {
        let mut j = i;
        while j + 1 < indices.len() && indices[j + 1] == indices[j] + 1 {
            j += 1;
        }
        parts.push(match j - i {
            0 => indices[i].to_string(),
            1 => format!("{},{}", indices[i], indices[j]),
            _ => format!("{}..{}", indices[i], indices[j]),
        });
        i = j + 1;
    }
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(",")
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn multiplicity_or(m: Option<u32>, system: &CoverSystem, limits: &Limits) -> Res<u32> {
    match m {
        Some(m) => Ok(m),
        None => Ok(system.tabulate(limits)?.multiplicity()),
    }
}

fn dispatch(command: Command) -> Res<Outcome> {
    match command {
        Command::Analyze { input, m } => analyze(&input, m),
        Command::Sums { input, class } => sums(&input, class),
        Command::Theorem1 { input, class, m } => {
            let (system, limits) = read_input(&input)?;
            let m = multiplicity_or(m, &system, &limits)?;
            let report = theorem1_check(&system, m, class, &limits)?;
            let text = if input.json { json(&report) } else { report.to_string() };
            Ok(Outcome::report(report.all_pass(), text))
        }
        Command::Exactbound { input, class, m } => {
            let (system, limits) = read_input(&input)?;
            let m = multiplicity_or(m, &system, &limits)?;
            let report = exact_cover_bound_check(&system, m, class, &limits)?;
            let text = if input.json { json(&report) } else { report.to_string() };
            Ok(Outcome::report(report.all_pass(), text))
        }
        Command::Corollary1 { input, d, period } => {
            let (system, limits) = read_input(&input)?;
            let excluded: BTreeSet<i64> = d.into_iter().collect();
            let report = corollary1_check(&system, &excluded, period, &limits)?;
            let text = if input.json {
                json(&report)
            } else {
                format!(
                    "period={} minimum_at={} m={} missing=[{}] {}\n",
                    report.period,
                    report.minimum_at,
                    report.multiplicity,
                    join(&report.missing),
                    verdict(report.holds)
                )
            };
            Ok(Outcome::report(report.holds, text))
        }
        Command::Identities {
            input,
            class,
            m,
            z,
            tol,
        } => identities(&input, class, m, z, tol),
        Command::Localglobal { input, m, x0 } => localglobal(&input, m, x0),
        Command::Generate {
            kind,
            seed,
            k,
            max_modulus,
            steps,
            max_len,
        } => {
            let system = match kind {
                Kind::Erdos => erdos_example(),
                Kind::Random => random_system(k, max_modulus, seed, &Limits::default())?,
                Kind::Refine => random_refinement(&erdos_example(), steps, max_len, &mut SplitMix64::new(seed)),
            };
            Ok(Outcome::report(true, write_system(&system)))
        }
        Command::Search {
            moduli,
            m,
            exact,
            all,
            cap,
        } => {
            let spec = SearchSpec {
                moduli,
                target_multiplicity: m,
                exact,
            };
            let limits = Limits {
                search: cap,
                ..Limits::default()
            };
            let found = find_covers(&spec, &limits)?;
            let shown = if all { &found[..] } else { &found[..found.len().min(1)] };
            let text = if shown.is_empty() {
                "# no solution\n".to_string()
            } else {
                shown
                    .iter()
                    .map(|r| write_system(&spec.system(r)))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Outcome::report(true, text))
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn analyze(input: &Input, m: Option<u32>) -> Res<Outcome> {
    let (system, limits) = read_input(input)?;
    let report = system.report(m, &limits)?;
    if input.json {
        return Ok(Outcome::report(true, json(&report)));
    }
    let mut out = String::new();
    writeln!(out, "N={}", report.lcm).unwrap();
    writeln!(out, "table={}", join(&report.table)).unwrap();
    writeln!(out, "m={}", report.multiplicity).unwrap();
    writeln!(out, "period={}", report.minimal_period).unwrap();
    if let (Some(m), Some(irr)) = (report.m, &report.irredundant) {
        if Some(m) != Some(report.multiplicity) {
            writeln!(out, "irredundant(m={m})={}", ranges(irr)).unwrap();
        } else {
            writeln!(out, "irredundant={}", ranges(irr)).unwrap();
        }
    }
    Ok(Outcome::report(true, out))
}

fn sums(input: &Input, class: Option<usize>) -> Res<Outcome> {
    let (system, limits) = read_input(input)?;
    match class {
        Some(t) => {
            let profile = SubsetSumProfile::build(&system, t, &limits)?;
            let text = if input.json {
                json(&profile)
            } else {
                let mut text = profile.to_string();
                if profile.unmatched > 0 {
                    writeln!(text, "unmatched={}", profile.unmatched).unwrap();
                }
                text
            };
            Ok(Outcome::report(true, text))
        }
        None => {
            let values = subset_sum_set(&system.moduli(), &limits)?;
            let text = if input.json {
                json(&values)
            } else {
                format!("count={}\nsums={}\n", values.len(), join(&values))
            };
            Ok(Outcome::report(true, text))
        }
    }
}

#[derive(Debug, Serialize)]
struct IdentityLine {
    name: &'static str,
    residual: Option<f64>,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

impl IdentityLine {
    fn from_result(name: &'static str, result: covers::Result<(f64, bool)>) -> Self {
        match result {
            Ok((residual, pass)) => IdentityLine {
                name,
                residual: Some(residual),
                verdict: verdict(pass),
                reason: None,
            },
            Err(e) => IdentityLine {
                name,
                residual: None,
                verdict: "SKIP",
                reason: Some(e.to_string()),
            },
        }
    }
}

/// Runs every identity that applies to class `t`; identities whose
/// hypotheses fail are reported as SKIP and do not affect the exit code.
fn identities(input: &Input, t: usize, m: Option<u32>, z: Option<i64>, tol: f64) -> Res<Outcome> {
    let (system, limits) = read_input(input)?;
    let target = *system.class(t)?;
    let table = system.tabulate(&limits)?;
    let m = m.unwrap_or(table.multiplicity());
    let k = system.len();
    let z = z.unwrap_or(target.residue() as i64);

    // f is the monomial over the classes through a point of minimal coverage,
    // so that the right-hand side is not trivially zero.
    let lemma1 = (|| {
        let x = (0..table.lcm() as i64)
            .find(|&x| table.get(x) == table.multiplicity())
            .expect("table is non-empty");
        let members: Vec<usize> = (1..=k).filter(|&s| system.classes()[s - 1].contains(x)).collect();
        let f = SparsePolynomial::squarefree_monomial(k, &members, Complex64::new(1.0, 0.0))?;
        lemma1_check(&system, &vec![1; k], &f, x, tol, &limits).map(|c| (c.residual, c.pass))
    })();
    let lemma2 = lemma2_constancy_check(&system, m, t, &vec![1; k.saturating_sub(1)], tol, &limits)
        .map(|r| (r.max_deviation, r.pass));
    let lemma3 = lemma3_check(&system, m, t, z, tol, &limits).map(|c| (c.residual, c.pass));
    let product =
        product_identity_check(&system, t, &default_samples(), tol, true, &limits).map(|r| (r.max_residual, r.pass));
    let average = average_equality_check(&system, &limits).map(|a| (if a.holds { 0.0 } else { 1.0 }, a.holds));

    let lines = vec![
        IdentityLine::from_result("alternating_sum", lemma1),
        IdentityLine::from_result("constancy", lemma2),
        IdentityLine::from_result("noncovering_product", lemma3),
        IdentityLine::from_result("product_identity", product),
        IdentityLine::from_result("average_equality", average),
    ];
    let pass = lines.iter().all(|l| l.verdict != "FAIL");
    let text = if input.json {
        json(&lines)
    } else {
        let mut out = String::new();
        for l in &lines {
            match (&l.residual, &l.reason) {
                (Some(r), _) => writeln!(out, "{} {} max_residual={r:.2e}", l.verdict, l.name).unwrap(),
                (None, Some(reason)) => writeln!(out, "{} {} ({reason})", l.verdict, l.name).unwrap(),
                (None, None) => unreachable!(),
            }
        }
        out
    };
    Ok(Outcome::report(pass, text))
}

fn localglobal(input: &Input, m: Option<u32>, x0: i64) -> Res<Outcome> {
    let (system, limits) = read_input(input)?;
    let m = match m {
        Some(m) => m,
        None => system.tabulate(&limits)?.multiplicity().max(1),
    };
    let cover = check_local_global_cover(&system, m, x0, &limits)?;
    let exact = check_local_global_exact(&system, m, x0, &limits)?;
    let pass = cover.consistent() && exact.consistent();
    let text = if input.json {
        json(&[("cover", cover), ("exact", exact)])
    } else {
        let mut out = String::new();
        for (name, v) in [("cover", cover), ("exact", exact)] {
            writeln!(
                out,
                "{name}: bound={} window=[{},{}) local={} global={} {}",
                v.window_length,
                v.window_start,
                v.window_start + v.window_length as i64,
                v.local_holds,
                v.global_holds,
                verdict(v.consistent())
            )
            .unwrap();
        }
        out
    };
    Ok(Outcome::report(pass, text))
}
