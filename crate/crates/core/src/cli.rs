//! Command-line front end.
//!
//! Exit status: 0 success, 1 verification failure (a witness or
//! counterexample was printed), 2 usage or input error, 3 resource guard.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::isomorphism::{find_noniso_witness_traced, recognize_hypercube, remove_matching, IsoResult};
use crate::limits::Limits;
use crate::matching::{
    classify_matching, count_perfect_matchings_with, enumerate_perfect_matchings_with, parse_matching,
    MatchingClass, PerfectMatchingSampler,
};
use crate::topology::{build_folded_hypercube_with, build_hypercube_with, write_edge_list, Graph};
use crate::verify::{
    verify_lemma_common_neighbors, verify_theorem1_with, verify_theorem2_with, verify_two_copies_with, Mode,
    VerifyOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "foldcube", version, about = "Perfect matchings of folded hypercubes and Q_n recognition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Hypercube,
    Folded,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the edge list of Q_n or FQ_n.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "folded")]
        kind: Kind,
        /// Write the edge list here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate, count or sample perfect matchings.
    Matchings {
        #[arg(value_enum)]
        action: MatchingAction,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "folded")]
        kind: Kind,
        /// Number of samples (sample only).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Classify a perfect matching of FQ_n.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long = "matching")]
        matching_path: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Remove a matching from FQ_n; optionally decide isomorphism to Q_n.
    Remove {
        #[arg(long)]
        n: usize,
        #[arg(long = "matching")]
        matching_path: PathBuf,
        #[arg(long)]
        check_iso: bool,
        /// Certificate sink for --check-iso.
        #[arg(long, requires = "check_iso")]
        certificate: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run one of the verification drivers.
    Verify(VerifyArgs),
    /// Produce a non-isomorphism witness for FQ_n minus a mixed matching.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long = "matching")]
        matching_path: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MatchingAction {
    Enumerate,
    Count,
    Sample,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Theorem1,
    Theorem2,
    Lemma,
    TwoCopies,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Position for two-copies.
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let limits = Limits::from_env();
    match dispatch(cli.command, &limits, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::VerificationFailed { .. } => EXIT_VERIFICATION_FAILED,
            e if e.is_resource_guard() => EXIT_RESOURCE_GUARD,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("json value serializes");
    text.push('\n');
    write_file(path, &text)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| usage(format!("standard output: {e}")))
}

fn read_matching(path: &Path, n: usize) -> Result<crate::matching::Matching, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let m = parse_matching(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if m.dimension() != n {
        return Err(usage(format!("{}: labels have {} bits, --n is {n}", path.display(), m.dimension())));
    }
    Ok(m)
}

fn build(n: usize, kind: Kind, limits: &Limits) -> Result<Graph, Failure> {
    Ok(match kind {
        Kind::Hypercube => build_hypercube_with(n, limits)?,
        Kind::Folded => build_folded_hypercube_with(n, limits)?,
    })
}

fn dispatch(command: Command, limits: &Limits, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Gen { n, kind, out: path } => {
            let text = write_edge_list(&build(n, kind, limits)?);
            match path {
                Some(path) => write_file(&path, &text)?,
                None => emit(out, &text)?,
            }
            Ok(EXIT_OK)
        }
        Command::Matchings { action, n, kind, k, seed, json } => {
            if !matches!(action, MatchingAction::Sample) && (k.is_some() || seed.is_some()) {
                return Err(usage("--k and --seed apply to `matchings sample` only"));
            }
            let g = build(n, kind, limits)?;
            let summary = match action {
                MatchingAction::Enumerate => {
                    let mut count = 0u64;
                    for m in enumerate_perfect_matchings_with(&g, limits)? {
                        if count > 0 {
                            emit(out, "\n")?;
                        }
                        emit(out, &m.to_file_string())?;
                        count += 1;
                    }
                    serde_json::json!({ "n": n, "action": "enumerate", "count": count })
                }
                MatchingAction::Count => {
                    let count = count_perfect_matchings_with(&g, limits)?;
                    emit(out, &format!("{count}\n"))?;
                    serde_json::json!({ "n": n, "action": "count", "count": count.to_string() })
                }
                MatchingAction::Sample => {
                    let seed = seed.ok_or_else(|| usage("`matchings sample` requires --seed"))?;
                    let k = k.ok_or_else(|| usage("`matchings sample` requires --k"))?;
                    let mut sampler = PerfectMatchingSampler::with_limits(&g, limits)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    for j in 0..k {
                        if j > 0 {
                            emit(out, "\n")?;
                        }
                        emit(out, &sampler.sample(&mut rng).to_file_string())?;
                    }
                    serde_json::json!({ "n": n, "action": "sample", "count": k, "seed": seed })
                }
            };
            if let Some(path) = json {
                write_json(&path, &summary)?;
            }
            Ok(EXIT_OK)
        }
        Command::Classify { n, matching_path, json } => {
            let m = read_matching(&matching_path, n)?;
            let class = classify_matching(n, &m)?;
            emit(out, &format!("{class}\n"))?;
            if let Some(path) = json {
                write_json(&path, &class_json(&class))?;
            }
            Ok(EXIT_OK)
        }
        Command::Remove { n, matching_path, check_iso, certificate, json } => {
            let m = read_matching(&matching_path, n)?;
            let fq = build_folded_hypercube_with(n, limits)?;
            let reduced = remove_matching(&fq, &m)?;
            if !check_iso {
                emit(out, &write_edge_list(&reduced))?;
                return Ok(EXIT_OK);
            }
            let result = recognize_hypercube(&reduced, n)?;
            let (code, value) = match &result {
                IsoResult::Isomorphic(lab) => {
                    emit(out, &format!("FQ_{n} - M is isomorphic to Q_{n} (certificate {})\n", lab.digest()))?;
                    if let Some(path) = &certificate {
                        write_file(path, &lab.to_certificate_string())?;
                    }
                    (EXIT_OK, serde_json::json!({ "isomorphic": true, "certificate_digest": lab.digest() }))
                }
                IsoResult::NotIsomorphic(w) => {
                    emit(out, &format!("FQ_{n} - M is not isomorphic to Q_{n}: {w}\n"))?;
                    (EXIT_VERIFICATION_FAILED, serde_json::json!({ "isomorphic": false, "witness": w.to_json() }))
                }
            };
            if let Some(path) = json {
                write_json(&path, &value)?;
            }
            Ok(code)
        }
        Command::Witness { n, matching_path, json } => {
            let m = read_matching(&matching_path, n)?;
            let (witness, _) = find_noniso_witness_traced(n, &m, limits)?;
            let value = witness.to_json();
            emit(out, &format!("{}\n", serde_json::to_string(&value).expect("json")))?;
            if let Some(path) = json {
                write_json(&path, &value)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => verify(args, limits, out),
    }
}

fn class_json(class: &MatchingClass) -> serde_json::Value {
    match class {
        MatchingClass::AllComplementary => serde_json::json!({ "class": "all_complementary" }),
        MatchingClass::SingleDimension(i) => serde_json::json!({ "class": "single_dimension", "position": i }),
        MatchingClass::Mixed { complementary_count, dimension_histogram } => serde_json::json!({
            "class": "mixed",
            "complementary_count": complementary_count,
            "dimension_histogram": dimension_histogram,
        }),
    }
}

fn verify(args: VerifyArgs, limits: &Limits, out: &mut dyn Write) -> Result<i32, Failure> {
    let VerifyArgs { target, n, mode, samples, seed, i, threads, json } = args;
    let opts = VerifyOptions { limits: *limits, threads };
    let only_theorem2 = |flag: &str, set: bool| {
        if set && !matches!(target, Target::Theorem2) {
            Err(usage(format!("{flag} applies to `verify theorem2` only")))
        } else {
            Ok(())
        }
    };
    only_theorem2("--mode", mode.is_some())?;
    only_theorem2("--samples", samples.is_some())?;
    only_theorem2("--seed", seed.is_some())?;
    if i.is_some() && !matches!(target, Target::TwoCopies) {
        return Err(usage("--i applies to `verify two-copies` only"));
    }
    if threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }

    let (value, summary) = match target {
        Target::Theorem1 => {
            let report = verify_theorem1_with(n, &opts)?;
            let summary = format!(
                "theorem1 n={n}: {} perfect matchings, {} isomorphic to Q_{n}; census {:?}\n",
                report.examined,
                report.passes.len(),
                report.census
            );
            (report.to_json(), summary)
        }
        Target::Theorem2 => {
            let mode = match mode.ok_or_else(|| usage("`verify theorem2` requires --mode"))? {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Sampled => Mode::Sampled,
            };
            let (samples, seed) = match mode {
                Mode::Exhaustive => {
                    if samples.is_some() || seed.is_some() {
                        return Err(usage("--samples and --seed apply to sampled mode only"));
                    }
                    (0, 0)
                }
                Mode::Sampled => (
                    samples.ok_or_else(|| usage("sampled mode requires --samples"))?,
                    seed.ok_or_else(|| usage("sampled mode requires --seed"))?,
                ),
            };
            let report = verify_theorem2_with(n, mode, samples, seed, &opts)?;
            let classes: Vec<&str> = report.passes.iter().map(|p| p.class.as_str()).collect();
            let summary = format!(
                "theorem2 n={n} ({:?}): {} examined, {} pass [{}], {} fail {:?}\n",
                report.mode,
                report.examined,
                report.passes.len(),
                classes.join(", "),
                report.fail_count,
                report.witness_kinds
            );
            (report.to_json(), summary)
        }
        Target::Lemma => {
            let report = verify_lemma_common_neighbors(n)?;
            let summary = format!(
                "lemma n={n}: {} pairs, common-neighbor histogram {:?}, {} violation(s)\n",
                report.pairs,
                report.histogram,
                report.violations.len()
            );
            (serde_json::to_value(&report).expect("json"), summary)
        }
        Target::TwoCopies => {
            let i = i.ok_or_else(|| usage("`verify two-copies` requires --i"))?;
            let report = verify_two_copies_with(n, i, limits)?;
            let summary = format!(
                "two-copies n={n} i={i}: {} components of sizes {:?}, each Q_{}\n",
                report.components,
                report.component_sizes,
                n - 1
            );
            (serde_json::to_value(&report).expect("json"), summary)
        }
    };
    emit(out, &summary)?;
    if let Some(path) = json {
        write_json(&path, &value)?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("foldcube").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_header() {
        let (code, out, _) = run_capture(&["gen", "--n", "3", "--kind", "folded"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("8 16\n"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["gen"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "theorem2", "--n", "5", "--mode", "sampled", "--samples", "3"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "lemma", "--n", "4", "--seed", "1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["matchings", "sample", "--n", "3", "--k", "2"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["matchings", "count", "--n", "3", "--seed", "2"]).0, EXIT_USAGE);
    }

    #[test]
    fn resource_guards() {
        assert_eq!(run_capture(&["gen", "--n", "25"]).0, EXIT_RESOURCE_GUARD);
        assert_eq!(run_capture(&["matchings", "count", "--n", "6"]).0, EXIT_RESOURCE_GUARD);
        assert_eq!(run_capture(&["verify", "theorem2", "--n", "5", "--mode", "exhaustive"]).0, EXIT_RESOURCE_GUARD);
    }

    #[test]
    fn matchings_actions() {
        let (code, out, _) = run_capture(&["matchings", "count", "--n", "3"]);
        assert_eq!((code, out.as_str()), (0, "24\n"));
        let (_, out, _) = run_capture(&["matchings", "enumerate", "--n", "2"]);
        assert_eq!(out, "00 01\n10 11\n\n00 10\n01 11\n\n00 11\n01 10\n");
        let (code, a, _) = run_capture(&["matchings", "sample", "--n", "4", "--k", "3", "--seed", "5"]);
        let (_, b, _) = run_capture(&["matchings", "sample", "--n", "4", "--k", "3", "--seed", "5"]);
        assert_eq!(code, 0);
        assert_eq!(a, b);
        assert_eq!(a.split("\n\n").count(), 3);
    }
}
