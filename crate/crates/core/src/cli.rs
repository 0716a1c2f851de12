//! Command dispatch for the `soberlab` binary.

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::census::{run_census_suite, CensusConfig};
use crate::rclass::{hofmann_mislove_check, rclass_analyze_with};
use crate::report::{
    digest_bytes, render_text, CounterexampleSection, MembershipSection, PropertiesSection, QuerySection,
    RClassSection, Report, SobrificationSection, SpaceSection, Status, SymbolicSection,
};
use crate::sobrification::{sobrify, verify_sobrification};
use crate::space::{validate_space, Space, SpaceFile};
use crate::symbolic::{
    counterexample_family, make_symbolic_space, symbolic_query, symbolic_rclass_membership, symbolic_rclass_summary,
    Predicate, SymbolicSubset,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "soberlab",
    version,
    about = "Sobrification, compact saturated sets and R(X) on finite and symbolic spaces"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a space file and print its canonical form.
    Validate { file: PathBuf },
    /// T0 / quasisober / sober, irreducible closed sets, T0 classes.
    Info { file: PathBuf },
    /// Build the sobrification; `--verify` checks all of its properties.
    Sobrify {
        file: PathBuf,
        #[arg(long)]
        verify: bool,
    },
    /// Compute Q(X) and R(X).
    Rclass { file: PathBuf },
    /// Filters of O(X) against compact saturated sets.
    Hm { file: PathBuf },
    /// Run every property suite over all topologies on up to N points.
    Census {
        #[arg(long = "max-points")]
        max_points: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = CensusConfig::default().seed)]
        seed: u64,
    },
    /// Queries on the symbolic spaces `cofinite` and `upper`.
    #[command(group(ArgGroup::new("mode").required(true).args(["query", "rclass", "counterexample"])))]
    Symbolic {
        family: String,
        #[arg(long, num_args = 2, value_names = ["PREDICATE", "SET"])]
        query: Option<Vec<String>>,
        #[arg(long, value_name = "SET")]
        rclass: Option<String>,
        #[arg(long)]
        counterexample: bool,
        /// Last chain index checked by `--counterexample`.
        #[arg(long, default_value_t = 1000)]
        j_max: u64,
    },
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code with the text for standard output and standard error.
pub fn run_command<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return (code, String::new(), e.render().to_string());
        }
    };
    let report = execute(&cli.command);
    let code = report.status.exit_code();
    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => render_text(&report),
    };
    (code, out, String::new())
}

fn load(path: &Path, command: &str) -> Result<Space, Box<Report>> {
    let fail = |digest: &str, msg: String| Box::new(Report::new(command, digest).fail(Status::Error, msg));
    let bytes = std::fs::read(path).map_err(|e| fail("", format!("cannot read {}: {e}", path.display())))?;
    let digest = digest_bytes(&bytes);
    let file: SpaceFile =
        serde_json::from_slice(&bytes).map_err(|e| fail(&digest, format!("invalid space file: {e}")))?;
    validate_space(&file).map_err(|e| fail(&digest, e.to_string()))
}

pub fn execute(command: &Command) -> Report {
    match command {
        Command::Validate { file } => with_space(file, "validate", |space, r| {
            r.sections.space = Some(SpaceSection::of(space));
        }),
        Command::Info { file } => with_space(file, "info", |space, r| {
            r.sections.space = Some(SpaceSection::of(space));
            r.sections.properties = Some(PropertiesSection::of(space));
        }),
        Command::Sobrify { file, verify } => with_space(file, "sobrify", |space, r| {
            let sob = sobrify(space);
            let verification = if *verify {
                match verify_sobrification(space, &sob) {
                    Ok(v) => Some(v),
                    Err(e) => {
                        r.status = Status::Error;
                        r.error = Some(e.to_string());
                        None
                    }
                }
            } else {
                None
            };
            if verification.as_ref().is_some_and(|v| !v.pass) {
                r.status = Status::Violation;
            }
            r.sections.sobrification = Some(SobrificationSection::of(space, &sob, verification));
        }),
        Command::Rclass { file } => with_space(file, "rclass", |space, r| {
            let sob = sobrify(space);
            let sec = RClassSection::of(space, &rclass_analyze_with(space, &sob));
            if !sec.consistent() {
                r.status = Status::Violation;
            }
            r.sections.rclass = Some(sec);
        }),
        Command::Hm { file } => with_space(file, "hm", |space, r| {
            let hm = hofmann_mislove_check(space);
            if !hm.pass {
                r.status = Status::Violation;
            }
            r.sections.hm = Some(hm);
        }),
        Command::Census { max_points, jobs, seed } => {
            let mut r =
                Report::new("census", digest_bytes(format!("census max_points={max_points} seed={seed}").as_bytes()));
            let config = CensusConfig { seed: *seed, jobs: *jobs, ..CensusConfig::default() };
            if *max_points > config.ceiling {
                let e = crate::census::CensusError::CeilingExceeded { n: *max_points, ceiling: config.ceiling };
                return r.fail(Status::Error, e.to_string());
            }
            let mut reports = Vec::new();
            for n in 0..=*max_points {
                match run_census_suite(n, &config) {
                    Ok(rep) => reports.push(rep),
                    Err(e) => return r.fail(Status::Error, e.to_string()),
                }
            }
            if reports.iter().any(|c| !c.passed()) {
                r.status = Status::Violation;
            }
            r.sections.census = Some(reports);
            r
        }
        Command::Symbolic { family, query, rclass, counterexample, j_max } => {
            symbolic(family, query.as_deref(), rclass.as_deref(), *counterexample, *j_max)
        }
    }
}

fn with_space(path: &Path, command: &str, body: impl FnOnce(&Space, &mut Report)) -> Report {
    match load(path, command) {
        Ok(space) => {
            let mut r = Report::new(command, space.digest());
            body(&space, &mut r);
            r
        }
        Err(r) => *r,
    }
}

fn symbolic(family: &str, query: Option<&[String]>, rclass: Option<&str>, counterexample: bool, j_max: u64) -> Report {
    let args = format!("symbolic {family} {query:?} {rclass:?} {counterexample} {j_max}");
    let r = Report::new("symbolic", digest_bytes(args.as_bytes()));
    let space = match make_symbolic_space(family) {
        Ok(s) => s,
        Err(e) => return r.fail(Status::Error, e.to_string()),
    };
    let mut section = SymbolicSection { family: space.family(), query: None, rclass: None, counterexample: None };
    let mut status = Status::Ok;
    let parse_set = |t: &str| t.parse::<SymbolicSubset>();

    if let Some([pred, set]) = query {
        let predicate: Predicate = match pred.parse() {
            Ok(p) => p,
            Err(e) => return r.fail(Status::Error, format!("{e}")),
        };
        let input = match parse_set(set) {
            Ok(s) => s,
            Err(e) => return r.fail(Status::Error, e.to_string()),
        };
        let verdict = symbolic_query(&space, predicate, &input);
        section.query = Some(QuerySection { predicate, input, verdict });
    }
    if let Some(set) = rclass {
        let input = match parse_set(set) {
            Ok(s) => s,
            Err(e) => return r.fail(Status::Error, e.to_string()),
        };
        let membership = symbolic_rclass_membership(&space, &input);
        section.rclass = Some(MembershipSection { input, membership, summary: symbolic_rclass_summary(&space) });
    }
    if counterexample {
        let (chain, record) = counterexample_family(&space, j_max);
        if !record.verified {
            status = Status::Violation;
        }
        let sample = (0..4).map(|j| chain.member(j)).collect();
        section.counterexample = Some(CounterexampleSection { chain, sample, record });
    }
    let mut r = r;
    r.status = status;
    r.sections.symbolic = Some(section);
    r
}
