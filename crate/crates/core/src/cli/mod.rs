//! Command-line front end. Exit status 0 on success, 1 when a mathematical
//! check fails, 2 on bad input.

pub mod builtins;
pub mod manifest;
pub mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::cech::{cech_cohomology_ranks, hkr_compare, morita_check, refinement_map, z2_cech};
use crate::complexes::{verify_chain_map, z2_totalize};
use crate::cyclic::{
    hochschild_homology_ranks, hp_bicomplex, hp_ranks, operator_identities, DEFAULT_CEILING,
};
use crate::site::{
    check_pretopology_axioms, check_topology_axioms, generated_topology, open_cover_pretopology,
    AxiomReport, Presheaf,
};

use manifest::{parse_manifest, Manifest};
pub use manifest::{ParseError, Position};
pub use report::{Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "z2cech",
    version,
    about = "Exact Z/2-graded Čech and periodic cyclic ranks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Bicomplex window height.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(3..))]
    cutoff: u64,
    /// Largest admissible level dimension.
    #[arg(long, default_value_t = DEFAULT_CEILING as u64, value_parser = clap::value_parser!(u64).range(1..))]
    ceiling: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Periodic even/odd ranks of an algebra.
    Hp {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        common: Common,
    },
    /// Hochschild homology ranks for k = 0..=cutoff.
    Hh {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        common: Common,
    },
    /// Čech cohomology ranks H^q for q < cutoff.
    Cech {
        #[arg(long)]
        cover: String,
        /// Defaults to the constant rank-one presheaf.
        #[arg(long)]
        presheaf: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Z/2-graded Čech cohomology, periodic and folded.
    Z2cech {
        #[arg(long)]
        cover: String,
        #[arg(long)]
        presheaf: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Cyclic operator identities on levels 0..=cutoff.
    Identities {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        common: Common,
    },
    /// Periodic ranks of A against A ⊗ Mat_n.
    Morita {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Functions on n points against the Čech side of the point cover.
    Hkr {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Pretopology and topology axioms of the open-cover site.
    Axioms {
        /// Defaults to every bundled space with at most four points.
        #[arg(long)]
        space: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Refinement map between two covers.
    Refine {
        #[arg(long)]
        job: String,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Hp { common, .. }
            | Command::Hh { common, .. }
            | Command::Cech { common, .. }
            | Command::Z2cech { common, .. }
            | Command::Identities { common, .. }
            | Command::Morita { common, .. }
            | Command::Hkr { common, .. }
            | Command::Axioms { common, .. }
            | Command::Refine { common, .. } => common,
        }
    }
}

/// What a command printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn input_error(message: impl std::fmt::Display) -> Self {
        CommandOutput {
            status: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Loaded inputs, in the order they were named.
struct Inputs(Vec<(String, String, String)>);

impl Inputs {
    /// `builtin:<name>` or a manifest path, which must have kind `kind`.
    fn load(&mut self, name: &str, kind: &str, source: &str) -> Result<Manifest, String> {
        let m = match source.strip_prefix("builtin:") {
            Some(b) => builtins::manifest(kind, b)
                .ok_or_else(|| format!("no builtin {kind} named `{b}`"))?,
            None => {
                let text = std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?;
                parse_manifest(&text).map_err(|e| format!("{source}: {e}"))?
            }
        };
        if m.kind() != kind {
            return Err(format!(
                "{source}: expected a {kind} manifest, found {}",
                m.kind()
            ));
        }
        self.0
            .push((name.to_string(), source.to_string(), m.render()));
        Ok(m)
    }
}

fn identity_json(report: &AxiomReport) -> Value {
    let map: Map<String, Value> = report
        .outcomes
        .iter()
        .map(|o| {
            (
                o.axiom.to_string(),
                json!({ "holds": o.holds, "witness": o.witness }),
            )
        })
        .collect();
    Value::Object(map)
}

fn ranks_list(m: &BTreeMap<usize, usize>) -> Value {
    json!(m.values().collect::<Vec<_>>())
}

type Outcome = Result<(Value, bool), String>;

fn load_algebra(inputs: &mut Inputs, source: &str) -> Result<crate::algebra::Algebra, String> {
    match inputs.load("algebra", "algebra", source)? {
        Manifest::Algebra(m) => m.to_algebra().map_err(|e| e.to_string()),
        _ => unreachable!("kind checked"),
    }
}

fn load_cover_and_presheaf(
    inputs: &mut Inputs,
    cover: &str,
    presheaf: Option<&str>,
) -> Result<(crate::site::Cover, Presheaf), String> {
    let Manifest::Cover(c) = inputs.load("cover", "cover", cover)? else {
        unreachable!("kind checked")
    };
    let cover = c.to_cover().map_err(|e| e.to_string())?;
    let presheaf = match presheaf {
        None => Presheaf::constant(cover.space().clone(), 1),
        Some(p) => {
            let Manifest::Presheaf(p) = inputs.load("presheaf", "presheaf", p)? else {
                unreachable!("kind checked")
            };
            p.to_presheaf().map_err(|e| e.to_string())?
        }
    };
    Ok((cover, presheaf))
}

fn execute(command: &Command, inputs: &mut Inputs) -> Outcome {
    let common = command.common();
    let cutoff = common.cutoff as usize;
    let ceiling = common.ceiling as usize;
    let fail = |e: &dyn std::fmt::Display| e.to_string();
    match command {
        Command::Hp { algebra, .. } => {
            let a = load_algebra(inputs, algebra)?;
            let p = hp_ranks(&a, cutoff, ceiling).map_err(|e| fail(&e))?;
            Ok((report::periodic_json(&p), true))
        }
        Command::Hh { algebra, .. } => {
            let a = load_algebra(inputs, algebra)?;
            let r = hochschild_homology_ranks(&a, cutoff, ceiling).map_err(|e| fail(&e))?;
            Ok((json!({ "ranks": ranks_list(&r) }), true))
        }
        Command::Cech {
            cover, presheaf, ..
        } => {
            let (c, p) = load_cover_and_presheaf(inputs, cover, presheaf.as_deref())?;
            let r = cech_cohomology_ranks(&c, &p, cutoff).map_err(|e| fail(&e))?;
            Ok((json!({ "ranks": ranks_list(&r) }), true))
        }
        Command::Z2cech {
            cover, presheaf, ..
        } => {
            let (c, p) = load_cover_and_presheaf(inputs, cover, presheaf.as_deref())?;
            let r = z2_cech(&c, &p, cutoff, ceiling).map_err(|e| fail(&e))?;
            Ok((
                json!({
                    "periodic": report::periodic_json(&r.periodic),
                    "folded": report::z2_json(r.folded),
                    "classical": ranks_list(&r.classical),
                }),
                true,
            ))
        }
        Command::Identities { algebra, .. } => {
            let a = load_algebra(inputs, algebra)?;
            let checks = operator_identities(&a, cutoff, ceiling).map_err(|e| fail(&e))?;
            let width = cutoff + cutoff % 2;
            let total =
                z2_totalize(&hp_bicomplex(&a, cutoff, width, ceiling).map_err(|e| fail(&e))?);
            let mut rows: Vec<Value> = checks
                .iter()
                .map(|c| json!({ "identity": c.name, "level": c.level, "holds": c.holds }))
                .collect();
            rows.push(json!({ "identity": "D∘D = 0", "level": cutoff, "holds": total.is_ok() }));
            let all = checks.iter().all(|c| c.holds) && total.is_ok();
            Ok((json!({ "checks": rows, "all_hold": all }), all))
        }
        Command::Morita { algebra, n, .. } => {
            let a = load_algebra(inputs, algebra)?;
            let r = morita_check(&a, *n as usize, cutoff, ceiling).map_err(|e| fail(&e))?;
            Ok((
                json!({
                    "n": n,
                    "ranks_a": report::periodic_json(&r.ranks_a),
                    "ranks_a_mat_n": report::periodic_json(&r.ranks_amn),
                    "equal": r.equal,
                }),
                r.equal,
            ))
        }
        Command::Hkr { n, .. } => {
            let r = hkr_compare(*n as usize, cutoff, ceiling).map_err(|e| fail(&e))?;
            Ok((
                json!({
                    "n": n,
                    "hp": report::periodic_json(&r.hp),
                    "cech": report::periodic_json(&r.cech),
                    "matched": r.matched,
                }),
                r.matched,
            ))
        }
        Command::Axioms { space, .. } => {
            let spaces: Vec<(String, crate::site::FiniteSpace)> = match space {
                Some(s) => {
                    let Manifest::Space(m) = inputs.load("space", "space", s)? else {
                        unreachable!("kind checked")
                    };
                    vec![(s.clone(), m.to_space().map_err(|e| fail(&e))?)]
                }
                None => crate::site::spaces::small_spaces()
                    .into_iter()
                    .map(|(n, s)| (format!("builtin:{n}"), s))
                    .collect(),
            };
            let mut rows = Vec::new();
            let mut all = true;
            for (name, s) in spaces {
                let cov = open_cover_pretopology(&s).map_err(|e| fail(&e))?;
                let p = check_pretopology_axioms(&s, &cov).map_err(|e| fail(&e))?;
                let j = generated_topology(&s, &cov).map_err(|e| fail(&e))?;
                let t = check_topology_axioms(&s, &j).map_err(|e| fail(&e))?;
                all &= p.all_hold() && t.all_hold();
                rows.push(json!({
                    "space": name,
                    "points": s.n_points(),
                    "opens": s.opens().len(),
                    "pretopology": identity_json(&p),
                    "topology": identity_json(&t),
                }));
            }
            Ok((json!({ "spaces": rows, "all_hold": all }), all))
        }
        Command::Refine { job, .. } => {
            let Manifest::Job(j) = inputs.load("job", "job", job)? else {
                unreachable!("kind checked")
            };
            let (coarse, fine, p) = j.instantiate().map_err(|e| fail(&e))?;
            let rho =
                refinement_map(&coarse, &fine, &j.assignment, &p, cutoff).map_err(|e| fail(&e))?;
            let check = verify_chain_map(&rho);
            let coarse_ranks = cech_cohomology_ranks(&coarse, &p, cutoff).map_err(|e| fail(&e))?;
            let fine_ranks = cech_cohomology_ranks(&fine, &p, cutoff).map_err(|e| fail(&e))?;
            let induced: Vec<usize> = (0..cutoff as i64).map(|q| rho.induced_rank(q)).collect();
            Ok((
                json!({
                    "chain_map": check.holds,
                    "first_failure": check.first_failure,
                    "coarse_ranks": ranks_list(&coarse_ranks),
                    "fine_ranks": ranks_list(&fine_ranks),
                    "induced_ranks": induced,
                }),
                check.holds,
            ))
        }
    }
}

/// Runs one command; `args` excludes the program name.
pub fn run_command<I, S>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(
        std::iter::once("z2cech".to_string()).chain(args.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput {
                    status: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutput {
                    status: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut inputs = Inputs(Vec::new());
    let (results, passed) = match execute(&cli.command, &mut inputs) {
        Ok(r) => r,
        Err(e) => return CommandOutput::input_error(e),
    };
    let common = cli.command.common();
    let metadata = Map::from_iter([
        ("cutoff".to_string(), json!(common.cutoff)),
        ("ceiling".to_string(), json!(common.ceiling)),
    ]);
    let report = Report {
        command: args,
        inputs: inputs.0,
        results,
        metadata,
        passed,
    };
    let text = report.render(common.format);
    let status = if passed { EXIT_OK } else { EXIT_CHECK_FAILED };
    let stderr = if passed {
        String::new()
    } else {
        "check failed\n".to_string()
    };
    match &common.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => CommandOutput {
                status,
                stdout: String::new(),
                stderr,
            },
            Err(e) => CommandOutput::input_error(format!("{}: {e}", path.display())),
        },
        None => CommandOutput {
            status,
            stdout: text,
            stderr,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandOutput {
        run_command(args.iter().copied())
    }

    fn json_of(out: &CommandOutput) -> Value {
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn hp_field() {
        let out = run(&[
            "hp",
            "--algebra",
            "builtin:field",
            "--cutoff",
            "6",
            "--format",
            "json",
        ]);
        assert_eq!(out.status, EXIT_OK, "{}", out.stderr);
        let v = json_of(&out);
        assert_eq!(v["results"]["even"], 1);
        assert_eq!(v["results"]["odd"], 0);
        assert_eq!(v["results"]["stabilized"], true);
        assert_eq!(v["metadata"]["side"], "chain");
    }

    #[test]
    fn morita_field() {
        let out = run(&[
            "morita",
            "--algebra",
            "builtin:field",
            "--n",
            "2",
            "--cutoff",
            "4",
            "--format",
            "json",
        ]);
        assert_eq!(out.status, EXIT_OK);
        assert_eq!(json_of(&out)["results"]["equal"], true);
    }

    #[test]
    fn input_errors_exit_two() {
        assert_eq!(run(&["hp", "--cutoff", "2"]).status, EXIT_INPUT);
        assert_eq!(
            run(&["hp", "--algebra", "builtin:field", "--cutoff", "2"]).status,
            EXIT_INPUT
        );
        assert_eq!(
            run(&["hp", "--algebra", "builtin:nothing"]).status,
            EXIT_INPUT
        );
        assert_eq!(run(&["frobnicate"]).status, EXIT_INPUT);
        let out = run(&["hp", "--algebra", "builtin:mat2", "--ceiling", "100"]);
        assert_eq!(out.status, EXIT_INPUT);
        assert!(out.stderr.contains("ceiling"), "{}", out.stderr);
        assert!(out.stdout.is_empty());
    }

    #[test]
    fn wrong_manifest_kind() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("space.txt");
        std::fs::write(&path, "kind: space\npoints: 1\nopens:\n  {}\n  {0}\n").unwrap();
        let out = run(&["hp", "--algebra", path.to_str().unwrap()]);
        assert_eq!(out.status, EXIT_INPUT);
        assert!(
            out.stderr.contains("expected a algebra manifest") || out.stderr.contains("expected")
        );
    }

    #[test]
    fn help_goes_to_stdout() {
        let out = run(&["--help"]);
        assert_eq!(out.status, EXIT_OK);
        assert!(out.stdout.contains("z2cech"));
    }
}
