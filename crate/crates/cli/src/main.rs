use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cluster_cli::descriptor::{
    build_seed, parse_b_arg, parse_directions, parse_mode, parse_var_address,
};
use cluster_cli::output::{
    certificate_json, edges_text, emit, graph_json, hex, matrix_columns, matrix_rows, seed_json,
};
use cluster_cli::exit_code_for;
use cluster_cli::verify::{
    has_failures, parse_suite, report_json, verify_corpus, verify_instance,
};
use cluster_core::compat::{
    compatibility_degree_audited, compatibility_degree_report, degree_matrix,
    maximal_compatible_sets, VariableRegistry,
};
use cluster_core::explorer::{explore, restricted_explore, reduce_path, DEFAULT_NODE_LIMIT};
use cluster_core::gpairs::find_gpair;
use cluster_core::invariants::{dmatrix_direct, dmatrix_recurrence, gmatrix};
use cluster_core::{Error, IntMatrix, Mode, Result, Seed};

#[derive(Parser)]
#[command(
    name = "cluster",
    version,
    about = "Exact seed mutation, exchange graphs, degree vectors, and partner search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Exchange matrix: inline JSON rows, a JSON seed descriptor, or a path
    /// to a file holding either
    #[arg(long)]
    b: String,
    /// Coefficient mode, principal or trivial (overrides the descriptor)
    #[arg(long)]
    mode: Option<String>,
    /// Node budget for any graph exploration involved
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    limit: usize,
    /// Emit compact single-line JSON instead of pretty-printed
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a mutation path to the initial seed and print the result
    Mutate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated 1-based directions, applied left to right
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Breadth-first exploration of the exchange graph from the initial seed
    Explore {
        #[command(flatten)]
        common: Common,
        /// Restrict mutation to these 1-based directions (labeled graph)
        #[arg(long)]
        subset: Option<String>,
        /// Output format: json or edges
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Denominator vectors of the cluster at a path, as columns
    Dvec {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        path: String,
        /// Reference cluster given by its own path from the initial seed
        #[arg(long, conflicts_with = "wrt_root")]
        wrt: Option<String>,
        /// Take degrees relative to the initial cluster (the default)
        #[arg(long)]
        wrt_root: bool,
    },
    /// Degree vectors of the cluster at a path, as columns
    Gvec {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Degree matrix of the seed at a path, as rows
    Gmat {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Denominator matrix of the seed at a path, cross-checked against the
    /// mutation recurrence
    Dmat {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Search for the restricted partner seed of a source seed
    Gpair {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        path: String,
        /// Comma-separated 1-based directions spanning the restriction
        #[arg(long)]
        subset: String,
    },
    /// Compatibility degrees over the explored variables
    Compat {
        #[command(subcommand)]
        action: CompatAction,
    },
    /// Run the property battery and print a JSON report
    Verify {
        /// Exchange matrix or descriptor; defaults to the bundled corpus
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        limit: usize,
        /// Property selection: all, or comma-separated name prefixes
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CompatAction {
    /// Degree of the second variable relative to the first
    Degree {
        #[command(flatten)]
        common: Common,
        /// Variable address, twice: @k (discovery index) or path:slot
        #[arg(long = "at")]
        at: Vec<String>,
        /// Check every witness cluster instead of the first
        #[arg(long)]
        audit: bool,
    },
    /// Maximal sets of pairwise compatible variables
    Sets {
        #[command(flatten)]
        common: Common,
    },
    /// Full degree table over the discovered variables
    Matrix {
        #[command(flatten)]
        common: Common,
    },
}

fn seed_from(common: &Common) -> Result<Seed> {
    let (b, descriptor_mode) = parse_b_arg(&common.b)?;
    let flag_mode = common.mode.as_deref().map(parse_mode).transpose()?;
    build_seed(b, descriptor_mode, flag_mode)
}

/// Expansions of the cluster at `path`, written in the coordinates of the
/// cluster at `reference`, via a trivial-coefficient replay.
fn cluster_relative(root: &Seed, reference: &[usize], path: &[usize]) -> Result<Seed> {
    let at_reference = root.walk(reference)?;
    let fresh = Seed::initial(at_reference.bmat().clone(), Mode::Trivial)?;
    let mut rel: Vec<usize> = reference.iter().rev().copied().collect();
    rel.extend_from_slice(path);
    fresh.walk(&reduce_path(rel))
}

fn dvec_columns(root: &Seed, reference: &[usize], path: &[usize]) -> Result<IntMatrix> {
    let relative = cluster_relative(root, reference, path)?;
    dmatrix_direct(&relative)
}

fn variable_registry(root: &Seed, limit: usize) -> Result<(cluster_core::explorer::ExchangeGraph, VariableRegistry)> {
    let g = explore(root, limit)?;
    let reg = VariableRegistry::build(&g)?;
    Ok((g, reg))
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Mutate { common, path } => {
            let root = seed_from(&common)?;
            let path = parse_directions(&path)?;
            let seed = root.walk(&path)?;
            print!("{}", emit(&seed_json(&seed), common.json));
            Ok(0)
        }
        Command::Explore {
            common,
            subset,
            format,
        } => {
            let root = seed_from(&common)?;
            let g = match subset {
                Some(s) => restricted_explore(&root, &parse_directions(&s)?, common.limit)?,
                None => explore(&root, common.limit)?,
            };
            match format.as_str() {
                "json" => print!("{}", emit(&graph_json(&g), common.json)),
                "edges" => print!("{}", edges_text(&g)),
                other => {
                    return Err(Error::Parse(format!(
                        "unknown format {:?}, expected json or edges",
                        other
                    )))
                }
            }
            Ok(0)
        }
        Command::Dvec {
            common,
            path,
            wrt,
            wrt_root: _,
        } => {
            let root = seed_from(&common)?;
            let path = parse_directions(&path)?;
            let reference = match wrt {
                Some(w) => parse_directions(&w)?,
                None => Vec::new(),
            };
            let d = dvec_columns(&root, &reference, &path)?;
            let body = json!({
                "path": path.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "wrt": reference.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "columns": matrix_columns(&d),
            });
            print!("{}", emit(&body, common.json));
            Ok(0)
        }
        Command::Gvec { common, path } => {
            let root = seed_from(&common)?;
            let path = parse_directions(&path)?;
            let seed = root.walk(&path)?;
            let g = gmatrix(&seed)?;
            let body = json!({
                "path": path.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "columns": matrix_columns(&g),
            });
            print!("{}", emit(&body, common.json));
            Ok(0)
        }
        Command::Gmat { common, path } => {
            let root = seed_from(&common)?;
            let path = parse_directions(&path)?;
            let seed = root.walk(&path)?;
            let g = gmatrix(&seed)?;
            let body = json!({
                "path": path.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "rows": matrix_rows(&g),
            });
            print!("{}", emit(&body, common.json));
            Ok(0)
        }
        Command::Dmat { common, path } => {
            let root = seed_from(&common)?;
            let path = parse_directions(&path)?;
            let seed = root.walk(&path)?;
            let direct = dmatrix_direct(&seed)?;
            let recurred = dmatrix_recurrence(&path, root.bmat())?;
            if direct != recurred {
                return Err(Error::ClassificationMismatch(format!(
                    "denominator recurrence disagrees with expansions along {:?}",
                    path.iter().map(|k| k + 1).collect::<Vec<_>>()
                )));
            }
            let body = json!({
                "path": path.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "rows": matrix_rows(&direct),
            });
            print!("{}", emit(&body, common.json));
            Ok(0)
        }
        Command::Gpair {
            common,
            path,
            subset,
        } => {
            let root = seed_from(&common)?;
            let path = parse_directions(&path)?;
            let subset = parse_directions(&subset)?;
            let source = root.walk(&path)?;
            let cert = find_gpair(&root, &source, &path, &subset, common.limit)?;
            print!("{}", emit(&certificate_json(&cert), common.json));
            Ok(0)
        }
        Command::Compat { action } => run_compat(action),
        Command::Verify {
            b,
            mode,
            limit,
            suite,
            json: compact,
        } => {
            let filter = parse_suite(&suite)?;
            let reports = match b {
                Some(text) => {
                    let (bmat, descriptor_mode) = parse_b_arg(&text)?;
                    let flag_mode = mode.as_deref().map(parse_mode).transpose()?;
                    let seed = build_seed(bmat, descriptor_mode, flag_mode)?;
                    vec![verify_instance(
                        "custom",
                        seed.bmat().clone(),
                        seed.mode(),
                        limit,
                        &filter,
                    )?]
                }
                None => verify_corpus(limit, &filter)?,
            };
            let failed = has_failures(&reports);
            print!("{}", emit(&report_json(&reports), compact));
            Ok(if failed { 2 } else { 0 })
        }
    }
}

fn run_compat(action: CompatAction) -> Result<i32> {
    match action {
        CompatAction::Degree { common, at, audit } => {
            if at.len() != 2 {
                return Err(Error::Parse(format!(
                    "expected exactly two --at addresses, got {}",
                    at.len()
                )));
            }
            let root = seed_from(&common)?;
            let (g, reg) = variable_registry(&root, common.limit)?;
            let first = parse_var_address(&at[0])?.resolve(&root, &reg)?;
            let second = parse_var_address(&at[1])?.resolve(&root, &reg)?;
            let report = compatibility_degree_report(&g, &first, &second)?;
            if audit {
                // Re-derive through every witness; disagreement is fatal.
                let audited = compatibility_degree_audited(&g, &first, &second)?;
                debug_assert_eq!(audited, report.degree);
            }
            let body = json!({
                "first": report.first.to_string(),
                "second": report.second.to_string(),
                "degree": report.degree,
                "witness": hex(&report.witness_key),
                "audited": audit,
            });
            print!("{}", emit(&body, common.json));
            Ok(0)
        }
        CompatAction::Sets { common } => {
            let root = seed_from(&common)?;
            let (g, reg) = variable_registry(&root, common.limit)?;
            let sets = maximal_compatible_sets(&g)?;
            let body = json!({
                "variables": reg.vars().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "sets": sets
                    .iter()
                    .map(|s| s.iter().map(|i| i + 1).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            print!("{}", emit(&body, common.json));
            Ok(0)
        }
        CompatAction::Matrix { common } => {
            let root = seed_from(&common)?;
            let (g, reg) = variable_registry(&root, common.limit)?;
            let m = degree_matrix(&g)?;
            let body = json!({
                "variables": reg.vars().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "rows": matrix_rows(&m),
            });
            print!("{}", emit(&body, common.json));
            Ok(0)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(exit_code_for(&e));
        }
    }
}
