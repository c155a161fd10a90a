//! Command-line front end: every subcommand prints one machine-readable
//! report on stdout and exits 0 on success, 2 when a search budget ran out
//! (a partial report is still printed), and 3 on invalid input.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use zerosum::atoms::{enumerate_atoms, AtomSet};
use zerosum::budget::Budget;
use zerosum::chain::Chain;
use zerosum::chains::{
    chain_to_upsilon, e_atoms, m2_chain, relative_davenport, upsilon, SplitOutcome,
};
use zerosum::elasticity::{exact_elasticity, k_profile, Accepted};
use zerosum::error::Error;
use zerosum::factorization::Factorization;
use zerosum::factorize::{factorizations, LengthSet};
use zerosum::groundspec::GroundSpec;
use zerosum::invariants::{
    adjacent_length_distance, catenary, delta_of_element, monotone_catenary, tame_degree,
    tame_growth_witness, CertificateMode,
};
use zerosum::sequence::Sequence;
use zerosum::structure::{
    family_coprime_gap, family_gcd_gap, family_mirror_pair, family_monotone_obstruction,
    family_pattern_ladder, family_two_lengths, recognize_aamp, structure_condition,
    CheckMode, ClaimValue, FamilyInstance,
};
use zerosum::transfer::{psi_collapse, transfer_to_cyclic};

const SCHEMA: &str = "zerosum-report/1";

#[derive(Parser)]
#[command(name = "zerosum", version, about = "Factorization invariants of zero-sum sequences")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Search-node budget.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget_nodes: u64,
    /// Stored-result budget.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget_results: u64,
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Emit flattened key,value CSV instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Seed recorded in the report; reserved for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Enumerate the atom catalogue and Davenport constant of a finite ground.
    Atoms {
        #[arg(long, allow_hyphen_values = true)]
        ground: String,
    },
    /// Enumerate factorizations (or just the lengths) of a zero-sum sequence.
    Factorize {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        ground: String,
        #[arg(long)]
        lengths_only: bool,
        /// Restrict to factorizations of this length.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Catenary/monotone catenary degrees, successive distance, tame degree.
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        ground: String,
        /// Comma-separated list from: c, cmon, delta, dkl:<k>:<l>, tame:<atom>.
        #[arg(long, allow_hyphen_values = true)]
        which: String,
    },
    /// Exact elasticity of the monoid over a ground spec.
    Elasticity {
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
    },
    /// V_k, rho_k and lambda_k over a finite ground.
    Rhok {
        #[arg(long, allow_hyphen_values = true)]
        ground: String,
        #[arg(long)]
        k: u64,
    },
    /// Transfer maps.
    #[command(subcommand)]
    Transfer(TransferCmd),
    /// The structure condition for grounds of shape {-d,-1} ∪ positives.
    StructureCheck {
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
    },
    /// Recognize an almost arithmetical multiprogression.
    Aamp {
        /// Comma-separated lengths, e.g. "4,5".
        #[arg(long)]
        lengths: String,
        /// Comma-separated candidate differences.
        #[arg(long)]
        deltas: String,
        #[arg(long, default_value_t = 0)]
        bound: u64,
    },
    /// Build a named witness family instance.
    Family {
        /// two-lengths | gcd-gap | coprime-gap | mirror-pair | pattern-ladder
        /// | monotone-obstruction
        name: String,
        /// Comma-separated key=value parameters, e.g. "d=2,k=1".
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Chain machinery over the negative part.
    #[command(subcommand)]
    Chains(ChainsCmd),
    /// Constructive witnesses.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Run a JSON manifest of jobs and aggregate the reports.
    Batch {
        manifest: std::path::PathBuf,
    },
}

#[derive(Subcommand, Clone)]
enum TransferCmd {
    /// Collapse a ground with negative part {-n} onto Z/nZ.
    Cyclic {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        n: u64,
    },
    /// Collapse the multiples of d onto d.
    Psi {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        d: i64,
    },
}

#[derive(Subcommand, Clone)]
enum ChainsCmd {
    /// The refinement-maximal factorizations of an element.
    Upsilon {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        ground: String,
    },
    /// A nondecreasing chain from the canonical factorization into the
    /// maximal set.
    ToUpsilon {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        ground: String,
    },
    /// A strictly increasing chain to maximal length (or the obstruction
    /// witness) for large-positives elements.
    M2 {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        ground: String,
    },
    /// Pair atoms and the relative Davenport constant of a negative set.
    RelDavenport {
        /// Comma-separated negative integers, e.g. "-2,-1".
        #[arg(long, allow_hyphen_values = true)]
        negatives: String,
    },
}

#[derive(Subcommand, Clone)]
enum WitnessCmd {
    /// Anchored two-atom element with unbounded rewrite distance.
    TameGrowth {
        /// Two-sided ground spec (may contain "downs" progressions).
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
        #[arg(long)]
        n: u64,
    },
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let (code, report) = run(&args);
    if let Some(r) = report { print_report(&r, &args) }
    ExitCode::from(code)
}

fn print_report(report: &Value, args: &[String]) {
    let csv = args.iter().any(|a| a == "--csv");
    if csv {
        let mut rows = Vec::new();
        flatten("", report, &mut rows);
        for (k, v) in rows {
            println!("{k},{v}");
        }
    } else {
        println!("{}", serde_json::to_string_pretty(report).unwrap());
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, val, out);
            }
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), val, out);
            }
        }
        other => out.push((
            prefix.to_string(),
            match other {
                Value::String(s) => s.clone(),
                x => x.to_string(),
            },
        )),
    }
}

/// Dispatch a full argv (including the program name).  Returns the exit code
/// and the report, if one was produced.
fn run(argv: &[String]) -> (u8, Option<Value>) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are successes
            use clap::error::ErrorKind::*;
            let code = match e.kind() {
                DisplayHelp | DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return (code, None);
        }
    };
    let budget = Budget::new(cli.common.budget_nodes, cli.common.budget_results);
    match dispatch(&cli.command, &budget) {
        Ok(results) => {
            // a partial enumeration is budget exhaustion; batch propagates
            // the worst per-job code
            let partial = results.get("complete").and_then(|x| x.as_bool()) == Some(false);
            let code = results
                .get("worst_exit")
                .and_then(|x| x.as_u64())
                .unwrap_or(if partial { 2 } else { 0 }) as u8;
            let report = assemble(&cli, results, !partial && code != 2);
            (code, Some(report))
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::BudgetExceeded { partial_atoms, .. } => {
                    let mut results = json!({"complete": false});
                    if let Some(atoms) = partial_atoms {
                        results["partial_atoms"] = atoms_json(&atoms);
                    }
                    let report = assemble(&cli, results, false);
                    (2, Some(report))
                }
                _ => (3, None),
            }
        }
    }
}

fn assemble(cli: &Cli, results: Value, complete: bool) -> Value {
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(&cli.command),
        "inputs": inputs_json(&cli.command, &cli.common),
        "results": results,
        "complete": complete,
        "budget": {
            "max_nodes": cli.common.budget_nodes,
            "max_results": cli.common.budget_results,
        },
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Atoms { .. } => "atoms",
        Command::Factorize { .. } => "factorize",
        Command::Invariants { .. } => "invariants",
        Command::Elasticity { .. } => "elasticity",
        Command::Rhok { .. } => "rhok",
        Command::Transfer(TransferCmd::Cyclic { .. }) => "transfer cyclic",
        Command::Transfer(TransferCmd::Psi { .. }) => "transfer psi",
        Command::StructureCheck { .. } => "structure-check",
        Command::Aamp { .. } => "aamp",
        Command::Family { .. } => "family",
        Command::Chains(ChainsCmd::Upsilon { .. }) => "chains upsilon",
        Command::Chains(ChainsCmd::ToUpsilon { .. }) => "chains to-upsilon",
        Command::Chains(ChainsCmd::M2 { .. }) => "chains m2",
        Command::Chains(ChainsCmd::RelDavenport { .. }) => "chains rel-davenport",
        Command::Witness(WitnessCmd::TameGrowth { .. }) => "witness tame-growth",
        Command::Batch { .. } => "batch",
    }
}

fn inputs_json(c: &Command, common: &Common) -> Value {
    let mut v = match c {
        Command::Atoms { ground } => json!({"ground": ground}),
        Command::Factorize {
            element,
            ground,
            lengths_only,
            k,
        } => json!({"element": element, "ground": ground, "lengths_only": lengths_only, "k": k}),
        Command::Invariants {
            element,
            ground,
            which,
        } => json!({"element": element, "ground": ground, "which": which}),
        Command::Elasticity { spec } => json!({"spec": spec}),
        Command::Rhok { ground, k } => json!({"ground": ground, "k": k}),
        Command::Transfer(TransferCmd::Cyclic { element, n }) => {
            json!({"element": element, "n": n})
        }
        Command::Transfer(TransferCmd::Psi { element, d }) => {
            json!({"element": element, "d": d})
        }
        Command::StructureCheck { spec } => json!({"spec": spec}),
        Command::Aamp {
            lengths,
            deltas,
            bound,
        } => json!({"lengths": lengths, "deltas": deltas, "bound": bound}),
        Command::Family { name, params } => json!({"name": name, "params": params}),
        Command::Chains(ChainsCmd::Upsilon { element, ground })
        | Command::Chains(ChainsCmd::ToUpsilon { element, ground })
        | Command::Chains(ChainsCmd::M2 { element, ground }) => {
            json!({"element": element, "ground": ground})
        }
        Command::Chains(ChainsCmd::RelDavenport { negatives }) => {
            json!({"negatives": negatives})
        }
        Command::Witness(WitnessCmd::TameGrowth { spec, n }) => json!({"spec": spec, "n": n}),
        Command::Batch { manifest } => json!({"manifest": manifest.display().to_string()}),
    };
    if let Some(seed) = common.seed {
        v["seed"] = json!(seed);
    }
    v
}

fn dispatch(c: &Command, budget: &Budget) -> Result<Value, Error> {
    match c {
        Command::Atoms { ground } => {
            let members = parse_finite_ground(ground)?;
            let atoms = enumerate_atoms(&members, budget)?;
            Ok(json!({
                "ground": atoms.ground,
                "atoms": atoms.atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "davenport": labeled(atoms.davenport(), true),
            }))
        }
        Command::Factorize {
            element,
            ground,
            lengths_only,
            k,
        } => {
            let b = Sequence::from_str(element)?;
            let atoms = ground_atoms(ground, budget)?;
            let zs = match k {
                Some(k) => zerosum::factorize::z_k(&b, &atoms, *k, budget)?,
                None => factorizations(&b, &atoms, budget)?,
            };
            let lengths = zs.length_set();
            let mut results = json!({
                "element": b.to_string(),
                "complete": zs.complete,
                "count": zs.len(),
                "lengths": lengths.lengths.iter().collect::<Vec<_>>(),
                "delta": lengths.delta().iter().collect::<Vec<_>>(),
                "elasticity": rational_string(&lengths.elasticity()?),
                "label": if zs.complete { "exact" } else { "lower bound" },
                "nodes_used": zs.nodes_used,
            });
            if !lengths_only {
                results["factorizations"] = zs
                    .all
                    .iter()
                    .map(|z| z.to_string())
                    .collect::<Vec<_>>()
                    .into();
            }
            Ok(results)
        }
        Command::Invariants {
            element,
            ground,
            which,
        } => {
            let b = Sequence::from_str(element)?;
            let atoms = ground_atoms(ground, budget)?;
            let mut results = serde_json::Map::new();
            for item in which.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                if item == "c" {
                    results.insert("catenary".into(), labeled(catenary(&b, &atoms, budget)?, true));
                } else if item == "cmon" {
                    results.insert(
                        "monotone_catenary".into(),
                        labeled(monotone_catenary(&b, &atoms, budget)?, true),
                    );
                } else if item == "delta" {
                    results.insert(
                        "successive_distance".into(),
                        labeled(delta_of_element(&b, &atoms, budget)?, true),
                    );
                } else if let Some(rest) = item.strip_prefix("tame:") {
                    let atom = Sequence::from_str(rest)?;
                    results.insert(
                        "tame_degree".into(),
                        labeled(tame_degree(&b, &atom, &atoms, budget)?, true),
                    );
                } else if let Some(rest) = item.strip_prefix("dkl:") {
                    let parts: Vec<&str> = rest.split(':').collect();
                    if parts.len() != 2 {
                        return Err(Error::invalid("dkl needs the form dkl:<k>:<l>"));
                    }
                    let k: u64 = parts[0]
                        .parse()
                        .map_err(|_| Error::invalid("bad k in dkl"))?;
                    let l: u64 = parts[1]
                        .parse()
                        .map_err(|_| Error::invalid("bad l in dkl"))?;
                    results.insert(
                        "length_class_distance".into(),
                        labeled(adjacent_length_distance(&b, &atoms, k, l, budget)?, true),
                    );
                } else {
                    return Err(Error::invalid(format!("unknown invariant {item:?}")));
                }
            }
            Ok(Value::Object(results))
        }
        Command::Elasticity { spec } => {
            let spec = parse_spec(spec)?;
            let report = exact_elasticity(&spec, budget)?;
            Ok(json!({
                "rho": rational_string(&report.rho),
                "accepted": match report.accepted {
                    Accepted::Yes => json!(true),
                    Accepted::No => json!(false),
                    Accepted::Unknown => json!("unknown"),
                },
                "kappa_classes": report.kappa_classes,
                "generators": report.generators,
                "label": "exact",
            }))
        }
        Command::Rhok { ground, k } => {
            let members = parse_finite_ground(ground)?;
            let p = k_profile(&members, *k, budget)?;
            Ok(json!({
                "k": p.k,
                "v_k": p.v_k.iter().collect::<Vec<_>>(),
                "rho_k": labeled(p.rho_k, true),
                "lambda_k": labeled(p.lambda_k, true),
            }))
        }
        Command::Transfer(TransferCmd::Cyclic { element, n }) => {
            let b = Sequence::from_str(element)?;
            let image = transfer_to_cyclic(&b, *n)?;
            Ok(json!({
                "image": image.to_string(),
                "modulus": n,
                "class_group_gcd": zerosum::transfer::cyclic_class_gcd(&b, *n)?,
            }))
        }
        Command::Transfer(TransferCmd::Psi { element, d }) => {
            let b = Sequence::from_str(element)?;
            let image = psi_collapse(&b, *d)?;
            let mut shift = 0i64;
            for (g, m) in b.iter() {
                if g > 0 && g % d == 0 {
                    shift += (g / d - 1) * m as i64;
                }
            }
            Ok(json!({
                "image": image.to_string(),
                "d": d,
                "length_shift": shift,
            }))
        }
        Command::StructureCheck { spec } => {
            let spec = parse_spec(spec)?;
            Ok(json!({"structured": structure_condition(&spec)?}))
        }
        Command::Aamp {
            lengths,
            deltas,
            bound,
        } => {
            let lengths: BTreeSet<u64> = parse_u64_list(lengths)?;
            let deltas: BTreeSet<u64> = parse_u64_list(deltas)?;
            let l = LengthSet {
                lengths,
                complete: true,
            };
            match recognize_aamp(&l, &deltas, *bound) {
                Some(w) => Ok(json!({
                    "recognized": true,
                    "y": w.y,
                    "difference": w.d,
                    "period": w.period.iter().collect::<Vec<_>>(),
                    "core": w.core.iter().collect::<Vec<_>>(),
                    "head": w.head.iter().collect::<Vec<_>>(),
                    "tail": w.tail.iter().collect::<Vec<_>>(),
                })),
                None => Ok(json!({"recognized": false})),
            }
        }
        Command::Family { name, params } => {
            let p = parse_params(params)?;
            let get = |key: &str| -> Result<i64, Error> {
                p.get(key)
                    .copied()
                    .ok_or_else(|| Error::invalid(format!("missing parameter {key}")))
            };
            let inst: FamilyInstance = match name.as_str() {
                "two-lengths" => family_two_lengths(get("d")?, get("k")?, budget)?,
                "gcd-gap" => family_gcd_gap(get("d")?, get("e")?, get("k")?)?,
                "coprime-gap" => {
                    family_coprime_gap(get("d")?, get("e")?, get("f")?, get("l")?, get("k")?)?
                }
                "mirror-pair" => {
                    family_mirror_pair(get("d")?, get("e")?, get("k")?, get("l")?, budget)?
                }
                "pattern-ladder" => {
                    family_pattern_ladder(get("a1")?, get("a2")?, get("b")?, get("N")?)?
                }
                "monotone-obstruction" => {
                    family_monotone_obstruction(get("d1")?, get("d2")?, get("N")?, get("M")?)?
                }
                other => return Err(Error::invalid(format!("unknown family {other:?}"))),
            };
            Ok(family_json(&inst))
        }
        Command::Chains(ChainsCmd::Upsilon { element, ground }) => {
            let b = Sequence::from_str(element)?;
            let atoms = ground_atoms(ground, budget)?;
            let up = upsilon(&b, &atoms, budget)?;
            Ok(json!({
                "count": up.len(),
                "members": up.all.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Chains(ChainsCmd::ToUpsilon { element, ground }) => {
            let b = Sequence::from_str(element)?;
            let atoms = ground_atoms(ground, budget)?;
            let zs = factorizations(&b, &atoms, budget)?;
            let start = zs
                .all
                .first()
                .ok_or_else(|| Error::invalid("no factorization"))?;
            let chain = chain_to_upsilon(&b, start, &atoms, budget)?;
            Ok(chain_json(&chain))
        }
        Command::Chains(ChainsCmd::M2 { element, ground }) => {
            let b = Sequence::from_str(element)?;
            let atoms = ground_atoms(ground, budget)?;
            let zs = factorizations(&b, &atoms, budget)?;
            let start = zs
                .all
                .first()
                .ok_or_else(|| Error::invalid("no factorization"))?;
            match m2_chain(&b, start, &atoms, budget)? {
                SplitOutcome::Chain(chain) => Ok(json!({"case": "chain", "chain": chain_json(&chain)})),
                SplitOutcome::Witness {
                    subset,
                    factorization,
                } => Ok(json!({
                    "case": "witness",
                    "subset": subset,
                    "factorization": factorization.to_string(),
                })),
            }
        }
        Command::Chains(ChainsCmd::RelDavenport { negatives }) => {
            let values = parse_finite_ground(negatives)?;
            let atoms = e_atoms(&values, budget)?;
            Ok(json!({
                "pair_atoms": atoms
                    .iter()
                    .map(|p| json!({"left": p.left.to_string(), "right": p.right.to_string()}))
                    .collect::<Vec<_>>(),
                "relative_davenport": labeled(relative_davenport(&values, budget)?, true),
            }))
        }
        Command::Witness(WitnessCmd::TameGrowth { spec, n }) => {
            let v: Value = serde_json::from_str(spec)
                .map_err(|e| Error::invalid(format!("bad spec JSON: {e}")))?;
            let spec = GroundSpec::from_json_two_sided(&v)?;
            let w = tame_growth_witness(&spec, *n, budget)?;
            Ok(json!({
                "atom": w.atom.to_string(),
                "element": w.element.to_string(),
                "mode": match w.mode {
                    CertificateMode::Enumerated => "enumerated",
                    CertificateMode::Structural => "structural",
                },
                "lengths": w.lengths.as_ref().map(|l| l.lengths.iter().collect::<Vec<_>>()),
                "max_delta": w.max_delta,
                "factorizations": w.factorizations.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
                "claims": w.claims,
            }))
        }
        Command::Batch { manifest } => run_batch(manifest, budget),
    }
}

fn run_batch(path: &std::path::Path, _budget: &Budget) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read manifest: {e}")))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("bad manifest: {e}")))?;
    let jobs: Vec<Vec<String>> = v
        .get("jobs")
        .and_then(|j| j.as_array())
        .map(|arr| {
            arr.iter()
                .map(|job| {
                    job.get("args")
                        .and_then(|a| a.as_array())
                        .map(|args| {
                            args.iter()
                                .filter_map(|x| x.as_str().map(String::from))
                                .collect::<Vec<String>>()
                        })
                        .ok_or_else(|| Error::invalid("each job needs an \"args\" array"))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?
        .unwrap_or_default();
    let parallel = v.get("parallel").and_then(|p| p.as_bool()).unwrap_or(false);

    let run_job = |args: &Vec<String>| -> (u8, Option<Value>) {
        let mut argv = vec!["zerosum".to_string()];
        argv.extend(args.iter().cloned());
        run(&argv)
    };

    let outcomes: Vec<(u8, Option<Value>)> = if parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = jobs.iter().map(|j| scope.spawn(move || run_job(j))).collect();
            handles.into_iter().map(|h| h.join().expect("job panicked")).collect()
        })
    } else {
        jobs.iter().map(run_job).collect()
    };

    let mut worst = 0u8;
    let mut reports = Vec::new();
    for (index, (code, report)) in outcomes.into_iter().enumerate() {
        worst = worst.max(code);
        reports.push(json!({
            "index": index,
            "exit": code,
            "report": report,
        }));
    }
    if worst != 0 {
        // surface the aggregate code through the error channel so main
        // exits accordingly; the report is still the aggregate
        eprintln!("batch: worst per-job exit code {worst}");
    }
    Ok(json!({"jobs": reports, "worst_exit": worst}))
}

fn chain_json(chain: &Chain) -> Value {
    json!({
        "steps": chain.steps.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
        "lengths": chain.steps.iter().map(|z| z.len()).collect::<Vec<_>>(),
        "max_step": labeled(chain.max_step, true),
        "monotone": match chain.monotone {
            zerosum::chain::Monotone::NonDecreasing => "nondecreasing",
            zerosum::chain::Monotone::NonIncreasing => "nonincreasing",
            zerosum::chain::Monotone::None => "none",
        },
    })
}

fn family_json(inst: &FamilyInstance) -> Value {
    json!({
        "name": inst.name,
        "parameters": inst.parameters,
        "element": inst.element.to_string(),
        "factorizations": inst.distinguished.iter().map(Factorization::to_string).collect::<Vec<_>>(),
        "claims": inst.claims.iter().map(|c| json!({
            "formula": c.formula,
            "value": claim_value_json(&c.value),
            "checked": match c.mode {
                CheckMode::Enumerated => "enumerated",
                CheckMode::Structural => "structural",
            },
        })).collect::<Vec<_>>(),
        "guaranteed": inst.guaranteed,
    })
}

fn claim_value_json(v: &ClaimValue) -> Value {
    match v {
        ClaimValue::Int(x) => json!(x),
        ClaimValue::Lengths(l) => json!(l.iter().collect::<Vec<_>>()),
        ClaimValue::LowerBound(x) => json!({"value": x, "label": "lower bound"}),
        ClaimValue::Flag(f) => json!(f),
    }
}

fn labeled(value: u64, exact: bool) -> Value {
    json!({"value": value, "label": if exact { "exact" } else { "lower bound" }})
}

fn rational_string(r: &zerosum::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn atoms_json(atoms: &AtomSet) -> Value {
    json!({
        "ground": atoms.ground,
        "atoms": atoms.atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
    })
}

fn parse_finite_ground(text: &str) -> Result<Vec<i64>, Error> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') && trimmed.contains(':') {
        let v: Value = serde_json::from_str(trimmed)
            .map_err(|e| Error::invalid(format!("bad ground JSON: {e}")))?;
        let spec = GroundSpec::from_json(&v)?;
        return spec
            .finite_members()
            .ok_or_else(|| Error::invalid("this command needs a finite ground"));
    }
    let inner = trimmed
        .trim_start_matches(['[', '{', '('])
        .trim_end_matches([']', '}', ')']);
    let mut out = Vec::new();
    for tok in inner.split([',', ' ']).map(str::trim).filter(|s| !s.is_empty()) {
        out.push(
            tok.parse::<i64>()
                .map_err(|_| Error::invalid(format!("bad ground entry {tok:?}")))?,
        );
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_spec(text: &str) -> Result<GroundSpec, Error> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') && trimmed.contains(':') {
        let v: Value = serde_json::from_str(trimmed)
            .map_err(|e| Error::invalid(format!("bad spec JSON: {e}")))?;
        return GroundSpec::from_json(&v);
    }
    Ok(GroundSpec::finite_set(parse_finite_ground(text)?))
}

fn ground_atoms(text: &str, budget: &Budget) -> Result<AtomSet, Error> {
    let members = parse_finite_ground(text)?;
    enumerate_atoms(&members, budget)
}

fn parse_u64_list(text: &str) -> Result<BTreeSet<u64>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::invalid(format!("bad entry {tok:?}")))
        })
        .collect()
}

fn parse_params(text: &str) -> Result<std::collections::BTreeMap<String, i64>, Error> {
    let mut out = std::collections::BTreeMap::new();
    for pair in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("bad parameter {pair:?}, expected key=value")))?;
        out.insert(
            key.trim().to_string(),
            value
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::invalid(format!("bad value in {pair:?}")))?,
        );
    }
    Ok(out)
}
