use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use infodist::machine::{self, Census};
use infodist::{canonicalize, BitString, StringMultiset};

use super::{load_config, parse_bits, read_to_string, CmdResult};
use crate::report::{csv_field, Outcome};
use crate::Globals;

#[derive(Subcommand)]
pub enum MachineCmd {
    /// List the halting programs of length at most K.
    Enumerate {
        #[arg(long)]
        k: usize,
    },
    /// Table of f(k) = |P(k)|.
    F {
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Conditional complexity K(X|x).
    K {
        #[command(flatten)]
        set: MultisetArg,
        /// The given member x.
        #[arg(long)]
        x: String,
    },
    /// Exact information distance ID(X).
    Id {
        #[command(flatten)]
        set: MultisetArg,
    },
    /// Check k <= ID(X) and measure ID(X) - k - log n over a universe.
    Check {
        /// JSON file {"multisets": [["0","1"], ...]}.
        #[arg(long, conflicts_with = "max_len")]
        universe: Option<PathBuf>,
        /// Generate every multiset over strings of at most this length.
        #[arg(long)]
        max_len: Option<usize>,
        /// Cardinalities for the generated universe.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        sizes: Vec<usize>,
        /// Drop multisets without a witness inside the search limits instead
        /// of failing.
        #[arg(long)]
        skip_incomplete: bool,
    },
}

#[derive(Args)]
pub struct MultisetArg {
    /// A member of X (repeat for each member; "" is the empty string).
    #[arg(long = "member", required = true, allow_hyphen_values = true)]
    members: Vec<String>,
}

impl MultisetArg {
    fn parse(&self) -> CmdResult<StringMultiset> {
        let items = self
            .members
            .iter()
            .map(|s| parse_bits(s))
            .collect::<CmdResult<Vec<_>>>()?;
        canonicalize(items).map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
pub struct UniverseFile {
    pub multisets: Vec<Vec<BitString>>,
}

pub fn run(cmd: MachineCmd, g: &Globals) -> CmdResult<Outcome> {
    let cfg = load_config(g)?;
    match cmd {
        MachineCmd::Enumerate { k } => {
            let programs = machine::enumerate_halting(k, &cfg).map_err(|e| e.to_string())?;
            let rows: Vec<_> = programs
                .iter()
                .map(|p| {
                    json!({
                        "program": p.code,
                        "length": p.len(),
                        "expr": format!("{:?}", p.parse().expect("halting programs parse")),
                    })
                })
                .collect();
            let mut table = String::from("program,length,expr\n");
            for r in &rows {
                table.push_str(&format!(
                    "{},{},{}\n",
                    r["program"].as_str().unwrap(),
                    r["length"],
                    csv_field(r["expr"].as_str().unwrap())
                ));
            }
            Ok(Outcome::new(
                "machine enumerate",
                json!({ "k": k, "count": rows.len(), "programs": rows }),
            )
            .with_table(table))
        }
        MachineCmd::F { k_max } => {
            let k_max = k_max.unwrap_or(cfg.max_program_length);
            if k_max > cfg.max_program_length {
                return Err(format!(
                    "--k-max {k_max} exceeds max_program_length {}",
                    cfg.max_program_length
                ));
            }
            let mut table = machine::f_table(&cfg);
            table.truncate(k_max + 1);
            let k0 = table.iter().position(|&v| v > 0);
            let strictly_increasing =
                k0.is_some_and(|k0| table[k0..].windows(2).all(|w| w[0] < w[1]));
            let mut csv = String::from("k,f\n");
            for (k, v) in table.iter().enumerate() {
                csv.push_str(&format!("{k},{v}\n"));
            }
            Ok(Outcome::new(
                "machine f",
                json!({ "k0": k0, "f": table, "strictly_increasing": strictly_increasing }),
            )
            .with_table(csv)
            .violated_if(!strictly_increasing))
        }
        MachineCmd::K { set, x } => {
            let set = set.parse()?;
            let x = parse_bits(&x)?;
            if !set.contains(&x) {
                return Err(format!("{x} is not a member of {set}"));
            }
            let k = machine::conditional_complexity(&set, &x, &cfg);
            Ok(Outcome::new(
                "machine k",
                json!({ "multiset": set.to_string(), "x": x, "k": k, "max_program_length": cfg.max_program_length }),
            ))
        }
        MachineCmd::Id { set } => {
            let set = set.parse()?;
            let census = Census::build(&cfg, set.members().iter().cloned());
            let id = census.information_distance(&set);
            let k = census.max_conditional(&set);
            let witness = census.distance_witness(&set).map(|p| {
                json!({ "program": p.code, "expr": format!("{:?}", p.parse().expect("valid")) })
            });
            let violated = matches!((id, k), (Some(id), Some(k)) if id < k);
            Ok(Outcome::new(
                "machine id",
                json!({
                    "multiset": set.to_string(),
                    "id": id,
                    "max_conditional": k,
                    "witness": witness,
                    "max_program_length": cfg.max_program_length,
                }),
            )
            .violated_if(violated))
        }
        MachineCmd::Check {
            universe,
            max_len,
            sizes,
            skip_incomplete,
        } => {
            let sets: Vec<StringMultiset> = match (universe, max_len) {
                (Some(path), _) => {
                    let file: UniverseFile = serde_json::from_str(&read_to_string(&path)?)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    file.multisets
                        .into_iter()
                        .map(canonicalize)
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?
                }
                (None, Some(l)) => sizes
                    .iter()
                    .flat_map(|&n| StringMultiset::all_over(l, n))
                    .collect(),
                (None, None) => return Err("machine check needs --universe or --max-len".into()),
            };
            let total = sets.len();
            let census = Census::build(&cfg, sets.iter().flat_map(|s| s.members().iter().cloned()));
            let (complete, skipped): (Vec<_>, Vec<_>) = if skip_incomplete {
                sets.into_iter().partition(|s| census.is_complete(s))
            } else {
                (sets, Vec::new())
            };
            let report = census.theorem_check(&complete).map_err(|e| e.to_string())?;
            let mut csv = String::from("X,n,k,ID,slack\n");
            for r in &report.records {
                csv.push_str(&format!(
                    "{},{},{},{},{:.6}\n",
                    csv_field(&r.multiset.to_string()),
                    r.n,
                    r.k,
                    r.id,
                    r.slack
                ));
            }
            let records: Vec<_> = report
                .records
                .iter()
                .map(|r| {
                    json!({
                        "X": r.multiset.to_string(),
                        "n": r.n,
                        "k": r.k,
                        "f_k": r.f_k,
                        "ID": r.id,
                        "slack": r.slack,
                    })
                })
                .collect();
            Ok(Outcome::new(
                "machine check",
                json!({
                    "universe_size": total,
                    "checked": report.records.len(),
                    "skipped_incomplete": skipped.len(),
                    "max_slack": report.max_slack,
                    "max_slack_by_n": report.max_slack_by_n,
                    "lower_bound_violations": report.lower_bound_violations.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "f_below_n_minus_1": report.small_f.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "records": records,
                }),
            )
            .with_table(csv)
            .violated_if(!report.passed()))
        }
    }
}
