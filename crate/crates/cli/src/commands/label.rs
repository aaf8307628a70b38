use std::path::PathBuf;

use clap::{Args, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use infodist::labeling::generate::{random_instance, RandomParams};
use infodist::labeling::{
    greedy_label, label_bound, min_labels_oracle, verify_conditions, Instance, InstanceFile,
    Labeling, ORACLE_MAX_VERTICES,
};

use super::{read_to_string, CmdResult};
use crate::report::Outcome;
use crate::Globals;

#[derive(Subcommand)]
pub enum LabelCmd {
    /// Greedy-label an instance (or a seeded random suite) and verify it.
    Run {
        #[command(flatten)]
        source: Source,
        /// Number of random instances in the suite (with --random).
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Verify a labeling (CSV index,label) against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
    },
    /// The label count bound n*f - (n-1).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: usize,
    },
    /// Compare the brute-force minimum, greedy and the bound.
    Oracle {
        #[command(flatten)]
        source: Source,
        /// Number of random instances to compare (with --random).
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Args)]
pub struct Source {
    /// Instance JSON {"n": .., "multisets": [[..], ..]}.
    #[arg(long, conflicts_with = "random")]
    instance: Option<PathBuf>,
    /// Generate seeded random instances instead.
    #[arg(long)]
    random: bool,
    /// Cardinality for random instances (random in 2..=5 if omitted).
    #[arg(long)]
    n: Option<usize>,
    /// Maximum element degree for random instances (random in 1..=6 if omitted).
    #[arg(long)]
    f: Option<usize>,
    /// Maximum number of multisets for random instances.
    #[arg(long, default_value_t = 200)]
    sets: usize,
}

impl Source {
    fn instances(&self, seed: u64, count: usize) -> CmdResult<Vec<Instance>> {
        if let Some(path) = &self.instance {
            let file: InstanceFile = serde_json::from_str(&read_to_string(path)?)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            return Ok(vec![file.into_instance().map_err(|e| e.to_string())?]);
        }
        if !self.random {
            return Err("give --instance PATH or --random".into());
        }
        if self.n.is_some_and(|n| n < 2) || self.f == Some(0) || self.sets == 0 {
            return Err("random instances need n >= 2, f >= 1, sets >= 1".into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..count)
            .map(|_| {
                let params = RandomParams {
                    n: self.n.unwrap_or_else(|| rng.gen_range(2..=5)),
                    f_cap: self.f.unwrap_or_else(|| rng.gen_range(1..=6)),
                    sets: rng.gen_range(1..=self.sets),
                };
                random_instance(&mut rng, params)
            })
            .collect())
    }
}

pub fn run(cmd: LabelCmd, g: &Globals) -> CmdResult<Outcome> {
    match cmd {
        LabelCmd::Run { source, count } => {
            let instances = source.instances(g.seed, count)?;
            let mut rows = Vec::new();
            let mut table = String::from("instance,n,f_max,sets,distinct_labels,bound,pass\n");
            let mut violated = false;
            for (i, inst) in instances.iter().enumerate() {
                let lab = greedy_label(inst);
                let ver = verify_conditions(inst, &lab).map_err(|e| e.to_string())?;
                let bound = label_bound(inst.n(), inst.f_max()).map_err(|e| e.to_string())?;
                let distinct = lab.distinct_labels();
                violated |= !ver.pass || distinct > bound;
                table.push_str(&format!(
                    "{i},{},{},{},{distinct},{bound},{}\n",
                    inst.n(),
                    inst.f_max(),
                    inst.v1().len(),
                    ver.pass
                ));
                rows.push((lab, ver, bound, distinct));
            }
            if let [(lab, ver, bound, distinct)] = rows.as_slice() {
                Ok(Outcome::new(
                    "label run",
                    json!({
                        "labels": lab.label_of,
                        "distinct_labels": distinct,
                        "bound": bound,
                        "verification": ver,
                    }),
                )
                .with_table(lab.to_csv())
                .violated_if(violated))
            } else {
                let failures = rows
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, v, b, d))| !v.pass || d > b)
                    .map(|(i, _)| i)
                    .collect::<Vec<_>>();
                Ok(Outcome::new(
                    "label run",
                    json!({
                        "seed": g.seed,
                        "instances": rows.len(),
                        "failures": failures,
                        "max_distinct_labels": rows.iter().map(|r| r.3).max(),
                        "tight_instances": rows.iter().filter(|r| r.3 == r.2).count(),
                    }),
                )
                .with_table(table)
                .violated_if(violated))
            }
        }
        LabelCmd::Verify { instance, labeling } => {
            let file: InstanceFile = serde_json::from_str(&read_to_string(&instance)?)
                .map_err(|e| format!("{}: {e}", instance.display()))?;
            let inst = file.into_instance().map_err(|e| e.to_string())?;
            let lab = Labeling::from_csv(&read_to_string(&labeling)?).map_err(|e| e.to_string())?;
            let report = verify_conditions(&inst, &lab).map_err(|e| e.to_string())?;
            let pass = report.pass;
            Ok(Outcome::new("label verify", report).violated_if(!pass))
        }
        LabelCmd::Bound { n, f } => {
            let bound = label_bound(n, f).map_err(|e| e.to_string())?;
            Ok(Outcome::new(
                "label bound",
                json!({ "n": n, "f": f, "bound": bound }),
            ))
        }
        LabelCmd::Oracle { mut source, count } => {
            if source.random {
                source.sets = source.sets.min(ORACLE_MAX_VERTICES);
            }
            let instances = source.instances(g.seed, count)?;
            let mut table = String::from("instance,sets,oracle,greedy,bound,sandwich\n");
            let mut rows = Vec::new();
            for (i, inst) in instances.iter().enumerate() {
                let oracle = min_labels_oracle(inst).map_err(|e| e.to_string())?;
                let greedy = greedy_label(inst).distinct_labels();
                let bound = label_bound(inst.n(), inst.f_max()).map_err(|e| e.to_string())?;
                let ok = oracle <= greedy && greedy <= bound;
                table.push_str(&format!(
                    "{i},{},{oracle},{greedy},{bound},{ok}\n",
                    inst.v1().len()
                ));
                rows.push(
                    json!({ "oracle": oracle, "greedy": greedy, "bound": bound, "sandwich": ok }),
                );
            }
            let violated = rows.iter().any(|r| r["sandwich"] == false);
            let body = if rows.len() == 1 {
                rows.pop().unwrap()
            } else {
                json!({ "seed": g.seed, "instances": rows })
            };
            Ok(Outcome::new("label oracle", body)
                .with_table(table)
                .violated_if(violated))
        }
    }
}
