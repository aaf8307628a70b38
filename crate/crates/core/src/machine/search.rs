//! Exhaustive searches over the toy machine's programs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{run_expr, Expr, MachineConfig, Program, RunResult};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::multiset::StringMultiset;

/// All valid programs of length ≤ `max_len`, parsed, in canonical order.
pub fn valid_programs(max_len: usize) -> Vec<(Program, Expr)> {
    (0..=max_len)
        .flat_map(|len| {
            let mut batch: Vec<(Program, Expr)> = (0..1u64 << len)
                .into_par_iter()
                .filter_map(|v| {
                    let p = Program::new(BitString::from_uint(v, len));
                    p.parse().ok().map(|e| (p, e))
                })
                .collect();
            batch.sort_by(|a, b| a.0.cmp(&b.0));
            batch
        })
        .collect()
}

fn check_k(k: usize, cfg: &MachineConfig) -> Result<()> {
    if k > cfg.max_program_length {
        return Err(Error::Config(format!(
            "k = {k} exceeds max_program_length = {}",
            cfg.max_program_length
        )));
    }
    Ok(())
}

fn halts_somewhere(expr: &Expr, cfg: &MachineConfig) -> bool {
    cfg.input_universe
        .iter()
        .any(|x| run_expr(expr, x, cfg.step_budget).halted())
}

/// `P(k)`: valid programs of length ≤ k that halt within the step budget on
/// at least one input of `cfg.input_universe`.
pub fn enumerate_halting(k: usize, cfg: &MachineConfig) -> Result<BTreeSet<Program>> {
    check_k(k, cfg)?;
    Ok(valid_programs(k)
        .into_par_iter()
        .filter(|(_, e)| halts_somewhere(e, cfg))
        .map(|(p, _)| p)
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// `f(k) = |P(k)|`.
pub fn f(k: usize, cfg: &MachineConfig) -> Result<usize> {
    enumerate_halting(k, cfg).map(|s| s.len())
}

/// `f(0), f(1), .., f(cfg.max_program_length)` from a single enumeration.
pub fn f_table(cfg: &MachineConfig) -> Vec<usize> {
    let mut counts = vec![0usize; cfg.max_program_length + 1];
    for (p, e) in valid_programs(cfg.max_program_length) {
        if halts_somewhere(&e, cfg) {
            counts[p.len()] += 1;
        }
    }
    counts
        .iter()
        .scan(0, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

/// Length of the first program (in canonical order) accepted by `accept`.
fn shortest(cfg: &MachineConfig, accept: impl Fn(&Expr) -> bool) -> Option<usize> {
    BitString::all_up_to(cfg.max_program_length).find_map(|code| {
        let p = Program::new(code);
        let e = p.parse().ok()?;
        accept(&e).then_some(p.len())
    })
}

/// `K_M(X|x)`: length of a shortest program that outputs `encode(X)` on `x`.
pub fn conditional_complexity(
    set: &StringMultiset,
    x: &BitString,
    cfg: &MachineConfig,
) -> Option<usize> {
    let target = RunResult::Halted(set.encode());
    shortest(cfg, |e| run_expr(e, x, cfg.step_budget) == target)
}

/// `max over x in X of K_M(X|x)`; absent if any member's value is absent.
pub fn max_conditional(set: &StringMultiset, cfg: &MachineConfig) -> Option<usize> {
    set.distinct()
        .map(|x| conditional_complexity(set, x, cfg))
        .try_fold(0, |acc, k| k.map(|k| acc.max(k)))
}

/// `ID_M(X)`: length of a shortest single program that outputs `encode(X)`
/// on every member of `X`.
pub fn information_distance_exact(set: &StringMultiset, cfg: &MachineConfig) -> Option<usize> {
    let target = RunResult::Halted(set.encode());
    let members: Vec<&BitString> = set.distinct().collect();
    shortest(cfg, |e| {
        members
            .iter()
            .all(|x| run_expr(e, x, cfg.step_budget) == target)
    })
}

/// Precomputed outputs of every valid program on a fixed set of inputs.
///
/// Programs are indexed in canonical order, so the smallest index in any
/// candidate list is also a shortest program.
pub struct Census {
    cfg: MachineConfig,
    programs: Vec<Program>,
    halting: Vec<bool>,
    input_index: HashMap<BitString, usize>,
    by_output: HashMap<(usize, BitString), Vec<u32>>,
}

impl Census {
    /// Runs every valid program on `cfg.input_universe` plus `extra_inputs`.
    pub fn build(cfg: &MachineConfig, extra_inputs: impl IntoIterator<Item = BitString>) -> Self {
        let mut inputs: Vec<BitString> = cfg.input_universe.clone();
        inputs.extend(extra_inputs);
        inputs.sort();
        inputs.dedup();
        let input_index: HashMap<BitString, usize> = inputs
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        let probe: Vec<usize> = cfg.input_universe.iter().map(|x| input_index[x]).collect();

        let parsed = valid_programs(cfg.max_program_length);
        let results: Vec<Vec<RunResult>> = parsed
            .par_iter()
            .map(|(_, e)| {
                inputs
                    .iter()
                    .map(|x| run_expr(e, x, cfg.step_budget))
                    .collect()
            })
            .collect();

        let mut by_output: HashMap<(usize, BitString), Vec<u32>> = HashMap::new();
        let mut halting = Vec::with_capacity(parsed.len());
        for (pi, outs) in results.into_iter().enumerate() {
            halting.push(probe.iter().any(|&i| outs[i].halted()));
            for (xi, out) in outs.into_iter().enumerate() {
                if let RunResult::Halted(o) = out {
                    by_output.entry((xi, o)).or_default().push(pi as u32);
                }
            }
        }
        Self {
            cfg: cfg.clone(),
            programs: parsed.into_iter().map(|(p, _)| p).collect(),
            halting,
            input_index,
            by_output,
        }
    }

    pub fn config(&self) -> &MachineConfig {
        &self.cfg
    }

    /// Valid programs up to the configured length, canonical order.
    pub fn programs(&self) -> &[Program] {
        &self.programs
    }

    pub fn halting_programs(&self, k: usize) -> impl Iterator<Item = &Program> {
        self.programs
            .iter()
            .zip(&self.halting)
            .filter(move |(p, &h)| h && p.len() <= k)
            .map(|(p, _)| p)
    }

    pub fn f(&self, k: usize) -> usize {
        self.halting_programs(k).count()
    }

    fn candidates(&self, set: &StringMultiset, x: &BitString) -> Option<&[u32]> {
        let xi = *self.input_index.get(x)?;
        self.by_output.get(&(xi, set.encode())).map(Vec::as_slice)
    }

    pub fn conditional_complexity(&self, set: &StringMultiset, x: &BitString) -> Option<usize> {
        if !self.input_index.contains_key(x) {
            return conditional_complexity(set, x, &self.cfg);
        }
        self.candidates(set, x)
            .map(|c| self.programs[c[0] as usize].len())
    }

    pub fn max_conditional(&self, set: &StringMultiset) -> Option<usize> {
        set.distinct()
            .map(|x| self.conditional_complexity(set, x))
            .try_fold(0, |acc, k| k.map(|k| acc.max(k)))
    }

    pub fn information_distance(&self, set: &StringMultiset) -> Option<usize> {
        if set.distinct().any(|x| !self.input_index.contains_key(x)) {
            return information_distance_exact(set, &self.cfg);
        }
        let mut lists = set
            .distinct()
            .map(|x| self.candidates(set, x))
            .collect::<Option<Vec<_>>>()?;
        lists.sort_by_key(|l| l.len());
        let (first, rest) = lists.split_first()?;
        first
            .iter()
            .find(|pi| rest.iter().all(|l| l.binary_search(pi).is_ok()))
            .map(|&pi| self.programs[pi as usize].len())
    }

    /// A shortest program witnessing `ID_M(X)`, if one exists in range.
    pub fn distance_witness(&self, set: &StringMultiset) -> Option<&Program> {
        let len = self.information_distance(set)?;
        let target = RunResult::Halted(set.encode());
        self.programs.iter().filter(|p| p.len() == len).find(|p| {
            let e = p.parse().expect("census holds valid programs");
            set.distinct()
                .all(|x| run_expr(&e, x, self.cfg.step_budget) == target)
        })
    }

    pub fn is_complete(&self, set: &StringMultiset) -> bool {
        self.max_conditional(set).is_some() && self.information_distance(set).is_some()
    }

    pub fn theorem_check(&self, universe: &[StringMultiset]) -> Result<TheoremReport> {
        let mut records = Vec::with_capacity(universe.len());
        for set in universe {
            let (Some(k), Some(id)) = (self.max_conditional(set), self.information_distance(set))
            else {
                return Err(Error::IncompleteSearch(format!(
                    "{set}: no witness within {} bits",
                    self.cfg.max_program_length
                )));
            };
            let n = set.cardinality();
            records.push(TheoremRecord {
                multiset: set.clone(),
                n,
                k,
                f_k: self.f(k),
                id,
                slack: id as f64 - k as f64 - (n as f64).log2(),
            });
        }
        Ok(TheoremReport::from_records(records))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremRecord {
    pub multiset: StringMultiset,
    pub n: usize,
    /// `max over x in X of K_M(X|x)`.
    pub k: usize,
    pub f_k: usize,
    pub id: usize,
    /// `ID_M(X) - k - log2 n`.
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub records: Vec<TheoremRecord>,
    /// Corpus constant `c_M`: the largest slack seen.
    pub max_slack: f64,
    pub max_slack_by_n: BTreeMap<usize, f64>,
    /// Multisets with `ID_M(X) < k`. Always empty for a correct search.
    pub lower_bound_violations: Vec<StringMultiset>,
    /// Multisets whose `f(k) < n - 1`.
    pub small_f: Vec<StringMultiset>,
}

impl TheoremReport {
    fn from_records(records: Vec<TheoremRecord>) -> Self {
        let mut max_slack_by_n: BTreeMap<usize, f64> = BTreeMap::new();
        for r in &records {
            let e = max_slack_by_n.entry(r.n).or_insert(f64::NEG_INFINITY);
            *e = e.max(r.slack);
        }
        Self {
            max_slack: records
                .iter()
                .map(|r| r.slack)
                .fold(f64::NEG_INFINITY, f64::max),
            max_slack_by_n,
            lower_bound_violations: records
                .iter()
                .filter(|r| r.id < r.k)
                .map(|r| r.multiset.clone())
                .collect(),
            small_f: records
                .iter()
                .filter(|r| r.f_k + 1 < r.n)
                .map(|r| r.multiset.clone())
                .collect(),
            records,
        }
    }

    pub fn passed(&self) -> bool {
        self.lower_bound_violations.is_empty()
    }
}

/// Check `k ≤ ID_M(X)` and measure `ID_M(X) - k - log n` over `universe`.
/// Every multiset must have both quantities within the search limits.
pub fn theorem_check(universe: &[StringMultiset], cfg: &MachineConfig) -> Result<TheoremReport> {
    let extras: Vec<BitString> = universe
        .iter()
        .flat_map(|s| s.members().iter().cloned())
        .collect();
    Census::build(cfg, extras).theorem_check(universe)
}
