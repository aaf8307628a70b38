//! A deterministic toy prefix machine `M(p, x)` small enough to search
//! exhaustively.
//!
//! Programs are drawn from the prefix-free grammar in [`program`]; every run
//! is bounded by an explicit step budget. Exact brute-force quantities
//! (halting sets, `f(k)`, conditional complexity, information distance) live
//! in [`search`].

pub mod program;
pub mod search;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::multiset::{canonicalize, encode_multiset};

pub use program::{Expr, Program};
pub use search::{
    conditional_complexity, enumerate_halting, f, f_table, information_distance_exact,
    max_conditional, theorem_check, Census, TheoremRecord, TheoremReport,
};

/// Explicit search limits. Nothing here has a silent default.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineConfig {
    pub step_budget: u64,
    pub max_program_length: usize,
    pub input_universe: Vec<BitString>,
}

impl MachineConfig {
    pub fn new(
        step_budget: u64,
        max_program_length: usize,
        input_universe: Vec<BitString>,
    ) -> Result<Self> {
        let cfg = Self {
            step_budget,
            max_program_length,
            input_universe,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.step_budget == 0 {
            return Err(Error::Config("step_budget must be at least 1".into()));
        }
        if self.max_program_length == 0 {
            return Err(Error::Config(
                "max_program_length must be at least 1".into(),
            ));
        }
        if self.max_program_length > 30 {
            return Err(Error::Config(format!(
                "max_program_length {} is beyond exhaustive reach (limit 30)",
                self.max_program_length
            )));
        }
        if self.input_universe.is_empty() {
            return Err(Error::Config("input_universe is empty".into()));
        }
        let mut seen = self.input_universe.clone();
        seen.sort();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("input_universe repeats {}", w[0])));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RunResult {
    Halted(BitString),
    Exhausted,
    Invalid,
}

impl RunResult {
    pub fn output(&self) -> Option<&BitString> {
        match self {
            RunResult::Halted(out) => Some(out),
            _ => None,
        }
    }

    pub fn halted(&self) -> bool {
        matches!(self, RunResult::Halted(_))
    }
}

struct OutOfSteps;

struct Interpreter<'a> {
    input: &'a BitString,
    steps_left: u64,
}

impl Interpreter<'_> {
    fn tick(&mut self, n: u64) -> Result<(), OutOfSteps> {
        if self.steps_left < n {
            self.steps_left = 0;
            return Err(OutOfSteps);
        }
        self.steps_left -= n;
        Ok(())
    }

    fn eval(&mut self, e: &Expr) -> Result<BitString, OutOfSteps> {
        self.tick(1)?;
        let x = self.input;
        match e {
            Expr::Input => Ok(x.clone()),
            Expr::Literal(s) => {
                self.tick(s.len() as u64)?;
                Ok(s.clone())
            }
            Expr::Xor(s) => {
                self.tick(x.len() as u64)?;
                if s.is_empty() {
                    return Ok(x.clone());
                }
                Ok(x.bits()
                    .iter()
                    .zip(s.bits().iter().cycle())
                    .map(|(a, b)| a ^ b)
                    .collect())
            }
            Expr::Pair(a, b) => {
                let va = self.eval(a)?;
                let vb = self.eval(b)?;
                Ok(bag_output([va, vb]))
            }
            Expr::Bag(items) => {
                let vals = items
                    .iter()
                    .map(|i| self.eval(i))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(bag_output(vals))
            }
            Expr::Scan(pattern) => self.scan(pattern),
        }
    }

    /// One step per stream position examined. Diverges when the pattern
    /// never occurs in the cyclic stream, e.g. on empty input.
    fn scan(&mut self, pattern: &BitString) -> Result<BitString, OutOfSteps> {
        if pattern.is_empty() {
            return Ok(BitString::new());
        }
        let x = self.input.bits();
        let p = pattern.bits();
        let mut pos = 0usize;
        loop {
            self.tick(1)?;
            let hit = !x.is_empty()
                && p.iter()
                    .enumerate()
                    .all(|(j, &b)| x[(pos + j) % x.len()] == b);
            if hit {
                return Ok((0..pos).map(|i| x[i % x.len()]).collect());
            }
            pos += 1;
        }
    }
}

fn bag_output(vals: impl IntoIterator<Item = BitString>) -> BitString {
    encode_multiset(&canonicalize(vals).expect("bag operands number at least two"))
}

/// Run program `p` on input `x` within `cfg.step_budget` steps.
pub fn run(p: &Program, x: &BitString, cfg: &MachineConfig) -> RunResult {
    match p.parse() {
        Ok(expr) => run_expr(&expr, x, cfg.step_budget),
        Err(_) => RunResult::Invalid,
    }
}

/// Evaluate an already-parsed program.
pub fn run_expr(expr: &Expr, x: &BitString, step_budget: u64) -> RunResult {
    let mut interp = Interpreter {
        input: x,
        steps_left: step_budget,
    };
    match interp.eval(expr) {
        Ok(out) => RunResult::Halted(out),
        Err(OutOfSteps) => RunResult::Exhausted,
    }
}

/// Number of steps a run takes, or `None` if it does not finish within
/// `limit` steps.
pub fn steps_used(expr: &Expr, x: &BitString, limit: u64) -> Option<u64> {
    let mut interp = Interpreter {
        input: x,
        steps_left: limit,
    };
    interp.eval(expr).ok().map(|_| limit - interp.steps_left)
}
