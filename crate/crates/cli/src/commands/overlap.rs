use clap::Subcommand;

use infodist::estimator::xor_overlap;

use super::{parse_bits, CmdResult};
use crate::report::Outcome;
use crate::Globals;

#[derive(Subcommand)]
pub enum OverlapCmd {
    /// p = x xor y, checking that p converts x to y and y to x.
    Xor {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
}

pub fn run(cmd: OverlapCmd, _g: &Globals) -> CmdResult<Outcome> {
    match cmd {
        OverlapCmd::Xor { x, y } => {
            let report =
                xor_overlap(&parse_bits(&x)?, &parse_bits(&y)?).map_err(|e| e.to_string())?;
            let passed = report.passed();
            Ok(Outcome::new("overlap xor", report).violated_if(!passed))
        }
    }
}
