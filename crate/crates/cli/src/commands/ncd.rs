use std::fs;
use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use serde_json::json;

use infodist::estimator::matrix::{corpus_from_dir, corpus_from_records};
use infodist::estimator::{distance_matrix, ncd_multiset, ncd_pair, Deflate, Distances, Mode};

use super::{read_to_string, CmdResult};
use crate::report::Outcome;
use crate::Globals;

#[derive(Clone, Copy, ValueEnum)]
pub enum MatrixMode {
    Pair,
    Multiset,
}

#[derive(Subcommand)]
pub enum NcdCmd {
    /// NCD of two files.
    Pair {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Multiset NCD of two or more files.
    Multiset {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Distance matrix over a corpus.
    Matrix {
        /// Directory: one item per file, id = file name.
        #[arg(long, conflicts_with = "records")]
        corpus: Option<PathBuf>,
        /// Text file: one item per non-empty line.
        #[arg(long)]
        records: Option<PathBuf>,
        /// pair: square NCD matrix. multiset: multiset NCD with each item left out.
        #[arg(long, value_enum, default_value = "pair")]
        mode: MatrixMode,
        /// Emit a PHYLIP square matrix instead of --output.
        #[arg(long)]
        phylip: bool,
    },
}

fn read_bytes(path: &Path) -> CmdResult<Vec<u8>> {
    fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn run(cmd: NcdCmd, _g: &Globals) -> CmdResult<Outcome> {
    let c = Deflate::default();
    match cmd {
        NcdCmd::Pair { x, y } => {
            let report =
                ncd_pair(&read_bytes(&x)?, &read_bytes(&y)?, &c).map_err(|e| e.to_string())?;
            Ok(Outcome::new("ncd pair", report))
        }
        NcdCmd::Multiset { files } => {
            let data = files
                .iter()
                .map(|f| read_bytes(f))
                .collect::<CmdResult<Vec<_>>>()?;
            let refs: Vec<&[u8]> = data.iter().map(Vec::as_slice).collect();
            let report = ncd_multiset(&refs, &c).map_err(|e| e.to_string())?;
            Ok(Outcome::new("ncd multiset", report))
        }
        NcdCmd::Matrix {
            corpus,
            records,
            mode,
            phylip,
        } => {
            let items = match (corpus, records) {
                (Some(dir), _) => {
                    corpus_from_dir(&dir).map_err(|e| format!("{}: {e}", dir.display()))?
                }
                (None, Some(file)) => corpus_from_records(&read_to_string(&file)?),
                (None, None) => return Err("give --corpus DIR or --records FILE".into()),
            };
            let mode = match mode {
                MatrixMode::Pair => Mode::Pair,
                MatrixMode::Multiset => Mode::MultisetLeaveOneOut,
            };
            let result = distance_matrix(&items, &c, mode).map_err(|e| e.to_string())?;
            let (table, violated) = match &result {
                Distances::Matrix(m) => {
                    let table = if phylip { m.to_phylip() } else { m.to_csv() };
                    (table, !m.is_symmetric())
                }
                Distances::LeaveOneOut(v) => (v.to_csv(), false),
            };
            let outcome = Outcome::new(
                "ncd matrix",
                json!({ "compressor": "deflate", "distances": result }),
            )
            .with_table(table)
            .violated_if(violated);
            Ok(if phylip { outcome.verbatim() } else { outcome })
        }
    }
}
