//! Corpus-wide distance tables and their export formats.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::{ncd_multiset, ncd_pair, Compressor};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Pair,
    /// Value of the corpus multiset with each item left out in turn.
    MultisetLeaveOneOut,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
    /// Largest diagonal entry `ncd(x, x)`; zero for an ideal compressor.
    pub diagonal_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeaveOneOut {
    pub labels: Vec<String>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Distances {
    Matrix(DistanceMatrix),
    LeaveOneOut(LeaveOneOut),
}

fn check_corpus(corpus: &[(String, Vec<u8>)], min_items: usize) -> Result<()> {
    if corpus.len() < min_items {
        return Err(Error::Domain(format!(
            "corpus has {} items, need at least {min_items}",
            corpus.len()
        )));
    }
    let mut seen = HashSet::new();
    for (id, _) in corpus {
        if !seen.insert(id) {
            return Err(Error::Domain(format!("duplicate id {id:?}")));
        }
    }
    Ok(())
}

fn map_cells<T: Send>(
    count: usize,
    parallel: bool,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    if parallel {
        (0..count).into_par_iter().map(f).collect()
    } else {
        (0..count).map(f).collect()
    }
}

pub fn distance_matrix(
    corpus: &[(String, Vec<u8>)],
    c: &dyn Compressor,
    mode: Mode,
) -> Result<Distances> {
    let labels: Vec<String> = corpus.iter().map(|(id, _)| id.clone()).collect();
    let parallel = c.supports_concurrency();
    match mode {
        Mode::Pair => {
            check_corpus(corpus, 2)?;
            let m = corpus.len();
            let cells: Vec<(usize, usize)> =
                (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
            let vals = map_cells(cells.len(), parallel, |idx| {
                let (i, j) = cells[idx];
                ncd_pair(&corpus[i].1, &corpus[j].1, c).map(|r| r.value)
            });
            let mut values = vec![vec![0.0; m]; m];
            for (&(i, j), v) in cells.iter().zip(vals) {
                let v = v?;
                values[i][j] = v;
                values[j][i] = v;
            }
            let diagonal_max = (0..m)
                .map(|i| values[i][i])
                .fold(f64::NEG_INFINITY, f64::max);
            Ok(Distances::Matrix(DistanceMatrix {
                labels,
                values,
                diagonal_max,
            }))
        }
        Mode::MultisetLeaveOneOut => {
            check_corpus(corpus, 3)?;
            let values = map_cells(corpus.len(), parallel, |skip| {
                let rest: Vec<&[u8]> = corpus
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, (_, b))| b.as_slice())
                    .collect();
                ncd_multiset(&rest, c).map(|r| r.value)
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            Ok(Distances::LeaveOneOut(LeaveOneOut { labels, values }))
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl DistanceMatrix {
    pub fn is_symmetric(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, v)| *v == self.values[j][i]))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("id");
        for l in &self.labels {
            s.push(',');
            s.push_str(&csv_field(l));
        }
        s.push('\n');
        for (l, row) in self.labels.iter().zip(&self.values) {
            s.push_str(&csv_field(l));
            for v in row {
                s.push_str(&format!(",{v:.6}"));
            }
            s.push('\n');
        }
        s
    }

    /// Square PHYLIP distance matrix, relaxed names (whitespace replaced by
    /// `_`, no 10-character truncation).
    pub fn to_phylip(&self) -> String {
        let mut s = format!("{}\n", self.labels.len());
        for (l, row) in self.labels.iter().zip(&self.values) {
            let name: String = l
                .chars()
                .map(|c| if c.is_whitespace() { '_' } else { c })
                .collect();
            s.push_str(&name);
            for v in row {
                s.push_str(&format!(" {v:.6}"));
            }
            s.push('\n');
        }
        s
    }
}

impl LeaveOneOut {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("id,value\n");
        for (l, v) in self.labels.iter().zip(&self.values) {
            s.push_str(&format!("{},{v:.6}\n", csv_field(l)));
        }
        s
    }
}

/// One item per regular file, id = file name, sorted by id.
pub fn corpus_from_dir(dir: &Path) -> std::io::Result<Vec<(String, Vec<u8>)>> {
    let mut items = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            items.push((
                entry.file_name().to_string_lossy().into_owned(),
                fs::read(entry.path())?,
            ));
        }
    }
    items.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(items)
}

/// One item per non-empty line, id = `line<N>` with 1-based line numbers.
pub fn corpus_from_records(text: &str) -> Vec<(String, Vec<u8>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| (format!("line{}", i + 1), l.as_bytes().to_vec()))
        .collect()
}
