//! The bipartite multiset/element graph and its edge labelings.
//!
//! `V1` holds the multisets in enumeration order, `V2` their distinct
//! elements, and an edge joins `y` to `Y` whenever `y ∈ Y`. A labeling gives
//! one label per `V1` vertex, so all edges at a multiset agree (condition
//! (i)); it is valid when no element touches two multisets with the same
//! label (condition (ii)). An element together with a label then pins down
//! a single multiset.

pub mod generate;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::multiset::{canonicalize, StringMultiset};

/// Exhaustive search guard for [`min_labels_oracle`].
pub const ORACLE_MAX_VERTICES: usize = 8;

#[derive(Debug, Clone)]
pub struct Instance {
    v1: Vec<StringMultiset>,
    /// element -> indices of the multisets containing it, ascending
    incidence: BTreeMap<BitString, Vec<usize>>,
    n: usize,
    f_max: usize,
}

impl Instance {
    pub fn v1(&self) -> &[StringMultiset] {
        &self.v1
    }

    pub fn v2(&self) -> impl Iterator<Item = &BitString> {
        self.incidence.keys()
    }

    /// Edges `(y, i)` with `y ∈ v1[i]`, repeats collapsed.
    pub fn edges(&self) -> impl Iterator<Item = (&BitString, usize)> {
        self.incidence
            .iter()
            .flat_map(|(y, ids)| ids.iter().map(move |&i| (y, i)))
    }

    pub fn edge_count(&self) -> usize {
        self.incidence.values().map(Vec::len).sum()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f_max(&self) -> usize {
        self.f_max
    }

    pub fn degree(&self, y: &BitString) -> usize {
        self.incidence.get(y).map_or(0, Vec::len)
    }

    pub fn incident(&self, y: &BitString) -> Option<&[usize]> {
        self.incidence.get(y).map(Vec::as_slice)
    }

    /// Indices of the multisets sharing at least one element with `v1[i]`.
    pub fn neighbors(&self, i: usize) -> BTreeSet<usize> {
        self.v1[i]
            .distinct()
            .flat_map(|y| self.incidence[y].iter().copied())
            .filter(|&j| j != i)
            .collect()
    }

    /// Adjacency matrix of the conflict graph on `V1`.
    pub fn conflict_matrix(&self) -> Vec<Vec<bool>> {
        let m = self.v1.len();
        let mut adj = vec![vec![false; m]; m];
        for ids in self.incidence.values() {
            for &a in ids {
                for &b in ids {
                    if a != b {
                        adj[a][b] = true;
                    }
                }
            }
        }
        adj
    }
}

/// Build the bipartite graph for a duplicate-free sequence of multisets of
/// one common cardinality.
pub fn build_graph(sets: Vec<StringMultiset>) -> Result<Instance> {
    let n = sets
        .first()
        .map(StringMultiset::cardinality)
        .ok_or_else(|| Error::Instance("no multisets".into()))?;
    let mut seen: HashMap<&StringMultiset, usize> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        if s.cardinality() != n {
            return Err(Error::Instance(format!(
                "multiset {i} has cardinality {} but the first has {n}",
                s.cardinality()
            )));
        }
        if let Some(&first) = seen.get(s) {
            return Err(Error::DuplicateMultiset { first, second: i });
        }
        seen.insert(s, i);
    }
    let mut incidence: BTreeMap<BitString, Vec<usize>> = BTreeMap::new();
    for (i, s) in sets.iter().enumerate() {
        for y in s.distinct() {
            incidence.entry(y.clone()).or_default().push(i);
        }
    }
    let f_max = incidence.values().map(Vec::len).max().unwrap_or(0);
    Ok(Instance {
        v1: sets,
        incidence,
        n,
        f_max,
    })
}

/// One label per `V1` vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub label_of: Vec<usize>,
}

impl Labeling {
    pub fn distinct_labels(&self) -> usize {
        self.label_of.iter().collect::<BTreeSet<_>>().len()
    }

    /// Assemble from `(index, label)` rows; indices must be exactly `0..len`.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, l) in pairs {
            if map.insert(i, l).is_some() {
                return Err(Error::VerificationInput(format!("index {i} labeled twice")));
            }
        }
        if let Some((pos, (&i, _))) = map.iter().enumerate().find(|(pos, (&i, _))| *pos != i) {
            return Err(Error::VerificationInput(format!(
                "labeling is partial: index {pos} missing (next present is {i})"
            )));
        }
        Ok(Self {
            label_of: map.into_values().collect(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,label\n");
        for (i, l) in self.label_of.iter().enumerate() {
            s.push_str(&format!("{i},{l}\n"));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with("index")) {
                continue;
            }
            let parsed = line.split_once(',').and_then(|(a, b)| {
                Some((
                    a.trim().parse::<usize>().ok()?,
                    b.trim().parse::<usize>().ok()?,
                ))
            });
            rows.push(parsed.ok_or_else(|| {
                Error::VerificationInput(format!("line {}: expected `index,label`", lineno + 1))
            })?);
        }
        Self::from_pairs(rows)
    }
}

/// Greedy labeling in enumeration order: each multiset takes the least
/// label not used by an earlier multiset sharing an element with it.
pub fn greedy_label(inst: &Instance) -> Labeling {
    let mut label_of: Vec<usize> = Vec::with_capacity(inst.v1.len());
    let mut forbidden: Vec<bool> = Vec::new();
    for i in 0..inst.v1.len() {
        forbidden.clear();
        for y in inst.v1[i].distinct() {
            for &j in inst.incidence[y].iter().take_while(|&&j| j < i) {
                let l = label_of[j];
                if l >= forbidden.len() {
                    forbidden.resize(l + 1, false);
                }
                forbidden[l] = true;
            }
        }
        let least = forbidden.iter().position(|f| !f).unwrap_or(forbidden.len());
        label_of.push(least);
    }
    Labeling { label_of }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictWitness {
    pub element: BitString,
    pub first: usize,
    pub second: usize,
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ConflictWitness>,
}

/// Check condition (ii). Condition (i) holds by representation.
pub fn verify_conditions(inst: &Instance, lab: &Labeling) -> Result<VerificationReport> {
    if lab.label_of.len() != inst.v1.len() {
        return Err(Error::VerificationInput(format!(
            "labeling covers {} of {} multisets",
            lab.label_of.len(),
            inst.v1.len()
        )));
    }
    for (y, ids) in &inst.incidence {
        let mut first_with: HashMap<usize, usize> = HashMap::new();
        for &i in ids {
            let label = lab.label_of[i];
            if let Some(&first) = first_with.get(&label) {
                return Ok(VerificationReport {
                    pass: false,
                    witness: Some(ConflictWitness {
                        element: y.clone(),
                        first,
                        second: i,
                        label,
                    }),
                });
            }
            first_with.insert(label, i);
        }
    }
    Ok(VerificationReport {
        pass: true,
        witness: None,
    })
}

/// `n·f − (n − 1)`: labels sufficient for greedy on any instance with
/// cardinality `n` and maximum element degree `f`.
pub fn label_bound(n: usize, f: usize) -> Result<usize> {
    if n < 2 || f < 1 {
        return Err(Error::Domain(format!(
            "label_bound needs n >= 2 and f >= 1, got n={n}, f={f}"
        )));
    }
    n.checked_mul(f)
        .map(|nf| nf - (n - 1))
        .ok_or_else(|| Error::Domain("label_bound overflow".into()))
}

/// `k + log n + log(1 − (n−1)/(n·f_k))`, in bits.
pub fn lower_bound_bits(n: usize, k: usize, f_k: usize) -> Result<f64> {
    if n < 2 || f_k < 1 {
        return Err(Error::Domain(format!(
            "need n >= 2 and f_k >= 1, got n={n}, f_k={f_k}"
        )));
    }
    let (nf, n1) = (n as f64 * f_k as f64, (n - 1) as f64);
    let inner = 1.0 - n1 / nf;
    if inner <= 0.0 {
        return Err(Error::Domain(format!("log of non-positive value {inner}")));
    }
    Ok(k as f64 + (n as f64).log2() + inner.log2())
}

/// The unique multiset containing `y` that carries label `q`.
pub fn resolve<'a>(
    inst: &'a Instance,
    lab: &Labeling,
    y: &BitString,
    q: usize,
) -> Result<&'a StringMultiset> {
    let ids = inst
        .incidence
        .get(y)
        .ok_or_else(|| Error::UnknownElement(y.to_string()))?;
    let mut hits = ids.iter().filter(|&&i| lab.label_of.get(i) == Some(&q));
    let found = hits.next().ok_or_else(|| Error::NotFound {
        element: y.to_string(),
        label: q,
    })?;
    if let Some(other) = hits.next() {
        return Err(Error::VerificationInput(format!(
            "labeling violates condition (ii): {y} meets multisets {found} and {other} with label {q}"
        )));
    }
    Ok(&inst.v1[*found])
}

/// Minimum number of labels over all valid labelings, by exhaustive search.
/// Equals the chromatic number of the conflict graph on `V1`.
pub fn min_labels_oracle(inst: &Instance) -> Result<usize> {
    let m = inst.v1.len();
    if m > ORACLE_MAX_VERTICES {
        return Err(Error::TooLarge(m, ORACLE_MAX_VERTICES));
    }
    let adj = inst.conflict_matrix();
    fn extend(adj: &[Vec<bool>], colors: &mut Vec<usize>, palette: usize) -> bool {
        let v = colors.len();
        if v == adj.len() {
            return true;
        }
        for c in 0..palette {
            if (0..v).all(|u| !adj[v][u] || colors[u] != c) {
                colors.push(c);
                if extend(adj, colors, palette) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    Ok((1..=m.max(1))
        .find(|&palette| extend(&adj, &mut Vec::with_capacity(m), palette))
        .unwrap_or(0)
        .min(m))
}

/// Instance file: `{"n": 2, "multisets": [["0", "1"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub multisets: Vec<Vec<BitString>>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        Self {
            n: inst.n,
            multisets: inst.v1.iter().map(|s| s.members().to_vec()).collect(),
        }
    }

    pub fn into_instance(self) -> Result<Instance> {
        let sets = self
            .multisets
            .into_iter()
            .map(canonicalize)
            .collect::<Result<Vec<_>>>()?;
        let inst = build_graph(sets)?;
        if inst.n != self.n {
            return Err(Error::Instance(format!(
                "declared n = {} but multisets have cardinality {}",
                self.n, inst.n
            )));
        }
        Ok(inst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;

    fn ms(items: &[&str]) -> StringMultiset {
        canonicalize(items.iter().map(|s| bs(s))).unwrap()
    }

    // a, b, c, d as distinct two-bit strings
    fn abc() -> Instance {
        build_graph(vec![ms(&["00", "01"]), ms(&["01", "10"])]).unwrap()
    }

    #[test]
    fn graph_fields() {
        let inst = abc();
        assert_eq!(
            inst.v2().cloned().collect::<Vec<_>>(),
            vec![bs("00"), bs("01"), bs("10")]
        );
        let edges: Vec<_> = inst.edges().map(|(y, i)| (y.clone(), i)).collect();
        assert_eq!(
            edges,
            vec![(bs("00"), 0), (bs("01"), 0), (bs("01"), 1), (bs("10"), 1)]
        );
        assert_eq!(inst.f_max(), 2);
        assert_eq!(inst.n(), 2);
    }

    #[test]
    fn repeated_member_gives_one_edge() {
        let inst = build_graph(vec![ms(&["0", "0"]), ms(&["0", "1"])]).unwrap();
        assert_eq!(inst.edges().filter(|(_, i)| *i == 0).count(), 1);
        assert_eq!(inst.degree(&bs("0")), 2);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            build_graph(vec![ms(&["0", "1"]), ms(&["0", "1"])]),
            Err(Error::DuplicateMultiset {
                first: 0,
                second: 1
            })
        ));
        assert!(matches!(
            build_graph(vec![ms(&["0", "1"]), ms(&["0", "1", "1"])]),
            Err(Error::Instance(_))
        ));
        assert!(build_graph(vec![]).is_err());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_label(&abc()).label_of, vec![0, 1]);
        let disjoint = build_graph(vec![ms(&["00", "01"]), ms(&["10", "11"])]).unwrap();
        assert_eq!(greedy_label(&disjoint).label_of, vec![0, 0]);
    }

    #[test]
    fn verify_examples() {
        let inst = abc();
        assert!(verify_conditions(&inst, &greedy_label(&inst)).unwrap().pass);
        let bad = Labeling {
            label_of: vec![0, 0],
        };
        let report = verify_conditions(&inst, &bad).unwrap();
        assert!(!report.pass);
        let w = report.witness.unwrap();
        assert_eq!((w.element, w.first, w.second), (bs("01"), 0, 1));
        let single = build_graph(vec![ms(&["0", "1"])]).unwrap();
        assert!(
            verify_conditions(&single, &Labeling { label_of: vec![5] })
                .unwrap()
                .pass
        );
        assert!(matches!(
            verify_conditions(&inst, &Labeling { label_of: vec![0] }),
            Err(Error::VerificationInput(_))
        ));
    }

    #[test]
    fn bound_values() {
        assert_eq!(label_bound(2, 3).unwrap(), 5);
        assert_eq!(label_bound(3, 4).unwrap(), 10);
        for n in 2..10 {
            assert_eq!(label_bound(n, 1).unwrap(), 1);
        }
        assert!(label_bound(1, 3).is_err());
        assert!(label_bound(2, 0).is_err());
    }

    #[test]
    fn lower_bound_values() {
        assert!((lower_bound_bits(2, 10, 1).unwrap() - 10.0).abs() < 1e-12);
        for f_k in 2..50 {
            assert!(lower_bound_bits(3, 7, f_k).unwrap() >= 8.0 - 1e-12);
        }
        assert!(lower_bound_bits(1, 3, 3).is_err());
        assert!(lower_bound_bits(2, 3, 0).is_err());
    }

    #[test]
    fn resolve_examples() {
        let inst = abc();
        let lab = greedy_label(&inst);
        assert_eq!(
            resolve(&inst, &lab, &bs("01"), lab.label_of[1]).unwrap(),
            &ms(&["01", "10"])
        );
        assert!(matches!(
            resolve(&inst, &lab, &bs("00"), lab.label_of[1]),
            Err(Error::NotFound { .. })
        ));
        assert!(matches!(
            resolve(&inst, &lab, &bs("11"), 0),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(min_labels_oracle(&abc()).unwrap(), 2);
        let disjoint = build_graph(vec![ms(&["00", "01"]), ms(&["10", "11"])]).unwrap();
        assert_eq!(min_labels_oracle(&disjoint).unwrap(), 1);
        // triangle {a,b},{b,c},{c,a} needs three labels
        let tri = build_graph(vec![
            ms(&["00", "01"]),
            ms(&["01", "10"]),
            ms(&["10", "00"]),
        ])
        .unwrap();
        assert_eq!(min_labels_oracle(&tri).unwrap(), 3);
        let big = build_graph(
            BitString::all_of_length(4)
                .map(|y| canonicalize([y.clone(), y]).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            min_labels_oracle(&big),
            Err(Error::TooLarge(16, 8))
        ));
    }

    #[test]
    fn greedy_can_exceed_the_minimum() {
        // conflict path {a,b}-{b,c}-{c,d}-{d,e} taken ends first
        let sets = vec![
            ms(&["000", "001"]),
            ms(&["011", "100"]),
            ms(&["001", "010"]),
            ms(&["010", "011"]),
        ];
        let inst = build_graph(sets).unwrap();
        let lab = greedy_label(&inst);
        assert_eq!(lab.label_of, vec![0, 0, 1, 2]);
        assert_eq!(min_labels_oracle(&inst).unwrap(), 2);
        assert!(verify_conditions(&inst, &lab).unwrap().pass);
    }

    #[test]
    fn csv_round_trip_and_partial() {
        let lab = Labeling {
            label_of: vec![0, 2, 1],
        };
        assert_eq!(Labeling::from_csv(&lab.to_csv()).unwrap(), lab);
        assert!(matches!(
            Labeling::from_csv("index,label\n0,1\n2,0\n"),
            Err(Error::VerificationInput(_))
        ));
    }

    #[test]
    fn instance_file_round_trip() {
        let inst = abc();
        let file = InstanceFile::from_instance(&inst);
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(json, r#"{"n":2,"multisets":[["00","01"],["01","10"]]}"#);
        let back: InstanceFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_instance().unwrap().v1(), inst.v1());
        let wrong = InstanceFile {
            n: 3,
            multisets: file.multisets,
        };
        assert!(wrong.into_instance().is_err());
    }
}
