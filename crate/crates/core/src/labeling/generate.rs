//! Instance generators: seeded random families and greedy-extremal trees.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{build_graph, Instance};
use crate::bits::BitString;
use crate::multiset::{canonicalize, StringMultiset};

#[derive(Debug, Clone, Copy)]
pub struct RandomParams {
    pub n: usize,
    /// Upper limit on any element's degree.
    pub f_cap: usize,
    /// Target number of multisets; fewer are produced if the pool saturates.
    pub sets: usize,
}

/// Random instance with cardinality `n`, element degrees ≤ `f_cap` and up to
/// `sets` multisets. The element pool is sized so that degrees fill up and
/// conflicts are common; repeated members occur naturally.
pub fn random_instance<R: Rng>(rng: &mut R, params: RandomParams) -> Instance {
    let RandomParams { n, f_cap, sets } = params;
    assert!(n >= 2 && f_cap >= 1 && sets >= 1);
    let pool_size = (sets * n).div_ceil(f_cap).max(n + 1);
    let width = usize::BITS as usize - pool_size.leading_zeros() as usize;
    let pool: Vec<BitString> = (0..pool_size)
        .map(|i| BitString::from_uint(i as u64, width))
        .collect();
    let mut degree = vec![0usize; pool_size];
    let mut seen: HashSet<StringMultiset> = HashSet::new();
    let mut out = Vec::with_capacity(sets);

    let mut attempts = 0;
    while out.len() < sets && attempts < sets * 20 {
        attempts += 1;
        let open: Vec<usize> = (0..pool_size).filter(|&i| degree[i] < f_cap).collect();
        if open.is_empty() {
            break;
        }
        let picks: Vec<usize> = (0..n).map(|_| *open.choose(rng).unwrap()).collect();
        let set = canonicalize(picks.iter().map(|&i| pool[i].clone())).unwrap();
        if !seen.insert(set.clone()) {
            continue;
        }
        let mut distinct = picks;
        distinct.sort_unstable();
        distinct.dedup();
        distinct.iter().for_each(|&i| degree[i] += 1);
        out.push(set);
    }
    build_graph(out).expect("generator emits uniform, duplicate-free sets")
}

/// An instance on which greedy uses exactly `n·f − (n − 1)` labels, or
/// `None` if it would need more than `max_sets` multisets.
///
/// The last multiset `R` has `n` elements, each shared with `f − 1` earlier
/// multisets carrying labels `0..n(f−1)` block by block. A multiset forced to
/// label `t` gets its lower labels from earlier siblings on the shared
/// element and from `⌊t/(f−1)⌋` blocks of its own children, built the same
/// way and placed first in enumeration order.
pub fn extremal_instance(n: usize, f: usize, max_sets: usize) -> Option<Instance> {
    assert!(n >= 2 && f >= 1);
    struct Builder {
        n: usize,
        per_block: usize,
        next_element: u64,
        sets: Vec<Vec<u64>>,
        max_sets: usize,
    }
    impl Builder {
        fn fresh(&mut self) -> u64 {
            self.next_element += 1;
            self.next_element - 1
        }

        fn build(&mut self, label: usize, shared: Option<u64>) -> Option<()> {
            let blocks = match shared {
                None => self.n,
                Some(_) if self.per_block == 0 => 0,
                Some(_) => label / self.per_block,
            };
            let mut elements: Vec<u64> = shared.into_iter().collect();
            for block in 0..blocks {
                let e = self.fresh();
                elements.push(e);
                for r in 0..self.per_block {
                    self.build(block * self.per_block + r, Some(e))?;
                }
            }
            while elements.len() < self.n {
                let e = self.fresh();
                elements.push(e);
            }
            if self.sets.len() >= self.max_sets {
                return None;
            }
            self.sets.push(elements);
            Some(())
        }
    }
    let mut b = Builder {
        n,
        per_block: f - 1,
        next_element: 0,
        sets: Vec::new(),
        max_sets,
    };
    b.build(n * (f - 1), None)?;
    let width = (64 - b.next_element.leading_zeros() as usize).max(1);
    let sets = b
        .sets
        .into_iter()
        .map(|els| canonicalize(els.into_iter().map(|e| BitString::from_uint(e, width))).unwrap())
        .collect();
    Some(build_graph(sets).expect("fresh elements keep sets distinct"))
}
