//! Exhaustive region-subset enumeration.

use std::collections::HashMap;

use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::gf2::BitRow;

pub const MAX_FACES: usize = 20;

/// A reachable crossing-change pattern and a lightest region set reaching it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Achievable {
    pub crossings: Vec<usize>,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub faces: usize,
    pub subsets: u64,
    pub rank: usize,
    /// Sorted by crossing set.
    pub achievable: Vec<Achievable>,
}

impl Enumeration {
    pub fn reaches(&self, crossings: &[usize]) -> Option<&Achievable> {
        let mut t = crossings.to_vec();
        t.sort();
        t.dedup();
        self.achievable.binary_search_by(|a| a.crossings.cmp(&t)).ok().map(|i| &self.achievable[i])
    }
}

/// Applies every region subset once (Gray code order) and collects the
/// distinct crossing patterns with their lightest witnesses.
pub fn enumerate_targets(d: &Diagram) -> Result<Enumeration> {
    let nf = d.faces().len();
    if nf > MAX_FACES {
        return Err(Error::TooLarge(format!("{nf} faces exceeds the enumeration cap of {MAX_FACES}")));
    }
    let xs = d.crossings();
    let pos: HashMap<usize, usize> = xs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let cols: Vec<BitRow> = d.faces().iter().map(|f| BitRow::from_indices(xs.len(), f.crossings.iter().map(|x| pos[x]))).collect();
    let mut best: HashMap<BitRow, u32> = HashMap::new();
    let mut cur = BitRow::zeros(xs.len());
    let mut mask: u32 = 0;
    best.insert(cur.clone(), 0);
    let subsets = 1u64 << nf;
    for i in 1..subsets {
        let f = i.trailing_zeros() as usize;
        cur.xor_with(&cols[f]);
        mask ^= 1 << f;
        best.entry(cur.clone())
            .and_modify(|m| {
                if mask.count_ones() < m.count_ones() || (mask.count_ones() == m.count_ones() && mask < *m) {
                    *m = mask;
                }
            })
            .or_insert(mask);
    }
    let mut achievable: Vec<Achievable> = best
        .into_iter()
        .map(|(v, m)| Achievable {
            crossings: v.ones().into_iter().map(|i| xs[i]).collect(),
            witness: (0..nf).filter(|&f| m >> f & 1 == 1).collect(),
        })
        .collect();
    achievable.sort_by(|a, b| a.crossings.cmp(&b.crossings));
    let rank = achievable.len().trailing_zeros() as usize;
    Ok(Enumeration { faces: nf, subsets, rank, achievable })
}
