//! Region crossing changes as a linear system over GF(2).
//!
//! Rows are crossings, columns are faces, and a region set realizes exactly
//! the crossings whose row has odd weight on it.

use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// A row of bits packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut r = BitRow::zeros(len);
        for i in ones {
            r.flip(i);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if self.get(i) != v {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_with(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Parity of the overlap with `other`.
    pub fn dot(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }
}

/// Crossing-by-face incidence matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    /// Crossing node index of each row, ascending.
    pub crossings: Vec<usize>,
    pub faces: usize,
    pub rows: Vec<BitRow>,
}

pub fn incidence_matrix(d: &Diagram) -> Gf2Matrix {
    let crossings = d.crossings();
    let faces = d.faces().len();
    let mut rows: Vec<BitRow> = crossings.iter().map(|_| BitRow::zeros(faces)).collect();
    let row_of: std::collections::HashMap<usize, usize> = crossings.iter().enumerate().map(|(r, &x)| (x, r)).collect();
    for (fi, f) in d.faces().iter().enumerate() {
        for x in &f.crossings {
            rows[row_of[x]].set(fi, true);
        }
    }
    Gf2Matrix { crossings, faces, rows }
}

impl Gf2Matrix {
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    pub fn row_of(&self, crossing: usize) -> Option<usize> {
        self.crossings.binary_search(&crossing).ok()
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self, &BitRow::zeros(self.rows.len()), None).pivots.len()
    }

    /// Crossings (node indices) flipped by the region set.
    pub fn effect(&self, regions: &[usize]) -> Vec<usize> {
        let r = BitRow::from_indices(self.faces, regions.iter().copied());
        (0..self.rows.len()).filter(|&i| self.rows[i].dot(&r)).map(|i| self.crossings[i]).collect()
    }

    fn target_row(&self, target: &[usize]) -> BitRow {
        let mut t = BitRow::zeros(self.rows.len());
        for &x in target {
            t.flip(self.row_of(x).expect("checked target"));
        }
        t
    }

    fn check(&self, xs: &[usize], d: Option<&Diagram>) -> Result<()> {
        for &x in xs {
            if self.row_of(x).is_none() {
                let id = d.map_or_else(|| format!("#{x}"), |d| d.node(x).id.clone());
                return Err(Error::UnknownCrossing(id));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Face indices to apply, and the don't-care crossings they also flip.
    Sat { regions: Vec<usize>, induced: Vec<usize> },
    /// Crossings whose rows sum to zero while the target meets them an odd number of times.
    Unsat { certificate: Vec<usize> },
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat { .. })
    }

    pub fn regions(&self) -> Option<&[usize]> {
        match self {
            SolveOutcome::Sat { regions, .. } => Some(regions),
            SolveOutcome::Unsat { .. } => None,
        }
    }
}

/// Reduced row echelon form of the augmented system, tracking which original
/// rows were combined into each reduced row.
struct Echelon {
    rows: Vec<BitRow>,
    rhs: Vec<bool>,
    combo: Vec<BitRow>,
    /// (row, column) of each pivot, columns ascending.
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    fn new(m: &Gf2Matrix, target: &BitRow, only: Option<&[usize]>) -> Echelon {
        let keep: Vec<usize> = match only {
            Some(rs) => rs.to_vec(),
            None => (0..m.rows.len()).collect(),
        };
        let mut rows: Vec<BitRow> = keep.iter().map(|&r| m.rows[r].clone()).collect();
        let mut rhs: Vec<bool> = keep.iter().map(|&r| target.get(r)).collect();
        let mut combo: Vec<BitRow> = keep.iter().map(|&r| BitRow::from_indices(m.rows.len(), [r])).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.faces {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else { continue };
            rows.swap(next, p);
            rhs.swap(next, p);
            combo.swap(next, p);
            for r in 0..rows.len() {
                if r != next && rows[r].get(col) {
                    let (pr, pc, pb) = (rows[next].clone(), combo[next].clone(), rhs[next]);
                    rows[r].xor_with(&pr);
                    combo[r].xor_with(&pc);
                    rhs[r] ^= pb;
                }
            }
            pivots.push((next, col));
            next += 1;
        }
        Echelon { rows, rhs, combo, pivots }
    }

    fn solve(&self, m: &Gf2Matrix) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let rank = self.pivots.len();
        if let Some(r) = (rank..self.rows.len()).find(|&r| self.rhs[r]) {
            return Err(self.combo[r].ones().into_iter().map(|i| m.crossings[i]).collect());
        }
        let mut cols: Vec<usize> = self.pivots.iter().filter(|&&(r, _)| self.rhs[r]).map(|&(_, c)| c).collect();
        cols.sort();
        Ok(cols)
    }

    fn kernel(&self, faces: usize) -> Vec<Vec<usize>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|&(_, c)| c).collect();
        (0..faces)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut v = vec![free];
                for &(r, c) in &self.pivots {
                    if self.rows[r].get(free) {
                        v.push(c);
                    }
                }
                v.sort();
                v
            })
            .collect()
    }
}

/// Region set changing exactly `target` (crossing node indices).
pub fn solve(m: &Gf2Matrix, target: &[usize]) -> Result<SolveOutcome> {
    m.check(target, None)?;
    let e = Echelon::new(m, &m.target_row(target), None);
    Ok(match e.solve(m) {
        Ok(regions) => SolveOutcome::Sat { regions, induced: Vec::new() },
        Err(certificate) => SolveOutcome::Unsat { certificate },
    })
}

/// Like [`solve`], constraining only the rows in `care`; the outcome on the
/// other crossings is reported as `induced`.
pub fn solve_with_dont_care(m: &Gf2Matrix, target: &[usize], care: &[usize]) -> Result<SolveOutcome> {
    m.check(target, None)?;
    m.check(care, None)?;
    let mut care_rows: Vec<usize> = care.iter().map(|&x| m.row_of(x).unwrap()).collect();
    care_rows.sort();
    care_rows.dedup();
    let t: Vec<usize> = target.iter().copied().filter(|x| care.contains(x)).collect();
    let e = Echelon::new(m, &m.target_row(&t), Some(&care_rows));
    Ok(match e.solve(m) {
        Ok(regions) => {
            let induced = m.effect(&regions).into_iter().filter(|x| !care.contains(x)).collect();
            SolveOutcome::Sat { regions, induced }
        }
        Err(certificate) => SolveOutcome::Unsat { certificate },
    })
}

/// A basis of region sets that change no crossing.
pub fn kernel_basis(m: &Gf2Matrix) -> Vec<Vec<usize>> {
    Echelon::new(m, &BitRow::zeros(m.rows.len()), None).kernel(m.faces)
}

/// The lightest region set equivalent to `regions` modulo the kernel; the
/// search is exhaustive, so it is refused above 20 kernel dimensions.
pub fn min_weight(m: &Gf2Matrix, regions: &[usize]) -> Result<Vec<usize>> {
    let basis: Vec<BitRow> = kernel_basis(m).into_iter().map(|v| BitRow::from_indices(m.faces, v)).collect();
    if basis.len() > 20 {
        return Err(Error::TooLarge(format!("kernel dimension {} exceeds 20", basis.len())));
    }
    let mut cur = BitRow::from_indices(m.faces, regions.iter().copied());
    let mut best = cur.clone();
    // Gray code walk over all kernel combinations
    for i in 1u64..(1u64 << basis.len()) {
        cur.xor_with(&basis[i.trailing_zeros() as usize]);
        if cur.count_ones() < best.count_ones() {
            best = cur.clone();
        }
    }
    Ok(best.ones())
}

/// Crossing node indices from ids.
pub fn crossings_by_id(d: &Diagram, ids: &[impl AsRef<str>]) -> Result<Vec<usize>> {
    let mut v: Vec<usize> = ids.iter().map(|s| d.crossing_index(s.as_ref())).collect::<Result<_>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_rows() {
        let mut a = BitRow::from_indices(130, [0, 64, 129]);
        assert!(a.get(129) && !a.get(128));
        assert_eq!(a.count_ones(), 3);
        a.xor_with(&BitRow::from_indices(130, [64]));
        assert_eq!(a.ones(), vec![0, 129]);
        assert!(a.dot(&BitRow::from_indices(130, [0])));
        assert!(!a.dot(&BitRow::from_indices(130, [0, 129])));
    }

    fn matrix(rows: &[&[usize]], faces: usize) -> Gf2Matrix {
        Gf2Matrix {
            crossings: (0..rows.len()).collect(),
            faces,
            rows: rows.iter().map(|r| BitRow::from_indices(faces, r.iter().copied())).collect(),
        }
    }

    #[test]
    fn unsat_certificate_sums_to_zero() {
        let m = matrix(&[&[0, 1], &[0, 1], &[1]], 2);
        let SolveOutcome::Unsat { certificate } = solve(&m, &[0]).unwrap() else { panic!() };
        let mut sum = BitRow::zeros(2);
        for &x in &certificate {
            sum.xor_with(&m.rows[x]);
        }
        assert!(sum.is_zero());
        assert_eq!(certificate.iter().filter(|&&x| x == 0).count(), 1);
    }

    #[test]
    fn min_weight_prefers_fewer_faces() {
        let m = matrix(&[&[0, 1, 2]], 3);
        assert_eq!(min_weight(&m, &[0, 1, 2]).unwrap().len(), 1);
    }
}
