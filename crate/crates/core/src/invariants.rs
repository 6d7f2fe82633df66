//! Eulerian orientations, crossing signs, linking numbers, properness and
//! warping degrees.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::diagram::{Dart, Diagram};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerianCheck {
    pub eulerian: bool,
    pub per_component: Vec<bool>,
    /// Odd-degree vertices of each component (node indices).
    pub odd: Vec<Vec<usize>>,
}

pub fn eulerian_check(d: &Diagram) -> EulerianCheck {
    let g = d.graph();
    let mut odd = vec![Vec::new(); g.component_count];
    for &v in &g.vertices {
        if g.degree[v] % 2 == 1 {
            odd[g.vertex_component[v].unwrap()].push(v);
        }
    }
    let per_component: Vec<bool> = odd.iter().map(|o| o.is_empty()).collect();
    EulerianCheck { eulerian: per_component.iter().all(|&b| b), per_component, odd }
}

/// Direction of every strand: `true` keeps the stored direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub forward: Vec<bool>,
}

impl Orientation {
    /// Reverse every strand of one component.
    pub fn reversed_component(&self, d: &Diagram, comp: usize) -> Orientation {
        let mut o = self.clone();
        for s in d.graph().component_strands(comp) {
            o.forward[s] = !o.forward[s];
        }
        o
    }

    /// In and out degree at each vertex node.
    pub fn vertex_balance(&self, d: &Diagram) -> Vec<(usize, usize)> {
        let mut bal = vec![(0, 0); d.nodes().len()];
        for (si, s) in d.strands().iter().enumerate() {
            if let Some((a, b)) = s.ends {
                let (tail, head) = if self.forward[si] { (a, b) } else { (b, a) };
                bal[tail.node].1 += 1;
                bal[head.node].0 += 1;
            }
        }
        bal
    }
}

fn not_eulerian(d: &Diagram) -> Option<Error> {
    let check = eulerian_check(d);
    check.odd.iter().enumerate().find(|(_, o)| !o.is_empty()).map(|(c, o)| Error::NotEulerian {
        component: c,
        odd: o.iter().map(|&v| d.node(v).id.clone()).collect(),
    })
}

/// Deterministic Eulerian orientation: closed trails taken greedily in
/// canonical order; closed strands keep their stored direction.
pub fn eulerian_orientation(d: &Diagram) -> Result<Orientation> {
    orient(d, None::<&mut rand::rngs::mock::StepRng>)
}

/// A randomly chosen Eulerian orientation (random trail order and direction).
pub fn random_eulerian_orientation<R: Rng>(d: &Diagram, rng: &mut R) -> Result<Orientation> {
    orient(d, Some(rng))
}

fn orient<R: Rng>(d: &Diagram, mut rng: Option<&mut R>) -> Result<Orientation> {
    if let Some(e) = not_eulerian(d) {
        return Err(e);
    }
    let strands = d.strands();
    let mut forward = vec![true; strands.len()];
    // incidence: vertex -> (strand, this end is the stored tail)
    let mut inc: Vec<Vec<(usize, bool)>> = vec![Vec::new(); d.nodes().len()];
    for (si, s) in strands.iter().enumerate() {
        match s.ends {
            Some((a, b)) => {
                inc[a.node].push((si, true));
                inc[b.node].push((si, false));
            }
            None => {
                if let Some(r) = rng.as_deref_mut() {
                    forward[si] = r.gen();
                }
            }
        }
    }
    let mut starts: Vec<usize> = d.graph().vertices.clone();
    if let Some(r) = rng.as_deref_mut() {
        for l in inc.iter_mut() {
            l.shuffle(r);
        }
        starts.shuffle(r);
    }
    let mut used = vec![false; strands.len()];
    let mut ptr = vec![0usize; d.nodes().len()];
    for &start in &starts {
        loop {
            while ptr[start] < inc[start].len() && used[inc[start][ptr[start]].0] {
                ptr[start] += 1;
            }
            if ptr[start] == inc[start].len() {
                break;
            }
            let flip = rng.as_deref_mut().is_some_and(|r| r.gen());
            let mut trail = Vec::new();
            let mut v = start;
            loop {
                while ptr[v] < inc[v].len() && used[inc[v][ptr[v]].0] {
                    ptr[v] += 1;
                }
                if ptr[v] == inc[v].len() {
                    break;
                }
                let (si, tail_here) = inc[v][ptr[v]];
                used[si] = true;
                trail.push((si, tail_here));
                let (a, b) = strands[si].ends.unwrap();
                v = if tail_here { b.node } else { a.node };
            }
            debug_assert_eq!(v, start, "even degrees close every trail");
            for (si, tail_here) in trail {
                forward[si] = tail_here != flip;
            }
        }
    }
    Ok(Orientation { forward })
}

/// The slot through which the strand in slot pair `{s, s + 2}` leaves crossing `x`.
fn exit_slot(d: &Diagram, o: &Orientation, x: usize, s: usize) -> usize {
    let strand = d.strand_at(Dart::new(x, s));
    let leaves_s = d.departs(Dart::new(x, s)) == o.forward[strand];
    if leaves_s {
        s
    } else {
        (s + 2) % 4
    }
}

/// Sign of crossing `x`: +1 when the under strand leaves one slot
/// counterclockwise after the over strand.
pub fn crossing_sign(d: &Diagram, o: &Orientation, x: usize) -> i32 {
    let over_pair = if d.over02(x) { 0 } else { 1 };
    let over = exit_slot(d, o, x, over_pair);
    let under = exit_slot(d, o, x, over_pair + 1);
    if under == (over + 1) % 4 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    pub lk: Vec<Vec<i64>>,
}

pub fn linking_matrix(d: &Diagram, o: &Orientation) -> Result<LinkingMatrix> {
    let n = d.graph().component_count;
    let mut sum = vec![vec![0i64; n]; n];
    let mut count = vec![vec![0usize; n]; n];
    for x in d.crossings() {
        let (a, b) = d.crossing_components(x);
        if a == b {
            continue;
        }
        let s = crossing_sign(d, o, x) as i64;
        sum[a][b] += s;
        sum[b][a] += s;
        count[a][b] += 1;
        count[b][a] += 1;
    }
    for i in 0..n {
        for j in i + 1..n {
            if count[i][j] % 2 == 1 {
                return Err(Error::OddInterCrossingParity(i, j));
            }
        }
    }
    Ok(LinkingMatrix { lk: sum.into_iter().map(|r| r.into_iter().map(|v| v / 2).collect()).collect() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Properness {
    pub proper: bool,
    pub row_sums: Vec<i64>,
    /// Components whose linking row sum is odd.
    pub odd_components: Vec<usize>,
}

pub fn is_proper(m: &LinkingMatrix) -> Properness {
    let row_sums: Vec<i64> = m.lk.iter().map(|r| r.iter().sum()).collect();
    let odd_components: Vec<usize> = (0..row_sums.len()).filter(|&i| row_sums[i].rem_euclid(2) == 1).collect();
    Properness { proper: odd_components.is_empty(), row_sums, odd_components }
}

/// `w[i][j]` for `i < j`: crossings between components `i` and `j` where `j`
/// passes over. Entries with `i >= j` are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WarpingMatrix {
    pub w: Vec<Vec<usize>>,
}

impl WarpingMatrix {
    pub fn is_zero(&self) -> bool {
        self.w.iter().flatten().all(|&v| v == 0)
    }
}

/// The component passing over at crossing `x`.
pub fn over_component(d: &Diagram, x: usize) -> usize {
    let (a, b) = d.crossing_components(x);
    if d.over02(x) {
        a
    } else {
        b
    }
}

/// Non-self crossings where the later component in the order passes over.
pub fn warping_crossings(d: &Diagram) -> Vec<usize> {
    d.crossings()
        .into_iter()
        .filter(|&x| {
            let (a, b) = d.crossing_components(x);
            a != b && over_component(d, x) == a.max(b)
        })
        .collect()
}

pub fn warping_matrix(d: &Diagram) -> WarpingMatrix {
    let n = d.graph().component_count;
    let mut w = vec![vec![0; n]; n];
    for x in warping_crossings(d) {
        let (a, b) = d.crossing_components(x);
        w[a.min(b)][a.max(b)] += 1;
    }
    WarpingMatrix { w }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn theta_is_not_eulerian() {
        let d = corpus::load("theta0").unwrap();
        let c = eulerian_check(&d);
        assert!(!c.eulerian);
        assert_eq!(c.odd[0].len(), 2);
        assert!(matches!(eulerian_orientation(&d), Err(Error::NotEulerian { component: 0, .. })));
    }

    #[test]
    fn triangle_orientation_is_a_directed_cycle() {
        let d = corpus::load("linked_triangles").unwrap();
        let o = eulerian_orientation(&d).unwrap();
        for v in d.vertices() {
            assert_eq!(o.vertex_balance(&d)[v], (1, 1));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let o = random_eulerian_orientation(&d, &mut rng).unwrap();
            assert!(d.vertices().iter().all(|&v| o.vertex_balance(&d)[v] == (1, 1)));
        }
    }

    #[test]
    fn sign_flips_with_reversal_and_crossing_change() {
        let d = corpus::load("hopf").unwrap();
        let o = eulerian_orientation(&d).unwrap();
        let x = d.crossing_index("x1").unwrap();
        assert_eq!(crossing_sign(&d, &o, x), 1);
        assert_eq!(crossing_sign(&d, &o.reversed_component(&d, 1), x), -1);
        assert_eq!(crossing_sign(&d.with_toggled([x]), &o, x), -1);
    }
}
