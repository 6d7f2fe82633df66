//! Random diagrams from braid closures, with optional vertex surgery.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Arc, Dart, Diagram, Node};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Knot,
    Link(usize),
    EulerianGraph,
    NonEulerianGraph,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Knot => write!(f, "knot"),
            Profile::Link(n) => write!(f, "link({n})"),
            Profile::EulerianGraph => write!(f, "eulerian-graph"),
            Profile::NonEulerianGraph => write!(f, "non-eulerian-graph"),
        }
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Profile> {
        match s {
            "knot" => return Ok(Profile::Knot),
            "link" => return Ok(Profile::Link(2)),
            "eulerian-graph" => return Ok(Profile::EulerianGraph),
            "non-eulerian-graph" => return Ok(Profile::NonEulerianGraph),
            _ => {}
        }
        let n = s.strip_prefix("link(").and_then(|r| r.strip_suffix(')')).and_then(|n| n.parse::<usize>().ok());
        match n {
            Some(n) if (1..=6).contains(&n) => Ok(Profile::Link(n)),
            _ => Err(Error::Unsupported(format!("unknown profile `{s}`"))),
        }
    }
}

/// Closure of a braid on `strands` strands. Each letter is (generator index
/// starting at 0, positive). Crossing slots run NE, NW, SW, SE.
pub fn braid_closure(strands: usize, word: &[(usize, bool)]) -> Result<Diagram> {
    let mut nodes = Vec::new();
    let mut arcs = Vec::new();
    let mut pending: Vec<Option<String>> = vec![None; strands];
    let mut bottom: Vec<Option<String>> = vec![None; strands];
    let mut arc_no = 0;
    let mut join = |arcs: &mut Vec<Arc>, a: String, b: String| {
        arc_no += 1;
        arcs.push(Arc::new(format!("a{arc_no}"), a, b));
    };
    for (k, &(i, pos)) in word.iter().enumerate() {
        let id = format!("x{}", k + 1);
        let s: Vec<String> = ["a", "b", "c", "d"].iter().map(|t| format!("{id}{t}")).collect();
        for (p, slot) in [(i, &s[2]), (i + 1, &s[3])] {
            match pending[p].take() {
                Some(h) => join(&mut arcs, h, slot.clone()),
                None => bottom[p] = Some(slot.clone()),
            }
        }
        pending[i] = Some(s[1].clone());
        pending[i + 1] = Some(s[0].clone());
        nodes.push(Node::crossing(id, s, pos));
    }
    for p in 0..strands {
        match (pending[p].take(), bottom[p].take()) {
            (Some(t), Some(b)) => join(&mut arcs, t, b),
            _ => {
                let id = format!("u{}", p + 1);
                let (h1, h2) = (format!("{id}a"), format!("{id}b"));
                nodes.push(Node::vertex(id, vec![h1.clone(), h2.clone()]));
                join(&mut arcs, h1, h2);
            }
        }
    }
    Diagram::new(nodes, arcs)
}

fn cycles(strands: usize, word: &[(usize, bool)]) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &(i, _) in word {
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut n = 0;
    for s in 0..strands {
        if !seen[s] {
            n += 1;
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                t = perm[t];
            }
        }
    }
    n
}

/// A random braid closure with `components` components and at most
/// `max_crossings` crossings, every generator used.
pub fn random_closure<R: Rng>(rng: &mut R, components: usize, max_crossings: usize) -> Diagram {
    loop {
        let strands = rng.gen_range(components.max(2)..=(components + 2).min(4).max(components.max(2)));
        if strands - 1 > max_crossings {
            continue;
        }
        let len = rng.gen_range((strands - 1)..=max_crossings);
        let mut word: Vec<(usize, bool)> = (0..len).map(|_| (rng.gen_range(0..strands - 1), rng.gen())).collect();
        let mut gens: Vec<usize> = (0..strands - 1).collect();
        gens.shuffle(rng);
        for (k, g) in gens.into_iter().enumerate() {
            if !word.iter().any(|w| w.0 == g) {
                word[k].0 = g;
            }
        }
        if (0..strands - 1).all(|g| word.iter().any(|w| w.0 == g)) && cycles(strands, &word) == components {
            return braid_closure(strands, &word).expect("braid closures are spherical");
        }
    }
}

/// Darts with face `f` on their right.
fn boundary_darts(d: &Diagram, f: usize) -> Vec<Dart> {
    d.face(f).corners.iter().map(|c| Dart::new(c.node, (c.gap + 1) % d.degree(c.node))).collect()
}

/// Pinches two arcs on a common face into one degree-4 vertex.
pub fn pinch<R: Rng>(rng: &mut R, d: &Diagram, tag: &str) -> Option<Diagram> {
    let mut faces: Vec<usize> = (0..d.faces().len()).collect();
    faces.shuffle(rng);
    for f in faces {
        let darts = boundary_darts(d, f);
        let mut pairs = Vec::new();
        for (i, &a) in darts.iter().enumerate() {
            for &b in &darts[i + 1..] {
                if d.arc_at(a) != d.arc_at(b) {
                    pairs.push((a, b));
                }
            }
        }
        let Some(&(d1, d2)) = pairs.choose(rng) else { continue };
        let (mut nodes, mut arcs) = d.to_parts();
        let (a1, a2) = (d.arc_at(d1), d.arc_at(d2));
        let (t1, h1) = (d.half_edge(d1).to_string(), d.half_edge(d.partner(d1)).to_string());
        let (t2, h2) = (d.half_edge(d2).to_string(), d.half_edge(d.partner(d2)).to_string());
        let id = format!("p{tag}");
        let s: Vec<String> = ["a", "b", "c", "d"].iter().map(|t| format!("{id}{t}")).collect();
        let (i1, i2) = (d.arc(a1).id.clone(), d.arc(a2).id.clone());
        arcs.retain(|a| a.id != i1 && a.id != i2);
        arcs.push(Arc::new(i1, t1, s[1].clone()));
        arcs.push(Arc::new(format!("{id}e1"), s[0].clone(), h1));
        arcs.push(Arc::new(i2, t2, s[3].clone()));
        arcs.push(Arc::new(format!("{id}e2"), s[2].clone(), h2));
        // slots: toward head1, tail1, head2, tail2
        nodes.push(Node::vertex(id, s));
        return Diagram::new(nodes, arcs).ok();
    }
    None
}

/// Hangs a pendant edge with a degree-1 end off a random arc.
pub fn pendant<R: Rng>(rng: &mut R, d: &Diagram, tag: &str) -> Diagram {
    let (mut nodes, mut arcs) = d.to_parts();
    let k = rng.gen_range(0..arcs.len());
    let a = arcs.remove(k);
    let w = format!("w{tag}");
    let z = format!("z{tag}");
    let (w0, w1, w2, z0) = (format!("{w}a"), format!("{w}b"), format!("{w}c"), format!("{z}a"));
    let slots = if rng.gen() { vec![w0.clone(), w1.clone(), w2.clone()] } else { vec![w0.clone(), w2.clone(), w1.clone()] };
    nodes.push(Node::vertex(w.clone(), slots));
    nodes.push(Node::vertex(z, vec![z0.clone()]));
    arcs.push(Arc::new(a.id.clone(), a.ends[0].clone(), w0));
    arcs.push(Arc::new(format!("{w}e1"), w1, a.ends[1].clone()));
    arcs.push(Arc::new(format!("{w}e2"), w2, z0));
    Diagram::new(nodes, arcs).expect("pendant keeps the diagram spherical")
}

/// Deterministic random diagram for a seed and profile.
pub fn random_diagram(seed: u64, profile: Profile) -> Diagram {
    random_diagram_sized(seed, profile, 8)
}

pub fn random_diagram_sized(seed: u64, profile: Profile, max_crossings: usize) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match profile {
        Profile::Knot => random_closure(&mut rng, 1, max_crossings),
        Profile::Link(n) => random_closure(&mut rng, n, max_crossings.max(2 * n)),
        Profile::EulerianGraph => loop {
            let comps = rng.gen_range(1..=2);
            let mut d = random_closure(&mut rng, comps, max_crossings.max(2 * comps));
            let pinches = rng.gen_range(1..=2);
            let mut ok = true;
            for p in 0..pinches {
                match pinch(&mut rng, &d, &(p + 1).to_string()) {
                    Some(e) => d = e,
                    None => ok = false,
                }
            }
            if ok {
                break d;
            }
        },
        Profile::NonEulerianGraph => {
            let comps = rng.gen_range(1..=3);
            let mut d = random_closure(&mut rng, comps, max_crossings.max(2 * comps));
            if rng.gen_bool(0.5) {
                if let Some(e) = pinch(&mut rng, &d, "1") {
                    d = e;
                }
            }
            pendant(&mut rng, &d, "1")
        }
    }
}
