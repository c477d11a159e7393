//! Orderly generation of connected descent tuples of a fixed degree.
//!
//! The tuple is treated as a finite groupoid action: fibers are the nodes
//! (components first, then singulars), arrows are the generator loops of each
//! node plus one gluing arrow per edge, and every relator and every
//! equivariance condition becomes a closed walk that must fix each of its
//! starting points. Points are created in breadth-first order from point 0 of
//! the first component fiber, so every complete labeling produced is the
//! standardization from that seed; a labeling is kept only if no other seed
//! in the root fiber standardizes to a smaller encoding. This yields exactly
//! one tuple per isomorphism class, and every tuple produced is connected.

use std::collections::BTreeMap;

use super::{CoverError, DescentTuple};
use crate::devissage::{validate_config, Configuration};
use crate::exec::{map_ordered, Execution};
use crate::group::{GenId, Perm, PermHom, MAX_DEGREE};

const UNSET: u8 = u8::MAX;

/// Branch states expanded breadth-first before fanning out.
const FRONTIER_TARGET: usize = 64;
const FRONTIER_MAX_LEVELS: usize = 8;

#[derive(Clone, Copy, Debug)]
struct Arrow {
    src: usize,
    dst: usize,
}

#[derive(Clone, Copy, Debug)]
struct Step {
    arrow: usize,
    forward: bool,
}

#[derive(Clone, Debug)]
struct Walk {
    fiber: usize,
    steps: Vec<Step>,
}

struct Problem {
    d: usize,
    n_fibers: usize,
    arrows: Vec<Arrow>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
    walks: Vec<Walk>,
    /// `(fiber, generators, arrows)` per node, for reading results back.
    node_arrows: Vec<Vec<(GenId, usize)>>,
    edge_arrows: Vec<usize>,
}

#[derive(Clone)]
struct State {
    fwd: Vec<Vec<u8>>,
    bwd: Vec<Vec<u8>>,
    count: Vec<usize>,
    points: Vec<(usize, u8)>,
    scan: usize,
}

enum Trace {
    Fine,
    Broken,
    Deduce { arrow: usize, from: u8, to: u8 },
}

enum Expansion {
    Leaf(bool),
    Children(Vec<State>),
}

enum Item {
    Done(State),
    Open(State),
}

impl Problem {
    fn new(c: &Configuration, d: usize) -> Problem {
        let nodes: Vec<_> = c.components.iter().chain(&c.singulars).collect();
        let n_fibers = nodes.len();
        let mut arrows = Vec::new();
        let mut node_arrows = Vec::with_capacity(n_fibers);
        let mut lookup: Vec<BTreeMap<GenId, usize>> = Vec::with_capacity(n_fibers);
        for (f, node) in nodes.iter().enumerate() {
            let mut list = Vec::new();
            let mut map = BTreeMap::new();
            for g in node.group.generators() {
                map.insert(g.clone(), arrows.len());
                list.push((g.clone(), arrows.len()));
                arrows.push(Arrow { src: f, dst: f });
            }
            node_arrows.push(list);
            lookup.push(map);
        }
        let fiber_of = |id: &str| nodes.iter().position(|n| n.id == id).expect("validated endpoint");
        let mut edge_arrows = Vec::with_capacity(c.edges.len());
        let mut walks = Vec::new();
        for (f, node) in nodes.iter().enumerate() {
            for r in node.group.relations() {
                let steps = r
                    .letters()
                    .iter()
                    .rev()
                    .map(|l| Step {
                        arrow: lookup[f][&l.gen],
                        forward: !l.inverse,
                    })
                    .collect();
                walks.push(Walk { fiber: f, steps });
            }
        }
        for e in &c.edges {
            let (x, z) = (fiber_of(&e.component), fiber_of(&e.singular));
            let glue = arrows.len();
            arrows.push(Arrow { src: x, dst: z });
            edge_arrows.push(glue);
            // λ⁻¹ ∘ ρ(φ(a)) ∘ λ ∘ ρ(ψ(a))⁻¹ fixes every point of the component fiber
            for a in e.group.generators() {
                let psi = e.psi.image(a).cloned().unwrap_or_default();
                let phi = e.phi.image(a).cloned().unwrap_or_default();
                if psi.is_empty() && phi.is_empty() {
                    continue;
                }
                let mut steps: Vec<Step> = psi
                    .letters()
                    .iter()
                    .map(|l| Step {
                        arrow: lookup[x][&l.gen],
                        forward: l.inverse,
                    })
                    .collect();
                steps.push(Step {
                    arrow: glue,
                    forward: true,
                });
                steps.extend(phi.letters().iter().rev().map(|l| Step {
                    arrow: lookup[z][&l.gen],
                    forward: !l.inverse,
                }));
                steps.push(Step {
                    arrow: glue,
                    forward: false,
                });
                walks.push(Walk { fiber: x, steps });
            }
        }
        let mut out_arrows = vec![Vec::new(); n_fibers];
        let mut in_arrows = vec![Vec::new(); n_fibers];
        for (a, arrow) in arrows.iter().enumerate() {
            out_arrows[arrow.src].push(a);
            in_arrows[arrow.dst].push(a);
        }
        Problem {
            d,
            n_fibers,
            arrows,
            out_arrows,
            in_arrows,
            walks,
            node_arrows,
            edge_arrows,
        }
    }

    fn initial(&self) -> Option<State> {
        let mut st = State {
            fwd: vec![vec![UNSET; self.d]; self.arrows.len()],
            bwd: vec![vec![UNSET; self.d]; self.arrows.len()],
            count: vec![0; self.n_fibers],
            points: vec![(0, 0)],
            scan: 0,
        };
        st.count[0] = 1;
        self.propagate(&mut st).then_some(st)
    }

    fn link(st: &mut State, arrow: usize, from: u8, to: u8) -> bool {
        let (f, b) = (st.fwd[arrow][from as usize], st.bwd[arrow][to as usize]);
        if f == to {
            return true;
        }
        if f != UNSET || b != UNSET {
            return false;
        }
        st.fwd[arrow][from as usize] = to;
        st.bwd[arrow][to as usize] = from;
        true
    }

    fn trace(st: &State, walk: &Walk, start: u8) -> Trace {
        let n = walk.steps.len();
        let mut i = 0;
        let mut x = start;
        while i < n {
            let s = walk.steps[i];
            let next = if s.forward {
                st.fwd[s.arrow][x as usize]
            } else {
                st.bwd[s.arrow][x as usize]
            };
            if next == UNSET {
                break;
            }
            x = next;
            i += 1;
        }
        if i == n {
            return if x == start { Trace::Fine } else { Trace::Broken };
        }
        let mut j = n;
        let mut y = start;
        while j > i + 1 {
            let s = walk.steps[j - 1];
            let prev = if s.forward {
                st.bwd[s.arrow][y as usize]
            } else {
                st.fwd[s.arrow][y as usize]
            };
            if prev == UNSET {
                return Trace::Fine;
            }
            y = prev;
            j -= 1;
        }
        let s = walk.steps[i];
        if s.forward {
            Trace::Deduce {
                arrow: s.arrow,
                from: x,
                to: y,
            }
        } else {
            Trace::Deduce {
                arrow: s.arrow,
                from: y,
                to: x,
            }
        }
    }

    fn propagate(&self, st: &mut State) -> bool {
        loop {
            let mut changed = false;
            for walk in &self.walks {
                for start in 0..st.count[walk.fiber] as u8 {
                    match Self::trace(st, walk, start) {
                        Trace::Fine => {}
                        Trace::Broken => return false,
                        Trace::Deduce { arrow, from, to } => {
                            if !Self::link(st, arrow, from, to) {
                                return false;
                            }
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// First undefined slot in scan order: `(arrow, forward, point label)`.
    fn next_slot(&self, st: &mut State) -> Option<(usize, bool, u8)> {
        while st.scan < st.points.len() {
            let (f, p) = st.points[st.scan];
            for &a in &self.out_arrows[f] {
                if st.fwd[a][p as usize] == UNSET {
                    return Some((a, true, p));
                }
            }
            for &a in &self.in_arrows[f] {
                if st.bwd[a][p as usize] == UNSET {
                    return Some((a, false, p));
                }
            }
            st.scan += 1;
        }
        None
    }

    fn expand(&self, st: &mut State) -> Expansion {
        let Some((arrow, forward, p)) = self.next_slot(st) else {
            let complete = st.count.iter().all(|&n| n == self.d);
            return Expansion::Leaf(complete && self.is_canonical(st));
        };
        let target = if forward {
            self.arrows[arrow].dst
        } else {
            self.arrows[arrow].src
        };
        let free = |q: usize| {
            if forward {
                st.bwd[arrow][q] == UNSET
            } else {
                st.fwd[arrow][q] == UNSET
            }
        };
        let mut children = Vec::new();
        let existing = st.count[target];
        let mut candidates: Vec<(u8, bool)> = (0..existing).filter(|&q| free(q)).map(|q| (q as u8, false)).collect();
        if existing < self.d {
            candidates.push((existing as u8, true));
        }
        for (q, fresh) in candidates {
            let mut child = st.clone();
            if fresh {
                child.count[target] += 1;
                child.points.push((target, q));
            }
            let ok = if forward {
                Self::link(&mut child, arrow, p, q)
            } else {
                Self::link(&mut child, arrow, q, p)
            };
            if ok && self.propagate(&mut child) {
                children.push(child);
            }
        }
        Expansion::Children(children)
    }

    fn dfs(&self, mut st: State, out: &mut Vec<State>) {
        match self.expand(&mut st) {
            Expansion::Leaf(true) => out.push(st),
            Expansion::Leaf(false) => {}
            Expansion::Children(children) => {
                for child in children {
                    self.dfs(child, out);
                }
            }
        }
    }

    /// Relabels points in breadth-first order from `seed` in the root fiber,
    /// visiting slots in scan order. Returns the new label of every point.
    fn standardize(&self, st: &State, seed: u8) -> Vec<Vec<u8>> {
        let mut label = vec![vec![UNSET; self.d]; self.n_fibers];
        let mut next = vec![0u8; self.n_fibers];
        let mut queue = Vec::with_capacity(self.d * self.n_fibers);
        label[0][seed as usize] = 0;
        next[0] = 1;
        queue.push((0usize, seed));
        let mut head = 0;
        while head < queue.len() {
            let (f, p) = queue[head];
            head += 1;
            let visits = self.out_arrows[f]
                .iter()
                .map(|&a| (self.arrows[a].dst, st.fwd[a][p as usize]))
                .chain(self.in_arrows[f].iter().map(|&a| (self.arrows[a].src, st.bwd[a][p as usize])));
            for (g, q) in visits {
                if label[g][q as usize] == UNSET {
                    label[g][q as usize] = next[g];
                    next[g] += 1;
                    queue.push((g, q));
                }
            }
        }
        label
    }

    fn is_canonical(&self, st: &State) -> bool {
        let mut relabeled = vec![0u8; self.d];
        for seed in 1..self.d as u8 {
            let label = self.standardize(st, seed);
            let mut verdict = std::cmp::Ordering::Equal;
            'arrows: for (a, arrow) in self.arrows.iter().enumerate() {
                for p in 0..self.d {
                    relabeled[label[arrow.src][p] as usize] = label[arrow.dst][st.fwd[a][p] as usize];
                }
                let order = relabeled[..self.d].cmp(&st.fwd[a][..self.d]);
                if order != std::cmp::Ordering::Equal {
                    verdict = order;
                    break 'arrows;
                }
            }
            if verdict == std::cmp::Ordering::Less {
                return false;
            }
        }
        true
    }

    fn to_tuple(&self, c: &Configuration, st: &State) -> DescentTuple {
        let perm = |a: usize| Perm::from_bytes(st.fwd[a].clone());
        let node_hom = |f: usize| {
            PermHom::new(
                self.d,
                self.node_arrows[f].iter().map(|(g, a)| (g.clone(), perm(*a))).collect(),
            )
        };
        let n = c.components.len();
        DescentTuple {
            components: c
                .components
                .iter()
                .enumerate()
                .map(|(f, x)| (x.id.clone(), node_hom(f)))
                .collect(),
            singulars: c
                .singulars
                .iter()
                .enumerate()
                .map(|(j, z)| (z.id.clone(), node_hom(n + j)))
                .collect(),
            gluings: c
                .edges
                .iter()
                .zip(&self.edge_arrows)
                .map(|(e, &a)| (e.id.clone(), perm(a)))
                .collect(),
        }
    }

    fn run(&self, exec: Execution) -> Vec<State> {
        let Some(init) = self.initial() else {
            return Vec::new();
        };
        let mut items = vec![Item::Open(init)];
        for _ in 0..FRONTIER_MAX_LEVELS {
            let open = items.iter().filter(|i| matches!(i, Item::Open(_))).count();
            if open == 0 || open >= FRONTIER_TARGET {
                break;
            }
            let mut next = Vec::with_capacity(items.len() * 2);
            for item in items {
                match item {
                    Item::Done(st) => next.push(Item::Done(st)),
                    Item::Open(mut st) => match self.expand(&mut st) {
                        Expansion::Leaf(true) => next.push(Item::Done(st)),
                        Expansion::Leaf(false) => {}
                        Expansion::Children(children) => next.extend(children.into_iter().map(Item::Open)),
                    },
                }
            }
            items = next;
        }
        map_ordered(exec, items, |item| match item {
            Item::Done(st) => vec![st],
            Item::Open(st) => {
                let mut out = Vec::new();
                self.dfs(st, &mut out);
                out
            }
        })
        .into_iter()
        .flatten()
        .collect()
    }
}

fn prepare(c: &Configuration, d: usize) -> Result<Option<Problem>, CoverError> {
    validate_config(c).map_err(CoverError::Config)?;
    if d >= MAX_DEGREE {
        return Err(crate::group::GroupError::DegreeTooLarge(d).into());
    }
    if d == 0 {
        return Ok(None);
    }
    Ok(Some(Problem::new(c, d)))
}

/// Connected tuples with every fiber of size `d`, one per isomorphism class,
/// in a deterministic order.
pub fn enumerate_tuples(c: &Configuration, d: usize) -> Result<Vec<DescentTuple>, CoverError> {
    enumerate_tuples_with(c, d, Execution::default())
}

pub fn enumerate_tuples_with(c: &Configuration, d: usize, exec: Execution) -> Result<Vec<DescentTuple>, CoverError> {
    let Some(problem) = prepare(c, d)? else {
        return Ok(Vec::new());
    };
    Ok(problem.run(exec).iter().map(|st| problem.to_tuple(c, st)).collect())
}

pub fn count_tuples(c: &Configuration, d: usize) -> Result<u64, CoverError> {
    count_tuples_with(c, d, Execution::default())
}

pub fn count_tuples_with(c: &Configuration, d: usize, exec: Execution) -> Result<u64, CoverError> {
    let Some(problem) = prepare(c, d)? else {
        return Ok(0);
    };
    Ok(problem.run(exec).len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{connected_components, find_iso, validate_tuple};
    use crate::devissage::{Edge, Node};
    use crate::group::Presentation;

    fn nodal(group: Presentation, edges: usize) -> Configuration {
        Configuration::new(
            vec![Node::new("X", group)],
            vec![Node::new("Z", Presentation::trivial())],
            (1..=edges).map(|k| Edge::trivial(format!("e{k}"), "X", "Z")).collect(),
        )
    }

    #[test]
    fn nodal_cubic_has_one_cover_per_degree() {
        let c = nodal(Presentation::trivial(), 2);
        for d in 1..=5 {
            assert_eq!(count_tuples(&c, d).unwrap(), 1, "degree {d}");
        }
        assert_eq!(count_tuples(&c, 0).unwrap(), 0);
    }

    #[test]
    fn rank_two_degree_two() {
        assert_eq!(count_tuples(&nodal(Presentation::trivial(), 3), 2).unwrap(), 3);
    }

    #[test]
    fn z2_free_z_degree_two() {
        assert_eq!(count_tuples(&nodal(Presentation::cyclic("a", 2), 2), 2).unwrap(), 3);
    }

    #[test]
    fn produced_tuples_are_valid_connected_and_distinct() {
        let c = nodal(Presentation::cyclic("a", 2), 2);
        let tuples = enumerate_tuples(&c, 3).unwrap();
        assert!(!tuples.is_empty());
        for (i, t) in tuples.iter().enumerate() {
            validate_tuple(&c, t).unwrap();
            assert_eq!(connected_components(&c, t).len(), 1);
            for u in &tuples[..i] {
                assert!(find_iso(&c, t, u).is_none());
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let c = nodal(Presentation::trivial(), 3);
        assert_eq!(
            enumerate_tuples_with(&c, 4, Execution::Sequential).unwrap(),
            enumerate_tuples_with(&c, 4, Execution::Parallel).unwrap()
        );
    }
}
