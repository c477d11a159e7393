//! Exhaustive homomorphism search into finite permutation groups.
//!
//! Generators are assigned depth-first in presentation order; a relator is
//! checked as soon as its last generator (in that order) has an image, which
//! prunes the bulk of the tree for presentations with short relators.

use crate::exec::{map_ordered, Execution};

use super::hom::PermHom;
use super::perm::{GroupTable, Perm, PermGroupTarget};
use super::presentation::Presentation;
use super::GroupError;

type CompiledWord = Vec<(u32, bool)>;

struct Compiled {
    n_gens: usize,
    /// `checks[level]` holds the relators whose highest generator is `level`.
    checks: Vec<Vec<CompiledWord>>,
}

impl Compiled {
    fn new(p: &Presentation) -> Self {
        let n_gens = p.rank();
        let mut checks = vec![Vec::new(); n_gens];
        for r in p.relations() {
            let word: CompiledWord = r
                .letters()
                .iter()
                .map(|l| {
                    let idx = p.position(&l.gen).expect("relator uses own generators");
                    (idx as u32, l.inverse)
                })
                .collect();
            if let Some(top) = word.iter().map(|&(g, _)| g as usize).max() {
                checks[top].push(word);
            }
        }
        Compiled { n_gens, checks }
    }
}

struct HomSearch<'a> {
    table: &'a GroupTable,
    compiled: &'a Compiled,
}

impl HomSearch<'_> {
    fn eval(&self, word: &CompiledWord, assign: &[u32]) -> u32 {
        let t = self.table;
        word.iter().fold(t.identity, |acc, &(g, inv)| {
            let x = assign[g as usize];
            t.mul(acc, if inv { t.inv[x as usize] } else { x })
        })
    }

    fn level_ok(&self, level: usize, assign: &[u32]) -> bool {
        self.compiled.checks[level]
            .iter()
            .all(|w| self.eval(w, assign) == self.table.identity)
    }

    fn dfs<F: FnMut(&[u32])>(&self, level: usize, assign: &mut Vec<u32>, visit: &mut F) {
        if level == self.compiled.n_gens {
            visit(assign);
            return;
        }
        for x in 0..self.table.order as u32 {
            assign.push(x);
            if self.level_ok(level, assign) {
                self.dfs(level + 1, assign, visit);
            }
            assign.pop();
        }
    }
}

/// Runs `leaf` on every homomorphism, per first-generator branch, collecting
/// branch outputs in order.
fn search_branches<R, L>(
    p: &Presentation,
    table: &GroupTable,
    exec: Execution,
    init: impl Fn() -> R + Sync + Send,
    leaf: L,
) -> Vec<R>
where
    R: Send,
    L: Fn(&mut R, &[u32]) + Sync + Send,
{
    let compiled = Compiled::new(p);
    let search = HomSearch {
        table,
        compiled: &compiled,
    };
    if compiled.n_gens == 0 {
        let mut acc = init();
        leaf(&mut acc, &[]);
        return vec![acc];
    }
    let firsts: Vec<u32> = (0..table.order as u32).collect();
    map_ordered(exec, firsts, |x| {
        let mut acc = init();
        let mut assign = vec![x];
        if search.level_ok(0, &assign) {
            search.dfs(1, &mut assign, &mut |a: &[u32]| leaf(&mut acc, a));
        }
        acc
    })
}

/// All homomorphisms `p → g`, as generator-image assignments, in
/// lexicographic order of image indices (elements sorted as in `g`).
pub fn enumerate_homs(p: &Presentation, g: &PermGroupTarget) -> Result<Vec<PermHom>, GroupError> {
    enumerate_homs_with(p, g, Execution::default())
}

pub fn enumerate_homs_with(
    p: &Presentation,
    g: &PermGroupTarget,
    exec: Execution,
) -> Result<Vec<PermHom>, GroupError> {
    let table = g.table()?;
    let branches = search_branches(p, &table, exec, Vec::new, |acc: &mut Vec<Vec<u32>>, a| {
        acc.push(a.to_vec())
    });
    Ok(branches
        .into_iter()
        .flatten()
        .map(|a| {
            let images = a.iter().map(|&x| table.elements[x as usize].clone()).collect();
            PermHom::from_ordered(p, g.degree(), images)
        })
        .collect())
}

/// Number of homomorphisms `p → g`.
pub fn count_homs(p: &Presentation, g: &PermGroupTarget) -> Result<u64, GroupError> {
    count_homs_with(p, g, Execution::default())
}

pub fn count_homs_with(p: &Presentation, g: &PermGroupTarget, exec: Execution) -> Result<u64, GroupError> {
    let table = g.table()?;
    Ok(search_branches(p, &table, exec, || 0u64, |acc, _| *acc += 1)
        .into_iter()
        .sum())
}

/// Number of transitive actions of `p` on `{0..d-1}` up to relabeling, i.e.
/// isomorphism classes of connected degree-`d` covers. Zero for `d = 0`.
pub fn count_transitive_reps(p: &Presentation, d: usize) -> Result<u64, GroupError> {
    count_transitive_reps_with(p, d, Execution::default())
}

pub fn count_transitive_reps_with(p: &Presentation, d: usize, exec: Execution) -> Result<u64, GroupError> {
    if d == 0 {
        return Ok(0);
    }
    let sym = PermGroupTarget::symmetric(d)?;
    let table = sym.table()?;
    let counts = search_branches(p, &table, exec, || 0u64, |acc, a| {
        let imgs: Vec<&[u8]> = a.iter().map(|&x| table.elements[x as usize].images()).collect();
        if is_canonical(&imgs, d) {
            *acc += 1;
        }
    });
    Ok(counts.into_iter().sum())
}

/// One canonical representative per isomorphism class of transitive
/// degree-`d` actions, in search order.
pub fn transitive_reps(p: &Presentation, d: usize) -> Result<Vec<PermHom>, GroupError> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let sym = PermGroupTarget::symmetric(d)?;
    let table = sym.table()?;
    let branches = search_branches(p, &table, Execution::default(), Vec::new, |acc: &mut Vec<Vec<u32>>, a| {
        let imgs: Vec<&[u8]> = a.iter().map(|&x| table.elements[x as usize].images()).collect();
        if is_canonical(&imgs, d) {
            acc.push(a.to_vec());
        }
    });
    Ok(branches
        .into_iter()
        .flatten()
        .map(|a| {
            let images = a.iter().map(|&x| table.elements[x as usize].clone()).collect();
            PermHom::from_ordered(p, d, images)
        })
        .collect())
}

/// Breadth-first relabeling from `seed`: `label[old] = new`, `order[new] = old`.
/// Returns false when the action is not transitive.
fn standardize(imgs: &[&[u8]], d: usize, seed: usize, label: &mut [u8], order: &mut Vec<u8>) -> bool {
    const UNSET: u8 = u8::MAX;
    label.fill(UNSET);
    order.clear();
    label[seed] = 0;
    order.push(seed as u8);
    let mut head = 0;
    while head < order.len() {
        let p = order[head] as usize;
        for g in imgs {
            let q = g[p] as usize;
            if label[q] == UNSET {
                label[q] = order.len() as u8;
                order.push(q as u8);
            }
        }
        head += 1;
    }
    order.len() == d
}

/// An action is canonical when it is transitive, its breadth-first labeling
/// from point 0 is the identity, and no other seed yields a lexicographically
/// smaller image tuple.
fn is_canonical(imgs: &[&[u8]], d: usize) -> bool {
    let mut label = vec![0u8; d];
    let mut order = Vec::with_capacity(d);
    if !standardize(imgs, d, 0, &mut label, &mut order) {
        return false;
    }
    if order.iter().enumerate().any(|(i, &p)| i != p as usize) {
        return false;
    }
    for seed in 1..d {
        standardize(imgs, d, seed, &mut label, &mut order);
        match compare_relabeled(imgs, &label, &order) {
            std::cmp::Ordering::Less => return false,
            _ => continue,
        }
    }
    true
}

/// Compares the relabeled image tuple against the original one.
fn compare_relabeled(imgs: &[&[u8]], label: &[u8], order: &[u8]) -> std::cmp::Ordering {
    for g in imgs {
        for (new_p, &old_p) in order.iter().enumerate() {
            let relabeled = label[g[old_p as usize] as usize];
            match relabeled.cmp(&g[new_p]) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
    }
    std::cmp::Ordering::Equal
}

/// Canonical form of a transitive action (the least breadth-first relabeling
/// over all seeds), or `None` if the action is intransitive. Two actions of
/// the same presentation are isomorphic iff their canonical forms agree.
pub fn canonical_form(p: &Presentation, h: &PermHom) -> Result<Option<PermHom>, GroupError> {
    let perms = h.ordered(p)?;
    let d = h.degree;
    if d == 0 {
        return Ok(None);
    }
    let imgs: Vec<&[u8]> = perms.iter().map(|x| x.images()).collect();
    let mut label = vec![0u8; d];
    let mut order = Vec::with_capacity(d);
    let mut best: Option<Vec<Vec<u8>>> = None;
    for seed in 0..d {
        if !standardize(&imgs, d, seed, &mut label, &mut order) {
            return Ok(None);
        }
        let enc: Vec<Vec<u8>> = imgs
            .iter()
            .map(|g| order.iter().map(|&op| label[g[op as usize] as usize]).collect())
            .collect();
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    }
    let best = best.expect("d > 0");
    Ok(Some(PermHom::from_ordered(
        p,
        d,
        best.into_iter().map(Perm::from_bytes).collect(),
    )))
}

/// Orbits of the group generated by `perms` on `{0..d-1}`, each sorted,
/// listed by least element.
pub fn orbits(d: usize, perms: &[&Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; d];
    let mut out = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            for p in perms {
                let y = p.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            head += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Homomorphism counts into a fixed list of probe groups. Equal fingerprints
/// are necessary (not sufficient) for two presentations to define isomorphic
/// groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFingerprint {
    pub probes: Vec<PermGroupTarget>,
    pub counts: Vec<u64>,
}

impl HomFingerprint {
    pub fn probe_names(&self) -> Vec<&str> {
        self.probes.iter().map(|p| p.name()).collect()
    }
}

pub fn fingerprint(p: &Presentation, probes: &[PermGroupTarget]) -> Result<HomFingerprint, GroupError> {
    fingerprint_with(p, probes, Execution::default())
}

pub fn fingerprint_with(
    p: &Presentation,
    probes: &[PermGroupTarget],
    exec: Execution,
) -> Result<HomFingerprint, GroupError> {
    let counts = probes
        .iter()
        .map(|g| count_homs_with(p, g, exec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HomFingerprint {
        probes: probes.to_vec(),
        counts,
    })
}
