//! Finite covers of a configuration as descent tuples: one finite set per
//! node with an action of the node's group, glued along every edge by an
//! equivariant bijection.

mod dictionary;
mod enumerate;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::devissage::{ConfigIssue, Configuration, DevissageError};
use crate::group::{GenId, GroupError, Perm, PermHom};

pub use dictionary::{equivalence_report, rep_of_tuple, tuple_of_rep, EquivalenceReport, EquivalenceRow};
pub use enumerate::{count_tuples, count_tuples_with, enumerate_tuples, enumerate_tuples_with};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Devissage(#[from] DevissageError),
    #[error("invalid configuration: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Config(Vec<ConfigIssue>),
    #[error("invalid descent tuple: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<TupleViolation>),
    #[error("assembled relator {0} does not act trivially")]
    RelatorViolation(String),
    #[error("{0}")]
    Unsupported(String),
}

/// A finite cover: per-node actions (the fiber is `{0..degree-1}`) and
/// per-edge gluings from the component fiber to the singular fiber.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentTuple {
    pub components: BTreeMap<String, PermHom>,
    pub singulars: BTreeMap<String, PermHom>,
    pub gluings: BTreeMap<String, Perm>,
}

impl DescentTuple {
    /// The tuple with every fiber a single point.
    pub fn trivial(c: &Configuration) -> Self {
        Self::constant(c, 1)
    }

    /// Every fiber `{0..d-1}`, every action and gluing the identity.
    pub fn constant(c: &Configuration, d: usize) -> Self {
        let id = Perm::identity(d);
        let act = |gens: &[GenId]| PermHom::new(d, gens.iter().map(|g| (g.clone(), id.clone())).collect());
        DescentTuple {
            components: c
                .components
                .iter()
                .map(|n| (n.id.clone(), act(n.group.generators())))
                .collect(),
            singulars: c
                .singulars
                .iter()
                .map(|n| (n.id.clone(), act(n.group.generators())))
                .collect(),
            gluings: c.edges.iter().map(|e| (e.id.clone(), id.clone())).collect(),
        }
    }

    pub fn fiber(&self, id: &str) -> Option<&PermHom> {
        self.components.get(id).or_else(|| self.singulars.get(id))
    }

    /// The part of the tuple over a sub-configuration.
    pub fn restrict(&self, c: &Configuration) -> DescentTuple {
        DescentTuple {
            components: c
                .components
                .iter()
                .filter_map(|n| self.components.get(&n.id).map(|h| (n.id.clone(), h.clone())))
                .collect(),
            singulars: c
                .singulars
                .iter()
                .filter_map(|n| self.singulars.get(&n.id).map(|h| (n.id.clone(), h.clone())))
                .collect(),
            gluings: c
                .edges
                .iter()
                .filter_map(|e| self.gluings.get(&e.id).map(|p| (e.id.clone(), p.clone())))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TupleViolation {
    MissingFiber(String),
    MissingGluing(String),
    MissingGenerator { node: String, generator: String },
    SizeMismatch { edge: String },
    Relator { node: String, index: usize },
    Equivariance { edge: String, generator: String },
}

impl fmt::Display for TupleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TupleViolation::MissingFiber(id) => write!(f, "no fiber over `{id}`"),
            TupleViolation::MissingGluing(id) => write!(f, "no gluing along `{id}`"),
            TupleViolation::MissingGenerator { node, generator } => {
                write!(f, "fiber over `{node}` has no image for {generator}")
            }
            TupleViolation::SizeMismatch { edge } => write!(f, "gluing along `{edge}` joins fibers of different sizes"),
            TupleViolation::Relator { node, index } => write!(f, "relator #{index} of `{node}` acts nontrivially"),
            TupleViolation::Equivariance { edge, generator } => {
                write!(f, "gluing along `{edge}` is not equivariant for {generator}")
            }
        }
    }
}

/// Checks relators of every node action and equivariance of every gluing.
pub fn validate_tuple(c: &Configuration, t: &DescentTuple) -> Result<(), Vec<TupleViolation>> {
    let mut out = Vec::new();
    let nodes = c
        .components
        .iter()
        .map(|n| (n, t.components.get(&n.id)))
        .chain(c.singulars.iter().map(|n| (n, t.singulars.get(&n.id))));
    for (node, fiber) in nodes {
        let Some(h) = fiber else {
            out.push(TupleViolation::MissingFiber(node.id.clone()));
            continue;
        };
        let mut complete = true;
        for g in node.group.generators() {
            match h.images.get(g) {
                Some(p) if p.degree() == h.degree => {}
                _ => {
                    complete = false;
                    out.push(TupleViolation::MissingGenerator {
                        node: node.id.clone(),
                        generator: g.to_string(),
                    });
                }
            }
        }
        if complete {
            for (index, r) in node.group.relations().iter().enumerate() {
                if !h.eval(r).map(|p| p.is_identity()).unwrap_or(false) {
                    out.push(TupleViolation::Relator {
                        node: node.id.clone(),
                        index,
                    });
                }
            }
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    for e in &c.edges {
        let Some(lambda) = t.gluings.get(&e.id) else {
            out.push(TupleViolation::MissingGluing(e.id.clone()));
            continue;
        };
        let (Some(x), Some(z)) = (t.components.get(&e.component), t.singulars.get(&e.singular)) else {
            continue;
        };
        if lambda.degree() != x.degree || lambda.degree() != z.degree {
            out.push(TupleViolation::SizeMismatch { edge: e.id.clone() });
            continue;
        }
        for a in e.group.generators() {
            let psi = e.psi.image(a).cloned().unwrap_or_default();
            let phi = e.phi.image(a).cloned().unwrap_or_default();
            let ok = match (x.eval(&psi), z.eval(&phi)) {
                (Ok(pa), Ok(fa)) => fa.compose(lambda) == lambda.compose(&pa),
                _ => false,
            };
            if !ok {
                out.push(TupleViolation::Equivariance {
                    edge: e.id.clone(),
                    generator: a.to_string(),
                });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// A point of a tuple: the node id and the index in its fiber.
pub type Point = (String, usize);

/// Orbits of the combined action of all node groups and all gluings. Blocks
/// are ordered by their first point, scanning components then singulars in
/// listed order; points inside a block follow the same scan.
pub fn connected_components(c: &Configuration, t: &DescentTuple) -> Vec<Vec<Point>> {
    let ids: Vec<&str> = c
        .components
        .iter()
        .chain(&c.singulars)
        .map(|n| n.id.as_str())
        .collect();
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for id in &ids {
        offset.insert(*id, total);
        total += t.fiber(id).map_or(0, |h| h.degree);
    }
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            parent[hi] = lo;
        }
    };
    for id in &ids {
        if let Some(h) = t.fiber(id) {
            let base = offset[id];
            for p in h.images.values() {
                for i in 0..h.degree {
                    union(&mut parent, base + i, base + p.apply(i));
                }
            }
        }
    }
    for e in &c.edges {
        if let (Some(lambda), Some(&bx), Some(&bz)) = (
            t.gluings.get(&e.id),
            offset.get(e.component.as_str()),
            offset.get(e.singular.as_str()),
        ) {
            for i in 0..lambda.degree() {
                union(&mut parent, bx + i, bz + lambda.apply(i));
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<Point>> = BTreeMap::new();
    for id in &ids {
        let base = offset[id];
        for i in 0..t.fiber(id).map_or(0, |h| h.degree) {
            let r = find(&mut parent, base + i);
            blocks.entry(r).or_default().push((id.to_string(), i));
        }
    }
    blocks.into_values().collect()
}

/// Per-fiber relabelings: `maps[id]` sends the old fiber over `id` to the new one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TupleIso {
    pub maps: BTreeMap<String, Perm>,
}

impl TupleIso {
    /// Transports `t` along the relabeling: actions are conjugated and each
    /// gluing becomes `σ_Z ∘ λ ∘ σ_X⁻¹`.
    pub fn apply(&self, c: &Configuration, t: &DescentTuple) -> Option<DescentTuple> {
        let conj = |id: &str, h: &PermHom| self.maps.get(id).map(|s| h.relabeled(s));
        let mut out = DescentTuple::default();
        for (id, h) in &t.components {
            out.components.insert(id.clone(), conj(id, h)?);
        }
        for (id, h) in &t.singulars {
            out.singulars.insert(id.clone(), conj(id, h)?);
        }
        for e in &c.edges {
            let lambda = t.gluings.get(&e.id)?;
            let sx = self.maps.get(&e.component)?;
            let sz = self.maps.get(&e.singular)?;
            out.gluings
                .insert(e.id.clone(), sz.compose(lambda).compose(&sx.inverse()));
        }
        Some(out)
    }
}

/// An isomorphism `t → u` of connected tuples, if one exists. Tries every
/// image of the first point of the first component fiber and extends along
/// actions and gluings.
pub fn find_iso(c: &Configuration, t: &DescentTuple, u: &DescentTuple) -> Option<TupleIso> {
    let root = &c.components.first()?.id;
    let d = t.fiber(root)?.degree;
    if u.fiber(root)?.degree != d || d == 0 {
        return None;
    }
    (0..d).find_map(|s| extend_iso(c, t, u, root, s))
}

fn extend_iso(c: &Configuration, t: &DescentTuple, u: &DescentTuple, root: &str, seed: usize) -> Option<TupleIso> {
    let mut maps: BTreeMap<String, Vec<Option<usize>>> = BTreeMap::new();
    for n in c.components.iter().chain(&c.singulars) {
        let d = t.fiber(&n.id)?.degree;
        if u.fiber(&n.id)?.degree != d {
            return None;
        }
        maps.insert(n.id.clone(), vec![None; d]);
    }
    let mut queue = VecDeque::new();
    let assign = |maps: &mut BTreeMap<String, Vec<Option<usize>>>,
                      queue: &mut VecDeque<(String, usize)>,
                      id: &str,
                      p: usize,
                      q: usize|
     -> bool {
        let slot = &mut maps.get_mut(id).expect("fiber present")[p];
        match *slot {
            Some(prev) => prev == q,
            None => {
                *slot = Some(q);
                queue.push_back((id.to_string(), p));
                true
            }
        }
    };
    assign(&mut maps, &mut queue, root, 0, seed);
    while let Some((id, p)) = queue.pop_front() {
        let q = maps[&id][p].expect("queued points are mapped");
        let (ht, hu) = (t.fiber(&id)?, u.fiber(&id)?);
        for (g, perm) in &ht.images {
            let other = hu.images.get(g)?;
            for (pp, qq) in [(perm.apply(p), other.apply(q)), (perm.inverse().apply(p), other.inverse().apply(q))] {
                if !assign(&mut maps, &mut queue, &id, pp, qq) {
                    return None;
                }
            }
        }
        for e in &c.edges {
            let (lt, lu) = (t.gluings.get(&e.id)?, u.gluings.get(&e.id)?);
            if e.component == id && !assign(&mut maps, &mut queue, &e.singular, lt.apply(p), lu.apply(q)) {
                return None;
            }
            if e.singular == id {
                let (pp, qq) = (lt.inverse().apply(p), lu.inverse().apply(q));
                if !assign(&mut maps, &mut queue, &e.component, pp, qq) {
                    return None;
                }
            }
        }
    }
    let mut iso = TupleIso::default();
    for (id, images) in maps {
        let images: Option<Vec<usize>> = images.into_iter().collect();
        iso.maps.insert(id, Perm::from_images(&images?).ok()?);
    }
    (iso.apply(c, t)? == *u).then_some(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devissage::{Edge, Node};
    use crate::group::Presentation;

    fn nodal(group: Presentation) -> Configuration {
        Configuration::new(
            vec![Node::new("X", group)],
            vec![Node::new("Z", Presentation::trivial())],
            vec![Edge::trivial("e1", "X", "Z"), Edge::trivial("e2", "X", "Z")],
        )
    }

    fn swap2() -> Perm {
        Perm::cycles(2, &[&[0, 1]]).unwrap()
    }

    fn nodal_double(e2: Perm) -> DescentTuple {
        let c = nodal(Presentation::trivial());
        let mut t = DescentTuple::constant(&c, 2);
        t.gluings.insert("e2".into(), e2);
        t
    }

    #[test]
    fn nodal_double_covers_validate() {
        let c = nodal(Presentation::trivial());
        validate_tuple(&c, &nodal_double(swap2())).unwrap();
        validate_tuple(&c, &DescentTuple::trivial(&c)).unwrap();
    }

    #[test]
    fn relator_violation_is_reported() {
        let c = nodal(Presentation::cyclic("a", 2));
        let mut t = DescentTuple::constant(&c, 3);
        t.components.get_mut("X").unwrap().images.insert(
            GenId::new("a", 0),
            Perm::cycles(3, &[&[0, 1, 2]]).unwrap(),
        );
        assert_eq!(
            validate_tuple(&c, &t).unwrap_err(),
            vec![TupleViolation::Relator {
                node: "X".into(),
                index: 0
            }]
        );
    }

    #[test]
    fn component_counts() {
        let c = nodal(Presentation::trivial());
        assert_eq!(connected_components(&c, &nodal_double(Perm::identity(2))).len(), 2);
        assert_eq!(connected_components(&c, &nodal_double(swap2())).len(), 1);
        assert_eq!(connected_components(&c, &DescentTuple::trivial(&c)).len(), 1);
        let empty = DescentTuple::constant(&c, 0);
        validate_tuple(&c, &empty).unwrap();
        assert!(connected_components(&c, &empty).is_empty());
    }

    #[test]
    fn relabeled_tuple_is_found_isomorphic() {
        let c = nodal(Presentation::trivial());
        let t = nodal_double(swap2());
        let iso = TupleIso {
            maps: BTreeMap::from([("X".into(), swap2()), ("Z".into(), Perm::identity(2))]),
        };
        let u = iso.apply(&c, &t).unwrap();
        assert_ne!(t, u);
        let found = find_iso(&c, &t, &u).unwrap();
        assert_eq!(found.apply(&c, &t).unwrap(), u);
        assert!(find_iso(&c, &t, &nodal_double(Perm::identity(2))).is_none());
    }
}
