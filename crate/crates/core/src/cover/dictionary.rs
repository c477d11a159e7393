//! Translation between covers and permutation actions of an assembled
//! presentation.
//!
//! For a directly assembled presentation, let `T_v` be the transport from the
//! root fiber to the fiber over `v` along the spanning tree (`T_root = id`,
//! crossing a tree edge from component to singular applies its gluing). A
//! node generator `g` over `v` acts on the root fiber as `T_v⁻¹ ρ_v(g) T_v`,
//! and the free generator of a cotree edge `k` from `X` to `Z` acts as
//! `T_Z⁻¹ λ_k T_X`: out along the tree to `X`, across `k`, back from `Z`.

use std::collections::BTreeMap;

use super::{validate_tuple, CoverError, DescentTuple};
use crate::devissage::{free_generator, AssemblyResult, Configuration, Structure};
use crate::group::{count_transitive_reps, verify_hom, GenId, Perm, PermHom};

/// Transport from the result's base fiber to every node fiber.
fn transports(c: &Configuration, result: &AssemblyResult, t: &DescentTuple) -> Result<BTreeMap<String, Perm>, CoverError> {
    match &result.structure {
        Structure::Direct { root, tree, .. } => {
            let d = t
                .fiber(root)
                .ok_or_else(|| CoverError::Invalid(vec![super::TupleViolation::MissingFiber(root.clone())]))?
                .degree;
            let mut out = BTreeMap::from([(root.clone(), Perm::identity(d))]);
            let tree_edges: Vec<_> = c.edges.iter().filter(|e| tree.contains(&e.id)).collect();
            while out.len() < c.components.len() + c.singulars.len() {
                let before = out.len();
                for e in &tree_edges {
                    let lambda = &t.gluings[&e.id];
                    match (out.get(&e.component).cloned(), out.get(&e.singular).cloned()) {
                        (Some(tx), None) => {
                            out.insert(e.singular.clone(), lambda.compose(&tx));
                        }
                        (None, Some(tz)) => {
                            out.insert(e.component.clone(), lambda.inverse().compose(&tz));
                        }
                        _ => {}
                    }
                }
                if out.len() == before {
                    return Err(crate::devissage::DevissageError::Disconnected.into());
                }
            }
            Ok(out)
        }
        Structure::Vk {
            near_config,
            far_config,
            near,
            far,
            shared,
            ..
        } => {
            let tl = transports(near_config, near, &t.restrict(near_config))?;
            let tr = transports(far_config, far, &t.restrict(far_config))?;
            let to_near = far_to_near(&tl, &tr, &shared[0]);
            let back = to_near.inverse();
            let mut out = tl;
            for (id, p) in tr {
                out.entry(id).or_insert_with(|| p.compose(&back));
            }
            Ok(out)
        }
    }
}

/// Identification of the far base fiber with the near one through the
/// first shared component.
fn far_to_near(tl: &BTreeMap<String, Perm>, tr: &BTreeMap<String, Perm>, first: &str) -> Perm {
    tl[first].inverse().compose(&tr[first])
}

fn action(c: &Configuration, result: &AssemblyResult, t: &DescentTuple) -> Result<PermHom, CoverError> {
    match &result.structure {
        Structure::Direct { cotree, .. } => {
            let tr = transports(c, result, t)?;
            let d = tr[result.root()].degree();
            let mut images = BTreeMap::new();
            for node in c.components.iter().chain(&c.singulars) {
                let h = t.fiber(&node.id).expect("validated tuple");
                let tv = &tr[&node.id];
                for g in node.group.generators() {
                    images.insert(g.clone(), tv.inverse().compose(&h.images[g]).compose(tv));
                }
            }
            for id in cotree {
                let e = c.edge(id).expect("cotree edge exists");
                let m = tr[&e.singular].inverse().compose(&t.gluings[id]).compose(&tr[&e.component]);
                images.insert(free_generator(id), m);
            }
            Ok(PermHom::new(d, images))
        }
        Structure::Vk {
            near_config,
            far_config,
            near,
            far,
            near_prefix,
            shared,
            conjugators,
            ..
        } => {
            let tn = t.restrict(near_config);
            let tf = t.restrict(far_config);
            let rho_near = action(near_config, near, &tn)?;
            let rho_far = action(far_config, far, &tf)?;
            let tl = transports(near_config, near, &tn)?;
            let tr = transports(far_config, far, &tf)?;
            let to_near = far_to_near(&tl, &tr, &shared[0]);
            let back = to_near.inverse();
            let mut images = BTreeMap::new();
            for (g, p) in rho_near.images {
                images.insert(GenId::new(format!("{near_prefix}{}", g.namespace), g.index), p);
            }
            for (g, p) in rho_far.images {
                images.insert(g, to_near.compose(&p).compose(&back));
            }
            for (i, id) in shared.iter().enumerate().skip(1) {
                let v = to_near.compose(&tr[id].inverse()).compose(&tl[id]);
                images.insert(GenId::new(conjugators.clone(), i + 1), v);
            }
            Ok(PermHom::new(rho_near.degree, images))
        }
    }
}

/// The action of the assembled presentation on the base fiber of a cover.
pub fn rep_of_tuple(c: &Configuration, result: &AssemblyResult, t: &DescentTuple) -> Result<PermHom, CoverError> {
    validate_tuple(c, t).map_err(CoverError::Invalid)?;
    let rep = action(c, result, t)?;
    for (i, r) in result.presentation.relations().iter().enumerate() {
        if !rep.eval(r)?.is_identity() {
            return Err(CoverError::RelatorViolation(format!("#{i}")));
        }
    }
    Ok(rep)
}

/// The cover whose fibers are all copies of `rep`'s set: tree gluings are
/// identities and each cotree gluing is the image of its free generator.
/// Only directly assembled presentations are supported.
pub fn tuple_of_rep(c: &Configuration, result: &AssemblyResult, rep: &PermHom) -> Result<DescentTuple, CoverError> {
    let Structure::Direct { cotree, .. } = &result.structure else {
        return Err(CoverError::Unsupported(
            "covers can only be rebuilt from directly assembled presentations".into(),
        ));
    };
    if !verify_hom(&result.presentation, rep)? {
        return Err(CoverError::RelatorViolation("in the supplied action".into()));
    }
    let d = rep.degree;
    let node = |gens: &[GenId]| PermHom::new(d, gens.iter().map(|g| (g.clone(), rep.images[g].clone())).collect());
    let t = DescentTuple {
        components: c
            .components
            .iter()
            .map(|n| (n.id.clone(), node(n.group.generators())))
            .collect(),
        singulars: c
            .singulars
            .iter()
            .map(|n| (n.id.clone(), node(n.group.generators())))
            .collect(),
        gluings: c
            .edges
            .iter()
            .map(|e| {
                let lambda = if cotree.contains(&e.id) {
                    rep.images[&free_generator(&e.id)].clone()
                } else {
                    Perm::identity(d)
                };
                (e.id.clone(), lambda)
            })
            .collect(),
    };
    validate_tuple(c, &t).map_err(CoverError::Invalid)?;
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceRow {
    pub degree: usize,
    pub covers: u64,
    pub transitive_reps: u64,
}

impl EquivalenceRow {
    pub fn pass(&self) -> bool {
        self.covers == self.transitive_reps
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub rows: Vec<EquivalenceRow>,
}

impl EquivalenceReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(EquivalenceRow::pass)
    }
}

/// Connected covers against transitive actions of the assembled presentation,
/// degree by degree.
pub fn equivalence_report(c: &Configuration, result: &AssemblyResult, d_max: usize) -> Result<EquivalenceReport, CoverError> {
    let mut rows = Vec::with_capacity(d_max);
    for d in 1..=d_max {
        rows.push(EquivalenceRow {
            degree: d,
            covers: super::count_tuples(c, d)?,
            transitive_reps: count_transitive_reps(&result.presentation, d)?,
        });
    }
    Ok(EquivalenceReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{enumerate_tuples, find_iso};
    use crate::devissage::{assemble_direct, assemble_recursive, Edge, Node};
    use crate::group::{canonical_form, transitive_reps, Presentation};

    fn is_connected(c: &Configuration, t: &DescentTuple) -> bool {
        crate::cover::connected_components(c, t).len() == 1
    }

    fn nodal(group: Presentation, edges: usize) -> Configuration {
        Configuration::new(
            vec![Node::new("X", group)],
            vec![Node::new("Z", Presentation::trivial())],
            (1..=edges).map(|k| Edge::trivial(format!("e{k}"), "X", "Z")).collect(),
        )
    }

    fn swap() -> Perm {
        Perm::cycles(2, &[&[0, 1]]).unwrap()
    }

    #[test]
    fn swap_gluing_gives_swap_action() {
        let c = nodal(Presentation::trivial(), 2);
        let r = assemble_direct(&c).unwrap();
        let mut t = DescentTuple::constant(&c, 2);
        t.gluings.insert("e2".into(), swap());
        let rep = rep_of_tuple(&c, &r, &t).unwrap();
        assert_eq!(rep.images[&GenId::new("e2", 0)], swap());
        assert!(rep.is_transitive());

        t.gluings.insert("e2".into(), Perm::identity(2));
        let rep = rep_of_tuple(&c, &r, &t).unwrap();
        assert!(rep.images.values().all(Perm::is_identity));
        assert!(!rep.is_transitive());
    }

    #[test]
    fn cycle_rep_gives_connected_cover() {
        let c = nodal(Presentation::trivial(), 2);
        let r = assemble_direct(&c).unwrap();
        let cyc = Perm::cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let rep = PermHom::new(4, BTreeMap::from([(GenId::new("e2", 0), cyc)]));
        let t = tuple_of_rep(&c, &r, &rep).unwrap();
        assert!(is_connected(&c, &t));
        assert_eq!(rep_of_tuple(&c, &r, &t).unwrap(), rep);
    }

    #[test]
    fn z2_free_z_swap_and_identity() {
        let c = nodal(Presentation::cyclic("a", 2), 2);
        let r = assemble_direct(&c).unwrap();
        let rep = PermHom::new(
            2,
            BTreeMap::from([(GenId::new("a", 0), swap()), (GenId::new("e2", 0), Perm::identity(2))]),
        );
        let t = tuple_of_rep(&c, &r, &rep).unwrap();
        assert!(is_connected(&c, &t));
    }

    #[test]
    fn bad_rep_is_rejected() {
        let c = nodal(Presentation::cyclic("a", 2), 2);
        let r = assemble_direct(&c).unwrap();
        let rep = PermHom::new(
            3,
            BTreeMap::from([
                (GenId::new("a", 0), Perm::cycles(3, &[&[0, 1, 2]]).unwrap()),
                (GenId::new("e2", 0), Perm::identity(3)),
            ]),
        );
        assert!(matches!(tuple_of_rep(&c, &r, &rep), Err(CoverError::RelatorViolation(_))));
    }

    #[test]
    fn round_trips_at_degree_three() {
        let c = nodal(Presentation::cyclic("a", 2), 2);
        let r = assemble_direct(&c).unwrap();
        for rep in transitive_reps(&r.presentation, 3).unwrap() {
            let t = tuple_of_rep(&c, &r, &rep).unwrap();
            assert_eq!(rep_of_tuple(&c, &r, &t).unwrap(), rep);
        }
        for t in enumerate_tuples(&c, 3).unwrap() {
            let rep = rep_of_tuple(&c, &r, &t).unwrap();
            assert!(rep.is_transitive());
            let back = tuple_of_rep(&c, &r, &rep).unwrap();
            assert!(find_iso(&c, &t, &back).is_some());
        }
    }

    #[test]
    fn recursive_dictionary_is_a_bijection_on_classes() {
        let c = Configuration::new(
            vec![
                Node::new("X1", Presentation::cyclic("a", 2)),
                Node::new("X2", Presentation::trivial()),
            ],
            vec![
                Node::new("Z1", Presentation::trivial()),
                Node::new("Z2", Presentation::trivial()),
            ],
            vec![
                Edge::trivial("e1", "X1", "Z1"),
                Edge::trivial("e2", "X2", "Z1"),
                Edge::trivial("e3", "X1", "Z2"),
                Edge::trivial("e4", "X2", "Z2"),
            ],
        );
        let r = assemble_recursive(&c).unwrap();
        for d in 1..=3 {
            let tuples = enumerate_tuples(&c, d).unwrap();
            let mut classes = std::collections::BTreeSet::new();
            for t in &tuples {
                let rep = rep_of_tuple(&c, &r, t).unwrap();
                assert!(rep.is_transitive());
                classes.insert(canonical_form(&r.presentation, &rep).unwrap().unwrap());
            }
            assert_eq!(classes.len(), tuples.len());
            assert_eq!(classes.len() as u64, count_transitive_reps(&r.presentation, d).unwrap());
        }
    }

    #[test]
    fn report_for_nodal_cubic() {
        let c = nodal(Presentation::trivial(), 2);
        let rep = equivalence_report(&c, &assemble_direct(&c).unwrap(), 4).unwrap();
        assert!(rep.pass());
        assert!(rep.rows.iter().all(|r| r.covers == 1 && r.transitive_reps == 1));
    }
}
