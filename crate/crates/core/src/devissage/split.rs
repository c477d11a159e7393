use std::collections::{BTreeMap, BTreeSet};

use super::assemble::{assemble_direct, checked_graph, AssemblyResult, Method, Origin, Structure};
use super::config::Configuration;
use super::graph::build_graph;
use super::DevissageError;
use crate::group::{GenId, Word, WordHom};
use crate::vk::{vk_construct, Interface, VkInput};

/// The star of one singular node: the node, its edges, and every component
/// adjacent to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub singular: String,
    pub edges: Vec<String>,
    pub components: Vec<String>,
    pub config: Configuration,
}

/// One block per singular node, in listed order. Each block is checked to be
/// connected and to contain no other singular node.
pub fn compute_t_split(c: &Configuration) -> Result<Vec<Block>, DevissageError> {
    checked_graph(c)?;
    if c.singulars.is_empty() {
        return Err(DevissageError::NoSingularLocus);
    }
    let mut blocks = Vec::with_capacity(c.singulars.len());
    for z in &c.singulars {
        let config = c.restricted_to_singulars(&BTreeSet::from([z.id.as_str()]));
        if !build_graph(&config).is_connected() || config.singulars.len() != 1 {
            return Err(DevissageError::BadBlock(z.id.clone()));
        }
        blocks.push(Block {
            singular: z.id.clone(),
            edges: config.edges.iter().map(|e| e.id.clone()).collect(),
            components: config.components.iter().map(|n| n.id.clone()).collect(),
            config,
        });
    }
    Ok(blocks)
}

/// Greedy order of the singular ids: start with the first listed singular,
/// then repeatedly take the first listed block sharing a component with
/// the union so far. Every prefix of the result spans a connected piece.
pub fn order_t(c: &Configuration) -> Result<Vec<String>, DevissageError> {
    let blocks = compute_t_split(c)?;
    let mut used = vec![false; blocks.len()];
    let mut reached: BTreeSet<&str> = BTreeSet::new();
    let mut order = Vec::with_capacity(blocks.len());
    for step in 0..blocks.len() {
        let next = (0..blocks.len())
            .find(|&j| !used[j] && (step == 0 || blocks[j].components.iter().any(|x| reached.contains(x.as_str()))))
            .ok_or(DevissageError::Disconnected)?;
        used[next] = true;
        reached.extend(blocks[next].components.iter().map(String::as_str));
        order.push(blocks[next].singular.clone());
    }
    Ok(order)
}

fn near_namespace(block: &str, ns: &str) -> String {
    format!("{block}/{ns}")
}

/// Where generator `g` of component `id` lives in an assembled presentation.
/// A component on both sides of a split is read from the near side, which is
/// also where the cover dictionary takes its transport from.
fn component_generator(result: &AssemblyResult, id: &str, g: &GenId) -> Option<GenId> {
    match &result.structure {
        Structure::Direct { .. } => result.presentation.contains(g).then(|| g.clone()),
        Structure::Vk {
            near_config,
            near,
            far,
            near_prefix,
            ..
        } => {
            if near_config.component(id).is_some() {
                component_generator(near, id, g).map(|n| GenId::new(format!("{near_prefix}{}", n.namespace), n.index))
            } else {
                component_generator(far, id, g)
            }
        }
    }
}

/// Splits off the last block of [`order_t`], assembles it directly and the
/// rest recursively, and glues the two along the shared components with the
/// VK construction. With at most one singular node this is
/// [`assemble_direct`].
pub fn assemble_recursive(c: &Configuration) -> Result<AssemblyResult, DevissageError> {
    checked_graph(c)?;
    if c.singulars.len() <= 1 {
        return assemble_direct(c);
    }
    let order = order_t(c)?;
    let block = order.last().expect("at least two singulars").clone();
    let near_config = c.restricted_to_singulars(&BTreeSet::from([block.as_str()]));
    let rest: BTreeSet<&str> = order[..order.len() - 1].iter().map(String::as_str).collect();
    let far_config = c.restricted_to_singulars(&rest);

    let near = assemble_direct(&near_config)?;
    let far = assemble_recursive(&far_config)?;

    let shared: Vec<String> = c
        .components
        .iter()
        .filter(|x| near_config.component(&x.id).is_some() && far_config.component(&x.id).is_some())
        .map(|x| x.id.clone())
        .collect();
    if shared.is_empty() {
        return Err(DevissageError::Disconnected);
    }

    let to_near = |g: &GenId| GenId::new(near_namespace(&block, &g.namespace), g.index);
    let near_pres = near.presentation.rename(to_near)?;
    let mut interfaces = Vec::with_capacity(shared.len());
    for id in &shared {
        let group = &c.component(id).expect("shared component exists").group;
        let iface_ns = |g: &GenId| GenId::new(format!("I[{block}]/{}", g.namespace), g.index);
        let iface = group.rename(iface_ns)?;
        let mut psi = BTreeMap::new();
        let mut phi = BTreeMap::new();
        for a in group.generators() {
            psi.insert(iface_ns(a), Word::gen(to_near(a)));
            let far_gen = component_generator(&far, id, a).ok_or_else(|| DevissageError::BadBlock(block.clone()))?;
            phi.insert(iface_ns(a), Word::gen(far_gen));
        }
        interfaces.push(Interface {
            group: iface,
            psi: WordHom::new(psi),
            phi: WordHom::new(phi),
        });
    }
    let conjugators = format!("F[{block}]");
    let input = VkInput::new(near_pres, far.presentation.clone(), interfaces).with_conjugators(conjugators.clone());
    let vk = vk_construct(&input)?;

    let mut dictionary = BTreeMap::new();
    for (g, origin) in &near.dictionary {
        dictionary.insert(to_near(g), origin.clone());
    }
    for (g, origin) in &far.dictionary {
        dictionary.insert(g.clone(), origin.clone());
    }
    for i in 2..=shared.len() {
        dictionary.insert(
            GenId::new(conjugators.clone(), i),
            Origin::Conjugator {
                block: block.clone(),
                index: i,
            },
        );
    }

    let mut notes = far.notes.clone();
    notes.push(format!(
        "split off `{block}`: glued along {} shared component(s) [{}]",
        shared.len(),
        shared.join(", ")
    ));
    notes.extend(vk.provenance.iter().map(|p| format!("`{block}` {p}")));

    Ok(AssemblyResult {
        presentation: vk.presentation,
        dictionary,
        method: Method::Recursive,
        structure: Structure::Vk {
            block: block.clone(),
            near_config: Box::new(near_config),
            far_config: Box::new(far_config),
            near: Box::new(near),
            far: Box::new(far),
            near_prefix: format!("{block}/"),
            shared,
            conjugators,
        },
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devissage::config::{Edge, Node};
    use crate::group::{fingerprint, PermGroupTarget, Presentation};

    fn trivial(comps: &[&str], sings: &[&str], edges: &[(&str, &str, &str)]) -> Configuration {
        Configuration::new(
            comps.iter().map(|i| Node::new(*i, Presentation::trivial())).collect(),
            sings.iter().map(|i| Node::new(*i, Presentation::trivial())).collect(),
            edges.iter().map(|(e, x, z)| Edge::trivial(*e, *x, *z)).collect(),
        )
    }

    fn cycle_of_two() -> Configuration {
        trivial(
            &["X1", "X2"],
            &["Z1", "Z2"],
            &[("e1", "X1", "Z1"), ("e2", "X2", "Z1"), ("e3", "X1", "Z2"), ("e4", "X2", "Z2")],
        )
    }

    fn chain() -> Configuration {
        trivial(
            &["X1", "X2", "X3"],
            &["Z1", "Z2"],
            &[("e1", "X1", "Z1"), ("e2", "X2", "Z1"), ("e3", "X2", "Z2"), ("e4", "X3", "Z2")],
        )
    }

    fn probes() -> Vec<PermGroupTarget> {
        ["S_2", "Z/3", "S_3", "Z/4"]
            .iter()
            .map(|p| PermGroupTarget::parse(p).unwrap())
            .collect()
    }

    #[test]
    fn blocks_of_chain() {
        let blocks = compute_t_split(&chain()).unwrap();
        assert_eq!(blocks[0].components, vec!["X1", "X2"]);
        assert_eq!(blocks[1].components, vec!["X2", "X3"]);
        assert_eq!(order_t(&chain()).unwrap(), vec!["Z1", "Z2"]);
    }

    #[test]
    fn single_block_is_whole_config() {
        let c = trivial(&["X"], &["Z"], &[("e1", "X", "Z"), ("e2", "X", "Z")]);
        let blocks = compute_t_split(&c).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].config, c);
        assert_eq!(assemble_recursive(&c).unwrap(), assemble_direct(&c).unwrap());
    }

    #[test]
    fn regular_config_has_no_split() {
        let c = trivial(&["X"], &[], &[]);
        assert!(matches!(compute_t_split(&c), Err(DevissageError::NoSingularLocus)));
    }

    #[test]
    fn greedy_order_skips_unreachable_blocks() {
        // Z2 only touches X3, which becomes reachable after Z3
        let c = trivial(
            &["X1", "X2", "X3"],
            &["Z1", "Z2", "Z3"],
            &[
                ("e1", "X1", "Z1"),
                ("e2", "X3", "Z2"),
                ("e3", "X1", "Z3"),
                ("e4", "X3", "Z3"),
                ("e5", "X2", "Z1"),
            ],
        );
        assert_eq!(order_t(&c).unwrap(), vec!["Z1", "Z3", "Z2"]);
    }

    #[test]
    fn cycle_of_two_lines_recursive_matches_direct() {
        let c = cycle_of_two();
        let rec = assemble_recursive(&c).unwrap();
        assert_eq!(rec.method, Method::Recursive);
        let f_rec = fingerprint(&rec.presentation, &probes()).unwrap();
        let f_dir = fingerprint(&assemble_direct(&c).unwrap().presentation, &probes()).unwrap();
        assert_eq!(f_rec, f_dir);
        assert_eq!(f_rec.counts[2], 6);
    }

    #[test]
    fn chain_is_trivial() {
        let rec = assemble_recursive(&chain()).unwrap();
        let f = fingerprint(&rec.presentation, &probes()).unwrap();
        assert!(f.counts.iter().all(|&n| n == 1));
    }

    #[test]
    fn shared_generators_resolve_through_nested_splits() {
        // The last split glues along X1, whose generator sits inside the far
        // side's own near part and so carries a prefix there.
        let mut c = trivial(
            &["X0", "X1"],
            &["Z0", "Z1", "Z2"],
            &[("e0", "X0", "Z2"), ("e1", "X1", "Z1"), ("e2", "X0", "Z1"), ("e3", "X1", "Z0")],
        );
        c.components[1].group = Presentation::cyclic("a1", 2);
        let rec = assemble_recursive(&c).unwrap();
        let f_rec = fingerprint(&rec.presentation, &probes()).unwrap();
        let f_dir = fingerprint(&assemble_direct(&c).unwrap().presentation, &probes()).unwrap();
        assert_eq!(f_rec, f_dir);
    }
}
