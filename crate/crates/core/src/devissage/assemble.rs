use std::collections::BTreeMap;

use super::config::{validate_config, Configuration};
use super::graph::{build_graph, spanning_tree, spanning_tree_rooted, IncidenceGraph, SpanningTree};
use super::DevissageError;
use crate::group::{GenId, Presentation, Word};

/// Where a generator of an assembled presentation comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Component { id: String, generator: GenId },
    Singular { id: String, generator: GenId },
    /// The free generator attached to a cotree edge.
    FreeEdge { edge: String },
    /// A free conjugator `v_index` introduced when gluing off `block`.
    Conjugator { block: String, index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Recursive,
    CurveFastPath,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Recursive => "recursive",
            Method::CurveFastPath => "curve-fast-path",
        }
    }
}

/// How the presentation was put together; needed to translate covers into
/// actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// One spanning tree over the whole configuration.
    Direct {
        root: String,
        tree: Vec<String>,
        cotree: Vec<String>,
    },
    /// The singular `block` and its star (`near`, generators renamed with
    /// `near_prefix`) glued to the rest (`far`) along `shared` components.
    Vk {
        block: String,
        near_config: Box<Configuration>,
        far_config: Box<Configuration>,
        near: Box<AssemblyResult>,
        far: Box<AssemblyResult>,
        near_prefix: String,
        shared: Vec<String>,
        conjugators: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyResult {
    pub presentation: Presentation,
    pub dictionary: BTreeMap<GenId, Origin>,
    pub method: Method,
    pub structure: Structure,
    pub notes: Vec<String>,
}

impl AssemblyResult {
    /// Edges whose conjugator is the identity.
    pub fn tree(&self) -> Vec<String> {
        match &self.structure {
            Structure::Direct { tree, .. } => tree.clone(),
            Structure::Vk { near, far, .. } => {
                let mut t = near.tree();
                t.extend(far.tree());
                t.sort();
                t
            }
        }
    }

    /// The component whose fiber carries the assembled action.
    pub fn root(&self) -> &str {
        match &self.structure {
            Structure::Direct { root, .. } => root,
            Structure::Vk { near, .. } => near.root(),
        }
    }
}

pub(crate) fn checked_graph(c: &Configuration) -> Result<IncidenceGraph, DevissageError> {
    validate_config(c).map_err(DevissageError::Invalid)?;
    let g = build_graph(c);
    if !g.is_connected() {
        return Err(DevissageError::Disconnected);
    }
    Ok(g)
}

pub fn free_generator(edge_id: &str) -> GenId {
    GenId::new(edge_id, 0)
}

/// Graph-of-groups presentation over the default spanning tree.
pub fn assemble_direct(c: &Configuration) -> Result<AssemblyResult, DevissageError> {
    let g = checked_graph(c)?;
    let t = spanning_tree(&g)?;
    Ok(direct_over(c, &g, &t, true))
}

/// As [`assemble_direct`] with the tree grown from component `root`.
pub fn assemble_direct_rooted(c: &Configuration, root: &str) -> Result<AssemblyResult, DevissageError> {
    let g = checked_graph(c)?;
    let pos = c
        .component_position(root)
        .ok_or_else(|| DevissageError::UnknownRoot(root.to_string()))?;
    let t = spanning_tree_rooted(&g, pos)?;
    Ok(direct_over(c, &g, &t, true))
}

/// The free product of the component groups with one free generator per
/// cotree edge. Requires every singular and edge group to be generator-free,
/// in which case it coincides with [`assemble_direct`].
pub fn assemble_curve(c: &Configuration) -> Result<AssemblyResult, DevissageError> {
    let g = checked_graph(c)?;
    if let Some(z) = c.singulars.iter().find(|n| n.group.rank() > 0) {
        return Err(DevissageError::NotCurve(format!("singular `{}` has a nontrivial group", z.id)));
    }
    if let Some(e) = c.edges.iter().find(|e| e.group.rank() > 0) {
        return Err(DevissageError::NotCurve(format!("edge `{}` has a nontrivial group", e.id)));
    }
    let t = spanning_tree(&g)?;
    let mut out = direct_over(c, &g, &t, false);
    out.method = Method::CurveFastPath;
    Ok(out)
}

fn direct_over(c: &Configuration, g: &IncidenceGraph, t: &SpanningTree, with_edge_relators: bool) -> AssemblyResult {
    let mut gens = Vec::new();
    let mut rels = Vec::new();
    let mut dictionary = BTreeMap::new();
    for x in &c.components {
        for a in x.group.generators() {
            gens.push(a.clone());
            dictionary.insert(
                a.clone(),
                Origin::Component {
                    id: x.id.clone(),
                    generator: a.clone(),
                },
            );
        }
        rels.extend(x.group.relations().iter().cloned());
    }
    for z in &c.singulars {
        for a in z.group.generators() {
            gens.push(a.clone());
            dictionary.insert(
                a.clone(),
                Origin::Singular {
                    id: z.id.clone(),
                    generator: a.clone(),
                },
            );
        }
        rels.extend(z.group.relations().iter().cloned());
    }
    for &k in &t.cotree {
        let x = free_generator(&c.edges[k].id);
        gens.push(x.clone());
        dictionary.insert(
            x,
            Origin::FreeEdge {
                edge: c.edges[k].id.clone(),
            },
        );
    }
    if with_edge_relators {
        for (k, e) in c.edges.iter().enumerate() {
            let x = if t.is_tree_edge(k) {
                Word::identity()
            } else {
                Word::gen(free_generator(&e.id))
            };
            for a in e.group.generators() {
                let psi = e.psi.image(a).cloned().unwrap_or_default();
                let phi = e.phi.image(a).cloned().unwrap_or_default();
                rels.push(psi.inverse().mul(&phi.conjugated_by(&x)));
            }
        }
    }
    let presentation = Presentation::new(gens, rels).expect("validated configuration assembles");
    let root = match t.root {
        super::graph::Vertex::Component(i) => g.components[i].clone(),
        super::graph::Vertex::Singular(j) => g.singulars[j].clone(),
    };
    AssemblyResult {
        presentation,
        dictionary,
        method: Method::Direct,
        structure: Structure::Direct {
            root,
            tree: t.tree.iter().map(|&k| g.edges[k].id.clone()).collect(),
            cotree: t.cotree.iter().map(|&k| g.edges[k].id.clone()).collect(),
        },
        notes: vec![],
    }
}
