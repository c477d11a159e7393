use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::group::{Presentation, WordHom};

/// A component of the normalization or a connected component of the
/// singular locus, with its fundamental group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub group: Presentation,
}

impl Node {
    pub fn new(id: impl Into<String>, group: Presentation) -> Self {
        Node { id: id.into(), group }
    }
}

/// A connected component of the preimage of the singular locus: it lies in
/// one component and maps to one singular node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub component: String,
    pub singular: String,
    pub group: Presentation,
    /// Edge group into the component group.
    pub psi: WordHom,
    /// Edge group into the singular group.
    pub phi: WordHom,
}

impl Edge {
    /// An edge with trivial group and trivial maps.
    pub fn trivial(id: impl Into<String>, component: impl Into<String>, singular: impl Into<String>) -> Self {
        Edge {
            id: id.into(),
            component: component.into(),
            singular: singular.into(),
            group: Presentation::trivial(),
            psi: WordHom::default(),
            phi: WordHom::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Configuration {
    pub components: Vec<Node>,
    pub singulars: Vec<Node>,
    pub edges: Vec<Edge>,
}

impl Configuration {
    pub fn new(components: Vec<Node>, singulars: Vec<Node>, edges: Vec<Edge>) -> Self {
        Configuration {
            components,
            singulars,
            edges,
        }
    }

    pub fn component(&self, id: &str) -> Option<&Node> {
        self.components.iter().find(|n| n.id == id)
    }

    pub fn singular(&self, id: &str) -> Option<&Node> {
        self.singulars.iter().find(|n| n.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn component_position(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|n| n.id == id)
    }

    pub fn singular_position(&self, id: &str) -> Option<usize> {
        self.singulars.iter().position(|n| n.id == id)
    }

    /// True iff every singular and edge group has no generators.
    pub fn is_curve_like(&self) -> bool {
        self.singulars.iter().all(|n| n.group.rank() == 0) && self.edges.iter().all(|e| e.group.rank() == 0)
    }

    /// True iff every group in the configuration has no generators.
    pub fn is_all_trivial(&self) -> bool {
        self.is_curve_like() && self.components.iter().all(|n| n.group.rank() == 0)
    }

    /// The sub-configuration on the given singular ids: those singulars, all
    /// their edges, and every component touched by one of those edges. Order
    /// follows the listing in `self`.
    pub fn restricted_to_singulars(&self, singulars: &BTreeSet<&str>) -> Configuration {
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| singulars.contains(e.singular.as_str()))
            .cloned()
            .collect();
        let touched: BTreeSet<&str> = edges.iter().map(|e| e.component.as_str()).collect();
        Configuration {
            components: self
                .components
                .iter()
                .filter(|n| touched.contains(n.id.as_str()))
                .cloned()
                .collect(),
            singulars: self
                .singulars
                .iter()
                .filter(|n| singulars.contains(n.id.as_str()))
                .cloned()
                .collect(),
            edges,
        }
    }
}

/// One structural problem with a [`Configuration`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigIssue {
    Empty,
    DuplicateId(String),
    DanglingComponent { edge: String, component: String },
    DanglingSingular { edge: String, singular: String },
    IsolatedSingular(String),
    NamespaceCollision { namespace: String, first: String, second: String },
    ReservedNamespace { namespace: String, owner: String },
    BadMap { edge: String, map: &'static str, reason: String },
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigIssue::Empty => write!(f, "configuration has no components"),
            ConfigIssue::DuplicateId(id) => write!(f, "id `{id}` is used more than once"),
            ConfigIssue::DanglingComponent { edge, component } => {
                write!(f, "edge `{edge}` references missing component `{component}`")
            }
            ConfigIssue::DanglingSingular { edge, singular } => {
                write!(f, "edge `{edge}` references missing singular `{singular}`")
            }
            ConfigIssue::IsolatedSingular(id) => write!(f, "singular `{id}` has no incident edge"),
            ConfigIssue::NamespaceCollision {
                namespace,
                first,
                second,
            } => write!(f, "generator namespace `{namespace}` is used by both `{first}` and `{second}`"),
            ConfigIssue::ReservedNamespace { namespace, owner } => write!(
                f,
                "generator namespace `{namespace}` of `{owner}` is reserved (edge ids name free generators; `/`, `[`, `]` are reserved)"
            ),
            ConfigIssue::BadMap { edge, map, reason } => write!(f, "{map} of edge `{edge}`: {reason}"),
        }
    }
}

fn reserved_characters(ns: &str) -> bool {
    ns.contains(['/', '[', ']'])
}

/// Structural checks. Connectivity is checked separately by the assembly
/// operations.
pub fn validate_config(c: &Configuration) -> Result<(), Vec<ConfigIssue>> {
    let mut issues = Vec::new();
    if c.components.is_empty() {
        issues.push(ConfigIssue::Empty);
    }

    let mut ids = BTreeSet::new();
    let all_ids = c
        .components
        .iter()
        .map(|n| &n.id)
        .chain(c.singulars.iter().map(|n| &n.id))
        .chain(c.edges.iter().map(|e| &e.id));
    for id in all_ids {
        if !ids.insert(id.as_str()) {
            issues.push(ConfigIssue::DuplicateId(id.clone()));
        }
    }

    for e in &c.edges {
        if c.component(&e.component).is_none() {
            issues.push(ConfigIssue::DanglingComponent {
                edge: e.id.clone(),
                component: e.component.clone(),
            });
        }
        if c.singular(&e.singular).is_none() {
            issues.push(ConfigIssue::DanglingSingular {
                edge: e.id.clone(),
                singular: e.singular.clone(),
            });
        }
    }
    for z in &c.singulars {
        if !c.edges.iter().any(|e| e.singular == z.id) {
            issues.push(ConfigIssue::IsolatedSingular(z.id.clone()));
        }
    }

    let edge_ids: BTreeSet<&str> = c.edges.iter().map(|e| e.id.as_str()).collect();
    let mut owners: BTreeMap<String, String> = BTreeMap::new();
    let groups = c
        .components
        .iter()
        .map(|n| (&n.id, &n.group, true))
        .chain(c.singulars.iter().map(|n| (&n.id, &n.group, true)))
        .chain(c.edges.iter().map(|e| (&e.id, &e.group, false)));
    for (owner, group, assembled) in groups {
        for ns in group.namespaces() {
            if reserved_characters(ns) || (assembled && edge_ids.contains(ns)) {
                issues.push(ConfigIssue::ReservedNamespace {
                    namespace: ns.to_string(),
                    owner: owner.clone(),
                });
            }
            match owners.get(ns) {
                Some(first) => issues.push(ConfigIssue::NamespaceCollision {
                    namespace: ns.to_string(),
                    first: first.clone(),
                    second: owner.clone(),
                }),
                None => {
                    owners.insert(ns.to_string(), owner.clone());
                }
            }
        }
    }

    for e in &c.edges {
        if let Some(x) = c.component(&e.component) {
            if let Err(err) = e.psi.check(&e.group, &x.group) {
                issues.push(ConfigIssue::BadMap {
                    edge: e.id.clone(),
                    map: "psi",
                    reason: err.to_string(),
                });
            }
        }
        if let Some(z) = c.singular(&e.singular) {
            if let Err(err) = e.phi.check(&e.group, &z.group) {
                issues.push(ConfigIssue::BadMap {
                    edge: e.id.clone(),
                    map: "phi",
                    reason: err.to_string(),
                });
            }
        }
    }

    if issues.is_empty() {
        Ok(())
    } else {
        Err(issues)
    }
}
