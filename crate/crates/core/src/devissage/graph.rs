use std::collections::VecDeque;

use super::config::Configuration;
use super::DevissageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Component(usize),
    Singular(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub id: String,
    pub component: usize,
    pub singular: usize,
}

/// Bipartite multigraph: component vertices, singular vertices, one edge per
/// configuration edge. Indices refer to the configuration's listing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub components: Vec<String>,
    pub singulars: Vec<String>,
    pub edges: Vec<GraphEdge>,
}

impl IncidenceGraph {
    pub fn vertex_count(&self) -> usize {
        self.components.len() + self.singulars.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn slot(&self, v: Vertex) -> usize {
        match v {
            Vertex::Component(i) => i,
            Vertex::Singular(j) => self.components.len() + j,
        }
    }

    /// Edge indices incident to `v`, in listed order.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter_map(move |(k, e)| {
            let hit = match v {
                Vertex::Component(i) => e.component == i,
                Vertex::Singular(j) => e.singular == j,
            };
            hit.then_some(k)
        })
    }

    pub fn other_end(&self, k: usize, v: Vertex) -> Vertex {
        let e = &self.edges[k];
        match v {
            Vertex::Component(_) => Vertex::Singular(e.singular),
            Vertex::Singular(_) => Vertex::Component(e.component),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return false;
        }
        let start = if self.components.is_empty() {
            Vertex::Singular(0)
        } else {
            Vertex::Component(0)
        };
        self.bfs(start).order.len() == self.vertex_count()
    }

    /// `E − V + 1`; meaningful for connected graphs.
    pub fn betti_number(&self) -> usize {
        (self.edge_count() + 1).saturating_sub(self.vertex_count())
    }

    fn bfs(&self, root: Vertex) -> SpanningTree {
        let mut seen = vec![false; self.vertex_count()];
        let mut parent = vec![None; self.vertex_count()];
        let mut order = Vec::new();
        let mut in_tree = vec![false; self.edge_count()];
        let mut queue = VecDeque::from([root]);
        seen[self.slot(root)] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for k in self.incident(v).collect::<Vec<_>>() {
                let w = self.other_end(k, v);
                let s = self.slot(w);
                if !seen[s] {
                    seen[s] = true;
                    in_tree[k] = true;
                    parent[s] = Some((v, k));
                    queue.push_back(w);
                }
            }
        }
        let (tree, cotree) = (0..self.edge_count()).partition(|&k| in_tree[k]);
        SpanningTree {
            root,
            order,
            tree,
            cotree,
            parent,
            n_components: self.components.len(),
        }
    }
}

/// Breadth-first spanning tree. `order` lists vertices in discovery order,
/// so every vertex after the root has its parent earlier in the list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: Vertex,
    pub order: Vec<Vertex>,
    /// Edge indices, ascending.
    pub tree: Vec<usize>,
    /// Edge indices, ascending.
    pub cotree: Vec<usize>,
    parent: Vec<Option<(Vertex, usize)>>,
    n_components: usize,
}

impl SpanningTree {
    /// The parent vertex and the tree edge joining them; `None` at the root.
    pub fn parent(&self, v: Vertex) -> Option<(Vertex, usize)> {
        let s = match v {
            Vertex::Component(i) => i,
            Vertex::Singular(j) => self.n_components + j,
        };
        self.parent[s]
    }

    pub fn is_tree_edge(&self, k: usize) -> bool {
        self.tree.binary_search(&k).is_ok()
    }
}

pub fn build_graph(c: &Configuration) -> IncidenceGraph {
    IncidenceGraph {
        components: c.components.iter().map(|n| n.id.clone()).collect(),
        singulars: c.singulars.iter().map(|n| n.id.clone()).collect(),
        edges: c
            .edges
            .iter()
            .map(|e| GraphEdge {
                id: e.id.clone(),
                component: c.component_position(&e.component).expect("validated edge endpoint"),
                singular: c.singular_position(&e.singular).expect("validated edge endpoint"),
            })
            .collect(),
    }
}

pub fn connected(g: &IncidenceGraph) -> bool {
    g.is_connected()
}

/// `m̃ − m − n + 1`: edges minus singulars minus components plus one.
pub fn free_rank(c: &Configuration) -> Result<usize, DevissageError> {
    let g = build_graph(c);
    if !g.is_connected() {
        return Err(DevissageError::Disconnected);
    }
    Ok(c.edges.len() + 1 - c.singulars.len() - c.components.len())
}

/// The spanning tree rooted at the lexicographically least component id.
pub fn spanning_tree(g: &IncidenceGraph) -> Result<SpanningTree, DevissageError> {
    let root = g
        .components
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .ok_or(DevissageError::Disconnected)?;
    spanning_tree_rooted(g, root)
}

/// The spanning tree rooted at component `root` (listed position).
pub fn spanning_tree_rooted(g: &IncidenceGraph, root: usize) -> Result<SpanningTree, DevissageError> {
    if root >= g.components.len() {
        return Err(DevissageError::UnknownRoot(root.to_string()));
    }
    let t = g.bfs(Vertex::Component(root));
    if t.order.len() != g.vertex_count() {
        return Err(DevissageError::Disconnected);
    }
    Ok(t)
}
