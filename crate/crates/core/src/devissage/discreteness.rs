//! Three-valued discreteness verdicts folded through an assembly.
//!
//! A coproduct is discrete iff every factor is; a quotient is discrete iff
//! the group it is a quotient of is. Free factors are always discrete.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::assemble::{AssemblyResult, Structure};
use super::config::Configuration;
use super::DevissageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Discrete,
    NotDiscrete,
    Unknown,
}

impl Verdict {
    pub const ALL: [Verdict; 3] = [Verdict::Discrete, Verdict::NotDiscrete, Verdict::Unknown];

    /// Kleene conjunction: any `NotDiscrete` wins, then any `Unknown`.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (NotDiscrete, _) | (_, NotDiscrete) => NotDiscrete,
            (Unknown, _) | (_, Unknown) => Unknown,
            _ => Discrete,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Discrete => "discrete",
            Verdict::NotDiscrete => "not-discrete",
            Verdict::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "discrete" => Ok(Verdict::Discrete),
            "not-discrete" => Ok(Verdict::NotDiscrete),
            "unknown" => Ok(Verdict::Unknown),
            other => Err(format!("unknown verdict `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictTree {
    Leaf { label: String, verdict: Verdict },
    Coproduct(Vec<VerdictTree>),
    Quotient(Box<VerdictTree>),
}

impl VerdictTree {
    pub fn fold(&self) -> Verdict {
        match self {
            VerdictTree::Leaf { verdict, .. } => *verdict,
            VerdictTree::Coproduct(children) => children
                .iter()
                .fold(Verdict::Discrete, |acc, t| acc.and(t.fold())),
            VerdictTree::Quotient(inner) => inner.fold(),
        }
    }

    pub fn leaves(&self) -> Vec<(&str, Verdict)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(&'a str, Verdict)>) {
        match self {
            VerdictTree::Leaf { label, verdict } => out.push((label, *verdict)),
            VerdictTree::Coproduct(children) => children.iter().for_each(|t| t.collect_leaves(out)),
            VerdictTree::Quotient(inner) => inner.collect_leaves(out),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeVerdict {
    pub id: String,
    pub verdict: Verdict,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscretenessVerdict {
    pub overall: Verdict,
    pub per_component: Vec<NodeVerdict>,
    pub per_singular: Vec<NodeVerdict>,
    pub tree: VerdictTree,
}

fn node_verdict(
    id: &str,
    trivial: bool,
    supplied: &BTreeMap<String, Verdict>,
) -> Result<NodeVerdict, DevissageError> {
    match supplied.get(id) {
        Some(v) => Ok(NodeVerdict {
            id: id.to_string(),
            verdict: *v,
            reason: "supplied".to_string(),
        }),
        None if trivial => Ok(NodeVerdict {
            id: id.to_string(),
            verdict: Verdict::Discrete,
            reason: "trivial group".to_string(),
        }),
        None => Err(DevissageError::MissingVerdict(id.to_string())),
    }
}

fn build_tree(c: &Configuration, result: &AssemblyResult, verdicts: &BTreeMap<&str, Verdict>) -> VerdictTree {
    let leaf = |label: String, verdict: Verdict| VerdictTree::Leaf { label, verdict };
    match &result.structure {
        Structure::Direct { cotree, .. } => {
            let mut children = Vec::new();
            for x in &c.components {
                children.push(leaf(format!("component {}", x.id), verdicts[x.id.as_str()]));
            }
            for z in &c.singulars {
                children.push(leaf(format!("singular {}", z.id), verdicts[z.id.as_str()]));
            }
            for e in cotree {
                children.push(leaf(format!("free {e}"), Verdict::Discrete));
            }
            VerdictTree::Quotient(Box::new(VerdictTree::Coproduct(children)))
        }
        Structure::Vk {
            near_config,
            far_config,
            near,
            far,
            shared,
            conjugators,
            ..
        } => {
            let mut children = vec![
                build_tree(near_config, near, verdicts),
                build_tree(far_config, far, verdicts),
            ];
            for i in 2..=shared.len() {
                children.push(leaf(format!("free {conjugators}.{i}"), Verdict::Discrete));
            }
            VerdictTree::Quotient(Box::new(VerdictTree::Coproduct(children)))
        }
    }
}

/// Folds per-node verdicts through the assembly. Every component and every
/// singular node with a nontrivial group needs a supplied verdict; nodes with
/// generator-free groups default to discrete.
pub fn discreteness(
    c: &Configuration,
    result: &AssemblyResult,
    supplied: &BTreeMap<String, Verdict>,
) -> Result<DiscretenessVerdict, DevissageError> {
    let per_component = c
        .components
        .iter()
        .map(|x| node_verdict(&x.id, x.group.rank() == 0, supplied))
        .collect::<Result<Vec<_>, _>>()?;
    let per_singular = c
        .singulars
        .iter()
        .map(|z| node_verdict(&z.id, z.group.rank() == 0, supplied))
        .collect::<Result<Vec<_>, _>>()?;
    let lookup: BTreeMap<&str, Verdict> = per_component
        .iter()
        .chain(&per_singular)
        .map(|n| (n.id.as_str(), n.verdict))
        .collect();
    let tree = build_tree(c, result, &lookup);
    Ok(DiscretenessVerdict {
        overall: tree.fold(),
        per_component,
        per_singular,
        tree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devissage::assemble::assemble_direct;
    use crate::devissage::config::{Edge, Node};
    use crate::devissage::split::assemble_recursive;
    use crate::group::Presentation;

    fn cycle_of_two() -> Configuration {
        Configuration::new(
            vec![
                Node::new("X1", Presentation::cyclic("a", 2)),
                Node::new("X2", Presentation::cyclic("b", 2)),
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
        )
    }

    fn supplied(v1: Verdict, v2: Verdict) -> BTreeMap<String, Verdict> {
        BTreeMap::from([("X1".to_string(), v1), ("X2".to_string(), v2)])
    }

    #[test]
    fn and_table() {
        use Verdict::*;
        assert_eq!(Discrete.and(Discrete), Discrete);
        assert_eq!(Discrete.and(Unknown), Unknown);
        assert_eq!(Unknown.and(NotDiscrete), NotDiscrete);
        for v in Verdict::ALL {
            assert_eq!(v.and(Discrete), v);
            assert_eq!(v.and(NotDiscrete), NotDiscrete);
        }
    }

    #[test]
    fn examples_on_both_assemblies() {
        use Verdict::*;
        let c = cycle_of_two();
        for r in [assemble_direct(&c).unwrap(), assemble_recursive(&c).unwrap()] {
            let run = |a, b| discreteness(&c, &r, &supplied(a, b)).unwrap().overall;
            assert_eq!(run(Discrete, Discrete), Discrete);
            assert_eq!(run(NotDiscrete, Discrete), NotDiscrete);
            assert_eq!(run(Unknown, Discrete), Unknown);
        }
    }

    #[test]
    fn missing_component_verdict_is_an_error() {
        let c = cycle_of_two();
        let r = assemble_direct(&c).unwrap();
        let only_one = BTreeMap::from([("X1".to_string(), Verdict::Discrete)]);
        assert!(matches!(
            discreteness(&c, &r, &only_one),
            Err(DevissageError::MissingVerdict(id)) if id == "X2"
        ));
    }

    #[test]
    fn nontrivial_singular_needs_a_verdict() {
        let mut c = cycle_of_two();
        c.singulars[0].group = Presentation::cyclic("s", 3);
        let r = assemble_direct(&c).unwrap();
        let mut v = supplied(Verdict::Discrete, Verdict::Discrete);
        assert!(discreteness(&c, &r, &v).is_err());
        v.insert("Z1".into(), Verdict::Unknown);
        assert_eq!(discreteness(&c, &r, &v).unwrap().overall, Verdict::Unknown);
    }

    #[test]
    fn verdict_names_round_trip() {
        for v in Verdict::ALL {
            assert_eq!(v.name().parse::<Verdict>().unwrap(), v);
        }
    }
}
