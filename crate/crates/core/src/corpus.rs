//! Named example configurations and VK inputs shared by tests, benches,
//! the acceptance suite and the CLI.

use std::collections::BTreeMap;

use crate::devissage::{Configuration, Edge, Node};
use crate::group::{presentation_of_perm_group, GenId, Perm, PermGroupTarget, Presentation, Word, WordHom};
use crate::vk::{Interface, VkInput};

/// Probe groups used when none are specified.
pub const DEFAULT_PROBES: [&str; 3] = ["Z/2", "Z/3", "S_3"];

pub fn default_probes() -> Vec<PermGroupTarget> {
    DEFAULT_PROBES
        .iter()
        .map(|p| PermGroupTarget::parse(p).expect("built-in probe name"))
        .collect()
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub name: &'static str,
    pub config: Configuration,
    /// Largest degree at which covers are compared.
    pub max_degree: usize,
}

fn node(id: &str, group: Presentation) -> Node {
    Node::new(id, group)
}

fn trivial(id: &str) -> Node {
    Node::new(id, Presentation::trivial())
}

fn gen(ns: &str) -> GenId {
    GenId::new(ns, 0)
}

fn map1(from: &str, to: Word) -> WordHom {
    WordHom::new(BTreeMap::from([(gen(from), to)]))
}

/// An edge whose order-two group maps onto `psi` in the component and `phi`
/// in the singular node.
fn edge_with(id: &str, x: &str, z: &str, ns: &str, psi: Word, phi: Word) -> Edge {
    Edge {
        id: id.into(),
        component: x.into(),
        singular: z.into(),
        group: Presentation::cyclic(ns, 2),
        psi: map1(ns, psi),
        phi: map1(ns, phi),
    }
}

/// One component with a self-crossing: two edges into one point.
pub fn nodal(group: Presentation) -> Configuration {
    Configuration::new(
        vec![node("X", group)],
        vec![trivial("Z")],
        vec![Edge::trivial("e1", "X", "Z"), Edge::trivial("e2", "X", "Z")],
    )
}

pub fn nodal_cubic() -> Configuration {
    nodal(Presentation::trivial())
}

/// One component meeting one point along `k` branches.
pub fn multi_edge(k: usize) -> Configuration {
    Configuration::new(
        vec![trivial("X")],
        vec![trivial("Z")],
        (1..=k).map(|i| Edge::trivial(format!("e{i}"), "X", "Z")).collect(),
    )
}

/// `k ≥ 2` lines `L1 … Lk`, consecutive ones meeting at `P1 … Pk` (cyclically).
pub fn cycle_of_lines(k: usize) -> Configuration {
    assert!(k >= 2, "a cycle needs at least two lines");
    let comps = (1..=k).map(|i| trivial(&format!("L{i}"))).collect();
    let sings = (1..=k).map(|i| trivial(&format!("P{i}"))).collect();
    let mut edges = Vec::new();
    for i in 1..=k {
        let next = i % k + 1;
        edges.push(Edge::trivial(format!("e{i}a"), format!("L{i}"), format!("P{i}")));
        edges.push(Edge::trivial(format!("e{i}b"), format!("L{next}"), format!("P{i}")));
    }
    Configuration::new(comps, sings, edges)
}

/// `k` lines through one point.
pub fn star(k: usize) -> Configuration {
    Configuration::new(
        (1..=k).map(|i| trivial(&format!("X{i}"))).collect(),
        vec![trivial("Z")],
        (1..=k)
            .map(|i| Edge::trivial(format!("e{i}"), format!("X{i}"), "Z"))
            .collect(),
    )
}

/// `X1 – Z1 – X2 – Z2 – X3`.
pub fn chain3() -> Configuration {
    Configuration::new(
        vec![trivial("X1"), trivial("X2"), trivial("X3")],
        vec![trivial("Z1"), trivial("Z2")],
        vec![
            Edge::trivial("e1", "X1", "Z1"),
            Edge::trivial("e2", "X2", "Z1"),
            Edge::trivial("e3", "X2", "Z2"),
            Edge::trivial("e4", "X3", "Z2"),
        ],
    )
}

/// Two nodal components sharing their node: four edges into one point.
pub fn double_nodal() -> Configuration {
    Configuration::new(
        vec![trivial("X1"), trivial("X2")],
        vec![trivial("Z")],
        vec![
            Edge::trivial("e1", "X1", "Z"),
            Edge::trivial("e2", "X1", "Z"),
            Edge::trivial("e3", "X2", "Z"),
            Edge::trivial("e4", "X2", "Z"),
        ],
    )
}

/// Two lines meeting in three points.
pub fn theta() -> Configuration {
    let mut edges = Vec::new();
    for j in 1..=3 {
        edges.push(Edge::trivial(format!("e{j}a"), "X1", format!("Z{j}")));
        edges.push(Edge::trivial(format!("e{j}b"), "X2", format!("Z{j}")));
    }
    Configuration::new(
        vec![trivial("X1"), trivial("X2")],
        vec![trivial("Z1"), trivial("Z2"), trivial("Z3")],
        edges,
    )
}

/// A central line `C` crossed by three lines at three distinct points.
pub fn comb() -> Configuration {
    let mut comps = vec![trivial("C")];
    let mut sings = Vec::new();
    let mut edges = Vec::new();
    for j in 1..=3 {
        comps.push(trivial(&format!("L{j}")));
        sings.push(trivial(&format!("Z{j}")));
        edges.push(Edge::trivial(format!("c{j}"), "C", format!("Z{j}")));
        edges.push(Edge::trivial(format!("l{j}"), format!("L{j}"), format!("Z{j}")));
    }
    Configuration::new(comps, sings, edges)
}

/// A single smooth component.
pub fn regular(group: Presentation) -> Configuration {
    Configuration::new(vec![node("X", group)], vec![], vec![])
}

/// Two components with group of order two glued at one point.
pub fn infinite_dihedral() -> Configuration {
    Configuration::new(
        vec![
            node("X1", Presentation::cyclic("a", 2)),
            node("X2", Presentation::cyclic("b", 2)),
        ],
        vec![trivial("Z")],
        vec![Edge::trivial("e1", "X1", "Z"), Edge::trivial("e2", "X2", "Z")],
    )
}

/// Cycle of two lines, one of which has a group of order two.
pub fn z2_cycle() -> Configuration {
    let mut c = cycle_of_lines(2);
    c.components[0].group = Presentation::cyclic("a", 2);
    c
}

/// `S_3` given by permutations of three points.
pub fn s3_group() -> Presentation {
    presentation_of_perm_group(
        "g",
        &[
            Perm::from_images(&[1, 0, 2]).expect("permutation"),
            Perm::from_images(&[1, 2, 0]).expect("permutation"),
        ],
    )
    .expect("small group")
}

/// A nodal component whose singular point carries a group of order three.
pub fn singular_z3() -> Configuration {
    let mut c = nodal_cubic();
    c.singulars[0].group = Presentation::cyclic("c", 3);
    c
}

/// Nontrivial edge groups: `Z/4` and `Z/6` components glued at a `Z/2`
/// point through their subgroups of order two.
pub fn amalgam_point() -> Configuration {
    Configuration::new(
        vec![
            node("X1", Presentation::cyclic("a", 4)),
            node("X2", Presentation::cyclic("b", 6)),
        ],
        vec![node("Z1", Presentation::cyclic("c", 2))],
        vec![
            edge_with("e1", "X1", "Z1", "t", Word::power(&gen("a"), 2), Word::gen(gen("c"))),
            edge_with("e2", "X2", "Z1", "u", Word::power(&gen("b"), 3), Word::gen(gen("c"))),
        ],
    )
}

/// [`amalgam_point`] closed into a cycle through a second `Z/2` point.
pub fn amalgam_cycle() -> Configuration {
    let mut c = amalgam_point();
    c.singulars.push(node("Z2", Presentation::cyclic("s", 2)));
    c.edges.push(edge_with(
        "e3",
        "X2",
        "Z2",
        "w",
        Word::power(&gen("b"), 3),
        Word::gen(gen("s")),
    ));
    c.edges.push(edge_with("e4", "X1", "Z2", "y", Word::power(&gen("a"), 2), Word::gen(gen("s"))));
    c
}

/// All-trivial configurations (rank formula checks).
pub fn trivial_corpus() -> Vec<CorpusConfig> {
    let entry = |name, config, max_degree| CorpusConfig {
        name,
        config,
        max_degree,
    };
    vec![
        entry("nodal-cubic", nodal_cubic(), 5),
        entry("cycle-2", cycle_of_lines(2), 5),
        entry("cycle-3", cycle_of_lines(3), 5),
        entry("cycle-4", cycle_of_lines(4), 5),
        entry("cycle-5", cycle_of_lines(5), 5),
        entry("star-3", star(3), 5),
        entry("chain-3", chain3(), 5),
        entry("multi-edge-3", multi_edge(3), 5),
        entry("multi-edge-4", multi_edge(4), 4),
        entry("double-nodal-4", double_nodal(), 5),
        entry("theta", theta(), 5),
        entry("comb", comb(), 5),
        entry("regular-line", regular(Presentation::trivial()), 5),
    ]
}

/// Every corpus configuration, trivial and not.
pub fn full_corpus() -> Vec<CorpusConfig> {
    let entry = |name, config, max_degree| CorpusConfig {
        name,
        config,
        max_degree,
    };
    let mut all = trivial_corpus();
    all.extend([
        entry("z2-nodal", nodal(Presentation::cyclic("a", 2)), 5),
        entry("infinite-dihedral", infinite_dihedral(), 5),
        entry("z2-cycle-2", z2_cycle(), 5),
        entry("s3-nodal", nodal(s3_group()), 4),
        entry("singular-z3", singular_z3(), 5),
        entry("amalgam-point", amalgam_point(), 5),
        entry("amalgam-cycle", amalgam_cycle(), 5),
        entry("regular-z5", regular(Presentation::cyclic("a", 5)), 5),
    ]);
    all
}

#[derive(Clone, Debug)]
pub struct CorpusVk {
    pub name: &'static str,
    pub input: VkInput,
}

fn iface(ns: &str, group: Presentation, psi: Word, phi: Word) -> Interface {
    Interface {
        group,
        psi: map1(ns, psi),
        phi: map1(ns, phi),
    }
}

fn trivial_iface() -> Interface {
    Interface {
        group: Presentation::trivial(),
        psi: WordHom::default(),
        phi: WordHom::default(),
    }
}

/// VK inputs with one, two and three interfaces.
pub fn vk_corpus() -> Vec<CorpusVk> {
    let a = || Word::gen(gen("a"));
    let b = || Word::gen(gen("b"));
    vec![
        CorpusVk {
            name: "s1-free-product",
            input: VkInput::new(
                Presentation::cyclic("a", 2),
                Presentation::cyclic("b", 3),
                vec![trivial_iface()],
            ),
        },
        CorpusVk {
            name: "s1-amalgam",
            input: VkInput::new(
                Presentation::cyclic("a", 4),
                Presentation::cyclic("b", 6),
                vec![iface(
                    "c",
                    Presentation::cyclic("c", 2),
                    Word::power(&gen("a"), 2),
                    Word::power(&gen("b"), 3),
                )],
            ),
        },
        CorpusVk {
            name: "s2-trivial-interfaces",
            input: VkInput::new(
                Presentation::cyclic("a", 2),
                Presentation::trivial(),
                vec![trivial_iface(), trivial_iface()],
            ),
        },
        CorpusVk {
            name: "s2-order-two",
            input: VkInput::new(
                Presentation::cyclic("a", 2),
                Presentation::cyclic("b", 2),
                vec![
                    iface("c", Presentation::cyclic("c", 2), a(), b()),
                    iface("d", Presentation::cyclic("d", 2), a(), b()),
                ],
            ),
        },
        CorpusVk {
            name: "s3-all-trivial",
            input: VkInput::new(
                Presentation::trivial(),
                Presentation::trivial(),
                vec![trivial_iface(), trivial_iface(), trivial_iface()],
            ),
        },
        CorpusVk {
            name: "s3-mixed",
            input: VkInput::new(
                Presentation::free("a", 1),
                Presentation::cyclic("b", 3),
                vec![
                    trivial_iface(),
                    iface("c", Presentation::free("c", 1), a(), b()),
                    iface("d", Presentation::cyclic("d", 3), Word::identity(), b()),
                ],
            ),
        },
    ]
}
