//! The JSON input format and its conversion to and from [`Configuration`].

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use devissage_core::devissage::{Configuration, Edge, Node};
use devissage_core::group::{presentation_of_perm_group, GenId, Letter, Perm, Presentation, Word, WordHom};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub components: Vec<NodeDoc>,
    pub singulars: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub group: GroupDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub component: String,
    pub singular: String,
    pub group: GroupDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub psi: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub phi: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDoc {
    Trivial,
    Presentation {
        generators: Vec<String>,
        #[serde(default)]
        relations: Vec<Vec<String>>,
    },
    /// A permutation group given by generators as 0-based image lists.
    Finite {
        degree: usize,
        generators: Vec<Vec<usize>>,
        /// Namespace for the generated presentation; defaults to `{id}_g`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        namespace: Option<String>,
    },
}

/// Reads and parses a configuration file. Syntax errors and unknown fields
/// are [`CliError::Parse`]; everything that parses but does not describe
/// groups and maps is [`CliError::Validation`].
pub fn parse_config(path: &Path) -> Result<Configuration, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<Configuration, CliError> {
    let doc: ConfigDoc = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    doc.to_config()
}

/// The configuration as a JSON document that parses back to an equal value.
pub fn emit_config(c: &Configuration) -> String {
    let mut s = serde_json::to_string_pretty(&ConfigDoc::from_config(c)).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn gen_name(g: &GenId) -> String {
    g.to_string()
}

/// `name` is either `namespace.index` or a bare name, which means index 0.
fn parse_gen(name: &str) -> Result<GenId, CliError> {
    if name.is_empty() || name.starts_with('-') {
        return Err(CliError::Validation(format!("bad generator name `{name}`")));
    }
    Ok(name.parse().unwrap_or_else(|_| GenId::new(name, 0)))
}

/// Signed names: `a` or `-a` for the inverse.
pub fn word_names(w: &Word) -> Vec<String> {
    w.letters()
        .iter()
        .map(|l| {
            let name = gen_name(&l.gen);
            if l.inverse {
                format!("-{name}")
            } else {
                name
            }
        })
        .collect()
}

fn parse_word(names: &[String]) -> Result<Word, CliError> {
    let letters = names
        .iter()
        .map(|n| match n.strip_prefix('-') {
            Some(rest) => Ok(Letter::new(parse_gen(rest)?, true)),
            None => Ok(Letter::new(parse_gen(n)?, false)),
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Word::from_letters(letters))
}

fn parse_hom(map: &BTreeMap<String, Vec<String>>) -> Result<WordHom, CliError> {
    let images = map
        .iter()
        .map(|(g, w)| Ok((parse_gen(g)?, parse_word(w)?)))
        .collect::<Result<BTreeMap<_, _>, CliError>>()?;
    Ok(WordHom::new(images))
}

fn hom_doc(h: &WordHom, source: &Presentation) -> BTreeMap<String, Vec<String>> {
    source
        .generators()
        .iter()
        .filter_map(|g| h.image(g).map(|w| (gen_name(g), word_names(w))))
        .collect()
}

impl GroupDoc {
    fn to_presentation(&self, owner: &str) -> Result<Presentation, CliError> {
        let bad = |e: &dyn std::fmt::Display| CliError::Validation(format!("group of `{owner}`: {e}"));
        match self {
            GroupDoc::Trivial => Ok(Presentation::trivial()),
            GroupDoc::Presentation { generators, relations } => {
                let gens = generators.iter().map(|g| parse_gen(g)).collect::<Result<Vec<_>, _>>()?;
                let rels = relations.iter().map(|r| parse_word(r)).collect::<Result<Vec<_>, _>>()?;
                Presentation::new(gens, rels).map_err(|e| bad(&e))
            }
            GroupDoc::Finite {
                degree,
                generators,
                namespace,
            } => {
                let perms = generators
                    .iter()
                    .map(|images| {
                        if images.len() != *degree {
                            return Err(bad(&format!("permutation {images:?} does not have degree {degree}")));
                        }
                        Perm::from_images(images).map_err(|e| bad(&e))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let ns = namespace.clone().unwrap_or_else(|| format!("{owner}_g"));
                presentation_of_perm_group(&ns, &perms).map_err(|e| bad(&e))
            }
        }
    }

    fn from_presentation(p: &Presentation) -> GroupDoc {
        if p.generators().is_empty() && p.relations().is_empty() {
            return GroupDoc::Trivial;
        }
        GroupDoc::Presentation {
            generators: p.generators().iter().map(gen_name).collect(),
            relations: p.relations().iter().map(word_names).collect(),
        }
    }
}

impl ConfigDoc {
    pub fn to_config(&self) -> Result<Configuration, CliError> {
        let node = |n: &NodeDoc| Ok(Node::new(n.id.clone(), n.group.to_presentation(&n.id)?));
        let components = self.components.iter().map(node).collect::<Result<Vec<_>, CliError>>()?;
        let singulars = self.singulars.iter().map(node).collect::<Result<Vec<_>, CliError>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let group = e.group.to_presentation(&e.id)?;
                if group.rank() > 0 && (e.psi.is_empty() || e.phi.is_empty()) {
                    return Err(CliError::Validation(format!(
                        "edge `{}` has a nontrivial group and needs both psi and phi",
                        e.id
                    )));
                }
                Ok(Edge {
                    id: e.id.clone(),
                    component: e.component.clone(),
                    singular: e.singular.clone(),
                    group,
                    psi: parse_hom(&e.psi)?,
                    phi: parse_hom(&e.phi)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Configuration::new(components, singulars, edges))
    }

    pub fn from_config(c: &Configuration) -> ConfigDoc {
        let node = |n: &Node| NodeDoc {
            id: n.id.clone(),
            group: GroupDoc::from_presentation(&n.group),
        };
        ConfigDoc {
            components: c.components.iter().map(node).collect(),
            singulars: c.singulars.iter().map(node).collect(),
            edges: c
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    component: e.component.clone(),
                    singular: e.singular.clone(),
                    group: GroupDoc::from_presentation(&e.group),
                    psi: hom_doc(&e.psi, &e.group),
                    phi: hom_doc(&e.phi, &e.group),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODAL: &str = r#"{
        "components": [{"id": "X", "group": {"kind": "trivial"}}],
        "singulars": [{"id": "Z", "group": {"kind": "trivial"}}],
        "edges": [
            {"id": "e1", "component": "X", "singular": "Z", "group": {"kind": "trivial"}},
            {"id": "e2", "component": "X", "singular": "Z", "group": {"kind": "trivial"}}
        ]
    }"#;

    #[test]
    fn nodal_cubic_parses() {
        let c = parse_config_str(NODAL).unwrap();
        assert_eq!((c.components.len(), c.singulars.len(), c.edges.len()), (1, 1, 2));
    }

    #[test]
    fn unknown_field_is_named() {
        let text = NODAL.replace(r#""id": "X","#, r#""id": "X", "colour": "red","#);
        match parse_config_str(&text) {
            Err(CliError::Parse(msg)) => assert!(msg.contains("colour"), "{msg}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_a_parse_error() {
        assert!(matches!(parse_config_str(""), Err(CliError::Parse(_))));
    }

    #[test]
    fn signed_names_round_trip() {
        let w = parse_word(&["a".into(), "-b.2".into()]).unwrap();
        assert_eq!(word_names(&w), vec!["a.0", "-b.2"]);
    }

    #[test]
    fn finite_groups_become_presentations() {
        let text = r#"{
            "components": [{"id": "X", "group": {"kind": "finite", "degree": 3, "generators": [[1, 2, 0]]}}],
            "singulars": [{"id": "Z", "group": {"kind": "trivial"}}],
            "edges": [{"id": "e1", "component": "X", "singular": "Z", "group": {"kind": "trivial"}}]
        }"#;
        let c = parse_config_str(text).unwrap();
        assert_eq!(c.components[0].group.generators()[0].namespace, "X_g");
    }

    #[test]
    fn nontrivial_edge_needs_maps() {
        let text = NODAL.replacen(
            r#""group": {"kind": "trivial"}},"#,
            r#""group": {"kind": "presentation", "generators": ["c"]}},"#,
            1,
        );
        assert!(matches!(parse_config_str(&text), Err(CliError::Validation(_))));
    }

    #[test]
    fn emitted_config_parses_back() {
        let c = parse_config_str(NODAL).unwrap();
        assert_eq!(parse_config_str(&emit_config(&c)).unwrap(), c);
    }
}
