//! The machine-readable run report. Every map is ordered, so equal inputs
//! give byte-identical output.

use std::collections::BTreeMap;

use serde::Serialize;

use devissage_core::devissage::{AssemblyResult, DiscretenessVerdict, NodeVerdict, Origin, VerdictTree};
use devissage_core::group::{HomFingerprint, Presentation};

use crate::schema::{gen_name, word_names};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub config: ConfigSummary,
    pub rank: usize,
    pub assemblies: Vec<AssemblyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fast_path: Option<FastPathReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceTable>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub discreteness: BTreeMap<String, DiscretenessReport>,
    /// Milliseconds per phase; only with `--timings`, since wall-clock times
    /// would break byte-identical reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    /// Whether every requested check passed.
    pub fn pass(&self) -> bool {
        self.equivalence.as_ref().is_none_or(|e| e.pass) && self.fingerprints_agree()
    }

    pub fn fingerprints_agree(&self) -> bool {
        self.assemblies.windows(2).all(|w| w[0].fingerprint == w[1].fingerprint)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigSummary {
    pub components: Vec<String>,
    pub singulars: Vec<String>,
    pub edges: Vec<String>,
    pub all_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationDoc {
    pub generators: Vec<String>,
    pub relations: Vec<Vec<String>>,
}

impl From<&Presentation> for PresentationDoc {
    fn from(p: &Presentation) -> Self {
        PresentationDoc {
            generators: p.generators().iter().map(gen_name).collect(),
            relations: p.relations().iter().map(word_names).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OriginDoc {
    Component { id: String, generator: String },
    Singular { id: String, generator: String },
    FreeEdge { edge: String },
    Conjugator { block: String, index: usize },
}

impl From<&Origin> for OriginDoc {
    fn from(o: &Origin) -> Self {
        match o {
            Origin::Component { id, generator } => OriginDoc::Component {
                id: id.clone(),
                generator: gen_name(generator),
            },
            Origin::Singular { id, generator } => OriginDoc::Singular {
                id: id.clone(),
                generator: gen_name(generator),
            },
            Origin::FreeEdge { edge } => OriginDoc::FreeEdge { edge: edge.clone() },
            Origin::Conjugator { block, index } => OriginDoc::Conjugator {
                block: block.clone(),
                index: *index,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssemblyReport {
    pub method: String,
    pub presentation: PresentationDoc,
    pub dictionary: BTreeMap<String, OriginDoc>,
    pub fingerprint: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

impl AssemblyReport {
    pub fn new(result: &AssemblyResult, fp: &HomFingerprint) -> Self {
        AssemblyReport {
            method: result.method.name().to_string(),
            presentation: (&result.presentation).into(),
            dictionary: result
                .dictionary
                .iter()
                .map(|(g, o)| (gen_name(g), o.into()))
                .collect(),
            fingerprint: fingerprint_doc(fp),
            notes: result.notes.clone(),
        }
    }
}

pub fn fingerprint_doc(fp: &HomFingerprint) -> BTreeMap<String, u64> {
    fp.probe_names()
        .into_iter()
        .map(String::from)
        .zip(fp.counts.iter().copied())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FastPathReport {
    pub method: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceTable {
    pub max_degree: usize,
    pub rows: Vec<EquivalenceRowDoc>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceRowDoc {
    pub degree: usize,
    pub covers: u64,
    /// Transitive actions per assembly method.
    pub transitive_reps: BTreeMap<String, u64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscretenessReport {
    pub overall: String,
    pub per_component: Vec<NodeVerdictDoc>,
    pub per_singular: Vec<NodeVerdictDoc>,
    pub tree: TreeDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeVerdictDoc {
    pub id: String,
    pub verdict: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TreeDoc {
    Leaf { label: String, verdict: String },
    Coproduct { children: Vec<TreeDoc> },
    Quotient { of: Box<TreeDoc> },
}

impl From<&VerdictTree> for TreeDoc {
    fn from(t: &VerdictTree) -> Self {
        match t {
            VerdictTree::Leaf { label, verdict } => TreeDoc::Leaf {
                label: label.clone(),
                verdict: verdict.name().to_string(),
            },
            VerdictTree::Coproduct(children) => TreeDoc::Coproduct {
                children: children.iter().map(TreeDoc::from).collect(),
            },
            VerdictTree::Quotient(inner) => TreeDoc::Quotient {
                of: Box::new(inner.as_ref().into()),
            },
        }
    }
}

impl From<&DiscretenessVerdict> for DiscretenessReport {
    fn from(v: &DiscretenessVerdict) -> Self {
        let node = |n: &NodeVerdict| NodeVerdictDoc {
            id: n.id.clone(),
            verdict: n.verdict.name().to_string(),
            reason: n.reason.clone(),
        };
        DiscretenessReport {
            overall: v.overall.name().to_string(),
            per_component: v.per_component.iter().map(node).collect(),
            per_singular: v.per_singular.iter().map(node).collect(),
            tree: (&v.tree).into(),
        }
    }
}
