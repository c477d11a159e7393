use std::collections::BTreeSet;
use std::fmt;

use super::word::{GenId, Word};
use super::GroupError;

/// A finite presentation: generators plus relators (each asserted equal to
/// the identity). Relators are stored freely reduced; empty relators are
/// dropped since they impose nothing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<GenId>,
    relations: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<GenId>, relations: Vec<Word>) -> Result<Self, GroupError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g) {
                return Err(GroupError::DuplicateGenerator(g.to_string()));
            }
        }
        let mut p = Presentation {
            generators,
            relations: Vec::with_capacity(relations.len()),
        };
        for r in relations {
            p.push_relator(r)?;
        }
        Ok(p)
    }

    pub fn trivial() -> Self {
        Presentation::default()
    }

    /// Free group on `namespace.0 .. namespace.(rank-1)`.
    pub fn free(namespace: &str, rank: usize) -> Self {
        Presentation {
            generators: (0..rank).map(|i| GenId::new(namespace, i)).collect(),
            relations: Vec::new(),
        }
    }

    /// `⟨g | gⁿ⟩` with `g = namespace.0`.
    pub fn cyclic(namespace: &str, n: usize) -> Self {
        let g = GenId::new(namespace, 0);
        let relations = if n == 0 {
            Vec::new()
        } else {
            vec![Word::power(&g, n as i64)]
        };
        Presentation {
            generators: vec![g],
            relations,
        }
    }

    pub fn generators(&self) -> &[GenId] {
        &self.generators
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// No generators at all (syntactically trivial).
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, g: &GenId) -> bool {
        self.generators.contains(g)
    }

    pub fn position(&self, g: &GenId) -> Option<usize> {
        self.generators.iter().position(|x| x == g)
    }

    pub fn namespaces(&self) -> BTreeSet<&str> {
        self.generators.iter().map(|g| g.namespace.as_str()).collect()
    }

    /// Checks that `w` only mentions generators of this presentation.
    pub fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        match w.generators().find(|g| !self.contains(g)) {
            Some(g) => Err(GroupError::UnknownGenerator(g.to_string())),
            None => Ok(()),
        }
    }

    fn push_relator(&mut self, r: Word) -> Result<(), GroupError> {
        self.check_word(&r)?;
        let r = r.reduced();
        if !r.is_empty() {
            self.relations.push(r);
        }
        Ok(())
    }

    /// Appends relators `f · g⁻¹` for each pair, i.e. imposes `f = g`.
    pub fn add_relations(&self, rels: &[(Word, Word)]) -> Result<Presentation, GroupError> {
        let mut out = self.clone();
        for (f, g) in rels {
            out.check_word(f)?;
            out.check_word(g)?;
            out.push_relator(f.mul(&g.inverse()))?;
        }
        Ok(out)
    }

    /// Appends relators verbatim (after reduction).
    pub fn add_relators<I: IntoIterator<Item = Word>>(&self, rels: I) -> Result<Presentation, GroupError> {
        let mut out = self.clone();
        for r in rels {
            out.push_relator(r)?;
        }
        Ok(out)
    }

    /// Presentation with every generator renamed by `f`. `f` must be injective
    /// on the generator list.
    pub fn rename<F: Fn(&GenId) -> GenId>(&self, f: F) -> Result<Presentation, GroupError> {
        Presentation::new(
            self.generators.iter().map(&f).collect(),
            self.relations.iter().map(|r| r.rename(&f)).collect(),
        )
    }

    /// Moves every generator into namespace `namespace`, keeping indices.
    /// Only meaningful for single-namespace presentations.
    pub fn with_namespace(&self, namespace: &str) -> Result<Presentation, GroupError> {
        self.rename(|g| GenId::new(namespace, g.index))
    }

    /// Relator multiset up to cyclic rotation and inversion, sorted. Two
    /// presentations with the same generator list and the same canonical
    /// relators define the same normal closure word for word.
    pub fn canonical_relators(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self.relations.iter().map(cyclic_normal_form).collect();
        out.sort();
        out
    }
}

/// Cyclically reduces `w`, then returns the least rotation of `w` and of `w⁻¹`.
pub fn cyclic_normal_form(w: &Word) -> Word {
    let mut letters = w.reduced().letters().to_vec();
    while letters.len() >= 2 {
        let first = &letters[0];
        let last = &letters[letters.len() - 1];
        if first.gen == last.gen && first.inverse != last.inverse {
            letters.pop();
            letters.remove(0);
        } else {
            break;
        }
    }
    let base = Word::from_letters(letters);
    let inv = base.inverse();
    let mut best: Option<Word> = None;
    for cand in [base, inv] {
        let ls = cand.letters();
        for k in 0..ls.len().max(1) {
            let rot: Word = ls[k..].iter().chain(ls[..k].iter()).cloned().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Free product; generator namespaces of `p` and `q` must be disjoint.
pub fn free_product(p: &Presentation, q: &Presentation) -> Result<Presentation, GroupError> {
    let pn = p.namespaces();
    if let Some(ns) = q.namespaces().into_iter().find(|ns| pn.contains(ns)) {
        return Err(GroupError::NamespaceCollision(ns.to_string()));
    }
    let mut generators = p.generators.clone();
    generators.extend(q.generators.iter().cloned());
    let mut relations = p.relations.clone();
    relations.extend(q.relations.iter().cloned());
    Presentation::new(generators, relations)
}

/// `p` with the relations `f_i = g_i` imposed.
pub fn add_relations(p: &Presentation, rels: &[(Word, Word)]) -> Result<Presentation, GroupError> {
    p.add_relations(rels)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " | ")?;
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}
