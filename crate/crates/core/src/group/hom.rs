use std::collections::BTreeMap;

use super::perm::Perm;
use super::presentation::Presentation;
use super::word::{GenId, Word};
use super::GroupError;

/// A homomorphism between presented groups, given on generators.
///
/// Whether relators of the source die in the target is not decidable in
/// general; [`WordHom::check`] only verifies the shape (every source
/// generator has an image, images use target generators). Relator-vanishing
/// is certified through probe targets, see [`WordHom::pull_back`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordHom {
    pub images: BTreeMap<GenId, Word>,
}

impl WordHom {
    pub fn new(images: BTreeMap<GenId, Word>) -> Self {
        WordHom { images }
    }

    /// Sends every generator of `source` to the identity.
    pub fn trivial(source: &Presentation) -> Self {
        WordHom {
            images: source
                .generators()
                .iter()
                .map(|g| (g.clone(), Word::identity()))
                .collect(),
        }
    }

    /// Sends each generator to the generator `rename(g)`.
    pub fn renaming<F: Fn(&GenId) -> GenId>(source: &Presentation, rename: F) -> Self {
        WordHom {
            images: source
                .generators()
                .iter()
                .map(|g| (g.clone(), Word::gen(rename(g))))
                .collect(),
        }
    }

    pub fn image(&self, g: &GenId) -> Option<&Word> {
        self.images.get(g)
    }

    pub fn check(&self, source: &Presentation, target: &Presentation) -> Result<(), GroupError> {
        for g in source.generators() {
            let w = self
                .images
                .get(g)
                .ok_or_else(|| GroupError::MissingImage(g.to_string()))?;
            target.check_word(w)?;
        }
        if let Some(extra) = self.images.keys().find(|g| !source.contains(g)) {
            return Err(GroupError::UnknownGenerator(extra.to_string()));
        }
        Ok(())
    }

    pub fn apply(&self, w: &Word) -> Result<Word, GroupError> {
        w.substitute(|g| self.images.get(g).cloned())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &WordHom) -> Result<WordHom, GroupError> {
        let mut images = BTreeMap::new();
        for (g, w) in &self.images {
            images.insert(g.clone(), next.apply(w)?);
        }
        Ok(WordHom { images })
    }

    /// Precomposes a permutation representation of the target with `self`,
    /// giving a representation of the source.
    pub fn pull_back(&self, rep: &PermHom) -> Result<PermHom, GroupError> {
        let mut images = BTreeMap::new();
        for (g, w) in &self.images {
            images.insert(g.clone(), rep.eval(w)?);
        }
        Ok(PermHom {
            degree: rep.degree,
            images,
        })
    }
}

/// A homomorphism from a presented group into a permutation group: the
/// images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermHom {
    pub degree: usize,
    pub images: BTreeMap<GenId, Perm>,
}

impl PermHom {
    pub fn new(degree: usize, images: BTreeMap<GenId, Perm>) -> Self {
        PermHom { degree, images }
    }

    /// Images listed in the order of `p`'s generators.
    pub fn from_ordered(p: &Presentation, degree: usize, images: Vec<Perm>) -> Self {
        PermHom {
            degree,
            images: p.generators().iter().cloned().zip(images).collect(),
        }
    }

    pub fn ordered(&self, p: &Presentation) -> Result<Vec<&Perm>, GroupError> {
        p.generators()
            .iter()
            .map(|g| {
                self.images
                    .get(g)
                    .ok_or_else(|| GroupError::MissingImage(g.to_string()))
            })
            .collect()
    }

    /// Image of a word: `ρ(l₁) ∘ ρ(l₂) ∘ … ∘ ρ(lₙ)`.
    pub fn eval(&self, w: &Word) -> Result<Perm, GroupError> {
        let mut acc = Perm::identity(self.degree);
        for l in w.letters() {
            let p = self
                .images
                .get(&l.gen)
                .ok_or_else(|| GroupError::MissingImage(l.gen.to_string()))?;
            acc = if l.inverse {
                acc.compose(&p.inverse())
            } else {
                acc.compose(p)
            };
        }
        Ok(acc)
    }

    /// Relabels the underlying set by `c` (simultaneous conjugation).
    pub fn relabeled(&self, c: &Perm) -> PermHom {
        PermHom {
            degree: self.degree,
            images: self
                .images
                .iter()
                .map(|(g, p)| (g.clone(), p.relabeled(c)))
                .collect(),
        }
    }

    /// Restriction to the generators of `p` (extra images are dropped).
    pub fn restrict(&self, p: &Presentation) -> Result<PermHom, GroupError> {
        let images = p
            .generators()
            .iter()
            .map(|g| {
                self.images
                    .get(g)
                    .cloned()
                    .map(|x| (g.clone(), x))
                    .ok_or_else(|| GroupError::MissingImage(g.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(PermHom {
            degree: self.degree,
            images,
        })
    }

    /// Number of orbits of the generated action.
    pub fn orbit_count(&self) -> usize {
        let perms: Vec<&Perm> = self.images.values().collect();
        super::search::orbits(self.degree, &perms).len()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit_count() == 1
    }
}

/// True iff every relator of `source` acts as the identity under `h`.
pub fn verify_hom(source: &Presentation, h: &PermHom) -> Result<bool, GroupError> {
    for g in source.generators() {
        let p = h
            .images
            .get(g)
            .ok_or_else(|| GroupError::MissingImage(g.to_string()))?;
        if p.degree() != h.degree {
            return Err(GroupError::NotAPermutation(p.to_vec()));
        }
    }
    for r in source.relations() {
        if !h.eval(r)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}
