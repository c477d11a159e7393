use std::fmt;
use std::str::FromStr;

use super::GroupError;

/// Identifier of an abstract generator: a namespace naming where it came from
/// (a component, a singular node, an edge, a conjugator family) plus an index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId {
    pub namespace: String,
    pub index: usize,
}

impl GenId {
    pub fn new(namespace: impl Into<String>, index: usize) -> Self {
        GenId {
            namespace: namespace.into(),
            index,
        }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.namespace, self.index)
    }
}

impl FromStr for GenId {
    type Err = GroupError;

    /// Parses the `namespace.index` form produced by `Display`. The split is
    /// at the last dot, so namespaces may themselves contain dots.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (ns, idx) = s
            .rsplit_once('.')
            .ok_or_else(|| GroupError::BadGenerator(s.to_string()))?;
        let index = idx
            .parse()
            .map_err(|_| GroupError::BadGenerator(s.to_string()))?;
        if ns.is_empty() {
            return Err(GroupError::BadGenerator(s.to_string()));
        }
        Ok(GenId::new(ns, index))
    }
}

/// A generator or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: GenId, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inverted(&self) -> Letter {
        Letter {
            gen: self.gen.clone(),
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "-{}", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A word in signed generators. The empty word is the identity.
///
/// Words are not automatically reduced on construction; products built with
/// [`Word::mul`] and [`Word::inverse`] are.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn gen(g: GenId) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    pub fn gen_inv(g: GenId) -> Self {
        Word(vec![Letter::new(g, true)])
    }

    /// `g^n` for a possibly negative exponent.
    pub fn power(g: &GenId, n: i64) -> Self {
        let inverse = n < 0;
        Word(
            (0..n.unsigned_abs())
                .map(|_| Letter::new(g.clone(), inverse))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    /// Free reduction with a stack; the result is the unique reduced word
    /// freely equal to `self`.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if out.last().is_some_and(|top| top.cancels(l)) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverted).collect()).reduced()
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters).reduced()
    }

    /// Reduced `w⁻¹ · self · w`.
    pub fn conjugated_by(&self, w: &Word) -> Word {
        w.inverse().mul(self).mul(w)
    }

    pub fn generators(&self) -> impl Iterator<Item = &GenId> {
        self.0.iter().map(|l| &l.gen)
    }

    /// Applies a substitution letter by letter: each generator is replaced by
    /// its image (inverted for inverse letters) and the result reduced.
    pub fn substitute<F>(&self, mut image: F) -> Result<Word, GroupError>
    where
        F: FnMut(&GenId) -> Option<Word>,
    {
        let mut out = Vec::new();
        for l in &self.0 {
            let w = image(&l.gen).ok_or_else(|| GroupError::MissingImage(l.gen.to_string()))?;
            if l.inverse {
                out.extend(w.inverse().0);
            } else {
                out.extend(w.0);
            }
        }
        Ok(Word(out).reduced())
    }

    /// Renames every generator with `f`, leaving signs alone.
    pub fn rename<F: Fn(&GenId) -> GenId>(&self, f: F) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(f(&l.gen), l.inverse))
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Free-group normal form of `w`.
pub fn reduce_word(w: &Word) -> Word {
    w.reduced()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> GenId {
        GenId::new("a", 0)
    }
    fn b() -> GenId {
        GenId::new("b", 0)
    }

    #[test]
    fn cancels_adjacent_pair() {
        let w = Word::gen(a()).mul(&Word::gen_inv(a()));
        assert!(w.is_empty());
        let raw = Word::from_letters(vec![Letter::new(a(), false), Letter::new(a(), true)]);
        assert_eq!(reduce_word(&raw), Word::identity());
    }

    #[test]
    fn identity_reduces_to_identity() {
        assert_eq!(reduce_word(&Word::identity()), Word::identity());
    }

    #[test]
    fn inner_cancellation_cascades() {
        let raw = Word::from_letters(vec![
            Letter::new(a(), false),
            Letter::new(b(), false),
            Letter::new(b(), true),
            Letter::new(a(), false),
        ]);
        assert_eq!(reduce_word(&raw), Word::power(&a(), 2));
    }

    #[test]
    fn gen_id_display_round_trips() {
        let g = GenId::new("F[Z2]", 3);
        assert_eq!(g.to_string().parse::<GenId>().unwrap(), g);
        let dotted = GenId::new("a.b", 1);
        assert_eq!("a.b.1".parse::<GenId>().unwrap(), dotted);
        assert!("nodot".parse::<GenId>().is_err());
        assert!(".3".parse::<GenId>().is_err());
    }

    #[test]
    fn substitution_inverts_images_on_inverse_letters() {
        let w = Word::gen(a()).mul(&Word::gen_inv(b()));
        let out = w
            .substitute(|g| {
                Some(if *g == a() {
                    Word::power(&b(), 2)
                } else {
                    Word::gen(b())
                })
            })
            .unwrap();
        assert_eq!(out, Word::gen(b()));
        assert!(Word::gen(a()).substitute(|_| None).is_err());
    }
}
