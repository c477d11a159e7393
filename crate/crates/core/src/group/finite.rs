use std::collections::{BTreeMap, VecDeque};

use super::perm::{Perm, MAX_TABLE_ORDER};
use super::presentation::Presentation;
use super::word::{GenId, Word};
use super::GroupError;

/// A presentation of the permutation group generated by `generators`, on
/// generators `namespace.0, namespace.1, …` (in the given order).
///
/// Each element `h` gets a word `w(h)` from a breadth-first walk of the
/// Cayley graph; the relators are `w(h) · g · w(h∘g)⁻¹` for every element `h`
/// and generator `g`. Those coming from tree edges of the walk reduce away.
pub fn presentation_of_perm_group(namespace: &str, generators: &[Perm]) -> Result<Presentation, GroupError> {
    let degree = generators.first().map_or(0, Perm::degree);
    if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
        return Err(GroupError::NotAPermutation(bad.to_vec()));
    }
    let gens: Vec<GenId> = (0..generators.len()).map(|i| GenId::new(namespace, i)).collect();
    let id = Perm::identity(degree);
    let mut words: BTreeMap<Perm, Word> = BTreeMap::from([(id.clone(), Word::identity())]);
    let mut queue = VecDeque::from([id]);
    let mut relators = Vec::new();
    while let Some(h) = queue.pop_front() {
        let wh = words[&h].clone();
        for (g, gid) in generators.iter().zip(&gens) {
            let hg = h.compose(g);
            let step = wh.mul(&Word::gen(gid.clone()));
            match words.get(&hg) {
                Some(w) => relators.push(step.mul(&w.inverse())),
                None => {
                    if words.len() >= MAX_TABLE_ORDER {
                        return Err(GroupError::TargetTooLarge(words.len() + 1));
                    }
                    words.insert(hg.clone(), step);
                    queue.push_back(hg);
                }
            }
        }
    }
    Presentation::new(gens, relators)
}
