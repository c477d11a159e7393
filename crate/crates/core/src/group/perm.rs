use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::GroupError;

/// Largest degree a [`Perm`] can have (points are stored as bytes).
pub const MAX_DEGREE: usize = u8::MAX as usize;

/// Largest probe group order for which a multiplication table is built.
pub const MAX_TABLE_ORDER: usize = 1024;

/// A permutation of `{0..d-1}`, stored as its image list.
///
/// Composition follows function notation: `p.compose(q)` is `p ∘ q`, i.e.
/// apply `q` first. A homomorphism into a permutation group therefore gives a
/// left action, and the image of a word `l₁ l₂ … lₙ` is `ρ(l₁) ∘ … ∘ ρ(lₙ)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Perm((0..degree as u8).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        let d = images.len();
        if d > MAX_DEGREE {
            return Err(GroupError::DegreeTooLarge(d));
        }
        let mut seen = vec![false; d];
        for &i in images {
            if i >= d || seen[i] {
                return Err(GroupError::NotAPermutation(images.to_vec()));
            }
            seen[i] = true;
        }
        Ok(Perm(images.iter().map(|&i| i as u8).collect()))
    }

    /// Builds a permutation from disjoint cycles, e.g. `Perm::cycles(3, &[&[0, 1, 2]])`.
    pub fn cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut img: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                if p >= degree || touched[p] {
                    return Err(GroupError::NotAPermutation(c.to_vec()));
                }
                touched[p] = true;
                img[p] = c[(k + 1) % c.len()];
            }
        }
        Perm::from_images(&img)
    }

    pub(crate) fn from_bytes(images: Vec<u8>) -> Self {
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `c ∘ self ∘ c⁻¹`: the same permutation after relabeling points by `c`.
    pub fn relabeled(&self, c: &Perm) -> Perm {
        c.compose(self).compose(&c.inverse())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite permutation group used as a probe target: its elements are kept
/// explicitly, sorted, identity first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroupTarget {
    degree: usize,
    name: String,
    elements: Vec<Perm>,
}

impl PermGroupTarget {
    /// Closure of `generators` under composition.
    pub fn from_generators(degree: usize, generators: &[Perm]) -> Result<Self, GroupError> {
        if degree > MAX_DEGREE {
            return Err(GroupError::DegreeTooLarge(degree));
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::NotAPermutation(bad.to_vec()));
        }
        let id = Perm::identity(degree);
        let mut seen: BTreeSet<Perm> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_TABLE_ORDER * 64 {
                        return Err(GroupError::TargetTooLarge(seen.len()));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(PermGroupTarget {
            degree,
            name: format!("<{} gens on {degree}>", generators.len()),
            elements: seen.into_iter().collect(),
        })
    }

    /// An explicit element list; must contain the identity and be closed
    /// under composition and inverse.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self, GroupError> {
        if degree > MAX_DEGREE {
            return Err(GroupError::DegreeTooLarge(degree));
        }
        let set: BTreeSet<Perm> = elements.into_iter().collect();
        if set.iter().any(|p| p.degree() != degree) {
            return Err(GroupError::NotClosed);
        }
        if !set.contains(&Perm::identity(degree)) {
            return Err(GroupError::NotClosed);
        }
        for a in &set {
            if !set.contains(&a.inverse()) {
                return Err(GroupError::NotClosed);
            }
            for b in &set {
                if !set.contains(&a.compose(b)) {
                    return Err(GroupError::NotClosed);
                }
            }
        }
        Ok(PermGroupTarget {
            degree,
            name: format!("<{} elements on {degree}>", set.len()),
            elements: set.into_iter().collect(),
        })
    }

    /// Full symmetric group `S_d`.
    pub fn symmetric(degree: usize) -> Result<Self, GroupError> {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::cycles(degree, &[&[0, 1]])?);
            let long: Vec<usize> = (0..degree).collect();
            gens.push(Perm::cycles(degree, &[&long])?);
        }
        Ok(Self::from_generators(degree, &gens)?.named(format!("S_{degree}")))
    }

    /// Cyclic group `Z/n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        let long: Vec<usize> = (0..n).collect();
        let gens = if n >= 2 {
            vec![Perm::cycles(n, &[&long])?]
        } else {
            vec![]
        };
        Ok(Self::from_generators(n, &gens)?.named(format!("Z/{n}")))
    }

    /// Dihedral group of order `2n` acting on the `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        let gens = vec![Perm::from_images(&rot)?, Perm::from_images(&refl)?];
        Ok(Self::from_generators(n, &gens)?.named(format!("D_{n}")))
    }

    /// Parses probe names `Z/n`, `S_n`, `D_n`.
    pub fn parse(name: &str) -> Result<Self, GroupError> {
        let name = name.trim();
        let bad = || GroupError::UnknownProbe(name.to_string());
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        if let Some(n) = name.strip_prefix("Z/") {
            let n = num(n)?;
            if n == 0 {
                return Err(bad());
            }
            Self::cyclic(n)
        } else if let Some(n) = name.strip_prefix("S_") {
            let n = num(n)?;
            if n == 0 || n > 6 {
                return Err(bad());
            }
            Self::symmetric(n)
        } else if let Some(n) = name.strip_prefix("D_") {
            let n = num(n)?;
            if n < 3 {
                return Err(bad());
            }
            Self::dihedral(n)
        } else {
            Err(bad())
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub(crate) fn table(&self) -> Result<GroupTable, GroupError> {
        GroupTable::new(&self.elements)
    }
}

/// Multiplication table of a probe group over element indices.
pub(crate) struct GroupTable {
    pub order: usize,
    pub identity: u32,
    /// `mul[a * order + b]` is the index of `a ∘ b`.
    pub mul: Vec<u32>,
    pub inv: Vec<u32>,
    pub elements: Vec<Perm>,
}

impl GroupTable {
    fn new(elements: &[Perm]) -> Result<Self, GroupError> {
        let n = elements.len();
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::TargetTooLarge(n));
        }
        let index: HashMap<&Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i as u32))
            .collect();
        let mut mul = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                mul.push(index[&a.compose(b)]);
            }
        }
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        let identity = elements
            .iter()
            .position(Perm::is_identity)
            .expect("group contains identity") as u32;
        Ok(GroupTable {
            order: n,
            identity,
            mul,
            inv,
            elements: elements.to_vec(),
        })
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_have_expected_orders() {
        assert_eq!(PermGroupTarget::symmetric(1).unwrap().order(), 1);
        assert_eq!(PermGroupTarget::symmetric(3).unwrap().order(), 6);
        assert_eq!(PermGroupTarget::symmetric(5).unwrap().order(), 120);
        assert_eq!(PermGroupTarget::cyclic(4).unwrap().order(), 4);
        assert_eq!(PermGroupTarget::dihedral(4).unwrap().order(), 8);
        assert_eq!(PermGroupTarget::parse("S_3").unwrap().name(), "S_3");
        assert!(PermGroupTarget::parse("Q_8").is_err());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::cycles(3, &[&[1, 2]]).unwrap();
        // a∘b sends 1 -> 2 -> 2, 2 -> 1 -> 0
        assert_eq!(a.compose(&b).to_vec(), vec![1, 2, 0]);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn explicit_elements_must_be_closed() {
        let id = Perm::identity(3);
        let c = Perm::cycles(3, &[&[0, 1, 2]]).unwrap();
        assert!(PermGroupTarget::from_elements(3, vec![id.clone(), c.clone()]).is_err());
        let c2 = c.compose(&c);
        assert_eq!(
            PermGroupTarget::from_elements(3, vec![id, c, c2]).unwrap().order(),
            3
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(&[0, 0]).is_err());
        assert!(Perm::from_images(&[2, 0]).is_err());
    }
}
