//! The amalgam-with-conjugators construction `VK(π, π′; π″₁, …, π″ₛ)`.
//!
//! Given `ψᵢ: π″ᵢ → π` and `φᵢ: π″ᵢ → π′`, form (i) is
//!
//! ```text
//! π ∗ π′ ∗ F  /  ψᵢ(a) = vᵢ⁻¹ φᵢ(a) vᵢ     (a a generator of π″ᵢ, v₁ = e)
//! ```
//!
//! where `F` is free on `v₂ … vₛ`. Three further forms are built literally
//! (s copies of π′ with conjugation relations; an amalgam over π″₁ plus
//! conjugators; a fiber coproduct over π of s amalgams) together with explicit
//! generator-level isomorphisms back to form (i).
//!
//! Relations that range over a whole interface group are imposed on its
//! generators only. Both sides of each relation are homomorphic images of the
//! interface group, so the normal closures agree.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::group::{
    enumerate_homs, free_product, verify_hom, GenId, GroupError, PermGroupTarget, Presentation,
    Word, WordHom,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VkError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the construction needs at least one interface")]
    NoInterfaces,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("homomorphism source mismatch: {0}")]
    SourceMismatch(String),
}

/// One interface group with its two maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interface {
    pub group: Presentation,
    /// Into `π`.
    pub psi: WordHom,
    /// Into `π′`.
    pub phi: WordHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VkInput {
    pub pi: Presentation,
    pub pi_prime: Presentation,
    pub interfaces: Vec<Interface>,
    /// Namespace for the conjugators `v₂ … vₛ`.
    pub conjugators: String,
}

impl VkInput {
    pub fn new(pi: Presentation, pi_prime: Presentation, interfaces: Vec<Interface>) -> Self {
        VkInput {
            pi,
            pi_prime,
            interfaces,
            conjugators: "F".to_string(),
        }
    }

    pub fn with_conjugators(mut self, namespace: impl Into<String>) -> Self {
        self.conjugators = namespace.into();
        self
    }

    pub fn s(&self) -> usize {
        self.interfaces.len()
    }

    pub fn validate(&self) -> Result<(), VkError> {
        if self.interfaces.is_empty() {
            return Err(VkError::NoInterfaces);
        }
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut claim = |p: &Presentation, what: &str| -> Result<(), VkError> {
            for ns in p.namespaces() {
                if !seen.insert(ns.to_string()) {
                    return Err(VkError::Malformed(format!(
                        "namespace `{ns}` of {what} is already in use"
                    )));
                }
            }
            Ok(())
        };
        claim(&self.pi, "π")?;
        claim(&self.pi_prime, "π′")?;
        for (i, itf) in self.interfaces.iter().enumerate() {
            claim(&itf.group, &format!("interface {}", i + 1))?;
        }
        if seen.contains(&self.conjugators) {
            return Err(VkError::Malformed(format!(
                "conjugator namespace `{}` is already in use",
                self.conjugators
            )));
        }
        for (i, itf) in self.interfaces.iter().enumerate() {
            itf.psi
                .check(&itf.group, &self.pi)
                .map_err(|e| VkError::Malformed(format!("ψ of interface {}: {e}", i + 1)))?;
            itf.phi
                .check(&itf.group, &self.pi_prime)
                .map_err(|e| VkError::Malformed(format!("φ of interface {}: {e}", i + 1)))?;
        }
        Ok(())
    }
}

/// The group `F`: free on `v₂ … vₛ`, with the dictionary `u_ij ↦ vᵢ⁻¹ vⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FGroup {
    pub s: usize,
    pub presentation: Presentation,
    /// Keys are 1-based `(i, j)`.
    pub u: BTreeMap<(usize, usize), Word>,
}

impl FGroup {
    /// `vᵢ` for 1-based `i`; `v₁` is the empty word.
    pub fn v(&self, i: usize) -> Word {
        assert!((1..=self.s).contains(&i), "conjugator index {i} out of 1..={}", self.s);
        if i == 1 {
            Word::identity()
        } else {
            Word::gen(self.presentation.generators()[i - 2].clone())
        }
    }

    pub fn u(&self, i: usize, j: usize) -> &Word {
        &self.u[&(i, j)]
    }
}

pub fn build_f(s: usize) -> Result<FGroup, VkError> {
    build_f_in("F", s)
}

/// `F` with conjugators `namespace.2 … namespace.s`.
pub fn build_f_in(namespace: &str, s: usize) -> Result<FGroup, VkError> {
    if s == 0 {
        return Err(VkError::NoInterfaces);
    }
    let presentation = Presentation::new((2..=s).map(|i| GenId::new(namespace, i)).collect(), vec![])?;
    let mut f = FGroup {
        s,
        presentation,
        u: BTreeMap::new(),
    };
    for i in 1..=s {
        for j in 1..=s {
            let uij = f.v(i).inverse().mul(&f.v(j));
            f.u.insert((i, j), uij);
        }
    }
    Ok(f)
}

/// Output of [`vk_construct`]: the form (i) presentation plus notes on how
/// the relation families were reduced to finitely many relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VkPresentation {
    pub presentation: Presentation,
    pub provenance: Vec<String>,
}

fn mapped(h: &WordHom, g: &GenId) -> Word {
    h.image(g).cloned().expect("validated hom has every image")
}

/// Form (i).
pub fn vk_construct(input: &VkInput) -> Result<VkPresentation, VkError> {
    input.validate()?;
    let f = build_f_in(&input.conjugators, input.s())?;
    let base = free_product(&free_product(&input.pi, &input.pi_prime)?, &f.presentation)?;
    let mut relators = Vec::new();
    let mut provenance = Vec::new();
    for (i, itf) in input.interfaces.iter().enumerate() {
        let v = f.v(i + 1);
        for a in itf.group.generators() {
            let lhs = mapped(&itf.psi, a);
            let rhs = mapped(&itf.phi, a).conjugated_by(&v);
            relators.push(lhs.inverse().mul(&rhs));
        }
        provenance.push(format!(
            "interface {}: ψ(a) = v⁻¹φ(a)v imposed on its {} generator(s) only",
            i + 1,
            itf.group.rank()
        ));
    }
    Ok(VkPresentation {
        presentation: base.add_relators(relators)?,
        provenance,
    })
}

/// `p ∗ q` modulo `f(x) = g(x)` for the generators `x` of `base`.
pub fn amalgamated_coproduct(
    p: &Presentation,
    q: &Presentation,
    base: &Presentation,
    f: &WordHom,
    g: &WordHom,
) -> Result<Presentation, VkError> {
    f.check(base, p)
        .map_err(|e| VkError::SourceMismatch(format!("first map: {e}")))?;
    g.check(base, q)
        .map_err(|e| VkError::SourceMismatch(format!("second map: {e}")))?;
    let pq = free_product(p, q)?;
    let rels: Vec<(Word, Word)> = base
        .generators()
        .iter()
        .map(|x| (mapped(f, x), mapped(g, x)))
        .collect();
    Ok(pq.add_relations(&rels)?)
}

/// Generator-level isomorphism between form (i) and another form, checked
/// only through probes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    /// Form (i) → other form.
    pub forward: WordHom,
    /// Other form → form (i).
    pub backward: WordHom,
}

impl IsoWitness {
    /// Exhaustively transports every homomorphism `form_x → probe` to form (i)
    /// and back (and every homomorphism `form_i → probe` the other way round),
    /// checking that transported maps are homomorphisms and that each round
    /// trip is the identity.
    pub fn round_trip(
        &self,
        form_i: &Presentation,
        form_x: &Presentation,
        probe: &PermGroupTarget,
    ) -> Result<bool, VkError> {
        for h in enumerate_homs(form_x, probe)? {
            let there = self.forward.pull_back(&h)?;
            if !verify_hom(form_i, &there)? {
                return Ok(false);
            }
            if self.backward.pull_back(&there)? != h {
                return Ok(false);
            }
        }
        for k in enumerate_homs(form_i, probe)? {
            let there = self.backward.pull_back(&k)?;
            if !verify_hom(form_x, &there)? {
                return Ok(false);
            }
            if self.forward.pull_back(&there)? != k {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VkForms {
    pub form_i: Presentation,
    pub form_ii: Presentation,
    pub form_iii: Presentation,
    pub form_iv: Presentation,
    pub witness_ii: IsoWitness,
    pub witness_iii: IsoWitness,
    pub witness_iv: IsoWitness,
}

impl VkForms {
    pub fn all(&self) -> [(&'static str, &Presentation); 4] {
        [
            ("i", &self.form_i),
            ("ii", &self.form_ii),
            ("iii", &self.form_iii),
            ("iv", &self.form_iv),
        ]
    }

    pub fn witnesses(&self) -> [(&'static str, &Presentation, &IsoWitness); 3] {
        [
            ("ii", &self.form_ii, &self.witness_ii),
            ("iii", &self.form_iii, &self.witness_iii),
            ("iv", &self.form_iv, &self.witness_iv),
        ]
    }
}

fn copy_namespace(ns: &str, i: usize) -> String {
    format!("{ns}[{i}]")
}

fn copy_gen(g: &GenId, i: usize) -> GenId {
    GenId::new(copy_namespace(&g.namespace, i), g.index)
}

fn copy_of(p: &Presentation, i: usize) -> Result<Presentation, VkError> {
    Ok(p.rename(|g| copy_gen(g, i))?)
}

fn rename_word(w: &Word, i: usize) -> Word {
    w.rename(|g| copy_gen(g, i))
}

/// Conjugation relators `u_ij⁻¹ [y]ᵢ u_ij = [y]ⱼ` over all `i ≠ j` and all
/// generators `y` of `π′`.
fn copy_conjugation_relators(input: &VkInput, f: &FGroup) -> Vec<(Word, Word)> {
    let s = input.s();
    let mut rels = Vec::new();
    for i in 1..=s {
        for j in 1..=s {
            if i == j {
                continue;
            }
            for y in input.pi_prime.generators() {
                let yi = Word::gen(copy_gen(y, i));
                let yj = Word::gen(copy_gen(y, j));
                rels.push((yi.conjugated_by(f.u(i, j)), yj));
            }
        }
    }
    rels
}

/// Forms (ii), (iii) and (iv) with their witnesses to form (i).
pub fn vk_alternate_forms(input: &VkInput) -> Result<VkForms, VkError> {
    input.validate()?;
    let s = input.s();
    let f = build_f_in(&input.conjugators, s)?;
    let form_i = vk_construct(input)?.presentation;

    // (ii): π ∗ (π′[1] ∗ … ∗ π′[s] ∗ F / conjugation) / ψᵢ(a) = [φᵢ(a)]ᵢ
    let mut copies = Presentation::trivial();
    for i in 1..=s {
        copies = free_product(&copies, &copy_of(&input.pi_prime, i)?)?;
    }
    let copies_with_conjugators = free_product(&copies, &f.presentation)?.add_relations(&copy_conjugation_relators(input, &f))?;
    let mut interface_rels = Vec::new();
    for (i, itf) in input.interfaces.iter().enumerate() {
        for a in itf.group.generators() {
            interface_rels.push((mapped(&itf.psi, a), rename_word(&mapped(&itf.phi, a), i + 1)));
        }
    }
    let form_ii = free_product(&input.pi, &copies_with_conjugators)?.add_relations(&interface_rels)?;

    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    for g in input.pi.generators() {
        fwd.insert(g.clone(), Word::gen(g.clone()));
        bwd.insert(g.clone(), Word::gen(g.clone()));
    }
    for y in input.pi_prime.generators() {
        fwd.insert(y.clone(), Word::gen(copy_gen(y, 1)));
        for i in 1..=s {
            bwd.insert(copy_gen(y, i), Word::gen(y.clone()).conjugated_by(&f.v(i)));
        }
    }
    for v in f.presentation.generators() {
        fwd.insert(v.clone(), Word::gen(v.clone()));
        bwd.insert(v.clone(), Word::gen(v.clone()));
    }
    let witness_ii = IsoWitness {
        forward: WordHom::new(fwd),
        backward: WordHom::new(bwd),
    };

    // (iii): (π ∐_{π″₁} π′) ∗ F / ψᵢ(a) = vᵢ⁻¹ φᵢ(a) vᵢ for i ≥ 2
    let first = &input.interfaces[0];
    let amalgam = amalgamated_coproduct(&input.pi, &input.pi_prime, &first.group, &first.psi, &first.phi)?;
    let mut relators = Vec::new();
    for (i, itf) in input.interfaces.iter().enumerate().skip(1) {
        let v = f.v(i + 1);
        for a in itf.group.generators() {
            relators.push(
                mapped(&itf.psi, a)
                    .inverse()
                    .mul(&mapped(&itf.phi, a).conjugated_by(&v)),
            );
        }
    }
    let form_iii = free_product(&amalgam, &f.presentation)?.add_relators(relators)?;
    let same = WordHom::renaming(&form_i, |g| g.clone());
    let witness_iii = IsoWitness {
        forward: same.clone(),
        backward: same,
    };

    // (iv): (π[1] ∐_{π″₁} π′[1]) ∐_π … ∐_π (π[s] ∐_{π″ₛ} π′[s]) ∗ F / conjugation
    let mut fiber: Option<Presentation> = None;
    for (idx, itf) in input.interfaces.iter().enumerate() {
        let i = idx + 1;
        let pi_i = copy_of(&input.pi, i)?;
        let pp_i = copy_of(&input.pi_prime, i)?;
        let psi_i = WordHom::new(
            itf.psi
                .images
                .iter()
                .map(|(g, w)| (g.clone(), rename_word(w, i)))
                .collect(),
        );
        let phi_i = WordHom::new(
            itf.phi
                .images
                .iter()
                .map(|(g, w)| (g.clone(), rename_word(w, i)))
                .collect(),
        );
        let amalgam_i = amalgamated_coproduct(&pi_i, &pp_i, &itf.group, &psi_i, &phi_i)?;
        fiber = Some(match fiber {
            None => amalgam_i,
            Some(acc) => {
                let to_first = WordHom::renaming(&input.pi, |g| copy_gen(g, 1));
                let to_i = WordHom::renaming(&input.pi, |g| copy_gen(g, i));
                amalgamated_coproduct(&acc, &amalgam_i, &input.pi, &to_first, &to_i)?
            }
        });
    }
    let fiber = fiber.expect("s >= 1");
    let form_iv = free_product(&fiber, &f.presentation)?.add_relations(&copy_conjugation_relators(input, &f))?;

    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    for g in input.pi.generators() {
        fwd.insert(g.clone(), Word::gen(copy_gen(g, 1)));
        for i in 1..=s {
            bwd.insert(copy_gen(g, i), Word::gen(g.clone()));
        }
    }
    for y in input.pi_prime.generators() {
        fwd.insert(y.clone(), Word::gen(copy_gen(y, 1)));
        for i in 1..=s {
            bwd.insert(copy_gen(y, i), Word::gen(y.clone()).conjugated_by(&f.v(i)));
        }
    }
    for v in f.presentation.generators() {
        fwd.insert(v.clone(), Word::gen(v.clone()));
        bwd.insert(v.clone(), Word::gen(v.clone()));
    }
    let witness_iv = IsoWitness {
        forward: WordHom::new(fwd),
        backward: WordHom::new(bwd),
    };

    Ok(VkForms {
        form_i,
        form_ii,
        form_iii,
        form_iv,
        witness_ii,
        witness_iii,
        witness_iv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{count_homs, count_transitive_reps, fingerprint};

    fn s(n: usize) -> PermGroupTarget {
        PermGroupTarget::symmetric(n).unwrap()
    }

    fn trivial_interfaces(k: usize) -> Vec<Interface> {
        (0..k)
            .map(|_| Interface {
                group: Presentation::trivial(),
                psi: WordHom::default(),
                phi: WordHom::default(),
            })
            .collect()
    }

    #[test]
    fn f_of_one_is_trivial() {
        let f = build_f(1).unwrap();
        assert_eq!(f.presentation.rank(), 0);
        assert_eq!(f.u(1, 1), &Word::identity());
    }

    #[test]
    fn f_of_three_has_rank_two() {
        let f = build_f(3).unwrap();
        assert_eq!(f.presentation.rank(), 2);
        let v2 = GenId::new("F", 2);
        let v3 = GenId::new("F", 3);
        assert_eq!(f.u(2, 3), &Word::gen_inv(v2).mul(&Word::gen(v3)));
    }

    #[test]
    fn f_of_four_into_s3() {
        assert_eq!(count_homs(&build_f(4).unwrap().presentation, &s(3)).unwrap(), 216);
        assert!(matches!(build_f(0), Err(VkError::NoInterfaces)));
    }

    #[test]
    fn f_cocycle_relations_reduce_away() {
        for n in 1..=5 {
            let f = build_f(n).unwrap();
            for i in 1..=n {
                assert!(f.u(i, i).is_empty());
                for j in 1..=n {
                    for k in 1..=n {
                        let r = f.u(i, j).mul(f.u(j, k)).mul(&f.u(i, k).inverse());
                        assert!(r.is_empty(), "u{i}{j} u{j}{k} != u{i}{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn single_trivial_interface_is_free_product() {
        let pi = Presentation::cyclic("a", 2);
        let pp = Presentation::cyclic("b", 3);
        let out = vk_construct(&VkInput::new(pi.clone(), pp.clone(), trivial_interfaces(1))).unwrap();
        assert_eq!(out.presentation, free_product(&pi, &pp).unwrap());
    }

    #[test]
    fn all_trivial_gives_free_group_of_rank_s_minus_one() {
        for k in 1..=4 {
            let out = vk_construct(&VkInput::new(
                Presentation::trivial(),
                Presentation::trivial(),
                trivial_interfaces(k),
            ))
            .unwrap();
            assert_eq!(out.presentation.rank(), k - 1);
            assert!(out.presentation.relations().is_empty());
        }
    }

    #[test]
    fn order_two_with_one_conjugator() {
        let out = vk_construct(&VkInput::new(
            Presentation::cyclic("a", 2),
            Presentation::trivial(),
            trivial_interfaces(2),
        ))
        .unwrap();
        // a ∈ {e, (01)} and v₂ free: 2 · 2
        assert_eq!(count_homs(&out.presentation, &s(2)).unwrap(), 4);
    }

    #[test]
    fn form_ii_generator_count() {
        let input = VkInput::new(Presentation::cyclic("a", 2), Presentation::free("b", 2), trivial_interfaces(3));
        let forms = vk_alternate_forms(&input).unwrap();
        assert_eq!(forms.form_ii.rank(), 1 + 3 * 2 + 2);
    }

    #[test]
    fn single_interface_forms_i_and_iii_agree() {
        let a = GenId::new("a", 0);
        let b = GenId::new("b", 0);
        let c = GenId::new("c", 0);
        let input = VkInput::new(
            Presentation::cyclic("a", 4),
            Presentation::cyclic("b", 6),
            vec![Interface {
                group: Presentation::cyclic("c", 2),
                psi: WordHom::new(BTreeMap::from([(c.clone(), Word::power(&a, 2))])),
                phi: WordHom::new(BTreeMap::from([(c, Word::power(&b, 3))])),
            }],
        );
        let forms = vk_alternate_forms(&input).unwrap();
        assert_eq!(forms.form_i.generators(), forms.form_iii.generators());
        assert_eq!(forms.form_i.canonical_relators(), forms.form_iii.canonical_relators());
    }

    #[test]
    fn amalgam_of_z_with_itself_is_z() {
        let p = Presentation::free("a", 1);
        let q = Presentation::free("a2", 1);
        let base = Presentation::free("t", 1);
        let t = GenId::new("t", 0);
        let f = WordHom::new(BTreeMap::from([(t.clone(), Word::gen(GenId::new("a", 0)))]));
        let g = WordHom::new(BTreeMap::from([(t, Word::gen(GenId::new("a2", 0)))]));
        let am = amalgamated_coproduct(&p, &q, &base, &f, &g).unwrap();
        assert_eq!(fingerprint(&am, &[s(3)]).unwrap().counts, vec![6]);
    }

    #[test]
    fn amalgam_of_two_order_two_groups_is_infinite_dihedral() {
        let am = amalgamated_coproduct(
            &Presentation::cyclic("a", 2),
            &Presentation::cyclic("b", 2),
            &Presentation::trivial(),
            &WordHom::default(),
            &WordHom::default(),
        )
        .unwrap();
        assert_eq!(count_transitive_reps(&am, 2).unwrap(), 3);
    }

    #[test]
    fn amalgam_rejects_wrong_source() {
        let err = amalgamated_coproduct(
            &Presentation::cyclic("a", 2),
            &Presentation::cyclic("b", 2),
            &Presentation::free("t", 1),
            &WordHom::default(),
            &WordHom::default(),
        )
        .unwrap_err();
        assert!(matches!(err, VkError::SourceMismatch(_)));
    }

    #[test]
    fn validation_catches_namespace_reuse() {
        let input = VkInput::new(Presentation::cyclic("a", 2), Presentation::cyclic("a", 3), trivial_interfaces(1));
        assert!(matches!(vk_construct(&input), Err(VkError::Malformed(_))));
        let input = VkInput::new(Presentation::trivial(), Presentation::trivial(), vec![]);
        assert!(matches!(vk_construct(&input), Err(VkError::NoInterfaces)));
    }

    #[test]
    fn witness_round_trip_with_nontrivial_interfaces() {
        let a = GenId::new("a", 0);
        let b = GenId::new("b", 0);
        let input = VkInput::new(
            Presentation::cyclic("a", 2),
            Presentation::cyclic("b", 2),
            vec![
                Interface {
                    group: Presentation::cyclic("c", 2),
                    psi: WordHom::new(BTreeMap::from([(GenId::new("c", 0), Word::gen(a.clone()))])),
                    phi: WordHom::new(BTreeMap::from([(GenId::new("c", 0), Word::gen(b.clone()))])),
                },
                Interface {
                    group: Presentation::cyclic("d", 2),
                    psi: WordHom::new(BTreeMap::from([(GenId::new("d", 0), Word::gen(a))])),
                    phi: WordHom::new(BTreeMap::from([(GenId::new("d", 0), Word::gen(b))])),
                },
            ],
        );
        let forms = vk_alternate_forms(&input).unwrap();
        let probe = s(3);
        for (name, form, w) in forms.witnesses() {
            assert!(w.round_trip(&forms.form_i, form, &probe).unwrap(), "form {name}");
        }
    }
}
