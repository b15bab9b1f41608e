//! Right cosets `Hg`, their representatives, and the action of the
//! supergroup on them.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::schreier::StabChain;
use crate::Limits;

/// One representative per right coset of `subgroup` in `supergroup`.
///
/// `reps[0]` is the identity (the representative of `subgroup` itself). The
/// other representatives are found by breadth-first search over the
/// supergroup's generators; within each coset the least discovered element
/// under [`Permutation::cmp_by_preimages`] is kept, and the list is sorted
/// with the same comparison.
#[derive(Clone, Debug)]
pub struct Transversal {
    supergroup: PermGroup,
    subgroup: PermGroup,
    reps: Vec<Permutation>,
    /// canonical coset element -> representative index
    lookup: HashMap<Permutation, usize>,
    rep_index: HashMap<Permutation, usize>,
}

impl Transversal {
    pub fn new(supergroup: &PermGroup, subgroup: &PermGroup, limits: &Limits) -> Result<Self> {
        check_subgroup(supergroup, subgroup)?;
        let index = supergroup.order() / subgroup.order();
        if index > limits.max_index {
            return Err(Error::BoundExceeded {
                what: "coset index",
                size: index,
                bound: limits.max_index,
            });
        }
        let h = subgroup.chain();
        let identity = supergroup.identity();
        let mut frontier = vec![identity.clone()];
        let mut best = vec![identity.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(h.coset_canonical(&identity), 0usize);
        let mut k = 0;
        while k < frontier.len() {
            for s in supergroup.generators() {
                let candidate = frontier[k].then(s);
                let key = h.coset_canonical(&candidate);
                match lookup.get(&key) {
                    Some(&j) => {
                        if candidate.cmp_by_preimages(&best[j]).is_lt() {
                            best[j] = candidate;
                        }
                    }
                    None => {
                        lookup.insert(key, frontier.len());
                        frontier.push(candidate.clone());
                        best.push(candidate);
                    }
                }
            }
            k += 1;
        }
        debug_assert_eq!(best.len() as u128, index);
        best.sort_by(|a, b| a.cmp_by_preimages(b));
        Ok(Self::from_reps_unchecked(supergroup, subgroup, best))
    }

    /// Builds a transversal from caller-chosen representatives after checking
    /// every invariant.
    pub fn from_reps(
        supergroup: &PermGroup,
        subgroup: &PermGroup,
        reps: Vec<Permutation>,
    ) -> Result<Self> {
        check_subgroup(supergroup, subgroup)?;
        let t = Self::from_reps_unchecked(supergroup, subgroup, reps);
        t.validate()?;
        Ok(t)
    }

    /// Builds a transversal without checking that the representatives are
    /// members, distinct modulo the subgroup, or complete. Elements of cosets
    /// that have no representative are reported as uncovered by
    /// [`Transversal::index_of`].
    pub fn from_reps_unchecked(
        supergroup: &PermGroup,
        subgroup: &PermGroup,
        reps: Vec<Permutation>,
    ) -> Self {
        let h = subgroup.chain();
        let mut lookup = HashMap::new();
        let mut rep_index = HashMap::new();
        for (i, r) in reps.iter().enumerate() {
            lookup.entry(h.coset_canonical(r)).or_insert(i);
            rep_index.entry(r.clone()).or_insert(i);
        }
        Transversal {
            supergroup: supergroup.clone(),
            subgroup: subgroup.clone(),
            reps,
            lookup,
            rep_index,
        }
    }

    /// Checks the identity convention, the coset count, membership of the
    /// representatives, and that no two representatives share a coset.
    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: String| Error::InvalidTransversal { reason };
        if !self.reps.first().is_some_and(|r| r.is_identity()) {
            return Err(invalid("first representative is not the identity".into()));
        }
        let index = self.supergroup.order() / self.subgroup.order();
        if self.reps.len() as u128 != index {
            return Err(invalid(format!(
                "{} representatives for {} cosets",
                self.reps.len(),
                index
            )));
        }
        for (i, r) in self.reps.iter().enumerate() {
            self.supergroup.require_member(r, "the supergroup")?;
            if self.lookup.get(&self.subgroup.chain().coset_canonical(r)) != Some(&i) {
                return Err(invalid(format!(
                    "representative {i} ({r}) shares a coset with an earlier one"
                )));
            }
        }
        Ok(())
    }

    pub fn supergroup(&self) -> &PermGroup {
        &self.supergroup
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    /// Number of cosets (the index).
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the coset containing `g`, assuming `g` lies in the supergroup.
    /// `None` means no representative covers that coset.
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.lookup
            .get(&self.subgroup.chain().coset_canonical(g))
            .copied()
    }

    /// Like [`Transversal::index_of`] but checks membership first.
    pub fn coset_index(&self, g: &Permutation) -> Result<usize> {
        self.supergroup.require_member(g, "the supergroup")?;
        self.index_of(g).ok_or_else(|| Error::NotMember {
            element: g.to_string(),
            context: "any coset covered by the transversal".into(),
        })
    }

    /// The representative `r` with `g·r⁻¹` in the subgroup.
    pub fn coset_rep(&self, g: &Permutation) -> Result<&Permutation> {
        Ok(&self.reps[self.coset_index(g)?])
    }

    pub fn index_of_rep(&self, r: &Permutation) -> Option<usize> {
        self.rep_index.get(r).copied()
    }

    /// `r * k`: the representative of the coset containing `r·k`.
    pub fn rep_action(&self, r: &Permutation, k: &Permutation) -> Result<&Permutation> {
        self.supergroup.check_degree(r)?;
        if self.index_of_rep(r).is_none() {
            return Err(Error::NotRepresentative {
                element: r.to_string(),
            });
        }
        self.coset_rep(&r.then(k))
    }

    /// Coset index reached from coset `i` by right multiplication with `k`.
    pub fn act_index(&self, i: usize, k: &Permutation) -> Option<usize> {
        self.index_of(&self.reps[i].then(k))
    }

    /// Permutation of coset indices induced by `k`, if it is a bijection.
    pub fn coset_permutation(&self, k: &Permutation) -> Result<Permutation> {
        let images = (0..self.len())
            .map(|i| {
                self.act_index(i, k).ok_or_else(|| Error::NotMember {
                    element: self.reps[i].then(k).to_string(),
                    context: "any coset covered by the transversal".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut source = vec![None; images.len()];
        for (i, &j) in images.iter().enumerate() {
            if let Some(first) = source[j].replace(i) {
                return Err(Error::InvalidTransversal {
                    reason: format!("{k} sends cosets {first} and {i} to the same coset {j}"),
                });
            }
        }
        Permutation::from_images(images)
    }
}

fn check_subgroup(supergroup: &PermGroup, subgroup: &PermGroup) -> Result<()> {
    if supergroup.degree() != subgroup.degree() {
        return Err(Error::DegreeMismatch {
            expected: supergroup.degree(),
            found: subgroup.degree(),
        });
    }
    if let Some(g) = subgroup
        .generators()
        .iter()
        .find(|g| !supergroup.chain().contains(g))
    {
        return Err(Error::NotSubgroup {
            generator: g.to_string(),
        });
    }
    Ok(())
}

pub fn right_transversal(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<Transversal> {
    Transversal::new(g, h, limits)
}

pub fn coset_rep<'a>(t: &'a Transversal, g: &Permutation) -> Result<&'a Permutation> {
    t.coset_rep(g)
}

pub fn rep_action<'a>(
    t: &'a Transversal,
    r: &Permutation,
    k: &Permutation,
) -> Result<&'a Permutation> {
    t.rep_action(r, k)
}

/// Faithful image of a group acting on the cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct FaithfulComponent {
    point_count: usize,
    image_group: PermGroup,
    generator_map: Vec<(Permutation, Permutation)>,
    core: PermGroup,
    order: u128,
}

impl FaithfulComponent {
    pub fn from_transversal(t: &Transversal) -> Result<Self> {
        let generator_map = t
            .supergroup()
            .generators()
            .iter()
            .map(|g| Ok((g.clone(), t.coset_permutation(g)?)))
            .collect::<Result<Vec<_>>>()?;
        let image_group = PermGroup::from_generators(
            generator_map.iter().map(|(_, img)| img.clone()).collect(),
            t.len(),
        )?;
        let core = core_of(t);
        let order = t.supergroup().order() / core.order();
        Ok(FaithfulComponent {
            point_count: t.len(),
            image_group,
            generator_map,
            core,
            order,
        })
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    /// The group generated by the deduplicated generator images. Its
    /// stabilizer chain is only built when queried.
    pub fn image_group(&self) -> &PermGroup {
        &self.image_group
    }

    /// Each supergroup generator paired with its action on coset indices.
    pub fn generator_map(&self) -> &[(Permutation, Permutation)] {
        &self.generator_map
    }

    /// Kernel of the coset action.
    pub fn core(&self) -> &PermGroup {
        &self.core
    }

    /// Order of the image group, `|G| / |core|`.
    pub fn order(&self) -> u128 {
        self.order
    }
}

pub fn action_on_cosets(
    g: &PermGroup,
    h: &PermGroup,
    limits: &Limits,
) -> Result<FaithfulComponent> {
    FaithfulComponent::from_transversal(&Transversal::new(g, h, limits)?)
}

/// The core of `h` in `g`: the largest normal subgroup of `g` inside `h`,
/// computed as the kernel of the action on cosets.
pub fn core(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    Ok(core_of(&Transversal::new(g, h, limits)?))
}

/// Kernel of the coset action. Starting from the subgroup (which fixes
/// coset 0), repeatedly replaces the candidate by its stabilizer of the
/// first coset it still moves.
pub(crate) fn core_of(t: &Transversal) -> PermGroup {
    let sub = t.subgroup();
    if t.supergroup().normalizes(sub) {
        return sub.clone();
    }
    let degree = sub.degree();
    let act =
        |x: usize, s: &Permutation| t.act_index(x, s).expect("transversal covers every coset");
    let mut gens = sub.generators().to_vec();
    let mut chain: Option<StabChain> = None;
    for c in 1..t.len() {
        if gens.iter().all(|s| act(c, s) == c) {
            continue;
        }
        // Orbit of c under the current candidate, with elements reaching
        // each orbit point.
        let mut reach: HashMap<usize, Permutation> = HashMap::new();
        reach.insert(c, Permutation::identity(degree));
        let mut queue = VecDeque::from([c]);
        let mut orbit = vec![c];
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = act(x, s);
                if !reach.contains_key(&y) {
                    let w = reach[&x].then(s);
                    reach.insert(y, w);
                    queue.push_back(y);
                    orbit.push(y);
                }
            }
        }
        let mut stab = StabChain::trivial(degree, &[]);
        let mut stab_gens = Vec::new();
        for &x in &orbit {
            for s in &gens {
                let y = act(x, s);
                let schreier = reach[&x].then(s).then(&reach[&y].inverse());
                if !schreier.is_identity() && stab.extend(&schreier) {
                    stab_gens.push(schreier);
                }
            }
        }
        gens = stab_gens;
        chain = Some(stab);
    }
    match chain {
        Some(chain) => PermGroup::with_chain(degree, gens, chain),
        None => sub.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn group(degree: usize, cycles: &[&str]) -> PermGroup {
        let gens = cycles
            .iter()
            .map(|c| parse_cycles(c, degree).unwrap())
            .collect();
        PermGroup::from_generators(gens, degree).unwrap()
    }

    fn p(degree: usize, c: &str) -> Permutation {
        parse_cycles(c, degree).unwrap()
    }

    fn s3() -> PermGroup {
        group(3, &["(1,2,3)", "(1,2)"])
    }

    fn a3() -> PermGroup {
        group(3, &["(1,2,3)"])
    }

    #[test]
    fn s3_over_a3() {
        let t = right_transversal(&s3(), &a3(), &Limits::default()).unwrap();
        assert_eq!(t.reps(), &[Permutation::identity(3), p(3, "(1,2)")]);
        t.validate().unwrap();
        assert_eq!(
            coset_rep(&t, &p(3, "(1,2,3)")).unwrap(),
            &Permutation::identity(3)
        );
        assert_eq!(coset_rep(&t, &p(3, "(2,3)")).unwrap(), &p(3, "(1,2)"));
        assert_eq!(
            coset_rep(&t, &Permutation::identity(3)).unwrap(),
            &Permutation::identity(3)
        );
    }

    #[test]
    fn trivial_index() {
        let t = right_transversal(&s3(), &s3(), &Limits::default()).unwrap();
        assert_eq!(t.reps(), &[Permutation::identity(3)]);
    }

    #[test]
    fn a4_over_v4_has_three_cosets() {
        let a4 = group(4, &["(1,2,3)", "(1,2)(3,4)"]);
        let v4 = group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let t = right_transversal(&a4, &v4, &Limits::default()).unwrap();
        assert_eq!(t.len(), 3);
        t.validate().unwrap();
    }

    #[test]
    fn transversal_errors() {
        let not_sub = group(3, &["(1,2)"]);
        let err = right_transversal(&a3(), &not_sub, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::NotSubgroup { .. }));
        let tight = Limits {
            max_index: 1,
            ..Limits::default()
        };
        let err = right_transversal(&s3(), &a3(), &tight).unwrap_err();
        assert!(matches!(
            err,
            Error::BoundExceeded {
                size: 2,
                bound: 1,
                ..
            }
        ));
        let t = right_transversal(&s3(), &a3(), &Limits::default()).unwrap();
        let outside = group(4, &["(1,2,3,4)"]);
        assert!(coset_rep(&t, &outside.generators()[0]).is_err());
    }

    #[test]
    fn rep_action_examples() {
        let t = right_transversal(&s3(), &a3(), &Limits::default()).unwrap();
        let id = Permutation::identity(3);
        let swap = p(3, "(1,2)");
        assert_eq!(rep_action(&t, &id, &swap).unwrap(), &swap);
        assert_eq!(rep_action(&t, &swap, &id).unwrap(), &swap);
        assert_eq!(rep_action(&t, &swap, &swap).unwrap(), &id);
        let err = rep_action(&t, &p(3, "(1,3)"), &swap).unwrap_err();
        assert!(matches!(err, Error::NotRepresentative { .. }));
    }

    #[test]
    fn faithful_component_examples() {
        let a4 = group(4, &["(1,2,3)", "(1,2)(3,4)"]);
        let v4 = group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let c = action_on_cosets(&a4, &v4, &Limits::default()).unwrap();
        assert_eq!(c.point_count(), 3);
        assert_eq!(c.order(), 3);
        assert_eq!(c.image_group().order(), 3);

        let c = action_on_cosets(&a4, &a4, &Limits::default()).unwrap();
        assert_eq!(c.point_count(), 1);
        assert!(c.image_group().is_trivial());

        let c = action_on_cosets(&s3(), &a3(), &Limits::default()).unwrap();
        assert_eq!((c.point_count(), c.order()), (2, 2));
        assert_eq!(c.generator_map().len(), 2);
        // the 3-cycle fixes both cosets, so only one image generator survives
        assert_eq!(c.image_group().generators().len(), 1);
    }

    #[test]
    fn core_examples() {
        let limits = Limits::default();
        let a4 = group(4, &["(1,2,3)", "(1,2)(3,4)"]);
        let v4 = group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert_eq!(core(&a4, &v4, &limits).unwrap().order(), 4);
        assert_eq!(core(&s3(), &s3(), &limits).unwrap().order(), 6);
        assert_eq!(
            core(&s3(), &group(3, &["(1,2)"]), &limits).unwrap().order(),
            1
        );
        // non-normal with a nontrivial core: S4 over the dihedral group D4
        let s4 = group(4, &["(1,2,3,4)", "(1,2)"]);
        let d4 = group(4, &["(1,2,3,4)", "(1,3)"]);
        let k = core(&s4, &d4, &limits).unwrap();
        assert_eq!(k.order(), 4);
        assert!(k.contains(&p(4, "(1,2)(3,4)")).unwrap());
    }
}
