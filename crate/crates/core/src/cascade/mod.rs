//! Lagrange coordinates: raising elements to coset-coordinate tuples,
//! flattening them back, and the cascaded action of the top group on
//! coordinate tuples.

mod table;
mod transitive;

use std::fmt;
use std::str::FromStr;

use crate::chain::SubgroupChain;
use crate::coset::{FaithfulComponent, Transversal};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::Limits;

pub use table::DependencyTable;
pub use transitive::{decompose_transitive, TransitiveDecomposition};

/// Coordinate tuple: one coset index per level, top level first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CascadedState(Vec<usize>);

impl CascadedState {
    pub fn new(coords: Vec<usize>) -> Self {
        CascadedState(coords)
    }

    /// The all-identity state.
    pub fn zero(length: usize) -> Self {
        CascadedState(vec![0; length])
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for CascadedState {
    fn from(coords: Vec<usize>) -> Self {
        CascadedState(coords)
    }
}

impl fmt::Display for CascadedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses space- or comma-separated coordinates, e.g. `"0 2"` or `"1,0,3"`.
impl FromStr for CascadedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
            .map(|(i, t)| {
                t.parse::<usize>().map_err(|_| {
                    Error::parse(
                        format!("coordinate {}", i + 1),
                        format!("unexpected token '{t}'"),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(CascadedState)
    }
}

/// A level's component of a cascaded action: the element of `G_i` used by
/// the recursion, and its image acting on the level's coset indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentAction {
    pub element: Permutation,
    pub image: Permutation,
}

/// The coordinate system of a subgroup chain.
#[derive(Clone, Debug)]
pub struct LagrangeDecomposition {
    chain: SubgroupChain,
    transversals: Vec<Transversal>,
    components: Vec<FaithfulComponent>,
    limits: Limits,
}

pub fn build_decomposition(
    chain: &SubgroupChain,
    limits: &Limits,
) -> Result<LagrangeDecomposition> {
    LagrangeDecomposition::new(chain.clone(), limits)
}

impl LagrangeDecomposition {
    pub fn new(chain: SubgroupChain, limits: &Limits) -> Result<Self> {
        let mut transversals = Vec::with_capacity(chain.length());
        let mut components = Vec::with_capacity(chain.length());
        for pair in chain.groups().windows(2) {
            let t = Transversal::new(&pair[0], &pair[1], limits)?;
            components.push(FaithfulComponent::from_transversal(&t)?);
            transversals.push(t);
        }
        Ok(LagrangeDecomposition {
            chain,
            transversals,
            components,
            limits: *limits,
        })
    }

    pub fn chain(&self) -> &SubgroupChain {
        &self.chain
    }

    pub fn top(&self) -> &PermGroup {
        self.chain.top()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Number of levels (coordinates).
    pub fn length(&self) -> usize {
        self.transversals.len()
    }

    pub fn widths(&self) -> Vec<usize> {
        self.transversals.iter().map(Transversal::len).collect()
    }

    pub fn transversals(&self) -> &[Transversal] {
        &self.transversals
    }

    pub fn transversal(&self, level: usize) -> Result<&Transversal> {
        self.check_level(level)?;
        Ok(&self.transversals[level])
    }

    pub fn components(&self) -> &[FaithfulComponent] {
        &self.components
    }

    pub fn component_orders(&self) -> Vec<u128> {
        self.components
            .iter()
            .map(FaithfulComponent::order)
            .collect()
    }

    pub fn faithful_component_of(&self, level: usize) -> Result<&FaithfulComponent> {
        self.check_level(level)?;
        Ok(&self.components[level])
    }

    /// Number of coordinate tuples, the product of the widths.
    pub fn state_count(&self) -> u128 {
        self.transversals.iter().map(|t| t.len() as u128).product()
    }

    /// All states in lexicographic order.
    pub fn states(&self) -> States {
        States::new(self.widths())
    }

    /// Swaps in another transversal for `level` after validating it.
    pub fn replace_transversal(&mut self, level: usize, t: Transversal) -> Result<()> {
        self.check_level(level)?;
        let groups = self.chain.groups();
        if t.supergroup().generators() != groups[level].generators()
            || t.subgroup().generators() != groups[level + 1].generators()
        {
            return Err(Error::InvalidTransversal {
                reason: format!("transversal is not for the groups at level {}", level + 1),
            });
        }
        t.validate()?;
        self.components[level] = FaithfulComponent::from_transversal(&t)?;
        self.transversals[level] = t;
        Ok(())
    }

    /// Swaps in a transversal without any checks, keeping the stored
    /// component. Meant for exercising the verification checks.
    pub fn replace_transversal_unchecked(&mut self, level: usize, t: Transversal) {
        self.transversals[level] = t;
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level >= self.length() {
            return Err(Error::LevelOutOfRange {
                level,
                length: self.length(),
            });
        }
        Ok(())
    }

    pub fn check_state(&self, s: &CascadedState) -> Result<()> {
        if s.len() != self.length() {
            return Err(Error::StateLength {
                expected: self.length(),
                found: s.len(),
            });
        }
        for (level, (&value, t)) in s.coords().iter().zip(&self.transversals).enumerate() {
            if value >= t.len() {
                return Err(Error::CoordinateOutOfRange {
                    level,
                    value,
                    width: t.len(),
                });
            }
        }
        Ok(())
    }

    fn uncovered(&self, level: usize, g: &Permutation) -> Error {
        Error::NotMember {
            element: g.to_string(),
            context: format!(
                "any coset covered by the transversal at level {}",
                level + 1
            ),
        }
    }

    /// The located elements `g₁ = g`, `gᵢ₊₁ = gᵢ·r⁻¹` where `r` represents
    /// the coset of `gᵢ` at level `i`. Returns one element per level plus the
    /// final remainder, which lies in the bottom group.
    pub fn locate(&self, g: &Permutation) -> Result<Vec<Permutation>> {
        self.top().require_member(g, "the top group")?;
        let mut out = Vec::with_capacity(self.length() + 1);
        let mut cur = g.clone();
        for (level, t) in self.transversals.iter().enumerate() {
            let idx = t
                .index_of(&cur)
                .ok_or_else(|| self.uncovered(level, &cur))?;
            let next = cur.then(&t.reps()[idx].inverse());
            out.push(std::mem::replace(&mut cur, next));
        }
        out.push(cur);
        Ok(out)
    }

    pub fn raise_state(&self, g: &Permutation) -> Result<CascadedState> {
        self.top().require_member(g, "the top group")?;
        let mut coords = Vec::with_capacity(self.length());
        let mut cur = g.clone();
        for (level, t) in self.transversals.iter().enumerate() {
            let idx = t
                .index_of(&cur)
                .ok_or_else(|| self.uncovered(level, &cur))?;
            cur = cur.then(&t.reps()[idx].inverse());
            coords.push(idx);
        }
        Ok(CascadedState(coords))
    }

    /// The representatives named by a state, top level first.
    pub fn representatives(&self, s: &CascadedState) -> Result<Vec<&Permutation>> {
        self.check_state(s)?;
        Ok(s.coords()
            .iter()
            .zip(&self.transversals)
            .map(|(&c, t)| &t.reps()[c])
            .collect())
    }

    /// Bottom-up product of the representatives, `r_last ⋯ r_1`.
    pub fn flatten_state(&self, s: &CascadedState) -> Result<Permutation> {
        let reps = self.representatives(s)?;
        Ok(reps
            .iter()
            .rev()
            .fold(self.top().identity(), |acc, r| acc.then(r)))
    }

    /// One step of the recursion: from the component at `level` and the
    /// coordinate there, the new coordinate and the next level's component.
    fn step(&self, level: usize, coord: usize, h: &Permutation) -> Result<(usize, Permutation)> {
        let t = &self.transversals[level];
        let moved = t.reps()[coord].then(h);
        let idx = t
            .index_of(&moved)
            .ok_or_else(|| self.uncovered(level, &moved))?;
        let next = moved.then(&t.reps()[idx].inverse());
        Ok((idx, next))
    }

    /// The raw component elements `h₁ = h`, `hᵢ₊₁ = rᵢ·hᵢ·(rep of rᵢ·hᵢ)⁻¹`
    /// at state `s`, one per level.
    pub fn component_elements(
        &self,
        h: &Permutation,
        s: &CascadedState,
    ) -> Result<Vec<Permutation>> {
        self.top().require_member(h, "the top group")?;
        self.check_state(s)?;
        let mut out = Vec::with_capacity(self.length());
        let mut cur = h.clone();
        for (level, &c) in s.coords().iter().enumerate() {
            let (_, next) = self.step(level, c, &cur)?;
            out.push(std::mem::replace(&mut cur, next));
        }
        Ok(out)
    }

    /// Component elements together with their images on coset indices.
    pub fn component_actions(
        &self,
        h: &Permutation,
        s: &CascadedState,
    ) -> Result<Vec<ComponentAction>> {
        self.component_elements(h, s)?
            .into_iter()
            .zip(&self.transversals)
            .map(|(element, t)| {
                let image = t.coset_permutation(&element)?;
                Ok(ComponentAction { element, image })
            })
            .collect()
    }

    /// The cascaded action of `h` on state `s`.
    pub fn act(&self, s: &CascadedState, h: &Permutation) -> Result<CascadedState> {
        self.top().require_member(h, "the top group")?;
        self.check_state(s)?;
        let mut coords = Vec::with_capacity(self.length());
        let mut cur = h.clone();
        for (level, &c) in s.coords().iter().enumerate() {
            let (idx, next) = self.step(level, c, &cur)?;
            coords.push(idx);
            cur = next;
        }
        Ok(CascadedState(coords))
    }

    pub fn cascade(&self, h: &Permutation) -> Result<CascadedPermutation<'_>> {
        self.top().require_member(h, "the top group")?;
        Ok(CascadedPermutation {
            decomposition: self,
            source: h.clone(),
        })
    }

    pub fn materialize_dependencies(&self, h: &Permutation) -> Result<DependencyTable> {
        DependencyTable::materialize(self, h)
    }

    /// Plain-text summary of the attributes.
    pub fn summary(&self) -> String {
        let join = |v: Vec<String>| v.join(" ");
        let report = self.chain.report();
        let flags = report
            .subnormal_flags
            .iter()
            .map(|&b| if b { "yes" } else { "no" }.to_string())
            .collect();
        format!(
            "length {}\nwidths {}\ncomponent orders {}\nsubnormal {}\nkind {}\norder {}\n",
            self.length(),
            join(self.widths().iter().map(ToString::to_string).collect()),
            join(
                self.component_orders()
                    .iter()
                    .map(ToString::to_string)
                    .collect()
            ),
            join(flags),
            self.chain.kind(),
            self.top().order(),
        )
    }
}

/// Iterator over all states in lexicographic order.
#[derive(Clone, Debug)]
pub struct States {
    widths: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl States {
    fn new(widths: Vec<usize>) -> Self {
        let next = if widths.iter().all(|&w| w > 0) {
            Some(vec![0; widths.len()])
        } else {
            None
        };
        States { widths, next }
    }
}

impl Iterator for States {
    type Item = CascadedState;

    fn next(&mut self) -> Option<CascadedState> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.widths[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(CascadedState(current))
    }
}

/// An element of the top group acting on coordinate tuples. The component
/// actions are evaluated on demand from the source element.
#[derive(Clone, Debug)]
pub struct CascadedPermutation<'a> {
    decomposition: &'a LagrangeDecomposition,
    source: Permutation,
}

impl CascadedPermutation<'_> {
    pub fn source(&self) -> &Permutation {
        &self.source
    }

    pub fn act(&self, s: &CascadedState) -> Result<CascadedState> {
        self.decomposition.act(s, &self.source)
    }

    pub fn component_actions(&self, s: &CascadedState) -> Result<Vec<ComponentAction>> {
        self.decomposition.component_actions(&self.source, s)
    }

    pub fn dependency_table(&self) -> Result<DependencyTable> {
        self.decomposition.materialize_dependencies(&self.source)
    }

    /// Equal action on every state when there are at most `max_table`
    /// states, otherwise equal source elements.
    pub fn equivalent(&self, other: &CascadedPermutation<'_>) -> bool {
        if !std::ptr::eq(self.decomposition, other.decomposition) {
            return false;
        }
        if self.source == other.source {
            return true;
        }
        let d = self.decomposition;
        if d.state_count() > d.limits.max_table {
            return false;
        }
        d.states().all(|s| match (self.act(&s), other.act(&s)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        })
    }
}

impl PartialEq for CascadedPermutation<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
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

    fn decompose(groups: Vec<PermGroup>) -> LagrangeDecomposition {
        let chain = SubgroupChain::new(groups, false).unwrap();
        LagrangeDecomposition::new(chain, &Limits::default()).unwrap()
    }

    fn s3_chain() -> LagrangeDecomposition {
        decompose(vec![
            group(3, &["(1,2,3)", "(1,2)"]),
            group(3, &["(1,2,3)"]),
            group(3, &[]),
        ])
    }

    fn a4_chief() -> LagrangeDecomposition {
        decompose(vec![
            group(4, &["(1,2,3)", "(1,2)(3,4)"]),
            group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]),
            group(4, &[]),
        ])
    }

    fn a4_composition() -> LagrangeDecomposition {
        decompose(vec![
            group(4, &["(1,2,3)", "(1,2)(3,4)"]),
            group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]),
            group(4, &["(1,2)(3,4)"]),
            group(4, &[]),
        ])
    }

    fn reps_of(d: &LagrangeDecomposition, s: &CascadedState) -> Vec<Permutation> {
        d.representatives(s).unwrap().into_iter().cloned().collect()
    }

    #[test]
    fn attributes() {
        let d = a4_chief();
        assert_eq!(d.length(), 2);
        assert_eq!(d.widths(), vec![3, 4]);
        assert_eq!(d.component_orders(), vec![3, 4]);
        let d = a4_composition();
        assert_eq!(d.widths(), vec![3, 2, 2]);
        assert_eq!(d.component_orders(), vec![3, 2, 2]);
        let d = decompose(vec![group(3, &["(1,2,3)", "(1,2)"]), group(3, &[])]);
        assert_eq!(d.length(), 1);
        assert_eq!(d.widths(), vec![6]);
        assert_eq!(d.faithful_component_of(0).unwrap().order(), 6);
        assert!(d.faithful_component_of(1).is_err());
    }

    #[test]
    fn faithful_components_of_the_chief_series() {
        let d = a4_chief();
        let top = d.faithful_component_of(0).unwrap();
        assert_eq!((top.point_count(), top.order()), (3, 3));
        let bottom = d.faithful_component_of(1).unwrap();
        assert_eq!((bottom.point_count(), bottom.order()), (4, 4));
    }

    #[test]
    fn raise_examples() {
        let d = s3_chain();
        let id = Permutation::identity(3);
        assert_eq!(d.raise_state(&id).unwrap(), CascadedState::zero(2));
        let s = d.raise_state(&p(3, "(1,2,3)")).unwrap();
        assert_eq!(reps_of(&d, &s), vec![id.clone(), p(3, "(1,2,3)")]);
        let s = d.raise_state(&p(3, "(2,3)")).unwrap();
        assert_eq!(reps_of(&d, &s), vec![p(3, "(1,2)"), p(3, "(1,2,3)")]);
        assert_eq!(s.to_string(), "1 2");
        let a3 = decompose(vec![group(3, &["(1,2,3)"]), group(3, &[])]);
        assert!(matches!(
            a3.raise_state(&p(3, "(1,2)")),
            Err(Error::NotMember { .. })
        ));
    }

    #[test]
    fn flatten_examples() {
        let d = s3_chain();
        assert!(d
            .flatten_state(&CascadedState::zero(2))
            .unwrap()
            .is_identity());
        let s = d.raise_state(&p(3, "(2,3)")).unwrap();
        assert_eq!(d.flatten_state(&s).unwrap(), p(3, "(2,3)"));
        assert!(matches!(
            d.flatten_state(&CascadedState::new(vec![2, 0])),
            Err(Error::CoordinateOutOfRange { level: 0, .. })
        ));
        assert!(matches!(
            d.flatten_state(&CascadedState::new(vec![0])),
            Err(Error::StateLength { .. })
        ));
    }

    #[test]
    fn locate_matches_raise() {
        let d = a4_composition();
        for s in d.states() {
            let g = d.flatten_state(&s).unwrap();
            let located = d.locate(&g).unwrap();
            assert_eq!(located.len(), d.length() + 1);
            assert_eq!(&located[0], &g);
            assert!(located.last().unwrap().is_identity());
            for (level, gi) in located.iter().take(d.length()).enumerate() {
                assert!(d.chain().groups()[level].contains(gi).unwrap());
            }
        }
    }

    #[test]
    fn component_action_examples() {
        let d = s3_chain();
        let swap = p(3, "(1,2)");
        let s = d.raise_state(&p(3, "(1,2,3)")).unwrap();
        let h = d.component_elements(&swap, &s).unwrap();
        assert_eq!(h, vec![swap.clone(), Permutation::identity(3)]);
        let actions = d.component_actions(&swap, &s).unwrap();
        assert_eq!(actions[0].image, p(2, "(1,2)"));
        assert!(actions[1].image.is_identity());
        for s in d.states() {
            let id = d.component_elements(&Permutation::identity(3), &s).unwrap();
            assert!(id.iter().all(Permutation::is_identity));
        }
    }

    #[test]
    fn component_actions_at_zero_state_are_located_elements() {
        let d = a4_composition();
        let zero = CascadedState::zero(d.length());
        for s in d.states() {
            let h = d.flatten_state(&s).unwrap();
            let located = d.locate(&h).unwrap();
            assert_eq!(
                d.component_elements(&h, &zero).unwrap(),
                located[..d.length()]
            );
        }
    }

    #[test]
    fn act_examples() {
        let d = s3_chain();
        let s = d.raise_state(&p(3, "(1,2,3)")).unwrap();
        assert_eq!(d.act(&s, &Permutation::identity(3)).unwrap(), s);
        let moved = d.act(&s, &p(3, "(1,2)")).unwrap();
        assert_eq!(moved, d.raise_state(&p(3, "(2,3)")).unwrap());
        assert_eq!(moved.to_string(), "1 2");
        assert_eq!(CascadedState::from_str("0 2").unwrap(), s);
    }

    #[test]
    fn act_is_a_homomorphism_on_a4() {
        let d = a4_chief();
        let elements: Vec<_> = d.states().map(|s| d.flatten_state(&s).unwrap()).collect();
        assert_eq!(elements.len(), 12);
        for g in &elements {
            for h in &elements {
                let lhs = d.act(&d.raise_state(g).unwrap(), h).unwrap();
                assert_eq!(lhs, d.raise_state(&g.then(h)).unwrap());
            }
        }
    }

    #[test]
    fn state_parsing() {
        assert_eq!(
            CascadedState::from_str("1, 0 ,3").unwrap().coords(),
            &[1, 0, 3]
        );
        assert!(CascadedState::from_str("").unwrap().is_empty());
        assert!(matches!(
            CascadedState::from_str("0 x"),
            Err(Error::Parse { .. })
        ));
        assert!(CascadedState::from_str("-1").is_err());
    }

    #[test]
    fn states_enumerate_lexicographically() {
        let d = a4_composition();
        let all: Vec<_> = d.states().collect();
        assert_eq!(all.len() as u128, d.state_count());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let empty = decompose(vec![group(3, &["(1,2)"])]);
        assert_eq!(empty.states().count(), 1);
    }

    #[test]
    fn cascaded_permutation_equality_is_extensional() {
        // with a stabilizer-terminated chain distinct elements can act alike
        let s3 = group(3, &["(1,2,3)", "(1,2)"]);
        let d = decompose(vec![s3.clone(), group(3, &["(2,3)"])]);
        let a = d.cascade(&p(3, "(1,2,3)")).unwrap();
        let b = d.cascade(&p(3, "(1,2,3)")).unwrap();
        assert_eq!(a, b);
        let c = d.cascade(&p(3, "(1,3,2)")).unwrap();
        assert_ne!(a, c);
        let s = CascadedState::zero(1);
        assert_eq!(a.act(&s).unwrap(), d.act(&s, a.source()).unwrap());
        assert!(d.cascade(&p(4, "(1,4)")).is_err());
    }

    #[test]
    fn replace_transversal_validates() {
        let mut d = s3_chain();
        let t = d.transversal(0).unwrap().clone();
        let reps = vec![Permutation::identity(3), p(3, "(1,3)")];
        let other = Transversal::from_reps(t.supergroup(), t.subgroup(), reps).unwrap();
        d.replace_transversal(0, other).unwrap();
        let g = p(3, "(2,3)");
        assert_eq!(d.flatten_state(&d.raise_state(&g).unwrap()).unwrap(), g);
        let bad = Transversal::from_reps_unchecked(
            t.supergroup(),
            t.subgroup(),
            vec![Permutation::identity(3)],
        );
        assert!(d.replace_transversal(0, bad).is_err());
    }

    #[test]
    fn summary_lists_attributes() {
        let text = a4_chief().summary();
        assert!(text.contains("length 2\n"));
        assert!(text.contains("widths 3 4\n"));
        assert!(text.contains("component orders 3 4\n"));
        assert!(text.contains("subnormal yes yes\n"));
        assert!(text.contains("kind total\n"));
    }
}
