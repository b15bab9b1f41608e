use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::schreier::StabChain;

struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

/// A permutation group given by generators. The stabilizer chain used for
/// order and membership queries is built on first use and shared by clones.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

impl PermGroup {
    /// Deduplicates the generators and drops identities. An empty list gives
    /// the trivial group.
    pub fn from_generators(generators: Vec<Permutation>, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = BTreeSet::new();
        let mut gens = Vec::new();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
            if !g.is_identity() && seen.insert(g.clone()) {
                gens.push(g);
            }
        }
        Ok(Self::from_parts(degree, gens, None))
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        Self::from_generators(Vec::new(), degree)
    }

    fn from_parts(degree: usize, generators: Vec<Permutation>, chain: Option<StabChain>) -> Self {
        let cell = OnceLock::new();
        if let Some(chain) = chain {
            let _ = cell.set(chain);
        }
        PermGroup {
            inner: Arc::new(Inner {
                degree,
                generators,
                chain: cell,
            }),
        }
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.inner
            .chain
            .get_or_init(|| StabChain::new(self.inner.degree, &self.inner.generators, &[]))
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.generators.is_empty()
    }

    /// Exact order from the stabilizer chain.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        self.check_degree(p)?;
        Ok(self.chain().contains(p))
    }

    pub(crate) fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: p.degree(),
            });
        }
        Ok(())
    }

    /// Errors unless `p` is an element of this group.
    pub(crate) fn require_member(&self, p: &Permutation, context: &str) -> Result<()> {
        if self.contains(p)? {
            Ok(())
        } else {
            Err(Error::NotMember {
                element: p.to_string(),
                context: context.to_string(),
            })
        }
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> Result<bool> {
        if other.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(other.generators().iter().all(|g| self.chain().contains(g)))
    }

    /// True when `sub` is normalized by every generator of `self`. Assumes
    /// `sub ≤ self`.
    pub fn normalizes(&self, sub: &PermGroup) -> bool {
        self.generators().iter().all(|g| {
            sub.generators()
                .iter()
                .all(|h| sub.chain().contains(&h.conjugate_by(g)))
        })
    }

    /// Subgroup fixing each of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &p in points {
            if p >= self.degree() {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree(),
                });
            }
        }
        let chain = StabChain::new(self.degree(), self.generators(), points);
        let distinct: BTreeSet<usize> = points.iter().copied().collect();
        PermGroup::from_generators(chain.stabilizer_generators(distinct.len()), self.degree())
    }

    /// Orbit of `point`, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        seen[point] = true;
        let mut queue = vec![point];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for g in self.generators() {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
            k += 1;
        }
        queue.sort_unstable();
        queue
    }

    /// An element mapping `from` to `to`, taken from the stabilizer-chain
    /// transversal with `from` as first base point.
    pub fn witness(&self, from: usize, to: usize) -> Option<Permutation> {
        let chain = StabChain::new(self.degree(), self.generators(), &[from]);
        chain.transversal_element(0, to).cloned()
    }

    /// Uniformly distributed random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// Base points of the stabilizer chain together with their basic orbit
    /// sizes, skipping trivial levels.
    pub fn base_and_orbit_sizes(&self) -> Vec<(usize, usize)> {
        let chain = self.chain();
        chain
            .base()
            .iter()
            .enumerate()
            .map(|(pos, &b)| (b, chain.orbit(pos).len()))
            .filter(|&(_, len)| len > 1)
            .collect()
    }

    /// Generator list plus a pre-built chain, used when a subgroup falls out
    /// of a larger computation.
    pub(crate) fn with_chain(
        degree: usize,
        generators: Vec<Permutation>,
        chain: StabChain,
    ) -> Self {
        Self::from_parts(degree, generators, Some(chain))
    }
}

pub fn group_from_generators(generators: Vec<Permutation>, degree: usize) -> Result<PermGroup> {
    PermGroup::from_generators(generators, degree)
}

pub fn order(group: &PermGroup) -> u128 {
    group.order()
}

pub fn contains(group: &PermGroup, p: &Permutation) -> Result<bool> {
    group.contains(p)
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("generators", &self.generators())
            .finish()
    }
}
