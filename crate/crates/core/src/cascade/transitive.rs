use crate::chain::{stabilizer_descent, SubgroupChain};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::schreier::StabChain;
use crate::Limits;

use super::{CascadedState, LagrangeDecomposition};

/// Coordinates for a transitive action: the chain ends at the stabilizer of
/// a base point, and states correspond to points of the orbit.
#[derive(Clone, Debug)]
pub struct TransitiveDecomposition {
    decomposition: LagrangeDecomposition,
    points: Vec<usize>,
    base: usize,
    witnesses: StabChain,
}

/// Builds the decomposition along `G > Stab(base)`.
pub fn decompose_transitive(
    group: &PermGroup,
    points: &[usize],
    base: usize,
    limits: &Limits,
) -> Result<TransitiveDecomposition> {
    check_transitive(group, points, base)?;
    let chain = stabilizer_descent(group, &[base])?;
    TransitiveDecomposition::with_chain(chain, points, base, limits)
}

fn format_orbits(orbits: &[Vec<usize>]) -> String {
    orbits
        .iter()
        .map(|o| {
            let pts: Vec<String> = o.iter().map(|p| (p + 1).to_string()).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_transitive(group: &PermGroup, points: &[usize], base: usize) -> Result<Vec<usize>> {
    for &p in points.iter().chain([&base]) {
        if p >= group.degree() {
            return Err(Error::PointOutOfRange {
                point: p,
                degree: group.degree(),
            });
        }
    }
    let mut set = points.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.binary_search(&base).is_err() {
        return Err(Error::NotMember {
            element: format!("base point {}", base + 1),
            context: "the point set".into(),
        });
    }
    let orbit = group.orbit(base);
    if orbit != set {
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for &p in &set {
            if !orbits.iter().any(|o| o.contains(&p)) {
                orbits.push(group.orbit(p));
            }
        }
        return Err(Error::NotTransitive {
            orbits: format_orbits(&orbits),
        });
    }
    Ok(set)
}

impl TransitiveDecomposition {
    /// Uses a caller-supplied chain, which must end at the stabilizer of
    /// `base` in its top group.
    pub fn with_chain(
        chain: SubgroupChain,
        points: &[usize],
        base: usize,
        limits: &Limits,
    ) -> Result<Self> {
        let top = chain.top().clone();
        let points = check_transitive(&top, points, base)?;
        let stab = top.pointwise_stabilizer(&[base])?;
        let bottom = chain.bottom();
        if bottom.order() != stab.order()
            || bottom.generators().iter().any(|g| g.apply(base) != base)
        {
            return Err(Error::InvalidChain {
                level: chain.length().saturating_sub(1),
                reason: format!("last group is not the stabilizer of point {}", base + 1),
            });
        }
        let witnesses = StabChain::new(top.degree(), top.generators(), &[base]);
        Ok(TransitiveDecomposition {
            decomposition: LagrangeDecomposition::new(chain, limits)?,
            points,
            base,
            witnesses,
        })
    }

    pub fn decomposition(&self) -> &LagrangeDecomposition {
        &self.decomposition
    }

    /// The orbit, sorted.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// The point reached from the base by the flattened state.
    pub fn flatten_point(&self, s: &CascadedState) -> Result<usize> {
        Ok(self.decomposition.flatten_state(s)?.apply(self.base))
    }

    /// An element of the top group mapping the base to `x`.
    pub fn witness(&self, x: usize) -> Result<&Permutation> {
        if x >= self.decomposition.top().degree() {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.decomposition.top().degree(),
            });
        }
        self.witnesses
            .transversal_element(0, x)
            .ok_or_else(|| Error::NotMember {
                element: format!("point {}", x + 1),
                context: format!("the orbit of point {}", self.base + 1),
            })
    }

    pub fn raise_point(&self, x: usize) -> Result<CascadedState> {
        let w = self.witness(x)?.clone();
        self.decomposition.raise_state(&w)
    }

    pub fn act(&self, s: &CascadedState, h: &Permutation) -> Result<CascadedState> {
        self.decomposition.act(s, h)
    }
}
