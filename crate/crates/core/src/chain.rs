//! Subgroup chains `G = G₁ > G₂ > … > Gₙ` and their attributes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::schreier::StabChain;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    /// The last group is trivial.
    Total,
    /// The last group is nontrivial (typically a point stabilizer).
    StabilizerTerminated,
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainKind::Total => "total",
            ChainKind::StabilizerTerminated => "stabilizer-terminated",
        })
    }
}

impl std::str::FromStr for ChainKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "total" => Ok(ChainKind::Total),
            "stabilizer-terminated" => Ok(ChainKind::StabilizerTerminated),
            other => Err(Error::parse(
                "kind",
                format!("unknown chain kind '{other}'"),
            )),
        }
    }
}

/// Where and why a chain failed validation. `level` indexes the pair
/// `(G_level, G_level+1)`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainFault {
    pub level: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub valid: bool,
    /// Number of consecutive pairs, `|groups| - 1`.
    pub length: usize,
    /// Index `|G_i| / |G_i+1|` per level (only up to the fault when invalid).
    pub widths: Vec<u128>,
    /// Whether `G_i+1` is normal in `G_i`, per level.
    pub subnormal_flags: Vec<bool>,
    pub kind: ChainKind,
    pub fault: Option<ChainFault>,
}

impl ChainReport {
    pub fn index_product(&self) -> u128 {
        self.widths.iter().product()
    }
}

/// Checks containment, strict descent and (optionally) totality. Structural
/// problems with the input itself (empty list, mixed degrees) are errors;
/// failures of the chain conditions give an invalid report.
pub fn validate_chain(groups: &[PermGroup], require_total: bool) -> Result<ChainReport> {
    let first = groups.first().ok_or_else(|| Error::InvalidChain {
        level: 0,
        reason: "empty chain".into(),
    })?;
    for g in groups {
        if g.degree() != first.degree() {
            return Err(Error::DegreeMismatch {
                expected: first.degree(),
                found: g.degree(),
            });
        }
    }
    let last = groups.last().expect("nonempty");
    let kind = if last.order() == 1 {
        ChainKind::Total
    } else {
        ChainKind::StabilizerTerminated
    };
    let mut report = ChainReport {
        valid: true,
        length: groups.len() - 1,
        widths: Vec::new(),
        subnormal_flags: Vec::new(),
        kind,
        fault: None,
    };
    for (level, pair) in groups.windows(2).enumerate() {
        let (upper, lower) = (&pair[0], &pair[1]);
        if let Some(g) = lower
            .generators()
            .iter()
            .find(|g| !upper.chain().contains(g))
        {
            report.valid = false;
            report.fault = Some(ChainFault {
                level,
                reason: format!(
                    "generator {g} of group {} is not in group {}",
                    level + 2,
                    level + 1
                ),
            });
            return Ok(report);
        }
        let (hi, lo) = (upper.order(), lower.order());
        if hi == lo {
            report.valid = false;
            report.fault = Some(ChainFault {
                level,
                reason: format!(
                    "group {} equals group {} (order {hi}); descent must be strict",
                    level + 2,
                    level + 1
                ),
            });
            return Ok(report);
        }
        report.widths.push(hi / lo);
        report.subnormal_flags.push(upper.normalizes(lower));
    }
    if require_total && kind != ChainKind::Total {
        report.valid = false;
        report.fault = Some(ChainFault {
            level: report.length.saturating_sub(1),
            reason: format!("chain is not total: last group has order {}", last.order()),
        });
    }
    Ok(report)
}

/// A validated descending chain of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupChain {
    groups: Vec<PermGroup>,
    report: ChainReport,
}

impl SubgroupChain {
    pub fn new(groups: Vec<PermGroup>, require_total: bool) -> Result<Self> {
        let report = validate_chain(&groups, require_total)?;
        if let Some(fault) = &report.fault {
            return Err(Error::InvalidChain {
                level: fault.level,
                reason: fault.reason.clone(),
            });
        }
        Ok(SubgroupChain { groups, report })
    }

    pub fn groups(&self) -> &[PermGroup] {
        &self.groups
    }

    pub fn report(&self) -> &ChainReport {
        &self.report
    }

    pub fn kind(&self) -> ChainKind {
        self.report.kind
    }

    pub fn length(&self) -> usize {
        self.report.length
    }

    pub fn widths(&self) -> &[u128] {
        &self.report.widths
    }

    pub fn degree(&self) -> usize {
        self.groups[0].degree()
    }

    pub fn top(&self) -> &PermGroup {
        &self.groups[0]
    }

    pub fn bottom(&self) -> &PermGroup {
        self.groups.last().expect("chains are nonempty")
    }
}

/// `G ≥ Stab(p₁) ≥ Stab(p₁,p₂) ≥ …`, dropping steps that do not shrink the
/// group.
pub fn stabilizer_descent(group: &PermGroup, points: &[usize]) -> Result<SubgroupChain> {
    let mut seen = vec![false; group.degree()];
    for &p in points {
        if p >= group.degree() {
            return Err(Error::PointOutOfRange {
                point: p,
                degree: group.degree(),
            });
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidChain {
                level: 0,
                reason: format!("point {} is repeated in the descent", p + 1),
            });
        }
    }
    let chain = StabChain::new(group.degree(), group.generators(), points);
    let mut groups = vec![group.clone()];
    let mut previous = group.order();
    for k in 1..=points.len() {
        let gens = chain.stabilizer_generators(k);
        let stab = PermGroup::from_generators(gens, group.degree())?;
        let order = stab.order();
        if order < previous {
            groups.push(stab);
            previous = order;
        }
    }
    SubgroupChain::new(groups, false)
}

pub fn index_product(chain: &SubgroupChain) -> u128 {
    chain.report().index_product()
}
