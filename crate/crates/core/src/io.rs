//! Text formats for groups and chains.
//!
//! A group file has a `degree: N` header followed by one generator per line
//! in 1-based cycle notation. `#` starts a comment. A chain file is a
//! sequence of group blocks separated by `---` lines, top group first, with
//! an optional `kind: total` or `kind: stabilizer-terminated` line. A block
//! may end with a `reps:` line followed by representatives for the cosets
//! of the next group, replacing the computed transversal at that level.

use std::fmt::Write as _;

use crate::cascade::LagrangeDecomposition;
use crate::chain::{ChainKind, SubgroupChain};
use crate::coset::Transversal;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{parse_cycles, Permutation};

#[derive(Debug, Clone)]
pub struct ChainFile {
    pub groups: Vec<PermGroup>,
    pub kind: Option<ChainKind>,
    /// Representatives given with `reps:` for each block, if any.
    pub reps: Vec<Option<Vec<Permutation>>>,
}

impl ChainFile {
    /// Validates the groups as a chain, honouring a declared kind.
    pub fn to_chain(&self) -> Result<SubgroupChain> {
        let chain = SubgroupChain::new(self.groups.clone(), self.kind == Some(ChainKind::Total))?;
        if let Some(declared) = self.kind {
            if declared != chain.kind() {
                return Err(Error::InvalidChain {
                    level: chain.length().saturating_sub(1),
                    reason: format!("declared kind {declared} but the chain is {}", chain.kind()),
                });
            }
        }
        Ok(chain)
    }

    pub fn has_reps(&self) -> bool {
        self.reps.iter().any(Option::is_some)
    }

    /// Installs the listed representatives. With `validate` each list must
    /// be a transversal; without it the lists are taken as given.
    pub fn apply_reps(&self, d: &mut LagrangeDecomposition, validate: bool) -> Result<()> {
        for (level, reps) in self.reps.iter().enumerate() {
            let Some(reps) = reps else { continue };
            if level >= d.length() {
                return Err(Error::InvalidTransversal {
                    reason: format!("group {} has no subgroup below it", level + 1),
                });
            }
            let groups = d.chain().groups();
            let (sup, sub) = (&groups[level], &groups[level + 1]);
            if validate {
                let t = Transversal::from_reps(sup, sub, reps.clone())?;
                d.replace_transversal(level, t)?;
            } else {
                let t = Transversal::from_reps_unchecked(sup, sub, reps.clone());
                d.replace_transversal_unchecked(level, t);
            }
        }
        Ok(())
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

fn relocate(err: Error, line_no: usize) -> Error {
    match err {
        Error::Parse { location, message } => Error::Parse {
            location: format!("line {line_no}, {location}"),
            message,
        },
        other => other,
    }
}

type Block = (PermGroup, Option<Vec<Permutation>>);

/// Parses one group block from `(line number, content)` pairs.
fn parse_block(lines: &[(usize, &str)]) -> Result<Block> {
    let mut iter = lines.iter();
    let (first_no, header) = iter
        .next()
        .ok_or_else(|| Error::parse("end of input", "missing 'degree:' header"))?;
    let degree = header
        .strip_prefix("degree:")
        .ok_or_else(|| {
            Error::parse(
                format!("line {first_no}"),
                format!("expected 'degree: N', found '{header}'"),
            )
        })?
        .trim();
    let degree: usize = degree.parse().map_err(|_| {
        Error::parse(
            format!("line {first_no}"),
            format!("invalid degree '{degree}'"),
        )
    })?;
    if degree == 0 {
        return Err(Error::parse(
            format!("line {first_no}"),
            "degree must be at least 1",
        ));
    }
    let rest: Vec<_> = iter.collect();
    let split = rest.iter().position(|(_, text)| *text == "reps:");
    let (gen_lines, rep_lines) = match split {
        Some(i) => (&rest[..i], Some(&rest[i + 1..])),
        None => (&rest[..], None),
    };
    let parse_all = |lines: &[&(usize, &str)]| {
        lines
            .iter()
            .map(|(no, text)| parse_cycles(text, degree).map_err(|e| relocate(e, *no)))
            .collect::<Result<Vec<Permutation>>>()
    };
    let group = PermGroup::from_generators(parse_all(gen_lines)?, degree)?;
    let reps = rep_lines.map(parse_all).transpose()?;
    Ok((group, reps))
}

pub fn parse_group(text: &str) -> Result<PermGroup> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    match parse_block(&lines)? {
        (group, None) => Ok(group),
        (_, Some(_)) => Err(Error::parse(
            "reps:",
            "representatives are only allowed in chain files",
        )),
    }
}

pub fn parse_chain(text: &str) -> Result<ChainFile> {
    let mut kind = None;
    let mut blocks: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if line == "---" {
            blocks.push(Vec::new());
        } else if let Some(k) = line.strip_prefix("kind:") {
            if kind.is_some() {
                return Err(Error::parse(
                    format!("line {line_no}"),
                    "duplicate 'kind:' line",
                ));
            }
            kind = Some(k.parse::<ChainKind>().map_err(|e| relocate(e, line_no))?);
        } else {
            blocks.last_mut().expect("nonempty").push((line_no, line));
        }
    }
    let (groups, reps) = blocks
        .iter()
        .enumerate()
        .map(|(i, block)| {
            parse_block(block).map_err(|e| match e {
                Error::Parse { location, message } => Error::Parse {
                    location: format!("group {} ({location})", i + 1),
                    message,
                },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok(ChainFile { groups, kind, reps })
}

pub fn write_group(group: &PermGroup) -> String {
    let mut out = format!("degree: {}\n", group.degree());
    for g in group.generators() {
        let _ = writeln!(out, "{g}");
    }
    out
}

pub fn write_chain(chain: &SubgroupChain) -> String {
    let mut out = format!("kind: {}\n", chain.kind());
    for (i, g) in chain.groups().iter().enumerate() {
        if i > 0 {
            out.push_str("---\n");
        }
        let _ = writeln!(out, "# group {} (order {})", i + 1, g.order());
        out.push_str(&write_group(g));
    }
    out
}
