use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::LagrangeDecomposition;

/// The labelled tree of one cascaded permutation: for every level and every
/// prefix of coordinates above it, the component image acting on that
/// level's coset indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyTable {
    widths: Vec<usize>,
    /// `entries[level]` holds one image per prefix of length `level`, in
    /// lexicographic prefix order.
    entries: Vec<Vec<Permutation>>,
}

impl DependencyTable {
    /// Enumerates every prefix depth-first. Errors when the number of
    /// prefixes feeding the last level exceeds `max_table`.
    pub fn materialize(d: &LagrangeDecomposition, h: &Permutation) -> Result<Self> {
        d.top().require_member(h, "the top group")?;
        let widths = d.widths();
        let prefixes: u128 = widths
            .iter()
            .take(widths.len().saturating_sub(1))
            .map(|&w| w as u128)
            .product();
        if prefixes > d.limits().max_table {
            return Err(Error::BoundExceeded {
                what: "dependency table prefix count",
                size: prefixes,
                bound: d.limits().max_table,
            });
        }
        let mut entries = vec![Vec::new(); widths.len()];
        if !widths.is_empty() {
            fill(d, 0, h, &mut entries)?;
        }
        Ok(DependencyTable { widths, entries })
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn length(&self) -> usize {
        self.widths.len()
    }

    fn offset(&self, level: usize, prefix: &[usize]) -> Result<usize> {
        if level >= self.length() {
            return Err(Error::LevelOutOfRange {
                level,
                length: self.length(),
            });
        }
        if prefix.len() != level {
            return Err(Error::StateLength {
                expected: level,
                found: prefix.len(),
            });
        }
        let mut offset = 0;
        for (i, (&x, &w)) in prefix.iter().zip(&self.widths).enumerate() {
            if x >= w {
                return Err(Error::CoordinateOutOfRange {
                    level: i,
                    value: x,
                    width: w,
                });
            }
            offset = offset * w + x;
        }
        Ok(offset)
    }

    /// Component image at `level` for the coordinates `prefix` above it.
    pub fn entry(&self, level: usize, prefix: &[usize]) -> Result<&Permutation> {
        let offset = self.offset(level, prefix)?;
        Ok(&self.entries[level][offset])
    }

    pub fn set_entry(&mut self, level: usize, prefix: &[usize], image: Permutation) -> Result<()> {
        let offset = self.offset(level, prefix)?;
        if image.degree() != self.widths[level] {
            return Err(Error::DegreeMismatch {
                expected: self.widths[level],
                found: image.degree(),
            });
        }
        self.entries[level][offset] = image;
        Ok(())
    }

    /// Entries of one level as `(prefix, image)` in lexicographic order.
    pub fn level_entries(
        &self,
        level: usize,
    ) -> impl Iterator<Item = (Vec<usize>, &Permutation)> + '_ {
        let widths = &self.widths[..level];
        self.entries[level]
            .iter()
            .enumerate()
            .map(move |(mut k, img)| {
                let mut prefix = vec![0; widths.len()];
                for i in (0..widths.len()).rev() {
                    prefix[i] = k % widths[i];
                    k /= widths[i];
                }
                (prefix, img)
            })
    }

    /// Applies the table to a full state.
    pub fn evaluate(&self, state: &[usize]) -> Result<Vec<usize>> {
        if state.len() != self.length() {
            return Err(Error::StateLength {
                expected: self.length(),
                found: state.len(),
            });
        }
        (0..self.length())
            .map(|level| Ok(self.entry(level, &state[..level])?.apply(state[level])))
            .collect()
    }

    /// One line per entry: 1-based level, space-separated prefix (`-` when
    /// empty) and the image in cycle notation, tab-separated.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for level in 0..self.length() {
            for (prefix, img) in self.level_entries(level) {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}",
                    level + 1,
                    prefix_label(&prefix, " "),
                    img
                );
            }
        }
        out
    }

    /// The table as a Graphviz digraph: one node per prefix labelled with its
    /// image, edges labelled with the coordinate taken.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dependencies {\n  node [shape=box];\n");
        for level in 0..self.length() {
            for (prefix, img) in self.level_entries(level) {
                let id = node_id(&prefix);
                let _ = writeln!(out, "  {id} [label=\"level {}\\n{img}\"];", level + 1);
                if let Some((&last, parent)) = prefix.split_last() {
                    let _ = writeln!(out, "  {} -> {id} [label=\"{last}\"];", node_id(parent));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn prefix_label(prefix: &[usize], sep: &str) -> String {
    if prefix.is_empty() {
        return "-".into();
    }
    prefix
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn node_id(prefix: &[usize]) -> String {
    if prefix.is_empty() {
        "root".into()
    } else {
        format!("n_{}", prefix_label(prefix, "_"))
    }
}

fn fill(
    d: &LagrangeDecomposition,
    level: usize,
    h: &Permutation,
    entries: &mut [Vec<Permutation>],
) -> Result<()> {
    let width = d.transversals()[level].len();
    let mut image = Vec::with_capacity(width);
    let mut children = Vec::new();
    let last = level + 1 == entries.len();
    for x in 0..width {
        let (idx, next) = d.step(level, x, h)?;
        image.push(idx);
        if !last {
            children.push(next);
        }
    }
    entries[level].push(Permutation::from_images(image)?);
    for child in &children {
        fill(d, level + 1, child, entries)?;
    }
    Ok(())
}
