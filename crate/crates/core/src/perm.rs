//! Permutations of `{0, …, n-1}` and cycle notation.
//!
//! Composition reads left to right: `p.then(&q)` applies `p` first and `q`
//! second, so `p.then(&q).apply(x) == q.apply(p.apply(x))`. This is the right
//! action convention used for cosets `Hg` throughout the crate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `{0, …, degree-1}` stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its one-line image sequence.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; images.len()];
        for (i, &x) in images.iter().enumerate() {
            if x >= images.len() || seen[x] {
                return Err(Error::parse(
                    format!("image position {i}"),
                    format!("{x} breaks bijectivity on {} points", images.len()),
                ));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `point`. Panics if the point is out of range.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`. Both must have the same degree.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `other⁻¹ · self · other`, the conjugate of `self` by `other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }

    /// Smallest point not fixed, if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x)
            .map(|(i, _)| i)
    }

    /// Disjoint cycles, each starting at its smallest point, sorted by that
    /// point. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Compares by preimage sequence, i.e. by the one-line images of the
    /// inverse. This is the order used to lay out coset representatives.
    pub fn cmp_by_preimages(&self, other: &Permutation) -> Ordering {
        debug_assert_eq!(self.degree(), other.degree());
        let (a, b) = (self.inverse(), other.inverse());
        a.images.cmp(&b.images)
    }
}

/// `p` then `q`; errors when the degrees differ.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            expected: p.degree(),
            found: q.degree(),
        });
    }
    Ok(p.then(q))
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

impl fmt::Display for Permutation {
    /// Canonical 1-based cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Comma,
    Number(usize),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token, String)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push((column, Token::Open, "(".into()));
                i += 1;
            }
            ')' => {
                out.push((column, Token::Close, ")".into()));
                i += 1;
            }
            ',' => {
                out.push((column, Token::Comma, ",".into()));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits.parse::<usize>().map_err(|_| {
                    Error::parse(
                        format!("column {column}"),
                        format!("number '{digits}' is too large"),
                    )
                })?;
                out.push((column, Token::Number(value), digits));
            }
            other => {
                return Err(Error::parse(
                    format!("column {column}"),
                    format!("unexpected character '{other}'"),
                ))
            }
        }
    }
    Ok(out)
}

/// Parses 1-based cycle notation such as `(1,2,3)(4,5)` into a permutation
/// of the given degree. `()` is the identity; points not mentioned are fixed.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::parse("column 1", "empty cycle expression"));
    }
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    let mut pos = 0;
    let unexpected = |pos: usize, expected: &str| -> Error {
        match tokens.get(pos) {
            Some((col, _, s)) => Error::parse(
                format!("column {col}"),
                format!("unexpected token '{s}', expected {expected}"),
            ),
            None => Error::parse("end of input", format!("expected {expected}")),
        }
    };
    while pos < tokens.len() {
        if tokens[pos].1 != Token::Open {
            return Err(unexpected(pos, "'('"));
        }
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            match tokens.get(pos).map(|t| t.1) {
                Some(Token::Close) if cycle.is_empty() => {
                    pos += 1;
                    break;
                }
                Some(Token::Number(n)) => {
                    let (col, _, ref s) = tokens[pos];
                    if n == 0 || n > degree {
                        return Err(Error::parse(
                            format!("column {col}"),
                            format!("point '{s}' is outside 1..={degree}"),
                        ));
                    }
                    if used[n - 1] {
                        return Err(Error::parse(
                            format!("column {col}"),
                            format!("point '{s}' is repeated"),
                        ));
                    }
                    used[n - 1] = true;
                    cycle.push(n - 1);
                    pos += 1;
                    match tokens.get(pos).map(|t| t.1) {
                        Some(Token::Comma) => pos += 1,
                        Some(Token::Close) => {
                            pos += 1;
                            break;
                        }
                        _ => return Err(unexpected(pos, "',' or ')'")),
                    }
                }
                _ => return Err(unexpected(pos, "a point")),
            }
        }
        for (i, &x) in cycle.iter().enumerate() {
            images[x] = cycle[(i + 1) % cycle.len()];
        }
    }
    Ok(Permutation { images })
}
