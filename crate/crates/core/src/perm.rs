//! Permutations of `{0..n-1}` with cycle notation parsing and display.
//!
//! Products use the right-action convention throughout the crate:
//! `(a * b).apply(x) = b.apply(a.apply(x))`, i.e. `a` acts first. This makes
//! the map "coset -> coset * g" a homomorphism without any flipping.

use crate::{Error, Result};
use std::fmt;
use std::ops::Mul;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Build from an image vector; fails unless it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("images {images:?} are not a bijection of 0..{n}"),
                });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// `self` then `other`: the group product under the right-action convention.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    /// Cycle lengths including fixed points, sorted nonincreasing: a partition of n.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p];
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Multiplicative order: lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycle_type()
            .into_iter()
            .fold(1, num_integer::lcm)
    }

    /// Parse cycle notation like `(0 1)(2 3 4)`; `()` is the identity.
    ///
    /// `line` is only used to report parse errors with a location.
    pub fn parse_cycles(s: &str, degree: usize, line: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(line, "empty permutation; write () for the identity"));
        }
        let mut rest = s;
        let mut moved = vec![false; degree];
        while !rest.is_empty() {
            let Some(open) = rest.strip_prefix('(') else {
                return Err(Error::parse(line, format!("expected '(' at `{rest}`")));
            };
            let Some(close) = open.find(')') else {
                return Err(Error::parse(line, format!("unclosed cycle in `{s}`")));
            };
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(line, format!("bad point `{t}`")))
                })
                .collect::<Result<_>>()?;
            if points.is_empty() {
                continue; // () — identity cycle
            }
            for &p in &points {
                if p >= degree {
                    return Err(Error::parse(
                        line,
                        format!("point {p} out of range for degree {degree}"),
                    ));
                }
                if moved[p] {
                    return Err(Error::parse(line, format!("point {p} appears twice")));
                }
                moved[p] = true;
            }
            for (k, &p) in points.iter().enumerate() {
                images[p] = points[(k + 1) % points.len()];
            }
        }
        Permutation::from_images(images)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points omitted; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.images[p];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}
