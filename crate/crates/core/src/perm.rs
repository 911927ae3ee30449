//! Permutations on `{1..degree}` and cycle notation.
//!
//! Internally points are stored 0-based; everything user-facing (cycle
//! notation, image lists) is 1-based.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., degree}`.
///
/// Ordering is lexicographic on the image sequence, which makes the identity
/// the least permutation of any given degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images. Fails unless the sequence is
    /// a bijection on `{1..len}`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n || seen[im - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[im - 1] = true;
            out.push((im - 1) as u32);
        }
        Ok(Perm {
            images: out.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 0-based images without validation. Callers
    /// guarantee bijectivity.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i as u32 == x)
        });
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// Parses cycle notation such as `(1 2)(3 4 5)` or `()`. Commas are
    /// accepted as separators inside a cycle.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("cycle notation `{text}`: {why}"));
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected `(`"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            let pts = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("non-numeric point")))
                .collect::<Result<Vec<_>>>()?;
            for &pt in &pts {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} outside 1..={degree} in `{text}`"
                    )));
                }
                if touched[pt - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} repeated in `{text}`"
                    )));
                }
                touched[pt - 1] = true;
            }
            for (i, &pt) in pts.iter().enumerate() {
                let next = pts[(i + 1) % pts.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    /// Function composition: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    /// Same permutation acting on `offset + 1 ..= offset + degree` inside a
    /// larger point set.
    pub(crate) fn shifted(&self, offset: usize, total: usize) -> Perm {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &im) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + im;
        }
        Perm::from_raw(images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles("(1 2)(3 4 5)", 5).unwrap();
        assert_eq!(p.images(), vec![2, 1, 4, 5, 3]);
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::parse_cycles("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::parse_cycles("(1,3)", 3).unwrap().images(), vec![3, 2, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Perm::parse_cycles("(1 4)", 3),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            Perm::parse_cycles("(1 2)(2 3)", 3),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(Perm::parse_cycles("(1 2", 3).is_err());
        assert!(matches!(
            Perm::from_images(&[1, 1, 2]),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn composition_is_function_composition() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        // a(b(1)) = a(1) = 2, a(b(2)) = a(3) = 3, a(b(3)) = a(2) = 1
        assert_eq!(a.compose(&b).images(), vec![2, 3, 1]);
        assert!(a.compose(&a.inverse()).is_identity());
    }
}
