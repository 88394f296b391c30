use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, …, degree-1}` stored as its image array.
///
/// Products compose right to left: `(g * h)(i) = g(h(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (k, &p) in cyc.iter().enumerate() {
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} exceeds degree {degree}",
                        p + 1
                    )));
                }
                if touched[p] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} repeated in cycles",
                        p + 1
                    )));
                }
                touched[p] = true;
                images[p] = cyc[(k + 1) % cyc.len()] as u32;
            }
        }
        Self::from_images(images)
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in cycle notation: {text}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in: {text}")))?;
            let body = &open[..close];
            let pts: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .ok()
                        .filter(|&p| p >= 1)
                        .map(|p| p - 1)
                        .ok_or_else(|| Error::Parse(format!("bad point '{t}' in: {text}")))
                })
                .collect::<Result<_>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            images: rhs
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Disjoint cycles of length at least two, 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.images[s] as usize == s {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut c = self.images[s] as usize;
            while c != s {
                seen[c] = true;
                cyc.push(c);
                c = self.images[c] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

/// 1-based cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_to_left() {
        let a = Permutation::parse_cycles(3, "(1 2 3)").unwrap();
        let b = Permutation::parse_cycles(3, "(1 2)").unwrap();
        assert_eq!(a.compose(&b).to_string(), "(1 3)");
        assert_eq!(b.compose(&a).to_string(), "(2 3)");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2 1)").is_err());
        assert!(Permutation::parse_cycles(3, "1 2").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::parse_cycles(4, "()").unwrap().is_identity());
    }

    #[test]
    fn inverse_roundtrip() {
        let p = Permutation::parse_cycles(5, "(1 3 5)(2 4)").unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(Permutation::parse_cycles(5, &p.to_string()).unwrap(), p);
    }
}
