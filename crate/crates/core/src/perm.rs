//! Permutations of the cyclic set `Z/nZ`.
//!
//! Composition is right to left: `a.compose(&b)` applies `b` first.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Transposition of two residues mod `n`.
    pub fn transposition(n: usize, a: i64, b: i64) -> Self {
        let mut p = Self::identity(n);
        let (a, b) = (a.rem_euclid(n as i64) as usize, b.rem_euclid(n as i64) as usize);
        p.images.swap(a, b);
        p
    }

    /// Builds a permutation from a product of cycles, rightmost cycle
    /// applied first. Entries are reduced mod `n`.
    pub fn from_cycles(n: usize, cycles: &[Vec<i64>]) -> Self {
        cycles.iter().fold(Self::identity(n), |acc, cycle| {
            let mut c = Self::identity(n);
            let len = cycle.len();
            for k in 0..len {
                let from = cycle[k].rem_euclid(n as i64) as usize;
                let to = cycle[(k + 1) % len].rem_euclid(n as i64) as usize;
                c.images[from] = to;
            }
            acc.compose(&c)
        })
    }

    /// Returns `None` unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Nontrivial cycles, each starting at its least element, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.images[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }
}

/// Cycle notation `(a,b)(c,d)…`; identity renders as `()`.
pub fn render_cycles<I, C>(cycles: I) -> String
where
    I: IntoIterator<Item = C>,
    C: AsRef<[usize]>,
{
    let mut out = String::new();
    for c in cycles {
        let parts: Vec<String> = c.as_ref().iter().map(ToString::to_string).collect();
        out.push('(');
        out.push_str(&parts.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_cycles(self.cycles()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugating_transpositions() {
        // (q,q+1)(p,q)(q,q+1) = (p,q+1)
        let n = 8;
        let t = |a, b| Permutation::transposition(n, a, b);
        assert_eq!(t(3, 4).compose(&t(1, 3)).compose(&t(3, 4)), t(1, 4));
    }

    #[test]
    fn cycles_render() {
        let p = Permutation::from_cycles(6, &[vec![5, 1], vec![0, 2]]);
        assert_eq!(p.to_string(), "(0,2)(1,5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }

    #[test]
    fn right_to_left_composition() {
        // (0,1)(1,2): apply (1,2) first, so 1 -> 2 -> 2 and 2 -> 1 -> 0
        let p = Permutation::transposition(3, 0, 1).compose(&Permutation::transposition(3, 1, 2));
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_none());
        assert!(Permutation::from_images(vec![2, 0, 1]).is_some());
    }
}
