//! The fibral lattice `V_n` of an `I_n` fiber.
//!
//! `V_n` has basis `v_0, …, v_{n-1}` indexed by `Z/nZ` with the cyclic
//! Gram matrix: `-2` on the diagonal, `1` between cyclic neighbours and `0`
//! elsewhere. The fiber class `F = Σ v_i` spans the radical. Every vector of
//! square `-2` is an arc root `v(i, j)` plus a multiple of `F`.

use std::fmt;

use crate::error::{Error, Result};

/// The lattice `V_n` for a fixed `n >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibralSpace {
    n: usize,
}

impl FibralSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::SmallFiber(n));
        }
        Ok(Self { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Reduces an arbitrary integer index into `Z/nZ`.
    pub fn residue(self, i: i64) -> usize {
        i.rem_euclid(self.n as i64) as usize
    }

    /// Gram entry `⟨v_i, v_j⟩`.
    pub fn gram(self, i: usize, j: usize) -> i64 {
        let (i, j) = (i % self.n, j % self.n);
        if i == j {
            -2
        } else if (i + 1) % self.n == j || (j + 1) % self.n == i {
            1
        } else {
            0
        }
    }

    pub fn zero(self) -> FibralVector {
        FibralVector {
            space: self,
            coeffs: vec![0; self.n],
        }
    }

    /// Basis vector `v_i` (index taken mod n).
    pub fn basis(self, i: i64) -> FibralVector {
        let mut v = self.zero();
        v.coeffs[self.residue(i)] = 1;
        v
    }

    /// The fiber class `F = v_0 + … + v_{n-1}`.
    pub fn fiber(self) -> FibralVector {
        FibralVector {
            space: self,
            coeffs: vec![1; self.n],
        }
    }

    pub fn vector(self, coeffs: Vec<i64>) -> Result<FibralVector> {
        if coeffs.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: coeffs.len(),
            });
        }
        Ok(FibralVector {
            space: self,
            coeffs,
        })
    }

    /// Arc root `v(i, j)`: the sum of `v_k` walking from `i` to `j` in the
    /// positive direction.
    pub fn arc_root(self, i: i64, j: i64) -> Result<ArcRoot> {
        let start = self.residue(i);
        let end = self.residue(j);
        let length = (end + self.n - start) % self.n + 1;
        if length >= self.n {
            return Err(Error::InvalidArc {
                n: self.n,
                start,
                end,
            });
        }
        Ok(ArcRoot {
            space: self,
            start,
            length,
        })
    }

    /// Arc of the given length starting at `i`.
    pub fn arc_from(self, i: i64, length: usize) -> Result<ArcRoot> {
        if length == 0 {
            return Err(Error::InvalidParameters("arc length must be >= 1".into()));
        }
        self.arc_root(i, i + length as i64 - 1)
    }
}

/// An integer vector in `V_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FibralVector {
    space: FibralSpace,
    coeffs: Vec<i64>,
}

impl FibralVector {
    pub fn space(&self) -> FibralSpace {
        self.space
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    pub fn coeff(&self, i: i64) -> i64 {
        self.coeffs[self.space.residue(i)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_space(&self, other: &FibralVector) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.n,
                right: other.space.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FibralVector) -> Result<FibralVector> {
        self.check_space(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &FibralVector) -> Result<FibralVector> {
        self.check_space(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, k: i64) -> FibralVector {
        FibralVector {
            space: self.space,
            coeffs: self.coeffs.iter().map(|&c| k * c).collect(),
        }
    }

    pub fn neg(&self) -> FibralVector {
        self.scale(-1)
    }

    fn zip_with(&self, other: &FibralVector, f: impl Fn(i64, i64) -> i64) -> FibralVector {
        FibralVector {
            space: self.space,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// `⟨v_i, self⟩ = a_{i-1} + a_{i+1} - 2 a_i`.
    pub fn pair_basis(&self, i: usize) -> i64 {
        let n = self.space.n;
        let i = i % n;
        self.coeffs[(i + n - 1) % n] + self.coeffs[(i + 1) % n] - 2 * self.coeffs[i]
    }

    /// In-place simple reflection `s_{v_i}`. Only coordinate `i` changes.
    pub fn reflect_simple_in_place(&mut self, i: usize) {
        let i = i % self.space.n;
        let pairing = self.pair_basis(i);
        self.coeffs[i] += pairing;
    }

    /// `-Σ (a_i - a_{i+1})²`, the square of the vector.
    pub fn square(&self) -> i64 {
        let n = self.space.n;
        -(0..n)
            .map(|i| {
                let d = self.coeffs[i] - self.coeffs[(i + 1) % n];
                d * d
            })
            .sum::<i64>()
    }

    /// Nonnegative coefficients everywhere (and not zero).
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|&c| c <= 0)
    }
}

/// Bilinear intersection form on `V_n`.
pub fn inner_product(u: &FibralVector, v: &FibralVector) -> Result<i64> {
    u.check_space(v)?;
    Ok((0..u.space.n).map(|i| u.coeffs[i] * v.pair_basis(i)).sum())
}

/// Picard-Lefschetz reflection `s_root(v) = v + ⟨v, root⟩ root`.
pub fn reflect(root: &FibralVector, v: &FibralVector) -> Result<FibralVector> {
    let sq = inner_product(root, root)?;
    if sq != -2 {
        return Err(Error::NotARoot(sq));
    }
    let k = inner_product(v, root)?;
    v.add(&root.scale(k))
}

/// Writes `v = arc + r·F` when `v² = -2`.
///
/// Returns `None` for any other square.
pub fn classify_minus_two(v: &FibralVector) -> Option<(ArcRoot, i64)> {
    if v.square() != -2 {
        return None;
    }
    let space = v.space;
    let n = space.n;
    let r = *v.coeffs.iter().min()?;
    // square -2 forces exactly two values r and r+1, with the r+1 block an arc
    let top: Vec<usize> = (0..n).filter(|&i| v.coeffs[i] == r + 1).collect();
    if top.is_empty() || top.len() == n || v.coeffs.iter().any(|&c| c != r && c != r + 1) {
        return None;
    }
    let start = *top.iter().find(|&&i| v.coeffs[(i + n - 1) % n] == r)?;
    let arc = space.arc_from(start as i64, top.len()).ok()?;
    if arc.to_vector().add(&space.fiber().scale(r)).ok()? != *v {
        return None;
    }
    Some((arc, r))
}

/// The vector `v(i, j)`, stored by its support.
///
/// Two arcs are equal exactly when their supports agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcRoot {
    space: FibralSpace,
    start: usize,
    length: usize,
}

impl ArcRoot {
    pub fn space(&self) -> FibralSpace {
        self.space
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        (self.start + self.length - 1) % self.space.n
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Residues in the support, in walking order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.length)
            .map(|k| (self.start + k) % self.space.n)
            .collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        let n = self.space.n;
        (i % n + n - self.start) % n < self.length
    }

    pub fn to_vector(&self) -> FibralVector {
        let mut v = self.space.zero();
        for i in self.support() {
            v.coeffs[i] = 1;
        }
        v
    }

    /// Generator letters whose product is `s_{v(i,j)}`, expanded by
    /// repeated conjugation `s_{v(i,j)} = s_{v_j} s_{v(i,j-1)} s_{v_j}`.
    pub fn reflection_word(&self) -> Vec<usize> {
        let n = self.space.n;
        let mut word = vec![self.start];
        for k in 1..self.length {
            let j = (self.start + k) % n;
            let mut next = Vec::with_capacity(word.len() + 2);
            next.push(j);
            next.extend_from_slice(&word);
            next.push(j);
            word = next;
        }
        word
    }
}

impl fmt::Display for ArcRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v({},{})", self.start, self.end())
    }
}

/// Renders a coefficient vector as `a_0·v0 + a_1·v1 + …`, skipping zeros.
pub fn render_vector(coeffs: &[i64], symbol: &str) -> String {
    let terms: Vec<(usize, i64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (i, c)) in terms.into_iter().enumerate() {
        if k == 0 {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&format!("{}·{}{}", c.abs(), symbol, i));
    }
    out
}

impl fmt::Display for FibralVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_vector(&self.coeffs, "v"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> FibralSpace {
        FibralSpace::new(n).unwrap()
    }

    #[test]
    fn rejects_small_fibers() {
        assert_eq!(FibralSpace::new(2), Err(Error::SmallFiber(2)));
        assert_eq!(FibralSpace::new(1), Err(Error::SmallFiber(1)));
    }

    #[test]
    fn gram_examples() {
        let s5 = space(5);
        assert_eq!(inner_product(&s5.basis(0), &s5.basis(1)).unwrap(), 1);
        assert_eq!(inner_product(&s5.basis(2), &s5.basis(2)).unwrap(), -2);
        let s4 = space(4);
        assert_eq!(inner_product(&s4.fiber(), &s4.basis(2)).unwrap(), 0);
    }

    #[test]
    fn gram_matches_definition() {
        for n in 3..9 {
            let s = space(n);
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j {
                        -2
                    } else if (i + 1) % n == j || (j + 1) % n == i {
                        1
                    } else {
                        0
                    };
                    let got = inner_product(&s.basis(i as i64), &s.basis(j as i64)).unwrap();
                    assert_eq!(got, expected, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn mismatched_spaces() {
        let err = inner_product(&space(3).basis(0), &space(4).basis(0)).unwrap_err();
        assert_eq!(err, Error::SpaceMismatch { left: 3, right: 4 });
    }

    #[test]
    fn arc_examples() {
        let a = space(6).arc_root(1, 3).unwrap();
        assert_eq!(a.to_vector().coeffs(), &[0, 1, 1, 1, 0, 0]);
        assert_eq!(a.length(), 3);

        let b = space(5).arc_root(4, 1).unwrap();
        assert_eq!(b.to_vector().coeffs(), &[1, 1, 0, 0, 1]);
        assert_eq!(b.to_vector().square(), -2);
        assert_eq!(b.support(), vec![4, 0, 1]);

        let c = space(7).arc_root(3, 3).unwrap();
        assert_eq!(c.length(), 1);
        assert_eq!(c.to_vector(), space(7).basis(3));
    }

    #[test]
    fn full_cycle_is_not_an_arc() {
        assert!(matches!(
            space(4).arc_root(1, 0),
            Err(Error::InvalidArc { n: 4, start: 1, end: 0 })
        ));
    }

    #[test]
    fn arcs_compare_by_support() {
        let s = space(5);
        assert_eq!(s.arc_root(4, 1).unwrap(), s.arc_root(-1, 6).unwrap());
        assert_ne!(s.arc_root(4, 1).unwrap(), s.arc_root(4, 2).unwrap());
    }

    #[test]
    fn reflection_examples() {
        let s3 = space(3);
        let v = s3.basis(1);
        assert_eq!(reflect(&v, &v).unwrap(), v.neg());
        assert_eq!(
            reflect(&s3.basis(0), &s3.basis(1)).unwrap().coeffs(),
            &[1, 1, 0]
        );
        let s5 = space(5);
        assert_eq!(reflect(&s5.basis(0), &s5.basis(2)).unwrap(), s5.basis(2));
    }

    #[test]
    fn reflection_needs_a_root() {
        let s = space(4);
        let not_root = s.basis(0).add(&s.basis(2)).unwrap();
        assert_eq!(reflect(&not_root, &s.basis(1)), Err(Error::NotARoot(-4)));
    }

    #[test]
    fn classify_examples() {
        let s4 = space(4);
        let (arc, r) = classify_minus_two(&s4.vector(vec![0, 1, 1, 0]).unwrap()).unwrap();
        assert_eq!((arc, r), (s4.arc_root(1, 2).unwrap(), 0));

        let (arc, r) = classify_minus_two(&s4.vector(vec![3, 3, 2, 3]).unwrap()).unwrap();
        assert_eq!((arc, r), (s4.arc_root(3, 1).unwrap(), 2));

        assert!(classify_minus_two(&s4.vector(vec![0, 1, 0, -1]).unwrap()).is_none());
    }

    #[test]
    fn negated_arc_is_complement_minus_fiber() {
        let s = space(6);
        let arc = s.arc_root(1, 3).unwrap();
        let (c, r) = classify_minus_two(&arc.to_vector().neg()).unwrap();
        assert_eq!(c, s.arc_root(4, 0).unwrap());
        assert_eq!(r, -1);
    }

    #[test]
    fn conjugation_word_matches_reflection() {
        let s = space(6);
        for start in 0..6 {
            for len in 1..6 {
                let arc = s.arc_from(start, len).unwrap();
                let root = arc.to_vector();
                for b in 0..6 {
                    let mut x = s.basis(b);
                    for &l in arc.reflection_word().iter().rev() {
                        x.reflect_simple_in_place(l);
                    }
                    assert_eq!(x, reflect(&root, &s.basis(b)).unwrap());
                }
            }
        }
    }

    #[test]
    fn render() {
        let s = space(6);
        assert_eq!(
            s.vector(vec![2, 1, 0, 0, 0, 1]).unwrap().to_string(),
            "2·v0 + 1·v1 + 1·v5"
        );
        assert_eq!(s.basis(2).neg().to_string(), "-1·v2");
        assert_eq!(s.zero().to_string(), "0");
    }
}
