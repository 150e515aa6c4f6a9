//! The affine Weyl group `W_n` of type `Ã_{n-1}` as words in the simple
//! reflections `s_0, …, s_{n-1}`.
//!
//! A word `[a, b, c]` denotes `s_a s_b s_c`: the rightmost letter acts first.
//! Two realizations are provided. The matrix action on `V_n` is faithful
//! and is the only notion of equality. The permutation action
//! `s_i ↦ (i, i+1)` on `Z/nZ` is a homomorphism with infinite kernel.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{FibralSpace, FibralVector};
use crate::matrix::IntMatrix;
use crate::perm::Permutation;
use crate::report::{Counterexample, Record, Report};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylWord {
    space: FibralSpace,
    letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(space: FibralSpace, letters: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= space.n()) {
            return Err(Error::InvalidParameters(format!(
                "letter {bad} is not a generator of W_{}",
                space.n()
            )));
        }
        Ok(Self { space, letters })
    }

    pub fn identity(space: FibralSpace) -> Self {
        Self {
            space,
            letters: Vec::new(),
        }
    }

    /// The simple reflection `s_k`, `k` taken mod n.
    pub fn generator(space: FibralSpace, k: i64) -> Self {
        Self {
            space,
            letters: vec![space.residue(k)],
        }
    }

    /// Parses a comma-separated literal such as `0,1,2,1`. Blank is the
    /// identity.
    pub fn parse(space: FibralSpace, literal: &str) -> Result<Self> {
        let trimmed = literal.trim().trim_start_matches('[').trim_end_matches(']');
        if trimmed.trim().is_empty() {
            return Ok(Self::identity(space));
        }
        let letters = trimmed
            .split(',')
            .enumerate()
            .map(|(pos, tok)| {
                tok.trim().parse::<usize>().map_err(|e| {
                    Error::parse(format!("word letter {pos}"), format!("{:?}: {e}", tok.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, letters)
    }

    pub fn space(&self) -> FibralSpace {
        self.space
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self · other` (other acts first).
    pub fn concat(&self, other: &WeylWord) -> Result<WeylWord> {
        self.check_space(other.space)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            space: self.space,
            letters,
        })
    }

    pub fn pow(&self, k: usize) -> WeylWord {
        Self {
            space: self.space,
            letters: self.letters.repeat(k),
        }
    }

    /// Reversed word; each letter is an involution.
    pub fn inverse(&self) -> WeylWord {
        Self {
            space: self.space,
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    fn check_space(&self, other: FibralSpace) -> Result<()> {
        if self.space != other {
            return Err(Error::SpaceMismatch {
                left: self.space.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    pub fn act(&self, v: &FibralVector) -> Result<FibralVector> {
        self.check_space(v.space())?;
        let mut out = v.clone();
        self.act_in_place(&mut out);
        Ok(out)
    }

    pub(crate) fn act_in_place(&self, v: &mut FibralVector) {
        for &l in self.letters.iter().rev() {
            v.reflect_simple_in_place(l);
        }
    }

    /// Faithful realization on `V_n`.
    ///
    /// Built by left multiplication, rightmost letter first: `s_a` rewrites
    /// row `a` as `row_{a-1} + row_{a+1} - row_a`.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.space.n();
        let mut m = IntMatrix::identity(n);
        let d = m.data_mut();
        for &a in self.letters.iter().rev() {
            let (p, q) = ((a + n - 1) % n, (a + 1) % n);
            for j in 0..n {
                d[a * n + j] = d[p * n + j] + d[q * n + j] - d[a * n + j];
            }
        }
        m
    }

    /// Cyclic-permutation realization `s_i ↦ (i, i+1)`.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.space.n();
        self.letters
            .iter()
            .fold(Permutation::identity(n), |acc, &l| {
                acc.compose(&Permutation::transposition(n, l as i64, l as i64 + 1))
            })
    }

    /// Whether the word acts trivially on `V_n`.
    pub fn is_trivial(&self) -> bool {
        self.matrix().is_identity()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn act(w: &WeylWord, v: &FibralVector) -> Result<FibralVector> {
    w.act(v)
}

pub fn to_permutation(w: &WeylWord) -> Permutation {
    w.to_permutation()
}

/// Group equality, decided by comparing matrix realizations.
pub fn equal_elements(w1: &WeylWord, w2: &WeylWord) -> Result<bool> {
    w1.check_space(w2.space)?;
    Ok(w1.matrix() == w2.matrix())
}

/// Coxeter exponent `m_ij` for `Ã_{n-1}` with cyclic distance.
pub fn coxeter_exponent(n: usize, i: usize, j: usize) -> u32 {
    let d = (i + n - j) % n;
    let d = d.min(n - d);
    match d {
        0 => 1,
        1 => 3,
        _ => 2,
    }
}

/// Checks `(s_i s_j)^{m_ij} = 1` in the matrix realization for every
/// unordered pair `i <= j`.
pub fn check_presentation(n: usize) -> Result<Report> {
    let space = FibralSpace::new(n)?;
    let mut report = Report::new();
    for i in 0..n {
        for j in i..n {
            let m = coxeter_exponent(n, i, j);
            let word = WeylWord {
                space,
                letters: vec![i, j],
            }
            .pow(m as usize);
            let mat = word.matrix();
            let counterexample = (!mat.is_identity()).then(|| Counterexample {
                witness: format!("(s{i} s{j})^{m}"),
                expected: IntMatrix::identity(n).to_rows().concat(),
                actual: mat.to_rows().concat(),
            });
            report.push(Record::new(
                "presentation",
                &[("n", n as i64), ("i", i as i64), ("j", j as i64), ("m", m as i64)],
                counterexample,
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> FibralSpace {
        FibralSpace::new(n).unwrap()
    }

    fn word(n: usize, letters: &[usize]) -> WeylWord {
        WeylWord::new(space(n), letters.to_vec()).unwrap()
    }

    #[test]
    fn act_examples() {
        let s = space(3);
        let v = act(&word(3, &[0]), &s.basis(1)).unwrap();
        assert_eq!(v.coeffs(), &[1, 1, 0]);
        assert_eq!(act(&word(3, &[]), &s.basis(2)).unwrap(), s.basis(2));
        for b in 0..3 {
            assert_eq!(
                act(&word(3, &[0, 1, 0]), &s.basis(b)).unwrap(),
                act(&word(3, &[1, 0, 1]), &s.basis(b)).unwrap()
            );
        }
    }

    #[test]
    fn act_rejects_other_space() {
        let err = act(&word(3, &[0]), &space(4).basis(0)).unwrap_err();
        assert_eq!(err, Error::SpaceMismatch { left: 3, right: 4 });
    }

    #[test]
    fn letters_must_be_generators() {
        assert!(WeylWord::new(space(3), vec![0, 3]).is_err());
        assert_eq!(WeylWord::parse(space(4), "0, 1,3").unwrap(), word(4, &[0, 1, 3]));
        assert!(WeylWord::parse(space(4), "0,x").is_err());
        assert!(WeylWord::parse(space(4), "").unwrap().is_empty());
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(
            word(4, &[1]).to_permutation(),
            Permutation::transposition(4, 1, 2)
        );
        assert_eq!(
            word(4, &[0, 1, 0]).to_permutation(),
            Permutation::transposition(4, 0, 2)
        );
    }

    #[test]
    fn translation_in_kernel_of_permutation_map() {
        let s = space(3);
        let w = word(3, &[0, 1, 2, 1]);
        assert!(w.to_permutation().is_identity());
        let moved = w.act(&s.basis(1)).unwrap();
        assert_eq!(moved, s.basis(1).sub(&s.fiber()).unwrap());
        assert!(!equal_elements(&w, &WeylWord::identity(s)).unwrap());
    }

    #[test]
    fn equality_examples() {
        assert!(equal_elements(&word(3, &[0, 1, 0]), &word(3, &[1, 0, 1])).unwrap());
        assert!(equal_elements(&word(5, &[]), &word(5, &[])).unwrap());
        assert!(equal_elements(&word(5, &[2, 2]), &word(5, &[])).unwrap());
    }

    #[test]
    fn presentation_holds() {
        for n in 3..=8 {
            let r = check_presentation(n).unwrap();
            assert!(r.is_success(), "n={n}");
            assert_eq!(r.summary.total, n * (n + 1) / 2);
        }
        // all distinct pairs are adjacent when n = 3
        let r = check_presentation(3).unwrap();
        assert!(r
            .records
            .iter()
            .filter(|rec| rec.params["i"] != rec.params["j"])
            .all(|rec| rec.params["m"] == 3));
        let r = check_presentation(5).unwrap();
        let rec = r
            .records
            .iter()
            .find(|rec| rec.params["i"] == 0 && rec.params["j"] == 2)
            .unwrap();
        assert_eq!(rec.params["m"], 2);
        assert!(rec.passed());
    }

    #[test]
    fn exponents_are_sharp() {
        // the relation orders are exact, not merely divisors
        for n in 3..=6 {
            for i in 0..n {
                for j in 0..n {
                    let m = coxeter_exponent(n, i, j);
                    let w = word(n, &[i, j]);
                    for k in 1..m {
                        assert!(!w.pow(k as usize).is_trivial(), "n={n} i={i} j={j} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_preserves_form_and_fixes_fiber() {
        let n = 5;
        let s = space(n);
        let gram = IntMatrix::from_columns(
            n,
            &(0..n)
                .map(|j| (0..n).map(|i| s.gram(i, j)).collect())
                .collect::<Vec<_>>(),
        );
        let m = word(n, &[0, 3, 1, 4, 2, 2, 1]).matrix();
        assert!(m.preserves_form(&gram));
        assert_eq!(m.apply(s.fiber().coeffs()), s.fiber().coeffs());
    }
}
