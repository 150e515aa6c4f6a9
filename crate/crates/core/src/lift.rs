//! The lifts `R^e_n : W_n → W_{ne}`.
//!
//! `R^e_n(s_k)` is the product of the reflections in the `e` arcs of length
//! `e` in `V_{ne}` whose support contains `ek`. The arcs are pairwise
//! orthogonal, so the product is an involution and its order is irrelevant.
//! Each arc reflection is expanded into simple letters by conjugation, so
//! every lift is an ordinary [`WeylWord`].

use std::fmt;

use rand::Rng;

use crate::base_change::{LocalPullback, RamificationProfile};
use crate::error::{Error, Result};
use crate::lattice::{ArcRoot, FibralSpace, FibralVector};
use crate::matrix::IntMatrix;
use crate::perm::{render_cycles, Permutation};
use crate::report::{Counterexample, Record, Report};
use crate::rng::cell_rng;
use crate::weyl::WeylWord;

fn check_params(n: usize, e: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("n = {n}, need n >= 3")));
    }
    if e < 1 {
        return Err(Error::InvalidParameters(format!("e = {e}, need e >= 1")));
    }
    Ok(())
}

/// `I(n, e, k)`: the arcs whose reflections make up `R^e_n(s_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    pub n: usize,
    pub e: usize,
    pub k: usize,
    pub arcs: Vec<ArcRoot>,
}

/// Starts run over `(k-1)e+1 ..= ke`; those are exactly the length-`e`
/// windows covering `ek`.
pub fn index_set(n: usize, e: usize, k: usize) -> Result<IndexSet> {
    check_params(n, e)?;
    let k = k % n;
    let space = FibralSpace::new(n * e)?;
    let first = (k as i64 - 1) * e as i64 + 1;
    let arcs = (0..e as i64)
        .map(|a| space.arc_from(first + a, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexSet { n, e, k, arcs })
}

/// `R^e_n(s_k)` as a word in `W_{ne}` with its matrix on `V_{ne}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedGenerator {
    pub n: usize,
    pub e: usize,
    pub k: usize,
    pub word: WeylWord,
    pub matrix: IntMatrix,
}

impl LiftedGenerator {
    pub fn permutation(&self) -> Permutation {
        self.word.to_permutation()
    }

    pub fn apply(&self, v: &FibralVector) -> Result<FibralVector> {
        self.word.act(v)
    }
}

/// Lists `(a, σ(a))` for `a` over the lower window `(k-1)e+1 ..= ke`, the
/// order in which the closed form is usually written.
impl fmt::Display for LiftedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.word.space();
        let perm = self.permutation();
        let first = (self.k as i64 - 1) * self.e as i64 + 1;
        let pairs: Vec<Vec<usize>> = (0..self.e as i64)
            .map(|a| space.residue(first + a))
            .filter(|&a| perm.image(a) != a)
            .map(|a| vec![a, perm.image(a)])
            .collect();
        f.write_str(&render_cycles(pairs))
    }
}

/// Closed-form transpositions `((k-1)e+a, ke+a)` for `a = 1..=e`.
pub fn generator_permutation_closed_form(n: usize, e: usize, k: usize) -> Permutation {
    let ne = n * e;
    let (k, e) = (k as i64, e as i64);
    let cycles: Vec<Vec<i64>> = (1..=e).map(|a| vec![(k - 1) * e + a, k * e + a]).collect();
    Permutation::from_cycles(ne, &cycles)
}

/// Produces lifted words. The default lifter is faithful; a sabotaged one
/// drops the last arc from the lift of one generator, which must make the
/// verifiers report failures.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Lifter {
    sabotage: Option<usize>,
}

impl Lifter {
    pub fn faithful() -> Self {
        Self { sabotage: None }
    }

    pub fn sabotaged(k: usize) -> Self {
        Self { sabotage: Some(k) }
    }

    pub fn is_sabotaged(&self) -> bool {
        self.sabotage.is_some()
    }

    fn letters(&self, n: usize, e: usize, k: usize) -> Result<Vec<usize>> {
        let set = index_set(n, e, k)?;
        let mut arcs = set.arcs;
        if self.sabotage.map(|s| s % n) == Some(k % n) {
            arcs.pop();
        }
        Ok(arcs.iter().flat_map(ArcRoot::reflection_word).collect())
    }

    pub fn generator_word(&self, n: usize, e: usize, k: usize) -> Result<WeylWord> {
        WeylWord::new(FibralSpace::new(n * e)?, self.letters(n, e, k)?)
    }

    pub fn generator(&self, n: usize, e: usize, k: usize) -> Result<LiftedGenerator> {
        let word = self.generator_word(n, e, k)?;
        let matrix = word.matrix();
        Ok(LiftedGenerator {
            n,
            e,
            k: k % n,
            word,
            matrix,
        })
    }

    /// Letter-by-letter image of `w` in `W_{ne}`.
    pub fn lift_word(&self, e: usize, w: &WeylWord) -> Result<WeylWord> {
        let n = w.space().n();
        check_params(n, e)?;
        let table = (0..n)
            .map(|k| self.letters(n, e, k))
            .collect::<Result<Vec<_>>>()?;
        let letters = w
            .letters()
            .iter()
            .flat_map(|&l| table[l].iter().copied())
            .collect();
        WeylWord::new(FibralSpace::new(n * e)?, letters)
    }

    /// `R(s_i)(p^* v_k) = p^*(s_i v_k)` for every generator and basis vector.
    pub fn verify_intertwining(&self, n: usize, e: usize) -> Result<Report> {
        check_params(n, e)?;
        let source = FibralSpace::new(n)?;
        let pb = LocalPullback::new(source, e as i64)?;
        let mut report = Report::new();
        for i in 0..n {
            let lifted = self.generator_word(n, e, i)?;
            let s_i = WeylWord::generator(source, i as i64);
            for k in 0..n {
                let v = source.basis(k as i64);
                let actual = lifted.act(&pb.apply(&v)?)?;
                let expected = pb.apply(&s_i.act(&v)?)?;
                let failure = (actual != expected).then(|| Counterexample {
                    witness: format!("R(s{i}) p*(v{k})"),
                    expected: expected.into_coeffs(),
                    actual: actual.into_coeffs(),
                });
                report.push(Record::new(
                    "intertwining",
                    &[("n", n as i64), ("e", e as i64), ("i", i as i64), ("k", k as i64)],
                    failure,
                ));
            }
        }
        Ok(report)
    }

    /// Coxeter relations among lifted generators, by matrix identity.
    pub fn verify_homomorphism(&self, n: usize, e: usize) -> Result<Report> {
        check_params(n, e)?;
        let gens = (0..n)
            .map(|k| self.generator_word(n, e, k))
            .collect::<Result<Vec<_>>>()?;
        let ne = n * e;
        let mut report = Report::new();
        let mut check = |id: &str, word: WeylWord, params: &[(&str, i64)], witness: String| {
            let m = word.matrix();
            let failure = (!m.is_identity()).then(|| Counterexample {
                witness,
                expected: IntMatrix::identity(ne).to_rows().concat(),
                actual: m.to_rows().concat(),
            });
            report.push(Record::new(id, params, failure));
        };
        for i in 0..n {
            check(
                "lift-involution",
                gens[i].pow(2),
                &[("n", n as i64), ("e", e as i64), ("i", i as i64)],
                format!("R(s{i})^2"),
            );
            let next = (i + 1) % n;
            check(
                "lift-braid",
                gens[i].concat(&gens[next])?.pow(3),
                &[("n", n as i64), ("e", e as i64), ("i", i as i64), ("j", next as i64)],
                format!("(R(s{i}) R(s{next}))^3"),
            );
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                check(
                    "lift-commute",
                    gens[i].concat(&gens[j])?.pow(2),
                    &[("n", n as i64), ("e", e as i64), ("i", i as i64), ("j", j as i64)],
                    format!("(R(s{i}) R(s{j}))^2"),
                );
            }
        }
        Ok(report)
    }

    /// `R^f_{ne} ∘ R^e_n = R^{ef}_n` on every generator and on
    /// `random_words` seeded words of length 6.
    pub fn verify_composition(
        &self,
        n: usize,
        e: usize,
        f: usize,
        random_words: usize,
        seed: u64,
    ) -> Result<Report> {
        check_params(n, e)?;
        check_params(n, f)?;
        let space = FibralSpace::new(n)?;
        let params = |extra: (&'static str, i64)| {
            [("n", n as i64), ("e", e as i64), ("f", f as i64), extra]
        };
        let mut report = Report::new();
        for k in 0..n {
            let w = WeylWord::generator(space, k as i64);
            let failure = self.composition_mismatch(e, f, &w)?;
            report.push(Record::new("composition", &params(("k", k as i64)), failure));
        }
        let mut rng = cell_rng(seed, &[4, n as u64, e as u64, f as u64]);
        for idx in 0..random_words {
            let letters = (0..6).map(|_| rng.gen_range(0..n)).collect();
            let w = WeylWord::new(space, letters)?;
            let failure = self.composition_mismatch(e, f, &w)?;
            report.push(Record::new(
                "composition-word",
                &params(("word", idx as i64)),
                failure,
            ));
        }
        Ok(report)
    }

    fn composition_mismatch(
        &self,
        e: usize,
        f: usize,
        w: &WeylWord,
    ) -> Result<Option<Counterexample>> {
        let two_step = self.lift_word(f, &self.lift_word(e, w)?)?.matrix();
        let direct = self.lift_word(e * f, w)?.matrix();
        Ok(first_column_mismatch(&direct, &two_step).map(|c| Counterexample {
            witness: format!("[{w}] column {c}"),
            expected: direct.column(c),
            actual: two_step.column(c),
        }))
    }

    /// The four closed forms for the action of `R^e_n(s_j)` on the basis of
    /// `V_{ne}`.
    pub fn verify_lemma_s(&self, n: usize, e: usize) -> Result<Report> {
        check_params(n, e)?;
        let target = FibralSpace::new(n * e)?;
        let ne = (n * e) as i64;
        let ei = e as i64;
        let window = |from: i64, to: i64, sign: i64| {
            let mut v = target.zero().into_coeffs();
            for i in from..=to {
                v[target.residue(i)] += sign;
            }
            v
        };
        let mut report = Report::new();
        for j in 0..n {
            let m = self.generator(n, e, j)?.matrix;
            let centre = j as i64 * ei;
            let mut push = |id: &str, col: i64, extra: i64, expected: Vec<i64>| {
                let col = target.residue(col);
                let actual = m.column(col);
                let failure = (actual != expected).then(|| Counterexample {
                    witness: format!("w{col}"),
                    expected,
                    actual,
                });
                report.push(Record::new(
                    id,
                    &[("n", n as i64), ("e", ei), ("j", j as i64), ("i", extra)],
                    failure,
                ));
            };
            push("lemma-S.1", centre, 0, window(centre - ei + 1, centre + ei - 1, -1));
            for i in 0..ne {
                let d = (i - centre).rem_euclid(ne);
                if d.min(ne - d) > ei {
                    push("lemma-S.2", i, i, target.basis(i).into_coeffs());
                }
            }
            push("lemma-S.3", centre + ei, 1, window(centre, centre + ei, 1));
            push("lemma-S.3", centre - ei, -1, window(centre - ei, centre, 1));
            for i in 1..ei {
                push(
                    "lemma-S.4",
                    centre - i,
                    -i,
                    target.basis(centre + ei - i).into_coeffs(),
                );
                push(
                    "lemma-S.4",
                    centre + i,
                    i,
                    target.basis(centre - ei + i).into_coeffs(),
                );
            }
        }
        Ok(report)
    }

    /// Permutation closed forms: the generator lift, the inductive words
    /// `T` and `S`, arc reflections and lifts of arc reflections.
    pub fn verify_permutation_forms(&self, n: usize, e: usize) -> Result<Report> {
        check_params(n, e)?;
        let ne = n * e;
        let target = FibralSpace::new(ne)?;
        let source = FibralSpace::new(n)?;
        let ei = e as i64;
        let mut report = Report::new();
        let mut push = |id: &str, params: &[(&str, i64)], expected: Permutation, actual: Permutation| {
            let failure = (expected != actual).then(|| Counterexample {
                witness: format!("expected {expected}, got {actual}"),
                expected: expected.images().iter().map(|&x| x as i64).collect(),
                actual: actual.images().iter().map(|&x| x as i64).collect(),
            });
            report.push(Record::new(id, params, failure));
        };
        for j in 0..n {
            let base = [("n", n as i64), ("e", ei), ("j", j as i64)];
            let gen = self.generator(n, e, j)?;
            push(
                "perm-corollary",
                &base,
                generator_permutation_closed_form(n, e, j),
                gen.permutation(),
            );
            let centre = j as i64 * ei;
            for k in 0..e {
                let ki = k as i64;
                let cycle: Vec<i64> = (0..=ki)
                    .map(|t| centre - t)
                    .chain((1..=ki + 1).map(|t| centre + t))
                    .collect();
                push(
                    "perm-permutnot-T",
                    &[base[0], base[1], base[2], ("k", ki)],
                    Permutation::from_cycles(ne, &[cycle]),
                    inductive_t(n, e, j, k)?.to_permutation(),
                );
            }
            for k in 1..=e {
                let ki = k as i64;
                let pairs: Vec<Vec<i64>> =
                    (1..=ki).map(|a| vec![centre - ki + a, centre + a]).collect();
                push(
                    "perm-permutnot-S",
                    &[base[0], base[1], base[2], ("k", ki)],
                    Permutation::from_cycles(ne, &pairs),
                    inductive_s(n, e, j, k)?.to_permutation(),
                );
            }
            for k in 1..n {
                let ki = k as i64;
                let arc = source.arc_from(j as i64, k)?;
                let word = WeylWord::new(source, arc.reflection_word())?;
                let pairs: Vec<Vec<i64>> = (1..=ei)
                    .map(|a| {
                        let lo = (j as i64 - 1) * ei + a;
                        vec![lo, lo + ki * ei]
                    })
                    .collect();
                push(
                    "perm-svij",
                    &[base[0], base[1], base[2], ("k", ki)],
                    Permutation::from_cycles(ne, &pairs),
                    self.lift_word(e, &word)?.to_permutation(),
                );
            }
        }
        for p in 0..ne {
            for len in 1..ne {
                let arc = target.arc_from(p as i64, len)?;
                let word = WeylWord::new(target, arc.reflection_word())?;
                push(
                    "perm-arc",
                    &[("n", n as i64), ("e", ei), ("p", p as i64), ("len", len as i64)],
                    Permutation::transposition(ne, p as i64, (p + len) as i64),
                    word.to_permutation(),
                );
            }
        }
        let mut inductive = Report::new();
        for j in 0..n {
            let equal = self.generator(n, e, j)?.matrix == inductive_s(n, e, j, e)?.matrix();
            inductive.push(Record::new(
                "perm-inductive-equal",
                &[("n", n as i64), ("e", ei), ("j", j as i64)],
                (!equal).then(|| Counterexample {
                    witness: format!("S(v{j},{e}) vs R(s{j})"),
                    expected: Vec::new(),
                    actual: Vec::new(),
                }),
            ));
        }
        report.merge(inductive);
        Ok(report)
    }
}

fn first_column_mismatch(a: &IntMatrix, b: &IntMatrix) -> Option<usize> {
    (0..a.cols()).find(|&c| a.column(c) != b.column(c))
}

fn u_letters(ne: usize, centre: i64, i: usize) -> Vec<usize> {
    let r = |x: i64| x.rem_euclid(ne as i64) as usize;
    if i == 0 {
        vec![r(centre)]
    } else {
        vec![r(centre - i as i64), r(centre + i as i64)]
    }
}

/// `T(v_j, i) = T(v_j, i-1) U(v_j, i)` with `T(v_j, 0) = s_{je}`.
pub fn inductive_t(n: usize, e: usize, j: usize, i: usize) -> Result<WeylWord> {
    check_params(n, e)?;
    let ne = n * e;
    let centre = ((j % n) * e) as i64;
    let letters = (0..=i).flat_map(|t| u_letters(ne, centre, t)).collect();
    WeylWord::new(FibralSpace::new(ne)?, letters)
}

/// `S(v_j, i) = T(v_j, i-1) S(v_j, i-1)` with `S(v_j, 0)` empty.
pub fn inductive_s(n: usize, e: usize, j: usize, i: usize) -> Result<WeylWord> {
    check_params(n, e)?;
    let mut word = WeylWord::identity(FibralSpace::new(n * e)?);
    for t in 1..=i {
        word = inductive_t(n, e, j, t - 1)?.concat(&word)?;
    }
    Ok(word)
}

pub fn lift_generator(n: usize, e: usize, k: usize) -> Result<LiftedGenerator> {
    Lifter::faithful().generator(n, e, k)
}

/// `S(v_j, e)`, the inductive presentation of `R^e_n(s_j)`.
pub fn lift_inductive(n: usize, e: usize, j: usize) -> Result<WeylWord> {
    inductive_s(n, e, j, e)
}

pub fn lift_word(e: usize, w: &WeylWord) -> Result<WeylWord> {
    Lifter::faithful().lift_word(e, w)
}

pub fn verify_intertwining(n: usize, e: usize) -> Result<Report> {
    Lifter::faithful().verify_intertwining(n, e)
}

pub fn verify_homomorphism(n: usize, e: usize) -> Result<Report> {
    Lifter::faithful().verify_homomorphism(n, e)
}

pub fn verify_composition(
    n: usize,
    e: usize,
    f: usize,
    random_words: usize,
    seed: u64,
) -> Result<Report> {
    Lifter::faithful().verify_composition(n, e, f, random_words, seed)
}

pub fn verify_lemma_s(n: usize, e: usize) -> Result<Report> {
    Lifter::faithful().verify_lemma_s(n, e)
}

pub fn verify_permutation_forms(n: usize, e: usize) -> Result<Report> {
    Lifter::faithful().verify_permutation_forms(n, e)
}

/// `PL_b(s_k)` over one singular point: one lifted generator per point above
/// it, each acting on its own fibral block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLLift {
    pub profile: RamificationProfile,
    pub point: String,
    pub n: usize,
    pub k: usize,
    pub factors: Vec<LiftedGenerator>,
}

impl PLLift {
    pub fn local_degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|g| g.e).collect()
    }

    /// Applies each factor to its block.
    pub fn apply(&self, blocks: &[FibralVector]) -> Result<Vec<FibralVector>> {
        if blocks.len() != self.factors.len() {
            return Err(Error::LengthMismatch {
                expected: self.factors.len(),
                got: blocks.len(),
            });
        }
        self.factors
            .iter()
            .zip(blocks)
            .map(|(g, b)| g.apply(b))
            .collect()
    }
}

pub fn pl_lift(profile: &RamificationProfile, point: &str, n: usize, k: usize) -> Result<PLLift> {
    check_params(n, 1)?;
    let factors = profile
        .local_degrees(point)
        .into_iter()
        .map(|e| lift_generator(n, e, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(PLLift {
        profile: profile.clone(),
        point: point.to_string(),
        n,
        k: k % n,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::equal_elements;

    fn word(n: usize, letters: &[usize]) -> WeylWord {
        WeylWord::new(FibralSpace::new(n).unwrap(), letters.to_vec()).unwrap()
    }

    #[test]
    fn index_set_examples() {
        let set = index_set(3, 2, 0).unwrap();
        let names: Vec<String> = set.arcs.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["v(5,0)", "v(0,1)"]);
        for k in 0..4 {
            let set = index_set(4, 1, k).unwrap();
            assert_eq!(set.arcs.len(), 1);
            assert_eq!((set.arcs[0].start(), set.arcs[0].end()), (k, k));
        }
        assert!(index_set(2, 1, 0).is_err());
        assert!(index_set(3, 0, 0).is_err());
    }

    #[test]
    fn index_set_matches_enumeration() {
        for n in 3..=5 {
            for e in 1..=3 {
                let space = FibralSpace::new(n * e).unwrap();
                for k in 0..n {
                    let mut brute: Vec<usize> = (0..n * e)
                        .filter(|&s| space.arc_from(s as i64, e).unwrap().contains(k * e))
                        .collect();
                    let mut got: Vec<usize> =
                        index_set(n, e, k).unwrap().arcs.iter().map(|a| a.start()).collect();
                    brute.sort();
                    got.sort();
                    assert_eq!(got, brute);
                    assert_eq!(got.len(), e);
                }
            }
        }
    }

    #[test]
    fn generator_examples() {
        let g = lift_generator(3, 2, 0).unwrap();
        assert_eq!(g.to_string(), "(5,1)(0,2)");
        let img = g.apply(&g.word.space().basis(0)).unwrap();
        assert_eq!(img.coeffs(), &[-1, -1, 0, 0, 0, -1]);
        for k in 0..4 {
            assert_eq!(lift_generator(4, 1, k).unwrap().word, word(4, &[k]));
        }
    }

    #[test]
    fn inductive_examples() {
        assert_eq!(lift_inductive(5, 1, 3).unwrap(), word(5, &[3]));
        let w = lift_inductive(3, 2, 0).unwrap();
        assert!(equal_elements(&w, &lift_generator(3, 2, 0).unwrap().word).unwrap());
        let s = lift_inductive(4, 3, 2).unwrap().to_permutation();
        let closed = Permutation::from_cycles(12, &[vec![4, 7], vec![5, 8], vec![6, 9]]);
        assert_eq!(s, closed);
    }

    #[test]
    fn lift_word_examples() {
        let s3 = FibralSpace::new(3).unwrap();
        assert!(lift_word(2, &WeylWord::identity(s3)).unwrap().is_empty());
        let a = lift_word(2, &word(3, &[0, 1, 0])).unwrap();
        let b = lift_word(2, &word(3, &[1, 0, 1])).unwrap();
        assert!(equal_elements(&a, &b).unwrap());
        assert!(lift_word(2, &word(3, &[0, 0])).unwrap().is_trivial());
    }

    #[test]
    fn intertwining_instances() {
        let s = FibralSpace::new(3).unwrap();
        let pb = LocalPullback::new(s, 2).unwrap();
        let g = lift_generator(3, 2, 0).unwrap();
        let pv0 = pb.apply(&s.basis(0)).unwrap();
        assert_eq!(g.apply(&pv0).unwrap(), pv0.neg());
        let pv1 = pb.apply(&s.basis(1)).unwrap();
        let sum = pb.apply(&s.basis(0).add(&s.basis(1)).unwrap()).unwrap();
        assert_eq!(g.apply(&pv1).unwrap(), sum);
        for n in 3..=5 {
            for e in 1..=3 {
                assert!(verify_intertwining(n, e).unwrap().is_success());
            }
        }
    }

    #[test]
    fn homomorphism_small() {
        let r = verify_homomorphism(5, 2).unwrap();
        assert!(r.is_success());
        assert!(r
            .records
            .iter()
            .any(|rec| rec.id == "lift-commute" && rec.params["i"] == 0 && rec.params["j"] == 2));
        assert!(verify_homomorphism(3, 2).unwrap().is_success());
        // n = 3 has no commuting pairs
        assert!(verify_homomorphism(3, 3)
            .unwrap()
            .records
            .iter()
            .all(|rec| rec.id != "lift-commute"));
    }

    #[test]
    fn composition_small() {
        assert!(verify_composition(3, 1, 1, 5, 7).unwrap().is_success());
        assert!(verify_composition(3, 2, 2, 0, 7).unwrap().is_success());
        let r = verify_composition(3, 2, 3, 10, 7).unwrap();
        assert!(r.is_success());
        assert_eq!(r.summary.total, 13);
    }

    #[test]
    fn closed_forms_small() {
        for n in 3..=4 {
            for e in 1..=3 {
                let r = verify_lemma_s(n, e).unwrap();
                assert!(r.is_success(), "{}", r.render_table());
                let r = verify_permutation_forms(n, e).unwrap();
                assert!(r.is_success(), "{}", r.render_table());
            }
        }
    }

    #[test]
    fn sabotage_is_detected() {
        let bad = Lifter::sabotaged(1);
        assert!(!bad.verify_intertwining(3, 2).unwrap().is_success());
        assert!(!bad.verify_intertwining(3, 1).unwrap().is_success());
        assert!(!bad.verify_lemma_s(4, 2).unwrap().is_success());
        assert!(!bad.verify_permutation_forms(3, 2).unwrap().is_success());
    }

    #[test]
    fn pl_lift_profiles() {
        let p = RamificationProfile::single("t0", vec![2, 1]).unwrap();
        let pl = pl_lift(&p, "t0", 3, 0).unwrap();
        assert_eq!(pl.local_degrees(), [2, 1]);
        assert_eq!(pl.factors[0], lift_generator(3, 2, 0).unwrap());
        assert_eq!(pl.factors[1].word, word(3, &[0]));
        let p = RamificationProfile::single("t0", vec![1, 1]).unwrap();
        let pl = pl_lift(&p, "t0", 4, 2).unwrap();
        let s4 = FibralSpace::new(4).unwrap();
        let out = pl.apply(&[s4.basis(2), s4.basis(1)]).unwrap();
        assert_eq!(out[0], s4.basis(2).neg());
        assert_eq!(out[1], s4.basis(1).add(&s4.basis(2)).unwrap());
        // a point not listed is unramified
        let other = pl_lift(&p, "t9", 3, 0).unwrap();
        assert_eq!(other.local_degrees(), [1, 1]);
    }
}
