//! Pullback of fibral classes along a finite base change.
//!
//! Over a point of local ramification degree `e` an `I_n` fiber becomes
//! `I_{ne}`. The component `v_k` pulls back to
//! `e·w_{ek} + Σ_{0<j<e} (e-j)(w_{ek-j} + w_{ek+j})`: the strict transform
//! sits at `w_{ek}` and the exceptional chains between consecutive strict
//! transforms carry linearly decreasing multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{inner_product, FibralSpace, FibralVector};
use crate::matrix::IntMatrix;
use crate::report::{Counterexample, Record, Report};
use crate::rng::cell_rng;

/// `p^* : V_n → V_{ne}` for a totally ramified point of degree `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalPullback {
    source: FibralSpace,
    e: usize,
    target: FibralSpace,
}

impl LocalPullback {
    pub fn new(source: FibralSpace, e: i64) -> Result<Self> {
        if e < 1 {
            return Err(Error::InvalidDegree(e));
        }
        let e = e as usize;
        Ok(Self {
            source,
            e,
            target: FibralSpace::new(source.n() * e)?,
        })
    }

    pub fn source(&self) -> FibralSpace {
        self.source
    }

    pub fn target(&self) -> FibralSpace {
        self.target
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    /// `p^*(v_k)`.
    pub fn basis_image(&self, k: usize) -> FibralVector {
        let e = self.e as i64;
        let centre = (k * self.e) as i64;
        let mut coeffs = vec![0i64; self.target.n()];
        coeffs[self.target.residue(centre)] = e;
        for j in 1..e {
            coeffs[self.target.residue(centre - j)] += e - j;
            coeffs[self.target.residue(centre + j)] += e - j;
        }
        self.target.vector(coeffs).expect("length matches target")
    }

    pub fn apply(&self, v: &FibralVector) -> Result<FibralVector> {
        if v.space() != self.source {
            return Err(Error::SpaceMismatch {
                left: self.source.n(),
                right: v.space().n(),
            });
        }
        let coeffs = self.matrix().apply(v.coeffs());
        self.target.vector(coeffs)
    }

    /// `ne × n` matrix; column `k` is `p^*(v_k)`.
    pub fn matrix(&self) -> IntMatrix {
        let columns: Vec<Vec<i64>> = (0..self.source.n())
            .map(|k| self.basis_image(k).into_coeffs())
            .collect();
        IntMatrix::from_columns(self.target.n(), &columns)
    }
}

/// Pulls `v` back along a totally ramified point of degree `e`.
pub fn pullback_local(e: i64, v: &FibralVector) -> Result<FibralVector> {
    LocalPullback::new(v.space(), e)?.apply(v)
}

fn random_vector(space: FibralSpace, rng: &mut impl Rng) -> FibralVector {
    let coeffs = (0..space.n()).map(|_| rng.gen_range(-6..=6)).collect();
    space.vector(coeffs).expect("length matches")
}

/// Checks `⟨p^*x, p^*y⟩ = e·⟨x, y⟩` on `trials` seeded random pairs.
pub fn verify_pullback_scaling(n: usize, e: i64, trials: usize, seed: u64) -> Result<Report> {
    let source = FibralSpace::new(n)?;
    let pb = LocalPullback::new(source, e)?;
    let mut rng = cell_rng(seed, &[1, n as u64, e as u64]);
    let mut failure = None;
    for t in 0..trials {
        let x = random_vector(source, &mut rng);
        let y = random_vector(source, &mut rng);
        let lhs = inner_product(&pb.apply(&x)?, &pb.apply(&y)?)?;
        let rhs = e * inner_product(&x, &y)?;
        if lhs != rhs {
            failure = Some(Counterexample {
                witness: format!("trial {t}: x={x}, y={y}"),
                expected: vec![rhs],
                actual: vec![lhs],
            });
            break;
        }
    }
    Ok(Report::from_records([Record::new(
        "pullback-scaling",
        &[("n", n as i64), ("e", e), ("trials", trials as i64)],
        failure,
    )]))
}

/// Checks that pulling back along `e` then `f` equals pulling back along
/// `e·f`, as matrices `V_n → V_{nef}`.
pub fn verify_pullback_composition(n: usize, e: i64, f: i64) -> Result<Report> {
    let source = FibralSpace::new(n)?;
    let first = LocalPullback::new(source, e)?;
    let second = LocalPullback::new(first.target(), f)?;
    let direct = LocalPullback::new(source, e * f)?;
    let composed = second.matrix().mul(&first.matrix());
    let expected = direct.matrix();
    let failure = (composed != expected).then(|| Counterexample {
        witness: "p*_f ∘ p*_e".to_string(),
        expected: expected.to_rows().concat(),
        actual: composed.to_rows().concat(),
    });
    Ok(Report::from_records([Record::new(
        "pullback-composition",
        &[("n", n as i64), ("e", e), ("f", f)],
        failure,
    )]))
}

/// Local ramification degrees above each singular point.
///
/// The literal syntax is `t0:[2,1];t1:[3]`. Every listed point must have
/// local degrees summing to the same global degree `d`; points not listed
/// are unramified (`d` points of degree 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationProfile {
    degree: usize,
    points: BTreeMap<String, Vec<usize>>,
}

impl RamificationProfile {
    pub fn new(points: BTreeMap<String, Vec<usize>>) -> Result<Self> {
        let mut degree = None;
        for (name, local) in &points {
            if local.is_empty() {
                return Err(Error::InvalidProfile(format!("no points above {name}")));
            }
            if local.contains(&0) {
                return Err(Error::InvalidProfile(format!(
                    "local degree 0 above {name}"
                )));
            }
            let d: usize = local.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::InvalidProfile(format!(
                        "local degrees above {name} sum to {d}, expected {prev}"
                    )))
                }
                _ => {}
            }
        }
        let degree =
            degree.ok_or_else(|| Error::InvalidProfile("profile lists no points".into()))?;
        Ok(Self { degree, points })
    }

    /// Profile listing a single point.
    pub fn single(point: &str, local: Vec<usize>) -> Result<Self> {
        Self::new(BTreeMap::from([(point.to_string(), local)]))
    }

    pub fn parse(literal: &str) -> Result<Self> {
        let mut points = BTreeMap::new();
        for (pos, entry) in literal.split(';').enumerate() {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let loc = || format!("profile entry {pos}");
            let (name, list) = entry
                .split_once(':')
                .ok_or_else(|| Error::parse(loc(), format!("missing ':' in {entry:?}")))?;
            let list = list.trim();
            let inner = list
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::parse(loc(), format!("expected [..] in {entry:?}")))?;
            let local = inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::parse(loc(), format!("{:?}: {e}", t.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            if points.insert(name.trim().to_string(), local).is_some() {
                return Err(Error::parse(loc(), format!("point {} listed twice", name.trim())));
            }
        }
        Self::new(points)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn points(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.points
    }

    /// Local degrees above `point`; unlisted points are unramified.
    pub fn local_degrees(&self, point: &str) -> Vec<usize> {
        self.points
            .get(point)
            .cloned()
            .unwrap_or_else(|| vec![1; self.degree])
    }
}

impl fmt::Display for RamificationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(name, local)| {
                let ds: Vec<String> = local.iter().map(ToString::to_string).collect();
                format!("{name}:[{}]", ds.join(","))
            })
            .collect();
        f.write_str(&parts.join(";"))
    }
}

/// Kodaira type `I_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberType(pub usize);

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}", self.0)
    }
}

/// Fiber types above a point with fiber `I_{n_t}`: one `I_{n_t·e_y}` per
/// point `y`.
pub fn fiber_type_after(local_degrees: &[usize], n_t: usize) -> Vec<FiberType> {
    local_degrees.iter().map(|&e| FiberType(n_t * e)).collect()
}

/// Pullback of `v` to every point above its singular point, one block per
/// local degree.
pub fn pullback_profile(local_degrees: &[usize], v: &FibralVector) -> Result<Vec<FibralVector>> {
    local_degrees
        .iter()
        .map(|&e| pullback_local(e as i64, v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> FibralSpace {
        FibralSpace::new(n).unwrap()
    }

    #[test]
    fn degree_one_is_identity() {
        let s = space(5);
        let v = s.vector(vec![3, -1, 0, 2, 7]).unwrap();
        assert_eq!(pullback_local(1, &v).unwrap(), v);
    }

    #[test]
    fn basis_and_fiber_images() {
        let s = space(3);
        let p = pullback_local(2, &s.basis(0)).unwrap();
        assert_eq!(p.coeffs(), &[2, 1, 0, 0, 0, 1]);
        let f = pullback_local(2, &s.fiber()).unwrap();
        assert_eq!(f.coeffs(), &[2; 6]);
    }

    #[test]
    fn fiber_pulls_back_to_e_fibers() {
        for n in 3..7 {
            for e in 1..5 {
                let s = space(n);
                let img = pullback_local(e, &s.fiber()).unwrap();
                assert_eq!(img, img.space().fiber().scale(e));
            }
        }
    }

    #[test]
    fn rejects_bad_degree() {
        assert_eq!(pullback_local(0, &space(3).basis(0)), Err(Error::InvalidDegree(0)));
    }

    #[test]
    fn scaling_examples() {
        let s = space(3);
        let p0 = pullback_local(2, &s.basis(0)).unwrap();
        let p1 = pullback_local(2, &s.basis(1)).unwrap();
        assert_eq!(inner_product(&p0, &p1).unwrap(), 2);
        assert_eq!(inner_product(&p0, &p0).unwrap(), -4);
        assert!(verify_pullback_scaling(4, 1, 50, 7).unwrap().is_success());
    }

    #[test]
    fn fiber_types() {
        assert_eq!(fiber_type_after(&[2], 3), vec![FiberType(6)]);
        assert_eq!(fiber_type_after(&[1, 1, 1], 3), vec![FiberType(3); 3]);
        assert_eq!(fiber_type_after(&[2, 1], 5), vec![FiberType(10), FiberType(5)]);
        assert_eq!(FiberType(10).to_string(), "I_10");
    }

    #[test]
    fn profile_literals() {
        let p = RamificationProfile::parse("t0:[2,1];t1:[3]").unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.local_degrees("t0"), vec![2, 1]);
        assert_eq!(p.local_degrees("t7"), vec![1, 1, 1]);
        assert_eq!(p.to_string(), "t0:[2,1];t1:[3]");

        assert!(matches!(
            RamificationProfile::parse("t0:[2,1];t1:[2]"),
            Err(Error::InvalidProfile(_))
        ));
        assert!(matches!(
            RamificationProfile::parse("t0:[0,3]"),
            Err(Error::InvalidProfile(_))
        ));
        assert!(matches!(
            RamificationProfile::parse("t0 [2]"),
            Err(Error::ParseError { .. })
        ));
        assert!(matches!(RamificationProfile::parse(""), Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn global_degree_from_local_blocks() {
        // summing the block forms over a profile gives degree d
        let s = space(4);
        let x = s.vector(vec![1, -2, 0, 3]).unwrap();
        let y = s.vector(vec![0, 1, 1, -1]).unwrap();
        for local in [vec![2, 1], vec![1, 1, 1], vec![3], vec![2, 2, 1]] {
            let d: usize = local.iter().sum();
            let px = pullback_profile(&local, &x).unwrap();
            let py = pullback_profile(&local, &y).unwrap();
            let total: i64 = px
                .iter()
                .zip(&py)
                .map(|(a, b)| inner_product(a, b).unwrap())
                .sum();
            assert_eq!(total, d as i64 * inner_product(&x, &y).unwrap());
        }
    }
}
