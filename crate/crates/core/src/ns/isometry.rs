//! Universal isometries in canonical form `ε · PL(x) · τ_P · ι`.
//!
//! `PL(x)` applies the Weyl word `x_t` of each fiber by reflections
//! `D ↦ D + ⟨D, v⟩v` on the whole lattice, so `s_{v_0}` moves `O` to
//! `O + v_0` and fixes `F`. `τ_P` sends `O ↦ (P)`, `(Q) ↦ (Q+P)` and rotates
//! each fiber by `c_t(P)`. `ι` sends `(Q) ↦ (-Q)` and `v^t_i ↦ v^t_{-i}`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::base_change::RamificationProfile;
use crate::error::{Error, Result};
use crate::lift::lift_word;
use crate::matrix::IntMatrix;
use crate::report::{Counterexample, Record, Report};
use crate::weyl::{equal_elements, WeylWord};

use super::lattice::{NSDivisor, NsLattice};
use super::pullback::{pullback_ns, NsPullback};

/// Greedy reduction gives up after this many reflections per fiber.
pub const MAX_REDUCTION_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalIsometry {
    pub sign: i64,
    #[serde(default)]
    pub weyl: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub translate: Option<String>,
    #[serde(default)]
    pub invert: bool,
}

impl Default for UniversalIsometry {
    fn default() -> Self {
        Self::identity()
    }
}

impl UniversalIsometry {
    pub fn identity() -> Self {
        Self {
            sign: 1,
            weyl: BTreeMap::new(),
            translate: None,
            invert: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse("isometry", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("isometry serializes")
    }

    fn validate(&self, lattice: &NsLattice) -> Result<()> {
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::InvalidParameters(format!("sign {} is not ±1", self.sign)));
        }
        for (t, word) in &self.weyl {
            let f = lattice
                .fiber_index(t)
                .map(|i| &lattice.fibers()[i])
                .ok_or_else(|| Error::InvalidParameters(format!("unknown fiber {t}")))?;
            WeylWord::new(f.space, word.clone())?;
        }
        if let Some(p) = &self.translate {
            lattice
                .point(p)
                .ok_or_else(|| Error::UntrackedTranslate(p.clone()))?;
        }
        Ok(())
    }

    fn translate_point(&self, lattice: &NsLattice) -> Result<usize> {
        match &self.translate {
            None => Ok(0),
            Some(p) => lattice.point(p).ok_or_else(|| Error::UntrackedTranslate(p.clone())),
        }
    }

    /// Matrix on the basis of `lattice`.
    pub fn matrix(&self, lattice: &NsLattice) -> Result<IntMatrix> {
        self.validate(lattice)?;
        let mut m = translation_matrix(lattice, self.translate_point(lattice)?)?;
        if self.invert {
            m = m.mul(&inversion_matrix(lattice)?);
        }
        Ok(pl_apply(lattice, &self.weyl, &m).scale(self.sign))
    }

    pub fn act(&self, lattice: &NsLattice, d: &NSDivisor) -> Result<NSDivisor> {
        if d.coeffs.len() != lattice.dim() {
            return Err(Error::LengthMismatch {
                expected: lattice.dim(),
                got: d.coeffs.len(),
            });
        }
        Ok(NSDivisor::new(self.matrix(lattice)?.apply(&d.coeffs)))
    }

    /// The same isometry after base change: each `x_t` becomes
    /// `R^{e_y}(x_t)` on every fiber `t.y` above `t`.
    pub fn pulled_back(&self, base: &NsLattice, pb: &NsPullback) -> Result<UniversalIsometry> {
        self.validate(base)?;
        let mut weyl = BTreeMap::new();
        for (t, word) in &self.weyl {
            let ti = base.fiber_index(t).expect("validated");
            let w = WeylWord::new(base.fibers()[ti].space, word.clone())?;
            for &nt in &pb.blocks[ti] {
                let f = &pb.lattice.fibers()[nt];
                let e = f.n / base.fibers()[ti].n;
                weyl.insert(f.name.clone(), lift_word(e, &w)?.letters().to_vec());
            }
        }
        Ok(UniversalIsometry {
            sign: self.sign,
            weyl,
            translate: self.translate.clone(),
            invert: self.invert,
        })
    }

    /// Effective means `ε = +1` and every Weyl part trivial.
    pub fn is_effective(&self, lattice: &NsLattice) -> Result<bool> {
        if self.sign != 1 {
            return Ok(false);
        }
        for (t, word) in &self.weyl {
            let f = &lattice.fibers()[lattice
                .fiber_index(t)
                .ok_or_else(|| Error::InvalidParameters(format!("unknown fiber {t}")))?];
            if !WeylWord::new(f.space, word.clone())?.is_trivial() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Componentwise equality with Weyl parts compared as group elements.
    pub fn equivalent(&self, other: &UniversalIsometry, lattice: &NsLattice) -> Result<bool> {
        if self.sign != other.sign || self.invert != other.invert {
            return Ok(false);
        }
        if self.translate_point(lattice)? != other.translate_point(lattice)? {
            return Ok(false);
        }
        for f in lattice.fibers() {
            let word = |iso: &UniversalIsometry| {
                WeylWord::new(f.space, iso.weyl.get(&f.name).cloned().unwrap_or_default())
            };
            if !equal_elements(&word(self)?, &word(other)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Applies `ι` then `τ_P` then `PL(x)` then `ε` to `d`. With `after`, `d`
/// lives on the pullback of `base` along that profile.
pub fn act_isometry(
    base: &NsLattice,
    iso: &UniversalIsometry,
    d: &NSDivisor,
    after: Option<&RamificationProfile>,
) -> Result<NSDivisor> {
    match after {
        None => iso.act(base, d),
        Some(profile) => {
            let pb = pullback_ns(base, profile)?;
            iso.pulled_back(base, &pb)?.act(&pb.lattice, d)
        }
    }
}

/// `G·v` for each `v^t_i`, so that `⟨D, v^t_i⟩` is a dot product.
fn component_duals(lattice: &NsLattice, t: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    (0..lattice.fibers()[t].n as i64)
        .map(|i| {
            let v = lattice.component_vector(t, i);
            (lattice.gram().apply(&v), v)
        })
        .collect()
}

/// `PL(x) · m`.
fn pl_apply(lattice: &NsLattice, weyl: &BTreeMap<String, Vec<usize>>, m: &IntMatrix) -> IntMatrix {
    let mut columns: Vec<Vec<i64>> = (0..m.cols()).map(|j| m.column(j)).collect();
    for (name, word) in weyl {
        let t = lattice.fiber_index(name).expect("validated fiber");
        let duals = component_duals(lattice, t);
        for col in &mut columns {
            for &l in word.iter().rev() {
                let (g, v) = &duals[l];
                let p: i64 = col.iter().zip(g).map(|(a, b)| a * b).sum();
                if p != 0 {
                    for (c, x) in col.iter_mut().zip(v) {
                        *c += p * x;
                    }
                }
            }
        }
    }
    IntMatrix::from_columns(m.rows(), &columns)
}

/// Matrix of `PL(x)` alone.
pub fn pl_matrix(lattice: &NsLattice, weyl: &BTreeMap<String, Vec<usize>>) -> IntMatrix {
    pl_apply(lattice, weyl, &IntMatrix::identity(lattice.dim()))
}

/// Matrix of `τ_P` for the point with index `p`.
pub fn translation_matrix(lattice: &NsLattice, p: usize) -> Result<IntMatrix> {
    let dim = lattice.dim();
    let mut columns = vec![Vec::new(); dim];
    columns[0] = lattice.unit(lattice.point_index(p));
    columns[1] = lattice.fiber_class();
    for (t, f) in lattice.fibers().iter().enumerate() {
        let shift = lattice.point_component(p, t) as i64;
        for i in 1..f.n {
            columns[f.offset + i - 1] = lattice.component_vector(t, i as i64 + shift);
        }
    }
    for q in 1..lattice.point_count() {
        let image = if p == 0 { q } else { lattice.add_points(q, p)? };
        columns[lattice.point_index(q)] = lattice.unit(lattice.point_index(image));
    }
    Ok(IntMatrix::from_columns(dim, &columns))
}

/// Matrix of `ι`.
pub fn inversion_matrix(lattice: &NsLattice) -> Result<IntMatrix> {
    let dim = lattice.dim();
    let mut columns = vec![Vec::new(); dim];
    columns[0] = lattice.unit(0);
    columns[1] = lattice.fiber_class();
    for (t, f) in lattice.fibers().iter().enumerate() {
        for i in 1..f.n {
            columns[f.offset + i - 1] = lattice.component_vector(t, -(i as i64));
        }
    }
    for q in 1..lattice.point_count() {
        let image = lattice.neg_point(q)?;
        columns[lattice.point_index(q)] = lattice.unit(lattice.point_index(image));
    }
    Ok(IntMatrix::from_columns(dim, &columns))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Universal {
        iso: UniversalIsometry,
        effective: bool,
    },
    NotUniversal {
        reason: String,
    },
}

impl Classification {
    pub fn isometry(&self) -> Option<&UniversalIsometry> {
        match self {
            Classification::Universal { iso, .. } => Some(iso),
            Classification::NotUniversal { .. } => None,
        }
    }
}

fn check_isometry(lattice: &NsLattice, m: &IntMatrix) -> Result<()> {
    let rank = lattice.dim();
    if m.rows() != rank || m.cols() != rank {
        return Err(Error::ShapeError {
            rows: m.rows(),
            cols: m.cols(),
            rank,
        });
    }
    if !m.preserves_form(lattice.gram()) {
        return Err(Error::NotIsometry);
    }
    Ok(())
}

/// Recovers the canonical form of `m`, or explains why none exists.
pub fn classify_isometry(lattice: &NsLattice, m: &IntMatrix) -> Result<Classification> {
    check_isometry(lattice, m)?;
    let not = |reason: String| Ok(Classification::NotUniversal { reason });

    let f = lattice.fiber_class();
    let image_f = m.apply(&f);
    let sign = if image_f == f {
        1
    } else if image_f.iter().zip(&f).all(|(a, b)| *a == -b) {
        -1
    } else {
        return not("F is not mapped to ±F".into());
    };
    let m = m.scale(sign);

    let mut weyl = BTreeMap::new();
    for (t, fiber) in lattice.fibers().iter().enumerate() {
        let n = fiber.n;
        let mut u = Vec::with_capacity(n);
        for i in 0..n as i64 {
            match lattice.fibral_part(t, &m.apply(&lattice.component_vector(t, i))) {
                Some(x) => u.push(x),
                None => return not(format!("image of v[{},{i}] is not fibral", fiber.name)),
            }
        }
        let mut steps = Vec::new();
        while let Some(i) = u.iter().position(|x| x.is_negative()) {
            if let Some(j) = u.iter().position(|x| !x.is_negative() && !x.is_positive()) {
                return not(format!("image of v[{},{j}] is not a root", fiber.name));
            }
            if steps.len() >= MAX_REDUCTION_STEPS {
                return not(format!("reduction on {} did not terminate", fiber.name));
            }
            steps.push(i);
            let old = u[i].clone();
            u[i] = old.neg();
            for nb in [(i + n - 1) % n, (i + 1) % n] {
                u[nb] = u[nb].add(&old)?;
            }
        }
        let mut target = Vec::with_capacity(n);
        for (i, x) in u.iter().enumerate() {
            let ones: Vec<usize> = (0..n).filter(|&k| x.coeffs()[k] != 0).collect();
            match ones.as_slice() {
                [k] if x.coeffs()[*k] == 1 => target.push(*k),
                _ => {
                    return not(format!(
                        "v[{},{i}] does not reduce to a simple component",
                        fiber.name
                    ))
                }
            }
        }
        if !steps.is_empty() {
            weyl.insert(
                fiber.name.clone(),
                steps.iter().rev().map(|&i| target[i]).collect::<Vec<_>>(),
            );
        }
    }

    let inverse: BTreeMap<String, Vec<usize>> = weyl
        .iter()
        .map(|(k, w)| (k.clone(), w.iter().rev().copied().collect()))
        .collect();
    let residual = pl_apply(lattice, &inverse, &m);
    let Some(p) = lattice.point_of(&residual.column(0)) else {
        return not("image of O is not a tracked section".into());
    };
    let translation = match translation_matrix(lattice, p) {
        Ok(t) => t,
        Err(e) => return not(e.to_string()),
    };
    let invert = if residual == translation {
        false
    } else {
        match inversion_matrix(lattice) {
            Ok(i) if residual == translation.mul(&i) => true,
            Ok(_) => return not("residual is neither the identity nor the inversion".into()),
            Err(e) => return not(e.to_string()),
        }
    };
    let effective = sign == 1 && weyl.is_empty();
    Ok(Classification::Universal {
        iso: UniversalIsometry {
            sign,
            weyl,
            translate: (p != 0).then(|| lattice.point_name(p)),
            invert,
        },
        effective,
    })
}

/// The four hypotheses of the Torelli-type criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorelliCheck {
    pub fiber_fixed: bool,
    pub zero_fixed: bool,
    pub components_to_components: bool,
    pub sections_to_sections: bool,
}

impl TorelliCheck {
    pub fn all(&self) -> bool {
        self.fiber_fixed && self.zero_fixed && self.components_to_components && self.sections_to_sections
    }

    pub fn to_report(&self) -> Report {
        let rec = |id: &str, ok: bool| {
            Record::new(
                id,
                &[],
                (!ok).then(|| Counterexample {
                    witness: id.to_string(),
                    expected: vec![1],
                    actual: vec![0],
                }),
            )
        };
        Report::from_records([
            rec("torelli-fiber", self.fiber_fixed),
            rec("torelli-zero-section", self.zero_fixed),
            rec("torelli-components", self.components_to_components),
            rec("torelli-sections", self.sections_to_sections),
        ])
    }
}

pub fn check_torelli_hypotheses(lattice: &NsLattice, m: &IntMatrix) -> Result<TorelliCheck> {
    check_isometry(lattice, m)?;
    let f = lattice.fiber_class();
    let components: Vec<Vec<i64>> = lattice
        .fibers()
        .iter()
        .enumerate()
        .flat_map(|(t, fib)| (0..fib.n as i64).map(move |i| (t, i)))
        .map(|(t, i)| lattice.component_vector(t, i))
        .collect();
    let components_to_components = components
        .iter()
        .all(|c| components.contains(&m.apply(c)));
    let sections_to_sections = (0..lattice.point_count())
        .all(|p| lattice.point_of(&m.column(lattice.point_index(p))).is_some());
    Ok(TorelliCheck {
        fiber_fixed: m.apply(&f) == f,
        zero_fixed: m.column(0) == lattice.unit(0),
        components_to_components,
        sections_to_sections,
    })
}

/// A random canonical form: random sign, random words of length up to
/// `max_len` on each fiber, a random tracked translation and inversion flag.
/// Translations and the inversion are only drawn when their matrices exist.
pub fn sample_isometry(lattice: &NsLattice, rng: &mut impl Rng, max_len: usize) -> UniversalIsometry {
    let weyl = lattice
        .fibers()
        .iter()
        .filter_map(|f| {
            let len = rng.gen_range(0..=max_len);
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..f.n)).collect();
            (!word.is_empty()).then(|| (f.name.clone(), word))
        })
        .collect();
    let points: Vec<usize> = (0..lattice.point_count())
        .filter(|&p| translation_matrix(lattice, p).is_ok())
        .collect();
    let p = points[rng.gen_range(0..points.len())];
    let invert = inversion_matrix(lattice).is_ok() && rng.gen_bool(0.5);
    UniversalIsometry {
        sign: if rng.gen_bool(0.5) { 1 } else { -1 },
        weyl,
        translate: (p != 0).then(|| lattice.point_name(p)),
        invert,
    }
}
