//! Base change of the Néron-Severi model.

use crate::base_change::{LocalPullback, RamificationProfile};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::config::{FiberOrigin, FiberSpec, SectionData, SurfaceConfig};
use super::lattice::{NSDivisor, NsLattice};

/// A pulled-back surface together with `p^*` on divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsPullback {
    pub profile: RamificationProfile,
    pub lattice: NsLattice,
    /// `dim(new) × dim(old)`; column `j` is the pullback of basis element `j`.
    pub map: IntMatrix,
    /// For each old fiber, the indices of the new fibers above it.
    pub blocks: Vec<Vec<usize>>,
}

impl NsPullback {
    pub fn apply(&self, d: &NSDivisor) -> NSDivisor {
        NSDivisor::new(self.map.apply(&d.coeffs))
    }
}

/// Each fiber `t` becomes fibers `t.y`, one per point `y` above it, of size
/// `n_t·e_y`. Sections keep their names; they meet component `c_t·e_y` and
/// their pairings scale by `d`.
pub fn pullback_ns(base: &NsLattice, profile: &RamificationProfile) -> Result<NsPullback> {
    for point in profile.points().keys() {
        if base.fiber_index(point).is_none() {
            return Err(Error::InvalidProfile(format!(
                "{point} is not a singular point of the surface"
            )));
        }
    }
    let d = profile.degree() as i64;
    let mut fibers = Vec::new();
    let mut blocks = Vec::new();
    for f in base.fibers() {
        let (root, e0) = f.root();
        let root_n = f.n / e0;
        let mut block = Vec::new();
        for (y, &e) in profile.local_degrees(&f.name).iter().enumerate() {
            block.push(fibers.len());
            fibers.push(FiberSpec {
                name: format!("{}.{y}", f.name),
                n: f.n * e,
                origin: Some(FiberOrigin {
                    root: root.to_string(),
                    n: root_n,
                    e: e0 * e,
                }),
            });
        }
        blocks.push(block);
    }

    let sections: Vec<SectionData> = base
        .config()
        .sections
        .iter()
        .zip(base.sections())
        .map(|(data, s)| {
            let mut out = SectionData::new(&s.name);
            out.order = data.order;
            out.free = data.free.clone();
            for (t, f) in base.fibers().iter().enumerate() {
                for (y, &e) in profile.local_degrees(&f.name).iter().enumerate() {
                    let c = s.components[t] * e;
                    if c != 0 {
                        out.components.insert(format!("{}.{y}", f.name), c as i64);
                    }
                }
            }
            out.pairings = data.pairings.iter().map(|(k, v)| (k.clone(), d * v)).collect();
            out
        })
        .collect();

    let lattice = NsLattice::new(SurfaceConfig::new(fibers, sections))?;

    let mut map = IntMatrix::zeros(lattice.dim(), base.dim());
    map[(0, 0)] = 1;
    map[(1, 1)] = d;
    for p in 1..base.point_count() {
        map[(lattice.point_index(p), base.point_index(p))] = 1;
    }
    for (t, f) in base.fibers().iter().enumerate() {
        for k in 1..f.n {
            let col = f.offset + k - 1;
            for (&nt, &e) in blocks[t].iter().zip(&profile.local_degrees(&f.name)) {
                let local = LocalPullback::new(f.space, e as i64)?.basis_image(k);
                let image = lattice.embed_fibral(nt, &local)?;
                for (row, x) in image.into_iter().enumerate() {
                    map[(row, col)] += x;
                }
            }
        }
    }
    Ok(NsPullback {
        profile: profile.clone(),
        lattice,
        map,
        blocks,
    })
}
