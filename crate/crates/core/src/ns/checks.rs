//! Effectivity in the tracked cone, the fibral bound, and the `[O, F]`
//! block normal form.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::lattice::{NSDivisor, NsLattice};

/// Whether `d` is a nonnegative combination of `F`, every `v^t_i` (the
/// derived `v^t_0` included), `O` and the tracked sections.
///
/// Fiber `t` can absorb `m_t = max(0, -min_i a_{t,i})` copies of
/// `F = Σ_i v^t_i`; what is left of the `F` coefficient must stay `≥ 0`.
pub fn is_effective_class(lattice: &NsLattice, d: &NSDivisor) -> bool {
    let c = &d.coeffs;
    if c.len() != lattice.dim() {
        return false;
    }
    let points_ok = (0..lattice.point_count()).all(|p| c[lattice.point_index(p)] >= 0);
    let needed: i64 = lattice
        .fibers()
        .iter()
        .map(|f| {
            let lowest = c[f.offset..f.offset + f.n - 1].iter().copied().min().unwrap_or(0);
            (-lowest).max(0)
        })
        .sum();
    points_ok && c[1] >= needed
}

/// `V² + 2a_j` for `V = Σ a_i v_i` in `V_n`, which equals
/// `-Σ (a_i - a_{i+1})² + 2a_j`.
pub fn fibral_bound(n: usize, a: &[i64], j: usize) -> Result<i64> {
    if n < 3 {
        return Err(Error::SmallFiber(n));
    }
    if a.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: a.len(),
        });
    }
    if a[0] != 0 {
        return Err(Error::PreconditionViolated(format!("a_0 = {}, expected 0", a[0])));
    }
    let square: i64 = (0..n).map(|i| (a[i] - a[(i + 1) % n]).pow(2)).sum();
    Ok(-square + 2 * a[j % n])
}

/// Change of basis for the `[O, F]` block with `O² = -χ`.
///
/// Even `χ = 2m`: `(O + mF, F)` spans a hyperbolic plane. Odd
/// `χ = 2m + 1`: `(O + (m+1)F, O + mF)` has Gram `diag(1, -1)`. Returns the
/// basis (columns in `O, F` coordinates) and the resulting Gram.
pub fn of_block_form(chi: i64) -> Result<(IntMatrix, IntMatrix)> {
    if chi < 1 {
        return Err(Error::InvalidConfig(format!("χ = {chi} must be positive")));
    }
    let gram = IntMatrix::from_rows(vec![vec![-chi, 1], vec![1, 0]]).expect("square");
    let m = chi / 2;
    let basis = if chi % 2 == 0 {
        IntMatrix::from_columns(2, &[vec![1, m], vec![0, 1]])
    } else {
        IntMatrix::from_columns(2, &[vec![1, m + 1], vec![1, m]])
    };
    let form = basis.transpose().mul(&gram).mul(&basis);
    Ok((basis, form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ns::config::{SectionData, SurfaceConfig};
    use crate::ns::lattice::build_ns;

    #[test]
    fn effective_examples() {
        let mut c = SurfaceConfig::with_fibers(&[3, 9]);
        c.sections = vec![SectionData::new("P").component("t1", 3).torsion(3).pairing("O", 0)];
        c.sections.push(SectionData::new("P2").component("t1", 6).torsion(3).pairing("O", 0));
        let l = build_ns(&c).unwrap();
        let eff = |s: &str| is_effective_class(&l, &l.parse_divisor(s).unwrap());
        assert!(eff("v[t1,2]"));
        assert!(!eff("-F"));
        assert!(eff("(P) + 2F"));
        assert!(eff("v[t0,0]"));
        assert!(eff("v[t0,0] + v[t1,0]"));
        assert!(!eff("v[t0,0] + v[t1,0] - F"));
        assert!(!eff("-(P) + 3F"));
        assert!(!eff("-v[t1,4]"));
    }

    #[test]
    fn fibral_bound_examples() {
        assert_eq!(fibral_bound(4, &[0; 4], 0).unwrap(), 0);
        assert_eq!(fibral_bound(4, &[0, 1, 0, 0], 1).unwrap(), 0);
        assert_eq!(fibral_bound(5, &[0, 1, 2, 2, 1], 2).unwrap(), 0);
        assert!(matches!(
            fibral_bound(4, &[1, 0, 0, 0], 0).unwrap_err(),
            Error::PreconditionViolated(_)
        ));
    }

    #[test]
    fn block_forms() {
        let (_, odd) = of_block_form(1).unwrap();
        assert_eq!(odd.to_rows(), vec![vec![1, 0], vec![0, -1]]);
        let (_, odd) = of_block_form(3).unwrap();
        assert_eq!(odd.to_rows(), vec![vec![1, 0], vec![0, -1]]);
        let (basis, even) = of_block_form(2).unwrap();
        assert_eq!(even.to_rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(basis.to_rows(), vec![vec![1, 0], vec![1, 1]]);
    }
}
