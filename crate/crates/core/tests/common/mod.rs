//! Test-side oracles, written directly from the defining formulas and
//! sharing no code with the library.

#![allow(dead_code)]

pub type Mat = Vec<Vec<i64>>;

/// `⟨x, y⟩` on `V_n` from the cyclic Gram matrix.
pub fn pair(x: &[i64], y: &[i64]) -> i64 {
    let n = x.len();
    (0..n)
        .map(|i| x[i] * (-2 * y[i] + y[(i + n - 1) % n] + y[(i + 1) % n]))
        .sum()
}

pub fn reflect(root: &[i64], x: &[i64]) -> Vec<i64> {
    let p = pair(x, root);
    x.iter().zip(root).map(|(a, r)| a + p * r).collect()
}

pub fn basis(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i % n] = 1;
    v
}

/// Every arc of length `len` in `Z/m` whose support contains `c`, found by
/// scanning all starts.
pub fn arcs_containing(m: usize, len: usize, c: usize) -> Vec<Vec<i64>> {
    (0..m)
        .filter(|&s| (0..len).any(|k| (s + k) % m == c % m))
        .map(|s| {
            let mut v = vec![0; m];
            for k in 0..len {
                v[(s + k) % m] = 1;
            }
            v
        })
        .collect()
}

/// `R^e_n(s_k)` applied to `x ∈ V_{ne}` as a product of arc reflections.
pub fn lifted(n: usize, e: usize, k: usize, x: &[i64]) -> Vec<i64> {
    arcs_containing(n * e, e, e * k)
        .iter()
        .fold(x.to_vec(), |acc, a| reflect(a, &acc))
}

/// Matrix with the given columns, stored as rows.
pub fn from_columns(cols: &[Vec<i64>]) -> Mat {
    let r = cols.first().map_or(0, Vec::len);
    (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

pub fn lifted_matrix(n: usize, e: usize, k: usize) -> Mat {
    let m = n * e;
    from_columns(&(0..m).map(|j| lifted(n, e, k, &basis(m, j))).collect::<Vec<_>>())
}

pub fn simple_matrix(n: usize, i: usize) -> Mat {
    let root = basis(n, i);
    from_columns(&(0..n).map(|j| reflect(&root, &basis(n, j))).collect::<Vec<_>>())
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| basis(n, i)).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..r)
        .map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

pub fn pow(a: &Mat, e: usize) -> Mat {
    (0..e).fold(identity(a.len()), |acc, _| mul(&acc, a))
}

pub fn apply(a: &Mat, x: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// `p^*` along a totally ramified point of degree `e`.
pub fn pullback(e: usize, x: &[i64]) -> Vec<i64> {
    let n = x.len();
    let m = n * e;
    let mut out = vec![0; m];
    for (k, &c) in x.iter().enumerate() {
        let centre = (k * e) as i64;
        for j in -(e as i64 - 1)..=(e as i64 - 1) {
            let idx = (centre + j).rem_euclid(m as i64) as usize;
            out[idx] += c * (e as i64 - j.abs());
        }
    }
    out
}

/// `-Σ (a_i - a_{i+1})² + 2a_j`.
pub fn fibral_bound(a: &[i64], j: usize) -> i64 {
    let n = a.len();
    -(0..n).map(|i| (a[i] - a[(i + 1) % n]).pow(2)).sum::<i64>() + 2 * a[j % n]
}
