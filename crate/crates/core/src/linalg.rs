//! Dense complex linear algebra kernels.
//!
//! All operators in this crate are dense `DMatrix<Complex64>` but carry very
//! few nonzeros per column (ladder chains, spin flips, diagonals and their
//! low-degree products). The product kernel below walks columns and skips
//! zero coefficients, which turns the nominal O(n^3) product into roughly
//! O(nnz * n) for these structures without any sparse bookkeeping.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub(crate) type CMatrix = DMatrix<Complex64>;
pub(crate) type CVector = DVector<Complex64>;

/// Matrix product with zero-skipping over the right factor's columns.
pub(crate) fn mat_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (n, k) = a.shape();
    let (kb, m) = b.shape();
    assert_eq!(k, kb, "inner dimensions must agree");
    let mut c = CMatrix::zeros(n, m);
    for j in 0..m {
        let bcol = b.column(j);
        let mut ccol = c.column_mut(j);
        for (kk, &bkj) in bcol.iter().enumerate() {
            if bkj.re == 0.0 && bkj.im == 0.0 {
                continue;
            }
            let acol = a.column(kk);
            for i in 0..n {
                ccol[i] += acol[i] * bkj;
            }
        }
    }
    c
}

/// `a * v` with zero-skipping over the vector entries.
pub(crate) fn mat_vec(a: &CMatrix, v: &CVector) -> CVector {
    let (n, k) = a.shape();
    assert_eq!(k, v.len(), "dimensions must agree");
    let mut w = CVector::zeros(n);
    for (kk, &vk) in v.iter().enumerate() {
        if vk.re == 0.0 && vk.im == 0.0 {
            continue;
        }
        let acol = a.column(kk);
        for i in 0..n {
            w[i] += acol[i] * vk;
        }
    }
    w
}

/// `a^H * v` (adjoint application) without materializing the adjoint.
pub(crate) fn mat_vec_adjoint(a: &CMatrix, v: &CVector) -> CVector {
    let (n, k) = a.shape();
    assert_eq!(n, v.len(), "dimensions must agree");
    let mut w = CVector::zeros(k);
    for j in 0..k {
        let acol = a.column(j);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            acc += acol[i].conj() * v[i];
        }
        w[j] = acc;
    }
    w
}

/// Largest singular value, computed by power iteration on `A^H A`.
///
/// The iteration tracks the Rayleigh quotient of `A^H A` and stops once it is
/// stationary to near machine precision. Two deterministic start vectors
/// guard against an unlucky start orthogonal to the top singular subspace;
/// the larger estimate wins. An exactly zero matrix reports 0.
pub(crate) fn spectral_norm(a: &CMatrix) -> f64 {
    let n = a.ncols();
    if n == 0 || a.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
        return 0.0;
    }
    let mut best = 0.0f64;
    for start in 0..2u64 {
        let mut v = start_vector(n, start);
        let mut prev = -1.0f64;
        let mut stable = 0u32;
        let mut lambda = 0.0f64;
        for _ in 0..4000 {
            let av = mat_vec(a, &v);
            let w = mat_vec_adjoint(a, &av);
            let wnorm = w.norm();
            if wnorm == 0.0 {
                lambda = 0.0;
                break;
            }
            // v is unit, so v^H w is the Rayleigh quotient of A^H A.
            lambda = v.dotc(&w).re.max(0.0);
            v = w / Complex64::new(wnorm, 0.0);
            let scale = lambda.abs().max(f64::MIN_POSITIVE);
            if (lambda - prev).abs() <= 1e-14 * scale {
                stable += 1;
                if stable >= 4 {
                    break;
                }
            } else {
                stable = 0;
            }
            prev = lambda;
        }
        best = best.max(lambda.max(0.0).sqrt());
    }
    best
}

fn start_vector(n: usize, which: u64) -> CVector {
    let mut v = CVector::from_fn(n, |i, _| {
        let i = i as u64;
        match which {
            0 => Complex64::new(1.0 / (i + 1) as f64, ((i % 7) as f64 - 3.0) / 11.0),
            _ => {
                // splitmix-style scramble for an unrelated second direction
                let mut z = i.wrapping_add(0x9e3779b97f4a7c15).wrapping_mul(0xbf58476d1ce4e5b9);
                z ^= z >> 27;
                let re = ((z % 2048) as f64 - 1024.0) / 1024.0;
                let im = (((z >> 11) % 2048) as f64 - 1024.0) / 1024.0;
                Complex64::new(re, im)
            }
        }
    });
    let norm = v.norm();
    v /= Complex64::new(norm, 0.0);
    v
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let se = nalgebra::SymmetricEigen::new(m.clone());
    let mut vals: Vec<f64> = se.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Eigenpairs of a Hermitian matrix, ascending by eigenvalue.
///
/// Columns of the returned matrix are the eigenvectors, matched to the
/// returned eigenvalue order.
pub(crate) fn hermitian_eigenpairs(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let se = nalgebra::SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = se.eigenvalues.iter().copied().collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &se.eigenvectors.column(src));
    }
    (sorted_vals, vecs)
}

/// Submatrix on a fixed index set (rows and columns alike).
pub(crate) fn principal_submatrix(m: &CMatrix, indices: &[usize]) -> CMatrix {
    let k = indices.len();
    CMatrix::from_fn(k, k, |i, j| m[(indices[i], indices[j])])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(
                ((i * 31 + j * 17) % 97) as f64 / 97.0 - 0.5,
                ((i * 13 + j * 7) % 89) as f64 / 89.0 - 0.5,
            )
        })
    }

    #[test]
    fn product_matches_nalgebra() {
        let a = dense(24);
        let b = dense(24).adjoint();
        let ours = mat_mul(&a, &b);
        let theirs = &a * &b;
        assert!((ours - theirs).norm() < 1e-12);
    }

    #[test]
    fn matvec_matches_nalgebra() {
        let a = dense(17);
        let v = CVector::from_fn(17, |i, _| Complex64::new(i as f64 - 8.0, 0.3 * i as f64));
        assert!((mat_vec(&a, &v) - &a * &v).norm() < 1e-12);
        assert!((mat_vec_adjoint(&a, &v) - a.adjoint() * &v).norm() < 1e-12);
    }

    #[test]
    fn spectral_norm_matches_eigensolver() {
        for n in [3usize, 8, 21] {
            let a = dense(n);
            let gram = mat_mul(&a.adjoint(), &a);
            let exact = hermitian_eigenvalues(&gram)
                .last()
                .copied()
                .unwrap()
                .max(0.0)
                .sqrt();
            let approx = spectral_norm(&a);
            assert!(
                (approx - exact).abs() <= 1e-9 * exact.max(1.0),
                "n={n}: power {approx} vs exact {exact}"
            );
        }
    }

    #[test]
    fn spectral_norm_of_zero_is_zero() {
        let z = CMatrix::zeros(16, 16);
        assert_eq!(spectral_norm(&z), 0.0);
    }

    #[test]
    fn eigenpairs_reconstruct() {
        let a = dense(12);
        let h = mat_mul(&a.adjoint(), &a);
        let (vals, vecs) = hermitian_eigenpairs(&h);
        for (k, &ev) in vals.iter().enumerate() {
            let v: CVector = vecs.column(k).into();
            let hv = mat_vec(&h, &v);
            let res = (&hv - &v * Complex64::new(ev, 0.0)).norm();
            assert!(res < 1e-9, "eigenpair {k} residual {res}");
        }
    }
}
