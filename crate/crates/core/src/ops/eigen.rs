// Copyright 2026 The pigeonhole Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Eigenvalues of small hermitian matrices by cyclic Jacobi rotations.
//!
//! A hermitian `H = A + iB` is embedded in the real symmetric matrix
//! `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every eigenvalue
//! doubled. The real matrix is diagonalised with classical Jacobi sweeps in
//! fixed row-major pivot order, so results are deterministic.

use num_complex::Complex64;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of the `dim × dim` hermitian matrix `entries` (row-major),
/// sorted ascending. Only the lower triangle's hermitian part is trusted.
pub(crate) fn hermitian_eigenvalues(dim: usize, entries: &[Complex64], tol: f64) -> Vec<f64> {
    let n = 2 * dim;
    let mut a = vec![0.0; n * n];
    for i in 0..dim {
        for j in 0..dim {
            // Symmetrise against small hermiticity defects.
            let h = (entries[i * dim + j] + entries[j * dim + i].conj()) * 0.5;
            a[i * n + j] = h.re;
            a[(i + dim) * n + (j + dim)] = h.re;
            a[i * n + (j + dim)] = -h.im;
            a[(i + dim) * n + j] = h.im;
        }
    }
    let mut doubled = symmetric_eigenvalues(n, &mut a, tol);
    doubled.sort_by(f64::total_cmp);
    doubled.into_iter().step_by(2).collect()
}

fn off_diagonal_norm(n: usize, a: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

fn symmetric_eigenvalues(n: usize, a: &mut [f64], tol: f64) -> Vec<f64> {
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(n, a) <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = (t * t + 1.0).sqrt().recip();
                let s = t * c;
                // A ← Jᵀ A J with J the (p, q) plane rotation.
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}
