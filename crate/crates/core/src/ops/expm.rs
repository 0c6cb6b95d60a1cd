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

//! Dense matrix exponential by scaling and squaring of a Taylor series.

use num_complex::Complex64;

use super::LinearOperator;

const MAX_TERMS: usize = 60;

/// `exp(A)` for a dense operator.
///
/// `A` is scaled by `2^-s` with `s` the smallest integer making the scaled
/// 1-norm fall below 0.5, the series is summed until terms stop changing the
/// result, and the partial sum is squared `s` times.
pub(crate) fn expm(a: &LinearOperator) -> LinearOperator {
    let norm = a.one_norm();
    let mut squarings = 0i32;
    while norm * 0.5f64.powi(squarings) >= 0.5 {
        squarings += 1;
    }
    let scaled = a.scale(Complex64::new(0.5f64.powi(squarings), 0.0));

    let dim = a.dim();
    let mut sum = LinearOperator::identity(dim);
    let mut term = LinearOperator::identity(dim);
    for k in 1..=MAX_TERMS {
        term = term.matmul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.max_abs() < f64::EPSILON * 1e-3 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}
