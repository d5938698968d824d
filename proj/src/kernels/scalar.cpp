// Copyright 2026 The hgpd Authors.
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

#include <algorithm>
#include <cmath>

#include "hgpd/kernels.hpp"

namespace hgpd::kernels::scalar {

cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += (ar * br + ai * bi) * w[i];
    im += (ar * bi - ai * br) * w[i];
  }
  return {re, im};
}

double weighted_sq_norm(std::span<const cplx> a, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i]) * w[i];
  return s;
}

void pointwise_mul(std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx{alpha.real() * xr - alpha.imag() * xi,
                 alpha.real() * xi + alpha.imag() * xr};
  }
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

cplx gather_mul_sum(const cplx* a, std::span<const std::int32_t> ia,
                    const cplx* b, std::span<const std::int32_t> ib) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < ia.size(); ++k) {
    const cplx x = a[ia[k]], y = b[ib[k]];
    re += x.real() * y.real() - x.imag() * y.imag();
    im += x.real() * y.imag() + x.imag() * y.real();
  }
  return {re, im};
}

}  // namespace hgpd::kernels::scalar
