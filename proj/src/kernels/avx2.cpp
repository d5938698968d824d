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

// AVX2+FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may be called unless the dispatcher has
// confirmed CPU support.
//
// A __m256d holds two interleaved complex numbers: [re0, im0, re1, im1].

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "hgpd/kernels.hpp"

namespace hgpd::kernels::avx2 {
namespace {

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// [w0, w0, w1, w1]
inline __m256d load_weight_pair(const double* w) {
  const __m128d pair = _mm_loadu_pd(w);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(pair), 0x50);
}

// Elementwise complex product of two lanes-of-two.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w) {
  const std::size_t n = a.size();
  __m256d acc_re = _mm256_setzero_pd();  // ar*br, ai*bi
  __m256d acc_im = _mm256_setzero_pd();  // ar*bi, ai*br
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a.data() + i));
    const __m256d vb = _mm256_loadu_pd(dp(b.data() + i));
    const __m256d vw = load_weight_pair(w.data() + i);
    const __m256d aw = _mm256_mul_pd(va, vw);
    acc_re = _mm256_fmadd_pd(aw, vb, acc_re);
    acc_im = _mm256_fmadd_pd(aw, _mm256_permute_pd(vb, 0x5), acc_im);
  }
  alignas(32) double im_lanes[4];
  _mm256_store_pd(im_lanes, acc_im);
  double re = hsum(acc_re);
  double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += (ar * br + ai * bi) * w[i];
    im += (ar * bi - ai * br) * w[i];
  }
  return {re, im};
}

double weighted_sq_norm(std::span<const cplx> a, std::span<const double> w) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a.data() + i));
    const __m256d vw = load_weight_pair(w.data() + i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(va, va), vw, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::norm(a[i]) * w[i];
  return s;
}

void pointwise_mul(std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> out) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a.data() + i));
    const __m256d vb = _mm256_loadu_pd(dp(b.data() + i));
    _mm256_storeu_pd(dp(out.data() + i), cmul(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t n = x.size();
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(dp(x.data() + i));
    const __m256d vy = _mm256_loadu_pd(dp(y.data() + i));
    _mm256_storeu_pd(dp(y.data() + i), _mm256_add_pd(vy, cmul(vx, va)));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx{alpha.real() * xr - alpha.imag() * xi,
                 alpha.real() * xi + alpha.imag() * xr};
  }
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t n = a.size();
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(dp(a.data() + i)),
                                    _mm256_loadu_pd(dp(b.data() + i)));
    const __m256d sq = _mm256_mul_pd(d, d);
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::sqrt(std::max({lanes[0], lanes[1], lanes[2], lanes[3]}));
  for (; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

cplx gather_mul_sum(const cplx* a, std::span<const std::int32_t> ia,
                    const cplx* b, std::span<const std::int32_t> ib) {
  const std::size_t n = ia.size();
  __m256d p = _mm256_setzero_pd();  // a * b_re
  __m256d q = _mm256_setzero_pd();  // swap(a) * b_im
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_set_m128d(_mm_loadu_pd(dp(a + ia[k + 1])),
                                        _mm_loadu_pd(dp(a + ia[k])));
    const __m256d vb = _mm256_set_m128d(_mm_loadu_pd(dp(b + ib[k + 1])),
                                        _mm_loadu_pd(dp(b + ib[k])));
    p = _mm256_fmadd_pd(va, _mm256_movedup_pd(vb), p);
    q = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), _mm256_permute_pd(vb, 0xF), q);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_addsub_pd(p, q));
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; k < n; ++k) {
    const cplx x = a[ia[k]], y = b[ib[k]];
    re += x.real() * y.real() - x.imag() * y.imag();
    im += x.real() * y.imag() + x.imag() * y.real();
  }
  return {re, im};
}

}  // namespace hgpd::kernels::avx2
