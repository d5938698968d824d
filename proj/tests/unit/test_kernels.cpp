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


#include "hgpd/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

namespace k = hgpd::kernels;
using k::cplx;

namespace {

struct Data {
  std::vector<cplx> a, b;
  std::vector<double> w;
};

Data make_data(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.a.emplace_back(nd(rng), nd(rng));
    d.b.emplace_back(nd(rng), nd(rng));
    d.w.push_back(ud(rng));
  }
  return d;
}

double rel(cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }
double rel(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace

TEST(Kernels, ScalarReferenceValues) {
  const std::vector<cplx> a{{1, 1}, {2, 0}, {0, -1}};
  const std::vector<cplx> b{{1, 0}, {0, 1}, {3, 0}};
  const std::vector<double> w{1.0, 0.5, 2.0};
  // conj(1+i)*1*1 + 2*i*0.5 + i*3*2
  EXPECT_LT(std::abs(k::scalar::weighted_dot(a, b, w) - cplx(1, 6)), 1e-15);
  EXPECT_DOUBLE_EQ(k::scalar::weighted_sq_norm(a, w), 2.0 + 2.0 + 2.0);
  std::vector<cplx> out(3);
  k::scalar::pointwise_mul(a, b, out);
  EXPECT_EQ(out[1], cplx(0, 2));
  std::vector<cplx> y = b;
  k::scalar::axpy(cplx(0, 1), a, y);
  EXPECT_EQ(y[0], cplx(0, 1));
  EXPECT_DOUBLE_EQ(k::scalar::max_abs_diff(a, b), std::sqrt(10.0));
  const std::vector<std::int32_t> ia{0, 2}, ib{1, 0};
  EXPECT_EQ(k::scalar::gather_mul_sum(a.data(), ia, b.data(), ib), cplx(1, 1) * cplx(0, 1) + cplx(0, -1));
}

#if defined(HGPD_HAVE_AVX2)

TEST(Kernels, Avx2MatchesScalar) {
  if (!k::backend_available(k::Backend::Avx2)) GTEST_SKIP() << "CPU lacks AVX2/FMA";
  std::mt19937_64 rng(7);
  for (std::size_t n = 0; n < 40; ++n) {
    const Data d = make_data(n, rng);
    EXPECT_LT(rel(k::avx2::weighted_dot(d.a, d.b, d.w), k::scalar::weighted_dot(d.a, d.b, d.w)),
              1e-13)
        << n;
    EXPECT_LT(rel(k::avx2::weighted_sq_norm(d.a, d.w), k::scalar::weighted_sq_norm(d.a, d.w)),
              1e-13);
    EXPECT_LT(rel(k::avx2::max_abs_diff(d.a, d.b), k::scalar::max_abs_diff(d.a, d.b)), 1e-15);

    std::vector<cplx> p1(n), p2(n);
    k::avx2::pointwise_mul(d.a, d.b, p1);
    k::scalar::pointwise_mul(d.a, d.b, p2);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LT(rel(p1[i], p2[i]), 1e-15);

    std::vector<cplx> y1 = d.b, y2 = d.b;
    k::avx2::axpy(cplx(0.3, -1.2), d.a, y1);
    k::scalar::axpy(cplx(0.3, -1.2), d.a, y2);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LT(rel(y1[i], y2[i]), 1e-15);

    std::uniform_int_distribution<std::int32_t> pick(0, n ? static_cast<std::int32_t>(n) - 1 : 0);
    std::vector<std::int32_t> ia, ib;
    if (n)
      for (std::size_t i = 0; i < 2 * n + 1; ++i) {
        ia.push_back(pick(rng));
        ib.push_back(pick(rng));
      }
    EXPECT_LT(rel(k::avx2::gather_mul_sum(d.a.data(), ia, d.b.data(), ib),
                  k::scalar::gather_mul_sum(d.a.data(), ia, d.b.data(), ib)),
              1e-13);
  }
}

TEST(Kernels, PointwiseMulAliasing) {
  if (!k::backend_available(k::Backend::Avx2)) GTEST_SKIP() << "CPU lacks AVX2/FMA";
  std::mt19937_64 rng(3);
  const Data d = make_data(11, rng);
  std::vector<cplx> a1 = d.a, a2 = d.a;
  k::avx2::pointwise_mul(a1, d.b, a1);
  k::scalar::pointwise_mul(a2, d.b, a2);
  for (std::size_t i = 0; i < a1.size(); ++i) EXPECT_LT(rel(a1[i], a2[i]), 1e-15);
}

#endif

TEST(Kernels, BackendSwitch) {
  const k::Backend before = k::active_backend();
  k::set_backend(k::Backend::Scalar);
  EXPECT_EQ(k::active_backend(), k::Backend::Scalar);
  EXPECT_STREQ(k::backend_name(k::Backend::Scalar), "scalar");
  const std::vector<cplx> a{{1, 2}}, b{{3, 4}};
  const std::vector<double> w{2.0};
  EXPECT_EQ(k::weighted_dot(a, b, w), k::scalar::weighted_dot(a, b, w));
  if (!k::backend_available(k::Backend::Avx2))
    EXPECT_THROW(k::set_backend(k::Backend::Avx2), std::invalid_argument);
  k::set_backend(before);
}
