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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hgpd/kernels.hpp"

namespace hgpd::kernels {
namespace {

struct Table {
  Backend backend;
  cplx (*weighted_dot)(std::span<const cplx>, std::span<const cplx>, std::span<const double>);
  double (*weighted_sq_norm)(std::span<const cplx>, std::span<const double>);
  void (*pointwise_mul)(std::span<const cplx>, std::span<const cplx>, std::span<cplx>);
  void (*axpy)(cplx, std::span<const cplx>, std::span<cplx>);
  double (*max_abs_diff)(std::span<const cplx>, std::span<const cplx>);
  cplx (*gather_mul_sum)(const cplx*, std::span<const std::int32_t>, const cplx*,
                         std::span<const std::int32_t>);
};

constexpr Table kScalar{Backend::Scalar,       scalar::weighted_dot,
                        scalar::weighted_sq_norm, scalar::pointwise_mul,
                        scalar::axpy,          scalar::max_abs_diff,
                        scalar::gather_mul_sum};

#if defined(HGPD_HAVE_AVX2)
constexpr Table kAvx2{Backend::Avx2,         avx2::weighted_dot,
                      avx2::weighted_sq_norm, avx2::pointwise_mul,
                      avx2::axpy,            avx2::max_abs_diff,
                      avx2::gather_mul_sum};
#endif

bool cpu_has_avx2() {
#if defined(HGPD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* table_for(Backend b) {
#if defined(HGPD_HAVE_AVX2)
  if (b == Backend::Avx2) return &kAvx2;
#endif
  (void)b;
  return &kScalar;
}

const Table* initial_table() {
  const char* env = std::getenv("HGPD_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return &kScalar;
  if (cpu_has_avx2()) return table_for(Backend::Avx2);
  return &kScalar;
}

std::atomic<const Table*>& active() {
  static std::atomic<const Table*> t{initial_table()};
  return t;
}

const Table& tbl() { return *active().load(std::memory_order_relaxed); }

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  return b == Backend::Scalar || (b == Backend::Avx2 && cpu_has_avx2());
}

Backend active_backend() { return tbl().backend; }

void set_backend(Backend b) {
  if (!backend_available(b))
    throw std::invalid_argument(std::string("kernel backend not available: ") + backend_name(b));
  active().store(table_for(b), std::memory_order_relaxed);
}

cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w) {
  return tbl().weighted_dot(a, b, w);
}
double weighted_sq_norm(std::span<const cplx> a, std::span<const double> w) {
  return tbl().weighted_sq_norm(a, w);
}
void pointwise_mul(std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> out) {
  tbl().pointwise_mul(a, b, out);
}
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) { tbl().axpy(alpha, x, y); }
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  return tbl().max_abs_diff(a, b);
}
cplx gather_mul_sum(const cplx* a, std::span<const std::int32_t> ia, const cplx* b,
                    std::span<const std::int32_t> ib) {
  return tbl().gather_mul_sum(a, ia, b, ib);
}

}  // namespace hgpd::kernels
