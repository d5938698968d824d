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

#pragma once

// Arithmetic inner loops over arrow-indexed complex vectors.
//
// Every kernel exists as a scalar reference implementation (namespace
// scalar) and, on x86-64 builds, as an AVX2+FMA variant (namespace avx2).
// The unqualified entry points dispatch through a table chosen once at
// startup from CPUID; HGPD_KERNELS=scalar|avx2 in the environment overrides
// the choice. The two variants are equivalence-tested in
// tests/unit/test_kernels.cpp.

#include <complex>
#include <cstdint>
#include <span>

namespace hgpd::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();
// Throws std::invalid_argument if the backend was not compiled in or the
// CPU lacks the instructions.
void set_backend(Backend b);

// sum_i conj(a_i) * b_i * w_i
cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w);
// sum_i |a_i|^2 * w_i
double weighted_sq_norm(std::span<const cplx> a, std::span<const double> w);
// out_i = a_i * b_i; out may alias a or b.
void pointwise_mul(std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> out);
// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
// max_i |a_i - b_i|
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);
// sum_k a[ia[k]] * b[ib[k]]; ia and ib have equal length. This is the
// convolution inner loop: ia/ib enumerate the factorizations of one arrow.
cplx gather_mul_sum(const cplx* a, std::span<const std::int32_t> ia,
                    const cplx* b, std::span<const std::int32_t> ib);

namespace scalar {
cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w);
double weighted_sq_norm(std::span<const cplx> a, std::span<const double> w);
void pointwise_mul(std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> out);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);
cplx gather_mul_sum(const cplx* a, std::span<const std::int32_t> ia,
                    const cplx* b, std::span<const std::int32_t> ib);
}  // namespace scalar

#if defined(HGPD_HAVE_AVX2)
namespace avx2 {
cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w);
double weighted_sq_norm(std::span<const cplx> a, std::span<const double> w);
void pointwise_mul(std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> out);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);
cplx gather_mul_sum(const cplx* a, std::span<const std::int32_t> ia,
                    const cplx* b, std::span<const std::int32_t> ib);
}  // namespace avx2
#endif

}  // namespace hgpd::kernels
