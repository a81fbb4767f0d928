// Copyright 2026 The ccmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2 kernel variants. Functions carry a target attribute instead of the
// whole file being built with -mavx2, so no AVX2 code can leak into inline
// functions shared with the rest of the library.

#include "ccmix/simd/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define CCMIX_HAVE_AVX2 1
#include <immintrin.h>
#include "log_constants.hpp"
#else
#define CCMIX_HAVE_AVX2 0
#endif

namespace ccmix::simd {

#if CCMIX_HAVE_AVX2

namespace {

using namespace detail;

#define CCMIX_AVX2 __attribute__((target("avx2")))

CCMIX_AVX2 inline __m256d log_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    __m256i hx = _mm256_srli_epi64(bits, 32);
    __m256i k = _mm256_sub_epi64(_mm256_srli_epi64(hx, 20), _mm256_set1_epi64x(1023));
    hx = _mm256_and_si256(hx, _mm256_set1_epi64x(0x000fffff));
    const __m256i i = _mm256_and_si256(_mm256_add_epi64(hx, _mm256_set1_epi64x(kSqrt2Carry)),
                                       _mm256_set1_epi64x(0x100000));
    const __m256i high =
        _mm256_or_si256(hx, _mm256_xor_si256(i, _mm256_set1_epi64x(0x3ff00000)));
    const __m256i mbits = _mm256_or_si256(
        _mm256_slli_epi64(high, 32), _mm256_and_si256(bits, _mm256_set1_epi64x(0xffffffffLL)));
    const __m256d m = _mm256_castsi256_pd(mbits);
    k = _mm256_add_epi64(k, _mm256_srli_epi64(i, 20));

    // int64 -> double for small |k|: 2^52 + 2048 + k has k in its low bits.
    const __m256i kb =
        _mm256_add_epi64(_mm256_add_epi64(k, _mm256_set1_epi64x(2048)),
                         _mm256_castpd_si256(_mm256_set1_pd(0x1.0p52)));
    const __m256d dk =
        _mm256_sub_pd(_mm256_castsi256_pd(kb), _mm256_set1_pd(0x1.0p52 + 2048.0));

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d f = _mm256_sub_pd(m, one);
    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
    const __m256d z = _mm256_mul_pd(s, s);
    const __m256d w = _mm256_mul_pd(z, z);
    const __m256d t1 = _mm256_mul_pd(
        w, _mm256_add_pd(_mm256_set1_pd(kLg2),
                         _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg4),
                                                        _mm256_mul_pd(w, _mm256_set1_pd(kLg6))))));
    const __m256d t2 = _mm256_mul_pd(
        z, _mm256_add_pd(
               _mm256_set1_pd(kLg1),
               _mm256_mul_pd(
                   w, _mm256_add_pd(_mm256_set1_pd(kLg3),
                                    _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg5),
                                                                   _mm256_mul_pd(w, _mm256_set1_pd(kLg7))))))));
    const __m256d r = _mm256_add_pd(t2, t1);

    const __m256d ln2hi = _mm256_set1_pd(kLn2Hi);
    const __m256d ln2lo = _mm256_set1_pd(kLn2Lo);
    const __m256d hfsq = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(0.5), f), f);
    const __m256d wide = _mm256_sub_pd(
        _mm256_mul_pd(dk, ln2hi),
        _mm256_sub_pd(
            _mm256_sub_pd(hfsq, _mm256_add_pd(_mm256_mul_pd(s, _mm256_add_pd(hfsq, r)),
                                              _mm256_mul_pd(dk, ln2lo))),
            f));
    const __m256d narrow = _mm256_sub_pd(
        _mm256_mul_pd(dk, ln2hi),
        _mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(s, _mm256_sub_pd(f, r)), _mm256_mul_pd(dk, ln2lo)),
                      f));

    const __m256i sel = _mm256_or_si256(_mm256_sub_epi64(hx, _mm256_set1_epi64x(kPolyLo)),
                                        _mm256_sub_epi64(_mm256_set1_epi64x(kPolyHi), hx));
    const __m256d use_wide =
        _mm256_castsi256_pd(_mm256_cmpgt_epi64(sel, _mm256_setzero_si256()));
    return _mm256_blendv_pd(narrow, wide, use_wide);
}

CCMIX_AVX2 void affine_avx2(double shift, double scale, const double* in, double* out,
                            std::size_t n) {
    const __m256d vs = _mm256_set1_pd(shift);
    const __m256d vk = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_add_pd(vs, _mm256_mul_pd(vk, _mm256_loadu_pd(in + i))));
    scalar_kernels().affine(shift, scale, in + i, out + i, n - i);
}

CCMIX_AVX2 void min_with_avx2(double cap, const double* in, double* out, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(cap);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(in + i), vc));
    scalar_kernels().min_with(cap, in + i, out + i, n - i);
}

CCMIX_AVX2 void clamp_avx2(double lo, double hi, const double* in, double* out, std::size_t n) {
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vhi = _mm256_set1_pd(hi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_max_pd(_mm256_loadu_pd(in + i), vlo), vhi));
    scalar_kernels().clamp(lo, hi, in + i, out + i, n - i);
}

CCMIX_AVX2 void neg_log1m_avx2(const double* in, double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d y = _mm256_sub_pd(one, _mm256_loadu_pd(in + i));
        _mm256_storeu_pd(out + i, _mm256_xor_pd(log_pd(y), sign));
    }
    scalar_kernels().neg_log1m(in + i, out + i, n - i);
}

CCMIX_AVX2 void increments_avx2(const double* e, const double* rate, double* out, std::size_t n) {
    if (n == 0)
        return;
    // Indices 1..n-1 in blocks of four, processed from the top down so the
    // in-place case never reads an already-overwritten predecessor.
    const std::size_t blocks = (n - 1) / 4;
    const std::size_t tail_begin = 1 + 4 * blocks;
    for (std::size_t i = n; i-- > tail_begin;)
        out[i] = (e[i] - e[i - 1]) / rate[i];
    for (std::size_t b = blocks; b-- > 0;) {
        const std::size_t i = 1 + 4 * b;
        const __m256d cur = _mm256_loadu_pd(e + i);
        const __m256d prev = _mm256_loadu_pd(e + i - 1);
        _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_sub_pd(cur, prev), _mm256_loadu_pd(rate + i)));
    }
    out[0] = (e[0] - 0.0) / rate[0];
}

#undef CCMIX_AVX2

} // namespace

const KernelTable* avx2_kernels() noexcept {
    static const KernelTable table{affine_avx2, min_with_avx2, clamp_avx2, neg_log1m_avx2,
                                   increments_avx2};
    return &table;
}

bool cpu_has_avx2() noexcept { return __builtin_cpu_supports("avx2"); }

#else

const KernelTable* avx2_kernels() noexcept { return nullptr; }
bool cpu_has_avx2() noexcept { return false; }

#endif

} // namespace ccmix::simd
