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


#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "ccmix/rng.hpp"
#include "ccmix/simd/kernels.hpp"
#include "doctest.h"

using namespace ccmix;
using namespace ccmix::simd;

namespace {

std::int64_t ulp_distance(double a, double b) {
    auto key = [](double x) {
        const auto i = std::bit_cast<std::int64_t>(x);
        return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
    };
    const std::int64_t d = key(a) - key(b);
    return d < 0 ? -d : d;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i]))
            return false;
    return true;
}

std::vector<double> random_unit(std::size_t n, std::uint64_t seed) {
    Xoshiro256pp eng(seed);
    std::vector<double> v(n);
    for (auto& x : v)
        x = open_uniform(eng);
    return v;
}

const std::vector<std::size_t> kLengths{0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 40, 41, 1000};

} // namespace

TEST_CASE("log_ref is within one ulp of std::log") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> expo(-700.0, 700.0);
    for (int i = 0; i < 200000; ++i) {
        const double x = std::exp(expo(gen));
        REQUIRE(ulp_distance(log_ref(x), std::log(x)) <= 1);
    }
    // Domain is positive normal doubles.
    for (double x : {1.0, 2.0, 0.5, 1e-300, 1e300, 1.0 + 1e-15, 1.0 - 1e-16, 1e-15,
                     std::numeric_limits<double>::min(), std::numeric_limits<double>::max()})
        CHECK(ulp_distance(log_ref(x), std::log(x)) <= 1);
    CHECK(log_ref(1.0) == 0.0);
}

TEST_CASE("scalar kernels compute their definitions") {
    const auto& k = scalar_kernels();
    std::vector<double> in{0.1, 0.5, 0.9, 1e-15, 1.0 - 1e-15};
    std::vector<double> out(in.size());

    k.affine(1.0, 2.0, in.data(), out.data(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        CHECK(out[i] == 1.0 + 2.0 * in[i]);

    k.min_with(0.5, in.data(), out.data(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        CHECK(out[i] == std::min(0.5, in[i]));

    k.clamp(0.2, 0.8, in.data(), out.data(), in.size());
    CHECK(out == std::vector<double>{0.2, 0.5, 0.8, 0.2, 0.8});

    k.neg_log1m(in.data(), out.data(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        CHECK(out[i] == doctest::Approx(-std::log1p(-in[i])).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    const std::vector<double> e{0.5, 1.0, 1.5};
    const std::vector<double> rate{0.01, 0.04, 0.07};
    k.increments(e.data(), rate.data(), out.data(), 3);
    CHECK(out[0] == 0.5 / 0.01);
    CHECK(out[1] == 0.5 / 0.04);
    CHECK(out[2] == 0.5 / 0.07);
}

TEST_CASE("AVX2 kernels are bit-identical to scalar kernels") {
    const KernelTable* avx = avx2_kernels();
    if (avx == nullptr) {
        MESSAGE("AVX2 not available on this CPU; equivalence test skipped");
        return;
    }
    const auto& sc = scalar_kernels();
    std::uint64_t seed = 100;
    for (std::size_t n : kLengths) {
        CAPTURE(n);
        const auto in = random_unit(n, ++seed);
        std::vector<double> a(n), b(n);

        sc.affine(-0.3, 1.7, in.data(), a.data(), n);
        avx->affine(-0.3, 1.7, in.data(), b.data(), n);
        CHECK(bits_equal(a, b));

        sc.min_with(0.42, in.data(), a.data(), n);
        avx->min_with(0.42, in.data(), b.data(), n);
        CHECK(bits_equal(a, b));

        sc.clamp(0.25, 0.75, in.data(), a.data(), n);
        avx->clamp(0.25, 0.75, in.data(), b.data(), n);
        CHECK(bits_equal(a, b));

        sc.neg_log1m(in.data(), a.data(), n);
        avx->neg_log1m(in.data(), b.data(), n);
        CHECK(bits_equal(a, b));

        auto e = in;
        std::sort(e.begin(), e.end());
        std::vector<double> rate(n);
        for (std::size_t i = 0; i < n; ++i)
            rate[i] = 0.01 * (1.0 + 0.3 * static_cast<double>(i));
        sc.increments(e.data(), rate.data(), a.data(), n);
        avx->increments(e.data(), rate.data(), b.data(), n);
        CHECK(bits_equal(a, b));

        // In place: out aliases e.
        auto ea = e, eb = e;
        sc.increments(ea.data(), rate.data(), ea.data(), n);
        avx->increments(eb.data(), rate.data(), eb.data(), n);
        CHECK(bits_equal(ea, a));
        CHECK(bits_equal(eb, a));
        auto ia = in, ib = in;
        sc.neg_log1m(ia.data(), ia.data(), n);
        avx->neg_log1m(ib.data(), ib.data(), n);
        CHECK(bits_equal(ia, ib));
    }
}

TEST_CASE("neg_log1m edge inputs agree across ISAs") {
    const KernelTable* avx = avx2_kernels();
    if (avx == nullptr)
        return;
    std::vector<double> in{1e-15, 1.0 - 1e-15, 0.5, 0.25, 0.75, 1e-300,
                           std::numeric_limits<double>::denorm_min(), 0.999999, 1e-8, 0.1};
    std::vector<double> a(in.size()), b(in.size());
    scalar_kernels().neg_log1m(in.data(), a.data(), in.size());
    avx->neg_log1m(in.data(), b.data(), in.size());
    CHECK(bits_equal(a, b));
    for (std::size_t i = 0; i < in.size(); ++i)
        CHECK(ulp_distance(a[i], -std::log(1.0 - in[i])) <= 1);
}

TEST_CASE("dispatch selects and restores the active table") {
    const Isa before = active_isa();
    set_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    CHECK(isa_name(Isa::Scalar) == "scalar");
    if (avx2_kernels() != nullptr) {
        set_isa(Isa::Avx2);
        CHECK(active_isa() == Isa::Avx2);
        CHECK(isa_name(Isa::Avx2) == "avx2");
    } else {
        CHECK_THROWS(set_isa(Isa::Avx2));
    }
    set_isa(before);
}

TEST_CASE("span wrappers check sizes") {
    std::vector<double> in(4, 0.5), out(3);
    CHECK_THROWS(neg_log1m(in, out));
    CHECK_THROWS(affine(0.0, 1.0, in, out));
}

TEST_CASE("xoshiro256++ streams") {
    Xoshiro256pp a(42), b(42), c(43);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a() == b());

    // jump() equals 2^128 steps; check the jumped stream does not overlap the
    // first million outputs of the original.
    Xoshiro256pp base(7), jumped(7);
    jumped.jump();
    std::vector<std::uint64_t> head(1 << 16);
    for (auto& x : head)
        x = base();
    std::sort(head.begin(), head.end());
    int hits = 0;
    for (int i = 0; i < (1 << 16); ++i)
        hits += std::binary_search(head.begin(), head.end(), jumped()) ? 1 : 0;
    CHECK(hits == 0);

    // SplitMix64 reference output for seed 0.
    SplitMix64 sm(0);
    CHECK(sm() == 0xe220a8397b1dcdafULL);
}

TEST_CASE("open_uniform lies strictly inside (0,1) and is centred") {
    Xoshiro256pp eng(5);
    double sum = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) {
        const double u = open_uniform(eng);
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // se of the mean is 1/sqrt(12 n)
    CHECK(std::fabs(sum / n - 0.5) < 5.0 / std::sqrt(12.0 * n));

    struct Fixed {
        std::uint64_t v;
        std::uint64_t operator()() { return v; }
    };
    Fixed lo{0}, hi{~std::uint64_t{0}};
    CHECK(open_uniform(lo) == 0x1.0p-54);
    CHECK(open_uniform(hi) == 1.0 - 0x1.0p-54);
}
