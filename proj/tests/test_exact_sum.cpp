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


#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ccmix/exact_sum.hpp"
#include "doctest.h"

using ccmix::ExactSum;

namespace {

// Exact reference: 2200-bit MPFR accumulator covers the whole double range
// (2^-1074 .. 2^1024) with room for carries, so every addition is exact.
double mpfr_sum(const std::vector<double>& xs) {
    mpfr_t acc;
    mpfr_init2(acc, 2200);
    mpfr_set_d(acc, 0.0, MPFR_RNDN);
    for (double x : xs)
        mpfr_add_d(acc, acc, x, MPFR_RNDN);
    const double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clear(acc);
    return out;
}

std::vector<double> wild_values(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-60, 60);
    std::vector<double> xs(n);
    for (auto& x : xs)
        x = std::ldexp(mant(gen), expo(gen));
    return xs;
}

ExactSum sum_of(const std::vector<double>& xs) {
    ExactSum s;
    for (double x : xs)
        s.add(x);
    return s;
}

} // namespace

TEST_CASE("empty and trivial sums") {
    ExactSum s;
    CHECK(s.value() == 0.0);
    s.add(1.5);
    CHECK(s.value() == 1.5);
    s.add(-1.5);
    CHECK(s.value() == 0.0);
    CHECK(s == ExactSum{});
}

TEST_CASE("catastrophic cancellation is exact") {
    ExactSum s;
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 1.0);

    ExactSum t;
    t.add(std::numeric_limits<double>::max());
    t.add(std::numeric_limits<double>::denorm_min());
    t.add(-std::numeric_limits<double>::max());
    CHECK(t.value() == std::numeric_limits<double>::denorm_min());
}

TEST_CASE("matches an exact MPFR reference and is order independent") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto xs = wild_values(5000, seed);
        const double ref = mpfr_sum(xs);
        const ExactSum a = sum_of(xs);
        CHECK(a.value() == ref);
        std::shuffle(xs.begin(), xs.end(), std::mt19937_64(seed + 1000));
        const ExactSum b = sum_of(xs);
        CHECK(a == b);
        CHECK(b.value() == ref);
    }
}

TEST_CASE("squares of path values, as used by the moment accumulators") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    std::vector<double> xs(200000);
    for (auto& x : xs) {
        const double v = u(gen);
        x = v * v;
    }
    CHECK(sum_of(xs).value() == mpfr_sum(xs));
}

TEST_CASE("merge equals sequential accumulation exactly") {
    const auto xs = wild_values(10000, 77);
    const ExactSum whole = sum_of(xs);
    for (std::size_t cut : {std::size_t{0}, std::size_t{1}, std::size_t{4999}, xs.size()}) {
        ExactSum left, right;
        for (std::size_t i = 0; i < xs.size(); ++i)
            (i < cut ? left : right).add(xs[i]);
        left.merge(right);
        CHECK(left == whole);
        CHECK(left.value() == whole.value());
    }
    // Many partials merged in arbitrary order.
    std::vector<ExactSum> parts(37);
    for (std::size_t i = 0; i < xs.size(); ++i)
        parts[(i * 7919) % parts.size()].add(xs[i]);
    ExactSum folded;
    for (std::size_t i = parts.size(); i-- > 0;)
        folded.merge(parts[i]);
    CHECK(folded == whole);
}

TEST_CASE("extreme magnitudes and subnormals") {
    std::vector<double> xs{std::numeric_limits<double>::max(), -std::numeric_limits<double>::max(),
                           0x1.0p-1074, 0x1.0p-1074, 0x1.0p-1022, -0x1.0p-1060, 1e308, 1e-308};
    CHECK(sum_of(xs).value() == mpfr_sum(xs));
}

TEST_CASE("rounding of the final value is nearest") {
    // 1 + 2^-53 + 2^-80 must round up to 1 + 2^-52.
    ExactSum s;
    s.add(1.0);
    s.add(0x1.0p-53);
    s.add(0x1.0p-80);
    CHECK(s.value() == 1.0 + 0x1.0p-52);
    CHECK(s.value() == mpfr_sum({1.0, 0x1.0p-53, 0x1.0p-80}));
}
