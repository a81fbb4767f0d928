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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ccmix/analytic.hpp"
#include "ccmix/errors.hpp"
#include "doctest.h"

using namespace ccmix;
using namespace ccmix::analytic;

namespace {

// Closed forms for the first two ordered default times.
double f_tau1(std::size_t n, double a, double t) {
    const double na = static_cast<double>(n) * a;
    return na * std::exp(-na * t);
}

double f_tau2(std::size_t n, double a, double c, double t) {
    const double nd = static_cast<double>(n);
    if (c == 1.0 / (nd - 1.0))
        return (nd * a) * (nd * a) * t * std::exp(-nd * a * t);
    return nd * (nd - 1.0) * (1.0 + c) * a / (1.0 + (1.0 - nd) * c) *
           (-std::exp(-nd * a * t) + std::exp(-(nd - 1.0) * (1.0 + c) * a * t));
}

IntensityParams params(double a, double c) { return {a, c, Decay::none()}; }

// Partial fractions evaluated in 512-bit arithmetic: the cancellation that
// limits the double-precision sum is harmless at this precision.
double mpfr_law(std::size_t k, std::size_t n, double a, double c, double t, bool cdf) {
    const mpfr_prec_t prec = 512;
    mpfr_t sum, alpha, tmp, e, bj, bm;
    mpfr_inits2(prec, sum, alpha, tmp, e, bj, bm, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(sum, 1);
    auto set_beta = [&](mpfr_t out, std::size_t j) {
        mpfr_set_d(out, c, MPFR_RNDN);
        mpfr_mul_ui(out, out, j, MPFR_RNDN);
        mpfr_add_ui(out, out, 1, MPFR_RNDN);
        mpfr_mul_ui(out, out, n - j, MPFR_RNDN);
    };
    for (std::size_t j = 0; j < k; ++j) {
        set_beta(bj, j);
        mpfr_set(alpha, bj, MPFR_RNDN);
        for (std::size_t m = 0; m < k; ++m) {
            if (m == j)
                continue;
            set_beta(bm, m);
            mpfr_sub(tmp, bm, bj, MPFR_RNDN);
            mpfr_div(tmp, bm, tmp, MPFR_RNDN);
            mpfr_mul(alpha, alpha, tmp, MPFR_RNDN);
        }
        mpfr_mul_d(e, bj, -a * t, MPFR_RNDN);
        if (cdf) {
            mpfr_expm1(e, e, MPFR_RNDN);
            mpfr_neg(e, e, MPFR_RNDN);
            mpfr_div(alpha, alpha, bj, MPFR_RNDN);
        } else {
            mpfr_exp(e, e, MPFR_RNDN);
            mpfr_mul_d(alpha, alpha, a, MPFR_RNDN);
        }
        mpfr_mul(alpha, alpha, e, MPFR_RNDN);
        mpfr_add(sum, sum, alpha, MPFR_RNDN);
    }
    const double out = mpfr_get_d(sum, MPFR_RNDN);
    mpfr_clears(sum, alpha, tmp, e, bj, bm, static_cast<mpfr_ptr>(nullptr));
    return out;
}

} // namespace

TEST_CASE("beta values") {
    CHECK(beta(0, 40, 3.0) == 40.0);
    CHECK(beta(1, 40, 3.0) == 156.0);
    CHECK(beta(39, 40, 0.0) == 1.0);
    CHECK_THROWS_AS(beta(40, 40, 0.0), std::out_of_range);
}

TEST_CASE("density examples") {
    CHECK(density_tau_k(1, 0.0, 40, params(0.01, 3.0)) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(cdf_tau_k(1, 0.0, 40, params(0.01, 3.0)) == 0.0);
    CHECK(cdf_tau_k(1, 3.0, 40, params(0.01, 0.0)) ==
          doctest::Approx(1.0 - std::exp(-1.2)).epsilon(1e-13));
    for (double t : {0.0, 1.0, 10.0, 50.0, 200.0})
        CHECK(density_tau_k(2, t, 2, params(0.01, 1.0)) ==
              doctest::Approx(0.02 * 0.02 * t * std::exp(-0.02 * t)).epsilon(1e-9));
}

TEST_CASE("first two densities match the closed forms at random points") {
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<int> un(2, 40);
    std::uniform_real_distribution<double> ua(0.005, 0.05), uc(0.0, 5.0), ut(0.05, 100.0);
    int checked = 0;
    while (checked < 1000) {
        const auto n = static_cast<std::size_t>(un(gen));
        const double a = ua(gen), c = uc(gen), t = ut(gen);
        if (std::fabs(c - 1.0 / (static_cast<double>(n) - 1.0)) < 1e-3)
            continue;
        const double f1 = density_tau_k(1, t, n, params(a, c));
        const double f2 = density_tau_k(2, t, n, params(a, c));
        REQUIRE(f1 == doctest::Approx(f_tau1(n, a, t)).epsilon(1e-10));
        REQUIRE(f2 == doctest::Approx(f_tau2(n, a, c, t)).epsilon(1e-10));
        ++checked;
    }
}

TEST_CASE("degenerate contagion c = 1/(n-1) uses the collision route") {
    const IntensityParams p = params(0.01, 1.0 / 39.0);
    const OrderedDefaultLaw law(2, 40, p);
    CHECK(law.route() == Route::MatrixExponential);
    for (double t : {0.5, 1.0, 3.0, 10.0})
        CHECK(law.density(t) == doctest::Approx(f_tau2(40, 0.01, 1.0 / 39.0, t)).epsilon(1e-9));
}

TEST_CASE("density is continuous across the collision") {
    const double c0 = 1.0 / 39.0;
    for (double t : {1.0, 5.0, 20.0}) {
        const double mid = density_tau_k(2, t, 40, params(0.01, c0));
        for (double eps : {-1e-6, 1e-6})
            CHECK(density_tau_k(2, t, 40, params(0.01, c0 + eps)) ==
                  doctest::Approx(mid).epsilon(1e-4));
    }
}

TEST_CASE("cdf normalization, monotonicity and stochastic ordering") {
    for (double c : {0.0, 0.3, 3.0}) {
        for (std::size_t n : {2u, 5u, 10u, 40u}) {
            for (std::size_t k = 1; k <= n; ++k) {
                CAPTURE(c);
                CAPTURE(n);
                CAPTURE(k);
                const OrderedDefaultLaw law(k, n, params(0.01, c));
                CHECK(law.cdf(0.0) == 0.0);
                CHECK(law.cdf(1e6) == doctest::Approx(1.0).epsilon(1e-8));
                double prev = 0.0;
                for (double t = 0.0; t <= 2000.0; t += 25.0) {
                    const double F = law.cdf(t);
                    CHECK(F >= prev - 1e-12);
                    CHECK(law.density(t) >= -1e-12);
                    prev = F;
                }
                if (k > 1) {
                    const OrderedDefaultLaw earlier(k - 1, n, params(0.01, c));
                    for (double t : {10.0, 100.0, 500.0})
                        CHECK(earlier.cdf(t) >= law.cdf(t) - 1e-12);
                }
            }
        }
    }
}

TEST_CASE("density and cdf match a high-precision evaluation") {
    for (double c : {0.0, 0.3, 3.0}) {
        for (std::size_t n : {10u, 40u}) {
            for (std::size_t k = 1; k <= n; ++k) {
                const OrderedDefaultLaw law(k, n, params(0.02, c));
                for (double t : {0.01, 0.1, 0.5, 2.0, 5.0, 20.0, 80.0, 300.0}) {
                    CAPTURE(c);
                    CAPTURE(n);
                    CAPTURE(k);
                    CAPTURE(t);
                    const double f = mpfr_law(k, n, 0.02, c, t, false);
                    const double F = mpfr_law(k, n, 0.02, c, t, true);
                    // Relative accuracy wherever the value is not negligible.
                    CHECK(law.density(t) == doctest::Approx(f).epsilon(1e-8).scale(1e-4));
                    CHECK(law.cdf(t) == doctest::Approx(F).epsilon(1e-8).scale(1e-4));
                    CHECK(1.0 - law.cdf(t) ==
                          doctest::Approx(1.0 - F).epsilon(1e-8).scale(1e-4));
                }
            }
        }
    }
}

TEST_CASE("partial fractions agree with the matrix route where well conditioned") {
    for (double c : {0.0, 0.3, 3.0}) {
        for (std::size_t k : {1u, 2u, 3u}) {
            const OrderedDefaultLaw law(k, 10, params(0.02, c));
            REQUIRE(law.route() == Route::PartialFractions);
            for (double t : {0.5, 5.0, 20.0, 80.0}) {
                CHECK(law.cdf(t) == doctest::Approx(law.cdf_matrix(t)).epsilon(1e-10));
                CHECK(law.density(t) == doctest::Approx(law.density_matrix(t)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("trapezoid integral of the density matches the cdf") {
    const OrderedDefaultLaw law(5, 40, params(0.01, 3.0));
    const double h = 0.01;
    double integral = 0.0;
    for (double t = 0.0; t < 30.0 - 1e-9; t += h)
        integral += 0.5 * h * (law.density(t) + law.density(t + h));
    CHECK(integral == doctest::Approx(law.cdf(30.0)).epsilon(1e-5));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(OrderedDefaultLaw(0, 5, params(0.01, 0.0)), std::out_of_range);
    CHECK_THROWS_AS(OrderedDefaultLaw(6, 5, params(0.01, 0.0)), std::out_of_range);
    CHECK_THROWS_AS(OrderedDefaultLaw(1, 5, IntensityParams{0.01, 1.0, Decay::finite(1.0)}),
                    UnsupportedModel);
    CHECK_THROWS_AS(OrderedDefaultLaw(1, 5, params(-0.01, 0.0)), ConfigError);
}
