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

#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's solvers, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace ccmix::oracle {

/// Intensity of a surviving name at time s given earlier defaults `tau`
/// (entries with tau_i < s contribute).
inline double intensity(double a, double c, double d, const std::vector<double>& tau,
                        std::size_t known, double s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < known; ++i)
        if (tau[i] < s)
            sum += (d == 0.0) ? 1.0 : std::exp(-d * (s - tau[i]));
    return a * (1.0 + c * sum);
}

/// F_k(t) written as the full sum over previous defaults.
inline double cumulative_hazard(double a, double c, double d, const std::vector<double>& tau,
                                std::size_t k_minus_1, double t) {
    double h = a * t;
    for (std::size_t i = 0; i < k_minus_1; ++i) {
        const double dt = t - tau[i];
        if (dt <= 0.0)
            continue;
        h += (d == 0.0) ? a * c * dt : a * c / d * (1.0 - std::exp(-d * dt));
    }
    return h;
}

/// Ordered default times by plain bisection on the full-sum hazard.
inline std::vector<double> bisection_default_times(double a, double c, double d,
                                                   const std::vector<double>& e_star) {
    std::vector<double> tau(e_star.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < e_star.size(); ++k) {
        double lo = prev;
        double hi = prev + 1.0;
        while (cumulative_hazard(a, c, d, tau, k, hi) < e_star[k])
            hi = prev + 2.0 * (hi - prev);
        for (int it = 0; it < 300; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            (cumulative_hazard(a, c, d, tau, k, mid) < e_star[k] ? lo : hi) = mid;
        }
        tau[k] = 0.5 * (lo + hi);
        prev = tau[k];
    }
    return tau;
}

/// Adaptive Simpson over [0, t] with breakpoints at prior defaults, so each
/// piece integrates a smooth function.
inline double simpson_hazard(double a, double c, double d, const std::vector<double>& tau,
                             std::size_t k_minus_1, double t, double tol = 1e-13) {
    std::vector<double> knots{0.0};
    for (std::size_t i = 0; i < k_minus_1; ++i)
        if (tau[i] > knots.back() && tau[i] < t)
            knots.push_back(tau[i]);
    knots.push_back(t);
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
        const double x0 = knots[s];
        const double x1 = knots[s + 1];
        // Sample just inside the segment so the left end sees the post-jump
        // intensity.
        auto f = [&](double x) {
            return intensity(a, c, d, tau, k_minus_1,
                             std::clamp(x, std::nextafter(x0, x1), x1));
        };
        auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
            return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        };
        auto recurse = [&](auto&& self, double lo, double hi, double flo, double fmid,
                           double fhi, double whole, double eps, int depth) -> double {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
            const double flm = f(lm), frm = f(rm);
            const double left = simpson(lo, mid, flo, flm, fmid);
            const double right = simpson(mid, hi, fmid, frm, fhi);
            if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
                return left + right + (left + right - whole) / 15.0;
            return self(self, lo, mid, flo, flm, fmid, left, 0.5 * eps, depth - 1) +
                   self(self, mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth - 1);
        };
        const double f0 = f(x0), fm = f(0.5 * (x0 + x1)), f1 = f(x1);
        total += recurse(recurse, x0, x1, f0, fm, f1, simpson(x0, x1, f0, fm, f1), tol, 40);
    }
    return total;
}

/// Total hazard construction by explicit argmin over surviving names, from
/// *unsorted* thresholds. Each survivor's hitting time is found by bisection.
inline std::vector<double> argmin_default_times(double a, double c, double d,
                                                const std::vector<double>& thresholds) {
    const std::size_t n = thresholds.size();
    std::vector<bool> alive(n, true);
    std::vector<double> tau;
    for (std::size_t k = 0; k < n; ++k) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t who = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (!alive[j])
                continue;
            double lo = tau.empty() ? 0.0 : tau.back();
            double hi = lo + 1.0;
            if (cumulative_hazard(a, c, d, tau, tau.size(), lo) >= thresholds[j]) {
                hi = lo;
            } else {
                while (cumulative_hazard(a, c, d, tau, tau.size(), hi) < thresholds[j])
                    hi = lo + 2.0 * (hi - lo);
                for (int it = 0; it < 300; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi)
                        break;
                    (cumulative_hazard(a, c, d, tau, tau.size(), mid) < thresholds[j] ? lo : hi) =
                        mid;
                }
            }
            if (hi < best) {
                best = hi;
                who = j;
            }
        }
        alive[who] = false;
        tau.push_back(best);
    }
    return tau;
}

/// Kolmogorov-Smirnov distance of a sample to Uniform(0,1).
inline double ks_uniform(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        d = std::max(d, static_cast<double>(i + 1) / n - xs[i]);
        d = std::max(d, xs[i] - static_cast<double>(i) / n);
    }
    return d;
}

/// Asymptotic 1% critical value of the KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

/// Dvoretzky-Kiefer-Wolfowitz band half-width at level alpha.
inline double dkw_band(std::size_t n, double alpha) {
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

/// Sup distance between the empirical CDF of `sample` and `cdf`.
template <class Cdf>
double ecdf_distance(std::vector<double> sample, Cdf&& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

/// Literal transcription of the kth-to-default legs with counterparty
/// indicators, for cross-checking the pricer.
struct Legs {
    double contingent;
    double fee;
};

inline Legs cds_legs_literal(double tau_k, double tau_b, double recovery, double r,
                             const std::vector<double>& dates) {
    auto B = [&](double t) { return std::exp(-r * t); };
    const double T = dates.back();
    Legs out{0.0, 0.0};
    out.contingent = (1.0 - recovery) * B(tau_k) * ((tau_k <= T && tau_b >= tau_k) ? 1.0 : 0.0);
    double prev = 0.0;
    for (double t : dates) {
        out.fee += (t - prev) * B(t) * ((tau_k > t && tau_b > t) ? 1.0 : 0.0);
        out.fee += (tau_k - prev) * B(tau_k) *
                   ((prev < tau_k && tau_k <= t && tau_b > tau_k) ? 1.0 : 0.0);
        prev = t;
    }
    return out;
}

} // namespace ccmix::oracle
