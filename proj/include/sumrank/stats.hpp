#pragma once

// Small numerics for the simulation harness: regularized incomplete gamma and
// beta functions, chi-square survival, and exact (Clopper-Pearson) binomial
// confidence intervals.

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>

#include "sumrank/errors.hpp"

namespace sumrank {
namespace stats {

namespace detail {

inline double gamma_p_series(double a, double x) {
    double sum = 1.0 / a, term = sum;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

inline double betacf(double a, double b, double x) {
    const double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h;
}

}  // namespace detail

// regularized lower incomplete gamma P(a, x)
inline double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_contfrac(a, x);
}

// survival function of the chi-square distribution with df degrees of freedom
inline double chi2_sf(double x, double df) { return 1.0 - gamma_p(df / 2.0, x / 2.0); }

// regularized incomplete beta I_x(a, b)
inline double beta_inc(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::betacf(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) + b * std::log1p(-x) + a * std::log(x)) *
                     detail::betacf(b, a, 1.0 - x) / b;
}

// quantile of the Beta(a, b) distribution by bisection
inline double beta_quantile(double p, double a, double b) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (beta_inc(a, b, mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// exact two-sided binomial confidence interval
inline std::pair<double, double> clopper_pearson(std::uint64_t failures, std::uint64_t trials,
                                                 double alpha = 0.05) {
    require(trials >= 1 && failures <= trials, Err::BadDimension, "interval needs failures <= trials");
    double f = static_cast<double>(failures), n = static_cast<double>(trials);
    double lo = failures == 0 ? 0.0 : beta_quantile(alpha / 2.0, f, n - f + 1.0);
    double hi = failures == trials ? 1.0 : beta_quantile(1.0 - alpha / 2.0, f + 1.0, n - f);
    return {lo, hi};
}

// chi-square goodness-of-fit p-value for observed counts against expected counts
inline double chi2_gof_pvalue(std::span<const double> observed, std::span<const double> expected) {
    require(observed.size() == expected.size() && observed.size() >= 2, Err::BadDimension, "chi2 shape");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        require(expected[i] > 0.0, Err::BadDimension, "chi2 expected counts must be positive");
        double dlt = observed[i] - expected[i];
        stat += dlt * dlt / expected[i];
    }
    return chi2_sf(stat, static_cast<double>(observed.size() - 1));
}

}  // namespace stats
}  // namespace sumrank
