#pragma once

// Upper bounds on the decoding-failure probability of the interleaved decoders in
// the probabilistic regime. tau_eff is the plain error weight for error-only
// decoding, or the effective weight t_F + s/(s+1) (t_C + mean t_R per component)
// (vertical) resp. t_F + s/(s+1) (t_R + mean rho) (horizontal) with erasures.

#include <cmath>
#include <cstdio>
#include <string>

#include "sumrank/field.hpp"

namespace sumrank {
namespace bounds {

inline double radius_max(int s, int n, int k) {
    return static_cast<double>(s) / (s + 1) * (n - k);
}

inline double standard(std::uint64_t q, int m, int ell, int s, int n, int k, double tau_eff) {
    double tmax = radius_max(s, n, k);
    require(tau_eff <= tmax + 1e-12, Err::RadiusExceeded, "effective weight beyond the decoding radius");
    double kq = kappa(q, 100);
    return std::pow(kq, ell + 1) *
           std::pow(static_cast<double>(q), -static_cast<double>(m) * ((s + 1) * (tmax - tau_eff) + 1.0));
}

inline double improved(std::uint64_t q, int m, int ell, int s, int n, int k, double tau_eff) {
    double tmax = radius_max(s, n, k);
    require(tau_eff <= tmax + 1e-12, Err::RadiusExceeded, "effective weight beyond the decoding radius");
    double kq = kappa(q, 100);
    double kqm = kappa(static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(q), m))), 100);
    return kqm * std::pow(kq, ell) *
           std::pow(static_cast<double>(q), -static_cast<double>(m) * ((s + 1) * (tmax - tau_eff) + 1.0));
}

// Bounds are displayed rounded up at three significant figures, as befits an
// upper bound (x.xxe-yy).
inline std::string format_upper(double v) {
    if (v <= 0.0) return "0.000e+00";
    int e = static_cast<int>(std::floor(std::log10(v)));
    double mant = v / std::pow(10.0, e - 3);
    long m4 = static_cast<long>(std::ceil(mant - 1e-9));
    if (m4 >= 10000) {
        m4 = 1000;
        ++e;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3fe%+03d", static_cast<double>(m4) / 1000.0, e);
    return buf;
}

}  // namespace bounds
}  // namespace sumrank
