#pragma once

// The skew-polynomial ring F_{q^m}[x; sigma] for sigma = theta or theta^{-1}:
// multiplication under x c = sigma(c) x, left/right Euclidean division, gcrd and
// lclm, skew reverses, generalized operator evaluation, Moore matrices and
// minimal skew polynomials. Coefficients are stored from degree zero upward.

#include <cstdint>
#include <utility>
#include <vector>

#include "sumrank/field.hpp"
#include "sumrank/linalg.hpp"

namespace sumrank {

struct SkewPoly {
    std::vector<Fe> c;  // c[i] multiplies x^i; invariant: trimmed (c.back() != 0 unless zero poly)
    Twist twist = Twist::theta;

    bool is_zero() const { return c.size() == 1 && c[0].v == 0; }
    int deg() const { return is_zero() ? -1 : static_cast<int>(c.size()) - 1; }
    Fe coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(i)] : Fe{0, c[0].layer}; }
    friend bool operator==(const SkewPoly& f, const SkewPoly& g) { return f.twist == g.twist && f.c == g.c; }
};

// per-block evaluation parameters (one entry per block of the length partition)
struct EvalParams {
    std::vector<Fe> xi;
};

namespace skew {

inline SkewPoly make(const FieldTower& T, std::vector<Fe> coeffs, Twist tw) {
    if (coeffs.empty()) coeffs.push_back(T.zero());
    while (coeffs.size() > 1 && coeffs.back().v == 0) coeffs.pop_back();
    return SkewPoly{std::move(coeffs), tw};
}

inline SkewPoly zero(const FieldTower& T, Twist tw) { return SkewPoly{{T.zero()}, tw}; }
inline SkewPoly one(const FieldTower& T, Twist tw) { return SkewPoly{{T.one()}, tw}; }
inline SkewPoly monomial(const FieldTower& T, Fe lead, int degree, Twist tw) {
    std::vector<Fe> c(static_cast<std::size_t>(degree) + 1, T.zero());
    c.back() = lead;
    return make(T, std::move(c), tw);
}

inline void check_twist(const SkewPoly& f, const SkewPoly& g) {
    require(f.twist == g.twist, Err::TwistMismatch, "operands live in different skew rings");
}

inline SkewPoly add(const FieldTower& T, const SkewPoly& f, const SkewPoly& g) {
    check_twist(f, g);
    std::vector<Fe> c(std::max(f.c.size(), g.c.size()), T.zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = T.add(f.coeff(static_cast<int>(i)), g.coeff(static_cast<int>(i)));
    return make(T, std::move(c), f.twist);
}

inline SkewPoly scale(const FieldTower& T, Fe a, const SkewPoly& f) {
    std::vector<Fe> c(f.c);
    for (auto& x : c) x = T.mul(a, x);
    return make(T, std::move(c), f.twist);
}

// product under x c = sigma(c) x
inline SkewPoly mul(const FieldTower& T, const SkewPoly& f, const SkewPoly& g) {
    check_twist(f, g);
    if (f.is_zero() || g.is_zero()) return zero(T, f.twist);
    std::vector<Fe> c(f.c.size() + g.c.size() - 1, T.zero());
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i].v == 0) continue;
        for (std::size_t j = 0; j < g.c.size(); ++j) {
            if (g.c[j].v == 0) continue;
            c[i + j] = T.add(c[i + j], T.mul(f.c[i], T.sigma(f.twist, g.c[j], static_cast<std::int64_t>(i))));
        }
    }
    return make(T, std::move(c), f.twist);
}

// f = q g + r with deg r < deg g
inline std::pair<SkewPoly, SkewPoly> right_divmod(const FieldTower& T, const SkewPoly& f, const SkewPoly& g) {
    check_twist(f, g);
    require(!g.is_zero(), Err::DivisionByZeroPolynomial, "right division by zero");
    int dg = g.deg();
    SkewPoly r = f;
    std::vector<Fe> q(static_cast<std::size_t>(std::max(0, f.deg() - dg + 1)), T.zero());
    while (r.deg() >= dg) {
        int d = r.deg();
        Fe c = T.mul(r.c.back(), T.inv(T.sigma(f.twist, g.c.back(), d - dg)));
        q[static_cast<std::size_t>(d - dg)] = c;
        for (int j = 0; j <= dg; ++j) {
            Fe t = T.mul(c, T.sigma(f.twist, g.coeff(j), d - dg));
            r.c[static_cast<std::size_t>(d - dg + j)] = T.sub(r.c[static_cast<std::size_t>(d - dg + j)], t);
        }
        while (r.c.size() > 1 && r.c.back().v == 0) r.c.pop_back();
    }
    return {make(T, std::move(q), f.twist), r};
}

// f = g q + r with deg r < deg g
inline std::pair<SkewPoly, SkewPoly> left_divmod(const FieldTower& T, const SkewPoly& f, const SkewPoly& g) {
    check_twist(f, g);
    require(!g.is_zero(), Err::DivisionByZeroPolynomial, "left division by zero");
    int dg = g.deg();
    SkewPoly r = f;
    std::vector<Fe> q(static_cast<std::size_t>(std::max(0, f.deg() - dg + 1)), T.zero());
    while (r.deg() >= dg) {
        int d = r.deg();
        Fe c = T.sigma(f.twist, T.mul(T.inv(g.c.back()), r.c.back()), -dg);
        q[static_cast<std::size_t>(d - dg)] = c;
        for (int j = 0; j <= dg; ++j) {
            Fe t = T.mul(g.coeff(j), T.sigma(f.twist, c, j));
            r.c[static_cast<std::size_t>(d - dg + j)] = T.sub(r.c[static_cast<std::size_t>(d - dg + j)], t);
        }
        while (r.c.size() > 1 && r.c.back().v == 0) r.c.pop_back();
    }
    return {make(T, std::move(q), f.twist), r};
}

inline SkewPoly monic(const FieldTower& T, const SkewPoly& f) {
    if (f.is_zero()) return f;
    return scale(T, T.inv(f.c.back()), f);
}

inline SkewPoly gcrd(const FieldTower& T, SkewPoly f, SkewPoly g) {
    check_twist(f, g);
    require(!(f.is_zero() && g.is_zero()), Err::BothZero, "gcrd(0, 0) undefined");
    while (!g.is_zero()) {
        SkewPoly r = right_divmod(T, f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return monic(T, f);
}

// least common left multiple via the extended right Euclidean scheme
inline SkewPoly lclm(const FieldTower& T, const SkewPoly& f, const SkewPoly& g) {
    check_twist(f, g);
    require(!f.is_zero() && !g.is_zero(), Err::ZeroOperand, "lclm of zero");
    SkewPoly r0 = f, r1 = g;
    SkewPoly u0 = one(T, f.twist), u1 = zero(T, f.twist);
    while (!r1.is_zero()) {
        auto [q, r2] = right_divmod(T, r0, r1);
        SkewPoly u2 = add(T, u0, scale(T, T.neg(T.one()), mul(T, q, u1)));
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // u1 f = -v1 g is the least common left multiple
    return monic(T, mul(T, u1, f));
}

// skew sigma-reverse w.r.t. t >= deg f: rev[i] = sigma^{i-t-1}(f_{t-i+2}) (1-indexed)
inline SkewPoly reverse(const FieldTower& T, const SkewPoly& f, int t) {
    require(t >= f.deg(), Err::TooSmallT, "reverse needs t >= deg f");
    if (f.is_zero()) return zero(T, f.twist);
    std::vector<Fe> c(static_cast<std::size_t>(t) + 1, T.zero());
    for (int j = 0; j <= t; ++j) c[static_cast<std::size_t>(j)] = T.sigma(f.twist, f.coeff(t - j), j - t);
    return make(T, std::move(c), f.twist);
}

// apply theta^k to every coefficient
inline SkewPoly coeff_map(const FieldTower& T, const SkewPoly& f, int k) {
    std::vector<Fe> c(f.c);
    for (auto& x : c) x = T.theta(x, k);
    return make(T, std::move(c), f.twist);
}

// D_a(b) = sigma(b) a and its powers
inline Fe op_apply(const FieldTower& T, Twist tw, Fe b, Fe a) { return T.mul(T.sigma(tw, b), a); }

inline Fe op_pow(const FieldTower& T, Twist tw, Fe b, Fe a, int e) {
    Fe r = b;
    for (int i = 0; i < e; ++i) r = op_apply(T, tw, r, a);
    return r;
}

// generalized operator evaluation of f at b with parameter a
inline Fe op_eval(const FieldTower& T, const SkewPoly& f, Fe b, Fe a) {
    Fe acc = T.zero(b.layer);
    Fe cur = b;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i].v != 0) acc = T.add(acc, T.mul(f.c[i], cur));
        if (i + 1 < f.c.size()) cur = op_apply(T, f.twist, cur, a);
    }
    return acc;
}

// expand per-block parameters to one parameter per entry
inline std::vector<Fe> expand_params(const EvalParams& par, std::span<const int> blocks) {
    require(par.xi.size() == blocks.size(), Err::BlockCountMismatch, "one parameter per block");
    std::vector<Fe> out;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (int j = 0; j < blocks[i]; ++j) out.push_back(par.xi[i]);
    return out;
}

// blockwise evaluation of f at all entries of b
inline std::vector<Fe> op_eval_vec(const FieldTower& T, const SkewPoly& f, std::span<const Fe> b,
                                   std::span<const Fe> params_per_entry) {
    require(b.size() == params_per_entry.size(), Err::BlockCountMismatch, "per-entry parameters");
    std::vector<Fe> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = op_eval(T, f, b[i], params_per_entry[i]);
    return out;
}

// generalized Moore matrix: row l is D^{l-1} applied elementwise
inline Mat moore(const FieldTower& T, Twist tw, int d, std::span<const Fe> b, std::span<const Fe> params_per_entry) {
    require(d >= 1, Err::BadDimension, "moore needs d >= 1");
    require(b.size() == params_per_entry.size(), Err::BlockCountMismatch, "per-entry parameters");
    Mat M(d, static_cast<int>(b.size()), b.empty() ? Layer::qm : b[0].layer);
    std::vector<Fe> cur(b.begin(), b.end());
    for (int l = 0; l < d; ++l) {
        for (std::size_t j = 0; j < cur.size(); ++j) M.at(l, static_cast<int>(j)) = cur[j];
        if (l + 1 < d)
            for (std::size_t j = 0; j < cur.size(); ++j) cur[j] = op_apply(T, tw, cur[j], params_per_entry[j]);
    }
    return M;
}

// stacked Moore matrix of each row of B
inline Mat moore_rows(const FieldTower& T, Twist tw, int d, const Mat& B, std::span<const Fe> params_per_entry) {
    Mat M(d * B.rows, B.cols, B.layer);
    for (int r = 0; r < B.rows; ++r) {
        std::vector<Fe> row(static_cast<std::size_t>(B.cols));
        for (int j = 0; j < B.cols; ++j) row[static_cast<std::size_t>(j)] = B.at(r, j);
        Mat Mi = moore(T, tw, d, row, params_per_entry);
        for (int l = 0; l < d; ++l)
            for (int j = 0; j < B.cols; ++j) M.at(r * d + l, j) = Mi.at(l, j);
    }
    return M;
}

// monic minimal skew polynomial annihilating b under the per-entry parameters;
// zero entries impose no constraint and are skipped.
inline SkewPoly min_poly(const FieldTower& T, Twist tw, std::span<const Fe> b, std::span<const Fe> params_per_entry) {
    require(b.size() == params_per_entry.size(), Err::BlockCountMismatch, "per-entry parameters");
    SkewPoly p = one(T, tw);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].v == 0) continue;
        Fe ev = op_eval(T, p, b[i], params_per_entry[i]);
        if (ev.v == 0) continue;
        Fe c = T.mul(T.mul(T.sigma(tw, ev), params_per_entry[i]), T.inv(ev));
        p = mul(T, make(T, {T.neg(c), T.one()}, tw), p);
    }
    return p;
}

}  // namespace skew
}  // namespace sumrank
