#pragma once

// Syndrome-based decoding of horizontally interleaved LRS codes: error-only and
// error-erasure. Mirrors the vertical decoder with the roles of values and
// locators exchanged; the error-span polynomial annihilates the shared error
// values under the parameters theta^{-1}(xi^{-1}) and is synthesized from the
// unreversed component-syndrome polynomials.

#include <optional>
#include <vector>

#include "sumrank/kernels.hpp"
#include "sumrank/lrs.hpp"

namespace sumrank {
namespace hilrs {

enum class Status { ok, ambiguous, post_check_failed };

struct Result {
    Status status = Status::post_check_failed;
    std::vector<Fe> codeword;  // length s n (component-major) when ok
    std::vector<Fe> error;
    std::vector<Fe> a_F, a_R, a_C;      // shared error values per type
    std::vector<Mat> B_F, B_R, B_C;     // per-component locations per type
    int t_F = 0, t_R = 0, t_C = 0;
    bool used_fallback_solve = false;
};

struct ErasureSide {
    std::vector<Fe> a_R;  // length tR, grouped by block
    std::vector<int> tR_part;
    std::vector<Mat> B_C;  // per component: tC x n over F_q, block-diagonal
    std::vector<int> tC_part;
};

namespace detail {

inline SkewPoly syndrome_poly(const FieldTower& T, std::span<const Fe> s) {
    return skew::make(T, std::vector<Fe>(s.begin(), s.end()), Twist::theta_inv);
}

inline std::vector<Fe> padded_coeffs(const FieldTower& T, const SkewPoly& f, int len) {
    std::vector<Fe> c(static_cast<std::size_t>(len), T.zero());
    for (int i = 0; i < len && i <= f.deg(); ++i) c[static_cast<std::size_t>(i)] = f.coeff(i);
    return c;
}

inline Mat locations_block_diag(const LrsCode& code, std::span<const Fe> x, std::span<const int> rparts) {
    const auto& p = code.partition();
    int t = static_cast<int>(x.size());
    Mat B(t, code.n(), Layer::base);
    int ro = 0, xo = 0;
    for (int i = 0; i < p.ell(); ++i) {
        int r = rparts[static_cast<std::size_t>(i)];
        if (r > 0) {
            Mat Bi = code.locations_from_locators(x.subspan(static_cast<std::size_t>(xo), static_cast<std::size_t>(r)), i);
            for (int rr = 0; rr < r; ++rr)
                for (int c = 0; c < Bi.cols; ++c) B.at(ro + rr, p.offset(i) + c) = Bi.at(rr, c);
        }
        ro += r;
        xo += r;
    }
    return B;
}

inline std::vector<Fe> component(std::span<const Fe> y, int j, int n) {
    return std::vector<Fe>(y.begin() + static_cast<long>(j) * n, y.begin() + static_cast<long>(j + 1) * n);
}

}  // namespace detail

inline Result decode_errors(const LrsCode& code, std::span<const Fe> y, int s, Rng& rng) {
    const FieldTower& T = code.tower();
    const int n = code.n(), k = code.k(), nk = n - k;
    require(static_cast<int>(y.size()) == s * n, Err::ShapeMismatch, "received word shape");
    Result out;

    std::vector<std::vector<Fe>> syn(static_cast<std::size_t>(s));
    bool allzero = true;
    for (int j = 0; j < s; ++j) {
        syn[static_cast<std::size_t>(j)] = code.syndrome(detail::component(y, j, n));
        for (auto v : syn[static_cast<std::size_t>(j)]) allzero = allzero && v.v == 0;
    }
    if (allzero) {
        out.status = Status::ok;
        out.codeword.assign(y.begin(), y.end());
        out.error.assign(y.size(), T.zero());
        return out;
    }

    // component-syndrome polynomials (no reversal) feed the span key equation
    SyndromeSequences seqs;
    seqs.twist = Twist::theta_inv;
    for (int j = 0; j < s; ++j) seqs.seqs.push_back(syn[static_cast<std::size_t>(j)]);
    auto synth = kernels::sr_synthesize(T, seqs);
    if (!synth.unique) {
        out.status = Status::ambiguous;
        return out;
    }
    const SkewPoly& sig = synth.connection;
    int t = sig.deg();

    try {
        // shared error values: root-space bases of sigma under xi_hat
        std::vector<std::vector<Fe>> ablocks;
        std::vector<int> rparts;
        int total = 0;
        for (int i = 0; i < code.ell(); ++i) {
            auto Bi = kernels::root_space_basis(T, sig, code.xi_hat()[static_cast<std::size_t>(i)], {}, rng);
            total += static_cast<int>(Bi.size());
            rparts.push_back(static_cast<int>(Bi.size()));
            ablocks.push_back(std::move(Bi));
        }
        if (total != t || t > nk) return out;
        std::vector<Fe> a;
        for (auto& b : ablocks) a.insert(a.end(), b.begin(), b.end());

        // per-component locators from the untwisted syndrome Moore system
        auto xit_rk = code.expand_ranks(code.xi_tilde(), rparts);
        std::vector<Fe> e(static_cast<std::size_t>(s) * n, T.zero());
        std::vector<Mat> Bmats;
        for (int j = 0; j < s; ++j) {
            auto xj = kernels::gabidulin_solve(T, Twist::theta_inv, a, xit_rk, syn[static_cast<std::size_t>(j)]);
            Mat Bj = detail::locations_block_diag(code, xj, rparts);
            auto ej = weights::values_times_locations(T, a, Bj);
            for (int c = 0; c < n; ++c) e[static_cast<std::size_t>(j * n + c)] = ej[static_cast<std::size_t>(c)];
            Bmats.push_back(std::move(Bj));
        }
        std::vector<Fe> cw(y.size());
        for (std::size_t i = 0; i < cw.size(); ++i) cw[i] = T.sub(y[i], e[i]);
        for (int j = 0; j < s; ++j)
            for (auto v : code.syndrome(detail::component(cw, j, n)))
                if (v.v != 0) return out;
        if (weights::weight_horizontal(T, code.partition(), s, e) != t) return out;

        out.status = Status::ok;
        out.codeword = std::move(cw);
        out.error = std::move(e);
        out.a_F = std::move(a);
        out.B_F = std::move(Bmats);
        out.t_F = t;
        return out;
    } catch (const Error&) {
        return out;
    }
}

namespace detail {

// right-hand sides v_j of the combined value system: twisted coefficients of
// sigFR * syndrome_j at positions tF+tR+1 .. n-k
inline std::vector<std::vector<Fe>> ahat_rhs(const FieldTower& T, const SkewPoly& sigFR,
                                             const std::vector<SkewPoly>& synpoly, int nk, int tFR, int d) {
    std::vector<std::vector<Fe>> vs;
    for (const auto& sj : synpoly) {
        SkewPoly prod = skew::mul(T, sigFR, sj);
        std::vector<Fe> vj(static_cast<std::size_t>(d));
        for (int l = 0; l < d; ++l) vj[static_cast<std::size_t>(l)] = T.theta(prod.coeff(tFR + l), tFR + l);
        vs.push_back(std::move(vj));
    }
    return vs;
}

}  // namespace detail

// F_{q^m}-only shortcut: when some component's column-erasure locators have full
// weight t_C, the combined system restricts to that component.
inline std::optional<std::vector<Fe>> shortcut_ahat(const LrsCode& code, std::span<const Fe> y, int s,
                                                    const ErasureSide& side, const SkewPoly& sig_F) {
    const FieldTower& T = code.tower();
    const int n = code.n(), k = code.k(), nk = n - k;
    int tR = static_cast<int>(side.a_R.size());
    int tC = side.B_C.empty() ? 0 : side.B_C[0].rows;
    if (tC == 0) return std::nullopt;
    auto xih_tR = code.expand_ranks(code.xi_hat(), side.tR_part);
    SkewPoly sigR = skew::min_poly(T, Twist::theta_inv, side.a_R, xih_tR);
    SkewPoly sigFR = skew::mul(T, sig_F, sigR);
    int tF = sig_F.deg();
    int d = nk - tF - tR;
    if (d < tC) return std::nullopt;
    std::vector<SkewPoly> synpoly;
    for (int j = 0; j < s; ++j)
        synpoly.push_back(detail::syndrome_poly(T, code.syndrome(detail::component(y, j, n))));
    auto vs = detail::ahat_rhs(T, sigFR, synpoly, nk, tF + tR, d);
    auto xi_tC = code.expand_ranks(code.xi(), side.tC_part);
    for (int j = 0; j < s; ++j) {
        // locators x_{C,j} from this component's known locations
        std::vector<Fe> xCj;
        int ro = 0;
        for (int i = 0; i < code.ell(); ++i) {
            for (int r = 0; r < side.tC_part[static_cast<std::size_t>(i)]; ++r) {
                Fe acc = T.zero();
                for (int c = 0; c < n; ++c) {
                    Fe bc = side.B_C[static_cast<std::size_t>(j)].at(ro + r, c);
                    if (bc.v != 0) acc = T.add(acc, T.mul(code.h()[static_cast<std::size_t>(c)], T.embed(bc, Layer::qm)));
                }
                xCj.push_back(acc);
            }
            ro += side.tC_part[static_cast<std::size_t>(i)];
        }
        int w = 0, ofs = 0;
        for (int i = 0; i < code.ell(); ++i) {
            int ri = side.tC_part[static_cast<std::size_t>(i)];
            w += weights::rank_of_entries(T, std::span<const Fe>(xCj).subspan(static_cast<std::size_t>(ofs), static_cast<std::size_t>(ri)));
            ofs += ri;
        }
        if (w != tC) continue;
        auto z = kernels::gabidulin_solve(T, Twist::theta, xCj, xi_tC, vs[static_cast<std::size_t>(j)]);
        // undo the operator power: z = D^{tF+tR}(ahat_C)
        std::vector<Fe> ahat(static_cast<std::size_t>(tC));
        int r = 0;
        for (int i = 0; i < code.ell(); ++i)
            for (int c = 0; c < side.tC_part[static_cast<std::size_t>(i)]; ++c, ++r) {
                Fe Nval = T.gen_norm(Twist::theta, tF + tR, code.xi()[static_cast<std::size_t>(i)]);
                ahat[static_cast<std::size_t>(r)] = T.theta(T.mul(z[static_cast<std::size_t>(r)], T.inv(Nval)), -(tF + tR));
            }
        return ahat;
    }
    return std::nullopt;
}

inline Result decode_errors_erasures(const LrsCode& code, std::span<const Fe> y, int s, const ErasureSide& side,
                                     Rng& rng) {
    const FieldTower& T = code.tower();
    const int n = code.n(), k = code.k(), nk = n - k;
    require(static_cast<int>(y.size()) == s * n, Err::ShapeMismatch, "received word shape");
    const int tR = static_cast<int>(side.a_R.size());
    const int tC = side.B_C.empty() ? 0 : side.B_C[0].rows;
    require(side.B_C.empty() || static_cast<int>(side.B_C.size()) == s, Err::ShapeMismatch,
            "column-erasure locations per component");
    Result out;
    out.t_R = tR;
    out.t_C = tC;

    auto xih_tR = code.expand_ranks(code.xi_hat(), side.tR_part);
    SkewPoly sigR = skew::min_poly(T, Twist::theta_inv, side.a_R, xih_tR);
    if (sigR.deg() != tR) return out;

    std::vector<std::vector<Fe>> syn(static_cast<std::size_t>(s));
    std::vector<SkewPoly> synpoly;
    std::vector<std::vector<Fe>> xCj(static_cast<std::size_t>(s));
    std::vector<SkewPoly> lamCj;
    std::vector<int> rho(static_cast<std::size_t>(s), 0);
    auto xit_tC = code.expand_ranks(code.xi_tilde(), side.tC_part);
    for (int j = 0; j < s; ++j) {
        syn[static_cast<std::size_t>(j)] = code.syndrome(detail::component(y, j, n));
        synpoly.push_back(detail::syndrome_poly(T, syn[static_cast<std::size_t>(j)]));
        int ro = 0;
        for (int i = 0; i < code.ell(); ++i) {
            for (int r = 0; r < (tC ? side.tC_part[static_cast<std::size_t>(i)] : 0); ++r) {
                Fe acc = T.zero();
                for (int c = 0; c < n; ++c) {
                    Fe bc = side.B_C[static_cast<std::size_t>(j)].at(ro + r, c);
                    if (bc.v != 0) acc = T.add(acc, T.mul(code.h()[static_cast<std::size_t>(c)], T.embed(bc, Layer::qm)));
                }
                xCj[static_cast<std::size_t>(j)].push_back(acc);
            }
            ro += tC ? side.tC_part[static_cast<std::size_t>(i)] : 0;
        }
        lamCj.push_back(skew::min_poly(T, Twist::theta_inv, xCj[static_cast<std::size_t>(j)], xit_tC));
        rho[static_cast<std::size_t>(j)] = lamCj.back().deg();
    }

    // auxiliary component-syndrome polynomials sigR * s_j * rev(lamC_j)
    SyndromeSequences seqs;
    seqs.twist = Twist::theta_inv;
    bool any_seq = false;
    for (int j = 0; j < s; ++j) {
        SkewPoly lrev = skew::reverse(T, lamCj[static_cast<std::size_t>(j)], rho[static_cast<std::size_t>(j)]);
        SkewPoly aux = skew::mul(T, skew::mul(T, sigR, synpoly[static_cast<std::size_t>(j)]), lrev);
        auto coeffs = detail::padded_coeffs(T, aux, nk);
        int dj = tR + rho[static_cast<std::size_t>(j)];
        std::vector<Fe> trunc(coeffs.begin() + std::min(dj, nk), coeffs.end());
        if (!trunc.empty()) any_seq = true;
        seqs.seqs.push_back(std::move(trunc));
    }
    SkewPoly sigF = skew::one(T, Twist::theta_inv);
    if (any_seq) {
        auto synth = kernels::sr_synthesize(T, seqs);
        if (!synth.unique) {
            out.status = Status::ambiguous;
            return out;
        }
        sigF = synth.connection;
    }
    int tF = sigF.deg();
    out.t_F = tF;
    SkewPoly sigFR = skew::mul(T, sigF, sigR);
    int d = nk - tF - tR;

    try {
        // recover ahat_C = op(sigFR, a_C) via the combined value system
        std::vector<Fe> ahatC;
        if (tC > 0) {
            if (d < tC) return out;
            auto vs = detail::ahat_rhs(T, sigFR, synpoly, nk, tF + tR, d);
            auto xi_tC = code.expand_ranks(code.xi(), side.tC_part);
            bool solved = false;
            if (T.has_qms() && T.s() == s) {
                std::vector<Fe> xC_comb(static_cast<std::size_t>(tC));
                for (int r = 0; r < tC; ++r) {
                    std::vector<Fe> comps(static_cast<std::size_t>(s));
                    for (int j = 0; j < s; ++j) comps[static_cast<std::size_t>(j)] = xCj[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
                    xC_comb[static_cast<std::size_t>(r)] = T.combine(comps);
                }
                std::vector<Fe> v_comb(static_cast<std::size_t>(tC));
                for (int l = 0; l < tC; ++l) {
                    std::vector<Fe> comps(static_cast<std::size_t>(s));
                    for (int j = 0; j < s; ++j) comps[static_cast<std::size_t>(j)] = vs[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
                    v_comb[static_cast<std::size_t>(l)] = T.combine(comps);
                }
                try {
                    auto z = kernels::gabidulin_solve(T, Twist::theta, xC_comb, xi_tC, v_comb);
                    bool rational = true;
                    std::vector<Fe> cand(static_cast<std::size_t>(tC));
                    int r = 0;
                    for (int i = 0; i < code.ell() && rational; ++i)
                        for (int c = 0; c < side.tC_part[static_cast<std::size_t>(i)] && rational; ++c, ++r) {
                            auto zz = T.to_qm(z[static_cast<std::size_t>(r)]);
                            if (!zz) {
                                rational = false;
                                break;
                            }
                            Fe Nval = T.gen_norm(Twist::theta, tF + tR, code.xi()[static_cast<std::size_t>(i)]);
                            cand[static_cast<std::size_t>(r)] = T.theta(T.mul(*zz, T.inv(Nval)), -(tF + tR));
                        }
                    if (rational) {
                        ahatC = std::move(cand);
                        solved = true;
                    }
                } catch (const Error&) {
                }
            }
            if (!solved) {
                // stacked F_{q^m} reformulation: unknowns ahat_C
                out.used_fallback_solve = true;
                Mat A(s * d, tC, Layer::qm);
                std::vector<Fe> rhs(static_cast<std::size_t>(s) * d);
                int row = 0;
                for (int j = 0; j < s; ++j)
                    for (int l = 1; l <= d; ++l, ++row) {
                        int E2 = tF + tR + l - 1;
                        for (int r = 0; r < tC; ++r) {
                            int blk = 0, acc = 0;
                            while (acc + side.tC_part[static_cast<std::size_t>(blk)] <= r) acc += side.tC_part[static_cast<std::size_t>(blk++)];
                            Fe coef = T.mul(T.gen_norm(Twist::theta, E2, code.xi()[static_cast<std::size_t>(blk)]),
                                            xCj[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)]);
                            A.at(row, r) = T.theta(coef, -E2);
                        }
                        rhs[static_cast<std::size_t>(row)] = T.theta(vs[static_cast<std::size_t>(j)][static_cast<std::size_t>(l - 1)], -E2);
                    }
                auto sol = solve_affine(T, A, rhs);
                if (!sol.consistent || sol.rank < tC) return out;
                ahatC = std::move(sol.x);
            }
        }
        SkewPoly sigC = skew::one(T, Twist::theta_inv);
        if (tC > 0) {
            auto xih_tC = code.expand_ranks(code.xi_hat(), side.tC_part);
            sigC = skew::min_poly(T, Twist::theta_inv, ahatC, xih_tC);
            if (sigC.deg() != tC) return out;
        }

        // full-error values: extend the row-erasure values inside root(sigFR)
        std::vector<std::vector<Fe>> aR_blocks(static_cast<std::size_t>(code.ell()));
        {
            int r = 0;
            for (int i = 0; i < code.ell(); ++i)
                for (int c = 0; c < side.tR_part[static_cast<std::size_t>(i)]; ++c, ++r)
                    aR_blocks[static_cast<std::size_t>(i)].push_back(side.a_R[static_cast<std::size_t>(r)]);
        }
        std::vector<std::vector<Fe>> aF_blocks(static_cast<std::size_t>(code.ell()));
        std::vector<int> tF_part(static_cast<std::size_t>(code.ell()), 0);
        int tFsum = 0;
        for (int i = 0; i < code.ell(); ++i) {
            auto Bi = kernels::root_space_basis(T, sigFR, code.xi_hat()[static_cast<std::size_t>(i)],
                                                aR_blocks[static_cast<std::size_t>(i)], rng);
            auto& nf = aF_blocks[static_cast<std::size_t>(i)];
            nf.assign(Bi.begin() + static_cast<long>(aR_blocks[static_cast<std::size_t>(i)].size()), Bi.end());
            tF_part[static_cast<std::size_t>(i)] = static_cast<int>(nf.size());
            tFsum += static_cast<int>(nf.size());
        }
        if (tFsum != tF) return out;

        // column-erasure values: operator preimages of ahat_C under sigFR, so they
        // stay paired with the given per-component locations B_C
        std::vector<Fe> aC_flat;
        {
            int r = 0;
            for (int i = 0; i < code.ell(); ++i)
                for (int c = 0; c < side.tC_part[static_cast<std::size_t>(i)]; ++c, ++r) {
                    auto z = kernels::op_preimage(T, sigFR, code.xi_hat()[static_cast<std::size_t>(i)],
                                                  ahatC[static_cast<std::size_t>(r)]);
                    if (!z) return out;
                    aC_flat.push_back(*z);
                }
        }

        // per-component locators for full errors and row erasures
        std::vector<Fe> mult, mult_xi;
        std::vector<std::pair<char, int>> layout;
        for (int i = 0; i < code.ell(); ++i) {
            for (auto v : aF_blocks[static_cast<std::size_t>(i)]) {
                mult.push_back(v);
                mult_xi.push_back(code.xi_tilde()[static_cast<std::size_t>(i)]);
                layout.emplace_back('F', i);
            }
            for (auto v : aR_blocks[static_cast<std::size_t>(i)]) {
                mult.push_back(v);
                mult_xi.push_back(code.xi_tilde()[static_cast<std::size_t>(i)]);
                layout.emplace_back('R', i);
            }
        }
        std::vector<Fe> aF_flat;
        for (auto& b : aF_blocks) aF_flat.insert(aF_flat.end(), b.begin(), b.end());

        std::vector<Fe> e(static_cast<std::size_t>(s) * n, T.zero());
        std::vector<Mat> BFs, BRs;
        auto xit_by_xC = code.expand_ranks(code.xi_tilde(), side.tC_part);
        for (int j = 0; j < s; ++j) {
            std::vector<Fe> st(static_cast<std::size_t>(nk));
            std::vector<Fe> cur = xCj[static_cast<std::size_t>(j)];
            for (int l = 0; l < nk; ++l) {
                Fe dotv = T.zero();
                for (int r = 0; r < tC; ++r)
                    dotv = T.add(dotv, T.mul(cur[static_cast<std::size_t>(r)], aC_flat[static_cast<std::size_t>(r)]));
                st[static_cast<std::size_t>(l)] = T.sub(syn[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)], dotv);
                if (l + 1 < nk)
                    for (int r = 0; r < tC; ++r)
                        cur[static_cast<std::size_t>(r)] =
                            skew::op_apply(T, Twist::theta_inv, cur[static_cast<std::size_t>(r)], xit_by_xC[static_cast<std::size_t>(r)]);
            }
            std::vector<Fe> xFj, xRj;
            if (!mult.empty()) {
                if (static_cast<int>(mult.size()) > nk) return out;
                auto sol = kernels::gabidulin_solve(T, Twist::theta_inv, mult, mult_xi, st);
                for (std::size_t idx = 0; idx < layout.size(); ++idx)
                    (layout[idx].first == 'F' ? xFj : xRj).push_back(sol[idx]);
            }
            Mat BFj = detail::locations_block_diag(code, xFj, tF_part);
            Mat BRj = detail::locations_block_diag(code, xRj, side.tR_part);
            auto ef = weights::values_times_locations(T, aF_flat, BFj);
            auto er = weights::values_times_locations(T, side.a_R, BRj);
            std::vector<Fe> ec(static_cast<std::size_t>(n), T.zero());
            if (tC) ec = weights::values_times_locations(T, aC_flat, side.B_C[static_cast<std::size_t>(j)]);
            for (int c = 0; c < n; ++c)
                e[static_cast<std::size_t>(j * n + c)] =
                    T.add(T.add(ef[static_cast<std::size_t>(c)], er[static_cast<std::size_t>(c)]), ec[static_cast<std::size_t>(c)]);
            BFs.push_back(std::move(BFj));
            BRs.push_back(std::move(BRj));
        }
        std::vector<Fe> cw(y.size());
        for (std::size_t i = 0; i < cw.size(); ++i) cw[i] = T.sub(y[i], e[i]);
        for (int j = 0; j < s; ++j)
            for (auto v : code.syndrome(detail::component(cw, j, n)))
                if (v.v != 0) return out;
        if (weights::weight_horizontal(T, code.partition(), s, e) != tF + tR + tC) return out;

        out.status = Status::ok;
        out.codeword = std::move(cw);
        out.error = std::move(e);
        out.a_F = std::move(aF_flat);
        out.a_R = side.a_R;
        out.a_C = std::move(aC_flat);
        out.B_F = std::move(BFs);
        out.B_R = std::move(BRs);
        out.B_C = side.B_C;
        return out;
    } catch (const Error&) {
        return out;
    }
}

}  // namespace hilrs
}  // namespace sumrank
