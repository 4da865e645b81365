#pragma once

// Syndrome-based decoding of vertically interleaved LRS codes: error-only and
// error-erasure. The error-locator polynomial lives in F_{q^m}[x; theta^{-1}] and
// is synthesized from reversed component-syndrome polynomials; locators are roots,
// values come from structured Moore systems, locations from precomputed left
// inverses of the dual vector's coordinate blocks.

#include <optional>
#include <vector>

#include "sumrank/kernels.hpp"
#include "sumrank/lrs.hpp"

namespace sumrank {
namespace vilrs {

enum class Status { ok, ambiguous, post_check_failed };

struct Result {
    Status status = Status::post_check_failed;
    Mat codeword;  // s x n when ok
    Mat error;     // Y - codeword
    // recovered decomposition, grouped by error type (empty shapes when absent)
    Mat A_F, B_F, A_R, B_R, A_C, B_C;
    int t_F = 0, t_R = 0, t_C = 0;
    bool used_fallback_solve = false;  // stacked elimination replaced the combined solve
};

struct ErasureSide {
    Mat A_R;                  // s x tR over F_{q^m}, columns grouped by block
    std::vector<int> tR_part;
    Mat B_C;                  // tC x n over F_q, block-diagonal
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

inline bool syndromes_zero(const std::vector<std::vector<Fe>>& syn) {
    for (const auto& s : syn)
        for (auto v : s)
            if (v.v != 0) return false;
    return true;
}

// locations matrix for locators grouped by block (rparts), stacked block-diagonally
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

}  // namespace detail

inline Result decode_errors(const LrsCode& code, const Mat& Y, Rng& rng) {
    const FieldTower& T = code.tower();
    require(Y.cols == code.n() && Y.layer == Layer::qm, Err::ShapeMismatch, "received word shape");
    const int s = Y.rows, n = code.n(), k = code.k(), nk = n - k;
    Result out;

    std::vector<std::vector<Fe>> syn(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        std::vector<Fe> yj(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) yj[static_cast<std::size_t>(c)] = Y.at(j, c);
        syn[static_cast<std::size_t>(j)] = code.syndrome(yj);
    }
    if (detail::syndromes_zero(syn)) {
        out.status = Status::ok;
        out.codeword = Y;
        out.error = Mat(s, n, Layer::qm);
        return out;
    }

    // reversed component-syndrome polynomials feed the key equation
    SyndromeSequences seqs;
    seqs.twist = Twist::theta_inv;
    for (int j = 0; j < s; ++j) {
        SkewPoly sj = detail::syndrome_poly(T, syn[static_cast<std::size_t>(j)]);
        SkewPoly rev = sj.is_zero() ? sj : skew::reverse(T, sj, nk - 1);
        seqs.seqs.push_back(detail::padded_coeffs(T, rev, nk));
    }
    auto synth = kernels::sr_synthesize(T, seqs);
    if (!synth.unique) {
        out.status = Status::ambiguous;
        return out;
    }
    const SkewPoly& lam = synth.connection;
    int t = lam.deg();

    try {
        // locators: per-block root-space bases of the locator polynomial
        std::vector<std::vector<Fe>> xblocks;
        std::vector<int> rparts;
        int total = 0;
        for (int i = 0; i < code.ell(); ++i) {
            auto Bi = kernels::root_space_basis(T, lam, code.xi_tilde()[static_cast<std::size_t>(i)], {}, rng);
            total += static_cast<int>(Bi.size());
            rparts.push_back(static_cast<int>(Bi.size()));
            xblocks.push_back(std::move(Bi));
        }
        if (total != t || t > nk) return out;
        std::vector<Fe> x;
        for (auto& b : xblocks) x.insert(x.end(), b.begin(), b.end());

        // values per component from the twisted-syndrome Moore system
        auto xi_rk = code.expand_ranks(code.xi(), rparts);
        Mat A(s, t, Layer::qm);
        for (int j = 0; j < s; ++j) {
            std::vector<Fe> st(static_cast<std::size_t>(nk));
            for (int l = 0; l < nk; ++l) st[static_cast<std::size_t>(l)] = T.theta(syn[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)], l);
            auto aj = kernels::gabidulin_solve(T, Twist::theta, x, xi_rk, st);
            for (int c = 0; c < t; ++c) A.at(j, c) = aj[static_cast<std::size_t>(c)];
        }

        Mat B = detail::locations_block_diag(code, x, rparts);
        Mat E(s, n, Layer::qm);
        for (int j = 0; j < s; ++j) {
            std::vector<Fe> aj(static_cast<std::size_t>(t));
            for (int c = 0; c < t; ++c) aj[static_cast<std::size_t>(c)] = A.at(j, c);
            auto ej = weights::values_times_locations(T, aj, B);
            for (int c = 0; c < n; ++c) E.at(j, c) = ej[static_cast<std::size_t>(c)];
        }
        Mat C(s, n, Layer::qm);
        for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = T.sub(Y.a[i], E.a[i]);

        // post-check: zero syndromes and weight consistency
        for (int j = 0; j < s; ++j) {
            std::vector<Fe> cj(static_cast<std::size_t>(n));
            for (int c = 0; c < n; ++c) cj[static_cast<std::size_t>(c)] = C.at(j, c);
            for (auto v : code.syndrome(cj))
                if (v.v != 0) return out;
        }
        if (weights::weight_vertical(T, code.partition(), E) != t) return out;

        out.status = Status::ok;
        out.codeword = std::move(C);
        out.error = std::move(E);
        out.A_F = std::move(A);
        out.B_F = std::move(B);
        out.t_F = t;
        return out;
    } catch (const Error&) {
        return out;  // budget/pivot failures surface as a detected decoding failure
    }
}

namespace detail {

// per-component right-hand sides v_j of the combined locator system, from the
// products lamFC * revsyn_j (coefficients n-k down to tF+tC+1, twisted)
inline std::vector<std::vector<Fe>> xhat_rhs(const FieldTower& T, const SkewPoly& lamFC,
                                             const std::vector<SkewPoly>& revsyn, int nk, int d) {
    std::vector<std::vector<Fe>> vs;
    for (const auto& rj : revsyn) {
        SkewPoly prod = skew::mul(T, lamFC, rj);
        std::vector<Fe> vj(static_cast<std::size_t>(d));
        for (int i = 1; i <= d; ++i)
            vj[static_cast<std::size_t>(i - 1)] = T.theta(prod.coeff(nk - i), -(i - 1));
        vs.push_back(std::move(vj));
    }
    return vs;
}

}  // namespace detail

// F_{q^m}-only shortcut: when some component's row-erasure values have full weight
// t_R, the combined system restricts to that component. Returns nullopt otherwise.
inline std::optional<std::vector<Fe>> shortcut_xhat(const LrsCode& code, const Mat& Y, const ErasureSide& side,
                                                    const SkewPoly& lam_F) {
    const FieldTower& T = code.tower();
    const int s = Y.rows, n = code.n(), k = code.k(), nk = n - k;
    int tR = side.A_R.cols, tC = side.B_C.rows;
    if (tR == 0) return std::nullopt;
    // x_C and lam_C
    std::vector<Fe> xC;
    int ro = 0;
    for (int i = 0; i < code.ell(); ++i) {
        for (int r = 0; r < side.tC_part[static_cast<std::size_t>(i)]; ++r) {
            Fe acc = T.zero();
            for (int c = 0; c < n; ++c) {
                Fe bc = side.B_C.at(ro + r, c);
                if (bc.v != 0) acc = T.add(acc, T.mul(code.h()[static_cast<std::size_t>(c)], T.embed(bc, Layer::qm)));
            }
            xC.push_back(acc);
        }
        ro += side.tC_part[static_cast<std::size_t>(i)];
    }
    auto xit_tC = code.expand_ranks(code.xi_tilde(), side.tC_part);
    SkewPoly lamC = skew::min_poly(T, Twist::theta_inv, xC, xit_tC);
    SkewPoly lamFC = skew::mul(T, lam_F, lamC);
    int tF = lam_F.deg();
    int d = nk - tF - tC;
    if (d < tR) return std::nullopt;
    std::vector<SkewPoly> revsyn;
    for (int j = 0; j < s; ++j) {
        std::vector<Fe> yj(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) yj[static_cast<std::size_t>(c)] = Y.at(j, c);
        auto sj = code.syndrome(yj);
        SkewPoly sp = detail::syndrome_poly(T, sj);
        revsyn.push_back(sp.is_zero() ? sp : skew::reverse(T, sp, nk - 1));
    }
    auto vs = detail::xhat_rhs(T, lamFC, revsyn, nk, d);
    auto xit_tR = code.expand_ranks(code.xi_tilde(), side.tR_part);
    for (int j = 0; j < s; ++j) {
        std::vector<Fe> aRj(static_cast<std::size_t>(tR));
        for (int r = 0; r < tR; ++r) aRj[static_cast<std::size_t>(r)] = side.A_R.at(j, r);
        // full-weight check: per-block independent entries
        int w = 0, ofs = 0;
        for (int i = 0; i < code.ell(); ++i) {
            int ri = side.tR_part[static_cast<std::size_t>(i)];
            w += weights::rank_of_entries(T, std::span<const Fe>(aRj).subspan(static_cast<std::size_t>(ofs), static_cast<std::size_t>(ri)));
            ofs += ri;
        }
        if (w != tR) continue;
        return kernels::gabidulin_solve(T, Twist::theta_inv, aRj, xit_tR, vs[static_cast<std::size_t>(j)]);
    }
    return std::nullopt;
}

inline Result decode_errors_erasures(const LrsCode& code, const Mat& Y, const ErasureSide& side, Rng& rng) {
    const FieldTower& T = code.tower();
    require(Y.cols == code.n() && Y.layer == Layer::qm, Err::ShapeMismatch, "received word shape");
    const int s = Y.rows, n = code.n(), k = code.k(), nk = n - k;
    const int tR = side.A_R.cols, tC = side.B_C.rows;
    require(side.A_R.rows == s || tR == 0, Err::ShapeMismatch, "row-erasure values shape");
    require(side.B_C.cols == n || tC == 0, Err::ShapeMismatch, "column-erasure locations shape");
    require(static_cast<int>(side.tR_part.size()) == code.ell() &&
                static_cast<int>(side.tC_part.size()) == code.ell(),
            Err::BlockCountMismatch, "erasure rank partitions");
    Result out;
    out.t_R = tR;
    out.t_C = tC;

    // column-erasure locators and their partial locator polynomial
    std::vector<std::vector<Fe>> xC_blocks(static_cast<std::size_t>(code.ell()));
    std::vector<Fe> xC;
    {
        int ro = 0;
        for (int i = 0; i < code.ell(); ++i) {
            for (int r = 0; r < side.tC_part[static_cast<std::size_t>(i)]; ++r) {
                Fe acc = T.zero();
                for (int c = 0; c < n; ++c) {
                    Fe bc = side.B_C.at(ro + r, c);
                    if (bc.v != 0) acc = T.add(acc, T.mul(code.h()[static_cast<std::size_t>(c)], T.embed(bc, Layer::qm)));
                }
                xC_blocks[static_cast<std::size_t>(i)].push_back(acc);
                xC.push_back(acc);
            }
            ro += side.tC_part[static_cast<std::size_t>(i)];
        }
    }
    auto xit_tC = code.expand_ranks(code.xi_tilde(), side.tC_part);
    SkewPoly lamC = skew::min_poly(T, Twist::theta_inv, xC, xit_tC);
    if (lamC.deg() != tC) return out;  // side information is internally inconsistent

    // syndromes, reversed syndrome polynomials, row-erasure value polynomials
    std::vector<std::vector<Fe>> syn(static_cast<std::size_t>(s));
    std::vector<SkewPoly> revsyn;
    std::vector<SkewPoly> sigR;
    std::vector<int> vartheta(static_cast<std::size_t>(s));
    auto xih_tR = code.expand_ranks(code.xi_hat(), side.tR_part);
    for (int j = 0; j < s; ++j) {
        std::vector<Fe> yj(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) yj[static_cast<std::size_t>(c)] = Y.at(j, c);
        syn[static_cast<std::size_t>(j)] = code.syndrome(yj);
        SkewPoly sp = detail::syndrome_poly(T, syn[static_cast<std::size_t>(j)]);
        revsyn.push_back(sp.is_zero() ? sp : skew::reverse(T, sp, nk - 1));
        std::vector<Fe> aRj(static_cast<std::size_t>(tR));
        for (int r = 0; r < tR; ++r) aRj[static_cast<std::size_t>(r)] = side.A_R.at(j, r);
        sigR.push_back(skew::min_poly(T, Twist::theta_inv, aRj, xih_tR));
        vartheta[static_cast<std::size_t>(j)] = sigR.back().deg();
    }

    // auxiliary component-syndrome polynomials and truncated synthesis sequences
    SyndromeSequences seqs;
    seqs.twist = Twist::theta_inv;
    bool any_seq = false;
    for (int j = 0; j < s; ++j) {
        int vt = vartheta[static_cast<std::size_t>(j)];
        SkewPoly phi = skew::coeff_map(T, skew::reverse(T, sigR[static_cast<std::size_t>(j)], vt), nk - 1);
        SkewPoly aux = skew::mul(T, skew::mul(T, lamC, revsyn[static_cast<std::size_t>(j)]), phi);
        auto coeffs = detail::padded_coeffs(T, aux, nk);
        int dj = vt + tC;
        std::vector<Fe> trunc(coeffs.begin() + std::min(dj, nk), coeffs.end());
        if (!trunc.empty()) any_seq = true;
        seqs.seqs.push_back(std::move(trunc));
    }
    SkewPoly lamF = skew::one(T, Twist::theta_inv);
    if (any_seq) {
        auto synth = kernels::sr_synthesize(T, seqs);
        if (!synth.unique) {
            out.status = Status::ambiguous;
            return out;
        }
        lamF = synth.connection;
    }
    int tF = lamF.deg();
    out.t_F = tF;
    SkewPoly lamFC = skew::mul(T, lamF, lamC);
    int d = nk - tF - tC;

    try {
        // recover the row-erasure locator images xhat_R = op(lamFC, x_R)
        std::vector<Fe> xhatR;
        if (tR > 0) {
            if (d < tR) return out;
            auto vs = detail::xhat_rhs(T, lamFC, revsyn, nk, d);
            auto xit_tR = code.expand_ranks(code.xi_tilde(), side.tR_part);
            bool solved = false;
            if (T.has_qms() && T.s() == s) {
                // combined system over F_{q^{ms}}
                std::vector<Fe> aR_comb(static_cast<std::size_t>(tR));
                for (int r = 0; r < tR; ++r) {
                    std::vector<Fe> comps(static_cast<std::size_t>(s));
                    for (int j = 0; j < s; ++j) comps[static_cast<std::size_t>(j)] = side.A_R.at(j, r);
                    aR_comb[static_cast<std::size_t>(r)] = T.combine(comps);
                }
                std::vector<Fe> v_comb(static_cast<std::size_t>(tR));
                for (int l = 0; l < tR; ++l) {
                    std::vector<Fe> comps(static_cast<std::size_t>(s));
                    for (int j = 0; j < s; ++j) comps[static_cast<std::size_t>(j)] = vs[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
                    v_comb[static_cast<std::size_t>(l)] = T.combine(comps);
                }
                try {
                    auto sol = kernels::gabidulin_solve(T, Twist::theta_inv, aR_comb, xit_tR, v_comb);
                    bool rational = true;
                    std::vector<Fe> cand;
                    for (auto z : sol) {
                        auto zz = T.to_qm(z);
                        if (!zz) {
                            rational = false;
                            break;
                        }
                        cand.push_back(*zz);
                    }
                    if (rational) {
                        xhatR = std::move(cand);
                        solved = true;
                    }
                } catch (const Error&) {
                    // pivot degenerated; fall through to the stacked solve
                }
            }
            if (!solved) {
                // stacked F_{q^m}-linear reformulation across all components
                out.used_fallback_solve = true;
                Mat A(s * d, tR, Layer::qm);
                std::vector<Fe> rhs(static_cast<std::size_t>(s) * d);
                int row = 0;
                for (int j = 0; j < s; ++j)
                    for (int l = 1; l <= d; ++l, ++row) {
                        for (int r = 0; r < tR; ++r) {
                            int blk = 0, acc = 0;
                            while (acc + side.tR_part[static_cast<std::size_t>(blk)] <= r) acc += side.tR_part[static_cast<std::size_t>(blk++)];
                            Fe coef = T.mul(T.gen_norm(Twist::theta_inv, l - 1, code.xi_tilde()[static_cast<std::size_t>(blk)]),
                                            side.A_R.at(j, r));
                            A.at(row, r) = T.theta(coef, l - 1);
                        }
                        rhs[static_cast<std::size_t>(row)] = T.theta(vs[static_cast<std::size_t>(j)][static_cast<std::size_t>(l - 1)], l - 1);
                    }
                auto sol = solve_affine(T, A, rhs);
                if (!sol.consistent || sol.rank < tR) return out;
                xhatR = std::move(sol.x);
            }
        }
        SkewPoly lamR = skew::one(T, Twist::theta_inv);
        if (tR > 0) {
            auto xit_tR = code.expand_ranks(code.xi_tilde(), side.tR_part);
            lamR = skew::min_poly(T, Twist::theta_inv, xhatR, xit_tR);
            if (lamR.deg() != tR) return out;
        }
        SkewPoly lam = skew::mul(T, lamR, lamFC);

        // full-error locators: extend the column-erasure roots inside root(lamFC)
        std::vector<std::vector<Fe>> xF_blocks(static_cast<std::size_t>(code.ell()));
        std::vector<int> tF_part(static_cast<std::size_t>(code.ell()), 0);
        int tFsum = 0;
        for (int i = 0; i < code.ell(); ++i) {
            auto Bi = kernels::root_space_basis(T, lamFC, code.xi_tilde()[static_cast<std::size_t>(i)],
                                                xC_blocks[static_cast<std::size_t>(i)], rng);
            auto& nf = xF_blocks[static_cast<std::size_t>(i)];
            nf.assign(Bi.begin() + static_cast<long>(xC_blocks[static_cast<std::size_t>(i)].size()), Bi.end());
            tF_part[static_cast<std::size_t>(i)] = static_cast<int>(nf.size());
            tFsum += static_cast<int>(nf.size());
        }
        if (tFsum != tF) return out;

        // row-erasure locators: operator preimages of xhat_R under lamFC, so that
        // they stay paired with the given A_R columns
        std::vector<std::vector<Fe>> xR_blocks(static_cast<std::size_t>(code.ell()));
        std::vector<Fe> xR_flat;
        {
            int r = 0;
            for (int i = 0; i < code.ell(); ++i)
                for (int c = 0; c < side.tR_part[static_cast<std::size_t>(i)]; ++c, ++r) {
                    auto z = kernels::op_preimage(T, lamFC, code.xi_tilde()[static_cast<std::size_t>(i)],
                                                  xhatR[static_cast<std::size_t>(r)]);
                    if (!z) return out;
                    xR_blocks[static_cast<std::size_t>(i)].push_back(*z);
                    xR_flat.push_back(*z);
                }
        }

        // values for full errors and column erasures; pair the multiplier by block
        std::vector<Fe> mult, mult_xi;
        std::vector<std::pair<char, int>> layout;  // ('F' or 'C', block)
        for (int i = 0; i < code.ell(); ++i) {
            for (auto v : xF_blocks[static_cast<std::size_t>(i)]) {
                mult.push_back(v);
                mult_xi.push_back(code.xi()[static_cast<std::size_t>(i)]);
                layout.emplace_back('F', i);
            }
            for (auto v : xC_blocks[static_cast<std::size_t>(i)]) {
                mult.push_back(v);
                mult_xi.push_back(code.xi()[static_cast<std::size_t>(i)]);
                layout.emplace_back('C', i);
            }
        }
        Mat AF(s, tF, Layer::qm), AC(s, tC, Layer::qm);
        auto xi_tR = code.expand_ranks(code.xi(), side.tR_part);
        for (int j = 0; j < s; ++j) {
            std::vector<Fe> st(static_cast<std::size_t>(nk));
            std::vector<Fe> cur(static_cast<std::size_t>(tR));
            for (int r = 0; r < tR; ++r) cur[static_cast<std::size_t>(r)] = side.A_R.at(j, r);
            for (int l = 0; l < nk; ++l) {
                Fe dotv = T.zero();
                for (int r = 0; r < tR; ++r)
                    dotv = T.add(dotv, T.mul(cur[static_cast<std::size_t>(r)], xR_flat[static_cast<std::size_t>(r)]));
                st[static_cast<std::size_t>(l)] = T.sub(T.theta(syn[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)], l), dotv);
                if (l + 1 < nk)
                    for (int r = 0; r < tR; ++r)
                        cur[static_cast<std::size_t>(r)] =
                            skew::op_apply(T, Twist::theta, cur[static_cast<std::size_t>(r)], xi_tR[static_cast<std::size_t>(r)]);
            }
            if (!mult.empty()) {
                if (static_cast<int>(mult.size()) > nk) return out;
                auto sol = kernels::gabidulin_solve(T, Twist::theta, mult, mult_xi, st);
                int fi = 0, ci = 0;
                for (std::size_t idx = 0; idx < layout.size(); ++idx) {
                    if (layout[idx].first == 'F')
                        AF.at(j, fi++) = sol[idx];
                    else
                        AC.at(j, ci++) = sol[idx];
                }
            }
        }

        // locations and recomposition
        Mat BF = detail::locations_block_diag(code, [&] {
            std::vector<Fe> xf;
            for (auto& b : xF_blocks) xf.insert(xf.end(), b.begin(), b.end());
            return xf;
        }(), tF_part);
        Mat BR = detail::locations_block_diag(code, xR_flat, side.tR_part);
        Mat E(s, n, Layer::qm);
        for (int j = 0; j < s; ++j) {
            std::vector<Fe> af(static_cast<std::size_t>(tF)), ar(static_cast<std::size_t>(tR)), ac(static_cast<std::size_t>(tC));
            for (int c = 0; c < tF; ++c) af[static_cast<std::size_t>(c)] = AF.at(j, c);
            for (int c = 0; c < tR; ++c) ar[static_cast<std::size_t>(c)] = side.A_R.at(j, c);
            for (int c = 0; c < tC; ++c) ac[static_cast<std::size_t>(c)] = AC.at(j, c);
            auto ef = weights::values_times_locations(T, af, BF);
            auto er = weights::values_times_locations(T, ar, BR);
            auto ec = weights::values_times_locations(T, ac, side.B_C);
            for (int c = 0; c < n; ++c) E.at(j, c) = T.add(T.add(ef[static_cast<std::size_t>(c)], er[static_cast<std::size_t>(c)]), ec[static_cast<std::size_t>(c)]);
        }
        Mat C(s, n, Layer::qm);
        for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = T.sub(Y.a[i], E.a[i]);
        for (int j = 0; j < s; ++j) {
            std::vector<Fe> cj(static_cast<std::size_t>(n));
            for (int c = 0; c < n; ++c) cj[static_cast<std::size_t>(c)] = C.at(j, c);
            for (auto v : code.syndrome(cj))
                if (v.v != 0) return out;
        }
        if (weights::weight_vertical(T, code.partition(), E) != tF + tR + tC) return out;

        out.status = Status::ok;
        out.codeword = std::move(C);
        out.error = std::move(E);
        out.A_F = std::move(AF);
        out.B_F = std::move(BF);
        out.A_R = side.A_R;
        out.B_R = std::move(BR);
        out.A_C = std::move(AC);
        out.B_C = side.B_C;
        return out;
    } catch (const Error&) {
        return out;
    }
}

}  // namespace vilrs
}  // namespace sumrank
