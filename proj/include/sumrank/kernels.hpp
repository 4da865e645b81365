#pragma once

// The computational kernels shared by the decoders:
//  - multisequence skew-feedback shift-register synthesis (minimal-length register
//    with a rank-slack uniqueness certificate),
//  - probabilistic root-space basis computation for skew polynomials,
//  - the structured triangular solver for Moore-shaped systems,
//  - operator preimages (needed to keep recovered locators paired with given
//    erasure side information).

#include <optional>
#include <vector>

#include "sumrank/field.hpp"
#include "sumrank/linalg.hpp"
#include "sumrank/rng.hpp"
#include "sumrank/skew.hpp"

namespace sumrank {

struct SyndromeSequences {
    // sequence j holds the constrained coefficients only; offsets are applied by
    // the caller via truncation, so relations for a length-L register read
    //   sum_{nu=1}^{L+1} lam_nu sigma^{nu-1}(s_{j,l-nu+1}) = 0,  l = L+1..len_j.
    std::vector<std::vector<Fe>> seqs;
    Twist twist = Twist::theta_inv;
};

struct SynthesisResult {
    SkewPoly connection;  // constant coefficient 1
    int length = 0;       // register length (>= deg connection)
    bool unique = false;  // no step admitted a free choice
};

namespace kernels {

// Builds the stacked linear system for register length L: unknowns lam_2..lam_{L+1}.
inline void build_register_system(const FieldTower& T, const SyndromeSequences& in, int L, Mat& A,
                                  std::vector<Fe>& rhs) {
    int rows = 0;
    for (const auto& s : in.seqs) rows += std::max(0, static_cast<int>(s.size()) - L);
    A = Mat(rows, L, Layer::qm);
    rhs.assign(static_cast<std::size_t>(rows), T.zero());
    int r = 0;
    for (const auto& s : in.seqs) {
        int len = static_cast<int>(s.size());
        for (int l = L + 1; l <= len; ++l, ++r) {
            for (int nu = 2; nu <= L + 1; ++nu) {
                int idx = l - nu + 1;  // 1-indexed
                Fe e = (idx >= 1 && idx <= len) ? s[static_cast<std::size_t>(idx - 1)] : T.zero();
                A.at(r, nu - 2) = T.sigma(in.twist, e, nu - 1);
            }
            rhs[static_cast<std::size_t>(r)] = T.neg(s[static_cast<std::size_t>(l - 1)]);
        }
    }
}

// Minimal-length synthesis: grow the register until the stacked relations become
// satisfiable; the solution is unique exactly when no tap is left free (rank
// slack zero) at the minimal length.
inline SynthesisResult sr_synthesize(const FieldTower& T, const SyndromeSequences& in) {
    int maxlen = 0;
    bool any = false;
    for (const auto& s : in.seqs) {
        maxlen = std::max(maxlen, static_cast<int>(s.size()));
        any = any || !s.empty();
    }
    require(any, Err::AllSequencesEmpty, "shift-register synthesis needs a nonempty sequence");
    for (int L = 0;; ++L) {
        Mat A;
        std::vector<Fe> rhs;
        build_register_system(T, in, L, A, rhs);
        auto sol = solve_affine(T, A, rhs);
        if (!sol.consistent) continue;
        std::vector<Fe> c(static_cast<std::size_t>(L) + 1, T.zero());
        c[0] = T.one();
        for (int i = 0; i < L; ++i) c[static_cast<std::size_t>(i) + 1] = sol.x[static_cast<std::size_t>(i)];
        SynthesisResult out;
        out.connection = skew::make(T, std::move(c), in.twist);
        out.length = L;
        out.unique = (sol.rank == L);
        return out;
        // L = maxlen yields an unconstrained (trivially consistent) system, so the
        // loop always terminates.
    }
}

// Basis of the root space of p under op-evaluation with parameter xi_i, extending
// the given seed roots. Target dimension deg gcrd(x^m - N_m(xi_i), p); candidates
// are drawn as images op(g, b) of uniform b, where n = gcrd * g.
inline std::vector<Fe> root_space_basis(const FieldTower& T, const SkewPoly& p, Fe xi_i,
                                        std::span<const Fe> seeds, Rng& rng,
                                        int budget_per_missing = 0) {
    require(!p.is_zero(), Err::ZeroOperand, "root space of the zero polynomial");
    int m = T.m();
    // n(x) = x^m - N_m(xi_i) in the same twist ring
    std::vector<Fe> nc(static_cast<std::size_t>(m) + 1, T.zero());
    nc[0] = T.neg(T.gen_norm(p.twist == Twist::theta ? Twist::theta : Twist::theta_inv, m, xi_i));
    nc[static_cast<std::size_t>(m)] = T.one();
    SkewPoly nfull = skew::make(T, std::move(nc), p.twist);
    SkewPoly h = skew::gcrd(T, nfull, p);
    int target = std::max(0, h.deg());
    SkewPoly g = skew::left_divmod(T, nfull, h).first;  // n = h g
    require(skew::left_divmod(T, nfull, h).second.is_zero(), Err::KernelDimensionUnexpected,
            "gcrd does not left-divide the full annihilator");

    std::vector<Fe> basis(seeds.begin(), seeds.end());
    Mat coords(target, m, Layer::base);
    auto put = [&](int row, Fe v) {
        auto c = T.ext(v);
        for (int j = 0; j < m; ++j) coords.at(row, j) = c[static_cast<std::size_t>(j)];
    };
    for (std::size_t i = 0; i < basis.size(); ++i) {
        require(skew::op_eval(T, p, basis[i], xi_i).v == 0, Err::BadSeed, "seed is not a root");
        put(static_cast<int>(i), basis[i]);
    }
    require(static_cast<int>(basis.size()) <= target, Err::BadSeed, "more seeds than the root space dimension");
    {
        Mat sub(static_cast<int>(basis.size()), m, Layer::base);
        for (int i = 0; i < sub.rows; ++i)
            for (int j = 0; j < m; ++j) sub.at(i, j) = coords.at(i, j);
        require(rank_of(T, sub) == sub.rows, Err::BadSeed, "seeds are F_q-dependent");
    }
    if (budget_per_missing <= 0) budget_per_missing = 64 * m;
    std::uint64_t N = T.lv(Layer::qm).order();
    long budget = static_cast<long>(budget_per_missing) * std::max(1, target - static_cast<int>(basis.size()));
    long tries = 0;
    while (static_cast<int>(basis.size()) < target) {
        require(tries++ <= budget, Err::AttemptBudgetExceeded, "root-space sampling budget exhausted");
        Fe b = T.el(1 + rng.below(N - 1));
        Fe y = skew::op_eval(T, g, b, xi_i);
        if (y.v == 0) continue;
        Mat sub(static_cast<int>(basis.size()) + 1, m, Layer::base);
        for (int i = 0; i < static_cast<int>(basis.size()); ++i)
            for (int j = 0; j < m; ++j) sub.at(i, j) = coords.at(i, j);
        auto c = T.ext(y);
        for (int j = 0; j < m; ++j) sub.at(static_cast<int>(basis.size()), j) = c[static_cast<std::size_t>(j)];
        if (rank_of(T, sub) == static_cast<int>(basis.size()) + 1) {
            put(static_cast<int>(basis.size()), y);
            basis.push_back(y);
        }
    }
    return basis;
}

// Some z with op(p, z, xi_i) = target; the operator is F_q-linear, so this is an
// m x m base-field solve. Returns nullopt when the target is outside the image.
inline std::optional<Fe> op_preimage(const FieldTower& T, const SkewPoly& p, Fe xi_i, Fe target) {
    int m = T.m();
    Mat A(m, m, Layer::base);
    for (int c = 0; c < m; ++c) {
        std::vector<Fe> coords(static_cast<std::size_t>(m), Fe{0, Layer::base});
        coords[static_cast<std::size_t>(c)] = Fe{1, Layer::base};
        Fe basis_el = T.ext_inv(coords);
        auto img = T.ext(skew::op_eval(T, p, basis_el, xi_i));
        for (int r = 0; r < m; ++r) A.at(r, c) = img[static_cast<std::size_t>(r)];
    }
    auto tgt = T.ext(target);
    auto sol = solve_affine(T, A, tgt);
    if (!sol.consistent) return std::nullopt;
    return T.ext_inv(sol.x);
}

// Triangular solver for M^{tw}_{d}(x)_{xi} a^T = s^T: given the multiplier a of
// full weight t and per-entry parameters, recovers the Moore-position vector x
// from the first t right-hand entries.
inline std::vector<Fe> gabidulin_solve(const FieldTower& T, Twist tw, std::span<const Fe> a,
                                       std::span<const Fe> xi_per_entry, std::span<const Fe> s) {
    int t = static_cast<int>(a.size());
    require(static_cast<int>(xi_per_entry.size()) == t, Err::ShapeMismatch, "one parameter per entry");
    require(static_cast<int>(s.size()) >= t, Err::ShapeMismatch, "right-hand side too short");
    if (t == 0) return {};
    Layer ly = a[0].layer;
    Mat A(t, t, ly), Q(t, t, ly);
    for (int j = 0; j < t; ++j) {
        A.at(0, j) = a[static_cast<std::size_t>(j)];
        Q.at(0, j) = s[static_cast<std::size_t>(j)];
    }
    auto embed_xi = [&](int j) { return T.embed(xi_per_entry[static_cast<std::size_t>(j)], ly); };
    for (int i = 0; i + 1 < t; ++i) {
        require(A.at(i, i).v != 0, Err::ZeroPivot, "zero pivot: multiplier is not full weight");
        Fe kap = T.mul(T.mul(T.inv(A.at(i, i)), T.sigma(tw, A.at(i, i))), T.inv(embed_xi(i)));
        for (int j = 0; j < t; ++j) {
            if (j > i) A.at(i + 1, j) = T.sub(A.at(i, j), T.sigma(tw, T.mul(T.mul(kap, A.at(i, j)), embed_xi(j)), -1));
            if (j < t - i - 1) Q.at(i + 1, j) = T.sub(Q.at(i, j), T.sigma(tw, T.mul(kap, Q.at(i, j + 1)), -1));
        }
    }
    require(A.at(t - 1, t - 1).v != 0, Err::ZeroPivot, "zero pivot: multiplier is not full weight");
    std::vector<Fe> x(static_cast<std::size_t>(t), T.zero(ly));
    x[static_cast<std::size_t>(t - 1)] = T.mul(T.inv(A.at(t - 1, t - 1)), Q.at(t - 1, 0));
    for (int i = t - 2; i >= 0; --i) {
        Fe acc = Q.at(i, 0);
        for (int j = i + 1; j < t; ++j) acc = T.sub(acc, T.mul(A.at(i, j), x[static_cast<std::size_t>(j)]));
        x[static_cast<std::size_t>(i)] = T.mul(T.inv(A.at(i, i)), acc);
    }
    return x;
}

}  // namespace kernels
}  // namespace sumrank
