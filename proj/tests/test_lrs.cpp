#include <catch2/catch_amalgamated.hpp>

#include "sumrank/lrs.hpp"
#include "sumrank/rng.hpp"

using namespace sumrank;

namespace {

LrsCode random_code(const FieldTower& T, const LengthPartition& p, int k, Rng& rng) {
    std::uint64_t N = T.lv(Layer::qm).order();
    for (;;) {
        std::vector<Fe> beta(static_cast<std::size_t>(p.n()));
        for (auto& b : beta) b = T.el(rng.below(N));
        std::vector<Fe> xi;
        std::vector<std::uint64_t> used;
        while (static_cast<int>(xi.size()) < p.ell()) {
            std::uint64_t e = rng.below(T.q() - 1);
            bool dup = false;
            for (auto u : used) dup = dup || u == e;
            if (!dup) {
                used.push_back(e);
                xi.push_back(T.gamma_pow(static_cast<std::int64_t>(e)));
            }
        }
        try {
            return LrsCode(T, std::move(beta), std::move(xi), p, k);
        } catch (const Error&) {
            continue;  // dependent beta block; resample
        }
    }
}

}  // namespace

TEST_CASE("code construction validates parameters") {
    auto T = FieldTower::make(3, 4);
    CHECK_THROWS_AS(LrsCode::with_defaults(T, LengthPartition({1}), 1), Error);  // k < n fails
    CHECK_THROWS_AS(LrsCode::with_defaults(T, LengthPartition({5, 4}), 3), Error);  // block wider than m
    {
        // dependent beta block
        std::vector<Fe> beta{T.one(), T.one(), T.gamma(), T.gamma_pow(2)};
        std::vector<Fe> xi{T.one()};
        CHECK_THROWS_AS(LrsCode(T, beta, xi, LengthPartition({4}), 2), Error);
    }
    {
        // conjugate xi entries: gamma and theta(gamma) share a class
        std::vector<Fe> beta{T.one(), T.gamma(), T.one(), T.gamma()};
        std::vector<Fe> xi{T.gamma(), T.theta(T.gamma())};
        CHECK_THROWS_AS(LrsCode(T, beta, xi, LengthPartition({2, 2}), 2), Error);
    }
}

TEST_CASE("the s=4 reference-parameter code has the expected derived data") {
    auto T = FieldTower::make(3, 4);
    auto code = LrsCode::with_defaults(T, LengthPartition({4, 4}), 3);
    CHECK(code.n() == 8);
    CHECK(code.k() == 3);
    // wt(h) = n was verified at construction; recheck through the public surface
    CHECK(weights::weight_plain(T, code.partition(), code.h()) == 8);
    // first nonzero entry of h is normalized to one
    Fe first = T.zero();
    for (auto v : code.h())
        if (v.v != 0) {
            first = v;
            break;
        }
    CHECK(first == T.one());
    // H annihilates 100 random codewords
    Rng rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<Fe> f(3);
        for (auto& c : f) c = T.el(rng.below(81));
        auto cw = code.encode(skew::make(T, std::move(f), Twist::theta));
        for (auto v : code.syndrome(cw)) CHECK(v.v == 0);
    }
}

TEST_CASE("encoding") {
    auto T = FieldTower::make(3, 4);
    Rng rng(8);
    auto code = random_code(T, LengthPartition({4, 4}), 3, rng);
    SECTION("zero and constant messages") {
        auto z = code.encode(skew::zero(T, Twist::theta));
        for (auto v : z) CHECK(v.v == 0);
        Fe c = T.el(1 + rng.below(80));
        auto cw = code.encode(skew::make(T, {c}, Twist::theta));
        for (int i = 0; i < code.n(); ++i)
            CHECK(cw[static_cast<std::size_t>(i)] == T.mul(c, code.beta()[static_cast<std::size_t>(i)]));
    }
    SECTION("degree bound enforced") {
        CHECK_THROWS_AS(code.encode(skew::monomial(T, T.one(), 3, Twist::theta)), Error);
    }
    SECTION("coefficient-vector-times-G equals operator evaluation") {
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<Fe> f(3);
            for (auto& c : f) c = T.el(rng.below(81));
            std::vector<Fe> coeffs = f;
            auto cw = code.encode(skew::make(T, std::move(f), Twist::theta));
            auto alt = vec_mat(T, coeffs, code.generator());
            CHECK(cw == alt);
        }
    }
    SECTION("encoding is linear in the message") {
        for (int rep = 0; rep < 25; ++rep) {
            std::vector<Fe> f(3), g(3);
            for (auto& c : f) c = T.el(rng.below(81));
            for (auto& c : g) c = T.el(rng.below(81));
            Fe lam = T.el(rng.below(81));
            std::vector<Fe> h(3);
            for (int i = 0; i < 3; ++i) h[static_cast<std::size_t>(i)] = T.add(T.mul(lam, f[static_cast<std::size_t>(i)]), g[static_cast<std::size_t>(i)]);
            auto cf = code.encode(skew::make(T, std::vector<Fe>(f), Twist::theta));
            auto cg = code.encode(skew::make(T, std::vector<Fe>(g), Twist::theta));
            auto ch = code.encode(skew::make(T, std::vector<Fe>(h), Twist::theta));
            for (int i = 0; i < code.n(); ++i)
                CHECK(ch[static_cast<std::size_t>(i)] ==
                      T.add(T.mul(lam, cf[static_cast<std::size_t>(i)]), cg[static_cast<std::size_t>(i)]));
        }
    }
}

TEST_CASE("dual vector via the closed 2x2 kernel") {
    // n = 2, k = 1, one block: h is orthogonal to beta
    auto T = FieldTower::make(3, 2, 1, {2, 2, 1});
    std::vector<Fe> beta{T.one(), T.gamma()};
    std::vector<Fe> xi{T.one()};
    LrsCode code(T, beta, xi, LengthPartition({2}), 1);
    Fe dot = T.add(T.mul(code.h()[0], beta[0]), T.mul(code.h()[1], beta[1]));
    CHECK(dot.v == 0);
}

TEST_CASE("syndromes") {
    auto T = FieldTower::make(3, 4);
    Rng rng(13);
    auto code = random_code(T, LengthPartition({4, 4}), 3, rng);
    const int n = code.n();
    SECTION("codewords have zero syndrome; syndromes see only the error") {
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<Fe> f(3);
            for (auto& c : f) c = T.el(rng.below(81));
            auto cw = code.encode(skew::make(T, std::move(f), Twist::theta));
            std::vector<Fe> e(static_cast<std::size_t>(n));
            for (auto& v : e) v = T.el(rng.below(81));
            std::vector<Fe> y(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = T.add(cw[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
            CHECK(code.syndrome(y) == code.syndrome(e));
        }
    }
    SECTION("syndrome entries match the locator form for a known decomposition") {
        LengthPartition p = code.partition();
        for (int rep = 0; rep < 25; ++rep) {
            int tau = 1 + static_cast<int>(rng.below(4));
            Mat E = weights::sample_vertical(T, rng, p, 1, tau);
            auto d = weights::decompose_vertical(T, p, E);
            std::vector<Fe> e(static_cast<std::size_t>(n));
            for (int c = 0; c < n; ++c) e[static_cast<std::size_t>(c)] = E.at(0, c);
            auto syn = code.syndrome(e);
            // x = h B^T, with per-entry parameters theta^{-1}(xi) by rank partition
            std::vector<Fe> x(static_cast<std::size_t>(tau), T.zero());
            for (int t = 0; t < tau; ++t) {
                Fe acc = T.zero();
                for (int c = 0; c < n; ++c) {
                    Fe bc = d.B.at(t, c);
                    if (bc.v != 0) acc = T.add(acc, T.mul(code.h()[static_cast<std::size_t>(c)], T.embed(bc, Layer::qm)));
                }
                x[static_cast<std::size_t>(t)] = acc;
            }
            auto xit = code.expand_ranks(code.xi_tilde(), d.rparts);
            std::vector<Fe> a(static_cast<std::size_t>(tau));
            for (int t = 0; t < tau; ++t) a[static_cast<std::size_t>(t)] = d.A.at(0, t);
            std::vector<Fe> cur = x;
            for (int l = 0; l < n - code.k(); ++l) {
                Fe acc = T.zero();
                for (int t = 0; t < tau; ++t) acc = T.add(acc, T.mul(a[static_cast<std::size_t>(t)], cur[static_cast<std::size_t>(t)]));
                CHECK(acc == syn[static_cast<std::size_t>(l)]);
                for (int t = 0; t < tau; ++t)
                    cur[static_cast<std::size_t>(t)] = skew::op_apply(T, Twist::theta_inv, cur[static_cast<std::size_t>(t)], xit[static_cast<std::size_t>(t)]);
            }
        }
    }
}

TEST_CASE("locations from locators") {
    auto T = FieldTower::make(3, 4);
    Rng rng(17);
    auto code = random_code(T, LengthPartition({4, 4}), 3, rng);
    SECTION("left-inverse identity on crafted locators") {
        for (int block = 0; block < 2; ++block) {
            int ni = code.partition().blocks[static_cast<std::size_t>(block)];
            for (int rep = 0; rep < 30; ++rep) {
                std::vector<Fe> brow(static_cast<std::size_t>(ni));
                for (auto& v : brow) v = T.el(rng.below(3), Layer::base);
                Fe x = T.zero();
                for (int c = 0; c < ni; ++c)
                    x = T.add(x, T.mul(code.h()[static_cast<std::size_t>(code.partition().offset(block) + c)],
                                       T.embed(brow[static_cast<std::size_t>(c)], Layer::qm)));
                std::vector<Fe> xb{x};
                Mat B = code.locations_from_locators(xb, block);
                REQUIRE(B.rows == 1);
                for (int c = 0; c < ni; ++c) CHECK(B.at(0, c) == brow[static_cast<std::size_t>(c)]);
            }
        }
    }
    SECTION("zero locator maps to the zero row") {
        std::vector<Fe> xb{T.zero()};
        Mat B = code.locations_from_locators(xb, 0);
        for (int c = 0; c < B.cols; ++c) CHECK(B.at(0, c).v == 0);
    }
    SECTION("round-trip over a random full B block") {
        for (int rep = 0; rep < 20; ++rep) {
            int r = 1 + static_cast<int>(rng.below(3));
            Mat B = weights::sample_rank_matrix(T, rng, r, 4, r);
            std::vector<Fe> x(static_cast<std::size_t>(r), T.zero());
            for (int t = 0; t < r; ++t) {
                Fe acc = T.zero();
                for (int c = 0; c < 4; ++c)
                    acc = T.add(acc, T.mul(code.h()[static_cast<std::size_t>(c)], T.embed(B.at(t, c), Layer::qm)));
                x[static_cast<std::size_t>(t)] = acc;
            }
            Mat B2 = code.locations_from_locators(x, 0);
            CHECK(B2 == B);
        }
    }
}

TEST_CASE("exhaustive minimum distance of a tiny code") {
    // Two blocks need two distinct nontrivial conjugacy classes, i.e. q >= 3;
    // q = 2 admits only single-block codes of this shape.
    {
        auto T2 = FieldTower::make(2, 3);
        CHECK_THROWS_AS(LrsCode(T2, {T2.one(), T2.gamma(), T2.gamma_pow(2), T2.one(), T2.gamma()},
                                {T2.one(), T2.one()}, LengthPartition({3, 2}), 2),
                        Error);
    }
    auto T = FieldTower::make(3, 3);
    auto code = LrsCode::with_defaults(T, LengthPartition({3, 2}), 2);
    const int n = code.n();
    int dmin = n + 1;
    std::uint64_t N = T.lv(Layer::qm).order();
    for (std::uint64_t f0 = 0; f0 < N; ++f0)
        for (std::uint64_t f1 = 0; f1 < N; ++f1) {
            if (f0 == 0 && f1 == 0) continue;
            auto cw = code.encode(skew::make(T, {T.el(f0), T.el(f1)}, Twist::theta));
            dmin = std::min(dmin, weights::weight_plain(T, code.partition(), cw));
        }
    CHECK(dmin == n - code.k() + 1);  // MSRD
}
