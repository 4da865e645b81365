#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "sumrank/field.hpp"
#include "sumrank/rng.hpp"

using namespace sumrank;

namespace {
// F_9 with the primitive modulus x^2 + 2x + 2; gamma is the class of x.
FieldTower f9_example() { return FieldTower::make(3, 2, 1, {2, 2, 1}); }
}  // namespace

TEST_CASE("make_field validates its inputs") {
    CHECK_THROWS_AS(FieldTower::make(6, 2), Error);            // 6 = 2*3 is not a prime power
    CHECK_THROWS_AS(FieldTower::make(1, 2), Error);
    CHECK_THROWS_AS(FieldTower::make(3, 2, 1, {0, 0, 1}), Error);  // x^2 reducible
    CHECK_THROWS_AS(FieldTower::make(3, 2, 1, {2, 0, 1}), Error);  // x^2 + 2 = (x-1)(x+1)
    CHECK_THROWS_AS(FieldTower::make(2, 4, 2), Error);             // gcd(u, m) != 1
    CHECK_NOTHROW(FieldTower::make(2, 1, 1));                      // theta = id on F_2
    CHECK_NOTHROW(FieldTower::make(4, 3));                         // q = 2^2 prime power
}

TEST_CASE("the deterministic default modulus for F_9 is x^2 + 1") {
    auto T = FieldTower::make(3, 2);
    CHECK(T.params().modulus_qm == std::vector<std::uint64_t>{1, 0, 1});
    auto T2 = FieldTower::make(3, 2);
    CHECK(T2.params().modulus_qm == T.params().modulus_qm);
    CHECK(T2.gamma() == T.gamma());
}

TEST_CASE("F_9 worked-field sanity: gamma powers and theta") {
    auto T = f9_example();
    // gamma = x (packed 3), gamma^2 = gamma + 1, gamma^4 = 2
    CHECK(T.gamma().v == 3);
    CHECK(T.gamma_pow(2).v == 4);   // 1 + x
    CHECK(T.gamma_pow(4).v == 2);   // constant 2
    CHECK(T.gamma_pow(8).v == 1);
    // theta(gamma) = gamma^3
    CHECK(T.theta(T.gamma()) == T.gamma_pow(3));
    // theta^0 = id; theta^{-1} inverts theta
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        Fe a = T.el(rng.below(9));
        CHECK(T.theta(a, 0) == a);
        CHECK(T.theta(T.theta(a, 1), -1) == a);
        Fe b = T.el(rng.below(9));
        CHECK(T.theta(T.mul(a, b)) == T.mul(T.theta(a), T.theta(b)));
    }
}

TEST_CASE("theta has order m and fixes exactly F_q (exhaustive)") {
    for (auto [q, m] : {std::pair<std::uint64_t, int>{2, 3}, {3, 2}, {3, 4}, {2, 8}}) {
        auto T = FieldTower::make(q, m);
        const auto& L = T.lv(Layer::qm);
        std::size_t fixed = 0;
        for (std::uint64_t v = 0; v < L.order(); ++v) {
            Fe a = T.el(v);
            CHECK(T.theta(a, m) == a);
            if (T.theta(a) == a) ++fixed;
        }
        CHECK(fixed == q);  // exactly the embedded F_q
        for (std::uint64_t v = 0; v < q; ++v) CHECK(T.theta(T.el(v)) == T.el(v));
    }
}

TEST_CASE("generalized norms") {
    auto T = f9_example();
    Fe g = T.gamma();
    CHECK(T.gen_norm(Twist::theta, 0, g) == T.one());
    CHECK(T.gen_norm(Twist::theta, 1, g) == g);
    // N_2(gamma) = gamma * gamma^3 = gamma^4
    CHECK(T.gen_norm(Twist::theta, 2, g) == T.gamma_pow(4));
    // multiplicativity N_{i+j}(a) = theta^j(N_i(a)) N_j(a)
    Rng rng(7);
    for (auto [q, m] : {std::pair<std::uint64_t, int>{2, 3}, {3, 2}, {3, 4}}) {
        auto Tw = FieldTower::make(q, m);
        for (int rep = 0; rep < 20; ++rep) {
            Fe a = Tw.el(rng.below(Tw.lv(Layer::qm).order()));
            for (int i = 0; i <= 2 * m; ++i)
                for (int j = 0; j <= 2 * m; ++j) {
                    Fe lhs = Tw.gen_norm(Twist::theta, i + j, a);
                    Fe rhs = Tw.mul(Tw.theta(Tw.gen_norm(Twist::theta, i, a), j), Tw.gen_norm(Twist::theta, j, a));
                    REQUIRE(lhs == rhs);
                }
        }
    }
}

TEST_CASE("norm identities hold for 0 <= alpha, beta <= 2m") {
    Rng rng(13);
    for (auto [q, m] : {std::pair<std::uint64_t, int>{2, 3}, {3, 2}, {3, 4}}) {
        auto T = FieldTower::make(q, m);
        std::uint64_t N = T.lv(Layer::qm).order();
        for (int rep = 0; rep < 50; ++rep) {
            Fe x = T.el(1 + rng.below(N - 1));
            for (int a = 0; a <= 2 * m; ++a)
                for (int b = 0; b <= 2 * m; ++b) REQUIRE(T.norm_identity_check(a, b, x));
        }
    }
    auto T9 = f9_example();
    CHECK(T9.norm_identity_check(0, 0, T9.gamma()));
    CHECK(T9.norm_identity_check(3, 5, T9.gamma()));
    CHECK(T9.norm_identity_check(5, 3, T9.gamma()));
    CHECK_THROWS_AS(T9.norm_identity_check(1, 1, T9.zero()), Error);
}

TEST_CASE("conjugacy class representatives") {
    SECTION("q = 2: single class") {
        auto T = FieldTower::make(2, 3);
        auto reps = T.conjugacy_representatives();
        REQUIRE(reps.size() == 1);
        CHECK(reps[0] == T.one());
    }
    SECTION("q = 3 on F_9: 1 and gamma") {
        auto T = f9_example();
        auto reps = T.conjugacy_representatives();
        REQUIRE(reps.size() == 2);
        CHECK(reps[0] == T.one());
        CHECK(reps[1] == T.gamma());
    }
    SECTION("q = 5: brute-force pairwise non-conjugate and covering") {
        auto T = FieldTower::make(5, 2);
        auto reps = T.conjugacy_representatives();
        REQUIRE(reps.size() == 4);
        const auto& L = T.lv(Layer::qm);
        // brute-force conjugacy: a ~ b iff exists c != 0 with theta(c) a c^{-1} = b
        auto conjugate = [&](Fe a, Fe b) {
            for (std::uint64_t c = 1; c < L.order(); ++c) {
                Fe ce = T.el(c);
                if (T.mul(T.mul(T.theta(ce), a), T.inv(ce)) == b) return true;
            }
            return false;
        };
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j) REQUIRE(!conjugate(reps[i], reps[j]));
        // coverage of all nonzero elements
        std::size_t covered = 0;
        for (std::uint64_t v = 1; v < L.order(); ++v) {
            Fe a = T.el(v);
            bool hit = false;
            for (auto r : reps) hit = hit || conjugate(r, a);
            covered += hit;
        }
        CHECK(covered == L.order() - 1);
        // representative matching via the norm-based class id agrees with brute force
        for (std::uint64_t v = 1; v < L.order(); ++v)
            for (auto r : reps)
                CHECK((T.conjugacy_class_id(T.el(v)) == T.conjugacy_class_id(r)) == conjugate(r, T.el(v)));
    }
    SECTION("exhaustive coverage for q^m <= 2^12") {
        auto T = FieldTower::make(3, 4);
        auto reps = T.conjugacy_representatives();
        std::set<std::uint64_t> ids;
        for (auto r : reps) ids.insert(T.conjugacy_class_id(r));
        REQUIRE(ids.size() == reps.size());
        for (std::uint64_t v = 1; v < T.lv(Layer::qm).order(); ++v)
            CHECK(ids.count(T.conjugacy_class_id(T.el(v))) == 1);
    }
}

TEST_CASE("ext is the polynomial-basis coordinate map") {
    auto T = FieldTower::make(3, 4);
    auto z = T.ext(T.zero());
    for (auto c : z) CHECK(c.v == 0);
    // basis elements map to standard basis vectors
    for (int i = 0; i < 4; ++i) {
        std::uint64_t idx = 1;
        for (int j = 0; j < i; ++j) idx *= 3;
        auto coords = T.ext(T.el(idx));
        for (int j = 0; j < 4; ++j) CHECK(coords[static_cast<std::size_t>(j)].v == (i == j ? 1u : 0u));
    }
    Rng rng(3);
    for (int rep = 0; rep < 100; ++rep) {
        Fe x = T.el(rng.below(81));
        auto coords = T.ext(x);
        CHECK(T.ext_inv(coords) == x);
        // F_q-linearity
        Fe y = T.el(rng.below(81));
        Fe c = T.el(rng.below(3), Layer::base);
        auto cx = T.ext(T.add(T.mul(T.embed(c, Layer::qm), x), y));
        auto ex = T.ext(x);
        auto ey = T.ext(y);
        for (int j = 0; j < 4; ++j) {
            Fe expect = T.add(T.mul(c, ex[static_cast<std::size_t>(j)]), ey[static_cast<std::size_t>(j)]);
            CHECK(cx[static_cast<std::size_t>(j)] == expect);
        }
    }
}

TEST_CASE("kappa values and monotonicity") {
    CHECK(std::abs(kappa(2, 100) - 3.463) < 5e-4);
    CHECK(std::abs(kappa(3, 100) - 1.785) < 5e-4);
    CHECK(std::abs(kappa(81, 100) - 1.013) < 5e-4);
    CHECK_THROWS_AS(kappa(1, 100), Error);
    double prev = 0.0;
    for (int t = 1; t <= 30; ++t) {
        double v = kappa(2, t);
        CHECK(v >= prev);
        prev = v;
    }
    for (std::uint64_t q = 2; q < 30; ++q) CHECK(kappa(q, 100) >= kappa(q + 1, 100));
}

TEST_CASE("layer mismatch is rejected") {
    auto T = FieldTower::make(3, 2);
    CHECK_THROWS_AS(T.add(T.one(Layer::qm), T.one(Layer::base)), Error);
}

TEST_CASE("tower with interleaving layer F_{q^{ms}}") {
    FieldTower::Params p;
    p.q = 3;
    p.m = 2;
    p.s = 2;
    FieldTower T(p);
    REQUIRE(T.has_qms());
    const auto& Lq = T.lv(Layer::qms);
    CHECK(Lq.order() == 81);  // (q^m)^s = 9^2
    Rng rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        Fe a = T.el(rng.below(9), Layer::qm);
        // theta on the big layer restricts to theta on F_{q^m}
        Fe up = T.embed(a, Layer::qms);
        CHECK(T.theta(up) == T.embed(T.theta(a), Layer::qms));
        // rationals round-trip
        auto back = T.to_qm(up);
        REQUIRE(back.has_value());
        CHECK(*back == a);
        // theta is a homomorphism up there
        Fe x = T.el(rng.below(81), Layer::qms);
        Fe y = T.el(rng.below(81), Layer::qms);
        CHECK(T.theta(T.mul(x, y)) == T.mul(T.theta(x), T.theta(y)));
        CHECK(T.theta(x, 4) == x);  // order ms = 4
    }
    // combine packs per-component values along the polynomial basis
    Fe c0 = T.el(5, Layer::qm), c1 = T.el(7, Layer::qm);
    std::vector<Fe> comps{c0, c1};
    Fe packed = T.combine(comps);
    CHECK(packed.v == 5 + 7 * 9);
    CHECK(!T.to_qm(packed).has_value());
}

TEST_CASE("large untabled level behaves like a field") {
    auto T = FieldTower::make(2, 32);  // beyond table cap: generic arithmetic
    const auto& L = T.lv(Layer::qm);
    CHECK(L.order() == (std::uint64_t(1) << 32));
    CHECK(!L.tabled());
    Rng rng(17);
    for (int rep = 0; rep < 25; ++rep) {
        Fe a = T.el(1 + rng.below(L.order() - 1));
        Fe b = T.el(1 + rng.below(L.order() - 1));
        CHECK(T.mul(a, T.inv(a)) == T.one());
        CHECK(T.mul(a, b) == T.mul(b, a));
        CHECK(T.theta(T.mul(a, b)) == T.mul(T.theta(a), T.theta(b)));
        CHECK(T.theta(T.theta(a, 5), -5) == a);
    }
}
