#pragma once

// Finite field tower F_q <= F_{q^m} <= F_{q^{ms}} with a distinguished automorphism
// theta(x) = x^{q^u} whose fixed field on F_{q^m} is F_q (requires gcd(u, m) = 1).
//
// Elements are packed coefficient vectors with respect to the polynomial basis of
// each extension step; an element of F_{q^m} with coefficients (c_0, ..., c_{m-1})
// over F_q is stored as the integer sum c_i * q^i. Small levels additionally carry
// exp/log tables w.r.t. a primitive element, large levels fall back to schoolbook
// polynomial arithmetic.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumrank/errors.hpp"

namespace sumrank {

enum class Layer : std::uint8_t { base = 0, qm = 1, qms = 2 };

enum class Twist : std::int8_t { theta = 1, theta_inv = -1 };

inline Twist other(Twist t) { return t == Twist::theta ? Twist::theta_inv : Twist::theta; }

struct Fe {
    std::uint64_t v = 0;
    Layer layer = Layer::qm;
    friend bool operator==(const Fe& a, const Fe& b) { return a.v == b.v && a.layer == b.layer; }
    friend bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }
};

// Global cost counter; bumped once per arithmetic/automorphism call on the tower.
inline thread_local std::uint64_t field_op_count = 0;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

// One level of the tower: either a prime field Z_p or an extension of the level
// below by a monic irreducible modulus. Operates on packed indices.
class FieldLevel {
  public:
    using Poly = std::vector<std::uint64_t>;  // coefficients over the base level, low degree first

    static std::unique_ptr<FieldLevel> prime(std::uint64_t p) {
        require(detail::is_prime_u64(p), Err::NonPrimePowerQ, "characteristic is not prime");
        auto lv = std::unique_ptr<FieldLevel>(new FieldLevel());
        lv->base_ = nullptr;
        lv->p_ = p;
        lv->degree_ = 1;
        lv->base_order_ = p;
        lv->order_ = p;
        lv->init_tables_if_small();
        lv->find_gamma();
        return lv;
    }

    // modulus: monic of length degree+1 over base, or empty to pick the
    // lexicographically first irreducible (scanning packed low coefficients upward).
    static std::unique_ptr<FieldLevel> extension(const FieldLevel* base, int degree, Poly modulus) {
        require(degree >= 2, Err::BadDimension, "extension degree must be >= 2");
        auto lv = std::unique_ptr<FieldLevel>(new FieldLevel());
        lv->base_ = base;
        lv->p_ = base->p_;
        lv->degree_ = degree;
        lv->base_order_ = base->order_;
        std::uint64_t order = 1;
        for (int i = 0; i < degree; ++i) {
            require(order <= (std::uint64_t(1) << 62) / base->order_, Err::BadDimension,
                    "field order does not fit in 64 bits");
            order *= base->order_;
        }
        lv->order_ = order;
        if (modulus.empty()) {
            modulus = lv->scan_default_modulus();
        } else {
            require(modulus.size() == static_cast<std::size_t>(degree + 1) && modulus.back() == 1,
                    Err::ReducibleModulus, "modulus must be monic of the stated degree");
            for (auto c : modulus)
                require(c < base->order_, Err::ReducibleModulus, "modulus coefficient out of range");
            require(lv->poly_irreducible(modulus), Err::ReducibleModulus, "modulus is reducible");
        }
        lv->modulus_ = std::move(modulus);
        lv->init_tables_if_small();
        lv->find_gamma();
        return lv;
    }

    std::uint64_t order() const { return order_; }
    std::uint64_t base_order() const { return base_order_; }
    std::uint64_t characteristic() const { return p_; }
    int degree() const { return degree_; }
    const Poly& modulus() const { return modulus_; }
    const FieldLevel* base() const { return base_; }
    std::uint64_t gamma() const { return gamma_; }
    bool tabled() const { return !exp_.empty(); }

    void unpack(std::uint64_t a, std::uint64_t* out) const {
        for (int i = 0; i < degree_; ++i) {
            out[i] = a % base_order_;
            a /= base_order_;
        }
    }
    std::uint64_t pack(const std::uint64_t* digits) const {
        std::uint64_t v = 0;
        for (int i = degree_ - 1; i >= 0; --i) v = v * base_order_ + digits[i];
        return v;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        if (!add_.empty()) return add_[a * order_ + b];
        if (!base_) return (a + b) % p_;
        std::uint64_t da[kMaxDegree], db[kMaxDegree];
        unpack(a, da);
        unpack(b, db);
        for (int i = 0; i < degree_; ++i) da[i] = base_->add(da[i], db[i]);
        return pack(da);
    }
    std::uint64_t neg(std::uint64_t a) const {
        if (!base_) return a == 0 ? 0 : p_ - a;
        std::uint64_t da[kMaxDegree];
        unpack(a, da);
        for (int i = 0; i < degree_; ++i) da[i] = base_->neg(da[i]);
        return pack(da);
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        if (a == 0 || b == 0) return 0;
        if (tabled()) return exp_[mod_e(std::uint64_t(log_[a]) + log_[b])];
        if (!base_) return detail::mulmod_u64(a, b, p_);
        return slow_mul(a, b);
    }
    std::uint64_t inv(std::uint64_t a) const {
        require(a != 0, Err::ZeroOperand, "inverse of zero");
        if (tabled()) return exp_[mod_e(order_ - 1 - log_[a])];
        return powi(a, order_ - 2);
    }
    std::uint64_t powi(std::uint64_t a, std::uint64_t e) const {
        if (tabled() && a != 0) return exp_[detail::mulmod_u64(log_[a], e % (order_ - 1), order_ - 1)];
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t log_of(std::uint64_t a) const {
        require(tabled() && a != 0, Err::ZeroOperand, "discrete log unavailable");
        return log_[a];
    }
    std::uint64_t gamma_pow(std::int64_t e) const {
        if (tabled()) {
            std::uint64_t n1 = order_ - 1;
            std::int64_t r = e % static_cast<std::int64_t>(n1);
            if (r < 0) r += static_cast<std::int64_t>(n1);
            return exp_[static_cast<std::uint64_t>(r)];
        }
        std::uint64_t n1 = order_ - 1;
        std::int64_t r = e % static_cast<std::int64_t>(n1);
        if (r < 0) r += static_cast<std::int64_t>(n1);
        return powi(gamma_, static_cast<std::uint64_t>(r));
    }

    // --- automorphism x -> x^{q_theta^u}; configured by the tower ---
    void configure_theta(std::uint64_t q_theta, int u, int theta_order) {
        theta_q_ = q_theta;
        theta_u_ = u;
        theta_order_ = theta_order;
        if (theta_order_ == 1) return;
        if (tabled()) {
            theta_exp_.resize(theta_order_);
            std::uint64_t n1 = order_ - 1;
            std::uint64_t step = 1;
            std::uint64_t qu = 1;
            for (int j = 0; j < u; ++j) qu = detail::mulmod_u64(qu, q_theta % n1, n1);
            for (int i = 0; i < theta_order_; ++i) {
                theta_exp_[i] = step;
                step = detail::mulmod_u64(step, qu, n1);
            }
        } else {
            // basis images theta^i(alpha^j) for the polynomial basis alpha^j
            theta_img_.assign(theta_order_, std::vector<std::uint64_t>(degree_));
            std::uint64_t qu = 1;
            for (int j = 0; j < u; ++j) qu *= q_theta;  // q^u fits: used as exponent
            for (int j = 0; j < degree_; ++j) theta_img_[0][j] = basis_element(j);
            for (int j = 0; j < degree_; ++j) theta_img_[1 % theta_order_][j] = powi(basis_element(j), qu);
            for (int i = 2; i < theta_order_; ++i)
                for (int j = 0; j < degree_; ++j) theta_img_[i][j] = apply_theta_once_img(theta_img_[i - 1][j]);
        }
    }
    int theta_order() const { return theta_order_; }

    std::uint64_t theta_pow(std::uint64_t a, std::int64_t i) const {
        if (theta_order_ <= 1 || a == 0) return a;
        std::int64_t r = i % theta_order_;
        if (r < 0) r += theta_order_;
        if (r == 0) return a;
        if (tabled()) return exp_[detail::mulmod_u64(log_[a], theta_exp_[r], order_ - 1)];
        // digit-wise: theta^i(sum c_j alpha^j) = sum theta^i(c_j) theta^i(alpha^j);
        // the base digits are themselves moved when the base level carries theta.
        std::uint64_t d[kMaxDegree];
        unpack(a, d);
        std::uint64_t acc = 0;
        for (int j = 0; j < degree_; ++j) {
            if (d[j] == 0) continue;
            std::uint64_t c = base_ ? base_->theta_pow(d[j], i) : d[j];
            acc = add(acc, scalar_mul(c, theta_img_[r][j]));
        }
        return acc;
    }

    // multiply by a base-level scalar
    std::uint64_t scalar_mul(std::uint64_t base_c, std::uint64_t a) const {
        if (base_c == 0 || a == 0) return 0;
        if (base_c == 1) return a;
        if (!base_) return detail::mulmod_u64(base_c, a, p_);
        std::uint64_t d[kMaxDegree];
        unpack(a, d);
        for (int i = 0; i < degree_; ++i) d[i] = base_->mul(base_c, d[i]);
        return pack(d);
    }

    std::uint64_t basis_element(int j) const {
        std::uint64_t v = 1;
        for (int i = 0; i < j; ++i) v *= base_order_;
        return v;
    }

    // --- polynomial helpers over this level (used for bootstrap and by callers) ---
    bool poly_irreducible(const Poly& f) const {
        const FieldLevel* B = base_;
        int d = static_cast<int>(f.size()) - 1;
        if (d < 1 || f.back() == 0) return false;
        // x^(Q^d) == x mod f, and gcd(x^(Q^(d/r)) - x, f) == 1 for prime r | d
        Poly x{0, 1};
        Poly t = x;
        std::vector<Poly> frob(d + 1);  // frob[j] = x^(Q^j) mod f
        frob[0] = x;
        for (int j = 1; j <= d; ++j) frob[j] = B->poly_powmod(frob[j - 1], B->order_, f);
        Poly diff = B->poly_sub(frob[d], x);
        if (!B->poly_is_zero(diff)) return false;
        for (auto r : detail::prime_factors(static_cast<std::uint64_t>(d))) {
            Poly g = B->poly_gcd(B->poly_sub(frob[d / r], x), f);
            if (B->poly_deg(g) != 0) return false;
        }
        return true;
    }

    int poly_deg(const Poly& f) const {
        int d = static_cast<int>(f.size()) - 1;
        while (d > 0 && f[d] == 0) --d;
        return (d == 0 && f[0] == 0) ? -1 : d;
    }
    bool poly_is_zero(const Poly& f) const { return poly_deg(f) < 0; }
    Poly poly_trim(Poly f) const {
        while (f.size() > 1 && f.back() == 0) f.pop_back();
        return f;
    }
    Poly poly_sub(const Poly& a, const Poly& b) const {
        Poly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
            r[i] = sub(x, y);
        }
        return poly_trim(r);
    }
    Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod) const {
        Poly c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (b[j] == 0) continue;
                c[i + j] = add(c[i + j], mul(a[i], b[j]));
            }
        }
        poly_reduce(c, mod);
        return poly_trim(c);
    }
    Poly poly_powmod(Poly a, std::uint64_t e, const Poly& mod) const {
        Poly r{1};
        while (e) {
            if (e & 1) r = poly_mulmod(r, a, mod);
            a = poly_mulmod(a, a, mod);
            e >>= 1;
        }
        return r;
    }
    Poly poly_gcd(Poly a, Poly b) const {
        a = poly_trim(a);
        b = poly_trim(b);
        while (!poly_is_zero(b)) {
            Poly r = poly_mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        if (!poly_is_zero(a)) {
            std::uint64_t ivl = inv(a[poly_deg(a)]);
            for (auto& c : a) c = mul(ivl, c);
        }
        return a;
    }
    Poly poly_mod(Poly a, const Poly& b) const {
        int db = poly_deg(b);
        std::uint64_t binv = inv(b[db]);
        for (int i = poly_deg(a); i >= db; --i) {
            if (i >= static_cast<int>(a.size()) || a[i] == 0) continue;
            std::uint64_t c = mul(a[i], binv);
            for (int j = 0; j <= db; ++j) a[i - db + j] = sub(a[i - db + j], mul(c, b[j]));
        }
        return poly_trim(a);
    }

  private:
    FieldLevel() = default;
    static constexpr int kMaxDegree = 64;
    static constexpr std::uint64_t kTableCap = std::uint64_t(1) << 16;
    static constexpr std::uint64_t kAddTableCap = 1024;

    std::uint64_t mod_e(std::uint64_t e) const {
        std::uint64_t n1 = order_ - 1;
        return e >= n1 ? e - n1 : e;
    }

    void poly_reduce(Poly& c, const Poly& mod) const {
        int dm = static_cast<int>(mod.size()) - 1;
        for (int i = static_cast<int>(c.size()) - 1; i >= dm; --i) {
            std::uint64_t f = c[i];
            if (f == 0) continue;
            c[i] = 0;
            for (int j = 0; j < dm; ++j) c[i - dm + j] = sub(c[i - dm + j], mul(f, mod[j]));
        }
        c.resize(dm);
        if (c.empty()) c.push_back(0);
    }

    // multiplication in this level via base-level polynomial arithmetic
    std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t da[kMaxDegree], db[kMaxDegree];
        unpack(a, da);
        unpack(b, db);
        std::uint64_t c[2 * kMaxDegree] = {0};
        for (int i = 0; i < degree_; ++i) {
            if (da[i] == 0) continue;
            for (int j = 0; j < degree_; ++j) {
                if (db[j] == 0) continue;
                c[i + j] = base_->add(c[i + j], base_->mul(da[i], db[j]));
            }
        }
        for (int i = 2 * degree_ - 2; i >= degree_; --i) {
            std::uint64_t f = c[i];
            if (f == 0) continue;
            c[i] = 0;
            for (int j = 0; j < degree_; ++j) c[i - degree_ + j] = base_->sub(c[i - degree_ + j], base_->mul(f, modulus_[j]));
        }
        return pack(c);
    }

    Poly scan_default_modulus() const {
        const FieldLevel* B = base_;
        std::uint64_t cap = 1;
        for (int i = 0; i < degree_; ++i) cap *= base_order_;
        for (std::uint64_t k = 0; k < cap; ++k) {
            Poly f(degree_ + 1, 0);
            std::uint64_t x = k;
            for (int i = 0; i < degree_; ++i) {
                f[i] = x % base_order_;
                x /= base_order_;
            }
            f[degree_] = 1;
            if (poly_irreducible(f)) return f;
        }
        fail(Err::ReducibleModulus, "no irreducible modulus found");
    }

    void init_tables_if_small() {
        if (order_ > kTableCap) return;
        // need a generator first when filling exp by repeated multiplication;
        // bootstrap with slow ops, so find gamma before tables exist.
        find_gamma();
        exp_.assign(order_ - 1, 1);
        log_.assign(order_, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t i = 0; i < order_ - 1; ++i) {
            exp_[i] = static_cast<std::uint32_t>(cur);
            log_[cur] = static_cast<std::uint32_t>(i);
            cur = base_ ? slow_mul(cur, gamma_) : detail::mulmod_u64(cur, gamma_, p_);
        }
        if (order_ <= kAddTableCap) {
            add_.assign(order_ * order_, 0);
            for (std::uint64_t a = 0; a < order_; ++a)
                for (std::uint64_t b = 0; b < order_; ++b) {
                    std::uint64_t s;
                    if (!base_) {
                        s = (a + b) % p_;
                    } else {
                        std::uint64_t da[kMaxDegree], db[kMaxDegree];
                        unpack(a, da);
                        unpack(b, db);
                        for (int i = 0; i < degree_; ++i) da[i] = base_->add(da[i], db[i]);
                        s = pack(da);
                    }
                    add_[a * order_ + b] = static_cast<std::uint32_t>(s);
                }
        }
    }

    void find_gamma() {
        if (gamma_ != 0) return;
        auto primes = detail::prime_factors(order_ - 1);
        for (std::uint64_t cand = order_ == 2 ? 1 : 2; cand < order_; ++cand) {
            bool ok = true;
            for (auto r : primes) {
                std::uint64_t e = (order_ - 1) / r;
                std::uint64_t v = base_ ? slow_pow(cand, e) : prime_pow(cand, e);
                if (v == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gamma_ = cand;
                return;
            }
        }
        fail(Err::ThetaNotGenerator, "no primitive element found");
    }
    std::uint64_t slow_pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t prime_pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = detail::mulmod_u64(r, a, p_);
            a = detail::mulmod_u64(a, a, p_);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t apply_theta_once_img(std::uint64_t a) const {
        // apply theta once using theta_img_[1]; digits move through the base level
        std::uint64_t d[kMaxDegree];
        unpack(a, d);
        std::uint64_t acc = 0;
        for (int j = 0; j < degree_; ++j) {
            if (d[j] == 0) continue;
            std::uint64_t c = base_ ? base_->theta_pow(d[j], 1) : d[j];
            acc = add(acc, scalar_mul(c, theta_img_[1][j]));
        }
        return acc;
    }

    const FieldLevel* base_ = nullptr;
    std::uint64_t p_ = 0;
    std::uint64_t order_ = 0;
    std::uint64_t base_order_ = 0;
    int degree_ = 1;
    Poly modulus_;
    std::uint64_t gamma_ = 0;
    std::vector<std::uint32_t> exp_, log_, add_;
    // theta data
    std::uint64_t theta_q_ = 0;
    int theta_u_ = 0;
    int theta_order_ = 1;
    std::vector<std::uint64_t> theta_exp_;
    std::vector<std::vector<std::uint64_t>> theta_img_;
};

// kappa_q = prod_{i>=1} 1/(1 - q^{-i}), truncated from above at `terms` factors.
inline double kappa(std::uint64_t q, int terms) {
    require(q >= 2, Err::QLessThanTwo, "kappa needs q >= 2");
    require(terms >= 1, Err::BadDimension, "kappa needs terms >= 1");
    double prod = 1.0;
    double qi = 1.0;
    for (int i = 1; i <= terms; ++i) {
        qi /= static_cast<double>(q);
        if (qi == 0.0) break;
        prod /= (1.0 - qi);
    }
    return prod;
}

class FieldTower {
  public:
    struct Params {
        std::uint64_t q = 2;
        int m = 1;
        int u = 1;
        std::vector<std::uint64_t> modulus_qm;   // empty -> deterministic default
        int s = 0;                               // 0: no interleaving extension layer
        std::vector<std::uint64_t> modulus_qms;  // empty -> deterministic default
    };

    static FieldTower make(std::uint64_t q, int m, int u = 1, std::vector<std::uint64_t> modulus = {}) {
        Params p;
        p.q = q;
        p.m = m;
        p.u = u;
        p.modulus_qm = std::move(modulus);
        return FieldTower(p);
    }

    explicit FieldTower(const Params& prm) : params_(prm) {
        require(prm.q >= 2, Err::NonPrimePowerQ, "q must be >= 2");
        require(prm.m >= 1, Err::BadDimension, "m must be >= 1");
        std::uint64_t p = smallest_prime_factor(prm.q);
        std::uint64_t t = prm.q;
        int e = 0;
        while (t % p == 0) {
            t /= p;
            ++e;
        }
        require(t == 1, Err::NonPrimePowerQ, "q is not a prime power");
        require(std::gcd(static_cast<std::uint64_t>(prm.u), static_cast<std::uint64_t>(prm.m)) == 1,
                Err::ThetaNotGenerator, "gcd(u, m) must be 1 so that theta fixes exactly F_q");
        require(prm.u >= 1, Err::ThetaNotGenerator, "u must be >= 1");

        prime_ = FieldLevel::prime(p);
        if (e > 1) {
            fq_ = FieldLevel::extension(prime_.get(), e, {});
        }
        const FieldLevel* baselv = fq_ ? fq_.get() : prime_.get();
        if (prm.m > 1) {
            qm_ = FieldLevel::extension(baselv, prm.m, params_.modulus_qm);
        } else {
            require(params_.modulus_qm.empty(), Err::BadDimension, "m = 1 admits no modulus");
        }
        FieldLevel* qmlv = qm_ ? qm_.get() : const_cast<FieldLevel*>(baselv);
        qmlv->configure_theta(prm.q, prm.u, prm.m);
        if (prm.s >= 2) {
            require(std::gcd(static_cast<std::uint64_t>(prm.u), static_cast<std::uint64_t>(prm.m) * prm.s) == 1,
                    Err::ThetaNotGenerator, "gcd(u, m*s) must be 1 to extend theta to the top layer");
            qms_ = FieldLevel::extension(qmlv, prm.s, params_.modulus_qms);
            qms_->configure_theta(prm.q, prm.u, prm.m * prm.s);
        } else {
            require(prm.s == 0 || prm.s == 1, Err::BadDimension, "s must be 0, 1 or >= 2");
        }
        params_.modulus_qm = qm_ ? qm_->modulus() : std::vector<std::uint64_t>{};
        if (qms_) params_.modulus_qms = qms_->modulus();
    }

    FieldTower(const FieldTower&) = delete;
    FieldTower& operator=(const FieldTower&) = delete;
    FieldTower(FieldTower&&) = default;
    FieldTower& operator=(FieldTower&&) = default;

    std::uint64_t q() const { return params_.q; }
    int m() const { return params_.m; }
    int u() const { return params_.u; }
    int s() const { return qms_ ? qms_->degree() : (params_.s == 1 ? 1 : 0); }
    bool has_qms() const { return qms_ != nullptr || params_.s == 1; }
    const Params& params() const { return params_; }

    const FieldLevel& lv(Layer l) const {
        switch (l) {
            case Layer::base:
                return fq_ ? *fq_ : *prime_;
            case Layer::qm:
                return qm_ ? *qm_ : (fq_ ? *fq_ : *prime_);
            case Layer::qms:
                if (qms_) return *qms_;
                require(params_.s == 1, Err::LayerMismatch, "tower has no q^{ms} layer");
                return lv(Layer::qm);
        }
        fail(Err::LayerMismatch, "bad layer");
    }

    Fe zero(Layer l = Layer::qm) const { return Fe{0, l}; }
    Fe one(Layer l = Layer::qm) const { return Fe{1, l}; }
    Fe el(std::uint64_t v, Layer l = Layer::qm) const {
        require(v < lv(l).order(), Err::ShapeMismatch, "element index out of range");
        return Fe{v, l};
    }
    Fe gamma() const { return Fe{lv(Layer::qm).gamma(), Layer::qm}; }
    Fe gamma_pow(std::int64_t e) const { return Fe{lv(Layer::qm).gamma_pow(e), Layer::qm}; }

    Fe add(Fe a, Fe b) const {
        check2(a, b);
        ++field_op_count;
        return Fe{lv(a.layer).add(a.v, b.v), a.layer};
    }
    Fe sub(Fe a, Fe b) const {
        check2(a, b);
        ++field_op_count;
        return Fe{lv(a.layer).sub(a.v, b.v), a.layer};
    }
    Fe neg(Fe a) const {
        ++field_op_count;
        return Fe{lv(a.layer).neg(a.v), a.layer};
    }
    Fe mul(Fe a, Fe b) const {
        check2(a, b);
        ++field_op_count;
        return Fe{lv(a.layer).mul(a.v, b.v), a.layer};
    }
    Fe inv(Fe a) const {
        ++field_op_count;
        return Fe{lv(a.layer).inv(a.v), a.layer};
    }
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe powi(Fe a, std::uint64_t e) const {
        ++field_op_count;
        return Fe{lv(a.layer).powi(a.v, e), a.layer};
    }

    // theta^i; i may be negative. Acts on any layer (identity on the base).
    Fe theta(Fe a, std::int64_t i = 1) const {
        ++field_op_count;
        return Fe{lv(a.layer).theta_pow(a.v, i), a.layer};
    }
    Fe sigma(Twist t, Fe a, std::int64_t i = 1) const { return theta(a, static_cast<std::int64_t>(t) * i); }

    // generalized norm N^{sigma}_i(a) = prod_{j=0}^{i-1} sigma^j(a); N_0 = 1
    Fe gen_norm(Twist t, int i, Fe a) const {
        require(i >= 0, Err::BadDimension, "gen_norm needs i >= 0");
        Fe r = one(a.layer);
        Fe cur = a;
        for (int j = 0; j < i; ++j) {
            r = mul(r, cur);
            cur = sigma(t, cur);
        }
        return r;
    }

    // All three norm/automorphism interchange identities; test utility.
    bool norm_identity_check(int alpha, int beta, Fe x) const {
        require(alpha >= 0 && beta >= 0, Err::BadDimension, "norm_identity_check needs alpha, beta >= 0");
        require(x.v != 0, Err::ZeroElementForInverseIdentity, "identities involve x^{-1}");
        const Twist ti = Twist::theta_inv;
        Fe xin = theta(x, -1);            // theta^{-1}(x)
        Fe xiv = theta(inv(x), -1);       // theta^{-1}(x^{-1})
        // 1) theta^alpha(N^-_beta(theta^-1 x)) = N^-_{beta-alpha}(theta^-1 x) N_alpha(x)  (beta >= alpha)
        //    For beta < alpha both sides collapse to theta^{alpha-beta}(N_beta(x)).
        Fe lhs1 = theta(gen_norm(ti, beta, xin), alpha);
        Fe rhs1 = (beta >= alpha) ? mul(gen_norm(ti, beta - alpha, xin), gen_norm(Twist::theta, alpha, x))
                                  : theta(gen_norm(Twist::theta, beta, x), alpha - beta);
        if (lhs1 != rhs1) return false;
        // 2) theta^{-alpha}(N^-_beta(theta^-1 x)) = N^-_{alpha+beta}(theta^-1 x) N^-_alpha(theta^-1 x^-1)
        Fe lhs2 = theta(gen_norm(ti, beta, xin), -alpha);
        Fe rhs2 = mul(gen_norm(ti, alpha + beta, xin), gen_norm(ti, alpha, xiv));
        if (lhs2 != rhs2) return false;
        // 3) theta^{-alpha}(N_beta(x)) = N^-_alpha(theta^-1 x) N^-_{alpha-beta}(theta^-1 x^-1)  (alpha >= beta)
        if (alpha >= beta) {
            Fe lhs3 = theta(gen_norm(Twist::theta, beta, x), -alpha);
            Fe rhs3 = mul(gen_norm(ti, alpha, xin), gen_norm(ti, alpha - beta, xiv));
            if (lhs3 != rhs3) return false;
        }
        return true;
    }

    // representatives gamma^0, ..., gamma^{q-2} of the q-1 nontrivial conjugacy classes
    std::vector<Fe> conjugacy_representatives() const {
        std::vector<Fe> out;
        std::uint64_t qq = params_.q;
        out.reserve(qq - 1);
        for (std::uint64_t e = 0; e + 1 < qq; ++e) out.push_back(gamma_pow(static_cast<std::int64_t>(e)));
        return out;
    }
    // class invariant: a ~ b  iff  a/b is a (q^u - 1)-th power  iff  norms to F_q agree
    std::uint64_t conjugacy_class_id(Fe a) const {
        require(a.layer == Layer::qm, Err::LayerMismatch, "class id on the q^m layer");
        if (a.v == 0) return 0;
        const auto& L = lv(Layer::qm);
        std::uint64_t qm1 = L.order() - 1;
        std::uint64_t e = qm1 / (params_.q - 1);
        ++field_op_count;
        return L.powi(a.v, e);
    }

    // coordinates over F_q w.r.t. the polynomial basis of F_{q^m}
    std::vector<Fe> ext(Fe a) const {
        require(a.layer == Layer::qm, Err::LayerMismatch, "ext expects a q^m-layer element");
        const auto& L = lv(Layer::qm);
        std::vector<Fe> out(static_cast<std::size_t>(params_.m));
        std::uint64_t d[64];
        if (params_.m == 1) {
            out[0] = Fe{a.v, Layer::base};
            return out;
        }
        L.unpack(a.v, d);
        for (int i = 0; i < params_.m; ++i) out[static_cast<std::size_t>(i)] = Fe{d[i], Layer::base};
        return out;
    }
    Fe ext_inv(std::span<const Fe> coords) const {
        require(static_cast<int>(coords.size()) == params_.m, Err::ShapeMismatch, "ext_inv needs m coordinates");
        if (params_.m == 1) return Fe{coords[0].v, Layer::qm};
        const auto& L = lv(Layer::qm);
        std::uint64_t d[64];
        for (int i = 0; i < params_.m; ++i) {
            require(coords[static_cast<std::size_t>(i)].layer == Layer::base, Err::LayerMismatch,
                    "ext_inv expects base-layer coordinates");
            d[i] = coords[static_cast<std::size_t>(i)].v;
        }
        return Fe{L.pack(d), Layer::qm};
    }

    // embeddings along the polynomial bases (constant coefficient)
    Fe embed(Fe a, Layer to) const {
        if (a.layer == to) return a;
        if (a.layer == Layer::base && to == Layer::qm) return Fe{a.v, Layer::qm};
        if (a.layer == Layer::qm && to == Layer::qms) return Fe{a.v, Layer::qms};
        if (a.layer == Layer::base && to == Layer::qms) return Fe{a.v, Layer::qms};
        fail(Err::LayerMismatch, "embed goes upward only");
    }
    // strips a q^{ms} element to F_{q^m} when all higher coordinates vanish
    std::optional<Fe> to_qm(Fe a) const {
        require(a.layer == Layer::qms, Err::LayerMismatch, "to_qm expects a q^{ms}-layer element");
        if (s() == 1) return Fe{a.v, Layer::qm};
        if (a.v < lv(Layer::qm).order()) return Fe{a.v, Layer::qm};
        return std::nullopt;
    }
    // packs per-component q^m values c_1..c_s into sum c_j gamma'_j (polynomial basis)
    Fe combine(std::span<const Fe> comps) const {
        require(has_qms(), Err::LayerMismatch, "tower has no q^{ms} layer");
        if (s() == 1) {
            require(comps.size() == 1, Err::ShapeMismatch, "combine expects s components");
            return Fe{comps[0].v, Layer::qms};
        }
        require(static_cast<int>(comps.size()) == s(), Err::ShapeMismatch, "combine expects s components");
        std::uint64_t d[64];
        for (int j = 0; j < s(); ++j) {
            require(comps[static_cast<std::size_t>(j)].layer == Layer::qm, Err::LayerMismatch,
                    "combine expects q^m components");
            d[j] = comps[static_cast<std::size_t>(j)].v;
        }
        return Fe{qms_->pack(d), Layer::qms};
    }

  private:
    static std::uint64_t smallest_prime_factor(std::uint64_t n) {
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return d;
        return n;
    }
    void check2(Fe a, Fe b) const {
        require(a.layer == b.layer, Err::LayerMismatch, "operands live on different layers");
    }

    Params params_;
    std::unique_ptr<FieldLevel> prime_, fq_, qm_, qms_;
};

}  // namespace sumrank
