#pragma once

// Sum-rank weights for plain, vertically interleaved and horizontally interleaved
// words, exact-weight error sampling, canonical full-rank decompositions and the
// full-error / row-erasure / column-erasure channel instances.
//
// A vertically interleaved word is an s x n matrix over F_{q^m}; a horizontally
// interleaved word is a length-sn vector stored component-major (y_1 | ... | y_s),
// with weights computed after regrouping the i-th block of every component.

#include <cstdint>
#include <vector>

#include "sumrank/field.hpp"
#include "sumrank/linalg.hpp"
#include "sumrank/rng.hpp"

namespace sumrank {

struct LengthPartition {
    std::vector<int> blocks;  // n_1, ..., n_ell, all >= 1

    explicit LengthPartition(std::vector<int> b) : blocks(std::move(b)) {
        require(!blocks.empty(), Err::BadDimension, "length partition needs at least one block");
        for (int ni : blocks) require(ni >= 1, Err::BadDimension, "length partition entries must be >= 1");
    }
    int n() const {
        int t = 0;
        for (int b : blocks) t += b;
        return t;
    }
    int ell() const { return static_cast<int>(blocks.size()); }
    int offset(int i) const {
        int t = 0;
        for (int j = 0; j < i; ++j) t += blocks[static_cast<std::size_t>(j)];
        return t;
    }
};

namespace weights {

// F_q-rank of the coordinate expansion of a list of F_{q^m} values, each value
// contributing one column of m coordinates per "row slot".
inline int rank_of_entries(const FieldTower& T, std::span<const Fe> entries) {
    int m = T.m();
    Mat E(static_cast<int>(entries.size()), m, Layer::base);
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
        auto coords = T.ext(entries[static_cast<std::size_t>(i)]);
        for (int j = 0; j < m; ++j) E.at(i, j) = coords[static_cast<std::size_t>(j)];
    }
    return rank_of(T, E);
}

inline int weight_plain(const FieldTower& T, const LengthPartition& p, std::span<const Fe> x) {
    require(static_cast<int>(x.size()) == p.n(), Err::ShapeMismatch, "plain weight shape");
    int w = 0;
    for (int i = 0; i < p.ell(); ++i)
        w += rank_of_entries(T, x.subspan(static_cast<std::size_t>(p.offset(i)),
                                          static_cast<std::size_t>(p.blocks[static_cast<std::size_t>(i)])));
    return w;
}

inline int weight_vertical(const FieldTower& T, const LengthPartition& p, const Mat& X) {
    require(X.cols == p.n() && X.layer == Layer::qm, Err::ShapeMismatch, "vertical weight shape");
    int m = T.m();
    int w = 0;
    for (int i = 0; i < p.ell(); ++i) {
        int ni = p.blocks[static_cast<std::size_t>(i)];
        int ofs = p.offset(i);
        Mat E(X.rows * m, ni, Layer::base);
        for (int r = 0; r < X.rows; ++r)
            for (int c = 0; c < ni; ++c) {
                auto coords = T.ext(X.at(r, ofs + c));
                for (int j = 0; j < m; ++j) E.at(r * m + j, c) = coords[static_cast<std::size_t>(j)];
            }
        w += rank_of(T, E);
    }
    return w;
}

inline int weight_horizontal(const FieldTower& T, const LengthPartition& p, int s, std::span<const Fe> x) {
    require(static_cast<int>(x.size()) == s * p.n(), Err::ShapeMismatch, "horizontal weight shape");
    int m = T.m();
    int n = p.n();
    int w = 0;
    for (int i = 0; i < p.ell(); ++i) {
        int ni = p.blocks[static_cast<std::size_t>(i)];
        int ofs = p.offset(i);
        Mat E(m, s * ni, Layer::base);
        for (int j = 0; j < s; ++j)
            for (int c = 0; c < ni; ++c) {
                auto coords = T.ext(x[static_cast<std::size_t>(j * n + ofs + c)]);
                for (int r = 0; r < m; ++r) E.at(r, j * ni + c) = coords[static_cast<std::size_t>(r)];
            }
        w += rank_of(T, E);
    }
    return w;
}

// number of a x b matrices over F_q of rank r (as a double; exact for small counts)
inline double count_rank_matrices(std::uint64_t q, int a, int b, int r) {
    if (r < 0 || r > std::min(a, b)) return 0.0;
    double qd = static_cast<double>(q);
    double binom = 1.0;
    for (int i = 0; i < r; ++i)
        binom *= (std::pow(qd, a - i) - 1.0) / (std::pow(qd, i + 1) - 1.0);
    double prod = 1.0;
    for (int i = 0; i < r; ++i) prod *= (std::pow(qd, b) - std::pow(qd, i));
    return binom * prod;
}

// uniform a x b matrix over F_q of exact rank r, via uniform full-rank factors
inline Mat sample_rank_matrix(const FieldTower& T, Rng& rng, int a, int b, int r) {
    std::uint64_t q = T.q();
    Mat M(a, b, Layer::base);
    if (r == 0) return M;
    auto full_rank = [&](int rows, int cols) {
        for (;;) {
            Mat X(rows, cols, Layer::base);
            for (auto& e : X.a) e = Fe{rng.below(q), Layer::base};
            if (rank_of(T, X) == std::min(rows, cols)) return X;
        }
    };
    Mat X = full_rank(a, r);
    Mat Y = full_rank(r, b);
    return mat_mul(T, X, Y);
}

// sample a rank partition (t_1, ..., t_ell) with sum tau, block i counted as an
// mrows x width_i matrix over F_q; probability proportional to the exact counts.
inline std::vector<int> sample_rank_partition(const FieldTower& T, Rng& rng, std::span<const int> widths,
                                              int mrows, int tau) {
    int ell = static_cast<int>(widths.size());
    std::vector<std::vector<int>> cands;
    std::vector<int> cur(static_cast<std::size_t>(ell), 0);
    auto rec = [&](auto&& self, int i, int rem) -> void {
        if (i == ell) {
            if (rem == 0) cands.push_back(cur);
            return;
        }
        int cap = std::min(mrows, widths[static_cast<std::size_t>(i)]);
        for (int t = 0; t <= std::min(cap, rem); ++t) {
            cur[static_cast<std::size_t>(i)] = t;
            self(self, i + 1, rem - t);
        }
    };
    rec(rec, 0, tau);
    require(!cands.empty(), Err::InfeasibleWeight, "weight exceeds the feasible sum-rank range");
    std::vector<double> w(cands.size());
    double tot = 0.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        double p = 1.0;
        for (int j = 0; j < ell; ++j)
            p *= count_rank_matrices(T.q(), mrows, widths[static_cast<std::size_t>(j)],
                                     cands[i][static_cast<std::size_t>(j)]);
        w[i] = p;
        tot += p;
    }
    double x = rng.unit() * tot;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        x -= w[i];
        if (x <= 0) return cands[i];
    }
    return cands.back();
}

// uniform s x n matrix over F_{q^m} of exact sum-rank weight tau
inline Mat sample_vertical(const FieldTower& T, Rng& rng, const LengthPartition& p, int s, int tau) {
    int m = T.m();
    auto part = sample_rank_partition(T, rng, p.blocks, m * s, tau);
    Mat E(s, p.n(), Layer::qm);
    for (int i = 0; i < p.ell(); ++i) {
        int ni = p.blocks[static_cast<std::size_t>(i)];
        int ofs = p.offset(i);
        Mat Mq = sample_rank_matrix(T, rng, m * s, ni, part[static_cast<std::size_t>(i)]);
        for (int j = 0; j < s; ++j)
            for (int c = 0; c < ni; ++c) {
                std::vector<Fe> coords(static_cast<std::size_t>(m));
                for (int r = 0; r < m; ++r) coords[static_cast<std::size_t>(r)] = Mq.at(j * m + r, c);
                E.at(j, ofs + c) = T.ext_inv(coords);
            }
    }
    return E;
}

// uniform length-sn vector (component-major) of exact horizontal sum-rank weight tau
inline std::vector<Fe> sample_horizontal(const FieldTower& T, Rng& rng, const LengthPartition& p, int s, int tau) {
    int m = T.m();
    int n = p.n();
    std::vector<int> widths(p.blocks.size());
    for (std::size_t i = 0; i < widths.size(); ++i) widths[i] = s * p.blocks[i];
    auto part = sample_rank_partition(T, rng, widths, m, tau);
    std::vector<Fe> e(static_cast<std::size_t>(s * n), T.zero());
    for (int i = 0; i < p.ell(); ++i) {
        int ni = p.blocks[static_cast<std::size_t>(i)];
        int ofs = p.offset(i);
        Mat Mq = sample_rank_matrix(T, rng, m, s * ni, part[static_cast<std::size_t>(i)]);
        for (int j = 0; j < s; ++j)
            for (int c = 0; c < ni; ++c) {
                std::vector<Fe> coords(static_cast<std::size_t>(m));
                for (int r = 0; r < m; ++r) coords[static_cast<std::size_t>(r)] = Mq.at(r, j * ni + c);
                e[static_cast<std::size_t>(j * n + ofs + c)] = T.ext_inv(coords);
            }
    }
    return e;
}

inline std::vector<Fe> sample_plain(const FieldTower& T, Rng& rng, const LengthPartition& p, int tau) {
    Mat E = sample_vertical(T, rng, p, 1, tau);
    std::vector<Fe> x(static_cast<std::size_t>(p.n()));
    for (int c = 0; c < p.n(); ++c) x[static_cast<std::size_t>(c)] = E.at(0, c);
    return x;
}

// canonical full-rank decomposition of a vertical word: E = A B with A (s x tau)
// over F_{q^m} (columns grouped by block) and B (tau x n) block-diagonal over F_q.
struct VerticalDecomposition {
    Mat A;                    // s x tau, qm
    Mat B;                    // tau x n, base, block-diagonal
    std::vector<int> rparts;  // per-block ranks
};

inline VerticalDecomposition decompose_vertical(const FieldTower& T, const LengthPartition& p, const Mat& E) {
    require(E.cols == p.n() && E.layer == Layer::qm, Err::ShapeMismatch, "decompose_vertical shape");
    int s = E.rows, m = T.m();
    int dim = s * m;
    struct BasisVec {
        std::vector<std::uint64_t> v;
        int lead;
    };
    std::vector<std::vector<Fe>> acols;           // columns of A (length s, qm)
    std::vector<std::vector<std::vector<Fe>>> bblocks;  // per block: rows x ni of base coefficients
    std::vector<int> rparts;
    const auto& B0 = T.lv(Layer::base);
    for (int i = 0; i < p.ell(); ++i) {
        int ni = p.blocks[static_cast<std::size_t>(i)];
        int ofs = p.offset(i);
        std::vector<BasisVec> basis;
        std::vector<std::vector<Fe>> coeff;  // coeff[b][c]
        for (int c = 0; c < ni; ++c) {
            std::vector<std::uint64_t> v(static_cast<std::size_t>(dim), 0);
            for (int j = 0; j < s; ++j) {
                auto coords = T.ext(E.at(j, ofs + c));
                for (int r = 0; r < m; ++r) v[static_cast<std::size_t>(j * m + r)] = coords[static_cast<std::size_t>(r)].v;
            }
            std::vector<Fe> co(basis.size(), Fe{0, Layer::base});
            for (std::size_t b = 0; b < basis.size(); ++b) {
                auto& bv = basis[b];
                std::uint64_t x = v[static_cast<std::size_t>(bv.lead)];
                if (x != 0) {
                    std::uint64_t f = B0.mul(x, B0.inv(bv.v[static_cast<std::size_t>(bv.lead)]));
                    for (int r = 0; r < dim; ++r)
                        v[static_cast<std::size_t>(r)] =
                            B0.sub(v[static_cast<std::size_t>(r)], B0.mul(f, bv.v[static_cast<std::size_t>(r)]));
                    co[b] = Fe{f, Layer::base};
                }
            }
            int lead = -1;
            for (int r = 0; r < dim; ++r)
                if (v[static_cast<std::size_t>(r)] != 0) {
                    lead = r;
                    break;
                }
            if (lead >= 0) {
                basis.push_back(BasisVec{v, lead});
                co.push_back(Fe{1, Layer::base});
                coeff.push_back({});
            }
            // record coefficients of this column against all basis vectors so far
            for (std::size_t b = 0; b < basis.size(); ++b) {
                if (coeff[b].size() < static_cast<std::size_t>(c)) coeff[b].resize(static_cast<std::size_t>(c), Fe{0, Layer::base});
                coeff[b].push_back(b < co.size() ? co[b] : Fe{0, Layer::base});
            }
        }
        for (auto& row : coeff) row.resize(static_cast<std::size_t>(ni), Fe{0, Layer::base});
        rparts.push_back(static_cast<int>(basis.size()));
        for (auto& bv : basis) {
            std::vector<Fe> acol(static_cast<std::size_t>(s));
            for (int j = 0; j < s; ++j) {
                std::vector<Fe> coords(static_cast<std::size_t>(m));
                for (int r = 0; r < m; ++r) coords[static_cast<std::size_t>(r)] = Fe{bv.v[static_cast<std::size_t>(j * m + r)], Layer::base};
                acol[static_cast<std::size_t>(j)] = T.ext_inv(coords);
            }
            acols.push_back(std::move(acol));
        }
        bblocks.push_back(std::move(coeff));
    }
    int tau = static_cast<int>(acols.size());
    VerticalDecomposition out{Mat(s, tau, Layer::qm), Mat(tau, p.n(), Layer::base), rparts};
    for (int t = 0; t < tau; ++t)
        for (int j = 0; j < s; ++j) out.A.at(j, t) = acols[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
    int ro = 0;
    for (int i = 0; i < p.ell(); ++i) {
        int ni = p.blocks[static_cast<std::size_t>(i)];
        int ofs = p.offset(i);
        auto& blk = bblocks[static_cast<std::size_t>(i)];
        for (std::size_t r = 0; r < blk.size(); ++r)
            for (int c = 0; c < ni; ++c) out.B.at(ro + static_cast<int>(r), ofs + c) = blk[r][static_cast<std::size_t>(c)];
        ro += static_cast<int>(blk.size());
    }
    return out;
}

// horizontal decomposition: e^{(i)} = a^{(i)} (B_1^{(i)} | ... | B_s^{(i)});
// returns the shared value vector a and the per-component location matrices B_j.
struct HorizontalDecomposition {
    std::vector<Fe> a;        // length tau, qm, grouped by block
    std::vector<Mat> B;       // per component: tau x n, base, block-diagonal
    std::vector<int> rparts;  // per-block ranks
};

inline HorizontalDecomposition decompose_horizontal(const FieldTower& T, const LengthPartition& p, int s,
                                                    std::span<const Fe> e) {
    require(static_cast<int>(e.size()) == s * p.n(), Err::ShapeMismatch, "decompose_horizontal shape");
    int m = T.m(), n = p.n();
    const auto& B0 = T.lv(Layer::base);
    std::vector<Fe> avec;
    std::vector<int> rparts;
    // per block, per component: coefficient rows
    std::vector<std::vector<std::vector<std::vector<Fe>>>> co_bjc;  // [block][basis][component][col]
    for (int i = 0; i < p.ell(); ++i) {
        int ni = p.blocks[static_cast<std::size_t>(i)];
        int ofs = p.offset(i);
        struct BasisVec {
            std::vector<std::uint64_t> v;
            int lead;
        };
        std::vector<BasisVec> basis;
        std::vector<std::vector<std::vector<Fe>>> coeff;  // [basis][component][col]
        for (int j = 0; j < s; ++j)
            for (int c = 0; c < ni; ++c) {
                auto coords = T.ext(e[static_cast<std::size_t>(j * n + ofs + c)]);
                std::vector<std::uint64_t> v(static_cast<std::size_t>(m));
                for (int r = 0; r < m; ++r) v[static_cast<std::size_t>(r)] = coords[static_cast<std::size_t>(r)].v;
                std::vector<Fe> co(basis.size(), Fe{0, Layer::base});
                for (std::size_t b = 0; b < basis.size(); ++b) {
                    auto& bv = basis[b];
                    std::uint64_t x = v[static_cast<std::size_t>(bv.lead)];
                    if (x != 0) {
                        std::uint64_t f = B0.mul(x, B0.inv(bv.v[static_cast<std::size_t>(bv.lead)]));
                        for (int r = 0; r < m; ++r)
                            v[static_cast<std::size_t>(r)] =
                                B0.sub(v[static_cast<std::size_t>(r)], B0.mul(f, bv.v[static_cast<std::size_t>(r)]));
                        co[b] = Fe{f, Layer::base};
                    }
                }
                int lead = -1;
                for (int r = 0; r < m; ++r)
                    if (v[static_cast<std::size_t>(r)] != 0) {
                        lead = r;
                        break;
                    }
                if (lead >= 0) {
                    basis.push_back(BasisVec{v, lead});
                    co.push_back(Fe{1, Layer::base});
                    coeff.push_back(std::vector<std::vector<Fe>>(static_cast<std::size_t>(s),
                                                                 std::vector<Fe>(static_cast<std::size_t>(ni), Fe{0, Layer::base})));
                }
                for (std::size_t b = 0; b < basis.size(); ++b) {
                    Fe val = b < co.size() ? co[b] : Fe{0, Layer::base};
                    coeff[b][static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = val;
                }
            }
        rparts.push_back(static_cast<int>(basis.size()));
        for (auto& bv : basis) {
            std::vector<Fe> coords(static_cast<std::size_t>(m));
            for (int r = 0; r < m; ++r) coords[static_cast<std::size_t>(r)] = Fe{bv.v[static_cast<std::size_t>(r)], Layer::base};
            avec.push_back(T.ext_inv(coords));
        }
        co_bjc.push_back(std::move(coeff));
    }
    int tau = static_cast<int>(avec.size());
    HorizontalDecomposition out{std::move(avec), {}, rparts};
    out.B.assign(static_cast<std::size_t>(s), Mat(tau, n, Layer::base));
    int ro = 0;
    for (int i = 0; i < p.ell(); ++i) {
        int ni = p.blocks[static_cast<std::size_t>(i)];
        int ofs = p.offset(i);
        auto& blk = co_bjc[static_cast<std::size_t>(i)];
        for (std::size_t b = 0; b < blk.size(); ++b)
            for (int j = 0; j < s; ++j)
                for (int c = 0; c < ni; ++c) out.B[static_cast<std::size_t>(j)].at(ro + static_cast<int>(b), ofs + c) = blk[b][static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
        ro += static_cast<int>(blk.size());
    }
    return out;
}

// row vector (qm) times a base-layer matrix
inline std::vector<Fe> values_times_locations(const FieldTower& T, std::span<const Fe> a, const Mat& B) {
    require(static_cast<int>(a.size()) == B.rows, Err::ShapeMismatch, "values/locations shape");
    std::vector<Fe> out(static_cast<std::size_t>(B.cols), T.zero());
    for (int t = 0; t < B.rows; ++t) {
        if (a[static_cast<std::size_t>(t)].v == 0) continue;
        for (int c = 0; c < B.cols; ++c) {
            Fe bc = B.at(t, c);
            if (bc.v == 0) continue;
            out[static_cast<std::size_t>(c)] =
                T.add(out[static_cast<std::size_t>(c)],
                      T.mul(a[static_cast<std::size_t>(t)], T.embed(bc, Layer::qm)));
        }
    }
    return out;
}

// --- erasure channel instances -------------------------------------------------

struct VerticalErasureInstance {
    Mat error;  // E = E_F + E_R + E_C, s x n
    Mat E_F, E_R, E_C;
    Mat A_R;  // known row-erasure values (s x tR)
    std::vector<int> tR_part;
    Mat B_C;  // known column-erasure locations (tC x n)
    std::vector<int> tC_part;
    int attempts = 0;
};

inline VerticalErasureInstance make_erasure_vertical(const FieldTower& T, const LengthPartition& p, int s,
                                                     int tF, int tR, int tC, Rng& rng) {
    VerticalErasureInstance out;
    for (out.attempts = 1;; ++out.attempts) {
        Mat EF = sample_vertical(T, rng, p, s, tF);
        Mat ER = sample_vertical(T, rng, p, s, tR);
        Mat EC = sample_vertical(T, rng, p, s, tC);
        Mat E(s, p.n(), Layer::qm);
        for (std::size_t i = 0; i < E.a.size(); ++i) E.a[i] = T.add(T.add(EF.a[i], ER.a[i]), EC.a[i]);
        if (weight_vertical(T, p, E) == tF + tR + tC) {
            auto dR = decompose_vertical(T, p, ER);
            auto dC = decompose_vertical(T, p, EC);
            out.error = std::move(E);
            out.E_F = std::move(EF);
            out.E_R = std::move(ER);
            out.E_C = std::move(EC);
            out.A_R = std::move(dR.A);
            out.tR_part = std::move(dR.rparts);
            out.B_C = std::move(dC.B);
            out.tC_part = std::move(dC.rparts);
            return out;
        }
    }
}

struct HorizontalErasureInstance {
    std::vector<Fe> error;  // e = e_F + e_R + e_C, length s n
    std::vector<Fe> e_F, e_R, e_C;
    std::vector<Fe> a_R;  // known row-erasure values (length tR)
    std::vector<int> tR_part;
    std::vector<Mat> B_C;  // known column-erasure locations, per component (tC x n)
    std::vector<int> tC_part;
    int attempts = 0;
};

inline HorizontalErasureInstance make_erasure_horizontal(const FieldTower& T, const LengthPartition& p, int s,
                                                         int tF, int tR, int tC, Rng& rng) {
    HorizontalErasureInstance out;
    for (out.attempts = 1;; ++out.attempts) {
        auto eF = sample_horizontal(T, rng, p, s, tF);
        auto eR = sample_horizontal(T, rng, p, s, tR);
        auto eC = sample_horizontal(T, rng, p, s, tC);
        std::vector<Fe> e(eF.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = T.add(T.add(eF[i], eR[i]), eC[i]);
        if (weight_horizontal(T, p, s, e) == tF + tR + tC) {
            auto dR = decompose_horizontal(T, p, s, eR);
            auto dC = decompose_horizontal(T, p, s, eC);
            out.error = std::move(e);
            out.e_F = std::move(eF);
            out.e_R = std::move(eR);
            out.e_C = std::move(eC);
            out.a_R = std::move(dR.a);
            out.tR_part = std::move(dR.rparts);
            out.B_C = std::move(dC.B);
            out.tC_part = std::move(dC.rparts);
            return out;
        }
    }
}

}  // namespace weights
}  // namespace sumrank
