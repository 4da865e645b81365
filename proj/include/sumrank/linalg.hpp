#pragma once

// Dense matrices over a tower layer plus the handful of elimination routines the
// decoders need: rank, affine solve, one-dimensional right kernel, left inverses.

#include <cstdint>
#include <optional>
#include <vector>

#include "sumrank/field.hpp"

namespace sumrank {

struct Mat {
    int rows = 0, cols = 0;
    Layer layer = Layer::qm;
    std::vector<Fe> a;

    Mat() = default;
    Mat(int r, int c, Layer l) : rows(r), cols(c), layer(l), a(static_cast<std::size_t>(r) * c, Fe{0, l}) {}
    Fe& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Fe& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

inline Mat mat_mul(const FieldTower& T, const Mat& A, const Mat& B) {
    require(A.cols == B.rows && A.layer == B.layer, Err::ShapeMismatch, "mat_mul shape");
    Mat C(A.rows, B.cols, A.layer);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            Fe f = A.at(i, k);
            if (f.v == 0) continue;
            for (int j = 0; j < B.cols; ++j) {
                if (B.at(k, j).v == 0) continue;
                C.at(i, j) = T.add(C.at(i, j), T.mul(f, B.at(k, j)));
            }
        }
    return C;
}

inline std::vector<Fe> vec_mat(const FieldTower& T, std::span<const Fe> v, const Mat& B) {
    require(static_cast<int>(v.size()) == B.rows, Err::ShapeMismatch, "vec_mat shape");
    std::vector<Fe> out(static_cast<std::size_t>(B.cols), Fe{0, B.layer});
    for (int k = 0; k < B.rows; ++k) {
        if (v[static_cast<std::size_t>(k)].v == 0) continue;
        for (int j = 0; j < B.cols; ++j) {
            if (B.at(k, j).v == 0) continue;
            out[static_cast<std::size_t>(j)] =
                T.add(out[static_cast<std::size_t>(j)], T.mul(v[static_cast<std::size_t>(k)], B.at(k, j)));
        }
    }
    return out;
}

inline Fe dot(const FieldTower& T, std::span<const Fe> x, std::span<const Fe> y) {
    require(x.size() == y.size(), Err::ShapeMismatch, "dot shape");
    Fe acc = T.zero(x.empty() ? Layer::qm : x[0].layer);
    for (std::size_t i = 0; i < x.size(); ++i) acc = T.add(acc, T.mul(x[i], y[i]));
    return acc;
}

inline int rank_of(const FieldTower& T, Mat M) {
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int pr = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c).v != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        for (int j = 0; j < M.cols; ++j) std::swap(M.at(r, j), M.at(pr, j));
        Fe iv = T.inv(M.at(r, c));
        for (int j = c; j < M.cols; ++j) M.at(r, j) = T.mul(iv, M.at(r, j));
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || M.at(i, c).v == 0) continue;
            Fe f = M.at(i, c);
            for (int j = c; j < M.cols; ++j) M.at(i, j) = T.sub(M.at(i, j), T.mul(f, M.at(r, j)));
        }
        ++r;
    }
    return r;
}

struct AffineSolution {
    bool consistent = false;
    std::vector<Fe> x;  // particular solution, free variables set to zero
    int rank = 0;
};

// Solve A x = b; returns consistency, a particular solution and rank(A).
inline AffineSolution solve_affine(const FieldTower& T, const Mat& A, std::span<const Fe> b) {
    require(static_cast<int>(b.size()) == A.rows, Err::ShapeMismatch, "solve_affine shape");
    Mat M(A.rows, A.cols + 1, A.layer);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, A.cols) = b[static_cast<std::size_t>(i)];
    }
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < A.cols && r < M.rows; ++c) {
        int pr = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c).v != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        for (int j = 0; j <= A.cols; ++j) std::swap(M.at(r, j), M.at(pr, j));
        Fe iv = T.inv(M.at(r, c));
        for (int j = c; j <= A.cols; ++j) M.at(r, j) = T.mul(iv, M.at(r, j));
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || M.at(i, c).v == 0) continue;
            Fe f = M.at(i, c);
            for (int j = c; j <= A.cols; ++j) M.at(i, j) = T.sub(M.at(i, j), T.mul(f, M.at(r, j)));
        }
        piv.push_back(c);
        ++r;
    }
    AffineSolution out;
    out.rank = r;
    for (int i = r; i < M.rows; ++i)
        if (M.at(i, A.cols).v != 0) return out;  // inconsistent
    out.consistent = true;
    out.x.assign(static_cast<std::size_t>(A.cols), T.zero(A.layer));
    for (int i = 0; i < r; ++i) out.x[static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])] = M.at(i, A.cols);
    return out;
}

// One-dimensional right kernel of M (expects rank = cols - 1); normalized so the
// first nonzero entry is one.
inline std::optional<std::vector<Fe>> right_kernel_1d(const FieldTower& T, Mat M) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int pr = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c).v != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        for (int j = 0; j < M.cols; ++j) std::swap(M.at(r, j), M.at(pr, j));
        Fe iv = T.inv(M.at(r, c));
        for (int j = c; j < M.cols; ++j) M.at(r, j) = T.mul(iv, M.at(r, j));
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || M.at(i, c).v == 0) continue;
            Fe f = M.at(i, c);
            for (int j = c; j < M.cols; ++j) M.at(i, j) = T.sub(M.at(i, j), T.mul(f, M.at(r, j)));
        }
        piv.push_back(c);
        ++r;
    }
    if (r != M.cols - 1) return std::nullopt;
    int free_col = 0;
    {
        std::vector<bool> isp(static_cast<std::size_t>(M.cols), false);
        for (int c : piv) isp[static_cast<std::size_t>(c)] = true;
        for (int c = 0; c < M.cols; ++c)
            if (!isp[static_cast<std::size_t>(c)]) {
                free_col = c;
                break;
            }
    }
    std::vector<Fe> x(static_cast<std::size_t>(M.cols), T.zero(M.layer));
    x[static_cast<std::size_t>(free_col)] = T.one(M.layer);
    for (int i = 0; i < r; ++i)
        x[static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])] = T.neg(M.at(i, free_col));
    Fe lead = T.zero(M.layer);
    for (auto& v : x)
        if (v.v != 0) {
            lead = v;
            break;
        }
    Fe iv = T.inv(lead);
    for (auto& v : x) v = T.mul(iv, v);
    return x;
}

// Left inverse L (cols x rows) of a full-column-rank matrix M: L M = I.
inline Mat left_inverse(const FieldTower& T, const Mat& M) {
    int rows = M.rows, cols = M.cols;
    Mat A(rows, cols + rows, M.layer);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) A.at(i, j) = M.at(i, j);
        A.at(i, cols + i) = T.one(M.layer);
    }
    int r = 0;
    for (int c = 0; c < cols; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (A.at(i, c).v != 0) {
                pr = i;
                break;
            }
        require(pr >= 0, Err::ShapeMismatch, "left_inverse needs full column rank");
        for (int j = 0; j < A.cols; ++j) std::swap(A.at(r, j), A.at(pr, j));
        Fe iv = T.inv(A.at(r, c));
        for (int j = 0; j < A.cols; ++j) A.at(r, j) = T.mul(iv, A.at(r, j));
        for (int i = 0; i < rows; ++i) {
            if (i == r || A.at(i, c).v == 0) continue;
            Fe f = A.at(i, c);
            for (int j = 0; j < A.cols; ++j) A.at(i, j) = T.sub(A.at(i, j), T.mul(f, A.at(r, j)));
        }
        ++r;
    }
    Mat L(cols, rows, M.layer);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < rows; ++j) L.at(i, j) = A.at(i, cols + j);
    return L;
}

}  // namespace sumrank
