#pragma once

// Linearized Reed-Solomon component codes: parameter validation, encoding via
// generalized operator evaluation, generator and parity-check Moore matrices, the
// dual vector h, syndromes, and precomputed left inverses for location recovery.

#include <vector>

#include "sumrank/field.hpp"
#include "sumrank/linalg.hpp"
#include "sumrank/skew.hpp"
#include "sumrank/weights.hpp"

namespace sumrank {

class LrsCode {
  public:
    // beta: length-n code locators (blocks F_q-independent); xi: one evaluation
    // parameter per block, pairwise distinct nontrivial conjugacy classes.
    LrsCode(const FieldTower& T, std::vector<Fe> beta, std::vector<Fe> xi, LengthPartition partition, int k)
        : T_(&T), beta_(std::move(beta)), xi_(std::move(xi)), part_(std::move(partition)), k_(k) {
        const int n = part_.n();
        require(k_ >= 1 && k_ < n, Err::BadDimension, "need 1 <= k < n");
        require(static_cast<int>(beta_.size()) == n, Err::ShapeMismatch, "beta length");
        require(static_cast<int>(xi_.size()) == part_.ell(), Err::BlockCountMismatch, "one xi entry per block");
        for (int i = 0; i < part_.ell(); ++i) {
            require(part_.blocks[static_cast<std::size_t>(i)] <= T.m(), Err::BlockTooWide,
                    "block length exceeds the extension degree");
            auto blk = block_of(beta_, i);
            require(weights::rank_of_entries(T, blk) == part_.blocks[static_cast<std::size_t>(i)],
                    Err::DependentBetaBlock, "beta block is F_q-dependent");
        }
        for (std::size_t i = 0; i < xi_.size(); ++i) {
            require(xi_[i].v != 0, Err::ConjugateXiEntries, "xi entries must be nonzero");
            for (std::size_t j = i + 1; j < xi_.size(); ++j)
                require(T.conjugacy_class_id(xi_[i]) != T.conjugacy_class_id(xi_[j]), Err::ConjugateXiEntries,
                        "xi entries share a conjugacy class");
        }
        // derived parameter vectors
        xi_tilde_.resize(xi_.size());
        xi_hat_.resize(xi_.size());
        for (std::size_t i = 0; i < xi_.size(); ++i) {
            xi_tilde_[i] = T.theta(xi_[i], -1);
            xi_hat_[i] = T.theta(T.inv(xi_[i]), -1);
        }
        xi_pe_ = expand_blocks(xi_);
        xi_tilde_pe_ = expand_blocks(xi_tilde_);
        xi_hat_pe_ = expand_blocks(xi_hat_);

        // generator
        G_ = skew::moore(T, Twist::theta, k_, beta_, xi_pe_);
        require(rank_of(T, G_) == k_, Err::KernelDimensionUnexpected, "generator matrix is rank-deficient");

        // dual vector: right kernel of the (n-1)-row Moore matrix of beta
        Mat Mfull = skew::moore(T, Twist::theta, n - 1, beta_, xi_pe_);
        auto ker = right_kernel_1d(T, Mfull);
        require(ker.has_value(), Err::KernelDimensionUnexpected, "dual kernel is not one-dimensional");
        h_ = std::move(*ker);
        require(weights::weight_plain(T, part_, h_) == n, Err::KernelDimensionUnexpected,
                "dual vector must have full sum-rank weight");

        // parity check H = Moore^{theta^{-1}}_{n-k}(h) with parameters theta^{-1}(xi)
        H_ = skew::moore(T, Twist::theta_inv, n - k_, h_, xi_tilde_pe_);
        // sanity: H annihilates the generator
        Mat HGt(H_.rows, G_.rows, Layer::qm);
        for (int r = 0; r < H_.rows; ++r)
            for (int g = 0; g < G_.rows; ++g) {
                Fe acc = T.zero();
                for (int c = 0; c < n; ++c) acc = T.add(acc, T.mul(H_.at(r, c), G_.at(g, c)));
                require(acc.v == 0, Err::KernelDimensionUnexpected, "parity check does not annihilate the code");
            }

        // left inverses of the coordinate blocks of h
        for (int i = 0; i < part_.ell(); ++i) {
            int ni = part_.blocks[static_cast<std::size_t>(i)];
            Mat Hq(T.m(), ni, Layer::base);
            for (int c = 0; c < ni; ++c) {
                auto coords = T.ext(h_[static_cast<std::size_t>(part_.offset(i) + c)]);
                for (int r = 0; r < T.m(); ++r) Hq.at(r, c) = coords[static_cast<std::size_t>(r)];
            }
            left_inv_.push_back(left_inverse(T, Hq));
        }
    }

    // deterministic default code: beta blocks are power-basis prefixes, xi are the
    // first ell conjugacy-class representatives 1, gamma, ...
    static LrsCode with_defaults(const FieldTower& T, LengthPartition partition, int k) {
        std::vector<Fe> beta;
        for (int i = 0; i < partition.ell(); ++i)
            for (int j = 0; j < partition.blocks[static_cast<std::size_t>(i)]; ++j)
                beta.push_back(T.gamma_pow(j));
        std::vector<Fe> xi;
        require(partition.ell() <= static_cast<int>(T.q()) - 1, Err::ConjugateXiEntries,
                "more blocks than conjugacy classes");
        for (int i = 0; i < partition.ell(); ++i) xi.push_back(T.gamma_pow(i));
        return LrsCode(T, std::move(beta), std::move(xi), std::move(partition), k);
    }

    const FieldTower& tower() const { return *T_; }
    const LengthPartition& partition() const { return part_; }
    int n() const { return part_.n(); }
    int k() const { return k_; }
    int ell() const { return part_.ell(); }
    const std::vector<Fe>& beta() const { return beta_; }
    const std::vector<Fe>& xi() const { return xi_; }
    const std::vector<Fe>& xi_tilde() const { return xi_tilde_; }  // theta^{-1}(xi)
    const std::vector<Fe>& xi_hat() const { return xi_hat_; }      // theta^{-1}(xi^{-1})
    const std::vector<Fe>& xi_per_entry() const { return xi_pe_; }
    const std::vector<Fe>& xi_tilde_per_entry() const { return xi_tilde_pe_; }
    const std::vector<Fe>& h() const { return h_; }
    const Mat& parity_check() const { return H_; }
    const Mat& generator() const { return G_; }
    const Mat& left_inverse_of(int block) const { return left_inv_[static_cast<std::size_t>(block)]; }

    // expand one value per block to one value per position/rank slot
    std::vector<Fe> expand_blocks(std::span<const Fe> per_block) const {
        std::vector<Fe> out;
        for (int i = 0; i < part_.ell(); ++i)
            for (int j = 0; j < part_.blocks[static_cast<std::size_t>(i)]; ++j)
                out.push_back(per_block[static_cast<std::size_t>(i)]);
        return out;
    }
    std::vector<Fe> expand_ranks(std::span<const Fe> per_block, std::span<const int> rparts) const {
        require(per_block.size() == rparts.size(), Err::BlockCountMismatch, "rank partition length");
        std::vector<Fe> out;
        for (std::size_t i = 0; i < rparts.size(); ++i)
            for (int j = 0; j < rparts[i]; ++j) out.push_back(per_block[i]);
        return out;
    }

    std::vector<Fe> encode(const SkewPoly& f) const {
        require(f.twist == Twist::theta, Err::TwistMismatch, "messages live in the theta ring");
        require(f.deg() < k_, Err::DegreeTooHigh, "message degree must be below k");
        return skew::op_eval_vec(*T_, f, beta_, xi_pe_);
    }

    std::vector<Fe> syndrome(std::span<const Fe> y) const {
        require(static_cast<int>(y.size()) == n(), Err::ShapeMismatch, "syndrome expects a length-n word");
        std::vector<Fe> s(static_cast<std::size_t>(H_.rows), T_->zero());
        for (int r = 0; r < H_.rows; ++r) {
            Fe acc = T_->zero();
            for (int c = 0; c < n(); ++c) acc = T_->add(acc, T_->mul(y[static_cast<std::size_t>(c)], H_.at(r, c)));
            s[static_cast<std::size_t>(r)] = acc;
        }
        return s;
    }

    // recover B^{(i)T} = Hinv_i ext(x_block) from locator entries of block i
    Mat locations_from_locators(std::span<const Fe> x_block, int block) const {
        int ni = part_.blocks[static_cast<std::size_t>(block)];
        int r = static_cast<int>(x_block.size());
        Mat Xq(T_->m(), r, Layer::base);
        for (int c = 0; c < r; ++c) {
            auto coords = T_->ext(x_block[static_cast<std::size_t>(c)]);
            for (int j = 0; j < T_->m(); ++j) Xq.at(j, c) = coords[static_cast<std::size_t>(j)];
        }
        Mat Bt = mat_mul(*T_, left_inv_[static_cast<std::size_t>(block)], Xq);  // ni x r
        Mat B(r, ni, Layer::base);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < ni; ++j) B.at(i, j) = Bt.at(j, i);
        return B;
    }

  private:
    std::span<const Fe> block_of(const std::vector<Fe>& v, int i) const {
        return std::span<const Fe>(v).subspan(static_cast<std::size_t>(part_.offset(i)),
                                              static_cast<std::size_t>(part_.blocks[static_cast<std::size_t>(i)]));
    }

    const FieldTower* T_;
    std::vector<Fe> beta_, xi_, xi_tilde_, xi_hat_;
    std::vector<Fe> xi_pe_, xi_tilde_pe_, xi_hat_pe_;
    LengthPartition part_;
    int k_;
    std::vector<Fe> h_;
    Mat G_, H_;
    std::vector<Mat> left_inv_;
};

}  // namespace sumrank
