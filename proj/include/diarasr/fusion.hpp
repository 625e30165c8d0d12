#pragma once

#include <cstddef>
#include <vector>

namespace diarasr::fusion {

// Dense row-major matrix, double precision. This module is a desk-scale
// numerical reference, not a training kernel.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // rows * cols

    FeatureMatrix() = default;
    FeatureMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), values(r * c, 0.0) {}

    double &at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const {
        return values[r * cols + c];
    }

    friend bool operator==(const FeatureMatrix &,
                           const FeatureMatrix &) = default;
};

FeatureMatrix identity_matrix(std::size_t n);

// Projection and gate weights. The semantic stream has dim d_s, the
// speaker stream d_p, the attention space d_a.
struct FusionParams {
    FeatureMatrix w_q;        // d_s x d_a
    FeatureMatrix w_k;        // d_p x d_a
    FeatureMatrix w_v;        // d_p x d_s
    FeatureMatrix w_g;        // d_s x d_s
    std::vector<double> b_g;  // d_s

    // Identity projections, zero gate bias: the literal fusion equations
    // when d_s == d_p == d_a.
    static FusionParams identity(std::size_t d);
};

// Single-head scaled dot-product attention of the semantic frames onto the
// speaker frames: Q = Hs*Wq, K = Hp*Wk, V = Hp*Wv,
// H^ca = row-softmax(Q*K^T / sqrt(d_a)) * V. Hs and Hp must have the same
// number of frames. Reductions over frames accumulate in value-sorted
// order, so permuting the frames of both inputs permutes the output rows
// bit-for-bit.
FeatureMatrix cross_attention(const FeatureMatrix &hs, const FeatureMatrix &hp,
                              const FusionParams &p);

// H^o = sigmoid(H^ca*Wg + b_g) ⊙ H^ca + Hs. The sigmoid is evaluated in
// its numerically stable form, so a hugely negative bias yields exactly Hs.
FeatureMatrix gated_fuse(const FeatureMatrix &hs, const FeatureMatrix &hca,
                         const FusionParams &p);

// gated_fuse(hs, cross_attention(hs, hp, p), p).
FeatureMatrix fuse(const FeatureMatrix &hs, const FeatureMatrix &hp,
                   const FusionParams &p);

double sum_squares(const FeatureMatrix &m);

struct FusionGradients {
    FeatureMatrix d_hs, d_hp;
    FeatureMatrix d_wq, d_wk, d_wv, d_wg;
    std::vector<double> d_bg;
};

// Analytic gradients of sum_squares(fuse(hs, hp, p)) with respect to every
// parameter and both inputs.
FusionGradients fusion_backward(const FeatureMatrix &hs,
                                const FeatureMatrix &hp,
                                const FusionParams &p);

// Compares fusion_backward against central finite differences of the
// sum-of-squares loss and returns the max relative error
// |a - n| / max(1, |a|, |n|) over all entries. eps must lie in (0, 1e-3];
// the finite-difference truncation error shrinks as eps^2.
double fusion_grad_check(const FeatureMatrix &hs, const FeatureMatrix &hp,
                         const FusionParams &p, double eps);

} // namespace diarasr::fusion
