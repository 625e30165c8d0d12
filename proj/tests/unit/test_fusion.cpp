#include <doctest.h>

#include <cmath>

#include "common/generators.hpp"
#include "common/oracles.hpp"
#include "diarasr/fusion.hpp"
#include "diarasr/rng.hpp"

using namespace diarasr;
using fusion::FeatureMatrix;
using fusion::FusionParams;

namespace {

double max_abs_diff(const FeatureMatrix &a, const FeatureMatrix &b) {
    REQUIRE(a.rows == b.rows);
    REQUIRE(a.cols == b.cols);
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        m = std::max(m, std::fabs(a.values[i] - b.values[i]));
    }
    return m;
}

FeatureMatrix permute_rows(const FeatureMatrix &m,
                           const std::vector<std::size_t> &perm) {
    FeatureMatrix out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            out.at(i, c) = m.at(perm[i], c);
        }
    }
    return out;
}

} // namespace

TEST_CASE("a single frame attends to itself: H^ca = h^p W_v") {
    Rng rng(1);
    auto hs = generators::random_matrix(rng, 1, 3);
    auto hp = generators::random_matrix(rng, 1, 4);
    auto p = generators::random_params(rng, 3, 4, 2);
    auto hca = fusion::cross_attention(hs, hp, p);
    FeatureMatrix direct(1, 3);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t k = 0; k < 4; ++k) {
            direct.at(0, c) += hp.at(0, k) * p.w_v.at(k, c);
        }
    }
    CHECK(max_abs_diff(hca, direct) < 1e-12);
}

TEST_CASE("tiny instances match the scalar-loop oracle") {
    Rng rng(2);
    for (int it = 0; it < 30; ++it) {
        std::size_t t = 2 + rng.uniform_index(3);
        auto hs = generators::random_matrix(rng, t, 2);
        auto hp = generators::random_matrix(rng, t, 2);
        auto p = generators::random_params(rng, 2, 2, 2);
        auto got = fusion::fuse(hs, hp, p);
        auto want = oracles::scalar_fuse(hs, hp, p);
        CHECK(max_abs_diff(got, want) < 1e-12);

        auto hca = fusion::cross_attention(hs, hp, p);
        auto hca_want = oracles::scalar_cross_attention(hs, hp, p);
        CHECK(max_abs_diff(hca, hca_want) < 1e-12);
    }
}

TEST_CASE("identity parameters realize the literal equations") {
    Rng rng(3);
    auto hs = generators::random_matrix(rng, 4, 3);
    auto hp = generators::random_matrix(rng, 4, 3);
    auto p = FusionParams::identity(3);
    // With identity projections the attention output is a convex
    // combination of speaker frames; a one-frame input returns it exactly.
    auto one_hs = generators::random_matrix(rng, 1, 3);
    auto one_hp = generators::random_matrix(rng, 1, 3);
    auto hca = fusion::cross_attention(one_hs, one_hp, p);
    CHECK(max_abs_diff(hca, one_hp) < 1e-12);
    CHECK_NOTHROW(fusion::fuse(hs, hp, p));
}

TEST_CASE("gate saturation: huge negative bias returns Hs exactly") {
    Rng rng(4);
    auto hs = generators::random_matrix(rng, 3, 2);
    auto hp = generators::random_matrix(rng, 3, 2);
    auto p = generators::random_params(rng, 2, 2, 2);
    p.b_g.assign(2, -1e9);
    auto out = fusion::fuse(hs, hp, p);
    CHECK(max_abs_diff(out, hs) < 1e-12);

    // At +40 the gate saturates to within ~1e-17; zero W_g isolates the
    // bias from the attention values.
    auto hca = fusion::cross_attention(hs, hp, p);
    p.b_g.assign(2, 40.0);
    p.w_g = FeatureMatrix(2, 2);
    FeatureMatrix expect_open(3, 2);
    for (std::size_t i = 0; i < expect_open.values.size(); ++i) {
        expect_open.values[i] = hca.values[i] + hs.values[i];
    }
    auto open = fusion::gated_fuse(hs, hca, p);
    CHECK(max_abs_diff(open, expect_open) < 1e-12);
}

TEST_CASE("zero attention output passes Hs through") {
    Rng rng(5);
    auto hs = generators::random_matrix(rng, 3, 2);
    auto p = generators::random_params(rng, 2, 2, 2);
    FeatureMatrix hca(3, 2); // zeros
    auto out = fusion::gated_fuse(hs, hca, p);
    CHECK(max_abs_diff(out, hs) == 0.0);
}

TEST_CASE("gate values stay strictly inside (0, 1) for finite input") {
    Rng rng(6);
    auto hs = generators::random_matrix(rng, 4, 3, 3.0);
    auto hp = generators::random_matrix(rng, 4, 3, 3.0);
    auto p = generators::random_params(rng, 3, 3, 3);
    auto hca = fusion::cross_attention(hs, hp, p);
    auto fused = fusion::gated_fuse(hs, hca, p);
    // Recover the gate pointwise where hca != 0.
    for (std::size_t i = 0; i < fused.values.size(); ++i) {
        if (hca.values[i] != 0.0) {
            double gate =
                (fused.values[i] - hs.values[i]) / hca.values[i];
            CHECK(gate > 0.0);
            CHECK(gate < 1.0);
        }
    }
}

TEST_CASE("attention rows sum to one") {
    // Exposed indirectly: with W_v = I and constant speaker frames, the
    // attention output must reproduce the constant exactly when rows are
    // normalized.
    Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        std::size_t t = 1 + rng.uniform_index(5);
        auto hs = generators::random_matrix(rng, t, 3);
        FeatureMatrix hp(t, 3);
        for (std::size_t i = 0; i < t; ++i) {
            hp.at(i, 0) = 0.7;
            hp.at(i, 1) = -0.3;
            hp.at(i, 2) = 1.1;
        }
        auto p = FusionParams::identity(3);
        p.w_q = generators::random_matrix(rng, 3, 3);
        p.w_k = generators::random_matrix(rng, 3, 3);
        auto hca = fusion::cross_attention(hs, hp, p);
        for (std::size_t i = 0; i < t; ++i) {
            CHECK(std::fabs(hca.at(i, 0) - 0.7) < 1e-12);
            CHECK(std::fabs(hca.at(i, 1) + 0.3) < 1e-12);
            CHECK(std::fabs(hca.at(i, 2) - 1.1) < 1e-12);
        }
    }
}

TEST_CASE("permuting frames permutes the output exactly") {
    Rng rng(8);
    for (int it = 0; it < 50; ++it) {
        std::size_t t = 2 + rng.uniform_index(4);
        auto hs = generators::random_matrix(rng, t, 3);
        auto hp = generators::random_matrix(rng, t, 2);
        auto p = generators::random_params(rng, 3, 2, 2);
        std::vector<std::size_t> perm(t);
        for (std::size_t i = 0; i < t; ++i) {
            perm[i] = i;
        }
        rng.shuffle(perm);
        auto direct = permute_rows(fusion::fuse(hs, hp, p), perm);
        auto permuted =
            fusion::fuse(permute_rows(hs, perm), permute_rows(hp, perm), p);
        CHECK(direct == permuted); // bitwise
    }
}

TEST_CASE("dimension mismatches are rejected") {
    Rng rng(9);
    auto hs = generators::random_matrix(rng, 3, 2);
    auto hp = generators::random_matrix(rng, 4, 2); // frame count differs
    auto p = generators::random_params(rng, 2, 2, 2);
    CHECK_THROWS_AS(fusion::cross_attention(hs, hp, p),
                    std::invalid_argument);
    auto hp_ok = generators::random_matrix(rng, 3, 3); // d_p mismatch
    CHECK_THROWS_AS(fusion::cross_attention(hs, hp_ok, p),
                    std::invalid_argument);
    auto hca_bad = generators::random_matrix(rng, 3, 3);
    CHECK_THROWS_AS(fusion::gated_fuse(hs, hca_bad, p),
                    std::invalid_argument);
}

TEST_CASE("zero parameters force zero gradients where analysis says so") {
    Rng rng(10);
    auto hs = generators::random_matrix(rng, 3, 2);
    auto hp = generators::random_matrix(rng, 3, 2);
    FusionParams p;
    p.w_q = FeatureMatrix(2, 2);
    p.w_k = FeatureMatrix(2, 2);
    p.w_v = FeatureMatrix(2, 2);
    p.w_g = FeatureMatrix(2, 2);
    p.b_g.assign(2, 0.0);
    auto g = fusion::fusion_backward(hs, hp, p);
    for (double v : g.d_wq.values) {
        CHECK(v == 0.0);
    }
    for (double v : g.d_wk.values) {
        CHECK(v == 0.0);
    }
    for (double v : g.d_wg.values) {
        CHECK(v == 0.0);
    }
    for (double v : g.d_bg) {
        CHECK(v == 0.0);
    }
    // The loss reduces to sum(Hs^2), so dHs = 2 Hs.
    for (std::size_t i = 0; i < hs.values.size(); ++i) {
        CHECK(g.d_hs.values[i] == doctest::Approx(2.0 * hs.values[i]));
    }
}

TEST_CASE("analytic gradients match central differences") {
    Rng rng(11);
    for (int it = 0; it < 10; ++it) {
        std::size_t t = 1 + rng.uniform_index(4);
        std::size_t ds = 1 + rng.uniform_index(3);
        std::size_t dp = 1 + rng.uniform_index(3);
        std::size_t da = 1 + rng.uniform_index(3);
        auto hs = generators::random_matrix(rng, t, ds);
        auto hp = generators::random_matrix(rng, t, dp);
        auto p = generators::random_params(rng, ds, dp, da);
        CHECK(fusion::fusion_grad_check(hs, hp, p, 1e-5) < 1e-6);
    }
}

TEST_CASE("finite-difference error shrinks quadratically in eps") {
    Rng rng(12);
    auto hs = generators::random_matrix(rng, 3, 2);
    auto hp = generators::random_matrix(rng, 3, 2);
    auto p = generators::random_params(rng, 2, 2, 2);
    double coarse = fusion::fusion_grad_check(hs, hp, p, 1e-3);
    double fine = fusion::fusion_grad_check(hs, hp, p, 1e-4);
    CHECK(coarse > fine);
    double ratio = coarse / fine;
    CHECK(ratio > 10.0);
    CHECK(ratio < 1000.0);
}

TEST_CASE("eps outside (0, 1e-3] is rejected") {
    Rng rng(13);
    auto hs = generators::random_matrix(rng, 2, 2);
    auto hp = generators::random_matrix(rng, 2, 2);
    auto p = generators::random_params(rng, 2, 2, 2);
    CHECK_THROWS_AS(fusion::fusion_grad_check(hs, hp, p, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(fusion::fusion_grad_check(hs, hp, p, 1e-2),
                    std::invalid_argument);
}
