#include "diarasr/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace diarasr::fusion {

namespace {

void require_shape(const FeatureMatrix &m, std::size_t rows, std::size_t cols,
                   const char *name) {
    if (m.rows != rows || m.cols != cols) {
        throw std::invalid_argument(
            std::string(name) + ": expected " + std::to_string(rows) + "x" +
            std::to_string(cols) + ", got " + std::to_string(m.rows) + "x" +
            std::to_string(m.cols));
    }
}

// Accumulates in ascending value order: equal multisets of summands give
// bit-identical sums, which makes frame permutations exactly equivariant.
double sorted_sum(std::vector<double> &buf) {
    std::sort(buf.begin(), buf.end());
    double sum = 0.0;
    for (double v : buf) {
        sum += v;
    }
    return sum;
}

double stable_sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

// C = A * B, plain loops.
FeatureMatrix matmul(const FeatureMatrix &a, const FeatureMatrix &b) {
    FeatureMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a.at(i, k);
            for (std::size_t j = 0; j < b.cols; ++j) {
                c.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return c;
}

// C = A^T * B.
FeatureMatrix matmul_at_b(const FeatureMatrix &a, const FeatureMatrix &b) {
    FeatureMatrix c(a.cols, b.cols);
    for (std::size_t k = 0; k < a.rows; ++k) {
        for (std::size_t i = 0; i < a.cols; ++i) {
            const double aki = a.at(k, i);
            for (std::size_t j = 0; j < b.cols; ++j) {
                c.at(i, j) += aki * b.at(k, j);
            }
        }
    }
    return c;
}

// C = A * B^T.
FeatureMatrix matmul_a_bt(const FeatureMatrix &a, const FeatureMatrix &b) {
    FeatureMatrix c(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < b.rows; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) {
                sum += a.at(i, k) * b.at(j, k);
            }
            c.at(i, j) = sum;
        }
    }
    return c;
}

struct ForwardState {
    FeatureMatrix q, k, v;
    FeatureMatrix attn; // row-softmax of q k^T / sqrt(d_a)
    FeatureMatrix hca;
};

ForwardState attention_forward(const FeatureMatrix &hs,
                               const FeatureMatrix &hp,
                               const FusionParams &p) {
    if (hs.rows != hp.rows) {
        throw std::invalid_argument(
            "cross_attention: Hs has " + std::to_string(hs.rows) +
            " frames but Hp has " + std::to_string(hp.rows));
    }
    require_shape(p.w_q, hs.cols, p.w_q.cols, "cross_attention: W_q");
    require_shape(p.w_k, hp.cols, p.w_q.cols, "cross_attention: W_k");
    require_shape(p.w_v, hp.cols, hs.cols, "cross_attention: W_v");
    if (p.w_q.cols == 0) {
        throw std::invalid_argument(
            "cross_attention: attention dim must be positive");
    }

    ForwardState st;
    st.q = matmul(hs, p.w_q);
    st.k = matmul(hp, p.w_k);
    st.v = matmul(hp, p.w_v);

    const std::size_t t = hs.rows;
    const double scale = 1.0 / std::sqrt(static_cast<double>(p.w_q.cols));
    FeatureMatrix scores = matmul_a_bt(st.q, st.k);
    for (double &s : scores.values) {
        s *= scale;
    }

    st.attn = FeatureMatrix(t, t);
    std::vector<double> buf(t);
    for (std::size_t i = 0; i < t; ++i) {
        double row_max = scores.at(i, 0);
        for (std::size_t j = 1; j < t; ++j) {
            row_max = std::max(row_max, scores.at(i, j));
        }
        for (std::size_t j = 0; j < t; ++j) {
            buf[j] = std::exp(scores.at(i, j) - row_max);
        }
        std::vector<double> denom_buf = buf;
        const double denom = sorted_sum(denom_buf);
        for (std::size_t j = 0; j < t; ++j) {
            st.attn.at(i, j) = buf[j] / denom;
        }
    }

    st.hca = FeatureMatrix(t, hs.cols);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t c = 0; c < hs.cols; ++c) {
            for (std::size_t j = 0; j < t; ++j) {
                buf[j] = st.attn.at(i, j) * st.v.at(j, c);
            }
            st.hca.at(i, c) = sorted_sum(buf);
        }
    }
    return st;
}

FeatureMatrix gate_matrix(const FeatureMatrix &hca, const FusionParams &p) {
    FeatureMatrix z = matmul(hca, p.w_g);
    for (std::size_t i = 0; i < z.rows; ++i) {
        for (std::size_t c = 0; c < z.cols; ++c) {
            z.at(i, c) = stable_sigmoid(z.at(i, c) + p.b_g[c]);
        }
    }
    return z;
}

} // namespace

FeatureMatrix identity_matrix(std::size_t n) {
    FeatureMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

FusionParams FusionParams::identity(std::size_t d) {
    FusionParams p;
    p.w_q = identity_matrix(d);
    p.w_k = identity_matrix(d);
    p.w_v = identity_matrix(d);
    p.w_g = identity_matrix(d);
    p.b_g.assign(d, 0.0);
    return p;
}

FeatureMatrix cross_attention(const FeatureMatrix &hs, const FeatureMatrix &hp,
                              const FusionParams &p) {
    return attention_forward(hs, hp, p).hca;
}

FeatureMatrix gated_fuse(const FeatureMatrix &hs, const FeatureMatrix &hca,
                         const FusionParams &p) {
    if (hca.rows != hs.rows || hca.cols != hs.cols) {
        throw std::invalid_argument("gated_fuse: H^ca must match Hs shape");
    }
    require_shape(p.w_g, hs.cols, hs.cols, "gated_fuse: W_g");
    if (p.b_g.size() != hs.cols) {
        throw std::invalid_argument("gated_fuse: b_g must have dim d_s");
    }
    FeatureMatrix gate = gate_matrix(hca, p);
    FeatureMatrix out(hs.rows, hs.cols);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = gate.values[i] * hca.values[i] + hs.values[i];
    }
    return out;
}

FeatureMatrix fuse(const FeatureMatrix &hs, const FeatureMatrix &hp,
                   const FusionParams &p) {
    return gated_fuse(hs, cross_attention(hs, hp, p), p);
}

double sum_squares(const FeatureMatrix &m) {
    double sum = 0.0;
    for (double v : m.values) {
        sum += v * v;
    }
    return sum;
}

FusionGradients fusion_backward(const FeatureMatrix &hs,
                                const FeatureMatrix &hp,
                                const FusionParams &p) {
    require_shape(p.w_g, hs.cols, hs.cols, "fusion_backward: W_g");
    if (p.b_g.size() != hs.cols) {
        throw std::invalid_argument("fusion_backward: b_g must have dim d_s");
    }
    ForwardState st = attention_forward(hs, hp, p);
    FeatureMatrix gate = gate_matrix(st.hca, p);

    const std::size_t t = hs.rows;
    const std::size_t ds = hs.cols;

    FeatureMatrix ho(t, ds);
    for (std::size_t i = 0; i < ho.values.size(); ++i) {
        ho.values[i] = gate.values[i] * st.hca.values[i] + hs.values[i];
    }

    FusionGradients g;
    g.d_hs = FeatureMatrix(t, ds);
    g.d_hp = FeatureMatrix(t, hp.cols);
    g.d_wq = FeatureMatrix(p.w_q.rows, p.w_q.cols);
    g.d_wk = FeatureMatrix(p.w_k.rows, p.w_k.cols);
    g.d_wv = FeatureMatrix(p.w_v.rows, p.w_v.cols);
    g.d_wg = FeatureMatrix(ds, ds);
    g.d_bg.assign(ds, 0.0);

    // d L / d H^o
    FeatureMatrix d_ho(t, ds);
    for (std::size_t i = 0; i < d_ho.values.size(); ++i) {
        d_ho.values[i] = 2.0 * ho.values[i];
    }

    // Through the gate: H^o = G ⊙ H^ca + Hs, G = sigmoid(H^ca Wg + bg).
    FeatureMatrix d_z(t, ds);
    FeatureMatrix d_hca(t, ds);
    for (std::size_t i = 0; i < t * ds; ++i) {
        const double gi = gate.values[i];
        g.d_hs.values[i] = d_ho.values[i];
        d_z.values[i] = d_ho.values[i] * st.hca.values[i] * gi * (1.0 - gi);
        d_hca.values[i] = d_ho.values[i] * gi;
    }
    g.d_wg = matmul_at_b(st.hca, d_z);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t c = 0; c < ds; ++c) {
            g.d_bg[c] += d_z.at(i, c);
        }
    }
    {
        FeatureMatrix via_gate = matmul_a_bt(d_z, p.w_g);
        for (std::size_t i = 0; i < d_hca.values.size(); ++i) {
            d_hca.values[i] += via_gate.values[i];
        }
    }

    // Through the attention: H^ca = A V.
    FeatureMatrix d_attn = matmul_a_bt(d_hca, st.v);
    FeatureMatrix d_v = matmul_at_b(st.attn, d_hca);

    // Row softmax backward: dS_i = A_i ⊙ (dA_i - <dA_i, A_i>).
    FeatureMatrix d_scores(t, t);
    for (std::size_t i = 0; i < t; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < t; ++j) {
            dot += d_attn.at(i, j) * st.attn.at(i, j);
        }
        for (std::size_t j = 0; j < t; ++j) {
            d_scores.at(i, j) = st.attn.at(i, j) * (d_attn.at(i, j) - dot);
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(p.w_q.cols));
    for (double &v : d_scores.values) {
        v *= scale;
    }

    FeatureMatrix d_q = matmul(d_scores, st.k);
    FeatureMatrix d_k = matmul_at_b(d_scores, st.q);

    g.d_wq = matmul_at_b(hs, d_q);
    g.d_wk = matmul_at_b(hp, d_k);
    g.d_wv = matmul_at_b(hp, d_v);

    {
        FeatureMatrix hs_extra = matmul_a_bt(d_q, p.w_q);
        for (std::size_t i = 0; i < g.d_hs.values.size(); ++i) {
            g.d_hs.values[i] += hs_extra.values[i];
        }
        FeatureMatrix hp_from_k = matmul_a_bt(d_k, p.w_k);
        FeatureMatrix hp_from_v = matmul_a_bt(d_v, p.w_v);
        for (std::size_t i = 0; i < g.d_hp.values.size(); ++i) {
            g.d_hp.values[i] = hp_from_k.values[i] + hp_from_v.values[i];
        }
    }
    return g;
}

double fusion_grad_check(const FeatureMatrix &hs, const FeatureMatrix &hp,
                         const FusionParams &p, double eps) {
    if (!(eps > 0.0) || eps > 1e-3) {
        throw std::invalid_argument(
            "fusion_grad_check: eps must lie in (0, 1e-3]");
    }

    FusionGradients analytic = fusion_backward(hs, hp, p);

    double max_rel = 0.0;
    auto compare = [&](double a, double n) {
        double rel = std::fabs(a - n) /
                     std::max({1.0, std::fabs(a), std::fabs(n)});
        max_rel = std::max(max_rel, rel);
    };
    auto probe = [&](auto &&loss_at) {
        // loss_at(delta) evaluates the loss with the probed entry shifted.
        double plus = loss_at(eps);
        double minus = loss_at(-eps);
        return (plus - minus) / (2.0 * eps);
    };

    FeatureMatrix hs_c = hs;
    FeatureMatrix hp_c = hp;
    FusionParams p_c = p;

    auto check_matrix = [&](FeatureMatrix &m, const FeatureMatrix &grad) {
        for (std::size_t i = 0; i < m.values.size(); ++i) {
            double saved = m.values[i];
            double numeric = probe([&](double d) {
                m.values[i] = saved + d;
                double loss = sum_squares(fuse(hs_c, hp_c, p_c));
                m.values[i] = saved;
                return loss;
            });
            compare(grad.values[i], numeric);
        }
    };

    check_matrix(hs_c, analytic.d_hs);
    check_matrix(hp_c, analytic.d_hp);
    check_matrix(p_c.w_q, analytic.d_wq);
    check_matrix(p_c.w_k, analytic.d_wk);
    check_matrix(p_c.w_v, analytic.d_wv);
    check_matrix(p_c.w_g, analytic.d_wg);
    for (std::size_t i = 0; i < p_c.b_g.size(); ++i) {
        double saved = p_c.b_g[i];
        double numeric = probe([&](double d) {
            p_c.b_g[i] = saved + d;
            double loss = sum_squares(fuse(hs_c, hp_c, p_c));
            p_c.b_g[i] = saved;
            return loss;
        });
        compare(analytic.d_bg[i], numeric);
    }
    return max_rel;
}

} // namespace diarasr::fusion
