#include "diarasr/enrollment.hpp"

#include <algorithm>
#include <cmath>

namespace diarasr {

namespace {

// Frame indices tolerate this much sub-frame rounding noise so that
// shifting window and segments together never flips a floor().
constexpr double kFrameEps = 1e-6;

long long frame_index(double offset_seconds, double frame_rate) {
    return static_cast<long long>(
        std::floor(offset_seconds * frame_rate + kFrameEps));
}

} // namespace

std::vector<Triplet>
build_triplets(const SegmentList &segments,
               const std::map<std::string, SpeakerEmbedding> &embeddings,
               Interval window, double frame_rate,
               std::vector<std::string> *warnings) {
    if (!(window.end > window.begin)) {
        throw std::invalid_argument("build_triplets: window of zero length");
    }
    if (!(frame_rate > 0.0)) {
        throw std::invalid_argument(
            "build_triplets: frame_rate must be positive");
    }
    const long long total_frames = std::max(
        1LL, std::llround((window.end - window.begin) * frame_rate));

    std::vector<Triplet> out;
    out.reserve(segments.size());
    for (const auto &seg : segments) {
        validate_segment(seg);
        Segment clipped = seg;
        clipped.start = std::max(seg.start, window.begin);
        clipped.end = std::min(seg.end, window.end);
        if (!(clipped.end > clipped.start)) {
            if (warnings) {
                warnings->push_back("segment " + seg.session_id + "/" +
                                    seg.speaker + " does not intersect the "
                                    "window; dropped");
            }
            continue;
        }
        auto emb = embeddings.find(seg.speaker);
        if (emb == embeddings.end()) {
            throw std::invalid_argument(
                "build_triplets: no embedding for speaker '" + seg.speaker +
                "'");
        }
        const long long si = frame_index(clipped.start - window.begin,
                                         frame_rate);
        const long long ei = frame_index(clipped.end - window.begin,
                                         frame_rate);
        const auto tf = static_cast<double>(total_frames);
        double start_norm =
            std::clamp(static_cast<double>(si) / tf, 0.0, 1.0);
        double end_norm = std::clamp(static_cast<double>(ei) / tf, 0.0, 1.0);
        if (!(start_norm < end_norm)) {
            if (warnings) {
                warnings->push_back("segment " + seg.session_id + "/" +
                                    seg.speaker +
                                    " is shorter than one frame after "
                                    "clipping; dropped");
            }
            continue;
        }
        Triplet t;
        t.embedding = emb->second;
        t.start_norm = start_norm;
        t.end_norm = end_norm;
        t.source_segment = std::move(clipped);
        out.push_back(std::move(t));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Triplet &a, const Triplet &b) {
                         return a.start_norm < b.start_norm ||
                                (a.start_norm == b.start_norm &&
                                 a.end_norm < b.end_norm);
                     });
    return out;
}

SpeakerEmbedding
mean_pool_embedding(std::span<const SpeakerEmbedding> utterance_embeddings) {
    if (utterance_embeddings.empty()) {
        throw std::invalid_argument("mean_pool_embedding: empty list");
    }
    const std::size_t dim = utterance_embeddings.front().dim();
    SpeakerEmbedding mean;
    mean.values.assign(dim, 0.0);
    for (const auto &emb : utterance_embeddings) {
        if (emb.dim() != dim) {
            throw std::invalid_argument(
                "mean_pool_embedding: dimension mismatch (" +
                std::to_string(dim) + " vs " + std::to_string(emb.dim()) +
                ")");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            mean.values[i] += emb.values[i];
        }
    }
    const auto n = static_cast<double>(utterance_embeddings.size());
    for (double &v : mean.values) {
        v /= n;
    }
    return mean;
}

PromptStructure assemble_prompt(std::string instruction,
                                std::vector<Triplet> triplets,
                                std::vector<std::string> labels) {
    if (triplets.size() != labels.size()) {
        throw std::invalid_argument(
            "assemble_prompt: " + std::to_string(labels.size()) +
            " labels for " + std::to_string(triplets.size()) + " triplets");
    }
    PromptStructure prompt;
    prompt.instruction = std::move(instruction);
    prompt.triplet_slots = std::move(triplets);
    prompt.labels = std::move(labels);
    return prompt;
}

} // namespace diarasr
