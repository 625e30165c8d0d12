#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "diarasr/types.hpp"

namespace diarasr {

// Enrollment record conditioning the decoder on one utterance: who speaks
// (embedding) and when (start/end normalized to the chunk window).
struct Triplet {
    SpeakerEmbedding embedding;
    double start_norm = 0.0; // in [0, 1)
    double end_norm = 0.0;   // in (0, 1], > start_norm
    // The originating segment, clipped to the window. Kept by value so a
    // serialized triplet is self-contained.
    Segment source_segment;

    friend bool operator==(const Triplet &, const Triplet &) = default;
};

struct PromptStructure {
    std::string instruction;
    std::vector<Triplet> triplet_slots;
    std::vector<std::string> labels; // one per triplet, "" allowed

    friend bool operator==(const PromptStructure &,
                           const PromptStructure &) = default;
};

// Builds one triplet per segment intersecting [window.begin, window.end].
// Segments are clipped to the window first; normalized times are
// floor(offset_seconds * frame_rate) / total_frames with
// total_frames = round(window_length * frame_rate), clamped to [0, 1].
// Frame indexing tolerates 1e-6 frames of rounding noise so shifting both
// window and segments by the same offset is a no-op.
//
// Segments shorter than one frame after clipping are dropped (a note is
// appended to *warnings when given) since start_norm must stay strictly
// below end_norm. Output is ordered by (start_norm, end_norm).
//
// Throws std::invalid_argument on a zero-length window, non-positive
// frame_rate, or a speaker with no embedding.
std::vector<Triplet>
build_triplets(const SegmentList &segments,
               const std::map<std::string, SpeakerEmbedding> &embeddings,
               Interval window, double frame_rate = 100.0,
               std::vector<std::string> *warnings = nullptr);

// Element-wise arithmetic mean. Throws on an empty list or mixed dims.
SpeakerEmbedding
mean_pool_embedding(std::span<const SpeakerEmbedding> utterance_embeddings);

// Throws std::invalid_argument when |labels| != |triplets|. For inference
// the labels may be all-empty.
PromptStructure assemble_prompt(std::string instruction,
                                std::vector<Triplet> triplets,
                                std::vector<std::string> labels);

} // namespace diarasr
