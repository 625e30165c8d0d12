#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diarasr/chunker.hpp"
#include "diarasr/enrollment.hpp"
#include "diarasr/tokenize.hpp"
#include "diarasr/types.hpp"

namespace diarasr {

struct Utterance {
    std::string speaker;
    double duration = 0.0; // seconds, > 0
    std::string words;
    SpeakerEmbedding embedding;
    // 16-bit mono PCM; metadata-level simulation needs no audio.
    std::optional<std::vector<std::int16_t>> samples;
    int sample_rate = 16000;
};

struct UtterancePool {
    std::vector<Utterance> utterances;
};

struct Placement {
    std::size_t utterance = 0; // index into the pool
    double offset = 0.0;       // seconds

    friend bool operator==(const Placement &, const Placement &) = default;
};

struct MixturePlan {
    std::string session_id;
    std::vector<Placement> placements;
    SegmentList reference; // placements mapped through their offsets
    double overlap_ratio = 0.0;

    friend bool operator==(const MixturePlan &, const MixturePlan &) = default;
};

// On-the-fly mixture simulation. n_speakers distinct speakers are chosen
// from the pool and their utterances are placed sequentially, the gap
// before each drawn uniformly from gap_range (negative gap => overlap,
// offsets clamped to >= 0). Speakers rotate through one shuffled cycle so
// consecutive utterances come from different speakers. Placement stops
// before the mixture would exceed max_duration (and at a safety cap of
// 4096 placements for degenerate gap ranges). Identical seeds produce
// identical plans.
//
// Throws std::invalid_argument on an empty pool, fewer than n_speakers
// distinct speakers, or an inverted gap_range.
MixturePlan simulate_mixture(const UtterancePool &pool,
                             std::size_t n_speakers, double max_duration,
                             Interval gap_range, std::uint64_t seed);

// (time with >= 2 distinct active speakers) / (time with >= 1); 0 when
// there is no speech. Same-speaker self-overlap counts as one speaker.
double overlap_ratio(const SegmentList &segs);

// Gap range whose expected mixture overlap_ratio is close to target
// (expectation-level control, not per-session). mean_utterance_duration is
// the pool average; max_duration is the intended mixture length used to
// correct for the missing gap before the first utterance.
Interval gap_range_for_overlap(double target, double mean_utterance_duration,
                               double max_duration);

struct AugmentConfig {
    double p_replace = 0.05;
    double p_drop = 0.10;
    double p_shuffle = 0.20;
    std::uint64_t seed = 0;
};

// Applies the three training-time transforms in order:
//   1. replacement: per triplet with prob p_replace, swap the embedding for
//      a random donor with different values and blank that label;
//   2. dropout: per triplet with prob p_drop, remove triplet and label;
//   3. shuffle: with prob p_shuffle, apply one uniform permutation to
//      triplets and labels jointly.
// Each transform draws from its own split of cfg.seed. Donors equal to the
// original embedding are never chosen (value inequality stands in for
// "different speaker"); a triplet with no eligible donor is left as is.
//
// Throws std::invalid_argument on probabilities outside [0, 1], mismatched
// prompt lists, or an empty donor pool while p_replace > 0.
PromptStructure augment(const PromptStructure &prompt,
                        const AugmentConfig &cfg,
                        std::span<const SpeakerEmbedding> donor_embeddings);

// Deterministic stand-in for the decoder: for each triplet returns the
// reference words of its source segment. A clipped piece gets the tokens
// whose equal-partition interval starts inside the piece, so the pieces of
// a split segment partition its words. Word-mode labels re-join with
// single spaces, char-mode labels concatenate.
//
// Throws std::invalid_argument when the reference does not cover a
// triplet's source segment.
std::vector<std::string> oracle_asr(const Chunk &chunk,
                                    const SegmentList &reference,
                                    const Tokenizer &tok = {});

// Element-wise integer addition with saturation at the int16 limits. Every
// placed utterance must carry samples at the given rate.
std::vector<std::int16_t> render_mixture_pcm(const UtterancePool &pool,
                                             const MixturePlan &plan,
                                             int sample_rate = 16000);

} // namespace diarasr
