#include "diarasr/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "diarasr/intervals.hpp"
#include "diarasr/rng.hpp"
#include "diarasr/wer.hpp"

namespace diarasr {

namespace {

constexpr std::size_t kMaxPlacements = 4096;

} // namespace

MixturePlan simulate_mixture(const UtterancePool &pool,
                             std::size_t n_speakers, double max_duration,
                             Interval gap_range, std::uint64_t seed) {
    if (pool.utterances.empty()) {
        throw std::invalid_argument("simulate_mixture: empty utterance pool");
    }
    if (n_speakers == 0) {
        throw std::invalid_argument(
            "simulate_mixture: need at least one speaker");
    }
    if (!(max_duration > 0.0)) {
        throw std::invalid_argument(
            "simulate_mixture: max_duration must be positive");
    }
    if (!(gap_range.begin <= gap_range.end)) {
        throw std::invalid_argument("simulate_mixture: inverted gap range");
    }

    // Speaker -> utterance indices, in sorted speaker order.
    std::map<std::string, std::vector<std::size_t>> by_speaker;
    for (std::size_t i = 0; i < pool.utterances.size(); ++i) {
        const Utterance &u = pool.utterances[i];
        if (!(u.duration > 0.0)) {
            throw std::invalid_argument(
                "simulate_mixture: utterance " + std::to_string(i) +
                " has non-positive duration");
        }
        by_speaker[u.speaker].push_back(i);
    }
    if (by_speaker.size() < n_speakers) {
        throw std::invalid_argument(
            "simulate_mixture: pool has " +
            std::to_string(by_speaker.size()) + " distinct speakers, need " +
            std::to_string(n_speakers));
    }

    Rng root(seed);
    Rng r_speaker = root.split(1);
    Rng r_utterance = root.split(2);
    Rng r_gap = root.split(3);

    std::vector<std::string> speakers;
    speakers.reserve(by_speaker.size());
    for (const auto &[name, ids] : by_speaker) {
        speakers.push_back(name);
    }
    r_speaker.shuffle(speakers);
    speakers.resize(n_speakers); // one shuffled cycle of chosen speakers

    MixturePlan plan;
    plan.session_id = "sim-" + std::to_string(seed);

    double cursor = 0.0; // end of the latest-ending placed utterance
    for (std::size_t k = 0; k < kMaxPlacements; ++k) {
        const auto &candidates = by_speaker[speakers[k % n_speakers]];
        std::size_t utt = candidates[r_utterance.uniform_index(
            candidates.size())];
        const Utterance &u = pool.utterances[utt];
        double offset = 0.0;
        if (k > 0) {
            double gap = r_gap.uniform(gap_range.begin, gap_range.end);
            offset = std::max(0.0, cursor + gap);
        }
        if (offset + u.duration > max_duration) {
            break;
        }
        plan.placements.push_back({utt, offset});
        Segment seg;
        seg.session_id = plan.session_id;
        seg.speaker = u.speaker;
        seg.start = offset;
        seg.end = offset + u.duration;
        seg.words = u.words;
        plan.reference.push_back(std::move(seg));
        cursor = std::max(cursor, offset + u.duration);
    }

    plan.overlap_ratio = overlap_ratio(plan.reference);
    return plan;
}

double overlap_ratio(const SegmentList &segs) {
    // Union per speaker first: a speaker overlapping itself is one voice.
    std::map<std::string, std::vector<Interval>> per_speaker;
    for (const auto &seg : segs) {
        validate_segment(seg);
        per_speaker[seg.speaker].push_back({seg.start, seg.end});
    }
    std::vector<std::vector<Interval>> unions;
    std::vector<double> points;
    for (auto &[name, ivs] : per_speaker) {
        auto merged = merge_intervals(std::move(ivs));
        for (const auto &iv : merged) {
            points.push_back(iv.begin);
            points.push_back(iv.end);
        }
        unions.push_back(std::move(merged));
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<std::size_t> cursors(unions.size(), 0);
    double any_speech = 0.0;
    double overlapped = 0.0;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const double a = points[k];
        const double b = points[k + 1];
        if (!(b > a)) {
            continue;
        }
        const double mid = a + (b - a) / 2.0;
        int active = 0;
        for (std::size_t s = 0; s < unions.size(); ++s) {
            auto &pos = cursors[s];
            const auto &ivs = unions[s];
            while (pos < ivs.size() && ivs[pos].end <= mid) {
                ++pos;
            }
            if (pos < ivs.size() && ivs[pos].begin <= mid) {
                ++active;
            }
        }
        if (active >= 1) {
            any_speech += b - a;
        }
        if (active >= 2) {
            overlapped += b - a;
        }
    }
    return any_speech > 0.0 ? overlapped / any_speech : 0.0;
}

Interval gap_range_for_overlap(double target, double mean_utterance_duration,
                               double max_duration) {
    if (!(target >= 0.0) || !(target < 1.0)) {
        throw std::invalid_argument(
            "gap_range_for_overlap: target must lie in [0, 1)");
    }
    if (!(mean_utterance_duration > 0.0) || !(max_duration > 0.0)) {
        throw std::invalid_argument(
            "gap_range_for_overlap: durations must be positive");
    }
    // With K utterances of mean duration d and per-junction overlap o,
    // ratio = (K-1)o / (Kd - (K-1)o). Solving with the junction/utterance
    // correction K/(K-1), K estimated from the span each placement covers.
    double o = target * mean_utterance_duration / (1.0 + target);
    double k_hat =
        max_duration * (1.0 + target) / mean_utterance_duration;
    if (k_hat > 1.5) {
        o *= k_hat / (k_hat - 1.0);
    }
    return {-2.0 * o, 0.0};
}

PromptStructure augment(const PromptStructure &prompt,
                        const AugmentConfig &cfg,
                        std::span<const SpeakerEmbedding> donor_embeddings) {
    for (double p : {cfg.p_replace, cfg.p_drop, cfg.p_shuffle}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(
                "augment: probabilities must lie in [0, 1]");
        }
    }
    if (prompt.triplet_slots.size() != prompt.labels.size()) {
        throw std::invalid_argument("augment: prompt has " +
                                    std::to_string(prompt.labels.size()) +
                                    " labels for " +
                                    std::to_string(prompt.triplet_slots.size()) +
                                    " triplets");
    }
    if (cfg.p_replace > 0.0 && donor_embeddings.empty()) {
        throw std::invalid_argument(
            "augment: donor pool required when p_replace > 0");
    }

    Rng root(cfg.seed);
    Rng r_replace = root.split(1);
    Rng r_drop = root.split(2);
    Rng r_shuffle = root.split(3);

    PromptStructure out = prompt;

    // 1. Embedding replacement: swap for a donor with different values and
    //    blank the label so the model learns to ignore the slot.
    for (std::size_t i = 0; i < out.triplet_slots.size(); ++i) {
        if (!r_replace.bernoulli(cfg.p_replace)) {
            continue;
        }
        std::vector<std::size_t> eligible;
        for (std::size_t d = 0; d < donor_embeddings.size(); ++d) {
            if (donor_embeddings[d] != out.triplet_slots[i].embedding) {
                eligible.push_back(d);
            }
        }
        if (eligible.empty()) {
            continue; // nothing distinguishable to replace with
        }
        std::size_t pick = eligible[r_replace.uniform_index(eligible.size())];
        out.triplet_slots[i].embedding = donor_embeddings[pick];
        out.labels[i].clear();
    }

    // 2. Triplet dropout: remove triplet and label together.
    {
        std::vector<Triplet> kept_slots;
        std::vector<std::string> kept_labels;
        for (std::size_t i = 0; i < out.triplet_slots.size(); ++i) {
            if (r_drop.bernoulli(cfg.p_drop)) {
                continue;
            }
            kept_slots.push_back(std::move(out.triplet_slots[i]));
            kept_labels.push_back(std::move(out.labels[i]));
        }
        out.triplet_slots = std::move(kept_slots);
        out.labels = std::move(kept_labels);
    }

    // 3. Shuffling: one permutation applied to slots and labels jointly.
    if (r_shuffle.bernoulli(cfg.p_shuffle) && out.triplet_slots.size() > 1) {
        std::vector<std::size_t> perm(out.triplet_slots.size());
        std::iota(perm.begin(), perm.end(), 0);
        r_shuffle.shuffle(perm);
        std::vector<Triplet> slots(out.triplet_slots.size());
        std::vector<std::string> labels(out.labels.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            slots[i] = std::move(out.triplet_slots[perm[i]]);
            labels[i] = std::move(out.labels[perm[i]]);
        }
        out.triplet_slots = std::move(slots);
        out.labels = std::move(labels);
    }

    return out;
}

std::vector<std::string> oracle_asr(const Chunk &chunk,
                                    const SegmentList &reference,
                                    const Tokenizer &tok) {
    constexpr double kTol = 1e-9;
    std::vector<std::string> labels;
    labels.reserve(chunk.triplets.size());
    for (const auto &triplet : chunk.triplets) {
        const Segment &piece = triplet.source_segment;
        const Segment *container = nullptr;
        for (const auto &ref : reference) {
            if (ref.session_id == piece.session_id &&
                ref.speaker == piece.speaker &&
                ref.start <= piece.start + kTol &&
                piece.end <= ref.end + kTol) {
                container = &ref;
                break;
            }
        }
        if (container == nullptr) {
            throw std::invalid_argument(
                "oracle_asr: reference does not cover segment " +
                piece.session_id + "/" + piece.speaker + " [" +
                std::to_string(piece.start) + ", " +
                std::to_string(piece.end) + ")");
        }
        if (!container->words) {
            throw std::invalid_argument(
                "oracle_asr: reference segment for " + piece.speaker +
                " carries no words");
        }
        // Tokens whose equal-partition interval starts inside the piece;
        // the pieces of a split segment share boundary values, so this
        // partitions the tokens exactly.
        std::string label;
        const char *sep = tok.mode == TokenMode::Word ? " " : "";
        for (const auto &w : words_with_times(*container, tok)) {
            if (w.begin >= piece.start && w.begin < piece.end) {
                if (!label.empty()) {
                    label += sep;
                }
                label += w.token;
            }
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

std::vector<std::int16_t> render_mixture_pcm(const UtterancePool &pool,
                                             const MixturePlan &plan,
                                             int sample_rate) {
    if (sample_rate <= 0) {
        throw std::invalid_argument(
            "render_mixture_pcm: sample_rate must be positive");
    }
    double end = 0.0;
    for (const auto &p : plan.placements) {
        end = std::max(end, p.offset + pool.utterances[p.utterance].duration);
    }
    std::vector<std::int16_t> out(
        static_cast<std::size_t>(std::ceil(end * sample_rate)), 0);
    for (const auto &p : plan.placements) {
        const Utterance &u = pool.utterances[p.utterance];
        if (!u.samples) {
            throw std::invalid_argument(
                "render_mixture_pcm: utterance " +
                std::to_string(p.utterance) + " has no sample buffer");
        }
        if (u.sample_rate != sample_rate) {
            throw std::invalid_argument(
                "render_mixture_pcm: utterance " +
                std::to_string(p.utterance) + " sampled at " +
                std::to_string(u.sample_rate) + " Hz, expected " +
                std::to_string(sample_rate));
        }
        auto base = static_cast<std::size_t>(
            std::llround(p.offset * sample_rate));
        for (std::size_t i = 0;
             i < u.samples->size() && base + i < out.size(); ++i) {
            int sum = static_cast<int>(out[base + i]) +
                      static_cast<int>((*u.samples)[i]);
            sum = std::clamp(sum, -32768, 32767);
            out[base + i] = static_cast<std::int16_t>(sum);
        }
    }
    return out;
}

} // namespace diarasr
