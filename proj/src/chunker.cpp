#include "diarasr/chunker.hpp"

#include <algorithm>
#include <tuple>

namespace diarasr {

void ChunkConfig::validate() const {
    if (!(max_chunk_duration > 0.0)) {
        throw std::invalid_argument(
            "ChunkConfig: max_chunk_duration must be positive");
    }
    if (max_total_segments == 0 || max_segments_per_speaker == 0) {
        throw std::invalid_argument(
            "ChunkConfig: segment bounds must be positive");
    }
    if (max_segments_per_speaker > max_total_segments) {
        throw std::invalid_argument(
            "ChunkConfig: max_segments_per_speaker exceeds "
            "max_total_segments");
    }
}

SegmentList split_long_segments(const SegmentList &segs, double max_dur) {
    if (!(max_dur > 0.0)) {
        throw std::invalid_argument(
            "split_long_segments: max_dur must be positive");
    }
    SegmentList out;
    out.reserve(segs.size());
    for (const auto &seg : segs) {
        validate_segment(seg);
        if (seg.duration() <= max_dur) {
            out.push_back(seg);
            continue;
        }
        for (long long k = 0;; ++k) {
            Segment piece = seg;
            piece.start = seg.start + static_cast<double>(k) * max_dur;
            double next = seg.start + static_cast<double>(k + 1) * max_dur;
            if (next < seg.end) {
                piece.end = next;
                out.push_back(std::move(piece));
            } else {
                piece.end = seg.end;
                out.push_back(std::move(piece));
                break;
            }
        }
    }
    return out;
}

std::vector<Chunk>
plan_chunks(const SegmentList &segs, const ChunkConfig &cfg,
            const std::map<std::string, SpeakerEmbedding> &embeddings,
            double frame_rate, std::vector<std::string> *warnings) {
    cfg.validate();
    require_single_session(segs, "plan_chunks");
    for (const auto &seg : segs) {
        if (!embeddings.count(seg.speaker)) {
            throw std::invalid_argument(
                "plan_chunks: no embedding for speaker '" + seg.speaker +
                "'");
        }
    }

    SegmentList split = split_long_segments(segs, cfg.max_chunk_duration);
    std::stable_sort(split.begin(), split.end(),
                     [](const Segment &a, const Segment &b) {
                         return std::tie(a.start, a.end, a.speaker) <
                                std::tie(b.start, b.end, b.speaker);
                     });

    std::vector<Chunk> chunks;
    SegmentList members;
    std::map<std::string, std::size_t> per_speaker;
    Interval window{0.0, 0.0};

    auto close_chunk = [&]() {
        if (members.empty()) {
            return;
        }
        Chunk chunk;
        chunk.window = window;
        chunk.triplets = build_triplets(members, embeddings, window,
                                        frame_rate, warnings);
        chunk.segments = std::move(members);
        chunks.push_back(std::move(chunk));
        members.clear();
        per_speaker.clear();
    };

    for (const auto &seg : split) {
        if (!members.empty()) {
            Interval grown{std::min(window.begin, seg.start),
                           std::max(window.end, seg.end)};
            bool fits = grown.length() <= cfg.max_chunk_duration &&
                        members.size() + 1 <= cfg.max_total_segments &&
                        per_speaker[seg.speaker] + 1 <=
                            cfg.max_segments_per_speaker;
            if (!fits) {
                close_chunk();
            }
        }
        if (members.empty()) {
            window = {seg.start, seg.end};
        } else {
            window.begin = std::min(window.begin, seg.start);
            window.end = std::max(window.end, seg.end);
        }
        ++per_speaker[seg.speaker];
        members.push_back(seg);
    }
    close_chunk();
    return chunks;
}

namespace {

using SegmentKey = std::tuple<std::string, std::string, double, double,
                              std::optional<std::string>>;

std::map<SegmentKey, long long> segment_multiset(const SegmentList &segs) {
    std::map<SegmentKey, long long> out;
    for (const auto &seg : segs) {
        ++out[{seg.session_id, seg.speaker, seg.start, seg.end, seg.words}];
    }
    return out;
}

} // namespace

CoverageReport chunk_coverage_check(const SegmentList &input,
                                    const std::vector<Chunk> &chunks,
                                    double max_dur) {
    auto expected = segment_multiset(split_long_segments(input, max_dur));
    SegmentList got;
    for (const auto &chunk : chunks) {
        got.insert(got.end(), chunk.segments.begin(), chunk.segments.end());
    }
    auto actual = segment_multiset(got);

    CoverageReport report;
    for (const auto &[key, count] : expected) {
        auto it = actual.find(key);
        long long have = it == actual.end() ? 0 : it->second;
        if (have < count) {
            report.missing += static_cast<std::size_t>(count - have);
        }
    }
    for (const auto &[key, count] : actual) {
        auto it = expected.find(key);
        long long want = it == expected.end() ? 0 : it->second;
        if (count > want) {
            report.extra += static_cast<std::size_t>(count - want);
        }
    }
    report.ok = report.missing == 0 && report.extra == 0;
    return report;
}

} // namespace diarasr
