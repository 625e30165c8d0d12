#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "diarasr/enrollment.hpp"
#include "diarasr/types.hpp"

namespace diarasr {

struct ChunkConfig {
    double max_chunk_duration = 30.0;          // seconds
    std::size_t max_total_segments = 10;       // per chunk
    std::size_t max_segments_per_speaker = 4;  // per chunk

    // Throws std::invalid_argument on zero/negative bounds or
    // max_segments_per_speaker > max_total_segments.
    void validate() const;
};

struct Chunk {
    Interval window; // tight hull of member segments
    SegmentList segments;
    std::vector<Triplet> triplets; // window-relative

    friend bool operator==(const Chunk &, const Chunk &) = default;
};

// Cuts every segment longer than max_dur at multiples of max_dur from its
// start: duration L becomes ceil(L / max_dur) pieces. Speaker, session and
// words are preserved on every piece; total duration is preserved exactly.
SegmentList split_long_segments(const SegmentList &segs, double max_dur);

// Chunk planner: applies split_long_segments, then greedy first-fit over
// segments sorted by (start, end, speaker). A segment joins the open chunk
// unless that would violate any ChunkConfig bound (the window being the
// tight hull of the members), in which case the chunk is closed and a new
// one opened; a segment exactly at a closing boundary opens the next chunk.
// Every input segment lands in exactly one chunk, and each chunk's triplets
// are built on its window with the same per-speaker embedding everywhere.
std::vector<Chunk>
plan_chunks(const SegmentList &segs, const ChunkConfig &cfg,
            const std::map<std::string, SpeakerEmbedding> &embeddings,
            double frame_rate = 100.0,
            std::vector<std::string> *warnings = nullptr);

struct CoverageReport {
    bool ok = false;
    std::size_t missing = 0; // expected segments absent from the chunks
    std::size_t extra = 0;   // chunk segments not in the expected multiset

    explicit operator bool() const { return ok; }
};

// True iff the multiset union of chunk segments equals
// split_long_segments(input, max_dur) exactly.
CoverageReport chunk_coverage_check(const SegmentList &input,
                                    const std::vector<Chunk> &chunks,
                                    double max_dur);

} // namespace diarasr
