#include <doctest.h>

#include <cmath>

#include "common/generators.hpp"
#include "diarasr/chunker.hpp"
#include "diarasr/rng.hpp"

using namespace diarasr;

namespace {

Segment seg_at(const std::string &speaker, double start, double end) {
    Segment seg;
    seg.session_id = "m";
    seg.speaker = speaker;
    seg.start = start;
    seg.end = end;
    return seg;
}

std::map<std::string, SpeakerEmbedding> embeddings_for(const SegmentList &segs) {
    std::map<std::string, SpeakerEmbedding> out;
    for (const auto &seg : segs) {
        out.emplace(seg.speaker, generators::test_embedding(seg.speaker));
    }
    return out;
}

SegmentList fuzz_session(Rng &rng) {
    SegmentList segs;
    const std::size_t n_speakers = 1 + rng.uniform_index(5);
    const std::size_t n_segs = 1 + rng.uniform_index(40);
    for (std::size_t i = 0; i < n_segs; ++i) {
        double start = rng.uniform(0.0, 300.0);
        double dur = rng.uniform(0.2, 90.0); // long ones force splitting
        segs.push_back(seg_at("spk" + std::to_string(
                                  rng.uniform_index(n_speakers)),
                              start, start + dur));
    }
    return segs;
}

void check_chunk_bounds(const std::vector<Chunk> &chunks,
                        const ChunkConfig &cfg) {
    for (const auto &chunk : chunks) {
        CHECK(chunk.window.length() <= cfg.max_chunk_duration + 1e-9);
        CHECK(chunk.segments.size() <= cfg.max_total_segments);
        std::map<std::string, std::size_t> per_speaker;
        for (const auto &seg : chunk.segments) {
            ++per_speaker[seg.speaker];
            CHECK(seg.start >= chunk.window.begin);
            CHECK(seg.end <= chunk.window.end);
        }
        for (const auto &[name, count] : per_speaker) {
            CHECK(count <= cfg.max_segments_per_speaker);
        }
    }
}

} // namespace

TEST_CASE("split_long_segments cuts at multiples of max_dur") {
    auto pieces = split_long_segments({seg_at("A", 0.0, 70.0)}, 30.0);
    REQUIRE(pieces.size() == 3);
    CHECK(pieces[0].start == 0.0);
    CHECK(pieces[0].end == 30.0);
    CHECK(pieces[1].start == 30.0);
    CHECK(pieces[1].end == 60.0);
    CHECK(pieces[2].start == 60.0);
    CHECK(pieces[2].end == 70.0);
    for (const auto &p : pieces) {
        CHECK(p.speaker == "A");
        CHECK(p.session_id == "m");
    }

    auto untouched = split_long_segments({seg_at("A", 0.0, 10.0)}, 30.0);
    REQUIRE(untouched.size() == 1);
    CHECK(untouched[0].end == 10.0);

    // Exact multiples produce exactly L / max_dur pieces.
    auto exact = split_long_segments({seg_at("A", 5.0, 65.0)}, 30.0);
    CHECK(exact.size() == 2);
}

TEST_CASE("split_long_segments preserves total duration") {
    Rng rng(21);
    for (int it = 0; it < 60; ++it) {
        auto segs = fuzz_session(rng);
        double max_dur = rng.uniform(1.0, 40.0);
        auto pieces = split_long_segments(segs, max_dur);
        double before = 0.0, after = 0.0;
        for (const auto &s : segs) {
            before += s.duration();
        }
        for (const auto &p : pieces) {
            after += p.duration();
            CHECK(p.duration() <= max_dur + 1e-12);
        }
        CHECK(std::fabs(before - after) < 1e-9);
        std::size_t expected = 0;
        for (const auto &s : segs) {
            expected += static_cast<std::size_t>(
                std::ceil(s.duration() / max_dur - 1e-12));
        }
        CHECK(pieces.size() == expected);
    }
}

TEST_CASE("eleven one-second segments at a limit of ten give two chunks") {
    SegmentList segs;
    for (int i = 0; i < 11; ++i) {
        segs.push_back(seg_at("A", i, i + 1.0));
    }
    ChunkConfig cfg{30.0, 10, 10};
    auto chunks = plan_chunks(segs, cfg, embeddings_for(segs));
    REQUIRE(chunks.size() == 2);
    CHECK(chunks[0].segments.size() == 10);
    CHECK(chunks[1].segments.size() == 1);
}

TEST_CASE("a segment at a closing boundary opens the next chunk") {
    // Second segment would stretch the window past the duration bound.
    SegmentList segs{seg_at("A", 0.0, 8.0), seg_at("B", 9.0, 12.0)};
    ChunkConfig cfg{10.0, 10, 10};
    auto chunks = plan_chunks(segs, cfg, embeddings_for(segs));
    REQUIRE(chunks.size() == 2);
    CHECK(chunks[0].window.end == 8.0);
    CHECK(chunks[1].window.begin == 9.0);
}

TEST_CASE("planner output is deterministic and covers the input") {
    Rng rng(3030);
    for (int it = 0; it < 50; ++it) {
        auto segs = fuzz_session(rng);
        ChunkConfig cfg{30.0, 10, 4};
        auto embs = embeddings_for(segs);
        auto chunks = plan_chunks(segs, cfg, embs);
        auto again = plan_chunks(segs, cfg, embs);
        CHECK(chunks == again);
        CHECK(chunk_coverage_check(segs, chunks, cfg.max_chunk_duration).ok);
        check_chunk_bounds(chunks, cfg);
    }
}

TEST_CASE("coverage check spots dropped and foreign segments") {
    SegmentList segs{seg_at("A", 0.0, 5.0), seg_at("B", 5.0, 9.0)};
    ChunkConfig cfg{30.0, 10, 4};
    auto chunks = plan_chunks(segs, cfg, embeddings_for(segs));
    REQUIRE(chunk_coverage_check(segs, chunks, 30.0).ok);

    auto broken = chunks;
    broken[0].segments.pop_back();
    auto report = chunk_coverage_check(segs, broken, 30.0);
    CHECK(!report.ok);
    CHECK(report.missing == 1);

    auto padded = chunks;
    padded[0].segments.push_back(seg_at("C", 100.0, 101.0));
    CHECK(chunk_coverage_check(segs, padded, 30.0).extra == 1);
}

TEST_CASE("per-speaker embeddings are bit-identical across chunks") {
    Rng rng(99);
    auto segs = fuzz_session(rng);
    ChunkConfig cfg{20.0, 6, 3};
    auto embs = embeddings_for(segs);
    auto chunks = plan_chunks(segs, cfg, embs);
    std::map<std::string, const SpeakerEmbedding *> seen;
    for (const auto &chunk : chunks) {
        for (const auto &t : chunk.triplets) {
            const auto &name = t.source_segment.speaker;
            if (auto it = seen.find(name); it != seen.end()) {
                CHECK(t.embedding == *it->second);
            } else {
                seen[name] = &t.embedding;
            }
        }
    }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS((ChunkConfig{0.0, 10, 4}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((ChunkConfig{30.0, 0, 0}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((ChunkConfig{30.0, 4, 10}.validate()),
                    std::invalid_argument);
    SegmentList segs{seg_at("A", 0.0, 1.0)};
    CHECK_THROWS_AS(plan_chunks(segs, ChunkConfig{30.0, 0, 0},
                                embeddings_for(segs)),
                    std::invalid_argument);
    CHECK_THROWS_AS(plan_chunks(segs, ChunkConfig{30.0, 10, 4}, {}),
                    std::invalid_argument);
}
