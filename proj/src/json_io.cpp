#include "diarasr/json_io.hpp"

namespace diarasr {

namespace {

std::string record_prefix(std::size_t idx) {
    return "record " + std::to_string(idx) + ": ";
}

const json &require_key(const json &j, const char *key, std::size_t idx) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(record_prefix(idx) + "missing key '" + key + "'",
                         idx);
    }
    return *it;
}

double require_number(const json &j, const char *key, std::size_t idx) {
    const json &v = require_key(j, key, idx);
    if (!v.is_number()) {
        throw ParseError(record_prefix(idx) + "key '" + key +
                             "': expected a number",
                         idx);
    }
    return v.get<double>();
}

std::string require_string(const json &j, const char *key, std::size_t idx) {
    const json &v = require_key(j, key, idx);
    if (!v.is_string()) {
        throw ParseError(record_prefix(idx) + "key '" + key +
                             "': expected a string",
                         idx);
    }
    return v.get<std::string>();
}

} // namespace

json to_json(const Segment &seg) {
    json j;
    j["session_id"] = seg.session_id;
    j["speaker"] = seg.speaker;
    j["start_time"] = seg.start;
    j["end_time"] = seg.end;
    j["words"] = seg.words.value_or("");
    return j;
}

json to_json(const SpeakerEmbedding &emb) { return json(emb.values); }

json to_json(const Triplet &t) {
    json j;
    j["start_norm"] = t.start_norm;
    j["end_norm"] = t.end_norm;
    j["embedding"] = to_json(t.embedding);
    j["source"] = to_json(t.source_segment);
    return j;
}

json to_json(const PromptStructure &prompt) {
    json j;
    j["instruction"] = prompt.instruction;
    json slots = json::array();
    for (const auto &t : prompt.triplet_slots) {
        slots.push_back(to_json(t));
    }
    j["triplets"] = std::move(slots);
    j["labels"] = prompt.labels;
    return j;
}

json to_json(const Interval &iv) {
    json j;
    j["begin"] = iv.begin;
    j["end"] = iv.end;
    return j;
}

json to_json(const Chunk &chunk) {
    json j;
    j["window"] = to_json(chunk.window);
    json segs = json::array();
    for (const auto &seg : chunk.segments) {
        segs.push_back(to_json(seg));
    }
    j["segments"] = std::move(segs);
    json trips = json::array();
    for (const auto &t : chunk.triplets) {
        trips.push_back(to_json(t));
    }
    j["triplets"] = std::move(trips);
    return j;
}

json to_json(const MixturePlan &plan) {
    json j;
    j["session_id"] = plan.session_id;
    json placements = json::array();
    for (const auto &p : plan.placements) {
        json pj;
        pj["utterance"] = p.utterance;
        pj["offset"] = p.offset;
        placements.push_back(std::move(pj));
    }
    j["placements"] = std::move(placements);
    json ref = json::array();
    for (const auto &seg : plan.reference) {
        ref.push_back(to_json(seg));
    }
    j["reference"] = std::move(ref);
    j["overlap_ratio"] = plan.overlap_ratio;
    return j;
}

Segment segment_from_json(const json &j, std::size_t idx) {
    if (!j.is_object()) {
        throw ParseError(record_prefix(idx) + "expected an object", idx);
    }
    Segment seg;
    seg.session_id = require_string(j, "session_id", idx);
    seg.speaker = require_string(j, "speaker", idx);
    seg.start = require_number(j, "start_time", idx);
    seg.end = require_number(j, "end_time", idx);
    seg.words = require_string(j, "words", idx);
    if (seg.start < 0.0) {
        throw ParseError(record_prefix(idx) + "negative start_time", idx);
    }
    if (!(seg.end > seg.start)) {
        throw ParseError(record_prefix(idx) +
                             "end_time must be greater than start_time",
                         idx);
    }
    return seg;
}

SpeakerEmbedding embedding_from_json(const json &j) {
    if (!j.is_array()) {
        throw ParseError("embedding: expected an array of numbers", 0);
    }
    SpeakerEmbedding emb;
    emb.values.reserve(j.size());
    for (const auto &v : j) {
        if (!v.is_number()) {
            throw ParseError("embedding: expected an array of numbers", 0);
        }
        emb.values.push_back(v.get<double>());
    }
    return emb;
}

Triplet triplet_from_json(const json &j) {
    if (!j.is_object()) {
        throw ParseError("triplet: expected an object", 0);
    }
    Triplet t;
    t.start_norm = require_number(j, "start_norm", 0);
    t.end_norm = require_number(j, "end_norm", 0);
    t.embedding = embedding_from_json(require_key(j, "embedding", 0));
    t.source_segment = segment_from_json(require_key(j, "source", 0), 0);
    return t;
}

PromptStructure prompt_from_json(const json &j) {
    if (!j.is_object()) {
        throw ParseError("prompt: expected an object", 0);
    }
    PromptStructure prompt;
    prompt.instruction = require_string(j, "instruction", 0);
    const json &slots = require_key(j, "triplets", 0);
    if (!slots.is_array()) {
        throw ParseError("prompt: 'triplets' must be an array", 0);
    }
    for (const auto &s : slots) {
        prompt.triplet_slots.push_back(triplet_from_json(s));
    }
    const json &labels = require_key(j, "labels", 0);
    if (!labels.is_array()) {
        throw ParseError("prompt: 'labels' must be an array", 0);
    }
    for (const auto &l : labels) {
        if (!l.is_string()) {
            throw ParseError("prompt: labels must be strings", 0);
        }
        prompt.labels.push_back(l.get<std::string>());
    }
    if (prompt.labels.size() != prompt.triplet_slots.size()) {
        throw ParseError("prompt: " + std::to_string(prompt.labels.size()) +
                             " labels for " +
                             std::to_string(prompt.triplet_slots.size()) +
                             " triplets",
                         0);
    }
    return prompt;
}

UtterancePool pool_from_json(const json &j) {
    if (!j.is_array()) {
        throw ParseError("pool: expected an array of utterance records", 0);
    }
    UtterancePool pool;
    std::size_t idx = 0;
    for (const auto &rec : j) {
        if (!rec.is_object()) {
            throw ParseError(record_prefix(idx) + "expected an object", idx);
        }
        Utterance u;
        u.speaker = require_string(rec, "speaker", idx);
        u.duration = require_number(rec, "duration", idx);
        if (!(u.duration > 0.0)) {
            throw ParseError(record_prefix(idx) + "duration must be positive",
                             idx);
        }
        u.words = require_string(rec, "words", idx);
        u.embedding = embedding_from_json(require_key(rec, "embedding", idx));
        if (auto it = rec.find("samples"); it != rec.end()) {
            std::vector<std::int16_t> samples;
            for (const auto &s : *it) {
                samples.push_back(s.get<std::int16_t>());
            }
            u.samples = std::move(samples);
        }
        if (auto it = rec.find("sample_rate"); it != rec.end()) {
            u.sample_rate = it->get<int>();
        }
        pool.utterances.push_back(std::move(u));
        ++idx;
    }
    return pool;
}

std::map<std::string, SpeakerEmbedding> embedding_map_from_json(const json &j) {
    if (!j.is_object()) {
        throw ParseError("embeddings: expected an object speaker -> values",
                         0);
    }
    std::map<std::string, SpeakerEmbedding> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        out[it.key()] = embedding_from_json(it.value());
    }
    return out;
}

} // namespace diarasr
