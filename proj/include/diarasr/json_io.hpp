#pragma once

#include <json.hpp>

#include "diarasr/chunker.hpp"
#include "diarasr/enrollment.hpp"
#include "diarasr/simkit.hpp"
#include "diarasr/types.hpp"

// JSON shapes for every document the toolkit reads or writes. ordered_json
// keeps key order fixed so serialized output is byte-deterministic.

namespace diarasr {

using json = nlohmann::ordered_json;

json to_json(const Segment &seg);               // seglst record shape
json to_json(const SpeakerEmbedding &emb);      // plain array
json to_json(const Triplet &t);
json to_json(const PromptStructure &prompt);    // training-record document
json to_json(const Interval &iv);
json to_json(const Chunk &chunk);
json to_json(const MixturePlan &plan);

// record_index is used in error messages ("record 3: ...").
Segment segment_from_json(const json &j, std::size_t record_index);
SpeakerEmbedding embedding_from_json(const json &j);
Triplet triplet_from_json(const json &j);
PromptStructure prompt_from_json(const json &j);
UtterancePool pool_from_json(const json &j);

// {"speaker": [values...], ...}
std::map<std::string, SpeakerEmbedding> embedding_map_from_json(const json &j);

} // namespace diarasr
