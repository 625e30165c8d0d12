#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diarasr {

// One speaker-attributed time interval, optionally carrying transcript text.
// The universal unit of exchange between diarization (no words) and
// speaker-attributed transcripts (words present, empty string allowed).
struct Segment {
    std::string session_id;
    std::string speaker;
    double start = 0.0; // seconds
    double end = 0.0;   // seconds
    std::optional<std::string> words;

    double duration() const { return end - start; }

    friend bool operator==(const Segment &, const Segment &) = default;
};

using SegmentList = std::vector<Segment>;

// Throws std::invalid_argument unless 0 <= start < end.
void validate_segment(const Segment &seg);

// Order-preserving within each group.
std::map<std::string, SegmentList> group_by_session(const SegmentList &segs);
std::map<std::string, SegmentList> group_by_speaker(const SegmentList &segs);

// Throws std::invalid_argument unless all segments share one session_id.
// Returns the session id ("" for an empty list).
std::string require_single_session(const SegmentList &segs,
                                   const std::string &what);

struct SpeakerEmbedding {
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }

    friend bool operator==(const SpeakerEmbedding &,
                           const SpeakerEmbedding &) = default;
};

// Time interval in seconds, begin <= end.
struct Interval {
    double begin = 0.0;
    double end = 0.0;

    double length() const { return end - begin; }

    friend bool operator==(const Interval &, const Interval &) = default;
};

// Structured parse failure: what broke, and where in the document.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string &message, std::size_t location)
        : std::runtime_error(message), location_(location) {}

    // 1-based line for line-oriented formats, 0-based record index for
    // record-oriented ones. 0 when the failure has no usable location.
    std::size_t location() const { return location_; }

  private:
    std::size_t location_;
};

} // namespace diarasr
