#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "diarasr/edit_distance.hpp"
#include "diarasr/tokenize.hpp"
#include "diarasr/types.hpp"

namespace diarasr {

struct TimedWord {
    std::string token;
    double begin = 0.0; // seconds
    double end = 0.0;   // seconds
};

// Tokens get equal-width contiguous intervals partitioning [start, end]:
// token i of n covers [start + i*L/n, start + (i+1)*L/n]. The last interval
// ends exactly at seg.end. Empty words yield an empty list.
std::vector<TimedWord> words_with_times(const Segment &seg,
                                        const Tokenizer &tok);

// Levenshtein alignment where a match/substitution pairing (ref_i, hyp_j)
// is permitted only if hyp_j's interval, extended by collar on each side,
// intersects ref_i's interval. Words that cannot pair are deleted/inserted.
// Both lists must be ordered by interval begin; collar must be >= 0
// (+infinity reduces this to plain edit_distance). Ties are resolved as in
// edit_distance (fewest substitutions).
ErrorCounts time_constrained_edit_distance(std::span<const TimedWord> ref,
                                           std::span<const TimedWord> hyp,
                                           double collar);

// Name used in speaker_mapping for hypothesis speakers paired with an
// empty pseudo-reference stream.
inline constexpr const char *kUnmatchedSpeaker = "unmatched";

struct AlignmentReport {
    ErrorCounts counts;
    // total errors / reference tokens; empty when ref_tokens == 0 (the
    // counts are still meaningful).
    std::optional<double> rate;
    // hypothesis speaker -> reference speaker (or kUnmatchedSpeaker).
    std::map<std::string, std::string> speaker_mapping;
};

// Concatenated-permutation WER. Per speaker, utterances are concatenated
// in ascending (start, end) order; the speaker mapping minimizing total
// edit distance is found by optimal assignment on the pairwise cost
// matrix, padding the smaller side with empty pseudo-speakers. Inputs must
// be single-session and every segment must carry words.
AlignmentReport cpwer(const SegmentList &ref, const SegmentList &hyp,
                      const Tokenizer &tok);

// Time-constrained cpWER: pairwise costs come from
// time_constrained_edit_distance over each speaker's time-ordered word
// stream. tcpwer(collar=+inf) equals cpwer exactly.
AlignmentReport tcpwer(const SegmentList &ref, const SegmentList &hyp,
                       double collar, const Tokenizer &tok);

} // namespace diarasr
