#include "diarasr/wer.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "diarasr/assignment.hpp"

namespace diarasr {

std::vector<TimedWord> words_with_times(const Segment &seg,
                                        const Tokenizer &tok) {
    if (!seg.words) {
        throw std::invalid_argument("words_with_times: segment " +
                                    seg.session_id + "/" + seg.speaker +
                                    " has no words");
    }
    auto tokens = tokenize(*seg.words, tok);
    std::vector<TimedWord> out;
    out.reserve(tokens.size());
    const auto n = static_cast<double>(tokens.size());
    const double width = seg.duration() / std::max(n, 1.0);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        TimedWord w;
        w.token = std::move(tokens[i]);
        w.begin = seg.start + static_cast<double>(i) * width;
        w.end = i + 1 == tokens.size()
                    ? seg.end
                    : seg.start + static_cast<double>(i + 1) * width;
        out.push_back(std::move(w));
    }
    return out;
}

namespace {

// (total errors, substitutions), compared lexicographically; same
// canonical split as edit_distance.
struct Cell {
    long long total;
    long long subs;

    bool operator<(const Cell &o) const {
        return total < o.total || (total == o.total && subs < o.subs);
    }
    Cell operator+(const Cell &o) const {
        return {total + o.total, subs + o.subs};
    }
};

ErrorCounts counts_from_cell(Cell cell, long long ref_len, long long hyp_len) {
    ErrorCounts c;
    c.substitutions = cell.subs;
    long long di = cell.total - cell.subs;
    long long diff = ref_len - hyp_len;
    c.deletions = (di + diff) / 2;
    c.insertions = (di - diff) / 2;
    c.ref_tokens = ref_len;
    return c;
}

void require_begin_ordered(std::span<const TimedWord> xs, const char *side) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i].begin < xs[i - 1].begin) {
            throw std::invalid_argument(
                std::string("time_constrained_edit_distance: ") + side +
                " words not ordered by interval begin");
        }
    }
}

} // namespace

ErrorCounts time_constrained_edit_distance(std::span<const TimedWord> ref,
                                           std::span<const TimedWord> hyp,
                                           double collar) {
    if (!(collar >= 0.0)) {
        throw std::invalid_argument(
            "time_constrained_edit_distance: collar must be non-negative");
    }
    require_begin_ordered(ref, "ref");
    require_begin_ordered(hyp, "hyp");

    // Pairing is allowed when the collar-extended hypothesis interval
    // intersects the reference interval (closed intervals, so touching
    // counts).
    auto allowed = [&](const TimedWord &r, const TimedWord &h) {
        return h.begin - collar <= r.end && r.begin <= h.end + collar;
    };

    const std::size_t n = ref.size();
    const std::size_t m = hyp.size();
    const Cell forbidden{1LL << 40, 0};
    std::vector<Cell> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        prev[j] = {static_cast<long long>(j), 0};
    }
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = {static_cast<long long>(i), 0};
        for (std::size_t j = 1; j <= m; ++j) {
            Cell pair = forbidden;
            if (allowed(ref[i - 1], hyp[j - 1])) {
                pair = prev[j - 1] + (ref[i - 1].token == hyp[j - 1].token
                                          ? Cell{0, 0}
                                          : Cell{1, 1});
            }
            Cell best = pair;
            Cell del = prev[j] + Cell{1, 0};
            Cell ins = cur[j - 1] + Cell{1, 0};
            if (del < best) {
                best = del;
            }
            if (ins < best) {
                best = ins;
            }
            cur[j] = best;
        }
        std::swap(prev, cur);
    }
    return counts_from_cell(prev[m], static_cast<long long>(n),
                            static_cast<long long>(m));
}

namespace {

struct Streams {
    std::vector<std::string> names;             // sorted
    std::vector<std::vector<TimedWord>> words;  // per speaker, begin-ordered
};

// Per speaker: segments sorted by (start, end), words interpolated, then
// the stream sorted by (begin, end). For non-overlapping utterances this
// is exactly concatenation in ascending start order; cpwer and tcpwer use
// the same canonical order so the infinite-collar identity is exact.
Streams build_streams(const SegmentList &segs, const Tokenizer &tok,
                      const char *side) {
    Streams out;
    for (const auto &seg : segs) {
        validate_segment(seg);
        if (!seg.words) {
            throw std::invalid_argument(
                std::string(side) + " segment " + seg.session_id + "/" +
                seg.speaker + ": transcript metrics need words on every segment");
        }
    }
    for (auto &[name, spk_segs] : group_by_speaker(segs)) {
        std::stable_sort(spk_segs.begin(), spk_segs.end(),
                         [](const Segment &a, const Segment &b) {
                             return a.start < b.start ||
                                    (a.start == b.start && a.end < b.end);
                         });
        std::vector<TimedWord> stream;
        for (const auto &seg : spk_segs) {
            auto ws = words_with_times(seg, tok);
            stream.insert(stream.end(), std::make_move_iterator(ws.begin()),
                          std::make_move_iterator(ws.end()));
        }
        std::stable_sort(stream.begin(), stream.end(),
                         [](const TimedWord &a, const TimedWord &b) {
                             return a.begin < b.begin ||
                                    (a.begin == b.begin && a.end < b.end);
                         });
        out.names.push_back(name);
        out.words.push_back(std::move(stream));
    }
    return out;
}

std::vector<std::string> stream_tokens(const std::vector<TimedWord> &words) {
    std::vector<std::string> toks;
    toks.reserve(words.size());
    for (const auto &w : words) {
        toks.push_back(w.token);
    }
    return toks;
}

// collar empty = cpwer (pure token alignment), set = tcpwer.
AlignmentReport score_permutation(const SegmentList &ref,
                                  const SegmentList &hyp, const Tokenizer &tok,
                                  std::optional<double> collar) {
    if (collar && !(*collar >= 0.0)) {
        throw std::invalid_argument("collar must be non-negative");
    }
    std::string ref_sid = require_single_session(ref, "reference");
    std::string hyp_sid = require_single_session(hyp, "hypothesis");
    if (!ref.empty() && !hyp.empty() && ref_sid != hyp_sid) {
        throw std::invalid_argument("reference session '" + ref_sid +
                                    "' does not match hypothesis session '" +
                                    hyp_sid + "'");
    }

    Streams rs = build_streams(ref, tok, "reference");
    Streams hs = build_streams(hyp, tok, "hypothesis");
    const std::size_t nr = rs.names.size();
    const std::size_t nh = hs.names.size();
    const std::size_t n = std::max(nr, nh);

    AlignmentReport report;
    if (n == 0) {
        return report;
    }

    // Pairwise alignment costs; the smaller side is padded with empty
    // pseudo-streams (pure deletions / insertions).
    const std::vector<TimedWord> empty_stream;
    std::vector<std::vector<ErrorCounts>> pair(
        n, std::vector<ErrorCounts>(n));
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (std::size_t h = 0; h < n; ++h) {
        const auto &hyp_words = h < nh ? hs.words[h] : empty_stream;
        for (std::size_t r = 0; r < n; ++r) {
            const auto &ref_words = r < nr ? rs.words[r] : empty_stream;
            if (collar) {
                pair[h][r] = time_constrained_edit_distance(
                    ref_words, hyp_words, *collar);
            } else {
                pair[h][r] =
                    edit_distance(stream_tokens(ref_words),
                                  stream_tokens(hyp_words));
            }
            cost[h][r] = static_cast<double>(pair[h][r].total_errors());
        }
    }

    std::vector<int> assign = min_cost_assignment(cost);
    for (std::size_t h = 0; h < n; ++h) {
        const auto r = static_cast<std::size_t>(assign[h]);
        report.counts += pair[h][r];
        if (h < nh) {
            report.speaker_mapping[hs.names[h]] =
                r < nr ? rs.names[r] : kUnmatchedSpeaker;
        }
    }
    if (report.counts.ref_tokens > 0) {
        report.rate = static_cast<double>(report.counts.total_errors()) /
                      static_cast<double>(report.counts.ref_tokens);
    }
    return report;
}

} // namespace

AlignmentReport cpwer(const SegmentList &ref, const SegmentList &hyp,
                      const Tokenizer &tok) {
    return score_permutation(ref, hyp, tok, std::nullopt);
}

AlignmentReport tcpwer(const SegmentList &ref, const SegmentList &hyp,
                       double collar, const Tokenizer &tok) {
    return score_permutation(ref, hyp, tok, collar);
}

} // namespace diarasr
