#pragma once

#include <span>
#include <string>

namespace diarasr {

struct ErrorCounts {
    long long substitutions = 0;
    long long deletions = 0;
    long long insertions = 0;
    long long ref_tokens = 0;

    long long total_errors() const {
        return substitutions + deletions + insertions;
    }

    ErrorCounts &operator+=(const ErrorCounts &o) {
        substitutions += o.substitutions;
        deletions += o.deletions;
        insertions += o.insertions;
        ref_tokens += o.ref_tokens;
        return *this;
    }

    friend bool operator==(const ErrorCounts &, const ErrorCounts &) = default;
};

// Minimal S+D+I alignment under unit costs; ref_tokens = |ref|. Among
// equal-cost alignments the one with the fewest substitutions (most
// matches) is reported, which makes the split canonical: swapping the
// arguments swaps D and I and leaves S unchanged.
ErrorCounts edit_distance(std::span<const std::string> ref,
                          std::span<const std::string> hyp);

} // namespace diarasr
