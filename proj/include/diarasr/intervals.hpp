#pragma once

#include <vector>

#include "diarasr/types.hpp"

namespace diarasr {

// Sorted, pairwise-disjoint union of the inputs. Zero-length inputs vanish;
// touching intervals are coalesced.
std::vector<Interval> merge_intervals(std::vector<Interval> xs);

// a ∩ b. Inputs need not be merged; the result is.
std::vector<Interval> intersect_intervals(const std::vector<Interval> &a,
                                          const std::vector<Interval> &b);

// a \ b. Inputs need not be merged; the result is.
std::vector<Interval> subtract_intervals(const std::vector<Interval> &a,
                                         const std::vector<Interval> &b);

double total_length(const std::vector<Interval> &xs);

} // namespace diarasr
