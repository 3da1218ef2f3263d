#pragma once

#include <string_view>
#include <vector>

#include "llr/ranked_list.hpp"

namespace llr::fusion {

enum class FusionMethod { borda, score_addition };

std::string_view to_string(FusionMethod method);
FusionMethod fusion_method_from(std::string_view s);

/// Rank-based fusion: Borda(d) = sum_i (M_i - r(d|C_i) + 1) over the member
/// lists containing d, where M_i is member i's list length. Missing members
/// contribute 0. Output is a fresh RankedList (Borda score desc, doc_id asc,
/// ranks reassigned). Throws ConfigError for fewer than 2 lists.
RankedList borda_fuse(const std::vector<RankedList>& lists);

/// Min-max normalization of a list's scores to [0, 1]:
/// s' = (s - min) / (max - min); all-equal scores map to 1.0 so presence
/// still counts. Ordering and ranks are unchanged. The bottom item maps to
/// 0.0, which is why this is a fusion intermediate rather than a retrieval
/// output.
RankedList normalize_scores(const RankedList& list);

/// Score-based fusion: each member list is min-max normalized, then
/// total(d) = sum_i s'(d|C_i) with absent members contributing 0. Documents
/// with a positive total are kept, ordered by (total desc, doc_id asc).
/// Throws ConfigError for fewer than 2 lists.
RankedList score_addition_fuse(const std::vector<RankedList>& lists);

RankedList fuse(FusionMethod method, const std::vector<RankedList>& lists);

} // namespace llr::fusion
