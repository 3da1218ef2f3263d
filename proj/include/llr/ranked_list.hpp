#pragma once

#include <string>
#include <utility>
#include <vector>

namespace llr {

/// One retrieved document: score s(d|C) and 1-based rank r(d|C).
struct RankedItem {
    std::string doc_id;
    double score = 0.0;
    int rank = 0;

    bool operator==(const RankedItem&) const = default;
};

/// A classifier's output list. Only documents with a strictly positive score
/// are retained; items are ordered by (score desc, doc_id asc) and ranks run
/// 1..m with no gaps. m = items.size() is the M_i used by Borda fusion.
struct RankedList {
    std::vector<RankedItem> items;

    int size() const { return static_cast<int>(items.size()); }
    bool empty() const { return items.empty(); }

    bool operator==(const RankedList&) const = default;
};

/// Canonical constructor: drops non-positive scores, sorts by
/// (score desc, doc_id asc), assigns ranks 1..m. Every retrieval and fusion
/// path builds its output through here so tie-breaking stays uniform.
RankedList make_ranked_list(std::vector<std::pair<std::string, double>> scored);

} // namespace llr
