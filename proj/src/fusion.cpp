#include "llr/fusion.hpp"

#include <algorithm>
#include <map>

#include "llr/error.hpp"

namespace llr::fusion {

std::string_view to_string(FusionMethod method) {
    return method == FusionMethod::borda ? "borda" : "scoreadd";
}

FusionMethod fusion_method_from(std::string_view s) {
    if (s == "borda") return FusionMethod::borda;
    if (s == "scoreadd" || s == "score_addition") {
        return FusionMethod::score_addition;
    }
    throw ConfigError("unknown fusion method: " + std::string(s));
}

namespace {

void require_members(const std::vector<RankedList>& lists) {
    if (lists.size() < 2) {
        throw ConfigError("fusion needs at least 2 member lists, got " +
                          std::to_string(lists.size()));
    }
}

} // namespace

RankedList borda_fuse(const std::vector<RankedList>& lists) {
    require_members(lists);
    std::map<std::string, double> totals;
    for (const auto& list : lists) {
        const int m = list.size();
        for (const auto& item : list.items) {
            totals[item.doc_id] += static_cast<double>(m - item.rank + 1);
        }
    }
    std::vector<std::pair<std::string, double>> scored(totals.begin(),
                                                       totals.end());
    return make_ranked_list(std::move(scored));
}

RankedList normalize_scores(const RankedList& list) {
    if (list.empty()) return list;
    auto [lo, hi] = std::minmax_element(
        list.items.begin(), list.items.end(),
        [](const RankedItem& a, const RankedItem& b) { return a.score < b.score; });
    double min = lo->score;
    double max = hi->score;
    RankedList out = list;
    for (auto& item : out.items) {
        item.score = max > min ? (item.score - min) / (max - min) : 1.0;
    }
    return out;
}

RankedList score_addition_fuse(const std::vector<RankedList>& lists) {
    require_members(lists);
    std::map<std::string, double> totals;
    for (const auto& list : lists) {
        RankedList normalized = normalize_scores(list);
        for (const auto& item : normalized.items) {
            totals[item.doc_id] += item.score;
        }
    }
    std::vector<std::pair<std::string, double>> scored(totals.begin(),
                                                       totals.end());
    return make_ranked_list(std::move(scored));
}

RankedList fuse(FusionMethod method, const std::vector<RankedList>& lists) {
    return method == FusionMethod::borda ? borda_fuse(lists)
                                         : score_addition_fuse(lists);
}

} // namespace llr::fusion
