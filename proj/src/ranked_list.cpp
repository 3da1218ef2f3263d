#include "llr/ranked_list.hpp"

#include <algorithm>

namespace llr {

RankedList make_ranked_list(std::vector<std::pair<std::string, double>> scored) {
    std::erase_if(scored, [](const auto& p) { return !(p.second > 0.0); });
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    RankedList list;
    list.items.reserve(scored.size());
    int rank = 1;
    for (auto& [id, score] : scored) {
        list.items.push_back(RankedItem{std::move(id), score, rank++});
    }
    return list;
}

} // namespace llr
