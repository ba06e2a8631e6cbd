#include "des/oracle.hpp"

#include <algorithm>

#include "des/errors.hpp"

namespace des {

namespace {

bool sorted_contains(const std::vector<std::vector<EventId>>& set, const std::vector<EventId>& s) {
    return std::binary_search(set.begin(), set.end(), s, TraceLess{});
}

}  // namespace

bool BoundedLanguage::contains_closed(const std::vector<EventId>& s) const {
    return sorted_contains(closed, s);
}
bool BoundedLanguage::contains_marked(const std::vector<EventId>& s) const {
    return sorted_contains(marked, s);
}

BoundedLanguage enumerate_language(const Generator& g, int max_len, std::size_t budget) {
    if (max_len < 0) throw InputError("enumerate_language: negative max_len");
    BoundedLanguage lang;
    lang.max_len = max_len;
    if (g.empty()) return lang;

    struct Node {
        State state;
        int parent;  // index into nodes, -1 for the root
        EventId via;
    };
    std::vector<Node> nodes{{g.initial, -1, 0}};
    std::size_t frontier_begin = 0;

    for (int len = 0; len < max_len; ++len) {
        std::size_t frontier_end = nodes.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const auto& [e, t] : g.out(nodes[i].state)) {
                if (nodes.size() >= budget)
                    throw ResourceError("enumerate_language: string budget exceeded");
                nodes.push_back({t, static_cast<int>(i), e});
            }
        }
        frontier_begin = frontier_end;
        if (frontier_begin == nodes.size()) break;  // no strings of this length
    }

    lang.closed.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<EventId> s;
        for (int j = static_cast<int>(i); nodes[j].parent >= 0; j = nodes[j].parent)
            s.push_back(nodes[j].via);
        std::reverse(s.begin(), s.end());
        if (g.is_marked(nodes[i].state)) lang.marked.push_back(s);
        lang.closed.push_back(std::move(s));
    }
    std::sort(lang.closed.begin(), lang.closed.end(), TraceLess{});
    std::sort(lang.marked.begin(), lang.marked.end(), TraceLess{});
    return lang;
}

OracleResult oracle_equal(const Generator& a, const Generator& b, int max_len,
                          std::size_t budget) {
    BoundedLanguage la = enumerate_language(a, max_len, budget);
    BoundedLanguage lb = enumerate_language(b, max_len, budget);

    OracleResult res;
    std::vector<std::vector<EventId>> diff;
    std::set_symmetric_difference(la.closed.begin(), la.closed.end(), lb.closed.begin(),
                                  lb.closed.end(), std::back_inserter(diff), TraceLess{});
    std::set_symmetric_difference(la.marked.begin(), la.marked.end(), lb.marked.begin(),
                                  lb.marked.end(), std::back_inserter(diff), TraceLess{});
    if (diff.empty()) {
        res.equal = true;
        return res;
    }
    res.equal = false;
    res.witness = StringTrace{*std::min_element(diff.begin(), diff.end(), TraceLess{})};
    return res;
}

}  // namespace des
