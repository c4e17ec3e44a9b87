#include "treq/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace treq {

SymbolId RankedAlphabet::add(const std::string& name, int rank) {
    if (name.empty()) throw std::invalid_argument("empty symbol name");
    if (rank < 0) throw std::invalid_argument("negative rank for symbol " + name);
    auto it = index_.find(name);
    if (it != index_.end()) {
        if (ranks_[it->second] != rank)
            throw std::invalid_argument("symbol " + name + " redeclared with rank " +
                                        std::to_string(rank) + " (was " +
                                        std::to_string(ranks_[it->second]) + ")");
        return it->second;
    }
    SymbolId id = static_cast<SymbolId>(names_.size());
    names_.push_back(name);
    ranks_.push_back(rank);
    index_.emplace(name, id);
    return id;
}

std::optional<SymbolId> RankedAlphabet::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SymbolId RankedAlphabet::require(const std::string& name) const {
    auto s = find(name);
    if (!s) throw std::invalid_argument("unknown symbol '" + name + "'");
    return *s;
}

int RankedAlphabet::max_rank() const {
    int m = 0;
    for (int r : ranks_) m = std::max(m, r);
    return m;
}

std::vector<SymbolId> RankedAlphabet::by_name() const {
    std::vector<SymbolId> ids(names_.size());
    for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<SymbolId>(i);
    std::sort(ids.begin(), ids.end(),
              [&](SymbolId a, SymbolId b) { return names_[a] < names_[b]; });
    return ids;
}

}  // namespace treq
