#ifndef TREQ_ALPHABET_HPP_
#define TREQ_ALPHABET_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace treq {

using SymbolId = int;

/// A ranked alphabet: finitely many named symbols, each with a fixed rank.
/// Symbols are interned to small integers; names are unique.
class RankedAlphabet {
public:
    SymbolId add(const std::string& name, int rank);
    std::optional<SymbolId> find(const std::string& name) const;
    SymbolId require(const std::string& name) const;  // throws std::invalid_argument

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(SymbolId s) const { return names_.at(s); }
    int rank(SymbolId s) const { return ranks_.at(s); }
    int max_rank() const;

    /// Symbol ids ordered by name; the tie-free total order used wherever a
    /// deterministic symbol order is needed (tree enumeration, printing).
    std::vector<SymbolId> by_name() const;

    bool operator==(const RankedAlphabet& o) const {
        return names_ == o.names_ && ranks_ == o.ranks_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> ranks_;
    std::map<std::string, SymbolId> index_;
};

using AlphabetPtr = std::shared_ptr<const RankedAlphabet>;

}  // namespace treq

#endif
