#ifndef TREQ_DTTA_HPP_
#define TREQ_DTTA_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treq/alphabet.hpp"
#include "treq/tree.hpp"

namespace treq {

using State = int;

/// Deterministic top-down tree automaton. Determinism is structural: at most
/// one transition per (state, symbol). dom(p) is defined recursively by the
/// transition table; the automaton's language is dom(initial).
class Dtta {
public:
    explicit Dtta(AlphabetPtr alpha) : alpha_(std::move(alpha)) {}

    State add_state(const std::string& name);
    std::optional<State> find_state(const std::string& name) const;
    State require_state(const std::string& name) const;

    void set_initial(State p) { initial_ = p; }
    State initial() const { return initial_; }

    void add_rule(State p, SymbolId f, std::vector<State> children);
    /// nullptr when the transition is undefined.
    const std::vector<State>* transition(State p, SymbolId f) const;

    int state_count() const { return static_cast<int>(state_names_.size()); }
    const std::string& state_name(State p) const { return state_names_.at(p); }
    const RankedAlphabet& alphabet() const { return *alpha_; }
    const AlphabetPtr& alphabet_ptr() const { return alpha_; }
    const std::map<std::pair<State, SymbolId>, std::vector<State>>& rules() const {
        return trans_;
    }

private:
    AlphabetPtr alpha_;
    std::vector<std::string> state_names_;
    std::map<std::string, State> state_index_;
    State initial_ = -1;
    std::map<std::pair<State, SymbolId>, std::vector<State>> trans_;
};

/// Membership t ∈ dom(p). Symbols of t must belong to A's alphabet.
bool accepts(const Dtta& A, State p, const Tree& t);

/// All trees of dom(p) with depth at most d (leaves have depth 1), each once,
/// ordered by depth, then symbol name, then lexicographically on children.
/// The order is a prefix order: enumerate_dom(p, d1) is a prefix of
/// enumerate_dom(p, d2) for d1 <= d2.
std::vector<Tree> enumerate_dom(const Dtta& A, State p, int depth_bound);

/// Per-state emptiness of dom(p).
std::vector<bool> nonempty_states(const Dtta& A);

/// Least member of dom(p) under the enumeration order, if any.
std::optional<Tree> shortest_member(const Dtta& A, State p);

/// Copy with all unproductive transitions removed (a transition is
/// unproductive when some child state has empty domain). Language-preserving.
Dtta trim(const Dtta& A);

/// Intersection automaton on the shared alphabet: pair states, transitions
/// where both sides are defined. L(product) = L(A) ∩ L(B).
Dtta dtta_product(const Dtta& A, const Dtta& B);

struct DttaEquivResult {
    bool equal = false;
    /// When not equal: a tree in exactly one language, and which one.
    std::optional<Tree> witness;
    bool witness_in_first = false;
};

/// Language equality L(A1) = L(A2); alphabets must be equal.
DttaEquivResult dtta_equiv(const Dtta& A1, const Dtta& A2);

std::string dtta_to_string(const Dtta& A);
/// Parses `(dtta (states ...) (init p) (rule p f (p1 ... pm)) ...)`.
/// With a null alphabet, symbol ranks are inferred from the rules.
Dtta dtta_from_sexpr(const Sexpr& s, AlphabetPtr alpha);
Dtta dtta_from_string(const std::string& text, AlphabetPtr alpha);

}  // namespace treq

#endif
