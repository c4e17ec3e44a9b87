#include "treq/dtta.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace treq {

State Dtta::add_state(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty state name");
    auto it = state_index_.find(name);
    if (it != state_index_.end()) return it->second;
    State p = static_cast<State>(state_names_.size());
    state_names_.push_back(name);
    state_index_.emplace(name, p);
    return p;
}

std::optional<State> Dtta::find_state(const std::string& name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

State Dtta::require_state(const std::string& name) const {
    auto p = find_state(name);
    if (!p) throw std::invalid_argument("unknown automaton state '" + name + "'");
    return *p;
}

void Dtta::add_rule(State p, SymbolId f, std::vector<State> children) {
    if (p < 0 || p >= state_count()) throw std::invalid_argument("bad state in rule");
    int rank = alpha_->rank(f);
    if (static_cast<int>(children.size()) != rank)
        throw std::invalid_argument("rule for '" + alpha_->name(f) + "' needs " +
                                    std::to_string(rank) + " child states");
    for (State c : children)
        if (c < 0 || c >= state_count()) throw std::invalid_argument("bad child state in rule");
    auto key = std::make_pair(p, f);
    if (trans_.count(key))
        throw std::invalid_argument("duplicate transition for (" + state_names_[p] + ", " +
                                    alpha_->name(f) + ")");
    trans_.emplace(key, std::move(children));
}

const std::vector<State>* Dtta::transition(State p, SymbolId f) const {
    auto it = trans_.find({p, f});
    return it == trans_.end() ? nullptr : &it->second;
}

bool accepts(const Dtta& A, State p, const Tree& t) {
    if (t.sym < 0 || t.sym >= A.alphabet().size())
        throw std::invalid_argument("tree symbol outside automaton alphabet");
    const std::vector<State>* next = A.transition(p, t.sym);
    if (!next) return false;
    for (size_t i = 0; i < t.kids.size(); ++i)
        if (!accepts(A, (*next)[i], t.kids[i])) return false;
    return true;
}

namespace {

// Depth-layered enumeration: layers[p][k] holds the dom(p) trees of depth
// exactly k+1 in canonical order.
struct LayerTable {
    const Dtta& A;
    std::vector<SymbolId> order;
    std::vector<std::vector<std::vector<Tree>>> layers;  // [state][depth-1]

    explicit LayerTable(const Dtta& a) : A(a), order(a.alphabet().by_name()) {
        layers.assign(A.state_count(), {});
    }

    // Trees of depth <= k, enumeration order (concatenated layers).
    std::vector<const Tree*> up_to(State p, int k) {
        std::vector<const Tree*> out;
        for (int j = 1; j <= k; ++j)
            for (const Tree& t : layer(p, j)) out.push_back(&t);
        return out;
    }

    const std::vector<Tree>& layer(State p, int k) {
        auto& ls = layers[p];
        while (static_cast<int>(ls.size()) < k) {
            int next = static_cast<int>(ls.size()) + 1;
            ls.push_back(build(p, next));
        }
        return ls[k - 1];
    }

    std::vector<Tree> build(State p, int k) {
        std::vector<Tree> out;
        for (SymbolId f : order) {
            const std::vector<State>* next = A.transition(p, f);
            if (!next) continue;
            int m = A.alphabet().rank(f);
            if (m == 0) {
                if (k == 1) out.emplace_back(f);
                continue;
            }
            if (k < 2) continue;
            // children of depth <= k-1, at least one of depth exactly k-1
            std::vector<std::vector<const Tree*>> choices(m);
            bool empty = false;
            for (int i = 0; i < m; ++i) {
                choices[i] = up_to((*next)[i], k - 1);
                if (choices[i].empty()) empty = true;
            }
            if (empty) continue;
            std::vector<size_t> idx(m, 0);
            for (;;) {
                int maxd = 0;
                for (int i = 0; i < m; ++i)
                    maxd = std::max(maxd, tree_depth(*choices[i][idx[i]]));
                if (maxd == k - 1) {
                    Tree t(f);
                    for (int i = 0; i < m; ++i) t.kids.push_back(*choices[i][idx[i]]);
                    out.push_back(std::move(t));
                }
                int pos = m - 1;
                while (pos >= 0 && ++idx[pos] == choices[pos].size()) idx[pos--] = 0;
                if (pos < 0) break;
            }
        }
        return out;
    }
};

}  // namespace

std::vector<Tree> enumerate_dom(const Dtta& A, State p, int depth_bound) {
    LayerTable table(A);
    std::vector<Tree> out;
    for (int k = 1; k <= depth_bound; ++k)
        for (const Tree& t : table.layer(p, k)) out.push_back(t);
    return out;
}

std::vector<bool> nonempty_states(const Dtta& A) {
    std::vector<bool> ne(A.state_count(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [key, children] : A.rules()) {
            if (ne[key.first]) continue;
            bool all = true;
            for (State c : children) all = all && ne[c];
            if (all) {
                ne[key.first] = true;
                changed = true;
            }
        }
    }
    return ne;
}

std::optional<Tree> shortest_member(const Dtta& A, State p) {
    // Minimal tree per state under (depth, symbol name, children) order.
    std::vector<std::optional<Tree>> best(A.state_count());
    std::vector<SymbolId> order = A.alphabet().by_name();
    for (int round = 0; round < A.state_count() + 1; ++round) {
        bool changed = false;
        for (State q = 0; q < A.state_count(); ++q) {
            if (best[q]) continue;
            for (SymbolId f : order) {
                const std::vector<State>* next = A.transition(q, f);
                if (!next) continue;
                bool ok = true;
                Tree t(f);
                for (State c : *next) {
                    if (!best[c]) {
                        ok = false;
                        break;
                    }
                    t.kids.push_back(*best[c]);
                }
                if (ok) {
                    best[q] = std::move(t);
                    changed = true;
                    break;
                }
            }
        }
        if (!changed) break;
    }
    return best[p];
}

Dtta trim(const Dtta& A) {
    std::vector<bool> ne = nonempty_states(A);
    Dtta out(A.alphabet_ptr());
    for (State p = 0; p < A.state_count(); ++p) out.add_state(A.state_name(p));
    out.set_initial(A.initial());
    for (const auto& [key, children] : A.rules()) {
        bool all = true;
        for (State c : children) all = all && ne[c];
        if (all) out.add_rule(key.first, key.second, children);
    }
    return out;
}

Dtta dtta_product(const Dtta& A, const Dtta& B) {
    if (!(A.alphabet() == B.alphabet()))
        throw std::invalid_argument("product of automata over different alphabets");
    Dtta out(A.alphabet_ptr());
    std::map<std::pair<State, State>, State> seen;
    std::deque<std::pair<State, State>> work;
    auto intern = [&](State a, State b) {
        auto it = seen.find({a, b});
        if (it != seen.end()) return it->second;
        State s = out.add_state(A.state_name(a) + "&" + B.state_name(b));
        seen.emplace(std::make_pair(a, b), s);
        work.emplace_back(a, b);
        return s;
    };
    out.set_initial(intern(A.initial(), B.initial()));
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        State src = seen.at({a, b});
        for (int f = 0; f < A.alphabet().size(); ++f) {
            const std::vector<State>* ta = A.transition(a, f);
            const std::vector<State>* tb = B.transition(b, f);
            if (!ta || !tb) continue;
            std::vector<State> kids;
            for (size_t i = 0; i < ta->size(); ++i) kids.push_back(intern((*ta)[i], (*tb)[i]));
            out.add_rule(src, f, std::move(kids));
        }
    }
    return out;
}

DttaEquivResult dtta_equiv(const Dtta& A1raw, const Dtta& A2raw) {
    if (!(A1raw.alphabet() == A2raw.alphabet()))
        throw std::invalid_argument("dtta_equiv requires a common alphabet");
    // Trimming first makes "exactly one side defined" a genuine difference.
    Dtta A1 = trim(A1raw);
    Dtta A2 = trim(A2raw);
    const RankedAlphabet& alpha = A1.alphabet();
    std::vector<SymbolId> order = alpha.by_name();

    std::set<std::pair<State, State>> visited;
    std::deque<std::pair<State, State>> work;
    visited.insert({A1.initial(), A2.initial()});
    work.push_back({A1.initial(), A2.initial()});

    // parent links for witness reconstruction
    std::map<std::pair<State, State>, std::tuple<std::pair<State, State>, SymbolId, int>> parent;

    auto one_sided_witness = [&](State p1, State p2,
                                 SymbolId f) -> std::pair<Tree, bool> {
        const std::vector<State>* t1 = A1.transition(p1, f);
        bool in_first = t1 != nullptr;
        const Dtta& D = in_first ? A1 : A2;
        const std::vector<State>& kids = in_first ? *t1 : *A2.transition(p2, f);
        Tree t(f);
        for (State c : kids) t.kids.push_back(*shortest_member(D, c));
        return {t, in_first};
    };

    while (!work.empty()) {
        auto pair = work.front();
        work.pop_front();
        auto [p1, p2] = pair;
        for (SymbolId f : order) {
            const std::vector<State>* t1 = A1.transition(p1, f);
            const std::vector<State>* t2 = A2.transition(p2, f);
            if (!t1 && !t2) continue;
            if (!t1 || !t2) {
                // Difference found here; wrap it back up to the roots. Sibling
                // positions take a member of the side being completed, which
                // suffices: the other side fails at the differing child.
                auto [t, in_first] = one_sided_witness(p1, p2, f);
                std::pair<State, State> cur = pair;
                while (cur != std::make_pair(A1.initial(), A2.initial())) {
                    auto [par, sym, pos] = parent.at(cur);
                    const Dtta& D = in_first ? A1 : A2;
                    const std::vector<State>& kids =
                        in_first ? *A1.transition(par.first, sym) : *A2.transition(par.second, sym);
                    Tree wrapped(sym);
                    for (int i = 0; i < static_cast<int>(kids.size()); ++i) {
                        if (i == pos)
                            wrapped.kids.push_back(std::move(t));
                        else
                            wrapped.kids.push_back(*shortest_member(D, kids[i]));
                    }
                    t = std::move(wrapped);
                    cur = par;
                }
                return {false, std::move(t), in_first};
            }
            for (size_t i = 0; i < t1->size(); ++i) {
                std::pair<State, State> child{(*t1)[i], (*t2)[i]};
                if (visited.insert(child).second) {
                    parent[child] = {pair, f, static_cast<int>(i)};
                    work.push_back(child);
                }
            }
        }
    }
    return {true, std::nullopt, false};
}

std::string dtta_to_string(const Dtta& A) {
    std::string out = "(dtta\n  (states";
    for (State p = 0; p < A.state_count(); ++p) out += " " + A.state_name(p);
    out += ")\n  (init " + A.state_name(A.initial()) + ")";
    for (const auto& [key, children] : A.rules()) {
        out += "\n  (rule " + A.state_name(key.first) + " " + A.alphabet().name(key.second) + " (";
        for (size_t i = 0; i < children.size(); ++i) {
            if (i) out += ' ';
            out += A.state_name(children[i]);
        }
        out += "))";
    }
    out += ")\n";
    return out;
}

Dtta dtta_from_sexpr(const Sexpr& s, AlphabetPtr alpha) {
    if (!s.is_list("dtta")) throw ParseError("expected (dtta ...)", s.line, s.col);
    bool infer = !alpha;
    std::shared_ptr<RankedAlphabet> inferred;
    if (infer) {
        inferred = std::make_shared<RankedAlphabet>();
        for (size_t i = 1; i < s.items.size(); ++i) {
            const Sexpr& it = s.items[i];
            if (it.is_list("rule")) {
                if (it.items.size() != 4)
                    throw ParseError("rule needs (rule state symbol (children))", it.line, it.col);
                inferred->add(it.at(2).atom(), static_cast<int>(it.at(3).items.size()));
            }
        }
        alpha = inferred;
    }
    Dtta A(alpha);
    std::optional<std::string> init;
    for (size_t i = 1; i < s.items.size(); ++i) {
        const Sexpr& it = s.items[i];
        if (it.is_list("states")) {
            for (size_t j = 1; j < it.items.size(); ++j) A.add_state(it.at(j).atom());
        } else if (it.is_list("init")) {
            init = it.at(1).atom();
            A.add_state(*init);
        } else if (it.is_list("rule")) {
            if (it.items.size() != 4)
                throw ParseError("rule needs (rule state symbol (children))", it.line, it.col);
            State p = A.add_state(it.at(1).atom());
            auto sym = alpha->find(it.at(2).atom());
            if (!sym) throw ParseError("unknown symbol '" + it.at(2).atom() + "'", it.line, it.col);
            const Sexpr& kids = it.at(3);
            if (kids.is_atom) throw ParseError("children must be a list", kids.line, kids.col);
            std::vector<State> children;
            for (const Sexpr& k : kids.items) children.push_back(A.add_state(k.atom()));
            A.add_rule(p, *sym, std::move(children));
        } else {
            throw ParseError("unexpected clause '" + it.head() + "' in dtta", it.line, it.col);
        }
    }
    if (!init) throw ParseError("dtta missing (init ...)", s.line, s.col);
    A.set_initial(A.require_state(*init));
    return A;
}

Dtta dtta_from_string(const std::string& text, AlphabetPtr alpha) {
    return dtta_from_sexpr(sexpr_parse(text), std::move(alpha));
}

}  // namespace treq
