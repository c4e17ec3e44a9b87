#include "treq/transducer.hpp"

#include "treq/binary_encoding.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace treq {

Rhs Rhs::cat(std::vector<Rhs> items) {
    Rhs r;
    r.kind = Kind::Cat;
    r.args = std::move(items);
    return r;
}
Rhs Rhs::out(long long letter) {
    Rhs r;
    r.kind = Kind::Out;
    r.num = letter;
    return r;
}
Rhs Rhs::param(long long j) {
    Rhs r;
    r.kind = Kind::Param;
    r.num = j;
    return r;
}
Rhs Rhs::call(int state, long long var, std::vector<Rhs> params) {
    Rhs r;
    r.kind = Kind::Call;
    r.state = state;
    r.num = var;
    r.args = std::move(params);
    return r;
}
Rhs Rhs::constant(long long c) {
    Rhs r;
    r.kind = Kind::Const;
    r.num = c;
    return r;
}
Rhs Rhs::add(std::vector<Rhs> terms) {
    Rhs r;
    r.kind = Kind::Add;
    r.args = std::move(terms);
    return r;
}
Rhs Rhs::mul(long long c, Rhs arg) {
    Rhs r;
    r.kind = Kind::Mul;
    r.num = c;
    r.args.push_back(std::move(arg));
    return r;
}

bool Rhs::operator==(const Rhs& o) const {
    return kind == o.kind && num == o.num && state == o.state && args == o.args;
}

State Transducer::add_state(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty state name");
    auto it = state_index_.find(name);
    if (it != state_index_.end()) return it->second;
    State q = static_cast<State>(state_names_.size());
    state_names_.push_back(name);
    state_index_.emplace(name, q);
    return q;
}

std::optional<State> Transducer::find_state(const std::string& name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

State Transducer::require_state(const std::string& name) const {
    auto q = find_state(name);
    if (!q) throw std::invalid_argument("unknown transducer state '" + name + "'");
    return *q;
}

int Transducer::add_output_letter(const std::string& name) {
    if (mode_ != OutputMode::String)
        throw std::invalid_argument("output letters only exist in string mode");
    auto it = letter_index_.find(name);
    if (it != letter_index_.end()) return it->second;
    letters_.push_back(name);
    int id = static_cast<int>(letters_.size());
    letter_index_.emplace(name, id);
    return id;
}

std::optional<int> Transducer::find_letter(const std::string& name) const {
    auto it = letter_index_.find(name);
    if (it == letter_index_.end()) return std::nullopt;
    return it->second;
}

void Transducer::check_rhs(const Rhs& r, int rank) const {
    switch (r.kind) {
        case Rhs::Kind::Cat:
            if (mode_ != OutputMode::String) throw std::invalid_argument("cat in numeric rule");
            break;
        case Rhs::Kind::Out:
            if (mode_ != OutputMode::String) throw std::invalid_argument("out in numeric rule");
            if (r.num < 1 || r.num > output_size())
                throw std::invalid_argument("output letter id out of range");
            break;
        case Rhs::Kind::Const:
            if (mode_ != OutputMode::Numeric)
                throw std::invalid_argument("const in string rule");
            if (r.num < 0 && !allow_negative_)
                throw std::invalid_argument("negative constant in numeric rule");
            break;
        case Rhs::Kind::Add:
        case Rhs::Kind::Mul:
            if (mode_ != OutputMode::Numeric)
                throw std::invalid_argument("arithmetic in string rule");
            if (r.kind == Rhs::Kind::Mul &&
                (r.args.size() != 1 || (r.num < 0 && !allow_negative_)))
                throw std::invalid_argument("bad scalar multiple");
            break;
        case Rhs::Kind::Param:
            if (r.num < 1 || r.num > params_)
                throw std::invalid_argument("parameter index out of range");
            break;
        case Rhs::Kind::Call:
            if (r.state < 0 || r.state >= state_count())
                throw std::invalid_argument("call to unknown state");
            if (r.num < 1 || r.num > rank)
                throw std::invalid_argument("call variable index out of range");
            if (static_cast<int>(r.args.size()) != params_)
                throw std::invalid_argument("call must pass exactly " +
                                            std::to_string(params_) + " parameters");
            break;
    }
    for (const Rhs& a : r.args) check_rhs(a, rank);
}

void Transducer::add_rule(State q, SymbolId f, Rhs rhs) {
    if (q < 0 || q >= state_count()) throw std::invalid_argument("bad state in rule");
    check_rhs(rhs, input_->rank(f));
    auto key = std::make_pair(q, f);
    if (rules_.count(key))
        throw std::invalid_argument("duplicate rule for (" + state_names_[q] + ", " +
                                    input_->name(f) + ")");
    rules_.emplace(key, std::move(rhs));
}

const Rhs* Transducer::rule(State q, SymbolId f) const {
    auto it = rules_.find({q, f});
    return it == rules_.end() ? nullptr : &it->second;
}

namespace {

// Does r contain a call on variable i anywhere (including parameter
// positions)?
bool mentions_var(const Rhs& r, long long i) {
    if (r.kind == Rhs::Kind::Call && r.num == i) return true;
    for (const Rhs& a : r.args)
        if (mentions_var(a, i)) return true;
    return false;
}

bool has_self_nesting(const Rhs& r) {
    if (r.kind == Rhs::Kind::Call) {
        for (const Rhs& a : r.args)
            if (mentions_var(a, r.num)) return true;
    }
    for (const Rhs& a : r.args)
        if (has_self_nesting(a)) return true;
    return false;
}

void count_var_uses(const Rhs& r, std::vector<int>& uses) {
    if (r.kind == Rhs::Kind::Call) ++uses[r.num - 1];
    for (const Rhs& a : r.args) count_var_uses(a, uses);
}

long long rhs_size(const Rhs& r) {
    switch (r.kind) {
        case Rhs::Kind::Const:
        case Rhs::Kind::Param:
            return 1;
        case Rhs::Kind::Mul:
            return 2 + rhs_size(r.args[0]);
        case Rhs::Kind::Add: {
            long long s = 0;
            for (const Rhs& a : r.args) s += rhs_size(a);
            return std::max(s, 1LL);
        }
        case Rhs::Kind::Call: {
            long long s = 2;
            for (const Rhs& a : r.args) s += rhs_size(a);
            return s;
        }
        case Rhs::Kind::Out:
            return 1;
        case Rhs::Kind::Cat: {
            long long s = 0;
            for (const Rhs& a : r.args) s += rhs_size(a);
            return s;
        }
    }
    return 0;
}

}  // namespace

ClassifyFlags classify(const Transducer& M) {
    ClassifyFlags flags;
    flags.linear = true;
    flags.non_self_nested = true;
    flags.total = true;
    flags.monadic_input = M.input().max_rank() <= 1;
    flags.unary_output =
        M.mode() == OutputMode::Numeric || (M.mode() == OutputMode::String && M.output_size() == 1);
    for (State q = 0; q < M.state_count(); ++q)
        for (SymbolId f = 0; f < M.input().size(); ++f) {
            const Rhs* r = M.rule(q, f);
            if (!r) {
                flags.total = false;
                continue;
            }
            std::vector<int> uses(M.input().rank(f), 0);
            count_var_uses(*r, uses);
            for (int u : uses)
                if (u > 1) flags.linear = false;
            if (has_self_nesting(*r)) flags.non_self_nested = false;
        }
    return flags;
}

long long max_constant(const Transducer& M) {
    long long h = 0;
    std::function<void(const Rhs&)> walk = [&](const Rhs& r) {
        if (r.kind == Rhs::Kind::Const || r.kind == Rhs::Kind::Mul)
            h = std::max(h, std::abs(r.num));
        for (const Rhs& a : r.args) walk(a);
    };
    for (const auto& [key, rhs] : M.rules()) walk(rhs);
    return h;
}

Int transducer_size(const Transducer& M) {
    Int size = M.state_count() + M.input().size();
    size += M.mode() == OutputMode::Numeric ? 1 : M.output_size();
    for (const auto& [key, rhs] : M.rules()) size += static_cast<long>(1 + rhs_size(rhs));
    return size;
}

std::optional<std::vector<int>> eval_string(const Transducer& M, State q, const Tree& t,
                                            std::span<const std::vector<int>> params) {
    if (M.mode() != OutputMode::String)
        throw std::invalid_argument("eval_string on a numeric transducer");
    if (static_cast<int>(params.size()) != M.param_count())
        throw std::invalid_argument("wrong number of parameters");
    const Rhs* rhs = M.rule(q, t.sym);
    if (!rhs) return std::nullopt;

    std::function<std::optional<std::vector<int>>(const Rhs&)> ev =
        [&](const Rhs& r) -> std::optional<std::vector<int>> {
        switch (r.kind) {
            case Rhs::Kind::Cat: {
                std::vector<int> out;
                for (const Rhs& a : r.args) {
                    auto part = ev(a);
                    if (!part) return std::nullopt;
                    out.insert(out.end(), part->begin(), part->end());
                }
                return out;
            }
            case Rhs::Kind::Out:
                return std::vector<int>{static_cast<int>(r.num)};
            case Rhs::Kind::Param:
                return params[r.num - 1];
            case Rhs::Kind::Call: {
                std::vector<std::vector<int>> args;
                for (const Rhs& a : r.args) {
                    auto v = ev(a);
                    if (!v) return std::nullopt;
                    args.push_back(std::move(*v));
                }
                return eval_string(M, r.state, t.kids[r.num - 1], args);
            }
            default:
                throw std::invalid_argument("numeric construct in string rule");
        }
    };
    return ev(*rhs);
}

std::optional<Rat> eval_unary(const Transducer& M, State q, const Tree& t,
                              std::span<const Rat> params) {
    if (M.mode() != OutputMode::Numeric)
        throw std::invalid_argument("eval_unary on a string transducer");
    if (static_cast<int>(params.size()) != M.param_count())
        throw std::invalid_argument("wrong number of parameters");
    const Rhs* rhs = M.rule(q, t.sym);
    if (!rhs) return std::nullopt;

    std::function<std::optional<Rat>(const Rhs&)> ev = [&](const Rhs& r) -> std::optional<Rat> {
        switch (r.kind) {
            case Rhs::Kind::Const:
                return Rat(static_cast<long>(r.num));
            case Rhs::Kind::Param:
                return params[r.num - 1];
            case Rhs::Kind::Add: {
                Rat sum(0);
                for (const Rhs& a : r.args) {
                    auto v = ev(a);
                    if (!v) return std::nullopt;
                    sum += *v;
                }
                return sum;
            }
            case Rhs::Kind::Mul: {
                auto v = ev(r.args[0]);
                if (!v) return std::nullopt;
                return Rat(static_cast<long>(r.num)) * *v;
            }
            case Rhs::Kind::Call: {
                std::vector<Rat> args;
                for (const Rhs& a : r.args) {
                    auto v = ev(a);
                    if (!v) return std::nullopt;
                    args.push_back(std::move(*v));
                }
                return eval_unary(M, r.state, t.kids[r.num - 1], args);
            }
            default:
                throw std::invalid_argument("string construct in numeric rule");
        }
    };
    return ev(*rhs);
}

std::string letters_to_string(const Transducer& M, const std::vector<int>& w) {
    bool single = true;
    for (int i = 1; i <= M.output_size(); ++i) single = single && M.letter_name(i).size() == 1;
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!single && i) out += ' ';
        out += M.letter_name(w[i]);
    }
    return out;
}

namespace {

void collect_calls_on_var(const Rhs& r, long long i, std::set<State>& states) {
    if (r.kind == Rhs::Kind::Call && r.num == i) states.insert(r.state);
    for (const Rhs& a : r.args) collect_calls_on_var(a, i, states);
}

std::string state_set_name(const Transducer& M, const std::set<State>& s) {
    if (s.empty()) return "{}";
    std::string out = "{";
    bool first = true;
    for (State q : s) {
        if (!first) out += ',';
        out += M.state_name(q);
        first = false;
    }
    out += '}';
    return out;
}

}  // namespace

Dtta domain_automaton(const Transducer& M, State q_start) {
    Dtta A(M.input_ptr());
    std::map<std::set<State>, State> seen;
    std::deque<std::set<State>> work;
    auto intern = [&](const std::set<State>& s) {
        auto it = seen.find(s);
        if (it != seen.end()) return it->second;
        State p = A.add_state(state_set_name(M, s));
        seen.emplace(s, p);
        work.push_back(s);
        return p;
    };
    A.set_initial(intern({q_start}));
    while (!work.empty()) {
        std::set<State> cur = work.front();
        work.pop_front();
        State src = seen.at(cur);
        for (SymbolId f = 0; f < M.input().size(); ++f) {
            bool all = true;
            for (State q : cur)
                if (!M.rule(q, f)) {
                    all = false;
                    break;
                }
            if (!all) continue;
            int m = M.input().rank(f);
            std::vector<State> kids;
            for (int i = 1; i <= m; ++i) {
                std::set<State> child;
                for (State q : cur) collect_calls_on_var(*M.rule(q, f), i, child);
                kids.push_back(intern(child));
            }
            A.add_rule(src, f, std::move(kids));
        }
    }
    return A;
}

Transducer totalize(const Transducer& M) {
    Transducer out = M;
    for (State q = 0; q < M.state_count(); ++q)
        for (SymbolId f = 0; f < M.input().size(); ++f)
            if (!M.rule(q, f))
                out.add_rule(q, f,
                             M.mode() == OutputMode::String ? Rhs::cat({}) : Rhs::constant(0));
    return out;
}

namespace {

// Rewrites calls q'(x_i, T...) to ⟨q',i⟩(x_1, T'...) for the binarized
// transducer.
Rhs binarize_rhs(const Rhs& r, const Binarized& b) {
    Rhs out = r;
    if (out.kind == Rhs::Kind::Call) {
        out.state = b.state(r.state, static_cast<int>(r.num));
        out.num = 1;
    }
    for (size_t i = 0; i < out.args.size(); ++i) out.args[i] = binarize_rhs(r.args[i], b);
    return out;
}

}  // namespace

Binarized binarize(const Transducer& M) {
    AlphabetPtr bin = bin_alphabet(M.input());
    int fan = std::max(M.input().max_rank(), 1);
    Binarized out{Transducer(bin, M.mode(), M.param_count()),
                  bin_checker(M.input(), bin), fan};
    out.fan = fan;
    Transducer& N = out.m;
    if (M.mode() == OutputMode::String) {
        N.allow_negative_constants(M.negative_constants_allowed());
        for (int id = 1; id <= M.output_size(); ++id) N.add_output_letter(M.letter_name(id));
    } else {
        N.allow_negative_constants(M.negative_constants_allowed());
    }
    for (State q = 0; q < M.state_count(); ++q)
        for (int i = 1; i <= fan; ++i)
            N.add_state(M.state_name(q) + "@" + std::to_string(i));
    N.set_initial(out.state(M.initial(), 1));

    SymbolId bot = bin->require(kBinBottom);
    std::vector<Rhs> params;
    for (int j = 1; j <= M.param_count(); ++j) params.push_back(Rhs::param(j));
    for (State q = 0; q < M.state_count(); ++q) {
        for (int i = 1; i <= fan; ++i) {
            State qq = out.state(q, i);
            N.add_rule(qq, bot,
                       M.mode() == OutputMode::String ? Rhs::cat({}) : Rhs::constant(0));
            for (SymbolId f = 0; f < M.input().size(); ++f) {
                SymbolId fb = bin->require(M.input().name(f));
                if (i == 1) {
                    const Rhs* r = M.rule(q, f);
                    if (r) N.add_rule(qq, fb, binarize_rhs(*r, out));
                } else {
                    // skip to the next sibling in the encoded list
                    N.add_rule(qq, fb, Rhs::call(out.state(q, i - 1), 2, params));
                }
            }
        }
    }
    return out;
}

namespace {

// U[aT] = (s+1)(a + U[T]); U[q'(x_i)T] = q'(x_i, U[T]); U[eps] = y_1.
Rhs unarize_seq(const Transducer& M, const std::vector<Rhs>& items, size_t pos, int s) {
    if (pos == items.size()) return Rhs::param(1);
    const Rhs& head = items[pos];
    Rhs rest = unarize_seq(M, items, pos + 1, s);
    if (head.kind == Rhs::Kind::Out)
        return Rhs::mul(s + 1, Rhs::add({Rhs::constant(head.num), std::move(rest)}));
    if (head.kind == Rhs::Kind::Call)
        return Rhs::call(head.state, head.num, {std::move(rest)});
    throw std::invalid_argument("unarize: unsupported item in string rule");
}

std::vector<Rhs> flatten_cat(const Rhs& r) {
    if (r.kind == Rhs::Kind::Cat) {
        std::vector<Rhs> out;
        for (const Rhs& a : r.args) {
            std::vector<Rhs> sub = flatten_cat(a);
            for (Rhs& s : sub) out.push_back(std::move(s));
        }
        return out;
    }
    return {r};
}

}  // namespace

Transducer unarize(const Transducer& M) {
    if (M.mode() != OutputMode::String || M.param_count() != 0)
        throw std::invalid_argument("unarize expects a parameterless string transducer");
    if (!classify(M).total) throw std::invalid_argument("unarize expects a total transducer");
    int s = M.output_size();
    Transducer N(M.input_ptr(), OutputMode::Numeric, 1);
    for (State q = 0; q < M.state_count(); ++q) N.add_state(M.state_name(q));
    N.set_initial(M.initial());
    for (const auto& [key, rhs] : M.rules())
        N.add_rule(key.first, key.second, unarize_seq(M, flatten_cat(rhs), 0, s));
    return N;
}

Rat word_code(const std::vector<int>& w, int s) {
    // [w] = sum_j w_j (s+1)^j, 1-based positions
    Rat value(0);
    Int base(1);
    for (int letter : w) {
        base *= s + 1;
        value += Rat(base) * letter;
    }
    return value;
}

namespace {

Rhs project_rhs(const Rhs& r, const std::function<long long(long long)>& letter_value) {
    switch (r.kind) {
        case Rhs::Kind::Cat: {
            std::vector<Rhs> terms;
            for (const Rhs& a : r.args) terms.push_back(project_rhs(a, letter_value));
            return Rhs::add(std::move(terms));
        }
        case Rhs::Kind::Out:
            return Rhs::constant(letter_value(r.num));
        case Rhs::Kind::Call:
            return Rhs::call(r.state, r.num, {});
        default:
            throw std::invalid_argument("projection expects a parameterless string rule");
    }
}

}  // namespace

Transducer unary_letter_projection(const Transducer& M, int letter_id) {
    if (M.mode() != OutputMode::String || M.param_count() != 0)
        throw std::invalid_argument("letter projection expects a parameterless string transducer");
    Transducer N(M.input_ptr(), OutputMode::Numeric, 0);
    for (State q = 0; q < M.state_count(); ++q) N.add_state(M.state_name(q));
    N.set_initial(M.initial());
    for (const auto& [key, rhs] : M.rules())
        N.add_rule(key.first, key.second,
                   project_rhs(rhs, [&](long long id) { return id == letter_id ? 1 : 0; }));
    return N;
}

Transducer f1_projection(const Transducer& M) {
    if (M.mode() != OutputMode::String || M.param_count() != 0)
        throw std::invalid_argument("F1 projection expects a parameterless string transducer");
    std::vector<long long> value(M.output_size() + 1, 0);
    for (int id = 1; id <= M.output_size(); ++id) {
        const std::string& name = M.letter_name(id);
        if (name == "a")
            value[id] = 1;
        else if (name == "a-")
            value[id] = -1;
        else
            throw std::invalid_argument("F1 output letters must be 'a' and 'a-', got '" + name +
                                        "'");
    }
    Transducer N(M.input_ptr(), OutputMode::Numeric, 0);
    N.allow_negative_constants(true);
    for (State q = 0; q < M.state_count(); ++q) N.add_state(M.state_name(q));
    N.set_initial(M.initial());
    for (const auto& [key, rhs] : M.rules())
        N.add_rule(key.first, key.second,
                   project_rhs(rhs, [&](long long id) { return value[id]; }));
    return N;
}

namespace {

Rhs remap_states(const Rhs& r, const std::vector<State>& map) {
    Rhs out = r;
    if (out.kind == Rhs::Kind::Call) out.state = map[r.state];
    for (size_t i = 0; i < out.args.size(); ++i) out.args[i] = remap_states(r.args[i], map);
    return out;
}

}  // namespace

Transducer merge_disjoint(const Transducer& a, const Transducer& b, State& init_a,
                          State& init_b) {
    if (!(a.input() == b.input()))
        throw std::invalid_argument("merge requires a common input alphabet");
    if (a.mode() != b.mode() || a.param_count() != b.param_count())
        throw std::invalid_argument("merge requires matching mode and parameter count");
    Transducer out(a.input_ptr(), a.mode(), a.param_count());
    out.allow_negative_constants(a.negative_constants_allowed() ||
                                 b.negative_constants_allowed());
    if (a.mode() == OutputMode::String) {
        for (int id = 1; id <= a.output_size(); ++id) out.add_output_letter(a.letter_name(id));
        for (int id = 1; id <= b.output_size(); ++id)
            if (!a.find_letter(b.letter_name(id)))
                throw std::invalid_argument("merge requires a common output alphabet");
    }
    std::vector<State> map_a(a.state_count()), map_b(b.state_count());
    for (State q = 0; q < a.state_count(); ++q) map_a[q] = out.add_state(a.state_name(q));
    for (State q = 0; q < b.state_count(); ++q) {
        std::string name = b.state_name(q);
        while (out.find_state(name)) name += "'";
        map_b[q] = out.add_state(name);
    }
    // letter ids in b's rules must agree with out's numbering
    std::vector<long long> letter_map(b.output_size() + 1, 0);
    for (int id = 1; id <= b.output_size(); ++id) letter_map[id] = *out.find_letter(b.letter_name(id));
    std::function<Rhs(const Rhs&)> remap_letters = [&](const Rhs& r) {
        Rhs o = r;
        if (o.kind == Rhs::Kind::Out) o.num = letter_map[r.num];
        for (size_t i = 0; i < o.args.size(); ++i) o.args[i] = remap_letters(r.args[i]);
        return o;
    };
    for (const auto& [key, rhs] : a.rules())
        out.add_rule(map_a[key.first], key.second, remap_states(rhs, map_a));
    for (const auto& [key, rhs] : b.rules())
        out.add_rule(map_b[key.first], key.second, remap_letters(remap_states(rhs, map_b)));
    out.set_initial(map_a[a.initial()]);
    init_a = map_a[a.initial()];
    init_b = map_b[b.initial()];
    return out;
}

}  // namespace treq
