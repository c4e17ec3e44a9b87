#ifndef TREQ_TRANSDUCER_HPP_
#define TREQ_TRANSDUCER_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treq/dtta.hpp"
#include "treq/rational.hpp"
#include "treq/tree.hpp"

namespace treq {

/// A right-hand-side expression. String mode builds sequences from Cat /
/// Out / Param / Call; numeric (unary) mode builds arithmetic from Const /
/// Param / Call / Add / Mul. Parameter and variable indices are 1-based.
struct Rhs {
    enum class Kind { Cat, Out, Param, Call, Const, Add, Mul };
    Kind kind = Kind::Cat;
    long long num = 0;  // Const value, Mul coefficient, Param index, Out letter id, Call var index
    int state = -1;     // Call target
    std::vector<Rhs> args;  // Cat items / Add terms / Mul operand / Call parameters

    static Rhs cat(std::vector<Rhs> items);
    static Rhs out(long long letter);
    static Rhs param(long long j);
    static Rhs call(int state, long long var, std::vector<Rhs> params = {});
    static Rhs constant(long long c);
    static Rhs add(std::vector<Rhs> terms);
    static Rhs mul(long long c, Rhs arg);

    bool operator==(const Rhs& o) const;
};

enum class OutputMode { String, Numeric };

/// Deterministic (macro) tree-to-string transducer. With parameter count 0
/// and string output this is a plain top-down tree-to-string transducer;
/// numeric mode replaces a unary output alphabet by output lengths, with
/// constants, sums and scalar multiples in right-hand sides.
class Transducer {
public:
    Transducer(AlphabetPtr input, OutputMode mode, int params)
        : input_(std::move(input)), mode_(mode), params_(params) {}

    State add_state(const std::string& name);
    std::optional<State> find_state(const std::string& name) const;
    State require_state(const std::string& name) const;
    void set_initial(State q) { initial_ = q; }
    State initial() const { return initial_; }

    int add_output_letter(const std::string& name);  // string mode; returns 1-based letter id
    int output_size() const { return static_cast<int>(letters_.size()); }  // s
    const std::string& letter_name(int id) const { return letters_.at(id - 1); }
    std::optional<int> find_letter(const std::string& name) const;

    /// Negative constants are rejected unless enabled (free-group F1 output).
    void allow_negative_constants(bool b) { allow_negative_ = b; }
    bool negative_constants_allowed() const { return allow_negative_; }

    void add_rule(State q, SymbolId f, Rhs rhs);  // validates indices against mode/rank
    const Rhs* rule(State q, SymbolId f) const;
    const std::map<std::pair<State, SymbolId>, Rhs>& rules() const { return rules_; }

    int state_count() const { return static_cast<int>(state_names_.size()); }
    const std::string& state_name(State q) const { return state_names_.at(q); }
    int param_count() const { return params_; }
    OutputMode mode() const { return mode_; }
    const RankedAlphabet& input() const { return *input_; }
    const AlphabetPtr& input_ptr() const { return input_; }

private:
    void check_rhs(const Rhs& r, int rank) const;

    AlphabetPtr input_;
    OutputMode mode_;
    int params_;
    bool allow_negative_ = false;
    std::vector<std::string> letters_;
    std::map<std::string, int> letter_index_;
    std::vector<std::string> state_names_;
    std::map<std::string, State> state_index_;
    State initial_ = -1;
    std::map<std::pair<State, SymbolId>, Rhs> rules_;
};

struct ClassifyFlags {
    bool linear = false;
    bool non_self_nested = false;
    bool total = false;
    bool unary_output = false;
    bool monadic_input = false;
};

/// Syntactic classification. Self-nesting means some call on x_i carries,
/// inside one of its parameter expressions, another call on the same x_i.
ClassifyFlags classify(const Transducer& M);

/// Largest constant magnitude in numeric rules (the grammar's h); 0 for
/// string mode or constant-free transducers.
long long max_constant(const Transducer& M);

/// |M|: state, input and output alphabet cardinalities plus per-rule sizes
/// (1 + expression size in numeric mode, 1 + symbol occurrences in string
/// mode).
Int transducer_size(const Transducer& M);

/// Inside-out (call-by-value) string semantics; nullopt when some required
/// rule is missing. Strings are sequences of 1-based letter ids.
std::optional<std::vector<int>> eval_string(const Transducer& M, State q, const Tree& t,
                                            std::span<const std::vector<int>> params);

/// Numeric semantics over exact rationals; integer inputs yield integers.
std::optional<Rat> eval_unary(const Transducer& M, State q, const Tree& t,
                              std::span<const Rat> params);

std::string letters_to_string(const Transducer& M, const std::vector<int>& w);

/// Subset construction for dom(⟦q_start⟧): states are the sets of transducer
/// states that must succeed on a subtree.
Dtta domain_automaton(const Transducer& M, State q_start);

/// Adds an empty rule (ε or 0) for every missing (state, symbol).
Transducer totalize(const Transducer& M);

struct Binarized {
    Transducer m;  // over bin(Σ), states ⟨q,i⟩
    Dtta checker;  // accepts exactly the encodings of source trees
    /// binarized state of ⟨q, i⟩ for source state q (1-based i)
    State state(State q, int i) const { return q * fan + (i - 1); }
    int fan = 1;
};

/// Input-alphabet binarization: ⟦⟨q,i⟩⟧ on the encoding of a sequence equals
/// ⟦q⟧ on that sequence's i-th element. Preserves totality and per-state
/// translations on encodings; |Q'| = max-rank · |Q|.
Binarized binarize(const Transducer& M);

/// Base-(s+1) unarization of a total parameterless string transducer: same
/// states, one accumulating parameter, and ⟦q⟧_N(t)(0) equals the numeric
/// encoding [⟦q⟧_M(t)] with letter j worth j·(s+1)^position (1-based).
Transducer unarize(const Transducer& M);

/// Numeric encoding of a string under the unarization's number system.
Rat word_code(const std::vector<int>& w, int s);

/// Parameterless numeric projection counting occurrences of one letter.
Transducer unary_letter_projection(const Transducer& M, int letter_id);

/// Signed letter-count projection for free-group F1 output: letters "a" and
/// "a-" become +1 and -1. Requires a parameterless string transducer.
Transducer f1_projection(const Transducer& M);

/// Disjoint union; returns the renamed copies' initial states. State names
/// from the right transducer get a distinguishing suffix when they clash.
Transducer merge_disjoint(const Transducer& a, const Transducer& b, State& init_a,
                          State& init_b);

std::string transducer_to_string(const Transducer& M);
Transducer transducer_from_sexpr(const Sexpr& s);
Transducer transducer_from_string(const std::string& text);

}  // namespace treq

#endif
