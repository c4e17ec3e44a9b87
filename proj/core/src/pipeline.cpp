#include "treq/pipeline.hpp"

#include "treq/binary_encoding.hpp"

#include <deque>
#include <functional>
#include <stdexcept>

namespace treq {

Dtta bin_automaton(const Dtta& A, AlphabetPtr bin) {
    // States are the pending suffixes of child tuples: the encoding of a
    // sequence t1..tk is accepted from [p1..pk] iff each ti ∈ dom(pi).
    Dtta out(bin);
    std::map<std::vector<State>, State> seen;
    std::deque<std::vector<State>> work;
    auto name_of = [&](const std::vector<State>& v) {
        std::string n = "[";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) n += ",";
            n += A.state_name(v[i]);
        }
        return n + "]";
    };
    auto intern = [&](const std::vector<State>& v) {
        auto it = seen.find(v);
        if (it != seen.end()) return it->second;
        State s = out.add_state(name_of(v));
        seen.emplace(v, s);
        work.push_back(v);
        return s;
    };
    out.set_initial(intern({A.initial()}));
    SymbolId bot = bin->require(kBinBottom);
    while (!work.empty()) {
        std::vector<State> cur = work.front();
        work.pop_front();
        State src = seen.at(cur);
        if (cur.empty()) {
            out.add_rule(src, bot, {});
            continue;
        }
        std::vector<State> rest(cur.begin() + 1, cur.end());
        for (SymbolId f = 0; f < A.alphabet().size(); ++f) {
            const std::vector<State>* next = A.transition(cur[0], f);
            if (!next) continue;
            SymbolId fb = bin->require(A.alphabet().name(f));
            out.add_rule(src, fb, {intern(*next), intern(rest)});
        }
    }
    return out;
}

namespace {

std::vector<Rat> zero_params(int l) { return std::vector<Rat>(l, Rat(0)); }

std::string render_numeric(const Transducer& M, const Tree& t) {
    auto v = eval_unary(M, M.initial(), t, zero_params(M.param_count()));
    return v ? rat_to_string(*v) : "undefined";
}

std::string render_string(const Transducer& M, const Tree& t) {
    auto v = eval_string(M, M.initial(), t, {});
    return v ? letters_to_string(M, *v) : "undefined";
}

std::string render_group(const Transducer& M, const Tree& t) {
    auto v = eval_string(M, M.initial(), t, {});
    if (!v) return "undefined";
    return group_word_to_string(reduce_word(to_group_word(M, *v)));
}

std::string render_matrix(const Transducer& M, const MatrixInterp& interp, const Tree& t) {
    auto v = eval_string(M, M.initial(), t, {});
    if (!v) return "undefined";
    int l = interp.msize;
    std::vector<Rat> acc(l * l, Rat(0));
    for (int i = 0; i < l; ++i) acc[i * l + i] = 1;
    for (int id : *v) {
        std::vector<Rat> next(l * l, Rat(0));
        for (int i = 0; i < l; ++i)
            for (int k = 0; k < l; ++k)
                for (int j = 0; j < l; ++j)
                    next[i * l + j] += acc[i * l + k] * interp.letter[id][k * l + j];
        acc = std::move(next);
    }
    return matrix_to_string(acc, l);
}

void render_outputs(Verdict& v, const Transducer& M1, const Transducer& M2,
                    const PipelineOptions& opts, const Tree& witness) {
    if (v.mode == "unary") {
        v.output_left = render_numeric(M1, witness);
        v.output_right = render_numeric(M2, witness);
    } else if (v.mode == "f1" || v.mode == "f2") {
        v.output_left = render_group(M1, witness);
        v.output_right = render_group(M2, witness);
    } else if (v.mode == "matrix") {
        v.output_left = render_matrix(M1, *opts.interp, witness);
        v.output_right = render_matrix(M2, *opts.interp, witness);
    } else {
        v.output_left = render_string(M1, witness);
        v.output_right = render_string(M2, witness);
    }
}

void set_witness(Verdict& v, const Transducer& M1, const Transducer& M2,
                 const PipelineOptions& opts, Tree witness) {
    v.witness_text = tree_to_string(witness, M1.input());
    render_outputs(v, M1, M2, opts, witness);
    v.witness = std::move(witness);
    if (v.output_left == v.output_right)
        throw std::logic_error("internal error: witness does not separate the transducers");
}

/// The transformed decision problem for string/unary interpretations: a
/// total numeric transducer, the relative automaton, the two states to
/// compare, and the way back from transformed witnesses to input trees.
struct NumericProblem {
    Transducer N;
    Dtta A;
    State q1 = -1, q2 = -1;
    std::function<Tree(const Tree&)> decode;
    std::string pipeline;
};

Dtta relative_automaton(const Transducer& merged, State q1, const PipelineOptions& opts) {
    if (opts.relative_to) {
        if (!(opts.relative_to->alphabet() == merged.input()))
            throw std::invalid_argument("relative automaton over a different alphabet");
        return *opts.relative_to;
    }
    return domain_automaton(merged, q1);
}

NumericProblem build_numeric_problem(const Transducer& M1, const Transducer& M2,
                                     const PipelineOptions& opts) {
    State q1 = -1, q2 = -1;
    Transducer merged = merge_disjoint(M1, M2, q1, q2);
    if (merged.mode() == OutputMode::Numeric) {
        Dtta A = relative_automaton(merged, q1, opts);
        return {totalize(merged), std::move(A), q1, q2, [](const Tree& t) { return t; },
                "unary"};
    }
    // String pair: linear transducers unarize directly (the result is
    // non-self-nested); the general case goes through the binary encoding
    // first.
    if (classify(merged).linear) {
        Dtta A = relative_automaton(merged, q1, opts);
        return {unarize(totalize(merged)), std::move(A), q1, q2,
                [](const Tree& t) { return t; }, "unarize"};
    }
    Dtta A_sigma = relative_automaton(merged, q1, opts);
    Binarized bin = binarize(merged);
    Dtta A_rel = bin_automaton(A_sigma, bin.m.input_ptr());
    State b1 = bin.state(q1, 1);
    State b2 = bin.state(q2, 1);
    AlphabetPtr src = merged.input_ptr();
    AlphabetPtr enc = bin.m.input_ptr();
    auto decode = [src, enc](const Tree& t) { return bin_decode(t, *enc, *src); };
    return {unarize(totalize(bin.m)), std::move(A_rel), b1, b2, decode, "binarize-unarize"};
}

std::string pick_engine(const Transducer& N, const PipelineOptions& opts) {
    ClassifyFlags flags = classify(N);
    bool affine_ok = N.param_count() == 0 || flags.non_self_nested;
    if (opts.engine == "affine") {
        if (!affine_ok)
            throw std::invalid_argument(
                "affine engine requested for a self-nested transducer; use --engine invariant");
        return opts.prime_trials > 0 ? "modular" : "affine";
    }
    if (opts.engine == "invariant") return flags.monadic_input ? "monadic" : "invariant";
    if (affine_ok) return opts.prime_trials > 0 ? "modular" : "affine";
    return flags.monadic_input ? "monadic" : "invariant";
}

void pack_affine_certificate(Verdict& v, const Dtta& A, const AffineVerdict& av,
                             const RankedAlphabet& alpha) {
    for (const auto& [p, dim] : av.basis_dims) v.basis_dims.emplace_back(A.state_name(p), dim);
    for (const auto& [p, elems] : av.elements) {
        std::vector<std::pair<std::vector<Rat>, std::string>> list;
        for (const auto& [vec, tree] : elems) list.emplace_back(vec, tree_to_string(tree, alpha));
        v.cert_affine.emplace_back(A.state_name(p), std::move(list));
    }
}

void pack_invariant_certificate(Verdict& v, const Dtta& A, const InvariantMap& inv) {
    for (const auto& [p, gens] : inv.ideal) {
        std::vector<std::string> texts;
        for (const Polynomial& g : gens) texts.push_back(g.to_string());
        v.cert_invariant.emplace_back(A.state_name(p), std::move(texts));
    }
}

// Decision on a prepared numeric problem; fills engine-specific fields.
void run_numeric_engines(Verdict& v, const NumericProblem& prob, const PipelineOptions& opts,
                         const Transducer& M1, const Transducer& M2) {
    std::string engine = pick_engine(prob.N, opts);
    v.engine = engine;
    if (engine == "affine") {
        AffineVerdict av = decide_affine(prob.N, prob.A, prob.q1, prob.q2);
        if (av.equivalent) {
            v.kind = VerdictKind::Equivalent;
            pack_affine_certificate(v, prob.A, av, prob.N.input());
        } else {
            v.kind = VerdictKind::NotEquivalent;
            set_witness(v, M1, M2, opts, prob.decode(*av.witness));
        }
        return;
    }
    if (engine == "modular") {
        ModularVerdict mv =
            decide_modular(prob.N, prob.A, prob.q1, prob.q2, opts.prime_trials, opts.seed);
        if (mv.probably_equivalent) {
            v.kind = VerdictKind::Equivalent;  // probabilistic: no certificate attached
        } else {
            v.kind = VerdictKind::NotEquivalent;
            v.prime = mv.failing_prime;
            set_witness(v, M1, M2, opts, prob.decode(*mv.witness));
        }
        return;
    }
    PolySystem sys = make_poly_system(prob.N);
    int l = prob.N.param_count();
    Polynomial H = Polynomial::variable(sys.zspace, prob.q1 * (l + 1)) -
                   Polynomial::variable(sys.zspace, prob.q2 * (l + 1));
    EngineVerdict ev;
    if (engine == "monadic")
        ev = monadic_decide(sys, prob.A, {H});
    else
        ev = twin_decide(sys, prob.A, {H}, opts.budget);
    v.engine = ev.engine.empty() ? engine : ev.engine;
    v.depth = ev.depth_reached;
    v.kind = ev.kind;
    if (ev.kind == VerdictKind::Equivalent) {
        v.degree = ev.certificate_degree;
        pack_invariant_certificate(v, prob.A, ev.certificate);
    } else if (ev.kind == VerdictKind::NotEquivalent) {
        set_witness(v, M1, M2, opts, prob.decode(*ev.witness));
    }
}

// Domain comparison for absolute checks. Returns true when the decision is
// already made (domains differ).
bool domain_stage(Verdict& v, const Transducer& M1, const Transducer& M2,
                  const PipelineOptions& opts) {
    if (opts.relative_to) return false;
    Dtta A1 = domain_automaton(M1, M1.initial());
    Dtta A2 = domain_automaton(M2, M2.initial());
    DttaEquivResult eq = dtta_equiv(A1, A2);
    if (eq.equal) return false;
    v.kind = VerdictKind::NotEquivalent;
    v.engine = "domain";
    set_witness(v, M1, M2, opts, std::move(*eq.witness));
    return true;
}

void check_same_alphabet(const Transducer& M1, const Transducer& M2) {
    if (!(M1.input() == M2.input()))
        throw std::invalid_argument("transducers have different input alphabets");
}

}  // namespace

Verdict decide_partial(const Transducer& M1, const Transducer& M2, const PipelineOptions& opts) {
    check_same_alphabet(M1, M2);
    if (M1.mode() != M2.mode())
        throw std::invalid_argument("cannot compare string and numeric transducers");
    Verdict v;
    v.mode = M1.mode() == OutputMode::Numeric ? "unary" : "string";
    v.seed = opts.seed;
    if (domain_stage(v, M1, M2, opts)) {
        v.pipeline = v.mode;
        return v;
    }
    NumericProblem prob = build_numeric_problem(M1, M2, opts);
    v.pipeline = prob.pipeline;
    run_numeric_engines(v, prob, opts, M1, M2);
    return v;
}

Verdict abelian_decide(const Transducer& M1, const Transducer& M2, const PipelineOptions& opts) {
    check_same_alphabet(M1, M2);
    if (M1.mode() != OutputMode::String || M2.mode() != OutputMode::String ||
        M1.param_count() != 0 || M2.param_count() != 0)
        throw std::invalid_argument("abelian equivalence expects parameterless string transducers");
    Verdict v;
    v.mode = "abelian";
    v.pipeline = "abelian";
    v.seed = opts.seed;
    if (domain_stage(v, M1, M2, opts)) return v;

    for (int id = 1; id <= M1.output_size(); ++id) {
        if (!M2.find_letter(M1.letter_name(id)))
            throw std::invalid_argument("output alphabets differ");
        Transducer P1 = unary_letter_projection(M1, id);
        Transducer P2 = unary_letter_projection(M2, *M2.find_letter(M1.letter_name(id)));
        State q1 = -1, q2 = -1;
        Transducer merged = merge_disjoint(P1, P2, q1, q2);
        Dtta A = relative_automaton(merged, q1, opts);
        AffineVerdict av = decide_affine(totalize(merged), A, q1, q2);
        if (!av.equivalent) {
            v.kind = VerdictKind::NotEquivalent;
            v.engine = "affine";
            set_witness(v, M1, M2, opts, *av.witness);
            return v;
        }
        std::string prefix = M1.letter_name(id) + "|";
        Verdict sub;
        pack_affine_certificate(sub, A, av, merged.input());
        for (auto& [name, dim] : sub.basis_dims) v.basis_dims.emplace_back(prefix + name, dim);
        for (auto& [name, elems] : sub.cert_affine)
            v.cert_affine.emplace_back(prefix + name, std::move(elems));
    }
    v.kind = VerdictKind::Equivalent;
    v.engine = "affine";
    return v;
}

namespace {
Verdict decide_matrix_with(const Transducer& merged, State q1, State q2, const Transducer& M1,
                           const Transducer& M2, const PipelineOptions& opts, Verdict v);
}  // namespace

Verdict decide_free_group(const Transducer& M1, const Transducer& M2,
                          const PipelineOptions& opts, const std::string& group) {
    check_same_alphabet(M1, M2);
    if (M1.mode() != OutputMode::String || M1.param_count() != 0 ||
        M2.mode() != OutputMode::String || M2.param_count() != 0)
        throw std::invalid_argument("free-group output expects parameterless string transducers");
    Verdict v;
    v.mode = group;
    v.pipeline = group;
    v.seed = opts.seed;
    if (domain_stage(v, M1, M2, opts)) return v;

    if (group == "f1") {
        State q1 = -1, q2 = -1;
        Transducer merged = merge_disjoint(M1, M2, q1, q2);
        Dtta A = relative_automaton(merged, q1, opts);
        Transducer P1 = f1_projection(M1);
        Transducer P2 = f1_projection(M2);
        State r1 = -1, r2 = -1;
        Transducer pm = merge_disjoint(P1, P2, r1, r2);
        NumericProblem prob{totalize(pm), std::move(A), r1, r2,
                            [](const Tree& t) { return t; }, "f1"};
        run_numeric_engines(v, prob, opts, M1, M2);
        return v;
    }
    if (group != "f2") throw std::invalid_argument("unsupported group '" + group + "'");

    PipelineOptions sub = opts;
    State q1 = -1, q2 = -1;
    Transducer merged = merge_disjoint(M1, M2, q1, q2);
    sub.interp = sanov_interp(merged);
    return decide_matrix_with(merged, q1, q2, M1, M2, sub, std::move(v));
}

namespace {

template <class F>
std::vector<AffineFunctional> matrix_targets(const MatrixSemantics<F>& sem, State q1, State q2) {
    std::vector<AffineFunctional> targets;
    int l = sem.msize();
    for (int lam = 0; lam < l; ++lam)
        for (int mu = 0; mu < l; ++mu)
            targets.push_back({sem.coord(q1, lam, mu), sem.coord(q2, lam, mu)});
    return targets;
}

Verdict decide_matrix_with(const Transducer& merged, State q1, State q2, const Transducer& M1,
                           const Transducer& M2, const PipelineOptions& opts, Verdict v) {
    const MatrixInterp& interp = *opts.interp;
    Dtta A = relative_automaton(merged, q1, opts);
    Transducer N = totalize(merged);
    bool linear = classify(merged).linear;
    bool use_affine = opts.engine == "affine" || (opts.engine == "auto" && linear);

    if (use_affine && opts.prime_trials > 0) {
        // randomized modular path for linear transducers
        Rng rng(opts.seed);
        v.engine = "modular";
        MatrixSemantics<FieldQ> exact(N, interp, FieldQ{});
        for (int t = 0; t < opts.prime_trials; ++t) {
            uint64_t p = sample_prime(rng, UINT64_MAX);
            try {
                FieldZp fp(p);
                MatrixSemantics<FieldZp> sem(N, interp, fp);
                auto out = affine_check<FieldZp>(sem, A, matrix_targets(sem, q1, q2));
                if (!out.equivalent) {
                    std::vector<Rat> a = exact.eval_tree(*out.witness);
                    bool differs = false;
                    for (const AffineFunctional& h : matrix_targets(exact, q1, q2))
                        if (a[h.plus] != a[h.minus]) differs = true;
                    if (differs) {
                        v.kind = VerdictKind::NotEquivalent;
                        v.prime = p;
                        set_witness(v, M1, M2, opts, *out.witness);
                        return v;
                    }
                }
            } catch (const PrimeUnusable&) {
                --t;
                continue;
            }
        }
        v.kind = VerdictKind::Equivalent;
        return v;
    }

    if (use_affine) {
        v.engine = "affine";
        MatrixSemantics<FieldQ> sem(N, interp, FieldQ{});
        auto out = affine_check<FieldQ>(sem, A, matrix_targets(sem, q1, q2));
        if (out.equivalent) {
            v.kind = VerdictKind::Equivalent;
            AffineVerdict av;
            av.equivalent = true;
            for (auto& [p, basis] : out.closure.basis) {
                av.basis_dims[p] = basis.empty() ? -1 : basis.linear_dim();
                for (const auto& [vec, tree] : basis.elements())
                    av.elements[p].emplace_back(vec, tree);
            }
            pack_affine_certificate(v, A, av, N.input());
        } else {
            v.kind = VerdictKind::NotEquivalent;
            set_witness(v, M1, M2, opts, *out.witness);
        }
        return v;
    }

    // general transducers: inductive invariants over the matrix coordinates
    PolySystem sys = make_matrix_poly_system(N, interp);
    int l = interp.msize;
    std::vector<Polynomial> targets;
    for (int i = 0; i < l * l; ++i)
        targets.push_back(Polynomial::variable(sys.zspace, q1 * l * l + i) -
                          Polynomial::variable(sys.zspace, q2 * l * l + i));
    EngineVerdict ev;
    ClassifyFlags flags = classify(N);
    if (flags.monadic_input && opts.engine != "invariant")
        ev = monadic_decide(sys, A, targets);
    else
        ev = twin_decide(sys, A, targets, opts.budget);
    v.engine = ev.engine;
    v.depth = ev.depth_reached;
    v.kind = ev.kind;
    if (ev.kind == VerdictKind::Equivalent) {
        v.degree = ev.certificate_degree;
        pack_invariant_certificate(v, A, ev.certificate);
    } else if (ev.kind == VerdictKind::NotEquivalent) {
        set_witness(v, M1, M2, opts, *ev.witness);
    }
    return v;
}

}  // namespace

Verdict decide_matrix(const Transducer& M1, const Transducer& M2, const PipelineOptions& opts) {
    check_same_alphabet(M1, M2);
    if (!opts.interp) throw std::invalid_argument("matrix mode needs a letter interpretation");
    Verdict v;
    v.mode = "matrix";
    v.pipeline = "matrix";
    v.seed = opts.seed;
    if (domain_stage(v, M1, M2, opts)) return v;
    State q1 = -1, q2 = -1;
    Transducer merged = merge_disjoint(M1, M2, q1, q2);
    return decide_matrix_with(merged, q1, q2, M1, M2, opts, std::move(v));
}

Verdict check_equivalence(const Transducer& M1, const Transducer& M2,
                          const PipelineOptions& opts) {
    std::string mode = opts.mode;
    if (mode == "auto")
        mode = M1.mode() == OutputMode::Numeric ? "unary" : "string";
    if (mode == "unary" || mode == "string") {
        if ((mode == "unary") != (M1.mode() == OutputMode::Numeric))
            throw std::invalid_argument("mode '" + mode +
                                        "' does not match the transducers' output mode");
        return decide_partial(M1, M2, opts);
    }
    if (mode == "abelian") return abelian_decide(M1, M2, opts);
    if (mode == "f1" || mode == "f2") return decide_free_group(M1, M2, opts, mode);
    if (mode == "matrix") return decide_matrix(M1, M2, opts);
    throw std::invalid_argument("unknown mode '" + mode + "'");
}

namespace {

std::optional<State> state_by_name(const Dtta& A, const std::string& name) {
    return A.find_state(name);
}

// Rebuilds the affine closure data from a certificate and checks the three
// certificate obligations: elements are genuine semantics vectors of domain
// trees, the bases are closed under every transition, and the targets vanish
// at the initial state. Closedness plus multi-affinity makes aff(elements)
// cover every reachable semantics vector, so the check is sound on its own.
template <class Sem>
std::string verify_affine_cert(
    const std::vector<std::pair<std::string, std::vector<std::pair<std::vector<Rat>,
                                                                   std::string>>>>& cert,
    const Sem& sem, const Dtta& A, const std::vector<AffineFunctional>& targets,
    const std::string& key_prefix) {
    std::map<State, AffineBasis<FieldQ>> bases;
    std::map<State, std::vector<std::vector<Rat>>> elems;
    for (State p = 0; p < A.state_count(); ++p)
        bases.emplace(p, AffineBasis<FieldQ>(FieldQ{}, sem.dim()));
    for (const auto& [key, list] : cert) {
        if (key.rfind(key_prefix, 0) != 0) continue;
        std::string name = key.substr(key_prefix.size());
        auto p = state_by_name(A, name);
        if (!p) return "certificate names unknown automaton state '" + name + "'";
        for (const auto& [vec, tree_text] : list) {
            if (static_cast<int>(vec.size()) != sem.dim())
                return "certificate vector has wrong dimension";
            Tree t = tree_from_string(tree_text, sem.alphabet());
            if (!accepts(A, *p, t))
                return "certificate tree not in dom(" + name + "): " + tree_text;
            if (sem.eval_tree(t) != vec)
                return "certificate vector does not match its tree: " + tree_text;
            bases.at(*p).insert(vec, t);
            elems[*p].push_back(vec);
        }
    }
    for (const auto& [key, kids] : A.rules()) {
        std::vector<const std::vector<std::vector<Rat>>*> lists;
        bool missing = false;
        for (State c : kids) {
            auto it = elems.find(c);
            if (it == elems.end() || it->second.empty()) {
                missing = true;
                break;
            }
            lists.push_back(&it->second);
        }
        if (missing) {
            // A productive transition with no certified elements below it
            // would let reachable vectors escape the certified hull.
            bool productive = true;
            for (State c : kids) {
                auto sm = shortest_member(A, c);
                if (!sm) productive = false;
            }
            if (productive && !kids.empty())
                return "certificate misses elements for a productive transition";
            if (!kids.empty()) continue;
        }
        size_t m = kids.size();
        std::vector<size_t> idx(m, 0);
        for (;;) {
            std::vector<std::vector<Rat>> args;
            for (size_t i = 0; i < m; ++i) args.push_back((*lists[i])[idx[i]]);
            std::vector<Rat> v = sem.apply(key.second, args);
            if (!bases.at(key.first).contains(v))
                return "closure violation at state " + A.state_name(key.first);
            size_t pos = m;
            bool done = true;
            while (pos-- > 0) {
                if (++idx[pos] < lists[pos]->size()) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (done) break;
        }
        if (m == 0) continue;
    }
    // targets vanish on every certified element at the initial state
    auto it = elems.find(A.initial());
    if (it != elems.end())
        for (const std::vector<Rat>& v : it->second)
            for (const AffineFunctional& h : targets)
                if (v[h.plus] != v[h.minus]) return "target does not vanish on the certificate";
    // the initial state must be covered when its language is nonempty
    if (shortest_member(A, A.initial()) && (it == elems.end() || it->second.empty()))
        return "certificate misses the initial state";
    return "";
}

std::string verify_invariant_cert(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& cert,
    const PolySystem& sys, const Dtta& A, const std::vector<Polynomial>& targets) {
    InvariantMap I;
    for (State p = 0; p < A.state_count(); ++p) I.ideal[p] = {};
    for (const auto& [name, texts] : cert) {
        auto p = state_by_name(A, name);
        if (!p) return "certificate names unknown automaton state '" + name + "'";
        std::vector<Polynomial> gens;
        for (const std::string& text : texts)
            gens.push_back(Polynomial::parse(sys.zspace, text));
        I.ideal[*p] = buchberger(std::move(gens));
    }
    if (!is_inductive(I, sys, A)) return "certificate is not an inductive invariant";
    for (const Polynomial& h : targets)
        if (!member(h, I.ideal.at(A.initial())))
            return "target polynomial is not in the initial state's ideal";
    return "";
}

}  // namespace

std::string verify_verdict(const Verdict& v, const Transducer& M1, const Transducer& M2,
                           const PipelineOptions& opts) {
    if (v.kind == VerdictKind::Unknown) return "unknown verdicts carry no certificate";

    if (v.kind == VerdictKind::NotEquivalent) {
        Tree witness = v.witness ? *v.witness : tree_from_string(v.witness_text, M1.input());
        Verdict probe;
        probe.mode = v.mode;
        render_outputs(probe, M1, M2, opts, witness);
        if (probe.output_left == probe.output_right)
            return "witness does not separate the transducers";
        return "";
    }

    if (v.engine == "modular")
        return "modular verdicts are probabilistic and carry no certificate";

    // domain comparison is part of every absolute equivalence claim
    if (!opts.relative_to) {
        Dtta A1 = domain_automaton(M1, M1.initial());
        Dtta A2 = domain_automaton(M2, M2.initial());
        if (!dtta_equiv(A1, A2).equal) return "domains differ";
    }

    if (v.pipeline == "unary" || v.pipeline == "unarize" || v.pipeline == "binarize-unarize" ||
        v.pipeline == "f1") {
        NumericProblem prob = [&]() -> NumericProblem {
            if (v.pipeline != "f1") return build_numeric_problem(M1, M2, opts);
            State q1 = -1, q2 = -1;
            Transducer merged = merge_disjoint(M1, M2, q1, q2);
            Dtta A = relative_automaton(merged, q1, opts);
            State r1 = -1, r2 = -1;
            Transducer pm = merge_disjoint(f1_projection(M1), f1_projection(M2), r1, r2);
            return {totalize(pm), std::move(A), r1, r2, [](const Tree& t) { return t; }, "f1"};
        }();
        if (prob.pipeline != v.pipeline)
            return "certificate pipeline '" + v.pipeline + "' does not match inputs ('" +
                   prob.pipeline + "')";
        if (!v.cert_invariant.empty()) {
            PolySystem sys = make_poly_system(prob.N);
            int l = prob.N.param_count();
            Polynomial H = Polynomial::variable(sys.zspace, prob.q1 * (l + 1)) -
                           Polynomial::variable(sys.zspace, prob.q2 * (l + 1));
            return verify_invariant_cert(v.cert_invariant, sys, prob.A, {H});
        }
        if (!v.cert_affine.empty()) {
            TransducerSemantics<FieldQ> sem(prob.N, FieldQ{});
            int l = prob.N.param_count();
            std::vector<AffineFunctional> targets{
                {prob.q1 * (l + 1), prob.q2 * (l + 1)}};
            return verify_affine_cert(v.cert_affine, sem, prob.A, targets, "");
        }
        return "certificate is empty";
    }

    if (v.pipeline == "abelian") {
        if (v.cert_affine.empty()) return "certificate is empty";
        for (int id = 1; id <= M1.output_size(); ++id) {
            auto other = M2.find_letter(M1.letter_name(id));
            if (!other) return "output alphabets differ";
            Transducer P1 = unary_letter_projection(M1, id);
            Transducer P2 = unary_letter_projection(M2, *other);
            State q1 = -1, q2 = -1;
            Transducer merged = merge_disjoint(P1, P2, q1, q2);
            Dtta A = relative_automaton(merged, q1, opts);
            Transducer N = totalize(merged);
            TransducerSemantics<FieldQ> sem(N, FieldQ{});
            std::vector<AffineFunctional> targets{{q1, q2}};
            std::string err = verify_affine_cert(v.cert_affine, sem, A, targets,
                                                 M1.letter_name(id) + "|");
            if (!err.empty()) return "letter " + M1.letter_name(id) + ": " + err;
        }
        return "";
    }

    if (v.pipeline == "f2" || v.pipeline == "matrix") {
        State q1 = -1, q2 = -1;
        Transducer merged = merge_disjoint(M1, M2, q1, q2);
        MatrixInterp interp =
            v.pipeline == "f2" ? sanov_interp(merged) : *opts.interp;
        Dtta A = relative_automaton(merged, q1, opts);
        Transducer N = totalize(merged);
        if (!v.cert_invariant.empty()) {
            PolySystem sys = make_matrix_poly_system(N, interp);
            int l = interp.msize;
            std::vector<Polynomial> targets;
            for (int i = 0; i < l * l; ++i)
                targets.push_back(Polynomial::variable(sys.zspace, q1 * l * l + i) -
                                  Polynomial::variable(sys.zspace, q2 * l * l + i));
            return verify_invariant_cert(v.cert_invariant, sys, A, targets);
        }
        if (!v.cert_affine.empty()) {
            MatrixSemantics<FieldQ> sem(N, interp, FieldQ{});
            return verify_affine_cert(v.cert_affine, sem, A, matrix_targets(sem, q1, q2), "");
        }
        return "certificate is empty";
    }

    return "unknown pipeline '" + v.pipeline + "'";
}

}  // namespace treq
