#include "treq/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "treq/binary_encoding.hpp"
#include "treq/certificate.hpp"
#include "treq/pipeline.hpp"

namespace treq {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// File path, or inline text when it starts with '('.
std::string load(const std::string& arg) {
    if (!arg.empty() && arg[0] == '(') return arg;
    return slurp(arg);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write file '" + out_path + "'");
    out << text;
}

struct CheckArgs {
    std::string file1, file2;
    std::string mode = "auto";
    std::string engine = "auto";
    std::string relative_to;
    std::string matrix_file;
    std::string out;
    int max_depth = 4;
    int prime_trials = 0;
    uint64_t seed = 1;
};

void add_check_flags(CLI::App* cmd, CheckArgs& a) {
    cmd->add_option("left", a.file1, "first transducer file")->required();
    cmd->add_option("right", a.file2, "second transducer file")->required();
    cmd->add_option("--mode", a.mode,
                    "interpretation: auto|string|unary|abelian|f1|f2|matrix")
        ->envname("TREQ_MODE");
    cmd->add_option("--engine", a.engine, "engine: auto|affine|invariant")
        ->envname("TREQ_ENGINE");
    cmd->add_option("--relative-to", a.relative_to, "restrict inputs to this automaton")
        ->envname("TREQ_RELATIVE_TO");
    cmd->add_option("--matrix-interp", a.matrix_file, "letter matrices for --mode matrix")
        ->envname("TREQ_MATRIX_INTERP");
    cmd->add_option("--max-depth", a.max_depth,
                    "budget for the twin loop (counterexample depth and invariant degree)")
        ->envname("TREQ_MAX_DEPTH");
    cmd->add_option("--prime-trials", a.prime_trials,
                    "use the randomized modular check with this many primes")
        ->envname("TREQ_PRIME_TRIALS");
    cmd->add_option("--seed", a.seed, "random seed (modular checks)")->envname("TREQ_SEED");
    cmd->add_option("--out", a.out, "write the verdict record here")->envname("TREQ_OUT");
}

PipelineOptions make_options(const CheckArgs& a, const Transducer& M1) {
    PipelineOptions opts;
    opts.mode = a.mode;
    opts.engine = a.engine;
    opts.budget.max_degree = a.max_depth;
    opts.prime_trials = a.prime_trials;
    opts.seed = a.seed;
    if (!a.relative_to.empty())
        opts.relative_to = dtta_from_string(load(a.relative_to), M1.input_ptr());
    std::string mode = a.mode;
    if (!a.matrix_file.empty())
        opts.interp = matrix_interp_from_string(load(a.matrix_file), M1);
    return opts;
}

int run_check(const CheckArgs& a, bool require_equivalent) {
    Transducer M1 = transducer_from_string(load(a.file1));
    Transducer M2 = transducer_from_string(load(a.file2));
    PipelineOptions opts = make_options(a, M1);
    Verdict v = check_equivalence(M1, M2, opts);
    std::string record = verdict_to_string(v);
    emit(record, a.out);
    if (!a.out.empty()) {
        std::cout << (v.kind == VerdictKind::Equivalent
                          ? "equivalent"
                          : v.kind == VerdictKind::NotEquivalent ? "not-equivalent" : "unknown")
                  << "\n";
    }
    if (require_equivalent && v.kind != VerdictKind::Equivalent) return v.exit_code() + 10;
    return v.exit_code();
}

int run_verify(const std::string& cert_file, const CheckArgs& a) {
    Transducer M1 = transducer_from_string(load(a.file1));
    Transducer M2 = transducer_from_string(load(a.file2));
    PipelineOptions opts = make_options(a, M1);
    Verdict v = verdict_from_string(load(cert_file));
    std::string err = verify_verdict(v, M1, M2, opts);
    if (err.empty()) {
        std::cout << "certificate verified\n";
        return 0;
    }
    std::cout << "certificate rejected: " << err << "\n";
    return 1;
}

std::vector<Rat> parse_numeric_params(const std::string& text, int l) {
    std::vector<Rat> params;
    if (!text.empty()) {
        Sexpr s = sexpr_parse(text);
        for (const Sexpr& item : s.items) params.push_back(rat_from_string(item.atom()));
    }
    params.resize(l, Rat(0));
    return params;
}

std::vector<std::vector<int>> parse_string_params(const std::string& text, const Transducer& M) {
    std::vector<std::vector<int>> params;
    if (!text.empty()) {
        Sexpr s = sexpr_parse(text);
        for (const Sexpr& word : s.items) {
            std::vector<int> letters;
            for (const Sexpr& letter : word.items) {
                auto id = M.find_letter(letter.atom());
                if (!id) throw std::invalid_argument("unknown letter '" + letter.atom() + "'");
                letters.push_back(*id);
            }
            params.push_back(std::move(letters));
        }
    }
    params.resize(M.param_count());
    return params;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
    CLI::App app{"equivalence checking for deterministic tree-to-string transducers"};
    app.require_subcommand(1);

    CheckArgs check_args, certify_args, verify_args;
    CLI::App* check = app.add_subcommand("check", "decide equivalence of two transducers");
    add_check_flags(check, check_args);

    CLI::App* certify =
        app.add_subcommand("certify", "like check, but fails unless a certificate is produced");
    add_check_flags(certify, certify_args);

    std::string cert_file;
    CLI::App* verify = app.add_subcommand("verify", "replay a certificate independently");
    verify->add_option("certificate", cert_file, "verdict record from check/certify")->required();
    add_check_flags(verify, verify_args);

    std::string eval_file, eval_tree, eval_state, eval_params, eval_out;
    CLI::App* eval = app.add_subcommand("eval", "run a transducer on one input tree");
    eval->add_option("transducer", eval_file)->required();
    eval->add_option("tree", eval_tree, "tree file or inline s-expression")->required();
    eval->add_option("--state", eval_state, "start state (default: initial)");
    eval->add_option("--params", eval_params, "parameter values, e.g. (1 2) or ((a b) ())");

    std::string cls_file;
    CLI::App* cls = app.add_subcommand("classify", "print syntactic classification flags");
    cls->add_option("transducer", cls_file)->required();

    std::string un_file, un_out;
    CLI::App* unz = app.add_subcommand("unarize", "base-(s+1) unarization of a total yDT");
    unz->add_option("transducer", un_file)->required();
    unz->add_option("--out", un_out);

    std::string bin_file, bin_out;
    CLI::App* bin = app.add_subcommand("binarize", "binary input encoding plus checker automaton");
    bin->add_option("transducer", bin_file)->required();
    bin->add_option("--out", bin_out);

    std::vector<const char*> argv;
    argv.push_back("treq");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (check->parsed()) return run_check(check_args, false);
        if (certify->parsed()) {
            if (certify_args.out.empty())
                throw std::invalid_argument("certify requires --out for the certificate");
            return run_check(certify_args, true);
        }
        if (verify->parsed()) return run_verify(cert_file, verify_args);
        if (eval->parsed()) {
            Transducer M = transducer_from_string(load(eval_file));
            Tree t = tree_from_string(load(eval_tree), M.input());
            State q = eval_state.empty() ? M.initial() : M.require_state(eval_state);
            if (M.mode() == OutputMode::Numeric) {
                auto v = eval_unary(M, q, t, parse_numeric_params(eval_params, M.param_count()));
                std::cout << (v ? rat_to_string(*v) : "undefined") << "\n";
            } else {
                auto v = eval_string(M, q, t, parse_string_params(eval_params, M));
                std::cout << (v ? letters_to_string(M, *v) : "undefined") << "\n";
            }
            return 0;
        }
        if (cls->parsed()) {
            Transducer M = transducer_from_string(load(cls_file));
            ClassifyFlags f = classify(M);
            std::cout << "mode " << (M.mode() == OutputMode::Numeric ? "unary" : "string")
                      << "\nstates " << M.state_count() << "\nparams " << M.param_count()
                      << "\nlinear " << (f.linear ? "true" : "false") << "\nnon-self-nested "
                      << (f.non_self_nested ? "true" : "false") << "\ntotal "
                      << (f.total ? "true" : "false") << "\nunary-output "
                      << (f.unary_output ? "true" : "false") << "\nmonadic-input "
                      << (f.monadic_input ? "true" : "false") << "\nmax-constant "
                      << max_constant(M) << "\n";
            return 0;
        }
        if (unz->parsed()) {
            Transducer M = transducer_from_string(load(un_file));
            emit(transducer_to_string(unarize(M)), un_out);
            return 0;
        }
        if (bin->parsed()) {
            Transducer M = transducer_from_string(load(bin_file));
            Binarized b = binarize(M);
            emit(transducer_to_string(b.m) + dtta_to_string(b.checker), bin_out);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 3;
}

}  // namespace treq
