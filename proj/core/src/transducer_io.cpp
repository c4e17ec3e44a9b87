#include <functional>
#include <stdexcept>

#include "treq/transducer.hpp"

namespace treq {

namespace {

std::string rhs_to_string(const Transducer& M, const Rhs& r) {
    switch (r.kind) {
        case Rhs::Kind::Cat: {
            std::string out = "(cat";
            for (const Rhs& a : r.args) out += " " + rhs_to_string(M, a);
            return out + ")";
        }
        case Rhs::Kind::Out:
            return "(out " + M.letter_name(static_cast<int>(r.num)) + ")";
        case Rhs::Kind::Param:
            return "(param " + std::to_string(r.num) + ")";
        case Rhs::Kind::Const:
            return "(const " + std::to_string(r.num) + ")";
        case Rhs::Kind::Add: {
            std::string out = "(add";
            for (const Rhs& a : r.args) out += " " + rhs_to_string(M, a);
            return out + ")";
        }
        case Rhs::Kind::Mul:
            return "(mul " + std::to_string(r.num) + " " + rhs_to_string(M, r.args[0]) + ")";
        case Rhs::Kind::Call: {
            std::string out =
                "(call " + M.state_name(r.state) + " " + std::to_string(r.num);
            for (const Rhs& a : r.args) out += " " + rhs_to_string(M, a);
            return out + ")";
        }
    }
    return "";
}

Rhs rhs_from_sexpr(const Transducer& M, const Sexpr& s) {
    if (s.is_atom) throw ParseError("expected rhs expression", s.line, s.col);
    std::string tag = s.head();
    if (tag == "cat") {
        std::vector<Rhs> items;
        for (size_t i = 1; i < s.items.size(); ++i)
            items.push_back(rhs_from_sexpr(M, s.items[i]));
        return Rhs::cat(std::move(items));
    }
    if (tag == "eps") return Rhs::cat({});
    if (tag == "out") {
        auto id = M.find_letter(s.at(1).atom());
        if (!id)
            throw ParseError("undeclared output letter '" + s.at(1).atom() + "'", s.line, s.col);
        return Rhs::out(*id);
    }
    if (tag == "param") return Rhs::param(s.at(1).as_int());
    if (tag == "const") return Rhs::constant(s.at(1).as_int());
    if (tag == "add") {
        std::vector<Rhs> terms;
        for (size_t i = 1; i < s.items.size(); ++i)
            terms.push_back(rhs_from_sexpr(M, s.items[i]));
        return Rhs::add(std::move(terms));
    }
    if (tag == "mul") {
        if (s.items.size() != 3) throw ParseError("(mul c rhs)", s.line, s.col);
        return Rhs::mul(s.at(1).as_int(), rhs_from_sexpr(M, s.at(2)));
    }
    if (tag == "call") {
        if (s.items.size() < 3) throw ParseError("(call state var rhs*)", s.line, s.col);
        auto q = M.find_state(s.at(1).atom());
        if (!q) throw ParseError("call to unknown state '" + s.at(1).atom() + "'", s.line, s.col);
        // the variable may be written as an index or as x<index>
        long long var;
        const std::string& vt = s.at(2).atom();
        if (!vt.empty() && vt[0] == 'x')
            var = std::stoll(vt.substr(1));
        else
            var = s.at(2).as_int();
        std::vector<Rhs> params;
        for (size_t i = 3; i < s.items.size(); ++i)
            params.push_back(rhs_from_sexpr(M, s.items[i]));
        return Rhs::call(*q, var, std::move(params));
    }
    throw ParseError("unknown rhs form '" + tag + "'", s.line, s.col);
}

}  // namespace

std::string transducer_to_string(const Transducer& M) {
    std::string out = "(transducer\n  (mode ";
    out += M.mode() == OutputMode::String ? "string" : "unary";
    out += ")\n  (params " + std::to_string(M.param_count()) + ")";
    if (M.negative_constants_allowed()) out += "\n  (allow-negative)";
    if (M.mode() == OutputMode::String) {
        out += "\n  (output";
        for (int id = 1; id <= M.output_size(); ++id) out += " " + M.letter_name(id);
        out += ")";
    }
    out += "\n  (states";
    for (State q = 0; q < M.state_count(); ++q) out += " " + M.state_name(q);
    out += ")\n  (init " + M.state_name(M.initial()) + ")";
    for (const auto& [key, rhs] : M.rules()) {
        int rank = M.input().rank(key.second);
        out += "\n  (rule " + M.state_name(key.first) + " " + M.input().name(key.second) + " (";
        for (int i = 1; i <= rank; ++i) {
            if (i > 1) out += ' ';
            out += "x" + std::to_string(i);
        }
        out += ") " + rhs_to_string(M, rhs) + ")";
    }
    out += ")\n";
    return out;
}

Transducer transducer_from_sexpr(const Sexpr& s) {
    if (!s.is_list("transducer")) throw ParseError("expected (transducer ...)", s.line, s.col);

    OutputMode mode = OutputMode::String;
    int params = 0;
    bool allow_negative = false;
    bool saw_mode = false;
    for (size_t i = 1; i < s.items.size(); ++i) {
        const Sexpr& it = s.items[i];
        if (it.is_list("mode")) {
            const std::string& m = it.at(1).atom();
            if (m == "string")
                mode = OutputMode::String;
            else if (m == "unary" || m == "numeric")
                mode = OutputMode::Numeric;
            else
                throw ParseError("mode must be string or unary", it.line, it.col);
            saw_mode = true;
        } else if (it.is_list("params")) {
            params = static_cast<int>(it.at(1).as_int());
        } else if (it.is_list("allow-negative")) {
            allow_negative = true;
        }
    }
    if (!saw_mode) throw ParseError("transducer missing (mode ...)", s.line, s.col);

    // the input alphabet is inferred from rule variable lists
    auto alpha = std::make_shared<RankedAlphabet>();
    for (size_t i = 1; i < s.items.size(); ++i) {
        const Sexpr& it = s.items[i];
        if (!it.is_list("rule")) continue;
        if (it.items.size() != 5)
            throw ParseError("rule needs (rule state symbol (vars) rhs)", it.line, it.col);
        const Sexpr& vars = it.at(3);
        if (vars.is_atom) throw ParseError("variable list must be a list", vars.line, vars.col);
        for (size_t v = 0; v < vars.items.size(); ++v) {
            std::string expect = "x" + std::to_string(v + 1);
            if (vars.items[v].atom() != expect)
                throw ParseError("variables must be x1..xm in order", vars.line, vars.col);
        }
        alpha->add(it.at(2).atom(), static_cast<int>(vars.items.size()));
    }

    Transducer M(alpha, mode, params);
    M.allow_negative_constants(allow_negative);
    std::optional<std::string> init;
    for (size_t i = 1; i < s.items.size(); ++i) {
        const Sexpr& it = s.items[i];
        if (it.is_list("output")) {
            if (mode != OutputMode::String)
                throw ParseError("(output ...) only in string mode", it.line, it.col);
            for (size_t j = 1; j < it.items.size(); ++j) M.add_output_letter(it.at(j).atom());
        } else if (it.is_list("states")) {
            for (size_t j = 1; j < it.items.size(); ++j) M.add_state(it.at(j).atom());
        } else if (it.is_list("init")) {
            init = it.at(1).atom();
            M.add_state(*init);
        } else if (it.is_list("rule")) {
            M.add_state(it.at(1).atom());
        } else if (it.is_list("mode") || it.is_list("params") || it.is_list("allow-negative")) {
            // handled above
        } else {
            throw ParseError("unexpected clause '" + it.head() + "' in transducer", it.line,
                             it.col);
        }
    }
    for (size_t i = 1; i < s.items.size(); ++i) {
        const Sexpr& it = s.items[i];
        if (!it.is_list("rule")) continue;
        State q = M.require_state(it.at(1).atom());
        SymbolId f = alpha->require(it.at(2).atom());
        M.add_rule(q, f, rhs_from_sexpr(M, it.at(4)));
    }
    if (!init) throw ParseError("transducer missing (init ...)", s.line, s.col);
    M.set_initial(M.require_state(*init));
    return M;
}

Transducer transducer_from_string(const std::string& text) {
    return transducer_from_sexpr(sexpr_parse(text));
}

}  // namespace treq
