#include "treq/certificate.hpp"

#include <sstream>
#include <stdexcept>

namespace treq {

namespace {

const char* kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Equivalent: return "equivalent";
        case VerdictKind::NotEquivalent: return "not-equivalent";
        case VerdictKind::Unknown: return "unknown";
    }
    return "unknown";
}

VerdictKind kind_of(const std::string& s) {
    if (s == "equivalent") return VerdictKind::Equivalent;
    if (s == "not-equivalent") return VerdictKind::NotEquivalent;
    if (s == "unknown") return VerdictKind::Unknown;
    throw std::invalid_argument("bad verdict '" + s + "'");
}

}  // namespace

std::string verdict_to_string(const Verdict& v) {
    std::ostringstream out;
    out << "treq-verdict 1\n";
    out << "mode " << v.mode << "\n";
    out << "pipeline " << v.pipeline << "\n";
    out << "engine " << v.engine << "\n";
    out << "seed " << v.seed << "\n";
    out << "prime " << v.prime << "\n";
    out << "degree " << v.degree << "\n";
    out << "depth " << v.depth << "\n";
    out << "verdict " << kind_name(v.kind) << "\n";
    for (const auto& [name, dim] : v.basis_dims) out << "state-dim " << name << " " << dim << "\n";
    if (!v.witness_text.empty()) {
        out << "witness " << v.witness_text << "\n";
        out << "output-left " << v.output_left << "\n";
        out << "output-right " << v.output_right << "\n";
    }
    for (const auto& [name, gens] : v.cert_invariant) {
        out << "ideal " << name << " " << gens.size() << "\n";
        for (const std::string& g : gens) out << "gen " << name << " " << g << "\n";
    }
    for (const auto& [name, elems] : v.cert_affine) {
        for (const auto& [vec, tree] : elems) {
            out << "elem " << name << " ((";
            for (size_t i = 0; i < vec.size(); ++i) {
                if (i) out << " ";
                out << rat_to_string(vec[i]);
            }
            out << ") " << tree << ")\n";
        }
    }
    out << "end\n";
    return out.str();
}

Verdict verdict_from_string(const std::string& text) {
    Verdict v;
    std::istringstream in(text);
    std::string line;
    bool header = false, ended = false;
    auto split_first = [](const std::string& s, std::string& rest) {
        size_t sp = s.find(' ');
        if (sp == std::string::npos) {
            rest.clear();
            return s;
        }
        rest = s.substr(sp + 1);
        return s.substr(0, sp);
    };
    std::map<std::string, size_t> inv_index;
    std::map<std::string, size_t> aff_index;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::string rest;
        std::string key = split_first(line, rest);
        if (!header) {
            if (key != "treq-verdict" || rest != "1")
                throw std::invalid_argument("not a treq verdict record");
            header = true;
            continue;
        }
        if (key == "end") {
            ended = true;
            break;
        }
        if (key == "mode") v.mode = rest;
        else if (key == "pipeline") v.pipeline = rest;
        else if (key == "engine") v.engine = rest;
        else if (key == "seed") v.seed = std::stoull(rest);
        else if (key == "prime") v.prime = std::stoull(rest);
        else if (key == "degree") v.degree = std::stoi(rest);
        else if (key == "depth") v.depth = std::stoi(rest);
        else if (key == "verdict") v.kind = kind_of(rest);
        else if (key == "state-dim") {
            std::string num;
            std::string name = split_first(rest, num);
            v.basis_dims.emplace_back(name, std::stoi(num));
        } else if (key == "witness") v.witness_text = rest;
        else if (key == "output-left") v.output_left = rest;
        else if (key == "output-right") v.output_right = rest;
        else if (key == "ideal") {
            std::string count;
            std::string name = split_first(rest, count);
            if (!inv_index.count(name)) {
                inv_index[name] = v.cert_invariant.size();
                v.cert_invariant.emplace_back(name, std::vector<std::string>{});
            }
        } else if (key == "gen") {
            std::string poly;
            std::string name = split_first(rest, poly);
            if (!inv_index.count(name)) {
                inv_index[name] = v.cert_invariant.size();
                v.cert_invariant.emplace_back(name, std::vector<std::string>{});
            }
            v.cert_invariant[inv_index[name]].second.push_back(poly);
        } else if (key == "elem") {
            std::string payload;
            std::string name = split_first(rest, payload);
            Sexpr s = sexpr_parse(payload);
            if (s.items.size() != 2)
                throw std::invalid_argument("elem payload needs ((vector) (tree))");
            std::vector<Rat> vec;
            for (const Sexpr& cell : s.at(0).items) vec.push_back(rat_from_string(cell.atom()));
            if (!aff_index.count(name)) {
                aff_index[name] = v.cert_affine.size();
                v.cert_affine.emplace_back(
                    name, std::vector<std::pair<std::vector<Rat>, std::string>>{});
            }
            v.cert_affine[aff_index[name]].second.emplace_back(std::move(vec),
                                                               sexpr_to_string(s.at(1)));
        } else {
            throw std::invalid_argument("unknown verdict key '" + key + "'");
        }
    }
    if (!header || !ended) throw std::invalid_argument("truncated verdict record");
    return v;
}

}  // namespace treq
