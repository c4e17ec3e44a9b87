#include "treq/binary_encoding.hpp"

#include <algorithm>
#include <stdexcept>

namespace treq {

AlphabetPtr bin_alphabet(const RankedAlphabet& src) {
    if (src.find(kBinBottom))
        throw std::invalid_argument("alphabet already contains reserved symbol 'bot'");
    auto bin = std::make_shared<RankedAlphabet>();
    bin->add(kBinBottom, 0);
    for (SymbolId f = 0; f < src.size(); ++f) bin->add(src.name(f), 2);
    return bin;
}

Tree bin_encode_seq(std::span<const Tree> seq, const RankedAlphabet& src,
                    const RankedAlphabet& bin) {
    if (seq.empty()) return Tree(bin.require(kBinBottom));
    const Tree& head = seq.front();
    Tree first = bin_encode_seq(std::span<const Tree>(head.kids), src, bin);
    Tree rest = bin_encode_seq(seq.subspan(1), src, bin);
    return Tree(bin.require(src.name(head.sym)), {std::move(first), std::move(rest)});
}

Tree bin_encode(const Tree& t, const RankedAlphabet& src, const RankedAlphabet& bin) {
    return bin_encode_seq(std::span<const Tree>(&t, 1), src, bin);
}

std::vector<Tree> bin_decode_seq(const Tree& enc, const RankedAlphabet& bin,
                                 const RankedAlphabet& src) {
    if (bin.name(enc.sym) == kBinBottom) return {};
    auto sym = src.find(bin.name(enc.sym));
    if (!sym) throw std::invalid_argument("encoded symbol not in source alphabet");
    std::vector<Tree> children = bin_decode_seq(enc.kids[0], bin, src);
    if (static_cast<int>(children.size()) != src.rank(*sym))
        throw std::invalid_argument("encoding child count does not match rank of '" +
                                    src.name(*sym) + "'");
    std::vector<Tree> out;
    out.emplace_back(*sym, std::move(children));
    std::vector<Tree> rest = bin_decode_seq(enc.kids[1], bin, src);
    for (Tree& t : rest) out.push_back(std::move(t));
    return out;
}

Tree bin_decode(const Tree& enc, const RankedAlphabet& bin, const RankedAlphabet& src) {
    std::vector<Tree> seq = bin_decode_seq(enc, bin, src);
    if (seq.size() != 1)
        throw std::invalid_argument("encoding does not denote a single tree");
    return seq[0];
}

Dtta bin_checker(const RankedAlphabet& src, AlphabetPtr bin) {
    Dtta B(std::move(bin));
    int m = std::max(src.max_rank(), 1);
    for (int j = 0; j <= m; ++j) B.add_state("s" + std::to_string(j));
    B.set_initial(1);
    B.add_rule(0, B.alphabet().require(kBinBottom), {});
    for (int j = 0; j + 1 <= m; ++j)
        for (SymbolId f = 0; f < src.size(); ++f) {
            SymbolId fb = B.alphabet().require(src.name(f));
            B.add_rule(j + 1, fb, {src.rank(f), j});
        }
    return B;
}

}  // namespace treq
