#ifndef TREQ_BINARY_ENCODING_HPP_
#define TREQ_BINARY_ENCODING_HPP_

#include <span>
#include <vector>

#include "treq/dtta.hpp"
#include "treq/tree.hpp"

namespace treq {

/// Name of the end-of-sequence leaf in encoded alphabets.
inline constexpr const char* kBinBottom = "bot";

/// bin(Σ): the nullary "bot" plus every symbol of Σ with rank 2.
/// Σ must not already contain "bot".
AlphabetPtr bin_alphabet(const RankedAlphabet& src);

/// First-child-next-sibling encoding of a tree sequence:
/// the empty sequence maps to bot, and f(t1..tm)·s' maps to
/// f(bin(t1..tm), bin(s')).
Tree bin_encode_seq(std::span<const Tree> seq, const RankedAlphabet& src,
                    const RankedAlphabet& bin);
Tree bin_encode(const Tree& t, const RankedAlphabet& src, const RankedAlphabet& bin);

/// Inverse of bin_encode_seq; throws std::invalid_argument on trees outside
/// the image.
std::vector<Tree> bin_decode_seq(const Tree& enc, const RankedAlphabet& bin,
                                 const RankedAlphabet& src);
Tree bin_decode(const Tree& enc, const RankedAlphabet& bin, const RankedAlphabet& src);

/// Automaton accepting exactly the encodings of single trees over the source
/// alphabet: states 0..max(m,1), initial 1, rules (j+1, f) -> (rank f, j)
/// and (0, bot) -> ().
Dtta bin_checker(const RankedAlphabet& src, AlphabetPtr bin);

}  // namespace treq

#endif
