#ifndef TREQ_CERTIFICATE_HPP_
#define TREQ_CERTIFICATE_HPP_

#include <string>

#include "treq/pipeline.hpp"

namespace treq {

/// Line-oriented verdict record with stable keys; certificates embed the
/// canonical polynomial text form. Deterministic for fixed inputs and seed.
std::string verdict_to_string(const Verdict& v);

/// Inverse of verdict_to_string. Witness trees stay textual until a verifier
/// supplies the alphabet.
Verdict verdict_from_string(const std::string& text);

}  // namespace treq

#endif
