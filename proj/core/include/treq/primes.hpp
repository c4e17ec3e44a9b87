#ifndef TREQ_PRIMES_HPP_
#define TREQ_PRIMES_HPP_

#include <cstdint>
#include <random>

namespace treq {

using Rng = std::mt19937_64;

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(uint64_t n);

/// Uniform prime from [2, hi); throws std::runtime_error after max_tries
/// composite draws. hi must be > 3.
uint64_t sample_prime(Rng& rng, uint64_t hi, int max_tries = 100000);

}  // namespace treq

#endif
