#include "treq/affine_engine.hpp"

#include <cmath>

namespace treq {

namespace {

void require_affine_eligible(const Transducer& M) {
    if (M.mode() != OutputMode::Numeric)
        throw std::invalid_argument("affine engine needs a numeric transducer");
    ClassifyFlags flags = classify(M);
    if (!flags.total) throw std::invalid_argument("affine engine needs a total transducer");
    if (M.param_count() > 0 && !flags.non_self_nested)
        throw std::invalid_argument(
            "affine engine refuses self-nested transducers; use the invariant engine");
}

}  // namespace

AffineVerdict decide_affine(const Transducer& M, const Dtta& A, State q, State q2) {
    require_affine_eligible(M);
    FieldQ field;
    TransducerSemantics<FieldQ> sem(M, field);
    AffineFunctional h{sem.coord(q, 0), sem.coord(q2, 0)};
    auto out = affine_check<FieldQ>(sem, A, {h});
    AffineVerdict v;
    v.equivalent = out.equivalent;
    v.witness = out.witness;
    v.insertions = out.closure.insertions;
    for (auto& [p, basis] : out.closure.basis) {
        v.basis_dims[p] = basis.empty() ? -1 : basis.linear_dim();
        if (out.equivalent)
            for (const auto& [vec, tree] : basis.elements()) v.elements[p].emplace_back(vec, tree);
    }
    return v;
}

Int length_bound(const Transducer& M, long depth) {
    long long h = max_constant(M);
    Int base = transducer_size(M) * (M.input().max_rank() + 1);
    Int exponent = 1;
    const Int cap = Int(1) << 20;
    for (long i = 0; i < depth; ++i) {
        exponent *= base;
        if (exponent > cap) {
            exponent = cap;
            break;
        }
    }
    if (exponent > cap) exponent = cap;
    Int bound;
    Int base_h = static_cast<long>(h) + 1;
    mpz_pow_ui(bound.get_mpz_t(), base_h.get_mpz_t(), exponent.get_ui());
    if (bound < 1) bound = 1;
    return bound;
}

AffineVerdict decide_affine_mod(const Transducer& M, const Dtta& A, State q, State q2,
                                uint64_t prime) {
    require_affine_eligible(M);
    FieldZp field(prime);
    TransducerSemantics<FieldZp> sem(M, field);
    AffineFunctional h{sem.coord(q, 0), sem.coord(q2, 0)};
    auto out = affine_check<FieldZp>(sem, A, {h});
    AffineVerdict v;
    v.equivalent = out.equivalent;
    v.witness = out.witness;
    v.insertions = out.closure.insertions;
    for (auto& [p, basis] : out.closure.basis)
        v.basis_dims[p] = basis.empty() ? -1 : basis.linear_dim();
    return v;
}

ModularVerdict decide_modular(const Transducer& M, const Dtta& A, State q, State q2, int trials,
                              uint64_t seed) {
    require_affine_eligible(M);
    // Depth bound for the trees backing basis vectors, then the bit length D
    // of their outputs; primes come from [2, min(D e^D, 2^64)).
    long n = M.state_count();
    long l = M.param_count();
    long depth = ((l + 1) * n + 1) * A.state_count();
    Int bound = length_bound(M, depth);
    double dbits = static_cast<double>(mpz_sizeinbase(bound.get_mpz_t(), 2));
    uint64_t hi = UINT64_MAX;
    if (dbits < 40.0) {
        double v = dbits * std::exp(dbits);
        if (v < static_cast<double>(UINT64_MAX)) hi = static_cast<uint64_t>(v);
    }
    if (hi < 100) hi = 100;

    Rng rng(seed);
    ModularVerdict out;
    for (int t = 0; t < trials; ++t) {
        uint64_t p = sample_prime(rng, hi);
        out.primes_tried.push_back(p);
        AffineVerdict v;
        try {
            v = decide_affine_mod(M, A, q, q2, p);
        } catch (const PrimeUnusable&) {
            --t;  // resample
            continue;
        }
        if (!v.equivalent) {
            // re-verify the witness exactly before reporting
            std::vector<Rat> zeros(M.param_count(), Rat(0));
            auto a = eval_unary(M, q, *v.witness, zeros);
            auto b = eval_unary(M, q2, *v.witness, zeros);
            if (a && b && *a != *b) {
                out.probably_equivalent = false;
                out.witness = v.witness;
                out.failing_prime = p;
                return out;
            }
            // cannot happen for integer semantics; treat as a failed trial
        }
    }
    out.probably_equivalent = true;
    return out;
}

}  // namespace treq
