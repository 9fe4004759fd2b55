#pragma once

#include <loopkit/identities.hpp>
#include <loopkit/subloops.hpp>
#include <loopkit/table.hpp>

#include <string>
#include <utility>
#include <vector>

namespace loopkit {

struct OrderProfile {
    std::vector<long> orders;
    long exponent = 1;
};

/// Throws NotPowerAssociative.
OrderProfile order_profile(const LoopTable & loop);

/// {x : |x| divides k}.
ElementSet k_torsion(const LoopTable & loop, long k);
/// {x : |x| is a power of p}; p must be prime.
ElementSet primary_component(const LoopTable & loop, long p);

bool is_prime(long p);
std::vector<std::pair<long, int>> factorize(long n);

/// For coprime m, n: (r, s) with m r + n s = 1 and r the least non-negative solution.
std::pair<long, long> bezout(long m, long n);

struct DecompositionPart {
    std::string descriptor;
    Subloop part;
    /// Identity tags verified on the part.
    std::vector<std::string> verified;
};

struct Decomposition {
    std::vector<DecompositionPart> parts;
    LoopTable external;
    /// loop element -> index in external
    PermutationMap isomorphism;
    /// Power exponent realizing the projection onto each part.
    std::vector<long> projection_exponents;
};

/// Parts are the p-primary components for the primes dividing the exponent, in increasing order.
/// Needs a commutative diassociative loop; throws PreconditionFailed naming the violated hypothesis.
Decomposition primary_decomposition(const LoopTable & loop);

/// x^n central for every x. Witness variable x, lhs = x^n.
CheckResult central_power_report(const LoopTable & loop, long n);

/// C 2-part, Moufang 3-part and the abelian part of order prime to 6 (split per prime when
/// split_primes). Needs IP and CRIF; throws PreconditionFailed with the failing identity's witness.
Decomposition rif_decomposition(const LoopTable & loop, bool split_primes = false);

/// "key: value" lines: one "part:" line per part, then "iso:" lines x -> tuple.
std::string format_decomposition(const LoopTable & loop, const Decomposition & d);

} // namespace loopkit
