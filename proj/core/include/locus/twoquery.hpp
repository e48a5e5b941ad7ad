#pragma once

#include "locus/decoder.hpp"

#include <map>
#include <optional>
#include <vector>

namespace locus::twoquery {

enum class Mode { RLDC, RLCC };

/// S_i: coordinates j whose generator row is a nonzero multiple of the
/// target's vector (v_j = alpha e_i, or v_j = alpha v_u). Zero rows and zero
/// target vectors fix nothing.
struct FixedSet {
    Target target;
    std::vector<std::pair<int, Scalar>> members;  // (j, alpha)

    bool contains(int j) const {
        for (const auto& [m, a] : members)
            if (m == j) return true;
        return false;
    }
};

FixedSet fixed_set(const LinearCode& code, Target target);

enum class PairClass { HadamardLike, RepetitionLike, DegenerateSingle };

/// Three-way split of a query pair: both fixed (repetition), neither fixed
/// (Hadamard), exactly one fixed (treat as the single fixed query).
PairClass classify_pair(const LinearCode& code, Target target, int j, int l);

/// X = {targets with |S_i| > delta n / 2}; |X| <= floor(2/delta) asserted,
/// as is mutual disjointness of the fixed sets.
std::vector<Target> big_targets(const LinearCode& code, Rat delta, Mode mode);

struct Reduction {
    Mode mode = Mode::RLDC;
    LinearCode code_prime;
    NonadaptiveDecoder decoder;        // LDC/LCC decoder for code_prime
    std::vector<int> X;                // original target indices dropped/zeroed
    std::vector<int> message_perm;     // RLDC: new message position -> original index
    int k_prime = 0;
    Rat radius;                        // delta/2 (exposed, not claimed tight)
    Rat soundness;                     // the input decoder's s, carried through
    std::map<Target, Rat> hadamard_mass;  // per surviving original target
};

/// Theorem "2rldc-lower-bound" construction. The decoder must be a validated
/// 2-query nonadaptive decoder for `code` whose targets cover every message
/// index (RLDC) or codeword index (RLCC). `s` is the caller-measured
/// soundness of the input decoder at radius delta; the output certificate is
/// (2, delta/2, 1, s).
Reduction reduce(const LinearCode& code, const NonadaptiveDecoder& dec, Rat delta, Mode mode,
                 Rat s);

}  // namespace locus::twoquery
