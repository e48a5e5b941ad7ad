#pragma once

#include "locus/decoder.hpp"
#include "locus/smooth.hpp"

#include <optional>
#include <vector>

namespace locus::fool {

/// One fooling setup: a query set split into heavy and light halves, a target
/// functional v* outside the span of the light rows, the constraint value
/// sigma, and the base message b whose codeword gets corrupted.
struct FoolingInstance {
    LinearCode code;
    std::vector<int> Q, H, L;  // sorted; H and L partition Q
    Vec vstar;
    Scalar sigma = 0;
    Vec base_message;

    FoolingInstance(LinearCode code, std::vector<int> H, std::vector<int> L, Vec vstar,
                    Scalar sigma, Vec base_message);
};

/// Subspace analysis behind the success-probability bound:
///   V_0 = {C(b') : <v*,b'> = 0},  W_0 = V_0 with C(b')|_L = 0,
///   V = (V_0^perp)_{<=H} restricted to H,  W likewise for W_0.
/// V lies inside W and dim(W/V) <= min(|H|, |L|).
struct FoolingAnalysis {
    Subspace V, W;     // over coordinates H
    int quotient = 0;  // dim(W/V)
    Vec shift_witness; // b* with C(b*)|_L = C(b)|_L and <v*, b*> = sigma
};

FoolingAnalysis analyze(const FoolingInstance& inst);

/// Splice: y agrees with C(b) off heavy_global and with C(b') on heavy_global,
/// where b' is uniform on the hyperplane <v*, b'> = sigma. heavy_global
/// defaults to the instance's H and must satisfy H = Q cap heavy_global.
Vec sample_fooling_word(const FoolingInstance& inst, Rng& rng,
                        const std::vector<int>* heavy_global = nullptr);

/// Exact: fraction of hyperplane points b' whose splice is consistent with
/// some codeword that also satisfies the constraint. Lower bound:
/// |F|^{-dim(W/V)} from analyze (Claim "problowerbound").
Rat success_probability_exact(const FoolingInstance& inst, std::uint64_t budget = 1ull << 22);
Rat success_probability_lower_bound(const FoolingInstance& inst);
/// The headline bound |F|^{-min(|H|, |L|)}.
Rat headline_bound(const FoolingInstance& inst);

/// Corruption distribution of the Theorem 4.1 attack; enumerable, so exact
/// eval can average over it.
class FoolingAdversary : public Adversary {
  public:
    /// Corruptions supported on heavy_global; the spliced codeword C(b') has
    /// <v*, b'> != <v*, b>.
    FoolingAdversary(LinearCode code, std::vector<int> heavy_global);
    std::string name() const override { return "fooling"; }
    std::uint64_t pattern_count(const LinearCode& code, Target t, int radius) const override;
    Vec pattern_at(const LinearCode& code, const Vec& b, Target t, int radius,
                   std::uint64_t index) const override;
    Vec sample(const LinearCode& code, const Vec& b, Target t, int radius,
               Rng& rng) const override;

  private:
    LinearCode code_;
    std::vector<int> heavy_;
};

struct AttackResult {
    bool attacked = false;      // false: decoder had no non-smoothable mass
    Rat exact_error{0};         // error of the bad part at the witness
    Rat mean_error{0};          // exact mean over the corruption distribution
    Vec witness_y;
    Vec witness_bprime;
    Rat threshold{0};           // s_F(q) = |F|^{-floor(q/2)}
    std::vector<int> heavy;
    bool exact = true;
    std::uint64_t trials = 0;
};

/// Theorem 4.1 attack on the non-smoothable part of a nonadaptive decoder:
/// splice corruptions on the global heavy set, find the best received word
/// (ties resolved toward the lexicographically smallest y), assert the
/// measured error reaches s_F(q) (exactly in exact mode, within 3 standard
/// errors otherwise).
AttackResult attack_rldc(const NonadaptiveDecoder& dec, Target target, const Vec& b, Rat delta,
                         Rng& rng, std::uint64_t trials = 0,
                         std::uint64_t budget = 1ull << 22);

}  // namespace locus::fool
