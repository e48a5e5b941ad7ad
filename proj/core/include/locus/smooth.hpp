#pragma once

#include "locus/decoder.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace locus::smooth {

/// Heavy/light split of [n] for one target: j is heavy iff Pr[j in Q] exceeds
/// q/(delta n) strictly. |H| <= delta n by the counting bound, asserted.
struct HeavyLightPartition {
    Target target;
    std::vector<int> heavy, light;  // sorted; disjoint; union = [n]
    Rat threshold;                  // q/(delta n)
};

HeavyLightPartition heavy_light(const QueryDistribution& dist, int q, Rat delta, int n,
                                Target target);

/// Q is smoothable for the target iff v* lies in the span of the light rows of Q.
bool is_smoothable(const LinearCode& code, const std::vector<int>& Q,
                   const std::vector<int>& light, const Vec& vstar);

/// Theorem 4.1 decomposition of one nonadaptive decoder.
struct SmoothExtraction {
    /// Trimmed smoothable part (Linear rule on Q cap L_i); targets with
    /// p_good = 0 are absent here and listed in `flagged`.
    std::optional<NonadaptiveDecoder> ldc_part;
    /// Conditioned non-smoothable part (canonical rule); absent if every set
    /// of every target is smoothable.
    std::optional<NonadaptiveDecoder> rldc_part;
    std::map<Target, Rat> p_good;
    std::map<Target, HeavyLightPartition> partitions;
    std::vector<Target> flagged;  // p_good = 0
};

SmoothExtraction extract_smooth(const NonadaptiveDecoder& dec, Rat delta);

/// max over targets and coordinates of Pr[query j]; eta = 1/(n * result).
Rat smoothness(const NonadaptiveDecoder& dec);

/// Fact "smoothtoldc" certificate: (q, eta*epsilon, 1, epsilon)-LDC.
struct LdcCertificate {
    int q = 0;
    Rat radius_fraction;  // eta * epsilon
    Rat completeness{1};
    Rat soundness;        // epsilon
};

/// Checks the smoothness precondition (<= 1/(eta n), rejection names the
/// offending coordinate) and returns the certificate. verify additionally
/// runs an exhaustive eval at the certified radius.
LdcCertificate smooth_to_ldc(const NonadaptiveDecoder& dec, Rat eta, Rat epsilon);
EvalReport verify_ldc_certificate(const NonadaptiveDecoder& dec, const LdcCertificate& cert,
                                  std::uint64_t budget = 1ull << 22);

/// Appendix B: pairwise-disjoint q-sparse vectors, each decoding the target
/// exactly on every codeword.
struct Matching {
    Target target;
    std::vector<Vec> vectors;  // length-n, <= q nonzeros each
};

/// Greedy exhaustive search in (support size, lexicographic support, values)
/// order; maximal under that order. Budget caps the number of candidate
/// (support, value) probes.
Matching find_matchings(const LinearCode& code, Target target, int q,
                        std::uint64_t budget = 1ull << 24);

/// Uniform over the matching's vectors; output = <v, y restricted to supp(v)>.
class MatchingDecoder : public Decoder {
  public:
    MatchingDecoder(LinearCode code, std::vector<Matching> matchings);
    const LinearCode& code() const override { return code_; }
    std::vector<Target> targets() const override;
    int max_queries() const override { return q_; }
    OutcomeDist outcome_dist(const Vec& y, Target t) const override;
    Outcome run(const Vec& y, Target t, Rng& rng, int* queries = nullptr) const override;

    const Matching& matching(Target t) const;

  private:
    LinearCode code_;
    std::map<Target, Matching> matchings_;
    int q_ = 0;
};

/// Strong-soundness bound of the Appendix B lemma for a matching decoder:
/// error <= q * Delta / (delta n) with delta = q |H_i| / n. Checked
/// exhaustively for all corruptions of weight <= floor(delta n / q).
struct StrongSoundnessCheck {
    Rat bound_delta;       // delta = q |H_i| / n (the smallest over targets)
    int checked_radius = 0;
    bool holds = false;
    Rat worst_ratio;       // max over (b, y) of error / (q Delta / (delta n))
};

StrongSoundnessCheck check_strong_soundness(const MatchingDecoder& dec,
                                            std::uint64_t budget = 1ull << 22);

}  // namespace locus::smooth
