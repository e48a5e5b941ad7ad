#pragma once

#include "locus/decoder.hpp"

#include <map>
#include <optional>
#include <vector>

namespace locus::goldberg {

/// Adaptive decoder: per target, a distribution over query decision trees
/// with exact rational weights.
class AdaptiveDecoder : public Decoder {
  public:
    using TreeDist = std::vector<std::pair<DecisionTree, Rat>>;

    AdaptiveDecoder(LinearCode code, std::map<Target, TreeDist> trees, int q);

    const LinearCode& code() const override { return code_; }
    std::vector<Target> targets() const override;
    int max_queries() const override { return max_queries_; }
    OutcomeDist outcome_dist(const Vec& y, Target t) const override;
    Outcome run(const Vec& y, Target t, Rng& rng, int* queries = nullptr) const override;

    int q() const { return q_; }
    const std::map<Target, TreeDist>& trees() const { return trees_; }
    bool has_global_leaf() const { return has_global_; }

  private:
    LinearCode code_;
    std::map<Target, TreeDist> trees_;
    int q_;
    int max_queries_ = 0;
    bool has_global_ = false;
};

enum class LeafClass { Toxic, Nontoxic };

/// Definition "Toxic leaves": the view sigma on the ordered queries Q is
/// consistent with two codewords that disagree on the target; equivalently
/// sigma lies in C|_Q while v* is outside the span of the queried rows.
/// Inconsistent views are nontoxic (the canonical label is bottom).
LeafClass classify_leaf(const LinearCode& code, Target t, const std::vector<int>& Q,
                        const Vec& sigma);

/// Shift the input by a uniform codeword C(b~) and shift non-bottom answers
/// back. Materialized exactly: every pair (original tree, b~) becomes one
/// tree of weight w/|F|^k.
AdaptiveDecoder rerandomize(const AdaptiveDecoder& dec, std::uint64_t budget = 1ull << 22);

/// Position of one leaf inside a decoder.
struct LeafRef {
    Target target;
    int tree = 0;
    int node = 0;
};

/// Leaves whose label differs from their canonical relabeling, in a fixed
/// deterministic order (targets, then tree index, then node index).
std::vector<LeafRef> relabelable_leaves(const AdaptiveDecoder& dec);

/// Relabel a single leaf to its canonical label: the forced value on
/// consistent nontoxic views, bottom on inconsistent views, and the
/// global-decode fallback on toxic leaves.
AdaptiveDecoder relabel_one(const AdaptiveDecoder& dec, const LeafRef& ref);

/// Relabel every leaf; the result has completeness exactly 1.
AdaptiveDecoder relabel(const AdaptiveDecoder& dec);

/// Probability, over decoder coins, of reaching a global-decode (formerly
/// toxic) leaf on codeword input; the maximum over messages is returned and,
/// when pre-relabel completeness error eps is supplied, checked against
/// |F| eps / (|F|-1) (Lemma "toxic-rare").
Rat toxic_rate(const AdaptiveDecoder& relabeled, std::optional<Rat> eps = std::nullopt,
               std::uint64_t budget = 1ull << 22);

/// Lemma "nonadaptive-step" plus pruning: the query-set distribution of the
/// trees on a uniformly random codeword, toxic leaves removed and weights
/// renormalized, canonical decoding attached.
struct NonadaptiveConversion {
    NonadaptiveDecoder decoder;
    std::map<Target, Rat> toxic_mass;  // pruned mass per target
};

NonadaptiveConversion to_nonadaptive(const AdaptiveDecoder& relabeled,
                                     std::uint64_t budget = 1ull << 22);

/// s + (2 + 1/(|F|-1)) eps, the Theorem "stronger-goldberg" certificate.
Rat certified_soundness(const Field& f, Rat s, Rat eps);

struct PipelineResult {
    EvalReport before, after;
    Rat eps{0}, s{0};          // measured on the input decoder
    Rat toxic{0};              // toxic rate of the relabeled decoder
    Rat certificate{0};        // s + (2 + 1/(|F|-1)) eps
    NonadaptiveDecoder decoder;
};

/// rerandomize -> relabel -> prune/convert, with exact eval before and after
/// (exhaustive corruptions at radius floor(delta n)).
PipelineResult goldberg_pipeline(const AdaptiveDecoder& dec, Rat delta,
                                 std::uint64_t budget = 1ull << 22);

}  // namespace locus::goldberg
