#pragma once

#include "locus/codealg.hpp"
#include "locus/parallel.hpp"
#include "locus/rational.hpp"
#include "locus/rng.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace locus {

/// What the decoder is asked to recover: a message position i in [k]
/// (RLDC/LDC) or a codeword position u in [n] (RLCC/LCC).
struct Target {
    enum class Kind { Message, Codeword };
    Kind kind = Kind::Message;
    int index = 0;

    static Target message(int i) { return {Kind::Message, i}; }
    static Target codeword(int u) { return {Kind::Codeword, u}; }

    auto operator<=>(const Target&) const = default;
    std::string str() const {
        return (kind == Kind::Message ? "m" : "c") + std::to_string(index + 1);
    }
};

/// The vector v* whose pairing with the message the decoder must output:
/// e_i for message targets, the generator row v_u for codeword targets.
Vec target_vector(const LinearCode& code, Target t);

/// The true answer on message b: b_i, or C(b)_u.
Scalar target_truth(const LinearCode& code, const Vec& b, Target t);

/// Decoder output: a field value or the abort symbol.
struct Outcome {
    static constexpr Scalar kBottomRaw = 0xffffffffu;
    Scalar raw = kBottomRaw;

    static Outcome bottom() { return Outcome{}; }
    static Outcome of(Scalar v) { return Outcome{v}; }
    bool is_bottom() const { return raw == kBottomRaw; }
    Scalar value() const { return raw; }
    auto operator<=>(const Outcome&) const = default;
    std::string str() const { return is_bottom() ? "bot" : std::to_string(raw); }
};

/// Exact distribution over outcomes (over the decoder's coins).
struct OutcomeDist {
    std::map<Outcome, Rat> mass;

    Rat prob(Outcome o) const {
        auto it = mass.find(o);
        return it == mass.end() ? Rat(0) : it->second;
    }
    Rat truth_mass(Scalar truth) const { return prob(Outcome::of(truth)); }
    Rat bottom_mass() const { return prob(Outcome::bottom()); }
    /// Mass outside {truth, bottom}: the (relaxed) soundness-error event.
    Rat wrong_mass(Scalar truth) const {
        Rat w(0);
        for (const auto& [o, p] : mass)
            if (!o.is_bottom() && o.value() != truth) w += p;
        return w;
    }
    void add(Outcome o, const Rat& p) { mass[o] += p; }
};

/// Distribution over query sets, exact rational weights summing to 1.
struct QueryDistribution {
    /// Sorted deduplicated sets with positive weights.
    std::vector<std::pair<std::vector<int>, Rat>> entries;

    static QueryDistribution make(std::vector<std::pair<std::vector<int>, Rat>> raw);
    int max_query_size() const;
    Rat coordinate_probability(int j) const;  // Pr[j in Q]
};

/// Fact "canonical"/"canon-linear": bottom iff z is not a restriction of any
/// codeword; otherwise the consistency-forced value sum_j c_j z_j where
/// sum_j c_j v_j = v*. Throws (never guesses) if v* is outside the span of the
/// queried rows, which a validated decoder rules out at construction.
Outcome canonical_decode(const LinearCode& code, Target t, const std::vector<int>& Q,
                         const Vec& z);

/// Query decision tree: internal nodes read one coordinate and branch per
/// field value; leaves carry a value, bottom, or the all-n global-decode
/// fallback. No coordinate repeats on any root-to-leaf path; at most q query
/// layers.
struct DecisionTree {
    struct Node {
        bool leaf = true;
        int query = -1;                 // internal only
        std::vector<int> children;      // internal only, one per scalar
        Outcome label = Outcome::bottom();  // leaf only
        bool global_decode = false;         // leaf only
    };
    std::vector<Node> nodes;  // root at index 0

    static DecisionTree single_leaf(Outcome label);
};

void validate_tree(const DecisionTree& tree, const LinearCode& code, int q);

struct TreeRun {
    std::vector<int> queries;  // ordered root-to-leaf
    Vec view;                  // values read, aligned with queries
    int leaf = -1;             // leaf node index
};

/// Deterministic root-to-leaf walk reading word at each node's index.
TreeRun run_tree(const DecisionTree& tree, const Vec& word);

/// Exact draw from rational weights summing to 1.
std::size_t sample_weighted(const std::vector<Rat>& weights, Rng& rng);

/// A randomized local decoder bound to a code: exact outcome distribution on
/// any fixed word, plus a sampling path. Immutable after construction.
class Decoder {
  public:
    virtual ~Decoder() = default;
    virtual const LinearCode& code() const = 0;
    virtual std::vector<Target> targets() const = 0;
    virtual int max_queries() const = 0;
    virtual OutcomeDist outcome_dist(const Vec& y, Target t) const = 0;
    virtual Outcome run(const Vec& y, Target t, Rng& rng, int* queries = nullptr) const = 0;
};

/// Nonadaptive decoder: per-target query distribution plus a decoding rule.
///   Canonical: the relaxed rule (may output bottom).
///   Linear:    a fixed per-set linear functional (never bottom) -- the shape
///              of an extracted LDC decoder.
/// Construction validates perfect completeness: every supported set must
/// determine <v*, b>.
class NonadaptiveDecoder : public Decoder {
  public:
    enum class Rule { Canonical, Linear };

    NonadaptiveDecoder(LinearCode code, std::map<Target, QueryDistribution> dists,
                       Rule rule = Rule::Canonical);

    const LinearCode& code() const override { return code_; }
    std::vector<Target> targets() const override;
    int max_queries() const override { return q_; }
    OutcomeDist outcome_dist(const Vec& y, Target t) const override;
    Outcome run(const Vec& y, Target t, Rng& rng, int* queries = nullptr) const override;

    Rule rule() const { return rule_; }
    const QueryDistribution& dist(Target t) const;
    const std::map<Target, QueryDistribution>& dists() const { return dists_; }

    std::string to_text() const;
    static NonadaptiveDecoder from_text(const LinearCode& code, const std::string& text);

  private:
    struct Entry {
        std::vector<int> set;
        Rat weight;
        Mat test_basis;   // dual basis of C|_Q (canonical rule)
        Vec decode_coeff; // c with sum c_j v_j = v*, aligned with set
    };
    Outcome decode_entry(const Entry& e, const Vec& y) const;

    LinearCode code_;
    std::map<Target, QueryDistribution> dists_;
    Rule rule_;
    int q_ = 0;
    std::map<Target, std::vector<Entry>> entries_;
};

/// Observation "expthreshold": run t independent copies, output sigma iff all
/// copies agree on sigma, else bottom.
class RepeatDecoder : public Decoder {
  public:
    RepeatDecoder(std::shared_ptr<const Decoder> inner, int t);
    const LinearCode& code() const override { return inner_->code(); }
    std::vector<Target> targets() const override { return inner_->targets(); }
    int max_queries() const override { return t_ * inner_->max_queries(); }
    OutcomeDist outcome_dist(const Vec& y, Target t) const override;
    Outcome run(const Vec& y, Target t, Rng& rng, int* queries = nullptr) const override;

  private:
    std::shared_ptr<const Decoder> inner_;
    int t_;
};

/// Corruption strategy: produces words y with hamming(y, C(b)) <= radius.
/// Exact mode needs an enumerable pattern space.
class Adversary {
  public:
    virtual ~Adversary() = default;
    virtual std::string name() const = 0;
    virtual std::uint64_t pattern_count(const LinearCode& code, Target t, int radius) const = 0;
    virtual Vec pattern_at(const LinearCode& code, const Vec& b, Target t, int radius,
                           std::uint64_t index) const = 0;
    virtual Vec sample(const LinearCode& code, const Vec& b, Target t, int radius,
                       Rng& rng) const = 0;
};

/// Every y with hamming(y, C(b)) <= radius; samples weight-exactly-radius
/// uniform flips.
class ExhaustiveRadiusAdversary : public Adversary {
  public:
    std::string name() const override { return "exhaustive_radius"; }
    std::uint64_t pattern_count(const LinearCode&, Target, int radius) const override;
    Vec pattern_at(const LinearCode&, const Vec& b, Target, int radius,
                   std::uint64_t index) const override;
    Vec sample(const LinearCode&, const Vec& b, Target, int radius, Rng& rng) const override;
};

/// Overrides a fixed set of positions with fixed values (clamped to radius at
/// construction).
class FixedSetAdversary : public Adversary {
  public:
    FixedSetAdversary(std::vector<int> positions, Vec values);
    std::string name() const override { return "fixed_set"; }
    std::uint64_t pattern_count(const LinearCode&, Target, int radius) const override;
    Vec pattern_at(const LinearCode&, const Vec& b, Target, int radius,
                   std::uint64_t index) const override;
    Vec sample(const LinearCode&, const Vec& b, Target, int radius, Rng& rng) const override;

  private:
    std::vector<int> positions_;
    Vec values_;
};

struct EvalWitness {
    Target target;
    Vec b, y;
};

struct EvalReport {
    bool exact = true;
    Rat completeness{1};
    Rat soundness_error{0};
    double mean_error = 0.0;      // MC: mean per-trial wrong probability
    double mean_halfwidth = 0.0;  // 3 standard errors
    int q_max = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::optional<EvalWitness> witness;
};

struct EvalOptions {
    enum class Mode { Exact, MonteCarlo };
    Mode mode = Mode::Exact;
    Rat delta{0};             // corruption budget fraction; radius = floor(delta*n)
    std::uint64_t trials = 0; // MonteCarlo
    std::uint64_t seed = 0;
    std::uint64_t budget = 1ull << 22;  // exact enumeration cap
};

/// Completeness: min over (target, b) of P[output = truth] on C(b).
/// Soundness:    max over (target, b, y) of P[output outside {truth, bottom}],
/// with (b, y) enumerated exactly in Exact mode and sampled in MonteCarlo mode
/// (decoder coins are always enumerated exactly). Witness reports the argmax.
EvalReport eval(const Decoder& dec, const Adversary& adv, const EvalOptions& opt);

int radius_of(Rat delta, int n);

}  // namespace locus
