#pragma once

#include "locus/linecode.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace locus::attack {

using linecode::Elem;
using linecode::Line;
using linecode::LineCodeParams;
using linecode::Point;
using linecode::Poly;

/// Line-erasure pattern; for the through-point pattern, the erased count is
/// (2^{tn} - 1)/(2^t - 1) and the fraction exactly 2^{-n(t-1)}.
struct ErasurePattern {
    std::set<std::uint64_t> erased_lines;
    Rat fraction{0};
};

ErasurePattern erase_through(const LineCodeParams& p, const Point& xstar);

/// Claim "separatingpoly": a degree-|lines| polynomial with g(x) = 1 that
/// vanishes identically on every given line. Each per-line linear form uses
/// the lexicographically least v with <dir, v> = 0 and <x - base, v> != 0;
/// x on any of the lines is a precondition violation.
Poly separating_poly(const LineCodeParams& p, const Point& x, const std::vector<Line>& lines);

/// Oracle of the line-query model: a query returns f restricted to the line
/// (all 2^t values in canonical lambda order) or absent when erased. Queries
/// beyond the budget are a structural violation of the <= d-query model.
class LineOracle {
  public:
    LineOracle(const LineCodeParams& p, const Poly& f, const std::set<std::uint64_t>& erased,
               int max_queries);

    std::optional<std::vector<Elem>> query(int line_index);
    const std::vector<int>& queried() const { return queried_; }
    const std::vector<int>& queried_answered() const { return answered_; }

  private:
    const LineCodeParams& p_;
    const Poly& f_;
    const std::set<std::uint64_t>& erased_;
    int budget_;
    std::vector<int> queried_;   // every query, in order
    std::vector<int> answered_;  // non-erased queries only
};

/// Deterministic <= d-line-query decoder trying to output pi(alpha* f(x*))_i*.
class LineQueryDecoder {
  public:
    virtual ~LineQueryDecoder() = default;
    virtual std::string name() const = 0;
    virtual int run(LineOracle& oracle, const LineCodeParams& p, const Point& xstar,
                    Elem alphastar, int istar) const = 0;
};

/// Outputs a fixed bit without querying.
class ConstantLineDecoder : public LineQueryDecoder {
  public:
    explicit ConstantLineDecoder(int bit) : bit_(bit) {}
    std::string name() const override { return "constant" + std::to_string(bit_); }
    int run(LineOracle&, const LineCodeParams&, const Point&, Elem, int) const override {
        return bit_;
    }

  private:
    int bit_;
};

/// Queries the first d canonical lines avoiding x*, solves for a consistent
/// polynomial (lexicographically least solution), and reads the bit off it.
class InterpolatingLineDecoder : public LineQueryDecoder {
  public:
    std::string name() const override { return "interpolating"; }
    int run(LineOracle& oracle, const LineCodeParams& p, const Point& xstar, Elem alphastar,
            int istar) const override;
};

/// Like the interpolating decoder, but queries lines close to x* (through its
/// neighbors) and outputs the majority bit over all consistent polynomials,
/// ties toward 0.
class GreedyConsistencyLineDecoder : public LineQueryDecoder {
  public:
    std::string name() const override { return "greedy-consistency"; }
    int run(LineOracle& oracle, const LineCodeParams& p, const Point& xstar, Elem alphastar,
            int istar) const override;
};

/// Sanity decoder: reads a line through x* directly. Succeeds always without
/// erasures; with the through-point pattern its query is erased.
class ThroughLineDecoder : public LineQueryDecoder {
  public:
    std::string name() const override { return "through-line"; }
    int run(LineOracle& oracle, const LineCodeParams& p, const Point& xstar, Elem alphastar,
            int istar) const override;
};

struct ExperimentResult {
    Rat success{0};
    bool exact = true;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// E_f[ Pr[decoder outputs pi(alpha* f(x*))_{i*}] ] against the through-x*
/// erasure pattern (or none). Exact mode enumerates the message polynomial
/// space. alpha* must be nonzero for the headline 1/2 claim.
ExperimentResult attack_experiment(const LineQueryDecoder& dec,
                                   std::shared_ptr<const LineCodeParams> params,
                                   const Point& xstar, Elem alphastar, int istar, bool erase,
                                   bool exact, std::uint64_t trials, std::uint64_t seed,
                                   std::uint64_t budget = 1ull << 22);

/// The partition argument behind the 1/2 bound: for every message polynomial
/// f and every beta, f + beta * g (g built from the non-erased lines queried
/// on f) follows the same queries and yields the same output. Returns the
/// number of violations (0 expected).
std::uint64_t coset_symmetry_violations(const LineQueryDecoder& dec,
                                        std::shared_ptr<const LineCodeParams> params,
                                        const Point& xstar, Elem alphastar, int istar,
                                        std::uint64_t budget = 1ull << 22);

}  // namespace locus::attack
