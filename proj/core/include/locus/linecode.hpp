#pragma once

#include "locus/decoder.hpp"
#include "locus/gf.hpp"
#include "locus/rational.hpp"
#include "locus/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace locus::linecode {

using gf::Elem;
/// A point of GF(2^t)^n.
using Point = std::vector<Elem>;

/// Sparse multivariate polynomial over GF(2^t). General exponents are
/// supported (separating polynomials are products of linear forms); the
/// code's message space is the multilinear slice of total degree <= d.
class Poly {
  public:
    explicit Poly(int nvars) : nvars_(nvars) {}

    int nvars() const { return nvars_; }
    const std::map<std::vector<std::uint16_t>, Elem>& terms() const { return terms_; }

    void add_term(const gf::FieldParams& f, const std::vector<std::uint16_t>& expo, Elem c);
    Elem eval(const gf::FieldParams& f, const Point& p) const;
    Poly plus(const gf::FieldParams& f, const Poly& o) const;
    Poly times(const gf::FieldParams& f, const Poly& o) const;
    Poly scaled(const gf::FieldParams& f, Elem c) const;
    int total_degree() const;
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    static Poly constant(const gf::FieldParams& f, int nvars, Elem c);

  private:
    int nvars_;
    std::map<std::vector<std::uint16_t>, Elem> terms_;  // zero coefficients pruned
};

/// Canonical line: direction normalized (first nonzero coordinate = 1), base
/// the lexicographically least point on the line.
struct Line {
    Point base, dir;
    bool operator==(const Line&) const = default;
};

/// Parameters of the construction. Fixes the canonical line enumeration, the
/// S_L rule (the first d+1 points base + lambda_j dir along the canonical
/// field enumeration), and the multilinear message basis.
struct LineCodeParams {
    gf::FieldParams field;
    int nvars = 1;   // number of variables
    int degree = 0;  // d, with d < 2^t
    std::uint64_t num_points = 0;
    std::uint64_t block_bits = 0;  // 2^{t(d+1)}
    std::uint64_t num_lines = 0;
    std::uint64_t total_bits = 0;  // N = #L * block_bits
    int message_bits = 0;          // t * (n choose <= d)

    std::vector<Line> lines;  // sorted by (base rank, dir rank)
    std::vector<std::vector<int>> lines_through;        // point rank -> line indices
    std::vector<std::vector<std::uint16_t>> monomials;  // multilinear exponent masks

    int t() const { return field.t; }
    std::uint64_t field_size() const { return 1ull << field.t; }
};

/// d < 2^t required (interpolation needs d+1 distinct points on a line);
/// sizes are rejected beyond the budget.
std::shared_ptr<const LineCodeParams> mk_params(int t, int nvars, int degree,
                                                std::uint64_t max_total_bits = 1ull << 26);

std::uint64_t point_rank(const LineCodeParams& p, const Point& x);
Point point_at(const LineCodeParams& p, std::uint64_t rank);

/// The d+1 interpolation points of a line.
std::vector<Point> sl_points(const LineCodeParams& p, const Line& line);
/// All 2^t points of a line, in canonical lambda order.
std::vector<Point> line_points(const LineCodeParams& p, const Line& line);
/// Canonical line through two distinct points.
Line line_through(const LineCodeParams& p, const Point& a, const Point& b);
int line_index(const LineCodeParams& p, const Line& line);

/// Hadamard block entry: sum_j <v_j, pi(alpha_j)> over F_2, chunks of t bits.
int had_bit(const LineCodeParams& p, const std::vector<Elem>& alphas, std::uint64_t v);

/// Observation "codeobs": the block position whose bit equals
/// pi(alpha f(z))_i, built from Lagrange coefficients over S_L and the rows
/// of the multiplication matrices. z must lie on the line.
std::uint64_t interp_vector(const LineCodeParams& p, const Line& line, const Point& z, Elem alpha,
                            int i);

/// Evaluation-table view of the messages: bits -> multilinear polynomial in
/// the canonical monomial order, t bits (pi^-1) per coefficient.
Poly message_to_poly(const LineCodeParams& p, const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> poly_to_message(const LineCodeParams& p, const Poly& f);

/// Codeword of the line code, stored as the base polynomial plus sparse
/// corruption: flipped bit positions, whole-block overrides, per-line
/// erasures (erasures are the attack module's model). Immutable views of one
/// word may be shared across threads; mutation is construction-time only.
class LineCodeword {
  public:
    LineCodeword(std::shared_ptr<const LineCodeParams> params, Poly f);

    const LineCodeParams& params() const { return *params_; }
    const Poly& base_poly() const { return base_; }

    /// Block bit; throws on an erased line.
    int bit(std::uint64_t line, std::uint64_t v) const;
    bool line_erased(std::uint64_t line) const { return erased_.count(line) > 0; }

    void flip_bit(std::uint64_t line, std::uint64_t v);
    void flip_global(std::uint64_t pos);
    void override_block(std::uint64_t line, std::vector<std::uint8_t> bits);
    void erase_line(std::uint64_t line);

    /// Flip `count` distinct uniform global positions.
    void random_flips(std::uint64_t count, Rng& rng);

    std::uint64_t corruption_weight() const { return flips_.size(); }
    const std::set<std::uint64_t>& flips() const { return flips_; }
    const std::set<std::uint64_t>& erased_lines() const { return erased_; }
    const std::map<std::uint64_t, std::vector<std::uint8_t>>& overrides() const {
        return overrides_;
    }

  private:
    std::shared_ptr<const LineCodeParams> params_;
    Poly base_;
    std::vector<std::vector<Elem>> sl_values_;  // per line, f on S_L
    std::set<std::uint64_t> flips_;             // global bit positions
    std::map<std::uint64_t, std::vector<std::uint8_t>> overrides_;
    std::set<std::uint64_t> erased_;
};

LineCodeword encode(std::shared_ptr<const LineCodeParams> params, Poly f);
LineCodeword encode_message(std::shared_ptr<const LineCodeParams> params,
                            const std::vector<std::uint8_t>& bits);

/// Word text format: header {t, n, d}, the base message bits, sparse flip
/// list, erased lines, block overrides, optional dense dump. Bit-exact round
/// trip; a dense dump present on parse is verified against the
/// reconstruction.
std::string word_to_text(const LineCodeword& w, bool include_dense = false);
LineCodeword word_from_text(const std::string& text,
                            std::uint64_t max_total_bits = 1ull << 26);

/// BLR linearity test and self-correction against a bit oracle over
/// F_2^{t(d+1)} positions.
using BitReader = std::function<int(std::uint64_t)>;
bool blr_test(const LineCodeParams& p, const BitReader& g, Rng& rng);
int self_correct(const LineCodeParams& p, const BitReader& g, std::uint64_t v, Rng& rng);

struct DecodeResult {
    Outcome out;      // bit or bottom
    int queries = 0;  // exact deterministic function of (r1, r2, reuse)
};

/// Algorithm 1: recover pi(alpha* f(x*))_{i*}. reuse saves one query by
/// reusing the first consistency round's fresh point in the final read
/// (r1, r2 >= 1 required when on).
DecodeResult rldc_decode(const LineCodeword& word, const Point& xstar, Elem alphastar, int istar,
                         int r1, int r2, bool reuse, Rng& rng);

/// Algorithm 2: recover the block bit Had(f(S_{L*}))(v*); the inner RLDC
/// decoder runs at its default 15-query configuration. r2 >= 1.
DecodeResult rlcc_decode(const LineCodeword& word, int lstar, std::uint64_t vstar, int r1, int r2,
                         Rng& rng);

/// The soundness envelope max of Section 5.2 (reporting utility; the cube
/// roots make this a floating-point quantity).
double eta_bound(double epsilon, double delta, double d_over_n, int r1, int r2);

}  // namespace locus::linecode
