#pragma once

#include "locus/linalg.hpp"
#include "locus/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace locus {

/// Linear code C : F^k -> F^n given by the n generator rows v_j in F^k,
/// so C(b)_j = <v_j, b>. Injectivity (rank k) is checked at construction.
class LinearCode {
  public:
    LinearCode(Field field, int k, int n, Mat gen_rows);

    const Field& field() const { return field_; }
    int k() const { return k_; }
    int n() const { return n_; }
    const Mat& rows() const { return rows_; }
    const Vec& row(int j) const { return rows_.at(j); }

    bool operator==(const LinearCode& o) const {
        return field_ == o.field_ && k_ == o.k_ && n_ == o.n_ && rows_ == o.rows_;
    }

  private:
    Field field_;
    int k_, n_;
    Mat rows_;
};

/// C(b); |b| = k.
Vec encode(const LinearCode& code, const Vec& b);

/// Coefficients over {v_j : j in S} expressing v, in the order of S; absent
/// when v is outside the span.
std::optional<Vec> in_span(const Field& f, const Vec& v, const std::vector<int>& S,
                           const LinearCode& code);

/// C|_S as a subspace of F^S (order of S respected). S nonempty.
Subspace restrict_code(const LinearCode& code, const std::vector<int>& S);

/// The image of C as a subspace of F^n.
Subspace code_subspace(const LinearCode& code);

/// Message b' uniform on {b : <vstar, b> = sigma}; particular solution plus a
/// uniform kernel element. Errors when vstar = 0 and sigma != 0.
Vec random_codeword_constrained(const LinearCode& code, const Vec& vstar, Scalar sigma, Rng& rng);

/// All |F|^k messages in rank order (budget-checked).
std::uint64_t message_count(const LinearCode& code, std::uint64_t budget = 1ull << 24);
Vec message_at(const LinearCode& code, std::uint64_t index);

/// Recover the message of a codeword, or absent if y is not in the code.
std::optional<Vec> decode_full(const LinearCode& code, const Vec& y);

/// Hamming distance.
int hamming(const Vec& a, const Vec& b);

/// Text format:
///   field <tag>; k <k>; n <n>
/// followed by n generator rows of k space-separated scalars.
/// Bit-exact round trip.
std::string code_to_text(const LinearCode& code);
LinearCode code_from_text(const std::string& text);
LinearCode code_from_stream(std::istream& in);

}  // namespace locus
