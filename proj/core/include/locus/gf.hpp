#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locus::gf {

/// Element of GF(2^t) in the polynomial basis: bit i is the coefficient of x^i.
using Elem = std::uint64_t;

/// GF(2^t) description: extension degree plus a verified-irreducible modulus
/// (t+1 coefficient bits, bit t always set). Immutable after construction.
struct FieldParams {
    int t = 1;
    std::uint64_t modulus = 0b11;  // x + 1

    bool operator==(const FieldParams&) const = default;
};

/// Degree of a nonzero F_2[x] polynomial given as a bitmask.
int poly_degree(std::uint64_t p);

/// Remainder of a mod b over F_2[x]; b != 0.
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b);

/// Trial division against all polynomials of degree <= deg/2.
/// On failure returns a nontrivial factor.
std::optional<std::uint64_t> find_factor(std::uint64_t p);
bool is_irreducible(std::uint64_t p);

/// Lexicographically smallest (as a bitmask) irreducible polynomial of degree t.
std::uint64_t smallest_irreducible(int t);

/// t >= 1 and t <= 63; a supplied modulus must have degree t and be
/// irreducible, otherwise the rejection names a nontrivial factor.
FieldParams mk_field(int t, std::optional<std::uint64_t> modulus = std::nullopt);

Elem add(const FieldParams& f, Elem a, Elem b);
Elem mul(const FieldParams& f, Elem a, Elem b);
Elem inv(const FieldParams& f, Elem a);  // a != 0

/// pi: coefficient bits of a, least degree first. Always exactly t bits.
std::vector<std::uint8_t> pi(const FieldParams& f, Elem a);

/// pi^-1: bits must have exactly t entries.
Elem pi_inv(const FieldParams& f, const std::vector<std::uint8_t>& bits);

/// M_alpha: row i applied to pi(beta) yields pi(alpha*beta)_i.
/// Rows stored as t-bit masks.
struct MulMatrix {
    int t = 0;
    std::vector<std::uint64_t> rows;
};

MulMatrix mul_matrix(const FieldParams& f, Elem alpha);

/// <row i of m, pi(beta)> over F_2.
std::uint8_t apply_row(const MulMatrix& m, int i, Elem beta);

std::string to_string(const FieldParams& f);

}  // namespace locus::gf
