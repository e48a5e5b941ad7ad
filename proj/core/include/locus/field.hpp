#pragma once

#include "locus/gf.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace locus {

/// Field element in a runtime-described finite field. Prime fields store the
/// residue, GF(2^t) fields store the polynomial-basis bitmask.
using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

/// Runtime descriptor for a finite scalar field: F_p (p prime, p <= 251) or
/// GF(2^t) (t <= 16, so |F| <= 2^16 as the code-algebra layer requires).
/// Immutable; cheap to copy.
class Field {
  public:
    enum class Kind { Prime, Ext2 };

    Field() : Field(Kind::Prime, 2, gf::FieldParams{}) {}  // F_2

    static Field prime(std::uint32_t p);
    static Field gf2ext(const gf::FieldParams& params);
    /// F_2 as a prime field (the common case).
    static Field f2() { return prime(2); }

    Kind kind() const { return kind_; }
    std::uint32_t size() const { return size_; }
    const gf::FieldParams& ext_params() const;

    Scalar zero() const { return 0; }
    Scalar one() const { return 1; }
    Scalar add(Scalar a, Scalar b) const;
    Scalar sub(Scalar a, Scalar b) const;
    Scalar neg(Scalar a) const;
    Scalar mul(Scalar a, Scalar b) const;
    Scalar inv(Scalar a) const;  // a != 0

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    /// Serialization tag, e.g. "p2", "p5", "e2:7" (GF(2^2) mod bitmask 7).
    std::string tag() const;
    static Field parse(const std::string& tag);

    std::string describe() const;

  private:
    Field(Kind k, std::uint32_t size, gf::FieldParams p) : kind_(k), size_(size), ext_(p) {}
    Kind kind_;
    std::uint32_t size_;
    gf::FieldParams ext_;
};

/// Inner product over the field; sizes must match.
Scalar dot(const Field& f, const Vec& a, const Vec& b);

/// y += c * x
void add_scaled(const Field& f, Vec& y, Scalar c, const Vec& x);

/// Index <-> vector enumeration of F^len in lexicographic order
/// (coordinate 0 most significant).
Vec unrank_vec(const Field& f, std::uint64_t index, std::size_t len);
std::uint64_t rank_vec(const Field& f, const Vec& v);

/// |F|^len with overflow check against the configured budget.
std::uint64_t space_size_checked(const Field& f, std::size_t len, std::uint64_t budget);

}  // namespace locus
