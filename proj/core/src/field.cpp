#include "locus/field.hpp"

#include <stdexcept>

namespace locus {

static bool is_prime_u32(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Field Field::prime(std::uint32_t p) {
    if (!is_prime_u32(p) || p > 251)
        throw std::invalid_argument("Field::prime: need a prime p <= 251");
    return Field(Kind::Prime, p, gf::FieldParams{});
}

Field Field::gf2ext(const gf::FieldParams& params) {
    if (params.t > 16)
        throw std::invalid_argument("Field::gf2ext: t <= 16 required (|F| <= 2^16)");
    return Field(Kind::Ext2, 1u << params.t, params);
}

const gf::FieldParams& Field::ext_params() const {
    if (kind_ != Kind::Ext2) throw std::logic_error("ext_params on a prime field");
    return ext_;
}

Scalar Field::add(Scalar a, Scalar b) const {
    if (kind_ == Kind::Prime) return (a + b) % size_;
    return a ^ b;
}

Scalar Field::sub(Scalar a, Scalar b) const {
    if (kind_ == Kind::Prime) return (a + size_ - b) % size_;
    return a ^ b;
}

Scalar Field::neg(Scalar a) const {
    if (kind_ == Kind::Prime) return a == 0 ? 0 : size_ - a;
    return a;
}

Scalar Field::mul(Scalar a, Scalar b) const {
    if (kind_ == Kind::Prime) return (a * b) % size_;
    return static_cast<Scalar>(gf::mul(ext_, a, b));
}

Scalar Field::inv(Scalar a) const {
    if (a == 0) throw std::domain_error("Field::inv(0)");
    if (kind_ == Kind::Prime) {
        // Fermat
        Scalar r = 1, base = a;
        std::uint32_t e = size_ - 2;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    return static_cast<Scalar>(gf::inv(ext_, a));
}

bool Field::operator==(const Field& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::Prime) return size_ == o.size_;
    return ext_ == o.ext_;
}

std::string Field::tag() const {
    if (kind_ == Kind::Prime) return "p" + std::to_string(size_);
    return "e" + std::to_string(ext_.t) + ":" + std::to_string(ext_.modulus);
}

Field Field::parse(const std::string& tag) {
    if (tag.empty()) throw std::invalid_argument("Field::parse: empty tag");
    if (tag[0] == 'p') return prime(static_cast<std::uint32_t>(std::stoul(tag.substr(1))));
    if (tag[0] == 'e') {
        auto colon = tag.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("Field::parse: bad tag " + tag);
        int t = std::stoi(tag.substr(1, colon - 1));
        std::uint64_t mod = std::stoull(tag.substr(colon + 1));
        return gf2ext(gf::mk_field(t, mod));
    }
    throw std::invalid_argument("Field::parse: bad tag " + tag);
}

std::string Field::describe() const {
    if (kind_ == Kind::Prime) return "F_" + std::to_string(size_);
    return gf::to_string(ext_);
}

Scalar dot(const Field& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

void add_scaled(const Field& f, Vec& y, Scalar c, const Vec& x) {
    if (y.size() != x.size()) throw std::invalid_argument("add_scaled: length mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = f.add(y[i], f.mul(c, x[i]));
}

Vec unrank_vec(const Field& f, std::uint64_t index, std::size_t len) {
    Vec v(len);
    for (std::size_t i = len; i-- > 0;) {
        v[i] = static_cast<Scalar>(index % f.size());
        index /= f.size();
    }
    return v;
}

std::uint64_t rank_vec(const Field& f, const Vec& v) {
    std::uint64_t r = 0;
    for (Scalar s : v) r = r * f.size() + s;
    return r;
}

std::uint64_t space_size_checked(const Field& f, std::size_t len, std::uint64_t budget) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < len; ++i) {
        if (n > budget / f.size())
            throw std::runtime_error("enumeration budget exceeded: |F|^" + std::to_string(len) +
                                     " > " + std::to_string(budget));
        n *= f.size();
    }
    if (n > budget)
        throw std::runtime_error("enumeration budget exceeded");
    return n;
}

}  // namespace locus
