#include "locus/gf.hpp"

#include <bit>
#include <stdexcept>

namespace locus::gf {

int poly_degree(std::uint64_t p) {
    if (p == 0) throw std::invalid_argument("poly_degree: zero polynomial");
    return 63 - std::countl_zero(p);
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
    if (b == 0) throw std::invalid_argument("poly_mod: division by zero polynomial");
    const int db = poly_degree(b);
    while (a != 0 && poly_degree(a) >= db) {
        a ^= b << (poly_degree(a) - db);
    }
    return a;
}

std::optional<std::uint64_t> find_factor(std::uint64_t p) {
    const int d = poly_degree(p);
    if (d <= 0) return std::nullopt;
    for (int dd = 1; dd <= d / 2; ++dd) {
        // monic candidates of degree dd
        for (std::uint64_t low = 0; low < (1ULL << dd); ++low) {
            std::uint64_t cand = (1ULL << dd) | low;
            if (poly_mod(p, cand) == 0) return cand;
        }
    }
    return std::nullopt;
}

bool is_irreducible(std::uint64_t p) { return !find_factor(p).has_value(); }

std::uint64_t smallest_irreducible(int t) {
    for (std::uint64_t low = 1; low < (1ULL << t); low += 2) {
        // constant term 1 (a zero constant term means divisibility by x)
        std::uint64_t cand = (1ULL << t) | low;
        if (is_irreducible(cand)) return cand;
    }
    throw std::logic_error("smallest_irreducible: none found");  // unreachable
}

static std::string poly_str(std::uint64_t p) {
    std::string s;
    for (int i = poly_degree(p); i >= 0; --i) {
        if (!((p >> i) & 1)) continue;
        if (!s.empty()) s += "+";
        if (i == 0)
            s += "1";
        else if (i == 1)
            s += "x";
        else
            s += "x^" + std::to_string(i);
    }
    return s;
}

FieldParams mk_field(int t, std::optional<std::uint64_t> modulus) {
    if (t < 1 || t > 63) throw std::invalid_argument("mk_field: need 1 <= t <= 63");
    std::uint64_t m;
    if (modulus) {
        m = *modulus;
        if (m == 0 || poly_degree(m) != t)
            throw std::invalid_argument("mk_field: modulus degree != t");
        if (auto f = find_factor(m))
            throw std::invalid_argument("mk_field: modulus " + poly_str(m) +
                                        " is reducible, factor " + poly_str(*f));
    } else {
        m = smallest_irreducible(t);
    }
    return FieldParams{t, m};
}

Elem add(const FieldParams&, Elem a, Elem b) { return a ^ b; }

Elem mul(const FieldParams& f, Elem a, Elem b) {
    // shift-and-add with interleaved reduction; stays within t+1 bits
    const std::uint64_t top = 1ULL << f.t;
    Elem acc = 0;
    while (b) {
        if (b & 1) acc ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= f.modulus;
    }
    return acc;
}

Elem inv(const FieldParams& f, Elem a) {
    if (a == 0) throw std::domain_error("gf::inv(0)");
    // extended Euclid over F_2[x]
    std::uint64_t r0 = f.modulus, r1 = a;
    std::uint64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        // divide r0 by r1
        std::uint64_t q = 0, rem = r0;
        const int d1 = poly_degree(r1);
        while (rem != 0 && poly_degree(rem) >= d1) {
            const int shift = poly_degree(rem) - d1;
            q ^= 1ULL << shift;
            rem ^= r1 << shift;
        }
        // carryless multiply q*s1 (degrees stay below 2t < 128; 64 bits suffice
        // here because deg q + deg s1 < t in every Euclid step)
        std::uint64_t qs = 0, ss = s1;
        std::uint64_t qq = q;
        while (qq) {
            if (qq & 1) qs ^= ss;
            qq >>= 1;
            ss <<= 1;
        }
        std::uint64_t s2 = s0 ^ qs;
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r0 = gcd = 1 since modulus is irreducible and a != 0
    return poly_mod(s0, f.modulus);
}

std::vector<std::uint8_t> pi(const FieldParams& f, Elem a) {
    std::vector<std::uint8_t> bits(f.t);
    for (int i = 0; i < f.t; ++i) bits[i] = (a >> i) & 1;
    return bits;
}

Elem pi_inv(const FieldParams& f, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != f.t)
        throw std::invalid_argument("pi_inv: expected exactly " + std::to_string(f.t) + " bits");
    Elem a = 0;
    for (int i = 0; i < f.t; ++i)
        if (bits[i]) a |= 1ULL << i;
    return a;
}

MulMatrix mul_matrix(const FieldParams& f, Elem alpha) {
    // column j of M_alpha is pi(alpha * x^j); assemble rows as bitmasks
    MulMatrix m;
    m.t = f.t;
    m.rows.assign(f.t, 0);
    for (int j = 0; j < f.t; ++j) {
        Elem col = mul(f, alpha, 1ULL << j);
        for (int i = 0; i < f.t; ++i)
            if ((col >> i) & 1) m.rows[i] |= 1ULL << j;
    }
    return m;
}

std::uint8_t apply_row(const MulMatrix& m, int i, Elem beta) {
    return static_cast<std::uint8_t>(std::popcount(m.rows.at(i) & beta) & 1);
}

std::string to_string(const FieldParams& f) {
    return "GF(2^" + std::to_string(f.t) + ")/" + poly_str(f.modulus);
}

}  // namespace locus::gf
