#include "doctest.h"

#include "locus/gf.hpp"
#include "locus/rng.hpp"

#include <stdexcept>

using namespace locus;
using namespace locus::gf;

TEST_SUITE_BEGIN("gf");

TEST_CASE("mk_field picks canonical moduli") {
    CHECK(mk_field(1).modulus == 0b11);          // x + 1
    CHECK(mk_field(2).modulus == 0b111);         // x^2 + x + 1, the only degree-2 irreducible
    CHECK(mk_field(3).modulus == 0b1011);        // x^3 + x + 1
    CHECK(mk_field(8).modulus == 0b100011011);   // x^8 + x^4 + x^3 + x + 1
}

TEST_CASE("mk_field rejects reducible moduli naming a factor") {
    // x^2 + 1 = (x+1)^2
    CHECK_THROWS_WITH_AS(mk_field(2, 0b101), doctest::Contains("x+1"), std::invalid_argument);
    CHECK_THROWS_AS(mk_field(3, 0b1111), std::invalid_argument);  // x^3+x^2+x+1
    CHECK_THROWS_AS(mk_field(0), std::invalid_argument);
    CHECK_THROWS_AS(mk_field(2, 0b11), std::invalid_argument);  // degree mismatch
}

TEST_CASE("GF(4) arithmetic table") {
    FieldParams f4 = mk_field(2);
    const Elem w = 0b10;  // the generator x
    CHECK(add(f4, w, w) == 0);              // characteristic 2
    CHECK(mul(f4, w, w) == 0b11);           // x^2 = x + 1
    CHECK(inv(f4, w) == 0b11);              // w * (w+1) = 1
    CHECK(mul(f4, w, add(f4, w, 1)) == 1);
    CHECK_THROWS_AS(inv(f4, 0), std::domain_error);
}

TEST_CASE("pi and pi_inv are mutually inverse F_2-linear bijections") {
    FieldParams f4 = mk_field(2);
    CHECK(pi(f4, 0) == std::vector<std::uint8_t>{0, 0});
    for (Elem a = 0; a < 4; ++a) CHECK(pi_inv(f4, pi(f4, a)) == a);
    for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b) {
            auto pa = pi(f4, a), pb = pi(f4, b), ps = pi(f4, add(f4, a, b));
            for (int i = 0; i < 2; ++i) CHECK(ps[i] == (pa[i] ^ pb[i]));
        }
    CHECK_THROWS_AS(pi_inv(f4, {0, 1, 0}), std::invalid_argument);
}

TEST_CASE("mul_matrix special values") {
    FieldParams f4 = mk_field(2);
    MulMatrix id = mul_matrix(f4, 1);
    CHECK(id.rows == std::vector<std::uint64_t>{0b01, 0b10});
    MulMatrix zero = mul_matrix(f4, 0);
    CHECK(zero.rows == std::vector<std::uint64_t>{0, 0});
    // columns of M_w: pi(w*1) = (0,1), pi(w*w) = (1,1)
    MulMatrix mw = mul_matrix(f4, 0b10);
    CHECK(apply_row(mw, 0, 1) == 0);
    CHECK(apply_row(mw, 1, 1) == 1);
    CHECK(apply_row(mw, 0, 0b10) == 1);
    CHECK(apply_row(mw, 1, 0b10) == 1);
}

TEST_CASE("mul_matrix realizes multiplication, exhaustively for t <= 4") {
    for (int t = 1; t <= 4; ++t) {
        FieldParams f = mk_field(t);
        for (Elem a = 0; a < (1ull << t); ++a) {
            MulMatrix m = mul_matrix(f, a);
            for (Elem b = 0; b < (1ull << t); ++b) {
                Elem ab = mul(f, a, b);
                for (int i = 0; i < t; ++i) CHECK(apply_row(m, i, b) == ((ab >> i) & 1));
            }
        }
    }
}

TEST_CASE("mul_matrix is a homomorphism, exhaustively for t <= 4") {
    for (int t = 1; t <= 4; ++t) {
        FieldParams f = mk_field(t);
        for (Elem a = 0; a < (1ull << t); ++a)
            for (Elem b = 0; b < (1ull << t); ++b) {
                MulMatrix ma = mul_matrix(f, a), mb = mul_matrix(f, b);
                MulMatrix mab = mul_matrix(f, mul(f, a, b));
                // (M_a M_b) row i applied to pi(c) must equal M_ab row i
                for (Elem c = 0; c < (1ull << t); ++c) {
                    for (int i = 0; i < t; ++i) {
                        // apply M_b to pi(c), then row i of M_a
                        Elem bc = mul(f, b, c);
                        CHECK(apply_row(ma, i, bc) == apply_row(mab, i, c));
                    }
                }
            }
    }
}

TEST_CASE("field axioms, exhaustively for t <= 3") {
    for (int t = 1; t <= 3; ++t) {
        FieldParams f = mk_field(t);
        const Elem size = 1ull << t;
        for (Elem a = 0; a < size; ++a) {
            if (a != 0) CHECK(mul(f, a, inv(f, a)) == 1);
            for (Elem b = 0; b < size; ++b) {
                CHECK(mul(f, a, b) == mul(f, b, a));
                for (Elem c = 0; c < size; ++c) {
                    CHECK(mul(f, mul(f, a, b), c) == mul(f, a, mul(f, b, c)));
                    CHECK(mul(f, a, add(f, b, c)) == add(f, mul(f, a, b), mul(f, a, c)));
                }
            }
        }
    }
}

TEST_CASE("field axioms, sampled for larger t") {
    for (int t : {8, 12, 16}) {
        FieldParams f = mk_field(t);
        Rng rng(0x5eed0000 + t);
        const Elem mask = (1ull << t) - 1;
        for (int i = 0; i < 100000; ++i) {
            Elem a = rng.next_u64() & mask;
            Elem b = rng.next_u64() & mask;
            Elem c = rng.next_u64() & mask;
            REQUIRE(mul(f, mul(f, a, b), c) == mul(f, a, mul(f, b, c)));
            REQUIRE(mul(f, a, add(f, b, c)) == add(f, mul(f, a, b), mul(f, a, c)));
            if (a != 0) REQUIRE(mul(f, a, inv(f, a)) == 1);
        }
    }
}

TEST_SUITE_END();
