#include "doctest.h"

#include "helpers.hpp"
#include "locus/codealg.hpp"

#include <set>
#include <stdexcept>

using namespace locus;
using locus::testing::code32;
using locus::testing::random_code;

TEST_SUITE_BEGIN("codealg");

TEST_CASE("encode on the [3,2] example") {
    LinearCode c = code32();
    CHECK(encode(c, {0, 0}) == Vec{0, 0, 0});
    CHECK(encode(c, {1, 0}) == Vec{1, 0, 1});
    CHECK(encode(c, {1, 1}) == Vec{1, 1, 0});
    CHECK_THROWS_AS(encode(c, {1}), std::invalid_argument);
}

TEST_CASE("construction rejects rank-deficient generators") {
    CHECK_THROWS_AS(LinearCode(Field::f2(), 2, 3, Mat{{1, 0}, {1, 0}, {1, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(LinearCode(Field::f2(), 2, 1, Mat{{1, 0}}), std::invalid_argument);
}

TEST_CASE("in_span on the [3,2] example") {
    LinearCode c = code32();
    Vec e1{1, 0};
    auto c1 = in_span(c.field(), e1, {0}, c);
    REQUIRE(c1);
    CHECK(*c1 == Vec{1});
    auto c23 = in_span(c.field(), e1, {1, 2}, c);
    REQUIRE(c23);
    CHECK(*c23 == Vec{1, 1});  // v_2 + v_3 = (1,0)
    CHECK(!in_span(c.field(), e1, {1}, c));
}

TEST_CASE("restrict_code on the [3,2] example") {
    LinearCode c = code32();
    CHECK(restrict_code(c, {0, 1}).dim() == 2);
    Subspace all = restrict_code(c, {0, 1, 2});
    CHECK(all.dim() == 2);
    CHECK(contains(all, {1, 1, 0}));
    CHECK(!contains(all, {1, 1, 1}));  // parity z1+z2+z3 = 0
    CHECK(restrict_code(c, {0}).dim() == 1);
    CHECK_THROWS_AS(restrict_code(c, {}), std::invalid_argument);
}

TEST_CASE("restriction equals brute-force enumeration") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Field f = trial % 2 ? Field::prime(3) : Field::f2();
        LinearCode c = random_code(f, 2 + trial % 2, 5, rng);
        std::vector<int> S;
        for (int j = 0; j < c.n(); ++j)
            if (rng.coin()) S.push_back(j);
        if (S.empty()) S.push_back(0);
        Subspace r = restrict_code(c, S);
        std::set<Vec> brute, from_basis;
        for (std::uint64_t bi = 0; bi < message_count(c); ++bi) {
            Vec x = encode(c, message_at(c, bi));
            Vec xs(S.size());
            for (std::size_t i = 0; i < S.size(); ++i) xs[i] = x[S[i]];
            brute.insert(xs);
        }
        for (const Vec& v : brute) CHECK(contains(r, v));
        std::uint64_t size = 1;
        for (int i = 0; i < r.dim(); ++i) size *= f.size();
        CHECK(size == brute.size());
    }
}

TEST_CASE("dual and support_subcode examples") {
    LinearCode c = code32();
    Subspace d = dual(code_subspace(c));
    CHECK(d.dim() == 1);
    CHECK(contains(d, {1, 1, 1}));
    Subspace sub = support_subcode(d, {0, 1});
    CHECK(sub.dim() == 0);
}

TEST_CASE("dual is an involution on random subspaces") {
    Rng rng(22);
    Field f = Field::f2();
    for (int trial = 0; trial < 100; ++trial) {
        Mat span(4, Vec(8));
        for (auto& row : span)
            for (auto& s : row) s = rng.below(2);
        Subspace x = make_subspace(f, 8, span);
        CHECK(dual(dual(x)) == x);
    }
}

TEST_CASE("Fact restriction-support, exhaustively over S") {
    Rng rng(33);
    for (int trial = 0; trial < 6; ++trial) {
        Field f = trial % 2 ? Field::prime(3) : Field::f2();
        int n = 5 + trial % 3;
        LinearCode c = random_code(f, 3, n, rng);
        Subspace cs = code_subspace(c);
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> S;
            for (int j = 0; j < n; ++j)
                if ((mask >> j) & 1) S.push_back(j);
            Subspace lhs = dual(restrict_code(c, S));
            Subspace rhs = restrict_to(support_subcode(dual(cs), S), S);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("quotient_dim") {
    Field f = Field::f2();
    Subspace full = make_subspace(f, 2, Mat{{1, 0}, {0, 1}});
    Subspace zero = make_subspace(f, 2, Mat{});
    CHECK(quotient_dim(full, full) == 0);
    CHECK(quotient_dim(full, zero) == 2);
    Subspace linev = make_subspace(f, 2, Mat{{1, 1}});
    CHECK(quotient_dim(full, linev) == 1);
    Subspace other = make_subspace(f, 2, Mat{{1, 0}});
    CHECK_THROWS_AS(quotient_dim(linev, other), std::invalid_argument);
}

TEST_CASE("random_codeword_constrained") {
    LinearCode c = code32();
    Rng rng(44);
    SUBCASE("sigma = 1 splits evenly over the hyperplane") {
        int count10 = 0, count11 = 0;
        for (int i = 0; i < 10000; ++i) {
            Vec b = random_codeword_constrained(c, {1, 0}, 1, rng);
            REQUIRE(b[0] == 1);
            (b[1] == 0 ? count10 : count11)++;
        }
        // 4 sigma of binomial(10^4, 1/2)
        CHECK(std::abs(count10 - 5000) < 200);
        CHECK(count10 + count11 == 10000);
    }
    SUBCASE("sigma = 0 forces the coordinate") {
        for (int i = 0; i < 100; ++i)
            CHECK(random_codeword_constrained(c, {1, 0}, 0, rng)[0] == 0);
    }
    SUBCASE("vstar = (1,1)") {
        for (int i = 0; i < 100; ++i) {
            Vec b = random_codeword_constrained(c, {1, 1}, 0, rng);
            CHECK(((b == Vec{0, 0}) || (b == Vec{1, 1})));
        }
    }
    SUBCASE("infeasible constraint") {
        CHECK_THROWS_AS(random_codeword_constrained(c, {0, 0}, 1, rng), std::invalid_argument);
    }
}

TEST_CASE("Fact indep-rows witness: unfixed combinations are free") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        Field f = trial % 2 ? Field::prime(3) : Field::f2();
        LinearCode c = random_code(f, 3, 5, rng);
        for (std::uint32_t mask = 0; mask < (1u << 5); ++mask) {
            std::vector<int> Q;
            for (int j = 0; j < 5; ++j)
                if ((mask >> j) & 1) Q.push_back(j);
            Vec v(3);
            for (auto& s : v) s = rng.below(f.size());
            if (in_span(f, v, Q, c)) continue;
            // every sigma is attainable while agreeing with b* = 0 on Q
            for (Scalar sigma = 0; sigma < f.size(); ++sigma) {
                bool found = false;
                for (std::uint64_t bi = 0; bi < message_count(c) && !found; ++bi) {
                    Vec b = message_at(c, bi);
                    if (dot(f, v, b) != sigma) continue;
                    Vec x = encode(c, b);
                    bool agrees = true;
                    for (int j : Q) agrees &= (x[j] == 0);
                    found = agrees;
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("serialization round trip is bit-exact") {
    Rng rng(66);
    for (const Field& f : {Field::f2(), Field::prime(5), Field::gf2ext(gf::mk_field(2))}) {
        LinearCode c = random_code(f, 3, 6, rng);
        std::string text = code_to_text(c);
        LinearCode back = code_from_text(text);
        CHECK(back == c);
        CHECK(code_to_text(back) == text);
    }
}

TEST_SUITE_END();
