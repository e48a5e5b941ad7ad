#include "doctest.h"

#include "helpers.hpp"
#include "locus/decoder.hpp"

#include <cstdlib>
#include <stdexcept>

using namespace locus;
using locus::testing::code32;
using locus::testing::make_dec;
using locus::testing::qd;

TEST_SUITE_BEGIN("decoder");

namespace {

/// Flips fixed coordinates by adding one (binary: a flip).
class FlipAdversary : public Adversary {
  public:
    explicit FlipAdversary(std::vector<int> positions) : positions_(std::move(positions)) {}
    std::string name() const override { return "flip"; }
    std::uint64_t pattern_count(const LinearCode&, Target, int) const override { return 1; }
    Vec pattern_at(const LinearCode& code, const Vec& b, Target, int,
                   std::uint64_t) const override {
        Vec y = encode(code, b);
        for (int j : positions_) y[j] = code.field().add(y[j], 1);
        return y;
    }
    Vec sample(const LinearCode& code, const Vec& b, Target t, int radius,
               Rng&) const override {
        return pattern_at(code, b, t, radius, 0);
    }

  private:
    std::vector<int> positions_;
};

}  // namespace

TEST_CASE("canonical_decode on the [3,2] example") {
    LinearCode c = code32();
    Target m1 = Target::message(0);
    CHECK(canonical_decode(c, m1, {1, 2}, {0, 1}) == Outcome::of(1));  // b_1 = z_2 + z_3
    CHECK(canonical_decode(c, m1, {0, 1, 2}, {1, 1, 1}) == Outcome::bottom());
    CHECK(canonical_decode(c, m1, {0}, {0}) == Outcome::of(0));
    // never guesses: v* outside the span is a logic error, not a value
    CHECK_THROWS_AS(canonical_decode(c, m1, {1}, {0}), std::logic_error);
}

TEST_CASE("decoder construction validates perfect completeness") {
    LinearCode c = code32();
    CHECK_THROWS_WITH_AS(
        make_dec(c, {{Target::message(0), qd({{{1}, Rat(1)}})}}),
        doctest::Contains("completeness violation"), std::invalid_argument);
}

TEST_CASE("canonical decoder never errs on codewords") {
    LinearCode c = code32();
    auto dec = make_dec(c, {{Target::message(0), qd({{{0}, Rat(1, 2)}, {{1, 2}, Rat(1, 2)}})},
                            {Target::message(1), qd({{{1}, Rat(1)}})},
                            {Target::codeword(2), qd({{{0, 1}, Rat(1)}})}});
    for (std::uint64_t bi = 0; bi < 4; ++bi) {
        Vec b = message_at(c, bi);
        Vec x = encode(c, b);
        for (Target t : dec.targets())
            CHECK(dec.outcome_dist(x, t).truth_mass(target_truth(c, b, t)) == Rat(1));
    }
}

TEST_CASE("eval: no corruption gives completeness 1") {
    LinearCode c = code32();
    auto dec = make_dec(c, {{Target::message(0), qd({{{1, 2}, Rat(1)}})}});
    EvalOptions opt;
    opt.delta = Rat(0);
    ExhaustiveRadiusAdversary adv;
    EvalReport rep = eval(dec, adv, opt);
    CHECK(rep.completeness == Rat(1));
    CHECK(rep.soundness_error == Rat(0));
    CHECK(rep.exact);
}

TEST_CASE("eval: flipping coordinate 2 fools the {2,3} reader completely") {
    LinearCode c = code32();
    auto dec = make_dec(c, {{Target::message(0), qd({{{1, 2}, Rat(1)}})}});
    EvalOptions opt;
    opt.delta = Rat(1, 3);
    FlipAdversary adv({1});
    EvalReport rep = eval(dec, adv, opt);
    // the {2,3} view stays codeword-consistent, so the output is 1 - b_1
    CHECK(rep.soundness_error == Rat(1));
    CHECK(dec.outcome_dist(adv.pattern_at(c, {0, 0}, Target::message(0), 1, 0),
                           Target::message(0)).bottom_mass() == Rat(0));
}

TEST_CASE("eval: mixing {1} and {2,3} halves the error") {
    LinearCode c = code32();
    auto dec = make_dec(
        c, {{Target::message(0), qd({{{0}, Rat(1, 2)}, {{1, 2}, Rat(1, 2)}})}});
    FlipAdversary adv({1});
    EvalOptions opt;
    opt.delta = Rat(1, 3);
    EvalReport rep = eval(dec, adv, opt);
    CHECK(rep.soundness_error == Rat(1, 2));

    // exhaustive single-coordinate corruption cannot do better either
    ExhaustiveRadiusAdversary ex;
    EvalReport rep2 = eval(dec, ex, opt);
    CHECK(rep2.soundness_error == Rat(1, 2));
    REQUIRE(rep2.witness);
    CHECK(hamming(rep2.witness->y, encode(c, rep2.witness->b)) == 1);
}

TEST_CASE("repeat_decoder") {
    LinearCode c = code32();
    auto base = std::make_shared<NonadaptiveDecoder>(make_dec(
        c, {{Target::message(0), qd({{{0}, Rat(1, 2)}, {{1, 2}, Rat(1, 2)}})}}));
    Target m1 = Target::message(0);

    SUBCASE("t = 1 reproduces the base distribution") {
        RepeatDecoder rep(base, 1);
        Vec y{1, 1, 0};
        CHECK(rep.outcome_dist(y, m1).mass == base->outcome_dist(y, m1).mass);
    }
    SUBCASE("error squares at t = 2 on a fixed (b, y)") {
        RepeatDecoder rep(base, 2);
        Vec y = encode(c, {0, 0});
        y[1] = 1;  // flip coordinate 2: base error exactly 1/2 here
        CHECK(base->outcome_dist(y, m1).wrong_mass(0) == Rat(1, 2));
        CHECK(rep.outcome_dist(y, m1).wrong_mass(0) == Rat(1, 4));
        // sampled run agrees within 3 sigma of 1/4
        Rng rng(7);
        int wrong = 0;
        const int trials = 10000;
        for (int i = 0; i < trials; ++i) {
            Outcome o = rep.run(y, m1, rng);
            wrong += (!o.is_bottom() && o.value() != 0);
        }
        double se = std::sqrt(0.25 * 0.75 / trials);
        CHECK(std::abs(wrong / double(trials) - 0.25) < 3 * se);
    }
    SUBCASE("completeness survives any t") {
        for (int t : {1, 2, 3}) {
            RepeatDecoder rep(base, t);
            for (std::uint64_t bi = 0; bi < 4; ++bi) {
                Vec b = message_at(c, bi);
                CHECK(rep.outcome_dist(encode(c, b), m1).truth_mass(b[0]) == Rat(1));
            }
        }
    }
    SUBCASE("exact repeat error is the per-symbol power sum") {
        // over F_3, wrong mass splits across symbols; the repeat error is
        // sum of per-symbol powers, not the power of the sum
        Field f3 = Field::prime(3);
        LinearCode c3(f3, 1, 2, Mat{{1}, {1}});
        auto d3 = std::make_shared<NonadaptiveDecoder>(
            make_dec(c3, {{Target::message(0), qd({{{0}, Rat(1, 2)}, {{1}, Rat(1, 2)}})}}));
        Vec y{1, 2};  // two distinct wrong answers for b = 0
        OutcomeDist base3 = d3->outcome_dist(y, m1);
        CHECK(base3.wrong_mass(0) == Rat(1));
        RepeatDecoder rep(d3, 2);
        OutcomeDist rd = rep.outcome_dist(y, m1);
        CHECK(rd.wrong_mass(0) == Rat(1, 4) + Rat(1, 4));
        CHECK(rd.bottom_mass() == Rat(1, 2));
    }
}

TEST_CASE("run_tree") {
    LinearCode c = code32();
    SUBCASE("single leaf ignores the word") {
        DecisionTree t = DecisionTree::single_leaf(Outcome::of(1));
        TreeRun r = run_tree(t, {0, 1, 0});
        CHECK(r.queries.empty());
        CHECK(t.nodes[r.leaf].label == Outcome::of(1));
    }
    SUBCASE("walk follows the read value") {
        DecisionTree t;
        t.nodes.push_back({false, 1, {1, 2}, Outcome::bottom(), false});
        t.nodes.push_back({true, -1, {}, Outcome::of(0), false});
        t.nodes.push_back({true, -1, {}, Outcome::of(1), false});
        TreeRun r = run_tree(t, {0, 1, 0});
        CHECK(r.queries == std::vector<int>{1});
        CHECK(r.view == Vec{1});
        CHECK(t.nodes[r.leaf].label == Outcome::of(1));
        validate_tree(t, c, 1);
    }
    SUBCASE("repeated index on a path is rejected") {
        DecisionTree t;
        t.nodes.push_back({false, 0, {1, 2}, Outcome::bottom(), false});
        t.nodes.push_back({false, 0, {3, 4}, Outcome::bottom(), false});
        t.nodes.push_back({true, -1, {}, Outcome::of(0), false});
        t.nodes.push_back({true, -1, {}, Outcome::of(0), false});
        t.nodes.push_back({true, -1, {}, Outcome::of(1), false});
        CHECK_THROWS_AS(validate_tree(t, c, 2), std::invalid_argument);
    }
}

TEST_CASE("Monte Carlo eval is identical for any worker count") {
    LinearCode c = code32();
    auto dec = make_dec(
        c, {{Target::message(0), qd({{{0}, Rat(1, 2)}, {{1, 2}, Rat(1, 2)}})}});
    EvalOptions opt;
    opt.mode = EvalOptions::Mode::MonteCarlo;
    opt.delta = Rat(1, 3);
    opt.trials = 500;
    opt.seed = 99;
    ExhaustiveRadiusAdversary adv;

    setenv("LOCUS_THREADS", "1", 1);
    EvalReport one = eval(dec, adv, opt);
    setenv("LOCUS_THREADS", "4", 1);
    EvalReport four = eval(dec, adv, opt);
    unsetenv("LOCUS_THREADS");

    CHECK(one.soundness_error == four.soundness_error);
    CHECK(one.mean_error == four.mean_error);
    REQUIRE(one.witness);
    REQUIRE(four.witness);
    CHECK(one.witness->y == four.witness->y);
}

TEST_CASE("decoder serialization round trip") {
    LinearCode c = code32();
    auto dec = make_dec(c, {{Target::message(0), qd({{{0}, Rat(1, 3)}, {{1, 2}, Rat(2, 3)}})},
                            {Target::codeword(2), qd({{{2}, Rat(1)}})}});
    std::string text = dec.to_text();
    NonadaptiveDecoder back = NonadaptiveDecoder::from_text(c, text);
    CHECK(back.to_text() == text);
    Vec y{1, 0, 1};
    CHECK(back.outcome_dist(y, Target::message(0)).mass ==
          dec.outcome_dist(y, Target::message(0)).mass);
}

TEST_SUITE_END();
