#include "locus/fool.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace locus::fool {

static bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

FoolingInstance::FoolingInstance(LinearCode code_in, std::vector<int> H_in, std::vector<int> L_in,
                                 Vec vstar_in, Scalar sigma_in, Vec base)
    : code(std::move(code_in)),
      H(std::move(H_in)),
      L(std::move(L_in)),
      vstar(std::move(vstar_in)),
      sigma(sigma_in),
      base_message(std::move(base)) {
    std::sort(H.begin(), H.end());
    std::sort(L.begin(), L.end());
    Q.clear();
    std::merge(H.begin(), H.end(), L.begin(), L.end(), std::back_inserter(Q));
    if (std::adjacent_find(Q.begin(), Q.end()) != Q.end())
        throw std::invalid_argument("FoolingInstance: H and L overlap");
    for (int j : Q)
        if (j < 0 || j >= code.n()) throw std::invalid_argument("FoolingInstance: index range");
    if (static_cast<int>(vstar.size()) != code.k())
        throw std::invalid_argument("FoolingInstance: |vstar| != k");
    if (static_cast<int>(base_message.size()) != code.k())
        throw std::invalid_argument("FoolingInstance: |b| != k");
    // the lemma's hypothesis
    bool in = L.empty() ? is_zero(vstar) : in_span(code.field(), vstar, L, code).has_value();
    if (in)
        throw std::invalid_argument(
            "FoolingInstance: v* lies in the span of the light rows; hypothesis violated");
}

FoolingAnalysis analyze(const FoolingInstance& inst) {
    const Field& f = inst.code.field();
    const int k = inst.code.k();
    const int n = inst.code.n();

    // V_0 = C(ker v*), W_0 = C(ker [v*; rows_L])
    Mat cons_v{inst.vstar};
    Mat cons_w{inst.vstar};
    for (int j : inst.L) cons_w.push_back(inst.code.row(j));

    auto image_of_kernel = [&](const Mat& cons) {
        Mat ker = kernel_basis(f, cons, k);
        Mat span;
        for (const auto& b : ker) span.push_back(encode(inst.code, b));
        return make_subspace(f, n, std::move(span));
    };
    Subspace v0 = image_of_kernel(cons_v);
    Subspace w0 = image_of_kernel(cons_w);

    FoolingAnalysis out;
    out.V = restrict_to(support_subcode(dual(v0), inst.H), inst.H);
    out.W = restrict_to(support_subcode(dual(w0), inst.H), inst.H);
    out.quotient = quotient_dim(out.W, out.V);  // verifies V inside W

    const int cap = static_cast<int>(std::min(inst.H.size(), inst.L.size()));
    if (out.quotient > cap)
        throw std::logic_error("analyze: dim(W/V) exceeds min(|H|, |L|)");

    // b* with C(b*)|_L = C(b)|_L and <v*, b*> = sigma; exists by the
    // independence hypothesis
    Vec xbase = encode(inst.code, inst.base_message);
    Mat sys;
    Vec rhs;
    for (int j : inst.L) {
        sys.push_back(inst.code.row(j));
        rhs.push_back(xbase[j]);
    }
    sys.push_back(inst.vstar);
    rhs.push_back(inst.sigma);
    auto bstar = solve_linear(f, sys, rhs);
    if (!bstar) throw std::logic_error("analyze: shift witness system unsolvable");
    out.shift_witness = *bstar;
    return out;
}

static Vec splice(const LinearCode& code, const Vec& base_word, const Vec& bprime,
                  const std::vector<int>& heavy) {
    Vec y = base_word;
    Vec xprime = encode(code, bprime);
    for (int j : heavy) y[j] = xprime[j];
    return y;
}

Vec sample_fooling_word(const FoolingInstance& inst, Rng& rng,
                        const std::vector<int>* heavy_global) {
    const std::vector<int>& hg = heavy_global ? *heavy_global : inst.H;
    if (heavy_global) {
        // consistency: H = Q cap heavy_global, L = Q \ heavy_global
        for (int j : inst.Q) {
            bool in_hg = std::binary_search(hg.begin(), hg.end(), j);
            bool in_h = std::binary_search(inst.H.begin(), inst.H.end(), j);
            if (in_hg != in_h)
                throw std::invalid_argument("sample_fooling_word: heavy_global disagrees with H");
        }
    }
    Vec bprime = random_codeword_constrained(inst.code, inst.vstar, inst.sigma, rng);
    return splice(inst.code, encode(inst.code, inst.base_message), bprime, hg);
}

/// Enumerate the hyperplane {b : <v*, b> = sigma}: particular + kernel combos.
struct Hyperplane {
    Vec particular;
    Mat kernel;
    std::uint64_t count(const Field& f) const {
        std::uint64_t c = 1;
        for (std::size_t i = 0; i < kernel.size(); ++i) c *= f.size();
        return c;
    }
    Vec at(const Field& f, std::uint64_t index) const {
        Vec b = particular;
        Vec coeffs = unrank_vec(f, index, kernel.size());
        for (std::size_t i = 0; i < kernel.size(); ++i) add_scaled(f, b, coeffs[i], kernel[i]);
        return b;
    }
};

static Hyperplane hyperplane(const LinearCode& code, const Vec& vstar, Scalar sigma) {
    const Field& f = code.field();
    auto part = solve_linear(f, Mat{vstar}, Vec{sigma});
    if (!part) throw std::invalid_argument("hyperplane: infeasible constraint");
    return Hyperplane{*part, kernel_basis(f, Mat{vstar}, code.k())};
}

Rat success_probability_exact(const FoolingInstance& inst, std::uint64_t budget) {
    const Field& f = inst.code.field();
    space_size_checked(f, inst.code.k(), budget);

    Hyperplane hp = hyperplane(inst.code, inst.vstar, inst.sigma);
    const std::uint64_t total = hp.count(f);
    Vec xbase = encode(inst.code, inst.base_message);

    // consistency system: C(b'')|_Q = z and <v*, b''> = sigma
    std::uint64_t good = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        Vec bprime = hp.at(f, i);
        Vec y = splice(inst.code, xbase, bprime, inst.H);
        Mat sys;
        Vec rhs;
        for (int j : inst.Q) {
            sys.push_back(inst.code.row(j));
            rhs.push_back(y[j]);
        }
        sys.push_back(inst.vstar);
        rhs.push_back(inst.sigma);
        if (solve_linear(f, sys, rhs)) ++good;
    }
    return Rat(static_cast<long long>(good), static_cast<long long>(total));
}

Rat success_probability_lower_bound(const FoolingInstance& inst) {
    return inv_pow(inst.code.field().size(), static_cast<unsigned>(analyze(inst).quotient));
}

Rat headline_bound(const FoolingInstance& inst) {
    return inv_pow(inst.code.field().size(),
                   static_cast<unsigned>(std::min(inst.H.size(), inst.L.size())));
}

// ---- adversary ----

FoolingAdversary::FoolingAdversary(LinearCode code, std::vector<int> heavy_global)
    : code_(std::move(code)), heavy_(std::move(heavy_global)) {
    std::sort(heavy_.begin(), heavy_.end());
}

std::uint64_t FoolingAdversary::pattern_count(const LinearCode& code, Target, int) const {
    std::uint64_t plane = 1;
    for (int i = 0; i < code.k() - 1; ++i) plane *= code.field().size();
    return plane * (code.field().size() - 1);
}

Vec FoolingAdversary::pattern_at(const LinearCode& code, const Vec& b, Target t, int radius,
                                 std::uint64_t index) const {
    if (static_cast<int>(heavy_.size()) > radius)
        throw std::logic_error("FoolingAdversary: heavy set exceeds the corruption budget");
    const Field& f = code.field();
    Vec vstar = target_vector(code, t);
    Scalar truth = dot(f, vstar, b);
    std::uint64_t plane_count = 1;
    for (int i = 0; i < code.k() - 1; ++i) plane_count *= f.size();
    std::uint64_t sig_idx = index / plane_count;
    std::uint64_t pt_idx = index % plane_count;
    Scalar sigma = sig_idx < truth ? static_cast<Scalar>(sig_idx)
                                   : static_cast<Scalar>(sig_idx + 1);
    Hyperplane hp = hyperplane(code, vstar, sigma);
    Vec bprime = hp.at(f, pt_idx);
    return splice(code, encode(code, b), bprime, heavy_);
}

Vec FoolingAdversary::sample(const LinearCode& code, const Vec& b, Target t, int radius,
                             Rng& rng) const {
    std::uint64_t count = pattern_count(code, t, radius);
    return pattern_at(code, b, t, radius, rng.below64(count));
}

// ---- Theorem 4.1 attack ----

AttackResult attack_rldc(const NonadaptiveDecoder& dec, Target target, const Vec& b, Rat delta,
                         Rng& rng, std::uint64_t trials, std::uint64_t budget) {
    const LinearCode& code = dec.code();
    const Field& f = code.field();
    const int q = dec.max_queries();
    const QueryDistribution& dist = dec.dist(target);
    smooth::HeavyLightPartition part = smooth::heavy_light(dist, q, delta, code.n(), target);
    Vec vstar = target_vector(code, target);
    Scalar truth = dot(f, vstar, b);

    // the non-smoothable ("bad") part, conditioned
    std::vector<std::pair<std::vector<int>, Rat>> bad;
    Rat p_bad(0);
    for (const auto& [set, w] : dist.entries) {
        if (!smooth::is_smoothable(code, set, part.light, vstar)) {
            bad.emplace_back(set, w);
            p_bad += w;
        }
    }
    AttackResult out;
    out.heavy = part.heavy;
    out.threshold = inv_pow(f.size(), static_cast<unsigned>(q / 2));
    if (bad.empty()) {
        out.attacked = false;  // already smooth; nothing to attack
        return out;
    }
    for (auto& [set, w] : bad) w /= p_bad;

    Vec xbase = encode(code, b);
    auto error_of = [&](const Vec& y) {
        Rat err(0);
        for (const auto& [set, w] : bad) {
            Vec z(set.size());
            for (std::size_t i = 0; i < set.size(); ++i) z[i] = y[set[i]];
            Outcome o = canonical_decode(code, target, set, z);
            if (!o.is_bottom() && o.value() != truth) err += w;
        }
        return err;
    };

    std::uint64_t msg_space = 1;
    bool fits = true;
    for (int i = 0; i < code.k(); ++i) {
        if (msg_space > budget / f.size()) { fits = false; break; }
        msg_space *= f.size();
    }

    bool have = false;
    Rat mean(0);
    if (fits && trials == 0) {
        out.exact = true;
        std::uint64_t plane_count = msg_space / f.size();
        std::uint64_t total = plane_count * (f.size() - 1);
        for (std::uint64_t sig_idx = 0; sig_idx < f.size() - 1; ++sig_idx) {
            Scalar sigma = sig_idx < truth ? static_cast<Scalar>(sig_idx)
                                           : static_cast<Scalar>(sig_idx + 1);
            Hyperplane hp = hyperplane(code, vstar, sigma);
            for (std::uint64_t i = 0; i < plane_count; ++i) {
                Vec bprime = hp.at(f, i);
                Vec y = splice(code, xbase, bprime, part.heavy);
                Rat err = error_of(y);
                mean += err;
                if (!have || err > out.exact_error ||
                    (err == out.exact_error && y < out.witness_y)) {
                    out.exact_error = err;
                    out.witness_y = y;
                    out.witness_bprime = bprime;
                    have = true;
                }
            }
        }
        mean /= Rat(static_cast<long long>(total));
        out.mean_error = mean;
        if (out.exact_error < out.threshold)
            throw std::logic_error("attack_rldc: exact error " + rat_str(out.exact_error) +
                                   " below the threshold " + rat_str(out.threshold));
    } else {
        out.exact = false;
        out.trials = trials ? trials : 1024;
        double mean_d = 0;
        for (std::uint64_t i = 0; i < out.trials; ++i) {
            // sigma uniform over F minus the truth, then uniform on that hyperplane
            std::uint64_t d = rng.below(f.size() - 1);
            Scalar sigma = d < truth ? static_cast<Scalar>(d) : static_cast<Scalar>(d + 1);
            FoolingInstance inst(code, part.heavy, {},  // L empty: splice off Q handled below
                                 vstar, sigma, b);
            Vec y = sample_fooling_word(inst, rng);
            Rat err = error_of(y);
            mean_d += to_double(err);
            if (!have || err > out.exact_error ||
                (err == out.exact_error && y < out.witness_y)) {
                out.exact_error = err;
                out.witness_y = y;
                have = true;
            }
        }
        mean_d /= static_cast<double>(out.trials);
        out.mean_error = Rat(static_cast<long long>(mean_d * 1000000), 1000000);
        double thr = to_double(out.threshold);
        double se = std::sqrt(thr * (1.0 - thr) / static_cast<double>(out.trials));
        if (mean_d + 3.0 * se < thr)
            throw std::logic_error("attack_rldc: sampled mean error is 3 standard errors below "
                                   "the threshold");
    }
    out.attacked = true;
    return out;
}

}  // namespace locus::fool
