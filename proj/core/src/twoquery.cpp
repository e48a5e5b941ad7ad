#include "locus/twoquery.hpp"

#include <algorithm>
#include <stdexcept>

namespace locus::twoquery {

static bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

FixedSet fixed_set(const LinearCode& code, Target target) {
    const Field& f = code.field();
    FixedSet s;
    s.target = target;
    Vec vstar = target_vector(code, target);
    if (is_zero_vec(vstar)) return s;
    int pivot = 0;
    while (vstar[pivot] == 0) ++pivot;
    for (int j = 0; j < code.n(); ++j) {
        const Vec& vj = code.row(j);
        if (is_zero_vec(vj)) continue;
        Scalar alpha = f.mul(vj[pivot], f.inv(vstar[pivot]));
        if (alpha == 0) continue;
        Vec scaled(vstar.size());
        for (std::size_t c = 0; c < vstar.size(); ++c) scaled[c] = f.mul(alpha, vstar[c]);
        if (scaled == vj) s.members.emplace_back(j, alpha);
    }
    return s;
}

PairClass classify_pair(const LinearCode& code, Target target, int j, int l) {
    if (j == l) throw std::invalid_argument("classify_pair: j == l");
    FixedSet s = fixed_set(code, target);
    bool fj = s.contains(j), fl = s.contains(l);
    if (fj && fl) return PairClass::RepetitionLike;
    if (!fj && !fl) return PairClass::HadamardLike;
    return PairClass::DegenerateSingle;
}

static std::vector<Target> all_targets(const LinearCode& code, Mode mode) {
    std::vector<Target> ts;
    if (mode == Mode::RLDC)
        for (int i = 0; i < code.k(); ++i) ts.push_back(Target::message(i));
    else
        for (int u = 0; u < code.n(); ++u) ts.push_back(Target::codeword(u));
    return ts;
}

static std::vector<FixedSet> disjoint_fixed_sets(const LinearCode& code, Mode mode) {
    std::vector<FixedSet> sets;
    std::vector<int> owner(code.n(), -1);
    std::vector<Target> ts = all_targets(code, mode);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        FixedSet s = fixed_set(code, ts[i]);
        for (const auto& [j, alpha] : s.members) {
            if (owner[j] >= 0)
                throw std::logic_error(
                    "fixed sets are not mutually disjoint: coordinate " + std::to_string(j + 1) +
                    " is fixed by " + ts[owner[j]].str() + " and " + ts[i].str() +
                    " (proportional generator rows)");
            owner[j] = static_cast<int>(i);
        }
        sets.push_back(std::move(s));
    }
    return sets;
}

std::vector<Target> big_targets(const LinearCode& code, Rat delta, Mode mode) {
    if (delta <= Rat(0) || delta > Rat(1))
        throw std::invalid_argument("big_targets: need 0 < delta <= 1");
    Rat threshold = delta * code.n() / 2;
    std::vector<Target> X;
    for (const auto& s : disjoint_fixed_sets(code, mode)) {
        if (Rat(static_cast<long long>(s.members.size())) > threshold) X.push_back(s.target);
    }
    Rat cap = Rat(2) / delta;
    if (Rat(static_cast<long long>(X.size())) > Rat(cap.numerator() / cap.denominator()))
        throw std::logic_error("big_targets: |X| > floor(2/delta), counting bound violated");
    return X;
}

Reduction reduce(const LinearCode& code, const NonadaptiveDecoder& dec, Rat delta, Mode mode,
                 Rat s) {
    const Field& f = code.field();
    if (dec.max_queries() > 2) throw std::invalid_argument("reduce: decoder makes > 2 queries");

    std::vector<Target> X = big_targets(code, delta, mode);
    auto in_X = [&](Target t) { return std::find(X.begin(), X.end(), t) != X.end(); };

    std::map<Target, Rat> hadamard_mass;
    // conditioned (hadamard-only) distribution for one surviving target
    auto conditioned = [&](Target t) {
        const QueryDistribution& qd = dec.dist(t);
        std::vector<std::pair<std::vector<int>, Rat>> keep;
        Rat mass(0);
        for (const auto& [set, w] : qd.entries) {
            // singles in support always read a fixed copy of the target
            // (repetition case); empty sets carry no information
            bool hadamard = set.size() == 2 &&
                            classify_pair(code, t, set[0], set[1]) == PairClass::HadamardLike;
            if (hadamard) {
                keep.emplace_back(set, w);
                mass += w;
            }
        }
        if (mass == Rat(0))
            throw std::runtime_error("reduce: reduction impossible, target " + t.str() +
                                     " has zero hadamard-like mass (decoder hypothesis violated)");
        for (auto& [set, w] : keep) w /= mass;
        hadamard_mass[t] = mass;
        return QueryDistribution::make(std::move(keep));
    };

    const Rat radius = delta / 2;

    if (mode == Mode::RLDC) {
        std::vector<int> survivors, dropped;
        for (int i = 0; i < code.k(); ++i) {
            if (in_X(Target::message(i)))
                dropped.push_back(i);
            else
                survivors.push_back(i);
        }
        const int k_prime = static_cast<int>(survivors.size());
        if (k_prime == 0) throw std::runtime_error("reduce: no surviving message indices");
        std::vector<int> perm = survivors;
        perm.insert(perm.end(), dropped.begin(), dropped.end());

        Mat rows;
        for (int j = 0; j < code.n(); ++j) {
            Vec r(k_prime);
            for (int m = 0; m < k_prime; ++m) r[m] = code.row(j)[survivors[m]];
            rows.push_back(std::move(r));
        }
        LinearCode cprime(f, k_prime, code.n(), std::move(rows));

        std::map<Target, QueryDistribution> dists;
        for (int m = 0; m < k_prime; ++m)
            dists.emplace(Target::message(m), conditioned(Target::message(survivors[m])));
        NonadaptiveDecoder red(cprime, std::move(dists), NonadaptiveDecoder::Rule::Linear);
        return Reduction{mode,   std::move(cprime), std::move(red), dropped,
                         perm,   k_prime,           radius,         s,
                         std::move(hadamard_mass)};
    }

    // RLCC: zero the coordinates in X by intersecting with the kernel of
    // their rows, then rebuild a basis
    std::vector<int> zeroed;
    Mat constraints;
    for (Target t : X) {
        zeroed.push_back(t.index);
        constraints.push_back(code.row(t.index));
    }
    Mat basis;
    if (constraints.empty()) {
        basis.resize(code.k());
        for (int m = 0; m < code.k(); ++m) {
            basis[m].assign(code.k(), 0);
            basis[m][m] = f.one();
        }
    } else {
        basis = kernel_basis(f, constraints, code.k());
    }
    const int k_prime = static_cast<int>(basis.size());
    if (k_prime == 0) throw std::runtime_error("reduce: the reduced code is trivial");

    Mat rows;
    for (int j = 0; j < code.n(); ++j) {
        Vec r(k_prime);
        for (int m = 0; m < k_prime; ++m) r[m] = dot(f, code.row(j), basis[m]);
        rows.push_back(std::move(r));
    }
    LinearCode cprime(f, k_prime, code.n(), std::move(rows));

    std::map<Target, QueryDistribution> dists;
    for (int u = 0; u < code.n(); ++u) {
        Target t = Target::codeword(u);
        if (in_X(t)) {
            // forced-zero coordinate: the trivial corrector reads nothing
            dists.emplace(t, QueryDistribution::make({{std::vector<int>{}, Rat(1)}}));
            continue;
        }
        dists.emplace(t, conditioned(t));
    }
    NonadaptiveDecoder red(cprime, std::move(dists), NonadaptiveDecoder::Rule::Linear);
    return Reduction{mode,
                     std::move(cprime),
                     std::move(red),
                     zeroed,
                     {},
                     k_prime,
                     radius,
                     s,
                     std::move(hadamard_mass)};
}

}  // namespace locus::twoquery
