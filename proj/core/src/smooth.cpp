#include "locus/smooth.hpp"

#include <algorithm>
#include <stdexcept>

namespace locus::smooth {

HeavyLightPartition heavy_light(const QueryDistribution& dist, int q, Rat delta, int n,
                                Target target) {
    if (delta <= Rat(0) || delta > Rat(1))
        throw std::invalid_argument("heavy_light: need 0 < delta <= 1");
    HeavyLightPartition p;
    p.target = target;
    p.threshold = Rat(q) / (delta * n);
    for (int j = 0; j < n; ++j) {
        if (dist.coordinate_probability(j) > p.threshold)
            p.heavy.push_back(j);
        else
            p.light.push_back(j);
    }
    // counting bound: q >= sum_j Pr[j in Q] >= |H| * q/(delta n)
    Rat bound = delta * n;
    if (Rat(static_cast<long long>(p.heavy.size())) > bound)
        throw std::logic_error("heavy_light: |H| > delta n, counting bound violated");
    return p;
}

bool is_smoothable(const LinearCode& code, const std::vector<int>& Q,
                   const std::vector<int>& light, const Vec& vstar) {
    std::vector<int> ql;
    for (int j : Q)
        if (std::binary_search(light.begin(), light.end(), j)) ql.push_back(j);
    if (ql.empty()) {
        bool zero = std::all_of(vstar.begin(), vstar.end(), [](Scalar s) { return s == 0; });
        return zero;  // empty span contains only 0
    }
    return in_span(code.field(), vstar, ql, code).has_value();
}

SmoothExtraction extract_smooth(const NonadaptiveDecoder& dec, Rat delta) {
    const LinearCode& code = dec.code();
    const int q = dec.max_queries();
    SmoothExtraction ex;

    std::map<Target, QueryDistribution> good_dists, bad_dists;
    for (const auto& [target, dist] : dec.dists()) {
        HeavyLightPartition part = heavy_light(dist, q, delta, code.n(), target);
        Vec vstar = target_vector(code, target);

        std::vector<std::pair<std::vector<int>, Rat>> good_raw, bad_raw;
        Rat p_good(0);
        for (const auto& [set, w] : dist.entries) {
            if (is_smoothable(code, set, part.light, vstar)) {
                p_good += w;
                std::vector<int> trimmed;
                for (int j : set)
                    if (std::binary_search(part.light.begin(), part.light.end(), j))
                        trimmed.push_back(j);
                good_raw.emplace_back(std::move(trimmed), w);
            } else {
                bad_raw.emplace_back(set, w);
            }
        }
        ex.p_good[target] = p_good;
        ex.partitions.emplace(target, std::move(part));

        if (p_good == Rat(0)) {
            ex.flagged.push_back(target);
        } else {
            for (auto& [set, w] : good_raw) w /= p_good;
            good_dists.emplace(target, QueryDistribution::make(std::move(good_raw)));
        }
        if (p_good != Rat(1)) {
            Rat p_bad = Rat(1) - p_good;
            for (auto& [set, w] : bad_raw) w /= p_bad;
            bad_dists.emplace(target, QueryDistribution::make(std::move(bad_raw)));
        }
    }

    if (!good_dists.empty())
        ex.ldc_part.emplace(code, std::move(good_dists), NonadaptiveDecoder::Rule::Linear);
    if (!bad_dists.empty())
        ex.rldc_part.emplace(code, std::move(bad_dists), NonadaptiveDecoder::Rule::Canonical);
    return ex;
}

Rat smoothness(const NonadaptiveDecoder& dec) {
    Rat worst(0);
    for (const auto& [target, dist] : dec.dists())
        for (int j = 0; j < dec.code().n(); ++j)
            worst = std::max(worst, dist.coordinate_probability(j));
    return worst;
}

LdcCertificate smooth_to_ldc(const NonadaptiveDecoder& dec, Rat eta, Rat epsilon) {
    const int n = dec.code().n();
    Rat cap = Rat(1) / (eta * n);
    for (const auto& [target, dist] : dec.dists()) {
        for (int j = 0; j < n; ++j) {
            Rat p = dist.coordinate_probability(j);
            if (p > cap)
                throw std::invalid_argument(
                    "smooth_to_ldc: coordinate " + std::to_string(j + 1) + " of target " +
                    target.str() + " is queried with probability " + rat_str(p) +
                    " > 1/(eta n) = " + rat_str(cap));
        }
    }
    LdcCertificate cert;
    cert.q = dec.max_queries();
    cert.radius_fraction = eta * epsilon;
    cert.soundness = epsilon;
    return cert;
}

EvalReport verify_ldc_certificate(const NonadaptiveDecoder& dec, const LdcCertificate& cert,
                                  std::uint64_t budget) {
    EvalOptions opt;
    opt.mode = EvalOptions::Mode::Exact;
    opt.delta = cert.radius_fraction;
    opt.budget = budget;
    ExhaustiveRadiusAdversary adv;
    EvalReport rep = eval(dec, adv, opt);
    if (rep.completeness != Rat(1))
        throw std::logic_error("verify_ldc_certificate: completeness below 1");
    if (rep.soundness_error > cert.soundness)
        throw std::logic_error("verify_ldc_certificate: measured error " +
                               rat_str(rep.soundness_error) + " exceeds " +
                               rat_str(cert.soundness));
    return rep;
}

// ---- Appendix B ----

static bool decodes_target(const LinearCode& code, const Vec& v, const Vec& vstar) {
    // <v, C(b)> = <vstar, b> for all b  <=>  sum_j v_j row_j = vstar
    Vec acc(code.k(), 0);
    for (int j = 0; j < code.n(); ++j)
        if (v[j] != 0) add_scaled(code.field(), acc, v[j], code.row(j));
    return acc == vstar;
}

Matching find_matchings(const LinearCode& code, Target target, int q, std::uint64_t budget) {
    const Field& f = code.field();
    const int n = code.n();
    Vec vstar = target_vector(code, target);
    Matching m;
    m.target = target;

    std::vector<bool> used(n, false);
    std::uint64_t probes = 0;

    // greedy by (support size, lexicographic support); within a support we
    // solve for coefficients instead of enumerating |F|^q value tuples
    for (int size = 1; size <= std::min(q, n); ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            if (++probes > budget) throw std::runtime_error("find_matchings: budget exceeded");
            bool free_supp = true;
            for (int i = 0; i < size; ++i) free_supp &= !used[idx[i]];
            if (free_supp) {
                Mat rows;
                for (int i = 0; i < size; ++i) rows.push_back(code.row(idx[i]));
                if (auto c = solve_combination(f, rows, vstar)) {
                    // zero coefficients would re-derive a smaller support
                    bool full = std::all_of(c->begin(), c->end(), [](Scalar s) { return s != 0; });
                    if (full) {
                        Vec v(n, 0);
                        for (int i = 0; i < size; ++i) v[idx[i]] = (*c)[i];
                        m.vectors.push_back(std::move(v));
                        for (int i = 0; i < size; ++i) used[idx[i]] = true;
                    }
                }
            }
            // next lexicographic subset
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return m;
}

MatchingDecoder::MatchingDecoder(LinearCode code, std::vector<Matching> matchings)
    : code_(std::move(code)) {
    if (matchings.empty()) throw std::invalid_argument("MatchingDecoder: no targets");
    for (auto& m : matchings) {
        if (m.vectors.empty())
            throw std::invalid_argument("MatchingDecoder: empty matching for target " +
                                        m.target.str());
        Vec vstar = target_vector(code_, m.target);
        std::vector<bool> used(code_.n(), false);
        for (const auto& v : m.vectors) {
            int nz = 0;
            for (int j = 0; j < code_.n(); ++j) {
                if (v[j] == 0) continue;
                ++nz;
                if (used[j]) throw std::invalid_argument("MatchingDecoder: overlapping supports");
                used[j] = true;
            }
            q_ = std::max(q_, nz);
            if (!decodes_target(code_, v, vstar))
                throw std::invalid_argument("MatchingDecoder: vector does not decode its target");
        }
        matchings_.emplace(m.target, std::move(m));
    }
}

std::vector<Target> MatchingDecoder::targets() const {
    std::vector<Target> ts;
    for (const auto& [t, m] : matchings_) ts.push_back(t);
    return ts;
}

const Matching& MatchingDecoder::matching(Target t) const {
    auto it = matchings_.find(t);
    if (it == matchings_.end()) throw std::out_of_range("MatchingDecoder: unknown target");
    return it->second;
}

OutcomeDist MatchingDecoder::outcome_dist(const Vec& y, Target t) const {
    const Matching& m = matching(t);
    OutcomeDist d;
    Rat each(1, static_cast<long long>(m.vectors.size()));
    for (const auto& v : m.vectors) d.add(Outcome::of(dot(code_.field(), v, y)), each);
    return d;
}

Outcome MatchingDecoder::run(const Vec& y, Target t, Rng& rng, int* queries) const {
    const Matching& m = matching(t);
    const Vec& v = m.vectors[rng.below(static_cast<std::uint32_t>(m.vectors.size()))];
    if (queries)
        for (Scalar s : v) *queries += (s != 0);
    return Outcome::of(dot(code_.field(), v, y));
}

StrongSoundnessCheck check_strong_soundness(const MatchingDecoder& dec, std::uint64_t budget) {
    const LinearCode& code = dec.code();
    const int q = dec.max_queries();
    const int n = code.n();

    StrongSoundnessCheck out;
    bool first = true;
    for (Target t : dec.targets()) {
        Rat delta = Rat(q * static_cast<long long>(dec.matching(t).vectors.size()), n);
        if (first || delta < out.bound_delta) out.bound_delta = delta;
        first = false;
    }
    out.checked_radius = radius_of(out.bound_delta / q, n);

    ExhaustiveRadiusAdversary adv;
    const std::uint64_t nmsg = space_size_checked(code.field(), code.k(), budget);
    out.worst_ratio = Rat(0);
    out.holds = true;
    for (Target t : dec.targets()) {
        const std::uint64_t patterns = adv.pattern_count(code, t, out.checked_radius);
        if (nmsg > budget / patterns) throw std::runtime_error("check_strong_soundness: budget");
        for (std::uint64_t bi = 0; bi < nmsg; ++bi) {
            Vec b = message_at(code, bi);
            Vec x = encode(code, b);
            Scalar truth = target_truth(code, b, t);
            for (std::uint64_t pi = 0; pi < patterns; ++pi) {
                Vec y = adv.pattern_at(code, b, t, out.checked_radius, pi);
                int dist = hamming(x, y);
                Rat err = dec.outcome_dist(y, t).wrong_mass(truth);
                Rat bound = Rat(q) * dist / (out.bound_delta * n);
                if (err > bound) out.holds = false;
                if (dist > 0 && bound > Rat(0))
                    out.worst_ratio = std::max(out.worst_ratio, err / bound);
            }
        }
    }
    return out;
}

}  // namespace locus::smooth
