#pragma once

#include "locus/codealg.hpp"
#include "locus/decoder.hpp"

#include <map>
#include <vector>

namespace locus::testing {

/// The running [3,2] example: rows (1,0), (0,1), (1,1) over F_2.
inline LinearCode code32() {
    return LinearCode(Field::f2(), 2, 3, Mat{{1, 0}, {0, 1}, {1, 1}});
}

/// C(b) = (b1, b1, b2, b1+b2) over F_2.
inline LinearCode code_fixedpair() {
    return LinearCode(Field::f2(), 2, 4, Mat{{1, 0}, {1, 0}, {0, 1}, {1, 1}});
}

/// Repetition code C(b) = (b, ..., b).
inline LinearCode repetition(int n) {
    return LinearCode(Field::f2(), 1, n, Mat(n, Vec{1}));
}

/// Hadamard code over F_2^k: one coordinate per a in F_2^k, C(b)_a = <a, b>.
inline LinearCode hadamard(int k) {
    Mat rows;
    for (std::uint32_t a = 1; a < (1u << k); ++a) {  // skip the zero functional
        Vec r(k);
        for (int i = 0; i < k; ++i) r[i] = (a >> i) & 1;
        rows.push_back(std::move(r));
    }
    return LinearCode(Field::f2(), k, static_cast<int>(rows.size()), std::move(rows));
}

inline QueryDistribution qd(std::vector<std::pair<std::vector<int>, Rat>> raw) {
    return QueryDistribution::make(std::move(raw));
}

inline NonadaptiveDecoder make_dec(const LinearCode& code,
                                   std::map<Target, QueryDistribution> dists,
                                   NonadaptiveDecoder::Rule rule =
                                       NonadaptiveDecoder::Rule::Canonical) {
    return NonadaptiveDecoder(code, std::move(dists), rule);
}

/// Random linear code with full-rank generator, seeded.
inline LinearCode random_code(const Field& f, int k, int n, Rng& rng) {
    for (;;) {
        Mat rows(n, Vec(k));
        for (auto& r : rows)
            for (auto& s : r) s = rng.below(f.size());
        if (rank(f, rows) != k) continue;
        return LinearCode(f, k, n, std::move(rows));
    }
}

}  // namespace locus::testing
