#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace locus {

/// Exact probability arithmetic. All completeness/soundness bookkeeping is
/// rational end to end; floats only appear in convenience fields of reports.
using Rat = boost::rational<long long>;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline Rat pow_rat(Rat base, unsigned e) {
    Rat acc(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// |F|^-e as an exact rational.
inline Rat inv_pow(long long size, unsigned e) {
    long long den = 1;
    for (unsigned i = 0; i < e; ++i) den *= size;
    return Rat(1, den);
}

inline std::string rat_str(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace locus
