#include "locus/attack.hpp"

#include "locus/field.hpp"
#include "locus/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace locus::attack {

ErasurePattern erase_through(const LineCodeParams& p, const Point& xstar) {
    ErasurePattern pat;
    for (int li : p.lines_through.at(linecode::point_rank(p, xstar)))
        pat.erased_lines.insert(static_cast<std::uint64_t>(li));

    const std::uint64_t q = p.field_size();
    const std::uint64_t expected = (p.num_points - 1) / (q - 1);
    if (pat.erased_lines.size() != expected)
        throw std::logic_error("erase_through: through-point count formula violated");
    pat.fraction = Rat(static_cast<long long>(pat.erased_lines.size()),
                       static_cast<long long>(p.num_lines));
    // q/q^n = 2^{-t(n-1)}
    Rat formula(1, static_cast<long long>(1) << (p.t() * (p.nvars - 1)));
    if (pat.fraction != formula)
        throw std::logic_error("erase_through: erased fraction disagrees with 2^{-t(n-1)}");
    return pat;
}

static bool on_line(const LineCodeParams& p, const Line& line, const Point& x) {
    for (const Point& pt : linecode::line_points(p, line))
        if (pt == x) return true;
    return false;
}

Poly separating_poly(const LineCodeParams& p, const Point& x, const std::vector<Line>& lines) {
    const gf::FieldParams& f = p.field;
    Poly g = Poly::constant(f, p.nvars, 1);
    for (const Line& line : lines) {
        if (on_line(p, line, x))
            throw std::invalid_argument("separating_poly: x lies on one of the lines");
        // lexicographically least v with <dir, v> = 0 and <x - base, v> != 0
        std::optional<Point> found;
        Elem denom = 0;
        for (std::uint64_t vr = 0; vr < p.num_points && !found; ++vr) {
            Point v = linecode::point_at(p, vr);
            Elem dv = 0, xv = 0;
            for (int c = 0; c < p.nvars; ++c) {
                dv = gf::add(f, dv, gf::mul(f, line.dir[c], v[c]));
                xv = gf::add(f, xv, gf::mul(f, gf::add(f, x[c], line.base[c]), v[c]));
            }
            if (dv == 0 && xv != 0) {
                found = v;
                denom = xv;
            }
        }
        if (!found) throw std::logic_error("separating_poly: no separating vector found");
        // g_{x,L}(z) = <z - base, v> / <x - base, v>
        Elem inv_d = gf::inv(f, denom);
        Poly form(p.nvars);
        Elem constant = 0;
        for (int c = 0; c < p.nvars; ++c) {
            std::vector<std::uint16_t> expo(p.nvars, 0);
            expo[c] = 1;
            form.add_term(f, expo, gf::mul(f, (*found)[c], inv_d));
            constant = gf::add(f, constant, gf::mul(f, line.base[c], (*found)[c]));
        }
        form.add_term(f, std::vector<std::uint16_t>(p.nvars, 0), gf::mul(f, constant, inv_d));
        g = g.times(f, form);
    }
    return g;
}

// ---- oracle ----

LineOracle::LineOracle(const LineCodeParams& p, const Poly& f,
                       const std::set<std::uint64_t>& erased, int max_queries)
    : p_(p), f_(f), erased_(erased), budget_(max_queries) {}

std::optional<std::vector<Elem>> LineOracle::query(int line_index) {
    if (line_index < 0 || static_cast<std::uint64_t>(line_index) >= p_.num_lines)
        throw std::out_of_range("LineOracle: line index");
    if (static_cast<int>(queried_.size()) >= budget_)
        throw std::logic_error("LineOracle: decoder exceeded its line-query budget");
    queried_.push_back(line_index);
    if (erased_.count(static_cast<std::uint64_t>(line_index))) return std::nullopt;
    answered_.push_back(line_index);
    std::vector<Elem> vals;
    for (const Point& z : linecode::line_points(p_, p_.lines[line_index]))
        vals.push_back(f_.eval(p_.field, z));
    return vals;
}

// ---- decoders ----

namespace {

/// Constraint system over the message coefficient space from answered lines.
struct ConsistencySolver {
    Field field;
    Mat a;
    Vec rhs;

    ConsistencySolver(const LineCodeParams& p)
        : field(Field::gf2ext(p.field)) {}

    void add_line(const LineCodeParams& p, int line_index, const std::vector<Elem>& values) {
        auto pts = linecode::line_points(p, p.lines[line_index]);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Vec row(p.monomials.size());
            for (std::size_t m = 0; m < p.monomials.size(); ++m) {
                Elem term = 1;
                for (int v = 0; v < p.nvars; ++v)
                    for (int e = 0; e < p.monomials[m][v]; ++e)
                        term = gf::mul(p.field, term, pts[i][v]);
                row[m] = static_cast<Scalar>(term);
            }
            a.push_back(std::move(row));
            rhs.push_back(static_cast<Scalar>(values[i]));
        }
    }

    /// Particular solution as a polynomial, or absent if inconsistent.
    std::optional<Poly> solve(const LineCodeParams& p) const {
        auto x = a.empty() ? std::make_optional(Vec(p.monomials.size(), 0))
                           : solve_linear(field, a, rhs);
        if (!x) return std::nullopt;
        Poly g(p.nvars);
        for (std::size_t m = 0; m < p.monomials.size(); ++m)
            g.add_term(p.field, p.monomials[m], (*x)[m]);
        return g;
    }

    Mat kernel(const LineCodeParams& p) const {
        return kernel_basis(field, a, static_cast<int>(p.monomials.size()));
    }
};

int bit_of(const LineCodeParams& p, const Poly& f, const Point& x, Elem alpha, int i) {
    gf::MulMatrix m = gf::mul_matrix(p.field, alpha);
    return gf::apply_row(m, i, f.eval(p.field, x));
}

}  // namespace

int InterpolatingLineDecoder::run(LineOracle& oracle, const LineCodeParams& p, const Point& xstar,
                                  Elem alphastar, int istar) const {
    ConsistencySolver solver(p);
    int made = 0;
    for (std::size_t li = 0; li < p.lines.size() && made < p.degree; ++li) {
        if (on_line(p, p.lines[li], xstar)) continue;
        auto ans = oracle.query(static_cast<int>(li));
        ++made;
        if (ans) solver.add_line(p, static_cast<int>(li), *ans);
    }
    auto f = solver.solve(p);
    if (!f) return 0;
    return bit_of(p, *f, xstar, alphastar, istar);
}

int GreedyConsistencyLineDecoder::run(LineOracle& oracle, const LineCodeParams& p,
                                      const Point& xstar, Elem alphastar, int istar) const {
    // lines through the neighbors x* + e_c, never through x* itself
    ConsistencySolver solver(p);
    int made = 0;
    for (int c = 0; c < p.nvars && made < p.degree; ++c) {
        Point y = xstar;
        y[c] = gf::add(p.field, y[c], 1);
        for (int li : p.lines_through[linecode::point_rank(p, y)]) {
            if (made >= p.degree) break;
            if (on_line(p, p.lines[li], xstar)) continue;
            auto ans = oracle.query(li);
            ++made;
            if (ans) solver.add_line(p, li, *ans);
        }
    }
    auto f0 = solver.solve(p);
    if (!f0) return 0;
    int bit0 = bit_of(p, *f0, xstar, alphastar, istar);
    // majority over the consistent affine space; balanced unless the bit is
    // constant on the kernel
    for (const Vec& kv : solver.kernel(p)) {
        Poly kp(p.nvars);
        for (std::size_t m = 0; m < p.monomials.size(); ++m)
            kp.add_term(p.field, p.monomials[m], kv[m]);
        if (bit_of(p, kp, xstar, alphastar, istar) != 0) return 0;  // tie -> 0
    }
    return bit0;
}

int ThroughLineDecoder::run(LineOracle& oracle, const LineCodeParams& p, const Point& xstar,
                            Elem alphastar, int istar) const {
    int li = p.lines_through[linecode::point_rank(p, xstar)].front();
    auto ans = oracle.query(li);
    if (!ans) return 0;
    auto pts = linecode::line_points(p, p.lines[li]);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i] == xstar) {
            gf::MulMatrix m = gf::mul_matrix(p.field, alphastar);
            return gf::apply_row(m, istar, (*ans)[i]);
        }
    }
    throw std::logic_error("ThroughLineDecoder: x* missing from its own line");
}

// ---- experiment ----

static std::vector<std::uint8_t> message_bits_at(const LineCodeParams& p, std::uint64_t index) {
    std::vector<std::uint8_t> bits(p.message_bits);
    for (int b = 0; b < p.message_bits; ++b) bits[b] = (index >> b) & 1;
    return bits;
}

ExperimentResult attack_experiment(const LineQueryDecoder& dec,
                                   std::shared_ptr<const LineCodeParams> params,
                                   const Point& xstar, Elem alphastar, int istar, bool erase,
                                   bool exact, std::uint64_t trials, std::uint64_t seed,
                                   std::uint64_t budget) {
    const LineCodeParams& p = *params;
    if (alphastar == 0)
        throw std::invalid_argument("attack_experiment: alpha* must be nonzero");
    std::set<std::uint64_t> erased;
    if (erase) erased = erase_through(p, xstar).erased_lines;

    auto run_one = [&](const Poly& f) {
        LineOracle oracle(p, f, erased, p.degree);
        int out = dec.run(oracle, p, xstar, alphastar, istar);
        return out == bit_of(p, f, xstar, alphastar, istar);
    };

    ExperimentResult res;
    res.seed = seed;
    if (exact) {
        if (p.message_bits >= 62 || (1ull << p.message_bits) > budget)
            throw std::runtime_error("attack_experiment: exact budget exceeded");
        const std::uint64_t total = 1ull << p.message_bits;
        std::uint64_t good = 0;
        for (std::uint64_t i = 0; i < total; ++i)
            if (run_one(linecode::message_to_poly(p, message_bits_at(p, i)))) ++good;
        res.success = Rat(static_cast<long long>(good), static_cast<long long>(total));
        res.exact = true;
        res.trials = total;
        return res;
    }

    Rng rng(seed);
    std::uint64_t good = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        std::vector<std::uint8_t> bits(p.message_bits);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
        if (run_one(linecode::message_to_poly(p, bits))) ++good;
    }
    res.success = Rat(static_cast<long long>(good), static_cast<long long>(trials));
    res.exact = false;
    res.trials = trials;
    return res;
}

std::uint64_t coset_symmetry_violations(const LineQueryDecoder& dec,
                                        std::shared_ptr<const LineCodeParams> params,
                                        const Point& xstar, Elem alphastar, int istar,
                                        std::uint64_t budget) {
    const LineCodeParams& p = *params;
    std::set<std::uint64_t> erased = erase_through(p, xstar).erased_lines;
    if (p.message_bits >= 62 || (1ull << p.message_bits) > budget)
        throw std::runtime_error("coset_symmetry_violations: budget exceeded");
    const std::uint64_t total = 1ull << p.message_bits;

    std::uint64_t violations = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        Poly f = linecode::message_to_poly(p, message_bits_at(p, i));
        LineOracle base(p, f, erased, p.degree);
        int out_f = dec.run(base, p, xstar, alphastar, istar);

        std::vector<Line> used;
        for (int li : base.queried_answered()) used.push_back(p.lines[li]);
        Poly g = separating_poly(p, xstar, used);

        for (Elem beta = 0; beta < p.field_size(); ++beta) {
            Poly h = f.plus(p.field, g.scaled(p.field, beta));
            LineOracle o2(p, h, erased, p.degree);
            int out_h = dec.run(o2, p, xstar, alphastar, istar);
            if (out_h != out_f || o2.queried() != base.queried()) ++violations;
        }
    }
    return violations;
}

}  // namespace locus::attack
