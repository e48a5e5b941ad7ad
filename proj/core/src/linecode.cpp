#include "locus/linecode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace locus::linecode {

// ---- Poly ----

void Poly::add_term(const gf::FieldParams& f, const std::vector<std::uint16_t>& expo, Elem c) {
    if (static_cast<int>(expo.size()) != nvars_)
        throw std::invalid_argument("Poly::add_term: exponent arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(expo);
    if (it == terms_.end()) {
        terms_.emplace(expo, c);
    } else {
        it->second = gf::add(f, it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

Elem Poly::eval(const gf::FieldParams& f, const Point& p) const {
    if (static_cast<int>(p.size()) != nvars_)
        throw std::invalid_argument("Poly::eval: point arity mismatch");
    Elem acc = 0;
    for (const auto& [expo, c] : terms_) {
        Elem term = c;
        for (int v = 0; v < nvars_; ++v)
            for (int e = 0; e < expo[v]; ++e) term = gf::mul(f, term, p[v]);
        acc = gf::add(f, acc, term);
    }
    return acc;
}

Poly Poly::plus(const gf::FieldParams& f, const Poly& o) const {
    Poly r = *this;
    for (const auto& [expo, c] : o.terms_) r.add_term(f, expo, c);
    return r;
}

Poly Poly::times(const gf::FieldParams& f, const Poly& o) const {
    Poly r(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            std::vector<std::uint16_t> e(nvars_);
            for (int v = 0; v < nvars_; ++v) e[v] = ea[v] + eb[v];
            r.add_term(f, e, gf::mul(f, ca, cb));
        }
    }
    return r;
}

Poly Poly::scaled(const gf::FieldParams& f, Elem c) const {
    Poly r(nvars_);
    for (const auto& [expo, coef] : terms_) r.add_term(f, expo, gf::mul(f, coef, c));
    return r;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [expo, c] : terms_) {
        int t = 0;
        for (auto e : expo) t += e;
        d = std::max(d, t);
    }
    return d;
}

Poly Poly::constant(const gf::FieldParams& f, int nvars, Elem c) {
    Poly r(nvars);
    r.add_term(f, std::vector<std::uint16_t>(nvars, 0), c);
    return r;
}

// ---- params / lines ----

std::uint64_t point_rank(const LineCodeParams& p, const Point& x) {
    if (static_cast<int>(x.size()) != p.nvars) throw std::invalid_argument("point arity");
    std::uint64_t r = 0;
    for (Elem c : x) {
        if (c >= p.field_size()) throw std::invalid_argument("point coordinate out of range");
        r = (r << p.t()) | c;
    }
    return r;
}

Point point_at(const LineCodeParams& p, std::uint64_t rank) {
    Point x(p.nvars);
    for (int v = p.nvars - 1; v >= 0; --v) {
        x[v] = rank & (p.field_size() - 1);
        rank >>= p.t();
    }
    return x;
}

static Point add_points(const gf::FieldParams& f, const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = gf::add(f, a[i], b[i]);
    return r;
}

static Point scale_point(const gf::FieldParams& f, Elem c, const Point& a) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = gf::mul(f, c, a[i]);
    return r;
}

std::vector<Point> line_points(const LineCodeParams& p, const Line& line) {
    std::vector<Point> pts;
    pts.reserve(p.field_size());
    for (Elem lam = 0; lam < p.field_size(); ++lam)
        pts.push_back(add_points(p.field, line.base, scale_point(p.field, lam, line.dir)));
    return pts;
}

std::vector<Point> sl_points(const LineCodeParams& p, const Line& line) {
    std::vector<Point> pts;
    pts.reserve(p.degree + 1);
    for (Elem lam = 0; lam <= static_cast<Elem>(p.degree); ++lam)
        pts.push_back(add_points(p.field, line.base, scale_point(p.field, lam, line.dir)));
    return pts;
}

static Point normalize_dir(const gf::FieldParams& f, const Point& dir) {
    for (Elem c : dir) {
        if (c == 0) continue;
        return scale_point(f, gf::inv(f, c), dir);
    }
    throw std::invalid_argument("line direction is zero");
}

Line line_through(const LineCodeParams& p, const Point& a, const Point& b) {
    Point diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = gf::add(p.field, a[i], b[i]);
    Point dir = normalize_dir(p.field, diff);
    // lexicographically least point = least rank
    Point best = a;
    std::uint64_t best_rank = point_rank(p, a);
    for (Elem lam = 0; lam < p.field_size(); ++lam) {
        Point cand = add_points(p.field, a, scale_point(p.field, lam, dir));
        std::uint64_t r = point_rank(p, cand);
        if (r < best_rank) {
            best_rank = r;
            best = cand;
        }
    }
    return Line{best, dir};
}

int line_index(const LineCodeParams& p, const Line& line) {
    auto cmp = [&p](const Line& a, const Line& b) {
        auto ka = std::make_pair(point_rank(p, a.base), point_rank(p, a.dir));
        auto kb = std::make_pair(point_rank(p, b.base), point_rank(p, b.dir));
        return ka < kb;
    };
    auto it = std::lower_bound(p.lines.begin(), p.lines.end(), line, cmp);
    if (it == p.lines.end() || !(*it == line))
        throw std::invalid_argument("line_index: not a canonical line of these parameters");
    return static_cast<int>(it - p.lines.begin());
}

std::shared_ptr<const LineCodeParams> mk_params(int t, int nvars, int degree,
                                                std::uint64_t max_total_bits) {
    if (nvars < 1) throw std::invalid_argument("mk_params: n >= 1");
    if (degree < 0) throw std::invalid_argument("mk_params: d >= 0");
    auto params = std::make_shared<LineCodeParams>();
    params->field = gf::mk_field(t);
    params->nvars = nvars;
    params->degree = degree;
    if (static_cast<std::uint64_t>(degree) >= params->field_size())
        throw std::invalid_argument(
            "mk_params: d >= 2^t (interpolation needs d+1 distinct points per line)");
    if (t * (degree + 1) > 62)
        throw std::invalid_argument("mk_params: block index t(d+1) exceeds 62 bits");
    if (static_cast<std::uint64_t>(t) * nvars > 24)
        throw std::invalid_argument("mk_params: point space 2^{tn} too large");

    params->num_points = 1ull << (static_cast<std::uint64_t>(t) * nvars);
    params->block_bits = 1ull << (static_cast<std::uint64_t>(t) * (degree + 1));

    const std::uint64_t q = params->field_size();
    const std::uint64_t expected_lines =
        params->num_points * (params->num_points - 1) / (q * (q - 1));
    if (expected_lines > (max_total_bits / params->block_bits))
        throw std::invalid_argument("mk_params: total bits beyond the budget");

    // canonical enumeration: dedupe (lex-least base, normalized dir)
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    std::vector<Line> lines;
    for (std::uint64_t dr = 1; dr < params->num_points; ++dr) {
        Point dir = point_at(*params, dr);
        // keep normalized dirs only
        bool normalized = false;
        for (Elem c : dir) {
            if (c == 0) continue;
            normalized = (c == 1);
            break;
        }
        if (!normalized) continue;
        for (std::uint64_t br = 0; br < params->num_points; ++br) {
            Point base = point_at(*params, br);
            Line canon = line_through(*params, base, add_points(params->field, base, dir));
            auto key = std::make_pair(point_rank(*params, canon.base), point_rank(*params, canon.dir));
            if (seen.insert(key).second) lines.push_back(std::move(canon));
        }
    }
    std::sort(lines.begin(), lines.end(), [&](const Line& a, const Line& b) {
        return std::make_pair(point_rank(*params, a.base), point_rank(*params, a.dir)) <
               std::make_pair(point_rank(*params, b.base), point_rank(*params, b.dir));
    });
    params->lines = std::move(lines);
    params->num_lines = params->lines.size();
    if (params->num_lines != expected_lines)
        throw std::logic_error("mk_params: line count disagrees with the closed formula");
    params->total_bits = params->num_lines * params->block_bits;

    params->lines_through.assign(params->num_points, {});
    for (std::size_t li = 0; li < params->lines.size(); ++li)
        for (const Point& pt : line_points(*params, params->lines[li]))
            params->lines_through[point_rank(*params, pt)].push_back(static_cast<int>(li));

    // multilinear monomial basis: subsets of <= d variables, by mask value
    for (std::uint32_t mask = 0; mask < (1u << nvars); ++mask) {
        if (std::popcount(mask) > degree) continue;
        std::vector<std::uint16_t> expo(nvars, 0);
        for (int v = 0; v < nvars; ++v)
            if ((mask >> v) & 1) expo[v] = 1;
        params->monomials.push_back(std::move(expo));
    }
    std::sort(params->monomials.begin(), params->monomials.end());
    params->message_bits = t * static_cast<int>(params->monomials.size());
    return params;
}

int had_bit(const LineCodeParams& p, const std::vector<Elem>& alphas, std::uint64_t v) {
    if (static_cast<int>(alphas.size()) != p.degree + 1)
        throw std::invalid_argument("had_bit: expected d+1 field elements");
    int bit = 0;
    const std::uint64_t mask = p.field_size() - 1;
    for (int j = 0; j <= p.degree; ++j) {
        std::uint64_t chunk = (v >> (j * p.t())) & mask;
        bit ^= std::popcount(chunk & alphas[j]) & 1;
    }
    return bit;
}

/// lambda coordinate of z on the line, i.e. z = base + lambda dir.
static Elem lambda_of(const LineCodeParams& p, const Line& line, const Point& z) {
    int c = 0;
    while (line.dir[c] == 0) ++c;
    Elem lam = gf::mul(p.field, gf::add(p.field, z[c], line.base[c]), gf::inv(p.field, line.dir[c]));
    Point probe = add_points(p.field, line.base, scale_point(p.field, lam, line.dir));
    if (probe != z) throw std::invalid_argument("point is not on the line");
    return lam;
}

std::uint64_t interp_vector(const LineCodeParams& p, const Line& line, const Point& z, Elem alpha,
                            int i) {
    if (i < 0 || i >= p.t()) throw std::invalid_argument("interp_vector: bit index range");
    const gf::FieldParams& f = p.field;
    Elem lam_z = lambda_of(p, line, z);
    // Lagrange coefficients over the interpolation lambdas 0..d
    std::uint64_t v = 0;
    for (int j = 0; j <= p.degree; ++j) {
        Elem num = 1, den = 1;
        for (int m = 0; m <= p.degree; ++m) {
            if (m == j) continue;
            num = gf::mul(f, num, gf::add(f, lam_z, static_cast<Elem>(m)));
            den = gf::mul(f, den, gf::add(f, static_cast<Elem>(j), static_cast<Elem>(m)));
        }
        Elem coeff = gf::mul(f, num, gf::inv(f, den));
        gf::MulMatrix m = gf::mul_matrix(f, gf::mul(f, alpha, coeff));
        v |= m.rows.at(i) << (j * p.t());
    }
    return v;
}

Poly message_to_poly(const LineCodeParams& p, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != p.message_bits)
        throw std::invalid_argument("message_to_poly: expected " + std::to_string(p.message_bits) +
                                    " bits");
    Poly f(p.nvars);
    for (std::size_t m = 0; m < p.monomials.size(); ++m) {
        std::vector<std::uint8_t> chunk(bits.begin() + m * p.t(), bits.begin() + (m + 1) * p.t());
        Elem c = gf::pi_inv(p.field, chunk);
        f.add_term(p.field, p.monomials[m], c);
    }
    return f;
}

std::vector<std::uint8_t> poly_to_message(const LineCodeParams& p, const Poly& f) {
    std::vector<std::uint8_t> bits(p.message_bits, 0);
    for (const auto& [expo, c] : f.terms()) {
        auto it = std::lower_bound(p.monomials.begin(), p.monomials.end(), expo);
        if (it == p.monomials.end() || *it != expo)
            throw std::invalid_argument("poly_to_message: polynomial outside the message basis");
        std::size_t m = it - p.monomials.begin();
        auto chunk = gf::pi(p.field, c);
        std::copy(chunk.begin(), chunk.end(), bits.begin() + m * p.t());
    }
    return bits;
}

// ---- LineCodeword ----

LineCodeword::LineCodeword(std::shared_ptr<const LineCodeParams> params, Poly f)
    : params_(std::move(params)), base_(std::move(f)) {
    if (base_.nvars() != params_->nvars)
        throw std::invalid_argument("LineCodeword: polynomial arity mismatch");
    sl_values_.reserve(params_->num_lines);
    for (const Line& line : params_->lines) {
        std::vector<Elem> vals;
        for (const Point& z : sl_points(*params_, line))
            vals.push_back(base_.eval(params_->field, z));
        sl_values_.push_back(std::move(vals));
    }
}

int LineCodeword::bit(std::uint64_t line, std::uint64_t v) const {
    if (line >= params_->num_lines || v >= params_->block_bits)
        throw std::out_of_range("LineCodeword::bit: position out of range");
    if (erased_.count(line))
        throw std::logic_error("LineCodeword::bit: read from an erased line");
    int b;
    auto ov = overrides_.find(line);
    if (ov != overrides_.end())
        b = ov->second[v];
    else
        b = had_bit(*params_, sl_values_[line], v);
    if (flips_.count(line * params_->block_bits + v)) b ^= 1;
    return b;
}

void LineCodeword::flip_bit(std::uint64_t line, std::uint64_t v) {
    flip_global(line * params_->block_bits + v);
}

void LineCodeword::flip_global(std::uint64_t pos) {
    if (pos >= params_->total_bits) throw std::out_of_range("flip_global: position range");
    auto [it, inserted] = flips_.insert(pos);
    if (!inserted) flips_.erase(it);
}

void LineCodeword::override_block(std::uint64_t line, std::vector<std::uint8_t> bits) {
    if (line >= params_->num_lines) throw std::out_of_range("override_block: line range");
    if (bits.size() != params_->block_bits)
        throw std::invalid_argument("override_block: block length mismatch");
    overrides_[line] = std::move(bits);
}

void LineCodeword::erase_line(std::uint64_t line) {
    if (line >= params_->num_lines) throw std::out_of_range("erase_line: line range");
    erased_.insert(line);
}

void LineCodeword::random_flips(std::uint64_t count, Rng& rng) {
    if (count > params_->total_bits) throw std::invalid_argument("random_flips: count > N");
    std::set<std::uint64_t> chosen;
    while (chosen.size() < count) chosen.insert(rng.below64(params_->total_bits));
    for (std::uint64_t pos : chosen) flip_global(pos);
}

LineCodeword encode(std::shared_ptr<const LineCodeParams> params, Poly f) {
    return LineCodeword(std::move(params), std::move(f));
}

LineCodeword encode_message(std::shared_ptr<const LineCodeParams> params,
                            const std::vector<std::uint8_t>& bits) {
    Poly f = message_to_poly(*params, bits);
    return LineCodeword(std::move(params), std::move(f));
}

// ---- serialization ----

std::string word_to_text(const LineCodeword& w, bool include_dense) {
    const LineCodeParams& p = w.params();
    std::ostringstream out;
    out << "linecode word v1\n";
    out << "t " << p.t() << " n " << p.nvars << " d " << p.degree << "\n";
    out << "message ";
    for (std::uint8_t b : poly_to_message(p, w.base_poly())) out << int(b);
    out << "\n";
    out << "flips " << w.flips().size() << "\n";
    for (std::uint64_t pos : w.flips()) out << pos << "\n";
    out << "erased " << w.erased_lines().size() << "\n";
    for (std::uint64_t l : w.erased_lines()) out << l << "\n";
    out << "overrides " << w.overrides().size() << "\n";
    for (const auto& [line, bits] : w.overrides()) {
        out << line << " ";
        for (std::uint8_t b : bits) out << int(b);
        out << "\n";
    }
    out << "dense " << (include_dense ? 1 : 0) << "\n";
    if (include_dense) {
        for (std::uint64_t l = 0; l < p.num_lines; ++l) {
            for (std::uint64_t v = 0; v < p.block_bits; ++v)
                out << (w.line_erased(l) ? '_' : char('0' + w.bit(l, v)));
            out << "\n";
        }
    }
    return out.str();
}

LineCodeword word_from_text(const std::string& text, std::uint64_t max_total_bits) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "linecode word v1")
        throw std::invalid_argument("word text: missing header");
    std::string kw1, kw2, kw3;
    int t, n, d;
    in >> kw1 >> t >> kw2 >> n >> kw3 >> d;
    if (kw1 != "t" || kw2 != "n" || kw3 != "d")
        throw std::invalid_argument("word text: bad parameter line");
    auto params = mk_params(t, n, d, max_total_bits);

    std::string kw, bitstr;
    in >> kw >> bitstr;
    if (kw != "message") throw std::invalid_argument("word text: missing message");
    std::vector<std::uint8_t> bits;
    for (char c : bitstr) bits.push_back(c == '1');
    LineCodeword w = encode_message(params, bits);

    std::uint64_t count;
    in >> kw >> count;
    if (kw != "flips") throw std::invalid_argument("word text: missing flips");
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t pos;
        in >> pos;
        w.flip_global(pos);
    }
    in >> kw >> count;
    if (kw != "erased") throw std::invalid_argument("word text: missing erased");
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t l;
        in >> l;
        w.erase_line(l);
    }
    in >> kw >> count;
    if (kw != "overrides") throw std::invalid_argument("word text: missing overrides");
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t l;
        std::string blk;
        in >> l >> blk;
        std::vector<std::uint8_t> b;
        for (char c : blk) b.push_back(c == '1');
        w.override_block(l, std::move(b));
    }
    int dense;
    in >> kw >> dense;
    if (kw != "dense") throw std::invalid_argument("word text: missing dense flag");
    if (dense) {
        for (std::uint64_t l = 0; l < params->num_lines; ++l) {
            std::string blk;
            in >> blk;
            if (blk.size() != params->block_bits)
                throw std::invalid_argument("word text: dense block length mismatch");
            for (std::uint64_t v = 0; v < params->block_bits; ++v) {
                if (blk[v] == '_') {
                    if (!w.line_erased(l))
                        throw std::invalid_argument("word text: dense dump disagrees (erasure)");
                } else if (w.bit(l, v) != blk[v] - '0') {
                    throw std::invalid_argument("word text: dense dump disagrees with sparse data");
                }
            }
        }
    }
    return w;
}

// ---- BLR / self-correction ----

bool blr_test(const LineCodeParams& p, const BitReader& g, Rng& rng) {
    std::uint64_t v1 = rng.below64(p.block_bits);
    std::uint64_t v2 = rng.below64(p.block_bits);
    return (g(v1) ^ g(v2) ^ g(v1 ^ v2)) == 0;
}

int self_correct(const LineCodeParams& p, const BitReader& g, std::uint64_t v, Rng& rng) {
    std::uint64_t r = rng.below64(p.block_bits);
    return g(v ^ r) ^ g(r);
}

// ---- Algorithm 1 ----

DecodeResult rldc_decode(const LineCodeword& word, const Point& xstar, Elem alphastar, int istar,
                         int r1, int r2, bool reuse, Rng& rng) {
    const LineCodeParams& p = word.params();
    if (r1 < 1 || r2 < 1) throw std::invalid_argument("rldc_decode: r1, r2 >= 1");
    if (istar < 0 || istar >= p.t()) throw std::invalid_argument("rldc_decode: i* range");

    int queries = 0;
    auto reader = [&](std::uint64_t line, std::uint64_t v) {
        ++queries;
        return word.bit(line, v);
    };

    // (1) uniform line through x*
    const auto& through = p.lines_through.at(point_rank(p, xstar));
    int lstar = through[rng.below(static_cast<std::uint32_t>(through.size()))];
    const Line& Lstar = p.lines[lstar];

    // (2) r1 linearity tests on G_{L*}
    for (int r = 0; r < r1; ++r) {
        std::uint64_t v1 = rng.below64(p.block_bits);
        std::uint64_t v2 = rng.below64(p.block_bits);
        if ((reader(lstar, v1) ^ reader(lstar, v2) ^ reader(lstar, v1 ^ v2)) != 0)
            return {Outcome::bottom(), queries};
    }

    // (3) r2 consistency tests
    std::uint64_t v4_first = 0;
    int g_v4_first = 0;
    for (int r = 0; r < r2; ++r) {
        // (3a) y uniform on L* minus x*, alpha uniform, i uniform
        std::vector<Point> pts = line_points(p, Lstar);
        Point y;
        do {
            y = pts[rng.below(static_cast<std::uint32_t>(pts.size()))];
        } while (y == xstar);
        Elem alpha = rng.below64(p.field_size());
        int i = static_cast<int>(rng.below(static_cast<std::uint32_t>(p.t())));

        // (3b) self-correct pi(alpha f(y))_i from G_{L*}
        std::uint64_t v4 = rng.below64(p.block_bits);
        int g_v4 = reader(lstar, v4);
        int a_lstar = reader(lstar, interp_vector(p, Lstar, y, alpha, i) ^ v4) ^ g_v4;
        if (r == 0) {
            v4_first = v4;
            g_v4_first = g_v4;
        }

        // (3c) self-correct the same bit from a uniform line through y
        const auto& through_y = p.lines_through.at(point_rank(p, y));
        int lprime = through_y[rng.below(static_cast<std::uint32_t>(through_y.size()))];
        const Line& Lprime = p.lines[lprime];
        std::uint64_t v5 = rng.below64(p.block_bits);
        int a_lprime = reader(lprime, interp_vector(p, Lprime, y, alpha, i) ^ v5) ^
                       reader(lprime, v5);

        // (3d)
        if (a_lstar != a_lprime) return {Outcome::bottom(), queries};
    }

    // (4) final self-corrected read of pi(alpha* f(x*))_{i*}
    std::uint64_t v6;
    int g_v6;
    if (reuse) {
        v6 = v4_first;
        g_v6 = g_v4_first;
    } else {
        v6 = rng.below64(p.block_bits);
        g_v6 = reader(lstar, v6);
    }
    int out = reader(lstar, interp_vector(p, Lstar, xstar, alphastar, istar) ^ v6) ^ g_v6;
    return {Outcome::of(static_cast<Scalar>(out)), queries};
}

// ---- Algorithm 2 ----

DecodeResult rlcc_decode(const LineCodeword& word, int lstar, std::uint64_t vstar, int r1, int r2,
                         Rng& rng) {
    const LineCodeParams& p = word.params();
    if (r1 < 1 || r2 < 1) throw std::invalid_argument("rlcc_decode: r1, r2 >= 1");
    if (lstar < 0 || static_cast<std::uint64_t>(lstar) >= p.num_lines)
        throw std::invalid_argument("rlcc_decode: line index range");
    const Line& Lstar = p.lines[lstar];

    int queries = 0;
    auto reader = [&](std::uint64_t line, std::uint64_t v) {
        ++queries;
        return word.bit(line, v);
    };

    // (1) r1 linearity tests on G_{L*}
    for (int r = 0; r < r1; ++r) {
        std::uint64_t v1 = rng.below64(p.block_bits);
        std::uint64_t v2 = rng.below64(p.block_bits);
        if ((reader(lstar, v1) ^ reader(lstar, v2) ^ reader(lstar, v1 ^ v2)) != 0)
            return {Outcome::bottom(), queries};
    }

    // (2) r2 consistency tests against the inner RLDC decoder
    std::uint64_t v4_first = 0;
    int g_v4_first = 0;
    for (int r = 0; r < r2; ++r) {
        std::vector<Point> pts = line_points(p, Lstar);
        Point y = pts[rng.below(static_cast<std::uint32_t>(pts.size()))];
        Elem alpha = rng.below64(p.field_size());
        int i = static_cast<int>(rng.below(static_cast<std::uint32_t>(p.t())));

        std::uint64_t v4 = rng.below64(p.block_bits);
        int g_v4 = reader(lstar, v4);
        int a_lstar = reader(lstar, interp_vector(p, Lstar, y, alpha, i) ^ v4) ^ g_v4;
        if (r == 0) {
            v4_first = v4;
            g_v4_first = g_v4;
        }

        DecodeResult inner = rldc_decode(word, y, alpha, i, 2, 2, true, rng);
        queries += inner.queries;
        if (inner.out.is_bottom()) return {Outcome::bottom(), queries};
        if (static_cast<int>(inner.out.value()) != a_lstar) return {Outcome::bottom(), queries};
    }

    // (3) final self-corrected read of the requested block bit
    int out = reader(lstar, vstar ^ v4_first) ^ g_v4_first;
    return {Outcome::of(static_cast<Scalar>(out)), queries};
}

double eta_bound(double epsilon, double delta, double d_over_n, int r1, int r2) {
    double d13 = std::cbrt(delta);
    double case1 = d13;
    double case2 = std::pow(1.0 - epsilon, r1) *
                   std::pow(d13 + d_over_n + (1.0 - d_over_n) * (0.5 + d13 + epsilon), r2);
    double case3 = std::pow(1.0 - epsilon, r1) * 2.0 * epsilon;
    return std::max({case1, case2, case3});
}

}  // namespace locus::linecode
