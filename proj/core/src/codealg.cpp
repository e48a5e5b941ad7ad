#include "locus/codealg.hpp"

#include <sstream>
#include <stdexcept>

namespace locus {

LinearCode::LinearCode(Field field, int k, int n, Mat gen_rows)
    : field_(field), k_(k), n_(n), rows_(std::move(gen_rows)) {
    if (k < 1 || n < k) throw std::invalid_argument("LinearCode: need 1 <= k <= n");
    if (static_cast<int>(rows_.size()) != n)
        throw std::invalid_argument("LinearCode: expected n generator rows");
    for (const auto& r : rows_) {
        if (static_cast<int>(r.size()) != k)
            throw std::invalid_argument("LinearCode: row length != k");
        for (Scalar s : r)
            if (s >= field_.size()) throw std::invalid_argument("LinearCode: scalar out of range");
    }
    if (rank(field_, rows_) != k)
        throw std::invalid_argument("LinearCode: generator matrix rank < k (map not injective)");
}

Vec encode(const LinearCode& code, const Vec& b) {
    if (static_cast<int>(b.size()) != code.k())
        throw std::invalid_argument("encode: message length != k");
    Vec x(code.n());
    for (int j = 0; j < code.n(); ++j) x[j] = dot(code.field(), code.row(j), b);
    return x;
}

std::optional<Vec> in_span(const Field& f, const Vec& v, const std::vector<int>& S,
                           const LinearCode& code) {
    Mat rows;
    rows.reserve(S.size());
    for (int j : S) rows.push_back(code.row(j));
    auto c = solve_combination(f, rows, v);
    if (!c) return std::nullopt;
    // invariant: returned coefficients reproduce v exactly
    Vec check(v.size(), 0);
    for (std::size_t i = 0; i < S.size(); ++i) add_scaled(f, check, (*c)[i], rows[i]);
    if (check != v) throw std::logic_error("in_span: solver returned a non-solution");
    return c;
}

Subspace restrict_code(const LinearCode& code, const std::vector<int>& S) {
    if (S.empty()) throw std::invalid_argument("restrict_code: S must be nonempty");
    Mat span;
    span.reserve(code.k());
    for (int m = 0; m < code.k(); ++m) {
        Vec e(code.k(), 0);
        e[m] = code.field().one();
        Vec x = encode(code, e);
        Vec xs(S.size());
        for (std::size_t i = 0; i < S.size(); ++i) xs[i] = x.at(S[i]);
        span.push_back(std::move(xs));
    }
    return make_subspace(code.field(), static_cast<int>(S.size()), std::move(span));
}

Subspace code_subspace(const LinearCode& code) {
    Mat span;
    span.reserve(code.k());
    for (int m = 0; m < code.k(); ++m) {
        Vec e(code.k(), 0);
        e[m] = code.field().one();
        span.push_back(encode(code, e));
    }
    return make_subspace(code.field(), code.n(), std::move(span));
}

Vec random_codeword_constrained(const LinearCode& code, const Vec& vstar, Scalar sigma, Rng& rng) {
    const Field& f = code.field();
    bool zero = true;
    for (Scalar s : vstar) zero &= (s == 0);
    if (zero) {
        if (sigma != 0)
            throw std::invalid_argument("random_codeword_constrained: <0, b> = sigma infeasible");
        Vec b(code.k());
        for (auto& s : b) s = rng.below(f.size());
        return b;
    }
    auto particular = solve_linear(f, Mat{vstar}, Vec{sigma});
    if (!particular) throw std::logic_error("random_codeword_constrained: no solution");
    Mat ker = kernel_basis(f, Mat{vstar}, code.k());
    Vec b = *particular;
    for (const auto& kv : ker) add_scaled(f, b, rng.below(f.size()), kv);
    return b;
}

std::uint64_t message_count(const LinearCode& code, std::uint64_t budget) {
    return space_size_checked(code.field(), code.k(), budget);
}

Vec message_at(const LinearCode& code, std::uint64_t index) {
    return unrank_vec(code.field(), index, code.k());
}

std::optional<Vec> decode_full(const LinearCode& code, const Vec& y) {
    if (static_cast<int>(y.size()) != code.n())
        throw std::invalid_argument("decode_full: word length != n");
    return solve_linear(code.field(), code.rows(), y);
}

int hamming(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
    return d;
}

std::string code_to_text(const LinearCode& code) {
    std::ostringstream out;
    out << "field " << code.field().tag() << "; k " << code.k() << "; n " << code.n() << "\n";
    for (const auto& r : code.rows()) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
        out << "\n";
    }
    return out.str();
}

LinearCode code_from_text(const std::string& text) {
    // ';' is a pure delimiter in the header line
    std::string cleaned = text;
    for (auto& ch : cleaned)
        if (ch == ';') ch = ' ';
    std::istringstream in(cleaned);
    std::string kw_field, tag, kw_k, kw_n;
    int k = 0, n = 0;
    in >> kw_field >> tag >> kw_k >> k >> kw_n >> n;
    if (kw_field != "field" || kw_k != "k" || kw_n != "n" || !in)
        throw std::invalid_argument("code header: expected 'field <tag>; k <k>; n <n>'");
    Field f = Field::parse(tag);
    Mat rows(n, Vec(k));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < k; ++i)
            if (!(in >> rows[j][i])) throw std::invalid_argument("code body: truncated rows");
    return LinearCode(f, k, n, std::move(rows));
}

LinearCode code_from_stream(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return code_from_text(buf.str());
}

}  // namespace locus
