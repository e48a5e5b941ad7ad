#include "locus/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace locus {

std::vector<int> rref(const Field& f, Mat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        const Scalar s = f.inv(m[r][c]);
        for (int j = c; j < cols; ++j) m[r][j] = f.mul(m[r][j], s);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Scalar factor = m[i][c];
            for (int j = c; j < cols; ++j)
                m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);  // drop zero rows
    return pivots;
}

int rank(const Field& f, Mat m) {
    rref(f, m);
    return static_cast<int>(m.size());
}

Mat kernel_basis(const Field& f, const Mat& a, int ncols) {
    Mat m = a;
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != ncols)
            throw std::invalid_argument("kernel_basis: ragged matrix");
    std::vector<int> pivots = rref(f, m);
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivots) is_pivot[c] = true;

    Mat ker;
    for (int c = 0; c < ncols; ++c) {
        if (is_pivot[c]) continue;
        Vec x(ncols, 0);
        x[c] = f.one();
        for (std::size_t r = 0; r < m.size(); ++r)
            x[pivots[r]] = f.neg(m[r][c]);
        ker.push_back(std::move(x));
    }
    rref(f, ker);
    return ker;
}

std::optional<Vec> solve_linear(const Field& f, const Mat& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("solve_linear: size mismatch");
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return Vec{};
    const int cols = static_cast<int>(a[0].size());
    Mat aug(rows, Vec(cols + 1));
    for (int i = 0; i < rows; ++i) {
        std::copy(a[i].begin(), a[i].end(), aug[i].begin());
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots = rref(f, aug);
    Vec x(cols, 0);
    for (std::size_t r = 0; r < aug.size(); ++r) {
        if (pivots[r] == cols) return std::nullopt;  // row 0 ... 0 | 1
        x[pivots[r]] = aug[r][cols];
    }
    return x;
}

std::optional<Vec> solve_combination(const Field& f, const Mat& rows, const Vec& v) {
    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(v.size());
    Mat at(n, Vec(m));
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("solve_combination: length mismatch");
        for (int j = 0; j < n; ++j) at[j][i] = rows[i][j];
    }
    return solve_linear(f, at, v);
}

Subspace make_subspace(const Field& f, int ambient, Mat spanning) {
    for (const auto& row : spanning)
        if (static_cast<int>(row.size()) != ambient)
            throw std::invalid_argument("make_subspace: vector length != ambient");
    rref(f, spanning);
    return Subspace{f, ambient, std::move(spanning)};
}

bool contains(const Subspace& s, const Vec& v) {
    if (static_cast<int>(v.size()) != s.ambient)
        throw std::invalid_argument("contains: length mismatch");
    Vec w = v;
    for (const auto& row : s.basis) {
        int pc = -1;
        for (int j = 0; j < s.ambient; ++j)
            if (row[j] != 0) { pc = j; break; }
        if (pc < 0) continue;
        if (w[pc] != 0) {
            const Scalar c = w[pc];
            for (int j = 0; j < s.ambient; ++j)
                w[j] = s.field.sub(w[j], s.field.mul(c, row[j]));
        }
    }
    return std::all_of(w.begin(), w.end(), [](Scalar x) { return x == 0; });
}

bool subspace_leq(const Subspace& v, const Subspace& w) {
    if (v.ambient != w.ambient || v.field != w.field) return false;
    for (const auto& row : v.basis)
        if (!contains(w, row)) return false;
    return true;
}

Subspace dual(const Subspace& s) {
    return Subspace{s.field, s.ambient, kernel_basis(s.field, s.basis, s.ambient)};
}

Subspace support_subcode(const Subspace& s, const std::vector<int>& S) {
    std::vector<bool> in_s(s.ambient, false);
    for (int j : S) in_s.at(j) = true;
    std::vector<int> outside;
    for (int j = 0; j < s.ambient; ++j)
        if (!in_s[j]) outside.push_back(j);

    // combos c of basis rows with (c^T B)|_outside = 0
    const int r = s.dim();
    Mat cond(outside.size(), Vec(r));
    for (std::size_t i = 0; i < outside.size(); ++i)
        for (int b = 0; b < r; ++b) cond[i][b] = s.basis[b][outside[i]];
    Mat combos = kernel_basis(s.field, cond, r);

    Mat span;
    for (const auto& c : combos) {
        Vec x(s.ambient, 0);
        for (int b = 0; b < r; ++b) add_scaled(s.field, x, c[b], s.basis[b]);
        span.push_back(std::move(x));
    }
    return make_subspace(s.field, s.ambient, std::move(span));
}

Subspace restrict_to(const Subspace& s, const std::vector<int>& S) {
    Mat span;
    for (const auto& row : s.basis) {
        Vec x(S.size());
        for (std::size_t i = 0; i < S.size(); ++i) x[i] = row.at(S[i]);
        span.push_back(std::move(x));
    }
    return make_subspace(s.field, static_cast<int>(S.size()), std::move(span));
}

int quotient_dim(const Subspace& w, const Subspace& v) {
    if (!subspace_leq(v, w))
        throw std::invalid_argument("quotient_dim: V is not contained in W");
    return w.dim() - v.dim();
}

Vec sample_subspace(const Subspace& s, Rng& rng) {
    Vec x(s.ambient, 0);
    for (const auto& row : s.basis)
        add_scaled(s.field, x, rng.below(s.field.size()), row);
    return x;
}

}  // namespace locus
