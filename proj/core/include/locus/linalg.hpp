#pragma once

#include "locus/field.hpp"
#include "locus/rng.hpp"

#include <optional>
#include <vector>

namespace locus {

/// Dense row-major matrix over a runtime field. Desk-scale sizes throughout.
using Mat = std::vector<Vec>;

/// In-place Gauss-Jordan to reduced row echelon form; returns pivot columns.
std::vector<int> rref(const Field& f, Mat& m);

int rank(const Field& f, Mat m);

/// Basis of the right kernel {x : A x = 0}, rows of the result, in RREF.
Mat kernel_basis(const Field& f, const Mat& a, int ncols);

/// One solution of A x = b, if any.
std::optional<Vec> solve_linear(const Field& f, const Mat& a, const Vec& b);

/// Coefficients c with sum_i c_i rows[i] = v, if any.
std::optional<Vec> solve_combination(const Field& f, const Mat& rows, const Vec& v);

/// Linear subspace of F^ambient with a canonical (RREF) basis, so equality of
/// subspaces is representation equality.
struct Subspace {
    Field field;
    int ambient = 0;
    Mat basis;  // RREF, no zero rows

    int dim() const { return static_cast<int>(basis.size()); }
    bool operator==(const Subspace& o) const {
        return field == o.field && ambient == o.ambient && basis == o.basis;
    }
};

Subspace make_subspace(const Field& f, int ambient, Mat spanning);

bool contains(const Subspace& s, const Vec& v);

/// V subseteq W
bool subspace_leq(const Subspace& v, const Subspace& w);

/// Orthogonal complement under the standard inner product.
Subspace dual(const Subspace& s);

/// X_{subseteq S}: elements of s supported inside S (same ambient space).
Subspace support_subcode(const Subspace& s, const std::vector<int>& S);

/// Coordinate projection onto S (ambient becomes |S|, order of S respected).
Subspace restrict_to(const Subspace& s, const std::vector<int>& S);

/// dim(W) - dim(V); throws if V is not contained in W.
int quotient_dim(const Subspace& w, const Subspace& v);

/// Uniform element of the subspace.
Vec sample_subspace(const Subspace& s, Rng& rng);

}  // namespace locus
