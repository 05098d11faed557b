#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cyvhs/matrix.hpp"

namespace cyvhs {

namespace detail {
// Gaussian elimination on a list of rows, in place. Pivots are only taken in
// columns < col_limit. With `reduced` the result is the reduced row echelon
// form, otherwise plain echelon form. Returns the pivot columns; rows beyond
// the returned count are zero in the pivot range.
std::vector<std::size_t> echelonize(std::vector<Vector>& rows, std::size_t ncols, bool reduced,
                                    std::size_t col_limit);
}  // namespace detail

// A linear subspace of Q^n stored by its canonical basis: the nonzero rows of
// the reduced row echelon form of any spanning set. Two subspaces are equal
// iff their stored bases are identical.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    static Subspace span(std::size_t ambient, std::vector<Vector> vectors);
    static Subspace span_columns(const Matrix& m);
    static Subspace full(std::size_t ambient);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    // ambient × dim, columns in reduced column-echelon form
    Matrix basis() const;
    const std::vector<Vector>& vectors() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const Vector& v) const;
    bool contains(const Subspace& s) const;
    // Coordinates w.r.t. the canonical basis, nullopt when v is not a member.
    std::optional<Vector> coordinates(const Vector& v) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    std::vector<Vector> basis_;
    std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
// Vectors whose classes form a basis of ambient / s.
std::vector<Vector> quotient_basis(const Subspace& s);
// Basis of a complement of s inside t, chosen among t's canonical vectors.
std::vector<Vector> complement_basis(const Subspace& t, const Subspace& s);

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    Subspace kernel;
    Subspace image;
};
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);
// Unnormalized kernel basis read off the reduced form (one vector per free column).
std::vector<Vector> kernel_vectors(const Matrix& m);

struct SolveResult {
    bool consistent = false;
    Vector particular;
    Subspace kernel;
};
SolveResult solve(const Matrix& a, const Vector& b);

// Factors A once (T·A = R in reduced form) and then answers many right-hand sides.
class LinearSolver {
public:
    LinearSolver() = default;
    explicit LinearSolver(const Matrix& a);

    std::size_t rank() const { return pivots_.size(); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::optional<Vector> solve(const Vector& b) const;
    // Coordinates of b modulo image(A) in a fixed basis of the cokernel; zero iff b ∈ image(A).
    Vector cokernel_coordinates(const Vector& b) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::size_t> pivots_;
    Matrix t_;
};

// Coordinates with respect to an arbitrary list of independent vectors.
class CoordinateBasis {
public:
    CoordinateBasis() = default;
    CoordinateBasis(std::size_t ambient, std::vector<Vector> vectors);

    std::size_t dim() const { return vectors_.size(); }
    std::size_t ambient_dim() const { return ambient_; }
    const std::vector<Vector>& vectors() const { return vectors_; }
    std::optional<Vector> coordinates(const Vector& v) const;
    Vector combine(const Vector& coeffs) const;

private:
    std::size_t ambient_ = 0;
    std::vector<Vector> vectors_;
    std::vector<Vector> reduced_;
    std::vector<std::size_t> pivots_;
    Matrix t_;
};

}  // namespace cyvhs

namespace cyvhs {
// nullopt when singular
std::optional<Matrix> inverse(const Matrix& m);
}  // namespace cyvhs
