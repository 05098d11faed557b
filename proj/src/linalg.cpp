#include "cyvhs/linalg.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace cyvhs {

namespace detail {

std::vector<std::size_t> echelonize(std::vector<Vector>& rows, std::size_t ncols, bool reduced,
                                    std::size_t col_limit) {
    const std::size_t nrows = rows.size();
    std::vector<std::size_t> nnz(nrows, 0);
    for (std::size_t i = 0; i < nrows; ++i) {
        if (rows[i].size() != ncols) throw std::invalid_argument("echelonize: ragged rows");
        for (auto& x : rows[i]) nnz[i] += !x.is_zero();
    }

    std::vector<std::size_t> pivots;
    std::vector<std::size_t> support;
    std::size_t r = 0;
    for (std::size_t c = 0; c < col_limit && r < nrows; ++c) {
        // Markowitz-style choice: sparsest row, unit pivots preferred.
        std::size_t best = nrows;
        std::size_t best_score = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = r; i < nrows; ++i) {
            const Rational& x = rows[i][c];
            if (x.is_zero()) continue;
            bool unit = x.is_one() || (-x).is_one();
            std::size_t score = 2 * nnz[i] + (unit ? 0 : 1);
            if (score < best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best == nrows) continue;
        std::swap(rows[r], rows[best]);
        std::swap(nnz[r], nnz[best]);

        Vector& p = rows[r];
        Rational inv = p[c].inverse();
        support.clear();
        for (std::size_t j = c; j < ncols; ++j) {
            if (p[j].is_zero()) continue;
            if (!inv.is_one()) p[j] *= inv;
            support.push_back(j);
        }

        for (std::size_t i = reduced ? 0 : r + 1; i < nrows; ++i) {
            if (i == r) continue;
            Vector& q = rows[i];
            if (q[c].is_zero()) continue;
            Rational f = q[c];
            std::size_t count = nnz[i];
            for (std::size_t j : support) {
                bool was = !q[j].is_zero();
                q[j].sub_mul(f, p[j]);
                bool now = !q[j].is_zero();
                count = count + now - was;
            }
            nnz[i] = count;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

Subspace Subspace::span(std::size_t ambient, std::vector<Vector> vectors) {
    Subspace s(ambient);
    for (auto& v : vectors)
        if (v.size() != ambient) throw std::invalid_argument("Subspace::span: dimension mismatch");
    s.pivots_ = detail::echelonize(vectors, ambient, true, ambient);
    vectors.resize(s.pivots_.size());
    s.basis_ = std::move(vectors);
    return s;
}

Subspace Subspace::span_columns(const Matrix& m) {
    std::vector<Vector> cols;
    cols.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
    return span(m.rows(), std::move(cols));
}

Subspace Subspace::full(std::size_t ambient) {
    std::vector<Vector> units;
    for (std::size_t i = 0; i < ambient; ++i) units.push_back(unit_vector(ambient, i));
    return span(ambient, std::move(units));
}

Matrix Subspace::basis() const {
    return Matrix::from_columns(basis_, ambient_);
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace::coordinates: dimension mismatch");
    Vector c(basis_.size());
    Vector r = v;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        c[j] = v[pivots_[j]];
        if (c[j].is_zero()) continue;
        const Vector& b = basis_[j];
        for (std::size_t i = pivots_[j]; i < ambient_; ++i)
            if (!b[i].is_zero()) r[i].sub_mul(c[j], b[i]);
    }
    if (!is_zero(r)) return std::nullopt;
    return c;
}

bool Subspace::contains(const Vector& v) const {
    return coordinates(v).has_value();
}

bool Subspace::contains(const Subspace& s) const {
    if (s.ambient_ != ambient_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
    for (auto& v : s.basis_)
        if (!contains(v)) return false;
    return true;
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: dimension mismatch");
    std::vector<Vector> all = a.vectors();
    all.insert(all.end(), b.vectors().begin(), b.vectors().end());
    return Subspace::span(a.ambient_dim(), std::move(all));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: dimension mismatch");
    const std::size_t n = a.ambient_dim(), da = a.dim(), db = b.dim();
    if (da == 0 || db == 0) return Subspace(n);
    Matrix m(n, da + db);
    for (std::size_t j = 0; j < da; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = a.vectors()[j][i];
    for (std::size_t j = 0; j < db; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, da + j) = -b.vectors()[j][i];
    std::vector<Vector> out;
    for (auto& x : kernel_vectors(m)) {
        Vector v(n);
        for (std::size_t j = 0; j < da; ++j)
            if (!x[j].is_zero())
                for (std::size_t i = 0; i < n; ++i) v[i].add_mul(x[j], a.vectors()[j][i]);
        out.push_back(std::move(v));
    }
    return Subspace::span(n, std::move(out));
}

std::vector<Vector> quotient_basis(const Subspace& s) {
    std::vector<bool> is_pivot(s.ambient_dim(), false);
    for (auto p : s.pivots()) is_pivot[p] = true;
    std::vector<Vector> out;
    for (std::size_t i = 0; i < s.ambient_dim(); ++i)
        if (!is_pivot[i]) out.push_back(unit_vector(s.ambient_dim(), i));
    return out;
}

std::vector<Vector> complement_basis(const Subspace& t, const Subspace& s) {
    if (!t.contains(s)) throw std::invalid_argument("complement_basis: s is not contained in t");
    std::vector<Vector> residuals;
    for (auto v : t.vectors()) {
        for (std::size_t j = 0; j < s.dim(); ++j) {
            Rational c = v[s.pivots()[j]];
            if (c.is_zero()) continue;
            const Vector& b = s.vectors()[j];
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!b[i].is_zero()) v[i].sub_mul(c, b[i]);
        }
        residuals.push_back(std::move(v));
    }
    auto piv = detail::echelonize(residuals, t.ambient_dim(), true, t.ambient_dim());
    residuals.resize(piv.size());
    return residuals;
}

namespace {
std::vector<Vector> rows_of(const Matrix& m) {
    std::vector<Vector> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rows;
}

std::vector<Vector> kernel_from_reduced(const std::vector<Vector>& rows, const std::vector<std::size_t>& pivots,
                                        std::size_t ncols) {
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> out;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(ncols);
        v[f] = 1;
        for (std::size_t j = 0; j < pivots.size(); ++j)
            if (!rows[j][f].is_zero()) v[pivots[j]] = -rows[j][f];
        out.push_back(std::move(v));
    }
    return out;
}
}  // namespace

RrefResult rref(const Matrix& m) {
    auto rows = rows_of(m);
    RrefResult res;
    res.pivots = detail::echelonize(rows, m.cols(), true, m.cols());
    res.rank = res.pivots.size();
    res.reduced = Matrix::from_rows(rows, m.cols());
    res.kernel = Subspace::span(m.cols(), kernel_from_reduced(rows, res.pivots, m.cols()));
    std::vector<Vector> cols;
    for (auto p : res.pivots) cols.push_back(m.column(p));
    res.image = Subspace::span(m.rows(), std::move(cols));
    return res;
}

std::size_t rank(const Matrix& m) {
    auto rows = rows_of(m);
    return detail::echelonize(rows, m.cols(), false, m.cols()).size();
}

std::vector<Vector> kernel_vectors(const Matrix& m) {
    auto rows = rows_of(m);
    auto piv = detail::echelonize(rows, m.cols(), true, m.cols());
    return kernel_from_reduced(rows, piv, m.cols());
}

SolveResult solve(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rows(A) != len(b)");
    const std::size_t n = a.cols();
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Vector r = a.row(i);
        r.push_back(b[i]);
        rows.push_back(std::move(r));
    }
    auto piv = detail::echelonize(rows, n + 1, true, n);
    SolveResult res;
    for (std::size_t k = piv.size(); k < rows.size(); ++k)
        if (!rows[k][n].is_zero()) return res;
    res.consistent = true;
    res.particular.assign(n, Rational());
    for (std::size_t j = 0; j < piv.size(); ++j) res.particular[piv[j]] = rows[j][n];
    for (auto& r : rows) r.resize(n);
    res.kernel = Subspace::span(n, kernel_from_reduced(rows, piv, n));
    return res;
}

LinearSolver::LinearSolver(const Matrix& a) : rows_(a.rows()), cols_(a.cols()) {
    std::vector<Vector> rows;
    rows.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Vector r = a.row(i);
        r.resize(cols_ + rows_);
        r[cols_ + i] = 1;
        rows.push_back(std::move(r));
    }
    pivots_ = detail::echelonize(rows, cols_ + rows_, true, cols_);
    t_ = Matrix(rows_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j) t_(i, j) = rows[i][cols_ + j];
}

std::optional<Vector> LinearSolver::solve(const Vector& b) const {
    if (b.size() != rows_) throw std::invalid_argument("LinearSolver::solve: length mismatch");
    Vector y = t_ * b;
    for (std::size_t k = pivots_.size(); k < rows_; ++k)
        if (!y[k].is_zero()) return std::nullopt;
    Vector x(cols_);
    for (std::size_t j = 0; j < pivots_.size(); ++j) x[pivots_[j]] = y[j];
    return x;
}

Vector LinearSolver::cokernel_coordinates(const Vector& b) const {
    if (b.size() != rows_) throw std::invalid_argument("LinearSolver: length mismatch");
    Vector y = t_ * b;
    return Vector(y.begin() + static_cast<std::ptrdiff_t>(pivots_.size()), y.end());
}

CoordinateBasis::CoordinateBasis(std::size_t ambient, std::vector<Vector> vectors)
    : ambient_(ambient), vectors_(std::move(vectors)) {
    const std::size_t r = vectors_.size();
    std::vector<Vector> rows;
    rows.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
        if (vectors_[i].size() != ambient_) throw std::invalid_argument("CoordinateBasis: dimension mismatch");
        Vector row = vectors_[i];
        row.resize(ambient_ + r);
        row[ambient_ + i] = 1;
        rows.push_back(std::move(row));
    }
    pivots_ = detail::echelonize(rows, ambient_ + r, true, ambient_);
    if (pivots_.size() != r) throw std::invalid_argument("CoordinateBasis: vectors are linearly dependent");
    t_ = Matrix(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) t_(i, j) = rows[i][ambient_ + j];
        rows[i].resize(ambient_);
    }
    reduced_ = std::move(rows);
}

std::optional<Vector> CoordinateBasis::coordinates(const Vector& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("CoordinateBasis::coordinates: dimension mismatch");
    const std::size_t r = vectors_.size();
    Vector u(r);
    Vector res = v;
    for (std::size_t j = 0; j < r; ++j) {
        u[j] = v[pivots_[j]];
        if (u[j].is_zero()) continue;
        const Vector& b = reduced_[j];
        for (std::size_t i = pivots_[j]; i < ambient_; ++i)
            if (!b[i].is_zero()) res[i].sub_mul(u[j], b[i]);
    }
    if (!is_zero(res)) return std::nullopt;
    Vector c(r);
    for (std::size_t j = 0; j < r; ++j) {
        if (u[j].is_zero()) continue;
        for (std::size_t i = 0; i < r; ++i)
            if (!t_(j, i).is_zero()) c[i].add_mul(u[j], t_(j, i));
    }
    return c;
}

Vector CoordinateBasis::combine(const Vector& coeffs) const {
    if (coeffs.size() != vectors_.size()) throw std::invalid_argument("CoordinateBasis::combine: length mismatch");
    Vector v(ambient_);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j].is_zero()) continue;
        for (std::size_t i = 0; i < ambient_; ++i)
            if (!vectors_[j][i].is_zero()) v[i].add_mul(coeffs[j], vectors_[j][i]);
    }
    return v;
}

}  // namespace cyvhs

namespace cyvhs {

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
        Vector r = m.row(i);
        r.resize(2 * n);
        r[n + i] = 1;
        rows.push_back(std::move(r));
    }
    auto piv = detail::echelonize(rows, 2 * n, true, n);
    if (piv.size() != n) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
    return inv;
}

}  // namespace cyvhs
