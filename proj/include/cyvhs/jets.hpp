#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cyvhs/matrix.hpp"

namespace cyvhs {

using Exponent = std::vector<int>;

// Monomials in m variables of total degree ≤ J, graded order (degree, then lexicographic descending).
class MonomialTable {
public:
    MonomialTable(std::size_t num_vars, std::size_t order);

    std::size_t num_vars() const { return m_; }
    std::size_t order() const { return J_; }
    std::size_t size() const { return exps_.size(); }
    const Exponent& exponent(std::size_t i) const { return exps_[i]; }
    std::size_t degree(std::size_t i) const { return degree_[i]; }
    // number of monomials of degree ≤ k
    std::size_t count_through(std::size_t k) const;
    std::optional<std::size_t> index(const Exponent& e) const;
    // pairs (j, i*j) with deg i + deg j ≤ J
    const std::vector<std::pair<std::size_t, std::size_t>>& products(std::size_t i) const { return products_[i]; }
    // ∂/∂t_v of monomial i = coef · monomial; coef 0 when the derivative vanishes
    std::pair<int, std::size_t> derivative(std::size_t i, std::size_t v) const;

private:
    std::size_t m_, J_;
    std::vector<Exponent> exps_;
    std::vector<std::size_t> degree_, through_;
    std::map<Exponent, std::size_t> index_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> products_;
};

using TablePtr = std::shared_ptr<const MonomialTable>;
// Shared, cached per (m, J).
TablePtr monomial_table(std::size_t num_vars, std::size_t order);

// Matrix-valued truncated power series; coefficient i multiplies the monomial table->exponent(i).
class MatrixJet {
public:
    MatrixJet() = default;
    MatrixJet(TablePtr table, std::size_t rows, std::size_t cols);

    static MatrixJet constant(TablePtr table, const Matrix& c);
    static MatrixJet identity(TablePtr table, std::size_t d);
    // Σ_v t_v X_v
    static MatrixJet linear(TablePtr table, const std::vector<Matrix>& xs);

    const TablePtr& table() const { return table_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t order() const { return table_->order(); }
    std::size_t num_params() const { return table_->num_vars(); }

    Matrix& coeff(std::size_t i) { return coeffs_[i]; }
    const Matrix& coeff(std::size_t i) const { return coeffs_[i]; }
    Matrix& at(const Exponent& e);
    const Matrix& at(const Exponent& e) const;
    const Matrix& constant_term() const { return coeffs_[0]; }

    MatrixJet& operator+=(const MatrixJet& o);
    MatrixJet& operator-=(const MatrixJet& o);
    MatrixJet& operator*=(const Rational& s);
    MatrixJet operator*(const MatrixJet& o) const;
    MatrixJet operator+(const MatrixJet& o) const { return MatrixJet(*this) += o; }
    MatrixJet operator-(const MatrixJet& o) const { return MatrixJet(*this) -= o; }
    MatrixJet operator-() const;
    bool operator==(const MatrixJet& o) const;

    MatrixJet derivative(std::size_t v) const;
    MatrixJet transpose() const;
    MatrixJet block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    MatrixJet map(const std::function<Matrix(const Matrix&)>& f) const;
    // left and right multiplication by a constant matrix
    MatrixJet left(const Matrix& a) const;
    MatrixJet right(const Matrix& b) const;

    bool is_zero() const;
    bool is_zero_through(std::size_t degree) const;
    // first nonzero coefficient index of degree ≤ limit, or size()
    std::size_t first_nonzero(std::size_t limit) const;

private:
    TablePtr table_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Matrix> coeffs_;
};

// s is 1×1
MatrixJet scalar_mul(const MatrixJet& s, const MatrixJet& m);
// 1×1 jet of entry (i, j)
MatrixJet entry(const MatrixJet& m, std::size_t i, std::size_t j);

// Terminating exponential series; throws std::invalid_argument for a non-nilpotent constant term.
MatrixJet exp_jet(const MatrixJet& x);
// Neumann series around the constant term; throws std::invalid_argument if singular.
MatrixJet inverse_jet(const MatrixJet& e);
// f(φ(s)) with φ_v 1×1 jets in new variables and φ(0) = 0.
MatrixJet compose(const MatrixJet& f, const std::vector<MatrixJet>& phi);

}  // namespace cyvhs
