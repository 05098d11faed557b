#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "cyvhs/rational.hpp"

namespace cyvhs {

using Vector = std::vector<Rational>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    // Row-major reshape of a flat vector.
    static Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const Vector& data() const { return data_; }
    Vector row(std::size_t i) const;
    Vector column(std::size_t j) const;
    void set_column(std::size_t j, const Vector& v);
    Vector flatten() const { return data_; }

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    bool is_zero() const;
    std::size_t nonzeros() const;
    Rational trace() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Rational& s);
    void add_scaled(const Matrix& o, const Rational& s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vector operator*(const Matrix& a, const Vector& v);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix operator-() const;
    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vector data_;
};

// Adds a*b into c without allocating a temporary.
void mul_add(Matrix& c, const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);
// tr(AB) without forming the product.
Rational trace_product(const Matrix& a, const Matrix& b);

bool is_zero(const Vector& v);
Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector scaled(Vector v, const Rational& s);
Rational dot(const Vector& a, const Vector& b);
Vector unit_vector(std::size_t n, std::size_t i);

}  // namespace cyvhs
