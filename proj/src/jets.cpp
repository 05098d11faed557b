#include "cyvhs/jets.hpp"

#include <mutex>
#include <stdexcept>

#include "cyvhs/linalg.hpp"

namespace cyvhs {

namespace {

void compositions(std::size_t m, std::size_t k, std::size_t pos, Exponent& cur, std::vector<Exponent>& out) {
    if (pos + 1 == m) {
        cur[pos] = static_cast<int>(k);
        out.push_back(cur);
        return;
    }
    for (std::size_t a = k + 1; a-- > 0;) {
        cur[pos] = static_cast<int>(a);
        compositions(m, k - a, pos + 1, cur, out);
    }
}

}  // namespace

MonomialTable::MonomialTable(std::size_t num_vars, std::size_t order) : m_(num_vars), J_(order) {
    for (std::size_t k = 0; k <= J_; ++k) {
        if (m_ == 0) {
            if (k == 0) exps_.push_back({});
        } else {
            Exponent cur(m_, 0);
            compositions(m_, k, 0, cur, exps_);
        }
        through_.push_back(exps_.size());
    }
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        std::size_t deg = 0;
        for (int e : exps_[i]) deg += static_cast<std::size_t>(e);
        degree_.push_back(deg);
        index_.emplace(exps_[i], i);
    }
    products_.resize(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
        for (std::size_t j = 0; j < count_through(J_ - degree_[i]); ++j) {
            Exponent e = exps_[i];
            for (std::size_t v = 0; v < m_; ++v) e[v] += exps_[j][v];
            products_[i].emplace_back(j, index_.at(e));
        }
}

std::size_t MonomialTable::count_through(std::size_t k) const {
    return through_[std::min(k, J_)];
}

std::optional<std::size_t> MonomialTable::index(const Exponent& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::pair<int, std::size_t> MonomialTable::derivative(std::size_t i, std::size_t v) const {
    int a = exps_[i][v];
    if (a == 0) return {0, 0};
    Exponent e = exps_[i];
    --e[v];
    return {a, index_.at(e)};
}

TablePtr monomial_table(std::size_t num_vars, std::size_t order) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, TablePtr> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{num_vars, order}];
    if (!slot) slot = std::make_shared<const MonomialTable>(num_vars, order);
    return slot;
}

MatrixJet::MatrixJet(TablePtr table, std::size_t rows, std::size_t cols)
    : table_(std::move(table)), rows_(rows), cols_(cols), coeffs_(table_->size(), Matrix(rows, cols)) {}

MatrixJet MatrixJet::constant(TablePtr table, const Matrix& c) {
    MatrixJet j(std::move(table), c.rows(), c.cols());
    j.coeffs_[0] = c;
    return j;
}

MatrixJet MatrixJet::identity(TablePtr table, std::size_t d) { return constant(std::move(table), Matrix::identity(d)); }

MatrixJet MatrixJet::linear(TablePtr table, const std::vector<Matrix>& xs) {
    if (xs.size() != table->num_vars()) throw std::invalid_argument("MatrixJet::linear: one matrix per variable");
    if (xs.empty()) throw std::invalid_argument("MatrixJet::linear: no variables");
    MatrixJet j(table, xs[0].rows(), xs[0].cols());
    if (table->order() == 0) return j;
    for (std::size_t v = 0; v < xs.size(); ++v) {
        Exponent e(xs.size(), 0);
        e[v] = 1;
        j.at(e) = xs[v];
    }
    return j;
}

Matrix& MatrixJet::at(const Exponent& e) {
    auto i = table_->index(e);
    if (!i) throw std::out_of_range("MatrixJet: monomial beyond truncation order");
    return coeffs_[*i];
}

const Matrix& MatrixJet::at(const Exponent& e) const {
    auto i = table_->index(e);
    if (!i) throw std::out_of_range("MatrixJet: monomial beyond truncation order");
    return coeffs_[*i];
}

MatrixJet& MatrixJet::operator+=(const MatrixJet& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

MatrixJet& MatrixJet::operator-=(const MatrixJet& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

MatrixJet& MatrixJet::operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

MatrixJet MatrixJet::operator*(const MatrixJet& o) const {
    if (table_ != o.table_) throw std::invalid_argument("MatrixJet: different monomial tables");
    if (cols_ != o.rows_) throw std::invalid_argument("MatrixJet: shape mismatch");
    MatrixJet out(table_, rows_, o.cols_);
    std::vector<bool> nz(o.coeffs_.size());
    for (std::size_t j = 0; j < nz.size(); ++j) nz[j] = !o.coeffs_[j].is_zero();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (auto [j, k] : table_->products(i))
            if (nz[j]) mul_add(out.coeffs_[k], coeffs_[i], o.coeffs_[j]);
    }
    return out;
}

MatrixJet MatrixJet::operator-() const {
    MatrixJet out(*this);
    out *= Rational(-1);
    return out;
}

bool MatrixJet::operator==(const MatrixJet& o) const {
    return table_ == o.table_ && rows_ == o.rows_ && cols_ == o.cols_ && coeffs_ == o.coeffs_;
}

MatrixJet MatrixJet::derivative(std::size_t v) const {
    MatrixJet out(table_, rows_, cols_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        auto [a, k] = table_->derivative(i, v);
        if (a == 0 || coeffs_[i].is_zero()) continue;
        out.coeffs_[k].add_scaled(coeffs_[i], Rational(a));
    }
    return out;
}

MatrixJet MatrixJet::map(const std::function<Matrix(const Matrix&)>& f) const {
    MatrixJet out;
    out.table_ = table_;
    out.coeffs_.reserve(coeffs_.size());
    for (auto& c : coeffs_) out.coeffs_.push_back(f(c));
    out.rows_ = out.coeffs_[0].rows();
    out.cols_ = out.coeffs_[0].cols();
    return out;
}

MatrixJet MatrixJet::transpose() const {
    return map([](const Matrix& m) { return m.transpose(); });
}

MatrixJet MatrixJet::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    return map([&](const Matrix& m) { return m.block(r0, c0, nr, nc); });
}

MatrixJet MatrixJet::left(const Matrix& a) const {
    return map([&](const Matrix& m) { return a * m; });
}

MatrixJet MatrixJet::right(const Matrix& b) const {
    return map([&](const Matrix& m) { return m * b; });
}

bool MatrixJet::is_zero() const {
    for (auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

bool MatrixJet::is_zero_through(std::size_t degree) const {
    return first_nonzero(degree) == coeffs_.size();
}

std::size_t MatrixJet::first_nonzero(std::size_t limit) const {
    const std::size_t n = table_->count_through(limit);
    for (std::size_t i = 0; i < n; ++i)
        if (!coeffs_[i].is_zero()) return i;
    return coeffs_.size();
}

MatrixJet scalar_mul(const MatrixJet& s, const MatrixJet& m) {
    if (s.rows() != 1 || s.cols() != 1) throw std::invalid_argument("scalar_mul: scalar jet must be 1x1");
    MatrixJet out(m.table(), m.rows(), m.cols());
    const auto& t = *m.table();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Rational& a = s.coeff(i)(0, 0);
        if (a.is_zero()) continue;
        for (auto [j, k] : t.products(i))
            if (!m.coeff(j).is_zero()) out.coeff(k).add_scaled(m.coeff(j), a);
    }
    return out;
}

MatrixJet entry(const MatrixJet& m, std::size_t i, std::size_t j) { return m.block(i, j, 1, 1); }

MatrixJet exp_jet(const MatrixJet& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("exp_jet: square jet required");
    const std::size_t d = x.rows();
    Matrix p = Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) p = p * x.constant_term();
    if (!p.is_zero()) throw std::invalid_argument("exp_jet: constant term is not nilpotent");
    MatrixJet acc = MatrixJet::identity(x.table(), d);
    MatrixJet term = acc;
    const std::size_t cap = (x.order() + 1) * (d + 1);
    for (std::size_t k = 1;; ++k) {
        if (k > cap) throw std::logic_error("exp_jet: series failed to terminate");
        term = term * x;
        term *= Rational(1, static_cast<long long>(k));
        if (term.is_zero()) break;
        acc += term;
    }
    return acc;
}

MatrixJet inverse_jet(const MatrixJet& e) {
    auto e0inv = inverse(e.constant_term());
    if (!e0inv) throw std::invalid_argument("inverse_jet: singular constant term");
    const std::size_t d = e.rows();
    MatrixJet n = e.left(*e0inv);
    n.coeff(0) = Matrix(d, d);  // e0^{-1} e − I
    n *= Rational(-1);
    MatrixJet acc = MatrixJet::identity(e.table(), d);
    MatrixJet term = acc;
    for (std::size_t k = 1; k <= e.order(); ++k) {
        term = term * n;
        if (term.is_zero()) break;
        acc += term;
    }
    return acc.right(*e0inv);
}

MatrixJet compose(const MatrixJet& f, const std::vector<MatrixJet>& phi) {
    if (phi.size() != f.num_params()) throw std::invalid_argument("compose: one substitution per variable");
    if (phi.empty()) return f;
    const TablePtr& nt = phi[0].table();
    for (auto& p : phi)
        if (p.rows() != 1 || p.cols() != 1 || !p.constant_term().is_zero() || p.table() != nt)
            throw std::invalid_argument("compose: substitutions must be 1x1 jets vanishing at 0");
    const auto& t = *f.table();
    // powers[v][a] = φ_v^a
    std::vector<std::vector<MatrixJet>> powers(phi.size());
    for (std::size_t v = 0; v < phi.size(); ++v) {
        powers[v].push_back(MatrixJet::identity(nt, 1));
        for (std::size_t a = 1; a <= t.order(); ++a) powers[v].push_back(powers[v].back() * phi[v]);
    }
    MatrixJet out(nt, f.rows(), f.cols());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        MatrixJet mono = MatrixJet::identity(nt, 1);
        for (std::size_t v = 0; v < phi.size(); ++v)
            if (t.exponent(i)[v] > 0) mono = mono * powers[v][static_cast<std::size_t>(t.exponent(i)[v])];
        out += scalar_mul(mono, MatrixJet::constant(nt, f.coeff(i)));
    }
    return out;
}

}  // namespace cyvhs
