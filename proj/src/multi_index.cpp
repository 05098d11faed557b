#include "cyvhs/multi_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyvhs {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

MultiIndexTable::MultiIndexTable(std::size_t base_dim, std::size_t degree, PowerKind kind)
    : base_dim_(base_dim), degree_(degree), kind_(kind) {
    Tuple t(degree);
    // Recursive lexicographic enumeration.
    auto rec = [&](auto&& self, std::size_t pos, int start) -> void {
        if (pos == degree) {
            tuples_.push_back(t);
            return;
        }
        for (int i = start; i < static_cast<int>(base_dim); ++i) {
            t[pos] = i;
            self(self, pos + 1, kind == PowerKind::wedge ? i + 1 : i);
        }
    };
    rec(rec, 0, 0);
}

std::optional<std::size_t> MultiIndexTable::position(const Tuple& t) const {
    auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t);
    if (it == tuples_.end() || *it != t) return std::nullopt;
    return static_cast<std::size_t>(it - tuples_.begin());
}

int canonicalize(Tuple& t, PowerKind kind) {
    int sign = 1;
    // insertion sort, counting transpositions
    for (std::size_t i = 1; i < t.size(); ++i)
        for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
            std::swap(t[j - 1], t[j]);
            sign = -sign;
        }
    if (kind == PowerKind::sym) return 1;
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1]) return 0;
    return sign;
}

Matrix induced_power_operator(const Matrix& x, std::size_t k, PowerKind kind) {
    if (x.rows() != x.cols()) throw std::invalid_argument("induced_power_operator: X must be square");
    MultiIndexTable table(x.rows(), k, kind);
    Matrix out(table.size(), table.size());
    for (std::size_t col = 0; col < table.size(); ++col) {
        const Tuple& src = table[col];
        for (std::size_t s = 0; s < k; ++s) {
            for (std::size_t r = 0; r < x.rows(); ++r) {
                const Rational& c = x(r, static_cast<std::size_t>(src[s]));
                if (c.is_zero()) continue;
                Tuple t = src;
                t[s] = static_cast<int>(r);
                int sign = canonicalize(t, kind);
                if (sign == 0) continue;
                std::size_t row = *table.position(t);
                if (sign > 0) out(row, col) += c;
                else out(row, col) -= c;
            }
        }
    }
    return out;
}

}  // namespace cyvhs
