#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cyvhs/matrix.hpp"

namespace cyvhs {

enum class PowerKind { wedge, sym };

using Tuple = std::vector<int>;

// Index tuples of Λ^k or Sym^k of an m-dimensional space, in lexicographic order.
class MultiIndexTable {
public:
    MultiIndexTable(std::size_t base_dim, std::size_t degree, PowerKind kind);

    std::size_t base_dim() const { return base_dim_; }
    std::size_t degree() const { return degree_; }
    PowerKind kind() const { return kind_; }
    std::size_t size() const { return tuples_.size(); }
    const Tuple& operator[](std::size_t i) const { return tuples_[i]; }
    const std::vector<Tuple>& tuples() const { return tuples_; }
    // Position of a tuple already in canonical (sorted) form.
    std::optional<std::size_t> position(const Tuple& t) const;

private:
    std::size_t base_dim_, degree_;
    PowerKind kind_;
    std::vector<Tuple> tuples_;
};

// Sorts t in place. Returns the permutation sign, or 0 when a wedge tuple repeats an index.
int canonicalize(Tuple& t, PowerKind kind);

// Derivation action of X on the k-th wedge or symmetric power, in the
// MultiIndexTable basis (wedge: e_{i1}∧…∧e_{ik}; sym: monomials e_{i1}⋯e_{ik}).
Matrix induced_power_operator(const Matrix& x, std::size_t k, PowerKind kind);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace cyvhs
