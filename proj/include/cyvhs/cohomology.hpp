#pragma once

#include <map>

#include "cyvhs/hodge_rep.hpp"

namespace cyvhs {

// Cochains of graded degree m: C^0_m = g⊥_m, C^1_m = g⊥_{m-1} ⊗ g_{-1}^*,
// C^2_m = g⊥_{m-2} ⊗ Λ²g_{-1}^*. Coordinates use the bases of GradedEnd::gperp_mats,
// with the cochain index (i, a) at i * dim g_{-1} + a and pairs (b < c) in lexicographic order.
struct DegreeSlice {
    int m = 0;
    std::size_t c0_dim = 0, c1_dim = 0, c2_dim = 0;
    Matrix delta0;  // c1 × c0
    Matrix delta1;  // c2 × c1
    std::size_t rank0 = 0, rank1 = 0;
    bool composite_zero = true;
    bool graded = true;  // every bracket landed in the expected graded piece

    std::size_t h1() const { return c1_dim - rank1 - rank0; }
};

struct CochainComplexSlice {
    std::size_t tangent_dim = 0;
    std::size_t c0_dim = 0, c1_dim = 0, c2_dim = 0;
    std::map<int, DegreeSlice> degrees;

    bool composite_zero() const;
    bool grading_preserved() const;
};

CochainComplexSlice build_complex(const CanonicalVHS& vhs, const GradedEnd& graded);
std::map<int, std::size_t> h1_graded(const CochainComplexSlice& complex);
// {ζ ∈ g⊥_{ℓ+1} : [ξ, ζ] = 0 for all ξ ∈ g_{-1}}, inside flattened End(U)
Subspace centralizer_gamma(const GradedEnd& graded, int l);

}  // namespace cyvhs
