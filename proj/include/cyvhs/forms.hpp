#pragma once

#include <vector>

#include "cyvhs/hodge_rep.hpp"
#include "cyvhs/multi_index.hpp"

namespace cyvhs {

// A symmetric k-linear form on an m-dimensional tangent space with values in a
// quotient space (classes of quotient_basis modulo denominator).
struct CharForm {
    std::size_t k = 0;
    std::size_t domain_dim = 0;
    std::vector<Tuple> multi_indices;   // sorted tuples, lexicographic
    Matrix coeffs;                      // multi_indices.size() × codomain dim
    std::vector<Vector> quotient_basis;  // representatives in U of the codomain basis
    Subspace denominator;

    std::size_t codomain_dim() const { return coeffs.cols(); }
    std::size_t rank() const;
    // C^k: span of the component polynomials, in symmetric-tensor coordinates
    Subspace span() const;
};

// γ^k at the base point; tangent directions default to the canonical basis of g_{-1}.
CharForm characteristic_form(const CanonicalVHS& vhs, const GradedEnd& graded, std::size_t k);
CharForm characteristic_form(const CanonicalVHS& vhs, std::size_t k, const std::vector<Matrix>& tangent);

struct OscFiltration {
    std::vector<Subspace> T;  // T^0 ⊂ T^1 ⊂ … ⊂ T^m, strictly increasing
    std::size_t m() const { return T.empty() ? 0 : T.size() - 1; }
};

OscFiltration osculating_filtration(const CanonicalVHS& vhs, const GradedEnd& graded);

// ψ^k expressed in a basis of T^k / T^{k-1}.
CharForm fundamental_form(const CanonicalVHS& vhs, const GradedEnd& graded, std::size_t k);

// Re-expresses a form in another basis of the same quotient.
CharForm rebase(const CharForm& form, const std::vector<Vector>& new_basis);

struct ModelCoeffs {
    std::vector<Matrix> xi;                  // ξ_a in frame coordinates, ξ_a e_0 = e_a
    std::vector<std::vector<Matrix>> r;      // r[k][a]: h_k × h_{k-1} block; r[0] empty
    std::vector<CharForm> rtilde;            // symmetrized composites, k = 0..n
    std::vector<std::size_t> block_offsets, block_sizes;
};

ModelCoeffs model_r_coeffs(const CanonicalVHS& vhs, const GradedEnd& graded, const AdaptedFrame& frame);
// Rank of the stacked system {r^{μ_k}_{ν a} Y_μ = 0}; injective iff equal to h_k.
std::size_t model_r_rank(const ModelCoeffs& model, std::size_t k);

std::vector<std::size_t> invariant_dims(const std::vector<CharForm>& forms);
// Pulls a form back along λ: (λ^*T)(x_1..x_k) = T(λx_1..λx_k).
CharForm transform_form(const CharForm& form, const Matrix& lambda);
bool check_isomorphism_under(const Matrix& lambda, const std::vector<CharForm>& forms_a,
                             const std::vector<CharForm>& forms_b);

}  // namespace cyvhs
