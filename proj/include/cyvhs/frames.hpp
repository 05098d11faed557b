#pragma once

#include <random>
#include <stdexcept>
#include <string>

#include "cyvhs/forms.hpp"
#include "cyvhs/jets.hpp"
#include "cyvhs/linalg.hpp"

namespace cyvhs {

// The canonical VHS together with everything the jet engine needs in frame coordinates.
struct FrameContext {
    CanonicalVHS vhs;      // standard coordinates
    AdaptedFrame frame;    // base frame F
    CanonicalVHS framed;   // the same VHS written in F
    GradedEnd graded;      // grading of `framed`
    ModelCoeffs model;     // ξ_a with ξ_a e_0 = e_a, in frame coordinates
    Matrix target_gram;
    std::vector<std::size_t> block_of;  // Hodge block q of each frame index
    std::map<int, CoordinateBasis> split;  // basis g_ℓ followed by g⊥_ℓ

    int weight() const { return vhs.weight; }
    std::size_t tangent_dim() const { return model.xi.size(); }
};

FrameContext make_frame_context(const CanonicalVHS& vhs);

enum class FrameErrorKind { not_horizontal, not_immersive, insufficient_order, bad_base_point, not_closed };

class FrameInputError : public std::runtime_error {
public:
    FrameInputError(FrameErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    FrameErrorKind kind() const { return kind_; }

private:
    FrameErrorKind kind_;
};

// e(t): columns are the frame vectors in standard coordinates.
struct FrameJet {
    MatrixJet e;
    std::size_t num_params() const { return e.num_params(); }
    std::size_t order() const { return e.order(); }
};

struct MCForm {
    std::vector<MatrixJet> theta;  // θ_i = e^{-1} ∂_i e, frame coordinates
    std::size_t valid_order = 0;   // J - 1
};

MCForm maurer_cartan(const FrameJet& f);
// ∂_i θ_j − ∂_j θ_i + [θ_i, θ_j] = 0 through valid_order
bool structure_equation_holds(const MCForm& mc);
// e^T G e equals the target Gram matrix through order J
bool gram_constant(const FrameJet& f, const FrameContext& ctx);
// θ_i^T T + T θ_i = 0 through valid_order
bool in_endomorphisms(const MCForm& mc, const FrameContext& ctx);

// E_ℓ-part of a frame-coordinate jet (entries mapping block q to block q − ℓ)
MatrixJet degree_part(const MatrixJet& x, int l, const FrameContext& ctx);
// (g-part, g⊥-part) of an E_ℓ-valued jet
// coefficients of degree above `through` are left at zero
std::pair<MatrixJet, MatrixJet> split_g(const MatrixJet& x_l, int l, const FrameContext& ctx, std::size_t through);

struct MCComponents {
    std::vector<MatrixJet> omega, eta, g_nonneg, gperp_nonneg;  // per parameter
};
MCComponents split_components(const MCForm& mc, const FrameContext& ctx);

bool horizontality_check(const MCForm& mc, const FrameContext& ctx);
// W(i, a) = θ_i^a_0 as jets
MatrixJet coframe_matrix(const MCForm& mc, const FrameContext& ctx);
bool immersion_check(const MCForm& mc, const FrameContext& ctx);
bool cy_check(const MCForm& mc, const FrameContext& ctx);

struct CharCoeffLevel {
    std::size_t k = 0;
    // q^μ_{ν a b}: rows μ (h_k), column (ν·m + a)·m + b with ν over h_{k-2}
    MatrixJet q;
    Matrix model;
    bool symmetric = false;
    bool matches_model = false;
};

// Requires CY input; throws FrameInputError otherwise.
std::vector<CharCoeffLevel> char_coeffs(const MCForm& mc, const FrameContext& ctx);

// θ^{μ_k}_{ν_{k-1}}(∂_i) − r^{μ_k}_{ν_{k-1} a} θ^a_0(∂_i), per parameter
std::vector<MatrixJet> level_residue(const MCForm& mc, const FrameContext& ctx, std::size_t k);

struct Verdict {
    bool congruent = false;
    std::string stage;  // "eta" or "reduction" when obstructed
    int level = 0;
    std::size_t parameter = 0;
    Exponent monomial;
    Matrix residue;
    Vector residue_class;  // reduction stage: class modulo the image of δ⁰
    std::size_t verified_order = 0;
};

struct ReductionResult {
    bool success = false;
    FrameJet reduced;
    std::vector<MatrixJet> corrections;  // ζ for levels 0..n, frame coordinates
    std::size_t verified_order = 0;
    Verdict obstruction;
};

ReductionResult frame_reduction(const FrameJet& f, const FrameContext& ctx);
Verdict eta_test(const FrameJet& f, const FrameContext& ctx);

// Sample frames
FrameJet model_frame(const FrameContext& ctx, std::size_t order);
FrameJet left_translate(const FrameJet& f, const Matrix& g);
FrameJet right_translate(const FrameJet& f, const Matrix& p);
// (I − Y)^{-1}(I + Y) for a random sparse rational Y in End(U,Q), standard coordinates
Matrix random_automorphism(const FrameContext& ctx, std::mt19937_64& rng);
// Random nonzero element of g⊥ ∩ E_{-1}, frame coordinates
Matrix random_gperp_minus_one(const FrameContext& ctx, std::mt19937_64& rng);
// F · exp(t(ξ + ζ)) with ξ ∈ g_{-1}, ζ ∈ g⊥ ∩ E_{-1} nonzero
FrameJet perturbed_curve(const FrameContext& ctx, std::size_t order, std::mt19937_64& rng, Matrix* zeta_out = nullptr);
// Y(t) with Y(0) = 0, random sparse End(U,Q)-valued coefficients in frame coordinates
MatrixJet random_algebra_jet(const FrameContext& ctx, std::size_t order, std::size_t params, std::mt19937_64& rng);
// g·F·exp(Y(t)); not adapted in general
FrameJet random_group_jet(const FrameContext& ctx, std::size_t order, std::size_t params, std::mt19937_64& rng);

}  // namespace cyvhs
