#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cyvhs/linalg.hpp"

namespace cyvhs {

enum class Family { A, C, BD };
std::string family_name(Family f);
Family parse_family(std::string_view s);

struct BilinearForm {
    Matrix gram;
    int symmetry = 1;  // +1 symmetric, -1 alternating

    Rational operator()(const Vector& u, const Vector& v) const;
};

struct HodgePiece {
    int p = 0, q = 0;
    Subspace space;
};

struct CanonicalVHS {
    Family family = Family::A;
    std::size_t size = 0;
    std::size_t dim_U = 0;
    int weight = 0;
    BilinearForm Q;
    std::vector<Matrix> g_basis;
    Matrix grading_element;
    // ordered by decreasing p, so hodge_pieces[q] is U^{n-q,q}
    std::vector<HodgePiece> hodge_pieces;

    const Subspace& hodge(int p) const;
    // F^p = sum of U^{r,n-r}, r >= p
    Subspace filtration(int p) const;
    std::vector<std::size_t> hodge_numbers() const;
};

CanonicalVHS build_family(Family family, std::size_t size);

// Degree-indexed pieces; missing keys mean the zero subspace.
struct GradedEnd {
    std::size_t dim_U = 0;
    Subspace ambient;  // End(U,Q) inside Q^{d*d}, matrices flattened row-major
    std::map<int, Subspace> E, g, gperp;
    std::map<int, std::vector<Matrix>> E_mats, g_mats, gperp_mats;

    int min_degree() const { return E.empty() ? 0 : E.begin()->first; }
    int max_degree() const { return E.empty() ? 0 : E.rbegin()->first; }
    const Subspace& E_at(int l) const;
    const Subspace& g_at(int l) const;
    const Subspace& gperp_at(int l) const;
    const std::vector<Matrix>& g_basis_at(int l) const;
    const std::vector<Matrix>& gperp_basis_at(int l) const;
    std::size_t gperp_dim() const;
};

GradedEnd grade_endomorphisms(const CanonicalVHS& vhs);

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, std::size_t d);
std::vector<Matrix> as_matrices(const Subspace& s, std::size_t d);
// X^T G + G X == 0
bool preserves_form(const Matrix& x, const BilinearForm& q);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
    bool informational = false;
};

struct StructureReport {
    std::vector<Check> checks;
    bool all_passed() const;
};

StructureReport verify_structure(const CanonicalVHS& vhs, const GradedEnd& graded);

struct AdaptedFrame {
    Matrix basis_matrix;                    // columns e_0..e_d
    std::vector<std::size_t> flag_dims;     // d^p for p = n, n-1, ..., 0
    std::vector<std::size_t> block_offsets;  // first column of each U^{n-q,q}, indexed by q
    std::vector<std::size_t> block_sizes;

    // target Gram matrix of the frame
    Matrix target_gram(int symmetry) const;
};

AdaptedFrame build_adapted_frame(const CanonicalVHS& vhs);

// The same VHS written in the basis given by the frame columns.
CanonicalVHS in_frame(const CanonicalVHS& vhs, const AdaptedFrame& frame);

}  // namespace cyvhs
