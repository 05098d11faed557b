#include "cyvhs/cohomology.hpp"

#include <stdexcept>

#include "cyvhs/linalg.hpp"
#include "cyvhs/parallel.hpp"

namespace cyvhs {

bool CochainComplexSlice::composite_zero() const {
    for (auto& [m, s] : degrees)
        if (!s.composite_zero) return false;
    return true;
}

bool CochainComplexSlice::grading_preserved() const {
    for (auto& [m, s] : degrees)
        if (!s.graded) return false;
    return true;
}

namespace {

// Writes the coordinates of [x, y] in g⊥_target at rows offset + stride * i; false if outside.
bool place_bracket(const Matrix& x, const Matrix& y, const Subspace& target, Matrix& out, std::size_t col,
                   std::size_t offset, std::size_t stride, const Rational& sign) {
    Matrix b = commutator(x, y);
    if (b.is_zero()) return true;
    auto c = target.coordinates(vec(b));
    if (!c) return false;
    for (std::size_t i = 0; i < c->size(); ++i)
        if (!(*c)[i].is_zero()) out(offset + stride * i, col).add_mul(sign, (*c)[i]);
    return true;
}

DegreeSlice build_degree(const GradedEnd& graded, int m) {
    const auto& xi = graded.g_basis_at(-1);
    const std::size_t t = xi.size();
    const std::size_t pairs = t * (t - 1) / 2;
    const auto& z0 = graded.gperp_basis_at(m);
    const auto& z1 = graded.gperp_basis_at(m - 1);
    const auto& z2 = graded.gperp_basis_at(m - 2);

    DegreeSlice s;
    s.m = m;
    s.c0_dim = z0.size();
    s.c1_dim = z1.size() * t;
    s.c2_dim = z2.size() * pairs;

    // δ⁰(ζ)(ξ_a) = [ξ_a, ζ]
    s.delta0 = Matrix(s.c1_dim, s.c0_dim);
    for (std::size_t j = 0; j < z0.size(); ++j)
        for (std::size_t a = 0; a < t; ++a)
            s.graded &= place_bracket(xi[a], z0[j], graded.gperp_at(m - 1), s.delta0, j, a, t, Rational(1));

    // δ¹(ζ_j ⊗ ξ_a^*)(ξ_b, ξ_c) = δ_ab [ζ_j, ξ_c] − δ_ac [ζ_j, ξ_b]
    s.delta1 = Matrix(s.c2_dim, s.c1_dim);
    std::vector<std::vector<std::size_t>> pair_index(t, std::vector<std::size_t>(t, 0));
    for (std::size_t b = 0, p = 0; b < t; ++b)
        for (std::size_t c = b + 1; c < t; ++c) pair_index[b][c] = p++;
    for (std::size_t j = 0; j < z1.size(); ++j)
        for (std::size_t a = 0; a < t; ++a) {
            const std::size_t col = j * t + a;
            for (std::size_t c = 0; c < t; ++c) {
                if (c == a) continue;
                // pair (a, c) if a < c contributes +[ζ, ξ_c]; pair (c, a) if c < a contributes −[ζ, ξ_c]
                Rational sign = a < c ? Rational(1) : Rational(-1);
                std::size_t p = a < c ? pair_index[a][c] : pair_index[c][a];
                s.graded &= place_bracket(z1[j], xi[c], graded.gperp_at(m - 2), s.delta1, col, p, pairs, sign);
            }
        }

    s.rank0 = rank(s.delta0);
    s.rank1 = rank(s.delta1);
    s.composite_zero = (s.delta1 * s.delta0).is_zero();
    return s;
}

}  // namespace

CochainComplexSlice build_complex(const CanonicalVHS& vhs, const GradedEnd& graded) {
    CochainComplexSlice cx;
    cx.tangent_dim = graded.g_basis_at(-1).size();
    const int n = vhs.weight;
    std::vector<int> ms;
    for (int m = -n; m <= n + 2; ++m) ms.push_back(m);
    std::vector<DegreeSlice> slices(ms.size());
    parallel_for(ms.size(), [&](std::size_t i) { slices[i] = build_degree(graded, ms[i]); });
    for (auto& s : slices) {
        cx.c0_dim += s.c0_dim;
        cx.c1_dim += s.c1_dim;
        cx.c2_dim += s.c2_dim;
        cx.degrees[s.m] = std::move(s);
    }
    return cx;
}

std::map<int, std::size_t> h1_graded(const CochainComplexSlice& complex) {
    std::map<int, std::size_t> out;
    for (auto& [m, s] : complex.degrees)
        if (s.c1_dim > 0) out[m] = s.h1();
    return out;
}

Subspace centralizer_gamma(const GradedEnd& graded, int l) {
    if (l < -1) throw std::out_of_range("centralizer_gamma: degree below -1");
    const auto& xi = graded.g_basis_at(-1);
    const auto& z = graded.gperp_basis_at(l + 1);
    const std::size_t d2 = graded.dim_U * graded.dim_U;
    if (z.empty()) return Subspace(d2);
    Matrix stacked(xi.size() * d2, z.size());
    for (std::size_t j = 0; j < z.size(); ++j)
        for (std::size_t a = 0; a < xi.size(); ++a) {
            Vector b = vec(commutator(xi[a], z[j]));
            for (std::size_t r = 0; r < d2; ++r) stacked(a * d2 + r, j) = b[r];
        }
    std::vector<Vector> out;
    for (auto& k : kernel_vectors(stacked)) {
        Matrix zeta(graded.dim_U, graded.dim_U);
        for (std::size_t j = 0; j < z.size(); ++j) zeta.add_scaled(z[j], k[j]);
        out.push_back(vec(zeta));
    }
    return Subspace::span(d2, std::move(out));
}

}  // namespace cyvhs
