#include "cyvhs/hodge_rep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cyvhs/multi_index.hpp"

namespace cyvhs {

std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::C: return "C";
        case Family::BD: return "BD";
    }
    return "?";
}

Family parse_family(std::string_view s) {
    if (s == "A") return Family::A;
    if (s == "C") return Family::C;
    if (s == "BD") return Family::BD;
    throw std::invalid_argument("unsupported family tag '" + std::string(s) + "'");
}

Rational BilinearForm::operator()(const Vector& u, const Vector& v) const {
    return dot(u, gram * v);
}

const Subspace& CanonicalVHS::hodge(int p) const {
    int q = weight - p;
    if (q < 0 || q >= static_cast<int>(hodge_pieces.size())) throw std::out_of_range("no Hodge piece with that p");
    return hodge_pieces[static_cast<std::size_t>(q)].space;
}

Subspace CanonicalVHS::filtration(int p) const {
    Subspace f(dim_U);
    for (auto& h : hodge_pieces)
        if (h.p >= p) f = sum(f, h.space);
    return f;
}

std::vector<std::size_t> CanonicalVHS::hodge_numbers() const {
    std::vector<std::size_t> h;
    for (auto& piece : hodge_pieces) h.push_back(piece.space.dim());
    return h;
}

Vector vec(const Matrix& m) { return m.flatten(); }

Matrix unvec(const Vector& v, std::size_t d) { return Matrix::unflatten(v, d, d); }

std::vector<Matrix> as_matrices(const Subspace& s, std::size_t d) {
    std::vector<Matrix> out;
    out.reserve(s.dim());
    for (auto& v : s.vectors()) out.push_back(unvec(v, d));
    return out;
}

bool preserves_form(const Matrix& x, const BilinearForm& q) {
    Matrix a = x.transpose() * q.gram;
    mul_add(a, q.gram, x);
    return a.is_zero();
}

namespace {

Matrix elementary(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = 1;
    return m;
}

std::vector<Matrix> sl_basis(std::size_t n) {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) out.push_back(elementary(n, i, j));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Matrix h(n, n);
        h(i, i) = 1;
        h(i + 1, i + 1) = -1;
        out.push_back(h);
    }
    return out;
}

// sp(2g) for ω(v_i, v_{g+i}) = 1
std::vector<Matrix> sp_basis(std::size_t g) {
    std::size_t n = 2 * g;
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            Matrix m(n, n);
            m(i, j) = 1;
            m(g + j, g + i) = -1;
            out.push_back(m);
        }
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) {
            Matrix b(n, n), c(n, n);
            b(i, g + j) = 1;
            b(j, g + i) = 1;
            c(g + i, j) = 1;
            c(g + j, i) = 1;
            out.push_back(b);
            out.push_back(c);
        }
    return out;
}

Matrix half_grading(std::size_t half) {
    Matrix h(2 * half, 2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        h(i, i) = Rational(1, 2);
        h(half + i, half + i) = Rational(-1, 2);
    }
    return h;
}

Matrix wedge_pairing(const MultiIndexTable& t) {
    const std::size_t n = t.size();
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Tuple cat = t[i];
            cat.insert(cat.end(), t[j].begin(), t[j].end());
            if (cat.size() != t.base_dim()) throw std::logic_error("wedge pairing needs complementary degrees");
            int s = canonicalize(cat, PowerKind::wedge);
            if (s != 0) g(i, j) = s;
        }
    return g;
}

int count_first_half(const Tuple& t, int half) {
    return static_cast<int>(std::count_if(t.begin(), t.end(), [&](int i) { return i < half; }));
}

Matrix restrict_to(const Matrix& big, const CoordinateBasis& cb) {
    const std::size_t r = cb.dim();
    Matrix out(r, r);
    for (std::size_t j = 0; j < r; ++j) {
        auto c = cb.coordinates(big * cb.vectors()[j]);
        if (!c) throw std::logic_error("operator does not preserve the subspace");
        out.set_column(j, *c);
    }
    return out;
}

// Assembles a VHS on U ⊂ Λ^k C^{2h} given, per block q = 0..n, the basis vectors of U^{n-q,q}.
CanonicalVHS assemble_wedge_model(Family fam, std::size_t size, std::size_t half, std::size_t k, int weight,
                                  const std::vector<std::vector<Vector>>& blocks,
                                  const std::vector<Matrix>& algebra) {
    MultiIndexTable t(2 * half, k, PowerKind::wedge);
    std::vector<Vector> cols;
    for (auto& b : blocks) cols.insert(cols.end(), b.begin(), b.end());
    CoordinateBasis cb(t.size(), cols);
    Matrix bmat = Matrix::from_columns(cols, t.size());

    CanonicalVHS vhs;
    vhs.family = fam;
    vhs.size = size;
    vhs.dim_U = cols.size();
    vhs.weight = weight;
    vhs.Q.symmetry = (k % 2 == 0) ? 1 : -1;
    vhs.Q.gram = bmat.transpose() * wedge_pairing(t) * bmat;
    for (auto& x : algebra) vhs.g_basis.push_back(restrict_to(induced_power_operator(x, k, PowerKind::wedge), cb));
    vhs.grading_element = restrict_to(induced_power_operator(half_grading(half), k, PowerKind::wedge), cb);

    std::size_t offset = 0;
    for (std::size_t q = 0; q < blocks.size(); ++q) {
        std::vector<Vector> units;
        for (std::size_t i = 0; i < blocks[q].size(); ++i) units.push_back(unit_vector(vhs.dim_U, offset + i));
        offset += blocks[q].size();
        vhs.hodge_pieces.push_back({weight - static_cast<int>(q), static_cast<int>(q), Subspace::span(vhs.dim_U, units)});
    }
    return vhs;
}

CanonicalVHS build_A(std::size_t n) {
    MultiIndexTable t(2 * n, n, PowerKind::wedge);
    std::vector<std::vector<Vector>> blocks(n + 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
        int p = count_first_half(t[i], static_cast<int>(n));
        blocks[n - static_cast<std::size_t>(p)].push_back(unit_vector(t.size(), i));
    }
    return assemble_wedge_model(Family::A, n, n, n, static_cast<int>(n), blocks, sl_basis(2 * n));
}

// ι_ω(w_1∧…∧w_k) = Σ_{a<b} (-1)^{a+b+1} ω(w_a,w_b) w_1∧…ŵ_a…ŵ_b…∧w_k  (positions 1-based)
Matrix symplectic_contraction(std::size_t g) {
    MultiIndexTable src(2 * g, g, PowerKind::wedge), dst(2 * g, g - 2, PowerKind::wedge);
    Matrix k(dst.size(), src.size());
    for (std::size_t col = 0; col < src.size(); ++col) {
        const Tuple& t = src[col];
        for (std::size_t a = 0; a < g; ++a)
            for (std::size_t b = a + 1; b < g; ++b) {
                if (t[b] != t[a] + static_cast<int>(g)) continue;  // ω(v_i, v_{g+i}) = 1
                Tuple rest;
                for (std::size_t c = 0; c < g; ++c)
                    if (c != a && c != b) rest.push_back(t[c]);
                int sign = ((a + 1 + b + 1 + 1) % 2 == 0) ? 1 : -1;
                k(*dst.position(rest), col) += sign;
            }
    }
    return k;
}

// Pairs of vectors x_i, y_i with Q(x_i,y_j) = δ_ij, all other pairings zero,
// plus at most one anisotropic centre vector.
struct HyperbolicSplit {
    std::vector<Vector> xs, ys;
    std::optional<Vector> centre;  // not normalized
    Rational centre_norm;
};

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    mpq_class q = r.to_mpq();
    mpz_class a, b;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    return Rational(mpq_class(a, b));
}

HyperbolicSplit split_middle(const BilinearForm& q, std::vector<Vector> w) {
    HyperbolicSplit out;
    const int s = q.symmetry;
    while (w.size() >= 2) {
        std::optional<std::size_t> xi;
        for (std::size_t i = 0; i < w.size() && !xi; ++i)
            if (q(w[i], w[i]).is_zero()) xi = i;
        if (!xi) {
            // v_i + t v_j isotropic: a + 2bt + ct^2 = 0
            for (std::size_t i = 0; i < w.size() && !xi; ++i)
                for (std::size_t j = i + 1; j < w.size() && !xi; ++j) {
                    Rational a = q(w[i], w[i]), b = q(w[i], w[j]), c = q(w[j], w[j]);
                    auto root = rational_sqrt(b * b - a * c);
                    if (!root || c.is_zero()) continue;
                    Rational t = (-b + *root) / c;
                    Vector v = w[i];
                    for (std::size_t k = 0; k < v.size(); ++k) v[k].add_mul(t, w[j][k]);
                    w[i] = v;
                    xi = i;
                }
        }
        if (!xi) throw std::runtime_error("adapted frame: no rational isotropic vector in the middle Hodge piece");
        Vector x = w[*xi];
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(*xi));
        std::optional<std::size_t> yi;
        for (std::size_t i = 0; i < w.size() && !yi; ++i)
            if (!q(x, w[i]).is_zero()) yi = i;
        if (!yi) throw std::runtime_error("adapted frame: Q degenerates on the middle Hodge piece");
        Vector y = scaled(w[*yi], q(x, w[*yi]).inverse());
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(*yi));
        if (s == 1) {
            Rational half = q(y, y) / Rational(2);
            for (std::size_t k = 0; k < y.size(); ++k) y[k].sub_mul(half, x[k]);
        }
        for (auto& v : w) {
            Rational a = q(v, y), b = q(v, x) * Rational(s);
            for (std::size_t k = 0; k < v.size(); ++k) {
                v[k].sub_mul(a, x[k]);
                v[k].sub_mul(b, y[k]);
            }
        }
        out.xs.push_back(std::move(x));
        out.ys.push_back(std::move(y));
    }
    if (w.size() == 1) {
        out.centre_norm = q(w[0], w[0]);
        if (out.centre_norm.is_zero()) throw std::runtime_error("adapted frame: Q degenerates on the middle Hodge piece");
        out.centre = w[0];
    }
    return out;
}

CanonicalVHS build_C(std::size_t g) {
    MultiIndexTable t(2 * g, g, PowerKind::wedge);
    std::vector<std::vector<std::size_t>> by_block(g + 1);
    for (std::size_t i = 0; i < t.size(); ++i)
        by_block[g - static_cast<std::size_t>(count_first_half(t[i], static_cast<int>(g)))].push_back(i);

    std::vector<std::vector<Vector>> blocks(g + 1);
    Matrix k = g >= 2 ? symplectic_contraction(g) : Matrix(0, t.size());
    for (std::size_t q = 0; q <= g; ++q) {
        const auto& idx = by_block[q];
        Matrix sub(k.rows(), idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j)
            for (std::size_t i = 0; i < k.rows(); ++i) sub(i, j) = k(i, idx[j]);
        std::vector<Vector> ker;
        for (auto& v : kernel_vectors(sub)) {
            Vector full(t.size());
            for (std::size_t j = 0; j < idx.size(); ++j) full[idx[j]] = v[j];
            ker.push_back(std::move(full));
        }
        blocks[q] = Subspace::span(t.size(), std::move(ker)).vectors();
    }
    CanonicalVHS vhs = assemble_wedge_model(Family::C, g, g, g, static_cast<int>(g), blocks, sp_basis(g));
    if (g % 2 == 0) {
        // Rescale Q so that the middle piece admits a rational normalized frame.
        auto split = split_middle(vhs.Q, vhs.hodge_pieces[g / 2].space.vectors());
        if (split.centre && !rational_sqrt(split.centre_norm)) vhs.Q.gram *= split.centre_norm.inverse();
    }
    return vhs;
}

CanonicalVHS build_BD(std::size_t k) {
    const std::size_t d = k + 2;
    CanonicalVHS vhs;
    vhs.family = Family::BD;
    vhs.size = k;
    vhs.dim_U = d;
    vhs.weight = 2;
    vhs.Q.symmetry = 1;
    vhs.Q.gram = Matrix(d, d);
    for (std::size_t i = 0; i < d; ++i) vhs.Q.gram(i, d - 1 - i) = 1;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            Matrix s = elementary(d, i, j) - elementary(d, j, i);
            vhs.g_basis.push_back(vhs.Q.gram * s);
        }
    vhs.grading_element = Matrix(d, d);
    vhs.grading_element(0, 0) = 1;
    vhs.grading_element(d - 1, d - 1) = -1;
    std::vector<Vector> mid;
    for (std::size_t i = 1; i + 1 < d; ++i) mid.push_back(unit_vector(d, i));
    vhs.hodge_pieces.push_back({2, 0, Subspace::span(d, {unit_vector(d, 0)})});
    vhs.hodge_pieces.push_back({1, 1, Subspace::span(d, mid)});
    vhs.hodge_pieces.push_back({0, 2, Subspace::span(d, {unit_vector(d, d - 1)})});
    return vhs;
}

}  // namespace

CanonicalVHS build_family(Family family, std::size_t size) {
    if (size == 0) throw std::invalid_argument("family size must be at least 1");
    switch (family) {
        case Family::A: return build_A(size);
        case Family::C: return build_C(size);
        case Family::BD: return build_BD(size);
    }
    throw std::invalid_argument("unsupported family");
}

const Subspace& GradedEnd::E_at(int l) const {
    static const Subspace empty;
    auto it = E.find(l);
    if (it != E.end()) return it->second;
    return empty;
}

const Subspace& GradedEnd::g_at(int l) const {
    static const Subspace empty;
    auto it = g.find(l);
    return it != g.end() ? it->second : empty;
}

const Subspace& GradedEnd::gperp_at(int l) const {
    static const Subspace empty;
    auto it = gperp.find(l);
    return it != gperp.end() ? it->second : empty;
}

const std::vector<Matrix>& GradedEnd::g_basis_at(int l) const {
    static const std::vector<Matrix> empty;
    auto it = g_mats.find(l);
    return it != g_mats.end() ? it->second : empty;
}

const std::vector<Matrix>& GradedEnd::gperp_basis_at(int l) const {
    static const std::vector<Matrix> empty;
    auto it = gperp_mats.find(l);
    return it != gperp_mats.end() ? it->second : empty;
}

std::size_t GradedEnd::gperp_dim() const {
    std::size_t n = 0;
    for (auto& [l, s] : gperp) n += s.dim();
    return n;
}

GradedEnd grade_endomorphisms(const CanonicalVHS& vhs) {
    const std::size_t d = vhs.dim_U;
    const Matrix& G = vhs.Q.gram;
    auto ginv = inverse(G);
    if (!ginv) throw std::invalid_argument("polarization is degenerate");

    // End(U,Q) = G^{-1} S with S antisymmetric (Q symmetric) or symmetric (Q alternating)
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            if (i == j && vhs.Q.symmetry == 1) continue;
            Matrix s(d, d);
            s(i, j) = 1;
            if (i != j) s(j, i) = vhs.Q.symmetry == 1 ? -1 : 1;
            gens.push_back(vec(*ginv * s));
        }
    GradedEnd out;
    out.dim_U = d;
    out.ambient = Subspace::span(d * d, std::move(gens));
    const std::size_t N = out.ambient.dim();
    auto amb = as_matrices(out.ambient, d);

    const Matrix& H = vhs.grading_element;
    Matrix adh(N, N);
    for (std::size_t j = 0; j < N; ++j) {
        auto c = out.ambient.coordinates(vec(commutator(H, amb[j])));
        if (!c) throw std::logic_error("grading element does not preserve Q");
        adh.set_column(j, *c);
    }
    std::size_t total = 0;
    const int n = vhs.weight;
    for (int l = -n; l <= n; ++l) {
        Matrix m = adh;
        for (std::size_t i = 0; i < N; ++i) m(i, i) -= l;
        std::vector<Vector> piece;
        for (auto& k : kernel_vectors(m)) {
            Vector v(d * d);
            for (std::size_t j = 0; j < N; ++j)
                if (!k[j].is_zero())
                    for (std::size_t i = 0; i < d * d; ++i)
                        if (!out.ambient.vectors()[j][i].is_zero()) v[i].add_mul(k[j], out.ambient.vectors()[j][i]);
            piece.push_back(std::move(v));
        }
        if (piece.empty()) continue;
        out.E[l] = Subspace::span(d * d, std::move(piece));
        total += out.E[l].dim();
    }
    if (total != N) throw std::logic_error("ad(grading element) is not diagonalizable with integer eigenvalues");

    std::vector<Vector> gvecs;
    for (auto& x : vhs.g_basis) gvecs.push_back(vec(x));
    Subspace gspace = Subspace::span(d * d, std::move(gvecs));
    for (auto& [l, e] : out.E) {
        out.g[l] = intersect(gspace, e);
        out.g_mats[l] = as_matrices(out.g[l], d);
    }
    for (auto& [l, e] : out.E) {
        auto emats = as_matrices(e, d);
        const auto& dual = out.g_basis_at(-l);
        Matrix pairing(dual.size(), emats.size());
        for (std::size_t i = 0; i < dual.size(); ++i)
            for (std::size_t j = 0; j < emats.size(); ++j) pairing(i, j) = trace_product(dual[i], emats[j]);
        std::vector<Vector> perp;
        for (auto& k : kernel_vectors(pairing)) {
            Vector v(d * d);
            for (std::size_t j = 0; j < emats.size(); ++j)
                if (!k[j].is_zero())
                    for (std::size_t i = 0; i < d * d; ++i)
                        if (!e.vectors()[j][i].is_zero()) v[i].add_mul(k[j], e.vectors()[j][i]);
            perp.push_back(std::move(v));
        }
        out.gperp[l] = Subspace::span(d * d, std::move(perp));
        if (out.gperp[l].dim() + out.g[l].dim() != e.dim() || !(sum(out.g[l], out.gperp[l]) == e))
            throw std::logic_error("trace form degenerates on g in degree " + std::to_string(l));
        out.gperp_mats[l] = as_matrices(out.gperp[l], d);
        out.E_mats[l] = std::move(emats);
    }
    return out;
}

bool StructureReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.informational || c.passed; });
}

namespace {

bool in_E(const Matrix& z, int m, const CanonicalVHS& vhs) {
    if (!preserves_form(z, vhs.Q)) return false;
    Matrix c = commutator(vhs.grading_element, z);
    c.add_scaled(z, Rational(-m));
    return c.is_zero();
}

bool in_gperp(const Matrix& z, int m, const CanonicalVHS& vhs, const GradedEnd& gr) {
    if (!in_E(z, m, vhs)) return false;
    for (auto& x : gr.g_basis_at(-m))
        if (!trace_product(x, z).is_zero()) return false;
    return true;
}

std::string dims_string(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

}  // namespace

StructureReport verify_structure(const CanonicalVHS& vhs, const GradedEnd& gr) {
    StructureReport rep;
    const std::size_t d = vhs.dim_U;
    const int n = vhs.weight;

    {
        bool ok = true;
        for (auto& x : vhs.g_basis) ok = ok && preserves_form(x, vhs.Q);
        rep.checks.push_back({"q_invariance", ok, std::to_string(vhs.g_basis.size()) + " generators"});
    }
    {
        bool ok = true;
        std::string where;
        for (auto& [k, ek] : gr.E_mats)
            for (auto& [l, el] : gr.E_mats) {
                for (auto& x : ek) {
                    for (auto& y : el) {
                        Matrix z = commutator(x, y);
                        if (z.is_zero()) continue;
                        if (!gr.E.count(k + l) || !in_E(z, k + l, vhs)) {
                            ok = false;
                            where = "[E_" + std::to_string(k) + ",E_" + std::to_string(l) + "]";
                            break;
                        }
                    }
                    if (!ok) break;
                }
                if (!ok) break;
            }
        for (auto& [k, gk] : gr.g_mats) {
            if (!ok) break;
            for (auto& [l, gl] : gr.g_mats)
                for (auto& x : gk)
                    for (auto& y : gl) {
                        Matrix z = commutator(x, y);
                        if (z.is_zero()) continue;
                        if (!in_E(z, k + l, vhs) || !gr.g_at(k + l).contains(vec(z))) {
                            ok = false;
                            where = "[g_" + std::to_string(k) + ",g_" + std::to_string(l) + "]";
                        }
                    }
            for (auto& [l, pl] : gr.gperp_mats)
                for (auto& x : gk)
                    for (auto& y : pl) {
                        Matrix z = commutator(x, y);
                        if (z.is_zero()) continue;
                        if (!in_gperp(z, k + l, vhs, gr)) {
                            ok = false;
                            where = "[g_" + std::to_string(k) + ",gperp_" + std::to_string(l) + "]";
                        }
                    }
        }
        rep.checks.push_back({"bracket_grading", ok, ok ? "all containments hold" : "fails at " + where});
    }
    {
        std::size_t h0 = vhs.hodge(n).dim();
        rep.checks.push_back({"hodge_top_one_dimensional", h0 == 1, "h^{n,0} = " + std::to_string(h0)});
    }
    const auto& gm1 = gr.g_basis_at(-1);
    {
        bool ok = vhs.hodge(n).dim() == 1 && n >= 1;
        std::string detail;
        if (ok) {
            const Vector& u0 = vhs.hodge(n).vectors()[0];
            const Subspace& target = vhs.hodge(n - 1);
            Matrix m(target.dim(), gm1.size());
            for (std::size_t j = 0; j < gm1.size() && ok; ++j) {
                auto c = target.coordinates(gm1[j] * u0);
                if (!c) ok = false;
                else m.set_column(j, *c);
            }
            ok = ok && m.rows() == m.cols() && rank(m) == m.rows();
            detail = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + (ok ? " invertible" : " not invertible");
        }
        rep.checks.push_back({"cy_isomorphism", ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for (int p = n; p >= 1; --p) {
            std::vector<Vector> imgs;
            for (auto& x : gm1)
                for (auto& u : vhs.hodge(p).vectors()) imgs.push_back(x * u);
            Subspace img = Subspace::span(d, std::move(imgs));
            if (!(img == vhs.hodge(p - 1))) {
                ok = false;
                detail = "psi^{" + std::to_string(p) + "," + std::to_string(n - p) + "} not onto";
            }
        }
        rep.checks.push_back({"psi_surjective", ok, ok ? "all psi^{p,q} onto" : detail});
    }
    {
        bool ok = true;
        for (auto& [l, e] : gr.E) {
            if (std::abs(l) > 1 && gr.g_at(l).dim() != 0) ok = false;
            if (std::abs(l) >= 2 && !(gr.gperp_at(l) == e)) ok = false;
        }
        rep.checks.push_back({"degree_support", ok, "g_l = 0 for |l|>1, gperp_l = E_l for |l|>=2"});
    }

    // type invariants beyond the six listed checks
    {
        bool ok = true;
        std::vector<Vector> gv;
        for (auto& x : vhs.g_basis) gv.push_back(vec(x));
        Subspace gs = Subspace::span(d * d, gv);
        ok = gs.dim() == vhs.g_basis.size();
        for (std::size_t i = 0; i < vhs.g_basis.size() && ok; ++i)
            for (std::size_t j = i + 1; j < vhs.g_basis.size() && ok; ++j)
                ok = gs.contains(vec(commutator(vhs.g_basis[i], vhs.g_basis[j])));
        rep.checks.push_back({"g_closed_under_bracket", ok, "dim g = " + std::to_string(gs.dim())});
    }
    {
        Subspace total(d);
        bool ok = true;
        std::size_t dims = 0;
        for (auto& piece : vhs.hodge_pieces) {
            total = sum(total, piece.space);
            dims += piece.space.dim();
            Rational ev(piece.p - piece.q, 2);
            for (auto& v : piece.space.vectors()) ok = ok && (vhs.grading_element * v == scaled(v, ev));
        }
        ok = ok && total.dim() == d && dims == d;
        rep.checks.push_back({"hodge_decomposition", ok, "h = " + dims_string(vhs.hodge_numbers())});
    }
    {
        std::size_t total = 0;
        bool ok = true;
        for (auto& [l, e] : gr.E) {
            total += e.dim();
            ok = ok && gr.g_at(l).dim() + gr.gperp_at(l).dim() == e.dim();
        }
        ok = ok && total == gr.ambient.dim();
        rep.checks.push_back({"graded_split", ok,
                              "dim End(U,Q) = " + std::to_string(gr.ambient.dim()) + ", dim gperp = " +
                                  std::to_string(gr.gperp_dim())});
    }
    {
        std::size_t expect = 0, s = vhs.size;
        switch (vhs.family) {
            case Family::A: expect = s * s; break;
            case Family::C: expect = s * (s + 1) / 2; break;
            case Family::BD: expect = s; break;
        }
        rep.checks.push_back({"tangent_dimension", gm1.size() == expect,
                              "dim g_-1 = " + std::to_string(gm1.size()) + ", expected " + std::to_string(expect)});
    }
    if (vhs.family == Family::C) {
        std::size_t full = vhs.size * vhs.size;
        rep.checks.push_back({"full_wedge_discrepancy", full != gm1.size(),
                              "full wedge power would give h^{n-1,1} = " + std::to_string(full) +
                                  " against dim g_-1 = " + std::to_string(gm1.size()) +
                                  "; the primitive subspace is used",
                              true});
    }
    return rep;
}

Matrix AdaptedFrame::target_gram(int symmetry) const {
    const std::size_t D = basis_matrix.cols();
    Matrix t(D, D);
    for (std::size_t j = 0; j < D; ++j) t(j, D - 1 - j) = (symmetry == 1 || 2 * j < D) ? 1 : -1;
    return t;
}

AdaptedFrame build_adapted_frame(const CanonicalVHS& vhs) {
    const std::size_t D = vhs.dim_U;
    const int n = vhs.weight;
    AdaptedFrame f;
    f.basis_matrix = Matrix(D, D);
    std::size_t offset = 0;
    for (auto& piece : vhs.hodge_pieces) {
        f.block_offsets.push_back(offset);
        f.block_sizes.push_back(piece.space.dim());
        offset += piece.space.dim();
    }
    if (offset != D) throw std::logic_error("Hodge pieces do not fill U");
    std::size_t acc = 0;
    for (auto sz : f.block_sizes) {
        acc += sz;
        f.flag_dims.push_back(acc - 1);
    }

    for (int q = 0; 2 * q <= n; ++q) {
        const int mirror = n - q;
        const auto& fs = vhs.hodge_pieces[static_cast<std::size_t>(q)].space.vectors();
        const std::size_t off = f.block_offsets[static_cast<std::size_t>(q)];
        const std::size_t h = fs.size();
        if (q == mirror) {
            auto split = split_middle(vhs.Q, fs);
            for (std::size_t i = 0; i < split.xs.size(); ++i) {
                f.basis_matrix.set_column(off + i, split.xs[i]);
                f.basis_matrix.set_column(off + h - 1 - i, split.ys[i]);
            }
            if (split.centre) {
                auto root = rational_sqrt(split.centre_norm);
                if (!root) throw std::runtime_error("adapted frame: centre vector has non-square norm");
                f.basis_matrix.set_column(off + h / 2, scaled(*split.centre, root->inverse()));
            }
            continue;
        }
        const auto& gs = vhs.hodge_pieces[static_cast<std::size_t>(mirror)].space.vectors();
        if (gs.size() != h) throw std::runtime_error("adapted frame: Hodge numbers are not symmetric");
        Matrix p(h, h);
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t k = 0; k < h; ++k) p(i, k) = vhs.Q(fs[i], gs[k]);
        auto pinv = inverse(p);
        if (!pinv) throw std::runtime_error("adapted frame: Q degenerates on a U^{p,q} x U^{q,p} pairing");
        for (std::size_t i = 0; i < h; ++i) {
            std::size_t j = off + i;
            f.basis_matrix.set_column(j, fs[i]);
            Vector dual(D);
            for (std::size_t k = 0; k < h; ++k)
                for (std::size_t r = 0; r < D; ++r)
                    if (!gs[k][r].is_zero()) dual[r].add_mul((*pinv)(k, i), gs[k][r]);
            f.basis_matrix.set_column(D - 1 - j, dual);
        }
    }
    Matrix gram = f.basis_matrix.transpose() * vhs.Q.gram * f.basis_matrix;
    if (!(gram == f.target_gram(vhs.Q.symmetry)))
        throw std::logic_error("adapted frame: Gram matrix is not the normalized anti-diagonal");
    return f;
}

CanonicalVHS in_frame(const CanonicalVHS& vhs, const AdaptedFrame& frame) {
    const Matrix& F = frame.basis_matrix;
    auto finv = inverse(F);
    if (!finv) throw std::invalid_argument("frame matrix is singular");
    CanonicalVHS out;
    out.family = vhs.family;
    out.size = vhs.size;
    out.dim_U = vhs.dim_U;
    out.weight = vhs.weight;
    out.Q.symmetry = vhs.Q.symmetry;
    out.Q.gram = F.transpose() * vhs.Q.gram * F;
    for (auto& x : vhs.g_basis) out.g_basis.push_back(*finv * x * F);
    out.grading_element = *finv * vhs.grading_element * F;
    for (std::size_t q = 0; q < vhs.hodge_pieces.size(); ++q) {
        std::vector<Vector> units;
        for (std::size_t i = 0; i < frame.block_sizes[q]; ++i)
            units.push_back(unit_vector(vhs.dim_U, frame.block_offsets[q] + i));
        out.hodge_pieces.push_back({vhs.hodge_pieces[q].p, vhs.hodge_pieces[q].q, Subspace::span(vhs.dim_U, units)});
    }
    return out;
}

}  // namespace cyvhs
