#include "cyvhs/forms.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyvhs {

std::size_t CharForm::rank() const {
    return cyvhs::rank(coeffs);
}

Subspace CharForm::span() const {
    return Subspace::span_columns(coeffs);
}

namespace {

// All ordered k-tuples over [0, m).
std::vector<Tuple> ordered_tuples(std::size_t m, std::size_t k) {
    std::vector<Tuple> out;
    Tuple t(k, 0);
    if (m == 0 && k > 0) return out;
    while (true) {
        out.push_back(t);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++t[i] < static_cast<int>(m)) break;
            t[i] = 0;
            if (i == 0) return out;
        }
        if (k == 0) return out;
    }
}

// Coordinates of v modulo `denominator` in terms of `basis`.
class QuotientCoords {
public:
    QuotientCoords(const std::vector<Vector>& basis, const Subspace& denominator) : n_(basis.size()) {
        std::vector<Vector> all = basis;
        all.insert(all.end(), denominator.vectors().begin(), denominator.vectors().end());
        std::size_t amb = denominator.ambient_dim();
        cb_ = CoordinateBasis(amb, std::move(all));
    }
    Vector operator()(const Vector& v) const {
        auto c = cb_.coordinates(v);
        if (!c) throw std::logic_error("vector outside the quotient's numerator");
        return Vector(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(n_));
    }

private:
    std::size_t n_;
    CoordinateBasis cb_;
};

CharForm evaluate_form(std::size_t k, const std::vector<Matrix>& tangent, const Vector& u0,
                       const std::vector<Vector>& qbasis, const Subspace& denom) {
    QuotientCoords coords(qbasis, denom);
    CharForm f;
    f.k = k;
    f.domain_dim = tangent.size();
    f.multi_indices = MultiIndexTable(tangent.size(), k, PowerKind::sym).tuples();
    f.coeffs = Matrix(f.multi_indices.size(), qbasis.size());
    f.quotient_basis = qbasis;
    f.denominator = denom;
    std::vector<bool> seen(f.multi_indices.size(), false);
    for (auto& t : ordered_tuples(tangent.size(), k)) {
        Vector v = u0;
        for (std::size_t i = k; i > 0; --i) v = tangent[static_cast<std::size_t>(t[i - 1])] * v;
        Vector c = coords(v);
        Tuple s = t;
        std::sort(s.begin(), s.end());
        std::size_t row = static_cast<std::size_t>(
            std::lower_bound(f.multi_indices.begin(), f.multi_indices.end(), s) - f.multi_indices.begin());
        if (!seen[row]) {
            for (std::size_t j = 0; j < c.size(); ++j) f.coeffs(row, j) = c[j];
            seen[row] = true;
        } else {
            for (std::size_t j = 0; j < c.size(); ++j)
                if (!(f.coeffs(row, j) == c[j])) throw std::logic_error("iterated derivative is not symmetric modulo the filtration");
        }
    }
    return f;
}

}  // namespace

CharForm characteristic_form(const CanonicalVHS& vhs, std::size_t k, const std::vector<Matrix>& tangent) {
    const int n = vhs.weight;
    if (k > static_cast<std::size_t>(n)) throw std::out_of_range("characteristic form degree exceeds the weight");
    const int p = n - static_cast<int>(k);
    Subspace denom = p + 1 <= n ? vhs.filtration(p + 1) : Subspace(vhs.dim_U);
    return evaluate_form(k, tangent, vhs.hodge(n).vectors().at(0), vhs.hodge(p).vectors(), denom);
}

CharForm characteristic_form(const CanonicalVHS& vhs, const GradedEnd& graded, std::size_t k) {
    return characteristic_form(vhs, k, graded.g_basis_at(-1));
}

OscFiltration osculating_filtration(const CanonicalVHS& vhs, const GradedEnd& graded) {
    OscFiltration f;
    const auto& tangent = graded.g_basis_at(-1);
    f.T.push_back(vhs.hodge(vhs.weight));
    while (true) {
        const Subspace& last = f.T.back();
        std::vector<Vector> gens = last.vectors();
        for (auto& x : tangent)
            for (auto& v : last.vectors()) gens.push_back(x * v);
        Subspace next = Subspace::span(vhs.dim_U, std::move(gens));
        if (next == last) break;
        f.T.push_back(std::move(next));
    }
    return f;
}

CharForm fundamental_form(const CanonicalVHS& vhs, const GradedEnd& graded, std::size_t k) {
    auto osc = osculating_filtration(vhs, graded);
    const auto& tangent = graded.g_basis_at(-1);
    const Vector& u0 = vhs.hodge(vhs.weight).vectors().at(0);
    if (k > osc.m()) {
        CharForm zero;
        zero.k = k;
        zero.domain_dim = tangent.size();
        zero.multi_indices = MultiIndexTable(tangent.size(), k, PowerKind::sym).tuples();
        zero.coeffs = Matrix(zero.multi_indices.size(), 0);
        zero.denominator = osc.T.back();
        return zero;
    }
    Subspace denom = k == 0 ? Subspace(vhs.dim_U) : osc.T[k - 1];
    std::vector<Vector> w = k == 0 ? osc.T[0].vectors() : complement_basis(osc.T[k], denom);
    return evaluate_form(k, tangent, u0, w, denom);
}

CharForm rebase(const CharForm& form, const std::vector<Vector>& new_basis) {
    const std::size_t h = form.codomain_dim();
    if (new_basis.size() != h) throw std::invalid_argument("rebase: basis size mismatch");
    QuotientCoords coords(form.quotient_basis, form.denominator);
    Matrix m(h, h);  // column μ: new basis vector μ in old coordinates
    for (std::size_t mu = 0; mu < h; ++mu) m.set_column(mu, coords(new_basis[mu]));
    auto minv = inverse(m);
    if (!minv) throw std::invalid_argument("rebase: vectors do not form a basis of the quotient");
    CharForm out = form;
    out.coeffs = form.coeffs * minv->transpose();
    out.quotient_basis = new_basis;
    return out;
}

ModelCoeffs model_r_coeffs(const CanonicalVHS& vhs, const GradedEnd& graded, const AdaptedFrame& frame) {
    const Matrix& F = frame.basis_matrix;
    auto finv = inverse(F);
    if (!finv) throw std::invalid_argument("model_r_coeffs: singular frame");
    const auto& gm1 = graded.g_basis_at(-1);
    const std::size_t h1 = frame.block_sizes.size() > 1 ? frame.block_sizes[1] : 0;
    if (gm1.size() != h1) throw std::invalid_argument("model_r_coeffs: VHS is not of CY type");
    std::vector<Matrix> conj;
    for (auto& x : gm1) conj.push_back(*finv * x * F);
    Matrix c(h1, h1);
    for (std::size_t j = 0; j < h1; ++j)
        for (std::size_t a = 0; a < h1; ++a) c(a, j) = conj[j](1 + a, 0);
    auto cinv = inverse(c);
    if (!cinv) throw std::invalid_argument("model_r_coeffs: g_-1 does not map onto U^{n-1,1}");

    ModelCoeffs mc;
    mc.block_offsets = frame.block_offsets;
    mc.block_sizes = frame.block_sizes;
    const std::size_t d = vhs.dim_U;
    for (std::size_t a = 0; a < h1; ++a) {
        Matrix xi(d, d);
        for (std::size_t j = 0; j < h1; ++j) xi.add_scaled(conj[j], (*cinv)(j, a));
        mc.xi.push_back(std::move(xi));
    }
    const std::size_t n = static_cast<std::size_t>(vhs.weight);
    mc.r.resize(n + 1);
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t a = 0; a < h1; ++a)
            mc.r[k].push_back(mc.xi[a].block(mc.block_offsets[k], mc.block_offsets[k - 1], mc.block_sizes[k],
                                             mc.block_sizes[k - 1]));
    for (std::size_t k = 2; k <= n; ++k)
        if (model_r_rank(mc, k) != mc.block_sizes[k])
            throw std::logic_error("model coefficients fail injectivity at level " + std::to_string(k));

    // r̃ by composing blocks; symmetric because g_{-1} is abelian
    for (std::size_t k = 0; k <= n; ++k) {
        CharForm f;
        f.k = k;
        f.domain_dim = h1;
        f.multi_indices = MultiIndexTable(h1, k, PowerKind::sym).tuples();
        f.coeffs = Matrix(f.multi_indices.size(), mc.block_sizes[k]);
        for (std::size_t i = 0; i < mc.block_sizes[k]; ++i)
            f.quotient_basis.push_back(unit_vector(d, mc.block_offsets[k] + i));
        std::vector<Vector> lower;
        for (std::size_t j = 0; j < mc.block_offsets[k]; ++j) lower.push_back(unit_vector(d, j));
        f.denominator = Subspace::span(d, lower);
        std::vector<bool> seen(f.multi_indices.size(), false);
        for (auto& t : ordered_tuples(h1, k)) {
            Matrix v(1, 1);
            v(0, 0) = 1;
            for (std::size_t level = 1; level <= k; ++level)
                v = mc.r[level][static_cast<std::size_t>(t[k - level])] * v;
            Tuple s = t;
            std::sort(s.begin(), s.end());
            std::size_t row = static_cast<std::size_t>(
                std::lower_bound(f.multi_indices.begin(), f.multi_indices.end(), s) - f.multi_indices.begin());
            for (std::size_t mu = 0; mu < v.rows(); ++mu) {
                if (!seen[row]) f.coeffs(row, mu) = v(mu, 0);
                else if (!(f.coeffs(row, mu) == v(mu, 0))) throw std::logic_error("composed model coefficients are not symmetric");
            }
            seen[row] = true;
        }
        mc.rtilde.push_back(std::move(f));
    }
    return mc;
}

std::size_t model_r_rank(const ModelCoeffs& model, std::size_t k) {
    if (k == 0 || k >= model.r.size()) throw std::out_of_range("model_r_rank: level out of range");
    const auto& blocks = model.r[k];
    if (blocks.empty()) return 0;
    const std::size_t hk = blocks[0].rows(), hprev = blocks[0].cols();
    Matrix stacked(blocks.size() * hprev, hk);
    for (std::size_t a = 0; a < blocks.size(); ++a)
        for (std::size_t nu = 0; nu < hprev; ++nu)
            for (std::size_t mu = 0; mu < hk; ++mu) stacked(a * hprev + nu, mu) = blocks[a](mu, nu);
    return rank(stacked);
}

std::vector<std::size_t> invariant_dims(const std::vector<CharForm>& forms) {
    std::vector<std::size_t> out;
    for (auto& f : forms) out.push_back(f.rank());
    return out;
}

CharForm transform_form(const CharForm& form, const Matrix& lambda) {
    const std::size_t m = form.domain_dim;
    if (lambda.rows() != m || lambda.cols() != m) throw std::invalid_argument("transform_form: dimension mismatch");
    CharForm out = form;
    out.coeffs = Matrix(form.coeffs.rows(), form.coeffs.cols());
    auto ordered = ordered_tuples(m, form.k);
    for (std::size_t row = 0; row < form.multi_indices.size(); ++row) {
        const Tuple& a = form.multi_indices[row];
        for (auto& b : ordered) {
            Rational w = 1;
            for (std::size_t i = 0; i < form.k && !w.is_zero(); ++i)
                w *= lambda(static_cast<std::size_t>(b[i]), static_cast<std::size_t>(a[i]));
            if (w.is_zero()) continue;
            Tuple s = b;
            std::sort(s.begin(), s.end());
            std::size_t src = static_cast<std::size_t>(
                std::lower_bound(form.multi_indices.begin(), form.multi_indices.end(), s) - form.multi_indices.begin());
            for (std::size_t mu = 0; mu < form.coeffs.cols(); ++mu)
                if (!form.coeffs(src, mu).is_zero()) out.coeffs(row, mu).add_mul(w, form.coeffs(src, mu));
        }
    }
    return out;
}

bool check_isomorphism_under(const Matrix& lambda, const std::vector<CharForm>& forms_a,
                             const std::vector<CharForm>& forms_b) {
    if (!inverse(lambda)) throw std::invalid_argument("check_isomorphism_under: singular lambda");
    if (forms_a.size() != forms_b.size()) return false;
    for (std::size_t i = 0; i < forms_a.size(); ++i) {
        if (forms_a[i].k != forms_b[i].k || forms_a[i].domain_dim != forms_b[i].domain_dim) return false;
        if (!(transform_form(forms_b[i], lambda).span() == forms_a[i].span())) return false;
    }
    return true;
}

}  // namespace cyvhs
