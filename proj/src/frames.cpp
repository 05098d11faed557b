#include "cyvhs/frames.hpp"

#include <algorithm>

namespace cyvhs {

FrameContext make_frame_context(const CanonicalVHS& vhs) {
    FrameContext ctx;
    ctx.vhs = vhs;
    ctx.frame = build_adapted_frame(vhs);
    ctx.framed = in_frame(vhs, ctx.frame);
    ctx.graded = grade_endomorphisms(ctx.framed);
    AdaptedFrame id = ctx.frame;
    id.basis_matrix = Matrix::identity(vhs.dim_U);
    ctx.model = model_r_coeffs(ctx.framed, ctx.graded, id);
    ctx.target_gram = ctx.frame.target_gram(vhs.Q.symmetry);
    if (!(ctx.framed.Q.gram == ctx.target_gram)) throw std::logic_error("adapted frame does not reach the target Gram matrix");
    ctx.block_of.assign(vhs.dim_U, 0);
    for (std::size_t q = 0; q < ctx.frame.block_sizes.size(); ++q)
        for (std::size_t j = 0; j < ctx.frame.block_sizes[q]; ++j) ctx.block_of[ctx.frame.block_offsets[q] + j] = q;
    const std::size_t d2 = vhs.dim_U * vhs.dim_U;
    for (auto& [l, e] : ctx.graded.E) {
        std::vector<Vector> basis = ctx.graded.g_at(l).vectors();
        for (auto& v : ctx.graded.gperp_at(l).vectors()) basis.push_back(v);
        ctx.split.emplace(l, CoordinateBasis(d2, std::move(basis)));
    }
    return ctx;
}

MCForm maurer_cartan(const FrameJet& f) {
    if (f.order() == 0) throw std::invalid_argument("maurer_cartan: jet order must be at least 1");
    MatrixJet einv = inverse_jet(f.e);
    MCForm mc;
    mc.valid_order = f.order() - 1;
    for (std::size_t i = 0; i < f.num_params(); ++i) mc.theta.push_back(einv * f.e.derivative(i));
    return mc;
}

bool structure_equation_holds(const MCForm& mc) {
    for (std::size_t i = 0; i < mc.theta.size(); ++i)
        for (std::size_t j = i + 1; j < mc.theta.size(); ++j) {
            MatrixJet s = mc.theta[j].derivative(i) - mc.theta[i].derivative(j);
            s += mc.theta[i] * mc.theta[j];
            s -= mc.theta[j] * mc.theta[i];
            if (!s.is_zero_through(mc.valid_order)) return false;
        }
    return true;
}

bool gram_constant(const FrameJet& f, const FrameContext& ctx) {
    MatrixJet g = f.e.transpose() * f.e.left(ctx.vhs.Q.gram);
    if (!(g.constant_term() == ctx.target_gram)) return false;
    g.coeff(0) = Matrix(g.rows(), g.cols());
    return g.is_zero_through(f.order());
}

bool in_endomorphisms(const MCForm& mc, const FrameContext& ctx) {
    for (auto& t : mc.theta) {
        MatrixJet s = t.transpose().right(ctx.target_gram) + t.left(ctx.target_gram);
        if (!s.is_zero_through(mc.valid_order)) return false;
    }
    return true;
}

MatrixJet degree_part(const MatrixJet& x, int l, const FrameContext& ctx) {
    const auto& b = ctx.block_of;
    return x.map([&](const Matrix& m) {
        Matrix out(m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (static_cast<int>(b[c]) - static_cast<int>(b[r]) == l && !m(r, c).is_zero()) out(r, c) = m(r, c);
        return out;
    });
}

std::pair<MatrixJet, MatrixJet> split_g(const MatrixJet& x_l, int l, const FrameContext& ctx, std::size_t through) {
    const std::size_t d = x_l.rows();
    MatrixJet gpart(x_l.table(), d, d), perp(x_l.table(), d, d);
    auto it = ctx.split.find(l);
    const std::size_t ng = ctx.graded.g_at(l).dim();
    const std::size_t n = x_l.table()->count_through(through);
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix& m = x_l.coeff(i);
        if (m.is_zero()) continue;
        if (it == ctx.split.end()) throw std::logic_error("split_g: nonzero component in an empty degree");
        auto c = it->second.coordinates(vec(m));
        if (!c) throw std::logic_error("split_g: coefficient outside End(U,Q) in degree " + std::to_string(l));
        const auto& basis = it->second.vectors();
        Vector gv(d * d), pv(d * d);
        for (std::size_t k = 0; k < c->size(); ++k) {
            if ((*c)[k].is_zero()) continue;
            Vector& tgt = k < ng ? gv : pv;
            for (std::size_t r = 0; r < tgt.size(); ++r)
                if (!basis[k][r].is_zero()) tgt[r].add_mul((*c)[k], basis[k][r]);
        }
        gpart.coeff(i) = unvec(gv, d);
        perp.coeff(i) = unvec(pv, d);
    }
    return {gpart, perp};
}

MCComponents split_components(const MCForm& mc, const FrameContext& ctx) {
    MCComponents out;
    const std::size_t d = ctx.vhs.dim_U;
    for (auto& t : mc.theta) {
        auto [w, e] = split_g(degree_part(t, -1, ctx), -1, ctx, mc.valid_order);
        out.omega.push_back(w);
        out.eta.push_back(e);
        MatrixJet gn(t.table(), d, d), pn(t.table(), d, d);
        for (int l = 0; l <= ctx.weight(); ++l) {
            auto [g, p] = split_g(degree_part(t, l, ctx), l, ctx, mc.valid_order);
            gn += g;
            pn += p;
        }
        out.g_nonneg.push_back(gn);
        out.gperp_nonneg.push_back(pn);
    }
    return out;
}

bool horizontality_check(const MCForm& mc, const FrameContext& ctx) {
    const auto& b = ctx.block_of;
    for (auto& t : mc.theta) {
        const std::size_t n = t.table()->count_through(mc.valid_order);
        for (std::size_t i = 0; i < n; ++i) {
            const Matrix& m = t.coeff(i);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (b[r] >= b[c] + 2 && !m(r, c).is_zero()) return false;
        }
    }
    return true;
}

MatrixJet coframe_matrix(const MCForm& mc, const FrameContext& ctx) {
    const std::size_t m = mc.theta.size(), h1 = ctx.tangent_dim();
    if (m == 0) throw std::invalid_argument("coframe_matrix: no parameters");
    MatrixJet w(mc.theta[0].table(), m, h1);
    const std::size_t off = ctx.frame.block_offsets.at(1);
    for (std::size_t k = 0; k < w.table()->size(); ++k)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t a = 0; a < h1; ++a) w.coeff(k)(i, a) = mc.theta[i].coeff(k)(off + a, 0);
    return w;
}

bool immersion_check(const MCForm& mc, const FrameContext& ctx) {
    return rank(coframe_matrix(mc, ctx).constant_term()) == mc.theta.size();
}

bool cy_check(const MCForm& mc, const FrameContext& ctx) {
    return mc.theta.size() == ctx.tangent_dim() && immersion_check(mc, ctx);
}

std::vector<CharCoeffLevel> char_coeffs(const MCForm& mc, const FrameContext& ctx) {
    if (!cy_check(mc, ctx)) throw FrameInputError(FrameErrorKind::not_immersive, "char_coeffs: theta^a_0 is not a coframe");
    const std::size_t m = mc.theta.size();
    MatrixJet winv = inverse_jet(coframe_matrix(mc, ctx));
    const auto& off = ctx.frame.block_offsets;
    const auto& h = ctx.frame.block_sizes;
    const auto& r = ctx.model.r;
    std::vector<CharCoeffLevel> out;
    for (std::size_t k = 2; k <= static_cast<std::size_t>(ctx.weight()); ++k) {
        const std::size_t hk = h[k], hn = h[k - 2];
        CharCoeffLevel lv;
        lv.k = k;
        lv.q = MatrixJet(mc.theta[0].table(), hk, hn * m * m);
        lv.model = Matrix(hk, hn * m * m);
        std::vector<MatrixJet> blocks;
        for (auto& t : mc.theta) blocks.push_back(t.block(off[k], off[k - 1], hk, h[k - 1]));
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                MatrixJet q(lv.q.table(), hk, hn);
                for (std::size_t i = 0; i < m; ++i) q += scalar_mul(entry(winv, b, i), blocks[i].right(r[k - 1][a]));
                Matrix mod = r[k][b] * r[k - 1][a];
                for (std::size_t nu = 0; nu < hn; ++nu) {
                    const std::size_t col = (nu * m + a) * m + b;
                    for (std::size_t mu = 0; mu < hk; ++mu) {
                        lv.model(mu, col) = mod(mu, nu);
                        for (std::size_t c = 0; c < q.table()->size(); ++c) lv.q.coeff(c)(mu, col) = q.coeff(c)(mu, nu);
                    }
                }
            }
        }
        lv.symmetric = true;
        const std::size_t n = lv.q.table()->count_through(mc.valid_order);
        for (std::size_t c = 0; c < n && lv.symmetric; ++c)
            for (std::size_t nu = 0; nu < hn; ++nu)
                for (std::size_t a = 0; a < m; ++a)
                    for (std::size_t b = a + 1; b < m; ++b)
                        for (std::size_t mu = 0; mu < hk; ++mu)
                            if (!(lv.q.coeff(c)(mu, (nu * m + a) * m + b) == lv.q.coeff(c)(mu, (nu * m + b) * m + a)))
                                lv.symmetric = false;
        MatrixJet diff = lv.q - MatrixJet::constant(lv.q.table(), lv.model);
        lv.matches_model = diff.is_zero_through(mc.valid_order);
        out.push_back(std::move(lv));
    }
    return out;
}

std::vector<MatrixJet> level_residue(const MCForm& mc, const FrameContext& ctx, std::size_t k) {
    if (k < 1 || k > static_cast<std::size_t>(ctx.weight())) throw std::out_of_range("level_residue: level out of range");
    const auto& off = ctx.frame.block_offsets;
    const auto& h = ctx.frame.block_sizes;
    MatrixJet w = coframe_matrix(mc, ctx);
    std::vector<MatrixJet> out;
    for (std::size_t i = 0; i < mc.theta.size(); ++i) {
        MatrixJet res = mc.theta[i].block(off[k], off[k - 1], h[k], h[k - 1]);
        for (std::size_t a = 0; a < ctx.tangent_dim(); ++a)
            res -= scalar_mul(entry(w, i, a), MatrixJet::constant(w.table(), ctx.model.r[k][a]));
        out.push_back(std::move(res));
    }
    return out;
}

namespace {

Verdict first_nonzero_witness(const std::vector<MatrixJet>& jets, std::size_t limit, const std::string& stage, int level) {
    Verdict v;
    v.stage = stage;
    v.level = level;
    std::size_t best = SIZE_MAX;
    for (std::size_t i = 0; i < jets.size(); ++i) {
        std::size_t k = jets[i].first_nonzero(limit);
        if (k < jets[i].table()->size() && k < best) {
            best = k;
            v.parameter = i;
            v.monomial = jets[i].table()->exponent(k);
            v.residue = jets[i].coeff(k);
        }
    }
    return v;
}

bool any_nonzero(const std::vector<MatrixJet>& jets, std::size_t limit) {
    for (auto& j : jets)
        if (!j.is_zero_through(limit)) return true;
    return false;
}

Vector stacked_coords(const std::vector<Matrix>& per_param, const Subspace& target) {
    Vector out;
    for (auto& m : per_param) {
        if (m.is_zero()) {
            out.resize(out.size() + target.dim());
            continue;
        }
        auto c = target.coordinates(vec(m));
        if (!c) throw std::logic_error("reduction: bracket left the expected graded piece");
        out.insert(out.end(), c->begin(), c->end());
    }
    return out;
}

// λ(ξ_a) = Σ_i W^{-1}(a, i) P_i must satisfy [λ(ξ_a), ξ_b] = [λ(ξ_b), ξ_a].
bool lambda_closed(const std::vector<MatrixJet>& p, const MCForm& mc, const FrameContext& ctx, long through) {
    if (through < 0) return true;
    MatrixJet winv = inverse_jet(coframe_matrix(mc, ctx));
    const std::size_t m = p.size();
    std::vector<MatrixJet> lam;
    for (std::size_t a = 0; a < m; ++a) {
        MatrixJet l(p[0].table(), p[0].rows(), p[0].cols());
        for (std::size_t i = 0; i < m; ++i) l += scalar_mul(entry(winv, a, i), p[i]);
        lam.push_back(std::move(l));
    }
    const auto& xi = ctx.model.xi;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            MatrixJet s = lam[a].right(xi[b]) - lam[a].left(xi[b]);
            s -= lam[b].right(xi[a]) - lam[b].left(xi[a]);
            if (!s.is_zero_through(static_cast<std::size_t>(through))) return false;
        }
    return true;
}

}  // namespace

ReductionResult frame_reduction(const FrameJet& f, const FrameContext& ctx) {
    const std::size_t J = f.order();
    const std::size_t d = ctx.vhs.dim_U;
    const int n = ctx.weight();
    ReductionResult res;
    res.reduced = f;
    res.verified_order = J - 1;

    MCForm mc = maurer_cartan(f);
    {
        std::vector<MatrixJet> eta;
        for (auto& t : mc.theta) eta.push_back(split_g(degree_part(t, -1, ctx), -1, ctx, mc.valid_order).second);
        if (any_nonzero(eta, mc.valid_order)) {
            res.obstruction = first_nonzero_witness(eta, mc.valid_order, "eta", -1);
            return res;
        }
    }
    const bool cy = cy_check(mc, ctx);
    const TablePtr& table = f.e.table();
    const auto& tab = *table;

    for (int L = 0; L <= n; ++L) {
        if (L > 0) mc = maurer_cartan(res.reduced);
        const std::size_t V = mc.valid_order;
        const long cert = std::min(static_cast<long>(J) - 2 - L, static_cast<long>(res.verified_order) - 1);
        std::vector<MatrixJet> p, omega;
        for (auto& t : mc.theta) {
            p.push_back(split_g(degree_part(t, L, ctx), L, ctx, V).second);
            omega.push_back(degree_part(t, -1, ctx));
        }
        MatrixJet zeta(table, d, d);
        if (!any_nonzero(p, V)) {
            res.corrections.push_back(zeta);
            continue;
        }
        if (cy && !lambda_closed(p, mc, ctx, cert))
            throw FrameInputError(FrameErrorKind::not_closed,
                                  "lambda is not delta1-closed at level " + std::to_string(L));

        const Subspace& target = ctx.graded.gperp_at(L);
        const auto& zb = ctx.graded.gperp_basis_at(L + 1);
        const std::size_t m = mc.theta.size();
        Matrix a(m * target.dim(), zb.size());
        for (std::size_t j = 0; j < zb.size(); ++j) {
            std::vector<Matrix> cols;
            for (std::size_t i = 0; i < m; ++i) cols.push_back(commutator(omega[i].constant_term(), zb[j]));
            a.set_column(j, stacked_coords(cols, target));
        }
        std::optional<LinearSolver> solver;
        if (!zb.empty()) solver.emplace(a);

        const std::size_t count = tab.count_through(V);
        for (std::size_t idx = 0; idx < count; ++idx) {
            const std::size_t deg = tab.degree(idx);
            std::vector<Matrix> rhs;
            for (std::size_t i = 0; i < m; ++i) {
                Matrix r = -p[i].coeff(idx);
                for (std::size_t al = 1; al < tab.count_through(deg); ++al) {
                    const Matrix& w = omega[i].coeff(al);
                    if (w.is_zero()) continue;
                    Exponent beta = tab.exponent(idx);
                    bool ok = true;
                    for (std::size_t v = 0; v < beta.size(); ++v) {
                        beta[v] -= tab.exponent(al)[v];
                        ok &= beta[v] >= 0;
                    }
                    if (!ok) continue;
                    const Matrix& z = zeta.coeff(*tab.index(beta));
                    if (!z.is_zero()) r -= commutator(w, z);
                }
                rhs.push_back(std::move(r));
            }
            Vector b = stacked_coords(rhs, target);
            std::optional<Vector> sol;
            if (solver) sol = solver->solve(b);
            else if (is_zero(b)) sol = Vector();
            if (!sol) {
                if (static_cast<long>(deg) <= cert) {
                    Verdict& v = res.obstruction;
                    v.stage = "reduction";
                    v.level = L;
                    v.monomial = tab.exponent(idx);
                    for (std::size_t i = 0; i < m; ++i)
                        if (!p[i].coeff(idx).is_zero() || !rhs[i].is_zero()) {
                            v.parameter = i;
                            v.residue = rhs[i];
                            break;
                        }
                    v.residue_class = solver ? solver->cokernel_coordinates(b) : b;
                    v.verified_order = res.verified_order;
                    return res;
                }
                // beyond the certified order: truncation artefact, stop refining this level
                res.verified_order = std::min(res.verified_order, deg == 0 ? 0 : deg - 1);
                break;
            }
            Matrix z(d, d);
            for (std::size_t j = 0; j < zb.size(); ++j)
                if (!(*sol)[j].is_zero()) z.add_scaled(zb[j], (*sol)[j]);
            zeta.coeff(idx) = std::move(z);
        }
        res.reduced.e = res.reduced.e * exp_jet(zeta);
        res.corrections.push_back(std::move(zeta));
    }

    mc = maurer_cartan(res.reduced);
    for (int l = -1; l <= n; ++l)
        for (auto& t : mc.theta) {
            MatrixJet perp = split_g(degree_part(t, l, ctx), l, ctx, mc.valid_order).second;
            std::size_t k = perp.first_nonzero(res.verified_order);
            if (k < perp.table()->size()) {
                std::size_t deg = tab.degree(k);
                res.verified_order = deg == 0 ? 0 : deg - 1;
                if (deg == 0) {
                    res.obstruction.stage = "reduction";
                    res.obstruction.level = l;
                    res.obstruction.monomial = tab.exponent(k);
                    res.obstruction.residue = perp.coeff(k);
                    return res;
                }
            }
        }
    res.success = true;
    return res;
}

Verdict eta_test(const FrameJet& f, const FrameContext& ctx) {
    const std::size_t n = static_cast<std::size_t>(ctx.weight());
    if (f.order() < n + 1)
        throw FrameInputError(FrameErrorKind::insufficient_order,
                              "jet order " + std::to_string(f.order()) + " is below weight + 1 = " + std::to_string(n + 1));
    if (f.e.rows() != ctx.vhs.dim_U || f.e.cols() != ctx.vhs.dim_U)
        throw FrameInputError(FrameErrorKind::bad_base_point, "frame has the wrong size");
    const Matrix& e0 = f.e.constant_term();
    if (!(e0.transpose() * ctx.vhs.Q.gram * e0 == ctx.target_gram))
        throw FrameInputError(FrameErrorKind::bad_base_point, "base frame does not have the target Gram matrix");
    MCForm mc = maurer_cartan(f);
    if (!horizontality_check(mc, ctx)) throw FrameInputError(FrameErrorKind::not_horizontal, "frame is not horizontal");
    if (!immersion_check(mc, ctx)) throw FrameInputError(FrameErrorKind::not_immersive, "theta^a_0 is not injective at t = 0");

    for (std::size_t k = 2; k <= n; ++k) {
        auto r = level_residue(mc, ctx, k);
        if (any_nonzero(r, mc.valid_order)) {
            Verdict v = first_nonzero_witness(r, mc.valid_order, "eta", static_cast<int>(k));
            v.verified_order = mc.valid_order;
            return v;
        }
    }
    auto red = frame_reduction(f, ctx);
    if (!red.success) return red.obstruction;
    Verdict v;
    v.congruent = true;
    v.verified_order = red.verified_order;
    return v;
}

namespace {

Rational small_rational(std::mt19937_64& rng) {
    static const int nums[] = {-2, -1, 1, 2};
    return Rational(nums[rng() % 4], static_cast<long long>(1 + rng() % 2));
}

}  // namespace

FrameJet model_frame(const FrameContext& ctx, std::size_t order) {
    auto table = monomial_table(ctx.tangent_dim(), order);
    return {exp_jet(MatrixJet::linear(table, ctx.model.xi)).left(ctx.frame.basis_matrix)};
}

FrameJet left_translate(const FrameJet& f, const Matrix& g) { return {f.e.left(g)}; }

FrameJet right_translate(const FrameJet& f, const Matrix& p) { return {f.e.right(p)}; }

Matrix random_automorphism(const FrameContext& ctx, std::mt19937_64& rng) {
    const std::size_t d = ctx.vhs.dim_U;
    auto basis = as_matrices(ctx.graded.ambient, d);
    const Matrix& F = ctx.frame.basis_matrix;
    Matrix finv = *inverse(F);
    while (true) {
        Matrix y(d, d);
        for (int k = 0; k < 3; ++k) y.add_scaled(basis[rng() % basis.size()], small_rational(rng));
        Matrix x = F * y * finv;
        auto inv = inverse(Matrix::identity(d) - x);
        if (!inv) continue;
        return *inv * (Matrix::identity(d) + x);
    }
}

Matrix random_gperp_minus_one(const FrameContext& ctx, std::mt19937_64& rng) {
    const auto& basis = ctx.graded.gperp_basis_at(-1);
    if (basis.empty()) throw std::invalid_argument("g⊥ ∩ E_-1 is zero for this family");
    const std::size_t d = ctx.vhs.dim_U;
    while (true) {
        Matrix z(d, d);
        for (auto& b : basis)
            if (rng() % 2) z.add_scaled(b, small_rational(rng));
        if (!z.is_zero()) return z;
    }
}

FrameJet perturbed_curve(const FrameContext& ctx, std::size_t order, std::mt19937_64& rng, Matrix* zeta_out) {
    Matrix zeta = random_gperp_minus_one(ctx, rng);
    while (true) {
        Matrix x = zeta;
        for (auto& xi : ctx.model.xi) x.add_scaled(xi, Rational(static_cast<long long>(rng() % 5) - 2));
        bool moves = false;
        for (std::size_t a = 0; a < ctx.tangent_dim(); ++a) moves |= !x(ctx.frame.block_offsets[1] + a, 0).is_zero();
        if (!moves) continue;
        if (zeta_out) *zeta_out = zeta;
        auto table = monomial_table(1, order);
        return {exp_jet(MatrixJet::linear(table, {x})).left(ctx.frame.basis_matrix)};
    }
}

MatrixJet random_algebra_jet(const FrameContext& ctx, std::size_t order, std::size_t params, std::mt19937_64& rng) {
    const std::size_t d = ctx.vhs.dim_U;
    auto basis = as_matrices(ctx.graded.ambient, d);
    auto table = monomial_table(params, order);
    MatrixJet y(table, d, d);
    for (std::size_t i = 1; i < table->size(); ++i)
        if (rng() % 2) y.coeff(i).add_scaled(basis[rng() % basis.size()], small_rational(rng));
    return y;
}

FrameJet random_group_jet(const FrameContext& ctx, std::size_t order, std::size_t params, std::mt19937_64& rng) {
    MatrixJet y = random_algebra_jet(ctx, order, params, rng);
    Matrix g = random_automorphism(ctx, rng);
    return {exp_jet(y).left(g * ctx.frame.basis_matrix)};
}

}  // namespace cyvhs
