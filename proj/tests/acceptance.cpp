// Acceptance criteria 1-8: exact checks, each under a wall-clock limit.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "cyvhs/cohomology.hpp"
#include "cyvhs/forms.hpp"
#include "cyvhs/frames.hpp"

using namespace cyvhs;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes << " [" << what << "]";
        }
    }
};

bool run(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.require(secs <= limit_s, "over time limit");
    std::cout << "criterion " << id << " (" << title << "): " << (out.ok ? "PASS" : "FAIL") << "  " << std::fixed
              << std::setprecision(2) << secs << " s / " << limit_s << " s" << out.notes.str() << std::endl;
    return out.ok;
}

struct Row {
    Family fam;
    std::size_t size, dim_u;
    std::vector<std::size_t> h;
    std::size_t dim_g, dim_end, dim_gperp;
};

// combinatorial counts, independent of the constructions
Row oracle(Family fam, std::size_t size) {
    Row r{fam, size, 0, {}, 0, 0, 0};
    std::size_t n = 0;
    int sym = 1;
    if (fam == Family::A) {
        n = size;
        for (std::size_t q = 0; q <= n; ++q) r.h.push_back(binomial(n, q) * binomial(n, q));
        r.dim_g = 4 * n * n - 1;
        sym = n % 2 == 0 ? 1 : -1;
    } else if (fam == Family::C) {
        n = size;
        for (std::size_t q = 0; q <= n; ++q) {
            std::size_t p = n - q;
            std::size_t full = binomial(n, p) * binomial(n, q);
            r.h.push_back(full - (p && q ? binomial(n, p - 1) * binomial(n, q - 1) : 0));
        }
        r.dim_g = n * (2 * n + 1);
        sym = n % 2 == 0 ? 1 : -1;
    } else {
        r.h = {1, size, 1};
        r.dim_g = (size + 2) * (size + 1) / 2;
        sym = 1;
    }
    for (auto x : r.h) r.dim_u += x;
    r.dim_end = sym == 1 ? r.dim_u * (r.dim_u - 1) / 2 : r.dim_u * (r.dim_u + 1) / 2;
    r.dim_gperp = r.dim_end - r.dim_g;
    return r;
}

std::string tag(Family f, std::size_t s) { return family_name(f) + std::to_string(s); }

void criterion1(Outcome& o) {
    const std::vector<Row> table = {{Family::C, 3, 14, {1, 6, 6, 1}, 21, 105, 84},
                                    {Family::A, 3, 20, {1, 9, 9, 1}, 35, 210, 175},
                                    {Family::A, 2, 6, {1, 4, 1}, 15, 15, 0},
                                    {Family::BD, 3, 5, {1, 3, 1}, 10, 10, 0}};
    for (auto& row : table) {
        auto t0 = std::chrono::steady_clock::now();
        auto vhs = build_family(row.fam, row.size);
        auto gr = grade_endomorphisms(vhs);
        auto rep = verify_structure(vhs, gr);
        const std::string t = tag(row.fam, row.size);
        for (auto& c : rep.checks)
            if (!c.informational) o.require(c.passed, t + " " + c.name);
        Row o2 = oracle(row.fam, row.size);
        o.require(o2.dim_u == row.dim_u && o2.h == row.h && o2.dim_g == row.dim_g && o2.dim_end == row.dim_end &&
                      o2.dim_gperp == row.dim_gperp,
                  t + " oracle disagrees with table");
        o.require(vhs.dim_U == row.dim_u, t + " dim U");
        o.require(vhs.hodge_numbers() == row.h, t + " hodge numbers");
        o.require(vhs.g_basis.size() == row.dim_g, t + " dim g");
        o.require(gr.ambient.dim() == row.dim_end, t + " dim End(U,Q)");
        o.require(gr.gperp_dim() == row.dim_gperp, t + " dim gperp");
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs <= 5.0, t + " over 5 s");
    }
}

void criterion2(Outcome& o) {
    for (auto [fam, size] : {std::pair{Family::C, 3u}, std::pair{Family::A, 3u}}) {
        auto vhs = build_family(fam, size);
        auto gr = grade_endomorphisms(vhs);
        auto osc = osculating_filtration(vhs, gr);
        const auto n = static_cast<std::size_t>(vhs.weight);
        o.require(osc.m() == n, tag(fam, size) + " osculating length");
        for (std::size_t k = 0; k <= n && k < osc.T.size(); ++k) {
            const std::string t = tag(fam, size) + " k=" + std::to_string(k);
            o.require(osc.T[k] == vhs.filtration(static_cast<int>(n - k)), t + " T^k = F^{n-k}");
            auto gamma = characteristic_form(vhs, gr, k);
            auto psi = fundamental_form(vhs, gr, k);
            o.require(psi.denominator == gamma.denominator, t + " quotient mismatch");
            o.require(rebase(psi, gamma.quotient_basis).coeffs == gamma.coeffs, t + " gamma != psi");
        }
    }
}

void criterion3(Outcome& o) {
    for (auto [fam, size] : {std::pair{Family::C, 3u}, std::pair{Family::A, 3u}, std::pair{Family::A, 2u},
                             std::pair{Family::BD, 3u}, std::pair{Family::C, 2u}, std::pair{Family::A, 1u}}) {
        auto vhs = build_family(fam, size);
        auto gr = grade_endomorphisms(vhs);
        std::vector<CharForm> forms;
        for (std::size_t k = 0; k <= static_cast<std::size_t>(vhs.weight); ++k)
            forms.push_back(characteristic_form(vhs, gr, k));
        o.require(invariant_dims(forms) == oracle(fam, size).h, tag(fam, size) + " c^k != h^{n-k,k}");
    }
}

void criterion4(Outcome& o) {
    for (auto [fam, size] : {std::pair{Family::C, 3u}, std::pair{Family::A, 3u}}) {
        const std::string t = tag(fam, size);
        auto vhs = build_family(fam, size);
        auto gr = grade_endomorphisms(vhs);
        auto cx = build_complex(vhs, gr);
        o.require(cx.composite_zero(), t + " delta1 delta0 != 0");
        o.require(cx.grading_preserved(), t + " grading");
        for (auto& [m, h] : h1_graded(cx))
            if (m >= 1) o.require(h == 0, t + " H1_" + std::to_string(m) + " = " + std::to_string(h));
        for (int l = -1; l <= vhs.weight; ++l)
            o.require(centralizer_gamma(gr, l).dim() == 0, t + " Gamma_" + std::to_string(l + 1));
    }
}

const FrameContext& c3_context() {
    static const FrameContext ctx = make_frame_context(build_family(Family::C, 3));
    return ctx;
}

void criterion5(Outcome& o) {
    const auto& ctx = c3_context();
    const std::size_t J = 4;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t m = 1 + seed % 6;
        MatrixJet y = random_algebra_jet(ctx, J, m, rng);
        Matrix g = random_automorphism(ctx, rng);
        FrameJet f{exp_jet(y).left(g * ctx.frame.basis_matrix)};
        const std::string t = "seed " + std::to_string(seed);
        o.require(exp_jet(y) * exp_jet(-y) == MatrixJet::identity(y.table(), y.rows()), t + " exp group law");
        o.require(gram_constant(f, ctx), t + " Gram constancy through 4");
        MCForm mc = maurer_cartan(f);
        o.require(mc.valid_order == 3, t + " valid order");
        o.require(structure_equation_holds(mc), t + " structure equation through 3");
        o.require(in_endomorphisms(mc, ctx), t + " theta in End(U,Q)");
    }
}

bool gperp_vanishes(const FrameJet& f, const FrameContext& ctx, std::size_t through) {
    auto comp = split_components(maurer_cartan(f), ctx);
    for (std::size_t i = 0; i < comp.eta.size(); ++i)
        if (!comp.eta[i].is_zero_through(through) || !comp.gperp_nonneg[i].is_zero_through(through)) return false;
    return true;
}

void criterion6(Outcome& o) {
    const auto& ctx = c3_context();
    const std::size_t J = static_cast<std::size_t>(ctx.weight()) + 1;
    auto model = model_frame(ctx, J);
    std::vector<std::pair<std::string, FrameJet>> frames = {{"model", model}};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(seed);
        frames.emplace_back("translate " + std::to_string(seed), left_translate(model, random_automorphism(ctx, rng)));
    }
    for (auto& [name, f] : frames) {
        o.require(gram_constant(f, ctx), name + " Gram");
        auto v = eta_test(f, ctx);
        o.require(v.congruent, name + " verdict");
        auto red = frame_reduction(f, ctx);
        o.require(red.success && red.verified_order == J - 1, name + " reduction");
        o.require(gperp_vanishes(red.reduced, ctx, J - 1), name + " theta_gperp != 0 through J-1");
    }
}

void criterion7(Outcome& o) {
    const auto& ctx = c3_context();
    const std::size_t J = static_cast<std::size_t>(ctx.weight()) + 1;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(100 + seed);
        Matrix zeta;
        auto f = perturbed_curve(ctx, J, rng, &zeta);
        const std::string t = "seed " + std::to_string(seed);
        o.require(!zeta.is_zero() && ctx.graded.gperp_at(-1).contains(vec(zeta)), t + " zeta in gperp_-1 minus 0");
        auto v = eta_test(f, ctx);
        o.require(!v.congruent && v.stage == "eta" && v.level == 2, t + " verdict");
        o.require(!v.residue.is_zero(), t + " witness is zero");
        // per-parameter q^2 versus r^2: θ^{μ_2}_a(∂_t) against r^{μ_2}_{ab} θ^b_0(∂_t)
        MCForm mc = maurer_cartan(f);
        const auto& off = ctx.frame.block_offsets;
        const auto& h = ctx.frame.block_sizes;
        Matrix q2 = mc.theta[0].constant_term().block(off[2], off[1], h[2], h[1]);
        Matrix r2(h[2], h[1]);
        for (std::size_t b = 0; b < ctx.tangent_dim(); ++b)
            r2.add_scaled(ctx.model.r[2][b], mc.theta[0].constant_term()(off[1] + b, 0));
        o.require(!(q2 == r2), t + " q^2 equals r^2");
        o.require(v.residue == q2 - r2, t + " witness is not q^2 - r^2");
    }
}

void criterion8(Outcome& o) {
    for (auto [fam, size] : {std::pair{Family::C, 3u}, std::pair{Family::A, 3u}}) {
        const std::string t = tag(fam, size);
        auto vhs = build_family(fam, size);
        auto gr = grade_endomorphisms(vhs);
        auto frame = build_adapted_frame(vhs);
        auto mc = model_r_coeffs(vhs, gr, frame);
        const std::size_t m = mc.xi.size();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                o.require(mc.r[1][a](b, 0) == Rational(a == b ? 1 : 0), t + " r^1 != delta");
        auto fv = in_frame(vhs, frame);
        for (std::size_t k = 0; k <= static_cast<std::size_t>(vhs.weight); ++k)
            o.require(characteristic_form(fv, k, mc.xi).coeffs == mc.rtilde[k].coeffs, t + " rtilde != gamma at k=" + std::to_string(k));
        for (std::size_t k = 2; k <= static_cast<std::size_t>(vhs.weight); ++k)
            o.require(model_r_rank(mc, k) == mc.block_sizes[k], t + " injectivity at level " + std::to_string(k));
    }
}

}  // namespace

int main() {
    bool all = true;
    all &= run(1, "structure suite", 20.0, criterion1);
    all &= run(2, "C=F identification", 10.0, criterion2);
    all &= run(3, "characteristic-form ranks", 5.0, criterion3);
    all &= run(4, "cohomology suite", 60.0, criterion4);
    all &= run(5, "Maurer-Cartan engine", 10.0, criterion5);
    all &= run(6, "eta-test positive controls", 30.0, criterion6);
    all &= run(7, "eta-test negative control", 30.0, criterion7);
    all &= run(8, "model coefficients", 5.0, criterion8);
    return all ? 0 : 1;
}
