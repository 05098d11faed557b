#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cyvhs/cohomology.hpp"
#include "cyvhs/forms.hpp"
#include "cyvhs/frames.hpp"
#include "cyvhs/parallel.hpp"
#include "cyvhs/serialize.hpp"

using namespace cyvhs;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, not_horizontal = 3, short_jet = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
}

CanonicalVHS load_vhs(const std::string& path) { return vhs_from_json(read_json(path)); }

struct Row {
    std::string section, name, value;
    bool passed;
};

void emit(const json& doc, const std::vector<Row>& rows, const std::string& format, const std::string& out) {
    if (format == "json") {
        write_text(canonical_dump(doc), out);
    } else if (format == "csv") {
        std::ostringstream s;
        s << "section,name,value,passed\n";
        for (auto& r : rows) s << r.section << ',' << r.name << ",\"" << r.value << "\"," << (r.passed ? "true" : "false") << '\n';
        write_text(s.str(), out);
    } else {
        std::ostringstream s;
        for (auto& r : rows)
            s << (r.passed ? "[pass] " : "[FAIL] ") << r.section << '/' << r.name << (r.value.empty() ? "" : ": ") << r.value
              << '\n';
        write_text(s.str(), out);
    }
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

json forms_report(const CanonicalVHS& vhs, const GradedEnd& gr, std::vector<Row>& rows) {
    const auto n = static_cast<std::size_t>(vhs.weight);
    auto osc = osculating_filtration(vhs, gr);
    auto h = vhs.hodge_numbers();
    json levels = json::array();
    bool all = osc.m() == n;
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k <= n; ++k) {
        auto gamma = characteristic_form(vhs, gr, k);
        bool osc_ok = k < osc.T.size() && osc.T[k] == vhs.filtration(static_cast<int>(n - k));
        bool cf_ok = false;
        if (osc_ok) {
            auto psi = fundamental_form(vhs, gr, k);
            cf_ok = psi.denominator == gamma.denominator && rebase(psi, gamma.quotient_basis).coeffs == gamma.coeffs;
        }
        bool rank_ok = gamma.rank() == h[k];
        ranks.push_back(gamma.rank());
        all &= osc_ok && cf_ok && rank_ok;
        levels.push_back({{"k", k},
                          {"c", gamma.rank()},
                          {"h", h[k]},
                          {"gamma_equals_psi", cf_ok},
                          {"osculating_equals_hodge_filtration", osc_ok}});
        rows.push_back({"forms", "gamma_equals_psi_k" + std::to_string(k), "", cf_ok});
        rows.push_back({"forms", "osculating_k" + std::to_string(k), "", osc_ok});
    }
    rows.push_back({"forms", "char_form_ranks", join(ranks), ranks == h});
    return {{"levels", levels}, {"osculating_length", osc.m()}, {"passed", all}};
}

json cohomology_report(const CanonicalVHS& vhs, const GradedEnd& gr, std::vector<Row>& rows) {
    auto cx = build_complex(vhs, gr);
    json j = cohomology_to_json(cx, gr, vhs.weight);
    bool pass = j["composite_zero"] && j["grading_preserved"] && j["h1_positive_vanishes"] && j["gamma_vanishes"];
    j["passed"] = pass;
    std::string h1;
    for (auto& [m, h] : h1_graded(cx)) h1 += (h1.empty() ? "" : " ") + std::to_string(m) + ":" + std::to_string(h);
    rows.push_back({"cohomology", "delta1_delta0_zero", "", j["composite_zero"]});
    rows.push_back({"cohomology", "grading_preserved", "", j["grading_preserved"]});
    rows.push_back({"cohomology", "h1_positive_vanishes", h1, j["h1_positive_vanishes"]});
    rows.push_back({"cohomology", "gamma_vanishes", "", j["gamma_vanishes"]});
    return j;
}

int cmd_build(const std::string& family, std::size_t size, const std::string& out) {
    Family f;
    try {
        f = parse_family(family);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (size == 0) throw UsageError("size must be positive");
    write_text(canonical_dump(vhs_to_json(build_family(f, size))), out);
    return ok;
}

int cmd_verify(const std::string& path, const std::string& format, const std::string& out) {
    auto vhs = load_vhs(path);
    auto gr = grade_endomorphisms(vhs);
    std::vector<std::vector<Row>> rows(3);
    std::vector<json> parts(3);
    parallel_for(3, [&](std::size_t i) {
        if (i == 0) {
            auto rep = verify_structure(vhs, gr);
            parts[0] = structure_report_to_json(rep);
            for (auto& c : rep.checks) rows[0].push_back({"structure", c.name, c.detail, c.passed || c.informational});
        } else if (i == 1) {
            parts[1] = forms_report(vhs, gr, rows[1]);
        } else {
            parts[2] = cohomology_report(vhs, gr, rows[2]);
        }
    });
    bool pass = parts[0]["all_passed"] && parts[1]["passed"] && parts[2]["passed"];
    json doc = {{"family", family_name(vhs.family)},
                {"size", vhs.size},
                {"structure", parts[0]},
                {"forms", parts[1]},
                {"cohomology", parts[2]},
                {"passed", pass}};
    std::vector<Row> all;
    for (auto& r : rows) all.insert(all.end(), r.begin(), r.end());
    emit(doc, all, format, out);
    return pass ? ok : failed;
}

int cmd_char_forms(const std::string& path, int max_k, const std::string& out) {
    auto vhs = load_vhs(path);
    auto gr = grade_endomorphisms(vhs);
    const int top = max_k < 0 ? vhs.weight : std::min(max_k, vhs.weight);
    json forms = json::array();
    for (int k = 0; k <= top; ++k) forms.push_back(charform_to_json(characteristic_form(vhs, gr, static_cast<std::size_t>(k))));
    write_text(canonical_dump({{"family", family_name(vhs.family)}, {"size", vhs.size}, {"forms", forms}}), out);
    return ok;
}

int cmd_cohomology(const std::string& path, const std::string& format, const std::string& out) {
    auto vhs = load_vhs(path);
    auto gr = grade_endomorphisms(vhs);
    std::vector<Row> rows;
    json j = cohomology_report(vhs, gr, rows);
    emit(j, rows, format, out);
    return j["passed"] ? ok : failed;
}

int cmd_eta_test(const std::string& vhs_path, const std::string& frame_path, const std::string& format,
                 const std::string& out) {
    auto vhs = load_vhs(vhs_path);
    auto frame = frame_from_json(read_json(frame_path));
    auto ctx = make_frame_context(vhs);
    Verdict v = eta_test(frame, ctx);
    std::vector<Row> rows = {{"eta_test", "status", v.congruent ? "congruent" : "obstructed", v.congruent}};
    if (!v.congruent) rows.push_back({"eta_test", "level", v.stage + " " + std::to_string(v.level), false});
    emit(verdict_to_json(v), rows, format, out);
    return v.congruent ? ok : failed;
}

int cmd_gen_frame(const std::string& path, const std::string& kind, std::uint64_t seed, int order, const std::string& out) {
    auto vhs = load_vhs(path);
    auto ctx = make_frame_context(vhs);
    const std::size_t J = order < 0 ? static_cast<std::size_t>(vhs.weight) + 1 : static_cast<std::size_t>(order);
    std::mt19937_64 rng(seed);
    FrameJet f;
    if (kind == "model") f = model_frame(ctx, J);
    else if (kind == "translated") f = left_translate(model_frame(ctx, J), random_automorphism(ctx, rng));
    else if (kind == "perturbed") f = perturbed_curve(ctx, J, rng);
    else throw UsageError("unknown frame kind " + kind);
    write_text(canonical_dump(frame_to_json(f)), out);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* t = std::getenv("CYVHS_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(t, &end, 10);
        if (end != t && *end == '\0' && n > 0) set_thread_limit(static_cast<std::size_t>(n));
    }

    CLI::App app{"Canonical Calabi-Yau variations of Hodge structure over tube domains"};
    app.require_subcommand(1);
    std::string format = "json", out;

    std::string family;
    std::size_t size = 0;
    auto* build = app.add_subcommand("build", "construct a canonical VHS and write it as JSON");
    build->add_option("--family", family, "A, C or BD")->required();
    build->add_option("--size", size, "family size")->required();
    build->add_option("--out", out, "output path (default stdout)");

    std::string vhs_path, frame_path;
    auto* verify = app.add_subcommand("verify", "run the structure, forms and cohomology suites");
    verify->add_option("vhs", vhs_path)->required();

    int max_k = -1;
    auto* cforms = app.add_subcommand("char-forms", "dump characteristic form tensors");
    cforms->add_option("vhs", vhs_path)->required();
    cforms->add_option("--max-k", max_k, "highest degree (default: weight)");

    auto* cohom = app.add_subcommand("cohomology", "graded H^1 and centralizer report");
    cohom->add_option("vhs", vhs_path)->required();

    auto* eta = app.add_subcommand("eta-test", "decide congruence of a frame jet to the model");
    eta->add_option("vhs", vhs_path)->required();
    eta->add_option("frame", frame_path)->required();

    std::string kind = "model";
    std::uint64_t seed = 0;
    int order = -1;
    auto* gen = app.add_subcommand("gen-frame", "emit a sample frame jet");
    gen->add_option("vhs", vhs_path)->required();
    gen->add_option("--kind", kind)->check(CLI::IsMember({"model", "translated", "perturbed"}));
    gen->add_option("--seed", seed);
    gen->add_option("--order", order, "jet order (default: weight + 1)");

    for (auto* sub : {verify, cforms, cohom, eta, gen}) sub->add_option("--out", out, "output path (default stdout)");
    for (auto* sub : {verify, cohom, eta})
        sub->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "human"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*build) return cmd_build(family, size, out);
        if (*verify) return cmd_verify(vhs_path, format, out);
        if (*cforms) return cmd_char_forms(vhs_path, max_k, out);
        if (*cohom) return cmd_cohomology(vhs_path, format, out);
        if (*eta) return cmd_eta_test(vhs_path, frame_path, format, out);
        if (*gen) return cmd_gen_frame(vhs_path, kind, seed, order, out);
    } catch (const FrameInputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case FrameErrorKind::insufficient_order: return short_jet;
            case FrameErrorKind::bad_base_point: return usage;
            default: return not_horizontal;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return usage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failed;
    }
    return usage;
}
