// Batch driver: validate parameters, compute the explicit objects, run the
// verification suites and emit a JSON report.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qpvi/suites.hpp"

using nlohmann::ordered_json;
using namespace qpvi;

namespace {

cx parse_cx(const ordered_json& j) {
    if (j.is_array()) return {j.at(0).get<double>(), j.at(1).get<double>()};
    return {j.get<double>(), 0.0};
}

ordered_json jcx(cx v) { return ordered_json::array({v.real(), v.imag()}); }

ParamSet params_from_json(const ordered_json& j) {
    if (j.is_string() && j.get<std::string>() == "REF") return ref_params();
    Nome q(parse_cx(j.at("q")));
    std::array<cx, 2> rho{parse_cx(j.at("rho").at(0)), parse_cx(j.at("rho").at(1))};
    std::array<cx, 2> sigma{parse_cx(j.at("sigma").at(0)), parse_cx(j.at("sigma").at(1))};
    if (j.contains("x") && j.at("x").size() == 4) {
        return ParamSet{q, rho, sigma,
                        {parse_cx(j.at("x").at(0)), parse_cx(j.at("x").at(1)),
                         parse_cx(j.at("x").at(2)), parse_cx(j.at("x").at(3))}};
    }
    return complete_x4(q, rho, sigma, parse_cx(j.at("x").at(0)), parse_cx(j.at("x").at(1)),
                       parse_cx(j.at("x").at(2)));
}

ordered_json params_to_json(const ParamSet& p) {
    return {{"q", jcx(p.q.q)},
            {"rho", {jcx(p.rho[0]), jcx(p.rho[1])}},
            {"sigma", {jcx(p.sigma[0]), jcx(p.sigma[1])}},
            {"x", {jcx(p.x[0]), jcx(p.x[1]), jcx(p.x[2]), jcx(p.x[3])}}};
}

void emit(const ordered_json& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << body.dump(2) << "\n";
}

PrecisionPolicy env_policy() {
    PrecisionPolicy policy;
    if (const char* d = std::getenv("QPVI_PRECISION_DIGITS")) policy.digits = std::atoi(d);
    return policy;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit objects and numerical verification for the q-difference "
                 "monodromy Segre-surface geometry (JS case)"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    uint64_t seed = 1;
    double omega_re = 0.0, omega_im = 0.0;
    bool omega_set = false;
    double tol = 0.0;
    std::string convention = "auto";
    app.add_option("--config", config_path, "JSON config path")->capture_default_str();
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    auto* om = app.add_option("--omega", omega_re, "family parameter (real part)");
    app.add_option("--omega-imag", omega_im, "family parameter (imaginary part)");
    app.add_option("--tol", tol, "override the leading tolerance of requested suites");
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--convention", convention, "rho' orientation: auto|rowclass|columnclass");

    app.fallthrough();
    auto* sub_validate = app.add_subcommand("validate", "check (NR)(FR)(NS)(SC)");
    auto* sub_coeffs = app.add_subcommand("coeffs", "interpolation data, quadric coefficients, "
                                                    "gamma constants, discriminant");
    auto* sub_verify = app.add_subcommand("verify", "run verification suites");
    auto* sub_sample = app.add_subcommand("sample", "draw monodromy points");
    auto* sub_lines = app.add_subcommand("lines", "fit the sixteen lines");
    auto* sub_report = app.add_subcommand("report", "run every suite and emit the full report");

    std::vector<std::string> suite_names;
    sub_verify->add_option("--suites", suite_names, "subset of: identities quadric pencil "
                                                    "samples detlocus embed lines cubic graph");
    int sample_count = 10;
    sub_sample->add_option("--count", sample_count, "number of samples");
    std::string constraint = "none";
    sub_sample->add_option("--constraint", constraint,
                           "none | rho_zero:k | rho_inf:k | rhoP_zero:k | rhoP_inf:k");

    CLI11_PARSE(app, argc, argv);

    try {
        ordered_json config;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw std::runtime_error("cannot read " + config_path);
            f >> config;
        }
        ParamSet p = config.contains("params") ? params_from_json(config.at("params"))
                                               : ref_params();
        if (config.contains("seed") && !app.count("--seed")) seed = config["seed"].get<uint64_t>();
        if (config.contains("convention") && convention == "auto")
            convention = config["convention"].get<std::string>();
        omega_set = om->count() > 0;
        cx omega = omega_set ? cx(omega_re, omega_im) : p.rho[0] / p.rho[1];
        PrecisionPolicy policy = env_policy();

        if (*sub_validate) {
            ValidationReport r = validate(p);
            ordered_json body = {{"params", params_to_json(p)},
                                 {"nr_rho", r.nr_rho},
                                 {"nr_sigma", r.nr_sigma},
                                 {"nr_x", r.nr_x},
                                 {"fr_residual", r.fr_residual},
                                 {"fr", r.fr},
                                 {"ns", r.ns},
                                 {"sc", r.sc},
                                 {"pass", r.all_pass()}};
            if (!r.nr_x) {
                ordered_json off = ordered_json::array();
                for (auto& [a, b] : r.nr_x_offenders) off.push_back({a, b});
                body["nr_x_offenders"] = off;
            }
            if (!r.ns) {
                ordered_json off = ordered_json::array();
                for (auto& o : r.ns_offenders) off.push_back({o[0], o[1], o[2], o[3]});
                body["ns_offenders"] = off;
            }
            if (!r.all_pass())
                body["hint"] = "perturb the offending parameters away from the q-power lattice";
            emit(body, out_path);
            return r.all_pass() ? 0 : 1;
        }

        if (*sub_coeffs) {
            InterpCoeffs ic = interp_coeffs(p, policy);
            ordered_json lam, mu, lamp, mup;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    std::string key = std::to_string(i + 1) + std::to_string(j + 1);
                    lam[key] = jcx(ic.lam[i][j]);
                    mu[key] = jcx(ic.mu[i][j]);
                    lamp[key] = jcx(ic.lamp[i][j]);
                    mup[key] = jcx(ic.mup[i][j]);
                }
            GammaConstants g = gamma_constants(p, policy);
            ordered_json body = {{"params", params_to_json(p)},
                                 {"lambda", lam},
                                 {"mu", mu},
                                 {"lambda_prime", lamp},
                                 {"mu_prime", mup},
                                 {"gamma", jcx(g.gamma)},
                                 {"alpha", jcx(g.alpha)},
                                 {"beta", jcx(g.beta)}};
            for (int i = 1; i <= 2; ++i) {
                QuadricCoeffs c = quadric_coeffs(p, i, policy);
                Discriminant d = discriminant(c);
                body["quadric_" + std::to_string(i)] = {
                    {"A", jcx(c.A)}, {"B", jcx(c.B)}, {"C", jcx(c.C)},
                    {"D", jcx(c.D)}, {"E", jcx(c.E)}, {"F", jcx(c.F)},
                    {"discriminant", jcx(d.det)},
                    {"delta", jcx(delta(p, i, DeltaMethod::bilinear, policy))}};
            }
            body["proportionality_constant"] = jcx(proportionality_constant(p, policy));
            emit(body, out_path);
            return 0;
        }

        if (*sub_sample) {
            Constraint c;
            if (constraint != "none") {
                auto pos = constraint.find(':');
                std::string kind = constraint.substr(0, pos);
                c.position = (pos == std::string::npos) ? 1 : std::stoi(constraint.substr(pos + 1));
                if (kind == "rho_zero") c.kind = Constraint::rho_zero;
                else if (kind == "rho_inf") c.kind = Constraint::rho_inf;
                else if (kind == "rhoP_zero") c.kind = Constraint::rhoP_zero;
                else if (kind == "rhoP_inf") c.kind = Constraint::rhoP_inf;
                else throw std::runtime_error("unknown constraint " + kind);
            }
            std::mt19937_64 rng(seed);
            ordered_json arr = ordered_json::array();
            for (int s = 0; s < sample_count; ++s) {
                MonodromyRep m = sample_point(p, rng, c);
                RhoTuple t = rho_tuple(m);
                ordered_json coeffs = ordered_json::array();
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        coeffs.push_back({{"cell", {i + 1, j + 1}},
                                          {"a", jcx(m.coeff(i, j).first)},
                                          {"b", jcx(m.coeff(i, j).second)}});
                ordered_json rho = ordered_json::array();
                for (int k = 0; k < 4; ++k)
                    rho.push_back({jcx(t.rho.c[k].x), jcx(t.rho.c[k].y)});
                double s2 = m.scale2();
                arr.push_back({{"coefficients", coeffs},
                               {"rho_tuple", rho},
                               {"det_x4_residual", std::abs(m.det_at(3)) / s2}});
            }
            emit({{"params", params_to_json(p)}, {"samples", arr}}, out_path);
            return 0;
        }

        if (*sub_lines) {
            std::mt19937_64 rng(seed);
            Lines16 out = lines16(p, omega, rng);
            ordered_json arr = ordered_json::array();
            for (auto& l : out.lines) {
                ordered_json base = ordered_json::array(), dir = ordered_json::array();
                for (int k = 0; k < 4; ++k) {
                    base.push_back(jcx(l.base[k]));
                    dir.push_back(jcx(l.direction[k]));
                }
                arr.push_back({{"label", l.label},
                               {"base", base},
                               {"direction", dir},
                               {"collinearity", l.collinearity},
                               {"quadric_residuals",
                                {l.quadric_residuals[0], l.quadric_residuals[1]}}});
            }
            ordered_json body = {{"params", params_to_json(p)},
                                 {"omega", jcx(omega)},
                                 {"lines", arr},
                                 {"within_family_min_distance", out.min_within_family_distance},
                                 {"cross_family_coincidences", out.cross_family_coincidences.size()}};
            emit(body, out_path);
            return 0;
        }

        // verify / report
        suites::RunConfig cfg;
        cfg.params = p;
        cfg.seed = seed;
        cfg.convention = convention;
        if (tol > 0.0) cfg.tol_override = tol;
        if (*sub_verify && !suite_names.empty()) cfg.suites = suite_names;
        if (config.contains("suites") && cfg.suites.empty())
            cfg.suites = config["suites"].get<std::vector<std::string>>();
        if (config.contains("samples")) cfg.samples = config["samples"].get<int>();
        if (config.contains("paramsets")) cfg.paramsets = config["paramsets"].get<int>();
        if (*sub_report) cfg.suites.clear();  // all of them
        ordered_json report = suites::run(cfg);
        emit(report, out_path);
        return suites::report_all_pass(report) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
