#include "g2forge/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "g2forge/catalog.hpp"
#include "g2forge/curvature.hpp"
#include "g2forge/g2_structure.hpp"

namespace g2forge {

namespace {

struct Options {
    std::string catalog_dir;
    std::string entry;
    std::string algebra_file, omega_file, psi_file;
    std::string format = "text";
    std::string out_path;
    std::string m_str, b_str;
    double t_end = 1.0;
    double step = 1e-3;
    std::string samples = "0,0.25,0.5,1";
    int jobs = 1;
    bool full = false;
};

std::optional<Rat> opt_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return rat_parse(s);
}

std::vector<double> parse_samples(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

Json ricci_report_json(const CurvatureReport& rep) {
    Json j;
    Json rows = Json::array();
    for (int i = 0; i < rep.ricci.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < rep.ricci.cols(); ++k) row.push_back(rep.ricci(i, k));
        rows.push_back(std::move(row));
    }
    j["ricci"] = std::move(rows);
    j["scalar_curvature"] = rep.scalar_curvature;
    if (rep.einstein_lambda) j["einstein_lambda"] = *rep.einstein_lambda;
    j["einstein_residual"] = rep.einstein_residual;
    if (rep.holonomy_dim) j["holonomy_dim"] = *rep.holonomy_dim;
    if (rep.in_g2) j["in_g2"] = *rep.in_g2;
    return j;
}

void emit(const Options& opt, std::ostream& out, const Json& j, const std::string& text) {
    std::ostringstream buffer;
    if (opt.format == "json") {
        buffer << j.dump(2) << "\n";
    } else {
        buffer << text;
    }
    if (!opt.out_path.empty()) {
        std::ofstream f(opt.out_path);
        if (!f) throw ParseError("cannot open output file " + opt.out_path);
        f << buffer.str();
    } else {
        out << buffer.str();
    }
}

G2Structure entry_g2(const CatalogEntry& entry) {
    if (!entry.phi) throw SchemaError("entry '" + entry.id + "' carries no G2 3-form");
    return make_g2(entry.algebra, entry.phi->cast<double>());
}

SU3Structure entry_su3(const CatalogEntry& entry) {
    if (entry.has_su3_data()) {
        LieAlgebra six = entry.algebra.dim() == 6 ? entry.algebra : entry.algebra.restricted(6);
        return make_su3(six, entry.omega->cast<double>(), entry.psi_plus->cast<double>());
    }
    if (entry.phi) return su3_from_g2(entry_g2(entry));
    throw SchemaError("entry '" + entry.id + "' carries no SU(3) data");
}

std::vector<FormS> conformal_coframe(const CatalogEntry& entry) {
    // e~^i = e^{-m t} e^i; the induced metric is e^{-2mt} sum (e^i)^2.
    QSqrt6 m{entry.params.m};
    std::vector<FormS> coframe;
    for (int i = 1; i <= 7; ++i) {
        FormS f(7, 1);
        f.add(1u << (i - 1), ScalarExpr::exponential(1, QSqrt6(Rat(-1)) * m));
        coframe.push_back(std::move(f));
    }
    return coframe;
}

int cmd_catalog(const Options& opt, const std::string& action, std::ostream& out, std::ostream& err) {
    Catalog cat(opt.catalog_dir.empty() ? std::filesystem::path{} : std::filesystem::path(opt.catalog_dir));
    if (action == "list") {
        Json j = Json::array();
        std::ostringstream text;
        for (const auto& id : cat.ids()) {
            auto entry = cat.load(id);
            j.push_back(Json{{"id", id}, {"provenance", entry.provenance}});
            text << std::left << std::setw(16) << id << " " << entry.provenance << "\n";
        }
        emit(opt, out, j, text.str());
        return 0;
    }
    if (action == "validate") {
        std::vector<std::string> ids = opt.entry.empty() ? cat.ids() : std::vector<std::string>{opt.entry};
        auto validate_one = [&](const std::string& id) -> std::pair<std::string, std::vector<std::string>> {
            try {
                auto entry = cat.load(id, opt_rat(opt.m_str), opt_rat(opt.b_str));
                return {id, validate_entry(entry)};
            } catch (const Error& e) {
                return {id, {e.what()}};
            }
        };
        std::vector<std::pair<std::string, std::vector<std::string>>> results;
        if (opt.jobs > 1) {
            std::vector<std::future<std::pair<std::string, std::vector<std::string>>>> futures;
            futures.reserve(ids.size());
            for (const auto& id : ids)
                futures.push_back(std::async(std::launch::async, validate_one, id));
            for (auto& f : futures) results.push_back(f.get());
        } else {
            for (const auto& id : ids) results.push_back(validate_one(id));
        }
        Json j = Json::array();
        std::ostringstream text;
        bool all_ok = true;
        for (const auto& [id, failures] : results) {
            all_ok = all_ok && failures.empty();
            j.push_back(Json{{"id", id}, {"ok", failures.empty()}, {"failures", failures}});
            text << std::left << std::setw(16) << id << (failures.empty() ? " ok" : " FAIL") << "\n";
            for (const auto& f : failures) text << "    " << f << "\n";
        }
        emit(opt, out, j, text.str());
        return all_ok ? 0 : 1;
    }
    err << "unknown catalog action '" << action << "' (expected list or validate)\n";
    return 2;
}

int cmd_check(const Options& opt, std::ostream& out, std::ostream&) {
    Catalog cat(opt.catalog_dir.empty() ? std::filesystem::path{} : std::filesystem::path(opt.catalog_dir));
    auto entry = cat.load(opt.entry, opt_rat(opt.m_str), opt_rat(opt.b_str));
    bool ok = true;
    Json j;
    std::ostringstream text;
    text << std::boolalpha;
    j["id"] = entry.id;
    j["provenance"] = entry.provenance;
    text << entry.id << "  [" << entry.provenance << "]\n";

    auto jr = jacobi_check(entry.algebra);
    j["jacobi"] = jr.ok;
    text << "  jacobi (d^2 = 0, exact): " << (jr.ok ? "pass" : "FAIL") << "\n";
    ok = ok && jr.ok;

    auto series = lower_central_series(entry.algebra);
    j["lower_central_series"] = series.dims;
    j["nilpotent"] = series.nilpotent();
    if (series.step) j["nilpotency_step"] = *series.step;
    text << "  lower central series dims:";
    for (int d : series.dims) text << " " << d;
    text << (series.nilpotent() ? "  (nilpotent, step " + std::to_string(*series.step) + ")"
                                : "  (not nilpotent)")
         << "\n";
    if (entry.expected.nilpotency_step &&
        (!series.step || *series.step != *entry.expected.nilpotency_step)) {
        ok = false;
        text << "  EXPECTED step " << *entry.expected.nilpotency_step << "\n";
    }
    bool uni = is_unimodular(entry.algebra);
    j["unimodular"] = uni;
    text << "  unimodular: " << (uni ? "yes" : "no") << "\n";

    if (entry.algebra.dim() == 7 && entry.algebra.d1(7).is_zero() && !series.nilpotent()) {
        // rank-one extension data: D = ad_{e7} on the nilradical
        Eigen::MatrixXd D = entry.algebra.ad(7).topLeftCorner(6, 6);
        auto type = eigenvalue_type(D);
        j["eigenvalue_type"] = Json{{"eigenvalues", type.eigenvalues},
                                    {"multiplicities", type.multiplicities}};
        j["m"] = to_double(entry.params.m);
        text << "  D = ad(e7), eigenvalue type " << type.str() << " at m = "
             << to_double(entry.params.m) << "\n";
    }

    if (entry.has_su3_data() || entry.phi) {
        auto s = entry_su3(entry);
        auto checks = su3_checks(s);
        auto classes = class_predicates(s);
        j["su3"] = Json{{"compatible", checks.compatible},
                        {"normalized", checks.normalized},
                        {"positive", checks.positive},
                        {"stable", checks.stable},
                        {"volume_ratio", checks.volume_ratio},
                        {"compat_residual", checks.compat_residual}};
        j["su3_class"] = Json{{"torsion_free", classes.torsion_free},
                              {"half_flat", classes.half_flat},
                              {"symplectic", classes.symplectic},
                              {"complex", classes.complex_structure}};
        j["tolerances"] = Json{{"su3_checks", 1e-10}};
        text << "  su3 checks: compatible=" << checks.compatible << " normalized=" << checks.normalized
             << " positive=" << checks.positive << " stable=" << checks.stable << "\n";
        text << "  su3 class: half_flat=" << classes.half_flat
             << " symplectic(d omega=0)=" << classes.symplectic
             << " torsion_free=" << classes.torsion_free << " complex=" << classes.complex_structure
             << "\n";
        ok = ok && checks.all();
        if (entry.expected.half_flat && classes.half_flat != *entry.expected.half_flat) ok = false;
        if (entry.expected.symplectic && classes.symplectic != *entry.expected.symplectic) ok = false;
    }
    j["ok"] = ok;
    emit(opt, out, j, text.str());
    return ok ? 0 : 1;
}

int cmd_classify(const Options& opt, std::ostream& out, std::ostream&) {
    Catalog cat(opt.catalog_dir.empty() ? std::filesystem::path{} : std::filesystem::path(opt.catalog_dir));
    auto entry = cat.load(opt.entry, opt_rat(opt.m_str), opt_rat(opt.b_str));
    auto gs = entry_g2(entry);
    auto tc = torsion(gs);
    Form<double> dphi = ce_d(gs.algebra, gs.phi);
    Form<double> dstar = ce_d(gs.algebra, gs.star_phi);
    auto cls = fg_class(tc, dphi.norm() + dstar.norm());

    Json j;
    j["id"] = entry.id;
    j["provenance"] = entry.provenance;
    j["class"] = cls.label();
    j["tau0"] = tc.tau0;
    j["tau1"] = form_to_json(tc.tau1);
    j["residuals"] = Json::array({tc.residual_dphi, tc.residual_dstar});
    j["tolerances"] = Json{{"eps_class", 1e-8}, {"reconstruction", 1e-9}};

    std::ostringstream text;
    text << entry.id << "  [" << entry.provenance << "]\n";
    text << "  class: " << cls.label() << "\n";
    text << "  |tau0| = " << std::abs(tc.tau0) << ", |tau1| = " << tc.tau1.norm()
         << ", |tau2| = " << tc.tau2.norm() << ", |tau3| = " << tc.tau3.norm() << "\n";

    bool ok = tc.residual_dphi <= 1e-9 && tc.residual_dstar <= 1e-9;
    if (entry.phi) {
        auto rep = conformal_parallel_check(entry.algebra, *entry.phi, entry.params.m);
        j["conformally_parallel"] = rep.pass;
        text << "  conformally_parallel: " << (rep.pass ? "pass" : "fail") << "\n";
        if (entry.expected.conformally_parallel && rep.pass != *entry.expected.conformally_parallel)
            ok = false;
    }
    if (entry.expected.fg_class && cls.label() != *entry.expected.fg_class) {
        ok = false;
        text << "  EXPECTED class " << *entry.expected.fg_class << "\n";
    }
    j["ok"] = ok;
    emit(opt, out, j, text.str());
    return ok ? 0 : 1;
}

int cmd_torsion(const Options& opt, std::ostream& out, std::ostream&) {
    Catalog cat(opt.catalog_dir.empty() ? std::filesystem::path{} : std::filesystem::path(opt.catalog_dir));
    auto entry = cat.load(opt.entry, opt_rat(opt.m_str), opt_rat(opt.b_str));
    auto gs = entry_g2(entry);
    auto tc = torsion(gs);
    Form<double> dphi = ce_d(gs.algebra, gs.phi);
    Form<double> dstar = ce_d(gs.algebra, gs.star_phi);
    auto cls = fg_class(tc, dphi.norm() + dstar.norm());

    Json j;
    j["id"] = entry.id;
    j["provenance"] = entry.provenance;
    j["class"] = cls.label();
    j["tau0"] = tc.tau0;
    j["tau1"] = form_to_json(tc.tau1);
    j["tau2"] = form_to_json(tc.tau2);
    j["tau3"] = form_to_json(tc.tau3);
    j["dphi"] = form_to_json(dphi);
    j["dstar_phi"] = form_to_json(dstar);
    j["residuals"] = Json::array({tc.residual_dphi, tc.residual_dstar});
    j["rank_system1"] = tc.rank_system1;
    j["rank_system2"] = tc.rank_system2;
    j["tau1_mismatch"] = tc.tau1_mismatch;
    j["tolerances"] = Json{{"tau1_consistency", 1e-9}};

    std::ostringstream text;
    text << entry.id << "  [" << entry.provenance << "]\n";
    text << "  d phi = " << dphi.str() << "\n";
    text << "  d *phi = " << dstar.str() << "\n";
    text << "  tau0 = " << tc.tau0 << "\n  tau1 = " << tc.tau1.str() << "\n  tau2 = " << tc.tau2.str()
         << "\n  tau3 = " << tc.tau3.str() << "\n";
    text << "  class " << cls.label() << ", residuals " << tc.residual_dphi << " / "
         << tc.residual_dstar << ", ranks " << tc.rank_system1 << "/" << tc.rank_system2 << "\n";
    emit(opt, out, j, text.str());
    return (tc.residual_dphi <= 1e-9 && tc.residual_dstar <= 1e-9) ? 0 : 1;
}

int cmd_ricci(const Options& opt, std::ostream& out, std::ostream&) {
    Catalog cat(opt.catalog_dir.empty() ? std::filesystem::path{} : std::filesystem::path(opt.catalog_dir));
    auto entry = cat.load(opt.entry, opt_rat(opt.m_str), opt_rat(opt.b_str));
    auto rep = ricci(entry.algebra, FrameMetric<double>::identity(entry.algebra.dim()));
    Json j = ricci_report_json(rep);
    j["id"] = entry.id;
    j["provenance"] = entry.provenance;
    j["tolerances"] = Json{{"eps_einstein", kEpsEinstein}};

    std::ostringstream text;
    text << entry.id << "  [" << entry.provenance << "]\n";
    text << "  scalar curvature: " << rep.scalar_curvature << "\n";
    if (rep.einstein_lambda) {
        text << "  Einstein: Ric = " << *rep.einstein_lambda << " g (residual "
             << rep.einstein_residual << ")\n";
    } else {
        text << "  not Einstein (residual " << rep.einstein_residual << ")\n";
    }

    bool ok = true;
    if (entry.expected.einstein_lambda_coeff) {
        double scale = to_double(entry.expected.einstein_scale == "b" ? entry.params.b : entry.params.m);
        double want = to_double(*entry.expected.einstein_lambda_coeff) * scale * scale;
        ok = rep.einstein_lambda && std::abs(*rep.einstein_lambda - want) <=
                                        1e-9 * std::max(1.0, std::abs(want));
        text << "  expected lambda = " << want << (ok ? " (match)" : " (MISMATCH)") << "\n";
    }
    j["ok"] = ok;
    emit(opt, out, j, text.str());
    return ok ? 0 : 1;
}

int cmd_holonomy(const Options& opt, std::ostream& out, std::ostream&) {
    Catalog cat(opt.catalog_dir.empty() ? std::filesystem::path{} : std::filesystem::path(opt.catalog_dir));
    auto entry = cat.load(opt.entry, opt_rat(opt.m_str), opt_rat(opt.b_str));
    if (!entry.phi) throw SchemaError("entry '" + entry.id + "' carries no G2 3-form");
    auto samples = parse_samples(opt.samples);
    auto cc = coframe_curvature(entry.algebra, conformal_coframe(entry), samples);

    std::vector<Eigen::MatrixXd> ops;
    for (const auto& per_sample : cc.operators)
        for (const auto& op : per_sample) ops.push_back(op);
    auto hol = holonomy_span(ops, entry.phi->cast<double>());

    Json j;
    j["id"] = entry.id;
    j["provenance"] = entry.provenance;
    j["ricci_max_abs"] = cc.ricci_max_abs();
    j["ricci_exactly_zero"] = cc.ricci_zero();
    j["holonomy_dim"] = hol.dim;
    j["in_g2"] = hol.in_g2;
    j["samples"] = samples;
    j["tolerances"] = Json{{"span_rank", 1e-8}, {"annihilation", 1e-8}};

    std::ostringstream text;
    text << entry.id << "  [" << entry.provenance << "]\n";
    text << "  conformal coframe e^{-mt} e^i, samples";
    for (double t : samples) text << " " << t;
    text << "\n  |Ric| max over samples: " << cc.ricci_max_abs()
         << (cc.ricci_zero() ? " (exactly zero)" : "") << "\n";
    text << "  holonomy span: dim " << hol.dim << ", in_g2 = " << (hol.in_g2 ? "true" : "false")
         << "\n";

    bool ok = true;
    if (entry.expected.holonomy_dim && hol.dim != *entry.expected.holonomy_dim) ok = false;
    if (entry.expected.holonomy_in_g2 && hol.in_g2 != *entry.expected.holonomy_in_g2) ok = false;
    j["ok"] = ok;
    emit(opt, out, j, text.str());
    return ok ? 0 : 1;
}

int cmd_conformal(const Options& opt, std::ostream& out, std::ostream&) {
    Catalog cat(opt.catalog_dir.empty() ? std::filesystem::path{} : std::filesystem::path(opt.catalog_dir));
    auto entry = cat.load(opt.entry, opt_rat(opt.m_str), opt_rat(opt.b_str));
    if (!entry.phi) throw SchemaError("entry '" + entry.id + "' carries no G2 3-form");
    auto rep = conformal_parallel_check(entry.algebra, *entry.phi, entry.params.m);

    Json j;
    j["id"] = entry.id;
    j["provenance"] = entry.provenance;
    j["pass"] = rep.pass;
    j["dphi_zero"] = rep.dphi_zero;
    j["dstar_zero"] = rep.dstar_zero;
    j["residual_terms"] = Json::array({rep.residual_terms_dphi, rep.residual_terms_dstar});

    std::ostringstream text;
    text << entry.id << "  [" << entry.provenance << "]\n";
    text << "  d(e^{3f} phi) = 0: " << (rep.dphi_zero ? "exact" : "FAIL") << "\n";
    text << "  d(e^{4f} *phi) = 0: " << (rep.dstar_zero ? "exact" : "FAIL") << "\n";
    if (!rep.residual_dphi.empty()) text << "  residual: " << rep.residual_dphi << "\n";

    bool ok = rep.pass;
    if (entry.expected.conformally_parallel) ok = (rep.pass == *entry.expected.conformally_parallel);
    j["ok"] = ok;
    emit(opt, out, j, text.str());
    return ok ? 0 : 1;
}

int cmd_flow(const Options& opt, std::ostream& out, std::ostream&) {
    Catalog cat(opt.catalog_dir.empty() ? std::filesystem::path{} : std::filesystem::path(opt.catalog_dir));
    CatalogEntry entry;
    LieAlgebra algebra;
    Form<double> omega0, psi0;
    std::vector<TrackedCoefficient> tracked;
    std::string label, provenance;
    Params params;

    if (!opt.entry.empty()) {
        entry = cat.load(opt.entry, opt_rat(opt.m_str), opt_rat(opt.b_str));
        if (!entry.has_su3_data()) throw SchemaError("entry '" + entry.id + "' has no flow data");
        algebra = entry.algebra.dim() == 6 ? entry.algebra : entry.algebra.restricted(6);
        omega0 = entry.omega->cast<double>();
        psi0 = entry.psi_plus->cast<double>();
        tracked = entry.tracked;
        label = entry.id;
        provenance = entry.provenance;
        params = entry.params;
    } else {
        if (opt.algebra_file.empty() || opt.omega_file.empty() || opt.psi_file.empty())
            throw SchemaError("flow: need --entry or all of --algebra/--omega/--psi");
        auto read = [](const std::string& path) {
            std::ifstream in(path);
            if (!in) throw ParseError("cannot open " + path);
            return Json::parse(in);
        };
        Json alg_json = read(opt.algebra_file);
        if (alg_json.contains("params")) {
            const auto& jp = alg_json.at("params");
            if (jp.contains("m")) params.m = rat_from_double(jp.at("m").get<double>());
            if (jp.contains("b")) params.b = rat_from_double(jp.at("b").get<double>());
        }
        if (!opt.m_str.empty()) params.m = rat_parse(opt.m_str);
        if (!opt.b_str.empty()) params.b = rat_parse(opt.b_str);
        algebra = algebra_from_json(alg_json, params);
        omega0 = form_from_json(read(opt.omega_file), params).cast<double>();
        psi0 = form_from_json(read(opt.psi_file), params).cast<double>();
        label = opt.algebra_file;
    }

    FlowState initial;
    initial.t = 0;
    initial.rho = psi0;
    initial.sigma = wedge(omega0, omega0).scaled(0.5);
    initial.omega_guess = omega0;

    auto sol = integrate(initial, algebra, opt.t_end, opt.step, to_double(params.m));
    auto cmp = compare_closed_form(sol, algebra, tracked);

    // trajectory CSV: t, tracked coefficients, monitors
    std::ostringstream csv;
    csv << "t";
    for (const auto& tc : tracked) csv << "," << tc.name;
    csv << ",d_rho,d_sigma,volume_ratio,lambda\n";
    csv << std::setprecision(15);
    const IndexMask top6 = (1u << 6) - 1;
    for (std::size_t i = 0; i < sol.states.size(); ++i) {
        const auto& s = sol.states[i];
        csv << s.t;
        for (const auto& tc : tracked) csv << "," << tracked_value(tc, s, sol.omegas[i], algebra);
        auto hit = hitchin_j(s.rho, Form<double>::monomial(6, {1, 2, 3, 4, 5, 6}));
        double num = wedge(s.rho, apply_linear(hit.J, s.rho)).coeff(top6);
        double den = wedge(wedge(sol.omegas[i], sol.omegas[i]), sol.omegas[i]).coeff(top6);
        csv << "," << ce_d(algebra, s.rho).norm() << "," << ce_d(algebra, s.sigma).norm() << ","
            << (den != 0.0 ? num / den : 0.0) << "," << hit.lambda << "\n";
    }

    Json j;
    j["id"] = label;
    j["provenance"] = provenance;
    j["stop"] = to_string(sol.stop);
    j["t_final"] = sol.back().t;
    j["steps"] = sol.states.size() - 1;
    j["monitors"] = Json{{"max_drho", sol.monitors.max_drho},
                         {"max_dsigma", sol.monitors.max_dsigma},
                         {"max_ratio_drift", sol.monitors.max_ratio_drift},
                         {"worst_lambda", sol.monitors.worst_lambda}};
    Json dev = Json::object();
    for (const auto& [name, d] : cmp.max_deviation) dev[name] = d;
    j["max_deviation"] = std::move(dev);
    j["tolerances"] = Json{{"closedness", 1e-9}, {"ratio_drift", 1e-6}, {"closed_form", 1e-6}};

    std::ostringstream text;
    text << label << (provenance.empty() ? "" : "  [" + provenance + "]") << "\n";
    text << "  integrated to t = " << sol.back().t << " in " << sol.states.size() - 1
         << " steps: " << to_string(sol.stop) << "\n";
    text << "  monitors: |d rho| <= " << sol.monitors.max_drho << ", |d sigma| <= "
         << sol.monitors.max_dsigma << ", ratio drift <= " << sol.monitors.max_ratio_drift << "\n";
    for (const auto& [name, d] : cmp.max_deviation)
        text << "  deviation[" << name << "] = " << d << "\n";

    bool ok = sol.stop == FlowStop::Completed && sol.monitors.max_drho <= 1e-9 &&
              sol.monitors.max_dsigma <= 1e-9 && sol.monitors.max_ratio_drift <= 1e-6;
    for (const auto& [name, d] : cmp.max_deviation) ok = ok && d <= 1e-6;
    j["ok"] = ok;

    if (!opt.out_path.empty() && opt.format == "csv") {
        std::ofstream f(opt.out_path);
        if (!f) throw ParseError("cannot open output file " + opt.out_path);
        f << csv.str();
        out << text.str();
    } else if (opt.format == "csv") {
        out << csv.str();
    } else {
        emit(opt, out, j, text.str());
    }
    return ok ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"invariant SU(3)/G2 structure computations on low-dimensional Lie algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--catalog", opt.catalog_dir, "catalog directory (default: $G2FORGE_CATALOG)");

    auto add_common = [&](CLI::App* cmd, bool needs_entry = true) {
        if (needs_entry) cmd->add_option("--entry", opt.entry, "catalog entry id");
        cmd->add_option("--format", opt.format, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--out", opt.out_path, "write the report to a file");
        cmd->add_option("--m", opt.m_str, "parameter m (rational, e.g. -1 or -3/2)");
        cmd->add_option("--b", opt.b_str, "parameter b (rational)");
    };

    auto* c_catalog = app.add_subcommand("catalog", "list or validate the bundled registry");
    std::string catalog_action = "list";
    c_catalog->add_option("action", catalog_action, "list|validate");
    c_catalog->add_option("--jobs", opt.jobs, "parallel validation jobs");
    add_common(c_catalog);

    auto* c_check = app.add_subcommand("check", "Jacobi, nilpotency and SU(3) checks for an entry");
    add_common(c_check);
    auto* c_classify = app.add_subcommand("classify", "Fernandez-Gray class and conformal parallelism");
    add_common(c_classify);
    auto* c_torsion = app.add_subcommand("torsion", "detailed intrinsic-torsion report");
    add_common(c_torsion);
    auto* c_ricci = app.add_subcommand("ricci", "left-invariant Ricci tensor and Einstein test");
    add_common(c_ricci);
    auto* c_holonomy = app.add_subcommand("holonomy", "curvature span of the conformal metric");
    add_common(c_holonomy);
    c_holonomy->add_option("--samples", opt.samples, "comma-separated t samples");
    auto* c_conformal = app.add_subcommand("conformal", "exact conformally-parallel verification");
    add_common(c_conformal);
    auto* c_flow = app.add_subcommand("flow", "integrate the Hitchin evolution equations");
    add_common(c_flow);
    c_flow->add_option("--algebra", opt.algebra_file, "algebra JSON file (alternative to --entry)");
    c_flow->add_option("--omega", opt.omega_file, "omega JSON file");
    c_flow->add_option("--psi", opt.psi_file, "psi+ JSON file");
    c_flow->add_option("--t-end", opt.t_end, "integration end time");
    c_flow->add_option("--step", opt.step, "RK4 step size");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (c_catalog->parsed()) return cmd_catalog(opt, catalog_action, out, err);
        if (c_check->parsed()) return cmd_check(opt, out, err);
        if (c_classify->parsed()) return cmd_classify(opt, out, err);
        if (c_torsion->parsed()) return cmd_torsion(opt, out, err);
        if (c_ricci->parsed()) return cmd_ricci(opt, out, err);
        if (c_holonomy->parsed()) return cmd_holonomy(opt, out, err);
        if (c_conformal->parsed()) return cmd_conformal(opt, out, err);
        if (c_flow->parsed()) return cmd_flow(opt, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand given\n";
    return 2;
}

} // namespace g2forge
