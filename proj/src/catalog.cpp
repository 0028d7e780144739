#include "g2forge/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#ifndef G2FORGE_DEFAULT_CATALOG
#define G2FORGE_DEFAULT_CATALOG "catalog"
#endif

namespace g2forge {

namespace fs = std::filesystem;

fs::path Catalog::default_directory() {
    if (const char* env = std::getenv("G2FORGE_CATALOG"); env && *env) return fs::path(env);
    return fs::path(G2FORGE_DEFAULT_CATALOG);
}

Catalog::Catalog(fs::path dir) : dir_(dir.empty() ? default_directory() : std::move(dir)) {
    if (!fs::exists(dir_ / "manifest.json"))
        throw ParseError("catalog: no manifest.json under " + dir_.string());
    std::ifstream in(dir_ / "manifest.json");
    Json manifest = Json::parse(in);
    for (const auto& e : manifest.at("entries")) ids_.push_back(e.at("id").get<std::string>());
    std::sort(ids_.begin(), ids_.end());
}

std::vector<std::string> Catalog::ids() const { return ids_; }

namespace {

TrackedCoefficient parse_tracked(const Json& j, const Params& p) {
    TrackedCoefficient tc;
    tc.name = j.at("name").get<std::string>();
    std::string source = j.at("source").get<std::string>();
    if (source == "rho") {
        tc.source = TrackedCoefficient::Source::Rho;
    } else if (source == "sigma") {
        tc.source = TrackedCoefficient::Source::Sigma;
    } else if (source == "omega") {
        tc.source = TrackedCoefficient::Source::Omega;
    } else if (source == "metric") {
        tc.source = TrackedCoefficient::Source::Metric;
    } else {
        throw SchemaError("tracked: unknown source '" + source + "'");
    }
    if (tc.source == TrackedCoefficient::Source::Metric) {
        tc.row = j.at("row").get<int>();
        tc.col = j.at("col").get<int>();
    } else {
        tc.mask = mask_from(j.at("idx").get<std::vector<int>>());
    }
    if (j.contains("expected")) {
        tc.expected = scalar_expr_from_json(j.at("expected"), p);
        tc.has_expected = true;
    }
    return tc;
}

} // namespace

CatalogEntry Catalog::load(const std::string& id, std::optional<Rat> m_override,
                           std::optional<Rat> b_override) const {
    fs::path file = dir_ / (id + ".json");
    if (!fs::exists(file)) throw ParseError("catalog: no entry '" + id + "' under " + dir_.string());
    std::ifstream in(file);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError("catalog: cannot parse " + file.string() + ": " + e.what());
    }

    CatalogEntry entry;
    entry.raw = j;
    entry.id = j.at("id").get<std::string>();
    entry.provenance = j.value("provenance", "");
    entry.note = j.value("note", "");

    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (p.contains("m")) entry.params.m = rat_parse(p.at("m").get<std::string>());
        if (p.contains("b")) entry.params.b = rat_parse(p.at("b").get<std::string>());
    }
    if (m_override) entry.params.m = *m_override;
    if (b_override) entry.params.b = *b_override;

    entry.algebra = algebra_from_json(j.at("algebra"), entry.params);

    auto jr = jacobi_check(entry.algebra);
    if (!jr.ok)
        throw JacobiFailed("catalog: entry '" + id + "' violates d^2 = 0 at e^" +
                           std::to_string(jr.witness));

    if (j.contains("structures")) {
        const auto& s = j.at("structures");
        if (s.contains("phi")) entry.phi = form_from_json(s.at("phi"), entry.params);
        if (s.contains("omega")) entry.omega = form_from_json(s.at("omega"), entry.params);
        if (s.contains("psi_plus")) entry.psi_plus = form_from_json(s.at("psi_plus"), entry.params);
    }
    if (j.contains("tracked"))
        for (const auto& t : j.at("tracked")) entry.tracked.push_back(parse_tracked(t, entry.params));

    if (j.contains("expected")) {
        const auto& e = j.at("expected");
        auto& x = entry.expected;
        if (e.contains("nilpotency_step")) x.nilpotency_step = e.at("nilpotency_step").get<int>();
        if (e.contains("nilpotent")) x.nilpotent = e.at("nilpotent").get<bool>();
        if (e.contains("unimodular")) x.unimodular = e.at("unimodular").get<bool>();
        if (e.contains("fg_class")) x.fg_class = e.at("fg_class").get<std::string>();
        if (e.contains("tau1_over_m")) x.tau1_over_m = e.at("tau1_over_m").get<double>();
        if (e.contains("einstein_lambda_coeff")) {
            x.einstein_lambda_coeff = rat_parse(e.at("einstein_lambda_coeff").get<std::string>());
            x.einstein_scale = e.value("einstein_scale", "m");
        }
        if (e.contains("conformally_parallel")) x.conformally_parallel = e.at("conformally_parallel").get<bool>();
        if (e.contains("holonomy_dim")) x.holonomy_dim = e.at("holonomy_dim").get<int>();
        if (e.contains("holonomy_in_g2")) x.holonomy_in_g2 = e.at("holonomy_in_g2").get<bool>();
        if (e.contains("half_flat")) x.half_flat = e.at("half_flat").get<bool>();
        if (e.contains("symplectic")) x.symplectic = e.at("symplectic").get<bool>();
    }
    return entry;
}

std::vector<std::string> validate_entry(const CatalogEntry& entry) {
    std::vector<std::string> failures;
    auto series = lower_central_series(entry.algebra);
    const auto& x = entry.expected;
    if (x.nilpotent && *x.nilpotent != series.nilpotent())
        failures.push_back("nilpotency mismatch");
    if (x.nilpotency_step) {
        if (!series.step || *series.step != *x.nilpotency_step)
            failures.push_back("nilpotency step mismatch (expected " +
                               std::to_string(*x.nilpotency_step) + ")");
    }
    if (x.unimodular && *x.unimodular != is_unimodular(entry.algebra))
        failures.push_back("unimodularity mismatch");
    if (entry.provenance.empty()) failures.push_back("missing provenance");
    return failures;
}

} // namespace g2forge
