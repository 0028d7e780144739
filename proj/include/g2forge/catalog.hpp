#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "g2forge/hitchin_flow.hpp"
#include "g2forge/json_io.hpp"

namespace g2forge {

/// Expected results recorded with an entry; every populated field is pinned
/// by a test.
struct Expected {
    std::optional<int> nilpotency_step;        // absent for non-nilpotent entries
    std::optional<bool> nilpotent;
    std::optional<bool> unimodular;
    std::optional<std::string> fg_class;       // "T1", "T1+T3", "parallel"
    std::optional<double> tau1_over_m;         // |tau1| / |m|
    std::optional<Rat> einstein_lambda_coeff;  // lambda = coeff * scale^2
    std::string einstein_scale;                // "m" or "b" (with einstein_lambda_coeff)
    std::optional<bool> conformally_parallel;
    std::optional<int> holonomy_dim;
    std::optional<bool> holonomy_in_g2;
    std::optional<bool> half_flat;
    std::optional<bool> symplectic;
};

struct CatalogEntry {
    std::string id;
    std::string provenance;   // section / equation pointer into the source survey
    std::string note;         // data corrections relative to the printed source
    Params params;            // bound parameter values
    LieAlgebra algebra;
    std::optional<FormQ> phi;        // 7-dim entries
    std::optional<FormQ> omega;      // 6-dim SU(3) data
    std::optional<FormQ> psi_plus;
    std::vector<TrackedCoefficient> tracked;   // flow entries
    Expected expected;
    Json raw;

    bool has_g2_data() const { return phi.has_value(); }
    bool has_su3_data() const { return omega && psi_plus; }
};

class Catalog {
public:
    /// Directory resolution: explicit path, else $G2FORGE_CATALOG, else the
    /// build-time default (source tree catalog/).
    static std::filesystem::path default_directory();

    explicit Catalog(std::filesystem::path dir = {});

    std::vector<std::string> ids() const;
    const std::filesystem::path& directory() const { return dir_; }

    /// Parses and Jacobi-verifies one entry.  Parameter overrides replace the
    /// file defaults before coefficients are bound.
    CatalogEntry load(const std::string& id, std::optional<Rat> m_override = {},
                      std::optional<Rat> b_override = {}) const;

private:
    std::filesystem::path dir_;
    std::vector<std::string> ids_;
};

/// Jacobi + expected quick fields (nilpotency, unimodularity).  Returns a
/// list of human-readable failures; empty means valid.
std::vector<std::string> validate_entry(const CatalogEntry& entry);

} // namespace g2forge
