#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "riskbsde/bsde/risk.hpp"
#include "riskbsde/eq/frontier.hpp"
#include "riskbsde/gen/risk_cost.hpp"
#include "riskbsde/hjb/solver.hpp"
#include "riskbsde/sde/model.hpp"
#include "riskbsde/viability/checks.hpp"

namespace riskbsde::io {

using nlohmann::json;

// Parsed experiment configuration. Numeric fields are accepted only as
// JSON numbers; the seed is mandatory (no wall-clock defaults).
struct ExperimentConfig {
    int schema_version = 1;
    std::uint64_t seed = 0;
    sde::TimeGrid horizon;
    sde::DiffusionModel model;
    gen::GeneratorFunctional generator;
    gen::RiskCostSpec costs;
    std::vector<Eigen::VectorXd> profile_constants;  // per agent
    std::optional<viability::ConvexSetK> convex_set;
    double eval_t = 0.0;
    Eigen::VectorXd eval_x;

    int num_paths = 10000;
    int csv_max_paths = 100;  // path CSV row cap (moments cover all paths)

    bsde::LsmcBasis lsmc_basis;
    double lsmc_ridge = 1e-8;
    int lsmc_steps = 50;
    int tree_depth = 12;

    hjb::HjbGridSpec hjb;
    bool has_hjb = false;
    double crosscheck_allowance = 10.0;

    eq::EquilibriumConfig equilibrium;

    std::optional<gen::TerminalField> frontier_aggregate;
    int frontier_resolution = 10;

    viability::BsvpSamplerConfig bsvp;
    bool has_bsvp = false;

    bsde::AxiomBatteryConfig axioms;

    std::string out_dir = "out";
};

ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::string& path);

// Canonical re-serialization of the parsed configuration (stable key
// order, defaults materialized). parse(serialize(parse(j))) is a fixed
// point.
json serialize_config(const ExperimentConfig& cfg);

sde::DecisionRule config_profile(const ExperimentConfig& cfg);

}  // namespace riskbsde::io
