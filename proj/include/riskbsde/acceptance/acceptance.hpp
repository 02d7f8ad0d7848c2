#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace riskbsde::accept {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;   // measured values vs tolerances (deterministic text)
    double seconds = 0.0; // wall clock; reported only via the manifest
};

struct AcceptanceOutcome {
    std::vector<CriterionResult> results;

    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return !results.empty();
    }
};

// Runs verification checks 1-13. Instances, tolerances and runtime limits
// are pinned here; the seed feeds every stochastic component.
AcceptanceOutcome run_all(std::uint64_t seed);

// Consolidated report (no timings: payloads must be byte-reproducible).
nlohmann::json to_json(const AcceptanceOutcome& o);
std::string to_text(const AcceptanceOutcome& o);

}  // namespace riskbsde::accept
