#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgg/model.hpp"

namespace rgg {

enum class CheckStatus { Pass, Fail, NotApplicable };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::NotApplicable;
    double residual = 0.0;   // the metric the tolerance was applied to
    double tolerance = 0.0;  // 0 when the check is informational
    std::string detail;
};

/// Verification dossier for one parameter set: matrices, key scalars, and the
/// full check list for the regime. Inapplicable checks stay listed with a
/// reason; nothing is silently skipped.
struct Dossier {
    ModelParams params;
    nlohmann::json matrices;
    nlohmann::json scalars;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

struct CheckSpec {
    std::string name;
    std::string applies_to;  // human-readable applicability note
    std::function<CheckResult(const ModelParams&)> run;
};

const std::vector<CheckSpec>& check_registry();
std::vector<std::string> list_checks();

Dossier build_dossier(const ModelParams& params);

}  // namespace rgg
