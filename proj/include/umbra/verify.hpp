#pragma once

/**
 * @file verify.hpp
 * @brief Named identity suites behind the `verify` command.
 */

#include <optional>
#include <string>
#include <vector>

#include "umbra/operators.hpp"

namespace umbra {

struct SuiteCheck {
    std::string label;
    bool passed = true;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::string identity;
    std::vector<SuiteCheck> checks;

    bool passed() const;
};

struct SuiteOptions {
    int n = 8;
    int order = 16;
    int depth = 12;
    ParamMap params;
    /// Operator for the generic binomial suite.
    std::optional<TruncatedSeries> op;
    std::string op_text = "D";
    /// Index of a sequence term to corrupt (negative control).
    std::optional<int> corrupt;
};

const std::vector<std::string>& suite_names();

/// Throws precondition_error for an unknown suite.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace umbra
