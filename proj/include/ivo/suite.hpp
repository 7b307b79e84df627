#ifndef IVO_SUITE_HPP
#define IVO_SUITE_HPP

#include <functional>
#include <string>
#include <vector>

#include "ivo/check.hpp"
#include "ivo/config.hpp"

namespace ivo {

// A named, reproducible check over the default catalog. `expected` encodes
// what the mathematics says the verdict must be: fixtures built to violate a
// property carry expected = Fail (e.g. the discontinuous ridge), theorem
// gates carry expected = Inconclusive. The suite is healthy when every
// observed verdict matches its expectation; mismatches drive the exit code.
struct CheckDef {
    std::string name;
    std::string module_name;  // laws | manifold | deriv | convexity | solve | certify | vi
    std::string anchor;
    Verdict expected = Verdict::Pass;
    std::function<CheckReport(const RunConfig&)> run;
};

struct CheckOutcome {
    CheckReport report;
    std::string module_name;
    Verdict expected = Verdict::Pass;
    bool ok = false;
    double wall_ms = 0.0;
};

struct SuiteReport {
    RunConfig config;
    std::vector<CheckOutcome> outcomes;
    double wall_ms_total = 0.0;

    long mismatches() const {
        long n = 0;
        for (const auto& o : outcomes) n += o.ok ? 0 : 1;
        return n;
    }
};

const std::vector<CheckDef>& check_registry();
const std::vector<std::string>& suite_module_names();
const CheckDef* find_check(const std::string& name);

// Runs every check whose module matches the filter (empty = all), in
// registry order. Substream keying makes the result independent of order.
SuiteReport run_checks(const RunConfig& cfg, const std::string& module_filter);

}  // namespace ivo

#endif
