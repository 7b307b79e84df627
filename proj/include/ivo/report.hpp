#ifndef IVO_REPORT_HPP
#define IVO_REPORT_HPP

#include <string>

#include "json.hpp"

#include "ivo/interval.hpp"
#include "ivo/manifold.hpp"
#include "ivo/riop.hpp"
#include "ivo/suite.hpp"

namespace ivo {

// Report schema "ivo-report/1". Key order is fixed and all content except
// the wall_ms timing fields is a pure function of the config.
nlohmann::ordered_json report_to_json(const SuiteReport& rep);

nlohmann::ordered_json interval_to_json(const Interval& a);  // [lo, hi]
nlohmann::ordered_json point_to_json(const ManifoldPoint& x);
nlohmann::ordered_json config_to_json(const RunConfig& cfg);
nlohmann::ordered_json solve_result_to_json(const SolveResult& res);
nlohmann::ordered_json certificate_to_json(const Certificate& cert);

}  // namespace ivo

#endif
