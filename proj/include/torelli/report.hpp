#ifndef TORELLI_REPORT_HPP
#define TORELLI_REPORT_HPP

#include <string>

#include <json.hpp>

#include "torelli/hypersurface.hpp"
#include "torelli/invariants.hpp"
#include "torelli/minimal_model.hpp"

namespace torelli {

// Canonical JSON and text renderings shared by the CLI and the tests.

nlohmann::json rational_array(const RationalVector& v);

/// {status, case, reasons: [{claim, cite}], numbers: {k, l_min, kpi4F_min, j_vector, ...}, ...}
nlohmann::json verdict_json(const Verdict& v);
std::string verdict_text(const Verdict& v);

nlohmann::json model_json(const std::string& name, const MinimalModelResult& m);
std::string model_text(const std::string& name, const MinimalModelResult& m);

/// Threefolds: {"b3", "euler", "p1"}; other dimensions: {"chern", "euler", "p1"}.
nlohmann::json hypersurface_json(const HypersurfaceData& h);
std::string hypersurface_text(const HypersurfaceData& h);

/// "(4, -4, 0, 0) in basis PD(e_i)"
std::string h3_text(const RationalVector& j);
nlohmann::json j_json(std::size_t g, const RationalVector& j);

}  // namespace torelli

#endif
