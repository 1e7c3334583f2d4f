#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "wn/dgp.hpp"
#include "wn/mc.hpp"
#include "wn/whittle.hpp"

namespace wn {

// One value per line, or a single-column CSV with an optional header row.
TimeSeries read_series(std::istream& in);
TimeSeries read_series_file(const std::string& path);

// One value per line with 17 significant digits, so a write/read round trip
// is lossless.
void write_series(std::ostream& out, const TimeSeries& x);

nlohmann::json dgp_to_json(const DgpSpec& spec);
DgpSpec dgp_from_json(const nlohmann::json& j);

ArmaParams arma_params_from_json(const nlohmann::json& j);
nlohmann::json arma_params_to_json(const ArmaParams& params);
FarimaParams farima_params_from_json(const nlohmann::json& j);
nlohmann::json farima_params_to_json(const FarimaParams& theta);

nlohmann::json outcome_to_json(const TestOutcome& out);
nlohmann::json coupling_to_json(const CouplingReport& rep);
nlohmann::json css_fit_to_json(const CssFit& fit);
nlohmann::json whittle_fit_to_json(const WhittleFit& fit);

McConfig mc_config_from_json(const nlohmann::json& j);
std::string mc_tsv_header();
std::string mc_tsv_row(const McConfig& cfg, int resolved_m, const McReport& report);

std::string test_mode_name(TestMode mode);
TestMode test_mode_from_name(const std::string& name);

} // namespace wn
