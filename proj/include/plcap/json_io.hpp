#pragma once

#include <json.hpp>
#include <string>

#include "plcap/capacity.hpp"
#include "plcap/ma_capacity.hpp"
#include "plcap/polynomial.hpp"
#include "plcap/region.hpp"
#include "plcap/report.hpp"
#include "plcap/volume.hpp"

namespace plcap {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Thrown with a schema pointer message when input JSON cannot be decoded.
struct JsonError : std::runtime_error {
    explicit JsonError(const std::string& what) : std::runtime_error(what) {}
};

Json space_to_json(const AmbientSpace& sp);
AmbientSpace space_from_json(const Json& j);

Json ball_to_json(const Ball& b);
Ball ball_from_json(const Json& j);

Json region_to_json(const Region& r);
Region region_from_json(const Json& j);

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json volume_to_json(const VolumeEstimate& v);
Json capacity_to_json(const CapacityEstimate& e);
Json report_to_json(const InequalityReport& r);

Json cegrell_fn_to_json(const CegrellTestFn& fn);
std::shared_ptr<const CegrellTestFn> cegrell_fn_from_json(const Json& j);

// Parses "1+2i", "-i", "0.5" style complex literals (CLI points).
Complex parse_complex(const std::string& s);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace plcap
