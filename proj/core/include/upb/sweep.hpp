#pragma once

#include <limits>
#include <map>
#include <string>

#include "upb/fluct.hpp"
#include "upb/weakdrive.hpp"

namespace upb {

enum class Route { Master, Semiclassical, WeakDrive };

std::string to_string(Route r);
Route route_from_string(const std::string& s);
DriveDirection direction_from_string(const std::string& s);

enum class SweepVariable { DeltaOverKappa, OmegaSpin, GOverKappa, JOverKappa, Temperature };

SweepVariable sweep_variable_from_string(const std::string& s);
std::string to_string(SweepVariable v);

struct SweepSpec {
    SweepVariable variable = SweepVariable::DeltaOverKappa;
    double start = -1.0, stop = 0.6, step = 0.01;
    PhysicalParams physical;
    DimensionlessOverrides overrides;
    std::vector<Route> routes{Route::Master};
    std::vector<DriveDirection> directions{DriveDirection::FromLeft};
    std::vector<int> truncation{4, 4, 5};
    R3Form r3_form = R3Form::Wick;
    int jobs = 1;

    void validate() const;  // throws ConfigError
    std::vector<double> grid() const;
};

struct PointOutcome {
    double grid_value = 0;
    Route route;
    DriveDirection direction;
    double g2 = std::numeric_limits<double>::quiet_NaN();
    std::string status = "ok";  // "ok" or an error tag
};

struct SweepResult {
    std::vector<double> grid;
    std::vector<PointOutcome> points;  // ordered by (grid index, direction, route)
    // metadata
    std::string tool_version;
    std::vector<int> truncation;
    double wall_time_s = 0;
    std::map<std::string, double> parameters;
    int ok_count = 0;
    int error_count = 0;
};

SweepResult run_sweep(const SweepSpec& spec);

/// g2 vs temperature at the case optimum for both drive directions; also
/// reports the crossing where the direction ratio drops below 2.
struct TempScanResult {
    SweepResult sweep;
    double crossing_temperature = -1;  // K; negative when no crossing on grid
};

TempScanResult run_temperature_scan(SweepSpec spec);

std::string emit_csv(const SweepResult& r);
std::string emit_json(const SweepResult& r);
SweepResult sweep_result_from_json(const std::string& text);
std::string emit_svg(const SweepResult& r, bool log_y = true);

}  // namespace upb
