#pragma once

#include "upb/sweep.hpp"

namespace upb {

/// Parse a JSON configuration document into a sweep specification. Every
/// physical key carries an explicit unit suffix; the spin rate must be given
/// as exactly one of `omega_spin_hz` or `omega_spin_rad_s`.
SweepSpec parse_config(const std::string& json_text);

SweepSpec load_config_file(const std::string& path);

}  // namespace upb
