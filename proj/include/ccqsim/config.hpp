#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccqsim/compensation.hpp"
#include "ccqsim/drives.hpp"

namespace ccqsim {

// Which state representation a trajectory propagates.
enum class Representation { polaron, lab_compensated, lab_reduced, full };

const char* to_string(Representation r);
const char* to_string(CompensationMode m);
Representation representation_from_string(const std::string& s);
CompensationMode compensation_from_string(const std::string& s);

// Fully resolved run description. All rates are rad/us here; config files
// take nu/2pi in MHz and the 2*pi conversion happens exactly once, in
// load_config.
struct SimulationConfig {
    SystemParams params;
    DriveSet drives;
    CompensationMode compensation = CompensationMode::adiabatic;
    Representation representation = Representation::polaron;
    double dt = 0;  // us; 0 selects the default (100 max kappa)^-1
    std::vector<double> pulse_widths;
    int trajectories = 1;
    std::uint64_t master_seed = 0;
    int snapshot_stride = 10;
    double ring_down_us = 0;
    double classify_threshold = 0.9;
    int fock_na = 16, fock_nb = 16;
    std::string out_dir;

    double step_size() const;
    double total_time() const { return drives.end_time() + ring_down_us; }
    // Copy with every drive envelope's hold set to the given pulse width.
    SimulationConfig with_width(double width_us) const;
    void validate() const;

    bool operator==(const SimulationConfig&) const = default;
};

SimulationConfig load_config(const std::string& path);
SimulationConfig parse_config(const std::string& json_text);
// Inverse of load_config: same schema and units (MHz, us); round-trips.
std::string emit_config(const SimulationConfig& c);
void write_config(const SimulationConfig& c, const std::string& path);

}  // namespace ccqsim
