#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topocirc/gate.hpp"
#include "topocirc/noise.hpp"

namespace topo::cli {

// Bad flags, unreadable config files, malformed input specs. Exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// `key = value` lines; blank lines and `#` comments are skipped. Keys are
// flag names without the leading dashes.
KeyValues parse_config(std::string_view text);
KeyValues read_config(const std::string& path);

// Noise keys: p1, p2, readout (both directions), readout-e-given-g,
// readout-g-given-e, shots, seed. Other keys are ignored.
NoiseModel noise_model_from_config(const KeyValues& kv);

// `odd:x` -> Q_{2x-1}, `even:x` -> Q_{2x}; returns the 0-based qubit.
Qubit parse_input_1d(std::string_view spec, std::size_t sites);
// `U:x,y` / `D:x,y`.
Qubit parse_input_2d(std::string_view spec, std::size_t nx, std::size_t ny);

// TOPOCIRC_THREADS, or 0 (hardware concurrency) when unset.
std::size_t default_threads();

// Runs one invocation (args exclude the program name). Exit codes: 0 success,
// 1 numerical guard or failed check, 2 usage error. Errors are written to
// `err` as a one-line JSON record.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topo::cli
