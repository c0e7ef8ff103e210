#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slicekit/diffeo.hpp"

namespace slicekit {

// ============================================================================
// Run configuration
//
// Line-based `key = value` text with optional `[suite.<name>]` sections.
// Keys outside any section set the global defaults; keys inside a section
// override them for that suite only.  Unknown keys, malformed numbers, and
// unregistered suite names are rejected with the 1-based line number.
//
// Recognized keys:
//   suites            comma list of registered suite ids   (top level only)
//   seed              u64                                  (top level only)
//   out               output path                          (top level only)
//   a                 identity|affine|power|exp|sin|log|rotation
//                     (unset: each suite runs its built-in family corpus)
//   alpha             n reals (power exponents)
//   r, s              n reals (affine scale / shift)
//   c                 4 reals (rotation unit quaternion)
//   moebius           16 reals (a, b, c, d quaternions)
//   domain_center     4 reals
//   domain_radius     real > 0
//   contour_nodes     int >= 8
//   surface_nodes     int >= 2   (per angle)
//   radial_nodes      int >= 1
//   fd_step           real > 0
//   richardson        true|false
// ============================================================================

struct SuiteParams {
    std::string family; // empty = suite default corpus
    std::vector<double> alpha{2, 2, 2};
    std::vector<double> r{1, 1, 1};
    std::vector<double> s{0, 0, 0};
    std::array<double, 4> c{1, 0, 0, 0};
    std::array<double, 16> moebius{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0};
    std::array<double, 4> domain_center{0, 2, 0, 0};
    double domain_radius = 0.5;
    int contour_nodes = 256;
    int surface_nodes = 32;
    int radial_nodes = 24;
    double fd_step = 1e-5;
    bool richardson = true;

    bool operator==(const SuiteParams&) const = default;
};

struct RunConfig {
    std::vector<std::string> suites; // empty = all registered
    std::uint64_t seed = 0x5EED;
    std::string out_path;
    SuiteParams defaults;
    std::map<std::string, SuiteParams> overrides;

    bool operator==(const RunConfig&) const = default;
};

// The registered verification suites, alphabetical.
const std::vector<std::string>& suite_registry();
bool suite_registered(const std::string& name);

// Throws config_error naming the offending 1-based line.
RunConfig parse_config(const std::string& text);

// Defaults merged with the suite's section, if any.
SuiteParams effective_params(const RunConfig& cfg, const std::string& suite);

// Canonical text form; parse_config(print_config(c)) == c.
std::string print_config(const RunConfig& cfg);

// Instantiate the diffeomorphism family a suite should use.
DiffeoMap family_from_params(const SuiteParams& p);

} // namespace slicekit
