/**
 * @file scenario.hpp
 * @brief Line-oriented scenario files and their mapping onto experiments.
 *
 * One directive per line, `#` starts a comment:
 *
 *     state <circular_pair|psi_e|psi_u|psi_u_prime>
 *     experiment <fig1|pdc|fig2|fig3|cascade|chsh|same-channel>
 *     angle <name> <degrees>
 *     scan <name> <from> <to> <step>              (degrees)
 *     beam <1|2> <plane|gaussian> <tilt> [width] [phase] [amplitude]
 *     geometry <g11> <g12> <g21> <g22>            (complex as re+imi)
 *     output <csv|json>
 *
 * Beam phases are in degrees; tilt is a transverse wavenumber.
 */

#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pairsim/experiments.hpp"

namespace pairsim {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

  private:
    int line_;
};

class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct ScanSpec {
    std::string variable;
    double from_deg = 0.0;
    double to_deg = 0.0;
    double step_deg = 1.0;

    bool operator==(const ScanSpec&) const = default;
};

struct BeamSpec {
    BeamKind kind = BeamKind::plane_wave;
    double tilt = 0.0;
    double width = 1.0;
    double phase_deg = 0.0;
    double amplitude = 1.0;

    bool operator==(const BeamSpec&) const = default;
};

struct ScenarioSpec {
    Experiment experiment = Experiment::fig1;
    StateKind state = StateKind::circular_pair;
    std::map<std::string, double> angles_deg;
    std::optional<ScanSpec> scan;
    std::array<BeamSpec, 2> beams;
    CascadeGeometry geometry;
    OutputFormat format = OutputFormat::csv;

    bool operator==(const ScenarioSpec&) const = default;
};

/// Default beam pair (opposite-tilt plane waves) in scenario units.
std::array<BeamSpec, 2> default_beam_specs();

/**
 * Parses and validates a scenario. Unset fields take the experiment's
 * defaults. Throws ParseError for malformed lines and ValidationError for
 * well-formed but inconsistent scenarios.
 */
ScenarioSpec parse_scenario(std::string_view text);

/// Canonical text form; parse_scenario(format_scenario(s)) == s.
std::string format_scenario(const ScenarioSpec& spec);

/// Parses `re`, `re+imi`, `re-imi` or `imi`.
std::optional<complex> parse_complex(std::string_view token);
std::string format_complex(complex c);

/// Number of rows a scan will produce (1 without a scan).
std::size_t point_count(const ScenarioSpec& spec);

/// Radian-valued parameters for the experiments layer.
ScenarioParams to_params(const ScenarioSpec& spec);

/// Runs the scenario, converting the degree scan once per point.
std::vector<ScenarioResult> run_scenario(const ScenarioSpec& spec);

}  // namespace pairsim
