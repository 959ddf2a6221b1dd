/**
 * @file experiments.hpp
 * @brief End-to-end optical setups for the photon-pair sources.
 *
 * Each scenario builds its source state, propagates the channel fields
 * through the optical elements, and evaluates a detection observable.
 * Results carry the analytic prediction where one exists.
 *
 * Conventions: angles are radians measured from vertical; rates are
 * dimensionless with B = 1, and every detector form keeps the full field
 * coefficient (including the 1/sqrt2 splitter factors).
 */

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pairsim/detection.hpp"
#include "pairsim/fock.hpp"
#include "pairsim/jones.hpp"

namespace pairsim {

struct ScenarioResult {
    std::string observable;
    /// Parameter name and value; angles in radians.
    std::vector<std::pair<std::string, double>> parameters;
    double value = 0.0;
    std::optional<double> closed_form;
    /// Per-row acceptance tolerance; the caller's default applies when unset.
    std::optional<double> tolerance;
    std::string units = "dimensionless rate (B = 1)";
    /// Non-angle discriminator (channel, outcome, criterion name).
    std::string label;

    std::optional<double> abs_error() const;
};

/// Geometry-dependent coupling of the two cascade frequencies into the two channels.
struct CascadeGeometry {
    complex g11{1.0};
    complex g12{1.0};
    complex g21{1.0};
    complex g22{1.0};

    bool operator==(const CascadeGeometry&) const = default;
};

class DarkDenominator : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Channel fields ---------------------------------------------------------

/// Circular pair after the 50/50 splitter, hwp(0) in channel 1 and hwp(pi/4) in channel 2.
std::pair<ChannelField, ChannelField> fig1_channel_fields();
/// Source fields of the PDC pair: unit fields for psi_e, composite-mode fields for psi_u.
std::pair<ChannelField, ChannelField> pdc_channel_fields(StateKind kind, CompositeBasis basis = CompositeBasis::channel);
std::pair<ChannelField, ChannelField> cascade_channel_fields(const CascadeGeometry& geometry);
/// The two detection channels appropriate to `kind`.
std::pair<ChannelField, ChannelField> channel_fields(StateKind kind, const CascadeGeometry& geometry = {});

// Scenarios --------------------------------------------------------------

ScenarioResult fig1_coincidence(double theta1, double theta2);

/// Singles rate at D1 of the state left after one photon is absorbed at D1.
/// 1/2 for the unnormalized conditional state, 1 when normalized.
double fig1_conditional_check(double theta1, bool normalized = false);

/// Channel-1/channel-2 coincidence for psi_e or psi_u.
ScenarioResult pdc_coincidence(StateKind kind, double theta1, double theta2);

/// Channel 2 split again into channels 3 and 4; coincidence between 3 and 4.
ScenarioResult fig2_split_coincidence(StateKind kind, double theta3, double theta4);

/// Detector forms of the overlap setup: channel 1 selected horizontal and
/// rotated to vertical, channel 2 selected vertical, both folded by mirrors.
std::pair<LinearForm, LinearForm> fig3_detector_forms(StateKind kind);

ScenarioResult fig3_visibility(StateKind kind, const std::pair<BeamProfile, BeamProfile>& beams = default_beams(),
                               const Grid& grid = {});

ScenarioResult cascade_coincidence(const CascadeGeometry& geometry, double theta1, double theta2);

/// Probability that both photons are detected in `channel` (1 or 2).
double same_channel_probability(StateKind kind, int channel);
/// Probability that the photons are detected in different channels.
double split_probability(StateKind kind);

using CoincidenceFn = std::function<double(double, double)>;

/// Two-channel coincidence rate as a function of the analyzer angles.
CoincidenceFn coincidence_law(StateKind kind, const CascadeGeometry& geometry = {});

/**
 * Ratio estimator over four analyzer settings:
 * E = [C(a,b) + C(a+,b+) - C(a,b+) - C(a+,b)] / sum, where x+ = x + pi/2.
 * Throws DarkDenominator if the four rates sum below kZeroEpsilon.
 */
double correlation_E(const CoincidenceFn& rate, double theta1, double theta2);
double correlation_E(StateKind kind, double theta1, double theta2);

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh_S(const CoincidenceFn& rate, double a, double a_prime, double b, double b_prime);
double chsh_S(StateKind kind, double a, double a_prime, double b, double b_prime);

struct ChshAngles {
    double a, a_prime, b, b_prime;
};
/// 0, pi/4, pi/8, 3 pi/8.
ChshAngles canonical_chsh_angles();

// Generic dispatch -------------------------------------------------------

enum class Experiment { fig1, pdc, fig2, fig3, cascade, chsh, same_channel };

std::string_view to_string(Experiment e);
/// Throws std::invalid_argument on unknown names.
Experiment parse_experiment(std::string_view name);

/// Angle names an experiment reads, in canonical order.
std::span<const std::string> angle_names(Experiment e);
/// Whether `kind` is a meaningful source for `e`.
bool supports_state(Experiment e, StateKind kind);
StateKind default_state(Experiment e);

struct ScenarioParams {
    Experiment experiment = Experiment::fig1;
    StateKind state = StateKind::circular_pair;
    /// Radians; missing names default to 0 (canonical angles for chsh).
    std::map<std::string, double> angles;
    std::pair<BeamProfile, BeamProfile> beams = default_beams();
    Grid grid{};
    CascadeGeometry geometry{};
};

/// Rows for one parameter point. Throws std::invalid_argument for unsupported combinations.
std::vector<ScenarioResult> evaluate(const ScenarioParams& params);

/// from, from + step, ... up to `to` (inclusive, with 1e-9 relative slack).
/// Throws std::invalid_argument unless step > 0, bounds finite and from <= to.
std::vector<double> scan_points(double from, double to, double step);

/// Evaluates `params` with `variable` set to each point in turn; row order follows `points`.
std::vector<ScenarioResult> angle_scan(const ScenarioParams& params, const std::string& variable,
                                       std::span<const double> points);
std::vector<ScenarioResult> angle_scan(const ScenarioParams& params, const std::string& variable, double from,
                                       double to, double step);

}  // namespace pairsim
