#include "pairsim/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace pairsim {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

void require_state(Experiment e, StateKind kind) {
    if (!supports_state(e, kind))
        throw std::invalid_argument(std::string(to_string(e)) + " does not support state " +
                                    std::string(to_string(kind)));
}

ChannelField unit_channel(int channel) {
    using modes::channel_mode;
    return ChannelField::of(LinearForm::unit(channel_mode(channel, Polarization::v)),
                            LinearForm::unit(channel_mode(channel, Polarization::h)), channel);
}

ChannelField cascade_channel(complex g_w1, complex g_w2, int channel) {
    using modes::cascade_mode;
    LinearForm v{{cascade_mode(Frequency::w1, Polarization::v), g_w1},
                 {cascade_mode(Frequency::w2, Polarization::v), g_w2}};
    LinearForm h{{cascade_mode(Frequency::w1, Polarization::h), g_w1},
                 {cascade_mode(Frequency::w2, Polarization::h), g_w2}};
    return ChannelField::of(std::move(v), std::move(h), channel);
}

/// Sign of the two-channel correlation: -1 for the sin^2 law, +1 for the cos^2 law.
double correlation_sign(StateKind kind) { return kind == StateKind::psi_u_prime ? 1.0 : -1.0; }

double chsh_closed_form(StateKind kind, const ChshAngles& x) {
    const double s = correlation_sign(kind);
    auto e = [s](double a, double b) { return s * std::cos(2.0 * (a - b)); };
    return e(x.a, x.b) - e(x.a, x.b_prime) + e(x.a_prime, x.b) + e(x.a_prime, x.b_prime);
}

double angle_or(const std::map<std::string, double>& angles, const std::string& name, double fallback) {
    auto it = angles.find(name);
    return it == angles.end() ? fallback : it->second;
}

ScenarioResult rate_result(std::string observable, std::vector<std::pair<std::string, double>> parameters,
                           double value, std::optional<double> closed_form) {
    ScenarioResult r;
    r.observable = std::move(observable);
    r.parameters = std::move(parameters);
    r.value = value;
    r.closed_form = closed_form;
    return r;
}

}  // namespace

std::optional<double> ScenarioResult::abs_error() const {
    if (!closed_form) return std::nullopt;
    return std::abs(value - *closed_form);
}

// ---------------------------------------------------------------------------
// Channel fields

std::pair<ChannelField, ChannelField> fig1_channel_fields() {
    using modes::channel_mode;
    // The source beam travels along k_2; the k_1 input port is dark.
    const ChannelField source = ChannelField::of(LinearForm::unit(channel_mode(2, Polarization::v)),
                                                 LinearForm::unit(channel_mode(2, Polarization::h)), 2);
    const auto [transmitted, reflected] = beamsplitter_5050(source, ChannelField::vacuum_port(1));
    return {apply_jones(reflected, hwp(0.0)), apply_jones(transmitted, hwp(kPi / 4.0))};
}

std::pair<ChannelField, ChannelField> pdc_channel_fields(StateKind kind, CompositeBasis basis) {
    if (kind == StateKind::psi_e) return {unit_channel(1), unit_channel(2)};
    if (kind != StateKind::psi_u) throw std::invalid_argument("pdc fields are defined for psi_e and psi_u only");
    const double s = 1.0 / std::sqrt(2.0);
    const LinearForm b1 = composite_form(1, basis);
    const LinearForm b2 = composite_form(2, basis);
    return {ChannelField::of(s * b1, -s * b2, 1), ChannelField::of(s * b2, s * b1, 2)};
}

std::pair<ChannelField, ChannelField> cascade_channel_fields(const CascadeGeometry& g) {
    return {cascade_channel(g.g11, g.g12, 1), cascade_channel(g.g21, g.g22, 2)};
}

std::pair<ChannelField, ChannelField> channel_fields(StateKind kind, const CascadeGeometry& geometry) {
    switch (kind) {
        case StateKind::circular_pair: return fig1_channel_fields();
        case StateKind::psi_e:
        case StateKind::psi_u: return pdc_channel_fields(kind);
        case StateKind::psi_u_prime: return cascade_channel_fields(geometry);
    }
    throw std::invalid_argument("unknown state kind");
}

// ---------------------------------------------------------------------------
// Scenarios

ScenarioResult fig1_coincidence(double theta1, double theta2) {
    const auto [ch1, ch2] = fig1_channel_fields();
    const double value = coincidence_rate(named_state(StateKind::circular_pair), polarizer(ch1, theta1),
                                          polarizer(ch2, theta2));
    return rate_result("fig1_coincidence", {{"theta1", theta1}, {"theta2", theta2}}, value,
                       0.25 * sq(std::sin(theta1 - theta2)));
}

double fig1_conditional_check(double theta1, bool normalized) {
    const auto [ch1, ch2] = fig1_channel_fields();
    const LinearForm detector = polarizer(ch1, theta1);
    const FockKet after = conditional_state(named_state(StateKind::circular_pair), detector, normalized);
    // The check uses the bare polarization operator, without the splitter's 1/sqrt2.
    return singles_rate(after, std::sqrt(2.0) * detector);
}

ScenarioResult pdc_coincidence(StateKind kind, double theta1, double theta2) {
    require_state(Experiment::pdc, kind);
    const auto [ch1, ch2] = pdc_channel_fields(kind);
    const double value = coincidence_rate(named_state(kind), polarizer(ch1, theta1), polarizer(ch2, theta2));
    const double scale = kind == StateKind::psi_e ? 0.5 : 0.25;
    return rate_result("pdc_coincidence", {{"theta1", theta1}, {"theta2", theta2}}, value,
                       scale * sq(std::sin(theta1 - theta2)));
}

ScenarioResult fig2_split_coincidence(StateKind kind, double theta3, double theta4) {
    require_state(Experiment::fig2, kind);
    ChannelField ch2 = channel_fields(kind).second;
    ch2.channel = 3;
    const auto [ch3, ch4] = beamsplitter_5050(ch2, ChannelField::vacuum_port(4));
    const double value = coincidence_rate(named_state(kind), polarizer(ch3, theta3), polarizer(ch4, theta4));
    const double closed = kind == StateKind::psi_e ? 0.0 : sq(std::cos(theta3 - theta4)) / 16.0;
    return rate_result("fig2_split_coincidence", {{"theta3", theta3}, {"theta4", theta4}}, value, closed);
}

std::pair<LinearForm, LinearForm> fig3_detector_forms(StateKind kind) {
    require_state(Experiment::fig3, kind);
    const auto [ch1, ch2] = pdc_channel_fields(kind);
    // A horizontal analyzer followed by a half-wave plate at pi/4 leaves the
    // former h component on the vertical axis; a vertical analyzer after the
    // plate selects the same operator.
    const ChannelField beam1 = mirror(apply_jones(ch1, hwp(kPi / 4.0)));
    const ChannelField beam2 = mirror(ch2);
    return {polarizer(beam1, 0.0), polarizer(beam2, 0.0)};
}

ScenarioResult fig3_visibility(StateKind kind, const std::pair<BeamProfile, BeamProfile>& beams, const Grid& grid) {
    const IntensityMap map = intensity_map(named_state(kind), fig3_detector_forms(kind), beams, grid);
    ScenarioResult out = rate_result("fig3_visibility", {}, visibility(map), std::nullopt);
    out.units = "dimensionless";
    out.label = "visibility";
    if (beams == default_beams() && grid == Grid{}) out.closed_form = kind == StateKind::psi_u ? 1.0 : 0.0;
    return out;
}

ScenarioResult cascade_coincidence(const CascadeGeometry& geometry, double theta1, double theta2) {
    const auto [ch1, ch2] = cascade_channel_fields(geometry);
    const LinearForm d1 = polarizer(frequency_filter(ch1, Frequency::w1), theta1);
    const LinearForm d2 = polarizer(frequency_filter(ch2, Frequency::w2), theta2);
    const double value = coincidence_rate(named_state(StateKind::psi_u_prime), d1, d2);
    const double closed = 0.5 * std::norm(geometry.g11 * geometry.g22) * sq(std::cos(theta1 - theta2));
    return rate_result("cascade_coincidence", {{"theta1", theta1}, {"theta2", theta2}}, value, closed);
}

double same_channel_probability(StateKind kind, int channel) {
    require_state(Experiment::same_channel, kind);
    if (channel != 1 && channel != 2) throw std::invalid_argument("channel must be 1 or 2");
    const auto fields = channel_fields(kind);
    const FockKet ket = named_state(kind);
    return same_channel_double_rate(ket, channel == 1 ? fields.first : fields.second) / 2.0;
}

double split_probability(StateKind kind) {
    require_state(Experiment::same_channel, kind);
    const auto [ch1, ch2] = channel_fields(kind);
    return cross_channel_rate(named_state(kind), ch1, ch2);
}

CoincidenceFn coincidence_law(StateKind kind, const CascadeGeometry& geometry) {
    switch (kind) {
        case StateKind::circular_pair:
            return [](double a, double b) { return fig1_coincidence(a, b).value; };
        case StateKind::psi_e:
        case StateKind::psi_u:
            return [kind](double a, double b) { return pdc_coincidence(kind, a, b).value; };
        case StateKind::psi_u_prime:
            return [geometry](double a, double b) { return cascade_coincidence(geometry, a, b).value; };
    }
    throw std::invalid_argument("unknown state kind");
}

double correlation_E(const CoincidenceFn& rate, double theta1, double theta2) {
    const double perp = kPi / 2.0;
    const double same = rate(theta1, theta2) + rate(theta1 + perp, theta2 + perp);
    const double crossed = rate(theta1, theta2 + perp) + rate(theta1 + perp, theta2);
    const double total = same + crossed;
    if (total < kZeroEpsilon) throw DarkDenominator("all four analyzer settings are dark");
    return (same - crossed) / total;
}

double correlation_E(StateKind kind, double theta1, double theta2) {
    return correlation_E(coincidence_law(kind), theta1, theta2);
}

double chsh_S(const CoincidenceFn& rate, double a, double a_prime, double b, double b_prime) {
    return correlation_E(rate, a, b) - correlation_E(rate, a, b_prime) + correlation_E(rate, a_prime, b) +
           correlation_E(rate, a_prime, b_prime);
}

double chsh_S(StateKind kind, double a, double a_prime, double b, double b_prime) {
    return chsh_S(coincidence_law(kind), a, a_prime, b, b_prime);
}

ChshAngles canonical_chsh_angles() { return {0.0, kPi / 4.0, kPi / 8.0, 3.0 * kPi / 8.0}; }

// ---------------------------------------------------------------------------
// Dispatch

std::string_view to_string(Experiment e) {
    switch (e) {
        case Experiment::fig1: return "fig1";
        case Experiment::pdc: return "pdc";
        case Experiment::fig2: return "fig2";
        case Experiment::fig3: return "fig3";
        case Experiment::cascade: return "cascade";
        case Experiment::chsh: return "chsh";
        case Experiment::same_channel: return "same-channel";
    }
    return "?";
}

Experiment parse_experiment(std::string_view name) {
    for (auto e : {Experiment::fig1, Experiment::pdc, Experiment::fig2, Experiment::fig3, Experiment::cascade,
                   Experiment::chsh, Experiment::same_channel}) {
        if (name == to_string(e)) return e;
    }
    throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

std::span<const std::string> angle_names(Experiment e) {
    static const std::array<std::string, 2> pair12{"theta1", "theta2"};
    static const std::array<std::string, 2> pair34{"theta3", "theta4"};
    static const std::array<std::string, 4> chsh{"a", "a_prime", "b", "b_prime"};
    switch (e) {
        case Experiment::fig1:
        case Experiment::pdc:
        case Experiment::cascade: return pair12;
        case Experiment::fig2: return pair34;
        case Experiment::chsh: return chsh;
        case Experiment::fig3:
        case Experiment::same_channel: return {};
    }
    return {};
}

bool supports_state(Experiment e, StateKind kind) {
    switch (e) {
        case Experiment::fig1: return kind == StateKind::circular_pair;
        case Experiment::pdc:
        case Experiment::fig3: return kind == StateKind::psi_e || kind == StateKind::psi_u;
        case Experiment::cascade: return kind == StateKind::psi_u_prime;
        case Experiment::fig2:
        case Experiment::same_channel: return kind != StateKind::psi_u_prime;
        case Experiment::chsh: return true;
    }
    return false;
}

StateKind default_state(Experiment e) {
    switch (e) {
        case Experiment::fig1: return StateKind::circular_pair;
        case Experiment::pdc:
        case Experiment::chsh: return StateKind::psi_e;
        case Experiment::fig2:
        case Experiment::fig3:
        case Experiment::same_channel: return StateKind::psi_u;
        case Experiment::cascade: return StateKind::psi_u_prime;
    }
    return StateKind::psi_e;
}

std::vector<ScenarioResult> evaluate(const ScenarioParams& p) {
    require_state(p.experiment, p.state);
    const auto& a = p.angles;
    switch (p.experiment) {
        case Experiment::fig1: return {fig1_coincidence(angle_or(a, "theta1", 0.0), angle_or(a, "theta2", 0.0))};
        case Experiment::pdc:
            return {pdc_coincidence(p.state, angle_or(a, "theta1", 0.0), angle_or(a, "theta2", 0.0))};
        case Experiment::fig2:
            return {fig2_split_coincidence(p.state, angle_or(a, "theta3", 0.0), angle_or(a, "theta4", 0.0))};
        case Experiment::fig3: return {fig3_visibility(p.state, p.beams, p.grid)};
        case Experiment::cascade:
            return {cascade_coincidence(p.geometry, angle_or(a, "theta1", 0.0), angle_or(a, "theta2", 0.0))};
        case Experiment::chsh: {
            const ChshAngles c = canonical_chsh_angles();
            const ChshAngles x{angle_or(a, "a", c.a), angle_or(a, "a_prime", c.a_prime), angle_or(a, "b", c.b),
                               angle_or(a, "b_prime", c.b_prime)};
            ScenarioResult r = rate_result(
                "chsh_S", {{"a", x.a}, {"a_prime", x.a_prime}, {"b", x.b}, {"b_prime", x.b_prime}},
                chsh_S(coincidence_law(p.state, p.geometry), x.a, x.a_prime, x.b, x.b_prime),
                chsh_closed_form(p.state, x));
            r.units = "dimensionless";
            return {r};
        }
        case Experiment::same_channel: {
            // Closed forms: both photons share a channel with probability 1/4
            // each for the circular and un-entangled pairs; never for psi_e.
            const bool entangled = p.state == StateKind::psi_e;
            const double same = entangled ? 0.0 : 0.25;
            std::vector<ScenarioResult> rows;
            for (int ch : {1, 2}) {
                auto& r = rows.emplace_back(
                    rate_result("same_channel_probability", {}, same_channel_probability(p.state, ch), same));
                r.units = "probability";
                r.label = "channel=" + std::to_string(ch);
            }
            auto& split = rows.emplace_back(
                rate_result("split_probability", {}, split_probability(p.state), 1.0 - 2.0 * same));
            split.units = "probability";
            split.label = "split";
            return rows;
        }
    }
    throw std::invalid_argument("unknown experiment");
}

std::vector<double> scan_points(double from, double to, double step) {
    if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step))
        throw std::invalid_argument("scan bounds and step must be finite");
    if (!(step > 0.0)) throw std::invalid_argument("scan step must be positive");
    if (from > to) throw std::invalid_argument("scan range is empty");
    const double span = (to - from) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9 * std::max(1.0, span))) + 1;
    std::vector<double> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = from + static_cast<double>(i) * step;
    return points;
}

std::vector<ScenarioResult> angle_scan(const ScenarioParams& params, const std::string& variable,
                                       std::span<const double> points) {
    const auto names = angle_names(params.experiment);
    if (std::find(names.begin(), names.end(), variable) == names.end())
        throw std::invalid_argument("experiment " + std::string(to_string(params.experiment)) +
                                    " has no angle '" + variable + "'");
    if (points.empty()) throw std::invalid_argument("scan has no points");

    std::vector<ScenarioResult> rows;
    ScenarioParams p = params;
    for (double x : points) {
        p.angles[variable] = x;
        auto point_rows = evaluate(p);
        rows.insert(rows.end(), std::make_move_iterator(point_rows.begin()), std::make_move_iterator(point_rows.end()));
    }
    return rows;
}

std::vector<ScenarioResult> angle_scan(const ScenarioParams& params, const std::string& variable, double from,
                                       double to, double step) {
    const auto points = scan_points(from, to, step);
    return angle_scan(params, variable, points);
}

}  // namespace pairsim
