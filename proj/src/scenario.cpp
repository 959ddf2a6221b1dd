#include "pairsim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

namespace pairsim {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<double> parse_real(std::string_view token) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* beam_kind_name(BeamKind k) { return k == BeamKind::gaussian ? "gaussian" : "plane"; }

class LineParser {
  public:
    LineParser(int line, std::vector<std::string_view> tokens) : line_(line), tokens_(std::move(tokens)) {}

    void expect_count(std::size_t min, std::size_t max, const char* usage) const {
        if (tokens_.size() < min || tokens_.size() > max)
            throw ParseError(line_, std::string("expected '") + usage + "'");
    }

    double real(std::size_t i, const char* what) const {
        auto v = parse_real(tokens_[i]);
        if (!v) throw ParseError(line_, std::string("expected ") + what + ", got '" + std::string(tokens_[i]) + "'");
        return *v;
    }

    complex cplx(std::size_t i) const {
        auto v = parse_complex(tokens_[i]);
        if (!v) throw ParseError(line_, "expected complex number (re+imi), got '" + std::string(tokens_[i]) + "'");
        return *v;
    }

    std::string_view token(std::size_t i) const { return tokens_[i]; }
    std::size_t size() const { return tokens_.size(); }
    int line() const { return line_; }

  private:
    int line_;
    std::vector<std::string_view> tokens_;
};

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::array<BeamSpec, 2> default_beam_specs() {
    const auto [b1, b2] = default_beams();
    auto to_spec = [](const BeamProfile& b) {
        return BeamSpec{b.kind, b.tilt, b.width, b.phase_offset / kDegree, b.amplitude};
    };
    return {to_spec(b1), to_spec(b2)};
}

std::optional<complex> parse_complex(std::string_view token) {
    if (token.empty()) return std::nullopt;
    if (token.back() != 'i') {
        auto re = parse_real(token);
        if (!re) return std::nullopt;
        return complex{*re, 0.0};
    }
    const std::string_view body = token.substr(0, token.size() - 1);
    // Split at the last sign that is not leading and not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [](std::string_view s) -> std::optional<double> {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_real(s);
    };
    if (split == std::string_view::npos) {
        auto im = imag_part(body);
        if (!im) return std::nullopt;
        return complex{0.0, *im};
    }
    auto re = parse_real(body.substr(0, split));
    auto im = imag_part(body.substr(split));
    if (!re || !im) return std::nullopt;
    return complex{*re, *im};
}

std::string format_complex(complex c) {
    const double im = c.imag();
    return format_real(c.real()) + (std::signbit(im) ? "-" : "+") + format_real(std::abs(im)) + "i";
}

ScenarioSpec parse_scenario(std::string_view text) {
    ScenarioSpec spec;
    std::optional<Experiment> experiment;
    std::optional<StateKind> state;
    bool have_output = false, have_geometry = false;
    std::array<bool, 2> have_beam{false, false};
    std::optional<BeamSpec> beams[2];

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto tokens = split_tokens(raw);
        if (tokens.empty()) continue;

        const LineParser lp(line_no, std::move(tokens));
        const std::string_view key = lp.token(0);
        if (key == "state") {
            lp.expect_count(2, 2, "state <circular_pair|psi_e|psi_u|psi_u_prime>");
            if (state) throw ValidationError("line " + std::to_string(line_no) + ": duplicate state directive");
            try {
                state = parse_state_kind(lp.token(1));
            } catch (const std::invalid_argument&) {
                throw ParseError(line_no, "expected one of circular_pair, psi_e, psi_u, psi_u_prime");
            }
        } else if (key == "experiment") {
            lp.expect_count(2, 2, "experiment <fig1|pdc|fig2|fig3|cascade|chsh|same-channel>");
            if (experiment)
                throw ValidationError("line " + std::to_string(line_no) + ": duplicate experiment directive");
            try {
                experiment = parse_experiment(lp.token(1));
            } catch (const std::invalid_argument&) {
                throw ParseError(line_no, "expected one of fig1, pdc, fig2, fig3, cascade, chsh, same-channel");
            }
        } else if (key == "angle") {
            lp.expect_count(3, 3, "angle <name> <degrees>");
            const std::string name(lp.token(1));
            const double deg = lp.real(2, "angle in degrees");
            if (!spec.angles_deg.emplace(name, deg).second)
                throw ValidationError("line " + std::to_string(line_no) + ": angle '" + name + "' set twice");
        } else if (key == "scan") {
            lp.expect_count(5, 5, "scan <name> <from> <to> <step>");
            if (spec.scan) throw ValidationError("line " + std::to_string(line_no) + ": only one scan is allowed");
            spec.scan = ScanSpec{std::string(lp.token(1)), lp.real(2, "scan start in degrees"),
                                 lp.real(3, "scan end in degrees"), lp.real(4, "scan step in degrees")};
        } else if (key == "beam") {
            lp.expect_count(4, 7, "beam <1|2> <plane|gaussian> <tilt> [width] [phase] [amplitude]");
            const std::string_view idx = lp.token(1);
            if (idx != "1" && idx != "2") throw ParseError(line_no, "expected beam index 1 or 2");
            const int i = idx == "1" ? 0 : 1;
            if (have_beam[i]) throw ValidationError("line " + std::to_string(line_no) + ": beam set twice");
            have_beam[i] = true;
            BeamSpec b = default_beam_specs()[i];
            if (lp.token(2) == "plane") {
                b.kind = BeamKind::plane_wave;
            } else if (lp.token(2) == "gaussian") {
                b.kind = BeamKind::gaussian;
            } else {
                throw ParseError(line_no, "expected beam kind plane or gaussian");
            }
            b.tilt = lp.real(3, "beam tilt");
            if (lp.size() > 4) b.width = lp.real(4, "beam width");
            if (lp.size() > 5) b.phase_deg = lp.real(5, "beam phase in degrees");
            if (lp.size() > 6) b.amplitude = lp.real(6, "beam amplitude");
            beams[i] = b;
        } else if (key == "geometry") {
            lp.expect_count(5, 5, "geometry <g11> <g12> <g21> <g22>");
            if (have_geometry) throw ValidationError("line " + std::to_string(line_no) + ": geometry set twice");
            have_geometry = true;
            spec.geometry = CascadeGeometry{lp.cplx(1), lp.cplx(2), lp.cplx(3), lp.cplx(4)};
        } else if (key == "output") {
            lp.expect_count(2, 2, "output <csv|json>");
            if (have_output) throw ValidationError("line " + std::to_string(line_no) + ": output set twice");
            have_output = true;
            if (lp.token(1) == "csv") {
                spec.format = OutputFormat::csv;
            } else if (lp.token(1) == "json") {
                spec.format = OutputFormat::json;
            } else {
                throw ParseError(line_no, "expected output format csv or json");
            }
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(key) + "'");
        }
    }

    if (!experiment) throw ValidationError("scenario has no experiment directive");
    spec.experiment = *experiment;
    spec.state = state.value_or(default_state(*experiment));
    spec.beams = default_beam_specs();
    for (int i = 0; i < 2; ++i)
        if (beams[i]) spec.beams[i] = *beams[i];

    if (!supports_state(spec.experiment, spec.state))
        throw ValidationError("experiment " + std::string(to_string(spec.experiment)) + " does not support state " +
                              std::string(to_string(spec.state)));

    const auto names = angle_names(spec.experiment);
    auto known = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
    for (const auto& [name, deg] : spec.angles_deg)
        if (!known(name))
            throw ValidationError("experiment " + std::string(to_string(spec.experiment)) + " has no angle '" + name +
                                  "'");
    if (spec.scan) {
        const ScanSpec& s = *spec.scan;
        if (!known(s.variable))
            throw ValidationError("experiment " + std::string(to_string(spec.experiment)) +
                                  " cannot scan '" + s.variable + "'");
        if (spec.angles_deg.contains(s.variable))
            throw ValidationError("angle '" + s.variable + "' is both fixed and scanned");
        if (!(s.step_deg > 0.0)) throw ValidationError("scan step must be positive");
        if (s.from_deg > s.to_deg) throw ValidationError("scan range is empty");
    }
    for (const auto& b : spec.beams) {
        if (b.kind == BeamKind::gaussian && !(b.width > 0.0))
            throw ValidationError("gaussian beam width must be positive");
        if (b.amplitude < 0.0) throw ValidationError("beam amplitude must be non-negative");
    }
    return spec;
}

std::string format_scenario(const ScenarioSpec& spec) {
    std::ostringstream out;
    out << "experiment " << to_string(spec.experiment) << '\n';
    out << "state " << to_string(spec.state) << '\n';
    for (const auto& [name, deg] : spec.angles_deg) out << "angle " << name << ' ' << format_real(deg) << '\n';
    if (spec.scan) {
        const ScanSpec& s = *spec.scan;
        out << "scan " << s.variable << ' ' << format_real(s.from_deg) << ' ' << format_real(s.to_deg) << ' '
            << format_real(s.step_deg) << '\n';
    }
    for (int i = 0; i < 2; ++i) {
        const BeamSpec& b = spec.beams[i];
        out << "beam " << (i + 1) << ' ' << beam_kind_name(b.kind) << ' ' << format_real(b.tilt) << ' '
            << format_real(b.width) << ' ' << format_real(b.phase_deg) << ' ' << format_real(b.amplitude) << '\n';
    }
    const CascadeGeometry& g = spec.geometry;
    out << "geometry " << format_complex(g.g11) << ' ' << format_complex(g.g12) << ' ' << format_complex(g.g21) << ' '
        << format_complex(g.g22) << '\n';
    out << "output " << (spec.format == OutputFormat::json ? "json" : "csv") << '\n';
    return out.str();
}

std::size_t point_count(const ScenarioSpec& spec) {
    if (!spec.scan) return 1;
    return scan_points(spec.scan->from_deg, spec.scan->to_deg, spec.scan->step_deg).size();
}

ScenarioParams to_params(const ScenarioSpec& spec) {
    ScenarioParams p;
    p.experiment = spec.experiment;
    p.state = spec.state;
    for (const auto& [name, deg] : spec.angles_deg) p.angles[name] = deg * kDegree;
    auto to_profile = [](const BeamSpec& b) {
        return BeamProfile{b.kind, b.tilt, b.width, b.phase_deg * kDegree, b.amplitude};
    };
    p.beams = {to_profile(spec.beams[0]), to_profile(spec.beams[1])};
    p.geometry = spec.geometry;
    return p;
}

std::vector<ScenarioResult> run_scenario(const ScenarioSpec& spec) {
    const ScenarioParams params = to_params(spec);
    if (!spec.scan) return evaluate(params);
    std::vector<double> points = scan_points(spec.scan->from_deg, spec.scan->to_deg, spec.scan->step_deg);
    for (double& x : points) x *= kDegree;
    return angle_scan(params, spec.scan->variable, points);
}

}  // namespace pairsim
