#include "pairsim/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string_view>

#include <json.hpp>

namespace pairsim {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

ScenarioResult criterion(std::string label, double value, double target, double tolerance) {
    ScenarioResult r;
    r.observable = "selfcheck";
    r.label = std::move(label);
    r.value = value;
    r.closed_form = target;
    r.tolerance = tolerance;
    r.units = "criterion";
    return r;
}

/// 73 angle differences covering [0, pi].
std::vector<double> delta_grid() {
    std::vector<double> d(73);
    for (int k = 0; k < 73; ++k) d[k] = k * kPi / 72.0;
    return d;
}

std::optional<double> read_number(std::string_view s) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return x;
}

}  // namespace

std::string param_label(const ScenarioResult& row) {
    if (row.parameters.empty()) return row.label;
    std::string out;
    for (const auto& [name, rad] : row.parameters) {
        if (!out.empty()) out += ';';
        out += name + '=' + format_number(rad * 180.0 / kPi);
    }
    return out;
}

std::string render_csv(std::span<const ScenarioResult> rows) {
    std::string out = "param,value,closed_form,abs_error\n";
    for (const auto& r : rows) {
        out += param_label(r);
        out += ',' + format_number(r.value) + ',';
        if (r.closed_form) out += format_number(*r.closed_form);
        out += ',';
        if (auto e = r.abs_error()) out += format_number(*e);
        out += '\n';
    }
    return out;
}

std::string render_json(std::span<const ScenarioResult> rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["param"] = param_label(r);
        o["value"] = r.value;
        o["closed_form"] = r.closed_form ? nlohmann::ordered_json(*r.closed_form) : nlohmann::ordered_json(nullptr);
        const auto e = r.abs_error();
        o["abs_error"] = e ? nlohmann::ordered_json(*e) : nlohmann::ordered_json(nullptr);
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + '\n';
}

std::vector<ScenarioResult> parse_csv(std::string_view text) {
    std::vector<ScenarioResult> rows;
    int line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line_no == 1) {
            if (line != "param,value,closed_form,abs_error") throw ParseError(line_no, "expected the CSV header");
            continue;
        }
        if (line.empty()) continue;

        std::vector<std::string_view> cells;
        for (std::size_t start = 0;;) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (cells.size() != 4) throw ParseError(line_no, "expected 4 columns");
        ScenarioResult r;
        r.observable = "table";
        r.label = std::string(cells[0]);
        const auto value = read_number(cells[1]);
        if (!value) throw ParseError(line_no, "value is not a number");
        r.value = *value;
        if (!cells[2].empty()) {
            r.closed_form = read_number(cells[2]);
            if (!r.closed_form) throw ParseError(line_no, "closed_form is not a number");
        }
        rows.push_back(std::move(r));
    }
    if (line_no == 0) throw ParseError(1, "empty table");
    return rows;
}

std::string render(std::span<const ScenarioResult> rows, OutputFormat format) {
    return format == OutputFormat::json ? render_json(rows) : render_csv(rows);
}

bool row_passes(const ScenarioResult& row, double tolerance) {
    const auto e = row.abs_error();
    if (!e) return true;
    const double tol = row.tolerance ? std::min(*row.tolerance, tolerance) : tolerance;
    return *e <= tol;
}

int check_rows(std::span<const ScenarioResult> rows, double tolerance) {
    const bool ok = std::all_of(rows.begin(), rows.end(), [&](const auto& r) { return row_passes(r, tolerance); });
    return ok ? exit_ok : exit_check_failed;
}

std::vector<ScenarioResult> selfcheck_table() {
    std::vector<ScenarioResult> rows;
    const auto deltas = delta_grid();
    const double base = 0.3;

    double err = 0.0;
    for (double d : deltas) err = std::max(err, fig1_coincidence(base + d, base).abs_error().value());
    rows.push_back(criterion("c01_fig1_sin2_law_max_error", err, 0.0, 1e-12));

    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    err = 0.0;
    for (int i = 0; i < 16; ++i) err = std::max(err, std::abs(fig1_conditional_check(angle(rng)) - 0.5));
    rows.push_back(criterion("c02_conditional_singles_max_error", err, 0.0, 1e-12));

    const double peak_e = pdc_coincidence(StateKind::psi_e, kPi / 2.0, 0.0).value;
    const double peak_u = pdc_coincidence(StateKind::psi_u, kPi / 2.0, 0.0).value;
    err = 0.0;
    for (double d : deltas) {
        const double ce = pdc_coincidence(StateKind::psi_e, base + d, base).value / peak_e;
        const double cu = pdc_coincidence(StateKind::psi_u, base + d, base).value / peak_u;
        err = std::max(err, std::abs(ce - cu));
    }
    rows.push_back(criterion("c03_pdc_shape_max_difference", err, 0.0, 1e-9));
    rows.push_back(criterion("c03_pdc_psi_e_peak", peak_e, 0.5, 1e-12));
    rows.push_back(criterion("c03_pdc_psi_u_peak", peak_u, 0.25, 1e-12));

    err = 0.0;
    for (double d : deltas) err = std::max(err, cascade_coincidence({}, base + d, base).abs_error().value());
    rows.push_back(criterion("c04_cascade_cos2_law_max_error", err, 0.0, 1e-12));

    double err_u = 0.0, max_e = 0.0;
    for (double d : deltas) {
        err_u = std::max(err_u, fig2_split_coincidence(StateKind::psi_u, base + d, base).abs_error().value());
        max_e = std::max(max_e, std::abs(fig2_split_coincidence(StateKind::psi_e, base + d, base).value));
    }
    rows.push_back(criterion("c05_fig2_psi_u_cos2_law_max_error", err_u, 0.0, 1e-12));
    rows.push_back(criterion("c05_fig2_psi_e_max_rate", max_e, 0.0, 1e-12));

    rows.push_back(criterion("c06_fig3_psi_u_visibility", fig3_visibility(StateKind::psi_u).value, 1.0, 1e-3));
    rows.push_back(criterion("c06_fig3_psi_e_visibility", fig3_visibility(StateKind::psi_e).value, 0.0, 1e-3));

    const FockKet psi_e = named_state(StateKind::psi_e);
    const FockKet psi_u = named_state(StateKind::psi_u);
    const complex overlap = inner(psi_e, psi_u);
    rows.push_back(criterion("c07_overlap_psi_e_psi_u_real", overlap.real(), 1.0 / std::sqrt(2.0), 1e-12));
    rows.push_back(criterion("c07_overlap_psi_e_psi_u_imag", overlap.imag(), 0.0, 1e-12));
    rows.push_back(criterion("c07_same_mode_remainder_norm2",
                             norm2(add(psi_u, psi_e, 1.0, -1.0 / std::sqrt(2.0))), 0.5, 1e-12));

    const double r2 = 1.0 / std::sqrt(2.0);
    const complex i{0.0, 1.0};
    const LinearForm b1 = composite_form(1), b2 = composite_form(2);
    const LinearForm create_a = r2 * (b1 + i * b2);
    const LinearForm create_b = r2 * (b1 - i * b2);
    const FockKet product = apply_form_dagger(apply_form_dagger(vacuum(), create_b), create_a);
    const FockKet diff = add(product, psi_u, 1.0, -1.0);
    double amp_err = 0.0;
    for (const auto& [occ, a] : diff.amplitudes()) amp_err = std::max(amp_err, std::abs(a));
    rows.push_back(criterion("c08_factorized_psi_u_max_amplitude_error", amp_err, 0.0, 1e-12));
    rows.push_back(criterion("c08_mode_commutator", std::abs(form_commutator(create_a, create_b)), 0.0, 1e-14));

    const auto c = canonical_chsh_angles();
    const double s_circ = chsh_S(StateKind::circular_pair, c.a, c.a_prime, c.b, c.b_prime);
    const double s_e = chsh_S(StateKind::psi_e, c.a, c.a_prime, c.b, c.b_prime);
    const double s_u = chsh_S(StateKind::psi_u, c.a, c.a_prime, c.b, c.b_prime);
    const double tsirelson = 2.0 * std::sqrt(2.0);
    rows.push_back(criterion("c09_chsh_abs_S_circular_pair", std::abs(s_circ), tsirelson, 1e-9));
    rows.push_back(criterion("c09_chsh_abs_S_psi_e", std::abs(s_e), tsirelson, 1e-9));
    rows.push_back(criterion("c09_chsh_abs_S_psi_u", std::abs(s_u), tsirelson, 1e-9));
    rows.push_back(criterion("c09_chsh_S_psi_e_minus_psi_u", std::abs(s_e - s_u), 0.0, 1e-9));

    rows.push_back(criterion("c10_same_channel_psi_u_ch1", same_channel_probability(StateKind::psi_u, 1), 0.25, 1e-12));
    rows.push_back(criterion("c10_same_channel_psi_u_ch2", same_channel_probability(StateKind::psi_u, 2), 0.25, 1e-12));
    rows.push_back(criterion("c10_same_channel_psi_e_ch1", same_channel_probability(StateKind::psi_e, 1), 0.0, 1e-12));
    rows.push_back(criterion("c10_same_channel_psi_e_ch2", same_channel_probability(StateKind::psi_e, 2), 0.0, 1e-12));
    const double total = same_channel_probability(StateKind::circular_pair, 1) +
                         same_channel_probability(StateKind::circular_pair, 2) +
                         split_probability(StateKind::circular_pair);
    rows.push_back(criterion("c10_circular_pair_outcome_total", total, 1.0, 1e-12));
    return rows;
}

}  // namespace pairsim
