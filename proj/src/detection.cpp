#include "pairsim/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pairsim {

double singles_rate(const FockKet& ket, const LinearForm& form) { return norm2(apply_form(ket, form)); }

double coincidence_rate(const FockKet& ket, const LinearForm& first, const LinearForm& second) {
    return normal_ordered_expectation(ket, {first, second});
}

FockKet conditional_state(const FockKet& ket, const LinearForm& form, bool normalized) {
    FockKet out = apply_form(ket, form);
    return normalized ? normalize(out) : out;
}

double same_channel_double_rate(const FockKet& ket, const ChannelField& field) {
    return cross_channel_rate(ket, field, field);
}

double cross_channel_rate(const FockKet& ket, const ChannelField& a, const ChannelField& b) {
    const LinearForm first[2] = {a.v_effective(), a.h_effective()};
    const LinearForm second[2] = {b.v_effective(), b.h_effective()};
    double total = 0.0;
    for (const auto& p : first)
        for (const auto& q : second) total += coincidence_rate(ket, p, q);
    return total;
}

double intensity_at(const FockKet& ket, std::span<const FieldContribution> contributions) {
    LinearForm total;
    for (const auto& c : contributions) total += c.form * c.amplitude;
    return singles_rate(ket, total);
}

complex BeamProfile::at(double x, double y) const {
    complex f = std::polar(amplitude, tilt * x + phase_offset);
    if (kind == BeamKind::gaussian) f *= std::exp(-(x * x + y * y) / (width * width));
    return f;
}

double Grid::x(int i) const { return nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1); }
double Grid::y(int j) const { return ny == 1 ? y_min : y_min + (y_max - y_min) * j / (ny - 1); }

std::pair<BeamProfile, BeamProfile> default_beams() {
    // Fringe period pi/k on [-1, 1]: k = 2 pi gives four fringes.
    const double k = 2.0 * std::numbers::pi;
    BeamProfile b1{BeamKind::plane_wave, +k, 1.0, 0.0, 1.0};
    BeamProfile b2{BeamKind::plane_wave, -k, 1.0, 0.0, 1.0};
    return {b1, b2};
}

IntensityMap intensity_map(const FockKet& ket, const std::pair<LinearForm, LinearForm>& channel_forms,
                           const std::pair<BeamProfile, BeamProfile>& beams, const Grid& grid) {
    if (grid.nx < 1 || grid.ny < 1) throw std::invalid_argument("intensity grid must have at least one point");
    if (!std::isfinite(grid.x_min) || !std::isfinite(grid.x_max) || !std::isfinite(grid.y_min) ||
        !std::isfinite(grid.y_max) || grid.x_max < grid.x_min || grid.y_max < grid.y_min)
        throw std::invalid_argument("intensity grid bounds must be finite and ordered");
    for (const auto* b : {&beams.first, &beams.second})
        if (b->kind == BeamKind::gaussian && !(b->width > 0.0))
            throw std::invalid_argument("gaussian beam width must be positive");

    IntensityMap map{grid, beams, {}};
    map.values.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const FieldContribution point[2] = {{channel_forms.first, beams.first.at(grid.x(i), grid.y(j))},
                                                {channel_forms.second, beams.second.at(grid.x(i), grid.y(j))}};
            map.values.push_back(intensity_at(ket, point));
        }
    }
    return map;
}

double visibility(const IntensityMap& map) {
    if (map.values.size() < 2) throw std::invalid_argument("visibility needs at least two samples");
    const auto [lo, hi] = std::minmax_element(map.values.begin(), map.values.end());
    const double sum = *hi + *lo;
    if (sum <= kZeroEpsilon) throw AllDark("intensity map is dark everywhere");
    return (*hi - *lo) / sum;
}

}  // namespace pairsim
