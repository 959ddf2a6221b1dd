/**
 * @file detection.hpp
 * @brief Photodetection observables for ideal detectors.
 *
 * Every rate here is a normally-ordered expectation value in dimensionless
 * units (field constant B = 1).
 */

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pairsim/fock.hpp"
#include "pairsim/jones.hpp"

namespace pairsim {

/// <L^dag L>.
double singles_rate(const FockKet& ket, const LinearForm& form);

/// <L1^dag L2^dag L2 L1>; symmetric in the two forms.
double coincidence_rate(const FockKet& ket, const LinearForm& first, const LinearForm& second);

/// L|ket>, optionally normalized (throws ZeroState if nothing survives).
FockKet conditional_state(const FockKet& ket, const LinearForm& form, bool normalized = false);

/**
 * Ordered sum over p, p' in {v, h} of <L_p^dag L_p'^dag L_p' L_p> for the
 * two polarization components of one channel. For a two-photon state the
 * probability that both photons land in the channel is half this value.
 */
double same_channel_double_rate(const FockKet& ket, const ChannelField& field);

/// Ordered sum over p in channel a, p' in channel b of the pair coincidence rates.
double cross_channel_rate(const FockKet& ket, const ChannelField& a, const ChannelField& b);

struct FieldContribution {
    LinearForm form;
    complex amplitude;
};

/// <L^dag L> for L = sum_i amplitude_i * form_i.
double intensity_at(const FockKet& ket, std::span<const FieldContribution> contributions);

enum class BeamKind { plane_wave, gaussian };

/// Transverse amplitude f(x, y) = amplitude * exp(i (tilt x + phase_offset)) [* exp(-(x^2+y^2)/width^2)].
struct BeamProfile {
    BeamKind kind = BeamKind::plane_wave;
    double tilt = 0.0;
    double width = 1.0;
    double phase_offset = 0.0;
    double amplitude = 1.0;

    complex at(double x, double y) const;
    bool operator==(const BeamProfile&) const = default;
};

/// Rectangular sample lattice. A single sample along an axis sits at its lower bound.
struct Grid {
    double x_min = -1.0;
    double x_max = 1.0;
    int nx = 101;
    double y_min = 0.0;
    double y_max = 0.0;
    int ny = 1;

    double x(int i) const;
    double y(int j) const;
    bool operator==(const Grid&) const = default;
};

/// Opposite-tilt, equal-amplitude plane waves giving four fringes across the default grid.
std::pair<BeamProfile, BeamProfile> default_beams();

class AllDark : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct IntensityMap {
    Grid grid;
    std::pair<BeamProfile, BeamProfile> beams;
    /// Row-major, values[j * nx + i] at (x(i), y(j)).
    std::vector<double> values;

    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.nx + i]; }
};

/**
 * Single-detector intensity over the plane where two beams overlap.
 * `channel_forms` are the detector operators carried by beam 1 and beam 2.
 * Throws std::invalid_argument for an empty or non-finite grid.
 */
IntensityMap intensity_map(const FockKet& ket, const std::pair<LinearForm, LinearForm>& channel_forms,
                           const std::pair<BeamProfile, BeamProfile>& beams, const Grid& grid = {});

/// (max - min) / (max + min). Throws AllDark if max + min <= kZeroEpsilon.
double visibility(const IntensityMap& map);

}  // namespace pairsim
