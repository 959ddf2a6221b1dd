/**
 * @file jones.hpp
 * @brief Heisenberg-picture propagation of polarized channel fields.
 *
 * A ChannelField is the positive-frequency field of one channel written as
 * A+ = (L_v e_v + L_h e_h) * phase, where L_v and L_h are linear forms over
 * source-mode annihilators. Optical elements act on the (v, h) pair.
 */

#pragma once

#include <array>
#include <utility>

#include "pairsim/fock.hpp"

namespace pairsim {

struct ChannelField {
    LinearForm v;
    LinearForm h;
    int channel = 0;
    complex phase{1.0};

    /// Field (L_v, L_h) with unit phase.
    static ChannelField of(LinearForm v, LinearForm h, int channel) {
        return ChannelField{std::move(v), std::move(h), channel, complex{1.0}};
    }
    /// Empty field, used for an unilluminated splitter port.
    static ChannelField vacuum_port(int channel) { return ChannelField{{}, {}, channel, complex{1.0}}; }

    /// Components with the propagation phase folded in.
    LinearForm v_effective() const { return v * phase; }
    LinearForm h_effective() const { return h * phase; }
    double weight() const { return v.weight() + h.weight(); }
};

/// 2x2 matrix acting on column (v, h).
struct JonesMatrix {
    std::array<std::array<complex, 2>, 2> m{};

    static JonesMatrix identity() { return {{{{complex{1.0}, complex{}}, {complex{}, complex{1.0}}}}}; }

    complex operator()(int r, int c) const { return m[r][c]; }
    JonesMatrix adjoint() const;
    friend JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b);
    /// Largest elementwise deviation from the identity of J J^dag.
    double unitarity_defect() const;
};

/// Half-wave plate with fast axis at `axis_angle` from vertical:
/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
JonesMatrix hwp(double axis_angle);

ChannelField apply_jones(const ChannelField& f, const JonesMatrix& j);

class SplitterPortError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Lossless 50/50 splitter: outputs ((a + b)/sqrt2, (a - b)/sqrt2).
 *
 * Output channel tags are taken from the inputs. Each input's propagation
 * phase is folded into its components before mixing, so outputs carry unit
 * phase. Throws SplitterPortError if both inputs share a channel tag.
 */
std::pair<ChannelField, ChannelField> beamsplitter_5050(const ChannelField& a, const ChannelField& b);

/// Ideal absorbing analyzer at angle `theta` from vertical; returns the
/// detector operator cos(theta) L_v + sin(theta) L_h, times the phase.
LinearForm polarizer(const ChannelField& f, double theta);

ChannelField phase_shift(const ChannelField& f, double phi);
ChannelField mirror(const ChannelField& f);

/// Keeps only terms whose mode carries frequency tag `freq` (ideal spectral filter).
ChannelField frequency_filter(const ChannelField& f, Frequency freq);

}  // namespace pairsim
