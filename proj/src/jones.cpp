#include "pairsim/jones.hpp"

#include <algorithm>
#include <cmath>

namespace pairsim {

JonesMatrix JonesMatrix::adjoint() const {
    JonesMatrix out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.m[r][c] = std::conj(m[c][r]);
    return out;
}

JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b) {
    JonesMatrix out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.m[r][c] = a.m[r][0] * b.m[0][c] + a.m[r][1] * b.m[1][c];
    return out;
}

double JonesMatrix::unitarity_defect() const {
    const JonesMatrix p = *this * adjoint();
    const JonesMatrix id = identity();
    double worst = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(p.m[r][c] - id.m[r][c]));
    return worst;
}

JonesMatrix hwp(double axis_angle) {
    const double c = std::cos(2.0 * axis_angle);
    const double s = std::sin(2.0 * axis_angle);
    return {{{{complex{c}, complex{s}}, {complex{s}, complex{-c}}}}};
}

ChannelField apply_jones(const ChannelField& f, const JonesMatrix& j) {
    ChannelField out = f;
    out.v = j(0, 0) * f.v + j(0, 1) * f.h;
    out.h = j(1, 0) * f.v + j(1, 1) * f.h;
    return out;
}

std::pair<ChannelField, ChannelField> beamsplitter_5050(const ChannelField& a, const ChannelField& b) {
    if (a.channel == b.channel) throw SplitterPortError("splitter inputs must be distinct channels");
    const double s = 1.0 / std::sqrt(2.0);
    const LinearForm av = a.v_effective(), ah = a.h_effective();
    const LinearForm bv = b.v_effective(), bh = b.h_effective();
    return {ChannelField::of(s * (av + bv), s * (ah + bh), a.channel),
            ChannelField::of(s * (av - bv), s * (ah - bh), b.channel)};
}

LinearForm polarizer(const ChannelField& f, double theta) {
    return (std::cos(theta) * f.v + std::sin(theta) * f.h) * f.phase;
}

ChannelField phase_shift(const ChannelField& f, double phi) {
    ChannelField out = f;
    out.phase *= std::polar(1.0, phi);
    return out;
}

ChannelField mirror(const ChannelField& f) {
    ChannelField out = f;
    out.phase = -out.phase;
    return out;
}

ChannelField frequency_filter(const ChannelField& f, Frequency freq) {
    auto keep = [freq](const LinearForm& in) {
        LinearForm out;
        for (const auto& [m, c] : in.terms())
            if (m.freq == freq) out.add_term(m, c);
        return out;
    };
    ChannelField out = f;
    out.v = keep(f.v);
    out.h = keep(f.h);
    return out;
}

}  // namespace pairsim
