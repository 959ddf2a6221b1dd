/**
 * @file fock.hpp
 * @brief Sparse bosonic Fock-space algebra.
 *
 * States are stored in the number basis: a FockKet maps an occupation
 * vector to its complex amplitude, with the sqrt(n!) ladder factors already
 * folded in. Operators that detectors and fields need are linear
 * combinations of annihilators (LinearForm).
 */

#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pairsim {

using complex = std::complex<double>;

/// Amplitudes and coefficients below this magnitude are dropped after arithmetic.
inline constexpr double kPruneEpsilon = 1e-14;
/// Norms below this are treated as the zero state.
inline constexpr double kZeroEpsilon = 1e-12;

enum class Polarization : std::uint8_t { none, v, h };
enum class Frequency : std::uint8_t { none, w1, w2 };

/**
 * Label of a single bosonic mode.
 *
 * channel is the propagation direction (wave vector k_1, k_2, ...), 0 for
 * source modes that carry no channel. composite is non-zero only for the
 * composite modes b_1, b_2 of the un-entangled pair state.
 */
struct ModeId {
    int channel = 0;
    Polarization pol = Polarization::none;
    Frequency freq = Frequency::none;
    int composite = 0;

    auto operator<=>(const ModeId&) const = default;
    bool operator==(const ModeId&) const = default;
};

std::string to_string(const ModeId& m);

namespace modes {
/// Mode with polarization `p` travelling in `channel`.
constexpr ModeId channel_mode(int channel, Polarization p) { return {channel, p, Frequency::none, 0}; }
/// Polarized mode of the two-frequency cascade source.
constexpr ModeId cascade_mode(Frequency f, Polarization p) { return {0, p, f, 0}; }
/// Composite mode b_1 or b_2.
constexpr ModeId composite_mode(int which) { return {0, Polarization::none, Frequency::none, which}; }
}  // namespace modes

/// Occupation numbers in canonical form: sorted by ModeId, zero counts omitted.
class Occupation {
  public:
    using Entry = std::pair<ModeId, unsigned>;

    Occupation() = default;
    Occupation(std::initializer_list<Entry> entries);

    unsigned count(const ModeId& m) const;
    /// Returns a copy with the count of `m` shifted by `delta`; the result must stay >= 0.
    Occupation shifted(const ModeId& m, int delta) const;
    unsigned total() const;
    std::span<const Entry> entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    auto operator<=>(const Occupation&) const = default;
    bool operator==(const Occupation&) const = default;

  private:
    std::vector<Entry> entries_;
};

std::string to_string(const Occupation& occ);

class ZeroState : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Linear combination sum_m c_m b_m of annihilation operators.
class LinearForm {
  public:
    LinearForm() = default;
    LinearForm(std::initializer_list<std::pair<ModeId, complex>> terms);

    static LinearForm unit(const ModeId& m) { return LinearForm{{m, complex{1.0}}}; }

    complex coefficient(const ModeId& m) const;
    const std::map<ModeId, complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Sum of |c_m|^2.
    double weight() const;

    LinearForm& add_term(const ModeId& m, complex c);
    LinearForm& operator+=(const LinearForm& other);
    LinearForm& operator-=(const LinearForm& other);
    LinearForm& operator*=(complex s);

    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator*(LinearForm a, complex s) { return a *= s; }
    friend LinearForm operator*(complex s, LinearForm a) { return a *= s; }
    friend LinearForm operator*(double s, LinearForm a) { return a *= complex{s}; }
    friend LinearForm operator*(LinearForm a, double s) { return a *= complex{s}; }

  private:
    std::map<ModeId, complex> terms_;
};

std::string to_string(const LinearForm& f);

/// Pure state in the number basis; amplitudes include ladder factors.
class FockKet {
  public:
    using Map = std::map<Occupation, complex>;

    FockKet() = default;

    complex amplitude(const Occupation& occ) const;
    const Map& amplitudes() const { return amps_; }
    bool is_zero() const { return amps_.empty(); }
    std::size_t size() const { return amps_.size(); }

    /// Accumulates `a` onto `occ`, pruning the entry if it cancels.
    FockKet& accumulate(const Occupation& occ, complex a);

    FockKet& operator+=(const FockKet& other);
    FockKet& operator*=(complex s);
    friend FockKet operator*(complex s, FockKet k) { return k *= s; }
    friend FockKet operator*(double s, FockKet k) { return k *= complex{s}; }

  private:
    Map amps_;
};

std::string to_string(const FockKet& k);

FockKet vacuum();
FockKet create(const FockKet& ket, const ModeId& m);
FockKet annihilate(const FockKet& ket, const ModeId& m);

/// sum_m c_m b_m |ket>.
FockKet apply_form(const FockKet& ket, const LinearForm& form);
/// sum_m c_m b_m^dagger |ket>; coefficients are used as given, not conjugated.
FockKet apply_form_dagger(const FockKet& ket, const LinearForm& form);

/// <a|b>, conjugate-linear in `a`.
complex inner(const FockKet& a, const FockKet& b);
double norm2(const FockKet& ket);
/// Throws ZeroState when norm2(ket) <= kZeroEpsilon.
FockKet normalize(const FockKet& ket);
/// alpha*a + beta*b.
FockKet add(const FockKet& a, const FockKet& b, complex alpha = 1.0, complex beta = 1.0);

/// <ket| L_1^dag ... L_k^dag L_k ... L_1 |ket>; forms applied right-to-left.
double normal_ordered_expectation(const FockKet& ket, std::span<const LinearForm> forms);
double normal_ordered_expectation(const FockKet& ket, std::initializer_list<LinearForm> forms);

/// [sum f_m b_m, sum conj(g_m) b_m^dag] = sum_m f_m conj(g_m).
complex form_commutator(const LinearForm& f, const LinearForm& g);

enum class StateKind { circular_pair, psi_e, psi_u, psi_u_prime };

std::string_view to_string(StateKind kind);
/// Throws std::invalid_argument on unknown names.
StateKind parse_state_kind(std::string_view name);

/// Basis in which the un-entangled PDC pair is written.
enum class CompositeBasis {
    /// b_1, b_2 expanded over the channel modes v1, h1, v2, h2.
    channel,
    /// b_1, b_2 kept as standalone composite modes.
    composite,
};

/**
 * Operator b_1 or b_2 in the requested basis.
 *
 * In the channel basis b_1 = (b_v1 + b_h2)/sqrt2 and b_2 = (b_v2 - b_h1)/sqrt2.
 */
LinearForm composite_form(int which, CompositeBasis basis = CompositeBasis::channel);

/**
 * The two-photon source states:
 *  - circular_pair: (1/2)(b_v^dag b_v^dag + b_h^dag b_h^dag)|0>, modes in channel 2
 *  - psi_e: (1/sqrt2)(b_v1^dag b_h2^dag - b_v2^dag b_h1^dag)|0>
 *  - psi_u: (1/2)(b_1^dag b_1^dag + b_2^dag b_2^dag)|0>
 *  - psi_u_prime: (1/sqrt2)(b_w1h^dag b_w2h^dag + b_w1v^dag b_w2v^dag)|0>
 */
FockKet named_state(StateKind kind, CompositeBasis basis = CompositeBasis::channel);

}  // namespace pairsim
