#include "pairsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace pairsim {

namespace {

const char* pol_name(Polarization p) {
    switch (p) {
        case Polarization::v: return "v";
        case Polarization::h: return "h";
        case Polarization::none: break;
    }
    return "";
}

bool negligible(complex a) { return std::abs(a) < kPruneEpsilon; }

std::string format_complex(complex c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", c.real(), c.imag());
    return buf;
}

}  // namespace

std::string to_string(const ModeId& m) {
    std::string out = "b";
    if (m.composite != 0) return out + std::to_string(m.composite);
    if (m.freq != Frequency::none) out += m.freq == Frequency::w1 ? "_w1" : "_w2";
    out += '_';
    out += pol_name(m.pol);
    if (m.channel != 0) out += std::to_string(m.channel);
    return out;
}

// ---------------------------------------------------------------------------
// Occupation

Occupation::Occupation(std::initializer_list<Entry> entries) {
    for (const auto& [m, n] : entries) {
        if (n != 0) *this = shifted(m, static_cast<int>(n));
    }
}

unsigned Occupation::count(const ModeId& m) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), m,
                               [](const Entry& e, const ModeId& key) { return e.first < key; });
    return (it != entries_.end() && it->first == m) ? it->second : 0u;
}

Occupation Occupation::shifted(const ModeId& m, int delta) const {
    Occupation out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), m,
                               [](const Entry& e, const ModeId& key) { return e.first < key; });
    const bool present = it != out.entries_.end() && it->first == m;
    const int current = present ? static_cast<int>(it->second) : 0;
    const int next = current + delta;
    if (next < 0) throw std::logic_error("negative occupation for " + to_string(m));
    if (next == 0) {
        if (present) out.entries_.erase(it);
    } else if (present) {
        it->second = static_cast<unsigned>(next);
    } else {
        out.entries_.insert(it, {m, static_cast<unsigned>(next)});
    }
    return out;
}

unsigned Occupation::total() const {
    unsigned n = 0;
    for (const auto& e : entries_) n += e.second;
    return n;
}

std::string to_string(const Occupation& occ) {
    if (occ.empty()) return "|0>";
    std::string out = "|";
    bool first = true;
    for (const auto& [m, n] : occ.entries()) {
        if (!first) out += ',';
        first = false;
        out += to_string(m) + ':' + std::to_string(n);
    }
    return out + '>';
}

// ---------------------------------------------------------------------------
// LinearForm

LinearForm::LinearForm(std::initializer_list<std::pair<ModeId, complex>> terms) {
    for (const auto& [m, c] : terms) add_term(m, c);
}

complex LinearForm::coefficient(const ModeId& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? complex{} : it->second;
}

double LinearForm::weight() const {
    double w = 0.0;
    for (const auto& [m, c] : terms_) w += std::norm(c);
    return w;
}

LinearForm& LinearForm::add_term(const ModeId& m, complex c) {
    auto& slot = terms_[m];
    slot += c;
    if (negligible(slot)) terms_.erase(m);
    return *this;
}

LinearForm& LinearForm::operator+=(const LinearForm& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

LinearForm& LinearForm::operator*=(complex s) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        it = negligible(it->second) ? terms_.erase(it) : std::next(it);
    }
    return *this;
}

std::string to_string(const LinearForm& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        if (!out.empty()) out += " + ";
        out += format_complex(c) + to_string(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// FockKet

complex FockKet::amplitude(const Occupation& occ) const {
    auto it = amps_.find(occ);
    return it == amps_.end() ? complex{} : it->second;
}

FockKet& FockKet::accumulate(const Occupation& occ, complex a) {
    auto [it, inserted] = amps_.try_emplace(occ, a);
    if (!inserted) it->second += a;
    if (negligible(it->second)) amps_.erase(it);
    return *this;
}

FockKet& FockKet::operator+=(const FockKet& other) {
    for (const auto& [occ, a] : other.amps_) accumulate(occ, a);
    return *this;
}

FockKet& FockKet::operator*=(complex s) {
    for (auto it = amps_.begin(); it != amps_.end();) {
        it->second *= s;
        it = negligible(it->second) ? amps_.erase(it) : std::next(it);
    }
    return *this;
}

std::string to_string(const FockKet& k) {
    if (k.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [occ, a] : k.amplitudes()) {
        if (!first) out << " + ";
        first = false;
        out << format_complex(a) << to_string(occ);
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Operators

FockKet vacuum() {
    FockKet k;
    k.accumulate(Occupation{}, 1.0);
    return k;
}

FockKet create(const FockKet& ket, const ModeId& m) {
    FockKet out;
    for (const auto& [occ, a] : ket.amplitudes()) {
        const unsigned n = occ.count(m);
        out.accumulate(occ.shifted(m, +1), a * std::sqrt(static_cast<double>(n + 1)));
    }
    return out;
}

FockKet annihilate(const FockKet& ket, const ModeId& m) {
    FockKet out;
    for (const auto& [occ, a] : ket.amplitudes()) {
        const unsigned n = occ.count(m);
        if (n == 0) continue;
        out.accumulate(occ.shifted(m, -1), a * std::sqrt(static_cast<double>(n)));
    }
    return out;
}

FockKet apply_form(const FockKet& ket, const LinearForm& form) {
    FockKet out;
    for (const auto& [occ, a] : ket.amplitudes()) {
        for (const auto& [m, c] : form.terms()) {
            const unsigned n = occ.count(m);
            if (n == 0) continue;
            out.accumulate(occ.shifted(m, -1), c * a * std::sqrt(static_cast<double>(n)));
        }
    }
    return out;
}

FockKet apply_form_dagger(const FockKet& ket, const LinearForm& form) {
    FockKet out;
    for (const auto& [occ, a] : ket.amplitudes()) {
        for (const auto& [m, c] : form.terms()) {
            const unsigned n = occ.count(m);
            out.accumulate(occ.shifted(m, +1), c * a * std::sqrt(static_cast<double>(n + 1)));
        }
    }
    return out;
}

complex inner(const FockKet& a, const FockKet& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    complex acc{};
    for (const auto& [occ, amp] : small.amplitudes()) {
        const complex other = large.amplitude(occ);
        if (other == complex{}) continue;
        acc += (&small == &a) ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return acc;
}

double norm2(const FockKet& ket) {
    double s = 0.0;
    for (const auto& [occ, a] : ket.amplitudes()) s += std::norm(a);
    return s;
}

FockKet normalize(const FockKet& ket) {
    const double n2 = norm2(ket);
    if (n2 <= kZeroEpsilon) throw ZeroState("cannot normalize a zero state");
    FockKet out = ket;
    out *= complex{1.0 / std::sqrt(n2)};
    return out;
}

FockKet add(const FockKet& a, const FockKet& b, complex alpha, complex beta) {
    FockKet out = a;
    out *= alpha;
    for (const auto& [occ, amp] : b.amplitudes()) out.accumulate(occ, beta * amp);
    return out;
}

double normal_ordered_expectation(const FockKet& ket, std::span<const LinearForm> forms) {
    FockKet k = ket;
    for (const auto& f : forms) {
        k = apply_form(k, f);
        if (k.is_zero()) return 0.0;
    }
    return norm2(k);
}

double normal_ordered_expectation(const FockKet& ket, std::initializer_list<LinearForm> forms) {
    return normal_ordered_expectation(ket, std::span<const LinearForm>(forms.begin(), forms.size()));
}

complex form_commutator(const LinearForm& f, const LinearForm& g) {
    complex acc{};
    for (const auto& [m, c] : f.terms()) acc += c * std::conj(g.coefficient(m));
    return acc;
}

// ---------------------------------------------------------------------------
// Named states

std::string_view to_string(StateKind kind) {
    switch (kind) {
        case StateKind::circular_pair: return "circular_pair";
        case StateKind::psi_e: return "psi_e";
        case StateKind::psi_u: return "psi_u";
        case StateKind::psi_u_prime: return "psi_u_prime";
    }
    return "?";
}

StateKind parse_state_kind(std::string_view name) {
    for (auto k : {StateKind::circular_pair, StateKind::psi_e, StateKind::psi_u, StateKind::psi_u_prime}) {
        if (name == to_string(k)) return k;
    }
    throw std::invalid_argument("unknown state kind '" + std::string(name) + "'");
}

LinearForm composite_form(int which, CompositeBasis basis) {
    if (which != 1 && which != 2) throw std::invalid_argument("composite mode index must be 1 or 2");
    if (basis == CompositeBasis::composite) return LinearForm::unit(modes::composite_mode(which));

    using modes::channel_mode;
    const double s = 1.0 / std::sqrt(2.0);
    if (which == 1) {
        return LinearForm{{channel_mode(1, Polarization::v), s}, {channel_mode(2, Polarization::h), s}};
    }
    return LinearForm{{channel_mode(2, Polarization::v), s}, {channel_mode(1, Polarization::h), -s}};
}

FockKet named_state(StateKind kind, CompositeBasis basis) {
    using modes::cascade_mode;
    using modes::channel_mode;
    const double r2 = 1.0 / std::sqrt(2.0);
    const FockKet vac = vacuum();

    switch (kind) {
        case StateKind::circular_pair: {
            const ModeId v = channel_mode(2, Polarization::v);
            const ModeId h = channel_mode(2, Polarization::h);
            return 0.5 * add(create(create(vac, v), v), create(create(vac, h), h));
        }
        case StateKind::psi_e: {
            const auto v1 = channel_mode(1, Polarization::v), h1 = channel_mode(1, Polarization::h);
            const auto v2 = channel_mode(2, Polarization::v), h2 = channel_mode(2, Polarization::h);
            return r2 * add(create(create(vac, h2), v1), create(create(vac, h1), v2), 1.0, -1.0);
        }
        case StateKind::psi_u: {
            const LinearForm b1 = composite_form(1, basis);
            const LinearForm b2 = composite_form(2, basis);
            return 0.5 * add(apply_form_dagger(apply_form_dagger(vac, b1), b1),
                             apply_form_dagger(apply_form_dagger(vac, b2), b2));
        }
        case StateKind::psi_u_prime: {
            const auto w1h = cascade_mode(Frequency::w1, Polarization::h);
            const auto w2h = cascade_mode(Frequency::w2, Polarization::h);
            const auto w1v = cascade_mode(Frequency::w1, Polarization::v);
            const auto w2v = cascade_mode(Frequency::w2, Polarization::v);
            return r2 * add(create(create(vac, w2h), w1h), create(create(vac, w2v), w1v));
        }
    }
    throw std::invalid_argument("unknown state kind");
}

}  // namespace pairsim
