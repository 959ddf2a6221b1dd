#include <doctest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "pairsim/fock.hpp"

using namespace pairsim;
using modes::channel_mode;

namespace {

const ModeId V = channel_mode(2, Polarization::v);
const ModeId H = channel_mode(2, Polarization::h);
const ModeId v1 = channel_mode(1, Polarization::v), h1 = channel_mode(1, Polarization::h);
const ModeId v2 = channel_mode(2, Polarization::v), h2 = channel_mode(2, Polarization::h);
const double r2 = 1.0 / std::sqrt(2.0);

double max_amplitude_difference(const FockKet& a, const FockKet& b) {
    double worst = 0.0;
    for (const auto& [occ, x] : add(a, b, 1.0, -1.0).amplitudes()) worst = std::max(worst, std::abs(x));
    return worst;
}

FockKet random_ket(std::mt19937_64& rng, const std::vector<ModeId>& modes, int photons) {
    std::normal_distribution<double> g;
    oracle::DenseSpace space(modes, photons);
    FockKet k;
    for (int i = 0; i < space.dim(); ++i)
        if (space.total_photons(i) == photons) k.accumulate(space.occupation(i), complex{g(rng), g(rng)});
    return k;
}

}  // namespace

TEST_SUITE("fock") {
    TEST_CASE("occupation canonical form") {
        const Occupation a{{H, 1}, {V, 2}};
        const Occupation b{{V, 2}, {H, 1}, {v1, 0}};
        CHECK(a == b);
        CHECK(a.total() == 3);
        CHECK(a.count(v1) == 0);
        CHECK(a.shifted(H, -1) == Occupation{{V, 2}});
        CHECK_THROWS_AS((void)a.shifted(v1, -1), std::logic_error);
    }

    TEST_CASE("vacuum") {
        CHECK(norm2(vacuum()) == doctest::Approx(1.0));
        CHECK(annihilate(vacuum(), V).is_zero());
        const FockKet one = create(vacuum(), V);
        CHECK(one.amplitude(Occupation{{V, 1}}) == complex{1.0});
        CHECK(one.size() == 1);
    }

    TEST_CASE("ladder factors") {
        const FockKet two = create(create(vacuum(), V), V);
        CHECK(std::abs(two.amplitude(Occupation{{V, 2}}) - std::sqrt(2.0)) < 1e-15);
        CHECK(norm2(two) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(create(FockKet{}, V).is_zero());
        CHECK(max_amplitude_difference(annihilate(create(vacuum(), V), V), vacuum()) < 1e-15);
    }

    TEST_CASE("n factorial law") {
        FockKet k = vacuum();
        double factorial = 1.0;
        for (int n = 1; n <= 6; ++n) {
            k = create(k, H);
            factorial *= n;
            CHECK(std::abs(norm2(k) - factorial) < 1e-12 * factorial);
        }
    }

    TEST_CASE("annihilating one photon of the circular pair") {
        // (1/2)(b_v^dag b_v^dag + b_h^dag b_h^dag)|0> -> b_v gives (1/2) * 2 |1_v> = |1_v>.
        const FockKet pair = named_state(StateKind::circular_pair);
        const FockKet after = annihilate(pair, V);
        CHECK(norm2(after) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(after.amplitude(Occupation{{V, 1}}) - 1.0) < 1e-15);
    }

    TEST_CASE("apply_form reproduces the conditional state") {
        const FockKet pair = named_state(StateKind::circular_pair);
        const double t = 0.7;
        const LinearForm bare{{V, std::cos(t)}, {H, -std::sin(t)}};
        const FockKet with_prefactor = apply_form(pair, r2 * bare);
        CHECK(std::abs(with_prefactor.amplitude(Occupation{{V, 1}}) - r2 * std::cos(t)) < 1e-15);
        CHECK(std::abs(with_prefactor.amplitude(Occupation{{H, 1}}) + r2 * std::sin(t)) < 1e-15);
        CHECK(norm2(apply_form(pair, bare)) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(apply_form(pair, LinearForm{}).is_zero());
    }

    TEST_CASE("apply_form_dagger builds the circular pair") {
        const LinearForm plus{{V, 1.0}, {H, complex{0.0, 1.0}}};
        const LinearForm minus{{V, 1.0}, {H, complex{0.0, -1.0}}};
        const FockKet built = 0.5 * apply_form_dagger(apply_form_dagger(vacuum(), minus), plus);
        CHECK(norm2(built) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(max_amplitude_difference(built, named_state(StateKind::circular_pair)) < 1e-15);
        CHECK(apply_form_dagger(FockKet{}, plus).is_zero());
    }

    TEST_CASE("inner products") {
        CHECK(inner(vacuum(), vacuum()) == complex{1.0});
        CHECK(inner(create(vacuum(), V), create(vacuum(), H)) == complex{});
        const FockKet a = complex{0.0, 2.0} * create(vacuum(), V);
        const FockKet b = create(vacuum(), V);
        CHECK(std::abs(inner(a, b) - complex{0.0, -2.0}) < 1e-15);
        CHECK(std::abs(inner(b, a) - complex{0.0, 2.0}) < 1e-15);
    }

    TEST_CASE("normalize and add") {
        const FockKet psi = named_state(StateKind::psi_e);
        CHECK(max_amplitude_difference(normalize(2.0 * psi), psi) < 1e-15);
        CHECK(add(psi, psi, 1.0, -1.0).is_zero());
        CHECK_THROWS_AS((void)normalize(FockKet{}), ZeroState);
        CHECK_THROWS_AS((void)normalize(1e-8 * psi), ZeroState);
    }

    TEST_CASE("normal ordered expectation") {
        const FockKet pair = named_state(StateKind::circular_pair);
        const double t1 = 0.4, t2 = -1.1;
        const LinearForm b1{{V, std::cos(t1)}, {H, -std::sin(t1)}};
        const LinearForm b2{{H, std::cos(t2)}, {V, std::sin(t2)}};
        const double bare = normal_ordered_expectation(pair, {b1, b2});
        CHECK(std::abs(bare - std::pow(std::sin(t1 - t2), 2)) < 1e-14);
        const double scaled = normal_ordered_expectation(pair, {r2 * b1, r2 * b2});
        CHECK(std::abs(scaled - 0.25 * std::pow(std::sin(t1 - t2), 2)) < 1e-14);
        CHECK(std::abs(normal_ordered_expectation(pair, {b2, b1}) - bare) < 1e-14);
        // theta2 = theta1
        CHECK(normal_ordered_expectation(pair, {b1, LinearForm{{H, std::cos(t1)}, {V, std::sin(t1)}}}) < 1e-28);
    }

    TEST_CASE("form commutator") {
        const LinearForm f{{v1, 1.0}};
        const LinearForm g{{v2, 1.0}};
        CHECK(form_commutator(f, f) == complex{1.0});
        CHECK(form_commutator(f, g) == complex{});
        const LinearForm b1 = composite_form(1), b2 = composite_form(2);
        const complex i{0.0, 1.0};
        CHECK(std::abs(form_commutator(r2 * (b1 + i * b2), r2 * (b1 - i * b2))) < 1e-15);
        CHECK(std::abs(form_commutator(b1, b2)) < 1e-15);
        CHECK(std::abs(form_commutator(b1, b1) - 1.0) < 1e-15);
    }

    TEST_CASE("named states") {
        const FockKet e = named_state(StateKind::psi_e);
        CHECK(std::abs(e.amplitude(Occupation{{v1, 1}, {h2, 1}}) - r2) < 1e-15);
        CHECK(std::abs(e.amplitude(Occupation{{v2, 1}, {h1, 1}}) + r2) < 1e-15);
        CHECK(e.size() == 2);

        const FockKet c = named_state(StateKind::circular_pair);
        CHECK(std::abs(c.amplitude(Occupation{{V, 2}}) - r2) < 1e-15);
        CHECK(std::abs(c.amplitude(Occupation{{H, 2}}) - r2) < 1e-15);

        for (auto kind : {StateKind::circular_pair, StateKind::psi_e, StateKind::psi_u, StateKind::psi_u_prime}) {
            CAPTURE(to_string(kind));
            CHECK(std::abs(norm2(named_state(kind)) - 1.0) < 1e-12);
            CHECK(std::abs(norm2(named_state(kind, CompositeBasis::composite)) - 1.0) < 1e-12);
            CHECK(parse_state_kind(to_string(kind)) == kind);
        }
        CHECK_THROWS_AS(parse_state_kind("psi_x"), std::invalid_argument);

        const FockKet u = named_state(StateKind::psi_u, CompositeBasis::composite);
        CHECK(std::abs(u.amplitude(Occupation{{modes::composite_mode(1), 2}}) - r2) < 1e-15);
        CHECK(std::abs(u.amplitude(Occupation{{modes::composite_mode(2), 2}}) - r2) < 1e-15);
    }

    TEST_CASE("un-entangled state factorizes") {
        const complex i{0.0, 1.0};
        for (auto basis : {CompositeBasis::channel, CompositeBasis::composite}) {
            const LinearForm b1 = composite_form(1, basis), b2 = composite_form(2, basis);
            const LinearForm a = r2 * (b1 + i * b2);
            const LinearForm b = r2 * (b1 - i * b2);
            const FockKet product = apply_form_dagger(apply_form_dagger(vacuum(), b), a);
            CHECK(max_amplitude_difference(product, named_state(StateKind::psi_u, basis)) < 1e-12);
        }
    }

    TEST_CASE("un-entangled state decomposes onto psi_e plus same-mode pairs") {
        const FockKet e = named_state(StateKind::psi_e);
        const FockKet u = named_state(StateKind::psi_u);
        CHECK(std::abs(inner(e, u) - r2) < 1e-12);
        const FockKet rest = add(u, e, 1.0, -r2);
        CHECK(std::abs(norm2(rest) - 0.5) < 1e-12);
        for (const auto& [occ, a] : rest.amplitudes()) {
            CAPTURE(to_string(occ));
            CHECK(occ.entries().size() == 1);  // no mixed two-mode occupations
            CHECK(std::abs(a - 0.25 * std::sqrt(2.0)) < 1e-12);
        }
        CHECK(rest.size() == 4);
    }

    TEST_CASE("ladder adjointness and commuting annihilators (randomized)") {
        std::mt19937_64 rng(7);
        const std::vector<ModeId> modes{v1, h1, v2, h2};
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 50; ++trial) {
            const FockKet x = random_ket(rng, modes, 1);
            const FockKet y = random_ket(rng, modes, 2);
            for (const auto& m : modes) CHECK(std::abs(inner(create(x, m), y) - inner(x, annihilate(y, m))) < 1e-12);
            LinearForm f, h;
            for (const auto& m : modes) {
                f.add_term(m, {g(rng), g(rng)});
                h.add_term(m, {g(rng), g(rng)});
            }
            const FockKet fh = apply_form(apply_form(y, f), h);
            const FockKet hf = apply_form(apply_form(y, h), f);
            CHECK(max_amplitude_difference(fh, hf) < 1e-12);
        }
    }
}
