#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pduforge/analysis.hpp"
#include "pduforge/circuit.hpp"
#include "pduforge/errors.hpp"
#include "test_support.hpp"

using namespace pduforge;
using namespace pduforge::analysis;
using fock::OccupationVector;
using pduforge::testing::cplx;

TEST_CASE("extract_logical maps dual-rail terms to bit strings") {
    const auto reg = testing::make_registry(4);
    const fock::StateVector psi(reg, {{OccupationVector{1, 0, 1, 0}, cplx{0, -1}}});
    const auto l = extract_logical(psi, {{{0, 1}, {2, 3}}});
    CHECK(l.qubits == 2);
    CHECK(l.amplitude("00") == cplx{0, -1});
    CHECK(l.leakage == 0.0);
    CHECK(l.amplitude("11") == cplx{0, 0});

    const fock::StateVector mixed(reg, {{OccupationVector{0, 1, 1, 0}, cplx{0.6, 0}}, {OccupationVector{1, 1, 0, 0}, cplx{0, 0.8}}});
    const auto m = extract_logical(mixed, {{{0, 1}, {2, 3}}});
    CHECK(m.amplitude("10") == cplx{0.6, 0});
    CHECK(m.leakage == doctest::Approx(0.64));
    CHECK(m.logical_probability() == doctest::Approx(0.36));

    const auto vac = extract_logical(fock::vacuum(reg), {{{0, 1}, {2, 3}}});
    CHECK(vac.leakage == 1.0);
    CHECK(vac.amplitudes.empty());
}

TEST_CASE("leakage of a lossy PDU") {
    circuit::Netlist n;
    for (const char* label : {"p", "s", "i", "s_alt", "i_alt"}) n.registry.add(label, fock::Band::Pump);
    n.components = {{circuit::Source{0}}, {circuit::Pdu{0, 1, 2, std::nullopt, {0.81, 1, 1}}}};
    const auto l = extract_logical(circuit::simulate(n).final_state, {{{1, 3}, {2, 4}}});
    CHECK(l.leakage == doctest::Approx(0.19).epsilon(1e-12));
    CHECK(std::norm(l.amplitude("00")) == doctest::Approx(0.81).epsilon(1e-12));
}

TEST_CASE("fidelity") {
    const auto bell = target_ghz(2, 0);
    CHECK(fidelity(bell, bell) == doctest::Approx(1.0));
    LogicalState rotated = bell;
    for (auto& [k, a] : rotated.amplitudes) a *= std::polar(1.0, 0.7);
    CHECK(fidelity(bell, rotated) == doctest::Approx(1.0));
    LogicalState zero;
    zero.qubits = 2;
    zero.amplitudes["00"] = 1.0;
    CHECK(fidelity(zero, bell) == doctest::Approx(0.5));
    CHECK_THROWS_AS(fidelity(zero, target_ghz(3, 0)), DimensionMismatch);

    const auto reg = testing::make_registry(2);
    const fock::StateVector a(reg, {{OccupationVector{1, 0}, cplx{1, 0}}});
    const fock::StateVector b(reg, {{OccupationVector{1, 0}, cplx{0, 1}}});
    CHECK(fidelity(a, b) == doctest::Approx(1.0));
}

TEST_CASE("targets") {
    const double h = 1 / std::sqrt(2.0);
    const auto g = target_ghz(2, 0);
    CHECK(g.amplitudes.size() == 2);
    CHECK(std::abs(g.amplitude("00") - h) < 1e-15);
    CHECK(std::abs(g.amplitude("11") - h) < 1e-15);
    const auto g4 = target_ghz(4, std::numbers::pi);
    CHECK(std::abs(g4.amplitude("1111") + h) < 1e-15);
    CHECK_THROWS_AS(target_ghz(1, 0), InvalidArgument);

    const auto c = target_cluster4();
    CHECK(c.amplitude("0000") == cplx{0.5, 0});
    CHECK(c.amplitude("0011") == cplx{0.5, 0});
    CHECK(c.amplitude("1100") == cplx{0.5, 0});
    CHECK(c.amplitude("1111") == cplx{-0.5, 0});
    CHECK(c.logical_probability() == doctest::Approx(1.0));
}

TEST_CASE("photon number distribution") {
    const auto reg = testing::make_registry(2);
    const fock::StateVector psi(reg, {{OccupationVector{1, 0}, cplx{0.6, 0}}, {OccupationVector{1, 1}, cplx{0, 0.8}}});
    const auto d = photon_number_distribution(psi);
    REQUIRE(d.size() == 2);
    CHECK(d.at(1) == doctest::Approx(0.36));
    CHECK(d.at(2) == doctest::Approx(0.64));
    const auto chain = photon_number_distribution(circuit::simulate(circuit::build_fock_chain(2)).final_state);
    REQUIRE(chain.size() == 1);
    CHECK(chain.at(4) == doctest::Approx(1.0));
}
