#include <doctest.h>

#include <numbers>
#include <random>

#include "pduforge/analysis.hpp"
#include "pduforge/circuit.hpp"
#include "pduforge/errors.hpp"
#include "test_support.hpp"

using namespace pduforge;
using namespace pduforge::circuit;
using fock::Band;
using fock::OccupationVector;
using pduforge::testing::cplx;
using std::numbers::pi;

namespace {

Netlist single_pdu(const optics::PduParams& params) {
    Netlist n;
    n.registry.add("p", Band::Pump);
    n.registry.add("s", Band::Pump);
    n.registry.add("i", Band::Pump);
    n.components = {{Source{0}}, {Pdu{0, 1, 2, std::nullopt, params}}};
    return n;
}

bool residuals_empty(const SimulationReport& report, const OccupationVector& occ) {
    for (std::size_t m : report.residual_modes)
        if (occ[m] != 0) return false;
    return true;
}

/// Random cascade of `pdus` PDUs: each one consumes a random live pump-band path.
Netlist random_cascade(std::mt19937_64& rng, std::size_t pdus, std::vector<optics::PduParams>& params_out) {
    std::uniform_real_distribution<double> eta(0.05, 1.0);
    Netlist n;
    std::vector<std::size_t> live{n.registry.add("root", Band::Pump)};
    n.components.push_back({Source{0}});
    for (std::size_t k = 0; k < pdus; ++k) {
        const std::size_t pick = rng() % live.size();
        const std::size_t in = live[pick];
        live.erase(live.begin() + static_cast<long>(pick));
        const std::size_t a = n.registry.add("x" + std::to_string(k) + "a", Band::Pump);
        const std::size_t b = n.registry.add("x" + std::to_string(k) + "b", Band::Pump);
        const optics::PduParams p{eta(rng), eta(rng), eta(rng)};
        params_out.push_back(p);
        n.components.push_back({Pdu{in, a, b, std::nullopt, p}});
        live.push_back(a);
        live.push_back(b);
    }
    return n;
}

}  // namespace

TEST_CASE("simulate: single PDU and empty netlist") {
    const auto report = simulate(single_pdu({}));
    REQUIRE(report.final_state.size() == 1);
    OccupationVector expected(report.final_state.mode_count());
    expected.set(1, 1);
    expected.set(2, 1);
    CHECK(report.final_state.amplitude(expected) == cplx{0, -1});
    CHECK(report.success_probability == 1.0);
    CHECK(report.residual_modes.size() == 3);

    Netlist empty;
    empty.registry.add("p", Band::Pump);
    const auto vac = simulate(empty, [](const OccupationVector&) { return true; });
    CHECK(vac.success_probability == 1.0);
    CHECK(vac.final_state.amplitude(OccupationVector{0}) == cplx{1, 0});

    const auto half = simulate(single_pdu({0.5, 1.0, 1.0}),
                               [](const OccupationVector& o) { return o[1] == 1 && o[2] == 1; });
    CHECK(half.success_probability == doctest::Approx(0.5).epsilon(1e-14));
    REQUIRE(half.postselected_state.has_value());
    CHECK(std::abs(fock::norm(*half.postselected_state) - 1.0) < 1e-14);
}

TEST_CASE("Fock chain doubles the photon number per stage") {
    for (unsigned m = 1; m <= 4; ++m) {
        const auto net = build_fock_chain(m);
        CHECK(net.pdu_count() == (1u << m) - 1);
        CHECK(validate(net).empty());
        const auto report = simulate(net);
        REQUIRE(report.final_state.size() == 1);
        const auto& [occ, amp] = *report.final_state.terms().begin();
        CHECK(occ.total() == (1u << m));
        CHECK(std::abs(std::abs(amp) - 1.0) < 1e-12);
        // (-i)^(2^M - 1)
        cplx phase{1, 0};
        for (unsigned k = 0; k + 1 < (1u << m); ++k) phase *= cplx{0, -1};
        CHECK(std::abs(amp - phase) < 1e-12);
        for (std::size_t mode = net.registry.size() - (1u << m); mode < net.registry.size(); ++mode) CHECK(occ[mode] == 1);
    }
    CHECK_THROWS_AS(build_fock_chain(0), InvalidArgument);
    CHECK_THROWS_AS(build_fock_chain(7), InvalidArgument);
    CHECK_NOTHROW(build_fock_chain(7, {}, 7));
}

TEST_CASE("Fock chain at six stages stays a single term") {
    const auto report = simulate(build_fock_chain(6));
    CHECK(report.final_state.size() == 1);
    CHECK(report.final_state.terms().begin()->first.total() == 64);
}

TEST_CASE("GHZ builder") {
    for (unsigned m : {1u, 2u, 3u}) {
        for (double phi : {0.0, pi / 2, pi, 1.1}) {
            const auto net = build_ghz(m, phi);
            CHECK(validate(net).empty());
            const auto report = simulate(net);
            CHECK(report.final_state.size() == 2);
            for (const auto& [occ, amp] : report.final_state.terms()) CHECK(std::abs(std::abs(amp) - 1 / std::sqrt(2.0)) < 1e-12);
            const auto logical = analysis::extract_logical(report.final_state, {net.encoding});
            CHECK(logical.leakage == 0.0);
            CHECK(analysis::fidelity(logical, analysis::target_ghz(1u << m, phi)) > 1 - 1e-10);
        }
    }
    SUBCASE("phi = 0 and phi = pi are orthogonal") {
        const auto net0 = build_ghz(2, 0.0);
        const auto a = analysis::extract_logical(simulate(net0).final_state, {net0.encoding});
        const auto net1 = build_ghz(2, pi);
        const auto b = analysis::extract_logical(simulate(net1).final_state, {net1.encoding});
        CHECK(analysis::fidelity(a, b) < 1e-24);
    }
    SUBCASE("the two branches occupy complementary rails") {
        const auto net = build_ghz(2, 0.3);
        const auto report = simulate(net);
        auto it = report.final_state.terms().begin();
        const auto first = it->first;
        const auto second = (++it)->first;
        for (const auto& pair : net.encoding) {
            CHECK(first[pair.rail0] + second[pair.rail0] == 1);
            CHECK(first[pair.rail1] + second[pair.rail1] == 1);
        }
    }
}

TEST_CASE("cluster4 builder reaches the target with the default phases") {
    const auto net = build_cluster4();
    CHECK(net.pdu_count() == 6);
    CHECK(validate(net).empty());
    const auto report = simulate(net, [&net](const OccupationVector& o) {
        for (const auto& p : net.encoding)
            if (o[p.rail0] + o[p.rail1] != 1) return false;
        return true;
    });
    CHECK(report.success_probability == doctest::Approx(1.0).epsilon(1e-12));
    const auto logical = analysis::extract_logical(report.final_state, {net.encoding});
    CHECK(logical.leakage == 0.0);
    CHECK(analysis::fidelity(logical, analysis::target_cluster4()) >= 0.999);
    CHECK(analysis::fidelity(logical, analysis::target_cluster4()) == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("the phases matter") {
        ClusterPhases off;
        off.phi2 = pi / 4;
        const auto bad = build_cluster4(off);
        const auto l = analysis::extract_logical(simulate(bad).final_state, {bad.encoding});
        CHECK(analysis::fidelity(l, analysis::target_cluster4()) < 0.9);
    }
}

TEST_CASE("all-converted probability is the product of efficiencies") {
    std::mt19937_64 rng(314);
    for (std::size_t k = 1; k <= 4; ++k) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<optics::PduParams> params;
            const auto net = random_cascade(rng, k, params);
            double oracle = 1.0;
            for (const auto& p : params) oracle *= p.eta_pdc * p.eta_puc_s * p.eta_puc_i;

            SimulationReport report = simulate(net);
            const auto predicate = [&report](const OccupationVector& o) { return residuals_empty(report, o); };
            const auto conditioned = simulate(net, predicate);
            CHECK(std::abs(conditioned.success_probability - oracle) < 1e-12);
            CHECK(conditioned.final_state.terms().begin()->first.size() == net.registry.size() + 3 * k);
        }
    }
}

TEST_CASE("simulate is deterministic and prune-insensitive") {
    const auto net = build_cluster4({}, {0.9, 0.8, 0.95});
    const auto a = simulate(net);
    const auto b = simulate(net);
    REQUIRE(a.final_state.size() == b.final_state.size());
    auto ib = b.final_state.terms().begin();
    for (const auto& [occ, amp] : a.final_state.terms()) {
        CHECK(occ == ib->first);
        CHECK(amp == ib->second);  // bit-identical
        ++ib;
    }

    for (const auto& circuit : {build_cluster4({}, {0.9, 0.8, 0.95}), build_ghz(2, 0.7, {0.6, 0.7, 0.8}),
                                build_fock_chain(2, {0.5, 0.9, 0.9})}) {
        const auto pruned = simulate(circuit).final_state;
        const auto exact = simulate(circuit, {}, {fock::kDefaultMaxOccupation, 0.0}).final_state;
        CHECK(std::abs(analysis::fidelity(pruned, exact) - 1.0) < 1e-12);
    }
}

TEST_CASE("validate reports diagnostics by component index") {
    CHECK(validate(build_fock_chain(2)).empty());

    SUBCASE("pdu input reused downstream") {
        auto net = single_pdu({});
        net.components.push_back({Phase{0, 0.1}});
        const auto d = validate(net);
        REQUIRE(d.size() == 1);
        CHECK(d[0].kind == DiagnosticKind::TopologyViolation);
        CHECK(d[0].component == 2);
        CHECK(d[0].to_string().starts_with("TopologyViolation@2"));
        CHECK_THROWS_AS(simulate(net), InvalidNetlist);
    }
    SUBCASE("undeclared mode") {
        auto net = single_pdu({});
        net.components.push_back({Crosser{1, 9}});
        const auto d = validate(net);
        REQUIRE(d.size() == 1);
        CHECK(d[0].kind == DiagnosticKind::UnknownMode);
        CHECK(d[0].component == 2);
    }
    SUBCASE("pdu output already in use upstream") {
        auto net = single_pdu({});
        net.components.insert(net.components.begin() + 1, Component{Phase{2, 0.3}});
        const auto d = validate(net);
        REQUIRE(d.size() == 1);
        CHECK(d[0].kind == DiagnosticKind::TopologyViolation);
        CHECK(d[0].component == 2);
    }
    SUBCASE("band and parameter checks") {
        Netlist net;
        net.registry.add("p", Band::Signal);
        net.registry.add("s", Band::Pump);
        net.registry.add("i", Band::Pump);
        net.components = {{Pdu{0, 1, 2, std::nullopt, {1.5, 1, 1}}}, {BeamSplitter{1, 2, {2.0}}}, {BeamSplitter{1, 1, {}}}};
        const auto d = validate(net);
        std::vector<DiagnosticKind> kinds;
        for (const auto& x : d) kinds.push_back(x.kind);
        CHECK(std::count(kinds.begin(), kinds.end(), DiagnosticKind::InvalidParameter) == 2);
        CHECK(std::count(kinds.begin(), kinds.end(), DiagnosticKind::BandMismatch) == 1);
        CHECK(std::count(kinds.begin(), kinds.end(), DiagnosticKind::DuplicateMode) == 1);
    }
    SUBCASE("encoding problems") {
        auto net = single_pdu({});
        net.encoding = {{1, 2}, {2, 7}};
        const auto d = validate(net);
        CHECK(d.size() == 2);
    }
}

TEST_CASE("element failures carry the component index") {
    auto net = single_pdu({});
    net.components.insert(net.components.begin(), Component{Source{0}});
    net.components[0].line = 12;
    try {
        simulate(net);
        FAIL("expected a simulation error");
    } catch (const SimulationError& e) {
        CHECK(e.component() == 2);
        CHECK(std::string(e.what()).find("2 photons") != std::string::npos);
    }
}
