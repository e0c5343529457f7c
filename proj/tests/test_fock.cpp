#include <doctest.h>

#include <random>

#include "pduforge/errors.hpp"
#include "pduforge/fock.hpp"
#include "test_support.hpp"

using namespace pduforge;
using namespace pduforge::fock;
using pduforge::testing::cplx;
using pduforge::testing::make_registry;

TEST_CASE("vacuum has a single all-zero term") {
    const auto v3 = vacuum(make_registry(3));
    REQUIRE(v3.size() == 1);
    CHECK(v3.amplitude(OccupationVector{0, 0, 0}) == cplx{1.0, 0.0});

    const auto v1 = vacuum(make_registry(1));
    CHECK(v1.amplitude(OccupationVector{0}) == cplx{1.0, 0.0});
    CHECK(norm(v3) == 1.0);

    CHECK_THROWS_AS(vacuum(make_registry(0)), InvalidArgument);
}

TEST_CASE("create_photon") {
    const auto reg = make_registry(2);
    const auto one = create_photon(vacuum(reg), 0);
    CHECK(one.size() == 1);
    CHECK(one.amplitude(OccupationVector{1, 0}) == cplx{1.0, 0.0});

    const auto two = create_photon(one, 0);
    CHECK(two.size() == 1);
    CHECK(std::abs(two.amplitude(OccupationVector{2, 0}) - cplx{1.0, 0.0}) < 1e-15);

    SUBCASE("superposition weights follow sqrt(n+1) before renormalizing") {
        const StateVector psi(reg, {{OccupationVector{0, 0}, cplx{1 / std::sqrt(2.0), 0}},
                                    {OccupationVector{1, 0}, cplx{1 / std::sqrt(2.0), 0}}});
        const auto out = create_photon(psi, 0);
        // (|1,0> + sqrt2 |2,0>)/sqrt2 renormalized -> 1/sqrt3, sqrt(2/3)
        CHECK(std::abs(out.amplitude(OccupationVector{1, 0}).real() - 1 / std::sqrt(3.0)) < 1e-15);
        CHECK(std::abs(out.amplitude(OccupationVector{2, 0}).real() - std::sqrt(2.0 / 3.0)) < 1e-15);
    }

    SUBCASE("n_max is a hard limit") {
        const auto capped = create_photon(vacuum(reg, 1), 0);
        CHECK_THROWS_AS(create_photon(capped, 0), OccupancyOverflow);
    }
}

TEST_CASE("inner product") {
    const auto reg = make_registry(2);
    CHECK(inner_product(testing::basis_state(reg, {1, 0}), testing::basis_state(reg, {0, 1})) == cplx{});

    std::mt19937_64 rng(7);
    const auto reg3 = make_registry(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = testing::random_state(rng, reg3, 3, 3, 8);
        const auto b = testing::random_state(rng, reg3, 3, 3, 8);
        // Independent dense summation.
        cplx direct{};
        for (const auto& [occ, amp] : a.terms()) direct += std::conj(amp) * b.amplitude(occ);
        CHECK(std::abs(inner_product(a, b) - direct) < 1e-14);
        CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-15);
        CHECK(std::abs(inner_product(a, a) - cplx{1.0, 0.0}) < 1e-14);
    }

    CHECK_THROWS_AS(inner_product(vacuum(reg), vacuum(reg3)), RegistryMismatch);
}

TEST_CASE("norm, prune and extend_registry") {
    const auto reg = make_registry(2);
    const StateVector psi(reg, {{OccupationVector{1, 0}, cplx{0.6, 0}}, {OccupationVector{0, 1}, cplx{0, 0.8}}});
    CHECK(std::abs(norm(psi) - 1.0) < 1e-15);

    const auto same = prune(psi, 0.0);
    CHECK(same.size() == psi.size());
    CHECK(std::abs(inner_product(same, psi) - cplx{1.0, 0.0}) < 1e-15);

    const auto pruned = prune(psi, 0.7);
    REQUIRE(pruned.size() == 1);
    CHECK(std::abs(pruned.amplitude(OccupationVector{0, 1}) - cplx{0, 1}) < 1e-15);

    CHECK_THROWS_AS(prune(psi, 1.0), InvalidArgument);
    CHECK_THROWS_AS(prune(psi, -0.1), InvalidArgument);

    const auto wider = extend_registry(psi, {{"extra", Band::Residual}});
    CHECK(wider.mode_count() == 3);
    CHECK(wider.registry()[2].band == Band::Residual);
    CHECK(wider.amplitude(OccupationVector{1, 0, 0}) == cplx{0.6, 0});
    CHECK(wider.amplitude(OccupationVector{0, 1, 0}) == cplx{0, 0.8});
}

TEST_CASE("states drop sub-epsilon terms and reject bad input") {
    const auto reg = make_registry(2);
    const StateVector tiny(reg, {{OccupationVector{1, 0}, cplx{1.0, 0}}, {OccupationVector{0, 1}, cplx{1e-16, 0}}});
    CHECK(tiny.size() == 1);

    CHECK_THROWS_AS(StateVector(reg, {{OccupationVector{1, 0, 0}, cplx{1, 0}}}), RegistryMismatch);
    CHECK_THROWS_AS(StateVector(reg, {{OccupationVector{5, 0}, cplx{1, 0}}}), OccupancyOverflow);
    CHECK_THROWS_AS(StateVector(reg, {{OccupationVector{1, 0}, cplx{std::nan(""), 0}}}), InvalidArgument);
}

TEST_CASE("registry keeps contiguous indices and immutable bands") {
    ModeRegistry reg;
    CHECK(reg.add("a", Band::Pump) == 0);
    CHECK(reg.add("b", Band::Signal) == 1);
    CHECK(reg[1].index == 1);
    CHECK(reg[1].band == Band::Signal);
    CHECK(parse_band("idler") == Band::Idler);
    CHECK_FALSE(parse_band("blue").has_value());
}

TEST_CASE("sparse representation matches the dense oracle vector") {
    std::mt19937_64 rng(11);
    for (std::size_t modes = 1; modes <= 4; ++modes) {
        for (unsigned n_max = 1; n_max <= 3; ++n_max) {
            const auto reg = make_registry(modes);
            const auto psi = testing::random_state(rng, reg, n_max, n_max, 6);
            testing::DenseSpace space(modes, n_max);
            const auto dense = space.to_dense(psi);
            CHECK(std::abs(dense.norm() - norm(psi)) < 1e-12);
            for (const auto& [occ, amp] : psi.terms()) {
                std::size_t idx = 0, stride = 1;
                for (std::size_t m = 0; m < modes; ++m, stride *= n_max + 1) idx += occ[m] * stride;
                CHECK(std::abs(dense[static_cast<Eigen::Index>(idx)] - amp) < 1e-12);
            }
        }
    }
}
