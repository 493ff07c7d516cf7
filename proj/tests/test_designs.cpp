#include <catch2/catch_amalgamated.hpp>

#include "qdv/designs.hpp"
#include "qdv/rng.hpp"
#include "qdv/stabilizer.hpp"
#include "test_util.hpp"

using namespace qdv;
using qdv::test::clifford;
using qdv::test::space;
using qdv::test::sp_table;

TEST_CASE("haar minima", "[designs]") {
    REQUIRE(gamma_haar(1, 2) == 1);
    REQUIRE(gamma_haar(2, 2) == 2);
    REQUIRE(gamma_haar(3, 2) == 5);
    REQUIRE(gamma_haar(4, 2) == 14);  // Catalan numbers at d = 2
    REQUIRE(gamma_haar(3, 8) == 6);
    REQUIRE(gamma_haar(4, 4) == 24);
    REQUIRE(gamma_supported(4, 3) == false);
    REQUIRE_THROWS_AS(gamma_haar(4, 3), UnsupportedGammaError);
}

TEST_CASE("set frame potential", "[designs]") {
    // A single identity at d=2, t=2: |tr I|^4 = 16.
    std::vector<cmat> single{cmat::Identity(2, 2)};
    REQUIRE(frame_potential_set(single, 2) == Catch::Approx(16.0).margin(1e-12));

    REQUIRE(frame_potential_set(clifford(2).unitaries(), 3) ==
            Catch::Approx(5.0).margin(1e-9));
    REQUIRE(frame_potential_set(clifford(3).unitaries(), 3) ==
            Catch::Approx(7.0).margin(1e-9));
    REQUIRE(frame_potential_set(clifford(2).unitaries(), 4) ==
            Catch::Approx(15.0).margin(1e-9));
}

TEST_CASE("group frame potential", "[designs]") {
    const auto& table = clifford(3);
    auto lookup = [&](std::size_t i, std::size_t j) {
        return table
            .index_of(induced_symplectic(table.unitary(i) * table.unitary(j), table.pauli()))
            .has_value();
    };
    const double group_form = frame_potential_group(table.unitaries(), 3, lookup);
    REQUIRE(group_form == Catch::Approx(7.0).margin(1e-9));
    // Single-sum and double-sum forms agree on a group.
    REQUIRE(group_form ==
            Catch::Approx(frame_potential_set(table.unitaries(), 3)).margin(1e-6));

    // A non-closed set trips the spot check.
    std::vector<cmat> not_closed{table.unitary(1), table.unitary(2)};
    auto reject = [](std::size_t, std::size_t) { return false; };
    REQUIRE_THROWS_AS(frame_potential_group(not_closed, 2, reject), ContractError);
}

TEST_CASE("exact group potential from integer traces", "[designs]") {
    const auto tsq = clifford(2).trace_sq_integers();
    REQUIRE(frame_potential_group_exact(tsq, 3) == Rational::of(5, 1));
    REQUIRE(frame_potential_group_exact(tsq, 4) == Rational::of(15, 1));
    REQUIRE(frame_potential_group_exact(tsq, 2) == Rational::of(2, 1));
}

TEST_CASE("orbit counting on tuples", "[designs]") {
    auto perms21 = sp_vector_permutations(space(2, 1), sp_table(2, 1).generators());
    REQUIRE(frame_potential_orbit_count(perms21, 4, 2) == 2);
    REQUIRE(frame_potential_orbit_count(perms21, 4, 3) == 5);

    auto perms32 = sp_vector_permutations(space(3, 2), sp_generators(space(3, 2)));
    REQUIRE(frame_potential_orbit_count(perms32, 81, 3) == 8);

    auto perms23 = sp_vector_permutations(space(2, 3), sp_generators(space(2, 3)));
    REQUIRE(frame_potential_orbit_count(perms23, 64, 3) == 6);

    REQUIRE_THROWS_AS(frame_potential_orbit_count(perms23, 64, 4, /*cap=*/1000),
                      SizeLimitError);
}

TEST_CASE("three potential routes agree", "[designs]") {
    for (std::uint32_t d : {2u, 3u}) {
        const auto& s = space(d, 1);
        const auto& sp = sp_table(d, 1);
        const auto perms = sp_vector_permutations(s, sp.generators());
        for (std::uint32_t t = 2; t <= 4; ++t) {
            const Rational exact = frame_potential_fixed_points(s, sp.elements(), t);
            REQUIRE(frame_potential_orbit_count(perms, s.num_vectors(), t) ==
                    exact.as_integer());
            const double direct = frame_potential_set(clifford(d).unitaries(), t);
            REQUIRE(std::abs(direct - exact.value()) < 1e-6);
        }
    }
}

TEST_CASE("symmetric projector", "[designs]") {
    for (auto [d, t] : {std::pair{2u, 3u}, {3u, 2u}, {2u, 4u}}) {
        const cmat proj = symmetric_projector(d, t);
        REQUIRE((proj * proj - proj).norm() < 1e-12);
        REQUIRE((proj - proj.adjoint()).norm() < 1e-12);
        REQUIRE(std::llround(proj.trace().real()) ==
                static_cast<long long>(binomial(d + t - 1, t)));
    }
}

TEST_CASE("twirl of an irreducible group at t=1 is the depolarizer", "[designs]") {
    Rng rng(19);
    const cmat a = rng.gaussian_matrix(2, 2);
    const cmat twirled = twirl(clifford(2).unitaries(), 1, a);
    const cmat want = a.trace() / 2.0 * cmat::Identity(2, 2);
    REQUIRE((twirled - want).norm() < 1e-10);
}

TEST_CASE("twirl is a projection and matches the coset path", "[designs]") {
    Rng rng(29);
    for (std::uint32_t d : {2u, 3u}) {
        const auto& table = clifford(d);
        const cmat a = rng.gaussian_matrix(d * d * d, d * d * d);
        const cmat direct = twirl(table.unitaries(), 3, a);
        const cmat coset = twirl_clifford(table, 3, a);
        REQUIRE((direct - coset).norm() < 1e-9 * a.norm());
        const cmat twice = twirl_clifford(table, 3, direct);
        REQUIRE((twice - direct).norm() < 1e-8 * a.norm());
    }
}

TEST_CASE("twirl commutant property at d=2 and its failure at d=3", "[designs]") {
    Rng rng(31);
    const cmat a2 = rng.gaussian_matrix(8, 8);
    const cmat t2 = twirl_clifford(clifford(2), 3, a2);
    for (int i = 0; i < 5; ++i) {
        Rng vr(100 + i);
        const cmat v3 = tensor_power(vr.haar_unitary(2), 3);
        REQUIRE((t2 * v3 - v3 * t2).norm() < 1e-8 * a2.norm());
    }
    // d=3 is not a 3-design: a seeded witness violates the commutant.
    const cmat a3 = rng.gaussian_matrix(27, 27);
    const cmat t3 = twirl_clifford(clifford(3), 3, a3);
    Rng vr(200);
    const cmat v3 = tensor_power(vr.haar_unitary(3), 3);
    REQUIRE((t3 * v3 - v3 * t3).norm() / a3.norm() > 1e-3);
}

TEST_CASE("projective design checks", "[designs]") {
    // One state cannot average to I/2.
    std::vector<cvec> one{cvec::Unit(2, 0)};
    REQUIRE_FALSE(projective_design_check(one, 1, false).pass);

    // The six single-qubit stabilizer states form a 3-design with frame
    // potential 1/C(4,3) = 1/4.
    PauliAlgebra pauli(SymplecticSpace(2, 1));
    const auto states = enumerate_stabilizer_states(pauli);
    std::vector<cvec> vecs;
    for (const auto& st : states) vecs.push_back(st.vec);
    const auto report = projective_design_check(vecs, 3, true);
    REQUIRE(report.pass);
    REQUIRE(*report.frame_potential == Catch::Approx(0.25).epsilon(1e-12));

    // Non-normalized input is rejected.
    std::vector<cvec> bad{2.0 * cvec::Unit(2, 0)};
    REQUIRE_THROWS_AS(projective_design_check(bad, 1), std::invalid_argument);
}

TEST_CASE("minimal 3-design size", "[designs]") {
    REQUIRE(min_3design_size(2) == 20);
    REQUIRE(min_3design_size(4) == 1712);
    REQUIRE(min_3design_size(3) == 270);  // 9 (81 - 27 + 6) / 2
}

TEST_CASE("design strength and monotonicity", "[designs]") {
    const std::vector<Rational> d2 = {Rational::of(1, 1), Rational::of(2, 1),
                                      Rational::of(5, 1), Rational::of(15, 1)};
    REQUIRE(design_strength(d2, 2, 4) == 3);
    const std::vector<Rational> d3 = {Rational::of(1, 1), Rational::of(2, 1),
                                      Rational::of(7, 1)};
    REQUIRE(design_strength(d3, 3, 3) == 2);
    const std::vector<Rational> d8 = {Rational::of(1, 1), Rational::of(2, 1),
                                      Rational::of(6, 1), Rational::of(30, 1)};
    REQUIRE(design_strength(d8, 8, 4) == 3);

    // Monotone property: strength t means every lower order also attains
    // the Haar minimum.
    for (std::uint32_t t = 1; t <= 3; ++t)
        REQUIRE(d2[t - 1] == Rational::of(gamma_haar(t, 2), 1));
}
