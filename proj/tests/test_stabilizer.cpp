#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "qdv/rng.hpp"
#include "qdv/stabilizer.hpp"
#include "test_util.hpp"

using namespace qdv;
using qdv::test::clifford;
using qdv::test::space;

TEST_CASE("lagrangian subspace counts", "[stabilizer]") {
    // prod_{k=1..n} (p^k + 1); the enumeration checks this internally too.
    REQUIRE(enumerate_lagrangians(space(2, 1)).size() == 3);
    REQUIRE(enumerate_lagrangians(space(2, 2)).size() == 15);
    REQUIRE(enumerate_lagrangians(space(3, 1)).size() == 4);

    // At (2,1) the three isotropic lines are spanned by (1,0), (0,1), (1,1).
    const auto lines = enumerate_lagrangians(space(2, 1));
    std::set<std::uint32_t> spans;
    for (const auto& sub : lines) {
        REQUIRE(sub.basis.size() == 1);
        spans.insert(sub.basis[0]);
    }
    REQUIRE(spans == std::set<std::uint32_t>{1, 2, 3});
}

TEST_CASE("lagrangian count at three qubits", "[stabilizer][slow]") {
    REQUIRE(enumerate_lagrangians(space(2, 3)).size() == 135);
}

TEST_CASE("stabilizer state counts and eigenvector property", "[stabilizer]") {
    PauliAlgebra p21(SymplecticSpace(2, 1));
    const auto s1 = enumerate_stabilizer_states(p21);
    REQUIRE(s1.size() == 6);  // X, Y, Z eigenbases

    PauliAlgebra p22(SymplecticSpace(2, 2));
    REQUIRE(enumerate_stabilizer_states(p22).size() == 60);

    PauliAlgebra p31(SymplecticSpace(3, 1));
    REQUIRE(enumerate_stabilizer_states(p31).size() == 12);

    // The six qubit states are exactly the eigenbases: pairwise overlaps are
    // 0, 1, or 1/2 in squared modulus.
    for (const auto& a : s1)
        for (const auto& b : s1) {
            const double ov = std::norm(a.vec.dot(b.vec));
            const bool ok = std::abs(ov) < 1e-9 || std::abs(ov - 1.0) < 1e-9 ||
                            std::abs(ov - 0.5) < 1e-9;
            REQUIRE(ok);
        }
}

TEST_CASE("three-qubit stabilizer states", "[stabilizer][slow]") {
    PauliAlgebra p23(SymplecticSpace(2, 3));
    const auto states = enumerate_stabilizer_states(p23);
    REQUIRE(states.size() == 1080);
}

TEST_CASE("qubit stabilizer set: 3-design but not 4-design", "[stabilizer]") {
    PauliAlgebra pauli(SymplecticSpace(2, 1));
    const auto states = enumerate_stabilizer_states(pauli);
    std::vector<cvec> vecs;
    for (const auto& st : states) vecs.push_back(st.vec);
    for (std::uint32_t t = 1; t <= 3; ++t) REQUIRE(projective_design_check(vecs, t).pass);

    const auto t4 = projective_design_check(vecs, 4, true);
    REQUIRE_FALSE(t4.pass);
    // Frozen regression value: (6 + 24/16)/36 = 5/24 for the fourth moment,
    // above the Haar value 1/C(5,4) = 1/5.
    REQUIRE(*t4.frame_potential == Catch::Approx(5.0 / 24.0).epsilon(1e-10));
    REQUIRE(*t4.frame_potential > t4.expected_frame_potential);
}

TEST_CASE("qutrit stabilizer set: 2-design but not 3-design", "[stabilizer]") {
    PauliAlgebra pauli(SymplecticSpace(3, 1));
    const auto states = enumerate_stabilizer_states(pauli);
    std::vector<cvec> vecs;
    for (const auto& st : states) vecs.push_back(st.vec);
    REQUIRE(projective_design_check(vecs, 2).pass);
    REQUIRE_FALSE(projective_design_check(vecs, 3).pass);
}

TEST_CASE("clifford orbits stay inside the stabilizer set", "[stabilizer]") {
    PauliAlgebra pauli(SymplecticSpace(2, 1));
    const auto states = enumerate_stabilizer_states(pauli);
    auto fingerprint = [](const cvec& v) {
        std::string key;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const long long re = std::llround(v(i).real() * 1e8);
            const long long im = std::llround(v(i).imag() * 1e8);
            key.append(reinterpret_cast<const char*>(&re), sizeof re);
            key.append(reinterpret_cast<const char*>(&im), sizeof im);
        }
        return key;
    };
    std::set<std::string> stab_set;
    for (const auto& st : states) stab_set.insert(fingerprint(canonicalize_state(st.vec)));
    for (const auto& st : states) {
        const auto orbit = clifford_orbit_states(clifford(2), st.vec);
        REQUIRE(orbit.size() == stab_set.size());
        for (const auto& v : orbit) REQUIRE(stab_set.contains(fingerprint(v)));
    }
}

TEST_CASE("random clifford orbits are 3-designs at d=2, not at d=3", "[stabilizer]") {
    const auto r2 = clifford_orbit_design_check(clifford(2), 42, 3);
    REQUIRE(r2.design.pass);

    // Contrast: a generic qutrit orbit passes t=2 and fails t=3.
    Rng rng(42);
    const cvec psi = rng.random_state(3);
    const auto orbit = clifford_orbit_states(clifford(3), psi);
    REQUIRE(projective_design_check(orbit, 2, false).pass);
    REQUIRE_FALSE(projective_design_check(orbit, 3, false).pass);
}

TEST_CASE("state canonicalization fixes the global phase", "[stabilizer]") {
    Rng rng(7);
    const cvec psi = rng.random_state(4);
    const cplx phase = std::exp(cplx(0, 1.234));
    const cvec a = canonicalize_state(psi);
    const cvec b = canonicalize_state((phase * psi).eval());
    REQUIRE((a - b).norm() < 1e-12);
}
