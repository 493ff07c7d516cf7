#include <catch2/catch_amalgamated.hpp>

#include "qdv/pauli.hpp"
#include "qdv/rng.hpp"
#include "test_util.hpp"

using namespace qdv;
using qdv::test::space;

namespace {

const PauliAlgebra& algebra(std::uint32_t p, std::uint32_t n) {
    static std::map<std::pair<std::uint32_t, std::uint32_t>, PauliAlgebra> cache;
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, PauliAlgebra(SymplecticSpace(p, n))).first;
    return it->second;
}

}  // namespace

TEST_CASE("displacement matrices", "[pauli]") {
    const auto& pa = algebra(2, 1);
    REQUIRE((pa.matrix({0, 0}) - cmat::Identity(2, 2)).norm() < 1e-12);

    // mu = (1,1) at p=2 gives -i XZ: squares to I, traceless, Hermitian.
    cmat x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    const std::uint32_t digits[] = {1, 1};
    const cmat d11 = pa.matrix({pa.space().vector_index(digits), 0});
    REQUIRE((d11 - cplx(0, -1) * x * z).norm() < 1e-12);
    REQUIRE((d11 * d11 - cmat::Identity(2, 2)).norm() < 1e-12);
    REQUIRE(std::abs(d11.trace()) < 1e-12);
    REQUIRE((d11 - d11.adjoint()).norm() < 1e-12);

    // p=3: X is the cyclic shift |u> -> |u+1>.
    const auto& pa3 = algebra(3, 1);
    const cmat shift = pa3.matrix({1, 0});
    for (int u = 0; u < 3; ++u) REQUIRE(std::abs(shift((u + 1) % 3, u) - 1.0) < 1e-12);
}

TEST_CASE("commutation phases", "[pauli]") {
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}}) {
        const auto& pa = algebra(p, n);
        const auto& s = pa.space();
        for (std::uint32_t mu = 0; mu < s.num_vectors(); ++mu) {
            REQUIRE(pa.commutation_phase(mu, mu) == 0);
            for (std::uint32_t nu = 0; nu < s.num_vectors(); ++nu) {
                // Dense check of D Dn D^dag Dn^dag = omega^{<mu,nu>} I.
                const cmat dm = pa.matrix({mu, 0});
                const cmat dn = pa.matrix({nu, 0});
                const cmat comm = dm * dn * dm.adjoint() * dn.adjoint();
                const cplx want = pa.tau_power(2 * pa.commutation_phase(mu, nu));
                REQUIRE((comm - want * cmat::Identity(pa.d(), pa.d())).norm() < 1e-9);
            }
        }
    }
    // XZ = -ZX at p=2.
    const auto& pa = algebra(2, 1);
    const std::uint32_t ex[] = {1, 0}, ez[] = {0, 1};
    REQUIRE(pa.commutation_phase(pa.space().vector_index(ex), pa.space().vector_index(ez)) ==
            1);
}

TEST_CASE("product law matches dense multiplication for all pairs", "[pauli]") {
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {2u, 3u}}) {
        const auto& pa = algebra(p, n);
        const auto& s = pa.space();
        for (std::uint32_t mu = 0; mu < s.num_vectors(); ++mu) {
            const cmat dm = pa.matrix({mu, 0});
            for (std::uint32_t nu = 0; nu < s.num_vectors(); ++nu) {
                const Displacement prod = pa.mul({mu, 0}, {nu, 0});
                REQUIRE((dm * pa.matrix({nu, 0}) - pa.matrix(prod)).norm() < 1e-9);
            }
            // Inverse law.
            const Displacement inv = pa.inv({mu, 0});
            REQUIRE((dm * pa.matrix(inv) - cmat::Identity(pa.d(), pa.d())).norm() < 1e-9);
        }
    }
}

TEST_CASE("displacements form a unitary error basis", "[pauli]") {
    Rng rng(31);
    for (auto [p, n] : {std::pair{2u, 1u}, {2u, 2u}, {3u, 1u}}) {
        const auto& pa = algebra(p, n);
        std::vector<cmat> probes;
        for (int i = 0; i < 3; ++i) probes.push_back(rng.gaussian_matrix(pa.d(), pa.d()));
        REQUIRE(pa.unitary_error_basis_check(probes, 1e-8));
    }
}

TEST_CASE("parseval identity for the displacement basis", "[pauli]") {
    Rng rng(37);
    const auto& pa = algebra(2, 2);
    const auto& s = pa.space();
    for (int trial = 0; trial < 4; ++trial) {
        const cmat a = rng.gaussian_matrix(4, 4);
        double sum = 0;
        for (std::uint32_t mu = 0; mu < s.num_vectors(); ++mu)
            sum += std::norm((a * pa.matrix({mu, 0}).adjoint()).trace());
        const double want = 4.0 * (a.adjoint() * a).trace().real();
        REQUIRE(sum == Catch::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("phase quotient is elementary abelian", "[pauli]") {
    for (auto [p, n] : {std::pair{2u, 2u}, {3u, 1u}}) {
        const auto& pa = algebra(p, n);
        const auto& s = pa.space();
        for (std::uint32_t mu = 0; mu < s.num_vectors(); ++mu) {
            // p-th power lands on the identity coset.
            Displacement acc = pa.identity();
            for (std::uint32_t i = 0; i < p; ++i) acc = pa.mul(acc, {mu, 0});
            REQUIRE(acc.mu == 0);
            // Commutators are pure phases: the vector part cancels.
            for (std::uint32_t nu = 0; nu < s.num_vectors(); ++nu) {
                const Displacement comm = pa.mul(pa.mul({mu, 0}, {nu, 0}),
                                                 pa.mul(pa.inv({mu, 0}), pa.inv({nu, 0})));
                REQUIRE(comm.mu == 0);
            }
        }
    }
}

TEST_CASE("trace_with agrees with dense traces", "[pauli]") {
    Rng rng(41);
    const auto& pa = algebra(2, 2);
    const cmat u = rng.haar_unitary(4);
    for (std::uint32_t mu = 0; mu < 16; ++mu) {
        const cplx fast = pa.trace_with(u, {mu, 0});
        const cplx dense = (u * pa.matrix({mu, 0})).trace();
        REQUIRE(std::abs(fast - dense) < 1e-10);
    }
}
