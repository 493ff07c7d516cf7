#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qdv/covariance.hpp"
#include "qdv/rng.hpp"
#include "test_util.hpp"

using namespace qdv;
using qdv::test::clifford;

namespace {

const PauliAlgebra& algebra(std::uint32_t p) {
    static std::map<std::uint32_t, PauliAlgebra> cache;
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, PauliAlgebra(SymplecticSpace(p, 1))).first;
    return it->second;
}

}  // namespace

TEST_CASE("phase-point operator identities", "[covariance]") {
    for (std::uint32_t d : {3u, 5u}) {
        const auto& pa = algebra(d);
        const OperatorBasis basis = phase_point_basis(pa);
        REQUIRE(basis.ops.size() == d * d);
        cmat sum = cmat::Zero(d, d);
        for (std::size_t mu = 0; mu < basis.ops.size(); ++mu) {
            const cmat& a = basis.ops[mu];
            REQUIRE((a - a.adjoint()).norm() < 1e-9);       // Hermitian
            REQUIRE(std::abs(a.trace() - 1.0) < 1e-9);      // unit trace
            sum += a;
            for (std::size_t nu = 0; nu < basis.ops.size(); ++nu) {
                const cplx overlap = (basis.ops[mu] * basis.ops[nu]).trace();
                const double want = mu == nu ? d : 0.0;
                REQUIRE(std::abs(overlap - want) < 1e-9);
            }
        }
        // sum_mu A_mu / d = I.
        REQUIRE((sum / double(d) - cmat::Identity(d, d)).norm() < 1e-9);
    }
}

TEST_CASE("phase-point basis is covariant under the d=3 Clifford group", "[covariance]") {
    const OperatorBasis basis = phase_point_basis(algebra(3));
    const CovarianceResult cov = is_covariant(basis, clifford(3).unitaries());
    REQUIRE(cov.invariant);
    REQUIRE(cov.transitive);
    REQUIRE(cov.covariant);

    // The induced permutations compose like the group elements.
    const auto& table = clifford(3);
    std::mt19937_64 eng(3);
    for (int i = 0; i < 10; ++i) {
        const std::size_t a = eng() % table.size(), b = eng() % table.size();
        const auto ab = table.index_of(
            induced_symplectic(table.unitary(a) * table.unitary(b), table.pauli()));
        REQUIRE(ab.has_value());
        for (std::uint32_t j = 0; j < 9; ++j)
            REQUIRE(cov.perms[*ab][j] == cov.perms[a][cov.perms[b][j]]);
    }
}

TEST_CASE("a single non-Clifford unitary breaks covariance", "[covariance]") {
    const OperatorBasis basis = phase_point_basis(algebra(3));
    Rng rng(11);
    std::vector<cmat> group{rng.haar_unitary(3)};
    const CovarianceResult cov = is_covariant(basis, group);
    REQUIRE_FALSE(cov.invariant);
    REQUIRE_FALSE(cov.covariant);
}

TEST_CASE("displacement basis under the HW group: fixed up to phase only", "[covariance]") {
    const auto& pa = algebra(2);
    OperatorBasis basis;
    std::vector<cmat> hw;
    for (std::uint32_t mu = 0; mu < 4; ++mu) {
        basis.ops.push_back(pa.matrix({mu, 0}));
        hw.push_back(pa.matrix({mu, 0}));
    }
    check_operator_basis(basis);
    const CovarianceResult cov = is_covariant(basis, hw);
    // Conjugation only multiplies each D_mu by a phase: not an exact match
    // for the anticommuting pairs, so the covariance verdict is false.
    REQUIRE(cov.invariant_up_to_phase);
    REQUIRE_FALSE(cov.covariant);
}

TEST_CASE("triple products", "[covariance]") {
    // Phase-point basis at d=3: some triple products are genuinely non-real.
    const TripleProductReport pp = triple_products(phase_point_basis(algebra(3)));
    REQUIRE_FALSE(pp.all_real);

    // Pauli displacement basis at d=2: tr(D_a D_b D_c) on distinct
    // non-identity elements is imaginary (the XYZ-type products).
    const auto& pa = algebra(2);
    OperatorBasis pauli_basis;
    for (std::uint32_t mu = 0; mu < 4; ++mu) pauli_basis.ops.push_back(pa.matrix({mu, 0}));
    const TripleProductReport tp = triple_products(pauli_basis);
    REQUIRE_FALSE(tp.all_real);
    // Oracle: tr(X Z (-iXZ)) = 2i with these conventions.
    const cplx direct =
        (pa.matrix({1, 0}) * pa.matrix({2, 0}) * pa.matrix({3, 0})).trace();
    REQUIRE(std::abs(direct.imag()) > 1.0);
}

TEST_CASE("degenerate operator sets are rejected", "[covariance]") {
    // Four commuting diagonal operators cannot form an operator basis.
    OperatorBasis diag;
    for (int i = 0; i < 4; ++i) {
        cmat m = cmat::Zero(2, 2);
        m(0, 0) = 1.0 + i;
        m(1, 1) = 1.0 - i;
        diag.ops.push_back(m);
    }
    REQUIRE_THROWS_AS(check_operator_basis(diag), std::invalid_argument);
}

TEST_CASE("covariant basis search: none at d=2, found at d=3", "[covariance]") {
    const CovariantSearchReport r2 = covariant_basis_search(clifford(2));
    REQUIRE_FALSE(r2.found);
    REQUIRE(r2.subgroups_scanned == 4);  // the four S3 copies inside S4

    const CovariantSearchReport r3 = covariant_basis_search(clifford(3));
    REQUIRE(r3.found);
    REQUIRE(r3.basis.has_value());
    // The found orbit really is covariant and transitive.
    const CovarianceResult cov = is_covariant(*r3.basis, clifford(3).unitaries());
    REQUIRE(cov.covariant);
}
