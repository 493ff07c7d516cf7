#pragma once

// Operator-basis covariance machinery: covariance checks under conjugation,
// triple-product classification, the Wootters phase-point basis in odd prime
// dimension, and the exhaustive search for conjugation-covariant operator
// bases over a small Clifford table.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "qdv/clifford.hpp"
#include "qdv/pauli.hpp"

namespace qdv {

struct OperatorBasis {
    std::vector<cmat> ops;  // d^2 linearly independent operators
};

// Throws if the Gram matrix tr(L_i^dag L_j) is numerically singular.
void check_operator_basis(const OperatorBasis& basis, double cond_tol = 1e-8);

// A_mu = (1/d) sum_nu omega^{<mu,nu>} D_nu for odd prime d.
OperatorBasis phase_point_basis(const PauliAlgebra& pauli);

struct CovarianceResult {
    bool invariant = false;    // every U L_j U^dag lands exactly on a basis element
    bool transitive = false;   // the induced permutations act transitively
    bool covariant = false;    // both
    // Permutation per group element when invariant; empty otherwise.
    std::vector<std::vector<std::uint32_t>> perms;
    // When not invariant: whether every image matched a basis element up to a
    // phase (the diagnostic for phase-only obstructions).
    bool invariant_up_to_phase = false;
};

CovarianceResult is_covariant(const OperatorBasis& basis, std::span<const cmat> group,
                              double tol = 1e-7);

struct TripleProductReport {
    std::size_t cluster_count = 0;
    bool all_real = false;
    std::vector<std::complex<double>> cluster_values;  // one per cluster
};

// Values tr(L_j L_k L_l) over ordered triples of distinct indices, clustered
// at 1e-8.
TripleProductReport triple_products(const OperatorBasis& basis);

struct CovariantSearchReport {
    std::uint64_t subgroups_scanned = 0;   // subgroups of order |G| / d^2
    std::uint64_t candidates_tried = 0;
    bool found = false;
    std::optional<OperatorBasis> basis;    // a covariant basis if one was found
};

// Exhaustive orbit-of-one-operator search: for every subgroup H of index d^2
// in the table, extract the H-invariant operators by group averaging and
// test whether any candidate's conjugation orbit has exactly d^2 elements
// spanning operator space.
CovariantSearchReport covariant_basis_search(const CliffordTable& table);

}  // namespace qdv
