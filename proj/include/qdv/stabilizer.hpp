#pragma once

// Stabilizer states built from maximal isotropic (Lagrangian) subspaces and
// sign characters, plus the Clifford-orbit design checks.

#include <cstdint>
#include <vector>

#include "qdv/clifford.hpp"
#include "qdv/designs.hpp"
#include "qdv/pauli.hpp"

namespace qdv {

struct IsotropicSubspace {
    // n independent, pairwise symplectically orthogonal vectors in reduced
    // row echelon form (canonical per subspace).
    std::vector<std::uint32_t> basis;
};

// All Lagrangian subspaces; count must equal prod_{k=1..n} (p^k + 1).
std::vector<IsotropicSubspace> enumerate_lagrangians(const SymplecticSpace& s);

struct StabilizerState {
    IsotropicSubspace subspace;
    std::vector<std::uint32_t> character;  // omega exponent per basis vector
    cvec vec;
};

// For each Lagrangian, all p^n sign characters; the joint eigenprojector must
// have rank 1. Total count p^n prod (p^k + 1).
std::vector<StabilizerState> enumerate_stabilizer_states(const PauliAlgebra& pauli);

// Global-phase canonical form: first amplitude of modulus > 1e-6 made
// positive real.
cvec canonicalize_state(const cvec& v);

// Distinct states (up to global phase) of the orbit {U psi : U in table}.
std::vector<cvec> clifford_orbit_states(const CliffordTable& table, const cvec& psi);

struct OrbitDesignReport {
    std::uint64_t orbit_size = 0;
    ProjectiveDesignReport design;
};

// Orbit of a seeded Haar-random pure state under the table, checked as a
// projective t-design.
OrbitDesignReport clifford_orbit_design_check(const CliffordTable& table, std::uint64_t seed,
                                              std::uint32_t t);

}  // namespace qdv
