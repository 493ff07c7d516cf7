#pragma once

// Frame potentials, Haar minima, twirl channels and design predicates for
// unitary sets and complex projective state sets.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdv/errors.hpp"
#include "qdv/pauli.hpp"
#include "qdv/rational.hpp"

namespace qdv {

struct UnsupportedGammaError : std::domain_error {
    using std::domain_error::domain_error;
};

// Haar minimum of the t-th frame potential. Known exactly in two cases:
// gamma(t, 2) = (2t)!/(t!(t+1)!) and gamma(t, d) = t! for d >= t. Anything
// else raises UnsupportedGammaError rather than extrapolating.
std::uint64_t gamma_haar(std::uint32_t t, std::uint32_t d);
bool gamma_supported(std::uint32_t t, std::uint32_t d);

struct HaarMinimum {
    std::uint32_t t = 0, d = 0;
    std::uint64_t value = 0;
};

// (1/K^2) sum_{j,k} |tr(U_j U_k^dag)|^{2t}, one compensated pass per t.
// All requested orders are accumulated in a single sweep over the pairs.
std::vector<double> frame_potential_set(std::span<const cmat> unitaries,
                                        std::span<const std::uint32_t> ts);
double frame_potential_set(std::span<const cmat> unitaries, std::uint32_t t);

// Single-sum group form (1/K) sum |tr U|^{2t}; requires the input to be
// closed under multiplication, which is spot-checked through `lookup`
// (returns true iff the product of elements i, j is in the set).
double frame_potential_group(
    std::span<const cmat> unitaries, std::uint32_t t,
    const std::function<bool(std::size_t, std::size_t)>& closure_spot_check = {});

// Exact group form over pre-rounded integer values of |tr U|^2.
Rational frame_potential_group_exact(std::span<const std::uint64_t> trace_sq,
                                     std::uint32_t t);

// Number of orbits of the group generated by `vector_perms` acting
// componentwise on (t-1)-tuples of vector indices.
std::uint64_t frame_potential_orbit_count(
    const std::vector<std::vector<std::uint32_t>>& vector_perms, std::uint32_t num_vectors,
    std::uint32_t t, std::uint64_t domain_cap = 100000000ull);

// (1/K) sum_j U_j^{ot} A (U_j^{ot})^dag with a deterministic chunked
// reduction.
cmat twirl(std::span<const cmat> unitaries, std::uint32_t t, const cmat& a);

// t-fold Kronecker power.
cmat tensor_power(const cmat& u, std::uint32_t t);

// Projector onto the symmetric subspace of (C^d)^{ot}.
cmat symmetric_projector(std::uint32_t d, std::uint32_t t);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct ProjectiveDesignReport {
    bool pass = false;
    double projector_residual = 0.0;   // ||sum (psi psi^dag)^{ot} - c P_sym||_F
    double projector_tol = 0.0;
    std::optional<double> frame_potential;  // (1/K^2) sum |<psi_i|psi_j>|^{2t}
    double expected_frame_potential = 0.0;  // 1 / C(d+t-1, t)
};

// Compares sum_j (psi_j psi_j^dag)^{ot} against (K / C(d+t-1,t)) P_sym.
// States must be normalized. The Gram-based frame potential is computed
// when `with_frame_potential` is set (it is quadratic in K).
ProjectiveDesignReport projective_design_check(std::span<const cvec> states, std::uint32_t t,
                                               bool with_frame_potential = true,
                                               double tol_scale = 1e-8);

// d^2 (d^4 - 3 d^2 + 6) / 2: minimal size of a unitary 3-design.
std::uint64_t min_3design_size(std::uint32_t d);

// Largest t <= t_max with phi(t) == gamma(t, d), where phi(t) is supplied
// exactly. phi values must be present for every t in [1, t_max].
std::uint32_t design_strength(const std::vector<Rational>& phi_by_t, std::uint32_t d,
                              std::uint32_t t_max);

}  // namespace qdv
