#pragma once

// Heisenberg-Weyl displacement operators with exact phase bookkeeping.
// An element is tau^{phase_exp} D_mu with tau = -exp(i pi / p); phase
// exponents live in Z_{2p} and the canonical D_mu carries its own
// tau^{sum_j mu_j mu_{n+j}} factor. Dense matrices are produced only at
// comparison boundaries.

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "qdv/symplectic.hpp"

namespace qdv {

using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using cplx = std::complex<double>;

struct Displacement {
    std::uint32_t mu = 0;         // vector index in F_p^{2n}
    std::uint32_t phase_exp = 0;  // exponent of tau, mod 2p

    friend bool operator==(const Displacement&, const Displacement&) = default;
};

class PauliAlgebra {
public:
    // Keeps its own copy of the space, so the algebra is freely movable.
    explicit PauliAlgebra(SymplecticSpace space);

    const SymplecticSpace& space() const { return space_; }
    std::uint32_t d() const { return d_; }
    cplx tau() const { return tau_; }
    cplx omega() const { return tau_ * tau_; }
    cplx tau_power(std::uint32_t e) const { return tau_pow_[e % (2 * space_.p())]; }

    Displacement identity() const { return {0, 0}; }
    Displacement mul(const Displacement& a, const Displacement& b) const;
    Displacement inv(const Displacement& a) const;
    Displacement dagger(const Displacement& a) const { return inv(a); }

    // Canonical phase exponent: tau has order 2p for p = 2 but order p for
    // odd p (tau^p = 1), so equal phases must share one representative.
    std::uint32_t canonical_phase(std::uint32_t e) const {
        return space_.p() == 2 ? e % 4 : e % space_.p();
    }

    // Integer c with D_mu D_nu = tau^c D_{mu+nu}; exact per-party arithmetic
    // including digit wraparound.
    std::uint32_t product_phase(std::uint32_t mu, std::uint32_t nu) const;

    // <mu, nu> mod p; D_mu D_nu D_mu^dag D_nu^dag = omega^{<mu,nu>}.
    std::uint32_t commutation_phase(std::uint32_t mu, std::uint32_t nu) const {
        return space_.symp_product(mu, nu);
    }

    cmat matrix(const Displacement& dis) const;

    // D_mu as a monomial matrix: column u holds coeff(u) at row perm(u).
    struct Monomial {
        std::vector<std::uint32_t> row;  // perm(u)
        std::vector<cplx> coeff;
    };
    Monomial monomial(const Displacement& dis) const;

    // tr(U D_mu) in O(d) via the monomial form.
    cplx trace_with(const cmat& u, const Displacement& dis) const;

    // Pairwise trace orthogonality tr(D_mu^dag D_nu) = d delta_{mu nu} plus a
    // Parseval identity on the given probe operators.
    bool unitary_error_basis_check(std::span<const cmat> probes, double tol) const;

private:
    SymplecticSpace space_;
    std::uint32_t d_;
    cplx tau_;
    std::vector<cplx> tau_pow_;
};

}  // namespace qdv
