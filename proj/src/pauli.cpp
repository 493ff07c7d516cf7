#include "qdv/pauli.hpp"

#include <cmath>
#include <numbers>

namespace qdv {

PauliAlgebra::PauliAlgebra(SymplecticSpace space) : space_(std::move(space)) {
    d_ = 1;
    for (std::uint32_t i = 0; i < space_.n(); ++i) d_ *= space_.p();
    const double angle = std::numbers::pi / space_.p();
    tau_ = -cplx(std::cos(angle), std::sin(angle));
    tau_pow_.resize(2 * space_.p());
    tau_pow_[0] = 1.0;
    for (std::uint32_t e = 1; e < 2 * space_.p(); ++e) tau_pow_[e] = tau_pow_[e - 1] * tau_;
}

std::uint32_t PauliAlgebra::product_phase(std::uint32_t mu, std::uint32_t nu) const {
    const std::uint32_t p = space_.p(), n = space_.n(), two_p = 2 * p;
    std::uint32_t c = 0;
    for (std::uint32_t j = 0; j < n; ++j) {
        const std::uint32_t mx = space_.digit(mu, j), mz = space_.digit(mu, n + j);
        const std::uint32_t nx = space_.digit(nu, j), nz = space_.digit(nu, n + j);
        const std::uint32_t lx = (mx + nx) % p, lz = (mz + nz) % p;
        // tau^{mx mz} tau^{nx nz} omega^{mz nx} = tau^{c_j} tau^{lx lz},
        // with every exponent an exact integer before reduction mod 2p.
        c += mx * mz % two_p;
        c += nx * nz % two_p;
        c += 2 * (mz * nx) % two_p;
        c += two_p - lx * lz % two_p;
        c %= two_p;
    }
    return c;
}

Displacement PauliAlgebra::mul(const Displacement& a, const Displacement& b) const {
    const std::uint32_t two_p = 2 * space_.p();
    return {space_.add(a.mu, b.mu),
            canonical_phase((a.phase_exp + b.phase_exp + product_phase(a.mu, b.mu)) % two_p)};
}

Displacement PauliAlgebra::inv(const Displacement& a) const {
    const std::uint32_t two_p = 2 * space_.p();
    const std::uint32_t neg = space_.sub(0, a.mu);
    // D_mu D_{-mu} = tau^{c} I, so D_mu^{-1} = tau^{-c} D_{-mu}.
    const std::uint32_t c = product_phase(a.mu, neg);
    return {neg, canonical_phase((two_p - (a.phase_exp + c) % two_p) % two_p)};
}

PauliAlgebra::Monomial PauliAlgebra::monomial(const Displacement& dis) const {
    const std::uint32_t p = space_.p(), n = space_.n();
    Monomial mono;
    mono.row.resize(d_);
    mono.coeff.resize(d_);
    // Canonical phase tau^{sum_j mu_j mu_{n+j}} plus the element's own.
    std::uint32_t canon = 0;
    for (std::uint32_t j = 0; j < n; ++j)
        canon += space_.digit(dis.mu, j) * space_.digit(dis.mu, n + j);
    const cplx base = tau_power(dis.phase_exp + canon % (2 * p));
    for (std::uint32_t u = 0; u < d_; ++u) {
        // Party 1 is the most significant digit of the basis index.
        std::uint32_t row = 0, weight = 0, rest = u;
        std::uint32_t scale = d_ / p;
        for (std::uint32_t j = 0; j < n; ++j) {
            const std::uint32_t uj = rest / scale;
            rest %= scale;
            const std::uint32_t a = space_.digit(dis.mu, j);      // X power
            const std::uint32_t b = space_.digit(dis.mu, n + j);  // Z power
            row += (uj + a) % p * scale;
            weight = (weight + b * uj) % p;
            scale /= p;
        }
        mono.row[u] = row;
        mono.coeff[u] = base * tau_power(2 * weight);  // omega^{b u}
    }
    return mono;
}

cmat PauliAlgebra::matrix(const Displacement& dis) const {
    Monomial mono = monomial(dis);
    cmat out = cmat::Zero(d_, d_);
    for (std::uint32_t u = 0; u < d_; ++u) out(mono.row[u], u) = mono.coeff[u];
    return out;
}

cplx PauliAlgebra::trace_with(const cmat& u, const Displacement& dis) const {
    Monomial mono = monomial(dis);
    cplx acc = 0;
    for (std::uint32_t col = 0; col < d_; ++col)
        acc += mono.coeff[col] * u(col, mono.row[col]);
    return acc;
}

bool PauliAlgebra::unitary_error_basis_check(std::span<const cmat> probes, double tol) const {
    const std::uint32_t q2 = space_.num_vectors();
    std::vector<cmat> mats(q2);
    for (std::uint32_t mu = 0; mu < q2; ++mu) mats[mu] = matrix({mu, 0});
    for (std::uint32_t mu = 0; mu < q2; ++mu)
        for (std::uint32_t nu = 0; nu < q2; ++nu) {
            const cplx t = (mats[mu].adjoint() * mats[nu]).trace();
            const cplx want = mu == nu ? cplx(d_, 0) : cplx(0, 0);
            if (std::abs(t - want) > tol) return false;
        }
    // Parseval: sum_mu |tr(A D_mu^dag)|^2 = d tr(A^dag A).
    for (const cmat& a : probes) {
        double lhs = 0;
        for (std::uint32_t mu = 0; mu < q2; ++mu) {
            const cplx t = (a * mats[mu].adjoint()).trace();
            lhs += std::norm(t);
        }
        const double rhs = d_ * (a.adjoint() * a).trace().real();
        if (std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(rhs))) return false;
    }
    return true;
}

}  // namespace qdv
