#pragma once

// Projective Clifford group enumeration at small dimension. Elements are
// deduplicated by the exact pair (induced symplectic matrix, conjugation
// phases on the generator displacements): that pair determines a Clifford
// unitary up to global phase, so the key is hash-stable while the dense
// matrix is only a representative.

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "qdv/group_table.hpp"
#include "qdv/pauli.hpp"
#include "qdv/rational.hpp"
#include "qdv/symplectic.hpp"

namespace qdv {

struct CliffKey {
    SympMatrix induced;                              // F
    std::array<std::uint8_t, SympMatrix::kMaxDim> phases{};  // U D_{e_i} U^dag = tau^{h_i} D_{F e_i}

    friend bool operator==(const CliffKey&, const CliffKey&) = default;
};

struct CliffKeyHash {
    std::size_t operator()(const CliffKey& k) const {
        std::size_t h = SympMatrixHash{}(k.induced);
        for (std::uint8_t x : k.phases) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Conjugation data of a unitary on the generator displacements.
CliffKey induced_symplectic(const cmat& u, const PauliAlgebra& pauli, double tol = 1e-6);

std::string cliff_key_encode(std::uint32_t p, const CliffKey& key);
CliffKey cliff_key_decode(std::uint32_t p, std::uint32_t dim, const std::string& bytes);

class CliffordTable {
public:
    // Breadth-first closure from {Fourier, phase gate, CZ (n >= 2), X, Z}
    // per party; the order is checked against q^2 |Sp(2n, p)|.
    static CliffordTable enumerate(std::uint32_t p, std::uint32_t n);

    // Cache round trip: the stored parent/generator links rebuild the exact
    // representative unitaries (same products in the same order).
    static std::optional<CliffordTable> load_cache(const std::string& path, std::uint32_t p,
                                                   std::uint32_t n);
    void save_cache(const std::string& path, const std::string& name) const;

    std::size_t size() const { return keys_.size(); }
    const PauliAlgebra& pauli() const { return pauli_; }
    const SymplecticSpace& space() const { return pauli_.space(); }
    std::uint32_t d() const { return pauli_.d(); }

    const CliffKey& key(std::size_t i) const { return keys_[i]; }
    const cmat& unitary(std::size_t i) const { return unitaries_[i]; }
    std::span<const cmat> unitaries() const { return unitaries_; }
    std::optional<std::uint32_t> index_of(const CliffKey& k) const;

    // |tr U_i|^2 rounded to the nearest integer. For Clifford elements the
    // squared trace modulus is an exact integer (it is 0 or f(F)); the
    // rounding residual is checked against `tol`.
    std::vector<std::uint64_t> trace_sq_integers(double tol = 1e-6) const;

    // Index-level group view (mul/inv recompute keys from the dense
    // representatives), for the Cayley-table machinery.
    GroupTable<std::uint32_t> to_group_table() const;

    std::vector<std::uint32_t> generator_indices() const { return generator_indices_; }

private:
    CliffordTable(std::uint32_t p, std::uint32_t n);

    void push(CliffKey key, cmat u, std::uint32_t parent, std::uint8_t gen);
    static std::vector<cmat> gate_set(const PauliAlgebra& pauli);

    PauliAlgebra pauli_;
    std::vector<CliffKey> keys_;
    std::vector<cmat> unitaries_;
    std::vector<std::uint32_t> parents_;  // BFS links for the cache
    std::vector<std::uint8_t> gens_;
    std::vector<std::uint32_t> generator_indices_;
    std::unordered_map<CliffKey, std::uint32_t, CliffKeyHash> index_;
};

// ---------------------------------------------------------------------------
// exact frame-potential paths

// Histogram of fixed-point counts f(F) over a set of symplectic matrices.
std::vector<std::pair<std::uint32_t, std::uint64_t>> fixed_point_histogram(
    const SymplecticSpace& s, std::span<const SympMatrix> mats);

// Phi_t = (1/|R|) sum_{F in R} f(F)^{t-1}, exactly.
Rational frame_potential_fixed_points(const SymplecticSpace& s,
                                      std::span<const SympMatrix> mats, std::uint32_t t);
Rational frame_potential_from_histogram(
    std::span<const std::pair<std::uint32_t, std::uint64_t>> hist, std::uint32_t t);

// Per-element check that |tr(U D_mu)|^2 is 0 or f(F) and that exactly
// q^2 / f(F) values are nonzero.
struct KeyStepReport {
    bool ok = false;
    std::uint32_t fixed_points = 0;
    std::uint32_t nonzero_count = 0;
    std::optional<std::uint32_t> offending_mu;
};
KeyStepReport key_step_check(const CliffordTable& table, std::size_t index, double tol = 1e-6);

// Restricted Clifford frame potential, computed two independent ways:
// the closed form q (q^{2t-4} - 1)/(q^2 - 1) + q^{t-2} + 1 and the explicit
// sum of f(F)^{t-1} over SL(2, q). Both must agree exactly.
struct RestrictedPotential {
    Rational closed_form;
    Rational explicit_sum;
};
RestrictedPotential restricted_frame_potential(const ExtField& f, const Sl2Table& sl2,
                                               std::uint32_t t);
RestrictedPotential restricted_frame_potential(std::uint32_t q, std::uint32_t t);

// Twirl over the whole table evaluated coset by coset: average over the
// displacement operators once, then over one representative unitary per
// symplectic image. Exactly the same channel as the elementwise sum (the
// displacement factors cancel within each coset), with q^2 + |Sp| sandwiches
// instead of q^2 |Sp|.
cmat twirl_clifford(const CliffordTable& table, std::uint32_t t, const cmat& a);

// Locates the A6 copy inside Sp(4, 2) as its derived subgroup and reports
// the preimage frame potentials.
struct A6Report {
    std::uint64_t subgroup_order = 0;     // 360
    std::uint64_t preimage_order = 0;     // 16 * 360
    Rational phi2, phi3, phi4;
    std::vector<SympMatrix> subgroup;     // the 360 matrices
};
A6Report a6_preimage_potentials(const SymplecticSpace& s, const SpGroupTable& sp42);

}  // namespace qdv
