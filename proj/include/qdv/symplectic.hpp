#pragma once

// The symplectic space F_p^{2n} with form J = [[0, -I], [I, 0]], symplectic
// matrices and their generation by transvections, exact fixed-point counts,
// the Witt orbit classification on pairs of vectors, and SL(2, q) over
// extension fields with its fixed-point class profile.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qdv/errors.hpp"
#include "qdv/ffield.hpp"
#include "qdv/group_table.hpp"

namespace qdv {

// Vectors are indices in [0, p^{2n}); coordinate i is the i-th base-p digit
// (least significant first). Coordinates 0..n-1 are the X part, n..2n-1 the
// Z part.
class SymplecticSpace {
public:
    SymplecticSpace(std::uint32_t p, std::uint32_t n);

    std::uint32_t p() const { return p_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t dim() const { return 2 * n_; }
    std::uint32_t num_vectors() const { return q2_; }

    std::uint32_t digit(std::uint32_t v, std::uint32_t i) const { return v / pow_[i] % p_; }
    std::uint32_t vector_index(std::span<const std::uint32_t> digits) const;

    std::uint32_t add(std::uint32_t v, std::uint32_t w) const;
    std::uint32_t sub(std::uint32_t v, std::uint32_t w) const;
    std::uint32_t scale(std::uint32_t c, std::uint32_t v) const;

    // <v, w> = v^T J w = sum_j (v_{n+j} w_j - v_j w_{n+j}) mod p.
    std::uint32_t symp_product(std::uint32_t v, std::uint32_t w) const;

    const PrimeField& field() const { return field_; }

private:
    std::uint32_t p_, n_, q2_;
    PrimeField field_;
    std::vector<std::uint32_t> pow_;
    std::vector<std::uint32_t> product_table_;  // filled when q2 <= 256
};

// Small exact matrix over F_p, row-major, dim = 2n <= 6.
struct SympMatrix {
    static constexpr std::uint32_t kMaxDim = 6;

    std::uint8_t dim = 0;
    std::array<std::uint8_t, kMaxDim * kMaxDim> a{};

    std::uint8_t at(std::uint32_t r, std::uint32_t c) const { return a[r * dim + c]; }
    std::uint8_t& at(std::uint32_t r, std::uint32_t c) { return a[r * dim + c]; }

    friend bool operator==(const SympMatrix& x, const SympMatrix& y) {
        if (x.dim != y.dim) return false;
        for (std::uint32_t i = 0; i < std::uint32_t(x.dim) * x.dim; ++i)
            if (x.a[i] != y.a[i]) return false;
        return true;
    }
};

struct SympMatrixHash {
    std::size_t operator()(const SympMatrix& m) const {
        std::size_t h = 1469598103934665603ull ^ m.dim;
        for (std::uint32_t i = 0; i < std::uint32_t(m.dim) * m.dim; ++i) {
            h ^= m.a[i];
            h *= 1099511628211ull;
        }
        return h;
    }
};

using SpGroupTable = GroupTable<SympMatrix, SympMatrixHash>;

SympMatrix sp_identity(std::uint32_t dim);
SympMatrix sp_mul(std::uint32_t p, const SympMatrix& x, const SympMatrix& y);
SympMatrix sp_inverse(std::uint32_t p, const SympMatrix& x);  // exact Gaussian elimination
std::uint32_t sp_apply(const SymplecticSpace& s, const SympMatrix& m, std::uint32_t v);
bool is_symplectic(const SymplecticSpace& s, const SympMatrix& m);

// Canonical byte encoding for the group cache: row-major entries, bit-packed
// when p = 2, one byte per entry otherwise.
std::string sp_encode(std::uint32_t p, const SympMatrix& m);
SympMatrix sp_decode(std::uint32_t p, std::uint32_t dim, const std::string& bytes);

// p^{n^2} * prod_{i=1..n} (p^{2i} - 1)
std::uint64_t sp_order_formula(std::uint32_t p, std::uint32_t n);

// Symplectic transvections T_v: x -> x + c <x,v> v for v over the standard
// basis plus the all-ones vector (c = 1, and for p > 2 also c = a generator
// of F_p^*).
std::vector<SympMatrix> sp_generators(const SymplecticSpace& s);

// Closure of sp_generators with the order-formula post-check.
SpGroupTable sp_group(const SymplecticSpace& s, std::size_t cap = 0);

// f(F) = p^{2n - rank(F - I)}; rank by exact elimination (word-parallel rows
// when p = 2).
std::uint32_t sp_fixed_points(const SymplecticSpace& s, const SympMatrix& m);
std::uint32_t sp_rank(std::uint32_t p, const SympMatrix& m);

// Action of a list of matrices on vector indices, as explicit permutations.
std::vector<std::vector<std::uint32_t>> sp_vector_permutations(
    const SymplecticSpace& s, std::span<const SympMatrix> mats);

// Orbit classification of (F_p^{2n})^2 under Sp(2n, p): an explicit sweep by
// the generators, and independently the invariant label
//   (zero pattern, proportionality factor, symplectic product).
// Both partitions must agree exactly.
struct WittOrbitTable {
    std::size_t orbit_count = 0;
    std::vector<std::uint64_t> orbit_sizes;          // by orbit id (discovery order)
    std::vector<std::uint32_t> orbit_of_pair;        // pair index v * q2 + w -> orbit id
};
WittOrbitTable witt_orbit_classifier(const SymplecticSpace& s);

// Antiflags of F_2^{2n}: pairs (mu, nu) of nonzero vectors with <mu,nu> = 1,
// nu standing for the hyperplane nu-perp. True iff the group's componentwise
// action on them is transitive.
bool antiflag_transitive(const SymplecticSpace& s, const SpGroupTable& group);

// ---------------------------------------------------------------------------
// SL(2, q) over the extension field, used for the restricted Clifford group.

struct ExtMatrix2 {
    std::array<std::uint32_t, 4> e{};  // [a b; c d] as ExtField indices

    friend bool operator==(const ExtMatrix2&, const ExtMatrix2&) = default;
};

struct ExtMatrix2Hash {
    std::size_t operator()(const ExtMatrix2& m) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t x : m.e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

using Sl2Table = GroupTable<ExtMatrix2, ExtMatrix2Hash>;

// Enumerates SL(2, q) from elementary transvections E12(w^i), E21(w^i) over
// a power basis of F_q; checks the order q(q^2 - 1).
Sl2Table sl2q_group(const ExtField& f);

// Fixed points of F on F_q^2 (as a set this is F_p^{2n}): q^{2 - rank(F-I)}.
std::uint32_t sl2_fixed_points(const ExtField& f, const ExtMatrix2& m);

// Checks the conjugacy-class fixed-point profile: exactly q^2 - 1 nonidentity
// elements with f = q and q^3 - q^2 - q with f = 1.
void sl2q_check_profile(const ExtField& f, const Sl2Table& group);

}  // namespace qdv
