#pragma once

// Exact arithmetic in F_p and F_{p^k} at desk scale (p <= 13, q <= 256).
// Fields precompute their inverse (and, for extensions, multiplication)
// tables at construction; elements are plain small integers after that.

#include <cstdint>
#include <span>
#include <vector>

#include "qdv/errors.hpp"

namespace qdv {

bool is_prime(std::uint32_t n);

class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return (a * b) % p_; }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    // Smallest generator of the multiplicative group.
    std::uint32_t primitive_root() const;

private:
    std::uint32_t p_;
    std::vector<std::uint32_t> inv_;
};

// Value-type element of F_p. Handy at the API surface; hot loops use
// PrimeField directly on raw integers.
struct FieldScalar {
    std::uint32_t value = 0;
    std::uint32_t p = 2;

    friend bool operator==(const FieldScalar&, const FieldScalar&) = default;
};

FieldScalar fs_add(const FieldScalar& a, const FieldScalar& b);
FieldScalar fs_mul(const FieldScalar& a, const FieldScalar& b);
FieldScalar fs_neg(const FieldScalar& a);
FieldScalar field_inv(const FieldScalar& x);  // throws std::domain_error on 0

// Lexicographically smallest monic irreducible polynomial of degree k over
// F_p. Returned as k+1 coefficients, constant term first, leading 1 last.
// Candidates are ordered by the integer sum_i c_i p^i over the non-leading
// coefficients, i.e. high-degree coefficients are most significant.
std::vector<std::uint32_t> enumerate_irreducible(std::uint32_t p, std::uint32_t k);

bool poly_is_irreducible(std::uint32_t p, std::span<const std::uint32_t> coeffs);

// F_{p^k} with elements encoded as indices in [0, p^k): the index's base-p
// digits are the polynomial coefficients, constant term least significant.
class ExtField {
public:
    ExtField(std::uint32_t p, std::uint32_t k);
    ExtField(std::uint32_t p, std::vector<std::uint32_t> modulus);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t neg(std::uint32_t x) const;
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return mul_[x * q_ + y]; }
    std::uint32_t inv(std::uint32_t x) const;
    std::uint32_t pow(std::uint32_t x, std::uint64_t e) const;
    std::uint32_t frobenius(std::uint32_t x) const { return pow(x, p_); }

    // x + x^p + ... + x^{p^{k-1}}; always lands in the prime subfield.
    std::uint32_t trace(std::uint32_t x) const;

    std::uint32_t coeff(std::uint32_t x, std::uint32_t i) const;
    std::uint32_t from_coeffs(std::span<const std::uint32_t> coeffs) const;

    // Smallest index generating the multiplicative group.
    std::uint32_t primitive_element() const;

private:
    std::uint32_t p_, k_, q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> mul_;
    std::vector<std::uint32_t> inv_;
};

struct ExtFieldScalar {
    std::uint32_t rep = 0;
    const ExtField* field = nullptr;
};

FieldScalar ext_trace(const ExtFieldScalar& x);

}  // namespace qdv
