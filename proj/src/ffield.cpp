#include "qdv/ffield.hpp"

#include <stdexcept>

namespace qdv {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus must be prime");
    inv_.assign(p_, 0);
    for (std::uint32_t a = 1; a < p_; ++a)
        for (std::uint32_t b = 1; b < p_; ++b)
            if (a * b % p_ == 1) { inv_[a] = b; break; }
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    return inv_[a];
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint64_t base = a % p_, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t PrimeField::primitive_root() const {
    for (std::uint32_t g = 1; g < p_; ++g) {
        std::uint32_t x = g, order = 1;
        while (x != 1) { x = mul(x, g); ++order; }
        if (order == p_ - 1) return g;
    }
    return 1;  // p == 2
}

static void check_same_field(const FieldScalar& a, const FieldScalar& b) {
    if (a.p != b.p) throw std::invalid_argument("FieldScalar: modulus mismatch");
}

FieldScalar fs_add(const FieldScalar& a, const FieldScalar& b) {
    check_same_field(a, b);
    return {(a.value + b.value) % a.p, a.p};
}

FieldScalar fs_mul(const FieldScalar& a, const FieldScalar& b) {
    check_same_field(a, b);
    return {a.value * b.value % a.p, a.p};
}

FieldScalar fs_neg(const FieldScalar& a) {
    return {a.value == 0 ? 0 : a.p - a.value, a.p};
}

FieldScalar field_inv(const FieldScalar& x) {
    if (x.value == 0) throw std::domain_error("field_inv: zero has no inverse");
    PrimeField f(x.p);
    return {f.inv(x.value), x.p};
}

// ---------------------------------------------------------------------------
// polynomial helpers (dense coefficient vectors, constant term first)

namespace {

std::vector<std::uint32_t> poly_mul(std::uint32_t p, std::span<const std::uint32_t> a,
                                    std::span<const std::uint32_t> b) {
    std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return out;
}

// Remainder of a modulo monic m.
std::vector<std::uint32_t> poly_mod(std::uint32_t p, std::vector<std::uint32_t> a,
                                    std::span<const std::uint32_t> m) {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (lead != 0)
            for (std::size_t i = 0; i < m.size(); ++i)
                a[shift + i] = (a[shift + i] + (p - 1) * lead % p * m[i]) % p;
        a.pop_back();
        while (a.size() > dm && a.back() == 0) a.pop_back();
    }
    a.resize(dm, 0);
    return a;
}

bool poly_is_zero(std::span<const std::uint32_t> a) {
    for (auto c : a)
        if (c) return false;
    return true;
}

}  // namespace

bool poly_is_irreducible(std::uint32_t p, std::span<const std::uint32_t> coeffs) {
    const std::size_t k = coeffs.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    // Trial division by every monic polynomial of degree 1..k/2.
    for (std::size_t dd = 1; 2 * dd <= k; ++dd) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < dd; ++i) count *= p;
        for (std::uint64_t m = 0; m < count; ++m) {
            std::vector<std::uint32_t> div(dd + 1, 0);
            std::uint64_t t = m;
            for (std::size_t i = 0; i < dd; ++i) { div[i] = t % p; t /= p; }
            div[dd] = 1;
            std::vector<std::uint32_t> rem =
                poly_mod(p, {coeffs.begin(), coeffs.end()}, div);
            if (poly_is_zero(rem)) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> enumerate_irreducible(std::uint32_t p, std::uint32_t k) {
    if (!is_prime(p) || k < 1) throw std::invalid_argument("enumerate_irreducible: bad (p, k)");
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
        std::vector<std::uint32_t> cand(k + 1, 0);
        std::uint64_t t = m;
        for (std::uint32_t i = 0; i < k; ++i) { cand[i] = t % p; t /= p; }
        cand[k] = 1;
        if (poly_is_irreducible(p, cand)) return cand;
    }
    throw std::logic_error("enumerate_irreducible: none found");  // unreachable
}

// ---------------------------------------------------------------------------

ExtField::ExtField(std::uint32_t p, std::uint32_t k)
    : ExtField(p, enumerate_irreducible(p, k)) {}

ExtField::ExtField(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw std::invalid_argument("ExtField: p must be prime");
    if (modulus_.size() < 2 || modulus_.back() != 1)
        throw std::invalid_argument("ExtField: modulus must be monic of degree >= 1");
    if (!poly_is_irreducible(p_, modulus_))
        throw std::invalid_argument("ExtField: modulus is reducible");
    k_ = static_cast<std::uint32_t>(modulus_.size() - 1);
    q_ = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        q_ *= p_;
        if (q_ > 4096) throw SizeLimitError("ExtField: q too large for table construction");
    }

    mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
    std::vector<std::uint32_t> xa(k_), xb(k_);
    for (std::uint32_t x = 0; x < q_; ++x) {
        for (std::uint32_t i = 0; i < k_; ++i) xa[i] = coeff(x, i);
        for (std::uint32_t y = x; y < q_; ++y) {
            for (std::uint32_t i = 0; i < k_; ++i) xb[i] = coeff(y, i);
            auto prod = poly_mod(p_, poly_mul(p_, xa, xb), modulus_);
            const std::uint32_t z = from_coeffs(prod);
            mul_[static_cast<std::size_t>(x) * q_ + y] = z;
            mul_[static_cast<std::size_t>(y) * q_ + x] = z;
        }
    }
    inv_.assign(q_, 0);
    for (std::uint32_t x = 1; x < q_; ++x)
        for (std::uint32_t y = 1; y < q_; ++y)
            if (mul(x, y) == 1) { inv_[x] = y; break; }
    for (std::uint32_t x = 1; x < q_; ++x)
        if (inv_[x] == 0) throw InternalConsistencyError("ExtField: element without inverse");
}

std::uint32_t ExtField::add(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        out += (coeff(x, i) + coeff(y, i)) % p_ * mult;
        mult *= p_;
    }
    return out;
}

std::uint32_t ExtField::sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }

std::uint32_t ExtField::neg(std::uint32_t x) const {
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        const std::uint32_t c = coeff(x, i);
        out += (c == 0 ? 0 : p_ - c) * mult;
        mult *= p_;
    }
    return out;
}

std::uint32_t ExtField::inv(std::uint32_t x) const {
    if (x == 0) throw std::domain_error("ExtField: inverse of zero");
    return inv_[x];
}

std::uint32_t ExtField::pow(std::uint32_t x, std::uint64_t e) const {
    std::uint32_t base = x, acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::uint32_t ExtField::trace(std::uint32_t x) const {
    std::uint32_t acc = 0, term = x;
    for (std::uint32_t i = 0; i < k_; ++i) {
        acc = add(acc, term);
        term = frobenius(term);
    }
    if (acc >= p_) throw InternalConsistencyError("ExtField: trace left the prime subfield");
    return acc;
}

std::uint32_t ExtField::coeff(std::uint32_t x, std::uint32_t i) const {
    for (std::uint32_t j = 0; j < i; ++j) x /= p_;
    return x % p_;
}

std::uint32_t ExtField::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        out += (i < coeffs.size() ? coeffs[i] % p_ : 0) * mult;
        mult *= p_;
    }
    return out;
}

std::uint32_t ExtField::primitive_element() const {
    for (std::uint32_t g = 1; g < q_; ++g) {
        std::uint32_t x = g, order = 1;
        while (x != 1) { x = mul(x, g); ++order; }
        if (order == q_ - 1) return g;
    }
    return 1;  // q == 2
}

FieldScalar ext_trace(const ExtFieldScalar& x) {
    if (!x.field) throw std::invalid_argument("ext_trace: unbound element");
    return {x.field->trace(x.rep), x.field->p()};
}

}  // namespace qdv
