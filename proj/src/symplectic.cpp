#include "qdv/symplectic.hpp"

#include <algorithm>
#include <unordered_map>

namespace qdv {

SymplecticSpace::SymplecticSpace(std::uint32_t p, std::uint32_t n)
    : p_(p), n_(n), field_(p) {
    if (n == 0 || 2 * n > SympMatrix::kMaxDim)
        throw std::invalid_argument("SymplecticSpace: need 1 <= n <= 3");
    pow_.resize(2 * n + 1);
    pow_[0] = 1;
    for (std::uint32_t i = 0; i < 2 * n; ++i) pow_[i + 1] = pow_[i] * p_;
    q2_ = pow_[2 * n];
    if (q2_ <= 256) {
        product_table_.assign(static_cast<std::size_t>(q2_) * q2_, 0);
        for (std::uint32_t v = 0; v < q2_; ++v)
            for (std::uint32_t w = 0; w < q2_; ++w) {
                std::uint32_t acc = 0;
                for (std::uint32_t j = 0; j < n_; ++j)
                    acc += digit(v, n_ + j) * digit(w, j) +
                           digit(v, j) * (p_ - digit(w, n_ + j));
                product_table_[static_cast<std::size_t>(v) * q2_ + w] = acc % p_;
            }
    }
}

std::uint32_t SymplecticSpace::vector_index(std::span<const std::uint32_t> digits) const {
    std::uint32_t v = 0;
    for (std::uint32_t i = 0; i < 2 * n_ && i < digits.size(); ++i)
        v += digits[i] % p_ * pow_[i];
    return v;
}

std::uint32_t SymplecticSpace::add(std::uint32_t v, std::uint32_t w) const {
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < 2 * n_; ++i)
        out += (digit(v, i) + digit(w, i)) % p_ * pow_[i];
    return out;
}

std::uint32_t SymplecticSpace::sub(std::uint32_t v, std::uint32_t w) const {
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < 2 * n_; ++i)
        out += (digit(v, i) + p_ - digit(w, i)) % p_ * pow_[i];
    return out;
}

std::uint32_t SymplecticSpace::scale(std::uint32_t c, std::uint32_t v) const {
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < 2 * n_; ++i)
        out += digit(v, i) * c % p_ * pow_[i];
    return out;
}

std::uint32_t SymplecticSpace::symp_product(std::uint32_t v, std::uint32_t w) const {
    if (!product_table_.empty())
        return product_table_[static_cast<std::size_t>(v) * q2_ + w];
    std::uint32_t acc = 0;
    for (std::uint32_t j = 0; j < n_; ++j)
        acc += digit(v, n_ + j) * digit(w, j) + digit(v, j) * (p_ - digit(w, n_ + j));
    return acc % p_;
}

// ---------------------------------------------------------------------------

SympMatrix sp_identity(std::uint32_t dim) {
    SympMatrix m;
    m.dim = static_cast<std::uint8_t>(dim);
    for (std::uint32_t i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

SympMatrix sp_mul(std::uint32_t p, const SympMatrix& x, const SympMatrix& y) {
    SympMatrix out;
    out.dim = x.dim;
    const std::uint32_t d = x.dim;
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t j = 0; j < d; ++j) {
            std::uint32_t acc = 0;
            for (std::uint32_t k = 0; k < d; ++k) acc += x.at(i, k) * y.at(k, j);
            out.at(i, j) = static_cast<std::uint8_t>(acc % p);
        }
    return out;
}

SympMatrix sp_inverse(std::uint32_t p, const SympMatrix& x) {
    const std::uint32_t d = x.dim;
    PrimeField f(p);
    // Augmented elimination [x | I].
    std::array<std::array<std::uint32_t, 2 * SympMatrix::kMaxDim>, SympMatrix::kMaxDim> w{};
    for (std::uint32_t i = 0; i < d; ++i) {
        for (std::uint32_t j = 0; j < d; ++j) w[i][j] = x.at(i, j);
        w[i][d + i] = 1;
    }
    for (std::uint32_t col = 0; col < d; ++col) {
        std::uint32_t pivot = col;
        while (pivot < d && w[pivot][col] == 0) ++pivot;
        if (pivot == d) throw std::domain_error("sp_inverse: singular matrix");
        std::swap(w[col], w[pivot]);
        const std::uint32_t inv = f.inv(w[col][col]);
        for (std::uint32_t j = 0; j < 2 * d; ++j) w[col][j] = w[col][j] * inv % p;
        for (std::uint32_t r = 0; r < d; ++r) {
            if (r == col || w[r][col] == 0) continue;
            const std::uint32_t factor = w[r][col];
            for (std::uint32_t j = 0; j < 2 * d; ++j)
                w[r][j] = (w[r][j] + (p - factor) * w[col][j]) % p;
        }
    }
    SympMatrix out;
    out.dim = x.dim;
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t j = 0; j < d; ++j)
            out.at(i, j) = static_cast<std::uint8_t>(w[i][d + j]);
    return out;
}

std::uint32_t sp_apply(const SymplecticSpace& s, const SympMatrix& m, std::uint32_t v) {
    const std::uint32_t d = m.dim;
    std::array<std::uint32_t, SympMatrix::kMaxDim> out{};
    for (std::uint32_t i = 0; i < d; ++i) {
        std::uint32_t acc = 0;
        for (std::uint32_t j = 0; j < d; ++j) acc += m.at(i, j) * s.digit(v, j);
        out[i] = acc % s.p();
    }
    return s.vector_index({out.data(), d});
}

bool is_symplectic(const SymplecticSpace& s, const SympMatrix& m) {
    // F^T J F = J  <=>  <Fe_i, Fe_j> = <e_i, e_j> for all basis pairs.
    const std::uint32_t d = m.dim;
    std::vector<std::uint32_t> image(d);
    std::array<std::uint32_t, SympMatrix::kMaxDim> e{};
    for (std::uint32_t i = 0; i < d; ++i) {
        std::fill(e.begin(), e.end(), 0);
        e[i] = 1;
        image[i] = sp_apply(s, m, s.vector_index({e.data(), d}));
    }
    for (std::uint32_t i = 0; i < d; ++i) {
        std::fill(e.begin(), e.end(), 0);
        e[i] = 1;
        const std::uint32_t ei = s.vector_index({e.data(), d});
        for (std::uint32_t j = 0; j < d; ++j) {
            std::fill(e.begin(), e.end(), 0);
            e[j] = 1;
            const std::uint32_t ej = s.vector_index({e.data(), d});
            if (s.symp_product(image[i], image[j]) != s.symp_product(ei, ej)) return false;
        }
    }
    return true;
}

std::string sp_encode(std::uint32_t p, const SympMatrix& m) {
    const std::uint32_t cells = std::uint32_t(m.dim) * m.dim;
    std::string out;
    if (p == 2) {
        out.assign((cells + 7) / 8, '\0');
        for (std::uint32_t i = 0; i < cells; ++i)
            if (m.a[i]) out[i / 8] |= static_cast<char>(1 << (i % 8));
    } else {
        out.assign(cells, '\0');
        for (std::uint32_t i = 0; i < cells; ++i) out[i] = static_cast<char>(m.a[i]);
    }
    return out;
}

SympMatrix sp_decode(std::uint32_t p, std::uint32_t dim, const std::string& bytes) {
    SympMatrix m;
    m.dim = static_cast<std::uint8_t>(dim);
    const std::uint32_t cells = dim * dim;
    if (p == 2) {
        if (bytes.size() != (cells + 7) / 8)
            throw std::invalid_argument("sp_decode: bad length");
        for (std::uint32_t i = 0; i < cells; ++i)
            m.a[i] = (bytes[i / 8] >> (i % 8)) & 1;
    } else {
        if (bytes.size() != cells) throw std::invalid_argument("sp_decode: bad length");
        for (std::uint32_t i = 0; i < cells; ++i)
            m.a[i] = static_cast<std::uint8_t>(bytes[i]) % p;
    }
    return m;
}

std::uint64_t sp_order_formula(std::uint32_t p, std::uint32_t n) {
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < n * n; ++i) order *= p;
    for (std::uint32_t i = 1; i <= n; ++i) {
        std::uint64_t t = 1;
        for (std::uint32_t j = 0; j < 2 * i; ++j) t *= p;
        order *= t - 1;
    }
    return order;
}

std::vector<SympMatrix> sp_generators(const SymplecticSpace& s) {
    const std::uint32_t d = s.dim();
    std::vector<std::uint32_t> dirs;
    std::array<std::uint32_t, SympMatrix::kMaxDim> e{};
    for (std::uint32_t i = 0; i < d; ++i) {
        std::fill(e.begin(), e.end(), 0);
        e[i] = 1;
        dirs.push_back(s.vector_index({e.data(), d}));
    }
    std::fill(e.begin(), e.end(), 1);
    dirs.push_back(s.vector_index({e.data(), d}));

    std::vector<std::uint32_t> scales{1};
    if (s.p() > 2) scales.push_back(s.field().primitive_root());

    std::vector<SympMatrix> gens;
    for (std::uint32_t c : scales) {
        for (std::uint32_t v : dirs) {
            SympMatrix t;
            t.dim = static_cast<std::uint8_t>(d);
            for (std::uint32_t j = 0; j < d; ++j) {
                std::fill(e.begin(), e.end(), 0);
                e[j] = 1;
                const std::uint32_t ej = s.vector_index({e.data(), d});
                const std::uint32_t col =
                    s.add(ej, s.scale(c * s.symp_product(ej, v) % s.p(), v));
                for (std::uint32_t i = 0; i < d; ++i)
                    t.at(i, j) = static_cast<std::uint8_t>(s.digit(col, i));
            }
            gens.push_back(t);
        }
    }

    // Transvections on a basis frame can close on a proper subgroup (for
    // F_2^6 they give a symmetric-group copy of order 40320, not Sp(6,2)),
    // so append the symplectic images of the Fourier, phase and two-party
    // entangling gates; the order post-check still guards generation.
    const std::uint32_t n = s.n(), p = s.p();
    for (std::uint32_t j = 0; j < n; ++j) {
        SympMatrix f = sp_identity(d);  // x_j -> z_j, z_j -> -x_j
        f.at(j, j) = 0;
        f.at(n + j, n + j) = 0;
        f.at(n + j, j) = 1;
        f.at(j, n + j) = static_cast<std::uint8_t>(p - 1);
        gens.push_back(f);
        SympMatrix ph = sp_identity(d);  // x_j -> x_j + z_j
        ph.at(n + j, j) = 1;
        gens.push_back(ph);
    }
    for (std::uint32_t j = 0; j + 1 < n; ++j) {
        SympMatrix cz = sp_identity(d);  // x_j -> x_j + z_k, x_k -> x_k + z_j
        cz.at(n + j + 1, j) = 1;
        cz.at(n + j, j + 1) = 1;
        gens.push_back(cz);
    }
    return gens;
}

SpGroupTable sp_group(const SymplecticSpace& s, std::size_t cap) {
    const std::uint64_t expected = sp_order_formula(s.p(), s.n());
    if (cap == 0) cap = expected;
    const std::uint32_t p = s.p();
    SpGroupTable table = SpGroupTable::closure(
        sp_identity(s.dim()), sp_generators(s),
        [p](const SympMatrix& a, const SympMatrix& b) { return sp_mul(p, a, b); },
        [p](const SympMatrix& a) { return sp_inverse(p, a); }, cap);
    if (table.order() != expected)
        throw GenerationError("sp_group: closure order != order formula");
    return table;
}

std::uint32_t sp_rank(std::uint32_t p, const SympMatrix& m) {
    const std::uint32_t d = m.dim;
    if (p == 2) {
        // Rows as bit words, eliminated by XOR.
        std::array<std::uint32_t, SympMatrix::kMaxDim> rows{};
        for (std::uint32_t i = 0; i < d; ++i)
            for (std::uint32_t j = 0; j < d; ++j)
                if (m.at(i, j)) rows[i] |= 1u << j;
        std::uint32_t rank = 0;
        for (std::uint32_t col = 0; col < d; ++col) {
            std::uint32_t pivot = rank;
            while (pivot < d && !(rows[pivot] >> col & 1)) ++pivot;
            if (pivot == d) continue;
            std::swap(rows[rank], rows[pivot]);
            for (std::uint32_t r = 0; r < d; ++r)
                if (r != rank && (rows[r] >> col & 1)) rows[r] ^= rows[rank];
            ++rank;
        }
        return rank;
    }
    PrimeField f(p);
    std::array<std::array<std::uint32_t, SympMatrix::kMaxDim>, SympMatrix::kMaxDim> w{};
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t j = 0; j < d; ++j) w[i][j] = m.at(i, j);
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < d; ++col) {
        std::uint32_t pivot = rank;
        while (pivot < d && w[pivot][col] == 0) ++pivot;
        if (pivot == d) continue;
        std::swap(w[rank], w[pivot]);
        const std::uint32_t inv = f.inv(w[rank][col]);
        for (std::uint32_t j = 0; j < d; ++j) w[rank][j] = w[rank][j] * inv % p;
        for (std::uint32_t r = 0; r < d; ++r) {
            if (r == rank || w[r][col] == 0) continue;
            const std::uint32_t factor = w[r][col];
            for (std::uint32_t j = 0; j < d; ++j)
                w[r][j] = (w[r][j] + (p - factor) * w[rank][j]) % p;
        }
        ++rank;
    }
    return rank;
}

std::uint32_t sp_fixed_points(const SymplecticSpace& s, const SympMatrix& m) {
    SympMatrix diff = m;
    for (std::uint32_t i = 0; i < m.dim; ++i)
        diff.at(i, i) = static_cast<std::uint8_t>((diff.at(i, i) + s.p() - 1) % s.p());
    const std::uint32_t corank = s.dim() - sp_rank(s.p(), diff);
    std::uint32_t out = 1;
    for (std::uint32_t i = 0; i < corank; ++i) out *= s.p();
    return out;
}

std::vector<std::vector<std::uint32_t>> sp_vector_permutations(
    const SymplecticSpace& s, std::span<const SympMatrix> mats) {
    std::vector<std::vector<std::uint32_t>> perms(mats.size());
    for (std::size_t i = 0; i < mats.size(); ++i) {
        perms[i].resize(s.num_vectors());
        for (std::uint32_t v = 0; v < s.num_vectors(); ++v)
            perms[i][v] = sp_apply(s, mats[i], v);
    }
    return perms;
}

WittOrbitTable witt_orbit_classifier(const SymplecticSpace& s) {
    const std::uint32_t q2 = s.num_vectors();
    const std::size_t npairs = static_cast<std::size_t>(q2) * q2;
    const auto perms = sp_vector_permutations(s, sp_generators(s));

    WittOrbitTable table;
    table.orbit_of_pair.assign(npairs, UINT32_MAX);
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < npairs; ++start) {
        if (table.orbit_of_pair[start] != UINT32_MAX) continue;
        const std::uint32_t oid = static_cast<std::uint32_t>(table.orbit_sizes.size());
        std::uint64_t size = 0;
        stack.assign(1, start);
        table.orbit_of_pair[start] = oid;
        while (!stack.empty()) {
            const std::size_t pair = stack.back();
            stack.pop_back();
            ++size;
            const std::uint32_t v = static_cast<std::uint32_t>(pair / q2);
            const std::uint32_t w = static_cast<std::uint32_t>(pair % q2);
            for (const auto& perm : perms) {
                const std::size_t img = static_cast<std::size_t>(perm[v]) * q2 + perm[w];
                if (table.orbit_of_pair[img] == UINT32_MAX) {
                    table.orbit_of_pair[img] = oid;
                    stack.push_back(img);
                }
            }
        }
        table.orbit_sizes.push_back(size);
    }
    table.orbit_count = table.orbit_sizes.size();

    // Independent classification by invariants: zero pattern, proportionality
    // factor, and the symplectic product for non-proportional pairs.
    auto label = [&](std::uint32_t v, std::uint32_t w) -> std::uint32_t {
        if (v == 0 && w == 0) return 0;
        if (v == 0) return 1;
        if (w == 0) return 2;
        for (std::uint32_t c = 1; c < s.p(); ++c)
            if (s.scale(c, v) == w) return 3 + c;  // w = c v
        return 3 + s.p() + s.symp_product(v, w);
    };
    std::vector<std::uint32_t> orbit_label(table.orbit_count, UINT32_MAX);
    for (std::uint32_t v = 0; v < q2; ++v)
        for (std::uint32_t w = 0; w < q2; ++w) {
            const std::uint32_t oid = table.orbit_of_pair[static_cast<std::size_t>(v) * q2 + w];
            const std::uint32_t lab = label(v, w);
            if (orbit_label[oid] == UINT32_MAX)
                orbit_label[oid] = lab;
            else if (orbit_label[oid] != lab)
                throw InternalConsistencyError("witt: one orbit carries two labels");
        }
    std::vector<std::uint32_t> sorted = orbit_label;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InternalConsistencyError("witt: two orbits carry the same label");
    return table;
}

bool antiflag_transitive(const SymplecticSpace& s, const SpGroupTable& group) {
    if (s.p() != 2)
        throw std::invalid_argument("antiflag_transitive: defined for p = 2 here");
    const std::uint32_t q2 = s.num_vectors();
    std::vector<std::uint32_t> flags;
    std::unordered_map<std::uint64_t, std::uint32_t> flag_index;
    for (std::uint32_t mu = 1; mu < q2; ++mu)
        for (std::uint32_t nu = 1; nu < q2; ++nu)
            if (s.symp_product(mu, nu) == 1) {
                flag_index.emplace(static_cast<std::uint64_t>(mu) << 32 | nu,
                                   static_cast<std::uint32_t>(flags.size()));
                flags.push_back(mu << 16 | nu);
            }
    ActionFn<SympMatrix> act = [&](const SympMatrix& m, std::uint32_t i) -> std::uint32_t {
        const std::uint32_t mu = flags[i] >> 16, nu = flags[i] & 0xffff;
        const std::uint64_t key =
            static_cast<std::uint64_t>(sp_apply(s, m, mu)) << 32 | sp_apply(s, m, nu);
        return flag_index.at(key);
    };
    OrbitPartition part = orbits(group, act, flags.size());
    return part.orbit_count() == 1;
}

// ---------------------------------------------------------------------------

namespace {

ExtMatrix2 ext_identity() { return ExtMatrix2{{1, 0, 0, 1}}; }

ExtMatrix2 ext_mul(const ExtField& f, const ExtMatrix2& x, const ExtMatrix2& y) {
    return ExtMatrix2{{f.add(f.mul(x.e[0], y.e[0]), f.mul(x.e[1], y.e[2])),
                       f.add(f.mul(x.e[0], y.e[1]), f.mul(x.e[1], y.e[3])),
                       f.add(f.mul(x.e[2], y.e[0]), f.mul(x.e[3], y.e[2])),
                       f.add(f.mul(x.e[2], y.e[1]), f.mul(x.e[3], y.e[3]))}};
}

std::uint32_t ext_det(const ExtField& f, const ExtMatrix2& x) {
    return f.sub(f.mul(x.e[0], x.e[3]), f.mul(x.e[1], x.e[2]));
}

ExtMatrix2 ext_inv_sl(const ExtField& f, const ExtMatrix2& x) {
    // det = 1 for SL elements, so the adjugate is the inverse.
    return ExtMatrix2{{x.e[3], f.neg(x.e[1]), f.neg(x.e[2]), x.e[0]}};
}

}  // namespace

Sl2Table sl2q_group(const ExtField& f) {
    std::vector<ExtMatrix2> gens;
    std::uint32_t w = 1;  // powers 1, w, w^2, ... span F_q over F_p
    const std::uint32_t prim = f.primitive_element();
    for (std::uint32_t i = 0; i < f.k(); ++i) {
        gens.push_back(ExtMatrix2{{1, w, 0, 1}});
        gens.push_back(ExtMatrix2{{1, 0, w, 1}});
        w = f.mul(w, prim);
    }
    const std::uint64_t expected =
        static_cast<std::uint64_t>(f.q()) * (static_cast<std::uint64_t>(f.q()) * f.q() - 1);
    Sl2Table table = Sl2Table::closure(
        ext_identity(), gens,
        [&f](const ExtMatrix2& a, const ExtMatrix2& b) { return ext_mul(f, a, b); },
        [&f](const ExtMatrix2& a) { return ext_inv_sl(f, a); }, expected);
    if (table.order() != expected)
        throw GenerationError("sl2q_group: closure order != q(q^2-1)");
    for (const ExtMatrix2& m : table.elements())
        if (ext_det(f, m) != 1) throw GenerationError("sl2q_group: non-unimodular element");
    return table;
}

std::uint32_t sl2_fixed_points(const ExtField& f, const ExtMatrix2& m) {
    // Solutions of (F - I) v = 0 over F_q; count = q^{2 - rank}.
    const std::uint32_t a = f.sub(m.e[0], 1), b = m.e[1];
    const std::uint32_t c = m.e[2], d = f.sub(m.e[3], 1);
    std::uint32_t rank;
    if (a == 0 && b == 0 && c == 0 && d == 0)
        rank = 0;
    else if (f.sub(f.mul(a, d), f.mul(b, c)) != 0)
        rank = 2;
    else
        rank = 1;
    std::uint32_t out = 1;
    for (std::uint32_t i = rank; i < 2; ++i) out *= f.q();
    return out;
}

void sl2q_check_profile(const ExtField& f, const Sl2Table& group) {
    const std::uint64_t q = f.q();
    std::uint64_t with_q = 0, with_one = 0, with_q2 = 0;
    for (const ExtMatrix2& m : group.elements()) {
        const std::uint32_t fp = sl2_fixed_points(f, m);
        if (fp == q * q)
            ++with_q2;
        else if (fp == q)
            ++with_q;
        else if (fp == 1)
            ++with_one;
        else
            throw InternalConsistencyError("sl2q profile: impossible fixed-point count");
    }
    if (with_q2 != 1 || with_q != q * q - 1 || with_one != q * q * q - q * q - q)
        throw InternalConsistencyError("sl2q profile: class counts do not match");
}

}  // namespace qdv
