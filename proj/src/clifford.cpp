#include "qdv/clifford.hpp"

#include <cmath>

#include "qdv/designs.hpp"
#include "qdv/group_cache.hpp"
#include "qdv/indexed_group.hpp"
#include "qdv/parallel.hpp"

namespace qdv {

CliffKey induced_symplectic(const cmat& u, const PauliAlgebra& pauli, double tol) {
    const SymplecticSpace& s = pauli.space();
    const std::uint32_t d = pauli.d(), q2 = s.num_vectors(), two_p = 2 * s.p();
    if ((u.adjoint() * u - cmat::Identity(d, d)).norm() > 1e-9 * d)
        throw NotCliffordError("induced_symplectic: input not unitary");

    CliffKey key;
    key.induced.dim = static_cast<std::uint8_t>(s.dim());
    const cmat udag = u.adjoint();
    for (std::uint32_t i = 0; i < s.dim(); ++i) {
        std::uint32_t e_i = 1;
        for (std::uint32_t j = 0; j < i; ++j) e_i *= s.p();
        const cmat m = u * pauli.matrix({e_i, 0}) * udag;
        // Displacements are trace-orthogonal with norm sqrt(d), so the image
        // matches exactly one of them: |tr(D_nu^dag M)| = d.
        bool found = false;
        for (std::uint32_t nu = 0; nu < q2 && !found; ++nu) {
            const PauliAlgebra::Monomial mono = pauli.monomial({nu, 0});
            cplx overlap = 0;
            for (std::uint32_t col = 0; col < d; ++col)
                overlap += std::conj(mono.coeff[col]) * m(mono.row[col], col);
            overlap /= static_cast<double>(d);
            if (std::abs(std::abs(overlap) - 1.0) > tol) continue;
            std::uint32_t best_h = 0;
            double best = 1e30;
            for (std::uint32_t h = 0; h < two_p; ++h) {
                const double dist = std::abs(overlap - pauli.tau_power(h));
                if (dist < best) {
                    best = dist;
                    best_h = h;
                }
            }
            if (best > tol) throw NotCliffordError("induced_symplectic: phase not a tau power");
            for (std::uint32_t r = 0; r < s.dim(); ++r)
                key.induced.at(r, i) = static_cast<std::uint8_t>(s.digit(nu, r));
            key.phases[i] = static_cast<std::uint8_t>(pauli.canonical_phase(best_h));
            found = true;
        }
        if (!found)
            throw NotCliffordError("induced_symplectic: image is not a phased displacement");
    }
    if (!is_symplectic(s, key.induced))
        throw NotCliffordError("induced_symplectic: induced matrix not symplectic");
    return key;
}

std::string cliff_key_encode(std::uint32_t p, const CliffKey& key) {
    std::string out;
    out.push_back(static_cast<char>(key.induced.dim));
    out += sp_encode(p, key.induced);
    for (std::uint32_t i = 0; i < key.induced.dim; ++i)
        out.push_back(static_cast<char>(key.phases[i]));
    return out;
}

CliffKey cliff_key_decode(std::uint32_t p, std::uint32_t dim, const std::string& bytes) {
    if (bytes.empty() || static_cast<std::uint32_t>(bytes[0]) != dim)
        throw std::invalid_argument("cliff_key_decode: dimension mismatch");
    const std::size_t mat_len = p == 2 ? (dim * dim + 7) / 8 : dim * dim;
    if (bytes.size() != 1 + mat_len + dim)
        throw std::invalid_argument("cliff_key_decode: bad length");
    CliffKey key;
    key.induced = sp_decode(p, dim, bytes.substr(1, mat_len));
    for (std::uint32_t i = 0; i < dim; ++i)
        key.phases[i] = static_cast<std::uint8_t>(bytes[1 + mat_len + i]);
    return key;
}

// ---------------------------------------------------------------------------

CliffordTable::CliffordTable(std::uint32_t p, std::uint32_t n)
    : pauli_(SymplecticSpace(p, n)) {}

void CliffordTable::push(CliffKey key, cmat u, std::uint32_t parent, std::uint8_t gen) {
    index_.emplace(key, static_cast<std::uint32_t>(keys_.size()));
    keys_.push_back(key);
    unitaries_.push_back(std::move(u));
    parents_.push_back(parent);
    gens_.push_back(gen);
}

std::vector<cmat> CliffordTable::gate_set(const PauliAlgebra& pauli) {
    const SymplecticSpace& s = pauli.space();
    const std::uint32_t p = s.p(), n = s.n(), d = pauli.d();

    cmat fourier(p, p);
    for (std::uint32_t u = 0; u < p; ++u)
        for (std::uint32_t v = 0; v < p; ++v)
            fourier(u, v) = pauli.tau_power(2 * u * v) / std::sqrt(static_cast<double>(p));
    cmat phase = cmat::Zero(p, p);
    if (p == 2) {
        phase(0, 0) = 1.0;
        phase(1, 1) = cplx(0, 1);
    } else {
        for (std::uint32_t u = 0; u < p; ++u) phase(u, u) = pauli.tau_power(u * u);
    }

    auto embed = [&](const cmat& gate, std::uint32_t party) {
        cmat out = cmat::Identity(1, 1);
        for (std::uint32_t j = 0; j < n; ++j) {
            const cmat& factor = j == party ? gate : cmat::Identity(p, p);
            cmat next(out.rows() * factor.rows(), out.cols() * factor.cols());
            for (Eigen::Index r = 0; r < out.rows(); ++r)
                for (Eigen::Index c = 0; c < out.cols(); ++c)
                    next.block(r * factor.rows(), c * factor.cols(), factor.rows(),
                               factor.cols()) = out(r, c) * factor;
            out = std::move(next);
        }
        return out;
    };

    std::vector<cmat> gates;
    for (std::uint32_t j = 0; j < n; ++j) gates.push_back(embed(fourier, j));
    for (std::uint32_t j = 0; j < n; ++j) gates.push_back(embed(phase, j));
    for (std::uint32_t j = 0; j + 1 < n; ++j) {
        // CZ between parties j and j+1: diag omega^{u_j u_{j+1}}.
        cmat cz = cmat::Zero(d, d);
        for (std::uint32_t b = 0; b < d; ++b) {
            std::uint32_t rest = b, scale = d / p, uj = 0, uk = 0;
            for (std::uint32_t party = 0; party < n; ++party) {
                const std::uint32_t digitv = rest / scale;
                rest %= scale;
                if (party == j) uj = digitv;
                if (party == j + 1) uk = digitv;
                scale /= p;
            }
            cz(b, b) = pauli.tau_power(2 * uj * uk);
        }
        gates.push_back(cz);
    }
    for (std::uint32_t j = 0; j < n; ++j) {
        std::uint32_t e = 1;
        for (std::uint32_t i = 0; i < j; ++i) e *= p;
        gates.push_back(pauli.matrix({e, 0}));  // X_j
    }
    for (std::uint32_t j = 0; j < n; ++j) {
        std::uint32_t e = 1;
        for (std::uint32_t i = 0; i < n + j; ++i) e *= p;
        gates.push_back(pauli.matrix({e, 0}));  // Z_j
    }
    return gates;
}

CliffordTable CliffordTable::enumerate(std::uint32_t p, std::uint32_t n) {
    CliffordTable table(p, n);
    if (table.d() > 5)
        throw SizeLimitError("clifford enumerate: direct enumeration is capped at d = 5");
    const SymplecticSpace& s = table.space();
    const std::uint64_t expected =
        static_cast<std::uint64_t>(s.num_vectors()) * sp_order_formula(p, n);

    const std::vector<cmat> gates = gate_set(table.pauli_);
    table.push(induced_symplectic(cmat::Identity(table.d(), table.d()), table.pauli_),
               cmat::Identity(table.d(), table.d()), 0, 0);
    for (std::size_t g = 0; g < gates.size(); ++g) {
        CliffKey key = induced_symplectic(gates[g], table.pauli_);
        if (!table.index_.contains(key)) {
            table.generator_indices_.push_back(static_cast<std::uint32_t>(table.keys_.size()));
            table.push(std::move(key), gates[g], 0, static_cast<std::uint8_t>(g));
        }
    }
    for (std::uint32_t head = 0; head < table.keys_.size(); ++head) {
        for (std::size_t g = 0; g < gates.size(); ++g) {
            cmat prod = table.unitaries_[head] * gates[g];
            CliffKey key = induced_symplectic(prod, table.pauli_);
            if (table.index_.contains(key)) continue;
            if (table.keys_.size() >= expected)
                throw GenerationError("clifford enumerate: more elements than q^2 |Sp|");
            table.push(std::move(key), std::move(prod), head, static_cast<std::uint8_t>(g));
        }
    }
    if (table.keys_.size() != expected)
        throw GenerationError("clifford enumerate: order != q^2 |Sp|");
    return table;
}

std::optional<std::uint32_t> CliffordTable::index_of(const CliffKey& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::uint64_t> CliffordTable::trace_sq_integers(double tol) const {
    std::vector<std::uint64_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        const double t = std::norm(unitaries_[i].trace());
        const double rounded = std::round(t);
        if (std::abs(t - rounded) > tol)
            throw InternalConsistencyError("trace_sq_integers: |tr U|^2 not an integer");
        out[i] = static_cast<std::uint64_t>(rounded);
    }
    return out;
}

GroupTable<std::uint32_t> CliffordTable::to_group_table() const {
    std::vector<std::uint32_t> ids(size());
    for (std::size_t i = 0; i < size(); ++i) ids[i] = static_cast<std::uint32_t>(i);
    auto mul = [this](const std::uint32_t& a, const std::uint32_t& b) -> std::uint32_t {
        const cmat prod = unitaries_[a] * unitaries_[b];
        auto idx = index_of(induced_symplectic(prod, pauli_));
        if (!idx) throw ContractError("clifford group: product key missing");
        return *idx;
    };
    auto inv = [this](const std::uint32_t& a) -> std::uint32_t {
        auto idx = index_of(induced_symplectic(unitaries_[a].adjoint(), pauli_));
        if (!idx) throw ContractError("clifford group: inverse key missing");
        return *idx;
    };
    return GroupTable<std::uint32_t>::from_elements(std::move(ids), generator_indices_, mul,
                                                    inv, 0);
}

void CliffordTable::save_cache(const std::string& path, const std::string& name) const {
    GroupCacheRecord rec;
    rec.name = name;
    rec.kind = "unitary";
    rec.encodings.reserve(size());
    rec.extras.reserve(size());
    const std::uint32_t p = space().p();
    for (std::size_t i = 0; i < size(); ++i) {
        rec.encodings.push_back(cliff_key_encode(p, keys_[i]));
        std::string extra;
        if (i > 0) {
            const std::uint32_t parent = parents_[i];
            extra.push_back(static_cast<char>(parent & 0xff));
            extra.push_back(static_cast<char>(parent >> 8 & 0xff));
            extra.push_back(static_cast<char>(parent >> 16 & 0xff));
            extra.push_back(static_cast<char>(parent >> 24 & 0xff));
            extra.push_back(static_cast<char>(gens_[i]));
        }
        rec.extras.push_back(std::move(extra));
    }
    save_group_cache(path, rec);
}

std::optional<CliffordTable> CliffordTable::load_cache(const std::string& path,
                                                       std::uint32_t p, std::uint32_t n) {
    auto rec = load_group_cache(path);
    if (!rec) return std::nullopt;
    if (rec->kind != "unitary")
        throw std::runtime_error("clifford cache: wrong kind " + rec->kind);
    CliffordTable table(p, n);
    const std::vector<cmat> gates = gate_set(table.pauli_);
    for (std::size_t i = 0; i < rec->encodings.size(); ++i) {
        CliffKey key = cliff_key_decode(p, table.space().dim(), rec->encodings[i]);
        if (i == 0) {
            table.push(std::move(key), cmat::Identity(table.d(), table.d()), 0, 0);
            continue;
        }
        const std::string& extra = rec->extras[i];
        if (extra.size() != 5) throw std::runtime_error("clifford cache: missing link");
        const std::uint32_t parent = static_cast<std::uint8_t>(extra[0]) |
                                     static_cast<std::uint32_t>(static_cast<std::uint8_t>(extra[1])) << 8 |
                                     static_cast<std::uint32_t>(static_cast<std::uint8_t>(extra[2])) << 16 |
                                     static_cast<std::uint32_t>(static_cast<std::uint8_t>(extra[3])) << 24;
        const std::uint8_t gen = static_cast<std::uint8_t>(extra[4]);
        if (parent >= i || gen >= gates.size())
            throw std::runtime_error("clifford cache: bad link");
        // Same product, same association order as enumeration: bit-identical.
        cmat u = table.unitaries_[parent] * gates[gen];
        table.push(std::move(key), std::move(u), parent, gen);
    }
    // Representative spot check, then rebuild generator indices.
    for (std::size_t i = 0; i < table.size(); i += std::max<std::size_t>(1, table.size() / 16))
        if (!(induced_symplectic(table.unitaries_[i], table.pauli_) == table.keys_[i]))
            throw std::runtime_error("clifford cache: rebuilt unitary does not match key");
    for (std::size_t g = 0; g < gates.size(); ++g) {
        auto idx = table.index_of(induced_symplectic(gates[g], table.pauli_));
        if (!idx) throw std::runtime_error("clifford cache: generator missing");
        bool seen = false;
        for (std::uint32_t gi : table.generator_indices_) seen |= (gi == *idx);
        if (!seen) table.generator_indices_.push_back(*idx);
    }
    return table;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::uint32_t, std::uint64_t>> fixed_point_histogram(
    const SymplecticSpace& s, std::span<const SympMatrix> mats) {
    const std::uint32_t q2 = s.num_vectors();
    std::vector<std::uint64_t> counts = chunked_reduce(
        mats.size(), std::vector<std::uint64_t>(q2 + 1, 0),
        [&](std::vector<std::uint64_t>& part, std::size_t i) {
            part[sp_fixed_points(s, mats[i])] += 1;
        },
        [](std::vector<std::uint64_t>& total, const std::vector<std::uint64_t>& part) {
            for (std::size_t i = 0; i < total.size(); ++i) total[i] += part[i];
        });
    std::vector<std::pair<std::uint32_t, std::uint64_t>> hist;
    for (std::uint32_t f = 0; f <= q2; ++f)
        if (counts[f]) hist.emplace_back(f, counts[f]);
    return hist;
}

Rational frame_potential_from_histogram(
    std::span<const std::pair<std::uint32_t, std::uint64_t>> hist, std::uint32_t t) {
    if (t < 1) throw std::invalid_argument("frame potential: t >= 1");
    std::uint64_t total = 0, sum = 0;
    for (const auto& [f, count] : hist) {
        std::uint64_t power = 1;
        for (std::uint32_t i = 0; i + 1 < t; ++i) power *= f;
        sum += power * count;
        total += count;
    }
    return Rational::of(sum, total);
}

Rational frame_potential_fixed_points(const SymplecticSpace& s,
                                      std::span<const SympMatrix> mats, std::uint32_t t) {
    auto hist = fixed_point_histogram(s, mats);
    return frame_potential_from_histogram(hist, t);
}

KeyStepReport key_step_check(const CliffordTable& table, std::size_t index, double tol) {
    const SymplecticSpace& s = table.space();
    const PauliAlgebra& pauli = table.pauli();
    KeyStepReport report;
    report.fixed_points = sp_fixed_points(s, table.key(index).induced);
    const cmat& u = table.unitary(index);
    for (std::uint32_t mu = 0; mu < s.num_vectors(); ++mu) {
        const double v = std::norm(pauli.trace_with(u, {mu, 0}));
        if (v > tol) {
            if (std::abs(v - report.fixed_points) > tol) {
                report.offending_mu = mu;
                return report;
            }
            ++report.nonzero_count;
        }
    }
    report.ok = report.nonzero_count * report.fixed_points == s.num_vectors();
    return report;
}

RestrictedPotential restricted_frame_potential(const ExtField& f, const Sl2Table& sl2,
                                               std::uint32_t t) {
    if (t < 2) throw std::invalid_argument("restricted_frame_potential: t >= 2");
    const std::uint64_t q = f.q();
    // q (q^{2t-4} - 1)/(q^2 - 1) + q^{t-2} + 1 with the quotient expanded as
    // a geometric sum, so everything stays integral.
    std::uint64_t geo = 0, qpow = 1;
    for (std::uint32_t i = 0; i + 2 < t; ++i) {
        geo += qpow;
        qpow *= q * q;
    }
    std::uint64_t qt2 = 1;
    for (std::uint32_t i = 0; i + 2 < t; ++i) qt2 *= q;
    RestrictedPotential out;
    out.closed_form = Rational::of(q * geo + qt2 + 1, 1);

    std::uint64_t sum = 0;
    for (const ExtMatrix2& m : sl2.elements()) {
        const std::uint64_t fp = sl2_fixed_points(f, m);
        std::uint64_t power = 1;
        for (std::uint32_t i = 0; i + 1 < t; ++i) power *= fp;
        sum += power;
    }
    out.explicit_sum = Rational::of(sum, sl2.order());
    if (!(out.closed_form == out.explicit_sum))
        throw InternalConsistencyError("restricted potential: closed form != explicit sum");
    return out;
}

RestrictedPotential restricted_frame_potential(std::uint32_t q, std::uint32_t t) {
    std::uint32_t p = 0, k = 0;
    for (std::uint32_t cand = 2; cand <= q; ++cand) {
        if (!is_prime(cand)) continue;
        std::uint32_t power = cand, kk = 1;
        while (power < q) {
            power *= cand;
            ++kk;
        }
        if (power == q) {
            p = cand;
            k = kk;
            break;
        }
    }
    if (p == 0) throw std::invalid_argument("restricted_frame_potential: q not a prime power");
    ExtField f(p, k);
    Sl2Table sl2 = sl2q_group(f);
    return restricted_frame_potential(f, sl2, t);
}

cmat twirl_clifford(const CliffordTable& table, std::uint32_t t, const cmat& a) {
    const SymplecticSpace& s = table.space();
    const PauliAlgebra& pauli = table.pauli();
    const std::uint32_t q2 = s.num_vectors();
    const Eigen::Index dt = a.rows();

    // Inner average over the displacement coset; phases cancel, so any
    // representative per coset gives the same sandwich.
    cmat inner = cmat::Zero(dt, dt);
    for (std::uint32_t mu = 0; mu < q2; ++mu) {
        const cmat dm = tensor_power(pauli.matrix({mu, 0}), t);
        inner.noalias() += dm * a * dm.adjoint();
    }
    inner /= static_cast<double>(q2);

    // One representative unitary per induced symplectic image, in table order.
    std::vector<std::uint32_t> reps;
    std::unordered_map<SympMatrix, std::uint8_t, SympMatrixHash> seen;
    for (std::size_t i = 0; i < table.size(); ++i)
        if (seen.emplace(table.key(i).induced, 1).second)
            reps.push_back(static_cast<std::uint32_t>(i));

    cmat sum = chunked_reduce(
        reps.size(), cmat(cmat::Zero(dt, dt)),
        [&](cmat& part, std::size_t i) {
            const cmat ut = tensor_power(table.unitary(reps[i]), t);
            part.noalias() += ut * inner * ut.adjoint();
        },
        [](cmat& total, const cmat& part) { total += part; },
        /*chunk=*/64);
    return sum / static_cast<double>(reps.size());
}

A6Report a6_preimage_potentials(const SymplecticSpace& s, const SpGroupTable& sp42) {
    if (s.p() != 2 || s.n() != 2)
        throw std::invalid_argument("a6_preimage_potentials: needs Sp(4, 2)");
    IndexedGroup ig = IndexedGroup::build(sp42);
    const std::vector<std::uint32_t> derived = derived_subgroup_indices(ig);
    A6Report report;
    report.subgroup_order = derived.size();
    report.preimage_order = static_cast<std::uint64_t>(s.num_vectors()) * derived.size();
    report.subgroup.reserve(derived.size());
    for (std::uint32_t idx : derived) report.subgroup.push_back(sp42.element(idx));
    auto hist = fixed_point_histogram(s, report.subgroup);
    report.phi2 = frame_potential_from_histogram(hist, 2);
    report.phi3 = frame_potential_from_histogram(hist, 3);
    report.phi4 = frame_potential_from_histogram(hist, 4);
    return report;
}

}  // namespace qdv
