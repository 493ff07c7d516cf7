#include "qdv/stabilizer.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "qdv/rng.hpp"

namespace qdv {

namespace {

// Reduced row echelon form of the basis, as the canonical key of a subspace.
std::vector<std::uint32_t> rref_basis(const SymplecticSpace& s,
                                      std::vector<std::uint32_t> rows) {
    const std::uint32_t dim = s.dim();
    std::size_t rank = 0;
    for (std::uint32_t col = 0; col < dim && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && s.digit(rows[pivot], col) == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const std::uint32_t inv = s.field().inv(s.digit(rows[rank], col));
        rows[rank] = s.scale(inv, rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            const std::uint32_t c = s.digit(rows[r], col);
            if (c) rows[r] = s.sub(rows[r], s.scale(c, rows[rank]));
        }
        ++rank;
    }
    rows.resize(rank);
    std::sort(rows.begin(), rows.end());
    return rows;
}

struct VecKeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

std::vector<IsotropicSubspace> enumerate_lagrangians(const SymplecticSpace& s) {
    const std::uint32_t n = s.n(), q2 = s.num_vectors();
    // Grow isotropic subspaces one dimension at a time, deduplicating by the
    // canonical reduced basis.
    std::unordered_set<std::vector<std::uint32_t>, VecKeyHash> level;
    level.emplace();  // the empty basis seeds dimension zero
    for (std::uint32_t dim = 0; dim < n; ++dim) {
        std::unordered_set<std::vector<std::uint32_t>, VecKeyHash> next;
        for (const auto& basis : level) {
            for (std::uint32_t v = 1; v < q2; ++v) {
                bool orthogonal = true;
                for (std::uint32_t b : basis)
                    if (s.symp_product(b, v) != 0) {
                        orthogonal = false;
                        break;
                    }
                if (!orthogonal) continue;
                std::vector<std::uint32_t> grown = basis;
                grown.push_back(v);
                auto canon = rref_basis(s, grown);
                if (canon.size() == dim + 1) next.insert(std::move(canon));
            }
        }
        level = std::move(next);
    }
    std::vector<IsotropicSubspace> out;
    out.reserve(level.size());
    for (const auto& basis : level) out.push_back({basis});
    std::sort(out.begin(), out.end(),
              [](const IsotropicSubspace& a, const IsotropicSubspace& b) {
                  return a.basis < b.basis;
              });
    std::uint64_t expected = 1, pk = 1;
    for (std::uint32_t k = 1; k <= n; ++k) {
        pk *= s.p();
        expected *= pk + 1;
    }
    if (out.size() != expected)
        throw InternalConsistencyError("enumerate_lagrangians: count != prod (p^k + 1)");
    return out;
}

std::vector<StabilizerState> enumerate_stabilizer_states(const PauliAlgebra& pauli) {
    const SymplecticSpace& s = pauli.space();
    const std::uint32_t p = s.p(), n = s.n(), d = pauli.d();
    const auto lagrangians = enumerate_lagrangians(s);

    std::vector<StabilizerState> states;
    states.reserve(static_cast<std::size_t>(d) * lagrangians.size());
    std::vector<std::uint32_t> character(n);
    for (const IsotropicSubspace& sub : lagrangians) {
        std::vector<cmat> gens;
        for (std::uint32_t b : sub.basis) gens.push_back(pauli.matrix({b, 0}));
        for (std::uint32_t chi = 0; chi < d; ++chi) {
            std::uint32_t rest = chi;
            for (std::uint32_t i = 0; i < n; ++i) {
                character[i] = rest % p;
                rest /= p;
            }
            // Projector onto the joint eigenspace: prod_i (1/p) sum_m
            // (omega^{-chi_i} g_i)^m.
            cmat proj = cmat::Identity(d, d);
            for (std::uint32_t i = 0; i < n; ++i) {
                cmat factor = cmat::Zero(d, d);
                cmat power = cmat::Identity(d, d);
                const cmat scaled =
                    pauli.tau_power(2 * ((p - character[i]) % p)) * gens[i];
                for (std::uint32_t m = 0; m < p; ++m) {
                    factor += power;
                    power = scaled * power;
                }
                proj = proj * factor / static_cast<double>(p);
            }
            const double rank = proj.trace().real();
            if (std::abs(rank - 1.0) > 1e-9)
                throw InternalConsistencyError(
                    "stabilizer state: joint eigenprojector is not rank one");
            // Normalize the dominant column; deterministic tie-break.
            Eigen::Index best = 0;
            double best_val = -1.0;
            for (Eigen::Index c = 0; c < proj.cols(); ++c) {
                const double v = proj(c, c).real();
                if (v > best_val + 1e-12) {
                    best_val = v;
                    best = c;
                }
            }
            StabilizerState st;
            st.subspace = sub;
            st.character.assign(character.begin(), character.end());
            st.vec = canonicalize_state(proj.col(best) / proj.col(best).norm());
            for (std::uint32_t i = 0; i < n; ++i) {
                const cmat g = pauli.tau_power(2 * ((p - character[i]) % p)) * gens[i];
                if ((g * st.vec - st.vec).norm() > 1e-9)
                    throw InternalConsistencyError(
                        "stabilizer state: not a joint eigenvector");
            }
            states.push_back(std::move(st));
        }
    }
    return states;
}

cvec canonicalize_state(const cvec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > 1e-6) return v * (std::conj(v(i)) / mag);
    }
    return v;
}

std::vector<cvec> clifford_orbit_states(const CliffordTable& table, const cvec& psi) {
    // Quantized fingerprint of the canonical form.
    auto fingerprint = [](const cvec& v) {
        std::string key;
        key.reserve(v.size() * 16);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const long long re = std::llround(v(i).real() * 1e8);
            const long long im = std::llround(v(i).imag() * 1e8);
            key.append(reinterpret_cast<const char*>(&re), sizeof re);
            key.append(reinterpret_cast<const char*>(&im), sizeof im);
        }
        return key;
    };
    std::vector<cvec> orbit;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < table.size(); ++i) {
        cvec img = canonicalize_state(table.unitary(i) * psi);
        if (seen.insert(fingerprint(img)).second) orbit.push_back(std::move(img));
    }
    return orbit;
}

OrbitDesignReport clifford_orbit_design_check(const CliffordTable& table, std::uint64_t seed,
                                              std::uint32_t t) {
    Rng rng(seed);
    const cvec psi = rng.random_state(table.d());
    const std::vector<cvec> orbit = clifford_orbit_states(table, psi);
    OrbitDesignReport report;
    report.orbit_size = orbit.size();
    report.design = projective_design_check(orbit, t, /*with_frame_potential=*/false);
    return report;
}

}  // namespace qdv
