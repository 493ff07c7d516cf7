#include "qdv/designs.hpp"

#include <algorithm>
#include <cmath>

#include "qdv/parallel.hpp"

namespace qdv {

bool gamma_supported(std::uint32_t t, std::uint32_t d) { return d == 2 || d >= t; }

std::uint64_t gamma_haar(std::uint32_t t, std::uint32_t d) {
    if (t < 1 || d < 2) throw UnsupportedGammaError("gamma: need t >= 1, d >= 2");
    if (d == 2) {
        // Catalan number (2t)! / (t! (t+1)!).
        std::uint64_t num = 1, den = 1;
        for (std::uint32_t i = 0; i < t; ++i) {
            num *= 2 * t - i;
            den *= i + 1;
        }
        return num / den / (t + 1);
    }
    if (d >= t) {
        std::uint64_t f = 1;
        for (std::uint32_t i = 2; i <= t; ++i) f *= i;
        return f;
    }
    throw UnsupportedGammaError("gamma(t, d) is only known for d = 2 or d >= t");
}

std::vector<double> frame_potential_set(std::span<const cmat> unitaries,
                                        std::span<const std::uint32_t> ts) {
    if (unitaries.empty()) throw std::invalid_argument("frame_potential_set: empty set");
    const std::size_t k = unitaries.size();
    const Eigen::Index d = unitaries[0].rows();
    // Flatten to d^2-long vectors so a pair overlap is one dot product.
    std::vector<cvec> flat(k);
    for (std::size_t i = 0; i < k; ++i) {
        flat[i] = cvec(d * d);
        for (Eigen::Index c = 0; c < d; ++c)
            flat[i].segment(c * d, d) = unitaries[i].col(c);
    }
    std::vector<KahanSum> sums = chunked_reduce(
        k, std::vector<KahanSum>(ts.size()),
        [&](std::vector<KahanSum>& part, std::size_t j) {
            for (std::size_t l = 0; l < k; ++l) {
                const double overlap = std::norm(flat[j].dot(flat[l]));
                for (std::size_t w = 0; w < ts.size(); ++w) {
                    double term = 1.0;
                    for (std::uint32_t i = 0; i < ts[w]; ++i) term *= overlap;
                    part[w].add(term);
                }
            }
        },
        [](std::vector<KahanSum>& total, const std::vector<KahanSum>& part) {
            for (std::size_t w = 0; w < total.size(); ++w) total[w].merge(part[w]);
        },
        /*chunk=*/64);
    std::vector<double> out(ts.size());
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    for (std::size_t w = 0; w < ts.size(); ++w) out[w] = sums[w].value() / kk;
    return out;
}

double frame_potential_set(std::span<const cmat> unitaries, std::uint32_t t) {
    const std::uint32_t ts[1] = {t};
    return frame_potential_set(unitaries, ts)[0];
}

double frame_potential_group(
    std::span<const cmat> unitaries, std::uint32_t t,
    const std::function<bool(std::size_t, std::size_t)>& closure_spot_check) {
    if (unitaries.empty()) throw std::invalid_argument("frame_potential_group: empty set");
    if (closure_spot_check) {
        const std::size_t k = unitaries.size();
        for (std::size_t i = 0; i < std::min<std::size_t>(k, 8); ++i)
            if (!closure_spot_check(i * 2654435761ull % k, (i * 40503ull + 1) % k))
                throw ContractError("frame_potential_group: set not closed under product");
    }
    const double sum = chunked_kahan_sum(unitaries.size(), [&](std::size_t i) {
        const double overlap = std::norm(unitaries[i].trace());
        double term = 1.0;
        for (std::uint32_t w = 0; w < t; ++w) term *= overlap;
        return term;
    });
    return sum / static_cast<double>(unitaries.size());
}

Rational frame_potential_group_exact(std::span<const std::uint64_t> trace_sq,
                                     std::uint32_t t) {
    std::uint64_t sum = 0;
    for (std::uint64_t v : trace_sq) {
        std::uint64_t term = 1;
        for (std::uint32_t w = 0; w < t; ++w) term *= v;
        sum += term;
    }
    return Rational::of(sum, trace_sq.size());
}

std::uint64_t frame_potential_orbit_count(
    const std::vector<std::vector<std::uint32_t>>& vector_perms, std::uint32_t num_vectors,
    std::uint32_t t, std::uint64_t domain_cap) {
    if (t < 2) return 1;  // empty tuple domain: a single orbit
    const std::uint32_t arity = t - 1;
    std::uint64_t domain = 1;
    for (std::uint32_t i = 0; i < arity; ++i) {
        domain *= num_vectors;
        if (domain > domain_cap)
            throw SizeLimitError("frame_potential_orbit_count: tuple domain too large");
    }
    std::vector<std::uint32_t> orbit_of(domain, UINT32_MAX);
    std::vector<std::uint64_t> stack;
    std::vector<std::uint32_t> digits(arity);
    std::uint64_t orbits = 0;
    for (std::uint64_t start = 0; start < domain; ++start) {
        if (orbit_of[start] != UINT32_MAX) continue;
        const std::uint32_t oid = static_cast<std::uint32_t>(orbits++);
        stack.assign(1, start);
        orbit_of[start] = oid;
        while (!stack.empty()) {
            const std::uint64_t tup = stack.back();
            stack.pop_back();
            std::uint64_t rest = tup;
            for (std::uint32_t i = 0; i < arity; ++i) {
                digits[i] = static_cast<std::uint32_t>(rest % num_vectors);
                rest /= num_vectors;
            }
            for (const auto& perm : vector_perms) {
                std::uint64_t img = 0;
                for (std::uint32_t i = arity; i-- > 0;)
                    img = img * num_vectors + perm[digits[i]];
                if (orbit_of[img] == UINT32_MAX) {
                    orbit_of[img] = oid;
                    stack.push_back(img);
                }
            }
        }
    }
    return orbits;
}

cmat tensor_power(const cmat& u, std::uint32_t t) {
    cmat out = cmat::Identity(1, 1);
    for (std::uint32_t i = 0; i < t; ++i) {
        cmat next(out.rows() * u.rows(), out.cols() * u.cols());
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            for (Eigen::Index c = 0; c < out.cols(); ++c)
                next.block(r * u.rows(), c * u.cols(), u.rows(), u.cols()) = out(r, c) * u;
        out = std::move(next);
    }
    return out;
}

cmat twirl(std::span<const cmat> unitaries, std::uint32_t t, const cmat& a) {
    if (unitaries.empty()) throw std::invalid_argument("twirl: empty set");
    const Eigen::Index dt = a.rows();
    cmat sum = chunked_reduce(
        unitaries.size(), cmat(cmat::Zero(dt, dt)),
        [&](cmat& part, std::size_t i) {
            const cmat ut = tensor_power(unitaries[i], t);
            part.noalias() += ut * a * ut.adjoint();
        },
        [](cmat& total, const cmat& part) { total += part; },
        /*chunk=*/256);
    return sum / static_cast<double>(unitaries.size());
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        num *= n - k + i;
        den *= i;
        const std::uint64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    return num / den;
}

cmat symmetric_projector(std::uint32_t d, std::uint32_t t) {
    std::uint64_t dt = 1;
    for (std::uint32_t i = 0; i < t; ++i) dt *= d;
    if (dt > 4096) throw SizeLimitError("symmetric_projector: d^t too large");
    cmat proj = cmat::Zero(dt, dt);
    std::vector<std::uint32_t> perm(t);
    for (std::uint32_t i = 0; i < t; ++i) perm[i] = i;
    std::uint64_t nperm = 0;
    std::vector<std::uint32_t> digits(t);
    do {
        ++nperm;
        for (std::uint64_t col = 0; col < dt; ++col) {
            std::uint64_t rest = col;
            for (std::uint32_t i = t; i-- > 0;) {
                digits[i] = static_cast<std::uint32_t>(rest % d);
                rest /= d;
            }
            std::uint64_t row = 0;
            for (std::uint32_t i = 0; i < t; ++i) row = row * d + digits[perm[i]];
            proj(row, col) += 1.0;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    proj /= static_cast<double>(nperm);
    return proj;
}

ProjectiveDesignReport projective_design_check(std::span<const cvec> states, std::uint32_t t,
                                               bool with_frame_potential, double tol_scale) {
    if (states.empty()) throw std::invalid_argument("projective_design_check: no states");
    const std::uint32_t d = static_cast<std::uint32_t>(states[0].size());
    for (const cvec& psi : states)
        if (std::abs(psi.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("projective_design_check: state not normalized");

    std::uint64_t dt = 1;
    for (std::uint32_t i = 0; i < t; ++i) dt *= d;
    const std::size_t k = states.size();

    // Columns psi^{ot}; the moment operator is M M^dag.
    cmat m(dt, k);
    for (std::size_t j = 0; j < k; ++j) {
        cvec col = cvec::Ones(1);
        for (std::uint32_t i = 0; i < t; ++i) {
            cvec next(col.size() * d);
            for (Eigen::Index r = 0; r < col.size(); ++r)
                next.segment(r * d, d) = col(r) * states[j];
            col = std::move(next);
        }
        m.col(j) = col;
    }
    const cmat moment = m * m.adjoint();
    const double scale =
        static_cast<double>(k) / static_cast<double>(binomial(d + t - 1, t));
    ProjectiveDesignReport report;
    report.projector_residual = (moment - scale * symmetric_projector(d, t)).norm();
    report.projector_tol = tol_scale * static_cast<double>(k);
    report.pass = report.projector_residual <= report.projector_tol;
    report.expected_frame_potential = 1.0 / static_cast<double>(binomial(d + t - 1, t));
    if (with_frame_potential) {
        const double sum = chunked_kahan_sum(k, [&](std::size_t i) {
            double row = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                const double ov = std::norm(states[i].dot(states[j]));
                double term = 1.0;
                for (std::uint32_t w = 0; w < t; ++w) term *= ov;
                row += term;
            }
            return row;
        });
        report.frame_potential = sum / (static_cast<double>(k) * static_cast<double>(k));
    }
    return report;
}

std::uint64_t min_3design_size(std::uint32_t d) {
    const std::uint64_t d2 = static_cast<std::uint64_t>(d) * d;
    return d2 * (d2 * d2 - 3 * d2 + 6) / 2;
}

std::uint32_t design_strength(const std::vector<Rational>& phi_by_t, std::uint32_t d,
                              std::uint32_t t_max) {
    if (phi_by_t.size() < t_max)
        throw std::invalid_argument("design_strength: need phi for every t <= t_max");
    std::uint32_t strength = 0;
    for (std::uint32_t t = 1; t <= t_max; ++t) {
        const Rational want = Rational::of(gamma_haar(t, d), 1);
        if (phi_by_t[t - 1] == want) strength = t;
    }
    return strength;
}

}  // namespace qdv
