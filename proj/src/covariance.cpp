#include "qdv/covariance.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qdv/indexed_group.hpp"

namespace qdv {

void check_operator_basis(const OperatorBasis& basis, double cond_tol) {
    const std::size_t m = basis.ops.size();
    if (m == 0) throw std::invalid_argument("operator basis: empty");
    const Eigen::Index d = basis.ops[0].rows();
    if (m != static_cast<std::size_t>(d) * d)
        throw std::invalid_argument("operator basis: need d^2 operators");
    cmat gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            gram(i, j) = (basis.ops[i].adjoint() * basis.ops[j]).trace();
    Eigen::JacobiSVD<cmat> svd(gram);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < cond_tol * sv(0))
        throw std::invalid_argument("operator basis: Gram matrix numerically singular");
}

OperatorBasis phase_point_basis(const PauliAlgebra& pauli) {
    const SymplecticSpace& s = pauli.space();
    if (s.p() == 2 || s.n() != 1)
        throw std::invalid_argument("phase_point_basis: odd prime dimension only");
    const std::uint32_t d = pauli.d(), q2 = s.num_vectors();
    OperatorBasis basis;
    basis.ops.reserve(q2);
    for (std::uint32_t mu = 0; mu < q2; ++mu) {
        cmat a = cmat::Zero(d, d);
        for (std::uint32_t nu = 0; nu < q2; ++nu)
            a += pauli.tau_power(2 * s.symp_product(mu, nu)) * pauli.matrix({nu, 0});
        basis.ops.push_back(a / static_cast<double>(d));
    }
    check_operator_basis(basis);
    return basis;
}

CovarianceResult is_covariant(const OperatorBasis& basis, std::span<const cmat> group,
                              double tol) {
    const std::size_t m = basis.ops.size();
    CovarianceResult result;
    result.invariant = true;
    result.invariant_up_to_phase = true;
    result.perms.reserve(group.size());
    for (const cmat& u : group) {
        std::vector<std::uint32_t> perm(m, UINT32_MAX);
        for (std::size_t j = 0; j < m; ++j) {
            const cmat image = u * basis.ops[j] * u.adjoint();
            std::optional<std::size_t> exact;
            bool phase_match = false;
            for (std::size_t k = 0; k < m; ++k) {
                if ((image - basis.ops[k]).norm() <= tol) {
                    if (exact)
                        throw InternalConsistencyError(
                            "is_covariant: two basis elements within tolerance");
                    exact = k;
                }
                // Phase-insensitive diagnostic: |tr(L_k^dag M)| = ||L_k||^2
                // with matching norms means M = phase * L_k.
                const double inner = std::abs((basis.ops[k].adjoint() * image).trace());
                const double norm2 = basis.ops[k].squaredNorm();
                if (std::abs(inner - norm2) <= tol * std::max(1.0, norm2) &&
                    std::abs(image.norm() - basis.ops[k].norm()) <= tol)
                    phase_match = true;
            }
            if (exact)
                perm[j] = static_cast<std::uint32_t>(*exact);
            else
                result.invariant = false;
            if (!phase_match) result.invariant_up_to_phase = false;
        }
        if (result.invariant) result.perms.push_back(std::move(perm));
    }
    if (result.invariant) {
        std::vector<std::uint8_t> reached(m, 0);
        std::vector<std::uint32_t> stack{0};
        reached[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            const std::uint32_t x = stack.back();
            stack.pop_back();
            for (const auto& perm : result.perms)
                if (!reached[perm[x]]) {
                    reached[perm[x]] = 1;
                    ++count;
                    stack.push_back(perm[x]);
                }
        }
        result.transitive = count == m;
    }
    result.covariant = result.invariant && result.transitive;
    return result;
}

TripleProductReport triple_products(const OperatorBasis& basis) {
    const std::size_t m = basis.ops.size();
    TripleProductReport report;
    std::vector<std::complex<double>> values;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = 0; l < m; ++l) {
                if (j == k || k == l || j == l) continue;
                values.push_back((basis.ops[j] * basis.ops[k] * basis.ops[l]).trace());
            }
    report.all_real = true;
    for (const auto& v : values) {
        if (std::abs(v.imag()) > 1e-8) report.all_real = false;
        bool matched = false;
        for (const auto& c : report.cluster_values)
            if (std::abs(v - c) <= 1e-8) {
                matched = true;
                break;
            }
        if (!matched) report.cluster_values.push_back(v);
    }
    report.cluster_count = report.cluster_values.size();
    return report;
}

CovariantSearchReport covariant_basis_search(const CliffordTable& table) {
    const std::uint32_t d = table.d();
    const std::size_t m = static_cast<std::size_t>(d) * d;  // required orbit size
    if (table.size() % m != 0)
        throw std::invalid_argument("covariant_basis_search: |G| not divisible by d^2");
    const std::uint64_t target_order = table.size() / m;

    GroupTable<std::uint32_t> as_group = table.to_group_table();
    IndexedGroup ig = IndexedGroup::build(as_group);
    const auto subgroups = subgroup_scan(ig, target_order);

    CovariantSearchReport report;
    for (const SubgroupNode& node : subgroups) {
        if (node.order != target_order) continue;
        ++report.subgroups_scanned;
        // Averaging projector onto H-invariant operators as a superoperator
        // on column-stacked vec(L): T = (1/|H|) sum conj(U) (x) U.
        cmat t_super = cmat::Zero(m, m);
        for (std::uint32_t e : node.elements) {
            const cmat& u = table.unitary(e);
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index k = 0; k < d; ++k)
                    for (Eigen::Index j = 0; j < d; ++j)
                        for (Eigen::Index l = 0; l < d; ++l)
                            t_super(i * d + k, j * d + l) += std::conj(u(i, j)) * u(k, l);
        }
        t_super /= static_cast<double>(node.order);

        auto vec_to_matrix = [&](const cvec& v) {
            cmat l(d, d);
            for (Eigen::Index col = 0; col < d; ++col) l.col(col) = v.segment(col * d, d);
            return l;
        };

        // Candidates: an orthonormal basis of the fixed space, plus the
        // averaged projection of every matrix unit (a dense sample grid
        // pushed through the projector).
        std::vector<cmat> candidates;
        Eigen::SelfAdjointEigenSolver<cmat> eig(t_super);
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
            if (std::abs(eig.eigenvalues()(i) - 1.0) > 1e-8) continue;
            candidates.push_back(vec_to_matrix(eig.eigenvectors().col(i)));
        }
        for (std::size_t idx = 0; idx < m; ++idx) {
            cvec unit = cvec::Zero(m);
            unit(idx) = 1.0;
            const cvec proj = t_super * unit;
            if (proj.norm() < 1e-9) continue;
            candidates.push_back(vec_to_matrix(proj));
        }

        for (cmat& cand : candidates) {
            const double norm = cand.norm();
            if (norm < 1e-9) continue;
            cand /= norm;
            ++report.candidates_tried;
            std::vector<cmat> orbit;
            bool too_big = false;
            for (std::size_t i = 0; i < table.size() && !too_big; ++i) {
                const cmat img = table.unitary(i) * cand * table.unitary(i).adjoint();
                bool known = false;
                for (const cmat& o : orbit)
                    if ((img - o).norm() <= 1e-7) {
                        known = true;
                        break;
                    }
                if (!known) {
                    orbit.push_back(img);
                    if (orbit.size() > m) too_big = true;
                }
            }
            if (too_big || orbit.size() != m) continue;
            cmat stacked(m, orbit.size());
            for (std::size_t i = 0; i < orbit.size(); ++i)
                for (Eigen::Index col = 0; col < d; ++col)
                    stacked.col(i).segment(col * d, d) = orbit[i].col(col);
            Eigen::JacobiSVD<cmat> svd(stacked);
            const auto& sv = svd.singularValues();
            if (sv(sv.size() - 1) > 1e-6 * sv(0)) {
                report.found = true;
                report.basis = OperatorBasis{std::move(orbit)};
                return report;
            }
        }
    }
    return report;
}

}  // namespace qdv
