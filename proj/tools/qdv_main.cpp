// qdv: verification CLI for Clifford-group design facts.
//
//   qdv verify-all            run the whole suite and print a report table
//   qdv frame-potential ...   one frame potential by a chosen method
//   qdv stabilizer ...        stabilizer-state design checks
//   qdv rank3-scan ...        rank-3 subgroup scan / order arithmetic
//   qdv covariance ...        covariant operator-basis checks
//   qdv subgroup-min ...      minimality checks
//   qdv cache rebuild         regenerate the group cache
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qdv/clifford.hpp"
#include "qdv/covariance.hpp"
#include "qdv/designs.hpp"
#include "qdv/group_cache.hpp"
#include "qdv/indexed_group.hpp"
#include "qdv/parallel.hpp"
#include "qdv/report.hpp"
#include "qdv/stabilizer.hpp"
#include "qdv/symplectic.hpp"
#include "qdv/verify.hpp"

namespace {

struct GlobalOpts {
    qdv::RunConfig cfg;
    std::string format = "table";
    bool omit_runtime = false;
};

std::pair<std::uint32_t, std::uint32_t> parse_dim(std::uint32_t d) {
    switch (d) {
        case 2: return {2, 1};
        case 3: return {3, 1};
        case 4: return {2, 2};
        case 5: return {5, 1};
        case 8: return {2, 3};
        case 9: return {3, 2};
    }
    throw CLI::ValidationError("--dim", "supported dimensions: 2, 3, 4, 5, 8, 9");
}

int cmd_verify_all(const GlobalOpts& opts) {
    using namespace qdv;
    auto results = run_acceptance_suite(opts.cfg);

    // Criterion 14: rerun single-threaded against the (now warm) cache and
    // compare everything but runtimes.
    RunConfig rerun_cfg = opts.cfg;
    rerun_cfg.threads = 1;
    auto rerun = run_acceptance_suite(rerun_cfg);
    CriterionResult det;
    det.id = 14;
    det.title = "reports are bit-identical across thread counts and cache states";
    det.pass = determinism_fingerprint(results) == determinism_fingerprint(rerun);
    det.reports.push_back({"determinism", "fingerprint-compare", "{runs:2}",
                           det.pass ? "identical" : "DIFFERENT", "identical", det.pass, 0.0,
                           opts.cfg.seed});
    results.push_back(det);

    std::cout << render_reports(flatten_reports(results), opts.format, opts.omit_runtime);
    if (opts.format == "table") {
        std::cout << "\n";
        for (const auto& c : results)
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": "
                      << c.title << "\n";
    }
    return all_pass(results) ? 0 : 1;
}

int cmd_frame_potential(const GlobalOpts& opts, std::uint32_t dim, std::uint32_t t,
                        const std::string& group, const std::string& method) {
    using namespace qdv;
    std::string value;
    Rational exact;
    bool have_exact = false;

    if (group == "restricted") {
        if (method != "fixed-points")
            throw CLI::ValidationError("--method",
                                       "restricted group supports method fixed-points");
        const RestrictedPotential rp = restricted_frame_potential(dim, t);
        exact = rp.closed_form;
        have_exact = true;
        value = exact.str();
    } else if (method == "fixed-points") {
        const auto [p, n] = parse_dim(dim);
        SymplecticSpace s(p, n);
        SpGroupTable table = sp_group(s);
        exact = frame_potential_fixed_points(s, table.elements(), t);
        have_exact = true;
        value = exact.str();
    } else if (method == "orbits") {
        const auto [p, n] = parse_dim(dim);
        SymplecticSpace s(p, n);
        const auto perms = sp_vector_permutations(s, sp_generators(s));
        // Generator sweep is enough for orbit counting, but validate the
        // generating set first.
        SpGroupTable table = sp_group(s);
        (void)table;
        const std::uint64_t orbits = frame_potential_orbit_count(perms, s.num_vectors(), t);
        exact = Rational::of(orbits, 1);
        have_exact = true;
        value = exact.str();
    } else if (method == "direct") {
        if (dim > 5)
            throw CLI::ValidationError("--method", "direct sums need dim <= 5");
        const auto [p, n] = parse_dim(dim);
        CliffordTable table = CliffordTable::enumerate(p, n);
        const double v = frame_potential_set(table.unitaries(), t);
        value = format_float(v);
        const double rounded = std::round(v);
        if (std::abs(v - rounded) <= opts.cfg.pot_tol) {
            exact = Rational::of(static_cast<std::uint64_t>(rounded), 1);
            have_exact = true;
        }
    } else {
        throw CLI::ValidationError("--method", "unknown method " + method);
    }

    std::cout << "phi_" << t << "(" << group << ", d=" << dim << ") = " << value << "\n";
    if (gamma_supported(t, dim)) {
        const std::uint64_t g = gamma_haar(t, dim);
        std::cout << "gamma(" << t << ", " << dim << ") = " << g << "\n";
        if (have_exact) {
            const bool is_design = exact == Rational::of(g, 1);
            std::cout << t << "-design: " << (is_design ? "yes" : "no") << "\n";
        }
    } else {
        std::cout << t << "-design: undetermined (gamma unknown)\n";
    }
    return 0;
}

int cmd_stabilizer(std::uint32_t qubits, std::uint32_t t, const std::string& dump) {
    using namespace qdv;
    PauliAlgebra pauli(SymplecticSpace(2, qubits));
    const auto states = enumerate_stabilizer_states(pauli);
    std::vector<cvec> vecs;
    vecs.reserve(states.size());
    for (const auto& st : states) vecs.push_back(st.vec);
    if (!dump.empty()) {
        // One unit-norm state per line, amplitudes as re,im pairs separated
        // by spaces, in the canonical global phase.
        std::ofstream out(dump, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + dump);
        for (const cvec& v : vecs) {
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                if (i) out << ' ';
                out << format_float(v(i).real()) << ',' << format_float(v(i).imag());
            }
            out << '\n';
        }
        std::cout << "wrote " << vecs.size() << " states to " << dump << "\n";
    }
    const auto report = projective_design_check(vecs, t, true);
    std::cout << states.size() << " stabilizer states at d = " << pauli.d() << "\n";
    std::cout << "projector residual = " << format_float(report.projector_residual)
              << " (tol " << format_float(report.projector_tol) << ")\n";
    std::cout << "frame potential = " << format_float(*report.frame_potential)
              << " (Haar " << format_float(report.expected_frame_potential) << ")\n";
    std::cout << t << "-design: " << (report.pass ? "yes" : "no") << "\n";
    return report.pass ? 0 : 1;
}

int cmd_rank3_scan(std::uint32_t n) {
    using namespace qdv;
    if (n == 3) {
        const std::uint64_t bound = (1ull << 5) * ((1ull << 4) - 1) * ((1ull << 6) - 1);
        std::cout << "2^(2n-1) (2^(2n-2)-1) (2^(2n)-1) = " << bound << " for n = 3\n";
        std::cout << "6048 divisible by " << bound << ": "
                  << (6048 % bound == 0 ? "yes" : "no") << "\n";
        std::cout << "12096 divisible by " << bound << ": "
                  << (12096 % bound == 0 ? "yes" : "no") << "\n";
        return bound == 30240 && 6048 % bound && 12096 % bound ? 0 : 1;
    }
    if (n != 2) throw CLI::ValidationError("--n", "supported: 2 (scan) or 3 (arithmetic)");
    SymplecticSpace s(2, 2);
    SpGroupTable sp42 = sp_group(s);
    IndexedGroup ig = IndexedGroup::build(sp42);
    const auto subgroups = subgroup_scan(ig, sp42.order());
    const auto perms = sp_vector_permutations(s, sp42.elements());
    const std::uint32_t q2 = s.num_vectors();
    std::uint64_t found = 0;
    for (const auto& node : subgroups) {
        if (node.order == sp42.order() || node.order % (q2 - 1) != 0) continue;
        if (node.generators.empty()) continue;
        std::vector<std::uint8_t> reached(q2, 0);
        std::vector<std::uint32_t> stack{1};
        reached[1] = 1;
        std::uint32_t count = 1;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t g : node.generators)
                if (!reached[perms[g][v]]) {
                    reached[perms[g][v]] = 1;
                    ++count;
                    stack.push_back(perms[g][v]);
                }
        }
        if (count != q2 - 1) continue;
        std::vector<std::uint32_t> stab;
        for (std::uint32_t e : node.elements)
            if (perms[e][1] == 1) stab.push_back(e);
        std::vector<std::uint32_t> orbit_of(q2, UINT32_MAX);
        std::uint32_t orbit_count = 0;
        for (std::uint32_t v = 1; v < q2; ++v) {
            if (orbit_of[v] != UINT32_MAX) continue;
            ++orbit_count;
            std::vector<std::uint32_t> st2{v};
            orbit_of[v] = v;
            while (!st2.empty()) {
                const std::uint32_t x = st2.back();
                st2.pop_back();
                for (std::uint32_t e : stab)
                    if (orbit_of[perms[e][x]] == UINT32_MAX) {
                        orbit_of[perms[e][x]] = v;
                        st2.push_back(perms[e][x]);
                    }
            }
        }
        if (orbit_count == 3) {
            ++found;
            std::cout << "proper transitive rank-3 subgroup of order " << node.order << "\n";
        }
    }
    std::cout << found << " proper transitive rank-3 subgroup(s) among " << subgroups.size()
              << " subgroups\n";
    return found == 1 ? 0 : 1;
}

int cmd_covariance(std::uint32_t dim) {
    using namespace qdv;
    if (dim == 3) {
        CliffordTable table = CliffordTable::enumerate(3, 1);
        PauliAlgebra pauli(SymplecticSpace(3, 1));
        const OperatorBasis pp = phase_point_basis(pauli);
        const CovarianceResult cov = is_covariant(pp, table.unitaries());
        const TripleProductReport tp = triple_products(pp);
        std::cout << "phase-point basis under the d=3 Clifford group: "
                  << (cov.covariant ? "covariant and transitive" : "NOT covariant") << "\n";
        std::cout << "triple products: " << tp.cluster_count << " clusters, "
                  << (tp.all_real ? "all real" : "non-real values present") << "\n";
        const CovariantSearchReport search = covariant_basis_search(table);
        std::cout << "orbit search over index-9 subgroups: "
                  << (search.found ? "found a covariant basis" : "none found") << "\n";
        return cov.covariant && !tp.all_real && search.found ? 0 : 1;
    }
    if (dim != 2) throw CLI::ValidationError("--dim", "supported: 2 (no-go) or 3 (control)");
    CliffordTable table = CliffordTable::enumerate(2, 1);
    const CovariantSearchReport search = covariant_basis_search(table);
    std::cout << "searched " << search.subgroups_scanned << " order-6 subgroups, "
              << search.candidates_tried << " candidates\n";
    std::cout << (search.found ? "covariant operator basis FOUND (unexpected)"
                               : "no covariant operator basis exists")
              << "\n";
    return search.found ? 1 : 0;
}

int cmd_subgroup_min(std::uint32_t dim) {
    using namespace qdv;
    if (dim == 4) {
        SymplecticSpace s(2, 2);
        SpGroupTable sp42 = sp_group(s);
        const A6Report a6 = a6_preimage_potentials(s, sp42);
        std::cout << "A6 copy: order " << a6.subgroup_order << ", preimage order "
                  << a6.preimage_order << "\n";
        std::cout << "phi2 = " << a6.phi2.str() << ", phi3 = " << a6.phi3.str()
                  << ", phi4 = " << a6.phi4.str() << "\n";
        std::cout << "minimal 3-design size at d=4: " << min_3design_size(4) << "\n";
        return a6.phi3 == Rational::of(6, 1) ? 0 : 1;
    }
    if (dim != 2) throw CLI::ValidationError("--dim", "supported: 2 or 4");
    CliffordTable c2 = CliffordTable::enumerate(2, 1);
    const auto tsq = c2.trace_sq_integers();
    GroupTable<std::uint32_t> as_group = c2.to_group_table();
    IndexedGroup ig = IndexedGroup::build(as_group);
    const auto subgroups = subgroup_scan(ig, c2.size());
    std::uint64_t reaching = 0;
    for (const auto& node : subgroups) {
        if (node.order == c2.size()) continue;
        std::uint64_t sum = 0;
        for (std::uint32_t e : node.elements) sum += tsq[e] * tsq[e] * tsq[e];
        if (Rational::of(sum, node.order) == Rational::of(5, 1)) ++reaching;
    }
    std::cout << subgroups.size() << " subgroups scanned; " << reaching
              << " proper subgroup(s) reach phi3 = 5\n";
    std::cout << "group order 24 >= " << min_3design_size(2)
              << " = minimal 3-design size at d=2\n";
    return reaching == 0 ? 0 : 1;
}

int cmd_cache_rebuild(const GlobalOpts& opts) {
    using namespace qdv;
    if (opts.cfg.cache_dir.empty())
        throw CLI::ValidationError("--cache-dir", "cache rebuild needs a cache directory");
    for (std::uint32_t d : {2u, 3u, 4u, 5u, 8u, 9u}) {
        const auto [p, n] = parse_dim(d);
        SymplecticSpace s(p, n);
        SpGroupTable table = sp_group(s);
        GroupCacheRecord rec;
        rec.name = "sp_" + std::to_string(s.dim()) + "_" + std::to_string(p);
        rec.kind = "matrix";
        for (const SympMatrix& m : table.elements()) rec.encodings.push_back(sp_encode(p, m));
        save_group_cache(opts.cfg.cache_dir + "/" + rec.name + ".grp", rec);
        std::cout << "wrote " << rec.name << " (" << table.order() << " elements)\n";
    }
    for (std::uint32_t d : {2u, 3u, 4u, 5u}) {
        const auto [p, n] = parse_dim(d);
        CliffordTable table = CliffordTable::enumerate(p, n);
        const std::string name = "clifford_" + std::to_string(d);
        table.save_cache(opts.cfg.cache_dir + "/" + name + ".grp", name);
        std::cout << "wrote " << name << " (" << table.size() << " elements)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of Clifford-group design properties"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    GlobalOpts opts;
    if (const char* env = std::getenv("QDV_CACHE_DIR")) opts.cfg.cache_dir = env;
    app.add_option("--threads", opts.cfg.threads, "worker thread count (0 = default)");
    app.add_option("--seed", opts.cfg.seed, "seed for randomized checks");
    app.add_option("--cache-dir", opts.cfg.cache_dir,
                   "group cache directory (env QDV_CACHE_DIR)");
    app.add_option("--format", opts.format, "report format: table|json|csv|md")
        ->check(CLI::IsMember({"table", "json", "csv", "md"}));
    app.add_flag("--omit-runtime", opts.omit_runtime, "omit runtimes from reports");
    app.add_option("--mat-tol", opts.cfg.mat_tol, "matrix comparison tolerance");
    app.add_option("--pot-tol", opts.cfg.pot_tol, "potential rounding tolerance");

    auto* verify = app.add_subcommand("verify-all", "run the full verification suite");

    auto* fp = app.add_subcommand("frame-potential", "compute one frame potential");
    std::uint32_t fp_dim = 2, fp_t = 3;
    std::string fp_group = "clifford", fp_method = "fixed-points";
    fp->add_option("--dim", fp_dim, "dimension d")->required();
    fp->add_option("--t", fp_t, "design order t")->required();
    fp->add_option("--group", fp_group, "clifford|restricted")
        ->check(CLI::IsMember({"clifford", "restricted"}));
    fp->add_option("--method", fp_method, "direct|fixed-points|orbits")
        ->check(CLI::IsMember({"direct", "fixed-points", "orbits"}));

    auto* stab = app.add_subcommand("stabilizer", "stabilizer-state design check");
    std::uint32_t stab_qubits = 1, stab_t = 3;
    std::string stab_dump;
    stab->add_option("--qubits", stab_qubits, "number of qubits")->required();
    stab->add_option("--t", stab_t, "design order t")->required();
    stab->add_option("--dump", stab_dump, "write the states to a file, one per line");

    auto* rank3 = app.add_subcommand("rank3-scan", "rank-3 subgroup scan");
    std::uint32_t rank3_n = 2;
    rank3->add_option("--n", rank3_n, "symplectic parameter n")->required();

    auto* cov = app.add_subcommand("covariance", "covariant operator-basis checks");
    std::uint32_t cov_dim = 2;
    cov->add_option("--dim", cov_dim, "dimension d")->required();

    auto* submin = app.add_subcommand("subgroup-min", "minimal 3-design checks");
    std::uint32_t submin_dim = 2;
    submin->add_option("--dim", submin_dim, "dimension d")->required();

    auto* cache = app.add_subcommand("cache", "group cache management");
    auto* rebuild = cache->add_subcommand("rebuild", "regenerate all cached groups");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (opts.cfg.threads > 0) qdv::set_threads(opts.cfg.threads);

    try {
        if (verify->parsed()) return cmd_verify_all(opts);
        if (fp->parsed()) return cmd_frame_potential(opts, fp_dim, fp_t, fp_group, fp_method);
        if (stab->parsed()) return cmd_stabilizer(stab_qubits, stab_t, stab_dump);
        if (rank3->parsed()) return cmd_rank3_scan(rank3_n);
        if (cov->parsed()) return cmd_covariance(cov_dim);
        if (submin->parsed()) return cmd_subgroup_min(submin_dim);
        if (cache->parsed()) {
            if (rebuild->parsed()) return cmd_cache_rebuild(opts);
            std::cerr << "cache: missing subcommand (try: cache rebuild)\n";
            return 2;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
