#include "qdv/verify.hpp"

#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "qdv/clifford.hpp"
#include "qdv/covariance.hpp"
#include "qdv/designs.hpp"
#include "qdv/group_cache.hpp"
#include "qdv/indexed_group.hpp"
#include "qdv/parallel.hpp"
#include "qdv/rng.hpp"
#include "qdv/stabilizer.hpp"
#include "qdv/symplectic.hpp"

namespace qdv {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

std::pair<std::uint32_t, std::uint32_t> dim_key(std::uint32_t d) {
    switch (d) {
        case 2: return {2, 1};
        case 3: return {3, 1};
        case 4: return {2, 2};
        case 5: return {5, 1};
        case 8: return {2, 3};
        case 9: return {3, 2};
    }
    throw std::invalid_argument("dim_key: unsupported dimension");
}

SpGroupTable build_sp_cached(const SymplecticSpace& s, const std::string& cache_dir) {
    const std::uint32_t p = s.p();
    auto mul = [p](const SympMatrix& a, const SympMatrix& b) { return sp_mul(p, a, b); };
    auto inv = [p](const SympMatrix& a) { return sp_inverse(p, a); };
    const std::string name = "sp_" + std::to_string(s.dim()) + "_" + std::to_string(p);
    const std::string path = cache_dir + "/" + name + ".grp";
    if (!cache_dir.empty()) {
        if (auto rec = load_group_cache(path)) {
            if (rec->kind != "matrix")
                throw std::runtime_error("sp cache: wrong kind in " + path);
            std::vector<SympMatrix> els;
            els.reserve(rec->encodings.size());
            for (const auto& e : rec->encodings) els.push_back(sp_decode(p, s.dim(), e));
            SpGroupTable table = SpGroupTable::from_elements(
                std::move(els), sp_generators(s), mul, inv, sp_identity(s.dim()));
            if (table.order() != sp_order_formula(s.p(), s.n()))
                throw std::runtime_error("sp cache: order mismatch in " + path);
            return table;
        }
    }
    SpGroupTable table = sp_group(s);
    if (!cache_dir.empty()) {
        GroupCacheRecord rec;
        rec.name = name;
        rec.kind = "matrix";
        rec.encodings.reserve(table.order());
        for (const SympMatrix& m : table.elements()) rec.encodings.push_back(sp_encode(p, m));
        save_group_cache(path, rec);
    }
    return table;
}

CliffordTable build_clifford_cached(std::uint32_t d, const std::string& cache_dir) {
    const auto [p, n] = dim_key(d);
    const std::string name = "clifford_" + std::to_string(d);
    const std::string path = cache_dir + "/" + name + ".grp";
    if (!cache_dir.empty()) {
        if (auto table = CliffordTable::load_cache(path, p, n)) return std::move(*table);
    }
    CliffordTable table = CliffordTable::enumerate(p, n);
    if (!cache_dir.empty()) table.save_cache(path, name);
    return table;
}

struct SuiteContext {
    explicit SuiteContext(const RunConfig& cfg) : cfg(cfg) {}

    const RunConfig& cfg;
    std::map<std::uint32_t, SymplecticSpace> spaces;
    std::map<std::uint32_t, SpGroupTable> sp;
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint64_t>>> hists;
    std::map<std::uint32_t, CliffordTable> cliffords;
    std::map<std::uint32_t, std::vector<double>> direct_pots;  // t = 2, 3, 4
    std::map<std::uint32_t, ExtField> ext_fields;
    std::map<std::uint32_t, Sl2Table> sl2;

    const SymplecticSpace& space(std::uint32_t d) {
        auto it = spaces.find(d);
        if (it == spaces.end()) {
            const auto [p, n] = dim_key(d);
            it = spaces.emplace(d, SymplecticSpace(p, n)).first;
        }
        return it->second;
    }
    const SpGroupTable& sp_table(std::uint32_t d) {
        auto it = sp.find(d);
        if (it == sp.end())
            it = sp.emplace(d, build_sp_cached(space(d), cfg.cache_dir)).first;
        return it->second;
    }
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& hist(std::uint32_t d) {
        auto it = hists.find(d);
        if (it == hists.end())
            it = hists.emplace(d, fixed_point_histogram(space(d), sp_table(d).elements()))
                     .first;
        return it->second;
    }
    const CliffordTable& clifford(std::uint32_t d) {
        auto it = cliffords.find(d);
        if (it == cliffords.end())
            it = cliffords.emplace(d, build_clifford_cached(d, cfg.cache_dir)).first;
        return it->second;
    }
    const std::vector<double>& direct(std::uint32_t d) {
        auto it = direct_pots.find(d);
        if (it == direct_pots.end()) {
            const std::uint32_t ts[3] = {2, 3, 4};
            it = direct_pots.emplace(d, frame_potential_set(clifford(d).unitaries(), ts))
                     .first;
        }
        return it->second;
    }
    const ExtField& ext_field(std::uint32_t q) {
        auto it = ext_fields.find(q);
        if (it == ext_fields.end()) {
            std::uint32_t p = 2;
            while (q % p != 0) ++p;
            std::uint32_t k = 0, power = 1;
            while (power < q) {
                power *= p;
                ++k;
            }
            it = ext_fields.emplace(q, ExtField(p, std::max(1u, k))).first;
        }
        return it->second;
    }
    const Sl2Table& sl2_table(std::uint32_t q) {
        auto it = sl2.find(q);
        if (it == sl2.end()) it = sl2.emplace(q, sl2q_group(ext_field(q))).first;
        return it->second;
    }
    Rational phi_exact(std::uint32_t d, std::uint32_t t) {
        return frame_potential_from_histogram(hist(d), t);
    }
};

DesignReport make_report(const std::string& claim, const std::string& method,
                         const std::string& params, const std::string& value,
                         const std::string& expected, bool pass, double ms,
                         std::uint64_t seed) {
    DesignReport r;
    r.claim = claim;
    r.method = method;
    r.params = params;
    r.value = value;
    r.expected = expected;
    r.pass = pass;
    r.runtime_ms = ms;
    r.seed = seed;
    return r;
}

const std::uint32_t kAllDims[6] = {2, 3, 4, 5, 8, 9};
const std::uint32_t kUnitaryDims[4] = {2, 3, 4, 5};

// ---------------------------------------------------------------- criterion 1-3

CriterionResult criterion_potentials(SuiteContext& ctx, std::uint32_t t,
                                     const std::map<std::uint32_t, std::uint64_t>& expected,
                                     int id, const std::string& title) {
    CriterionResult res;
    res.id = id;
    res.title = title;
    res.pass = true;
    Timer timer;
    const std::string ts = std::to_string(t);
    for (std::uint32_t d : kAllDims) {
        const auto it = expected.find(d);
        const bool has_expectation = it != expected.end();

        const Rational fixed = ctx.phi_exact(d, t);
        if (has_expectation) {
            const bool ok = fixed == Rational::of(it->second, 1);
            res.pass &= ok;
            res.reports.push_back(make_report(
                "phi" + ts + "[d=" + std::to_string(d) + "]", "fixed-points",
                "{d:" + std::to_string(d) + ",t:" + ts + "}", fixed.str(),
                std::to_string(it->second), ok, timer.ms(), ctx.cfg.seed));
        }

        // Orbit count on (t-1)-tuples must reproduce the fixed-point value.
        const auto perms =
            sp_vector_permutations(ctx.space(d), ctx.sp_table(d).generators());
        const std::uint64_t orbit = frame_potential_orbit_count(
            perms, ctx.space(d).num_vectors(), t);
        {
            const bool ok = fixed == Rational::of(orbit, 1);
            res.pass &= ok;
            res.reports.push_back(make_report(
                "phi" + ts + "[d=" + std::to_string(d) + "]", "orbit-count",
                "{d:" + std::to_string(d) + ",t:" + ts + "}", std::to_string(orbit),
                fixed.str(), ok, timer.ms(), ctx.cfg.seed));
        }

        // Direct double sum over the enumerated unitaries where available.
        const bool unitary_dim = d <= 5;
        if (unitary_dim) {
            const double direct = ctx.direct(d)[t - 2];
            const bool ok = std::abs(direct - fixed.value()) <= ctx.cfg.pot_tol;
            res.pass &= ok;
            res.reports.push_back(make_report(
                "phi" + ts + "[d=" + std::to_string(d) + "]", "direct",
                "{d:" + std::to_string(d) + ",t:" + ts + "}", format_float(direct),
                fixed.str(), ok, timer.ms(), ctx.cfg.seed));
        }
    }
    return res;
}

// ---------------------------------------------------------------- criterion 4

CriterionResult criterion_verdicts(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 4;
    res.title = "design verdicts: 3-designs at d in {2,4,8}, 2-designs at d in {3,5,9}";
    res.pass = true;
    Timer timer;
    for (std::uint32_t d : kAllDims) {
        const bool even_case = d == 2 || d == 4 || d == 8;
        const std::uint32_t t_max = even_case ? 4 : 3;
        std::vector<Rational> phis;
        for (std::uint32_t t = 1; t <= t_max; ++t) phis.push_back(ctx.phi_exact(d, t));
        const std::uint32_t strength = design_strength(phis, d, t_max);
        const std::uint32_t want = even_case ? 3 : 2;
        const bool ok = strength == want;
        res.pass &= ok;
        res.reports.push_back(make_report(
            "design_strength[d=" + std::to_string(d) + "]", "fixed-points",
            "{d:" + std::to_string(d) + ",t_max:" + std::to_string(t_max) + "}",
            std::to_string(strength), std::to_string(want), ok, timer.ms(), ctx.cfg.seed));
    }
    return res;
}

// ---------------------------------------------------------------- criterion 5

CriterionResult criterion_restricted(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 5;
    res.title = "restricted Clifford: closed form equals SL(2,q) sum; 3-design only at q=2";
    res.pass = true;
    Timer timer;
    const std::uint32_t qs[6] = {2, 3, 4, 5, 8, 9};
    for (std::uint32_t q : qs) {
        for (std::uint32_t t = 2; t <= 4; ++t) {
            const RestrictedPotential rp =
                restricted_frame_potential(ctx.ext_field(q), ctx.sl2_table(q), t);
            const bool ok = rp.closed_form == rp.explicit_sum;
            res.pass &= ok;
            res.reports.push_back(make_report(
                "restricted_phi" + std::to_string(t) + "[q=" + std::to_string(q) + "]",
                "closed-form|sl2-sum",
                "{q:" + std::to_string(q) + ",t:" + std::to_string(t) + "}",
                rp.explicit_sum.str(), rp.closed_form.str(), ok, timer.ms(), ctx.cfg.seed));
        }
        const RestrictedPotential rp3 =
            restricted_frame_potential(ctx.ext_field(q), ctx.sl2_table(q), 3);
        const bool is3 = rp3.closed_form == Rational::of(gamma_haar(3, q), 1);
        const bool ok = is3 == (q == 2);
        res.pass &= ok;
        res.reports.push_back(make_report(
            "restricted_3design[q=" + std::to_string(q) + "]", "closed-form",
            "{q:" + std::to_string(q) + "}", is3 ? "yes" : "no", q == 2 ? "yes" : "no", ok,
            timer.ms(), ctx.cfg.seed));
    }
    return res;
}

// ---------------------------------------------------------------- criterion 6

CriterionResult criterion_key_step(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 6;
    res.title = "|tr(U D_mu)|^2 is 0 or f(F), with q^2/f(F) nonzero values";
    res.pass = true;
    Timer timer;
    for (std::uint32_t d : {2u, 3u}) {
        const CliffordTable& table = ctx.clifford(d);
        bool all_ok = true;
        for (std::size_t i = 0; i < table.size(); ++i)
            all_ok &= key_step_check(table, i, ctx.cfg.pot_tol).ok;
        res.pass &= all_ok;
        res.reports.push_back(make_report(
            "key_step[d=" + std::to_string(d) + "]", "exhaustive",
            "{d:" + std::to_string(d) + ",elements:" + std::to_string(table.size()) + "}",
            all_ok ? "all pass" : "violation", "all pass", all_ok, timer.ms(),
            ctx.cfg.seed));
    }
    {
        const CliffordTable& table = ctx.clifford(4);
        std::mt19937_64 eng(ctx.cfg.seed);
        bool all_ok = true;
        const std::size_t samples = 1000;
        for (std::size_t i = 0; i < samples; ++i) {
            const std::size_t idx = eng() % table.size();
            all_ok &= key_step_check(table, idx, ctx.cfg.pot_tol).ok;
        }
        res.pass &= all_ok;
        res.reports.push_back(make_report(
            "key_step[d=4]", "seeded-sample", "{d:4,samples:1000}",
            all_ok ? "all pass" : "violation", "all pass", all_ok, timer.ms(),
            ctx.cfg.seed));
    }
    return res;
}

// ---------------------------------------------------------------- criterion 7

CriterionResult criterion_suborbits(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 7;
    res.title = "point-stabilizer suborbit lengths {6,8} at n=2 and {30,32} at n=3";
    res.pass = true;
    Timer timer;
    const std::pair<std::uint32_t, std::vector<std::uint64_t>> cases[2] = {
        {4, {6, 8}}, {8, {30, 32}}};
    for (const auto& [d, want] : cases) {
        const SymplecticSpace& s = ctx.space(d);
        const SpGroupTable& table = ctx.sp_table(d);
        ActionFn<SympMatrix> act = [&s](const SympMatrix& m, std::uint32_t v) {
            return sp_apply(s, m, v);
        };
        auto stab = point_stabilizer(table, act, 1);
        OrbitPartition part = orbits(stab, act, s.num_vectors(), false);
        std::vector<std::uint64_t> sizes;
        std::set<std::uint32_t> seen;
        for (std::uint32_t v = 1; v < s.num_vectors(); ++v) {
            if (v == 1) continue;
            if (seen.insert(part.orbit_id[v]).second)
                sizes.push_back(part.orbit_sizes[part.orbit_id[v]]);
        }
        std::sort(sizes.begin(), sizes.end());
        const bool ok = sizes == want;
        res.pass &= ok;
        std::ostringstream got, expected;
        for (auto v : sizes) got << v << " ";
        for (auto v : want) expected << v << " ";
        res.reports.push_back(make_report("suborbits[d=" + std::to_string(d) + "]",
                                          "stabilizer-orbits",
                                          "{d:" + std::to_string(d) + "}", got.str(),
                                          expected.str(), ok, timer.ms(), ctx.cfg.seed));
    }
    return res;
}

// ---------------------------------------------------------------- criterion 8

CriterionResult criterion_rank3_scan(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 8;
    res.title = "Sp(4,2) has exactly one proper transitive rank-3 subgroup: the A6 copy";
    res.pass = true;
    Timer timer;
    const SymplecticSpace& s = ctx.space(4);
    const SpGroupTable& sp42 = ctx.sp_table(4);
    IndexedGroup ig = IndexedGroup::build(sp42);
    const auto subgroups = subgroup_scan(ig, sp42.order());

    // Vector action of every element, precomputed.
    const auto perms = sp_vector_permutations(s, sp42.elements());
    const std::uint32_t q2 = s.num_vectors();

    auto transitive_on_nonzero = [&](const SubgroupNode& node) {
        if (node.order % (q2 - 1) != 0) return false;
        std::vector<std::uint8_t> reached(q2, 0);
        std::vector<std::uint32_t> stack{1};
        reached[1] = 1;
        std::uint32_t count = 1;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t g : node.generators) {
                const std::uint32_t w = perms[g][v];
                if (!reached[w]) {
                    reached[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == q2 - 1;
    };
    auto rank_on_nonzero = [&](const SubgroupNode& node) {
        std::vector<std::uint32_t> stab;
        for (std::uint32_t e : node.elements)
            if (perms[e][1] == 1) stab.push_back(e);
        std::vector<std::uint32_t> orbit_of(q2, UINT32_MAX);
        std::uint32_t orbit_count = 0;
        for (std::uint32_t v = 1; v < q2; ++v) {
            if (orbit_of[v] != UINT32_MAX) continue;
            const std::uint32_t oid = orbit_count++;
            std::vector<std::uint32_t> stack{v};
            orbit_of[v] = oid;
            while (!stack.empty()) {
                const std::uint32_t x = stack.back();
                stack.pop_back();
                for (std::uint32_t e : stab) {
                    const std::uint32_t y = perms[e][x];
                    if (orbit_of[y] == UINT32_MAX) {
                        orbit_of[y] = oid;
                        stack.push_back(y);
                    }
                }
            }
        }
        return orbit_count;
    };

    std::vector<const SubgroupNode*> rank3_proper;
    for (const SubgroupNode& node : subgroups) {
        if (node.order == sp42.order()) continue;
        if (!transitive_on_nonzero(node)) continue;
        if (rank_on_nonzero(node) == 3) rank3_proper.push_back(&node);
    }
    {
        const bool ok = rank3_proper.size() == 1 && rank3_proper[0]->order == 360;
        res.pass &= ok;
        res.reports.push_back(make_report(
            "rank3_subgroups[Sp(4,2)]", "subgroup-scan",
            "{subgroups:" + std::to_string(subgroups.size()) + "}",
            std::to_string(rank3_proper.size()) + " of order " +
                (rank3_proper.empty() ? std::string("-")
                                      : std::to_string(rank3_proper[0]->order)),
            "1 of order 360", ok, timer.ms(), ctx.cfg.seed));
    }
    if (rank3_proper.size() != 1) return res;
    const SubgroupNode& a6 = *rank3_proper[0];

    // Equals the derived subgroup of Sp(4,2).
    const std::vector<std::uint32_t> derived = derived_subgroup_indices(ig);
    {
        const bool ok = derived == a6.elements;
        res.pass &= ok;
        res.reports.push_back(make_report("rank3_subgroup_is_derived", "derived-subgroup",
                                          "{}", ok ? "equal" : "different", "equal", ok,
                                          timer.ms(), ctx.cfg.seed));
    }

    // Perfect: its own derived subgroup is itself.
    std::vector<SympMatrix> mats;
    mats.reserve(a6.elements.size());
    for (std::uint32_t e : a6.elements) mats.push_back(sp42.element(e));
    std::vector<SympMatrix> gen_mats;
    for (std::uint32_t g : small_generating_set(ig, a6.elements))
        gen_mats.push_back(sp42.element(g));
    const std::uint32_t p = s.p();
    SpGroupTable a6_table = SpGroupTable::from_elements(
        std::move(mats), gen_mats,
        [p](const SympMatrix& a, const SympMatrix& b) { return sp_mul(p, a, b); },
        [p](const SympMatrix& a) { return sp_inverse(p, a); }, sp_identity(s.dim()));
    {
        IndexedGroup a6_ig = IndexedGroup::build(a6_table);
        const bool ok = derived_subgroup_indices(a6_ig).size() == a6_table.order();
        res.pass &= ok;
        res.reports.push_back(make_report("a6_perfect", "derived-subgroup", "{order:360}",
                                          ok ? "perfect" : "not perfect", "perfect", ok,
                                          timer.ms(), ctx.cfg.seed));
    }
    {
        ActionFn<SympMatrix> act = [&s](const SympMatrix& m, std::uint32_t v) {
            return sp_apply(s, m, v);
        };
        std::vector<std::uint32_t> nonzero;
        for (std::uint32_t v = 1; v < s.num_vectors(); ++v) nonzero.push_back(v);
        const BlockSystem bs = primitivity(a6_table, act, s.num_vectors(), nonzero);
        res.pass &= bs.primitive;
        res.reports.push_back(make_report("a6_primitive", "block-system", "{points:15}",
                                          bs.primitive ? "primitive" : "imprimitive",
                                          "primitive", bs.primitive, timer.ms(),
                                          ctx.cfg.seed));
        const bool antiflag = antiflag_transitive(s, a6_table);
        res.pass &= antiflag;
        res.reports.push_back(make_report("a6_antiflag_transitive", "orbit-sweep",
                                          "{antiflags:120}",
                                          antiflag ? "transitive" : "intransitive",
                                          "transitive", antiflag, timer.ms(),
                                          ctx.cfg.seed));
    }
    return res;
}

// ---------------------------------------------------------------- criterion 9

CriterionResult criterion_divisibility(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 9;
    res.title = "stabilizer-order bound at n=3: 30240 divides neither 6048 nor 12096";
    Timer timer;
    const std::uint64_t n = 3;
    const std::uint64_t bound = (1ull << (2 * n - 1)) * ((1ull << (2 * n - 2)) - 1) *
                                ((1ull << (2 * n)) - 1);
    const bool ok = bound == 30240 && 6048 % bound != 0 && 12096 % bound != 0;
    res.pass = ok;
    res.reports.push_back(make_report(
        "order_bound[n=3]", "arithmetic", "{}",
        std::to_string(bound) + ", 6048%b=" + std::to_string(6048 % bound) +
            ", 12096%b=" + std::to_string(12096 % bound),
        "30240, nonzero, nonzero", ok, timer.ms(), ctx.cfg.seed));
    return res;
}

// ---------------------------------------------------------------- criterion 10

CriterionResult criterion_minimality(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 10;
    res.title = "A6 preimage is a 3-design of size 5760 >= 1712; no proper subgroup of the"
                " d=2 Clifford group attains phi3 = 5";
    res.pass = true;
    Timer timer;
    const A6Report a6 = a6_preimage_potentials(ctx.space(4), ctx.sp_table(4));
    {
        const bool ok = a6.phi3 == Rational::of(6, 1) && a6.subgroup_order == 360;
        res.pass &= ok;
        res.reports.push_back(make_report("a6_preimage_phi3", "fixed-points",
                                          "{order:" + std::to_string(a6.subgroup_order) + "}",
                                          a6.phi3.str(), "6", ok, timer.ms(), ctx.cfg.seed));
    }
    {
        const bool ok = a6.phi2 == Rational::of(2, 1);
        res.pass &= ok;
        res.reports.push_back(make_report("a6_preimage_phi2", "fixed-points", "{}",
                                          a6.phi2.str(), "2", ok, timer.ms(), ctx.cfg.seed));
    }
    {
        // Not a 4-design; the exact value is a frozen regression constant.
        const bool ok = a6.phi4 == Rational::of(29, 1) &&
                        a6.phi4.value() > static_cast<double>(gamma_haar(4, 4));
        res.pass &= ok;
        res.reports.push_back(make_report("a6_preimage_phi4", "fixed-points", "{}",
                                          a6.phi4.str(), "29 (> 24)", ok, timer.ms(),
                                          ctx.cfg.seed));
    }
    {
        const bool ok = a6.preimage_order == 5760 && min_3design_size(4) == 1712 &&
                        a6.preimage_order >= min_3design_size(4);
        res.pass &= ok;
        res.reports.push_back(make_report(
            "a6_preimage_size", "arithmetic", "{}",
            std::to_string(a6.preimage_order) + " >= " + std::to_string(min_3design_size(4)),
            "5760 >= 1712", ok, timer.ms(), ctx.cfg.seed));
    }
    {
        const CliffordTable& c2 = ctx.clifford(2);
        const std::vector<std::uint64_t> tsq = c2.trace_sq_integers();
        GroupTable<std::uint32_t> as_group = c2.to_group_table();
        IndexedGroup ig = IndexedGroup::build(as_group);
        const auto subgroups = subgroup_scan(ig, c2.size());
        std::uint64_t proper_with_phi3_5 = 0, proper_count = 0;
        for (const SubgroupNode& node : subgroups) {
            if (node.order == c2.size()) continue;
            ++proper_count;
            std::uint64_t sum = 0;
            for (std::uint32_t e : node.elements) sum += tsq[e] * tsq[e] * tsq[e];
            if (Rational::of(sum, node.order) == Rational::of(5, 1)) ++proper_with_phi3_5;
        }
        const bool ok = proper_with_phi3_5 == 0 && c2.size() >= min_3design_size(2) &&
                        min_3design_size(2) == 20;
        res.pass &= ok;
        res.reports.push_back(make_report(
            "d2_minimal_3design", "subgroup-scan",
            "{proper_subgroups:" + std::to_string(proper_count) + "}",
            std::to_string(proper_with_phi3_5) + " proper subgroups reach 5; 24 >= 20",
            "0 proper subgroups reach 5; 24 >= 20", ok, timer.ms(), ctx.cfg.seed));
    }
    return res;
}

// ---------------------------------------------------------------- criterion 11

CriterionResult criterion_stabilizer_designs(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 11;
    res.title = "stabilizer-state sets are projective 3-designs for qubits; qutrit set is "
                "only a 2-design; Clifford orbits are 3-designs at d in {2,4}";
    res.pass = true;
    Timer timer;
    const std::uint64_t counts[3] = {6, 60, 1080};
    for (std::uint32_t n = 1; n <= 3; ++n) {
        PauliAlgebra pauli(SymplecticSpace(2, n));
        const auto states = enumerate_stabilizer_states(pauli);
        const std::uint32_t d = pauli.d();
        std::vector<cvec> vecs;
        vecs.reserve(states.size());
        for (const auto& st : states) vecs.push_back(st.vec);
        const auto design = projective_design_check(vecs, 3, true);
        const double expected_fp = 1.0 / static_cast<double>(binomial(d + 2, 3));
        const bool fp_ok =
            std::abs(*design.frame_potential - expected_fp) <= 1e-10 * expected_fp;
        const bool ok = states.size() == counts[n - 1] && design.pass && fp_ok;
        res.pass &= ok;
        res.reports.push_back(make_report(
            "stabilizer_3design[n=" + std::to_string(n) + "]", "symmetric-projector",
            "{states:" + std::to_string(states.size()) + "}",
            "residual " + format_float(design.projector_residual) + ", fp " +
                format_float(*design.frame_potential),
            "residual <= " + format_float(design.projector_tol) + ", fp " +
                format_float(expected_fp),
            ok, timer.ms(), ctx.cfg.seed));
    }
    {
        PauliAlgebra pauli(SymplecticSpace(3, 1));
        const auto states = enumerate_stabilizer_states(pauli);
        std::vector<cvec> vecs;
        for (const auto& st : states) vecs.push_back(st.vec);
        const auto t2 = projective_design_check(vecs, 2, false);
        const auto t3 = projective_design_check(vecs, 3, false);
        const bool ok = states.size() == 12 && t2.pass && !t3.pass;
        res.pass &= ok;
        res.reports.push_back(make_report(
            "qutrit_stabilizer[12 states]", "symmetric-projector", "{d:3}",
            std::string(t2.pass ? "t2 pass" : "t2 FAIL") + ", " +
                (t3.pass ? "t3 pass" : "t3 fail"),
            "t2 pass, t3 fail", ok, timer.ms(), ctx.cfg.seed));
    }
    for (std::uint32_t d : {2u, 4u}) {
        bool all_ok = true;
        std::uint64_t min_orbit = UINT64_MAX, max_orbit = 0;
        for (std::uint32_t i = 0; i < 5; ++i) {
            const auto orbit_report =
                clifford_orbit_design_check(ctx.clifford(d), ctx.cfg.seed + i, 3);
            all_ok &= orbit_report.design.pass;
            min_orbit = std::min(min_orbit, orbit_report.orbit_size);
            max_orbit = std::max(max_orbit, orbit_report.orbit_size);
        }
        res.pass &= all_ok;
        res.reports.push_back(make_report(
            "clifford_orbit_3design[d=" + std::to_string(d) + "]", "symmetric-projector",
            "{seeds:5,orbit_size:" + std::to_string(min_orbit) + ".." +
                std::to_string(max_orbit) + "}",
            all_ok ? "all pass" : "failure", "all pass", all_ok, timer.ms(),
            ctx.cfg.seed));
    }
    return res;
}

// ---------------------------------------------------------------- criterion 12

CriterionResult criterion_covariance(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 12;
    res.title = "phase-point basis is Clifford covariant at d=3 with non-real triple "
                "products; no covariant operator basis exists at d=2";
    res.pass = true;
    Timer timer;
    PauliAlgebra pauli3(SymplecticSpace(3, 1));
    const OperatorBasis pp = phase_point_basis(pauli3);
    const CovarianceResult cov = is_covariant(pp, ctx.clifford(3).unitaries());
    {
        const bool ok = cov.covariant && cov.transitive;
        res.pass &= ok;
        res.reports.push_back(make_report("phase_point_covariant[d=3]", "conjugation-match",
                                          "{ops:9}",
                                          cov.covariant ? "covariant+transitive" : "failed",
                                          "covariant+transitive", ok, timer.ms(),
                                          ctx.cfg.seed));
    }
    {
        const TripleProductReport tp = triple_products(pp);
        const bool ok = !tp.all_real;
        res.pass &= ok;
        res.reports.push_back(make_report(
            "phase_point_triples[d=3]", "trace-cluster",
            "{clusters:" + std::to_string(tp.cluster_count) + "}",
            tp.all_real ? "all real" : "non-real values", "non-real values", ok, timer.ms(),
            ctx.cfg.seed));
    }
    const CovariantSearchReport search2 = covariant_basis_search(ctx.clifford(2));
    {
        const bool ok = !search2.found;
        res.pass &= ok;
        res.reports.push_back(make_report(
            "covariant_search[d=2]", "subgroup-fixed-space",
            "{subgroups:" + std::to_string(search2.subgroups_scanned) +
                ",candidates:" + std::to_string(search2.candidates_tried) + "}",
            search2.found ? "found" : "none found", "none found", ok, timer.ms(),
            ctx.cfg.seed));
    }
    const CovariantSearchReport search3 = covariant_basis_search(ctx.clifford(3));
    {
        const bool ok = search3.found;
        res.pass &= ok;
        res.reports.push_back(make_report(
            "covariant_search[d=3]", "subgroup-fixed-space",
            "{subgroups:" + std::to_string(search3.subgroups_scanned) + "}",
            search3.found ? "found" : "none found", "found (positive control)", ok,
            timer.ms(), ctx.cfg.seed));
    }
    {
        // Contradiction flag: a verified 3-design with a covariant basis.
        const bool d2_is_3design = ctx.phi_exact(2, 3) == Rational::of(5, 1);
        const bool d3_is_3design = ctx.phi_exact(3, 3) == Rational::of(6, 1);
        const bool fired = (d2_is_3design && search2.found) ||
                           (d3_is_3design && search3.found) ||
                           (d3_is_3design && cov.covariant);
        const bool ok = !fired;
        res.pass &= ok;
        res.reports.push_back(make_report("covariance_contradiction_flag", "composite",
                                          "{}", fired ? "FIRED" : "never fired",
                                          "never fired", ok, timer.ms(), ctx.cfg.seed));
    }
    return res;
}

// ---------------------------------------------------------------- criterion 13

CriterionResult criterion_twirl(SuiteContext& ctx) {
    CriterionResult res;
    res.id = 13;
    res.title = "3-fold twirls over d in {2,4} commute with test unitaries; a d=3 witness "
                "violates commutation";
    res.pass = true;
    Timer timer;
    for (std::uint32_t d : {2u, 4u}) {
        const CliffordTable& table = ctx.clifford(d);
        const std::uint32_t dt = d * d * d;
        bool all_ok = true;
        double worst = 0.0;
        for (std::uint32_t i = 0; i < 5; ++i) {
            Rng rng(ctx.cfg.seed + 10 + i);
            const cmat a = rng.gaussian_matrix(dt, dt);
            const cmat twirled = twirl_clifford(table, 3, a);
            for (std::uint32_t j = 0; j < 20; ++j) {
                Rng vrng(ctx.cfg.seed + 1000 + j);
                const cmat v3 = tensor_power(vrng.haar_unitary(d), 3);
                const double comm = (twirled * v3 - v3 * twirled).norm() / a.norm();
                worst = std::max(worst, comm);
                all_ok &= comm <= 1e-8;
            }
        }
        res.pass &= all_ok;
        res.reports.push_back(make_report(
            "twirl_commutant[d=" + std::to_string(d) + "]", "coset-twirl",
            "{operators:5,tests:20}", "worst " + format_float(worst), "<= 1e-08", all_ok,
            timer.ms(), ctx.cfg.seed));
    }
    {
        const CliffordTable& table = ctx.clifford(3);
        Rng rng(ctx.cfg.seed + 100);
        const cmat a = rng.gaussian_matrix(27, 27);
        const cmat twirled = twirl_clifford(table, 3, a);
        Rng vrng(ctx.cfg.seed + 101);
        const cmat v3 = tensor_power(vrng.haar_unitary(3), 3);
        const double comm = (twirled * v3 - v3 * twirled).norm() / a.norm();
        const bool ok = comm >= 1e-3;
        res.pass &= ok;
        res.reports.push_back(make_report("twirl_witness[d=3]", "coset-twirl", "{t:3}",
                                          format_float(comm), ">= 0.001", ok, timer.ms(),
                                          ctx.cfg.seed));
    }
    return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const RunConfig& cfg) {
    if (cfg.threads > 0) set_threads(cfg.threads);
    SuiteContext ctx(cfg);

    std::vector<CriterionResult> results;
    results.push_back(criterion_potentials(
        ctx, 2, {{2, 2}, {3, 2}, {4, 2}, {5, 2}, {8, 2}, {9, 2}}, 1,
        "phi2 = 2 for the Clifford group in every dimension"));
    results.push_back(criterion_potentials(
        ctx, 3, {{2, 5}, {3, 7}, {4, 6}, {5, 11}, {8, 6}, {9, 8}}, 2,
        "phi3 values across dimensions, three methods agreeing"));
    results.push_back(criterion_potentials(
        ctx, 4, {{2, 15}, {3, 40}, {4, 29}, {8, 30}, {9, 79}}, 3,
        "phi4 values across dimensions"));
    results.push_back(criterion_verdicts(ctx));
    results.push_back(criterion_restricted(ctx));
    results.push_back(criterion_key_step(ctx));
    results.push_back(criterion_suborbits(ctx));
    results.push_back(criterion_rank3_scan(ctx));
    results.push_back(criterion_divisibility(ctx));
    results.push_back(criterion_minimality(ctx));
    results.push_back(criterion_stabilizer_designs(ctx));
    results.push_back(criterion_covariance(ctx));
    results.push_back(criterion_twirl(ctx));
    return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

std::string determinism_fingerprint(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    for (const auto& c : results) {
        out << c.id << '\x1f' << c.pass << '\x1e';
        for (const auto& r : c.reports)
            out << r.claim << '\x1f' << r.method << '\x1f' << r.params << '\x1f' << r.value
                << '\x1f' << r.expected << '\x1f' << r.pass << '\x1f' << r.seed << '\x1e';
    }
    return out.str();
}

std::vector<DesignReport> flatten_reports(const std::vector<CriterionResult>& results) {
    std::vector<DesignReport> out;
    for (const auto& c : results)
        for (const auto& r : c.reports) out.push_back(r);
    return out;
}

}  // namespace qdv
