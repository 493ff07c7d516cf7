#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <set>

#include "qdv/group_table.hpp"
#include "qdv/indexed_group.hpp"
#include "qdv/symplectic.hpp"
#include "test_util.hpp"

using namespace qdv;
using qdv::test::clifford;
using qdv::test::space;
using qdv::test::sp_table;
using qdv::test::vector_action;

namespace {

// Tiny integer group Z_m for generic-engine checks.
GroupTable<std::uint32_t> cyclic_group(std::uint32_t m) {
    return GroupTable<std::uint32_t>::closure(
        0, {1}, [m](const std::uint32_t& a, const std::uint32_t& b) { return (a + b) % m; },
        [m](const std::uint32_t& a) { return (m - a) % m; }, m);
}

}  // namespace

TEST_CASE("closure basics", "[groups]") {
    // Generators = {identity} give the trivial group.
    auto trivial = GroupTable<std::uint32_t>::closure(
        0, {0}, [](const std::uint32_t&, const std::uint32_t&) { return 0u; },
        [](const std::uint32_t&) { return 0u; }, 4);
    REQUIRE(trivial.order() == 1);

    // Two transvection generators of Sp(2,2); oracle is the order formula
    // p^{n^2} prod (p^{2i} - 1) = 2 * 3 = 6.
    REQUIRE(sp_order_formula(2, 1) == 6);
    REQUIRE(sp_table(2, 1).order() == 6);

    // Cap exceeded.
    REQUIRE_THROWS_AS(
        GroupTable<std::uint32_t>::closure(
            0, {1},
            [](const std::uint32_t& a, const std::uint32_t& b) { return (a + b) % 100; },
            [](const std::uint32_t& a) { return (100 - a) % 100; }, 10),
        SizeLimitError);
    REQUIRE(cyclic_group(10).order() == 10);
}

TEST_CASE("group axioms hold on sampled triples", "[groups]") {
    const auto& g = sp_table(3, 1);  // SL(2,3), order 24
    REQUIRE(g.order() == 24);
    std::mt19937_64 eng(5);
    for (int i = 0; i < 50; ++i) {
        const auto& a = g.element(eng() % g.order());
        const auto& b = g.element(eng() % g.order());
        const auto& c = g.element(eng() % g.order());
        REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
        REQUIRE(g.contains(g.mul(a, b)));
        REQUIRE(g.mul(a, g.inv(a)) == g.identity());
    }
}

TEST_CASE("orbit partitions", "[groups]") {
    // Trivial group: every point is its own orbit.
    auto trivial = GroupTable<std::uint32_t>::closure(
        0, {0}, [](const std::uint32_t&, const std::uint32_t&) { return 0u; },
        [](const std::uint32_t&) { return 0u; }, 2);
    ActionFn<std::uint32_t> id_act = [](const std::uint32_t&, std::uint32_t x) { return x; };
    REQUIRE(orbits(trivial, id_act, 7).orbit_count() == 7);

    // Sp(2,2) on F_2^2: the zero vector and the 3 nonzero vectors.
    const auto& s = space(2, 1);
    OrbitPartition part = orbits(sp_table(2, 1), vector_action(s), s.num_vectors());
    REQUIRE(part.orbit_count() == 2);
    std::multiset<std::uint64_t> sizes(part.orbit_sizes.begin(), part.orbit_sizes.end());
    REQUIRE(sizes == std::multiset<std::uint64_t>{1, 3});

    // Sp(2,2) on ordered pairs: five orbits.
    const auto& g = sp_table(2, 1);
    ActionFn<SympMatrix> pair_act = [&s](const SympMatrix& m, std::uint32_t i) {
        const std::uint32_t v = i / 4, w = i % 4;
        return sp_apply(s, m, v) * 4 + sp_apply(s, m, w);
    };
    REQUIRE(orbits(g, pair_act, 16).orbit_count() == 5);

    // Burnside consistency, exact.
    REQUIRE(burnside_orbit_count(g, pair_act, 16) == 5);
    REQUIRE(burnside_orbit_count(g, vector_action(s), 4) == 2);
}

TEST_CASE("action axiom violations are detected", "[groups]") {
    const auto& g = sp_table(2, 1);
    ActionFn<SympMatrix> broken = [](const SympMatrix& m, std::uint32_t x) {
        return (x + m.at(0, 0)) % 3;  // not an action
    };
    REQUIRE_THROWS_AS(orbits(g, broken, 3), ContractError);
}

TEST_CASE("point stabilizers and orbit-stabilizer", "[groups]") {
    const auto& s = space(2, 2);
    const auto& g = sp_table(2, 2);
    REQUIRE(g.order() == 720);

    // The stabilizer of 0 is the whole group.
    REQUIRE(point_stabilizer(g, vector_action(s), 0).order() == g.order());

    auto stab = point_stabilizer(g, vector_action(s), 1);
    OrbitPartition whole = orbits(g, vector_action(s), s.num_vectors());
    REQUIRE(whole.orbit_sizes[whole.orbit_id[1]] * stab.order() == g.order());

    // Suborbit lengths {6, 8} on the remaining nonzero vectors.
    OrbitPartition sub = orbits(stab, vector_action(s), s.num_vectors(), false);
    std::multiset<std::uint64_t> lengths;
    std::set<std::uint32_t> seen;
    for (std::uint32_t v = 2; v < s.num_vectors(); ++v)
        if (seen.insert(sub.orbit_id[v]).second)
            lengths.insert(sub.orbit_sizes[sub.orbit_id[v]]);
    REQUIRE(lengths == std::multiset<std::uint64_t>{6, 8});
}

TEST_CASE("transitivity rank", "[groups]") {
    const auto& s1 = space(2, 1);
    std::vector<std::uint32_t> nonzero1{1, 2, 3};
    REQUIRE(transitivity_rank(sp_table(2, 1), vector_action(s1), 4, nonzero1) == 2);

    const auto& s2 = space(2, 2);
    std::vector<std::uint32_t> nonzero2;
    for (std::uint32_t v = 1; v < 16; ++v) nonzero2.push_back(v);
    REQUIRE(transitivity_rank(sp_table(2, 2), vector_action(s2), 16, nonzero2) == 3);

    // Intransitive input is rejected: the trivial subgroup on 3 points.
    auto trivial = GroupTable<std::uint32_t>::closure(
        0, {0}, [](const std::uint32_t&, const std::uint32_t&) { return 0u; },
        [](const std::uint32_t&) { return 0u; }, 2);
    ActionFn<std::uint32_t> id_act = [](const std::uint32_t&, std::uint32_t x) { return x; };
    REQUIRE_THROWS_AS(transitivity_rank(trivial, id_act, 3, {0, 1, 2}), std::domain_error);
}

TEST_CASE("derived subgroups", "[groups]") {
    // Abelian group: trivial derived subgroup.
    IndexedGroup zc = IndexedGroup::build(cyclic_group(12));
    REQUIRE(derived_subgroup_indices(zc) == std::vector<std::uint32_t>{zc.id()});

    // Sp(4,2): derived subgroup of order 360 (the A6 copy), itself perfect.
    IndexedGroup ig = IndexedGroup::build(sp_table(2, 2));
    const auto derived = derived_subgroup_indices(ig);
    REQUIRE(derived.size() == 360);

    const auto gens = small_generating_set(ig, derived);
    std::vector<SympMatrix> mats, gen_mats;
    for (auto e : derived) mats.push_back(sp_table(2, 2).element(e));
    for (auto e : gens) gen_mats.push_back(sp_table(2, 2).element(e));
    auto a6 = SpGroupTable::from_elements(
        std::move(mats), gen_mats,
        [](const SympMatrix& a, const SympMatrix& b) { return sp_mul(2, a, b); },
        [](const SympMatrix& a) { return sp_inverse(2, a); }, sp_identity(4));
    IndexedGroup a6_ig = IndexedGroup::build(a6);
    REQUIRE(derived_subgroup_indices(a6_ig).size() == 360);  // perfect

    // Rank 3 on the 15 nonzero vectors.
    const auto& s = space(2, 2);
    std::vector<std::uint32_t> nonzero;
    for (std::uint32_t v = 1; v < 16; ++v) nonzero.push_back(v);
    REQUIRE(transitivity_rank(a6, vector_action(s), 16, nonzero) == 3);
}

TEST_CASE("subgroup scan of S3 matches the brute-force lattice", "[groups]") {
    const auto& g = sp_table(2, 1);  // Sp(2,2) is S3
    IndexedGroup ig = IndexedGroup::build(g);
    const auto scanned = subgroup_scan(ig, 6);

    // Oracle: enumerate all subsets of the 6 elements and keep the closed ones.
    std::set<std::set<std::uint32_t>> brute;
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
        std::set<std::uint32_t> sub;
        for (std::uint32_t i = 0; i < 6; ++i)
            if (mask >> i & 1) sub.insert(i);
        if (!sub.contains(ig.id())) continue;
        bool closed = true;
        for (auto a : sub)
            for (auto b : sub) closed &= sub.contains(ig.mul(a, b));
        if (closed) brute.insert(sub);
    }
    REQUIRE(brute.size() == 6);  // 1, three C2, C3, S3
    REQUIRE(scanned.size() == brute.size());
    for (const auto& node : scanned) {
        std::set<std::uint32_t> as_set(node.elements.begin(), node.elements.end());
        REQUIRE(brute.contains(as_set));
    }
}

TEST_CASE("subgroup scan respects the order cap", "[groups]") {
    IndexedGroup ig = IndexedGroup::build(sp_table(2, 1));
    const auto small = subgroup_scan(ig, 3);
    REQUIRE(small.size() == 5);  // everything except S3 itself
    for (const auto& node : small) REQUIRE(node.order <= 3);
}

TEST_CASE("primitivity and block systems", "[groups]") {
    // C4 acting regularly on 4 points: imprimitive with blocks of size 2.
    auto c4 = cyclic_group(4);
    ActionFn<std::uint32_t> regular = [](const std::uint32_t& g, std::uint32_t x) {
        return (x + g) % 4;
    };
    const BlockSystem bs = primitivity(c4, regular, 4, {0, 1, 2, 3});
    REQUIRE_FALSE(bs.primitive);
    REQUIRE(bs.block_size == 2);

    const auto& s = space(2, 2);
    std::vector<std::uint32_t> nonzero;
    for (std::uint32_t v = 1; v < 16; ++v) nonzero.push_back(v);
    REQUIRE(primitivity(sp_table(2, 2), vector_action(s), 16, nonzero).primitive);
}

TEST_CASE("antiflag transitivity", "[groups]") {
    const auto& s = space(2, 2);
    REQUIRE(antiflag_transitive(s, sp_table(2, 2)));

    // The group generated by a single transvection is far too small.
    const auto gens = sp_generators(s);
    auto tiny = SpGroupTable::closure(
        sp_identity(4), {gens[0]},
        [](const SympMatrix& a, const SympMatrix& b) { return sp_mul(2, a, b); },
        [](const SympMatrix& a) { return sp_inverse(2, a); }, 4);
    REQUIRE(tiny.order() == 2);
    REQUIRE_FALSE(antiflag_transitive(s, tiny));
}

TEST_CASE("Sp(6,2) closure, Burnside and suborbits", "[groups][slow]") {
    const auto& s = space(2, 3);
    const auto& g = sp_table(2, 3);
    REQUIRE(sp_order_formula(2, 3) == 1451520);
    REQUIRE(g.order() == 1451520);
    REQUIRE(std::uint64_t{30240} * 48 == g.order());

    // Symplectic membership on a deterministic sample.
    for (std::size_t i = 0; i < g.order(); i += 97003)
        REQUIRE(is_symplectic(s, g.element(i)));

    // Burnside on vectors: two orbits.
    REQUIRE(burnside_orbit_count(g, vector_action(s), s.num_vectors()) == 2);

    // Stabilizer suborbits {30, 32}.
    auto stab = point_stabilizer(g, vector_action(s), 1);
    OrbitPartition sub = orbits(stab, vector_action(s), s.num_vectors(), false);
    std::multiset<std::uint64_t> lengths;
    std::set<std::uint32_t> seen;
    for (std::uint32_t v = 2; v < s.num_vectors(); ++v)
        if (seen.insert(sub.orbit_id[v]).second)
            lengths.insert(sub.orbit_sizes[sub.orbit_id[v]]);
    REQUIRE(lengths == std::multiset<std::uint64_t>{30, 32});
}
