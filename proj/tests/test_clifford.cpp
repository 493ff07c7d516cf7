#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <random>

#include "qdv/clifford.hpp"
#include "qdv/rng.hpp"
#include "test_util.hpp"

using namespace qdv;
using qdv::test::clifford;
using qdv::test::space;
using qdv::test::sp_table;

TEST_CASE("projective Clifford group orders", "[clifford]") {
    REQUIRE(clifford(2).size() == 24);    // 4 * |Sp(2,2)|
    REQUIRE(clifford(3).size() == 216);   // 9 * 24
    REQUIRE(clifford(5).size() == 3000);  // 25 * 120
}

TEST_CASE("d=4 projective Clifford group order", "[clifford][slow]") {
    REQUIRE(clifford(4).size() == 11520);  // 16 * 720
}

TEST_CASE("induced symplectic matrices of the standard gates", "[clifford]") {
    PauliAlgebra pauli(SymplecticSpace(2, 1));

    CliffKey id_key = induced_symplectic(cmat::Identity(2, 2), pauli);
    REQUIRE(id_key.induced == sp_identity(2));
    REQUIRE(id_key.phases[0] == 0);
    REQUIRE(id_key.phases[1] == 0);

    cmat h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    CliffKey h_key = induced_symplectic(h, pauli);
    SympMatrix swap;
    swap.dim = 2;
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    REQUIRE(h_key.induced == swap);  // X and Z axes exchanged

    cmat s_gate(2, 2);
    s_gate << 1, 0, 0, cplx(0, 1);
    CliffKey s_key = induced_symplectic(s_gate, pauli);
    SympMatrix want;  // X -> XZ (phased), Z -> Z
    want.dim = 2;
    want.at(0, 0) = 1;
    want.at(1, 0) = 1;
    want.at(1, 1) = 1;
    REQUIRE(s_key.induced == want);
    // S X S^dag = i XZ = tau^2 D_(1,1) with tau = -i.
    REQUIRE(s_key.phases[0] == 2);
    REQUIRE(s_key.phases[1] == 0);
}

TEST_CASE("non-Clifford inputs are rejected", "[clifford]") {
    PauliAlgebra pauli(SymplecticSpace(2, 1));
    Rng rng(3);
    // A Haar-random unitary does not normalize the displacements.
    REQUIRE_THROWS_AS(induced_symplectic(rng.haar_unitary(2), pauli), NotCliffordError);
    // Not even unitary.
    REQUIRE_THROWS_AS(induced_symplectic(rng.gaussian_matrix(2, 2), pauli),
                      NotCliffordError);
}

TEST_CASE("induced map is a homomorphism onto the symplectic group", "[clifford]") {
    const CliffordTable& table = clifford(3);
    std::mt19937_64 eng(7);
    for (int i = 0; i < 30; ++i) {
        const std::size_t a = eng() % table.size(), b = eng() % table.size();
        const CliffKey prod = induced_symplectic(table.unitary(a) * table.unitary(b),
                                                 table.pauli());
        REQUIRE(prod.induced == sp_mul(3, table.key(a).induced, table.key(b).induced));
    }
    // Every symplectic matrix is hit q^2 times.
    std::map<std::uint64_t, std::uint32_t> counts;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const SympMatrix& f = table.key(i).induced;
        std::uint64_t key = 0;
        for (std::uint32_t c = 0; c < 4; ++c) key = key * 3 + f.a[c];
        ++counts[key];
    }
    REQUIRE(counts.size() == 24);
    for (const auto& [k, c] : counts) REQUIRE(c == 9);
}

TEST_CASE("key step: traces are 0 or f(F) with q^2/f nonzero", "[clifford]") {
    for (std::uint32_t d : {2u, 3u}) {
        const CliffordTable& table = clifford(d);
        for (std::size_t i = 0; i < table.size(); ++i) {
            const KeyStepReport report = key_step_check(table, i);
            REQUIRE(report.ok);
            REQUIRE_FALSE(report.offending_mu.has_value());
        }
    }
    // Identity at d=2: f = 4, one nonzero trace.
    const CliffordTable& c2 = clifford(2);
    const KeyStepReport id_report = key_step_check(c2, 0);
    REQUIRE(id_report.fixed_points == 4);
    REQUIRE(id_report.nonzero_count == 1);
    // The Fourier element swaps the axes: f = 2, two nonzero traces.
    PauliAlgebra pauli(SymplecticSpace(2, 1));
    cmat h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    const auto idx = c2.index_of(induced_symplectic(h, pauli));
    REQUIRE(idx.has_value());
    const KeyStepReport h_report = key_step_check(c2, *idx);
    REQUIRE(h_report.fixed_points == 2);
    REQUIRE(h_report.nonzero_count == 2);
}

TEST_CASE("squared trace moduli are integers", "[clifford]") {
    for (std::uint32_t d : {2u, 3u}) {
        const auto tsq = clifford(d).trace_sq_integers();
        REQUIRE(tsq.size() == clifford(d).size());
        REQUIRE(tsq[0] == std::uint64_t{d} * d);  // identity
    }
}

TEST_CASE("fixed-point frame potentials", "[clifford]") {
    REQUIRE(frame_potential_fixed_points(space(2, 1), sp_table(2, 1).elements(), 3) ==
            Rational::of(5, 1));
    REQUIRE(frame_potential_fixed_points(space(2, 2), sp_table(2, 2).elements(), 4) ==
            Rational::of(29, 1));
    REQUIRE(frame_potential_fixed_points(space(3, 1), sp_table(3, 1).elements(), 3) ==
            Rational::of(7, 1));
}

TEST_CASE("restricted Clifford potentials: closed form vs explicit sum", "[clifford]") {
    // restricted = full at prime q: 3-design value at q=2.
    REQUIRE(restricted_frame_potential(2, 3).closed_form == Rational::of(5, 1));
    REQUIRE(restricted_frame_potential(3, 3).closed_form == Rational::of(7, 1));
    REQUIRE(restricted_frame_potential(4, 2).closed_form == Rational::of(2, 1));
    REQUIRE(restricted_frame_potential(9, 3).closed_form == Rational::of(19, 1));
    // The two-way agreement is enforced inside; a t=4 spot check.
    const RestrictedPotential q8 = restricted_frame_potential(8, 4);
    REQUIRE(q8.closed_form == q8.explicit_sum);
}

TEST_CASE("A6 preimage potentials", "[clifford]") {
    const A6Report report = a6_preimage_potentials(space(2, 2), sp_table(2, 2));
    REQUIRE(report.subgroup_order == 360);
    REQUIRE(report.preimage_order == 5760);
    REQUIRE(report.phi2 == Rational::of(2, 1));
    REQUIRE(report.phi3 == Rational::of(6, 1));  // = gamma(3, 4): a 3-design
    REQUIRE(report.phi4 == Rational::of(29, 1));  // frozen; > gamma(4, 4) = 24

    // Oracle: brute-force fixed-point counts over the 360 matrices.
    const auto& s = space(2, 2);
    std::uint64_t sum_sq = 0;
    for (const SympMatrix& m : report.subgroup) {
        std::uint32_t fixed = 0;
        for (std::uint32_t v = 0; v < s.num_vectors(); ++v)
            if (sp_apply(s, m, v) == v) ++fixed;
        sum_sq += std::uint64_t{fixed} * fixed;
    }
    REQUIRE(sum_sq == 6 * 360);
}

TEST_CASE("clifford cache round trip", "[clifford]") {
    const std::string dir = std::filesystem::temp_directory_path() / "qdv_test_cache";
    std::filesystem::remove_all(dir);
    for (std::uint32_t d : {2u, 3u}) {
        const CliffordTable& built = clifford(d);
        const std::string path = dir + "/clifford_" + std::to_string(d) + ".grp";
        built.save_cache(path, "clifford_" + std::to_string(d));
        const auto loaded = CliffordTable::load_cache(path, d, 1);
        REQUIRE(loaded.has_value());
        REQUIRE(loaded->size() == built.size());
        for (std::size_t i = 0; i < built.size(); ++i) {
            REQUIRE(loaded->key(i) == built.key(i));
            // Bit-identical representatives: same products in the same order.
            REQUIRE((loaded->unitary(i) - built.unitary(i)).norm() == 0.0);
        }
    }
    std::filesystem::remove_all(dir);
}
