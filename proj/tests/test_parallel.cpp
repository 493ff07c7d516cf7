#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "qdv/parallel.hpp"
#include "qdv/rng.hpp"

using namespace qdv;

TEST_CASE("chunked integer reduction equals the serial reference", "[parallel]") {
    const std::size_t n = 100000;
    auto accum = [](std::uint64_t& part, std::size_t i) { part += i * i % 97; };
    const std::uint64_t serial = serial_reduce(n, std::uint64_t{0}, accum);
    const std::uint64_t parallel = chunked_reduce(
        n, std::uint64_t{0}, accum,
        [](std::uint64_t& total, std::uint64_t part) { total += part; });
    REQUIRE(serial == parallel);
}

TEST_CASE("chunked float sums are thread-count invariant", "[parallel]") {
    Rng rng(7);
    std::vector<double> values(50000);
    for (double& v : values) v = rng.gaussian() * std::exp(4.0 * rng.gaussian());

    const int saved = max_threads();
    set_threads(1);
    const double one = chunked_kahan_sum(values.size(), [&](std::size_t i) { return values[i]; });
    set_threads(saved);
    const double many = chunked_kahan_sum(values.size(), [&](std::size_t i) { return values[i]; });
    REQUIRE(one == many);  // bitwise

    double plain = 0.0;
    for (double v : values) plain += v;
    REQUIRE(many == Catch::Approx(plain).epsilon(1e-10));
}

TEST_CASE("chunked matrix reduction matches the serial reference", "[parallel]") {
    Rng rng(11);
    std::vector<Eigen::MatrixXcd> mats(300);
    for (auto& m : mats) m = rng.gaussian_matrix(6, 6);

    auto accum = [&](Eigen::MatrixXcd& part, std::size_t i) { part += mats[i] * mats[i].adjoint(); };
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(6, 6);
    const Eigen::MatrixXcd serial = serial_reduce(mats.size(), Eigen::MatrixXcd(zero), accum);
    const Eigen::MatrixXcd parallel = chunked_reduce(
        mats.size(), Eigen::MatrixXcd(zero), accum,
        [](Eigen::MatrixXcd& total, const Eigen::MatrixXcd& part) { total += part; },
        /*chunk=*/64);
    REQUIRE((serial - parallel).norm() < 1e-10 * serial.norm());

    const int saved = max_threads();
    set_threads(1);
    const Eigen::MatrixXcd one = chunked_reduce(
        mats.size(), Eigen::MatrixXcd(zero), accum,
        [](Eigen::MatrixXcd& total, const Eigen::MatrixXcd& part) { total += part; },
        /*chunk=*/64);
    set_threads(saved);
    REQUIRE((one - parallel).norm() == 0.0);  // bitwise
}

TEST_CASE("kahan summation compensates cancellation", "[parallel]") {
    // 1 + eps/2 repeated: plain summation loses the tail, Kahan keeps it.
    const std::size_t n = 1 << 20;
    const double tiny = 1e-16;
    KahanSum k;
    k.add(1.0);
    for (std::size_t i = 0; i < n; ++i) k.add(tiny);
    REQUIRE(k.value() == Catch::Approx(1.0 + n * tiny).epsilon(1e-12));
}
