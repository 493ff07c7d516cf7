#pragma once

// Seeded randomness for test unitaries and states. mt19937_64 is pinned by
// the standard and the Gaussian is our own Box-Muller, so streams are
// reproducible across standard libraries. Haar unitaries come from the QR
// decomposition of a complex Gaussian matrix with the R diagonal rephased to
// be positive real.

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <Eigen/QR>

namespace qdv {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        // 53-bit mantissa uniform in [0, 1).
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> cgaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    Eigen::MatrixXcd gaussian_matrix(int rows, int cols) {
        Eigen::MatrixXcd m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = cgaussian();
        return m;
    }

    Eigen::MatrixXcd haar_unitary(int d) {
        const Eigen::MatrixXcd g = gaussian_matrix(d, d);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
        Eigen::MatrixXcd q = qr.householderQ();
        const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < d; ++i) {
            const std::complex<double> rii = r(i, i);
            const double mag = std::abs(rii);
            q.col(i) *= mag > 0 ? rii / mag : 1.0;
        }
        return q;
    }

    Eigen::VectorXcd random_state(int d) {
        Eigen::VectorXcd v(d);
        for (int i = 0; i < d; ++i) v(i) = cgaussian();
        v.normalize();
        return v;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qdv
