#include "qforce/circulant.hpp"

#include "qforce/error.hpp"
#include "qforce/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qforce {
namespace {

constexpr double kSymmetryTolerance = 1e-12;

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

std::vector<double> dft_real(std::span<const double> row) {
    const auto coefficients = fft::forward(row);
    std::vector<double> out(coefficients.size());
    std::transform(coefficients.begin(), coefficients.end(), out.begin(), [](const auto& c) { return c.real(); });
    return out;
}

}  // namespace

CirculantMatrix::CirculantMatrix(std::vector<double> first_row) : row_(std::move(first_row)) {
    const auto n = row_.size();
    if (n == 0) {
        throw Error("CirculantMatrix: empty first row");
    }
    const double tol = kSymmetryTolerance * max_abs(row_);
    for (std::size_t m = 1; m < n; ++m) {
        if (std::abs(row_[m] - row_[n - m]) > tol) {
            throw NonCirculantError("CirculantMatrix: first row is not symmetric at offset " + std::to_string(m));
        }
    }
}

CirculantMatrix CirculantMatrix::from_eigenvalues(std::span<const double> eigenvalues) {
    std::vector<fft::Complex> lambda(eigenvalues.begin(), eigenvalues.end());
    auto row = fft::inverse_real(lambda);
    // even eigenvalues give a symmetric row up to roundoff; make it exact
    const auto n = row.size();
    for (std::size_t m = 1; m < (n + 1) / 2; ++m) {
        const double mean = 0.5 * (row[m] + row[n - m]);
        row[m] = mean;
        row[n - m] = mean;
    }
    return CirculantMatrix(std::move(row));
}

CirculantMatrix CirculantMatrix::identity(std::size_t n, double scale) {
    std::vector<double> row(n, 0.0);
    row.at(0) = scale;
    return CirculantMatrix(std::move(row));
}

double CirculantMatrix::operator()(std::size_t j, std::size_t l) const noexcept {
    const auto n = row_.size();
    return row_[(l + n - j % n) % n];
}

std::vector<double> CirculantMatrix::eigenvalues() const {
    return dft_real(row_);
}

double CirculantMatrix::inverse_diagonal() const {
    const auto lambda = eigenvalues();
    const double largest = max_abs(lambda);
    double sum = 0.0;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        if (!(lambda[k] > 1e-13 * largest)) {
            throw SingularFisherError("inverse_diagonal: eigenvalue " + std::to_string(k) + " = " +
                                      std::to_string(lambda[k]) + " is not positive");
        }
        sum += 1.0 / lambda[k];
    }
    return sum / static_cast<double>(lambda.size());
}

Eigen::MatrixXd CirculantMatrix::dense() const {
    const auto n = static_cast<Eigen::Index>(row_.size());
    Eigen::MatrixXd out(n, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index l = 0; l < n; ++l) {
            out(j, l) = row_[static_cast<std::size_t>((l - j + n) % n)];
        }
    }
    return out;
}

CirculantMatrix CirculantMatrix::scaled(double factor) const {
    auto row = row_;
    for (auto& v : row) {
        v *= factor;
    }
    return CirculantMatrix(std::move(row));
}

CirculantMatrix operator+(const CirculantMatrix& a, const CirculantMatrix& b) {
    if (a.size() != b.size()) {
        throw LengthMismatchError("CirculantMatrix: size mismatch in sum");
    }
    auto row = a.row_;
    for (std::size_t m = 0; m < row.size(); ++m) {
        row[m] += b.row_[m];
    }
    return CirculantMatrix(std::move(row));
}

CirculantMatrix circulant_covariance(const SampledSpectrum& spectrum) {
    const double inv_dt = 1.0 / spectrum.grid().dt();
    std::vector<double> eigenvalues(spectrum.values().begin(), spectrum.values().end());
    for (auto& v : eigenvalues) {
        v *= inv_dt;
    }
    return CirculantMatrix::from_eigenvalues(eigenvalues);
}

CirculantMatrix circulant_covariance_reference(const SampledSpectrum& spectrum) {
    const auto& grid = spectrum.grid();
    const auto n = grid.size();
    const double scale = 1.0 / (static_cast<double>(n) * grid.dt());
    std::vector<double> row(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // w_k * m * dt = 2 pi k m / n; reduce k m modulo n before the cosine
            const auto phase_index = static_cast<double>((i * m) % n);
            sum += spectrum[i] * std::cos(2.0 * std::numbers::pi * phase_index / static_cast<double>(n));
        }
        row[m] = scale * sum;
    }
    return CirculantMatrix(std::move(row));
}

std::vector<double> circulant_eigenvalues(const Eigen::MatrixXd& matrix) {
    const auto n = matrix.rows();
    if (n == 0 || matrix.cols() != n) {
        throw NonCirculantError("circulant_eigenvalues: matrix is not square");
    }
    std::vector<double> row(static_cast<std::size_t>(n));
    for (Eigen::Index l = 0; l < n; ++l) {
        row[static_cast<std::size_t>(l)] = matrix(0, l);
    }
    const double tol = kSymmetryTolerance * std::max(matrix.cwiseAbs().maxCoeff(), 0.0);
    bool consistent = true;
#pragma omp parallel for schedule(static) reduction(&& : consistent)
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index l = 0; l < n; ++l) {
            if (std::abs(matrix(j, l) - row[static_cast<std::size_t>((l - j + n) % n)]) > tol) {
                consistent = false;
            }
        }
    }
    if (!consistent) {
        throw NonCirculantError("circulant_eigenvalues: rows are not cyclic shifts of the first row");
    }
    // also rejects circulant-but-asymmetric input, whose eigenvalues are complex
    return CirculantMatrix(std::move(row)).eigenvalues();
}

}  // namespace qforce
