#ifndef QFORCE_CIRCULANT_HPP
#define QFORCE_CIRCULANT_HPP

#include "qforce/grids.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace qforce {

/// Symmetric circulant matrix stored by its first row, C(j, l) = row[(l - j) mod n].
///
/// A stationary covariance on a periodic grid has this form, and the DFT
/// diagonalizes it: eigenvalue k is sum_m row[m] exp(2 pi i k m / n), indexed
/// like FrequencyGrid bins.
class CirculantMatrix {
public:
    /// Requires row[m] == row[n - m] up to 1e-12 of the largest entry.
    explicit CirculantMatrix(std::vector<double> first_row);

    static CirculantMatrix from_eigenvalues(std::span<const double> eigenvalues);
    static CirculantMatrix identity(std::size_t n, double scale = 1.0);

    std::size_t size() const noexcept { return row_.size(); }
    std::span<const double> first_row() const noexcept { return row_; }
    double operator()(std::size_t j, std::size_t l) const noexcept;

    std::vector<double> eigenvalues() const;

    /// Diagonal entry of the inverse, (1/n) sum_k 1/lambda_k. Throws
    /// SingularFisherError when an eigenvalue is not strictly positive
    /// relative to the spectrum (below 1e-13 of the largest).
    double inverse_diagonal() const;

    /// Materialized n x n matrix (rows filled in parallel).
    Eigen::MatrixXd dense() const;

    CirculantMatrix scaled(double factor) const;
    friend CirculantMatrix operator+(const CirculantMatrix& a, const CirculantMatrix& b);

private:
    std::vector<double> row_;
};

/// Two-time covariance of the periodic stationary process with this spectrum:
/// C(j, l) = 1/(n dt) sum_k S_k cos(w_k (j - l) dt). FFT route.
CirculantMatrix circulant_covariance(const SampledSpectrum& spectrum);

/// Serial reference for circulant_covariance: the cosine sum evaluated
/// term by term, O(n^2).
CirculantMatrix circulant_covariance_reference(const SampledSpectrum& spectrum);

/// Eigenvalues of a dense symmetric circulant matrix from the DFT of its
/// first row, in FrequencyGrid (DFT) order. Throws NonCirculantError if any
/// entry differs from the shifted first row by more than 1e-12 of the
/// largest entry.
std::vector<double> circulant_eigenvalues(const Eigen::MatrixXd& matrix);

}  // namespace qforce

#endif  // QFORCE_CIRCULANT_HPP
