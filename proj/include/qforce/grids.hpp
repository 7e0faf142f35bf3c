#ifndef QFORCE_GRIDS_HPP
#define QFORCE_GRIDS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qforce {

/// Uniform periodic sampling lattice t_j = j * dt, j = 0..n-1.
class TimeGrid {
public:
    /// Requires an even n >= 2 and a finite dt > 0.
    TimeGrid(std::size_t n, double dt);

    std::size_t size() const noexcept { return n_; }
    double dt() const noexcept { return dt_; }
    double duration() const noexcept { return static_cast<double>(n_) * dt_; }
    double time(std::size_t j) const noexcept { return static_cast<double>(j) * dt_; }

    bool operator==(const TimeGrid&) const = default;

private:
    std::size_t n_;
    double dt_;
};

/// Angular-frequency lattice conjugate to a TimeGrid.
///
/// Storage is in DFT order: index i holds bin k = i for i < n/2 and
/// k = i - n otherwise, so omega(i) = 2 pi k / (n dt) and k spans [-n/2, n/2).
/// Index n/2 is the unpaired Nyquist bin at -pi/dt. monotone_order() gives
/// the DFT indices sorted by increasing frequency; every table written by
/// the tools uses that order.
class FrequencyGrid {
public:
    explicit FrequencyGrid(const TimeGrid& time);

    const TimeGrid& time_grid() const noexcept { return time_; }
    std::size_t size() const noexcept { return time_.size(); }
    double dt() const noexcept { return time_.dt(); }
    double bin_width() const noexcept;

    long bin(std::size_t index) const noexcept;
    double omega(std::size_t index) const noexcept;
    std::size_t nyquist_index() const noexcept { return size() / 2; }

    /// DFT index of the bin paired with `index` (omega -> -omega).
    std::size_t mirror(std::size_t index) const noexcept;

    std::vector<std::size_t> monotone_order() const;

    bool operator==(const FrequencyGrid&) const = default;

private:
    TimeGrid time_;
};

/// Two-sided angular-frequency power spectral density,
/// S_f(w) = integral dtau <f(t) f(t + tau)> exp(i w tau), sampled in DFT order.
class SampledSpectrum {
public:
    /// Values must be finite and non-negative.
    SampledSpectrum(FrequencyGrid grid, std::vector<double> values);

    static SampledSpectrum zero(const FrequencyGrid& grid);
    static SampledSpectrum constant(const FrequencyGrid& grid, double value);
    static SampledSpectrum from_function(const FrequencyGrid& grid, const std::function<double(double)>& density);

    const FrequencyGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t index) const noexcept { return values_[index]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// True when value(-w) == value(w) on every paired bin.
    bool is_even() const noexcept;

private:
    FrequencyGrid grid_;
    std::vector<double> values_;
};

/// Complex frequency response in DFT order (e.g. force -> position).
///
/// For a real impulse response the self-paired Nyquist bin is real; the
/// constructor does not enforce it, but responses built by the library do.
class ComplexResponse {
public:
    ComplexResponse(FrequencyGrid grid, std::vector<std::complex<double>> values);

    const FrequencyGrid& grid() const noexcept { return grid_; }
    std::span<const std::complex<double>> values() const noexcept { return values_; }
    std::complex<double> operator[](std::size_t index) const noexcept { return values_[index]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// |H|^2 per bin.
    std::vector<double> power() const;

private:
    FrequencyGrid grid_;
    std::vector<std::complex<double>> values_;
};

/// Riemann sum dw/(2 pi) * sum_k S_k; for a spectrum this is the variance
/// of the corresponding periodic stationary process.
double spectrum_integral(const SampledSpectrum& spectrum);

/// Periodogram dt * |X_k|^2 / n of a real record sampled on `grid`.
SampledSpectrum periodogram(std::span<const double> samples, const TimeGrid& grid);

/// Bin-wise mean of equally gridded spectra.
SampledSpectrum average(std::span<const SampledSpectrum> spectra);

}  // namespace qforce

#endif  // QFORCE_GRIDS_HPP
