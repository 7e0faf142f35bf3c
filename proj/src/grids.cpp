#include "qforce/grids.hpp"

#include "qforce/error.hpp"
#include "qforce/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace qforce {

TimeGrid::TimeGrid(std::size_t n, double dt) : n_(n), dt_(dt) {
    if (n < 2 || n % 2 != 0) {
        throw Error("TimeGrid: n must be even and >= 2, got " + std::to_string(n));
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error("TimeGrid: dt must be finite and > 0");
    }
}

FrequencyGrid::FrequencyGrid(const TimeGrid& time) : time_(time) {}

double FrequencyGrid::bin_width() const noexcept {
    return 2.0 * std::numbers::pi / time_.duration();
}

long FrequencyGrid::bin(std::size_t index) const noexcept {
    const auto n = static_cast<long>(size());
    const auto i = static_cast<long>(index);
    return i < n / 2 ? i : i - n;
}

double FrequencyGrid::omega(std::size_t index) const noexcept {
    return static_cast<double>(bin(index)) * bin_width();
}

std::size_t FrequencyGrid::mirror(std::size_t index) const noexcept {
    const auto n = size();
    return (n - index) % n;
}

std::vector<std::size_t> FrequencyGrid::monotone_order() const {
    const auto n = size();
    std::vector<std::size_t> order(n);
    // bins -n/2 .. n/2-1 live at indices n/2 .. n-1 followed by 0 .. n/2-1
    for (std::size_t j = 0; j < n; ++j) {
        order[j] = (j + n / 2) % n;
    }
    return order;
}

SampledSpectrum::SampledSpectrum(FrequencyGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw LengthMismatchError("SampledSpectrum: " + std::to_string(values_.size()) + " values for a grid of " +
                                  std::to_string(grid_.size()) + " bins");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
            throw Error("SampledSpectrum: value at bin " + std::to_string(grid_.bin(i)) +
                        " is negative or not finite");
        }
    }
}

SampledSpectrum SampledSpectrum::zero(const FrequencyGrid& grid) {
    return constant(grid, 0.0);
}

SampledSpectrum SampledSpectrum::constant(const FrequencyGrid& grid, double value) {
    return SampledSpectrum(grid, std::vector<double>(grid.size(), value));
}

SampledSpectrum SampledSpectrum::from_function(const FrequencyGrid& grid,
                                               const std::function<double(double)>& density) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = density(grid.omega(i));
    }
    return SampledSpectrum(grid, std::move(values));
}

bool SampledSpectrum::is_even() const noexcept {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] != values_[grid_.mirror(i)]) {
            return false;
        }
    }
    return true;
}

ComplexResponse::ComplexResponse(FrequencyGrid grid, std::vector<std::complex<double>> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw LengthMismatchError("ComplexResponse: " + std::to_string(values_.size()) + " values for a grid of " +
                                  std::to_string(grid_.size()) + " bins");
    }
}

std::vector<double> ComplexResponse::power() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](const auto& h) { return std::norm(h); });
    return out;
}

double spectrum_integral(const SampledSpectrum& spectrum) {
    const auto values = spectrum.values();
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    return spectrum.grid().bin_width() / (2.0 * std::numbers::pi) * sum;
}

SampledSpectrum periodogram(std::span<const double> samples, const TimeGrid& grid) {
    if (samples.size() != grid.size()) {
        throw LengthMismatchError("periodogram: " + std::to_string(samples.size()) + " samples for a grid of " +
                                  std::to_string(grid.size()));
    }
    const auto coefficients = fft::forward(samples);
    const double scale = grid.dt() / static_cast<double>(grid.size());
    std::vector<double> values(coefficients.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = scale * std::norm(coefficients[i]);
    }
    return SampledSpectrum(FrequencyGrid(grid), std::move(values));
}

SampledSpectrum average(std::span<const SampledSpectrum> spectra) {
    if (spectra.empty()) {
        throw Error("average: no spectra");
    }
    const auto& grid = spectra.front().grid();
    std::vector<double> sum(grid.size(), 0.0);
    for (const auto& s : spectra) {
        if (!(s.grid() == grid)) {
            throw LengthMismatchError("average: spectra live on different grids");
        }
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += s[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(spectra.size());
    for (auto& v : sum) {
        v *= inv;
    }
    return SampledSpectrum(grid, std::move(sum));
}

}  // namespace qforce
