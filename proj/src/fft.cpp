#include "qforce/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace qforce::fft {
namespace {

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer make_buffer(std::size_t n) {
    return Buffer(fftw_alloc_complex(n));
}

// Planner calls are not thread-safe in FFTW; executing an existing plan on
// fresh (fftw_malloc-aligned) buffers is. Plans live for the process lifetime.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        Buffer in = make_buffer(static_cast<std::size_t>(n));
        Buffer out = make_buffer(static_cast<std::size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, in.get(), out.get(), sign, FFTW_ESTIMATE);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

std::vector<Complex> transform(std::span<const Complex> input, int sign) {
    const auto n = input.size();
    if (n == 0) {
        return {};
    }
    fftw_plan plan = cache().get(static_cast<int>(n), sign);
    Buffer in = make_buffer(n);
    Buffer out = make_buffer(n);
    std::memcpy(in.get(), input.data(), n * sizeof(Complex));
    fftw_execute_dft(plan, in.get(), out.get());
    std::vector<Complex> result(n);
    std::memcpy(static_cast<void*>(result.data()), out.get(), n * sizeof(Complex));
    return result;
}

}  // namespace

std::vector<Complex> forward(std::span<const Complex> samples) {
    return transform(samples, FFTW_BACKWARD);
}

std::vector<Complex> forward(std::span<const double> samples) {
    std::vector<Complex> promoted(samples.begin(), samples.end());
    return forward(std::span<const Complex>(promoted));
}

std::vector<Complex> inverse(std::span<const Complex> coefficients) {
    auto result = transform(coefficients, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(coefficients.size());
    for (auto& v : result) {
        v *= scale;
    }
    return result;
}

std::vector<double> inverse_real(std::span<const Complex> coefficients) {
    const auto full = inverse(coefficients);
    std::vector<double> result(full.size());
    std::transform(full.begin(), full.end(), result.begin(), [](const Complex& c) { return c.real(); });
    return result;
}

}  // namespace qforce::fft
