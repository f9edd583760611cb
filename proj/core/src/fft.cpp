#include "gsctrack/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace gsctrack::fft {

namespace {

// FFTW plan creation is not thread-safe; execution via the new-array API is.
// Plans are created once per grid size with FFTW_ESTIMATE (deterministic, no
// measurement) and FFTW_UNALIGNED so they accept ordinary vector storage.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan forward(int h, int w) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(h, w);
        auto it = fwd_.find(key);
        if (it != fwd_.end()) return it->second;
        std::vector<double> in(static_cast<std::size_t>(h) * w);
        std::vector<fftw_complex> out(static_cast<std::size_t>(h) * (w / 2 + 1));
        fftw_plan p = fftw_plan_dft_r2c_2d(h, w, in.data(), out.data(),
                                           FFTW_ESTIMATE | FFTW_UNALIGNED);
        fwd_[key] = p;
        return p;
    }

    fftw_plan inverse(int h, int w) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(h, w);
        auto it = inv_.find(key);
        if (it != inv_.end()) return it->second;
        std::vector<fftw_complex> in(static_cast<std::size_t>(h) * (w / 2 + 1));
        std::vector<double> out(static_cast<std::size_t>(h) * w);
        fftw_plan p = fftw_plan_dft_c2r_2d(h, w, in.data(), out.data(),
                                           FFTW_ESTIMATE | FFTW_UNALIGNED);
        inv_[key] = p;
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> fwd_;
    std::map<std::pair<int, int>, fftw_plan> inv_;
};

}  // namespace

void rfft2(const double* in, int h, int w, std::complex<double>* out) {
    fftw_plan plan = PlanCache::instance().forward(h, w);
    // FFTW's r2c transform does not modify the input, but the API is
    // non-const; copy to keep the promise explicit.
    std::vector<double> tmp(in, in + static_cast<std::size_t>(h) * w);
    fftw_execute_dft_r2c(plan, tmp.data(), reinterpret_cast<fftw_complex*>(out));
}

void irfft2(const std::complex<double>* in, int h, int w, double* out) {
    fftw_plan plan = PlanCache::instance().inverse(h, w);
    // c2r transforms destroy their input; work on a copy.
    std::vector<std::complex<double>> tmp(in, in + spectrum_size(h, w));
    fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(tmp.data()), out);
    const double scale = 1.0 / (static_cast<double>(h) * w);
    for (int i = 0; i < h * w; ++i) out[i] *= scale;
}

}  // namespace gsctrack::fft
