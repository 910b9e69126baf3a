#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>

#include "bsq/grid.hpp"

namespace bsq::detail {

// One cached FFTW plan pair (r2c / c2r) per grid size, with dedicated
// buffers. Execution copies through the planned buffers under a lock, so
// callers never alias FFTW state and results are deterministic
// (FFTW_ESTIMATE plans do not depend on runtime measurement).
class FftEngine {
  public:
    static FftEngine& instance() {
        static FftEngine engine;
        return engine;
    }

    // real samples (n*n, row-major) -> mean-normalized coefficients
    // (n*(n/2+1)): out[k] = (1/n^2) sum_x in(x) exp(-i k.x)
    void forward(const Grid& g, const double* in, std::complex<double>* out) {
        std::lock_guard lock(mutex_);
        Plans& p = plans(g.n);
        std::copy(in, in + g.size(), p.real);
        fftw_execute(p.fwd);
        const double scale = 1.0 / g.size();
        auto* c = reinterpret_cast<std::complex<double>*>(p.cplx);
        for (int i = 0; i < g.spectral_size(); ++i) out[i] = c[i] * scale;
    }

    // coefficients -> real samples: out(x) = sum_k in[k] exp(+i k.x)
    void backward(const Grid& g, const std::complex<double>* in, double* out) {
        std::lock_guard lock(mutex_);
        Plans& p = plans(g.n);
        auto* c = reinterpret_cast<std::complex<double>*>(p.cplx);
        std::copy(in, in + g.spectral_size(), c);
        fftw_execute(p.bwd);
        std::copy(p.real, p.real + g.size(), out);
    }

    FftEngine(const FftEngine&) = delete;
    FftEngine& operator=(const FftEngine&) = delete;

  private:
    struct Plans {
        double* real = nullptr;
        fftw_complex* cplx = nullptr;
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    FftEngine() = default;

    ~FftEngine() {
        for (auto& [n, p] : cache_) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
            fftw_free(p.real);
            fftw_free(p.cplx);
        }
    }

    Plans& plans(int n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        Plans p;
        p.real = fftw_alloc_real(static_cast<size_t>(n) * n);
        p.cplx = fftw_alloc_complex(static_cast<size_t>(n) * (n / 2 + 1));
        p.fwd = fftw_plan_dft_r2c_2d(n, n, p.real, p.cplx, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_c2r_2d(n, n, p.cplx, p.real, FFTW_ESTIMATE);
        return cache_.emplace(n, p).first->second;
    }

    std::mutex mutex_;
    std::map<int, Plans> cache_;
};

}  // namespace bsq::detail
