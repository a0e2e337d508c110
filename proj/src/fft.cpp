#include "fyamabe/fft.hpp"

#include <cstring>
#include <fftw3.h>
#include <mutex>

namespace fyamabe {

namespace {
std::mutex& plan_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

RealFourier::RealFourier(int n) : n_(n)
{
    real_buf_ = fftw_alloc_real(n);
    cplx_buf_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_1d(
        n, real_buf_, static_cast<fftw_complex*>(cplx_buf_), FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(
        n, static_cast<fftw_complex*>(cplx_buf_), real_buf_, FFTW_ESTIMATE);
}

RealFourier::~RealFourier()
{
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

void RealFourier::forward(const double* v, std::complex<double>* vhat) const
{
    std::memcpy(real_buf_, v, sizeof(double) * n_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    const auto* out = static_cast<const fftw_complex*>(cplx_buf_);
    const double inv_n = 1.0 / n_;
    for (int k = 0; k <= n_ / 2; ++k)
        vhat[k] = std::complex<double>(out[k][0], out[k][1]) * inv_n;
}

void RealFourier::inverse(const std::complex<double>* vhat, double* v) const
{
    auto* in = static_cast<fftw_complex*>(cplx_buf_);
    for (int k = 0; k <= n_ / 2; ++k) {
        in[k][0] = vhat[k].real();
        in[k][1] = vhat[k].imag();
    }
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    std::memcpy(v, real_buf_, sizeof(double) * n_);
}

} // namespace fyamabe
