#ifndef FYAMABE_FFT_HPP
#define FYAMABE_FFT_HPP

// Thin RAII wrapper around FFTW's real transforms with the coefficient
// convention  vhat_k = (1/N) sum_j v_j e^{-2 pi i j k / N},  k = 0..N/2,
// so that vhat_0 is the mean.  Plan creation is serialized (FFTW plans
// are not thread-safe to create); execution uses per-instance buffers.

#include <complex>
#include <vector>

namespace fyamabe {

class RealFourier {
public:
    explicit RealFourier(int n);
    ~RealFourier();
    RealFourier(const RealFourier&) = delete;
    RealFourier& operator=(const RealFourier&) = delete;

    int size() const { return n_; }
    int bins() const { return n_ / 2 + 1; }

    /// v (length n) -> coefficients (length n/2+1), normalized by 1/n.
    void forward(const double* v, std::complex<double>* vhat) const;

    /// coefficients -> grid values, v_j = sum_k vhat_k e^{+2 pi i jk/n}
    /// (Hermitian extension implied; no further normalization).
    void inverse(const std::complex<double>* vhat, double* v) const;

private:
    int n_;
    void* plan_fwd_;
    void* plan_inv_;
    double* real_buf_;
    void* cplx_buf_;
};

} // namespace fyamabe

#endif
