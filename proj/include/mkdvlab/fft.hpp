#pragma once

#include <complex>
#include <span>

namespace mkdv {

// Unnormalized complex DFT of one size, backed by FFTW. An instance owns its
// plans and aligned work buffers and is not safe to share between threads;
// fft_for() hands out a thread-local instance per size, so the spectral
// operations stay pure and freely parallelizable across worker threads.
class Fft {
  public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return n_; }
    // out_m = sum_j in_j exp(-2 pi i m j / n)
    void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
    // out_j = sum_m in_m exp(+2 pi i m j / n)
    void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

  private:
    int n_;
    void* in_buf_;
    void* out_buf_;
    void* plan_fwd_;
    void* plan_bwd_;
};

Fft& fft_for(int n);

}  // namespace mkdv
