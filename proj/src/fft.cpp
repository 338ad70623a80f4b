#include "mkdvlab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace mkdv {
namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex planner_mutex;

}  // namespace

Fft::Fft(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("Fft: size must be at least 2");
    in_buf_ = fftw_alloc_complex(static_cast<std::size_t>(n));
    out_buf_ = fftw_alloc_complex(static_cast<std::size_t>(n));
    std::lock_guard lock(planner_mutex);
    plan_fwd_ = fftw_plan_dft_1d(n, static_cast<fftw_complex*>(in_buf_),
                                 static_cast<fftw_complex*>(out_buf_), FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(n, static_cast<fftw_complex*>(in_buf_),
                                 static_cast<fftw_complex*>(out_buf_), FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
}

Fft::~Fft() {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(in_buf_);
    fftw_free(out_buf_);
}

void Fft::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    std::memcpy(in_buf_, in.data(), sizeof(std::complex<double>) * static_cast<std::size_t>(n_));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(out.data(), out_buf_, sizeof(std::complex<double>) * static_cast<std::size_t>(n_));
}

void Fft::backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    std::memcpy(in_buf_, in.data(), sizeof(std::complex<double>) * static_cast<std::size_t>(n_));
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    std::memcpy(out.data(), out_buf_, sizeof(std::complex<double>) * static_cast<std::size_t>(n_));
}

Fft& fft_for(int n) {
    thread_local std::map<int, std::unique_ptr<Fft>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Fft>(n)).first;
    return *it->second;
}

}  // namespace mkdv
