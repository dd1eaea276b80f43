#include <nlos/reconstruct/reconstruct.hpp>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include <nlos/core/parallel.hpp>

namespace nlos::reconstruct {

PhasorPulse make_pulse(const RelayWall &wall, double lambda_factor, double cycles,
                       std::optional<double> lambda_override) {
  const double lambda = lambda_override.value_or(lambda_factor * wall.pitch());
  if (!(lambda > 0.0))
    throw std::invalid_argument("make_pulse: wavelength must be > 0");
  return PhasorPulse(lambda, cycles, 0.0);
}

namespace {

/// Pulse kernel samples over [t0 - m2*dt, t0 + m2*dt] with m2 = ceil(3 sigma / dt).
std::vector<std::complex<double>> sample_kernel(const PhasorPulse &pulse, double dt,
                                                std::uint32_t &m2_out) {
  const double sigma = pulse.sigma();
  const double omega = pulse.omega();
  const double t0 = pulse.t0();
  const std::uint32_t m2 = std::uint32_t(std::ceil(3.0 * sigma / dt));
  const std::uint32_t m = 2 * m2 + 1;
  std::vector<std::complex<double>> kernel(m);
  for (std::uint32_t kb = 0; kb < m; ++kb) {
    const double t = t0 + (double(kb) - double(m2)) * dt;
    const double envelope = std::exp(-(t - t0) * (t - t0) / (2.0 * sigma * sigma));
    kernel[kb] = std::polar(envelope, omega * t);
  }
  m2_out = m2;
  return kernel;
}

// fftw_plan_* and fftw_destroy_plan share planner state and are not
// thread-safe; executing a plan on distinct arrays is.
std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  fftw_complex *ptr = nullptr;
  explicit FftwBuffer(std::size_t n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    ptr = fftw_alloc_complex(n);
    if (!ptr)
      throw std::bad_alloc();
  }
  ~FftwBuffer() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_free(ptr);
  }
  FftwBuffer(const FftwBuffer &) = delete;
  FftwBuffer &operator=(const FftwBuffer &) = delete;
  std::complex<double> *cplx() { return reinterpret_cast<std::complex<double> *>(ptr); }
};

} // namespace

PhasorResponse convolve_pulse(const ImpulseResponse &h, const PhasorPulse &pulse) {
  const double dt = h.bin_width;
  const double span = double(h.n_bins) * dt;
  if (6.0 * pulse.sigma() > span)
    throw std::invalid_argument("convolve_pulse: pulse kernel (6 sigma) is longer than the "
                                "histogram span");

  std::uint32_t m2 = 0;
  const std::vector<std::complex<double>> kernel = sample_kernel(pulse, dt, m2);
  const std::size_t m = kernel.size();
  const std::size_t n = h.n_bins;
  const std::size_t conv_len = n + m - 1;
  std::size_t fft_len = 1;
  while (fft_len < conv_len)
    fft_len <<= 1;

  PhasorResponse out(h.wall, h.sensor, std::uint32_t(conv_len), dt,
                     h.t_start + pulse.t0() - double(m2) * dt);

  FftwBuffer plan_in(fft_len), plan_out(fft_len);
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_1d(int(fft_len), plan_in.ptr, plan_out.ptr, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(int(fft_len), plan_in.ptr, plan_out.ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  // kernel spectrum, shared by all laser points
  std::vector<std::complex<double>> kernel_f(fft_len);
  {
    for (std::size_t b = 0; b < fft_len; ++b)
      plan_in.cplx()[b] = b < m ? kernel[b] : 0.0;
    fftw_execute_dft(fwd, plan_in.ptr, plan_out.ptr);
    for (std::size_t b = 0; b < fft_len; ++b)
      kernel_f[b] = plan_out.cplx()[b];
  }

  const std::size_t n_lasers = h.wall.sample_count();
  const double inv_len = 1.0 / double(fft_len);

  core::parallel_for(n_lasers, [&](std::size_t begin, std::size_t end) {
    FftwBuffer in(fft_len), freq(fft_len), time(fft_len);
    for (std::size_t laser = begin; laser < end; ++laser) {
      const float *src = h.data.data() + laser * n;
      for (std::size_t b = 0; b < fft_len; ++b)
        in.cplx()[b] = b < n ? std::complex<double>(src[b], 0.0) : 0.0;
      fftw_execute_dft(fwd, in.ptr, freq.ptr);
      for (std::size_t b = 0; b < fft_len; ++b)
        freq.cplx()[b] *= kernel_f[b];
      fftw_execute_dft(bwd, freq.ptr, time.ptr);
      std::complex<double> *dst = out.data.data() + laser * conv_len;
      for (std::size_t b = 0; b < conv_len; ++b)
        dst[b] = time.cplx()[b] * inv_len;
    }
  });

  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  return out;
}

} // namespace nlos::reconstruct
