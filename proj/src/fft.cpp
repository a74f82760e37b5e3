#include "tfq/fft.hpp"

#include <fftw3.h>

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tfq::fft {
namespace {

// fftw planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created in-place, unaligned, and kept for the process.
std::mutex plan_mutex;
std::map<std::pair<std::vector<int>, int>, fftw_plan> plan_cache;

fftw_plan get_plan(const std::vector<int>& dims, int sign) {
  std::lock_guard lock(plan_mutex);
  auto key = std::make_pair(dims, sign);
  if (auto it = plan_cache.find(key); it != plan_cache.end()) return it->second;
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  std::vector<cplx> scratch(total);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (p == nullptr) throw std::runtime_error("fftw: plan creation failed");
  plan_cache.emplace(key, p);
  return p;
}

std::atomic<double> fault{0.0};

// exp(i 2π r / n) with r reduced modulo n first; r is a multiple of 1/4 so the
// reduction is exact in binary floating point.
cplx unit_phase(double r, double n) {
  double red = std::fmod(r, n);
  double ang = 2.0 * std::numbers::pi * red / n;
  return {std::cos(ang), std::sin(ang)};
}

}  // namespace

void transform(std::span<cplx> data, Direction dir) {
  if (data.empty()) return;
  std::vector<int> dims{static_cast<int>(data.size())};
  transform_nd(data, dims, dir);
}

void transform_nd(std::span<cplx> data, std::span<const int> dims, Direction dir) {
  std::vector<int> d(dims.begin(), dims.end());
  std::size_t total = 1;
  for (int v : d) total *= static_cast<std::size_t>(v);
  if (total != data.size()) throw std::invalid_argument("fft: dims do not match data size");
  fftw_plan p = get_plan(d, dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, buf, buf);
}

void offset_dft(std::span<const cplx> in, std::span<cplx> out, Direction dir,
                double in_offset, double out_offset, double scale) {
  const std::size_t n = in.size();
  if (out.size() != n) throw std::invalid_argument("offset_dft: size mismatch");
  const double s = dir == Direction::Forward ? -1.0 : 1.0;
  const double nn = static_cast<double>(n);
  std::vector<cplx> work(n);
  for (std::size_t i = 0; i < n; ++i)
    work[i] = in[i] * unit_phase(s * static_cast<double>(i) * out_offset, nn);
  transform(work, dir);
  const double delta = fault.load(std::memory_order_relaxed);
  for (std::size_t k = 0; k < n; ++k) {
    cplx post = unit_phase(s * in_offset * (static_cast<double>(k) + out_offset), nn);
    out[k] = scale * work[k] * (post + delta);
  }
}

void set_twiddle_fault(double delta) { fault.store(delta); }
double twiddle_fault() { return fault.load(); }

}  // namespace tfq::fft
