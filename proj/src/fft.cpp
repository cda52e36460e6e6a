#include "visco/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace visco {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

// The FFTW planner is not thread-safe; execution through fftw_execute_dft is.
std::mutex planner_mutex;

const PlanPair& plans_for(int n) {
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(planner_mutex);
  auto& slot = cache[n];
  if (!slot) {
    const std::size_t size = static_cast<std::size_t>(n) * n * n;
    std::vector<Complex> a(size), b(size);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    auto pair = std::make_unique<PlanPair>();
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    pair->forward = fftw_plan_dft_3d(n, n, n, pa, pb, FFTW_FORWARD, flags);
    pair->backward = fftw_plan_dft_3d(n, n, n, pa, pb, FFTW_BACKWARD, flags);
    if (!pair->forward || !pair->backward) throw std::runtime_error("fftw planning failed");
    slot = std::move(pair);
  }
  return *slot;
}

void check_size(const Grid& grid, std::size_t a, std::size_t b) {
  if (a != grid.size() || b != grid.size())
    throw std::invalid_argument("fft: buffer size does not match grid");
}

}  // namespace

void fft_forward(const Grid& grid, std::span<const double> in, std::span<Complex> out) {
  check_size(grid, in.size(), out.size());
  std::vector<Complex> buf(in.begin(), in.end());
  fftw_execute_dft(plans_for(grid.n()).forward, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void fft_inverse(const Grid& grid, std::span<const Complex> in, std::span<double> out) {
  check_size(grid, in.size(), out.size());
  std::vector<Complex> src(in.begin(), in.end()), dst(in.size());
  fftw_execute_dft(plans_for(grid.n()).backward, reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(dst.data()));
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t m = 0; m < dst.size(); ++m) out[m] = dst[m].real() * scale;
}

double continuum_to_dft_factor(const Grid& grid) {
  const double per_axis = grid.n() / grid.length();
  return per_axis * per_axis * per_axis * std::pow(2.0 * std::numbers::pi, 1.5);
}

}  // namespace visco
