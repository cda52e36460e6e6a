#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace visco {

enum class KernelKind { A, B, C, Heat };
enum class Band { Low, Full, High };

std::string to_string(KernelKind kind);
std::string to_string(Band band);
KernelKind parse_kernel_kind(const std::string& s);
Band parse_band(const std::string& s);

/// A radially symmetric Fourier multiplier |xi|^alpha * K(|xi|, t) * band(|xi|).
/// K is one of the amplitudes A, B, C or the heat multiplier exp(-mu |xi|^2 t);
/// band multiplies by the low-pass cutoff (Low), its complement (High) or 1 (Full).
struct KernelSpec {
  KernelKind kind = KernelKind::A;
  double mu = 1.0;
  int alpha = 0;
  Band band = Band::Low;
};

void validate(const KernelSpec& spec);

/// Multiplier value at radius rho and time t.
double kernel_multiplier(const KernelSpec& spec, double rho, double t);

/// Multiplier without the band factor, i.e. |rho|^alpha K(rho, t).
double kernel_symbol(const KernelSpec& spec, double rho, double t);

/// Physical-space samples f(r_i) of a radial kernel at time t.
struct RadialProfile {
  std::vector<double> r;
  std::vector<double> values;
  double t = 0.0;
  /// Max change of the profile under the last halving of the rho step, relative to max|f|.
  double residual = 0.0;
  std::size_t quadrature_intervals = 0;
};

class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

struct QuadratureOptions {
  double tolerance = 1e-7;
  std::size_t max_intervals = std::size_t{1} << 22;
  std::size_t min_intervals = 0;  // keep refining until at least this many
};

/// Radii covering [0, t + 10 sqrt(mu (1+t))] uniformly with spacing at most
/// sqrt(mu (1+t)) / 20 (the wavefront shell width scale) and at most
/// pi / (8 rho_max) so the band-limited oscillation is resolved.
std::vector<double> wavefront_grid(double t, double mu, double rho_max);

/// g(r) = (2 pi)^{-3/2} (4 pi / r) int_0^rho_max rho g_hat(rho) sin(rho r) d rho,
/// with g(0) = (2 pi)^{-3/2} 4 pi int rho^2 g_hat. Composite Simpson in rho, starting
/// from a step of at most pi / (8 r_max) and doubling until the profile changes by
/// less than options.tolerance relative to its maximum. Throws QuadratureError if
/// max_intervals is reached first.
RadialProfile radial_inverse_ft(const std::function<double(double)>& g_hat, double rho_max, double t,
                                std::vector<double> r_grid, const QuadratureOptions& options = {});

/// Integration limit for a kernel: the cutoff's outer radius for the low band, else
/// the radius beyond which rho^2 |multiplier| is below 1e-16 of its peak. Throws
/// QuadratureError when the multiplier is not integrable against rho^2 (for example
/// A, B, C on the full or high band, which carry singular high-frequency parts).
double kernel_rho_max(const KernelSpec& spec, double t);

RadialProfile kernel_profile(const KernelSpec& spec, double t, const QuadratureOptions& options = {});

/// ||f||_p^p = 4 pi int |f|^p r^2 dr by composite Simpson on each uniform run of
/// the grid; p = infinity is the grid maximum of |f|. The profile is taken as zero
/// outside the grid.
double lp_norm_radial(const RadialProfile& profile, double p);

struct DecayPoint {
  double t = 0.0;
  double norm = 0.0;
  double residual = 0.0;
};

/// One kernel_profile + lp_norm_radial per time.
std::vector<DecayPoint> decay_scan(const KernelSpec& spec, double p, std::span<const double> times,
                                   const QuadratureOptions& options = {});

struct SupPoint {
  double t = 0.0;
  double sup = 0.0;
  double rho_at = 0.0;
};

/// sup over rho >= M1/2 of |rho^alpha K(rho, t)| for a high-band spec. The sup is
/// over the support of the high band; with weight_by_cutoff the multiplier is also
/// multiplied by the high-band cutoff value.
std::vector<SupPoint> highfreq_sup_decay(const KernelSpec& spec, std::span<const double> times,
                                         bool weight_by_cutoff = false);

/// Log-spaced times in [t_min, t_max].
std::vector<double> log_spaced(double t_min, double t_max, std::size_t count);

}  // namespace visco
