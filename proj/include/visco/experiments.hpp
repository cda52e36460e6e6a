#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "visco/fit.hpp"
#include "visco/radial_kernel.hpp"
#include "visco/run_config.hpp"
#include "visco/solver.hpp"

namespace visco::lab {

const char* version();

/// Runs job(i) for i in [0, count) on up to `workers` threads. Jobs write only
/// their own result slots; the first exception is rethrown after all threads join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job);

/// Exponent of (1+t) in the whole-space decay of ||rho^alpha K(t)||_{L^p} for the
/// low-band kernels: the wave shell |x| ~ t of width sqrt(t) gives
///   A:     -3/2 - alpha/2 + 5/(2p)
///   B, C:  -2   - alpha/2 + 5/(2p)
///   heat:  -3/2 (1 - 1/p) - alpha/2
double theoretical_slope(KernelKind kind, int alpha, double p);

/// Rate c of exp(-c t) for sup_{rho >= 1/(2 mu)} of the high-band amplitudes: 1/(8 mu).
double theoretical_highfreq_rate(double mu);

struct Outputs {
  std::filesystem::path dir = ".";
  std::string prefix;
  bool gnuplot = false;

  std::filesystem::path file(const std::string& name) const;
};

/// manifest.txt: command, code version, start time and the resolved parameters.
void write_manifest(const Outputs& out, const std::string& command, const ConfigMap& resolved);

// kernel-decay

struct KernelDecaySpec {
  double mu = 1.0;
  std::vector<KernelKind> kinds{KernelKind::A, KernelKind::C};
  std::vector<int> alphas{0, 1};
  std::vector<double> p_list{1.0, 2.0, std::numeric_limits<double>::infinity()};
  Band band = Band::Low;
  double t_min = 10.0;
  double t_max = 300.0;
  int points = 24;
  QuadratureOptions quadrature;
  int workers = 1;
};

void validate(const KernelDecaySpec& spec);

struct SlopeRow {
  KernelKind kind = KernelKind::A;
  Band band = Band::Low;
  int alpha = 0;
  double p = 1.0;
  double mu = 1.0;
  std::vector<DecayPoint> series;
  DecayFitResult fit;
  double theory = 0.0;
  double deviation = 0.0;
};

/// The heat kernel always uses the full band.
std::vector<SlopeRow> kernel_decay(const KernelDecaySpec& spec);

/// CSV "# visco-kernel-decay v1" with columns kind,band,alpha,p,mu,t,norm,quadrature_residual.
void write_kernel_csv(std::ostream& os, const std::vector<SlopeRow>& rows);
std::string slopes_json(const std::vector<SlopeRow>& rows);

std::vector<SlopeRow> cmd_kernel_decay(const KernelDecaySpec& spec, const Outputs& out);

// highfreq

struct HighfreqSpec {
  std::vector<double> mus{0.5, 1.0, 2.0};
  KernelKind kind = KernelKind::A;
  int alpha = 0;
  /// Fit window in units of 8 mu (the e-folding time of the target rate).
  double window_min = 5.0;
  double window_max = 30.0;
  int points = 26;
  bool weight_by_cutoff = false;
  int workers = 1;
};

struct RateRow {
  double mu = 1.0;
  std::vector<SupPoint> series;
  ExponentialFitResult fit;
  double theory = 0.0;
  double ratio = 0.0;
};

std::vector<RateRow> highfreq(const HighfreqSpec& spec);
std::vector<RateRow> cmd_highfreq(const HighfreqSpec& spec, const Outputs& out);

// linear-box

struct LinearBoxSpec {
  int n = 128;
  double length = 100.0;
  double mu = 1.0;
  InitialDataSpec initial{InitialKind::GaussianBump, 1.0, 0.0};
  std::vector<double> times;
  std::vector<double> p_list{1.0, 2.0, std::numeric_limits<double>::infinity()};
  std::vector<double> s_list{0.5, 1.0};
  bool split = false;
  double fit_t_min = 5.0;
  double fit_t_max = 25.0;
};

/// Rejects horizons beyond L/4, where the wave shell wraps around the box.
void validate(const LinearBoxSpec& spec);

struct LinearBoxResult {
  std::vector<NormRecord> records;
  std::optional<DecayFitResult> u_l1_fit;
};

/// Keys per record: u_l<p>, Ec_l<p> (p as in the list, "inf" for infinity),
/// u_hneg_<s>, Ec_hneg_<s>, and with split u1_l2, uinf_l2, Ec1_l2, Ecinf_l2.
LinearBoxResult linear_box(const LinearBoxSpec& spec, const ViscoState* initial = nullptr);
LinearBoxResult cmd_linear_box(const LinearBoxSpec& spec, const Outputs& out);

// nonlinear-box

struct NonlinearSummary {
  std::vector<NormRecord> records;
  double max_energy_increase = 0.0;
  double max_D_increase = 0.0;
  double besov_ratio = 0.0;
  double max_divergence = 0.0;
  double max_div_transpose = 0.0;
  double max_determinant = 0.0;
  double max_compatibility = 0.0;
  double max_top_band = 0.0;
  std::string failure;
};

NonlinearSummary summarize(std::vector<NormRecord> records);
NonlinearSummary cmd_nonlinear_box(const RunConfig& config, const Outputs& out);

/// CSV "# visco-run v1" with t followed by the record keys in sorted order.
void write_records_csv(std::ostream& os, const std::vector<NormRecord>& records, const std::string& schema);

// fit

struct FitSpec {
  std::filesystem::path input;
  std::string x = "t";
  std::string y = "norm";
  /// col=value filters; all must match.
  std::vector<std::pair<std::string, std::string>> filters;
  double t_min = 0.0;
  double t_max = std::numeric_limits<double>::infinity();
  bool exponential = false;
};

/// Reads a CSV written by this tool (comment lines start with '#').
std::string cmd_fit(const FitSpec& spec, const Outputs& out);

}  // namespace visco::lab
