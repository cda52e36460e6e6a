#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "visco/experiments.hpp"
#include "visco/reproduce.hpp"
#include "visco/run_config.hpp"

using namespace visco;
using doctest::Approx;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("visco_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_lab(const std::string& args) {
  const char* exe = std::getenv("VISCO_LAB");
  REQUIRE_MESSAGE(exe != nullptr, "VISCO_LAB is not set");
  const int status = std::system((std::string(exe) + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "[grid]\n"
      "n = 16\n"
      "L = 2pi\n"
      "\n"
      "[time]\n"
      "dt = 0.025   \n"
      "integrator = rk4\n"
      "[kernel]\n"
      "p = 1, 2, inf\n");
  ConfigMap m = ConfigMap::parse(in);
  CHECK(m.get_int("grid.n", 0) == 16);
  CHECK(m.get_double("grid.L", 0.0) == Approx(2.0 * std::numbers::pi));
  CHECK(m.get_double("time.dt", 0.0) == 0.025);
  CHECK(m.get("time.integrator", "") == "rk4");
  const auto p = m.get_list("kernel.p", {});
  REQUIRE(p.size() == 3);
  CHECK(std::isinf(p[2]));
  CHECK(m.get_double("missing.key", 7.0) == 7.0);

  m.apply_override("time.dt=0.05");
  CHECK(m.get_double("time.dt", 0.0) == 0.05);
  CHECK_THROWS_AS(m.apply_override("nodot=1"), std::invalid_argument);
  CHECK_THROWS_AS(m.apply_override("time.dt"), std::invalid_argument);

  const RunConfig rc = to_run_config(m);
  CHECK(rc.n == 16);
  CHECK(rc.dt == 0.05);
  CHECK(rc.integrator == Integrator::Rk4);

  CHECK(parse_number("pi") == Approx(std::numbers::pi));
  CHECK(parse_number("0.5pi") == Approx(0.5 * std::numbers::pi));
  CHECK_THROWS_AS(parse_number("12x"), std::invalid_argument);

  std::istringstream bad("[grid\nn = 1\n");
  CHECK_THROWS_AS(ConfigMap::parse(bad), std::invalid_argument);
  std::istringstream no_eq("[grid]\nn 16\n");
  CHECK_THROWS_AS(ConfigMap::parse(no_eq), std::invalid_argument);
  m.set("physics.nonlinear", "maybe");
  CHECK_THROWS_AS(m.get_bool("physics.nonlinear", true), std::invalid_argument);
}

TEST_CASE("run config round trip") {
  RunConfig rc;
  rc.n = 24;
  rc.mu = 0.3;
  rc.initial.kind = InitialKind::Random;
  rc.initial.seed = 99;
  rc.record.delta = 0.2;
  std::ostringstream os;
  from_run_config(rc).write(os);
  std::istringstream in(os.str());
  const RunConfig back = to_run_config(ConfigMap::parse(in));
  CHECK(back.n == 24);
  CHECK(back.mu == 0.3);
  CHECK(back.initial.kind == InitialKind::Random);
  CHECK(back.initial.seed == 99);
  CHECK(back.record.delta == 0.2);
  CHECK(back.length == rc.length);
}

TEST_CASE("theoretical exponents") {
  CHECK(lab::theoretical_slope(KernelKind::A, 1, lab::KernelDecaySpec{}.p_list[2]) == Approx(-2.0));
  CHECK(lab::theoretical_slope(KernelKind::A, 1, 1.0) == Approx(0.5));
  CHECK(lab::theoretical_slope(KernelKind::A, 1, 2.0) == Approx(-0.75));
  CHECK(lab::theoretical_slope(KernelKind::A, 0, 2.0) == Approx(-0.25));
  CHECK(lab::theoretical_slope(KernelKind::C, 0, 1.0) == Approx(0.5));
  CHECK(lab::theoretical_slope(KernelKind::Heat, 0, 1.0) == Approx(0.0));
  CHECK(lab::theoretical_slope(KernelKind::Heat, 0, lab::KernelDecaySpec{}.p_list[2]) == Approx(-1.5));
  CHECK(lab::theoretical_highfreq_rate(2.0) == Approx(1.0 / 16.0));
}

TEST_CASE("parallel_for") {
  std::vector<int> hit(50, 0);
  lab::parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  std::atomic<int> done{0};
  CHECK_THROWS_AS(lab::parallel_for(10, 3,
                                    [&](std::size_t i) {
                                      ++done;
                                      if (i == 4) throw std::runtime_error("boom");
                                    }),
                  std::runtime_error);
  CHECK(done.load() == 10);
}

TEST_CASE("kernel-decay outputs") {
  lab::KernelDecaySpec spec;
  spec.kinds = {KernelKind::Heat};
  spec.alphas = {0};
  spec.p_list = {1.0, std::numeric_limits<double>::infinity()};
  spec.t_min = 20.0;
  spec.t_max = 200.0;
  spec.points = 8;
  const fs::path dir = scratch("kernel");
  const auto rows = lab::cmd_kernel_decay(spec, {dir, "run", false});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].band == Band::Full);
  CHECK(rows[0].fit.slope == Approx(0.0).epsilon(1e-6));
  CHECK(rows[1].fit.slope == Approx(-1.5).epsilon(0.03));

  const std::string csv = slurp(dir / "run_kernel_decay.csv");
  CHECK(csv.rfind("# visco-kernel-decay v1\n", 0) == 0);
  CHECK(csv.find("kind,band,alpha,p,mu,t,norm,quadrature_residual\n") != std::string::npos);
  const json fits = json::parse(slurp(dir / "run_kernel_decay_fits.json"));
  CHECK(fits.is_array());
  CHECK(fits.size() == 2);

  // the fit subcommand reproduces the slope from the table
  lab::FitSpec fs_spec;
  fs_spec.input = dir / "run_kernel_decay.csv";
  fs_spec.filters = {{"p", "inf"}};
  const json fit = json::parse(lab::cmd_fit(fs_spec, {dir, "", false}));
  CHECK(fit.at("slope").get<double>() == Approx(rows[1].fit.slope).epsilon(1e-12));
  CHECK(fs::exists(dir / "fit.json"));

  fs_spec.y = "nope";
  CHECK_THROWS_AS(lab::cmd_fit(fs_spec, {dir, "", false}), std::invalid_argument);

  lab::KernelDecaySpec bad = spec;
  bad.kinds = {KernelKind::A};
  bad.band = Band::Full;
  CHECK_THROWS_AS(lab::validate(bad), std::invalid_argument);
  bad = spec;
  bad.points = 4;
  CHECK_THROWS_AS(lab::validate(bad), std::invalid_argument);
}

TEST_CASE("kernel tables do not depend on the worker count") {
  lab::KernelDecaySpec spec;
  spec.kinds = {KernelKind::A, KernelKind::C};
  spec.alphas = {0};
  spec.p_list = {2.0};
  spec.t_min = 10.0;
  spec.t_max = 30.0;
  spec.points = 8;
  std::ostringstream one, three;
  lab::write_kernel_csv(one, lab::kernel_decay(spec));
  spec.workers = 3;
  lab::write_kernel_csv(three, lab::kernel_decay(spec));
  CHECK(one.str() == three.str());
}

TEST_CASE("highfreq rates") {
  lab::HighfreqSpec spec;
  spec.mus = {1.0};
  const auto rows = lab::highfreq(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ratio == Approx(1.0).epsilon(0.2));
  CHECK(rows[0].series.size() == 26);
}

TEST_CASE("linear-box refusals and zero data") {
  lab::LinearBoxSpec spec;
  spec.n = 16;
  spec.length = 40.0;
  spec.times = {1.0, 5.0, 11.0};
  CHECK_THROWS_AS(lab::validate(spec), std::invalid_argument);
  spec.times = {2.0, 1.0};
  CHECK_THROWS_AS(lab::validate(spec), std::invalid_argument);

  spec.times = {0.0, 2.0, 5.0, 10.0};
  spec.split = true;
  spec.initial.amplitude = 0.0;
  const auto r = lab::linear_box(spec);
  REQUIRE(r.records.size() == 4);
  for (const auto& rec : r.records) {
    for (const char* key : {"u_l1", "u_l2", "u_linf", "Ec_l1", "Ec_linf", "u_hneg_0.5", "Ec_hneg_1", "u1_l2",
                            "uinf_l2", "Ec1_l2", "Ecinf_l2"}) {
      REQUIRE_MESSAGE(rec.values.count(key) == 1, key);
      CHECK(rec.values.at(key) == 0.0);
    }
  }
  CHECK_FALSE(r.u_l1_fit.has_value());
}

TEST_CASE("linear-box single velocity mode follows the closed form") {
  lab::LinearBoxSpec spec;
  spec.n = 8;
  spec.length = 2.0 * std::numbers::pi * 8.0;
  spec.times = {0.0, 3.0, 9.0};
  spec.p_list = {2.0};
  spec.s_list = {};
  const Grid g = make_grid(spec.n, spec.length);
  ViscoState s0(g);
  // xi = (1/8, 0, 0), u along e2
  s0.u.c[1][g.index(1, 0, 0)] = Complex(0.0, 100.0);
  s0.u.c[1][g.index(7, 0, 0)] = Complex(0.0, -100.0);
  const double u2 = lp_norm_grid(s0.u, 2.0);
  const auto r = lab::linear_box(spec, &s0);
  const double q = 1.0 / 64.0;
  for (const auto& rec : r.records) {
    const Amplitudes a = amplitudes(q, 1.0, rec.t);
    CHECK(rec.values.at("u_l2") == Approx(std::abs(a.B) * u2).epsilon(1e-12));
    // E = i A u xi^T has xi in the last slot, so Q keeps all of it
    CHECK(rec.values.at("Ec_l2") == Approx(std::abs(a.A) * std::sqrt(q) * u2).epsilon(1e-12));
  }
}

TEST_CASE("nonlinear-box with zero amplitude") {
  RunConfig rc;
  rc.n = 8;
  rc.t_end = 1.0;
  rc.initial.amplitude = 0.0;
  const fs::path dir = scratch("nonlinear");
  const auto s = lab::cmd_nonlinear_box(rc, {dir, "", false});
  CHECK(s.failure.empty());
  REQUIRE(s.records.size() == 3);
  for (const auto& rec : s.records) {
    CHECK(rec.values.at("energy") == 0.0);
    CHECK(rec.values.at("D") == 0.0);
  }
  CHECK(slurp(dir / "nonlinear_box.csv").rfind("# visco-run v1\n", 0) == 0);
  CHECK(fs::file_size(dir / "final_state.bin") == 24 + 512 * 12 * 16);
  const json j = json::parse(slurp(dir / "nonlinear_box_summary.json"));
  CHECK(j.at("failure") == "");
}

TEST_CASE("reproduce registry") {
  const auto& list = lab::criteria();
  REQUIRE(list.size() == 10);
  for (std::size_t i = 0; i < list.size(); ++i) CHECK(list[i].number == static_cast<int>(i + 1));
  CHECK_THROWS_AS(lab::reproduce("no-such-criterion", {}), std::invalid_argument);
  const auto r = lab::reproduce("eigen-identities", {});
  REQUIRE(r.size() == 1);
  CHECK(r[0].passed);
  CHECK(r[0].seconds < 1.0);
  CHECK(lab::format_result(r[0]).rfind("PASS [1] eigen-identities", 0) == 0);
}

TEST_CASE("command line") {
  const fs::path dir = scratch("cli");
  CHECK(run_lab("reproduce no-such-criterion") != 0);
  CHECK(run_lab("reproduce wave-form") == 0);
  CHECK(run_lab("kernel-decay --bogus") != 0);
  CHECK(run_lab("kernel-decay -o " + dir.string() +
                " -s kernel.kinds=heat -s kernel.alphas=0 -s kernel.p=inf -s kernel.t_min=2 -s kernel.t_max=10"
                " -s kernel.points=8") == 0);
  CHECK(fs::exists(dir / "kernel_decay.csv"));
  const std::string manifest = slurp(dir / "manifest.txt");
  CHECK(manifest.rfind("# visco-manifest v1", 0) == 0);
  CHECK(manifest.find("t_max = 10") != std::string::npos);
  CHECK(manifest.find("mu = 1") != std::string::npos);
  CHECK(run_lab("fit " + (dir / "kernel_decay.csv").string() + " -o " + dir.string()) == 0);
  CHECK(fs::exists(dir / "fit.json"));
  CHECK(run_lab("linear-box -o " + dir.string() + " -s grid.n=16 -s grid.L=20 -s box.times=1,2,9") == 64);
}
