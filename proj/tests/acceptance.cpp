// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coinlab/scenario.hpp"
#include "oracles.hpp"

using namespace coinlab;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RatioScenario catalog_scenario(Statistics numerator, double x0) {
  RatioScenario sc{Spwf(BoxEigenstate{2, 1.0}), Spwf(BoxEigenstate{1, 1.0}),
                   x0};
  sc.numerator = numerator;
  return sc;
}

const std::vector<double> kAValues{0.0, 0.25, 0.5, 1.0, 2.0, 5.0};
constexpr double kLambda = 0.5;        // box n=2, L=1
constexpr double kDelta = 1e-6 * kLambda;
const GeometricSchedule kSchedule{kLambda / 200.0, 0.5, 12};

void criterion_sweep(int id, const char* name, Statistics stat,
                     AsymptoticModel model) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto table =
      sweep_ratio_curve(catalog_scenario(stat, 0.5), kAValues, kDelta);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  double dev = 0.0;
  bool converged = true;
  for (const auto& p : table) {
    dev = std::max(dev,
                   std::fabs(p.ratio - asymptotic_model_value(model, p.a)));
    converged = converged && p.converged;
  }
  char detail[128];
  std::snprintf(detail, sizeof detail, "max |dev| = %.3g, %.2f s", dev,
                seconds);
  report(id, name, converged && dev < 1e-4 && seconds < 10.0, detail);
}

double limit_value(Statistics stat, double x0, LimitOrder order,
                   bool& converged) {
  const auto est = estimate_limit(catalog_scenario(stat, x0), {order},
                                  kSchedule);
  converged = converged && est.converged;
  return est.value;
}

void criterion_node_limits() {
  bool conv = true;
  const double be = limit_value(Statistics::Boson, 0.5, LimitOrder::EtaFirst, conv);
  const double bd = limit_value(Statistics::Boson, 0.5, LimitOrder::DeltaFirst, conv);
  const double fe = limit_value(Statistics::Fermion, 0.5, LimitOrder::EtaFirst, conv);
  const double fd = limit_value(Statistics::Fermion, 0.5, LimitOrder::DeltaFirst, conv);
  const bool ok = conv && std::fabs(be - 1.0) < 1e-3 && std::fabs(bd) < 1e-3 &&
                  std::fabs(fe - 1.0) < 1e-3 && std::fabs(fd - 2.0) < 1e-3;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "bos: eta-first %.6f, delta-first %.6f; fer: %.6f, %.6f", be,
                bd, fe, fd);
  report(3, "node case: limit orders do not commute", ok, detail);
}

void criterion_regular_limits() {
  bool conv = true;
  const double be = limit_value(Statistics::Boson, 0.25, LimitOrder::EtaFirst, conv);
  const double bd = limit_value(Statistics::Boson, 0.25, LimitOrder::DeltaFirst, conv);
  const double fe = limit_value(Statistics::Fermion, 0.25, LimitOrder::EtaFirst, conv);
  const double fd = limit_value(Statistics::Fermion, 0.25, LimitOrder::DeltaFirst, conv);
  const bool ok = conv && std::fabs(be - 2.0) < 2e-3 && std::fabs(bd - 2.0) < 2e-3 &&
                  std::fabs(fe) < 2e-3 && std::fabs(fd) < 2e-3;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "bos: eta-first %.6f, delta-first %.6f; fer: %.6f, %.6f", be,
                bd, fe, fd);
  report(4, "regular case: both orders agree (2 bos, 0 fer)", ok, detail);
}

void criterion_event_ratios() {
  const DetectorPair g{0.5, kDelta, kDelta};  // a = 1
  const Spwf p1(BoxEigenstate{2, 1.0}), p2(BoxEigenstate{1, 1.0});
  const double bos =
      event_ratio(JointDensity(p1, p2, Statistics::Boson), g).value;
  const double fer =
      event_ratio(JointDensity(p1, p2, Statistics::Fermion), g).value;
  const double dis =
      event_ratio(JointDensity(p1, p2, Statistics::Distinguishable), g).value;
  const bool ok = std::fabs(bos - 1.0 / 7.0) < 1e-4 &&
                  std::fabs(fer - 7.0) / 7.0 < 1e-3 &&
                  std::fabs(dis - 1.0) < 1e-6;
  char detail[128];
  std::snprintf(detail, sizeof detail, "bos %.6f, fer %.4f, dis %.8f", bos,
                fer, dis);
  report(5, "event ratios at a = 1 (1/7 bos, 7 fer, 1 dis)", ok, detail);
}

void criterion_pointwise_properties() {
  std::mt19937 rng(20260824);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Spwf p1(BoxEigenstate{2, 1.0}), p2(BoxEigenstate{1, 1.0});
  const JointDensity dis(p1, p2, Statistics::Distinguishable);
  const JointDensity bos(p1, p2, Statistics::Boson);
  const JointDensity fer(p1, p2, Statistics::Fermion);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x1 = unit(rng), x2 = unit(rng);
    const double d = dis.evaluate(x1, x2);
    const double b = bos.evaluate(x1, x2);
    const double f = fer.evaluate(x1, x2);
    const bool ok = std::fabs(b + f - 2.0 * d) <= 1e-12 * std::max(1.0, d) &&
                    b >= 0.0 && f >= 0.0 && d >= 0.0 &&
                    b == bos.evaluate(x2, x1) && f == fer.evaluate(x2, x1) &&
                    fer.evaluate(x1, x1) == 0.0;
    if (!ok) ++bad;
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "%d of 10000 points violated", bad);
  report(6, "pointwise symmetry / positivity / Pauli suite", bad == 0, detail);
}

void criterion_quadrature_oracles() {
  int bad = 0, total = 0;
  for (const double d : {1e-8, 1e-6, 1e-4, 1e-2}) {
    for (const double a : {0.0, 0.5, 1.0, 2.0, 10.0}) {
      const double eta = a * d;
      const Interval left{-eta - d, -eta + d};
      const double umax = eta + d;
      // 1e-12 relative with a rounding floor |f|_max * window length
      auto check = [&](double got, double expected, double fmax,
                       double length) {
        ++total;
        if (std::fabs(got - expected) >
            1e-12 * std::fabs(expected) + 2e-14 * length * fmax)
          ++bad;
      };
      check(integrate_1d([](double u) { return u * u; }, left).value,
            oracle::moment2(-eta, d), umax * umax, 2.0 * d);
      check(integrate_1d([](double u) { return u; }, left).value,
            oracle::moment1(-eta, d), umax, 2.0 * d);
      check(integrate_1d([](double) { return 1.0; }, left).value,
            oracle::moment0(d), 1.0, 2.0 * d);
      const Interval right{eta - d, eta + d};
      check(integrate_2d([](double u, double v) { return u * v; },
                         {left, right})
                .value,
            oracle::moment1(-eta, d) * oracle::moment1(eta, d), umax * umax,
            4.0 * d * d);
    }
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "%d of %d integrals off", bad, total);
  report(7, "window quadrature matches antiderivative oracles to 1e-12",
         bad == 0, detail);
}

void criterion_mean_density_convergence() {
  auto density = [](double x) {
    const double s = std::sin(M_PI * x);
    return 2.0 * s * s;
  };
  const double x0 = 0.3;
  std::vector<double> means;
  for (int k = 0; k <= 6; ++k) {
    const double w = 4e-3 * std::pow(0.5, k);
    means.push_back(
        mean_density([&](double u) { return density(x0 + u); }, {-w, w}, 1e-12)
            .value);
  }
  bool second_order = true;
  for (std::size_t i = 2; i < means.size(); ++i) {
    const double prev = std::fabs(means[i - 1] - means[i - 2]);
    const double cur = std::fabs(means[i] - means[i - 1]);
    if (!(prev / cur >= 3.9)) second_order = false;
  }
  const double target = density(x0);
  const double final_err = std::fabs(means.back() - target);
  char detail[96];
  std::snprintf(detail, sizeof detail, "final |mean - density| = %.3g",
                final_err);
  report(8, "mean density converges at second order to the local density",
         second_order && final_err < 1e-6, detail);
}

void criterion_deterministic_output() {
  namespace fs = std::filesystem;
  const std::string scenario_path =
      std::string(SCENARIO_DIR) + "/fig2.json";
  const auto parsed = parse_scenario(slurp(scenario_path));
  if (!parsed.scenario) {
    report(9, "scenario replay is byte-identical", false,
           "scenarios/fig2.json failed to parse");
    return;
  }
  const std::string out1 =
      (fs::temp_directory_path() / "coinlab_accept_1.csv").string();
  const std::string out2 =
      (fs::temp_directory_path() / "coinlab_accept_2.csv").string();
  const auto r1 = run_scenario(*parsed.scenario, 4, out1);
  const auto r2 = run_scenario(*parsed.scenario, 1, out2);
  const bool ok = r1.exit_code == 0 && r2.exit_code == 0 &&
                  slurp(out1) == slurp(out2) && !slurp(out1).empty();
  report(9, "scenario replay is byte-identical across worker counts", ok);
}

}  // namespace

int main() {
  criterion_sweep(1, "boson sweep tracks 1/(1+3a^2) at delta = 1e-6 lambda",
                  Statistics::Boson, AsymptoticModel::BosOverDis);
  criterion_sweep(2, "fermion sweep tracks 2 - 1/(1+3a^2)",
                  Statistics::Fermion, AsymptoticModel::FerOverDis);
  criterion_node_limits();
  criterion_regular_limits();
  criterion_event_ratios();
  criterion_pointwise_properties();
  criterion_quadrature_oracles();
  criterion_mean_density_convergence();
  criterion_deterministic_output();
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
