#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "coinlab/limits.hpp"
#include "oracles.hpp"

using namespace coinlab;

namespace {

RatioScenario local_node_scenario(Statistics numerator,
                                  Complex c = {1.0, 0.0},
                                  Complex d = {1.0, 0.0}) {
  RatioScenario sc{Spwf(LocalNode{c, 0.5}),
                   Spwf(LocalRegular{d, {0.0, 0.0}, 0.5}), 0.5};
  sc.numerator = numerator;
  return sc;
}

RatioScenario box_scenario(Statistics numerator, double x0) {
  RatioScenario sc{Spwf(BoxEigenstate{2, 1.0}), Spwf(BoxEigenstate{1, 1.0}),
                   x0};
  sc.numerator = numerator;
  return sc;
}

const GeometricSchedule kSchedule{2.5e-3, 0.5, 12};

}  // namespace

TEST_CASE("shanks extrapolation") {
  SUBCASE("geometric tail is accelerated") {
    std::vector<double> seq;
    for (int k = 0; k < 10; ++k) seq.push_back(1.0 + 3.0 * std::pow(0.5, k));
    const auto e = shanks_extrapolate(seq);
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("constant sequence converges immediately") {
    const auto e = shanks_extrapolate({0.25, 0.25, 0.25, 0.25, 0.25, 0.25});
    CHECK(e.converged);
    CHECK(e.value == 0.25);
  }
  SUBCASE("rational decay to zero") {
    std::vector<double> seq;
    for (int k = 0; k < 12; ++k) {
      const double t = std::pow(0.25, k);
      seq.push_back(t / (3.0 + t));
    }
    const auto e = shanks_extrapolate(seq);
    CHECK(e.converged);
    CHECK(std::fabs(e.value) < 1e-8);
  }
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS((GeometricSchedule{1e-3, 0.5, 4}.values()),
                  std::invalid_argument);
  CHECK_THROWS_AS((GeometricSchedule{1e-3, 1.5, 10}.values()),
                  std::invalid_argument);
  CHECK_THROWS_AS((GeometricSchedule{-1.0, 0.5, 10}.values()),
                  std::invalid_argument);
  // catalog pairs must start well below the wavefunction scale
  CHECK_THROWS_AS(estimate_limit(box_scenario(Statistics::Boson, 0.5),
                                 {LimitOrder::FixedRatio, 1.0},
                                 {0.1, 0.5, 10}),
                  std::invalid_argument);
}

TEST_CASE("node case, local models: iterated limits disagree") {
  const auto bos_eta = estimate_limit(local_node_scenario(Statistics::Boson),
                                      {LimitOrder::EtaFirst}, kSchedule);
  const auto bos_delta = estimate_limit(local_node_scenario(Statistics::Boson),
                                        {LimitOrder::DeltaFirst}, kSchedule);
  CHECK(bos_eta.converged);
  CHECK(bos_delta.converged);
  CHECK(bos_eta.value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::fabs(bos_delta.value) < 1e-5);
  CHECK(std::fabs(bos_eta.value - bos_delta.value) >= 0.9);

  const auto fer_eta = estimate_limit(local_node_scenario(Statistics::Fermion),
                                      {LimitOrder::EtaFirst}, kSchedule);
  const auto fer_delta = estimate_limit(local_node_scenario(Statistics::Fermion),
                                        {LimitOrder::DeltaFirst}, kSchedule);
  CHECK(fer_eta.value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(fer_delta.value == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(std::fabs(fer_eta.value - fer_delta.value) >= 0.9);
}

TEST_CASE("node case, catalog pair: limits match the local models") {
  const auto bos_eta = estimate_limit(box_scenario(Statistics::Boson, 0.5),
                                      {LimitOrder::EtaFirst}, kSchedule);
  const auto bos_delta = estimate_limit(box_scenario(Statistics::Boson, 0.5),
                                        {LimitOrder::DeltaFirst}, kSchedule);
  CHECK(bos_eta.value == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::fabs(bos_delta.value) < 1e-3);
}

TEST_CASE("regular case: both orders agree") {
  const auto bos_eta = estimate_limit(box_scenario(Statistics::Boson, 0.25),
                                      {LimitOrder::EtaFirst}, kSchedule);
  const auto bos_delta = estimate_limit(box_scenario(Statistics::Boson, 0.25),
                                        {LimitOrder::DeltaFirst}, kSchedule);
  CHECK(bos_eta.value == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(bos_delta.value == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(std::fabs(bos_eta.value - bos_delta.value) < 2e-3);

  const auto fer_eta = estimate_limit(box_scenario(Statistics::Fermion, 0.25),
                                      {LimitOrder::EtaFirst}, kSchedule);
  const auto fer_delta = estimate_limit(box_scenario(Statistics::Fermion, 0.25),
                                        {LimitOrder::DeltaFirst}, kSchedule);
  CHECK(std::fabs(fer_eta.value) < 2e-3);
  CHECK(std::fabs(fer_delta.value) < 2e-3);
}

TEST_CASE("fixed-ratio path agrees with the closed form") {
  for (const double a : {0.0, 0.5, 1.0, 2.0}) {
    const auto est = estimate_limit(local_node_scenario(Statistics::Boson),
                                    {LimitOrder::FixedRatio, a}, kSchedule);
    CHECK(est.converged);
    CHECK(std::fabs(est.value - 1.0 / (1.0 + 3.0 * a * a)) < 1e-6);
  }
}

TEST_CASE("sweep and fit, local node case") {
  const std::vector<double> as{0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
  const auto sc = local_node_scenario(Statistics::Boson);
  const auto table = sweep_ratio_curve(sc, as, 1e-4);
  REQUIRE(table.size() == as.size());
  CHECK(table[3].ratio == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(table[4].ratio == doctest::Approx(1.0 / 13.0).epsilon(1e-8));
  const auto fit = fit_asymptotic(table, AsymptoticModel::BosOverDis);
  CHECK(fit.max_abs_deviation < 1e-8);
  CHECK(fit.points_used == static_cast<int>(as.size()));

  auto fer = sc;
  fer.numerator = Statistics::Fermion;
  const auto fer_fit = fit_asymptotic(sweep_ratio_curve(fer, as, 1e-4),
                                      AsymptoticModel::FerOverDis);
  CHECK(fer_fit.max_abs_deviation < 1e-8);

  auto ev = sc;
  ev.kind = RatioKind::EventRatio;
  ev.event_statistics = Statistics::Fermion;
  const auto ev_fit = fit_asymptotic(sweep_ratio_curve(ev, as, 1e-4),
                                     AsymptoticModel::FermionEventRatio);
  CHECK(ev_fit.max_rel_deviation < 1e-8);
}

TEST_CASE("sweep and fit, catalog node case at delta = 1e-6 lambda") {
  const auto sc = box_scenario(Statistics::Boson, 0.5);
  const double delta = 1e-6 * sc.length_scale();
  const auto table =
      sweep_ratio_curve(sc, {0.0, 0.25, 0.5, 1.0, 2.0, 5.0}, delta);
  const auto fit = fit_asymptotic(table, AsymptoticModel::BosOverDis);
  CHECK(fit.max_abs_deviation < 1e-6);
}

TEST_CASE("regular-case sweep sits near the constant 2") {
  const auto sc = box_scenario(Statistics::Boson, 0.25);
  const double lambda = sc.length_scale();
  double prev_dev = 0.0;
  for (const double rel : {1e-4, 1e-6}) {
    const auto table = sweep_ratio_curve(sc, {0.0, 0.5, 1.0, 2.0}, rel * lambda);
    double dev = 0.0;
    for (const auto& p : table) dev = std::max(dev, std::fabs(p.ratio - 2.0));
    if (prev_dev > 0.0) CHECK(dev < prev_dev);  // deviation shrinks with delta
    prev_dev = dev;
    CHECK(dev < 0.05);
  }
}

TEST_CASE("node-case ratio decreases monotonically in a") {
  const auto sc = local_node_scenario(Statistics::Boson);
  std::vector<double> as;
  for (double a = 0.0; a <= 10.0; a += 0.5) as.push_back(a);
  const auto table = sweep_ratio_curve(sc, as, 1e-5);
  for (std::size_t i = 1; i < table.size(); ++i)
    CHECK(table[i].ratio < table[i - 1].ratio);
}

TEST_CASE("ratios are invariant under rescaling the local amplitudes") {
  const auto base = local_node_scenario(Statistics::Boson);
  const auto scaled = local_node_scenario(Statistics::Boson, {-3.7, 1.2},
                                          {0.05, -2.4});
  for (const double a : {0.0, 1.0, 4.0}) {
    const double r1 = base.ratio_at(a * 1e-5, 1e-5).value;
    const double r2 = scaled.ratio_at(a * 1e-5, 1e-5).value;
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
  }
}

TEST_CASE("fit rejects tables with too few converged points") {
  std::vector<SweepPoint> table{{0.0, 1.0, 0.0, true},
                                {1.0, 0.25, 0.0, true},
                                {2.0, 0.07, 0.0, false}};
  CHECK_THROWS_AS(fit_asymptotic(table, AsymptoticModel::BosOverDis),
                  std::runtime_error);
}
