#include <random>

#include "doctest.h"
#include "lockeval/attacks/key_sampler.hpp"
#include "lockeval/error.hpp"
#include "lockeval/locks/insertion.hpp"
#include "lockeval/locks/point_function.hpp"
#include "lockeval/metrics/approx_count.hpp"
#include "lockeval/metrics/corruption.hpp"
#include "lockeval/metrics/metrics_csv.hpp"
#include "lockeval/metrics/pmc.hpp"
#include "lockeval/netlist/random_circuit.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace lockeval;

namespace {

constexpr double kPac = 1.8;  // 1 + epsilon_a at the defaults

bool within_pac(double estimate, double truth) {
  return estimate >= truth / kPac - 1e-12 && estimate <= truth * kPac + 1e-12;
}

std::vector<BitVector> all_keys(std::size_t w) {
  std::vector<BitVector> keys;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << w); ++k) keys.push_back(BitVector::from_uint(k, w));
  return keys;
}

std::vector<KeySample> exact_samples(const Circuit& c, const LockedCircuit& cl, std::span<const BitVector> keys,
                                     std::size_t threads = 1) {
  return evaluate_keys(c, cl, keys, EstimatorMode::Exact, {}, threads);
}

}  // namespace

TEST_CASE("estimator enum names") {
  CHECK(to_string(EstimatorMode::HashApprox) == "HASH_APPROX");
  CHECK(estimator_mode_from_string("monte_carlo") == EstimatorMode::MonteCarlo);
  CHECK(estimator_mode_from_string("MC") == EstimatorMode::MonteCarlo);
  CHECK_FALSE(estimator_mode_from_string("fast"));
  CHECK(default_mode(20) == EstimatorMode::Exact);
  CHECK(default_mode(21) == EstimatorMode::MonteCarlo);
}

TEST_CASE("Wilson interval") {
  const auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
  const auto [zlo, zhi] = wilson_interval(0, 100);
  CHECK(zlo == 0.0);
  CHECK(zhi > 0.0);
  CHECK(zhi < 0.05);
  CHECK(wilson_interval(10000, 10000).second == 1.0);
  CHECK(wilson_interval(10000, 10000).first < 1.0);
}

TEST_CASE("KeyCor on the identity wire") {
  const auto c = fixtures::identity_wire();
  const auto cl = lock_xor(c, {.width = 1, .seed = 1});
  for (auto mode : {EstimatorMode::Exact, EstimatorMode::MonteCarlo, EstimatorMode::HashApprox}) {
    CAPTURE(to_string(mode));
    CHECK(key_corruption(c, cl, ~cl.correct_key, mode).value == 1.0);
    const auto zero = key_corruption(c, cl, cl.correct_key, mode);
    CHECK(zero.value == 0.0);
    CHECK(zero.method == mode);
  }
  CHECK(corruptibility(c, cl, EstimatorMode::Exact).value == 0.5);
}

TEST_CASE("correct key has zero corruption in every mode") {
  const auto c = random_circuit({.inputs = 10, .gates = 30, .seed = 4});
  for (LockKind kind : {LockKind::Xor, LockKind::Mux, LockKind::Lut, LockKind::PointFunction, LockKind::Routing}) {
    const auto cl = lock(c, kind, {.width = kind == LockKind::Routing ? 1u : 8u, .seed = 2});
    for (auto mode : {EstimatorMode::Exact, EstimatorMode::MonteCarlo, EstimatorMode::HashApprox}) {
      CAPTURE(to_string(kind));
      CAPTURE(to_string(mode));
      const auto e = key_corruption(c, cl, cl.correct_key, mode, {.samples = 2000});
      CHECK(e.value == 0.0);
      CHECK(e.positives == 0.0);
    }
  }
  const auto cyc = lock_cyclic_mux(fixtures::cyclic_base(), {.width = 1, .seed = 1});
  CHECK(key_corruption(fixtures::cyclic_base(), cyc, cyc.correct_key, EstimatorMode::Exact).value == 0.0);
  CHECK(key_corruption(fixtures::cyclic_base(), cyc, cyc.correct_key, EstimatorMode::HashApprox).value == 0.0);
}

TEST_CASE("point-function lock, p = 4") {
  const auto c = fixtures::four_input();
  const auto cl = lock_point_fn(c, {.width = 4, .seed = 3});
  const CorruptionEvaluator exact(c, cl, EstimatorMode::Exact);
  const CorruptionEvaluator mc(c, cl, EstimatorMode::MonteCarlo, {.samples = 10000, .seed = 5});
  const CorruptionEvaluator hash(c, cl, EstimatorMode::HashApprox);
  for (const auto& key : all_keys(4)) {
    const double want = key == cl.correct_key ? 0.0 : 0.125;
    CHECK(exact.key_corruption(key).value == want);
    const auto m = mc.key_corruption(key);
    CHECK(std::abs(m.value - want) <= 0.01);
    CHECK(m.lo <= m.value);
    CHECK(m.hi >= m.value);
    const auto h = hash.key_corruption(key);
    CHECK(h.value == want);
  }
  const double cor = 15.0 * 2 / 16 / 16;
  CHECK(corruptibility(c, cl, EstimatorMode::Exact).value == doctest::Approx(cor).epsilon(1e-12));
  CHECK(corruptibility(c, cl, EstimatorMode::HashApprox).value == doctest::Approx(cor).epsilon(1e-12));
  const auto mcor = corruptibility(c, cl, EstimatorMode::MonteCarlo, {.samples = 20000, .seed = 2});
  CHECK(mcor.lo <= cor);
  CHECK(mcor.hi >= cor);
}

TEST_CASE("hashing estimate of a large failing set") {
  // p = 4 point function on 12 inputs: 2/16 of 4096 inputs fail, far above the pivot
  const auto c = random_circuit({.inputs = 12, .gates = 30, .seed = 6});
  const auto cl = lock_point_fn(c, {.width = 4, .seed = 1});
  const auto key = ~cl.correct_key;
  const double truth = oracle::keycor(c, cl, key);
  REQUIRE(truth == 0.125);
  const auto h = key_corruption(c, cl, key, EstimatorMode::HashApprox, {.seed = 3});
  CHECK(within_pac(h.value, truth));
  CHECK(h.lo <= h.value);
  CHECK(h.hi >= h.value);
  CHECK(h.params.find("count=HASH_APPROX") != std::string::npos);
}

TEST_CASE("EXACT KeyCor equals the truth table") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto c = random_circuit({.inputs = 9, .gates = 30, .seed = seed});
    const auto cl = lock(c, seed % 2 ? LockKind::Xor : LockKind::Mux, {.width = 6, .seed = seed});
    const CorruptionEvaluator ev(c, cl, EstimatorMode::Exact);
    UniformKeySampler keys(6, seed);
    for (int i = 0; i < 5; ++i) {
      const auto k = keys.next();
      CHECK(ev.key_corruption(k).value == oracle::keycor(c, cl, k));
    }
  }
}

TEST_CASE("EXACT refuses wide circuits") {
  const auto c = oracle::c432();
  const auto cl = lock_xor(c, {.width = 4, .seed = 1});
  CHECK_THROWS_AS(CorruptionEvaluator(c, cl, EstimatorMode::Exact), MetricError);
  CHECK_THROWS_AS(key_corruption(c, cl, cl.correct_key, EstimatorMode::Exact), MetricError);
  CHECK_THROWS_AS(corruptibility(fixtures::four_input(), lock_xor(fixtures::four_input(), {.width = 4}),
                                 EstimatorMode::Exact, {.exact_limit = 6}),
                  MetricError);
}

TEST_CASE("thresholded KeyCor") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_circuit({.inputs = 8, .gates = 25, .seed = rng()});
    const auto cl = lock_xor(c, {.width = 4, .seed = rng()});
    const auto key = BitVector::from_uint(rng() % 16, 4);
    CHECK(key_corruption_thresholded(c, cl, key, 1, EstimatorMode::Exact).value ==
          key_corruption(c, cl, key, EstimatorMode::Exact).value);
  }

  const auto two = fixtures::independent_nots(2);
  const auto cl = lock_xor(two, {.width = 1, .seed = 1});
  CHECK(key_corruption_thresholded(two, cl, ~cl.correct_key, 1, EstimatorMode::Exact).value == 1.0);
  CHECK(key_corruption_thresholded(two, cl, ~cl.correct_key, 2, EstimatorMode::Exact).value == 0.0);
  CHECK(key_corruption_thresholded(two, cl, ~cl.correct_key, 2, EstimatorMode::HashApprox).value == 0.0);
  CHECK_THROWS_AS(key_corruption_thresholded(two, cl, ~cl.correct_key, 3, EstimatorMode::Exact), MetricError);

  const auto c17 = oracle::c17();
  const auto l17 = lock_xor(c17, {.width = 4, .seed = 8});
  const auto key = UniformKeySampler(4, 3).next();
  const double want = oracle::keycor(c17, l17, key, 2);
  CHECK(key_corruption_thresholded(c17, l17, key, 2, EstimatorMode::Exact).value == want);
  CHECK(key_corruption_thresholded(c17, l17, key, 2, EstimatorMode::HashApprox).value == want);
}

TEST_CASE("Cor is the mean KeyCor") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto c = random_circuit({.inputs = 7, .gates = 25, .seed = seed});
    const auto cl = lock(c, seed % 2 ? LockKind::Xor : LockKind::Lut, {.width = 4, .seed = seed});
    const double want = oracle::cor(c, cl);
    CHECK(corruptibility(c, cl, EstimatorMode::Exact).value == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("two locks with equal Cor and different key profiles") {
  const auto c = fixtures::fig_original();
  const auto l0 = fixtures::fig_l0();
  const auto l1 = fixtures::fig_l1();
  const double cor0 = corruptibility(c, l0, EstimatorMode::Exact).value;
  const double cor1 = corruptibility(c, l1, EstimatorMode::Exact).value;
  CHECK(cor0 == oracle::cor(c, l0));
  CHECK(cor1 == oracle::cor(c, l1));
  CHECK(cor0 == cor1);
  CHECK(cor0 == 0.5);

  const auto keys = all_keys(2);
  const auto s0 = exact_samples(c, l0, keys);
  const auto s1 = exact_samples(c, l1, keys);
  for (double eps : {0.01, 0.3, 0.5, 0.75, 1.0}) CHECK(pmc_from_samples(s0, eps).value == 0.5);
  CHECK(pmc_from_samples(s1, 0.5).value == 0.75);
  CHECK(pmc_from_samples(s1, 0.75).value == 0.25);
}

TEST_CASE("p_mc basics") {
  const auto wire = fixtures::identity_wire();
  const auto cl = lock_xor(wire, {.width = 1, .seed = 1});
  const auto keys = all_keys(1);
  CHECK(pmc_from_samples(exact_samples(wire, cl, keys), 0.0).value == 0.5);
  CHECK_FALSE(meets_threshold(0.0, 0.0));
  CHECK(meets_threshold(0.3, 0.3));
  CHECK_FALSE(meets_threshold(0.29, 0.3));

  const auto c = random_circuit({.inputs = 10, .gates = 30, .seed = 2});
  const auto pf = lock_point_fn(c, {.width = 8, .seed = 4});
  UniformKeySampler sampler(8, 1);
  const auto p = p_mc(c, pf, 0.2, sampler, 200, EstimatorMode::Exact);
  CHECK(p.value == 0.0);
  CHECK(p.key_samples == 200);
  CHECK(p.failed == 0);
  UniformKeySampler wrong(3, 1);
  CHECK_THROWS_AS(p_mc(c, pf, 0.2, wrong, 10, EstimatorMode::Exact), MetricError);
  CHECK_THROWS_AS(p_mc(c, pf, 0.2, sampler, 0, EstimatorMode::Exact), MetricError);
}

TEST_CASE("p_mc is non-increasing in epsilon") {
  const auto c = random_circuit({.inputs = 10, .gates = 30, .seed = 3});
  const auto cl = lock_xor(c, {.width = 10, .seed = 3});
  UniformKeySampler sampler(10, 7);
  const auto keys = draw_keys(sampler, 300);
  const auto samples = exact_samples(c, cl, keys, 2);
  const std::vector<double> eps{0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0};
  const auto curve = pmc_curve(samples, eps);
  REQUIRE(curve.size() == eps.size());
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].value <= curve[i - 1].value);
}

TEST_CASE("key evaluation does not depend on the thread count") {
  const auto c = oracle::c432();
  const auto cl = lock_mux(c, {.width = 16, .seed = 2});
  UniformKeySampler sampler(16, 3);
  const auto keys = draw_keys(sampler, 64);
  const EstimatorParams params{.samples = 2000, .seed = 4};
  const auto one = evaluate_keys(c, cl, keys, EstimatorMode::MonteCarlo, params, 1);
  const auto many = evaluate_keys(c, cl, keys, EstimatorMode::MonteCarlo, params, 4);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].key == many[i].key);
    REQUIRE(one[i].estimate);
    REQUIRE(many[i].estimate);
    CHECK(one[i].estimate->value == many[i].estimate->value);
  }
}

TEST_CASE("failed keys are counted and excluded") {
  const auto c = fixtures::cyclic_base();
  const auto cl = lock_cyclic_mux(c, {.width = 1, .seed = 1});
  const auto samples = evaluate_keys(c, cl, all_keys(1), EstimatorMode::MonteCarlo, {.samples = 100}, 1);
  const auto p = pmc_from_samples(samples, 0.0);
  CHECK(p.failed == 1);
  CHECK(p.key_samples == 1);
  CHECK(p.value == 0.0);
  const std::vector<KeySample> bad(samples.begin() + (samples[0].estimate ? 1 : 0),
                                   samples.begin() + (samples[0].estimate ? 2 : 1));
  CHECK_THROWS_AS(pmc_from_samples(bad, 0.0), MetricError);
}

TEST_CASE("saturation curves") {
  const auto c = random_circuit({.inputs = 10, .gates = 30, .seed = 2});
  const auto pf = lock_point_fn(c, {.width = 8, .seed = 4});
  UniformKeySampler s1(8, 1);
  const auto flat = saturation_curve(c, pf, 0.2, s1, 300, 50, EstimatorMode::Exact);
  REQUIRE(flat.size() == 6);
  for (const auto& p : flat) CHECK(p.value == 0.0);
  CHECK(flat.back().samples == 300);

  // every wrong key has the same KeyCor 2/256, and none of the drawn keys is correct
  UniformKeySampler s2(8, 2);
  const auto keys = draw_keys(s2, 200);
  REQUIRE(std::ranges::find(keys, pf.correct_key) == keys.end());
  UniformKeySampler s3(8, 2);
  const auto constant = saturation_curve(c, pf, 0.005, s3, 200, 20, EstimatorMode::Exact);
  for (const auto& p : constant) CHECK(p.value == 1.0);
}

TEST_CASE("approximate counter") {
  CHECK(approx_count_pivot(0.8) == 72);
  CHECK(approx_count_rounds(0.2) == 67);
  CHECK_THROWS_AS(approx_count_pivot(0), MetricError);
  CHECK_THROWS_AS(approx_count_rounds(0), MetricError);

  cnf::CnfFormula taut;
  taut.ensure_vars(10);
  std::vector<int> proj{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto t = approx_count(taut, proj);
  CHECK(t.method == CountMethod::HashApprox);
  CHECK(within_pac(t.estimate, 1024));

  cnf::CnfFormula unsat;
  const int a = unsat.new_var();
  unsat.add_clause({cnf::Lit::pos(a)});
  unsat.add_clause({cnf::Lit::neg(a)});
  const std::vector<int> one{a};
  const auto u = approx_count(unsat, one);
  CHECK(u.estimate == 0.0);
  CHECK(u.method == CountMethod::Exact);

  std::mt19937_64 rng(4);
  int inside = 0;
  for (int i = 0; i < 10; ++i) {
    const auto f = oracle::random_cnf(rng, 12, 14, 3);
    std::vector<int> all{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    const auto truth = static_cast<double>(oracle::projected_count(f, all));
    const auto e = approx_count(f, all, {.seed = static_cast<std::uint64_t>(i + 1)});
    inside += within_pac(e.estimate, truth) ? 1 : 0;
  }
  CHECK(inside >= 8);
}

TEST_CASE("metrics CSV") {
  CorruptionEstimate e{.value = 0, .lo = 0, .hi = 0.01, .method = EstimatorMode::MonteCarlo, .params = "samples=10"};
  auto row = metric_row("keycor", e);
  row.circuit = "c17";
  row.lock = "XOR";
  row.width = 4;
  row.seed = 2;
  row.key_hex = "a";
  CHECK(metrics_csv_header() == "metric,circuit,lock,width,seed,key_hex,value,lo,hi,method,params");
  const auto text = metrics_csv({row}, kKeyCorFloor);
  CHECK(text.find(",plot_value,floored") != std::string::npos);
  CHECK(text.find("1e-14,1") != std::string::npos);
  const auto back = parse_metrics_csv(text);
  REQUIRE(back.size() == 1);
  CHECK(back[0].value == 0.0);
  CHECK(back[0].method == "MONTE_CARLO");
  CHECK(back[0].params == "samples=10");
  CHECK(back[0].key_hex == "a");
  CHECK_THROWS_AS(parse_metrics_csv("metric,value\nx,1\n"), ParseError);
}
