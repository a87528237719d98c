#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lpsparse/errors.hpp"
#include "lpsparse/generator.hpp"
#include "lpsparse/oracles.hpp"
#include "lpsparse/random.hpp"
#include "lpsparse/simplex.hpp"

using namespace lpsparse;

TEST_CASE("bernoulli subsets clamp and follow their rates") {
  Rng rng(1);
  CHECK(bernoulli_subset(std::vector<double>(10, 0.0), rng).empty());
  CHECK(bernoulli_subset(std::vector<double>{2.0, 5.0}, rng) == std::vector<std::size_t>{0, 1});
  const std::vector<double> q(10'000, 0.3);
  const double sigma = std::sqrt(10'000 * 0.3 * 0.7);
  for (int trial = 0; trial < 20; ++trial) {
    const double size = static_cast<double>(bernoulli_subset(q, rng).size());
    CHECK(std::abs(size - 3000.0) <= 3.0 * sigma);
  }
}

TEST_CASE("retry budget") {
  CHECK(lvo_retry_budget(1) == 1);
  CHECK(lvo_retry_budget(100) == static_cast<std::size_t>(std::ceil(64 * std::log(100.0))));
}

TEST_CASE("oversampling degenerates to a direct solve") {
  const auto inst =
      std::get<LpInstance>(generate_instance(InstanceKind::FeasibleNondegenerate, 30, 2, 4));
  Rng rng(2);
  QueryLedger ledger;
  const std::vector<double> p(30, 1.0 / 30);
  const auto reply = exact_lvo(inst, p, 4.0 / 30, 0.0, rng, ledger);
  SubLp all{&inst, {}};
  for (std::size_t i = 0; i < 30; ++i) all.rows.push_back(i);
  CHECK(reply.sample_size == 30);
  CHECK(reply.v.none());
  CHECK(reply.x == *simplex_solve(all).x);
}

TEST_CASE("a concentrated distribution always samples the tight row") {
  LpInstance inst;
  inst.A = Matrix(0, 1);
  for (int i = 0; i < 100; ++i) {
    inst.A.append_row(std::vector<double>{1.0});
    inst.b.push_back(3.0);
  }
  inst.A.append_row(std::vector<double>{1.0});
  inst.b.push_back(1.0);
  inst.c = {1.0};
  inst.domain = BoxDomain::uniform(1, 0.0, 10.0);
  std::vector<double> p(101, 0.0);
  p[100] = 1.0;
  Rng rng(8);
  QueryLedger ledger;
  for (int trial = 0; trial < 20; ++trial) {
    const auto reply = exact_lvo(inst, p, 0.5, 0.0, rng, ledger);
    CHECK(reply.x[0] == doctest::Approx(1.0));
    CHECK(reply.v.none());
  }
}

TEST_CASE("sampled exact solves violate little weight on average") {
  const auto inst =
      std::get<LpInstance>(generate_instance(InstanceKind::FeasibleNondegenerate, 300, 2, 12));
  Rng rng(13);
  std::vector<double> p(inst.n());
  double total = 0.0;
  for (double& v : p) total += (v = rng.uniform());
  for (double& v : p) v /= total;
  const double r = 20.0;
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = r * p[i];
  const int trials = 2000;
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    SubLp sub{&inst, bernoulli_subset(q, rng)};
    const auto sol = simplex_solve(sub);
    QueryLedger ledger;
    const double w = weighted_violation(p, violation_vector(inst, *sol.x, 0.0, ledger));
    sum += w;
    sum_sq += w * w;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
  CHECK(mean <= 2.0 / r + 3.0 * se);
}

TEST_CASE("exact oracle reports infeasible relaxations") {
  const auto inst = std::get<LpInstance>(generate_instance(InstanceKind::Infeasible, 50, 2, 1));
  std::vector<double> p(50, 0.0);
  p[0] = p[1] = 0.5;
  Rng rng(4);
  QueryLedger ledger;
  CHECK(exact_lvo(inst, p, 0.5, 0.0, rng, ledger).infeasible);
}

TEST_CASE("a constant solver with heavy violation is rejected") {
  LpInstance inst;
  inst.A = Matrix(0, 1);
  for (int i = 0; i < 20; ++i) {
    inst.A.append_row(std::vector<double>{1.0});
    inst.b.push_back(0.0);
  }
  inst.c = {1.0};
  inst.domain = BoxDomain::uniform(1, 0.0, 1.0);
  const std::vector<double> p(20, 0.05);
  Rng rng(6);
  QueryLedger ledger;
  const SubsetSolver constant = [](std::span<const std::size_t>) {
    return std::optional<std::vector<double>>{std::vector<double>{1.0}};
  };
  CHECK_THROWS_AS(approx_lvo(inst, p, 0.5, 0.0, constant, 1.0, rng, ledger), RetryBudgetExceeded);
}

TEST_CASE("bounded-output oracle on a packing/covering instance lands on the grid") {
  const auto mpc = std::get<MpcInstance>(generate_instance(InstanceKind::Mixed, 200, 2, 3));
  const LpInstance lp = covering_system(mpc);
  const double eps = 0.5;
  const SubsetSolver solver = [&](std::span<const std::size_t> rows) {
    const auto inner = mpc_inner_solve(mpc.P, mpc.C.select_rows(rows), eps);
    return inner.x ? std::optional{discretize_mpc(*inner.x, eps, mpc.r_p)} : std::nullopt;
  };
  const double n_out = std::pow(double(mpc_grid_levels(eps, mpc.r_p)), 2.0);
  const std::vector<double> p(mpc.n_c(), 1.0 / mpc.n_c());
  Rng rng(9);
  QueryLedger ledger;
  for (int trial = 0; trial < 10; ++trial) {
    const auto reply = approx_lvo(lp, p, eps / 3, 0.0, solver, n_out, rng, ledger);
    REQUIRE_FALSE(reply.infeasible);
    CHECK(on_mpc_grid(reply.x, eps, mpc.r_p));
    CHECK(weighted_violation(p, reply.v) <= eps / 3);
  }
  // Sampling at rate >= 1 everywhere keeps every row.
  const auto full = approx_lvo(lp, p, 1e-6, 0.0, solver, n_out, rng, ledger);
  CHECK(full.sample_size == mpc.n_c());
  CHECK(full.v.none());
}

TEST_CASE("grid rounding") {
  CHECK(discretize_mpc(std::vector<double>{0.0}, 0.5, 2)[0] == 0.0);
  for (double x : {1e-9, 0.3, 0.99, 1.0}) CHECK(discretize_mpc(std::vector<double>{x}, 1.0, 1)[0] == 1.0);
  CHECK(discretize_mpc(std::vector<double>{0.3}, 0.5, 2)[0] == doctest::Approx(0.375));
  CHECK(discretize_mpc(std::vector<double>{0.25}, 0.5, 2)[0] == 0.25);
  CHECK(discretize_mpc(std::vector<double>{0.1}, 0.5, 2)[0] == 0.25);
  CHECK(mpc_grid_levels(0.5, 2) == static_cast<std::size_t>(std::ceil(2 + 8 * std::log(4.0))));
}

TEST_CASE("grid rounding is idempotent, monotone and bounded") {
  Rng rng(10);
  for (int trial = 0; trial < 2000; ++trial) {
    const double eps = rng.uniform(0.05, 1.0);
    const std::size_t r_p = 1 + rng.below(6);
    std::vector<double> x(4);
    for (double& v : x) v = rng.bernoulli(0.1) ? 0.0 : rng.uniform();
    const auto once = discretize_mpc(x, eps, r_p);
    CHECK(discretize_mpc(once, eps, r_p) == once);
    CHECK(on_mpc_grid(once, eps, r_p));
    for (std::size_t j = 0; j < x.size(); ++j) {
      CHECK(once[j] >= x[j]);
      CHECK(once[j] <= 1.0);
      CHECK(once[j] <= (1 + eps) * x[j] + eps / r_p + 1e-15);
    }
  }
}
