#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"

using namespace planecurve;

// k_n from the BFS enumeration, frozen after agreeing with the raw
// generation count for n <= 4.
static const std::vector<std::uint64_t> kCounts{0, 2, 8, 42, 260, 1796};

TEST_CASE("BFS counts") {
  const auto& t = fixtures::table(5);
  for (int n = 1; n <= 5; ++n) CHECK(t.count(n) == kCounts[n]);
  CHECK(t.total() == 2108);
  for (int n = 2; n <= 5; ++n) {
    // Ratios climb towards the growth constant.
    CHECK(static_cast<double>(t.count(n)) / t.count(n - 1) > 3.9);
  }
  CHECK_THROWS_AS(enumerate_rooted_plane_curves(kOracleMaxSize + 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_rooted_plane_curves(0), std::invalid_argument);
}

TEST_CASE("raw generation agrees with the BFS for n <= 3") {
  for (int n = 1; n <= 3; ++n) CHECK(count_by_raw_generation(n) == fixtures::table(3).count(n));
}

TEST_CASE("every enumerated state is valid, distinct and closed under the moves") {
  const auto& t = fixtures::table(4);
  std::set<std::string> all;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& code : t.classes[n]) {
      CHECK(all.insert(code).second);
      const auto m = decode_canonical(code);
      CHECK(m.size() == n);
      CHECK(validate(m).ok);
    }
  }
  for (const auto& code : all) {
    const auto m = decode_canonical(code);
    std::vector<CombMap> next;
    for (Flag b : m.live_flags()) next.push_back(reroot(m, b));
    if (auto x = m; ri_plus(x) == MoveStatus::ok && x.size() <= 4) next.push_back(x);
    if (auto x = m; ri_minus(x) == MoveStatus::ok) next.push_back(x);
    if (auto x = m; rii_minus(x) == MoveStatus::ok) next.push_back(x);
    if (auto x = m; riii(x) == MoveStatus::ok) next.push_back(x);
    for (int k = 1; k < m.face_degree(m.root()) && m.size() + 2 <= 4; ++k) {
      auto x = m;
      rii_plus(x, k);
      next.push_back(x);
    }
    for (const auto& x : next) CHECK(all.count(canonical_code(x)) == 1);
  }
}

TEST_CASE("exact Boltzmann kernel at L = 3") {
  const StateSpace space(fixtures::table(3));
  BoltzmannParams p;
  p.z = 0.05;
  p.max_size = 3;
  const auto k = boltzmann_kernels(space, p);
  const auto w = boltzmann_weights(space, p.z);
  const auto r = check_balance(k.balanced, w);
  CHECK(r.row_sum_residual < 1e-12);
  CHECK(r.balance_residual < 1e-10);
  CHECK(r.fixed_point_residual < 1e-12);
  CHECK(r.min_self_loop > 0);
  const auto pi = stationary_distribution(k.step, 1e-14);
  CHECK((pi - w).lpNorm<1>() < 1e-10);

  // The implemented step is the move kernel followed by a re-root.
  MoveMix plain = p.mix;
  plain.reroot_every_step = false;
  BoltzmannParams pp = p;
  pp.mix = plain;
  const auto m = boltzmann_kernels(space, pp);
  CHECK((m.step * reroot_kernel(space) - k.step).cwiseAbs().maxCoeff() < 1e-14);

  // transition_probability reads entries of the same matrix.
  for (std::size_t i : {0ul, 5ul, 17ul}) {
    for (std::size_t j : {0ul, 1ul, 9ul, 30ul}) {
      CHECK(transition_probability(space.state(i), space.state(j), p) ==
            doctest::Approx(k.step(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("exact WL kernel with a fixed, arbitrary G") {
  const StateSpace space(fixtures::table(3));
  LogDensity g = LogDensity::flat(3);
  g[2] = 1.7;
  g[3] = 3.9;
  const auto k = wanglandau_kernels(space, g, MoveMix{});
  const auto w = wanglandau_weights(space, g);
  const auto r = check_balance(k.balanced, w);
  CHECK(r.balance_residual < 1e-10);
  CHECK(r.fixed_point_residual < 1e-12);
  CHECK(r.min_self_loop > 0);

  LogDensity wrong = LogDensity::flat(2);
  CHECK_THROWS_AS(wanglandau_kernels(space, wrong, MoveMix{}), std::invalid_argument);
}

TEST_CASE("incomplete tables are rejected") {
  const StateSpace space(fixtures::table(2));
  BoltzmannParams p;
  p.max_size = 3;
  CHECK_THROWS_AS(boltzmann_kernels(space, p), std::invalid_argument);
  p.max_size = 2;
  CHECK_NOTHROW(boltzmann_kernels(space, p));
  CHECK_THROWS_AS(exact_kernel(space,
                               [](const CombMap& m) {
                                 auto x = m;
                                 ri_plus(x);
                                 ri_plus(x);
                                 return std::vector<Transition>{{x, 1.0}};
                               }),
                  std::invalid_argument);
}

TEST_CASE("stationary distribution basics") {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
  const auto pi = stationary_distribution(I);
  CHECK((pi - Eigen::VectorXd::Constant(4, 0.25)).lpNorm<1>() == 0.0);
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  // Periodic chain started uniform is already stationary.
  CHECK(stationary_distribution(swap)(0) == 0.5);
  Eigen::MatrixXd slow(2, 2);
  slow << 0.9, 0.1, 0.3, 0.7;
  const auto s = stationary_distribution(slow, 1e-14);
  CHECK(s(0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(stationary_distribution(slow, 1e-14, 2), std::runtime_error);
}

TEST_CASE("brute-force mean v2") {
  CHECK(brute_force_mean_v2(CombMap::figure_eight()) == Rational(0));
  CHECK(brute_force_mean_v2(fixtures::trefoil()) == Rational(1, 4));
  for (const auto& m : fixtures::curves(5)) CHECK(brute_force_mean_v2(m) == mean_v2(m));
}

TEST_CASE("enum table files") {
  const auto& t = fixtures::table(3);
  std::stringstream with, without;
  write_enum_table(with, t, true);
  write_enum_table(without, t, false);
  const auto a = read_enum_table(with);
  const auto b = read_enum_table(without);
  CHECK(a.counts == t.counts);
  CHECK(a.classes == t.classes);
  CHECK(b.counts == t.counts);
  CHECK_FALSE(b.has_classes());
  CHECK(without.str() == "# rooted plane curves L=3\n1 2\n2 8\n3 42\n");
  std::stringstream bad("1 2\ncode 1 00\n");
  CHECK_THROWS_AS(read_enum_table(bad), std::invalid_argument);
}
