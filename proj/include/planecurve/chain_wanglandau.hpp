#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "planecurve/chain.hpp"

namespace planecurve {

/// Log density of states G_n = log g_n on the size window [ell, L].
struct LogDensity {
  int ell = 1;
  int L = 1;
  std::vector<double> G;  // G[n - ell]

  static LogDensity flat(int L);

  bool contains(int n) const { return n >= ell && n <= L; }
  double operator()(int n) const { return G[static_cast<std::size_t>(n - ell)]; }
  double& operator[](int n) { return G[static_cast<std::size_t>(n - ell)]; }
};

/// min{1, exp(G_n - G_m)}, and 0 when m lies outside the window.
double tp(const LogDensity& g, int n, int m);

struct WangLandauParams {
  MoveMix mix;
  int L = 27;
  std::uint64_t S0 = 10;
  std::uint64_t S1 = 10000;
  double delta = 0.99;
  double epsilon = 1e-8;
  std::uint64_t seed = 1;

  void check() const;
};

struct WangLandauState {
  LogDensity G;
  double f = 1.0;
  std::vector<std::uint64_t> H;  // H[n - ell]
  std::uint64_t steps = 0;
  int halvings = 0;
};

/// min H/(1-delta) > mean H > max H/(1+delta), mean taken over all bins.
bool is_flat(const std::vector<std::uint64_t>& H, double delta);

/// min(min H / mean, 2 - max H / mean): 1 for a perfectly flat histogram.
double histogram_flatness(const std::vector<std::uint64_t>& H);

StepOutcome wl_step(CombMap& state, const LogDensity& g, const MoveMix& mix, Rng& rng);

std::vector<Transition> wl_transitions(const CombMap& state, const LogDensity& g,
                                       const MoveMix& mix);

struct TuneCallbacks {
  /// Called every progress_every steps.
  std::function<void(const WangLandauState&)> progress;
  std::uint64_t progress_every = 0;
  /// Called after each halving of f with the current estimate.
  std::function<void(const WangLandauState&)> on_halving;
};

/// Wang-Landau tuning from the figure-eight: every S0 steps H and G at the
/// current size grow by 1 and f; every S1 steps a flat H halves f and is
/// cleared. Stops once f < epsilon.
WangLandauState tune(const WangLandauParams& params, const TuneCallbacks& callbacks = {});

using SampleVisitor = std::function<void(std::uint64_t step, const CombMap& state)>;

/// Fixed-G sampling, calling visit after every interval-th step.
void sample(const LogDensity& g, const MoveMix& mix, CombMap& state, std::uint64_t total_steps,
            std::uint64_t interval, Rng& rng, const SampleVisitor& visit);

/// exp(G_n - G_1) k1 for n = 1..L.
std::vector<double> counts_from_G(const LogDensity& g, double k1);

struct GFileHeader {
  double epsilon = 0;
  double delta = 0;
};

void write_g_file(std::ostream& out, const LogDensity& g, const GFileHeader& header);
LogDensity read_g_file(std::istream& in, GFileHeader* header = nullptr);

}  // namespace planecurve
