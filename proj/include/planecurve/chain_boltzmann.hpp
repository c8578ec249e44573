#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "planecurve/chain.hpp"

namespace planecurve {

struct BoltzmannParams {
  double z = 0.05;  // fugacity per vertex
  MoveMix mix;
  std::optional<int> max_size;
  std::uint64_t seed = 1;

  void check() const;
};

/// Largest fugacity for which the uncapped law is normalisable, 1/mu.
inline constexpr double kCriticalFugacity = 0.0876;

/// Acceptance probability for a size change n -> m: z^(m-n) when growing,
/// 1 when shrinking.
double boltzmann_gate(double z, int n, int m);

StepOutcome step(CombMap& state, const BoltzmannParams& params, Rng& rng);

/// Every successor of one step with its probability.
std::vector<Transition> boltzmann_transitions(const CombMap& state, const BoltzmannParams& params);

/// Exact probability that one step takes D to a rooted isomorph of N.
/// Throws std::invalid_argument if either map is invalid or exceeds the cap.
double transition_probability(const CombMap& from, const CombMap& to, const BoltzmannParams& params);

using SampleVisitor = std::function<void(std::uint64_t step, const CombMap& state)>;

struct RunStats {
  std::uint64_t steps = 0;
  std::uint64_t accepted = 0;
};

/// Steps the chain total_steps times from state, calling visit after every
/// interval-th step.
RunStats run(const BoltzmannParams& params, CombMap& state, std::uint64_t total_steps,
             std::uint64_t interval, Rng& rng, const SampleVisitor& visit);

}  // namespace planecurve
