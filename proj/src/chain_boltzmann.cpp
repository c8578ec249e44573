#include "planecurve/chain_boltzmann.hpp"

#include <cmath>
#include <stdexcept>

namespace planecurve {

void BoltzmannParams::check() const {
  if (!(z >= 0)) throw std::invalid_argument("fugacity must be non-negative");
  if (max_size && *max_size < 1) throw std::invalid_argument("size cap must be positive");
  mix.check();
}

double boltzmann_gate(double z, int n, int m) {
  return m > n ? std::pow(z, m - n) : 1.0;
}

namespace {

auto gate_for(const BoltzmannParams& params) {
  return [z = params.z](int n, int m) { return boltzmann_gate(z, n, m); };
}

}  // namespace

StepOutcome step(CombMap& state, const BoltzmannParams& params, Rng& rng) {
  return chain_step(state, params.mix, params.max_size.value_or(0), gate_for(params), rng);
}

std::vector<Transition> boltzmann_transitions(const CombMap& state, const BoltzmannParams& params) {
  return step_transitions(state, params.mix, params.max_size.value_or(0), gate_for(params));
}

double transition_probability(const CombMap& from, const CombMap& to,
                              const BoltzmannParams& params) {
  for (const CombMap* m : {&from, &to}) {
    if (!validate(*m).ok) throw std::invalid_argument("transition_probability: invalid map");
    if (params.max_size && m->size() > *params.max_size) {
      throw std::invalid_argument("transition_probability: map exceeds the size cap");
    }
  }
  const auto code = canonical_code(to);
  double total = 0.0;
  for (const auto& t : boltzmann_transitions(from, params)) {
    if (t.target.size() == to.size() && canonical_code_unchecked(t.target) == code) total += t.prob;
  }
  return total;
}

RunStats run(const BoltzmannParams& params, CombMap& state, std::uint64_t total_steps,
             std::uint64_t interval, Rng& rng, const SampleVisitor& visit) {
  if (interval == 0) throw std::invalid_argument("sample interval must be at least 1");
  RunStats stats;
  for (std::uint64_t i = 1; i <= total_steps; ++i) {
    if (step(state, params, rng).accepted) ++stats.accepted;
    ++stats.steps;
    if (i % interval == 0 && visit) visit(i, state);
  }
  return stats;
}

}  // namespace planecurve
