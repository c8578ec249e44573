#pragma once

#include <cstdint>
#include <vector>

#include "planecurve/combmap.hpp"
#include "planecurve/moves.hpp"
#include "planecurve/rng.hpp"

namespace planecurve {

// Move-family probabilities shared by both chains. The remainder
// 1 - (p1 + p2 + p3) is the re-rooting branch.
struct MoveMix {
  double p1 = 0.4;
  double p2 = 0.4;
  double p3 = 0.2;
  bool reroot_every_step = true;

  /// Throws std::invalid_argument when the probabilities are out of range.
  void check() const;
};

enum class Branch { reroot, ri_plus, ri_minus, rii_plus, rii_minus, riii };

std::string_view to_string(Branch b);

struct StepOutcome {
  Branch branch = Branch::reroot;
  MoveStatus status = MoveStatus::ok;
  bool accepted = false;  // false for structural failures and gate rejections
};

// One weighted successor of a state, used by the exact kernels.
struct Transition {
  CombMap target;
  double prob = 0.0;
};

namespace detail {

inline void reroot_uniform(CombMap& state, Rng& rng) {
  state.set_root(state.live_flag(rng.index(state.flag_count())));
}

}  // namespace detail

// One transition of the move chain. gate(n, m) is the acceptance probability
// for a size change n -> m; max_size <= 0 means uncapped.
//
// Draw order: u picks the branch; every +/- move then draws alpha (fail if
// alpha >= gate); RII+ draws k = 1 + floor(u (d-1)) after its checks; RII-
// draws beta after its checks (fail if beta >= 1/(d-1)); finally, with
// reroot_every_step, one index picks the new root among the live flags.
template <class Gate>
StepOutcome chain_step(CombMap& state, const MoveMix& mix, int max_size, Gate&& gate,
                       Rng& rng) {
  StepOutcome out;
  const int n = state.size();
  const double u = rng.uniform();
  const double c1 = mix.p1 / 2;
  const double c2 = mix.p1;
  const double c3 = mix.p1 + mix.p2 / 2;
  const double c4 = mix.p1 + mix.p2;
  const double c5 = mix.p1 + mix.p2 + mix.p3;
  auto capped = [&](int m) { return max_size > 0 && m > max_size; };

  if (u < c1) {
    out.branch = Branch::ri_plus;
    const double alpha = rng.uniform();
    if (capped(n + 1)) {
      out.status = MoveStatus::size_cap;
    } else if (alpha < gate(n, n + 1)) {
      out.status = ri_plus(state);
      out.accepted = true;
    }
  } else if (u < c2) {
    out.branch = Branch::ri_minus;
    const double alpha = rng.uniform();
    if (state.phi(state.root()) != state.root()) {
      out.status = MoveStatus::monogon_required;
    } else if (n <= 1) {
      out.status = MoveStatus::below_minimum_size;
    } else if (alpha < gate(n, n - 1)) {
      out.status = ri_minus(state);
      out.accepted = true;
    }
  } else if (u < c3) {
    out.branch = Branch::rii_plus;
    const double alpha = rng.uniform();
    const int d = state.face_degree(state.root());
    if (capped(n + 2)) {
      out.status = MoveStatus::size_cap;
    } else if (d == 1) {
      out.status = MoveStatus::face_is_monogon;
    } else {
      const int k = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(d - 1)));
      if (alpha < gate(n, n + 2)) {
        out.status = rii_plus(state, k);
        out.accepted = true;
      }
    }
  } else if (u < c4) {
    out.branch = Branch::rii_minus;
    const double alpha = rng.uniform();
    const auto check = rii_minus_check(state);
    out.status = check.status;
    if (check.status == MoveStatus::ok) {
      const double beta = rng.uniform();
      if (alpha < gate(n, n - 2) && beta < 1.0 / (check.merged_degree - 1)) {
        rii_minus(state);
        out.accepted = true;
      }
    }
  } else if (u < c5) {
    out.branch = Branch::riii;
    out.status = riii(state);
    out.accepted = out.status == MoveStatus::ok;
  } else {
    out.branch = Branch::reroot;
    detail::reroot_uniform(state, rng);
    out.accepted = true;
    return out;
  }
  if (mix.reroot_every_step) detail::reroot_uniform(state, rng);
  return out;
}

// Every successor of one chain_step with its exact probability, failure
// branches included as identity transitions. Targets are not merged.
template <class Gate>
std::vector<Transition> step_transitions(const CombMap& state, const MoveMix& mix, int max_size,
                                         Gate&& gate) {
  std::vector<Transition> moves;
  const int n = state.size();
  auto capped = [&](int m) { return max_size > 0 && m > max_size; };
  double stay = 0.0;
  auto add = [&](CombMap target, double prob) {
    if (prob > 0) moves.push_back({std::move(target), prob});
  };

  {
    const double w = mix.p1 / 2;
    const double g = capped(n + 1) ? 0.0 : gate(n, n + 1);
    CombMap next = state;
    ri_plus(next);
    add(std::move(next), w * g);
    stay += w * (1 - g);
  }
  {
    const double w = mix.p1 / 2;
    CombMap next = state;
    if (state.phi(state.root()) == state.root() && n > 1) {
      const double g = gate(n, n - 1);
      ri_minus(next);
      add(std::move(next), w * g);
      stay += w * (1 - g);
    } else {
      stay += w;
    }
  }
  {
    const double w = mix.p2 / 2;
    const int d = state.face_degree(state.root());
    if (capped(n + 2) || d == 1) {
      stay += w;
    } else {
      const double g = gate(n, n + 2);
      for (int k = 1; k <= d - 1; ++k) {
        CombMap next = state;
        rii_plus(next, k);
        add(std::move(next), w * g / (d - 1));
      }
      stay += w * (1 - g);
    }
  }
  {
    const double w = mix.p2 / 2;
    const auto check = rii_minus_check(state);
    if (check.status == MoveStatus::ok) {
      const double p = gate(n, n - 2) / (check.merged_degree - 1);
      CombMap next = state;
      rii_minus(next);
      add(std::move(next), w * p);
      stay += w * (1 - p);
    } else {
      stay += w;
    }
  }
  {
    const double w = mix.p3;
    CombMap next = state;
    if (riii(next) == MoveStatus::ok) {
      add(std::move(next), w);
    } else {
      stay += w;
    }
  }
  add(state, stay);

  const double r0 = 1.0 - (mix.p1 + mix.p2 + mix.p3);
  if (r0 > 0) {
    for (Flag b : state.live_flags()) add(reroot(state, b), r0 / state.flag_count());
  }

  if (!mix.reroot_every_step) return moves;
  std::vector<Transition> spread;
  for (const auto& t : moves) {
    const double share = t.prob / t.target.flag_count();
    for (Flag b : t.target.live_flags()) spread.push_back({reroot(t.target, b), share});
  }
  return spread;
}

}  // namespace planecurve
