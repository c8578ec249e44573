#include "planecurve/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace planecurve {

void MoveMix::check() const {
  for (double p : {p1, p2, p3}) {
    if (!(p > 0) || !(p <= 1)) throw std::invalid_argument("move probabilities must lie in (0, 1]");
  }
  const double total = p1 + p2 + p3;
  if (total > 1 + 1e-12) throw std::invalid_argument("p1 + p2 + p3 exceeds 1");
  if (reroot_every_step && std::abs(total - 1) > 1e-12) {
    throw std::invalid_argument("re-rooting every step needs p1 + p2 + p3 = 1");
  }
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::reroot: return "reroot";
    case Branch::ri_plus: return "RI+";
    case Branch::ri_minus: return "RI-";
    case Branch::rii_plus: return "RII+";
    case Branch::rii_minus: return "RII-";
    case Branch::riii: return "RIII";
  }
  return "unknown";
}

}  // namespace planecurve
