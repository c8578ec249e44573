#include "planecurve/chain_wanglandau.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace planecurve {

LogDensity LogDensity::flat(int L) {
  if (L < 1) throw std::invalid_argument("maximum size must be at least 1");
  LogDensity g;
  g.ell = 1;
  g.L = L;
  g.G.assign(static_cast<std::size_t>(L), 0.0);
  return g;
}

double tp(const LogDensity& g, int n, int m) {
  if (!g.contains(m) || !g.contains(n)) return 0.0;
  return std::min(1.0, std::exp(g(n) - g(m)));
}

void WangLandauParams::check() const {
  mix.check();
  if (L < 1) throw std::invalid_argument("maximum size must be at least 1");
  if (S0 == 0 || S1 == 0) throw std::invalid_argument("S0 and S1 must be positive");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
}

bool is_flat(const std::vector<std::uint64_t>& H, double delta) {
  if (H.empty()) return false;
  const auto [lo, hi] = std::minmax_element(H.begin(), H.end());
  const double mean =
      std::accumulate(H.begin(), H.end(), 0.0) / static_cast<double>(H.size());
  return *lo / (1 - delta) > mean && mean > *hi / (1 + delta);
}

double histogram_flatness(const std::vector<std::uint64_t>& H) {
  if (H.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(H.begin(), H.end());
  const double mean =
      std::accumulate(H.begin(), H.end(), 0.0) / static_cast<double>(H.size());
  if (mean == 0) return 0.0;
  return std::min(*lo / mean, 2 - *hi / mean);
}

namespace {

auto gate_for(const LogDensity& g) {
  return [&g](int n, int m) { return tp(g, n, m); };
}

}  // namespace

StepOutcome wl_step(CombMap& state, const LogDensity& g, const MoveMix& mix, Rng& rng) {
  return chain_step(state, mix, g.L, gate_for(g), rng);
}

std::vector<Transition> wl_transitions(const CombMap& state, const LogDensity& g,
                                       const MoveMix& mix) {
  return step_transitions(state, mix, g.L, gate_for(g));
}

WangLandauState tune(const WangLandauParams& params, const TuneCallbacks& callbacks) {
  params.check();
  WangLandauState wl;
  wl.G = LogDensity::flat(params.L);
  wl.H.assign(wl.G.G.size(), 0);
  wl.f = 1.0;

  Rng rng(params.seed);
  CombMap state = CombMap::figure_eight();
  while (wl.f >= params.epsilon) {
    wl_step(state, wl.G, params.mix, rng);
    ++wl.steps;
    if (wl.steps % params.S0 == 0) {
      const int n = state.size();
      ++wl.H[static_cast<std::size_t>(n - wl.G.ell)];
      wl.G[n] += wl.f;
    }
    if (wl.steps % params.S1 == 0 && is_flat(wl.H, params.delta)) {
      wl.f /= 2;
      ++wl.halvings;
      std::fill(wl.H.begin(), wl.H.end(), 0);
      if (callbacks.on_halving) callbacks.on_halving(wl);
    }
    if (callbacks.progress && callbacks.progress_every &&
        wl.steps % callbacks.progress_every == 0) {
      callbacks.progress(wl);
    }
  }
  // Only differences of G matter; pin G_1 = 0 so files are comparable.
  const double shift = wl.G.G.front();
  for (double& x : wl.G.G) x -= shift;
  return wl;
}

void sample(const LogDensity& g, const MoveMix& mix, CombMap& state, std::uint64_t total_steps,
            std::uint64_t interval, Rng& rng, const SampleVisitor& visit) {
  if (interval == 0) throw std::invalid_argument("sample interval must be at least 1");
  if (!g.contains(state.size())) throw std::invalid_argument("start state outside the window");
  for (std::uint64_t i = 1; i <= total_steps; ++i) {
    wl_step(state, g, mix, rng);
    if (i % interval == 0 && visit) visit(i, state);
  }
}

std::vector<double> counts_from_G(const LogDensity& g, double k1) {
  if (!g.contains(1)) throw std::invalid_argument("G does not cover size 1");
  std::vector<double> out;
  out.reserve(g.G.size());
  for (int n = g.ell; n <= g.L; ++n) out.push_back(std::exp(g(n) - g(1)) * k1);
  return out;
}

void write_g_file(std::ostream& out, const LogDensity& g, const GFileHeader& header) {
  out << "# wl ell=" << g.ell << " L=" << g.L << " epsilon=" << header.epsilon
      << " delta=" << header.delta << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int n = g.ell; n <= g.L; ++n) out << n << ' ' << g(n) << '\n';
}

LogDensity read_g_file(std::istream& in, GFileHeader* header) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# wl", 0) != 0) {
    throw std::invalid_argument("G file: missing '# wl' header");
  }
  LogDensity g;
  GFileHeader h;
  std::istringstream fields(line.substr(4));
  std::string kv;
  bool have_ell = false, have_L = false;
  while (fields >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("G file: bad header field " + kv);
    const auto key = kv.substr(0, eq);
    const auto value = kv.substr(eq + 1);
    if (key == "ell") {
      g.ell = std::stoi(value);
      have_ell = true;
    } else if (key == "L") {
      g.L = std::stoi(value);
      have_L = true;
    } else if (key == "epsilon") {
      h.epsilon = std::stod(value);
    } else if (key == "delta") {
      h.delta = std::stod(value);
    }
  }
  if (!have_ell || !have_L || g.ell < 1 || g.L < g.ell) {
    throw std::invalid_argument("G file: header needs ell and L with 1 <= ell <= L");
  }
  g.G.assign(static_cast<std::size_t>(g.L - g.ell + 1), std::numeric_limits<double>::quiet_NaN());
  int n = 0;
  double value = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    if (!(row >> n >> value) || !g.contains(n)) {
      throw std::invalid_argument("G file: bad row '" + line + "'");
    }
    g[n] = value;
  }
  for (double x : g.G) {
    if (std::isnan(x)) throw std::invalid_argument("G file: missing sizes");
  }
  if (header) *header = h;
  return g;
}

}  // namespace planecurve
