#include "planecurve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace planecurve {

std::uint64_t EnumTable::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

EnumTable enumerate_rooted_plane_curves(int L) {
  if (L < 1 || L > kOracleMaxSize) {
    throw std::invalid_argument("enumeration supports 1 <= L <= " + std::to_string(kOracleMaxSize));
  }
  std::unordered_set<std::string> seen;
  std::deque<std::string> queue;
  auto visit = [&](const CombMap& map) {
    auto code = canonical_code_unchecked(map);
    if (seen.insert(code).second) queue.push_back(std::move(code));
  };
  visit(CombMap::figure_eight());

  while (!queue.empty()) {
    const CombMap map = decode_canonical(queue.front());
    queue.pop_front();
    const int n = map.size();
    for (Flag b : map.live_flags()) visit(reroot(map, b));
    if (n + 1 <= L) {
      CombMap next = map;
      ri_plus(next);
      visit(next);
    }
    if (CombMap next = map; ri_minus(next) == MoveStatus::ok) visit(next);
    const int d = map.face_degree(map.root());
    if (n + 2 <= L && d > 1) {
      for (int k = 1; k < d; ++k) {
        CombMap next = map;
        rii_plus(next, k);
        visit(next);
      }
    }
    if (CombMap next = map; rii_minus(next) == MoveStatus::ok) visit(next);
    if (CombMap next = map; riii(next) == MoveStatus::ok) visit(next);
  }

  EnumTable table;
  table.L = L;
  table.counts.assign(static_cast<std::size_t>(L) + 1, 0);
  table.classes.resize(static_cast<std::size_t>(L) + 1);
  for (const auto& code : seen) {
    const auto n = decode_canonical(code).size();
    table.classes[n].push_back(code);
  }
  for (int n = 1; n <= L; ++n) {
    std::sort(table.classes[n].begin(), table.classes[n].end());
    table.counts[n] = table.classes[n].size();
  }
  return table;
}

std::uint64_t count_by_raw_generation(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("raw generation supports 1 <= n <= 4");
  const Flag count = static_cast<Flag>(4 * n);
  std::vector<Flag> sigma(count);
  for (Flag a = 0; a < count; ++a) sigma[a] = (a & ~3u) | ((a + 1) & 3u);
  std::vector<Flag> tau(count, kNoFlag);
  std::unordered_set<std::string> codes;

  // Every rooted 4-valent map on n vertices is isomorphic to one with this
  // sigma, so matching over tau and root reaches every class.
  auto recurse = [&](auto&& self) -> void {
    const auto it = std::find(tau.begin(), tau.end(), kNoFlag);
    if (it == tau.end()) {
      auto map = CombMap::from_arrays(sigma, tau, 0);
      if (!validate(map).ok) return;
      for (Flag r = 0; r < count; ++r) {
        map.set_root(r);
        codes.insert(canonical_code_unchecked(map));
      }
      return;
    }
    const Flag a = static_cast<Flag>(it - tau.begin());
    for (Flag b = a + 1; b < count; ++b) {
      if (tau[b] != kNoFlag) continue;
      tau[a] = b;
      tau[b] = a;
      self(self);
      tau[a] = tau[b] = kNoFlag;
    }
  };
  recurse(recurse);
  return codes.size();
}

StateSpace::StateSpace(const EnumTable& table) : L_(table.L) {
  if (!table.has_classes()) throw std::invalid_argument("state space needs canonical codes");
  for (int n = 1; n <= table.L; ++n) {
    for (const auto& code : table.classes[n]) {
      index_.emplace(code, states_.size());
      states_.push_back(decode_canonical(code));
    }
  }
}

std::size_t StateSpace::index_of(const CombMap& map) const {
  const auto it = index_.find(canonical_code_unchecked(map));
  if (it == index_.end()) throw std::out_of_range("state missing from the enumeration table");
  return it->second;
}

Eigen::MatrixXd exact_kernel(const StateSpace& space, const TransitionFn& transitions) {
  const auto N = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (const auto& t : transitions(space.state(i))) {
      std::size_t j = 0;
      try {
        j = space.index_of(t.target);
      } catch (const std::out_of_range&) {
        throw std::invalid_argument("exact_kernel: incomplete table (successor outside it)");
      }
      P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += t.prob;
    }
  }
  return P;
}

Eigen::MatrixXd reroot_kernel(const StateSpace& space) {
  return exact_kernel(space, [](const CombMap& map) {
    std::vector<Transition> out;
    const double share = 1.0 / map.flag_count();
    for (Flag b : map.live_flags()) out.push_back({reroot(map, b), share});
    return out;
  });
}

namespace {

template <class Transitions>
ChainKernels kernels(const StateSpace& space, const MoveMix& mix, Transitions&& transitions) {
  ChainKernels k;
  k.step = exact_kernel(space, [&](const CombMap& m) { return transitions(m, mix); });
  if (!mix.reroot_every_step) {
    k.balanced = k.step;
    return k;
  }
  MoveMix plain = mix;
  plain.reroot_every_step = false;
  const Eigen::MatrixXd M =
      exact_kernel(space, [&](const CombMap& m) { return transitions(m, plain); });
  const Eigen::MatrixXd R = reroot_kernel(space);
  k.balanced = R * M * R;
  return k;
}

}  // namespace

ChainKernels boltzmann_kernels(const StateSpace& space, const BoltzmannParams& params) {
  if (params.max_size.value_or(0) != space.max_size()) {
    throw std::invalid_argument("boltzmann_kernels: size cap must equal the table's L");
  }
  return kernels(space, params.mix, [&](const CombMap& m, const MoveMix& mix) {
    BoltzmannParams p = params;
    p.mix = mix;
    return boltzmann_transitions(m, p);
  });
}

ChainKernels wanglandau_kernels(const StateSpace& space, const LogDensity& g, const MoveMix& mix) {
  if (g.L != space.max_size() || g.ell != 1) {
    throw std::invalid_argument("wanglandau_kernels: G must cover exactly 1..L of the table");
  }
  return kernels(space, mix,
                 [&](const CombMap& m, const MoveMix& mx) { return wl_transitions(m, g, mx); });
}

Eigen::VectorXd boltzmann_weights(const StateSpace& space, double z) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i) {
    w(static_cast<Eigen::Index>(i)) = std::pow(z, space.vertices(i));
  }
  return w / w.sum();
}

Eigen::VectorXd wanglandau_weights(const StateSpace& space, const LogDensity& g) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i) {
    w(static_cast<Eigen::Index>(i)) = std::exp(-g(space.vertices(i)));
  }
  return w / w.sum();
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P, double tol, int max_iterations) {
  const Eigen::Index N = P.rows();
  if (N == 0 || P.cols() != N) throw std::invalid_argument("stationary_distribution: not square");
  Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(N, 1.0 / static_cast<double>(N));
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::RowVectorXd next = pi * P;
    next /= next.sum();
    const double residual = (next - pi).lpNorm<1>();
    pi = std::move(next);
    if (residual <= tol) return pi.transpose();
  }
  throw std::runtime_error("stationary_distribution: no convergence");
}

BalanceReport check_balance(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  BalanceReport r;
  const Eigen::Index N = P.rows();
  r.min_self_loop = N ? P.diagonal().minCoeff() : 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    r.row_sum_residual = std::max(r.row_sum_residual, std::abs(P.row(i).sum() - 1.0));
    for (Eigen::Index j = i + 1; j < N; ++j) {
      const double a = pi(i) * P(i, j);
      const double b = pi(j) * P(j, i);
      const double scale = std::max(a, b);
      if (scale == 0) continue;
      const double rel = std::abs(a - b) / scale;
      if (rel > r.balance_residual) {
        r.balance_residual = rel;
        r.worst_i = static_cast<std::size_t>(i);
        r.worst_j = static_cast<std::size_t>(j);
      }
    }
  }
  const Eigen::RowVectorXd moved = pi.transpose() * P;
  r.fixed_point_residual = (moved - pi.transpose()).lpNorm<1>() / pi.lpNorm<1>();
  return r;
}

Rational brute_force_mean_v2(const CombMap& map) {
  const int n = map.size();
  if (n > 20) throw std::invalid_argument("brute_force_mean_v2: n too large for 2^n enumeration");
  KnotDiagram d{map, std::vector<bool>(static_cast<std::size_t>(n))};
  long long total = 0;
  const std::uint64_t assignments = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < assignments; ++mask) {
    for (int i = 0; i < n; ++i) d.signs[i] = (mask >> i) & 1;
    total += v2_of_diagram(d);
  }
  return Rational(total, static_cast<long long>(assignments));
}

namespace {

std::string to_hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (unsigned char c : bytes) {
    out += kDigits[c >> 4];
    out += kDigits[c & 15];
  }
  return out;
}

std::string from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("enum table: odd-length code");
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out += static_cast<char>(std::stoi(hex.substr(i, 2), nullptr, 16));
  }
  return out;
}

}  // namespace

void write_enum_table(std::ostream& out, const EnumTable& table, bool with_codes) {
  out << "# rooted plane curves L=" << table.L << '\n';
  for (int n = 1; n <= table.L; ++n) out << n << ' ' << table.count(n) << '\n';
  if (!with_codes || !table.has_classes()) return;
  for (int n = 1; n <= table.L; ++n) {
    for (const auto& code : table.classes[n]) out << "code " << n << ' ' << to_hex(code) << '\n';
  }
}

EnumTable read_enum_table(std::istream& in) {
  EnumTable table;
  std::vector<std::pair<int, std::uint64_t>> rows;
  std::vector<std::pair<int, std::string>> codes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    if (line.rfind("code ", 0) == 0) {
      std::string tag, hex;
      int n = 0;
      if (!(fields >> tag >> n >> hex)) throw std::invalid_argument("enum table: bad code line");
      codes.emplace_back(n, from_hex(hex));
      continue;
    }
    int n = 0;
    std::uint64_t c = 0;
    if (!(fields >> n >> c) || n < 1) throw std::invalid_argument("enum table: bad row '" + line + "'");
    rows.emplace_back(n, c);
  }
  for (const auto& [n, c] : rows) table.L = std::max(table.L, n);
  table.counts.assign(static_cast<std::size_t>(table.L) + 1, 0);
  for (const auto& [n, c] : rows) table.counts[n] = c;
  if (!codes.empty()) {
    table.classes.resize(static_cast<std::size_t>(table.L) + 1);
    for (auto& [n, code] : codes) {
      if (n > table.L) throw std::invalid_argument("enum table: code beyond L");
      table.classes[n].push_back(std::move(code));
    }
    for (int n = 1; n <= table.L; ++n) {
      if (table.classes[n].size() != table.counts[n]) {
        throw std::invalid_argument("enum table: code count disagrees with k_n");
      }
    }
  }
  return table;
}

}  // namespace planecurve
