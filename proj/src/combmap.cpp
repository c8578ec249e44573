#include "planecurve/combmap.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace planecurve {

namespace {

void require_live(const CombMap& map, Flag a) {
  if (!map.is_live(a)) throw std::out_of_range("dead flag " + std::to_string(a));
}

void require_valid(const CombMap& map) {
  const auto report = validate(map);
  if (!report.ok) {
    throw std::invalid_argument("invalid map: " + report.violations.front());
  }
}

void put_word(std::string& out, std::uint32_t w) {
  char bytes[4] = {static_cast<char>(w & 0xff), static_cast<char>((w >> 8) & 0xff),
                   static_cast<char>((w >> 16) & 0xff), static_cast<char>((w >> 24) & 0xff)};
  out.append(bytes, 4);
}

std::uint32_t get_word(const std::string& in, std::size_t i) {
  const auto* p = reinterpret_cast<const unsigned char*>(in.data()) + 4 * i;
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

// Smallest flag of each vertex, used as a vertex identifier.
Flag vertex_key(const CombMap& map, Flag a) {
  Flag best = a;
  for (Flag b = map.sigma(a); b != a; b = map.sigma(b)) best = std::min(best, b);
  return best;
}

}  // namespace

CombMap CombMap::figure_eight() {
  // sigma = (0 1 2 3), tau = (0 1)(2 3). The other planar pairing (0 3)(1 2)
  // is isomorphic; (0 2)(1 3) is a torus map.
  return from_arrays({1, 2, 3, 0}, {1, 0, 3, 2}, 0);
}

CombMap CombMap::from_arrays(std::vector<Flag> sigma, std::vector<Flag> tau, Flag root) {
  CombMap m;
  m.sigma_ = std::move(sigma);
  m.tau_ = std::move(tau);
  const auto cap = m.sigma_.size();
  m.tau_.resize(cap, kNoFlag);
  m.pos_.resize(cap);
  m.live_.resize(cap);
  for (Flag a = 0; a < cap; ++a) {
    m.pos_[a] = a;
    m.live_[a] = a;
  }
  m.root_ = root;
  return m;
}

void CombMap::set_root(Flag a) {
  require_live(*this, a);
  root_ = a;
}

int CombMap::face_degree(Flag a) const {
  int d = 1;
  for (Flag b = phi(a); b != a; b = phi(b)) ++d;
  return d;
}

bool CombMap::same_vertex(Flag a, Flag b) const {
  return a == b || sigma_[a] == b || sigma_[sigma_[a]] == b || sigma_[sigma_[sigma_[a]]] == b;
}

Flag CombMap::allocate_flag() {
  Flag a;
  if (!free_.empty()) {
    a = free_.back();
    free_.pop_back();
  } else {
    a = static_cast<Flag>(sigma_.size());
    sigma_.push_back(a);
    tau_.push_back(a);
    pos_.push_back(kNoFlag);
  }
  pos_[a] = static_cast<Flag>(live_.size());
  live_.push_back(a);
  return a;
}

void CombMap::release_flag(Flag a) {
  const Flag p = pos_[a];
  const Flag last = live_.back();
  live_[p] = last;
  pos_[last] = p;
  live_.pop_back();
  pos_[a] = kNoFlag;
  sigma_[a] = a;
  tau_[a] = a;
  free_.push_back(a);
}

void CombMap::make_vertex(Flag a, Flag b, Flag c, Flag d) {
  sigma_[a] = b;
  sigma_[b] = c;
  sigma_[c] = d;
  sigma_[d] = a;
}

void CombMap::make_edge(Flag a, Flag b) {
  tau_[a] = b;
  tau_[b] = a;
}

ValidityReport validate(const CombMap& map) {
  ValidityReport report;
  auto fail = [&](std::string what) {
    report.ok = false;
    report.violations.push_back(std::move(what));
  };

  const auto live = map.live_flags();
  const std::size_t count = live.size();
  const std::size_t cap = map.capacity();
  if (count == 0 || count % 4 != 0) fail("flag count not a positive multiple of 4");
  if (!map.is_live(map.root())) fail("root not live");

  // Permutation checks must not trust the data.
  std::vector<int> hits(cap, 0);
  bool sigma_ok = true;
  for (Flag a : live) {
    const Flag b = map.sigma(a);
    if (!map.is_live(b) || hits[b]++ != 0) sigma_ok = false;
  }
  if (!sigma_ok) fail("sigma not a permutation");

  bool tau_ok = true;
  for (Flag a : live) {
    const Flag b = map.tau(a);
    if (!map.is_live(b) || b == a || map.tau(b) != a) tau_ok = false;
  }
  if (!tau_ok) fail("tau not fixed-point-free involution");
  if (!sigma_ok || !tau_ok || count == 0) return report;

  const std::size_t n = count / 4;
  std::vector<char> seen(cap, 0);

  bool four_cycles = true;
  for (Flag a : live) {
    if (seen[a]) continue;
    std::size_t len = 0;
    for (Flag b = a; !seen[b]; b = map.sigma(b)) {
      seen[b] = 1;
      ++len;
    }
    if (len != 4) four_cycles = false;
  }
  if (!four_cycles) fail("sigma not a product of 4-cycles");

  std::fill(seen.begin(), seen.end(), 0);
  std::vector<Flag> stack{live.front()};
  seen[live.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Flag a = stack.back();
    stack.pop_back();
    for (Flag b : {map.sigma(a), map.tau(a)}) {
      if (!seen[b]) {
        seen[b] = 1;
        ++reached;
        stack.push_back(b);
      }
    }
  }
  if (reached != count) fail("not connected");

  auto cycle_lengths = [&](auto next) {
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<std::size_t> lengths;
    for (Flag a : live) {
      if (seen[a]) continue;
      std::size_t len = 0;
      for (Flag b = a; !seen[b]; b = next(b)) {
        seen[b] = 1;
        ++len;
      }
      lengths.push_back(len);
    }
    return lengths;
  };

  if (cycle_lengths([&](Flag a) { return map.phi(a); }).size() != n + 2) fail("planarity");

  const auto comps = cycle_lengths([&](Flag a) { return map.sigma(map.sigma(map.tau(a))); });
  if (comps.size() != 2 || comps[0] != 2 * n || comps[1] != 2 * n) fail("curve condition");

  return report;
}

std::vector<Flag> face_of(const CombMap& map, Flag a) {
  require_live(map, a);
  std::vector<Flag> out{a};
  for (Flag b = map.phi(a); b != a; b = map.phi(b)) out.push_back(b);
  return out;
}

std::vector<Flag> vertex_of(const CombMap& map, Flag a) {
  require_live(map, a);
  std::vector<Flag> out{a};
  for (Flag b = map.sigma(a); b != a; b = map.sigma(b)) out.push_back(b);
  return out;
}

std::vector<Flag> edge_of(const CombMap& map, Flag a) {
  require_live(map, a);
  return {a, map.tau(a)};
}

std::vector<std::vector<Flag>> components(const CombMap& map) {
  std::vector<std::vector<Flag>> out;
  std::vector<char> seen(map.capacity(), 0);
  auto walk = [&](Flag start) {
    std::vector<Flag> cycle;
    for (Flag b = start; !seen[b]; b = map.sigma(map.sigma(map.tau(b)))) {
      seen[b] = 1;
      cycle.push_back(b);
    }
    out.push_back(std::move(cycle));
  };
  require_live(map, map.root());
  walk(map.root());
  for (Flag a : map.live_flags()) {
    if (!seen[a]) walk(a);
  }
  return out;
}

CombMap reroot(const CombMap& map, Flag b) {
  CombMap out = map;
  out.set_root(b);
  return out;
}

std::string canonical_code_unchecked(const CombMap& map) {
  const std::size_t count = map.flag_count();
  std::vector<Flag> label(map.capacity(), kNoFlag);
  std::vector<Flag> order;
  order.reserve(count);
  label[map.root()] = 0;
  order.push_back(map.root());
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Flag a = order[head];
    for (Flag b : {map.sigma(a), map.tau(a)}) {
      if (label[b] == kNoFlag) {
        label[b] = static_cast<Flag>(order.size());
        order.push_back(b);
      }
    }
  }
  std::string code;
  code.reserve(4 * (1 + 2 * count));
  put_word(code, static_cast<std::uint32_t>(count / 4));
  for (Flag a : order) put_word(code, label[map.sigma(a)]);
  for (Flag a : order) put_word(code, label[map.tau(a)]);
  return code;
}

std::string canonical_code(const CombMap& map) {
  require_valid(map);
  return canonical_code_unchecked(map);
}

CombMap decode_canonical(const std::string& code) {
  if (code.size() < 4 || code.size() % 4 != 0) {
    throw std::invalid_argument("malformed canonical code");
  }
  const std::size_t n = get_word(code, 0);
  const std::size_t count = 4 * n;
  if (code.size() != 4 * (1 + 2 * count)) throw std::invalid_argument("malformed canonical code");
  std::vector<Flag> sigma(count), tau(count);
  for (std::size_t i = 0; i < count; ++i) {
    sigma[i] = get_word(code, 1 + i);
    tau[i] = get_word(code, 1 + count + i);
  }
  return CombMap::from_arrays(std::move(sigma), std::move(tau), 0);
}

std::vector<Flag> traversal(const CombMap& map) {
  require_valid(map);
  std::vector<Flag> out;
  out.reserve(2 * map.size());
  const Flag start = map.root();
  Flag a = start;
  do {
    out.push_back(a);
    a = map.sigma(map.sigma(map.tau(a)));
  } while (a != start);
  return out;
}

std::vector<int> gauss_code(const CombMap& map) {
  const auto walk = traversal(map);
  std::vector<int> label(map.capacity(), 0);
  std::vector<int> code;
  code.reserve(walk.size());
  int next = 0;
  for (Flag a : walk) {
    int& l = label[vertex_key(map, a)];
    if (l == 0) l = ++next;
    code.push_back(l);
  }
  return code;
}

void write_map(std::ostream& out, const CombMap& map) {
  std::vector<Flag> index(map.capacity(), kNoFlag);
  Flag next = 0;
  for (Flag a = 0; a < map.capacity(); ++a) {
    if (map.is_live(a)) index[a] = next++;
  }
  out << map.size() << '\n';
  const char* sep = "";
  for (Flag a = 0; a < map.capacity(); ++a) {
    if (!map.is_live(a)) continue;
    out << sep << index[map.sigma(a)];
    sep = " ";
  }
  out << '\n';
  sep = "";
  for (Flag a = 0; a < map.capacity(); ++a) {
    if (!map.is_live(a)) continue;
    out << sep << index[map.tau(a)];
    sep = " ";
  }
  out << '\n' << index[map.root()] << '\n';
}

CombMap read_map(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw std::invalid_argument("map: bad vertex count");
  std::vector<Flag> sigma(4 * n), tau(4 * n);
  for (auto& s : sigma) {
    if (!(in >> s)) throw std::invalid_argument("map: truncated sigma");
  }
  for (auto& t : tau) {
    if (!(in >> t)) throw std::invalid_argument("map: truncated tau");
  }
  Flag root = 0;
  if (!(in >> root)) throw std::invalid_argument("map: missing root");
  auto map = CombMap::from_arrays(std::move(sigma), std::move(tau), root);
  require_valid(map);
  return map;
}

std::string format_gauss_code(const std::vector<int>& code) {
  std::ostringstream out;
  for (std::size_t i = 0; i < code.size(); ++i) out << (i ? "," : "") << code[i];
  return out.str();
}

}  // namespace planecurve
