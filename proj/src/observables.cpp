#include "planecurve/observables.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace planecurve {

FaceHistogram face_degree_histogram(const CombMap& map) {
  FaceHistogram hist;
  std::vector<char> seen(map.capacity(), 0);
  for (Flag a : map.live_flags()) {
    if (seen[a]) continue;
    int d = 0;
    for (Flag b = a; !seen[b]; b = map.phi(b)) {
      seen[b] = 1;
      ++d;
    }
    ++hist[d];
  }
  return hist;
}

int max_face_degree(const CombMap& map) {
  const auto hist = face_degree_histogram(map);
  return hist.empty() ? 0 : hist.rbegin()->first;
}

double gao_max_face_expectation(double n) {
  if (!(n >= 2)) throw std::domain_error("gao_max_face_expectation: n must be at least 2");
  return (std::log(n) - 0.5 * std::log(std::log(n))) / std::log(1.2);
}

namespace {

// Coefficients of (1 + a y)^(-b) up to y^k.
std::vector<BigRational> binomial_series(const BigRational& a, const BigRational& b, int k) {
  std::vector<BigRational> c(static_cast<std::size_t>(k) + 1);
  c[0] = 1;
  for (int j = 0; j < k; ++j) c[j + 1] = c[j] * (-b - j) / (j + 1) * a;
  return c;
}

}  // namespace

BigRational theoretical_face_density_4valent(int k) {
  if (k < 1) throw std::invalid_argument("face degree must be at least 1");
  const int e = k - 1;
  const auto left = binomial_series(BigRational(1, 2), BigRational(1, 2), e);
  const auto right = binomial_series(BigRational(-5, 6), BigRational(3, 2), e);
  BigRational coeff = 0;
  for (int j = 0; j <= e; ++j) coeff += left[j] * right[e - j];
  return coeff / 3 / k;
}

ChordDiagram chord_diagram(const CombMap& map) {
  const auto walk = traversal(map);
  const auto code = gauss_code(map);
  const int n = map.size();
  ChordDiagram cd;
  cd.first.assign(n, -1);
  cd.second.assign(n, -1);
  cd.writhe_sign.assign(n, 0);
  for (int i = 0; i < static_cast<int>(code.size()); ++i) {
    const int c = code[i] - 1;
    (cd.first[c] < 0 ? cd.first[c] : cd.second[c]) = i;
  }
  // With sigma counterclockwise the crossing is positive when the under
  // strand leaves a quarter turn counterclockwise from the over strand.
  for (int c = 0; c < n; ++c) {
    const Flag o1 = walk[cd.first[c]];
    const Flag o2 = walk[cd.second[c]];
    cd.writhe_sign[c] = map.sigma(o1) == o2 ? 1 : -1;
  }
  return cd;
}

namespace {

template <class F>
void for_each_interlaced(const ChordDiagram& cd, F&& f) {
  const int n = static_cast<int>(cd.first.size());
  for (int c = 0; c < n; ++c) {
    for (int e = 0; e < n; ++e) {
      if (cd.first[c] < cd.first[e] && cd.first[e] < cd.second[c] && cd.second[c] < cd.second[e]) {
        f(c, e);
      }
    }
  }
}

}  // namespace

long long interlacement_invariant(const CombMap& map) {
  const auto cd = chord_diagram(map);
  long long total = 0;
  for_each_interlaced(cd, [&](int c, int e) { total -= cd.writhe_sign[c] * cd.writhe_sign[e]; });
  return total;
}

Rational mean_v2(const CombMap& map) { return Rational(interlacement_invariant(map), 4); }

long long v2_of_diagram(const KnotDiagram& diagram) {
  const auto cd = chord_diagram(diagram.shadow);
  if (diagram.signs.size() != cd.first.size()) {
    throw std::invalid_argument("v2_of_diagram: one sign per crossing required");
  }
  auto epsilon = [&](int c) { return diagram.signs[c] ? cd.writhe_sign[c] : -cd.writhe_sign[c]; };
  // Pairs met as under(c), over(e), over(c), under(e) from the base point.
  long long total = 0;
  for_each_interlaced(cd, [&](int c, int e) {
    if (!diagram.signs[c] && diagram.signs[e]) total += epsilon(c) * epsilon(e);
  });
  return total;
}

KnotDiagram assign_crossings(const CombMap& map, Rng& rng) {
  KnotDiagram d{map, {}};
  d.signs.reserve(static_cast<std::size_t>(map.size()));
  for (int i = 0; i < map.size(); ++i) d.signs.push_back(rng.coin());
  return d;
}

std::string pd_code(const KnotDiagram& diagram) {
  const CombMap& map = diagram.shadow;
  const auto walk = traversal(map);
  const auto cd = chord_diagram(map);
  if (diagram.signs.size() != cd.first.size()) {
    throw std::invalid_argument("pd_code: one sign per crossing required");
  }
  std::vector<int> edge(map.capacity(), 0);
  for (std::size_t i = 0; i < walk.size(); ++i) {
    edge[walk[i]] = static_cast<int>(i) + 1;
    edge[map.tau(walk[i])] = static_cast<int>(i) + 1;
  }
  std::ostringstream out;
  for (std::size_t c = 0; c < cd.first.size(); ++c) {
    const Flag under_out = walk[diagram.signs[c] ? cd.second[c] : cd.first[c]];
    const Flag in = map.sigma(map.sigma(under_out));
    out << (c ? "," : "") << "X(" << edge[in] << ',' << edge[map.sigma(in)] << ','
        << edge[map.sigma(map.sigma(in))] << ',' << edge[map.sigma_inv(in)] << ')';
  }
  return out.str();
}

ObservableRecord make_record(const CombMap& map, std::uint64_t step, int chain_id) {
  ObservableRecord rec;
  rec.chain_id = chain_id;
  rec.step = step;
  rec.n = map.size();
  rec.face_hist = face_degree_histogram(map);
  rec.max_face = rec.face_hist.rbegin()->first;
  rec.mean_v2 = mean_v2(map);
  return rec;
}

std::string format_quarter(const Rational& r) {
  const long long den = r.denominator();
  if (4 % den != 0) throw std::invalid_argument("format_quarter: not a multiple of 1/4");
  const long long q = r.numerator() * (4 / den);
  std::string out = q < 0 ? "-" : "";
  const long long a = q < 0 ? -q : q;
  out += std::to_string(a / 4);
  static constexpr const char* kFrac[] = {"", ".25", ".5", ".75"};
  out += kFrac[a % 4];
  return out;
}

namespace {

std::string hist_text(const FaceHistogram& hist) {
  std::string out;
  for (const auto& [deg, count] : hist) {
    if (!out.empty()) out += ';';
    out += std::to_string(deg) + ':' + std::to_string(count);
  }
  return out;
}

}  // namespace

void write_record_header(std::ostream& out, RecordFormat format) {
  if (format == RecordFormat::csv) out << "chain_id,step,n,max_face,mean_v2,face_hist\n";
}

void write_record(std::ostream& out, const ObservableRecord& rec, RecordFormat format) {
  if (format == RecordFormat::csv) {
    out << rec.chain_id << ',' << rec.step << ',' << rec.n << ',' << rec.max_face << ','
        << format_quarter(rec.mean_v2) << ',' << hist_text(rec.face_hist) << '\n';
    return;
  }
  nlohmann::ordered_json j;
  j["chain_id"] = rec.chain_id;
  j["step"] = rec.step;
  j["n"] = rec.n;
  j["max_face"] = rec.max_face;
  j["mean_v2"] = static_cast<double>(rec.mean_v2.numerator()) / rec.mean_v2.denominator();
  j["face_hist"] = hist_text(rec.face_hist);
  out << j.dump() << '\n';
}

}  // namespace planecurve
