#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "planecurve/combmap.hpp"
#include "planecurve/rng.hpp"

namespace planecurve {

using Rational = boost::rational<long long>;
using BigRational = boost::multiprecision::cpp_rational;

/// Face degree -> number of faces of that degree.
using FaceHistogram = std::map<int, int>;

FaceHistogram face_degree_histogram(const CombMap& map);
int max_face_degree(const CombMap& map);

/// (ln n - ln ln n / 2) / ln(6/5). Throws std::domain_error for n < 2.
double gao_max_face_expectation(double n);

/// Limiting density of degree-k faces in random 4-valent planar maps,
/// (1/k) [y^(k-1)] (1/3)(1 + y/2)^(-1/2) (1 - 5y/6)^(-3/2).
BigRational theoretical_face_density_4valent(int k);

// Crossing data along the root traversal. Vertices carry their first-visit
// label (1..n, as in gauss_code); chord c is entered at positions first[c]
// and second[c] of the traversal. writhe_sign[c] is the sign the crossing
// would have if the first passage went over.
struct ChordDiagram {
  std::vector<int> first;
  std::vector<int> second;
  std::vector<int> writhe_sign;
};

ChordDiagram chord_diagram(const CombMap& map);

/// -(sum of w(c) w(c') over interlaced chord pairs); an integer equal to
/// four times the mean Casson invariant over all crossing assignments.
long long interlacement_invariant(const CombMap& map);
Rational mean_v2(const CombMap& map);

struct KnotDiagram {
  CombMap shadow;
  // signs[i] is true when the strand through the first visit of vertex i+1
  // passes over.
  std::vector<bool> signs;
};

/// Casson invariant of a knot diagram via the two-arrow Gauss diagram formula.
long long v2_of_diagram(const KnotDiagram& diagram);

KnotDiagram assign_crossings(const CombMap& map, Rng& rng);

/// Edges are numbered 1..2n along the root traversal; each crossing lists
/// its four edges counterclockwise from the incoming under-strand edge.
std::string pd_code(const KnotDiagram& diagram);

struct ObservableRecord {
  int chain_id = 0;
  std::uint64_t step = 0;
  int n = 0;
  int max_face = 0;
  Rational mean_v2{0};
  FaceHistogram face_hist;
};

ObservableRecord make_record(const CombMap& map, std::uint64_t step, int chain_id);

enum class RecordFormat { csv, jsonl };

/// mean_v2 is a multiple of 1/4 and is written as an exact decimal.
std::string format_quarter(const Rational& r);
void write_record_header(std::ostream& out, RecordFormat format);
void write_record(std::ostream& out, const ObservableRecord& rec, RecordFormat format);

}  // namespace planecurve
