#include "planecurve/moves.hpp"

#include <array>
#include <stdexcept>

namespace planecurve {

std::string_view to_string(MoveStatus s) {
  switch (s) {
    case MoveStatus::ok: return "ok";
    case MoveStatus::monogon_required: return "monogon-required";
    case MoveStatus::bigon_required: return "bigon-required";
    case MoveStatus::degenerate_triangle: return "degenerate-triangle";
    case MoveStatus::exterior_faces_not_distinct: return "exterior-faces-not-distinct";
    case MoveStatus::size_cap: return "size-cap";
    case MoveStatus::merged_face_too_small: return "merged-face-too-small";
    case MoveStatus::face_is_monogon: return "face-is-monogon";
    case MoveStatus::below_minimum_size: return "below-minimum-size";
    case MoveStatus::degenerate_bigon: return "degenerate-bigon";
  }
  return "unknown";
}

// Flag names a1..a12 below follow the labelling of the flat Reidemeister
// figures: the root is a1 for the additions, a6 for the deletions and a8 for
// the triangle flip.

MoveStatus ri_plus(CombMap& map) {
  const Flag a1 = map.root();
  const Flag a2 = map.tau(a1);
  const Flag a3 = map.allocate_flag();
  const Flag a4 = map.allocate_flag();
  const Flag a5 = map.allocate_flag();
  const Flag a6 = map.allocate_flag();
  map.make_vertex(a3, a4, a5, a6);
  map.make_edge(a1, a4);
  map.make_edge(a5, a6);
  map.make_edge(a3, a2);
  map.set_root(a6);
  return MoveStatus::ok;
}

MoveStatus ri_minus(CombMap& map) {
  const Flag a6 = map.root();
  if (map.phi(a6) != a6) return MoveStatus::monogon_required;
  if (map.size() <= 1) return MoveStatus::below_minimum_size;
  const Flag a3 = map.sigma(a6);
  const Flag a4 = map.sigma(a3);
  const Flag a5 = map.sigma(a4);
  const Flag a2 = map.tau(a3);
  const Flag a1 = map.tau(a4);
  for (Flag a : {a3, a4, a5, a6}) map.release_flag(a);
  map.make_edge(a1, a2);
  map.set_root(a1);
  return MoveStatus::ok;
}

MoveStatus rii_plus(CombMap& map, int k) {
  const Flag a1 = map.root();
  const int d = map.face_degree(a1);
  if (d == 1) return MoveStatus::face_is_monogon;
  if (k < 1 || k > d - 1) throw std::out_of_range("rii_plus: k outside [1, d-1]");
  Flag a3 = a1;
  for (int i = 0; i < k; ++i) a3 = map.phi(a3);
  const Flag a2 = map.tau(a1);
  const Flag a4 = map.tau(a3);
  // A 4-valent map has no bridges, so a1 and a3 never share an edge.
  if (a3 == a2) throw std::logic_error("rii_plus: cofacial flags share an edge");

  std::array<Flag, 8> fresh{};
  for (auto& f : fresh) f = map.allocate_flag();
  const auto [a5, a6, a7, a8, a9, a10, a11, a12] = fresh;
  map.make_vertex(a6, a10, a9, a7);
  map.make_vertex(a5, a8, a12, a11);
  map.make_edge(a2, a9);
  map.make_edge(a3, a10);
  map.make_edge(a7, a8);
  map.make_edge(a5, a6);
  map.make_edge(a1, a12);
  map.make_edge(a4, a11);
  map.set_root(a6);
  return MoveStatus::ok;
}

namespace {

struct BigonFlags {
  Flag a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12;
};

BigonFlags bigon_flags(const CombMap& map) {
  BigonFlags b{};
  b.a6 = map.root();
  b.a10 = map.sigma(b.a6);
  b.a9 = map.sigma(b.a10);
  b.a7 = map.sigma(b.a9);
  b.a5 = map.tau(b.a6);
  b.a8 = map.sigma(b.a5);
  b.a12 = map.sigma(b.a8);
  b.a11 = map.sigma(b.a12);
  b.a2 = map.tau(b.a9);
  b.a3 = map.tau(b.a10);
  b.a1 = map.tau(b.a12);
  b.a4 = map.tau(b.a11);
  return b;
}

}  // namespace

BigonCheck rii_minus_check(const CombMap& map) {
  const Flag a6 = map.root();
  if (map.face_degree(a6) != 2) return {MoveStatus::bigon_required, 0};
  const auto b = bigon_flags(map);

  // End faces of the bigon: f(tau sigma a6) = f(a3) and f(sigma^3 tau a6) = f(a11).
  int deg_a = 0;
  bool shared = false;
  Flag x = b.a3;
  do {
    ++deg_a;
    if (x == b.a11) shared = true;
    x = map.phi(x);
  } while (x != b.a3);
  if (shared) return {MoveStatus::exterior_faces_not_distinct, 0};
  if (map.size() <= 2) return {MoveStatus::below_minimum_size, 0};

  const int merged = deg_a + map.face_degree(b.a11) - 2;
  if (merged < 2) return {MoveStatus::merged_face_too_small, merged};

  // The outer flags must lie off the bigon's two vertices; otherwise the
  // configuration is not the image of any bigon addition.
  for (Flag outer : {b.a1, b.a2, b.a3, b.a4}) {
    if (map.same_vertex(outer, b.a6) || map.same_vertex(outer, b.a5)) {
      return {MoveStatus::degenerate_bigon, merged};
    }
  }
  return {MoveStatus::ok, merged};
}

MoveStatus rii_minus(CombMap& map) {
  const auto check = rii_minus_check(map);
  if (check.status != MoveStatus::ok) return check.status;
  const auto b = bigon_flags(map);
  for (Flag a : {b.a5, b.a6, b.a7, b.a8, b.a9, b.a10, b.a11, b.a12}) map.release_flag(a);
  map.make_edge(b.a1, b.a2);
  map.make_edge(b.a3, b.a4);
  map.set_root(b.a1);
  return MoveStatus::ok;
}

MoveStatus riii(CombMap& map) {
  const Flag a8 = map.root();
  const Flag a10 = map.phi(a8);
  const Flag a6 = map.phi(a10);
  if (map.phi(a6) != a8 || a10 == a8 || a6 == a8) return MoveStatus::degenerate_triangle;
  if (map.same_vertex(a8, a10) || map.same_vertex(a10, a6) || map.same_vertex(a6, a8)) {
    return MoveStatus::degenerate_triangle;
  }
  // Corners: u = v(a8) = (a1 a2 a7 a8), w = v(a9) = (a3 a9 a10 a4),
  // x = v(a6) = (a5 a11 a12 a6). Triangle edges (a8 a9), (a10 a12), (a6 a7).
  const Flag a1 = map.sigma(a8);
  const Flag a2 = map.sigma(a1);
  const Flag a7 = map.sigma(a2);
  const Flag a9 = map.tau(a8);
  const Flag a4 = map.sigma(a10);
  const Flag a3 = map.sigma(a4);
  const Flag a5 = map.sigma(a6);
  const Flag a11 = map.sigma(a5);
  const Flag a12 = map.sigma(a11);

  // Each strand is pushed across the opposite crossing. The edges of the
  // triangle keep their flags; only the cyclic orders at the three corners
  // change, pairing the outer flags (a1 a2 a5 a11 a4 a3) differently.
  map.make_vertex(a11, a4, a7, a8);
  map.make_vertex(a2, a5, a9, a10);
  map.make_vertex(a3, a1, a12, a6);
  map.set_root(a8);
  return MoveStatus::ok;
}

int merged_bigon_degree(const CombMap& map) {
  const Flag a = map.root();
  if (map.face_degree(a) != 2) throw std::invalid_argument("merged_bigon_degree: bigon-required");
  return map.face_degree(map.tau(map.sigma(a))) + map.face_degree(map.sigma_inv(map.tau(a))) - 2;
}

}  // namespace planecurve
