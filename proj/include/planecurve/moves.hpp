#pragma once

#include <string_view>

#include "planecurve/combmap.hpp"

namespace planecurve {

enum class MoveStatus {
  ok,
  monogon_required,
  bigon_required,
  degenerate_triangle,
  exterior_faces_not_distinct,
  size_cap,
  merged_face_too_small,
  face_is_monogon,
  below_minimum_size,
  degenerate_bigon,
};

std::string_view to_string(MoveStatus s);

// Flat Reidemeister surgeries at the root flag. Each mutates the map in
// place and moves the root on success; on failure the map is untouched.

/// Loop addition. Always succeeds; the new root lies on a monogon.
MoveStatus ri_plus(CombMap& map);

/// Loop deletion at a root lying on a monogon.
MoveStatus ri_minus(CombMap& map);

/// Bigon addition between the root and the flag k steps further along the
/// root face, 1 <= k <= d-1.
MoveStatus rii_plus(CombMap& map, int k);

struct BigonCheck {
  MoveStatus status = MoveStatus::ok;
  int merged_degree = 0;
};

/// Everything rii_minus would check, without mutating. On success carries
/// the degree of the face produced by the deletion.
BigonCheck rii_minus_check(const CombMap& map);

/// Bigon deletion at a root lying on a bigon whose two end faces are
/// distinct and would merge into a face of degree at least 2.
MoveStatus rii_minus(CombMap& map);

/// Triangle flip at a root lying on a triangle with three distinct corners.
/// An involution: applying it twice restores the map and its root.
MoveStatus riii(CombMap& map);

/// |f(tau sigma a)| + |f(sigma^3 tau a)| - 2 at a root on a bigon.
/// Throws std::invalid_argument when the root face is not a bigon.
int merged_bigon_degree(const CombMap& map);

}  // namespace planecurve
