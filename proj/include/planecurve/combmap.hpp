#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace planecurve {

using Flag = std::uint32_t;

inline constexpr Flag kNoFlag = static_cast<Flag>(-1);

struct ValidityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// A rooted 4-valent map given by a pair of permutations on flags.
///
/// sigma rotates the four flags of a vertex counterclockwise, tau swaps the
/// two flags of an edge. Faces are the cycles of sigma∘tau (tau applied
/// first), Gauss components are the cycles of sigma²∘tau.
///
/// Flag slots are recycled through a free list so surgery never compacts the
/// arrays. A dense list of live flags gives O(1) uniform root selection.
class CombMap {
 public:
  CombMap() = default;

  /// The one-vertex figure-eight curve, rooted at flag 0.
  static CombMap figure_eight();

  /// Wraps raw permutation data without checking it; every slot is live.
  /// Use validate() before trusting the result.
  static CombMap from_arrays(std::vector<Flag> sigma, std::vector<Flag> tau,
                             Flag root);

  int size() const { return static_cast<int>(live_.size() / 4); }
  std::size_t flag_count() const { return live_.size(); }
  std::size_t capacity() const { return sigma_.size(); }

  Flag root() const { return root_; }
  void set_root(Flag a);

  Flag sigma(Flag a) const { return sigma_[a]; }
  Flag sigma_inv(Flag a) const { return sigma_[sigma_[sigma_[a]]]; }
  Flag tau(Flag a) const { return tau_[a]; }
  /// Successor of a along its face.
  Flag phi(Flag a) const { return sigma_[tau_[a]]; }

  bool is_live(Flag a) const {
    return a < pos_.size() && pos_[a] != kNoFlag;
  }
  std::span<const Flag> live_flags() const { return live_; }
  Flag live_flag(std::size_t i) const { return live_[i]; }

  int face_degree(Flag a) const;
  bool same_vertex(Flag a, Flag b) const;

  // Low-level surgery used by the moves. These keep the live list and free
  // list consistent but do not maintain any map invariant.
  Flag allocate_flag();
  void release_flag(Flag a);
  void make_vertex(Flag a, Flag b, Flag c, Flag d);
  void make_edge(Flag a, Flag b);

  friend bool operator==(const CombMap&, const CombMap&) = default;

 private:
  std::vector<Flag> sigma_;
  std::vector<Flag> tau_;
  std::vector<Flag> pos_;   // index into live_, or kNoFlag when free
  std::vector<Flag> live_;
  std::vector<Flag> free_;
  Flag root_ = 0;
};

ValidityReport validate(const CombMap& map);

std::vector<Flag> face_of(const CombMap& map, Flag a);
std::vector<Flag> vertex_of(const CombMap& map, Flag a);
std::vector<Flag> edge_of(const CombMap& map, Flag a);
/// The cycles of sigma²∘tau, the first one through the root.
std::vector<std::vector<Flag>> components(const CombMap& map);

CombMap reroot(const CombMap& map, Flag b);

/// Rooted-isomorphism invariant: flags are relabelled breadth-first from the
/// root (sigma before tau) and the relabelled arrays are emitted as
/// little-endian 32-bit words: n, sigma[0..4n), tau[0..4n).
std::string canonical_code(const CombMap& map);
/// Same as canonical_code without the validity check.
std::string canonical_code_unchecked(const CombMap& map);
CombMap decode_canonical(const std::string& code);

/// Outgoing flags of the component through the root, in traversal order.
std::vector<Flag> traversal(const CombMap& map);
/// Vertex labels 1..n by first visit along the root component; each label
/// appears exactly twice.
std::vector<int> gauss_code(const CombMap& map);

// Line-oriented text: n, sigma, tau, root; dead slots are compacted away.
void write_map(std::ostream& out, const CombMap& map);
CombMap read_map(std::istream& in);
std::string format_gauss_code(const std::vector<int>& code);

}  // namespace planecurve
