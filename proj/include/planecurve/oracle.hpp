#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "planecurve/chain.hpp"
#include "planecurve/chain_boltzmann.hpp"
#include "planecurve/chain_wanglandau.hpp"
#include "planecurve/observables.hpp"

namespace planecurve {

/// Rooted plane curves of every size up to L. counts[n] = k_n; classes[n]
/// holds the canonical codes when they are known (a counts-only file leaves
/// it empty).
struct EnumTable {
  int L = 0;
  std::vector<std::uint64_t> counts;               // index n = 0..L, counts[0] = 0
  std::vector<std::vector<std::string>> classes;   // same indexing, or empty

  std::uint64_t count(int n) const { return counts.at(static_cast<std::size_t>(n)); }
  bool has_classes() const { return !classes.empty(); }
  std::uint64_t total() const;
};

inline constexpr int kOracleMaxSize = 7;

/// Breadth-first closure of the figure-eight under all five moves at every
/// rooting, capped at size L. Codes within a size are sorted.
EnumTable enumerate_rooted_plane_curves(int L);

/// Independent count of rooted plane curves with n vertices: fixes sigma,
/// runs over every tau matching and root, and keeps what validate accepts.
std::uint64_t count_by_raw_generation(int n);

/// Dense indexing of an EnumTable's states, ordered by size then code.
class StateSpace {
 public:
  explicit StateSpace(const EnumTable& table);

  std::size_t size() const { return states_.size(); }
  const CombMap& state(std::size_t i) const { return states_[i]; }
  int vertices(std::size_t i) const { return states_[i].size(); }
  /// Throws std::out_of_range for a state missing from the table.
  std::size_t index_of(const CombMap& map) const;
  int max_size() const { return L_; }

 private:
  int L_ = 0;
  std::vector<CombMap> states_;
  std::unordered_map<std::string, std::size_t> index_;
};

using TransitionFn = std::function<std::vector<Transition>(const CombMap&)>;

/// One-step matrix P[i][j] = P(state i -> state j).
Eigen::MatrixXd exact_kernel(const StateSpace& space, const TransitionFn& transitions);

/// Uniform re-rooting within each size.
Eigen::MatrixXd reroot_kernel(const StateSpace& space);

struct ChainKernels {
  Eigen::MatrixXd step;      // the chain as implemented
  Eigen::MatrixXd balanced;  // R M R when re-rooting every step, else step
};

ChainKernels boltzmann_kernels(const StateSpace& space, const BoltzmannParams& params);
ChainKernels wanglandau_kernels(const StateSpace& space, const LogDensity& g, const MoveMix& mix);

/// Normalised target weights: z^n and exp(-G_n) per rooted state.
Eigen::VectorXd boltzmann_weights(const StateSpace& space, double z);
Eigen::VectorXd wanglandau_weights(const StateSpace& space, const LogDensity& g);

/// Left fixed vector by power iteration from the uniform vector, stopping
/// when |pi P - pi|_1 <= tol. Throws std::runtime_error on non-convergence.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P, double tol = 1e-12,
                                        int max_iterations = 1000000);

struct BalanceReport {
  double row_sum_residual = 0;     // max_i |sum_j P_ij - 1|
  double balance_residual = 0;     // max relative |pi_i P_ij - pi_j P_ji|
  double fixed_point_residual = 0; // |pi P - pi|_1 / |pi|_1 for the target pi
  double min_self_loop = 0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};

BalanceReport check_balance(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);

/// Average of v2_of_diagram over all 2^n crossing assignments.
Rational brute_force_mean_v2(const CombMap& map);

void write_enum_table(std::ostream& out, const EnumTable& table, bool with_codes);
EnumTable read_enum_table(std::istream& in);

}  // namespace planecurve
