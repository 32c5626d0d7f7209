#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nwr {

// Default cap on grid size mhat^q for scans and searches.
inline constexpr std::uint64_t kDefaultGridBudget = std::uint64_t{1} << 22;

// Colouring f : {0..mhat-1}^q -> {0..m-1} of the grid, stored in index order
// with coordinate 0 least significant.
//
// The property the reduction needs: for every grid point x and every colour
// k != f(x) there is a direction l such that every other point on the line
// through x in direction l has colour k. `verified()` is set only by
// verify_star() and cleared by any mutation.
class GadgetTable {
 public:
  GadgetTable(int m, int mhat, int q, std::vector<std::uint8_t> values);

  static GadgetTable constant(int m, int mhat, int q, int colour);

  int m() const { return m_; }
  int mhat() const { return mhat_; }
  int q() const { return q_; }
  std::uint64_t size() const { return values_.size(); }

  int at(std::uint64_t index) const { return values_[index]; }
  int at(std::span<const int> point) const { return values_[index_of(point)]; }
  void set(std::uint64_t index, int colour);

  std::uint64_t index_of(std::span<const int> point) const;
  std::vector<int> point_at(std::uint64_t index) const;
  // m̂^l: index distance between neighbours in direction l.
  std::uint64_t stride(int direction) const { return strides_[static_cast<std::size_t>(direction)]; }

  bool verified() const { return verified_; }
  std::span<const std::uint8_t> values() const { return values_; }

  friend bool operator==(const GadgetTable& a, const GadgetTable& b) {
    return a.m_ == b.m_ && a.mhat_ == b.mhat_ && a.q_ == b.q_ && a.values_ == b.values_;
  }

 private:
  friend struct StarAccess;

  int m_;
  int mhat_;
  int q_;
  std::vector<std::uint64_t> strides_;
  std::vector<std::uint8_t> values_;
  bool verified_ = false;
};

// Grid size mhat^q; throws BudgetExceeded above `budget`.
std::uint64_t grid_size(int mhat, int q, std::uint64_t budget = kDefaultGridBudget);

// A colour k != f(x) that no punctured line through x is monochromatic in,
// or nullopt when x is fine. Returns the smallest such colour.
std::optional<int> bad_vertex(const GadgetTable& t, std::uint64_t index);

struct StarVerdict {
  bool verified = false;
  // Counterexample: the first bad grid point and its witness colour.
  std::uint64_t point = 0;
  int colour = 0;
};

// Scans the whole grid in index order and sets t.verified() accordingly.
StarVerdict verify_star(GadgetTable& t, std::uint64_t budget = kDefaultGridBudget);

// Complete backtracking search with forced-colour propagation (point 0 fixed
// to colour 0 by colour symmetry). nullopt is a definitive "none exists".
// Throws BudgetExceeded when the grid or the branch count exceeds its budget.
std::optional<GadgetTable> search_exhaustive(int m, int mhat, int q,
                                             std::uint64_t grid_budget = kDefaultGridBudget,
                                             std::uint64_t node_budget = 1'000'000);

struct LllSearchResult {
  std::optional<GadgetTable> table;  // verified on success
  std::uint64_t rounds = 0;          // resampling rounds performed
};

// Moser-Tardos style search: colour uniformly at random, then while some
// point is bad, resample every point on the q lines through the first bad
// point. Deterministic given `seed`. Failure after max_rounds proves nothing.
LllSearchResult search_lll(int m, int mhat, int q, std::uint64_t seed, std::uint64_t max_rounds,
                           std::uint64_t grid_budget = kDefaultGridBudget);

// Smallest integer q with q >= 16 m^(mhat-1) mhat ln m, evaluated with
// bracketing high-precision arithmetic.
std::uint64_t lll_sufficient_q(int m, int mhat);

// Group size 6 mhat 2^mhat used by the potential-game reduction.
std::uint64_t reduction_group_size(int mhat);

// Quantities from the local lemma argument, for reporting only:
//   lambda = (1/m)^(mhat-1)         chance a punctured line is all colour k
//   p      = m exp(-lambda q)       bound on P[point is bad]
//   d      = q^2 mhat^2 - 1         dependency degree bound
//   holds  = e (d + 1) p <= 1
struct LllBounds {
  double lambda = 0;
  double p = 0;
  double d = 0;
  bool holds = false;
};
LllBounds lll_bounds(int m, int mhat, std::uint64_t q);

// Text format: "gadget m=<m> mhat=<mhat> q=<q> verified=<0|1>" followed by
// the values in index order, mhat per line. A file claiming verified=1 is
// re-verified on load and rejected if the claim is false.
GadgetTable parse_gadget(std::string_view text, const std::string& source = "");
GadgetTable load_gadget(const std::string& path);
std::string serialize(const GadgetTable& t);

}  // namespace nwr
