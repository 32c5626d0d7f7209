#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "nwr/error.hpp"
#include "nwr/gadget.hpp"

namespace nwr {
namespace {

struct Grid {
  int m;
  std::uint64_t mhat;
  int q;
  std::vector<std::uint64_t> strides;
};

// possible[k]: some punctured line through x has every assigned point
// coloured k, so it may still end up monochromatic in k.
void line_options(const Grid& g, const std::vector<int>& vals, std::uint64_t x,
                  std::vector<int>& possible, std::vector<int>& last_line) {
  std::fill(possible.begin(), possible.end(), 0);
  for (int l = 0; l < g.q; ++l) {
    const std::uint64_t stride = g.strides[static_cast<std::size_t>(l)];
    const std::uint64_t coord = (x / stride) % g.mhat;
    const std::uint64_t base = x - coord * stride;
    int seen = -1;
    bool mixed = false;
    for (std::uint64_t z = 0; z < g.mhat && !mixed; ++z) {
      if (z == coord) continue;
      int c = vals[base + z * stride];
      if (c < 0) continue;
      if (seen < 0) {
        seen = c;
      } else if (c != seen) {
        mixed = true;
      }
    }
    if (mixed) continue;
    for (int k = 0; k < g.m; ++k) {
      if (seen < 0 || seen == k) {
        ++possible[static_cast<std::size_t>(k)];
        last_line[static_cast<std::size_t>(k)] = l;
      }
    }
  }
}

// Applies forced colours until nothing changes; false on a contradiction.
//  - an assigned point with a single open line for colour k forces that line to k;
//  - an unassigned point with no open line for exactly one colour k must be k.
bool propagate(const Grid& g, std::vector<int>& vals) {
  const auto m = static_cast<std::size_t>(g.m);
  std::vector<int> possible(m);
  std::vector<int> last_line(m);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint64_t x = 0; x < vals.size(); ++x) {
      line_options(g, vals, x, possible, last_line);
      const int own = vals[x];
      if (own >= 0) {
        for (int k = 0; k < g.m; ++k) {
          if (k == own) continue;
          const int open = possible[static_cast<std::size_t>(k)];
          if (open == 0) return false;
          if (open > 1) continue;
          const std::uint64_t stride = g.strides[static_cast<std::size_t>(last_line[static_cast<std::size_t>(k)])];
          const std::uint64_t coord = (x / stride) % g.mhat;
          const std::uint64_t base = x - coord * stride;
          for (std::uint64_t z = 0; z < g.mhat; ++z) {
            std::uint64_t y = base + z * stride;
            if (z != coord && vals[y] < 0) {
              vals[y] = k;
              changed = true;
            }
          }
        }
      } else {
        int closed = 0;
        int closed_colour = 0;
        for (int k = 0; k < g.m; ++k) {
          if (possible[static_cast<std::size_t>(k)] == 0) {
            ++closed;
            closed_colour = k;
          }
        }
        if (closed > 1) return false;
        if (closed == 1) {
          vals[x] = closed_colour;
          changed = true;
        }
      }
    }
  }
  return true;
}

struct Frame {
  std::vector<int> vals;
  std::uint64_t point;
  int next;
  int limit;
};

}  // namespace

std::optional<GadgetTable> search_exhaustive(int m, int mhat, int q, std::uint64_t grid_budget,
                                             std::uint64_t node_budget) {
  if (m < 1 || m > 255 || mhat < 2) throw InvalidInput("gadget search needs 1 <= m <= 255 and mhat >= 2");
  const std::uint64_t n = grid_size(mhat, q, grid_budget);
  Grid g{m, static_cast<std::uint64_t>(mhat), q, {}};
  std::uint64_t s = 1;
  for (int l = 0; l < q; ++l, s *= g.mhat) g.strides.push_back(s);

  // Depth-first over colour choices, propagating forced colours at every node.
  // The very first choice only tries colour 0: permuting colours preserves
  // the covering property.
  std::vector<Frame> stack;
  std::vector<int> cur(n, -1);
  std::uint64_t nodes = 0;
  for (;;) {
    auto open = std::find(cur.begin(), cur.end(), -1);
    if (open == cur.end()) break;
    const auto point = static_cast<std::uint64_t>(open - cur.begin());
    const bool untouched = std::all_of(cur.begin(), cur.end(), [](int v) { return v < 0; });
    stack.push_back(Frame{cur, point, 0, untouched ? 1 : m});
    for (;;) {
      if (stack.empty()) return std::nullopt;
      Frame& top = stack.back();
      if (top.next >= top.limit) {
        stack.pop_back();
        continue;
      }
      cur = top.vals;
      cur[top.point] = top.next++;
      if (++nodes > node_budget) {
        throw BudgetExceeded("gadget search exceeded " + std::to_string(node_budget) + " nodes");
      }
      if (propagate(g, cur)) break;
    }
  }
  std::vector<std::uint8_t> values(cur.begin(), cur.end());
  GadgetTable t(m, mhat, q, std::move(values));
  if (!verify_star(t, grid_budget).verified) {
    throw std::logic_error("exhaustive gadget search produced a table that fails verification");
  }
  return t;
}

LllSearchResult search_lll(int m, int mhat, int q, std::uint64_t seed, std::uint64_t max_rounds,
                           std::uint64_t grid_budget) {
  if (m < 1 || m > 255 || mhat < 2) throw InvalidInput("gadget search needs 1 <= m <= 255 and mhat >= 2");
  const std::uint64_t n = grid_size(mhat, q, grid_budget);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> colour(0, m - 1);
  GadgetTable t = GadgetTable::constant(m, mhat, q, 0);
  for (std::uint64_t x = 0; x < n; ++x) t.set(x, colour(rng));

  LllSearchResult r;
  const auto side = static_cast<std::uint64_t>(mhat);
  for (;;) {
    std::optional<std::uint64_t> bad;
    for (std::uint64_t x = 0; x < n; ++x) {
      if (bad_vertex(t, x)) {
        bad = x;
        break;
      }
    }
    if (!bad) break;
    if (r.rounds == max_rounds) return r;
    ++r.rounds;
    const std::uint64_t x = *bad;
    t.set(x, colour(rng));
    for (int l = 0; l < q; ++l) {
      const std::uint64_t stride = t.stride(l);
      const std::uint64_t coord = (x / stride) % side;
      const std::uint64_t base = x - coord * stride;
      for (std::uint64_t z = 0; z < side; ++z) {
        if (z != coord) t.set(base + z * stride, colour(rng));
      }
    }
  }
  verify_star(t, grid_budget);
  r.table = std::move(t);
  return r;
}

std::uint64_t lll_sufficient_q(int m, int mhat) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  if (m < 1 || mhat < 1) throw InvalidInput("need m >= 1 and mhat >= 1");
  if (m == 1) return 1;
  Float v = Float(16) * boost::multiprecision::pow(Float(m), mhat - 1) * Float(mhat) *
            boost::multiprecision::log(Float(m));
  const Float slack("1e-40");
  Float lo = boost::multiprecision::ceil(v * (1 - slack));
  Float hi = boost::multiprecision::ceil(v * (1 + slack));
  if (lo != hi) throw Error("could not certify the ceiling of the sufficient group size");
  if (hi > Float(std::numeric_limits<std::uint64_t>::max())) throw Overflow("sufficient group size too large");
  return hi.convert_to<std::uint64_t>();
}

LllBounds lll_bounds(int m, int mhat, std::uint64_t q) {
  if (m < 1 || mhat < 1) throw InvalidInput("need m >= 1 and mhat >= 1");
  LllBounds b;
  b.lambda = std::pow(1.0 / m, mhat - 1);
  b.p = m * std::exp(-b.lambda * static_cast<double>(q));
  const double qd = static_cast<double>(q);
  b.d = qd * qd * mhat * mhat - 1;
  b.holds = std::exp(1.0) * (b.d + 1) * b.p <= 1.0;
  return b;
}

}  // namespace nwr
