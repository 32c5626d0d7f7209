#include "nwr/gadget.hpp"

#include <sstream>

#include "nwr/error.hpp"
#include "nwr/game_io.hpp"

namespace nwr {

struct StarAccess {
  static void set_verified(GadgetTable& t, bool v) { t.verified_ = v; }
};

std::uint64_t grid_size(int mhat, int q, std::uint64_t budget) {
  if (mhat < 1 || q < 1) throw InvalidInput("gadget grid needs mhat >= 1 and q >= 1");
  std::uint64_t total = 1;
  for (int l = 0; l < q; ++l) {
    if (total > budget / static_cast<std::uint64_t>(mhat)) {
      throw BudgetExceeded("gadget grid " + std::to_string(mhat) + "^" + std::to_string(q) +
                           " exceeds the budget of " + std::to_string(budget) + " points");
    }
    total *= static_cast<std::uint64_t>(mhat);
  }
  return total;
}

GadgetTable::GadgetTable(int m, int mhat, int q, std::vector<std::uint8_t> values)
    : m_(m), mhat_(mhat), q_(q), values_(std::move(values)) {
  if (m < 1 || m > 255) throw InvalidInput("gadget colour count must be in 1..255");
  if (mhat < 2) throw InvalidInput("gadget needs mhat >= 2");
  std::uint64_t total = grid_size(mhat, q, std::uint64_t{1} << 40);
  if (values_.size() != total) {
    throw InvalidInput("gadget table has " + std::to_string(values_.size()) + " values, grid has " +
                       std::to_string(total) + " points");
  }
  for (auto v : values_) {
    if (v >= m) throw InvalidInput("gadget value " + std::to_string(v) + " outside 0.." + std::to_string(m - 1));
  }
  std::uint64_t s = 1;
  for (int l = 0; l < q; ++l) {
    strides_.push_back(s);
    s *= static_cast<std::uint64_t>(mhat);
  }
}

GadgetTable GadgetTable::constant(int m, int mhat, int q, int colour) {
  std::uint64_t total = grid_size(mhat, q, std::uint64_t{1} << 40);
  return GadgetTable(m, mhat, q, std::vector<std::uint8_t>(total, static_cast<std::uint8_t>(colour)));
}

void GadgetTable::set(std::uint64_t index, int colour) {
  if (colour < 0 || colour >= m_) throw InvalidInput("gadget colour out of range");
  values_.at(index) = static_cast<std::uint8_t>(colour);
  verified_ = false;
}

std::uint64_t GadgetTable::index_of(std::span<const int> point) const {
  if (point.size() != static_cast<std::size_t>(q_)) throw InvalidInput("grid point has wrong dimension");
  std::uint64_t index = 0;
  for (int l = q_; l-- > 0;) {
    int c = point[static_cast<std::size_t>(l)];
    if (c < 0 || c >= mhat_) throw InvalidInput("grid coordinate out of range");
    index = index * static_cast<std::uint64_t>(mhat_) + static_cast<std::uint64_t>(c);
  }
  return index;
}

std::vector<int> GadgetTable::point_at(std::uint64_t index) const {
  std::vector<int> p(static_cast<std::size_t>(q_));
  for (auto& c : p) {
    c = static_cast<int>(index % static_cast<std::uint64_t>(mhat_));
    index /= static_cast<std::uint64_t>(mhat_);
  }
  return p;
}

std::optional<int> bad_vertex(const GadgetTable& t, std::uint64_t index) {
  const int own = t.at(index);
  const auto mhat = static_cast<std::uint64_t>(t.mhat());
  // covered[k]: some punctured line through x is entirely colour k.
  std::vector<bool> covered(static_cast<std::size_t>(t.m()), false);
  for (int l = 0; l < t.q(); ++l) {
    const std::uint64_t stride = t.stride(l);
    const std::uint64_t coord = (index / stride) % mhat;
    const std::uint64_t base = index - coord * stride;
    int colour = -1;
    bool mono = true;
    for (std::uint64_t z = 0; z < mhat && mono; ++z) {
      if (z == coord) continue;
      int c = t.at(base + z * stride);
      if (colour < 0) {
        colour = c;
      } else if (c != colour) {
        mono = false;
      }
    }
    if (mono) covered[static_cast<std::size_t>(colour)] = true;
  }
  for (int k = 0; k < t.m(); ++k) {
    if (k != own && !covered[static_cast<std::size_t>(k)]) return k;
  }
  return std::nullopt;
}

StarVerdict verify_star(GadgetTable& t, std::uint64_t budget) {
  grid_size(t.mhat(), t.q(), budget);
  StarVerdict v;
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    if (auto k = bad_vertex(t, x)) {
      v.point = x;
      v.colour = *k;
      StarAccess::set_verified(t, false);
      return v;
    }
  }
  v.verified = true;
  StarAccess::set_verified(t, true);
  return v;
}

std::uint64_t reduction_group_size(int mhat) {
  if (mhat < 1 || mhat > 56) throw InvalidInput("mhat out of range");
  return 6 * static_cast<std::uint64_t>(mhat) * (std::uint64_t{1} << mhat);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

int header_field(const std::string& word, std::string_view key, const std::string& source,
                 std::size_t line) {
  std::string prefix = std::string(key) + "=";
  if (word.rfind(prefix, 0) != 0) {
    throw ParseError(source, line, "expected " + prefix + "<value>, got '" + word + "'");
  }
  try {
    std::size_t used = 0;
    int v = std::stoi(word.substr(prefix.size()), &used);
    if (used != word.size() - prefix.size() || v < 0) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, "bad value in '" + word + "'");
  }
}

}  // namespace

GadgetTable parse_gadget(std::string_view text, const std::string& source) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  int m = 0, mhat = 0, q = 0, claimed = 0;
  std::size_t header_line = 0;
  std::vector<std::uint8_t> values;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    if (!have_header) {
      if (w.size() != 5 || w[0] != "gadget") {
        throw ParseError(source, line_no, "expected 'gadget m=<m> mhat=<mhat> q=<q> verified=<0|1>'");
      }
      m = header_field(w[1], "m", source, line_no);
      mhat = header_field(w[2], "mhat", source, line_no);
      q = header_field(w[3], "q", source, line_no);
      claimed = header_field(w[4], "verified", source, line_no);
      if (claimed > 1) throw ParseError(source, line_no, "verified must be 0 or 1");
      if (m < 1 || m > 255 || mhat < 2 || q < 1) {
        throw ParseError(source, line_no, "need 1 <= m <= 255, mhat >= 2, q >= 1");
      }
      header_line = line_no;
      have_header = true;
      continue;
    }
    for (const auto& s : w) {
      int v = -1;
      try {
        std::size_t used = 0;
        v = std::stoi(s, &used);
        if (used != s.size()) v = -1;
      } catch (const std::exception&) {
      }
      if (v < 0 || v >= m) throw ParseError(source, line_no, "bad gadget value '" + s + "'");
      values.push_back(static_cast<std::uint8_t>(v));
    }
  }
  if (!have_header) throw ParseError(source, 0, "missing gadget header");
  std::uint64_t expected = 0;
  try {
    expected = grid_size(mhat, q);
  } catch (const BudgetExceeded& e) {
    throw ParseError(source, header_line, e.what());
  }
  if (values.size() != expected) {
    throw ParseError(source, 0, "expected " + std::to_string(expected) + " values, got " +
                                    std::to_string(values.size()));
  }
  GadgetTable t(m, mhat, q, std::move(values));
  if (claimed == 1 && !verify_star(t).verified) {
    throw ParseError(source, header_line, "table is marked verified but fails the covering property");
  }
  return t;
}

GadgetTable load_gadget(const std::string& path) { return parse_gadget(read_file(path), path); }

std::string serialize(const GadgetTable& t) {
  std::ostringstream out;
  out << "gadget m=" << t.m() << " mhat=" << t.mhat() << " q=" << t.q()
      << " verified=" << (t.verified() ? 1 : 0) << "\n";
  auto values = t.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << static_cast<int>(values[k]);
    out << ((k + 1) % static_cast<std::size_t>(t.mhat()) == 0 ? "\n" : " ");
  }
  return out.str();
}

}  // namespace nwr
