#include "psqm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "psqm/bits.hpp"
#include "psqm/max_clique.hpp"
#include "psqm/protocols.hpp"
#include "psqm/rng.hpp"

namespace psqm::bounds {

FunctionTable::FunctionTable(std::vector<std::string> rows, std::vector<std::string> cols,
                             std::vector<std::vector<Entry>> entries)
    : rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
  if (entries_.size() != rows_.size()) {
    throw std::invalid_argument("function table: row count does not match the row labels");
  }
  for (const auto& row : entries_) {
    if (row.size() != cols_.size()) {
      throw std::invalid_argument("function table: column count does not match the column labels");
    }
    for (const auto& e : row) {
      if (e && *e != 0 && *e != 1) {
        throw std::invalid_argument("function table: entries must be 0, 1 or undefined");
      }
    }
  }
}

bool FunctionTable::is_total() const {
  for (const auto& row : entries_) {
    for (const auto& e : row) {
      if (!e) {
        return false;
      }
    }
  }
  return true;
}

InputDistribution::InputDistribution(std::size_t rows, std::size_t cols, std::vector<double> probabilities)
    : rows_(rows), cols_(cols), p_(std::move(probabilities)) {
  if (p_.size() != rows * cols) {
    throw std::invalid_argument("distribution size does not match the domain");
  }
  double total = 0.0;
  for (double p : p_) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("distribution has a negative or NaN entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution does not sum to 1");
  }
}

InputDistribution InputDistribution::uniform(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("uniform distribution over an empty domain");
  }
  return {rows, cols, std::vector<double>(rows * cols, 1.0 / static_cast<double>(rows * cols))};
}

InputDistribution InputDistribution::point_mass(std::size_t rows, std::size_t cols, std::size_t row,
                                                std::size_t col) {
  if (row >= rows || col >= cols) {
    throw std::out_of_range("point mass outside the domain");
  }
  std::vector<double> p(rows * cols, 0.0);
  p[row * cols + col] = 1.0;
  return {rows, cols, std::move(p)};
}

std::vector<double> InputDistribution::row_marginal() const {
  std::vector<double> m(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      m[i] += at(i, j);
    }
  }
  return m;
}

std::vector<double> InputDistribution::col_marginal() const {
  std::vector<double> m(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      m[j] += at(i, j);
    }
  }
  return m;
}

namespace {

void require_matching(const FunctionTable& f, const InputDistribution& mu) {
  if (f.row_count() != mu.row_count() || f.col_count() != mu.col_count()) {
    throw std::invalid_argument("distribution and table have different domains");
  }
}

std::vector<std::size_t> support(const std::vector<double>& marginal) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    if (marginal[i] > 0.0) {
      s.push_back(i);
    }
  }
  return s;
}

void require_unique(const std::vector<std::size_t>& idx, std::size_t limit) {
  std::set<std::size_t> seen;
  for (auto i : idx) {
    if (i >= limit) {
      throw std::out_of_range("rectangle index outside the table");
    }
    if (!seen.insert(i).second) {
      throw std::invalid_argument("rectangle repeats an index");
    }
  }
}

}  // namespace

void validate_rectangle(const Rectangle& r, std::size_t rows, std::size_t cols) {
  require_unique(r.rows, rows);
  require_unique(r.cols, cols);
}

double rectangle_mass(const Rectangle& r, const InputDistribution& mu) {
  validate_rectangle(r, mu.row_count(), mu.col_count());
  double total = 0.0;
  for (auto i : r.rows) {
    for (auto j : r.cols) {
      total += mu.at(i, j);
    }
  }
  return total;
}

bool is_non_degenerate(const FunctionTable& f, const InputDistribution& mu) {
  require_matching(f, mu);
  const auto rows = support(mu.row_marginal());
  const auto cols = support(mu.col_marginal());
  for (auto i : rows) {
    for (auto j : cols) {
      if (!f.at(i, j)) {
        throw std::invalid_argument("non-degeneracy needs F defined on Supp(mu1) x Supp(mu2)");
      }
    }
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      const bool separated = std::any_of(cols.begin(), cols.end(), [&](std::size_t j) {
        return f.at(rows[a], j) != f.at(rows[b], j);
      });
      if (!separated) {
        return false;
      }
    }
  }
  for (std::size_t a = 0; a < cols.size(); ++a) {
    for (std::size_t b = a + 1; b < cols.size(); ++b) {
      const bool separated = std::any_of(rows.begin(), rows.end(), [&](std::size_t i) {
        return f.at(i, cols[a]) != f.at(i, cols[b]);
      });
      if (!separated) {
        return false;
      }
    }
  }
  return true;
}

namespace {

// A rectangle pair is a partial injection on rows (a_i -> a'_i) and one on
// columns (b_j -> b'_j). Reordering the pairs of either injection permutes R
// and R' together and changes neither similarity, disjointness nor mass, so
// each injection is enumerated once as a set, with sources in ascending order.
class AlphaSearch {
 public:
  AlphaSearch(const FunctionTable& f, const InputDistribution& mu, std::size_t cap)
      : f_(f), mu_(mu), cap_(cap), nr_(f.row_count()), nc_(f.col_count()) {
    row_mass_ = mu.row_marginal();
  }

  AlphaResult run() {
    row_dfs(0, 0, 0.0, 0.0);
    AlphaResult out;
    if (best_ >= 0.0) {
      out.value = best_;
      out.witness = witness_;
    }
    return out;
  }

 private:
  static constexpr double kSlack = 1e-12;

  bool hopeless(double upper_r, double upper_rp) const {
    return best_ >= 0.0 && std::min(upper_r, upper_rp) <= best_ + kSlack;
  }

  void row_dfs(std::size_t a, std::uint64_t used_dst, double ub_r_taken, double ub_rp_taken) {
    double rest_r = 0.0;
    double rest_rp = 0.0;
    for (std::size_t i = a; i < nr_; ++i) {
      rest_r += row_mass_[i];
    }
    for (std::size_t i = 0; i < nr_; ++i) {
      if (((used_dst >> i) & 1U) == 0) {
        rest_rp += row_mass_[i];
      }
    }
    if (hopeless(ub_r_taken + rest_r, ub_rp_taken + rest_rp)) {
      return;
    }
    if (a == nr_) {
      if (!row_pairs_.empty()) {
        columns_for_rows();
      }
      return;
    }
    if (row_pairs_.size() < cap_) {
      for (std::size_t ap = 0; ap < nr_; ++ap) {
        if ((used_dst >> ap) & 1U) {
          continue;
        }
        row_pairs_.emplace_back(a, ap);
        row_dfs(a + 1, used_dst | (std::uint64_t{1} << ap), ub_r_taken + row_mass_[a], ub_rp_taken + row_mass_[ap]);
        row_pairs_.pop_back();
      }
    }
    row_dfs(a + 1, used_dst, ub_r_taken, ub_rp_taken);
  }

  void columns_for_rows() {
    rows_disjoint_ = std::all_of(row_pairs_.begin(), row_pairs_.end(),
                                 [](const auto& p) { return p.first != p.second; });
    col_mass_r_.assign(nc_, 0.0);
    col_mass_rp_.assign(nc_, 0.0);
    for (std::size_t b = 0; b < nc_; ++b) {
      for (const auto& [x, xp] : row_pairs_) {
        col_mass_r_[b] += mu_.at(x, b);
        col_mass_rp_[b] += mu_.at(xp, b);
      }
    }
    compatible_.assign(nc_ * nc_, 0);
    for (std::size_t b = 0; b < nc_; ++b) {
      for (std::size_t bp = 0; bp < nc_; ++bp) {
        if (!rows_disjoint_ && b == bp) {
          continue;
        }
        const bool same = std::all_of(row_pairs_.begin(), row_pairs_.end(), [&](const auto& p) {
          return f_.at(p.first, b) == f_.at(p.second, bp);
        });
        compatible_[b * nc_ + bp] = same ? 1 : 0;
      }
    }
    col_dfs(0, 0, 0.0, 0.0);
  }

  void col_dfs(std::size_t b, std::uint64_t used_dst, double mass_r, double mass_rp) {
    double rest_r = 0.0;
    double rest_rp = 0.0;
    for (std::size_t j = b; j < nc_; ++j) {
      rest_r += col_mass_r_[j];
    }
    for (std::size_t j = 0; j < nc_; ++j) {
      if (((used_dst >> j) & 1U) == 0) {
        rest_rp += col_mass_rp_[j];
      }
    }
    if (hopeless(mass_r + rest_r, mass_rp + rest_rp)) {
      return;
    }
    if (b == nc_) {
      if (!col_pairs_.empty()) {
        const double value = std::min(mass_r, mass_rp);
        if (best_ < 0.0 || value > best_ + kSlack) {
          best_ = value;
          record_witness();
        }
      }
      return;
    }
    if (col_pairs_.size() < cap_) {
      for (std::size_t bp = 0; bp < nc_; ++bp) {
        if (((used_dst >> bp) & 1U) != 0 || compatible_[b * nc_ + bp] == 0) {
          continue;
        }
        col_pairs_.emplace_back(b, bp);
        col_dfs(b + 1, used_dst | (std::uint64_t{1} << bp), mass_r + col_mass_r_[b],
                mass_rp + col_mass_rp_[bp]);
        col_pairs_.pop_back();
      }
    }
    col_dfs(b + 1, used_dst, mass_r, mass_rp);
  }

  void record_witness() {
    Rectangle r;
    Rectangle rp;
    for (const auto& [x, xp] : row_pairs_) {
      r.rows.push_back(x);
      rp.rows.push_back(xp);
    }
    for (const auto& [y, yp] : col_pairs_) {
      r.cols.push_back(y);
      rp.cols.push_back(yp);
    }
    witness_ = std::make_pair(std::move(r), std::move(rp));
  }

  const FunctionTable& f_;
  const InputDistribution& mu_;
  std::size_t cap_;
  std::size_t nr_;
  std::size_t nc_;
  std::vector<double> row_mass_;
  std::vector<std::pair<std::size_t, std::size_t>> row_pairs_;
  std::vector<std::pair<std::size_t, std::size_t>> col_pairs_;
  bool rows_disjoint_ = false;
  std::vector<double> col_mass_r_;
  std::vector<double> col_mass_rp_;
  std::vector<char> compatible_;
  double best_ = -1.0;
  std::pair<Rectangle, Rectangle> witness_;
};

}  // namespace

AlphaResult alpha(const FunctionTable& f, const InputDistribution& mu, std::optional<std::size_t> size_cap) {
  require_matching(f, mu);
  if (f.row_count() > kAlphaMaxSide || f.col_count() > kAlphaMaxSide) {
    throw std::invalid_argument("alpha: rectangle enumeration is limited to 6x6 tables");
  }
  const std::size_t cap = size_cap.value_or(std::max(f.row_count(), f.col_count()));
  if (cap == 0 || f.row_count() == 0 || f.col_count() == 0) {
    return {};
  }
  return AlphaSearch(f, mu, cap).run();
}

double beta(const FunctionTable& f, const InputDistribution& mu) {
  require_matching(f, mu);
  double result = std::numeric_limits<double>::infinity();
  for (int y = 0; y <= 1; ++y) {
    double same_class = 0.0;
    double distinct = 0.0;
    for (std::size_t i = 0; i < f.row_count(); ++i) {
      for (std::size_t j = 0; j < f.col_count(); ++j) {
        if (f.at(i, j) != y) {
          continue;
        }
        for (std::size_t ip = 0; ip < f.row_count(); ++ip) {
          for (std::size_t jp = 0; jp < f.col_count(); ++jp) {
            if (f.at(ip, jp) != y) {
              continue;
            }
            const double w = mu.at(i, j) * mu.at(ip, jp);
            same_class += w;
            if (i != ip || j != jp) {
              distinct += w;
            }
          }
        }
      }
    }
    if (same_class > 0.0) {
      result = std::min(result, distinct / same_class);
    }
  }
  if (std::isinf(result)) {
    throw std::invalid_argument("beta: every output class has zero mass");
  }
  return result;
}

double beta_from_classes(std::span<const int> labels, std::span<const double> weights) {
  if (labels.size() != weights.size()) {
    throw std::invalid_argument("beta: labels and weights differ in length");
  }
  // Pr[X != X' | class y] = 1 - sum_x mu(x)^2 / mu(y)^2.
  std::vector<std::pair<int, std::pair<double, double>>> classes;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return c.first == labels[i]; });
    if (it == classes.end()) {
      classes.push_back({labels[i], {0.0, 0.0}});
      it = std::prev(classes.end());
    }
    it->second.first += weights[i];
    it->second.second += weights[i] * weights[i];
  }
  double result = std::numeric_limits<double>::infinity();
  for (const auto& [label, sums] : classes) {
    const auto [mass, collision] = sums;
    if (mass > 0.0) {
      result = std::min(result, 1.0 - collision / (mass * mass));
    }
  }
  if (std::isinf(result)) {
    throw std::invalid_argument("beta: every output class has zero mass");
  }
  return std::max(result, 0.0);
}

double min_entropy(std::span<const double> probabilities) {
  if (probabilities.empty()) {
    throw std::invalid_argument("min-entropy of an empty distribution");
  }
  const double top = *std::max_element(probabilities.begin(), probabilities.end());
  if (!(top > 0.0)) {
    throw std::invalid_argument("min-entropy: no positive mass");
  }
  return top == 1.0 ? 0.0 : -std::log2(top);
}

double min_entropy(const InputDistribution& mu) { return min_entropy(mu.probabilities()); }

LowerBound psqm_lower_bound(const FunctionTable& f, const InputDistribution& mu) {
  if (!is_non_degenerate(f, mu)) {
    throw std::domain_error("F is degenerate under mu");
  }
  LowerBound out;
  out.alpha = alpha(f, mu);
  out.beta = beta(f, mu);
  out.min_entropy = min_entropy(mu);
  if (!(out.beta > 0.0)) {
    throw std::domain_error("beta is zero: no output class has two distinct points");
  }
  const double alpha_term =
      out.alpha.value > 0.0 ? -std::log2(out.alpha.value) : std::numeric_limits<double>::infinity();
  out.value = alpha_term + out.min_entropy + std::log2(out.beta) - 1.0;
  return out;
}

namespace {

SmallGraph conflict_graph(const FunctionTable& f, bool by_rows) {
  const std::size_t n = by_rows ? f.row_count() : f.col_count();
  const std::size_t other = by_rows ? f.col_count() : f.row_count();
  SmallGraph g(static_cast<int>(n));
  auto entry = [&](std::size_t v, std::size_t w) -> const Entry& { return by_rows ? f.at(v, w) : f.at(w, v); };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      for (std::size_t w = 0; w < other; ++w) {
        const auto& eu = entry(u, w);
        const auto& ev = entry(v, w);
        if (eu && ev && *eu != *ev) {
          g.add_edge(static_cast<int>(u), static_cast<int>(v));
          break;
        }
      }
    }
  }
  return g;
}

std::vector<std::size_t> to_indices(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

CliqueSizes exact_smp_clique_sizes(const FunctionTable& f) {
  if (f.row_count() > kCliqueMaxSide || f.col_count() > kCliqueMaxSide) {
    throw std::invalid_argument("clique search is limited to 20 rows and 20 columns");
  }
  CliqueSizes out;
  out.row_clique = to_indices(maximum_clique(conflict_graph(f, true)));
  out.col_clique = to_indices(maximum_clique(conflict_graph(f, false)));
  out.rows = out.row_clique.size();
  out.cols = out.col_clique.size();
  return out;
}

std::size_t distinct_row_count(const FunctionTable& f) {
  std::set<std::vector<Entry>> rows(f.entries().begin(), f.entries().end());
  return rows.size();
}

std::size_t distinct_col_count(const FunctionTable& f) {
  std::set<std::vector<Entry>> cols;
  for (std::size_t j = 0; j < f.col_count(); ++j) {
    std::vector<Entry> col;
    for (std::size_t i = 0; i < f.row_count(); ++i) {
      col.push_back(f.at(i, j));
    }
    cols.insert(std::move(col));
  }
  return cols.size();
}

FunctionTable dj_table(int n) {
  if (n != 2 && n != 4 && n != 8) {
    throw std::invalid_argument("dj_table supports n in {2, 4, 8}");
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::string> labels;
  std::vector<BitString> strings;
  for (std::size_t i = 0; i < size; ++i) {
    strings.push_back(BitString::from_index(i, static_cast<std::size_t>(n)));
    labels.push_back(strings.back().to_string());
  }
  std::vector<std::vector<Entry>> entries(size, std::vector<Entry>(size));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      entries[i][j] = protocols::dj_reference(strings[i], strings[j]);
    }
  }
  return {labels, labels, std::move(entries)};
}

FunctionTable table_from_bits(int n, std::uint64_t bits) {
  if (n < 1 || n > kStatsMaxBits + 1) {
    throw std::invalid_argument("table_from_bits: n out of range");
  }
  const std::size_t size = std::size_t{1} << n;
  if (size * size > 64) {
    throw std::invalid_argument("table_from_bits: table does not fit in 64 bits");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < size; ++i) {
    labels.push_back(BitString::from_index(i, static_cast<std::size_t>(n)).to_string());
  }
  std::vector<std::vector<Entry>> entries(size, std::vector<Entry>(size));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      entries[i][j] = static_cast<int>((bits >> (i * size + j)) & 1U);
    }
  }
  return {labels, labels, std::move(entries)};
}

Summary summarize(std::vector<double> values) {
  Summary s;
  if (values.empty()) {
    return s;
  }
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

namespace {

void require_stats_n(int n) {
  if (n < 1 || n > kStatsMaxBits) {
    throw std::invalid_argument("random function statistics support n in {1, 2}");
  }
}

class StatsAccumulator {
 public:
  explicit StatsAccumulator(int n) { out_.n = n; }

  void add(const FunctionTable& f) {
    const auto mu = InputDistribution::uniform(f.row_count(), f.col_count());
    ++out_.tables;
    const auto a = alpha(f, mu);
    if (a.witness) {
      const std::size_t size = a.witness->first.size();
      out_.max_rectangle_size = std::max(out_.max_rectangle_size.value_or(0), size);
    }
    if (!is_non_degenerate(f, mu)) {
      return;
    }
    ++out_.non_degenerate;
    const double b = beta(f, mu);
    if (b > 0.0) {
      const double alpha_term =
          a.value > 0.0 ? -std::log2(a.value) : std::numeric_limits<double>::infinity();
      bounds_.push_back(alpha_term + min_entropy(mu) + std::log2(b) - 1.0);
    }
  }

  RandomFunctionStats finish() {
    if (out_.tables > 0) {
      out_.fraction_non_degenerate = static_cast<double>(out_.non_degenerate) / static_cast<double>(out_.tables);
    }
    out_.bound = summarize(bounds_);
    return out_;
  }

  RandomFunctionStats& stats() { return out_; }

 private:
  RandomFunctionStats out_;
  std::vector<double> bounds_;
};

}  // namespace

RandomFunctionStats random_function_stats(int n, std::size_t trials, std::uint64_t seed) {
  require_stats_n(n);
  StatsAccumulator acc(n);
  acc.stats().seed = seed;
  Rng rng(seed);
  const std::size_t cells = std::size_t{1} << (2 * n);
  for (std::size_t t = 0; t < trials; ++t) {
    std::uint64_t bits = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      bits |= static_cast<std::uint64_t>(rng.bit()) << c;
    }
    acc.add(table_from_bits(n, bits));
  }
  return acc.finish();
}

RandomFunctionStats exhaustive_function_stats(int n) {
  if (n != 1) {
    throw std::invalid_argument("exhaustive statistics are only available for n = 1");
  }
  StatsAccumulator acc(n);
  acc.stats().exhaustive = true;
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    acc.add(table_from_bits(n, bits));
  }
  return acc.finish();
}

}  // namespace psqm::bounds
