#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace psqm::bounds {

/// Table entry: 0, 1, or nullopt when the pair is outside the promise.
using Entry = std::optional<int>;

/// Finite, possibly partial, function F: X1 x X2 -> {0, 1}.
class FunctionTable {
 public:
  /// Throws unless entries is rows x cols and every defined entry is 0 or 1.
  FunctionTable(std::vector<std::string> rows, std::vector<std::string> cols,
                std::vector<std::vector<Entry>> entries);

  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return cols_.size(); }
  const std::vector<std::string>& rows() const { return rows_; }
  const std::vector<std::string>& cols() const { return cols_; }
  const Entry& at(std::size_t row, std::size_t col) const { return entries_[row][col]; }
  const std::vector<std::vector<Entry>>& entries() const { return entries_; }
  bool is_total() const;

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> cols_;
  std::vector<std::vector<Entry>> entries_;
};

/// Distribution over X1 x X2, stored row-major.
class InputDistribution {
 public:
  /// Throws unless probabilities are non-negative and sum to 1 within 1e-12.
  InputDistribution(std::size_t rows, std::size_t cols, std::vector<double> probabilities);

  static InputDistribution uniform(std::size_t rows, std::size_t cols);
  static InputDistribution point_mass(std::size_t rows, std::size_t cols, std::size_t row, std::size_t col);

  std::size_t row_count() const { return rows_; }
  std::size_t col_count() const { return cols_; }
  double at(std::size_t row, std::size_t col) const { return p_[row * cols_ + col]; }
  const std::vector<double>& probabilities() const { return p_; }
  std::vector<double> row_marginal() const;
  std::vector<double> col_marginal() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> p_;
};

/// Ordered tuples of distinct row and column indices.
struct Rectangle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  std::size_t size() const { return rows.size() * cols.size(); }
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

/// Throws unless the rectangle has no repeated index and fits the table.
void validate_rectangle(const Rectangle& r, std::size_t rows, std::size_t cols);
double rectangle_mass(const Rectangle& r, const InputDistribution& mu);

/// Every two distinct support rows differ in some support column, and vice versa.
/// Throws if an entry in Supp(mu1) x Supp(mu2) is undefined.
bool is_non_degenerate(const FunctionTable& f, const InputDistribution& mu);

struct AlphaResult {
  double value = 0.0;
  /// First maximizing pair found; absent when no similar disjoint pair exists.
  std::optional<std::pair<Rectangle, Rectangle>> witness;
};

/// Largest table side accepted by alpha().
inline constexpr std::size_t kAlphaMaxSide = 6;

/// max over similar disjoint rectangle pairs of min(mu(R), mu(R')). Undefined
/// entries compare equal only to undefined entries. size_cap bounds both the
/// number of rows and the number of columns of each rectangle.
AlphaResult alpha(const FunctionTable& f, const InputDistribution& mu,
                  std::optional<std::size_t> size_cap = std::nullopt);

/// min over output classes y of Pr[(X1,X2) != (X1',X2') | both map to y].
/// Classes with zero mass are skipped; throws if every class is empty.
double beta(const FunctionTable& f, const InputDistribution& mu);

/// Same quantity for an explicit list of points: labels[i] is the output class of
/// point i and weights[i] its probability.
double beta_from_classes(std::span<const int> labels, std::span<const double> weights);

double min_entropy(std::span<const double> probabilities);
double min_entropy(const InputDistribution& mu);

struct LowerBound {
  AlphaResult alpha;
  double beta = 0.0;
  double min_entropy = 0.0;
  /// log2(1/alpha) + H_inf - log2(1/beta) - 1; +inf when alpha is 0.
  double value = 0.0;
};

/// Throws std::domain_error if f is degenerate under mu or beta is 0.
LowerBound psqm_lower_bound(const FunctionTable& f, const InputDistribution& mu);

struct CliqueSizes {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_clique;
  std::vector<std::size_t> col_clique;
};

inline constexpr std::size_t kCliqueMaxSide = 20;

/// Maximum cliques of the row and column conflict graphs (two rows adjacent iff
/// some column has both entries defined and different).
CliqueSizes exact_smp_clique_sizes(const FunctionTable& f);

std::size_t distinct_row_count(const FunctionTable& f);
std::size_t distinct_col_count(const FunctionTable& f);

/// DJ_n on n-bit strings: 1 if x = y, 0 at distance n/2, undefined otherwise.
FunctionTable dj_table(int n);

/// Total table over {0,1}^n x {0,1}^n with labels in big-endian order.
FunctionTable table_from_bits(int n, std::uint64_t bits);

struct Summary {
  std::optional<double> min;
  std::optional<double> median;
  std::optional<double> max;
};

Summary summarize(std::vector<double> values);

struct RandomFunctionStats {
  int n = 0;
  bool exhaustive = false;
  std::optional<std::uint64_t> seed;
  std::size_t tables = 0;
  std::size_t non_degenerate = 0;
  std::optional<double> fraction_non_degenerate;
  /// Largest k*l over similar disjoint pairs seen in any table.
  std::optional<std::size_t> max_rectangle_size;
  /// Lower-bound values under uniform mu, over non-degenerate tables only.
  Summary bound;
};

inline constexpr int kStatsMaxBits = 2;

RandomFunctionStats random_function_stats(int n, std::size_t trials, std::uint64_t seed);
/// Every table for n = 1 (16 tables).
RandomFunctionStats exhaustive_function_stats(int n);

}  // namespace psqm::bounds
