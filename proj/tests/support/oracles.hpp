#pragma once

// Independent re-derivations used as ground truth by the tests. Nothing here
// calls into the library's arithmetic; inputs and outputs are plain values.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Amplitudes = std::vector<cd>;
using Matrix = std::vector<std::vector<cd>>;

// ---------------------------------------------------------------- GF(2^m)

inline int degree(std::uint64_t p) {
  int d = -1;
  for (int i = 0; i < 64; ++i) {
    if ((p >> i) & 1U) {
      d = i;
    }
  }
  return d;
}

// Shift-and-add with reduction after every doubling.
inline std::uint64_t gf_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  const int m = degree(modulus);
  std::uint64_t acc = 0;
  for (int i = 0; i < m; ++i) {
    if ((b >> i) & 1U) {
      acc ^= a;
    }
    a <<= 1;
    if ((a >> m) & 1U) {
      a ^= modulus;
    }
  }
  return acc;
}

// Carry-less product without any reduction.
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  for (int i = 0; i < 32; ++i) {
    if ((b >> i) & 1U) {
      r ^= a << i;
    }
  }
  return r;
}

// Irreducible iff no product of two non-constant polynomials equals p.
inline bool irreducible_by_products(std::uint64_t p) {
  const int d = degree(p);
  if (d < 1) {
    return false;
  }
  for (std::uint64_t a = 2; a < (std::uint64_t{1} << d); ++a) {
    for (std::uint64_t b = 2; b < (std::uint64_t{1} << d); ++b) {
      if (degree(a) + degree(b) == d && clmul(a, b) == p) {
        return false;
      }
    }
  }
  return true;
}

inline std::uint64_t smallest_irreducible(int m) {
  for (std::uint64_t p = std::uint64_t{1} << m; p < (std::uint64_t{2} << m); ++p) {
    if (irreducible_by_products(p)) {
      return p;
    }
  }
  return 0;
}

// Bit string (first char = constant term) <-> integer coefficients.
inline std::uint64_t coeffs(const std::string& bits) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v |= std::uint64_t{1} << i;
    }
  }
  return v;
}

inline std::string coeff_string(std::uint64_t v, int m) {
  std::string s;
  for (int i = 0; i < m; ++i) {
    s += ((v >> i) & 1U) ? '1' : '0';
  }
  return s;
}

// ---------------------------------------------------------------- states

inline std::size_t bit_of(std::size_t index, int qubit, int q) { return (index >> (q - 1 - qubit)) & 1U; }

inline Matrix gate_matrix(char g) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (g) {
    case 'X':
      return {{0, 1}, {1, 0}};
    case 'Z':
      return {{1, 0}, {0, -1}};
    default:
      return {{s, s}, {s, -s}};
  }
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.size() * b.size(), std::vector<cd>(a[0].size() * b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[0].size(); ++j) {
      for (std::size_t k = 0; k < b.size(); ++k) {
        for (std::size_t l = 0; l < b[0].size(); ++l) {
          out[i * b.size() + k][j * b[0].size() + l] = a[i][j] * b[k][l];
        }
      }
    }
  }
  return out;
}

// Full 2^q x 2^q operator for one gate on one qubit, qubit 0 leftmost.
inline Matrix embed(char g, int qubit, int q) {
  Matrix m{{1}};
  const Matrix id{{1, 0}, {0, 1}};
  for (int i = 0; i < q; ++i) {
    m = kron(m, i == qubit ? gate_matrix(g) : id);
  }
  return m;
}

inline Amplitudes apply(const Matrix& m, const Amplitudes& v) {
  Amplitudes out(v.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      out[i] += m[i][j] * v[j];
    }
  }
  return out;
}

inline cd inner(const Amplitudes& a, const Amplitudes& b) {
  cd s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += std::conj(a[i]) * b[i];
  }
  return s;
}

inline bool same_ray(const Amplitudes& a, const Amplitudes& b, double tol = 1e-10) {
  return std::abs(std::norm(inner(a, b)) - 1.0) <= tol;
}

// (|y,0> + (-1)^z |~y,1>)/sqrt(2) on k qubits; y has k-1 bits, y[0] leftmost.
inline Amplitudes phi(const std::vector<int>& y, int z) {
  const int k = static_cast<int>(y.size()) + 1;
  Amplitudes v(std::size_t{1} << k);
  std::size_t a = 0;
  std::size_t b = 0;
  for (int i = 0; i < k - 1; ++i) {
    a = (a << 1) | static_cast<std::size_t>(y[static_cast<std::size_t>(i)]);
    b = (b << 1) | static_cast<std::size_t>(1 - y[static_cast<std::size_t>(i)]);
  }
  a = a << 1;
  b = (b << 1) | 1U;
  v[a] += 1.0 / std::sqrt(2.0);
  v[b] += (z ? -1.0 : 1.0) / std::sqrt(2.0);
  return v;
}

// Closed form of the Sum2 message after both local steps, for padded inputs
// x[j] = (x_j^1, x_j^2) and randomness r: (|x^1 + r> + (-1)^{sum x^2} |x^1 + r + 1>)/sqrt 2.
inline Amplitudes sum2_closed_form(const std::vector<std::pair<int, int>>& x, const std::vector<int>& r) {
  const int k = static_cast<int>(x.size());
  std::size_t a = 0;
  std::size_t b = 0;
  int phase = 0;
  for (int j = 0; j < k; ++j) {
    const int bit = x[static_cast<std::size_t>(j)].first ^ r[static_cast<std::size_t>(j)];
    a = (a << 1) | static_cast<std::size_t>(bit);
    b = (b << 1) | static_cast<std::size_t>(bit ^ 1);
    phase ^= x[static_cast<std::size_t>(j)].second;
  }
  Amplitudes v(std::size_t{1} << k);
  v[a] += 1.0 / std::sqrt(2.0);
  v[b] += (phase ? -1.0 : 1.0) / std::sqrt(2.0);
  return v;
}

// Closed form of the GEQ message: block i is the Sum2 closed form on the masked
// bits (a_j[2i], a_j[2i+1]) with randomness r^i; qubit (party j, block i) sits
// at position j*l + i.
inline Amplitudes geq_closed_form(const std::vector<std::string>& masked, const std::vector<std::vector<int>>& r,
                                  int l) {
  const int k = static_cast<int>(masked.size());
  const int q = k * l;
  Amplitudes v(std::size_t{1} << q, 0.0);
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << l); ++pattern) {
    std::size_t index = 0;
    cd amp = 1.0;
    for (int i = 0; i < l; ++i) {
      const int second = static_cast<int>((pattern >> (l - 1 - i)) & 1U);
      int phase = 0;
      for (int j = 0; j < k; ++j) {
        const auto& a = masked[static_cast<std::size_t>(j)];
        const int xbit = (a[static_cast<std::size_t>(2 * i)] - '0') ^ r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        phase ^= a[static_cast<std::size_t>(2 * i + 1)] - '0';
        const int bit = xbit ^ second;
        index |= static_cast<std::size_t>(bit) << (q - 1 - (j * l + i));
      }
      amp *= (second && phase ? -1.0 : 1.0) / std::sqrt(2.0);
    }
    v[index] += amp;
  }
  return v;
}

// Amplitude of |K>|L> after the DJ phase oracles and Hadamards:
// n^{-3/2} sum_i (-1)^{x_i + y_i + i.(K xor L)}.
inline double dj_amplitude(const std::string& x, const std::string& y, std::size_t kk, std::size_t ll) {
  const std::size_t n = x.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    int e = (x[i] - '0') ^ (y[i] - '0');
    e ^= __builtin_popcountll(i & (kk ^ ll)) & 1;
    s += e ? -1.0 : 1.0;
  }
  return s / std::pow(static_cast<double>(n), 1.5);
}

// ---------------------------------------------------------------- tables

using Table = std::vector<std::vector<std::optional<int>>>;
using Dist = std::vector<std::vector<double>>;

inline std::vector<std::vector<std::size_t>> ordered_tuples(std::size_t n, std::size_t max_len) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty()) {
      out.push_back(cur);
    }
    if (cur.size() == max_len) {
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(cur.begin(), cur.end(), i) == cur.end()) {
        cur.push_back(i);
        self(self);
        cur.pop_back();
      }
    }
  };
  rec(rec);
  return out;
}

// Literal definition: every ordered pair of rectangles with equal shape.
inline double alpha_literal(const Table& f, const Dist& mu, std::size_t cap = 64) {
  const auto rows = ordered_tuples(f.size(), std::min(cap, f.size()));
  const auto cols = ordered_tuples(f[0].size(), std::min(cap, f[0].size()));
  double best = 0.0;
  for (const auto& r1 : rows) {
    for (const auto& r2 : rows) {
      if (r1.size() != r2.size()) {
        continue;
      }
      bool row_disjoint = true;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        row_disjoint = row_disjoint && r1[i] != r2[i];
      }
      for (const auto& c1 : cols) {
        for (const auto& c2 : cols) {
          if (c1.size() != c2.size()) {
            continue;
          }
          bool col_disjoint = true;
          for (std::size_t j = 0; j < c1.size(); ++j) {
            col_disjoint = col_disjoint && c1[j] != c2[j];
          }
          if (!row_disjoint && !col_disjoint) {
            continue;
          }
          bool similar = true;
          double m1 = 0.0;
          double m2 = 0.0;
          for (std::size_t i = 0; i < r1.size() && similar; ++i) {
            for (std::size_t j = 0; j < c1.size(); ++j) {
              if (f[r1[i]][c1[j]] != f[r2[i]][c2[j]]) {
                similar = false;
                break;
              }
              m1 += mu[r1[i]][c1[j]];
              m2 += mu[r2[i]][c2[j]];
            }
          }
          if (similar) {
            best = std::max(best, std::min(m1, m2));
          }
        }
      }
    }
  }
  return best;
}

// 1 - sum_x mu(x)^2 / mu(y)^2 per class, minimum over non-empty classes.
inline double beta_collision(const Table& f, const Dist& mu) {
  double best = 2.0;
  for (int y = 0; y <= 1; ++y) {
    double mass = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = 0; j < f[i].size(); ++j) {
        if (f[i][j] == y) {
          mass += mu[i][j];
          sq += mu[i][j] * mu[i][j];
        }
      }
    }
    if (mass > 0.0) {
      best = std::min(best, 1.0 - sq / (mass * mass));
    }
  }
  return best;
}

inline bool non_degenerate_total(const Table& f) {
  const std::set<std::vector<std::optional<int>>> rows(f.begin(), f.end());
  std::set<std::vector<std::optional<int>>> cols;
  for (std::size_t j = 0; j < f[0].size(); ++j) {
    std::vector<std::optional<int>> c;
    for (const auto& row : f) {
      c.push_back(row[j]);
    }
    cols.insert(c);
  }
  return rows.size() == f.size() && cols.size() == f[0].size();
}

// Largest subset of pairwise-adjacent vertices by subset enumeration.
inline std::size_t clique_by_subsets(const std::vector<std::vector<bool>>& adj) {
  const std::size_t n = adj.size();
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(s));
    if (size <= best) {
      continue;
    }
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u) {
      for (std::size_t v = u + 1; v < n && ok; ++v) {
        if (((s >> u) & 1U) && ((s >> v) & 1U) && !adj[u][v]) {
          ok = false;
        }
      }
    }
    if (ok) {
      best = size;
    }
  }
  return best;
}

// ---------------------------------------------------------------- randomness

// Seeded generator for property tests; deliberately separate from the library's.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  int bit() { return static_cast<int>(eng_() & 1U); }
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  std::string bits(std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
      s += bit() ? '1' : '0';
    }
    return s;
  }
  Amplitudes state(int q) {
    Amplitudes v(std::size_t{1} << q);
    double norm = 0.0;
    for (auto& a : v) {
      a = cd(unit() - 0.5, unit() - 0.5);
      norm += std::norm(a);
    }
    for (auto& a : v) {
      a /= std::sqrt(norm);
    }
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
