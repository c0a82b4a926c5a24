#include "splb/bell.hpp"

#include <cmath>

#include "splb/errors.hpp"

namespace splb {

namespace {

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i)
    v = v * (n - i) / (i + 1);
  return v;
}

// Fills entry idx = m * d + l of the candidate matrix; each unit in row m
// costs m + 1 of the remaining weight budget.
void enumerate(int r, int d, int idx, std::vector<int>& col_left, int weight_left, FaaTerm& current,
               std::vector<FaaTerm>& out) {
  if (idx == r * d) {
    bool done = (weight_left == 0);
    for (int l = 0; l < d && done; ++l)
      done = (col_left[l] == 0);
    if (done)
      out.push_back(current);
    return;
  }
  const int order = idx / d + 1;
  const int l = idx % d;
  const int limit = std::min(col_left[l], weight_left / order);
  for (int v = 0; v <= limit; ++v) {
    current[idx] = v;
    col_left[l] -= v;
    enumerate(r, d, idx + 1, col_left, weight_left - order * v, current, out);
    col_left[l] += v;
    current[idx] = 0;
  }
}

} // namespace

double bell(int r, int j, const std::vector<double>& x) {
  if (r < 1 || j < 1 || j > r)
    throw Error("invalid-order", "bell polynomial needs 1 <= j <= r");
  if (static_cast<int>(x.size()) < r - j + 1)
    throw Error("invalid-data", "bell polynomial needs r - j + 1 arguments");

  // table[i][c] = B_{i,c} for c <= j.
  std::vector<std::vector<double>> table(r + 1, std::vector<double>(j + 1, 0.0));
  table[0][0] = 1.0;
  for (int c = 1; c <= j; ++c) {
    for (int rr = c; rr <= r; ++rr) {
      double sum = 0.0;
      for (int i = c - 1; i <= rr - 1; ++i)
        sum += binomial(rr, i) * x[rr - i - 1] * table[i][c - 1];
      table[rr][c] = sum / c;
    }
  }
  return table[r][j];
}

std::vector<FaaTerm> faa_index_set(int r, const std::vector<int>& j) {
  const int d = static_cast<int>(j.size());
  if (d < 1)
    throw Error("invalid-data", "need at least one direction");
  int total = 0;
  for (int l = 0; l < d; ++l) {
    if (j[l] < 0)
      throw Error("invalid-order", "multi-index entries must be nonnegative");
    total += j[l];
  }
  if (total < 1 || total > r)
    throw Error("invalid-order", "need 1 <= |j| <= r");

  std::vector<FaaTerm> out;
  FaaTerm current(static_cast<std::size_t>(r) * d, 0);
  std::vector<int> col_left = j;
  enumerate(r, d, 0, col_left, r, current, out);
  return out;
}

double faa_coefficient(int r, int d, const FaaTerm& k) {
  if (static_cast<int>(k.size()) != r * d)
    throw Error("invalid-data", "term size must be r * d");
  double log_c = std::lgamma(r + 1.0);
  for (int m = 0; m < r; ++m) {
    const double log_mfact = std::lgamma(m + 2.0);
    for (int l = 0; l < d; ++l) {
      const int e = k[static_cast<std::size_t>(m) * d + l];
      log_c -= std::lgamma(e + 1.0) + e * log_mfact;
    }
  }
  return std::exp(log_c);
}

} // namespace splb
