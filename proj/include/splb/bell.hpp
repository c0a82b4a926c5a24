#pragma once

#include <vector>

namespace splb {

/// Partial exponential Bell polynomial B_{r,j}(x_1, ..., x_{r-j+1}) via the
/// recurrence B_{r,j} = (1/j) sum_{i=j-1}^{r-1} binom(r,i) x_{r-i} B_{i,j-1},
/// with B_{0,0} = 1 and B_{r,0} = 0 for r >= 1.  Requires 1 <= j <= r and at
/// least r - j + 1 entries in x.
double bell(int r, int j, const std::vector<double>& x);

/// One admissible derivative-partition in the higher-order chain rule: a
/// nonnegative r x d matrix k (row-major), where k[m][l] counts the factors
/// (d_i^{m+1} G_{l+1}) in the term.
using FaaTerm = std::vector<int>;

/// All nonnegative integer r x d matrices whose column sums equal j and whose
/// order-weighted total sum_m m * (row m sum) equals r.  Requires
/// 1 <= j_1 + ... + j_d <= r.
std::vector<FaaTerm> faa_index_set(int r, const std::vector<int>& j);

/// Multinomial coefficient of a term: r! * prod_{m,l} 1 / (k[m][l]! * (m!)^k[m][l]).
double faa_coefficient(int r, int d, const FaaTerm& k);

} // namespace splb
