#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace persuasion {

// Pairwise "harder than" judgment counts: wins[i][j] is how often item i was
// judged harder (costlier) than item j.
struct PairwiseComparisons {
  int n = 0;
  std::vector<std::vector<long long>> wins;
};

// Fits Bradley-Terry strengths by the minorization-maximization fixed point
//   p_i <- W_i / sum_{j != i} n_ij / (p_i + p_j),
// normalized to the simplex each round. W_i is item i's total wins and n_ij
// the number of comparisons between i and j. The normalized strengths are
// the cost estimates. Requires a connected comparison graph and at least
// one win per item, otherwise the likelihood has no finite maximizer.
inline std::vector<double> fit_bradley_terry(const PairwiseComparisons& comp,
                                             double tol = 1e-10,
                                             int max_iter = 10000) {
  const int n = comp.n;
  if (n < 2) throw std::invalid_argument("need at least two items");
  if (comp.wins.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("wins matrix must be n x n");
  for (int i = 0; i < n; ++i) {
    if (comp.wins[i].size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("wins matrix must be n x n");
    if (comp.wins[i][i] != 0)
      throw std::invalid_argument("diagonal of wins must be zero");
    for (int j = 0; j < n; ++j)
      if (comp.wins[i][j] < 0)
        throw std::invalid_argument("win counts must be nonnegative");
  }

  std::vector<long long> total_wins(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) total_wins[i] += comp.wins[i][j];
  for (int i = 0; i < n; ++i)
    if (total_wins[i] == 0)
      throw std::invalid_argument(
          "item with zero wins makes the model unidentifiable");

  // Connectivity of the comparison graph, by traversal.
  std::vector<char> reached(n, 0);
  std::vector<int> stack = {0};
  reached[0] = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j) {
      if (!reached[j] && comp.wins[i][j] + comp.wins[j][i] > 0) {
        reached[j] = 1;
        stack.push_back(j);
      }
    }
  }
  for (int i = 0; i < n; ++i)
    if (!reached[i])
      throw std::invalid_argument(
          "disconnected comparison graph makes the model unidentifiable");

  std::vector<double> p(n, 1.0 / n);
  std::vector<double> next(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (int i = 0; i < n; ++i) {
      double denom = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const long long n_ij = comp.wins[i][j] + comp.wins[j][i];
        if (n_ij > 0) denom += static_cast<double>(n_ij) / (p[i] + p[j]);
      }
      next[i] = static_cast<double>(total_wins[i]) / denom;
    }
    double sum = 0.0;
    for (double v : next) sum += v;
    double max_change = 0.0;
    for (int i = 0; i < n; ++i) {
      next[i] /= sum;
      max_change = std::max(max_change, std::fabs(next[i] - p[i]));
    }
    p = next;
    if (max_change < tol) return p;
  }
  throw std::runtime_error("Bradley-Terry iteration did not converge");
}

}  // namespace persuasion
