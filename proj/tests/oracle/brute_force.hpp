#pragma once

// Naive possible-worlds simulator used only as a test oracle. It shares no
// code with the engine: worlds are plain int vectors, the model is a
// std::set, and every knowledge query scans the whole set.

#include <set>
#include <vector>

namespace oracle {

using Worlds = std::set<std::vector<int>>;
using Matrix = std::vector<std::vector<int>>;

// 0 = don't know, 1 = yes, 2 = no
inline int knows(const Worlds& model, const Matrix& obs, const std::vector<int>& at, int agent) {
  bool saw_one = false;
  bool saw_zero = false;
  for (const auto& w : model) {
    bool same_view = true;
    for (std::size_t j = 0; j < at.size(); ++j) {
      if (obs[agent][j] == 1 && w[j] != at[j]) {
        same_view = false;
        break;
      }
    }
    if (!same_view) continue;
    if (w[agent] == 1) saw_one = true;
    else saw_zero = true;
  }
  if (saw_one && !saw_zero) return 1;
  if (saw_zero && !saw_one) return 2;
  return 0;
}

inline Worlds all_worlds(int n) {
  Worlds out;
  for (int code = 0; code < (1 << n); ++code) {
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = (code >> i) & 1;
    out.insert(w);
  }
  return out;
}

inline int count_ones(const std::vector<int>& w) {
  int c = 0;
  for (int b : w) c += b;
  return c;
}

// lower=true keeps worlds with at least q ones; otherwise at most q.
inline Worlds announce_bound(const Worlds& model, bool lower, int q) {
  Worlds out;
  for (const auto& w : model) {
    int c = count_ones(w);
    if (lower ? c >= q : c <= q) out.insert(w);
  }
  return out;
}

struct Simulation {
  std::vector<std::vector<int>> answers;  // answers[r][i] for rounds 1..R
  std::vector<std::size_t> sizes;         // model size after the bound, then after each round
};

inline Simulation simulate(const Matrix& obs, const std::vector<int>& actual, bool lower, int q, int rounds) {
  const int n = static_cast<int>(actual.size());
  Worlds model = announce_bound(all_worlds(n), lower, q);
  Simulation sim;
  sim.sizes.push_back(model.size());
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> said(n);
    for (int i = 0; i < n; ++i) said[i] = knows(model, obs, actual, i);
    Worlds next;
    for (const auto& w : model) {
      bool keep = true;
      for (int i = 0; i < n && keep; ++i) keep = knows(model, obs, w, i) == said[i];
      if (keep) next.insert(w);
    }
    model = next;
    sim.answers.push_back(said);
    sim.sizes.push_back(model.size());
  }
  return sim;
}

inline Matrix full_minus_diagonal(int n) {
  Matrix m(n, std::vector<int>(n, 1));
  for (int i = 0; i < n; ++i) m[i][i] = 0;
  return m;
}

}  // namespace oracle
