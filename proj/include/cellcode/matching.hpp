#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cellcode {

/// Exact maximum-weight matching on a dense general graph via the blossom
/// method with integral dual variables, O(V^3). Vertices are 1-indexed
/// internally; ids above n are contracted blossoms.
///
/// The decoder only ever needs minimum-weight *perfect* matchings on small
/// complete graphs of syndrome defects, which the wrapper below reduces to
/// this primal-dual core. Optimality is load-bearing: matchings below the
/// true minimum weight would bias logical error rates, so this class is
/// stress-tested against exhaustive pairing enumeration.
class BlossomMatcher {
 public:
  /// Minimum-weight perfect matching on the complete graph with the given
  /// symmetric nonnegative weight matrix. Returns mate[i] for 0-indexed
  /// nodes. Node count must be even.
  std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<std::int64_t>>& w) {
    const int nodes = static_cast<int>(w.size());
    if (nodes % 2 != 0) throw std::invalid_argument("perfect matching needs an even node count");
    std::vector<int> mate(nodes, -1);
    if (nodes == 0) return mate;
    if (nodes == 2) {
      mate[0] = 1;
      mate[1] = 0;
      return mate;
    }

    std::int64_t w_max_in = 0;
    for (int i = 0; i < nodes; ++i)
      for (int j = 0; j < nodes; ++j) {
        if (w[i][j] < 0) throw std::invalid_argument("matching weights must be nonnegative");
        w_max_in = std::max(w_max_in, w[i][j]);
      }
    // Shift weights so that a maximum-weight matching is forced to be
    // perfect: every matched edge is worth more than the heaviest edge
    // times the number of pairs it could displace.
    const std::int64_t shift = w_max_in * (nodes / 2) + 1;

    init(nodes);
    for (int i = 0; i < nodes; ++i)
      for (int j = 0; j < nodes; ++j)
        if (i != j) g_[idx(i + 1, j + 1)] = Edge{i + 1, j + 1, 2 * (shift - w[i][j])};

    run();

    for (int u = 1; u <= n_; ++u) {
      if (match_[u] == 0) throw std::logic_error("blossom matcher failed to produce a perfect matching");
      mate[u - 1] = match_[u] - 1;
    }
    return mate;
  }

 private:
  struct Edge {
    int u = 0, v = 0;
    std::int64_t w = 0;
  };

  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  int n_ = 0, n_x_ = 0, cap_ = 0, stamp_ = 0;
  std::vector<Edge> g_;
  std::vector<std::int64_t> lab_;
  std::vector<int> match_, slack_, st_, pa_, s_, vis_;
  std::vector<std::vector<int>> flower_, flower_from_;
  std::deque<int> q_;

  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * cap_ + b; }

  void init(int nodes) {
    n_ = nodes;
    n_x_ = nodes;
    cap_ = nodes + nodes / 2 + 2;
    g_.assign(static_cast<std::size_t>(cap_) * cap_, Edge{});
    for (int a = 0; a < cap_; ++a)
      for (int b = 0; b < cap_; ++b) g_[idx(a, b)] = Edge{a, b, 0};
    lab_.assign(cap_, 0);
    match_.assign(cap_, 0);
    slack_.assign(cap_, 0);
    st_.assign(cap_, 0);
    pa_.assign(cap_, 0);
    s_.assign(cap_, -1);
    vis_.assign(cap_, 0);
    flower_.assign(cap_, {});
    flower_from_.assign(cap_, std::vector<int>(n_ + 1, 0));
    stamp_ = 0;
  }

  std::int64_t e_delta(const Edge& e) const { return lab_[e.u] + lab_[e.v] - g_[idx(e.u, e.v)].w * 2; }

  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(g_[idx(u, x)]) < e_delta(g_[idx(slack_[x], x)])) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (g_[idx(u, x)].w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n_) {
      q_.push_back(x);
    } else {
      for (int child : flower_[x]) q_push(child);
    }
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int child : flower_[x]) set_st(child, b);
  }

  int get_pr(int b, int xr) {
    auto& f = flower_[b];
    int pr = static_cast<int>(std::find(f.begin(), f.end(), xr) - f.begin());
    if (pr % 2 == 1) {
      std::reverse(f.begin() + 1, f.end());
      return static_cast<int>(f.size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = g_[idx(u, v)].v;
    if (u > n_) {
      const Edge e = g_[idx(u, v)];
      const int xr = flower_from_[u][e.u];
      const int pr = get_pr(u, xr);
      auto& f = flower_[u];
      for (int i = 0; i < pr; ++i) set_match(f[i], f[i ^ 1]);
      set_match(xr, v);
      std::rotate(f.begin(), f.begin() + pr, f.end());
    }
  }

  void augment(int u, int v) {
    for (;;) {
      const int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++stamp_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == stamp_) return u;
      vis_[u] = stamp_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    s_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) {
      g_[idx(b, x)].w = 0;
      g_[idx(x, b)].w = 0;
    }
    for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x)
        if (g_[idx(b, x)].w == 0 || e_delta(g_[idx(xs, x)]) < e_delta(g_[idx(b, x)])) {
          g_[idx(b, x)] = g_[idx(xs, x)];
          g_[idx(x, b)] = g_[idx(x, xs)];
        }
      for (int x = 1; x <= n_; ++x)
        if (flower_from_[xs][x]) flower_from_[b][x] = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int child : flower_[b]) set_st(child, child);
    const int xr = flower_from_[b][g_[idx(b, pa_[b])].u];
    const int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      const int xs = flower_[b][i];
      const int xns = flower_[b][i + 1];
      pa_[xs] = g_[idx(xns, xs)].u;
      s_[xs] = 1;
      s_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    s_[xr] = 1;
    pa_[xr] = pa_[b];
    for (std::size_t i = pr + 1; i < flower_[b].size(); ++i) {
      const int xs = flower_[b][i];
      s_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const Edge& e) {
    const int u = st_[e.u];
    const int v = st_[e.v];
    if (s_[v] == -1) {
      pa_[v] = e.u;
      s_[v] = 1;
      const int nu = st_[match_[v]];
      slack_[v] = 0;
      slack_[nu] = 0;
      s_[nu] = 0;
      q_push(nu);
    } else if (s_[v] == 0) {
      const int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool matching() {
    std::fill(s_.begin(), s_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin(), slack_.begin() + n_x_ + 1, 0);
    q_.clear();
    for (int x = 1; x <= n_x_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        s_[x] = 0;
        q_push(x);
      }
    if (q_.empty()) return false;
    for (;;) {
      while (!q_.empty()) {
        const int u = q_.front();
        q_.pop_front();
        if (s_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v)
          if (g_[idx(u, v)].w > 0 && st_[u] != st_[v]) {
            if (e_delta(g_[idx(u, v)]) == 0) {
              if (on_found_edge(g_[idx(u, v)])) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
      }
      std::int64_t d = kInf;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x]) {
          if (s_[x] == -1)
            d = std::min(d, e_delta(g_[idx(slack_[x], x)]));
          else if (s_[x] == 0)
            d = std::min(d, e_delta(g_[idx(slack_[x], x)]) / 2);
        }
      for (int u = 1; u <= n_; ++u) {
        if (s_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;
          lab_[u] -= d;
        } else if (s_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && s_[b] != -1) {
          if (s_[b] == 0)
            lab_[b] += d * 2;
          else
            lab_[b] -= d * 2;
        }
      q_.clear();
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x && e_delta(g_[idx(slack_[x], x)]) == 0)
          if (on_found_edge(g_[idx(slack_[x], x)])) return true;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
  }

  void run() {
    std::fill(match_.begin(), match_.end(), 0);
    n_x_ = n_;
    for (int u = 0; u <= n_; ++u) {
      st_[u] = u;
      flower_[u].clear();
    }
    std::int64_t w_max = 0;
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) {
        flower_from_[u][v] = (u == v ? u : 0);
        w_max = std::max(w_max, g_[idx(u, v)].w);
      }
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
    while (matching()) {
    }
  }
};

/// Total weight of a matching given as mate[] against a weight matrix.
inline std::int64_t matching_weight(const std::vector<int>& mate,
                                    const std::vector<std::vector<std::int64_t>>& w) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < mate.size(); ++i)
    if (mate[i] >= 0 && static_cast<std::size_t>(mate[i]) > i) total += w[i][mate[i]];
  return total;
}

/// Reference oracle: minimum pairing weight by exhaustive enumeration.
/// Usable up to ~14 nodes; intended for tests and small defect sets.
inline std::int64_t exhaustive_min_pairing_weight(const std::vector<std::vector<std::int64_t>>& w) {
  const int n = static_cast<int>(w.size());
  if (n % 2 != 0) throw std::invalid_argument("pairing needs an even node count");
  std::vector<bool> used(n, false);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  auto rec = [&](auto&& self, int taken, std::int64_t acc) -> void {
    if (acc >= best) return;
    if (taken == n) {
      best = acc;
      return;
    }
    int first = 0;
    while (used[first]) ++first;
    used[first] = true;
    for (int j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      self(self, taken + 2, acc + w[first][j]);
      used[j] = false;
    }
    used[first] = false;
  };
  if (n > 0) rec(rec, 0, 0);
  return n == 0 ? 0 : best;
}

}  // namespace cellcode
