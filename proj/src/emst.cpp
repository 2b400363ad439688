#include "lookout/quantile.hpp"
#include "lookout/rips_zero.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace lookout {
namespace {

inline double squared_distance(const double* a, const double* b, Eigen::Index m) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

DeathDiameters finish(std::vector<double> squared) {
  DeathDiameters out;
  out.values.reserve(squared.size());
  for (double s : squared) out.values.push_back(std::sqrt(s));
  std::sort(out.values.begin(), out.values.end());
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

// Candidate edge under the total order (length, lower index, upper index).
struct Edge {
  double sq = std::numeric_limits<double>::infinity();
  std::size_t a = std::numeric_limits<std::size_t>::max();
  std::size_t b = std::numeric_limits<std::size_t>::max();

  bool operator<(const Edge& o) const { return std::tie(sq, a, b) < std::tie(o.sq, o.a, o.b); }
};

inline Edge make_edge(double sq, std::size_t i, std::size_t j) {
  return Edge{sq, std::min(i, j), std::max(i, j)};
}

class KdTree {
 public:
  static constexpr std::size_t kLeafSize = 16;
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  struct Node {
    std::size_t begin = 0, end = 0;
    std::size_t left = kNone, right = kNone;
    std::size_t component = kNone;  // shared component of all points, or kNone
  };

  explicit KdTree(const Eigen::MatrixXd& pts) : pts_(pts), m_(pts.rows()) {
    const auto n = static_cast<std::size_t>(pts.cols());
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    lo_.reserve(2 * n / kLeafSize * m_ + m_);
    build(0, n);
  }

  std::size_t root() const { return 0; }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  std::size_t point(std::size_t k) const { return order_[k]; }

  double box_distance(std::size_t node, const double* q) const {
    const double* lo = &lo_[node * static_cast<std::size_t>(m_)];
    const double* hi = &hi_[node * static_cast<std::size_t>(m_)];
    double acc = 0.0;
    for (Eigen::Index k = 0; k < m_; ++k) {
      double d = 0.0;
      if (q[k] < lo[k]) d = lo[k] - q[k];
      else if (q[k] > hi[k]) d = q[k] - hi[k];
      acc += d * d;
    }
    return acc;
  }

  void label_components(const std::vector<std::size_t>& comp) { label(0, comp); }

 private:
  std::size_t build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.push_back(Node{begin, end});
    const auto m = static_cast<std::size_t>(m_);
    lo_.resize(lo_.size() + m, std::numeric_limits<double>::infinity());
    hi_.resize(hi_.size() + m, -std::numeric_limits<double>::infinity());
    for (std::size_t k = begin; k < end; ++k) {
      const double* p = pts_.col(static_cast<Eigen::Index>(order_[k])).data();
      for (std::size_t d = 0; d < m; ++d) {
        lo_[id * m + d] = std::min(lo_[id * m + d], p[d]);
        hi_[id * m + d] = std::max(hi_[id * m + d], p[d]);
      }
    }
    if (end - begin <= kLeafSize) return id;

    std::size_t split = 0;
    double widest = -1.0;
    for (std::size_t d = 0; d < m; ++d) {
      const double w = hi_[id * m + d] - lo_[id * m + d];
      if (w > widest) {
        widest = w;
        split = d;
      }
    }
    if (widest <= 0.0) return id;  // all points coincide

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                       return pts_(static_cast<Eigen::Index>(split), static_cast<Eigen::Index>(a)) <
                              pts_(static_cast<Eigen::Index>(split), static_cast<Eigen::Index>(b));
                     });
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  std::size_t label(std::size_t id, const std::vector<std::size_t>& comp) {
    Node& nd = nodes_[id];
    std::size_t c;
    if (nd.left == kNone) {
      c = comp[order_[nd.begin]];
      for (std::size_t k = nd.begin + 1; k < nd.end && c != kNone; ++k) {
        if (comp[order_[k]] != c) c = kNone;
      }
    } else {
      const std::size_t a = label(nd.left, comp);
      const std::size_t b = label(nd.right, comp);
      c = (a == b) ? a : kNone;
    }
    nodes_[id].component = c;
    return c;
  }

  const Eigen::MatrixXd& pts_;
  Eigen::Index m_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  std::vector<double> lo_, hi_;
};

}  // namespace

namespace detail {

DeathDiameters prim_deaths(const Eigen::MatrixXd& columns) {
  const auto n = static_cast<std::size_t>(columns.cols());
  const Eigen::Index m = columns.rows();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<char> in_tree(n, 0);
  std::vector<double> edges;
  edges.reserve(n - 1);

  std::size_t current = 0;
  in_tree[0] = 1;
  for (std::size_t step = 1; step < n; ++step) {
    const double* c = columns.col(static_cast<Eigen::Index>(current)).data();
    std::size_t next = n;
    double next_sq = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double sq = squared_distance(c, columns.col(static_cast<Eigen::Index>(j)).data(), m);
      if (sq < best[j]) best[j] = sq;
      if (best[j] < next_sq || next == n) {
        next_sq = best[j];
        next = j;
      }
    }
    in_tree[next] = 1;
    edges.push_back(next_sq);
    current = next;
  }
  return finish(std::move(edges));
}

DeathDiameters kdtree_boruvka_deaths(const Eigen::MatrixXd& columns) {
  const auto n = static_cast<std::size_t>(columns.cols());
  const Eigen::Index m = columns.rows();
  KdTree tree(columns);
  DisjointSets sets(n);
  std::vector<double> edges;
  edges.reserve(n - 1);

  std::vector<std::size_t> comp(n);
  std::vector<Edge> best(n);
  std::vector<std::size_t> stack;

  while (edges.size() + 1 < n) {
    for (std::size_t i = 0; i < n; ++i) comp[i] = sets.find(i);
    tree.label_components(comp);
    std::fill(best.begin(), best.end(), Edge{});

    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t cq = comp[q];
      const double* qp = columns.col(static_cast<Eigen::Index>(q)).data();
      Edge& target = best[cq];
      stack.assign(1, tree.root());
      while (!stack.empty()) {
        const std::size_t id = stack.back();
        stack.pop_back();
        const auto& nd = tree.node(id);
        if (nd.component == cq) continue;
        if (tree.box_distance(id, qp) > target.sq) continue;
        if (nd.left == KdTree::kNone) {
          for (std::size_t k = nd.begin; k < nd.end; ++k) {
            const std::size_t p = tree.point(k);
            if (comp[p] == cq) continue;
            const double sq = squared_distance(qp, columns.col(static_cast<Eigen::Index>(p)).data(), m);
            if (sq > target.sq) continue;
            const Edge e = make_edge(sq, q, p);
            if (e < target) target = e;
          }
        } else {
          // Visit the nearer child first.
          const double dl = tree.box_distance(nd.left, qp);
          const double dr = tree.box_distance(nd.right, qp);
          if (dl <= dr) {
            stack.push_back(nd.right);
            stack.push_back(nd.left);
          } else {
            stack.push_back(nd.left);
            stack.push_back(nd.right);
          }
        }
      }
    }

    for (std::size_t c = 0; c < n; ++c) {
      const Edge& e = best[c];
      if (e.a == std::numeric_limits<std::size_t>::max()) continue;
      if (sets.unite(e.a, e.b)) edges.push_back(e.sq);
    }
  }
  return finish(std::move(edges));
}

}  // namespace detail

double quantile_diameter(const DeathDiameters& deaths, double gamma) {
  if (deaths.empty()) throw std::invalid_argument("quantile_diameter: no deaths");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("quantile_diameter: gamma outside (0, 1)");
  return type7_quantile_sorted(deaths.values, gamma);
}

double max_gap_diameter(const DeathDiameters& deaths) {
  if (deaths.size() < 2) throw std::invalid_argument("max_gap_diameter: need at least two deaths");
  std::size_t best = 0;
  double best_gap = deaths.values[1] - deaths.values[0];
  for (std::size_t i = 1; i + 1 < deaths.size(); ++i) {
    const double gap = deaths.values[i + 1] - deaths.values[i];
    if (gap > best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return deaths.values[best];
}

}  // namespace lookout
