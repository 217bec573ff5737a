// Maximum square-difference-free subsets of {1..X} by branch and bound on the
// graph whose edges join integers at square distance.
//
// Two upper bounds prune the search. The graph is translation invariant, so a
// candidate pool inside an interval of length k holds at most s(k) further
// elements, and s is tabulated for k = 1, 2, ... as the search grows
// (Russian-doll order). A greedy clique cover of the pool gives the second
// bound since an independent set meets each clique at most once.
#include "sdf/sets.hpp"

#include <boost/dynamic_bitset.hpp>

namespace sdf {
namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

class Solver {
 public:
  explicit Solver(std::int64_t x) : n_(static_cast<std::size_t>(x)), later_free_(n_, Bits(n_)), adj_(n_, Bits(n_)) {
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v) {
        if (u == v) continue;
        auto d = static_cast<std::int64_t>(u > v ? u - v : v - u);
        if (is_perfect_square(d))
          adj_[u].set(v);
        else if (v > u)
          later_free_[u].set(v);
      }
    table_.assign(n_ + 1, 0);
  }

  void build_table() {
    if (n_ >= 1) table_[1] = 1;
    for (std::size_t k = 2; k <= n_; ++k) {
      // A set beating s(k-1) on [1..k] must use vertex 1.
      Bits pool(n_);
      for (std::size_t v = 1; v < k; ++v) pool.set(v);
      pool &= later_free_[0];
      std::vector<std::size_t> chosen{0};
      limit_ = k;
      table_[k] = table_[k - 1] + (search(pool, table_[k - 1], chosen) ? 1 : 0);
    }
  }

  std::vector<std::size_t> witness() {
    Bits pool(n_);
    pool.set();
    std::vector<std::size_t> chosen;
    limit_ = n_;
    search(pool, table_[n_], chosen);
    return chosen;
  }

  const std::vector<std::int64_t>& table() const { return table_; }

 private:
  std::int64_t clique_cover(Bits pool) const {
    std::int64_t cliques = 0;
    while (pool.any()) {
      Bits room = pool;
      for (auto v = room.find_first(); v != Bits::npos; v = room.find_next(v)) {
        pool.reset(v);
        room &= adj_[v];
      }
      ++cliques;
    }
    return cliques;
  }

  // Include-first in increasing order, so the first success is lexicographically smallest.
  bool search(Bits pool, std::int64_t need, std::vector<std::size_t>& chosen) {
    if (need <= 0) return true;
    while (pool.any()) {
      if (static_cast<std::int64_t>(pool.count()) < need) return false;
      const auto v = pool.find_first();
      if (table_[limit_ - v] < need) return false;
      if (clique_cover(pool) < need) return false;
      chosen.push_back(v);
      if (search(pool & later_free_[v], need - 1, chosen)) return true;
      chosen.pop_back();
      pool.reset(v);
    }
    return false;
  }

  std::size_t n_;
  std::size_t limit_ = 0;
  std::vector<Bits> later_free_;
  std::vector<Bits> adj_;
  std::vector<std::int64_t> table_;
};

}  // namespace

ExactResult max_sdf_exact(std::int64_t x, const ExactOptions& options) {
  if (x < 1) throw Error(ErrorKind::InvalidArgument, "X must be >= 1");
  if (x > options.cap)
    throw Error(ErrorKind::CapExceeded, "X = " + std::to_string(x) + " exceeds exact-solve cap " +
                                            std::to_string(options.cap));
  Solver solver(x);
  solver.build_table();
  std::vector<std::int64_t> elements;
  for (auto v : solver.witness()) elements.push_back(static_cast<std::int64_t>(v) + 1);
  ExactResult out;
  out.size = solver.table()[static_cast<std::size_t>(x)];
  out.witness = IntegerSet(std::move(elements), x);
  out.table = solver.table();
  return out;
}

}  // namespace sdf
