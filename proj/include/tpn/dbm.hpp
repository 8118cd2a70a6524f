#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpn/bounds.hpp"

namespace tpn {

// Difference bound matrix over variables {x_0, ..., x_{n-1}} where x_0 is the
// reference clock fixed at 0. entry(i, j) bounds x_i - x_j from above.
// canonicalize() closes the matrix under all-pairs shortest paths; afterwards
// every entry is the tightest bound implied by the system and two canonical
// matrices describe the same polyhedron iff they are entrywise equal.
// An infeasible system collapses to a distinguished empty value.
class Dbm {
 public:
  Dbm() : Dbm(1) {}
  explicit Dbm(std::uint32_t dim) : n_(dim), e_(std::size_t{dim} * dim, Bound::infinity()) {
    for (std::uint32_t i = 0; i < n_; ++i) at(i, i) = Bound::zero();
  }

  std::uint32_t dim() const { return n_; }
  bool empty() const { return empty_; }
  void mark_empty() { empty_ = true; }

  Bound& at(std::uint32_t i, std::uint32_t j) { return e_[std::size_t{i} * n_ + j]; }
  const Bound& at(std::uint32_t i, std::uint32_t j) const { return e_[std::size_t{i} * n_ + j]; }

  // Conjoins x_i - x_j <= b (keeps the existing entry when it is tighter).
  void tighten(std::uint32_t i, std::uint32_t j, const Bound& b) {
    if (tighter(b, at(i, j))) at(i, j) = b;
  }

  // Floyd-Warshall closure. Returns false (and marks the matrix empty) when a
  // cycle with negative weight, or zero weight through a strict edge, exists.
  bool canonicalize();

  // Sub-matrix over the given variables, in the given order. Requires a
  // canonical matrix, which makes dropping rows/columns an exact projection.
  Dbm select(const std::vector<std::uint32_t>& vars) const;

  std::size_t hash() const;

  friend bool operator==(const Dbm& a, const Dbm& b) {
    return a.empty_ == b.empty_ && a.n_ == b.n_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Dbm& a, const Dbm& b) { return !(a == b); }

  std::string str() const;  // debug rendering, one row per line

 private:
  std::uint32_t n_;
  std::vector<Bound> e_;
  bool empty_ = false;
};

}  // namespace tpn
