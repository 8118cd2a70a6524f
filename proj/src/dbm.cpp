#include "tpn/dbm.hpp"

namespace tpn {

bool Dbm::canonicalize() {
  if (empty_) return false;
  for (std::uint32_t k = 0; k < n_; ++k) {
    for (std::uint32_t i = 0; i < n_; ++i) {
      const Bound& ik = at(i, k);
      if (ik.inf) continue;
      for (std::uint32_t j = 0; j < n_; ++j) {
        const Bound& kj = at(k, j);
        if (kj.inf) continue;
        Bound via = ik + kj;
        if (tighter(via, at(i, j))) at(i, j) = via;
      }
    }
    // Negative cycles surface on the diagonal as soon as k covers the cycle.
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (at(i, i).excludes_zero()) {
        empty_ = true;
        return false;
      }
    }
  }
  return true;
}

Dbm Dbm::select(const std::vector<std::uint32_t>& vars) const {
  Dbm out(static_cast<std::uint32_t>(vars.size()));
  out.empty_ = empty_;
  for (std::uint32_t i = 0; i < out.n_; ++i)
    for (std::uint32_t j = 0; j < out.n_; ++j) out.at(i, j) = at(vars[i], vars[j]);
  return out;
}

std::size_t Dbm::hash() const {
  std::size_t h = 0x100000001b3ULL ^ n_ ^ (empty_ ? 0x5bd1e995 : 0);
  for (const auto& b : e_) {
    if (b.inf) {
      h = hash_combine(h, 0x7fffffffdeadULL);
    } else {
      h = hash_combine(h, hash_value(b.value));
      h = hash_combine(h, b.strict ? 3 : 7);
    }
  }
  return h;
}

std::string Dbm::str() const {
  if (empty_) return "(empty)\n";
  std::string s;
  for (std::uint32_t i = 0; i < n_; ++i) {
    for (std::uint32_t j = 0; j < n_; ++j) {
      s += to_string(at(i, j));
      s += (j + 1 == n_) ? "\n" : "  ";
    }
  }
  return s;
}

}  // namespace tpn
