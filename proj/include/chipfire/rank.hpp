#pragma once

#include "chipfire/budget.hpp"
#include "chipfire/dhar.hpp"
#include "chipfire/divisor.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace chipfire {

/// Walks the effective divisors of degree r on n vertices in colexicographic
/// order of their sorted chip positions: r*v_0 first, r*v_{n-1} last.
class EffectiveDivisorCursor {
 public:
  EffectiveDivisorCursor(std::size_t n, int r) : n_(n), positions_(static_cast<std::size_t>(r), 0), counts_(n, 0) {
    if (n_ == 0) {
      done_ = true;
      return;
    }
    if (r > 0) counts_[0] = r;
  }

  bool done() const { return done_; }
  const std::vector<Chips>& counts() const { return counts_; }

  void advance() {
    const auto r = positions_.size();
    for (std::size_t j = 0; j < r; ++j) {
      std::size_t cap = j + 1 < r ? positions_[j + 1] : n_ - 1;
      if (positions_[j] < cap) {
        --counts_[positions_[j]];
        ++positions_[j];
        ++counts_[positions_[j]];
        for (std::size_t i = 0; i < j; ++i) {
          --counts_[positions_[i]];
          positions_[i] = 0;
          ++counts_[0];
        }
        return;
      }
    }
    done_ = true;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> positions_;
  std::vector<Chips> counts_;
  bool done_ = false;
};

/// C(n + r - 1, n - 1): number of effective divisors of degree r on n vertices.
inline std::uint64_t count_effective_of_degree(std::uint64_t n, std::uint64_t r) {
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) c = c * (n - 1 + i) / i;
  return c;
}

struct RankCheck {
  bool holds = false;
  std::optional<Divisor> failing;  // colex-first E with D - E not winnable
  std::uint64_t examined = 0;      // number of candidate E touched
};

/// Checks every effective E of degree r (colex order, stopping at the first
/// failure) for winnability of D - E.
inline RankCheck rank_at_least(const Divisor& d, int r, Budget* budget = nullptr) {
  if (r < 0) return {true, std::nullopt, 0};
  const auto& g = d.graph();
  RankCheck out;
  std::vector<Chips> work(d.size());
  for (EffectiveDivisorCursor e(d.size(), r); !e.done(); e.advance()) {
    ++out.examined;
    bool effective = true;
    for (std::size_t v = 0; v < d.size(); ++v) {
      work[v] = d[v] - e.counts()[v];
      effective = effective && work[v] >= 0;
    }
    if (effective) continue;
    charge(budget);
    detail::q_reduce_in_place(g, work, 0, nullptr);
    if (work[0] < 0) {
      out.failing = Divisor(d.host(), e.counts());
      return out;
    }
  }
  out.holds = true;
  return out;
}

/// Baker-Norine rank; -1 when the class has no effective member.
inline int rank(const Divisor& d, Budget* budget = nullptr) {
  if (!effective_in_class(d, budget)) return -1;
  const auto deg = d.degree();
  for (int r = 1; r <= deg; ++r)
    if (!rank_at_least(d, r, budget).holds) return r - 1;
  return static_cast<int>(deg);
}

}  // namespace chipfire
