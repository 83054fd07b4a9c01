#pragma once

// Exact Bernoulli numbers B_k, defined by w/(e^w - 1) = sum B_k w^k / k!
// (so B_1 = -1/2), generated by the recurrence
//
//   sum_{j=0}^{n} C(n+1, j) B_j = 0,  n >= 1.
//
// The table is memoized process-wide. Reads take a shared lock; extending
// the table takes the exclusive lock.

#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cmdeg/errors.hpp"
#include "cmdeg/real.hpp"

namespace cmdeg {

namespace detail {

class BernoulliCache {
 public:
  static BernoulliCache& instance() {
    static BernoulliCache cache;
    return cache;
  }

  Rational get(long k) {
    {
      std::shared_lock lock(mutex_);
      if (k < static_cast<long>(table_.size())) return table_[static_cast<size_t>(k)];
    }
    std::unique_lock lock(mutex_);
    extend(k);
    return table_[static_cast<size_t>(k)];
  }

  std::vector<Rational> prefix(long k_max) {
    {
      std::shared_lock lock(mutex_);
      if (k_max < static_cast<long>(table_.size()))
        return {table_.begin(), table_.begin() + k_max + 1};
    }
    std::unique_lock lock(mutex_);
    extend(k_max);
    return {table_.begin(), table_.begin() + k_max + 1};
  }

 private:
  BernoulliCache() { table_.emplace_back(1); }

  void extend(long k) {
    Integer binom;
    for (long n = static_cast<long>(table_.size()); n <= k; ++n) {
      if (n > 1 && n % 2 == 1) {
        table_.emplace_back(0);
        continue;
      }
      // sum_{j<n} C(n+1, j) B_j, with C(n+1, j) built incrementally.
      Rational acc = 0;
      binom = 1;
      for (long j = 0; j < n; ++j) {
        if (table_[static_cast<size_t>(j)] != 0) acc += Rational(binom) * table_[static_cast<size_t>(j)];
        binom = binom * (n + 1 - j) / (j + 1);
      }
      Rational bn = -acc / Rational(n + 1);
      bn.canonicalize();
      table_.push_back(std::move(bn));
    }
  }

  std::shared_mutex mutex_;
  std::vector<Rational> table_;
};

}  // namespace detail

/// B_k as an exact rational. Odd indices above 1 are zero.
inline Rational bernoulli(long k) {
  if (k < 0) throw InvalidIndex("bernoulli index must be >= 0, got " + std::to_string(k));
  return detail::BernoulliCache::instance().get(k);
}

/// [B_0, ..., B_{k_max}].
inline std::vector<Rational> bernoulli_table(long k_max) {
  if (k_max < 0) throw InvalidIndex("bernoulli table bound must be >= 0, got " + std::to_string(k_max));
  return detail::BernoulliCache::instance().prefix(k_max);
}

}  // namespace cmdeg
