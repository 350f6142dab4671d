#pragma once

// Exact enumeration of generating trees: level occupancy, continuation
// tables and uniform random generation.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ecogen/arith.hpp"
#include "ecogen/spec.hpp"

namespace ecogen {

/// Label -> count for one level. Stored sparse (sorted pairs) or dense
/// (contiguous window) depending on occupancy.
class LevelMap {
 public:
  LevelMap() = default;
  static LevelMap single(Label label, BigInt count);
  // Takes a dense window starting at `base`; picks the storage by density.
  static LevelMap from_dense(Label base, std::vector<BigInt> cells);
  static LevelMap from_sorted(std::vector<std::pair<Label, BigInt>> entries);

  BigInt at(Label label) const;
  bool is_dense() const { return dense_; }
  std::size_t nonzero() const { return nonzero_; }
  std::size_t cells() const { return dense_ ? dense_cells_.size() : sparse_.size(); }
  std::optional<Label> min_label() const;
  std::optional<Label> max_label() const;

  // Visits nonzero entries in ascending label order.
  template <typename F>
  void for_each(F&& f) const {
    if (dense_) {
      for (std::size_t i = 0; i < dense_cells_.size(); ++i)
        if (dense_cells_[i] != 0) f(base_ + static_cast<Label>(i), dense_cells_[i]);
    } else {
      for (const auto& [l, c] : sparse_) f(l, c);
    }
  }

 private:
  bool dense_ = false;
  Label base_ = 0;
  std::vector<BigInt> dense_cells_;
  std::vector<std::pair<Label, BigInt>> sparse_;
  std::size_t nonzero_ = 0;
};

struct CountOptions {
  // Propagate interval productions one successor at a time instead of by
  // range updates. Used as the reference path in tests and benchmarks.
  bool naive = false;
  // Largest admissible label; exceeding it raises ResourceLimitError.
  Label cap = kDefaultLabelCap;
  // Widest window a level may be accumulated in when it has interval
  // productions.
  std::size_t max_window = 50'000'000;
  static constexpr Label kDefaultLabelCap = 1'000'000'000'000'000LL;
};

struct CountStats {
  std::uint64_t big_additions = 0;  // bignum add/sub/addmul operations
  std::size_t peak_cells = 0;       // largest stored level
  std::size_t total_cells = 0;      // cells held by the whole table
};

struct CountTable {
  std::string system;
  Mode mode = Mode::eco;
  Label axiom = 0;
  std::vector<LevelMap> levels;  // levels[n] holds f_{n,k}
  std::vector<BigInt> totals;    // f_n
  std::vector<BigInt> sums;      // s_n = sum_k k f_{n,k}
  CountStats stats;

  BigInt at(std::size_t n, Label k) const { return levels.at(n).at(k); }
  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
};

CountTable count_levels(const EcoSpec& spec, std::size_t n, const CountOptions& opts = {});
// F(z) = sum f_n z^n known to order N (levels 0..N-1).
Series series_F(const EcoSpec& spec, std::size_t order, const CountOptions& opts = {});
// Column k of the level table as a series: sum_n f_{n,k} z^n.
Series column_series(const CountTable& table, Label k);

std::string to_csv(const CountTable& table);
std::string totals_json(const CountTable& table);

/// g[m][k] = number of length-m walks starting at k, for k reachable from the
/// axiom in at most depth-m steps.
class BackTable {
 public:
  struct Row {
    std::vector<Label> labels;  // sorted
    std::vector<BigInt> values;
  };

  std::size_t depth() const { return rows_.empty() ? 0 : rows_.size() - 1; }
  const Row& row(std::size_t m) const { return rows_.at(m); }
  // Throws std::out_of_range when k is outside row m's window.
  const BigInt& g(std::size_t m, Label k) const;
  bool contains(std::size_t m, Label k) const;
  std::size_t cells() const;

 private:
  friend BackTable back_table(const EcoSpec& spec, std::size_t n, const CountOptions& opts);
  std::vector<Row> rows_;
};

BackTable back_table(const EcoSpec& spec, std::size_t n, const CountOptions& opts = {});

enum class SampleStrategy { sequential, binary };

struct WalkSample {
  std::vector<Label> labels;              // axiom, s_1, ..., s_n
  std::vector<std::int64_t> transitions;  // index into expand(spec, s_i) copies
};

/// Uniform sampler over length-n walks. Owns its random stream; draws are
/// exact (integer inverse transform on continuation counts).
class Sampler {
 public:
  Sampler(const EcoSpec& spec, std::shared_ptr<const BackTable> table, std::uint64_t seed);

  WalkSample draw(SampleStrategy strategy);
  std::size_t cached_prefix_arrays() const { return prefix_cache_.size(); }

 private:
  struct PrefixArray {
    std::vector<BigInt> cumulative;     // cumulative weight after each group
    std::vector<Label> labels;          // target label per group
    std::vector<std::int64_t> offsets;  // first transition index per group
  };

  BigInt uniform_below(const BigInt& bound);
  std::pair<Label, std::int64_t> step_sequential(std::size_t remaining, Label k, BigInt r);
  std::pair<Label, std::int64_t> step_binary(std::size_t remaining, Label k, BigInt r);
  const PrefixArray& prefix(std::size_t remaining, Label k);

  const EcoSpec& spec_;
  std::shared_ptr<const BackTable> table_;
  std::mt19937_64 rng_;
  std::map<std::pair<std::size_t, Label>, PrefixArray> prefix_cache_;
};

WalkSample sample_walk(const EcoSpec& spec, std::size_t n, std::uint64_t seed, SampleStrategy strategy);

/// g_{n,k} = f_{n, n + axiom - k}: occupancy read along antidiagonals from the
/// largest label a level can hold.
struct Stabilization {
  std::vector<std::vector<BigInt>> g;                  // g[n][k], k = 0 .. n + axiom - 1
  std::vector<BigInt> limit;                           // g(k): value of column k at the last level
  std::vector<std::size_t> settled_at;  // first level from which column k stays constant
};

Stabilization antidiagonal_stabilization(const EcoSpec& spec, std::size_t n);

}  // namespace ecogen
