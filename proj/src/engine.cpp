#include "ecogen/engine.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace ecogen {

// ---------------------------------------------------------------- LevelMap

LevelMap LevelMap::single(Label label, BigInt count) {
  LevelMap m;
  if (count != 0) {
    m.sparse_.emplace_back(label, std::move(count));
    m.nonzero_ = 1;
  }
  return m;
}

LevelMap LevelMap::from_dense(Label base, std::vector<BigInt> cells) {
  std::size_t lo = 0, hi = cells.size();
  while (lo < hi && cells[lo] == 0) ++lo;
  while (hi > lo && cells[hi - 1] == 0) --hi;
  std::size_t nz = 0;
  for (std::size_t i = lo; i < hi; ++i)
    if (cells[i] != 0) ++nz;
  LevelMap m;
  m.nonzero_ = nz;
  if (nz == 0) return m;
  if (2 * nz >= hi - lo) {
    m.dense_ = true;
    m.base_ = base + static_cast<Label>(lo);
    if (lo > 0 || hi < cells.size()) {
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(hi), cells.end());
      cells.erase(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(lo));
    }
    m.dense_cells_ = std::move(cells);
    return m;
  }
  m.sparse_.reserve(nz);
  for (std::size_t i = lo; i < hi; ++i)
    if (cells[i] != 0) m.sparse_.emplace_back(base + static_cast<Label>(i), std::move(cells[i]));
  return m;
}

LevelMap LevelMap::from_sorted(std::vector<std::pair<Label, BigInt>> entries) {
  LevelMap m;
  std::erase_if(entries, [](const auto& e) { return e.second == 0; });
  m.nonzero_ = entries.size();
  m.sparse_ = std::move(entries);
  return m;
}

BigInt LevelMap::at(Label label) const {
  if (dense_) {
    if (label < base_ || label - base_ >= static_cast<Label>(dense_cells_.size())) return 0;
    return dense_cells_[static_cast<std::size_t>(label - base_)];
  }
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), label,
                             [](const auto& e, Label l) { return e.first < l; });
  if (it == sparse_.end() || it->first != label) return 0;
  return it->second;
}

std::optional<Label> LevelMap::min_label() const {
  if (nonzero_ == 0) return std::nullopt;
  return dense_ ? base_ : sparse_.front().first;
}

std::optional<Label> LevelMap::max_label() const {
  if (nonzero_ == 0) return std::nullopt;
  return dense_ ? base_ + static_cast<Label>(dense_cells_.size()) - 1 : sparse_.back().first;
}

// ---------------------------------------------------------------- propagation

namespace {

struct PointOp {
  Label label;
  const BigInt* count;
  std::int64_t mult;
};

struct RangeOp {
  Label lo;
  Label last;
  std::int64_t step;
  const BigInt* count;
};

Label min_label(const EcoSpec& spec) { return spec.mode == Mode::eco ? 1 : 0; }

void check_label(const EcoSpec& spec, Label l, Label from, Label cap) {
  if (l < min_label(spec))
    throw ValidationError(spec.name + ": label " + std::to_string(l) + " produced from k=" + std::to_string(from));
  if (l > cap)
    throw ResourceLimitError(spec.name + ": label " + std::to_string(l) + " exceeds the label cap " +
                             std::to_string(cap));
}

const Clause& clause_for(const EcoSpec& spec, Label k) {
  const Clause* c = matching_clause(spec, k);
  if (!c) throw ValidationError(spec.name + ": no clause matches k=" + std::to_string(k));
  return *c;
}

void collect(const EcoSpec& spec, Label k, const BigInt& c, const CountOptions& opts, std::vector<PointOp>& pts,
             std::vector<RangeOp>& rgs) {
  for (const auto& prod : clause_for(spec, k).productions) {
    if (const auto* item = std::get_if<Item>(&prod)) {
      const std::int64_t mult = item->multiplicity.eval(k);
      if (mult < 0)
        throw ValidationError(spec.name + ": negative multiplicity at k=" + std::to_string(k));
      if (mult == 0) continue;
      const Label l = item->label.eval(k);
      check_label(spec, l, k, opts.cap);
      pts.push_back({l, &c, mult});
      continue;
    }
    const auto& iv = std::get<Interval>(prod);
    const Label lo = iv.lo.eval(k), hi = iv.hi.eval(k);
    if (lo > hi) continue;
    const Label last = lo + (hi - lo) / iv.step * iv.step;
    check_label(spec, lo, k, opts.cap);
    check_label(spec, last, k, opts.cap);
    std::set<Label> skip;
    for (const auto& e : iv.excluded) {
      const Label x = e.eval(k);
      if (x >= lo && x <= last && (x - lo) % iv.step == 0) skip.insert(x);
    }
    if (opts.naive) {
      for (Label l = lo; l <= last; l += iv.step)
        if (!skip.contains(l)) pts.push_back({l, &c, 1});
    } else {
      rgs.push_back({lo, last, iv.step, &c});
      for (Label x : skip) pts.push_back({x, &c, -1});
    }
  }
}

void add_scaled(BigInt& acc, const BigInt& c, std::int64_t mult) {
  if (mult == 1)
    acc += c;
  else if (mult == -1)
    acc -= c;
  else if (mult > 0)
    mpz_addmul_ui(acc.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(mult));
  else
    mpz_submul_ui(acc.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-mult));
}

LevelMap propagate(const EcoSpec& spec, const LevelMap& cur, const CountOptions& opts, CountStats& stats) {
  std::vector<PointOp> pts;
  std::vector<RangeOp> rgs;
  cur.for_each([&](Label k, const BigInt& c) { collect(spec, k, c, opts, pts, rgs); });
  if (pts.empty() && rgs.empty()) return {};

  Label lo = std::numeric_limits<Label>::max(), hi = std::numeric_limits<Label>::min();
  for (const auto& p : pts) {
    lo = std::min(lo, p.label);
    hi = std::max(hi, p.label);
  }
  for (const auto& r : rgs) {
    lo = std::min(lo, r.lo);
    hi = std::max(hi, r.last);
  }
  const auto width = static_cast<unsigned long long>(hi) - static_cast<unsigned long long>(lo) + 1;

  if (rgs.empty() && width > 4 * pts.size() + 64) {
    std::sort(pts.begin(), pts.end(), [](const PointOp& a, const PointOp& b) { return a.label < b.label; });
    std::vector<std::pair<Label, BigInt>> out;
    for (const auto& p : pts) {
      if (out.empty() || out.back().first != p.label) out.emplace_back(p.label, 0);
      add_scaled(out.back().second, *p.count, p.mult);
      ++stats.big_additions;
    }
    return LevelMap::from_sorted(std::move(out));
  }

  if (width > opts.max_window)
    throw ResourceLimitError(spec.name + ": level window of " + std::to_string(width) + " labels exceeds the limit " +
                             std::to_string(opts.max_window));
  const std::size_t w = static_cast<std::size_t>(width);
  std::vector<BigInt> acc(w);
  for (const auto& p : pts) {
    add_scaled(acc[static_cast<std::size_t>(p.label - lo)], *p.count, p.mult);
    ++stats.big_additions;
  }
  // One difference array per stride; entries s apart telescope.
  std::map<std::int64_t, std::vector<BigInt>> diffs;
  for (const auto& r : rgs) {
    auto& d = diffs[r.step];
    if (d.empty()) d.resize(w + static_cast<std::size_t>(r.step));
    d[static_cast<std::size_t>(r.lo - lo)] += *r.count;
    d[static_cast<std::size_t>(r.last - lo + r.step)] -= *r.count;
    stats.big_additions += 2;
  }
  for (auto& [step, d] : diffs) {
    const auto s = static_cast<std::size_t>(step);
    for (std::size_t i = 0; i < w; ++i) {
      if (i >= s && d[i - s] != 0) {
        d[i] += d[i - s];
        ++stats.big_additions;
      }
      if (d[i] != 0) {
        acc[i] += d[i];
        ++stats.big_additions;
      }
    }
  }
  return LevelMap::from_dense(lo, std::move(acc));
}

}  // namespace

CountTable count_levels(const EcoSpec& spec, std::size_t n, const CountOptions& opts) {
  CountTable t;
  t.system = spec.name;
  t.mode = spec.mode;
  t.axiom = spec.axiom;
  if (spec.axiom < min_label(spec))
    throw ValidationError(spec.name + ": axiom " + std::to_string(spec.axiom) + " is not an admissible label");
  t.levels.reserve(n + 1);
  t.levels.push_back(LevelMap::single(spec.axiom, 1));
  for (std::size_t i = 1; i <= n; ++i) t.levels.push_back(propagate(spec, t.levels.back(), opts, t.stats));
  for (const auto& level : t.levels) {
    BigInt total = 0, sum = 0;
    level.for_each([&](Label k, const BigInt& c) {
      total += c;
      mpz_addmul_ui(sum.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
    });
    t.totals.push_back(std::move(total));
    t.sums.push_back(std::move(sum));
    t.stats.peak_cells = std::max(t.stats.peak_cells, level.cells());
    t.stats.total_cells += level.cells();
  }
  return t;
}

Series series_F(const EcoSpec& spec, std::size_t order, const CountOptions& opts) {
  if (order == 0) return Series(0);
  const CountTable t = count_levels(spec, order - 1, opts);
  return Series::from_integers(std::span<const BigInt>(t.totals));
}

Series column_series(const CountTable& table, Label k) {
  std::vector<Rat> c;
  c.reserve(table.levels.size());
  for (const auto& level : table.levels) c.emplace_back(level.at(k));
  return Series(std::move(c));
}

std::string to_csv(const CountTable& table) {
  std::string s = "n,k,count\n";
  for (std::size_t n = 0; n < table.levels.size(); ++n)
    table.levels[n].for_each([&](Label k, const BigInt& c) {
      s += std::to_string(n) + "," + std::to_string(k) + "," + c.get_str() + "\n";
    });
  return s;
}

std::string totals_json(const CountTable& table) {
  nlohmann::json totals = nlohmann::json::array(), sums = nlohmann::json::array();
  for (const auto& v : table.totals) totals.push_back(v.get_str());
  for (const auto& v : table.sums) sums.push_back(v.get_str());
  nlohmann::json doc{{"system", table.system},
                     {"levels", table.depth()},
                     {"totals", std::move(totals)},
                     {"label_sums", std::move(sums)},
                     {"stats",
                      {{"big_additions", table.stats.big_additions},
                       {"peak_cells", table.stats.peak_cells},
                       {"total_cells", table.stats.total_cells}}}};
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- BackTable

namespace {

// Sorted row with lookup and strided range sums.
class RowIndex {
 public:
  explicit RowIndex(const BackTable::Row& row) : row_(row) {
    contiguous_ = row.labels.empty() ||
                  row.labels.back() - row.labels.front() + 1 == static_cast<Label>(row.labels.size());
  }

  const BigInt& at(Label l) const {
    const std::size_t i = index(l);
    return row_.values[i];
  }

  BigInt range_sum(Label lo, Label last, std::int64_t step, std::uint64_t& ops) {
    if (!contiguous_) {
      BigInt s = 0;
      for (Label l = lo; l <= last; l += step) {
        s += at(l);
        ++ops;
      }
      return s;
    }
    const auto& p = prefix(step);
    const std::size_t a = index(lo), b = index(last);
    const auto s = static_cast<std::size_t>(step);
    ++ops;
    return a >= s ? BigInt(p[b] - p[a - s]) : p[b];
  }

 private:
  std::size_t index(Label l) const {
    if (contiguous_ && !row_.labels.empty()) {
      const Label off = l - row_.labels.front();
      if (off < 0 || off >= static_cast<Label>(row_.labels.size()))
        throw std::out_of_range("label " + std::to_string(l) + " outside continuation row");
      return static_cast<std::size_t>(off);
    }
    auto it = std::lower_bound(row_.labels.begin(), row_.labels.end(), l);
    if (it == row_.labels.end() || *it != l)
      throw std::out_of_range("label " + std::to_string(l) + " outside continuation row");
    return static_cast<std::size_t>(it - row_.labels.begin());
  }

  const std::vector<BigInt>& prefix(std::int64_t step) {
    auto& p = prefixes_[step];
    if (p.empty()) {
      const auto s = static_cast<std::size_t>(step);
      p = row_.values;
      for (std::size_t i = s; i < p.size(); ++i) p[i] += p[i - s];
    }
    return p;
  }

  const BackTable::Row& row_;
  bool contiguous_ = true;
  std::map<std::int64_t, std::vector<BigInt>> prefixes_;
};

}  // namespace

const BigInt& BackTable::g(std::size_t m, Label k) const {
  const Row& r = rows_.at(m);
  auto it = std::lower_bound(r.labels.begin(), r.labels.end(), k);
  if (it == r.labels.end() || *it != k)
    throw std::out_of_range("label " + std::to_string(k) + " outside continuation row " + std::to_string(m));
  return r.values[static_cast<std::size_t>(it - r.labels.begin())];
}

bool BackTable::contains(std::size_t m, Label k) const {
  if (m >= rows_.size()) return false;
  return std::binary_search(rows_[m].labels.begin(), rows_[m].labels.end(), k);
}

std::size_t BackTable::cells() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.labels.size();
  return n;
}

BackTable back_table(const EcoSpec& spec, std::size_t n, const CountOptions& opts) {
  if (spec.axiom < min_label(spec))
    throw ValidationError(spec.name + ": axiom " + std::to_string(spec.axiom) + " is not an admissible label");
  // First depth at which each label becomes reachable.
  std::unordered_map<Label, std::size_t> depth{{spec.axiom, 0}};
  std::vector<Label> frontier{spec.axiom};
  for (std::size_t d = 0; d < n && !frontier.empty(); ++d) {
    std::vector<Label> next;
    for (Label k : frontier)
      for (const auto& t : expand(spec, k)) {
        check_label(spec, t.label, k, opts.cap);
        if (depth.emplace(t.label, d + 1).second) next.push_back(t.label);
      }
    frontier = std::move(next);
  }
  std::vector<std::pair<std::size_t, Label>> by_depth;
  by_depth.reserve(depth.size());
  for (const auto& [l, d] : depth) by_depth.emplace_back(d, l);

  BackTable table;
  table.rows_.resize(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    auto& row = table.rows_[m];
    for (const auto& [d, l] : by_depth)
      if (d + m <= n) row.labels.push_back(l);
    std::sort(row.labels.begin(), row.labels.end());
  }
  table.rows_[0].values.assign(table.rows_[0].labels.size(), BigInt(1));

  std::uint64_t ops = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    RowIndex prev(table.rows_[m - 1]);
    auto& row = table.rows_[m];
    row.values.resize(row.labels.size());
    for (std::size_t i = 0; i < row.labels.size(); ++i) {
      const Label k = row.labels[i];
      BigInt& g = row.values[i];
      for (const auto& prod : clause_for(spec, k).productions) {
        if (const auto* item = std::get_if<Item>(&prod)) {
          const std::int64_t mult = item->multiplicity.eval(k);
          if (mult < 0) throw ValidationError(spec.name + ": negative multiplicity at k=" + std::to_string(k));
          if (mult > 0) add_scaled(g, prev.at(item->label.eval(k)), mult);
          continue;
        }
        const auto& iv = std::get<Interval>(prod);
        const Label lo = iv.lo.eval(k), hi = iv.hi.eval(k);
        if (lo > hi) continue;
        const Label last = lo + (hi - lo) / iv.step * iv.step;
        g += prev.range_sum(lo, last, iv.step, ops);
        std::set<Label> skip;
        for (const auto& e : iv.excluded) {
          const Label x = e.eval(k);
          if (x >= lo && x <= last && (x - lo) % iv.step == 0) skip.insert(x);
        }
        for (Label x : skip) g -= prev.at(x);
      }
    }
  }
  return table;
}

// ---------------------------------------------------------------- sampling

Sampler::Sampler(const EcoSpec& spec, std::shared_ptr<const BackTable> table, std::uint64_t seed)
    : spec_(spec), table_(std::move(table)), rng_(seed) {}

BigInt Sampler::uniform_below(const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  BigInt x;
  while (true) {
    for (auto& w : buf) w = rng_();
    mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), bits);
    if (x < bound) return x;
  }
}

std::pair<Label, std::int64_t> Sampler::step_sequential(std::size_t remaining, Label k, BigInt r) {
  std::int64_t offset = 0;
  for (const auto& t : expand(spec_, k)) {
    const BigInt& g = table_->g(remaining - 1, t.label);
    BigInt w = g * t.count;
    if (r < w) {
      BigInt copy = r / g;
      return {t.label, offset + copy.get_si()};
    }
    r -= w;
    offset += t.count;
  }
  throw std::logic_error("step_sequential: draw exceeds continuation weight");
}

const Sampler::PrefixArray& Sampler::prefix(std::size_t remaining, Label k) {
  auto [it, fresh] = prefix_cache_.try_emplace({remaining, k});
  if (fresh) {
    PrefixArray& p = it->second;
    BigInt acc = 0;
    std::int64_t offset = 0;
    for (const auto& t : expand(spec_, k)) {
      acc += table_->g(remaining - 1, t.label) * t.count;
      p.cumulative.push_back(acc);
      p.labels.push_back(t.label);
      p.offsets.push_back(offset);
      offset += t.count;
    }
  }
  return it->second;
}

std::pair<Label, std::int64_t> Sampler::step_binary(std::size_t remaining, Label k, BigInt r) {
  const PrefixArray& p = prefix(remaining, k);
  auto it = std::upper_bound(p.cumulative.begin(), p.cumulative.end(), r);
  if (it == p.cumulative.end()) throw std::logic_error("step_binary: draw exceeds continuation weight");
  const auto i = static_cast<std::size_t>(it - p.cumulative.begin());
  if (i > 0) r -= p.cumulative[i - 1];
  BigInt copy = r / table_->g(remaining - 1, p.labels[i]);
  return {p.labels[i], p.offsets[i] + copy.get_si()};
}

WalkSample Sampler::draw(SampleStrategy strategy) {
  const std::size_t n = table_->depth();
  WalkSample w;
  Label k = spec_.axiom;
  w.labels.push_back(k);
  for (std::size_t m = n; m >= 1; --m) {
    BigInt r = uniform_below(table_->g(m, k));
    auto [next, idx] = strategy == SampleStrategy::sequential ? step_sequential(m, k, std::move(r))
                                                               : step_binary(m, k, std::move(r));
    w.labels.push_back(next);
    w.transitions.push_back(idx);
    k = next;
  }
  return w;
}

WalkSample sample_walk(const EcoSpec& spec, std::size_t n, std::uint64_t seed, SampleStrategy strategy) {
  auto table = std::make_shared<const BackTable>(back_table(spec, n));
  Sampler s(spec, table, seed);
  return s.draw(strategy);
}

// ---------------------------------------------------------------- antidiagonals

Stabilization antidiagonal_stabilization(const EcoSpec& spec, std::size_t n) {
  const CountTable t = count_levels(spec, n);
  const Label lo = min_label(spec);
  Stabilization s;
  for (std::size_t j = 0; j <= n; ++j) {
    const Label top = static_cast<Label>(j) + spec.axiom;
    if (auto mx = t.levels[j].max_label(); mx && *mx > top)
      throw ValidationError(spec.name + ": level " + std::to_string(j) + " holds label " + std::to_string(*mx) +
                            ", more than one above the previous level");
    std::vector<BigInt> row;
    for (Label k = 0; k <= top - lo; ++k) row.push_back(t.levels[j].at(top - k));
    s.g.push_back(std::move(row));
  }
  const auto& last = s.g.back();
  s.limit = last;
  s.settled_at.resize(last.size());
  for (std::size_t k = 0; k < last.size(); ++k) {
    std::size_t j = n;
    while (j > 0 && k < s.g[j - 1].size() && s.g[j - 1][k] == last[k]) --j;
    s.settled_at[k] = j;
  }
  return s;
}

}  // namespace ecogen
