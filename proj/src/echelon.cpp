#include "torelli/echelon.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace torelli {

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second == 0; });
}

SparseVector SparseVector::from_dense(const RationalVector& v) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) entries.emplace_back(i, v[i]);
  SparseVector out;
  out.entries_ = std::move(entries);
  return out;
}

SparseVector SparseVector::unit(std::size_t index) {
  SparseVector out;
  out.entries_.emplace_back(index, Rational(1));
  return out;
}

Rational SparseVector::at(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  return (it != entries_.end() && it->first == index) ? it->second : Rational(0);
}

RationalVector SparseVector::to_dense(std::size_t length) const {
  RationalVector out(length);
  for (const auto& [i, v] : entries_) out.at(i) = v;
  return out;
}

void SparseVector::scale(const Rational& s) {
  if (s == 0) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= s;
}

void add_scaled(std::unordered_map<std::size_t, Rational>& acc, const Rational& a, const SparseVector& x) {
  if (a == 0) return;
  for (const auto& [i, v] : x.entries()) acc[i] += a * v;
}

SparseVector collect(const std::unordered_map<std::size_t, Rational>& acc) {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(acc.size());
  for (const auto& [i, v] : acc)
    if (v != 0) entries.emplace_back(i, v);
  return SparseVector(std::move(entries));
}

SparseVector EchelonSpace::reduce(const SparseVector& v) const {
  std::map<std::size_t, Rational> work;
  for (const auto& [i, x] : v.entries()) work.emplace(i, x);
  auto it = work.begin();
  while (it != work.end()) {
    auto pr = pivot_row_.find(it->first);
    if (pr == pivot_row_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const Rational factor = it->second;
    for (const auto& [j, x] : rows_[pr->second].entries()) {
      auto [pos, inserted] = work.try_emplace(j, 0);
      pos->second -= factor * x;
      if (pos->second == 0) work.erase(pos);
    }
    it = work.upper_bound(col);
  }
  std::vector<SparseVector::Entry> entries(work.begin(), work.end());
  return SparseVector(std::move(entries));
}

bool EchelonSpace::insert(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  Rational lead = r.entries().front().second;
  r.scale(1 / lead);
  pivot_row_.emplace(r.leading(), rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

void EchelonSpace::reduce_fully() {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rows_[a].leading() > rows_[b].leading(); });
  // Rows with larger pivots are finished first; subtracting a finished row
  // cannot reintroduce entries at any finished pivot.
  for (std::size_t idx : order) {
    SparseVector& row = rows_[idx];
    bool touched = false;
    std::map<std::size_t, Rational> work;
    for (const auto& [i, x] : row.entries()) work.emplace(i, x);
    const std::size_t lead = row.leading();
    auto it = work.upper_bound(lead);
    while (it != work.end()) {
      auto pr = pivot_row_.find(it->first);
      if (pr == pivot_row_.end()) {
        ++it;
        continue;
      }
      touched = true;
      const std::size_t col = it->first;
      const Rational factor = it->second;
      for (const auto& [j, x] : rows_[pr->second].entries()) {
        auto [pos, inserted] = work.try_emplace(j, 0);
        pos->second -= factor * x;
        if (pos->second == 0) work.erase(pos);
      }
      it = work.upper_bound(col);
    }
    if (touched) row = SparseVector(std::vector<SparseVector::Entry>(work.begin(), work.end()));
  }
}

std::vector<std::size_t> EchelonSpace::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.leading());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> EchelonSpace::free_columns(std::size_t columns) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < columns; ++c)
    if (!is_pivot(c)) out.push_back(c);
  return out;
}

std::vector<SparseVector> EchelonSpace::kernel_basis(std::size_t columns) const {
  // column -> (pivot, value) over all rows
  std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> by_column;
  for (const auto& row : rows_) {
    const std::size_t p = row.leading();
    for (const auto& [j, x] : row.entries())
      if (j != p) by_column[j].emplace_back(p, x);
  }
  std::vector<SparseVector> out;
  for (std::size_t f : free_columns(columns)) {
    std::vector<SparseVector::Entry> entries;
    entries.emplace_back(f, Rational(1));
    if (auto it = by_column.find(f); it != by_column.end())
      for (const auto& [p, x] : it->second) entries.emplace_back(p, -x);
    out.emplace_back(std::move(entries));
  }
  return out;
}

}  // namespace torelli
