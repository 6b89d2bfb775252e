#include "pbw/linalg.hpp"

#include "pbw/errors.hpp"

namespace pbw {

void axpy(SparseRow& y, const Rational& a, const SparseRow& x) {
  if (a == 0) return;
  auto hint = y.begin();
  for (const auto& [c, v] : x) {
    hint = y.lower_bound(c);
    if (hint != y.end() && hint->first == c) {
      hint->second += a * v;
      if (hint->second == 0) hint = y.erase(hint);
    } else {
      hint = y.emplace_hint(hint, c, a * v);
    }
  }
}

namespace {

// Ascending elimination; `tag` follows the same operations when given.
void eliminate(SparseRow& row, const std::map<int, SparseRow>& pivots, SparseRow* tag,
               const std::map<int, SparseRow>* tags) {
  auto it = row.begin();
  while (it != row.end()) {
    const int c = it->first;
    auto p = pivots.find(c);
    if (p == pivots.end()) {
      ++it;
      continue;
    }
    const Rational f = -it->second;
    axpy(row, f, p->second);
    if (tag) axpy(*tag, f, tags->at(c));
    it = row.upper_bound(c);
  }
}

}  // namespace

SparseRow Echelon::reduce(SparseRow row) const {
  eliminate(row, pivots_, nullptr, nullptr);
  return row;
}

bool Echelon::insert(SparseRow row) {
  const int index = inserted_++;
  SparseRow tag;
  if (track_) tag[index] = 1;
  eliminate(row, pivots_, track_ ? &tag : nullptr, &tags_);
  if (row.empty()) {
    if (track_) kernel_.push_back(std::move(tag));
    return false;
  }
  const int c = row.begin()->first;
  const Rational inv = 1 / row.begin()->second;
  for (auto& [k, v] : row) v *= inv;
  if (track_) {
    for (auto& [k, v] : tag) v *= inv;
    tags_.emplace(c, std::move(tag));
  }
  pivots_.emplace(c, std::move(row));
  return true;
}

int rank(const std::vector<SparseRow>& rows) {
  Echelon e;
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

std::optional<DenseMatrix> inverse(DenseMatrix a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw InvalidInput("inverse: matrix is not square");
  DenseMatrix inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[col]);
    std::swap(inv[p], inv[col]);
    const Rational s = 1 / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace pbw
