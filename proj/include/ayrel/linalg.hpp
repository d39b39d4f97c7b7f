#pragma once

#include <vector>

#include "ayrel/errors.hpp"
#include "ayrel/rational.hpp"

namespace ayrel {

/// Exact rank over Q of a list of equal-length rational vectors, by
/// fraction-free (Bareiss) elimination on the denominator-cleared integer rows.
inline int rational_rank(const std::vector<std::vector<Rational>>& vectors) {
  if (vectors.empty()) return 0;
  const size_t cols = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != cols) throw Error(ErrorKind::InvalidArgument, "rank: vectors differ in length");
  if (cols == 0) return 0;

  std::vector<std::vector<Integer>> m;
  m.reserve(vectors.size());
  for (const auto& v : vectors) {
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> row;
    row.reserve(cols);
    for (const auto& q : v) row.push_back(q.get_num() * (l / q.get_den()));
    m.push_back(std::move(row));
  }

  const size_t rows = m.size();
  Integer prev = 1;
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (size_t r = rank + 1; r < rows; ++r) {
      for (size_t c = col + 1; c < cols; ++c) {
        Integer v = m[rank][col] * m[r][c] - m[r][col] * m[rank][c];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[r][c] = v;
      }
      m[r][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace ayrel
