#ifndef FLAGCERT_DETAIL_COMBINATORICS_HPP
#define FLAGCERT_DETAIL_COMBINATORICS_HPP

#include <span>
#include <vector>

namespace flagcert::detail {

// Calls fn(span) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    fn(std::span<const int>(c));
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Calls fn(span) for every k-subset of `pool` (elements kept in pool order).
template <typename Fn>
void for_each_subset_of(std::span<const int> pool, int k, Fn&& fn) {
  std::vector<int> chosen(k);
  for_each_combination(static_cast<int>(pool.size()), k, [&](std::span<const int> c) {
    for (int i = 0; i < k; ++i) chosen[i] = pool[c[i]];
    fn(std::span<const int>(chosen));
  });
}

// Calls fn(span) for every injective map {0..k-1} -> {0..n-1}.
template <typename Fn>
void for_each_arrangement(int n, int k, Fn&& fn) {
  std::vector<int> a(k);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == k) {
      fn(std::span<const int>(a));
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      a[pos] = v;
      self(self, pos + 1);
      used[v] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace flagcert::detail

#endif  // FLAGCERT_DETAIL_COMBINATORICS_HPP
