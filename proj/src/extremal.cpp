#include "flagcert/extremal.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <string>

namespace flagcert {

Permutation tau_k(int n, int k) {
  if (k < 1 || n < k) throw std::invalid_argument("tau_k requires n >= k >= 1");
  std::vector<int> image;
  image.reserve(n);
  for (int j = k; j >= 1; --j) {
    const int lo = static_cast<int>(static_cast<long>(j - 1) * n / k);
    const int hi = static_cast<int>(static_cast<long>(j) * n / k);
    for (int v = lo + 1; v <= hi; ++v) image.push_back(v);
  }
  return Permutation(std::move(image));
}

MonotoneCount count_monotone4(const Permutation& p) {
  const int n = p.size();
  if (n < 4) throw std::invalid_argument("count_monotone4 requires n >= 4");
  MonotoneCount c;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int d = b + 1; d < n; ++d) {
        for (int e = d + 1; e < n; ++e) {
          if (p[a] < p[b] && p[b] < p[d] && p[d] < p[e]) ++c.increasing;
          if (p[a] > p[b] && p[b] > p[d] && p[d] > p[e]) ++c.decreasing;
        }
      }
    }
  }
  return c;
}

Integer mk_formula(long n, long k) {
  if (k < 1 || n < k) throw std::invalid_argument("mk_formula requires n >= k >= 1");
  const long r = n % k;
  const long lo = n / k;
  const long hi = lo + (r ? 1 : 0);
  return Integer(r) * binomial(hi, k + 1) + Integer(k - r) * binomial(lo, k + 1);
}

Integer lower_bound_formula(long n) {
  if (n < 4) throw std::invalid_argument("lower_bound_formula requires n >= 4");
  return binomial(n / 3, 4) + binomial((n + 1) / 3, 4) + binomial((n + 2) / 3, 4);
}

Graph turan_graph(int n) {
  if (n < 1) throw std::invalid_argument("turan_graph requires n >= 1");
  const int t1 = n / 3;
  const int t2 = static_cast<int>(2L * n / 3);
  const std::array<int, 3> parts = {n - t2, t2 - t1, t1};
  return complete_multipartite(parts);
}

Rational turan_independent4_density(int n) {
  if (n < 4) throw std::invalid_argument("density of co-K4 needs n >= 4");
  const int t1 = n / 3;
  const int t2 = static_cast<int>(2L * n / 3);
  Integer num = binomial(n - t2, 4) + binomial(t2 - t1, 4) + binomial(t1, 4);
  return make_rational(num, binomial(n, 4));
}

namespace {

using Pattern = std::array<int, 4>;  // indices into (a, b, c, d)

constexpr std::array<Pattern, 5> kOuterOptions = {
    Pattern{0, 1, 2, 3}, Pattern{0, 2, 1, 3}, Pattern{0, 2, 3, 1}, Pattern{2, 0, 1, 3},
    Pattern{2, 0, 3, 1}};
constexpr std::array<Pattern, 5> kInnerOptions = {
    Pattern{0, 1, 2, 3}, Pattern{3, 1, 2, 0}, Pattern{2, 1, 3, 0}, Pattern{3, 0, 2, 1},
    Pattern{2, 0, 3, 1}};

// Replaces the values (a, b, c, d), found at increasing positions, by the
// chosen rearrangement.
void replace(std::vector<int>& perm, const std::array<int, 4>& values, const Pattern& option) {
  std::array<int, 4> pos{};
  for (int t = 0; t < 4; ++t) {
    const auto it = std::find(perm.begin(), perm.end(), values[t]);
    pos[t] = static_cast<int>(it - perm.begin());
  }
  if (!(pos[0] < pos[1] && pos[1] < pos[2] && pos[2] < pos[3])) {
    throw std::logic_error("recipe subsequence is not in position order");
  }
  for (int t = 0; t < 4; ++t) perm[pos[t]] = values[option[t]];
}

}  // namespace

std::vector<Permutation> enumerate_W3(int n) {
  if (n < 15) throw std::invalid_argument("enumerate_W3 requires n >= 15");
  const int lo = n / 3;
  std::vector<Permutation> out;
  for (int b1 = lo; b1 <= lo + 1; ++b1) {
    for (int b2 = b1 + lo; b2 <= b1 + lo + 1; ++b2) {
      const int last = n - b2;
      if (last != lo && last != lo + 1) continue;
      std::vector<int> base;
      for (int v = b1; v >= 1; --v) base.push_back(v);
      for (int v = b2; v > b1; --v) base.push_back(v);
      for (int v = n; v > b2; --v) base.push_back(v);
      for (int choice = 0; choice < 625; ++choice) {
        std::vector<int> perm = base;
        int c = choice;
        replace(perm, {2, 1, b2, b2 - 1}, kOuterOptions[c % 5]);
        c /= 5;
        replace(perm, {b1 + 2, b1 + 1, n, n - 1}, kOuterOptions[c % 5]);
        c /= 5;
        replace(perm, {b1, b1 - 1, b1 + 2, b1 + 1}, kInnerOptions[c % 5]);
        c /= 5;
        replace(perm, {b2, b2 - 1, b2 + 2, b2 + 1}, kInnerOptions[c % 5]);
        Permutation p(std::move(perm));
        out.push_back(p.reversed());
        out.push_back(std::move(p));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Depth-first search keeping, for each placed position, the number of
// increasing and decreasing subsequences of lengths 1..3 ending there.
class MinimumSearch {
 public:
  explicit MinimumSearch(int n) : n_(n), used_(n + 1, false), values_(n), inc_(n), dec_(n) {
    best_ = count_monotone4(tau_k(n, 3)).total();
  }

  std::int64_t run() {
    extend(0, 0);
    return best_;
  }

 private:
  void extend(int depth, std::int64_t count) {
    if (count >= best_) return;
    if (depth == n_) {
      best_ = count;
      return;
    }
    for (int v = 1; v <= n_; ++v) {
      if (used_[v]) continue;
      // Reversal and reverse-complement: p(1) < p(n), p(1) + p(n) <= n + 1.
      if (depth == 0 && 2 * v > n_ + 1) continue;
      if (depth == n_ - 1 && (v < values_[0] || values_[0] + v > n_ + 1)) continue;
      std::array<std::int64_t, 3> inc{1, 0, 0}, dec{1, 0, 0};
      std::int64_t added = 0;
      for (int i = 0; i < depth; ++i) {
        if (values_[i] < v) {
          inc[1] += inc_[i][0];
          inc[2] += inc_[i][1];
          added += inc_[i][2];
        } else {
          dec[1] += dec_[i][0];
          dec[2] += dec_[i][1];
          added += dec_[i][2];
        }
      }
      used_[v] = true;
      values_[depth] = v;
      inc_[depth] = inc;
      dec_[depth] = dec;
      extend(depth + 1, count + added);
      used_[v] = false;
    }
  }

  int n_;
  std::int64_t best_;
  std::vector<bool> used_;
  std::vector<int> values_;
  std::vector<std::array<std::int64_t, 3>> inc_, dec_;
};

}  // namespace

std::int64_t brute_force_minimum(int n) {
  if (n < 4) throw std::invalid_argument("brute_force_minimum requires n >= 4");
  if (n > kMaxBruteForceOrder) {
    throw SizeExceeded("brute_force_minimum is capped at n = " + std::to_string(kMaxBruteForceOrder));
  }
  return MinimumSearch(n).run();
}

void write_extremal_report(int from, int to, std::ostream& out) {
  out << "n,formula,brute_force,w3\n";
  for (int n = std::max(from, 4); n <= to; ++n) {
    out << n << ',' << lower_bound_formula(n) << ',';
    if (n <= kMaxBruteForceOrder) out << brute_force_minimum(n);
    out << ',';
    if (n >= 15) out << enumerate_W3(n).size();
    out << '\n';
  }
}

}  // namespace flagcert
