#include "qnorm/oracle.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "qnorm/errors.hpp"

namespace qnorm::oracle {

namespace {

constexpr Code kTableLimit = 1024;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

/// base^exp, or 0 once it would exceed limit.
std::uint64_t bounded_power(std::uint64_t base, std::size_t exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > limit / base) return 0;
    r *= base;
  }
  return r;
}

}  // namespace

std::uint64_t determinant_mod(std::vector<Row> a, std::uint64_t p) {
  const std::size_t n = a.size();
  std::uint64_t det = 1 % p;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] % p == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = (p - det) % p;
    }
    const std::uint64_t piv = a[col][col] % p;
    det = mul_mod(det, piv, p);
    const std::uint64_t inv = pow_mod(piv, p - 2, p);
    for (std::size_t r = col + 1; r < n; ++r) {
      const std::uint64_t factor = mul_mod(a[r][col] % p, inv, p);
      if (factor == 0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] = (a[r][c] % p + p - mul_mod(factor, a[col][c] % p, p)) % p;
    }
  }
  return det;
}

FiniteAlgebra::FiniteAlgebra(std::uint64_t p, Row modulus) : p_(p), f_(std::move(modulus)) {
  if (!is_odd_prime(p_) || p_ >= (1ULL << 31)) fail(ErrorCode::InvalidModulus, "oracle needs an odd prime below 2^31");
  for (auto& c : f_) c %= p_;
  while (!f_.empty() && f_.back() == 0) f_.pop_back();
  if (f_.size() < 2 || f_.back() != 1) fail(ErrorCode::InvalidModulus, "oracle modulus must be monic of degree >= 1");
  n_ = f_.size() - 1;
  size_ = bounded_power(p_, n_, ~0ULL / p_);
  if (size_ == 0) fail(ErrorCode::DomainTooLarge, "p^n does not fit a machine word");
  if (size_ <= kTableLimit) {
    table_.resize(size_ * size_);
    for (Code a = 0; a < size_; ++a)
      for (Code b = a; b < size_; ++b) {
        const auto c = static_cast<std::uint32_t>(encode(multiply_rows(decode(a), decode(b))));
        table_[a * size_ + b] = c;
        table_[b * size_ + a] = c;
      }
  }
}

Code FiniteAlgebra::encode(const Row& coeffs) const {
  Code x = 0;
  for (std::size_t i = std::min(coeffs.size(), n_); i-- > 0;) x = x * p_ + coeffs[i] % p_;
  return x;
}

Row FiniteAlgebra::decode(Code x) const {
  Row out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

Code FiniteAlgebra::add(Code a, Code b) const {
  Code out = 0, scale = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Row FiniteAlgebra::multiply_rows(const Row& a, const Row& b) const {
  Row prod(2 * n_ - 1, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], p_)) % p_;
  // t^k = -(f_0 + ... + f_{n-1} t^{n-1}) t^{k-n}
  for (std::size_t k = prod.size(); k-- > n_;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < n_; ++i) prod[k - n_ + i] = (prod[k - n_ + i] + p_ - mul_mod(c, f_[i], p_)) % p_;
  }
  prod.resize(n_);
  return prod;
}

Code FiniteAlgebra::mul(Code a, Code b) const {
  if (!table_.empty()) return table_[a * size_ + b];
  return encode(multiply_rows(decode(a), decode(b)));
}

std::uint64_t FiniteAlgebra::norm(Code x) const {
  std::vector<Row> m(n_, Row(n_, 0));
  const Row xr = decode(x);
  Row basis(n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    std::fill(basis.begin(), basis.end(), 0);
    basis[j] = 1;
    const Row col = multiply_rows(xr, basis);
    for (std::size_t i = 0; i < n_; ++i) m[i][j] = col[i];
  }
  return determinant_mod(std::move(m), p_);
}

bool FiniteAlgebra::is_separable() const {
  Row derivative(n_, 0);
  for (std::size_t i = 1; i <= n_; ++i) derivative[i - 1] = mul_mod(i % p_, f_[i], p_);
  return is_unit(encode(derivative));
}

std::vector<Code> enumerate_represented(const FiniteAlgebra& alg, const std::vector<Row>& gram) {
  const std::size_t m = gram.size();
  for (const auto& row : gram)
    if (row.size() != m) fail(ErrorCode::DimensionMismatch, "oracle Gram matrix must be square");
  const std::uint64_t p = alg.characteristic();
  const std::uint64_t total = bounded_power(alg.size(), m, kMaxEnumeration);
  if (total == 0) fail(ErrorCode::DomainTooLarge, "more than 10^7 vectors to enumerate");

  std::vector<Code> g(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[i * m + j] = alg.embed((i == j ? 1 : 2) * (gram[i][j] % p));

  std::vector<bool> seen(alg.size(), false);
  std::vector<bool> unit(alg.size(), false);
  for (Code x = 0; x < alg.size(); ++x) unit[x] = alg.is_unit(x);

  std::vector<Code> v(m, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t r = k;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = r % alg.size();
      r /= alg.size();
    }
    Code value = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = i; j < m; ++j) {
        if (v[j] == 0 || g[i * m + j] == 0) continue;
        value = alg.add(value, alg.mul(g[i * m + j], alg.mul(v[i], v[j])));
      }
    }
    if (unit[value]) seen[value] = true;
  }
  std::vector<Code> out;
  for (Code x = 0; x < alg.size(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

ParitySets parity_closure(const FiniteAlgebra& alg, const std::vector<Code>& generators) {
  std::vector<bool> reached[2] = {std::vector<bool>(alg.size(), false), std::vector<bool>(alg.size(), false)};
  std::deque<std::pair<Code, int>> queue{{alg.one(), 0}};
  reached[0][alg.one()] = true;
  while (!queue.empty()) {
    const auto [x, parity] = queue.front();
    queue.pop_front();
    for (const Code g : generators) {
      const Code y = alg.mul(x, g);
      const int q = parity ^ 1;
      if (reached[q][y]) continue;
      reached[q][y] = true;
      queue.emplace_back(y, q);
    }
  }
  ParitySets out;
  for (Code x = 0; x < alg.size(); ++x) {
    if (reached[0][x]) out.even.push_back(x);
    if (reached[1][x]) out.odd.push_back(x);
  }
  return out;
}

ParitySets d0_d1(const FiniteAlgebra& alg, const std::vector<Row>& gram) {
  return parity_closure(alg, enumerate_represented(alg, gram));
}

ExhaustiveReport exhaustive_norm_principle_check(std::uint64_t p, std::size_t min_rank, std::size_t max_rank,
                                                 std::size_t min_degree, std::size_t max_degree) {
  if (min_rank < 1 || min_rank > max_rank || min_degree < 1 || min_degree > max_degree)
    fail(ErrorCode::DimensionMismatch, "empty rank or degree range");
  ExhaustiveReport report;
  report.p = p;
  const FiniteAlgebra base(p, {0, 1});

  for (std::size_t n = min_degree; n <= max_degree; ++n) {
    if (bounded_power(p, n * max_rank, kMaxEnumeration) == 0)
      fail(ErrorCode::DomainTooLarge, "more than 10^7 vectors to enumerate");
    const std::uint64_t moduli = bounded_power(p, n, kMaxEnumeration);
    for (std::uint64_t code = 0; code < moduli; ++code) {
      Row f(n + 1, 0);
      std::uint64_t r = code;
      for (std::size_t i = 0; i < n; ++i) {
        f[i] = r % p;
        r /= p;
      }
      f[n] = 1;
      const FiniteAlgebra alg(p, f);
      if (!alg.is_separable()) continue;

      for (std::size_t m = min_rank; m <= max_rank; ++m) {
        const std::uint64_t forms = bounded_power(p - 1, m, kMaxEnumeration);
        for (std::uint64_t fc = 0; fc < forms; ++fc) {
          Row diagonal(m);
          std::uint64_t s = fc;
          for (std::size_t i = 0; i < m; ++i) {
            diagonal[i] = 1 + s % (p - 1);
            s /= p - 1;
          }
          std::vector<Row> gram(m, Row(m, 0));
          for (std::size_t i = 0; i < m; ++i) gram[i][i] = diagonal[i];

          const auto over_base = d0_d1(base, gram);
          std::vector<bool> in_d(p, false), in_d0(p, false);
          for (const Code x : over_base.even) in_d[x] = in_d0[x] = true;
          for (const Code x : over_base.odd) in_d[x] = true;

          const auto over_alg = d0_d1(alg, gram);
          ++report.pairs;
          auto check = [&](Code x, const std::vector<bool>& target, const char* which) {
            ++report.elements_checked;
            const std::uint64_t nx = alg.norm(x);
            if (!target[nx]) report.violations.push_back({diagonal, f, alg.decode(x), nx, which});
          };
          for (const Code x : over_alg.even) {
            check(x, in_d, "D");
            check(x, in_d0, "D0");
          }
          for (const Code x : over_alg.odd) check(x, in_d, "D");
        }
      }
    }
  }
  return report;
}

}  // namespace qnorm::oracle
