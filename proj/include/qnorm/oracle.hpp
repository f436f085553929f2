#pragma once

// Brute-force ground truth over small prime fields. Arithmetic here is
// plain machine-word modular arithmetic, deliberately independent of the
// exact-arithmetic kernel it is used to check.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qnorm::oracle {

/// Elements of F_p[t]/(f) encoded as integers: digit i in base p is the
/// coefficient of t^i.
using Code = std::uint64_t;
using Row = std::vector<std::uint64_t>;

/// Guard on the number of vectors an enumeration may visit.
inline constexpr std::uint64_t kMaxEnumeration = 10'000'000;

/// Determinant mod p by Gaussian elimination.
std::uint64_t determinant_mod(std::vector<Row> a, std::uint64_t p);

class FiniteAlgebra {
 public:
  /// modulus: ascending coefficients of a monic polynomial of degree >= 1.
  FiniteAlgebra(std::uint64_t p, Row modulus);

  std::uint64_t characteristic() const { return p_; }
  std::size_t degree() const { return n_; }
  const Row& modulus() const { return f_; }
  Code size() const { return size_; }

  Code encode(const Row& coeffs) const;
  Row decode(Code x) const;
  Code embed(std::uint64_t c) const { return c % p_; }
  Code one() const { return 1; }

  Code add(Code a, Code b) const;
  Code mul(Code a, Code b) const;

  /// det of multiplication by x on the basis 1, t, ..., t^{n-1}.
  std::uint64_t norm(Code x) const;
  bool is_unit(Code x) const { return norm(x) != 0; }

  /// f'(t) is a unit, i.e. the discriminant of f is nonzero.
  bool is_separable() const;

 private:
  Row multiply_rows(const Row& a, const Row& b) const;

  std::uint64_t p_;
  std::size_t n_;
  Row f_;
  Code size_;
  std::vector<std::uint32_t> table_;
};

/// {q(v) : v in E^m, q(v) a unit}, sorted. Gram entries are taken mod p.
std::vector<Code> enumerate_represented(const FiniteAlgebra& alg, const std::vector<Row>& gram);

/// Even and odd products of the generators (sorted); even contains 1.
struct ParitySets {
  std::vector<Code> even;
  std::vector<Code> odd;
};

ParitySets parity_closure(const FiniteAlgebra& alg, const std::vector<Code>& generators);

/// D0_q and D1_q of the form over the algebra.
ParitySets d0_d1(const FiniteAlgebra& alg, const std::vector<Row>& gram);

struct Violation {
  Row diagonal;
  Row modulus;
  Row element;
  std::uint64_t norm = 0;
  /// "D" for N(D_q(E)) in D_q(F), "D0" for N(D0_q(E)) in D0_q(F).
  std::string inclusion;
};

struct ExhaustiveReport {
  std::uint64_t p = 0;
  std::size_t pairs = 0;
  std::size_t elements_checked = 0;
  std::vector<Violation> violations;
};

/// Every diagonal nondegenerate form of rank in [min_rank, max_rank] against
/// every monic separable modulus of degree in [min_degree, max_degree].
ExhaustiveReport exhaustive_norm_principle_check(std::uint64_t p, std::size_t min_rank, std::size_t max_rank,
                                                 std::size_t min_degree, std::size_t max_degree);

}  // namespace qnorm::oracle
