#include "doctest.h"

#include <algorithm>
#include <vector>

#include "qnorm/etale.hpp"
#include "qnorm/oracle.hpp"
#include "qnorm/scalar.hpp"

using namespace qnorm;
using namespace qnorm::oracle;

namespace {

std::vector<Row> diag(std::initializer_list<std::uint64_t> d) {
  std::vector<Row> g(d.size(), Row(d.size(), 0));
  std::size_t i = 0;
  for (auto x : d) {
    g[i][i] = x;
    ++i;
  }
  return g;
}

bool contains(const std::vector<Code>& set, Code x) { return std::binary_search(set.begin(), set.end(), x); }

}  // namespace

TEST_CASE("determinant mod p") {
  CHECK(determinant_mod({{1, 2}, {3, 4}}, 7) == 5);  // -2 mod 7
  CHECK(determinant_mod({{0, 1}, {1, 0}}, 5) == 4);
  CHECK(determinant_mod({{2, 4}, {1, 2}}, 11) == 0);
  CHECK(determinant_mod({{3}}, 3) == 0);
}

TEST_CASE("finite algebra arithmetic agrees with the exact kernel") {
  const PrimeField F(7);
  const EtaleAlgebra<PrimeField> exact(Polynomial<PrimeField>(F, {F.element(4), F.element(1), F.one()}));
  const FiniteAlgebra alg(7, {4, 1, 1});
  CHECK(alg.size() == 49);
  CHECK(alg.is_separable());
  for (Code a = 0; a < alg.size(); ++a) {
    const auto ra = alg.decode(a);
    const auto ea = exact.element({F.element(ra[0]), F.element(ra[1])});
    CHECK(alg.norm(a) == norm(exact, ea).value());
    const Code b = (a * 11 + 5) % alg.size();
    const auto rb = alg.decode(b);
    const auto prod = ea * exact.element({F.element(rb[0]), F.element(rb[1])});
    CHECK(alg.mul(a, b) == alg.encode({prod.coeff(0).value(), prod.coeff(1).value()}));
  }
}

TEST_CASE("separability and moduli") {
  CHECK(FiniteAlgebra(3, {2, 0, 1}).is_separable());   // t^2 - 1
  CHECK_FALSE(FiniteAlgebra(3, {0, 0, 1}).is_separable());
  CHECK_FALSE(FiniteAlgebra(5, {1, 2, 1}).is_separable());  // (t + 1)^2
  CHECK(FiniteAlgebra(5, {2, 0, 1}).is_separable());   // irreducible
  CHECK_THROWS_AS(FiniteAlgebra(4, {1, 1}), MathError);
  CHECK_THROWS_AS(FiniteAlgebra(2, {1, 1}), MathError);
  CHECK_THROWS_AS(FiniteAlgebra(5, {1, 2}), MathError);
}

TEST_CASE("represented values") {
  const FiniteAlgebra f3(3, {0, 1}), f5(5, {0, 1});
  CHECK(enumerate_represented(f3, diag({1, 1})) == std::vector<Code>{1, 2});
  CHECK(enumerate_represented(f5, diag({1, 1})) == std::vector<Code>{1, 2, 3, 4});
  CHECK(enumerate_represented(f5, diag({1})) == std::vector<Code>{1, 4});
  CHECK(enumerate_represented(f5, diag({2})) == std::vector<Code>{2, 3});
  // a hyperbolic plane represents everything
  CHECK(enumerate_represented(f5, {{0, 1}, {1, 0}}) == std::vector<Code>{1, 2, 3, 4});
}

TEST_CASE("forms of rank two or more over F_p are universal") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const FiniteAlgebra fp(p, {0, 1});
    for (std::uint64_t a = 1; a < p; ++a)
      for (std::uint64_t b = 1; b < p; ++b) CHECK(enumerate_represented(fp, diag({a, b})).size() == p - 1);
  }
}

TEST_CASE("parity closure") {
  const FiniteAlgebra f5(5, {0, 1});
  const auto sets = parity_closure(f5, {2});
  CHECK(sets.even == std::vector<Code>{1, 4});
  CHECK(sets.odd == std::vector<Code>{2, 3});
  const auto trivial = parity_closure(f5, {});
  CHECK(trivial.even == std::vector<Code>{1});
  CHECK(trivial.odd.empty());
}

TEST_CASE("D0 is a subgroup containing the unit squares") {
  const FiniteAlgebra alg(3, {1, 0, 1});  // F_9
  for (const auto& gram : {diag({1}), diag({1, 1}), diag({1, 2}), diag({2, 2, 2})}) {
    const auto sets = d0_d1(alg, gram);
    CHECK(contains(sets.even, alg.one()));
    for (Code x : sets.even)
      for (Code y : sets.even) CHECK(contains(sets.even, alg.mul(x, y)));
    for (Code x = 0; x < alg.size(); ++x)
      if (alg.is_unit(x)) CHECK(contains(sets.even, alg.mul(x, x)));
  }
}

TEST_CASE("exhaustive norm principle over small fields") {
  const auto r3 = exhaustive_norm_principle_check(3, 1, 2, 1, 2);
  CHECK(r3.pairs > 0);
  CHECK(r3.elements_checked > 0);
  CHECK(r3.violations.empty());
  const auto r5 = exhaustive_norm_principle_check(5, 1, 2, 2, 2);
  CHECK(r5.pairs > 0);
  CHECK(r5.violations.empty());
}

TEST_CASE("enumeration guard") {
  const FiniteAlgebra alg(101, {3, 0, 1});
  CHECK_THROWS_AS(enumerate_represented(alg, diag({1, 1, 1, 1})), MathError);
  CHECK_THROWS_AS(exhaustive_norm_principle_check(101, 2, 4, 2, 2), MathError);
}
