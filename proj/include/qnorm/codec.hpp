#pragma once

// JSON encodings. Scalars are written as strings in the domain's text
// format and read from strings or JSON integers; polynomials and algebra
// elements are ascending coefficient arrays.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qnorm/domain.hpp"
#include "qnorm/errors.hpp"
#include "qnorm/etale.hpp"
#include "qnorm/matrix.hpp"
#include "qnorm/quadform.hpp"
#include "qnorm/witness.hpp"

namespace qnorm::codec {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

inline const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) parse_fail(key, "missing field");
  return doc.at(key);
}

inline const Json& require_array(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array");
  return j;
}

/// Reads a JSON document, reporting syntax errors with their position.
inline Json parse_document(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(where, e.what());
  }
}

template <ScalarDomain D>
Json encode_scalar(const D& dom, const typename D::Element& x) {
  return dom.format(x);
}

template <ScalarDomain D>
typename D::Element decode_scalar(const D& dom, const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return dom.parse(j.dump());
    if (j.is_string()) return dom.parse(j.get<std::string>());
  } catch (const ParseError& e) {
    parse_fail(where, e.what());
  } catch (const MathError& e) {
    parse_fail(where, e.what());
  }
  parse_fail(where, "expected an integer or a string scalar");
}

template <ScalarDomain D>
Json encode_scalars(const D& dom, const std::vector<typename D::Element>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(encode_scalar(dom, x));
  return out;
}

template <ScalarDomain D>
std::vector<typename D::Element> decode_scalars(const D& dom, const Json& j, const std::string& where) {
  require_array(j, where);
  std::vector<typename D::Element> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_scalar(dom, j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <ScalarDomain D>
Json encode_polynomial(const Polynomial<D>& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(encode_scalar(p.domain(), c));
  return out;
}

/// Monic modulus of degree >= 1.
template <ScalarDomain D>
Polynomial<D> decode_modulus(const D& dom, const Json& j, const std::string& where = "modulus") {
  Polynomial<D> f(dom, decode_scalars(dom, j, where));
  if (f.degree() < 1) parse_fail(where, "degree must be at least 1");
  if (!f.is_monic()) parse_fail(where, "not monic");
  return f;
}

template <ScalarDomain D>
EtaleAlgebra<D> decode_algebra(const D& dom, const Json& j, const std::string& where = "modulus") {
  auto f = decode_modulus(dom, j, where);
  try {
    return EtaleAlgebra<D>(std::move(f));
  } catch (const MathError& e) {
    if (e.code() == ErrorCode::NotSeparable) parse_fail(where, "not separable");
    throw;
  }
}

template <ScalarDomain D>
Json encode_element(const AlgebraElement<D>& x) {
  Json out = Json::array();
  for (std::size_t i = 0; i < x.degree(); ++i) out.push_back(encode_scalar(x.parent()->base, x.coeff(i)));
  return out;
}

template <ScalarDomain D>
AlgebraElement<D> decode_element(const EtaleAlgebra<D>& alg, const Json& j, const std::string& where) {
  auto c = decode_scalars(alg.base(), j, where);
  if (c.size() > alg.degree()) parse_fail(where, "more coefficients than the algebra degree");
  return alg.element(std::move(c));
}

template <ScalarDomain D>
Json encode_vector(const D& dom, const QVector<D>& v) {
  return encode_scalars(dom, v);
}

template <ScalarDomain D>
Json encode_vector(const EtaleAlgebra<D>&, const QVector<EtaleAlgebra<D>>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(encode_element(x));
  return out;
}

template <ScalarDomain D>
QVector<EtaleAlgebra<D>> decode_vector(const EtaleAlgebra<D>& alg, const Json& j, const std::string& where) {
  require_array(j, where);
  QVector<EtaleAlgebra<D>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_element(alg, j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <Ring R, class Encode>
Json encode_matrix(const Matrix<typename R::Element>& m, Encode encode) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

/// Square matrix; decode(entry, where) reads one entry.
template <Ring R, class Decode>
Matrix<typename R::Element> decode_matrix(const R& ring, const Json& j, const std::string& where, Decode decode) {
  require_array(j, where);
  const std::size_t n = j.size();
  if (n == 0) parse_fail(where, "empty matrix");
  Matrix<typename R::Element> m(n, n, ring.zero());
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    require_array(j[i], row_where);
    if (j[i].size() != n) parse_fail(row_where, "matrix is not square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = decode(j[i][k], row_where + "[" + std::to_string(k) + "]");
  }
  return m;
}

template <ScalarDomain D>
Json encode_gram(const QuadraticSpace<D>& space) {
  const D& dom = space.ring();
  return encode_matrix<D>(space.gram(), [&](const auto& x) { return encode_scalar(dom, x); });
}

/// A Gram matrix as nested arrays, or "I<m>" for the identity of rank m.
template <ScalarDomain D>
QuadraticSpace<D> decode_gram(const D& dom, const Json& j, const std::string& where = "gram") {
  Matrix<typename D::Element> g(1, 1, dom.zero());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t m = 0;
    if (s.size() < 2 || s[0] != 'I' || s.find_first_not_of("0123456789", 1) != std::string::npos ||
        (m = std::stoul(s.substr(1))) == 0 || m > 64)
      parse_fail(where, "expected a matrix or I<m>");
    g = identity_matrix(dom, m);
  } else {
    g = decode_matrix(dom, j, where, [&](const Json& e, const std::string& w) { return decode_scalar(dom, e, w); });
  }
  for (std::size_t a = 0; a < g.rows(); ++a)
    for (std::size_t b = a + 1; b < g.cols(); ++b)
      if (!(g(a, b) == g(b, a))) parse_fail(where, "not symmetric");
  return QuadraticSpace<D>(dom, std::move(g));
}

template <ScalarDomain D>
Json encode_witness(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg, const QVector<EtaleAlgebra<D>>& u,
                    const Witness<D>& w) {
  const D& dom = alg.base();
  Json factors = Json::array();
  for (const auto& f : w.factors)
    factors.push_back(Json{{"vector", encode_vector(dom, f.vector)}, {"value", encode_scalar(dom, f.value)}});
  return Json{{"base", dom.tag()},
              {"gram", encode_gram(space)},
              {"modulus", encode_polynomial(alg.modulus())},
              {"vector", encode_vector(alg, u)},
              {"input", encode_element(w.input)},
              {"factors", std::move(factors)},
              {"norm", encode_scalar(dom, w.norm)},
              {"parity", w.parity},
              {"seed", w.seed},
              {"retries", w.retries}};
}

/// Witness fields of a document written by encode_witness.
template <ScalarDomain D>
Witness<D> decode_witness(const EtaleAlgebra<D>& alg, const Json& doc) {
  const D& dom = alg.base();
  Witness<D> w{{}, decode_element(alg, require(doc, "input"), "input"), decode_scalar(dom, require(doc, "norm"), "norm"),
               0, 0, 0};
  const auto& factors = require_array(require(doc, "factors"), "factors");
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const std::string where = "factors[" + std::to_string(k) + "]";
    w.factors.push_back({decode_scalars(dom, require(factors[k], "vector"), where + ".vector"),
                         decode_scalar(dom, require(factors[k], "value"), where + ".value")});
  }
  const auto& parity = require(doc, "parity");
  if (!parity.is_number_integer()) parse_fail("parity", "expected 0 or 1");
  w.parity = parity.get<int>();
  if (doc.contains("seed") && doc["seed"].is_number_unsigned()) w.seed = doc["seed"].get<std::uint64_t>();
  return w;
}

}  // namespace qnorm::codec
