#include "qnorm/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "qnorm/codec.hpp"
#include "qnorm/local_ring.hpp"
#include "qnorm/oracle.hpp"
#include "qnorm/scalar.hpp"
#include "qnorm/spinor.hpp"
#include "qnorm/witness.hpp"

namespace qnorm::cli {

namespace {

using codec::Json;
using Base = std::variant<RationalField, PrimeField, LocalRing>;

/// Flags and fixture merged into one document; flags win.
struct Request {
  std::string command;
  Json doc = Json::object();
  std::uint64_t seed = 0;
  int retries = DeterministicSampler::kDefaultRetries;
  std::int64_t height = DeterministicSampler::kDefaultHeight;
  std::size_t min_rank = 2, max_rank = 2, min_degree = 1, max_degree = 2;
};

Base parse_base(const std::string& tag) {
  if (tag == "Q") return RationalField{};
  if (tag == "Qx0") return LocalRing{};
  if (tag.rfind("Fp:", 0) == 0) {
    const std::string digits = tag.substr(3);
    if (digits.empty() || digits.size() > 18 || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("base: malformed prime in \"" + tag + "\"");
    try {
      return PrimeField(std::stoull(digits));
    } catch (const MathError& e) {
      throw ParseError(std::string("base: ") + e.what());
    }
  }
  throw ParseError("base: expected Q, Fp:<p> or Qx0, got \"" + tag + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Flag text is JSON when it looks like JSON, otherwise a bare string.
Json flag_value(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{' || text[first] == '"'))
    return codec::parse_document(text, "flag value");
  return text;
}

std::string base_tag(const Request& r) {
  if (!r.doc.contains("base")) return "Q";
  if (!r.doc["base"].is_string()) throw ParseError("base: expected a string");
  return r.doc["base"].get<std::string>();
}

template <ScalarDomain D>
QVector<EtaleAlgebra<D>> input_vector(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg, const Json& doc) {
  auto u = codec::decode_vector(alg, codec::require(doc, "vector"), "vector");
  if (u.size() != space.rank()) throw ParseError("vector: length differs from the Gram rank");
  return u;
}

template <ScalarDomain D>
Matrix<typename D::Element> base_matrix(const D& dom, const QuadraticSpace<D>& space, const Json& doc) {
  auto m = codec::decode_matrix(dom, codec::require(doc, "matrix"), "matrix",
                                [&](const Json& e, const std::string& w) { return codec::decode_scalar(dom, e, w); });
  if (m.rows() != space.rank()) throw ParseError("matrix: size differs from the Gram rank");
  return m;
}

template <ScalarDomain D>
Json mirror_list(const QuadraticSpace<D>& space, const std::vector<QVector<D>>& mirrors) {
  Json out = Json::array();
  for (const auto& w : mirrors)
    out.push_back(Json{{"vector", codec::encode_vector(space.ring(), w)},
                       {"value", codec::encode_scalar(space.ring(), space.evaluate(w))}});
  return out;
}

template <ScalarDomain D>
Json run_witness(const D& dom, const Request& r, DeterministicSampler& s, int&) {
  const auto space = codec::decode_gram(dom, codec::require(r.doc, "gram"));
  const auto alg = codec::decode_algebra(dom, codec::require(r.doc, "modulus"));
  const auto u = input_vector(space, alg, r.doc);
  return codec::encode_witness(space, alg, u, norm_principle_witness(space, alg, u, s));
}

template <ScalarDomain D>
Json run_verify(const D& dom, const Request& r, DeterministicSampler&, int& status) {
  const auto space = codec::decode_gram(dom, codec::require(r.doc, "gram"));
  const auto alg = codec::decode_algebra(dom, codec::require(r.doc, "modulus"));
  const auto u = input_vector(space, alg, r.doc);
  const auto w = codec::decode_witness(alg, r.doc);
  const auto result = verify_witness(space, alg, u, w);
  if (!result.ok) status = kRejected;
  return Json{{"ok", result.ok}, {"reason", result.reason}};
}

template <ScalarDomain D>
Json run_norm(const D& dom, const Request& r, DeterministicSampler&, int&) {
  const auto alg = codec::decode_algebra(dom, codec::require(r.doc, "modulus"));
  Json out{{"base", dom.tag()}, {"modulus", codec::encode_polynomial(alg.modulus())}};
  AlgebraElement<D> a = alg.zero();
  if (r.doc.contains("element")) {
    a = codec::decode_element(alg, r.doc["element"], "element");
  } else {
    const auto space = codec::decode_gram(dom, codec::require(r.doc, "gram"));
    const auto u = input_vector(space, alg, r.doc);
    a = base_change(space, alg).evaluate(u);
    out["gram"] = codec::encode_gram(space);
    out["vector"] = codec::encode_vector(alg, u);
  }
  out["element"] = codec::encode_element(a);
  out["norm"] = codec::encode_scalar(dom, norm(alg, a));
  out["norm_by_resultant"] = codec::encode_scalar(dom, norm_by_resultant(alg, a));
  return out;
}

template <ScalarDomain D>
Json run_decompose(const D& dom, const Request& r, DeterministicSampler& s, int&) {
  const auto space = codec::decode_gram(dom, codec::require(r.doc, "gram"));
  const auto a = base_matrix(dom, space, r.doc);
  const auto d = cartan_dieudonne(space, a, s);
  return Json{{"base", dom.tag()},
              {"gram", codec::encode_gram(space)},
              {"matrix", r.doc["matrix"]},
              {"mirrors", mirror_list(space, d.mirrors)},
              {"mirror_count", d.mirrors.size()},
              {"determinant", codec::encode_scalar(dom, determinant(dom, a))},
              {"spinor_norm", codec::encode_scalar(dom, spinor_norm(space, d))},
              {"seed", s.seed()}};
}

template <ScalarDomain D>
Json run_spinor_norm(const D& dom, const Request& r, DeterministicSampler& s, int&) {
  const auto space = codec::decode_gram(dom, codec::require(r.doc, "gram"));
  const auto a = base_matrix(dom, space, r.doc);
  const auto d = cartan_dieudonne(space, a, s);
  return Json{{"base", dom.tag()},
              {"gram", codec::encode_gram(space)},
              {"matrix", r.doc["matrix"]},
              {"spinor_norm", codec::encode_scalar(dom, spinor_norm(space, d))},
              {"mirror_count", d.mirrors.size()},
              {"special", d.mirrors.size() % 2 == 0},
              {"seed", s.seed()}};
}

template <ScalarDomain D>
Json run_transfer(const D& dom, const Request& r, DeterministicSampler& s, int& status) {
  const auto space = codec::decode_gram(dom, codec::require(r.doc, "gram"));
  const auto alg = codec::decode_algebra(dom, codec::require(r.doc, "modulus"));
  const auto g = codec::decode_matrix(alg, codec::require(r.doc, "matrix"), "matrix",
                                      [&](const Json& e, const std::string& w) { return codec::decode_element(alg, e, w); });
  if (g.rows() != space.rank()) throw ParseError("matrix: size differs from the Gram rank");
  const auto result = transfer_check(space, alg, g, s);
  if (!result.ok) status = kRejected;
  Json mirrors = Json::array();
  const auto space_e = base_change(space, alg);
  for (const auto& w : result.decomposition.mirrors)
    mirrors.push_back(Json{{"vector", codec::encode_vector(alg, w)}, {"value", codec::encode_element(space_e.evaluate(w))}});
  Json factors = Json::array();
  for (const auto& f : result.witness.factors)
    factors.push_back(Json{{"vector", codec::encode_vector(dom, f.vector)}, {"value", codec::encode_scalar(dom, f.value)}});
  return Json{{"base", dom.tag()},
              {"gram", codec::encode_gram(space)},
              {"modulus", codec::encode_polynomial(alg.modulus())},
              {"matrix", r.doc["matrix"]},
              {"mirrors", std::move(mirrors)},
              {"spinor_norm", codec::encode_element(result.witness.input)},
              {"norm", codec::encode_scalar(dom, result.witness.norm)},
              {"factors", std::move(factors)},
              {"parity", result.witness.parity},
              {"ok", result.ok},
              {"seed", s.seed()}};
}

Json oracle_element(const oracle::FiniteAlgebra& alg, oracle::Code x) { return alg.decode(x); }

Json oracle_set(const oracle::FiniteAlgebra& alg, const std::vector<oracle::Code>& xs) {
  Json out = Json::array();
  for (const auto x : xs) out.push_back(oracle_element(alg, x));
  return out;
}

std::vector<oracle::Row> oracle_rows(const PrimeField& dom, const Json& j, const std::string& where) {
  std::vector<oracle::Row> out;
  const auto space = codec::decode_gram(dom, j, where);
  for (std::size_t i = 0; i < space.rank(); ++i) {
    oracle::Row row;
    for (std::size_t k = 0; k < space.rank(); ++k) row.push_back(space.gram()(i, k).value());
    out.push_back(std::move(row));
  }
  return out;
}

Json run_oracle(const PrimeField& dom, const Request& r, int& status) {
  const std::uint64_t p = dom.modulus();
  if (r.doc.contains("gram")) {
    oracle::Row f{0, 1};
    if (r.doc.contains("modulus")) {
      f.clear();
      const auto modulus = codec::decode_modulus(dom, r.doc["modulus"]);
      for (const auto& c : modulus.coefficients()) f.push_back(c.value());
    }
    const oracle::FiniteAlgebra alg(p, f);
    if (!alg.is_separable()) throw ParseError("modulus: not separable");
    const auto gram = oracle_rows(dom, r.doc["gram"], "gram");
    const auto represented = oracle::enumerate_represented(alg, gram);
    const auto sets = oracle::parity_closure(alg, represented);
    return Json{{"base", dom.tag()},
                {"gram", r.doc["gram"]},
                {"modulus", f},
                {"represented", oracle_set(alg, represented)},
                {"d0", oracle_set(alg, sets.even)},
                {"d1", oracle_set(alg, sets.odd)}};
  }
  const auto report = oracle::exhaustive_norm_principle_check(p, r.min_rank, r.max_rank, r.min_degree, r.max_degree);
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back(Json{{"diagonal", v.diagonal},
                              {"modulus", v.modulus},
                              {"element", v.element},
                              {"norm", v.norm},
                              {"inclusion", v.inclusion}});
  if (!report.violations.empty()) status = kRejected;
  return Json{{"base", dom.tag()},
              {"ranks", {r.min_rank, r.max_rank}},
              {"degrees", {r.min_degree, r.max_degree}},
              {"pairs", report.pairs},
              {"elements_checked", report.elements_checked},
              {"violations", std::move(violations)},
              {"ok", report.violations.empty()}};
}

template <ScalarDomain D>
Json dispatch(const D& dom, const Request& r, int& status) {
  DeterministicSampler s(r.seed, r.height, r.retries);
  if (r.command == "witness") return run_witness(dom, r, s, status);
  if (r.command == "verify") return run_verify(dom, r, s, status);
  if (r.command == "norm") return run_norm(dom, r, s, status);
  if (r.command == "decompose") return run_decompose(dom, r, s, status);
  if (r.command == "spinor-norm") return run_spinor_norm(dom, r, s, status);
  if (r.command == "transfer-check") return run_transfer(dom, r, s, status);
  if (r.command == "oracle") {
    if constexpr (std::is_same_v<D, PrimeField>) {
      return run_oracle(dom, r, status);
    } else {
      throw ParseError("base: the oracle needs --base Fp:<p>");
    }
  }
  throw ParseError("unknown command " + r.command);
}

Json error_report(const std::string& code, const std::string& message) {
  return Json{{"error", code}, {"message", message}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Exact norm-principle witnesses, spinor norms and finite-field oracles"};
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::optional<std::string> fixture, out_path;
  Request r;
  bool seed_given = false;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"witness", "witness that N(q_E(u)) is a product of values of q"},
      {"verify", "re-check a witness document"},
      {"norm", "N(a) by determinant and by resultant"},
      {"spinor-norm", "spinor norm of an isometry"},
      {"decompose", "reflection decomposition of an isometry"},
      {"transfer-check", "even witness for N(SN_E(g)) with g in SO(q_E)"},
      {"oracle", "brute-force value sets and norm-principle sweep over F_p"}};
  const std::vector<std::pair<std::string, std::string>> json_flags{
      {"base", "Q | Fp:<p> | Qx0"},
      {"gram", "Gram matrix as JSON, or I<m>"},
      {"modulus", "monic modulus, ascending coefficients"},
      {"vector", "vector over E: one coefficient array per coordinate"},
      {"matrix", "row-major matrix"},
      {"element", "element of E as a coefficient array"}};

  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&r, name = name] { r.command = name; });
    for (const auto& [flag, flag_help] : json_flags)
      sub->add_option_function<std::string>("--" + flag, [&flags, flag = flag](const std::string& v) { flags[flag] = v; },
                                             flag_help);
    sub->add_option("--fixture", fixture, "JSON document supplying any of the fields above");
    sub->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t v) { r.seed = v; seed_given = true; }, "sampler seed");
    sub->add_option("--retries", r.retries, "rejected draws allowed per sampling loop")->check(CLI::PositiveNumber);
    sub->add_option("--height", r.height, "bound on sampled numerators and denominators")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "write the JSON result to this file");
    if (name == "oracle") {
      sub->add_option("--min-rank", r.min_rank)->check(CLI::PositiveNumber);
      sub->add_option("--max-rank", r.max_rank)->check(CLI::PositiveNumber);
      sub->add_option("--min-degree", r.min_degree)->check(CLI::PositiveNumber);
      sub->add_option("--max-degree", r.max_degree)->check(CLI::PositiveNumber);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << error_report("ParseError", e.what()).dump(2) << "\n";
    return kParseError;
  }

  int status = kOk;
  Json result;
  try {
    if (fixture) {
      r.doc = codec::parse_document(read_file(*fixture), *fixture);
      if (!r.doc.is_object()) throw ParseError(*fixture + ": expected a JSON object");
      if (!seed_given && r.doc.contains("seed") && r.doc["seed"].is_number_unsigned())
        r.seed = r.doc["seed"].get<std::uint64_t>();
    }
    for (const auto& [flag, text] : flags) r.doc[flag] = flag_value(text);
    const Base base = parse_base(base_tag(r));
    result = std::visit([&](const auto& dom) { return dispatch(dom, r, status); }, base);
  } catch (const ParseError& e) {
    out << error_report("ParseError", e.what()).dump(2) << "\n";
    return kParseError;
  } catch (const MathError& e) {
    out << error_report(std::string(to_string(e.code())), e.what()).dump(2) << "\n";
    return e.is_internal() ? kInternalError : kMathError;
  } catch (const std::exception& e) {
    out << error_report("InternalInvariant", e.what()).dump(2) << "\n";
    return kInternalError;
  }

  const std::string text = result.dump(2) + "\n";
  if (out_path) {
    std::ofstream file(*out_path, std::ios::binary);
    if (!file) {
      out << error_report("ParseError", *out_path + ": cannot write file").dump(2) << "\n";
      return kParseError;
    }
    file << text;
  } else {
    out << text;
  }
  return status;
}

}  // namespace qnorm::cli
