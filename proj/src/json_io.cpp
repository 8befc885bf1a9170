#include "fwcone/json_io.hpp"

#include <fstream>

namespace fwcone {

using nlohmann::json;

namespace {

Rational scalar_from_json(const json& v) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
    if (v.is_number_float()) return exact_rational(v.get<double>());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad scalar: ") + e.what());
  }
  throw InputError("expected a number or a \"p/q\" string, got " + v.dump());
}

json rational_to_json(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1 && boost::multiprecision::abs(r) < Rational(1LL << 53))
    return json(boost::multiprecision::numerator(r).convert_to<long long>());
  return json(to_string(r));
}

}  // namespace

SymMatrix<Rational> matrix_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw InputError("matrix document needs a \"rows\" array");
  const json& rows = doc["rows"];
  const std::size_t n = rows.size();
  if (n == 0) throw InputError("matrix must have at least one row");
  if (doc.contains("n") && (!doc["n"].is_number_integer() || doc["n"].get<long long>() != static_cast<long long>(n)))
    throw InputError("\"n\" does not match the number of rows");
  std::vector<std::vector<Rational>> full(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw InputError("matrix rows must form a square");
    for (const auto& v : rows[i]) {
      full[i].push_back(scalar_from_json(v));
      scale = std::max(scale, std::abs(to_double(full[i].back())));
    }
  }
  SymMatrix<Rational> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Rational& up = full[i][j];
      const Rational& lo = full[j][i];
      if (up == lo) {
        m(i, j) = up;
        continue;
      }
      if (std::abs(to_double(up - lo)) > 1e-12 * (1.0 + scale))
        throw InputError("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      m(i, j) = (up + lo) / 2;
    }
  }
  return m;
}

json matrix_to_json(const SymMatrix<Rational>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(rational_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"n", m.dim()}, {"rows", std::move(rows)}};
}

json matrix_to_json(const SymMatrix<double>& m) {
  return json{{"n", m.dim()}, {"rows", m.rows()}};
}

HomogeneousPoly poly_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("degree") || !doc.contains("terms"))
    throw InputError("polynomial document needs \"n\", \"degree\" and \"terms\"");
  try {
    const auto n = doc["n"].get<long long>();
    const auto degree = doc["degree"].get<long long>();
    if (n < 1 || degree < 0) throw InputError("polynomial needs n >= 1 and degree >= 0");
    HomogeneousPoly p(static_cast<std::size_t>(n), static_cast<int>(degree));
    for (const auto& term : doc["terms"]) {
      if (!term.contains("exp") || !term.contains("coef")) throw InputError("term needs \"exp\" and \"coef\"");
      p.add_term(ExponentTuple(term["exp"].get<std::vector<int>>()), scalar_from_json(term["coef"]));
    }
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad polynomial document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad polynomial document: ") + e.what());
  }
}

json poly_to_json(const HomogeneousPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(json{{"exp", e.exps}, {"coef", to_string(c)}});
  return json{{"n", p.num_vars()}, {"degree", p.degree()}, {"terms", std::move(terms)}};
}

std::vector<Support> supports_from_json(const json& doc) {
  const json& list = doc.is_object() && doc.contains("supports") ? doc["supports"] : doc;
  if (!list.is_array()) throw InputError("support document must be an array of index lists");
  std::vector<Support> out;
  try {
    for (const auto& s : list) out.emplace_back(s.get<std::vector<std::size_t>>());
  } catch (const json::exception& e) {
    throw InputError(std::string("bad support list: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad support list: ") + e.what());
  }
  return out;
}

json supports_to_json(const std::vector<Support>& supports) {
  json list = json::array();
  for (const auto& s : supports) list.push_back(s.indices());
  return json{{"supports", std::move(list)}};
}

json decomposition_to_json(const BlockDecomposition& d) {
  json blocks = json::array();
  for (const auto& b : d.blocks()) blocks.push_back(json{{"support", b.support.indices()}, {"rows", b.matrix.rows()}});
  return json{{"n", d.ambient_n()}, {"k", d.k()}, {"blocks", std::move(blocks)}, {"residual", d.residual()}};
}

json certificate_to_json(const DualCertificate& c) {
  return json{{"n", c.B.dim()},
              {"k", c.k},
              {"B", matrix_to_json(c.B)},
              {"value", c.value},
              {"worst_minor_margin", c.worst_minor_margin}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace fwcone
