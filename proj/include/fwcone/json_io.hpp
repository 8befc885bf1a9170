#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fwcone/dual_cone.hpp"
#include "fwcone/factor_width.hpp"
#include "fwcone/poly_forms.hpp"
#include "fwcone/sym_matrix.hpp"

namespace fwcone {

/// Malformed or inconsistent input documents.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix documents: {"n": 3, "rows": [[...], ...]}. Entries are JSON numbers
// or strings "p/q"; numbers are taken at their exact binary value. Rows that
// differ from their transpose by more than 1e-12 relative are rejected.
SymMatrix<Rational> matrix_from_json(const nlohmann::json& doc);
nlohmann::json matrix_to_json(const SymMatrix<Rational>& m);
nlohmann::json matrix_to_json(const SymMatrix<double>& m);

// Polynomial documents: {"n": 2, "degree": 2, "terms": [{"exp": [1, 1], "coef": "2"}]}.
HomogeneousPoly poly_from_json(const nlohmann::json& doc);
nlohmann::json poly_to_json(const HomogeneousPoly& p);

// Support lists: {"supports": [[0, 1, 3], ...]} or a bare array, 0-based.
std::vector<Support> supports_from_json(const nlohmann::json& doc);
nlohmann::json supports_to_json(const std::vector<Support>& supports);

nlohmann::json decomposition_to_json(const BlockDecomposition& d);
nlohmann::json certificate_to_json(const DualCertificate& c);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace fwcone
