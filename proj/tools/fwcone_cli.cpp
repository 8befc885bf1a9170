// fwcone: command line front end. Every command prints one JSON report on
// stdout; exit codes are 0 member/found, 1 non_member, 2 inconclusive/none,
// 64 malformed input, 65 Gram and polynomial disagree.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fwcone/dual_cone.hpp"
#include "fwcone/factor_width.hpp"
#include "fwcone/families.hpp"
#include "fwcone/json_io.hpp"
#include "fwcone/poly_forms.hpp"
#include "fwcone/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fwcone;

namespace {

constexpr int kExitMember = 0;
constexpr int kExitNonMember = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitMalformed = 64;
constexpr int kExitGramMismatch = 65;

struct Report {
  json doc;
  int exit_code = kExitInconclusive;

  Report(const std::string& command, unsigned seed) {
    doc = json{{"command", command}, {"seed", seed}, {"values", json::object()}, {"artifacts", json::array()}};
  }
  void verdict(const std::string& v, int code) {
    doc["verdict"] = v;
    exit_code = code;
  }
  json& values() { return doc["values"]; }
  void artifact(const fs::path& path, const json& content) {
    write_json_file(path, content);
    doc["artifacts"].push_back(path.string());
  }
};

// "M.json" -> "M.<suffix>.json" in the same directory.
fs::path beside(const std::string& input, const std::string& suffix) {
  fs::path p(input);
  return p.parent_path() / (p.stem().string() + "." + suffix + ".json");
}

void membership_values(Report& rep, const MembershipVerdict& v) {
  rep.values()["iterations"] = v.diagnostics.iterations;
  rep.values()["primal_residual"] = v.diagnostics.primal_residual;
  if (v.diagnostics.best_dual_value < 0.0 || v.status == Membership::kInconclusive)
    rep.values()["best_dual_value"] = v.diagnostics.best_dual_value;
  if (v.decomposition) rep.values()["residual"] = v.decomposition->residual();
  if (v.certificate) {
    rep.values()["certificate_value"] = v.certificate->value;
    rep.values()["certificate_normalized_value"] = v.certificate->normalized_value();
    rep.values()["worst_minor_margin"] = v.certificate->worst_minor_margin;
    rep.values()["certificate_source"] = v.diagnostics.certificate_source;
  }
}

void membership_artifacts(Report& rep, const MembershipVerdict& v, const std::string& input) {
  if (v.decomposition) rep.artifact(beside(input, "decomposition"), decomposition_to_json(*v.decomposition));
  if (v.certificate) rep.artifact(beside(input, "certificate"), certificate_to_json(*v.certificate));
}

int membership_exit(Membership m) {
  switch (m) {
    case Membership::kMember:
      return kExitMember;
    case Membership::kNonMember:
      return kExitNonMember;
    default:
      return kExitInconclusive;
  }
}

std::size_t checked_k(long long k, std::size_t n) {
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw InputError("k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  return static_cast<std::size_t>(k);
}

struct Common {
  unsigned seed = 0;
  int threads = 1;
  double tol = 1e-7;
  int max_iter = 20000;
};

Report cmd_check_fw(const Common& c, const std::string& file, long long k_in, const std::string& supports_file) {
  Report rep("check-fw", c.seed);
  const auto a = matrix_from_json(read_json_file(file));
  const std::size_t k = checked_k(k_in, a.dim());
  SolverOptions opts;
  opts.feas_tol = c.tol;
  opts.max_iter = c.max_iter;
  opts.threads = c.threads;
  if (!supports_file.empty()) opts.support_list = supports_from_json(read_json_file(supports_file));
  opts.validate();
  const MembershipVerdict v = fw_membership(a.cast<double>(), k, opts);
  rep.doc["input"] = file;
  rep.doc["k"] = k;
  rep.verdict(to_string(v.status), membership_exit(v.status));
  membership_values(rep, v);
  membership_artifacts(rep, v, file);
  return rep;
}

Report cmd_check_dual(const Common& c, const std::string& file, long long k_in, std::optional<double> tol) {
  Report rep("check-dual", c.seed);
  const auto b = matrix_from_json(read_json_file(file));
  const std::size_t k = checked_k(k_in, b.dim());
  const DualMembershipReport r = tol ? dual_membership(b.cast<double>(), k, *tol) : dual_membership(b, k, 0.0);
  rep.doc["input"] = file;
  rep.doc["k"] = k;
  rep.verdict(r.member ? "member" : "non_member", r.member ? kExitMember : kExitNonMember);
  rep.values()["worst_margin"] = r.worst_margin;
  rep.values()["worst_support"] = r.worst_support.indices();
  rep.values()["supports_checked"] = r.supports_checked;
  rep.values()["exact"] = r.exact;
  return rep;
}

Report cmd_soks(const Common& c, const std::string& file, long long k_in, const std::string& gram_file, int r,
                const std::vector<std::string>& lambda_text) {
  Report rep("soks", c.seed);
  HomogeneousPoly p = poly_from_json(read_json_file(file));
  if (p.degree() % 2 != 0) throw InputError("polynomial degree must be even");
  if (r < 0) throw InputError("-r must be nonnegative");
  if (r > 0) {
    if (p.degree() != 2) throw InputError("the multiplier path needs a quadratic input");
    std::vector<Rational> lambda(p.num_vars(), Rational(1));
    if (!lambda_text.empty()) {
      if (lambda_text.size() != p.num_vars()) throw InputError("--lambda needs one value per variable");
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        try {
          lambda[i] = parse_rational(lambda_text[i]);
        } catch (const std::invalid_argument& e) {
          throw InputError(std::string("bad --lambda entry: ") + e.what());
        }
      }
    }
    p = multiply_weighted_power(QuadraticForm{quadratic_gram(p)}, lambda, r);
  }
  const std::size_t half = static_cast<std::size_t>(p.degree() / 2);
  const MonomialBasis basis = monomial_basis(p.num_vars(), static_cast<int>(half));
  const std::size_t k = checked_k(k_in, basis.size());

  SymMatrix<Rational> gram(1);
  std::string gram_source;
  std::optional<MonomialBasis> gram_basis;
  if (!gram_file.empty()) {
    gram = matrix_from_json(read_json_file(gram_file));
    gram_source = gram_file;
    // A 5-variable degree-4 Gram of the fixture shape may use its own order.
    const json doc = read_json_file(gram_file);
    if (doc.contains("basis")) {
      std::vector<ExponentTuple> tuples;
      for (const auto& e : doc["basis"]) tuples.emplace_back(e.get<std::vector<int>>());
      try {
        gram_basis = MonomialBasis::from_tuples(tuples);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("bad Gram basis: ") + e.what());
      }
    }
  } else if (p.degree() == 2) {
    gram = quadratic_gram(p);
    gram_source = "unique";
  } else {
    gram = default_gram(p, basis);
    gram_source = "default";
  }
  const MonomialBasis& used = gram_basis ? *gram_basis : basis;
  if (gram.dim() != used.size())
    throw GramMismatch("Gram dimension " + std::to_string(gram.dim()) + " does not match basis size " +
                       std::to_string(used.size()));

  SolverOptions opts;
  opts.feas_tol = c.tol;
  opts.max_iter = c.max_iter;
  opts.threads = c.threads;
  opts.validate();
  const SoksVerdict v = soks_test(p, k, gram, used, opts);
  rep.doc["input"] = file;
  rep.doc["k"] = k;
  rep.verdict(to_string(v.verdict.status), membership_exit(v.verdict.status));
  rep.values()["gram_conditional"] = v.gram_conditional;
  rep.values()["gram_source"] = gram_source;
  rep.values()["degree"] = p.degree();
  rep.values()["r"] = r;
  membership_values(rep, v.verdict);
  membership_artifacts(rep, v.verdict, file);
  return rep;
}

Report cmd_pna(const Common& c, long long n_in, long long k_in, const std::string& a_text) {
  Report rep("pna", c.seed);
  if (n_in < 2) throw InputError("pna needs n >= 2");
  const std::size_t n = static_cast<std::size_t>(n_in);
  if (k_in < 2 || static_cast<std::size_t>(k_in) > n) throw InputError("pna needs 2 <= k <= n");
  const std::size_t k = static_cast<std::size_t>(k_in);
  const Rational threshold = pna_threshold(n, k);
  Rational a = threshold;
  if (!a_text.empty()) {
    try {
      a = parse_rational(a_text);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("bad a: ") + e.what());
    }
  }
  rep.doc["n"] = n;
  rep.doc["k"] = k;
  rep.values()["threshold"] = to_string(threshold);
  rep.values()["threshold_value"] = to_double(threshold);
  rep.values()["a"] = to_string(a);
  if (a >= threshold) {
    const auto d = pna_witness_decomposition(n, k, a);
    rep.values()["witness_blocks"] = d.blocks().size();
    rep.values()["witness_block"] = matrix_to_json(d.blocks().front().matrix);
    rep.values()["residual"] = to_double(d.residual());
    rep.verdict("member", kExitMember);
  } else {
    SolverOptions opts;
    opts.feas_tol = c.tol;
    opts.max_iter = c.max_iter;
    opts.threads = c.threads;
    const MembershipVerdict v = fw_membership(pna_form({n, a}).Q.cast<double>(), k, opts);
    rep.verdict(to_string(v.status), membership_exit(v.status));
    membership_values(rep, v);
  }
  return rep;
}

Report cmd_certify(const Common& c, const std::string& file, long long k_in, const std::string& method) {
  Report rep("certify", c.seed);
  const auto q = matrix_from_json(read_json_file(file)).cast<double>();
  const std::size_t k = checked_k(k_in, q.dim());
  std::optional<DualCertificate> cert;
  std::string used;
  const bool cos_ok = q.dim() == 4 && k == 3;
  if (method == "cos" && !cos_ok) throw InputError("the cosine search needs a 4 x 4 matrix and k = 3");
  if ((method == "auto" || method == "cos") && cos_ok) {
    cert = cos_certificate_search(q).certificate;
    used = "cosine_family";
  }
  if (!cert && (method == "auto" || method == "dykstra")) {
    cert = dykstra_dual_certificate(q, k);
    used = "dykstra";
  }
  rep.doc["input"] = file;
  rep.doc["k"] = k;
  rep.values()["method"] = used;
  if (cert) {
    rep.verdict("found", kExitMember);
    rep.values()["certificate_value"] = cert->value;
    rep.values()["certificate_normalized_value"] = cert->normalized_value();
    rep.values()["worst_minor_margin"] = cert->worst_minor_margin;
    rep.artifact(beside(file, "certificate"), certificate_to_json(*cert));
  } else {
    rep.verdict("none", kExitInconclusive);
  }
  return rep;
}

Report cmd_eig(const Common& c, const std::string& file, double tol) {
  Report rep("eig", c.seed);
  const auto a = matrix_from_json(read_json_file(file)).cast<double>();
  const EigenResult e = eigen_sym(a);
  const PsdReport psd = is_psd(a, tol);
  rep.doc["input"] = file;
  rep.values()["eigenvalues"] = e.eigenvalues;
  rep.values()["sweeps"] = e.sweeps;
  rep.values()["min_eigenvalue"] = psd.min_eigenvalue;
  rep.values()["tolerance_used"] = psd.tolerance_used;
  rep.verdict(psd.is_psd ? "psd" : "not_psd", kExitMember);
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factor-width cone membership, dual certificates and so-k-s checks"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Seed for randomized steps (none are currently used)")->capture_default_str();

  std::string file, supports_file, gram_file, a_text, method = "auto";
  long long k = 0, n = 0;
  int r = 0;
  std::vector<std::string> lambda;
  std::optional<double> dual_tol;
  double eig_tol = kDefaultPsdTolerance;

  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--tol", common.tol, "Feasibility tolerance, relative to 1 + max|A_ij|")->capture_default_str();
    sub->add_option("--max-iter", common.max_iter, "Splitting iteration limit")->capture_default_str();
    sub->add_option("--threads", common.threads, "Worker threads for block projections")->capture_default_str();
  };

  auto* fw = app.add_subcommand("check-fw", "Decide membership in FW_k^n");
  fw->add_option("matrix", file, "Matrix JSON")->required();
  fw->add_option("k", k, "Width")->required();
  fw->add_option("--supports", supports_file, "Support list JSON (0-based)");
  add_solver_flags(fw);

  auto* dual = app.add_subcommand("check-dual", "Decide membership in the dual cone");
  dual->add_option("matrix", file, "Matrix JSON")->required();
  dual->add_option("k", k, "Width")->required();
  dual->add_option("--tol", dual_tol, "Floating tolerance; exact arithmetic when omitted");

  auto* soks = app.add_subcommand("soks", "Test a polynomial for a sum of k-nomial squares");
  soks->add_option("poly", file, "Polynomial JSON")->required();
  soks->add_option("k", k, "Width")->required();
  soks->add_option("--gram", gram_file, "Gram matrix JSON");
  soks->add_option("-r", r, "Multiplier power")->capture_default_str();
  soks->add_option("--lambda", lambda, "Multiplier weights, one per variable")->delimiter(',');
  add_solver_flags(soks);

  auto* pna = app.add_subcommand("pna", "Threshold and witness for p_n^a");
  pna->add_option("n", n, "Variables")->required();
  pna->add_option("k", k, "Width")->required();
  pna->add_option("a", a_text, "Diagonal weight (defaults to the threshold)");
  add_solver_flags(pna);

  auto* certify = app.add_subcommand("certify", "Search for a separating dual certificate");
  certify->add_option("matrix", file, "Matrix JSON")->required();
  certify->add_option("k", k, "Width")->required();
  certify->add_option("--method", method, "auto, cos or dykstra")
      ->check(CLI::IsMember({"auto", "cos", "dykstra"}))
      ->capture_default_str();

  auto* eig = app.add_subcommand("eig", "Eigenvalues and psd verdict");
  eig->add_option("matrix", file, "Matrix JSON")->required();
  eig->add_option("--tol", eig_tol, "Relative psd tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMalformed;
  }

  try {
    std::optional<Report> rep;
    if (*fw) rep = cmd_check_fw(common, file, k, supports_file);
    else if (*dual) rep = cmd_check_dual(common, file, k, dual_tol);
    else if (*soks) rep = cmd_soks(common, file, k, gram_file, r, lambda);
    else if (*pna) rep = cmd_pna(common, n, k, a_text);
    else if (*certify) rep = cmd_certify(common, file, k, method);
    else if (*eig) rep = cmd_eig(common, file, eig_tol);
    std::cout << rep->doc.dump(2) << '\n';
    return rep->exit_code;
  } catch (const GramMismatch& e) {
    std::cerr << "fwcone: Gram matrix does not represent the polynomial: " << e.what() << '\n';
    return kExitGramMismatch;
  } catch (const InputError& e) {
    std::cerr << "fwcone: malformed input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fwcone: invalid input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::out_of_range& e) {
    std::cerr << "fwcone: invalid input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::domain_error& e) {
    std::cerr << "fwcone: invalid input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "fwcone: error: " << e.what() << '\n';
    return kExitInconclusive;
  }
}
