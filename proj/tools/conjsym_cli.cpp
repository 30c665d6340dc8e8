// conjsym: batch analysis of the conjugations C with C U C = U* for a unitary U.
//
// Exit codes: 0 success/member, 1 negative verdict, 2 parse error,
// 3 not unitary, 4 residual failure, 5 too many clusters, 6 bad parameters.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "conjsym/conjsym.hpp"

namespace {

using namespace conjsym;
using io::json;

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kParse = 2,
  kNotUnitary = 3,
  kResidual = 4,
  kSize = 5,
  kParams = 6,
};

struct Config {
  double cluster_tol = 1e-8;
  double residual_tol = 1e-9;
  std::uint64_t seed = 0;
  std::string out;
};

json config_json(const Config& c) {
  return {{"cluster_tol", c.cluster_tol}, {"residual_tol", c.residual_tol}, {"seed", c.seed}};
}

void emit(const Config& cfg, const json& report) {
  if (cfg.out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    io::write_json_file(cfg.out, report);
  }
}

ComplexMatrix load_unitary(const std::string& path) {
  ComplexMatrix u = io::read_matrix_file(path);
  if (u.rows() != u.cols()) throw ParseError(path + ": matrix is not square");
  require_unitary(u, 1e-8);
  return u;
}

json factorization_json(const UnitaryFactorization& f, const ComplexMatrix& u, double tol) {
  return {{"j1", io::conjugation_to_json(f.j1)},
          {"j2", io::conjugation_to_json(f.j2)},
          {"product_residual", f.product_residual},
          {"j1_member_residual", is_csymmetric(u, f.j1, tol).residual},
          {"j2_member_residual", is_csymmetric(u, f.j2, tol).residual}};
}

int cmd_analyze(const Config& cfg, const std::string& input) {
  const ComplexMatrix u = load_unitary(input);
  const auto p = parametrize(u, cfg.cluster_tol);
  const Conjugation canonical = canonical_member(p);
  const auto factors = factor_unitary(u, cfg.cluster_tol);
  json report = {{"command", "analyze"},
                 {"input", input},
                 {"config", config_json(cfg)},
                 {"unitary_residual", check_unitary(u, 1e-8).residual},
                 {"parametrization", io::parametrization_to_json(p)},
                 {"canonical_member", io::conjugation_to_json(canonical)},
                 {"canonical_member_residual", is_csymmetric(u, canonical, cfg.residual_tol).residual},
                 {"factorization", factorization_json(factors, u, cfg.residual_tol)}};
  emit(cfg, report);
  std::cerr << "analyze: n = " << u.rows() << ", d = " << p.block_count() << ", block dims [";
  for (std::size_t j = 0; j < p.block_dims.size(); ++j) std::cerr << (j ? ", " : "") << p.block_dims[j];
  std::cerr << "], |J1 J2 - U| = " << factors.product_residual << '\n';
  return kOk;
}

int cmd_sample(const Config& cfg, const std::string& input, std::size_t count) {
  const ComplexMatrix u = load_unitary(input);
  const auto p = parametrize(u, cfg.cluster_tol);
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
  std::filesystem::create_directories(dir);
  Rng rng(cfg.seed);
  json table = json::array();
  bool all_ok = true;
  const ComplexMatrix id = identity(u.rows());
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t member_seed = rng.next_seed();
    const Conjugation c = sample_member(p, member_seed);
    const double csym = is_csymmetric(u, c, cfg.residual_tol).residual;
    const double involution = (compose(c.op(), c.op()) - id).norm();
    const bool ok = csym <= cfg.residual_tol && involution <= cfg.residual_tol;
    all_ok = all_ok && ok;
    std::ostringstream name;
    name << "member_" << std::setw(4) << std::setfill('0') << k << ".json";
    io::write_json_file((dir / name.str()).string(), io::conjugation_to_json(c));
    table.push_back({{"file", name.str()},
                     {"seed", member_seed},
                     {"csymmetry_residual", csym},
                     {"involution_residual", involution},
                     {"ok", ok}});
  }
  json report = {{"command", "sample"},
                 {"input", input},
                 {"config", config_json(cfg)},
                 {"count", count},
                 {"directory", dir.string()},
                 {"block_dims", p.block_dims},
                 {"residuals", std::move(table)},
                 {"all_ok", all_ok}};
  std::cout << report.dump(2) << '\n';
  std::cerr << "sample: wrote " << count << " members to " << dir.string()
            << (all_ok ? "" : " (some residuals exceed tolerance)") << '\n';
  return all_ok ? kOk : kResidual;
}

int cmd_verify(const Config& cfg, const std::string& unitary_path, const std::string& conj_path) {
  const ComplexMatrix u = load_unitary(unitary_path);
  const json cj = io::read_json_file(conj_path);
  if (!cj.is_object() || !cj.contains("kind") || cj["kind"] != "antilinear")
    throw ParseError(conj_path + ": conjugation must carry \"kind\": \"antilinear\"");
  const ComplexMatrix a = io::matrix_from_json(cj);
  if (a.rows() != a.cols()) throw ParseError(conj_path + ": matrix is not square");
  if (a.rows() != u.rows()) throw ParseError("unitary and conjugation sizes differ");

  const AntilinearOp op(a);
  const auto conj_check = is_conjugation(op, cfg.residual_tol);
  json report = {{"command", "verify"},
                 {"unitary", unitary_path},
                 {"conjugation", conj_path},
                 {"config", config_json(cfg)},
                 {"is_conjugation", conj_check.ok},
                 {"conjugation_unitary_residual", conj_check.unitary_residual},
                 {"conjugation_symmetry_residual", conj_check.symmetry_residual}};
  bool member = false;
  if (conj_check.ok) {
    const Conjugation c(a, cfg.residual_tol);
    const auto csym = is_csymmetric(u, c, cfg.residual_tol);
    report["csymmetry_residual"] = csym.residual;
    member = csym.ok;
    const auto p = parametrize(u, cfg.cluster_tol);
    report["block_dims"] = p.block_dims;
    try {
      report["blocks"] = io::blocks_to_json(extract_blocks(p, c, cfg.residual_tol));
      report["extraction"] = "ok";
    } catch (const NotMember& e) {
      report["extraction"] = "not_member";
      report["off_block_mass"] = e.off_block_mass();
      report["block_defect"] = e.block_defect();
    }
  }
  report["member"] = member;
  emit(cfg, report);
  std::cerr << "verify: " << (member ? "member" : "not a member");
  if (report.contains("off_block_mass")) std::cerr << " (off-block mass " << report["off_block_mass"].get<double>() << ")";
  std::cerr << '\n';
  return member ? kOk : kNegative;
}

int cmd_lattice(const Config& cfg, const std::string& input, std::size_t subspaces, std::size_t members) {
  const ComplexMatrix u = load_unitary(input);
  const auto dec = spectral_decompose_unitary(u, cfg.cluster_tol);
  const auto audit = equivalence_audit(dec, subspaces, cfg.seed, members);
  json report = {{"command", "lattice"},
                 {"input", input},
                 {"config", config_json(cfg)},
                 {"witness_members_per_subspace", members},
                 {"clusters", io::clusters_to_json(dec)},
                 {"audit", io::audit_to_json(audit)}};
  emit(cfg, report);
  std::cerr << "lattice: " << audit.lattice.size() << " hyperinvariant subspaces, "
            << audit.lattice_failures() << " failures, " << audit.inconclusive()
            << " inconclusive random subspaces\n";
  return audit.passed() ? kOk : kNegative;
}

json conjugation_residuals(const ComplexMatrix& u, const Conjugation& c) {
  const ComplexMatrix id = identity(u.rows());
  return {{"involution", (compose(c.op(), c.op()) - id).norm()},
          {"isometry", check_unitary(c.matrix(), 1.0).residual},
          {"symmetry", symmetry_residual(c.matrix())},
          {"csymmetry", is_csymmetric(u, c, 1.0).residual}};
}

int cmd_shift_demo(const Config& cfg, std::size_t n, std::size_t power, const std::string& family,
                   double s, double lambda, double theta) {
  if (n < 2 || power < 1) throw RangeError("shift-demo needs n >= 2 and N >= 1");
  const PowerShiftModel model(n, power);
  PhiSymbol phi;
  if (family == "constant-phase") {
    phi = constant_phase_symbol(model, theta);
  } else if (family == "sincos") {
    phi = sincos_symbol(model);
  } else if (family == "lambda-drift") {
    phi = lambda_drift_symbol(model, s, lambda);
  } else {
    throw RangeError("unknown family '" + family + "'");
  }

  Rng rng(cfg.seed);
  const ComplexVector f = rng.complex_gaussian(static_cast<Eigen::Index>(model.size()), 1);
  const auto parts = wold_transform(model, f);
  double split = 0.0;
  for (const auto& part : parts) split += part.squaredNorm();
  const double roundtrip = (wold_inverse(model, parts) - f).norm();
  const double parseval = std::abs(split - f.squaredNorm());
  const double intertwine = intertwine_check(model);

  const Conjugation c = conjugation_from_phi(model, phi, cfg.residual_tol);
  const ComplexMatrix u = model.multiplication_operator();
  json residuals = conjugation_residuals(u, c);

  json symbol_checks = json::object();
  if (power == 2) {
    double col_norm = 0.0, diag_moduli = 0.0;
    for (const auto& v : phi.values) {
      col_norm = std::max(col_norm, std::abs(std::norm(v(0, 0)) + std::norm(v(1, 0)) - 1.0));
      diag_moduli = std::max(diag_moduli, std::abs(std::abs(v(0, 0)) - std::abs(v(1, 1))));
    }
    symbol_checks = {{"max_column_norm_defect", col_norm}, {"max_diagonal_modulus_gap", diag_moduli}};
  }

  const auto p = parametrize(u, cfg.cluster_tol);
  json extraction;
  try {
    const auto blocks = extract_blocks(p, c, cfg.residual_tol);
    bool pointwise = blocks.size() == n;
    for (const auto& b : blocks) pointwise = pointwise && b.rows() == static_cast<Eigen::Index>(power);
    extraction = {{"ok", true}, {"block_count", blocks.size()}, {"pointwise_n_by_n", pointwise}};
  } catch (const NotMember& e) {
    extraction = {{"ok", false}, {"off_block_mass", e.off_block_mass()}};
  }

  const FlipFixture flip = flip_example(std::max<std::size_t>(n, 2));
  json witness = json::array();
  for (Eigen::Index i = 0; i < flip.witness.size(); ++i) witness.push_back(io::complex_to_json(flip.witness(i)));
  json witness_image = json::array();
  const ComplexVector image = flip.c.apply(flip.witness);
  for (Eigen::Index i = 0; i < image.size(); ++i) witness_image.push_back(io::complex_to_json(image(i)));

  const bool ok = roundtrip <= 1e-12 && parseval <= 1e-10 && intertwine <= 1e-10 &&
                  residuals["involution"].get<double>() <= cfg.residual_tol &&
                  residuals["isometry"].get<double>() <= cfg.residual_tol &&
                  residuals["csymmetry"].get<double>() <= cfg.residual_tol &&
                  extraction["ok"].get<bool>();

  json report = {{"command", "shift-demo"},
                 {"config", config_json(cfg)},
                 {"grid", {{"base_size", n}, {"power", power}, {"size", model.size()}}},
                 {"family", family},
                 {"family_parameters", {{"s", s}, {"lambda", lambda}, {"theta", theta}}},
                 {"family_dimension",
                  {{"base_points", n}, {"symbol_size", power}, {"real_parameters_per_point", power * (power + 1) / 2}}},
                 {"wold", {{"roundtrip_residual", roundtrip}, {"parseval_defect", parseval}, {"intertwine_residual", intertwine}}},
                 {"conjugation_residuals", residuals},
                 {"symbol_checks", symbol_checks},
                 {"block_extraction", extraction},
                 {"flip_example",
                  {{"omega1", flip.omega1},
                   {"omega2", flip.omega2},
                   {"csymmetry_residual", flip.csymmetry_residual},
                   {"witness", witness},
                   {"witness_image", witness_image},
                   {"witness_defect", flip.witness_defect},
                   {"operator_defect", flip.operator_defect}}},
                 {"all_ok", ok}};
  emit(cfg, report);
  std::cerr << "shift-demo: n = " << n << ", N = " << power << ", family " << family
            << ", intertwine residual " << intertwine << (ok ? "" : " (residual check failed)") << '\n';
  return ok ? kOk : kResidual;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjugations C with C U C = U* for unitary matrices: parametrize, sample, verify, "
               "hyperinvariant lattice audit and bilateral-shift demos."};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--tol", cfg.residual_tol, "Residual tolerance (default 1e-9)")->check(CLI::PositiveNumber);
  app.add_option("--cluster-tol", cfg.cluster_tol, "Eigenvalue clustering tolerance (default 1e-8)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed_flag, "RNG seed (default: $CONJSYM_SEED, else 0)");
  app.add_option("--out", cfg.out, "Report file (sample: output directory); default stdout / .");
  std::size_t samples = 20;
  app.add_option("--samples", samples, "lattice: random subspaces to audit (default 20)");
  std::size_t members = kDefaultWitnessSamples;
  app.add_option("--members", members, "lattice: random members tried per subspace (default 50)");
  app.footer("Environment: CONJSYM_SEED sets the seed when --seed is absent.\n"
             "Exit codes: 0 ok/member, 1 negative verdict, 2 parse error, 3 not unitary,\n"
             "4 residual failure, 5 too many clusters, 6 bad parameters.");

  std::string input;
  auto* analyze = app.add_subcommand("analyze", "Spectrum, block structure, canonical member and U = J1 J2");
  analyze->add_option("input", input, "Unitary matrix JSON file")->required();

  std::size_t count = 1;
  auto* sample = app.add_subcommand("sample", "Write random members and a residual table");
  sample->add_option("input", input, "Unitary matrix JSON file")->required();
  sample->add_option("--count", count, "Number of members (default 1)");

  std::string conj_input;
  auto* verify = app.add_subcommand("verify", "Check whether a conjugation belongs to the family of U");
  verify->add_option("unitary", input, "Unitary matrix JSON file")->required();
  verify->add_option("conjugation", conj_input, "Conjugation JSON file")->required();

  auto* lattice = app.add_subcommand("lattice", "Hyperinvariant lattice and equivalence audit");
  lattice->add_option("input", input, "Unitary matrix JSON file")->required();

  std::size_t grid_n = 8, power = 1;
  std::string family = "constant-phase";
  double s = 0.6, lambda = 1.0, theta = 0.0;
  auto* shift = app.add_subcommand("shift-demo", "Discrete bilateral shift M_{z^N} and its conjugation families");
  shift->add_option("-n,--n", grid_n, "Base grid size (default 8)");
  shift->add_option("-N,--power", power, "Symbol power N (default 1)");
  shift->add_option("--family", family, "constant-phase | sincos | lambda-drift");
  shift->add_option("--s", s, "lambda-drift: constant s in [0, 1] (default 0.6)");
  shift->add_option("--lambda", lambda, "lambda-drift: drift rate (default 1)");
  shift->add_option("--theta", theta, "constant-phase: phase (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParams;
  }

  if (seed_flag) {
    cfg.seed = *seed_flag;
  } else if (const char* env = std::getenv("CONJSYM_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: CONJSYM_SEED is not an unsigned integer\n";
      return kParams;
    }
  }

  try {
    if (*analyze) return cmd_analyze(cfg, input);
    if (*sample) return cmd_sample(cfg, input, count);
    if (*verify) return cmd_verify(cfg, input, conj_input);
    if (*lattice) return cmd_lattice(cfg, input, samples, members);
    if (*shift) return cmd_shift_demo(cfg, grid_n, power, family, s, lambda, theta);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const NotUnitary& e) {
    std::cerr << "not unitary: residual " << e.residual() << '\n';
    return kNotUnitary;
  } catch (const NotSymmetricUnitary& e) {
    std::cerr << "residual failure: " << e.what() << '\n';
    return kResidual;
  } catch (const TooManyClusters& e) {
    std::cerr << "too many clusters: " << e.what() << '\n';
    return kSize;
  } catch (const ClusteringUnstable& e) {
    std::cerr << "bad parameters: " << e.what() << " (retry with another --cluster-tol)\n";
    return kParams;
  } catch (const RangeError& e) {
    std::cerr << "bad parameters: " << e.what() << '\n';
    return kParams;
  } catch (const InvalidPhi& e) {
    std::cerr << "bad parameters: " << e.what() << '\n';
    return kParams;
  } catch (const BadPartition& e) {
    std::cerr << "bad parameters: " << e.what() << '\n';
    return kParams;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParams;
  }
  return kParams;
}
