#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "planes/bundle.hpp"
#include "planes/certify.hpp"
#include "planes/config.hpp"
#include "planes/delsarte.hpp"
#include "planes/designs.hpp"
#include "planes/fingerprint.hpp"
#include "planes/isotopy.hpp"
#include "planes/search.hpp"
#include "planes/witness.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

int default_jobs() {
  if (const char* env = std::getenv("PLANES_JOBS")) {
    const int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

planes::IsotopyClassCatalogue catalogue_for_order(int n, const std::string& source) {
  if (source == "gen") {
    if (n == 2) {
      planes::IsotopyClassCatalogue cat;
      cat.order = 1;
      cat.representatives.push_back(planes::LatinSquare::blank(1));
      return cat;
    }
    return planes::isotopy_classes(n - 1);
  }
  return planes::load_catalogue(source, /*check_canonical=*/true);
}

std::vector<planes::GroupVector> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw planes::input_error("cannot open '" + path + "'");
  std::vector<planes::GroupVector> vectors;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    vectors.push_back(planes::parse_vector(line));
  }
  if (vectors.empty()) throw planes::input_error("'" + path + "' contains no vectors");
  return vectors;
}

// Re-derives the candidate pool of a certificate's node from its own seed
// and extension path, then re-checks the witness; no catalogue required.
bool check_single_certificate(const planes::Certificate& cert) {
  const int n = cert.order;
  const std::size_t seed_size = static_cast<std::size_t>(2 * n - 1);
  if (cert.b0.size() < seed_size || cert.b0.size() != seed_size + cert.extension.size()) {
    std::cerr << "check=fail reason=b0-extension-size-mismatch\n";
    return false;
  }
  if (!std::equal(cert.extension.begin(), cert.extension.end(), cert.b0.begin() + seed_size)) {
    std::cerr << "check=fail reason=extension-not-b0-suffix\n";
    return false;
  }
  std::vector<planes::GroupVector> b0(cert.b0.begin(), cert.b0.begin() + seed_size);
  auto pool = planes::enumerate_candidates(n, b0);
  for (const auto& e : cert.extension) {
    const auto it = std::find(pool.begin(), pool.end(), e);
    if (it == pool.end()) {
      std::cerr << "check=fail reason=extension-vector-not-in-pool vector="
                << planes::format_vector(e) << "\n";
      return false;
    }
    std::vector<planes::GroupVector> next;
    for (auto u = it + 1; u != pool.end(); ++u)
      if (planes::count_coincidences(*u, e) <= 1) next.push_back(*u);
    pool = std::move(next);
    b0.push_back(e);
  }
  if (cert.d_digest != planes::pool_digest(pool)) {
    std::cerr << "check=fail reason=candidate-digest-mismatch\n";
    return false;
  }
  if (auto r = planes::verify_witness(cert.witness, b0, pool); !r.ok) {
    std::cerr << "check=fail reason=" << r.violation << "\n";
    return false;
  }
  return true;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact LP proof engine for small projective planes"};
  app.require_subcommand(1);

  // the config file only provides defaults; explicit flags win
  std::map<std::string, std::string> cfg;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") cfg = planes::parse_config(argv[i + 1]);
  auto cfg_int = [&](const std::string& key, int fallback) {
    const auto it = cfg.find(key);
    return it == cfg.end() ? fallback : std::stoi(it->second);
  };
  auto cfg_str = [&](const std::string& key, std::string fallback) {
    const auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
  };
  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file");

  int order = cfg_int("order", 0);
  std::string catalogue = cfg_str("catalogue", "gen");
  std::string out_dir = cfg_str("out", "");
  int max_depth = cfg_int("max_depth", -1);
  int jobs = cfg_int("jobs", default_jobs());
  int class_filter = cfg_int("class", 0);

  auto* prove = app.add_subcommand("prove", "run the search and write a proof bundle");
  prove->add_option("--order", order, "plane order n")->required(cfg.find("order") == cfg.end());
  prove->add_option("--catalogue", catalogue, "catalogue file, or 'gen' to derive it");
  prove->add_option("--out", out_dir, "output bundle directory")
      ->required(cfg.find("out") == cfg.end());
  prove->add_option("--max-depth", max_depth, "maximum branching depth (-1 = unbounded)");
  prove->add_option("--jobs", jobs, "worker count");
  prove->add_option("--class", class_filter, "restrict to one 1-based class label");
  prove->add_option("--config", config_path, "key=value configuration file");

  std::string bundle_dir, cert_file;
  auto* verify = app.add_subcommand("verify", "re-check a bundle or a single certificate");
  verify->add_option("--bundle", bundle_dir, "bundle directory");
  verify->add_option("--cert", cert_file, "single certificate file");
  verify->add_option("--jobs", jobs, "worker count");
  verify->add_option("--config", config_path, "key=value configuration file");

  std::string iso_out;
  auto* isotopy = app.add_subcommand("isotopy", "enumerate isotopy class representatives");
  isotopy->add_option("--order", order, "Latin square order")->required(cfg.find("order") == cfg.end());
  isotopy->add_option("--out", iso_out, "catalogue file to write");
  isotopy->add_option("--config", config_path, "key=value configuration file");

  auto* bound = app.add_subcommand("bound", "check the explicit witness and print the bound");
  bound->add_option("--order", order, "plane order n")->required(cfg.find("order") == cfg.end());
  bound->add_option("--config", config_path, "key=value configuration file");

  std::string b0_file, cert_out;
  auto* witness = app.add_subcommand("witness", "solve the witness LP for a b0 file");
  witness->add_option("--order", order, "plane order n")->required(cfg.find("order") == cfg.end());
  witness->add_option("--b0", b0_file, "file with one vector per line")->required();
  witness->add_option("--out", cert_out, "certificate file to write when feasible");
  witness->add_option("--config", config_path, "key=value configuration file");

  std::string struct_type, struct_file;
  auto* structures = app.add_subcommand("structures", "validate a combinatorial structure file");
  structures->add_option("--type", struct_type, "latin | mols | code")->required();
  structures->add_option("--file", struct_file, "input file")->required();
  structures->add_option("--config", config_path, "key=value configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (jobs < 1) throw planes::input_error("job count must be at least 1");

  if (prove->parsed()) {
    if (order < 2 || order > 9) throw planes::input_error("order must be in [2, 9]");
    const auto cat = catalogue_for_order(order, catalogue);
    planes::SearchLimits limits;
    limits.max_depth = max_depth;
    const auto result = planes::run_prove(order, cat, limits, out_dir, jobs, class_filter);
    for (const auto& cs : result.classes)
      std::cerr << "class=" << cs.label << " root_pool=" << cs.root_pool
                << " witnesses=" << cs.witnesses << " branches=" << cs.branches
                << " completions=" << cs.completions << " depth_limits=" << cs.depth_limits << "\n";
    std::cout << "verdict=" << planes::verdict_name(result.verdict) << " classes="
              << result.classes.size() << " out=" << out_dir << "\n";
    return result.verdict == planes::Verdict::Inconclusive ? 3 : 0;
  }

  if (verify->parsed()) {
    if (bundle_dir.empty() == cert_file.empty())
      throw planes::input_error("verify needs exactly one of --bundle or --cert");
    try {
      if (!cert_file.empty()) {
        std::ifstream in(cert_file);
        if (!in) {
          std::cerr << "error=cannot-open file=" << cert_file << "\n";
          return 2;
        }
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
          std::cerr << "error=malformed-certificate detail=" << e.what() << "\n";
          return 2;
        }
        const auto cert = planes::certificate_from_json(j);
        const bool ok = check_single_certificate(cert);
        std::cout << (ok ? "check=pass" : "check=fail") << " cert=" << cert_file << "\n";
        return ok ? 0 : 1;
      }
      const auto report = planes::verify_bundle(bundle_dir, jobs);
      if (report.pass)
        std::cout << "check=pass verdict=" << report.verdict << " witnesses=" << report.witnesses
                  << " branches=" << report.branches << " completions=" << report.completions
                  << " digest=" << report.digest << "\n";
      else
        std::cout << "check=fail failure=\"" << report.failure << "\"\n";
      return report.pass ? 0 : 1;
    } catch (const planes::input_error& e) {
      std::cerr << "error=malformed-input detail=" << e.what() << "\n";
      return 2;
    }
  }

  if (isotopy->parsed()) {
    const auto cat = planes::isotopy_classes(order);
    if (!iso_out.empty()) planes::save_catalogue(cat, iso_out);
    std::cout << "order=" << order << " classes=" << cat.representatives.size() << "\n";
    return 0;
  }

  if (bound->parsed()) {
    const auto rep = planes::verify_delsarte_witness(order);
    if (!rep.ok()) {
      std::cerr << "error=witness-check-failed order=" << order << "\n";
      return kExitInternal;
    }
    std::cout << "order=" << order << " bound=" << planes::rational_to_string(rep.bound) << "\n";
    return 0;
  }

  if (witness->parsed()) {
    if (order < 2 || order > 9) throw planes::input_error("order must be in [2, 9]");
    const auto b0 = read_vector_file(b0_file);
    for (const auto& v : b0)
      if (static_cast<int>(v.size()) != order)
        throw planes::input_error("b0 vector of wrong order: " + planes::format_vector(v));
    const auto pool = planes::enumerate_candidates(order, b0);
    const auto outcome = planes::solve_feasibility(order, b0, pool, order == 6);
    std::cout << "order=" << order << " b0=" << b0.size() << " candidates=" << pool.size()
              << " result=" << (outcome.feasible ? "feasible" : "infeasible")
              << " pivots=" << outcome.pivots << "\n";
    if (outcome.feasible && !cert_out.empty()) {
      planes::Certificate cert;
      cert.order = order;
      cert.catalogue_label = 0;  // standalone run, no catalogue
      cert.b0 = b0;
      cert.d_digest = planes::pool_digest(pool);
      cert.witness = outcome.witness;
      std::ofstream out(cert_out);
      out << planes::certificate_to_json(cert).dump(2) << "\n";
      if (!out) throw planes::input_error("cannot write '" + cert_out + "'");
    }
    return 0;
  }

  // structures
  planes::ValidationReport rep;
  if (struct_type == "latin" || struct_type == "mols") {
    std::ifstream in(struct_file);
    if (!in) throw planes::input_error("cannot open '" + struct_file + "'");
    const auto squares = planes::parse_square_blocks(in);
    if (struct_type == "latin")
      rep = squares.size() == 1 ? planes::validate_latin(squares[0])
                                : planes::ValidationReport::fail("expected exactly one square");
    else {
      planes::MOLSet mols;
      mols.order = squares.empty() ? 0 : squares[0].order;
      mols.squares = squares;
      rep = planes::validate_mols(mols);
    }
  } else if (struct_type == "code") {
    const auto vectors = read_vector_file(struct_file);
    planes::PlaneCode code;
    code.order = static_cast<int>(vectors[0].size());
    code.vectors = vectors;
    rep = planes::validate_code(code);
  } else {
    throw planes::input_error("unknown structure type '" + struct_type + "'");
  }
  std::cout << (rep.ok ? "valid=true" : "valid=false violation=\"" + rep.violation + "\"") << "\n";
  return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const planes::input_error& e) {
    std::cerr << "error=bad-input detail=" << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error=internal detail=" << e.what() << "\n";
    return kExitInternal;
  }
}
