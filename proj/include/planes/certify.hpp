#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "planes/bundle.hpp"
#include "planes/fingerprint.hpp"
#include "planes/search.hpp"

// LP-free verification of a proof bundle. Everything the prover claimed is
// recomputed from the catalogue: seeds, candidate pools along every tree
// path, witness evaluations (exact rational linear forms only), completion
// validity and fingerprints, and the final verdict.
//
// Malformed input (unreadable or unparsable manifest) throws input_error;
// any verification mismatch produces a failing report instead.

namespace planes {

struct VerificationReport {
  bool pass = false;
  std::string failure;  // first failure in deterministic walk order
  std::string digest;
  std::string verdict;
  long witnesses = 0, branches = 0, completions = 0, counting = 0, depth_limits = 0;
};

namespace detail {

struct check_failure {
  std::string message;
};

[[noreturn]] inline void fail(const std::string& message) { throw check_failure{message}; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("missing file " + path.generic_string());
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

struct ClassCounts {
  long witnesses = 0, branches = 0, completions = 0, counting = 0, depth_limits = 0;
  std::map<std::string, long> completion_leaves;
};

struct ClassWalker {
  int n;
  int label;
  std::filesystem::path class_dir;
  std::size_t seed_size;
  std::vector<GroupVector> b0;
  std::vector<int> path;
  ClassCounts counts;
  std::set<std::string> expected_certs;

  std::string where() const {
    return "class " + std::to_string(label) + " node " + node_path_name(path);
  }

  void walk(const nlohmann::json& node, const std::vector<GroupVector>& pool) {
    if (!node.is_object() || !node.contains("kind")) fail(where() + ": malformed tree node");
    const NodeKind kind = kind_from_name(node.at("kind").get<std::string>());
    if (node.at("pool").get<long>() != static_cast<long>(pool.size()))
      fail(where() + ": recorded pool size " + node.at("pool").dump() + " != recomputed " +
           std::to_string(pool.size()));
    switch (kind) {
      case NodeKind::Witness: check_witness(pool); break;
      case NodeKind::Branch: {
        ++counts.branches;
        const auto& kids = node.at("children");
        if (kids.size() != pool.size())
          fail(where() + ": branch has " + std::to_string(kids.size()) + " children for " +
               std::to_string(pool.size()) + " candidates");
        for (std::size_t t = 0; t < pool.size(); ++t) {
          std::vector<GroupVector> child_pool;
          for (std::size_t u = t + 1; u < pool.size(); ++u)
            if (count_coincidences(pool[u], pool[t]) <= 1) child_pool.push_back(pool[u]);
          b0.push_back(pool[t]);
          path.push_back(static_cast<int>(t));
          walk(kids.at(t), child_pool);
          path.pop_back();
          b0.pop_back();
        }
        break;
      }
      case NodeKind::Completion: {
        ++counts.completions;
        if (static_cast<int>(b0.size()) != n * n)
          fail(where() + ": completion with " + std::to_string(b0.size()) + " vectors");
        std::vector<GroupVector> sorted = b0;
        std::sort(sorted.begin(), sorted.end());
        const PlaneCode code{n, sorted};
        if (auto r = validate_code(code); !r.ok) fail(where() + ": invalid completion: " + r.violation);
        const std::string fp = completion_invariant(code);
        if (fp != node.at("fingerprint").get<std::string>())
          fail(where() + ": completion fingerprint mismatch");
        ++counts.completion_leaves[fp];
        break;
      }
      case NodeKind::Counting:
        ++counts.counting;
        if (static_cast<int>(b0.size() + pool.size()) >= n * n)
          fail(where() + ": counting refutation but |b0| + |D| = " +
               std::to_string(b0.size() + pool.size()) + " >= " + std::to_string(n * n));
        break;
      case NodeKind::DepthLimit: ++counts.depth_limits; break;
    }
  }

  void check_witness(const std::vector<GroupVector>& pool) {
    ++counts.witnesses;
    const std::string name = "node-" + node_path_name(path) + ".cert.json";
    expected_certs.insert(name);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(class_dir / name));
    } catch (const nlohmann::json::exception& e) {
      fail(where() + ": unparsable certificate: " + e.what());
    }
    Certificate cert;
    try {
      cert = certificate_from_json(j);
    } catch (const input_error& e) {
      fail(where() + ": bad certificate: " + e.what());
    }
    if (cert.order != n) fail(where() + ": certificate order mismatch");
    if (cert.catalogue_label != label) fail(where() + ": certificate label mismatch");
    if (cert.b0 != b0) fail(where() + ": certificate b0 differs from the recomputed node b0");
    if (cert.extension != std::vector<GroupVector>(b0.begin() + seed_size, b0.end()))
      fail(where() + ": certificate extension differs from the node path");
    if (cert.d_digest != pool_digest(pool)) fail(where() + ": candidate-set digest mismatch");
    if (auto r = verify_witness(cert.witness, b0, pool); !r.ok)
      fail(where() + ": witness check failed: " + r.violation);
  }
};

}  // namespace detail

inline VerificationReport verify_bundle(const std::string& dir, int jobs = 1) {
  namespace fs = std::filesystem;
  VerificationReport report;

  nlohmann::json manifest;
  {
    std::ifstream in(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!in) throw input_error("missing manifest.json in '" + dir + "'");
    try {
      manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw input_error(std::string("malformed manifest.json: ") + e.what());
    }
  }
  report.digest = bundle_digest(dir);

  try {
    if (manifest.value("version", 0) != 1) detail::fail("unsupported manifest version");
    const int n = manifest.at("order").get<int>();
    if (n < 2 || n > 15) detail::fail("manifest order out of range");
    report.verdict = manifest.at("verdict").get<std::string>();

    const std::string cat_text = detail::read_file(fs::path(dir) / "catalogue.txt");
    if (sha256_hex(cat_text) != manifest.at("catalogue_digest").get<std::string>())
      detail::fail("catalogue digest does not match the manifest");
    IsotopyClassCatalogue catalogue;
    if (n == 2) {
      catalogue.order = 1;
      catalogue.representatives.push_back(LatinSquare::blank(1));
      catalogue.representatives[0].cell(0, 0) = 0;
    } else {
      std::istringstream in(cat_text);
      std::vector<LatinSquare> squares;
      try {
        squares = parse_square_blocks(in);
      } catch (const input_error& e) {
        detail::fail(std::string("bad catalogue: ") + e.what());
      }
      catalogue.order = squares.empty() ? 0 : squares[0].order;
      catalogue.representatives = std::move(squares);
      if (catalogue.order != n - 1) detail::fail("catalogue order does not match the bundle order");
      // completeness and canonicality are re-derived, not taken on faith
      const IsotopyClassCatalogue derived = isotopy_classes(n - 1);
      if (!(derived.representatives == catalogue.representatives))
        detail::fail("catalogue does not match the re-derived isotopy classes");
    }

    const auto& class_entries = manifest.at("classes");
    std::vector<detail::ClassCounts> class_counts(class_entries.size());
    std::vector<std::string> class_failures(class_entries.size());
    std::vector<std::function<void()>> tasks;
    for (std::size_t idx = 0; idx < class_entries.size(); ++idx)
      tasks.push_back([&, idx] {
        try {
          const auto& entry = class_entries.at(idx);
          const int label = entry.at("label").get<int>();
          if (label < 1 || label > static_cast<int>(catalogue.representatives.size()))
            detail::fail("class label " + std::to_string(label) + " out of catalogue range");
          detail::ClassWalker walker;
          walker.n = n;
          walker.label = label;
          walker.class_dir = fs::path(dir) / ("class-" + std::to_string(label));
          walker.b0 = seed_b0(n, catalogue.representatives[label - 1]);
          walker.seed_size = walker.b0.size();
          nlohmann::json tree;
          try {
            tree = nlohmann::json::parse(detail::read_file(walker.class_dir / "tree.json"));
          } catch (const nlohmann::json::exception& e) {
            detail::fail("class " + std::to_string(label) + ": unparsable tree.json: " + e.what());
          }
          if (tree.at("label").get<int>() != label)
            detail::fail("class " + std::to_string(label) + ": tree.json label mismatch");
          walker.walk(tree.at("root"), enumerate_candidates(n, walker.b0));
          // the manifest summary must match the walked tree
          if (entry.at("root_pool").get<long>() !=
                  (tree.at("root").at("pool").get<long>()) ||
              entry.at("root_kind").get<std::string>() !=
                  tree.at("root").at("kind").get<std::string>() ||
              entry.at("witnesses").get<long>() != walker.counts.witnesses ||
              entry.at("branches").get<long>() != walker.counts.branches ||
              entry.at("completions").get<long>() != walker.counts.completions ||
              entry.at("depth_limits").get<long>() != walker.counts.depth_limits)
            detail::fail("class " + std::to_string(label) +
                         ": manifest summary does not match the tree");
          // no orphan certificate files
          for (const auto& f : fs::directory_iterator(walker.class_dir)) {
            const std::string name = f.path().filename().string();
            if (name == "tree.json") continue;
            if (!walker.expected_certs.count(name))
              detail::fail("class " + std::to_string(label) + ": unexpected file " + name);
          }
          class_counts[idx] = std::move(walker.counts);
        } catch (const detail::check_failure& f) {
          class_failures[idx] = f.message;
        }
      });
    run_parallel(tasks, jobs);
    for (const auto& f : class_failures)
      if (!f.empty()) detail::fail(f);

    std::map<std::string, long> completion_leaves;
    for (const auto& c : class_counts) {
      report.witnesses += c.witnesses;
      report.branches += c.branches;
      report.completions += c.completions;
      report.counting += c.counting;
      report.depth_limits += c.depth_limits;
      for (const auto& [fp, k] : c.completion_leaves) completion_leaves[fp] += k;
    }

    // completion files and multiplicities
    std::map<std::string, long> manifest_completions;
    for (const auto& entry : manifest.at("completions"))
      manifest_completions[entry.at("fingerprint").get<std::string>()] =
          entry.at("multiplicity").get<long>();
    if (manifest_completions != completion_leaves)
      detail::fail("manifest completion multiplicities do not match the trees");
    for (const auto& [fp, mult] : manifest_completions) {
      const fs::path file = fs::path(dir) / "completions" / (fp + ".code");
      const std::string text = detail::read_file(file);
      PlaneCode code;
      code.order = n;
      std::istringstream lines(text);
      std::string line;
      while (std::getline(lines, line))
        if (!line.empty()) code.vectors.push_back(parse_vector(line));
      if (static_cast<int>(code.vectors.size()) != n * n)
        detail::fail("completion file " + fp + " has the wrong vector count");
      if (auto r = validate_code(code); !r.ok)
        detail::fail("completion file " + fp + " is not a valid code: " + r.violation);
      if (completion_invariant(code) != fp)
        detail::fail("completion file " + fp + " does not match its fingerprint");
    }
    if (fs::is_directory(fs::path(dir) / "completions"))
      for (const auto& f : fs::directory_iterator(fs::path(dir) / "completions")) {
        const std::string name = f.path().filename().string();
        if (name.size() < 6 || !manifest_completions.count(name.substr(0, name.size() - 5)))
          detail::fail("unexpected completion file " + name);
      }

    const std::string verdict = report.depth_limits > 0 ? "Inconclusive"
                                : report.completions > 0 ? "Completions"
                                                         : "NonExistence";
    if (verdict != report.verdict)
      detail::fail("manifest verdict " + report.verdict + " but trees imply " + verdict);
    report.pass = true;
  } catch (const detail::check_failure& f) {
    report.pass = false;
    report.failure = f.message;
  }
  return report;
}

}  // namespace planes
