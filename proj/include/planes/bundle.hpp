#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "planes/fingerprint.hpp"
#include "planes/jobs.hpp"
#include "planes/search.hpp"

// Proof bundle layout under the output directory:
//
//   manifest.json                      order, digests, verdict, summaries
//   catalogue.txt                      the seed catalogue the run used
//   class-<label>/tree.json            resolved search tree of the class
//   class-<label>/node-<path>.cert.json   one certificate per witness leaf
//   completions/<fingerprint>.code     one representative code per plane found
//
// <path> is "root" for the class root, otherwise the hyphen-joined pool
// indices leading to the node. All files are deterministic: a rerun with any
// job count reproduces the bundle byte for byte.

namespace planes {

inline std::string node_path_name(const std::vector<int>& path) {
  if (path.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(path[i]);
  }
  return s;
}

inline std::string kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Witness: return "witness";
    case NodeKind::Branch: return "branch";
    case NodeKind::Completion: return "completion";
    case NodeKind::Counting: return "counting";
    default: return "depth_limit";
  }
}

inline NodeKind kind_from_name(const std::string& s) {
  if (s == "witness") return NodeKind::Witness;
  if (s == "branch") return NodeKind::Branch;
  if (s == "completion") return NodeKind::Completion;
  if (s == "depth_limit") return NodeKind::DepthLimit;
  if (s == "counting") return NodeKind::Counting;
  throw input_error("unknown node kind '" + s + "'");
}

namespace detail {

inline nlohmann::json node_to_json(const NodeRecord& node) {
  nlohmann::json j;
  j["kind"] = kind_name(node.kind);
  j["pool"] = node.pool_size;
  if (node.kind == NodeKind::Branch) {
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& c : node.children) kids.push_back(node_to_json(c));
    j["children"] = std::move(kids);
  }
  if (node.kind == NodeKind::Completion) j["fingerprint"] = node.fingerprint;
  return j;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw input_error("write failed for '" + path.string() + "'");
}

inline std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

struct ClassSummary {
  int label = 0;
  int root_pool = 0;
  NodeKind root_kind = NodeKind::Witness;
  long witnesses = 0, branches = 0, completions = 0, depth_limits = 0;
};

struct ProveResult {
  int order = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::string catalogue_digest;
  std::vector<ClassSummary> classes;
  std::map<std::string, long> completion_multiplicity;  // fingerprint -> leaves
};

// Runs the whole search for one order and writes the bundle. `class_filter`
// restricts the run to a single 1-based label (0 = all classes).
inline ProveResult run_prove(int n, const IsotopyClassCatalogue& catalogue,
                             const SearchLimits& limits, const std::string& out_dir, int jobs,
                             int class_filter = 0) {
  if (catalogue.order != n - 1 && !(n == 2 && catalogue.order == 1))
    throw input_error("catalogue order must be " + std::to_string(n - 1));
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  std::ostringstream cat_text;
  cat_text << "# isotopy class representatives, order " << catalogue.order << ", "
           << catalogue.representatives.size() << " classes\n";
  write_square_blocks(cat_text, catalogue.representatives);
  detail::write_text(fs::path(out_dir) / "catalogue.txt", cat_text.str());

  ProveResult result;
  result.order = n;
  result.catalogue_digest = sha256_hex(cat_text.str());

  std::vector<int> labels;
  for (int label = 1; label <= static_cast<int>(catalogue.representatives.size()); ++label)
    if (class_filter == 0 || label == class_filter) labels.push_back(label);

  struct ClassOut {
    NodeRecord root;
    // fingerprint -> (representative sorted code, leaf count), first leaf wins
    std::map<std::string, std::pair<std::vector<GroupVector>, long>> completions;
  };
  std::vector<ClassOut> outs(labels.size());

  std::vector<std::function<void()>> tasks;
  for (std::size_t idx = 0; idx < labels.size(); ++idx)
    tasks.push_back([&, idx] {
      const int label = labels[idx];
      const fs::path class_dir = fs::path(out_dir) / ("class-" + std::to_string(label));
      fs::create_directories(class_dir);
      SearchCallbacks cb;
      cb.on_witness = [&](const std::vector<int>& path, const Certificate& cert) {
        detail::write_text(class_dir / ("node-" + node_path_name(path) + ".cert.json"),
                           detail::json_text(certificate_to_json(cert)));
      };
      cb.on_completion = [&](const std::vector<int>&, const std::vector<GroupVector>& code) {
        std::vector<GroupVector> sorted = code;
        std::sort(sorted.begin(), sorted.end());
        const std::string fp = completion_invariant(PlaneCode{n, sorted});
        auto [it, inserted] = outs[idx].completions.emplace(fp, std::make_pair(sorted, 0L));
        ++it->second.second;
        return fp;
      };
      const auto seed = seed_b0(n, catalogue.representatives[label - 1]);
      outs[idx].root = prove_class(n, label, seed, limits, cb);
      detail::write_text(class_dir / "tree.json",
                         detail::json_text(nlohmann::json{
                             {"label", label}, {"root", detail::node_to_json(outs[idx].root)}}));
    });
  run_parallel(tasks, jobs);

  std::map<std::string, std::pair<std::vector<GroupVector>, long>> completions;
  std::vector<NodeRecord> roots;
  for (std::size_t idx = 0; idx < labels.size(); ++idx) {
    ClassSummary cs;
    cs.label = labels[idx];
    cs.root_pool = outs[idx].root.pool_size;
    cs.root_kind = outs[idx].root.kind;
    count_nodes(outs[idx].root, cs.witnesses, cs.branches, cs.completions, cs.depth_limits);
    result.classes.push_back(cs);
    roots.push_back(outs[idx].root);
    for (auto& [fp, rep] : outs[idx].completions) {
      auto [it, inserted] = completions.emplace(fp, std::make_pair(rep.first, 0L));
      it->second.second += rep.second;
    }
  }
  result.verdict = combined_verdict(roots);

  if (!completions.empty()) {
    fs::create_directories(fs::path(out_dir) / "completions");
    for (const auto& [fp, rep] : completions) {
      std::string text;
      for (const auto& v : rep.first) text += format_vector(v) + "\n";
      detail::write_text(fs::path(out_dir) / "completions" / (fp + ".code"), text);
      result.completion_multiplicity[fp] = rep.second;
    }
  }

  nlohmann::json manifest;
  manifest["version"] = 1;
  manifest["order"] = n;
  manifest["catalogue_digest"] = result.catalogue_digest;
  manifest["verdict"] = verdict_name(result.verdict);
  manifest["classes"] = nlohmann::json::array();
  for (const auto& cs : result.classes)
    manifest["classes"].push_back({{"label", cs.label},
                                   {"root_pool", cs.root_pool},
                                   {"root_kind", kind_name(cs.root_kind)},
                                   {"witnesses", cs.witnesses},
                                   {"branches", cs.branches},
                                   {"completions", cs.completions},
                                   {"depth_limits", cs.depth_limits}});
  manifest["completions"] = nlohmann::json::array();
  for (const auto& [fp, mult] : result.completion_multiplicity)
    manifest["completions"].push_back({{"fingerprint", fp}, {"multiplicity", mult}});
  detail::write_text(fs::path(out_dir) / "manifest.json", detail::json_text(manifest));
  return result;
}

// SHA-256 over the sorted relative file list and contents.
inline std::string bundle_digest(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw input_error("no such bundle directory '" + dir + "'");
  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file())
      files.push_back(fs::relative(entry.path(), dir).generic_string());
  std::sort(files.begin(), files.end());
  Sha256 hash;
  for (const auto& rel : files) {
    std::ifstream in(fs::path(dir) / rel, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    const std::string content = body.str();
    hash.update(rel + "\n" + std::to_string(content.size()) + "\n");
    hash.update(content);
  }
  return hash.hex();
}

}  // namespace planes
