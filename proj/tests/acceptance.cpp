// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Modes:
//   fast     criteria 1 and 3-8 (order-6 nonexistence and all supporting checks)
//   order7   criterion 2 (order-7 uniqueness, the long run)
//   extended criteria 3b and 9 (order-7 catalogue size, order-8 root survey);
//            skipped unless PLANES_EXTENDED=1

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "planes/bundle.hpp"
#include "planes/certify.hpp"
#include "planes/delsarte.hpp"
#include "planes/designs.hpp"
#include "planes/fingerprint.hpp"
#include "planes/isotopy.hpp"
#include "planes/search.hpp"

using namespace planes;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what << std::endl;
  if (!ok) ++g_failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  return p;
}

// ---- criterion 1: order 6 has no projective plane ----

void criterion1() {
  const fs::path dir = fresh_dir("planes_acc_order6");
  const auto cat = isotopy_classes(5);
  const auto res = run_prove(6, cat, SearchLimits{}, dir.string(), 1);

  bool shape = res.verdict == Verdict::NonExistence && res.classes.size() == 2;
  int witness_roots = 0, branch_roots = 0;
  long certs = 0;
  for (const auto& cs : res.classes) {
    certs += cs.witnesses;
    if (cs.root_kind == NodeKind::Witness) ++witness_roots;
    if (cs.root_kind == NodeKind::Branch) {
      ++branch_roots;
      shape = shape && cs.root_pool == 75 && cs.witnesses == 75 && cs.branches == 1 &&
              cs.completions == 0 && cs.depth_limits == 0;
    }
  }
  shape = shape && witness_roots == 1 && branch_roots == 1 && certs == 76;

  const auto verification = verify_bundle(dir.string());
  const bool verified = verification.pass && verification.witnesses == 76 &&
                        verification.verdict == "NonExistence";
  report(1, shape && verified,
         "order 6: 2 classes, 1 root witness + 75 depth-1 witnesses, 76 certificates, "
         "independent verification " + std::string(verification.pass ? "passed" : "FAILED"));
  fs::remove_all(dir);
}

// ---- criterion 2: order 7 admits exactly one plane ----

void criterion2() {
  const fs::path dir = fresh_dir("planes_acc_order7");
  const auto cat = isotopy_classes(6);
  const auto res = run_prove(7, cat, SearchLimits{}, dir.string(), 1);

  bool ok = res.verdict == Verdict::Completions && res.classes.size() == 22;
  int witness_roots = 0;
  std::multiset<int> refuted_branch_pools;
  int completing_classes = 0;
  for (const auto& cs : res.classes) {
    ok = ok && cs.depth_limits == 0;
    if (cs.root_kind == NodeKind::Witness) ++witness_roots;
    if (cs.root_kind != NodeKind::Branch) continue;
    if (cs.completions == 0) {
      refuted_branch_pools.insert(cs.root_pool);
      // fully refuted at depth 1: every child is a witness
      ok = ok && cs.branches == 1 && cs.witnesses == cs.root_pool;
    } else {
      ++completing_classes;
    }
  }
  ok = ok && witness_roots == 19 && completing_classes == 1 &&
       refuted_branch_pools == std::multiset<int>{216, 288};

  const std::string expected_fp = completion_invariant(affine_to_code(prime_plane(7)));
  ok = ok && res.completion_multiplicity.size() == 1 &&
       res.completion_multiplicity.count(expected_fp) == 1 &&
       res.completion_multiplicity.at(expected_fp) >= 1;

  const auto verification = verify_bundle(dir.string());
  ok = ok && verification.pass && verification.verdict == "Completions" &&
       verification.completions >= 1;

  report(2, ok,
         "order 7: 19 witness roots, refuted branch pools {216,288}, every completion "
         "isomorphic to the prime-field plane (fingerprint " + expected_fp.substr(0, 12) +
         "...), verification " + std::string(verification.pass ? "passed" : "FAILED"));
  fs::remove_all(dir);
}

// ---- criterion 3: isotopy class counts ----

void criterion3_fast() {
  const bool ok = isotopy_classes(5).representatives.size() == 2 &&
                  isotopy_classes(6).representatives.size() == 22;
  report(3, ok, "isotopy classes: 2 of order 5, 22 of order 6");
}

void criterion3_extended() {
  const auto n = isotopy_classes(7).representatives.size();
  report(3, n == 564, "isotopy classes: " + std::to_string(n) + " of order 7 (expected 564)");
}

// ---- criterion 4: linear-programming bound n^2 ----

void criterion4() {
  bool ok = true;
  for (int n = 2; n <= 7; ++n) {
    const auto rep = verify_delsarte_witness(n);
    ok = ok && rep.ok() && rep.bound == Rational(static_cast<long>(n) * n);
  }
  // cross-check through the generic explicit-table path for small orders
  for (int n = 2; n <= 5 && ok; ++n) {
    FunctionTable full;
    full.n = n;
    full.symmetric = false;
    GroupVector v(static_cast<std::size_t>(n), 0);
    while (true) {
      const Rational value = eval_f(v);
      if (value != 0) full.values[v] = value;
      std::size_t i = v.size();
      for (; i-- > 0;) {
        if (++v[i] < n) break;
        v[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    const auto res = lp_bound(full, [](const GroupVector& u) { return in_forbidden_set(u); });
    ok = ok && res.accepted && res.bound == Rational(static_cast<long>(n) * n);
  }
  report(4, ok, "code-size bound n^2 certified for n = 2..7, cross-checked for n <= 5");
}

// ---- criterion 5: pair exhaustion over full codes ----

void criterion5() {
  bool ok = true;
  std::mt19937 rng(41);
  for (int p : {2, 3, 5, 7}) {
    const PlaneCode code = affine_to_code(prime_plane(p));
    for (int i = 0; i < p && ok; ++i)
      for (int j = i + 1; j < p && ok; ++j) {
        std::vector<int> hits(static_cast<std::size_t>(p) * p, 0);
        for (const auto& v : code.vectors) ++hits[v[i] * p + v[j]];
        for (int h : hits) ok = ok && h == 1;
      }
    for (int trial = 0; trial < 3 && ok; ++trial) {
      WitnessFunction h = WitnessFunction::zero(p);
      for (auto& table : h.tables) {
        Rational sum = 0;
        for (auto& row : table)
          for (auto& cell : row) {
            cell = Rational(static_cast<long>(rng() % 13) - 6);
            sum += cell;
          }
        table[0][0] -= sum;
      }
      Rational total = 0;
      for (const auto& v : code.vectors) total += h.eval(v);
      ok = ok && total == 0;
    }
  }
  report(5, ok, "full codes realize every value pair once; zero-sum forms vanish on them");
}

// ---- criterion 6: candidate enumeration equals the exhaustive oracle ----

void criterion6() {
  bool ok = true;
  auto brute_force = [](int n, const std::vector<GroupVector>& b0) {
    std::vector<GroupVector> brute;
    GroupVector v(static_cast<std::size_t>(n), 0);
    while (true) {
      bool compat = true;
      for (const auto& u : b0)
        if (count_coincidences(u, v) > 1) {
          compat = false;
          break;
        }
      if (compat) brute.push_back(v);
      std::size_t i = v.size();
      for (; i-- > 0;) {
        if (++v[i] < n) break;
        v[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    return brute;
  };
  std::mt19937 rng(61);
  for (int n : {3, 4, 5}) {
    for (const auto& rep : isotopy_classes(n - 1).representatives)
      ok = ok && enumerate_candidates(n, seed_b0(n, rep)) == brute_force(n, seed_b0(n, rep));
    // random partial codes: the constants plus random compatible vectors
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<GroupVector> b0;
      for (int m = 0; m < n; ++m) b0.push_back(constant_vector(n, m));
      for (int tries = 0; tries < 40 && b0.size() < static_cast<std::size_t>(n) + 3; ++tries) {
        GroupVector v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[i] = static_cast<std::uint8_t>(i);
        std::shuffle(v.begin(), v.end(), rng);
        bool compat = true;
        for (const auto& u : b0)
          if (count_coincidences(u, v) > 1) {
            compat = false;
            break;
          }
        if (compat) b0.push_back(v);
      }
      ok = ok && enumerate_candidates(n, b0) == brute_force(n, b0);
    }
  }
  for (int n : {6, 7}) {
    for (const auto& rep : isotopy_classes(n - 1).representatives) {
      const auto seed = seed_b0(n, rep);
      std::vector<GroupVector> perms;
      GroupVector v(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) v[i] = static_cast<std::uint8_t>(i);
      do {
        bool compat = true;
        for (const auto& u : seed)
          if (count_coincidences(u, v) > 1) {
            compat = false;
            break;
          }
        if (compat) perms.push_back(v);
      } while (std::next_permutation(v.begin(), v.end()));
      ok = ok && enumerate_candidates(n, seed) == perms;
    }
  }
  report(6, ok, "candidate pools equal the exhaustive oracle for every seed, n = 3..7");
}

// ---- criterion 7: converters and validators ----

void criterion7() {
  bool ok = true;
  for (int p : {2, 3, 5, 7}) {
    const AffinePlane plane = prime_plane(p);
    ok = ok && validate_affine(plane).ok;
    const MOLSet mols = affine_to_mols(plane);
    ok = ok && mols.complete() && validate_mols(mols).ok;
    ok = ok && validate_affine(mols_to_affine(mols)).ok;
    const PlaneCode code = affine_to_code(plane);
    ok = ok && validate_code(code).ok;
    ok = ok && affine_to_code(code_to_affine(code)).vectors == code.vectors;
    auto lines = [](const AffinePlane& a) {
      std::vector<Line> all;
      for (const auto& cls : a.classes)
        for (const auto& l : cls) all.push_back(l);
      std::sort(all.begin(), all.end());
      return all;
    };
    ok = ok && lines(mols_to_affine(mols)) == lines(plane);
    // MOLS text form round-trips too
    std::ostringstream text;
    write_square_blocks(text, mols.squares);
    std::istringstream in(text.str());
    ok = ok && parse_square_blocks(in) == mols.squares;
  }
  // validator battery: each corruption is caught
  {
    AffinePlane bad = prime_plane(3);
    bad.classes.pop_back();
    ok = ok && !validate_affine(bad).ok;
  }
  {
    AffinePlane bad = prime_plane(3);
    bad.classes[0][0] = bad.classes[0][1];
    ok = ok && !validate_affine(bad).ok;
  }
  {
    PlaneCode bad = affine_to_code(prime_plane(3));
    bad.vectors.push_back(bad.vectors[0]);
    ok = ok && !validate_code(bad).ok;
  }
  {
    LatinSquare bad = prime_plane(3).order == 3 ? affine_to_mols(prime_plane(3)).squares[0]
                                                : LatinSquare::blank(3);
    bad.cell(0, 0) = bad.at(0, 1);
    ok = ok && !validate_latin(bad).ok;
  }
  {
    MOLSet bad = affine_to_mols(prime_plane(5));
    bad.squares[1] = bad.squares[0];
    ok = ok && !validate_mols(bad).ok;
  }
  report(7, ok, "representation converters round-trip; validators catch corruptions");
}

// ---- criterion 8: tamper detection and determinism ----

void criterion8() {
  const fs::path base = fresh_dir("planes_acc_mut_base");
  const fs::path par = fresh_dir("planes_acc_mut_par");
  const fs::path work = fresh_dir("planes_acc_mut_work");
  const auto cat = isotopy_classes(5);
  run_prove(6, cat, SearchLimits{}, base.string(), 1);
  run_prove(6, cat, SearchLimits{}, par.string(), 8);
  const bool deterministic = bundle_digest(base.string()) == bundle_digest(par.string());

  auto first_cert = [](const fs::path& bundle) {
    std::vector<fs::path> certs;
    for (const auto& e : fs::recursive_directory_iterator(bundle))
      if (e.is_regular_file() && e.path().filename().string().ends_with(".cert.json"))
        certs.push_back(e.path());
    std::sort(certs.begin(), certs.end());
    return certs.front();
  };
  auto edit_json = [](const fs::path& p, const std::function<void(nlohmann::json&)>& f) {
    auto j = nlohmann::json::parse(slurp(p));
    f(j);
    spit(p, j.dump(2) + "\n");
  };

  const std::vector<std::function<void(const fs::path&)>> mutations = {
      [&](const fs::path& d) {
        edit_json(first_cert(d), [](nlohmann::json& j) {
          auto& cell = j["tables"]["1,2"][0][0];
          cell = rational_to_string(parse_rational(cell.get<std::string>()) + 1);
        });
      },
      [&](const fs::path& d) { fs::remove(first_cert(d)); },
      [&](const fs::path& d) {
        edit_json(first_cert(d), [](nlohmann::json& j) { std::swap(j["b0"][0], j["b0"][1]); });
      },
      [&](const fs::path& d) {
        edit_json(first_cert(d), [](nlohmann::json& j) {
          auto& label = j["seed"]["catalogue_label"];
          label = label.get<int>() % 2 + 1;
        });
      },
      [&](const fs::path& d) {
        edit_json(first_cert(d), [](nlohmann::json& j) {
          std::string s = j["d_digest"].get<std::string>();
          s[0] = s[0] == '0' ? '1' : '0';
          j["d_digest"] = s;
        });
      },
      [&](const fs::path& d) {
        for (const auto& e : fs::recursive_directory_iterator(d))
          if (e.path().filename() == "tree.json")
            edit_json(e.path(), [](nlohmann::json& j) {
              if (j["root"]["kind"] == "branch")
                j["root"]["children"].erase(j["root"]["children"].size() - 1);
            });
      },
      [&](const fs::path& d) {
        edit_json(d / "manifest.json", [](nlohmann::json& j) { j["verdict"] = "Completions"; });
      },
      [&](const fs::path& d) {
        edit_json(d / "manifest.json", [](nlohmann::json& j) {
          j["classes"][0]["witnesses"] = j["classes"][0]["witnesses"].get<long>() + 1;
        });
      },
      [&](const fs::path& d) {
        const fs::path src = first_cert(d);
        fs::copy_file(src, src.parent_path() / "node-99.cert.json");
      },
      [&](const fs::path& d) {
        spit(d / "catalogue.txt", slurp(d / "catalogue.txt") + "# extra\n");
      },
  };

  int caught = 0;
  for (const auto& mutate : mutations) {
    fs::remove_all(work);
    fs::copy(base, work, fs::copy_options::recursive);
    mutate(work);
    if (!verify_bundle(work.string()).pass) ++caught;
  }
  report(8, deterministic && caught == 10,
         "job counts 1 and 8 yield byte-identical bundles; " + std::to_string(caught) +
             "/10 mutations rejected by the verifier");
  for (const auto& d : {base, par, work}) fs::remove_all(d);
}

// ---- criterion 9: order-8 root survey ----

void criterion9() {
  const auto cat = isotopy_classes(7);
  int jobs = 1;
  if (const char* env = std::getenv("PLANES_JOBS"))
    if (std::atoi(env) >= 1) jobs = std::atoi(env);
  std::vector<char> root_feasible(cat.representatives.size(), 0);
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < cat.representatives.size(); ++i)
    tasks.push_back([&, i] {
      const auto seed = seed_b0(8, cat.representatives[i]);
      const auto pool = enumerate_candidates(8, seed);
      root_feasible[i] = solve_feasibility(8, seed, pool).feasible ? 1 : 0;
    });
  run_parallel(tasks, jobs);
  int feasible = 0, infeasible = 0;
  for (char f : root_feasible) (f ? feasible : infeasible)++;
  report(9, feasible == 230 && infeasible == 334,
         "order-8 roots: " + std::to_string(feasible) + " witnesses / " +
             std::to_string(infeasible) + " branches (expected 230 / 334)");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "fast";
  try {
    if (mode == "fast") {
      criterion1();
      criterion3_fast();
      criterion4();
      criterion5();
      criterion6();
      criterion7();
      criterion8();
    } else if (mode == "order7") {
      criterion2();
    } else if (mode == "extended") {
      const char* flag = std::getenv("PLANES_EXTENDED");
      if (!flag || std::string(flag) != "1") {
        std::cout << "SKIP criterion 3 (extended): set PLANES_EXTENDED=1 to enable\n";
        std::cout << "SKIP criterion 9 (extended): set PLANES_EXTENDED=1 to enable\n";
        return 0;
      }
      criterion3_extended();
      criterion9();
    } else {
      std::cerr << "usage: acceptance [fast|order7|extended]\n";
      return 64;
    }
  } catch (const std::exception& e) {
    std::cout << "FAIL (exception): " << e.what() << std::endl;
    return 1;
  }
  return g_failures == 0 ? 0 : 1;
}
