// tfact: command-line front end for the factorization checkers.
//
// Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 input or data
// error, 3 resource bound exceeded.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfact/tfact.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace tfact;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct Config {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> trials;
  bool extended = false;
  std::string out;
  std::uint64_t bound = kDefaultIndexBound;
  std::string data_dir = TFACT_DATA_DIR;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_json(const Config& c) {
  json j;
  j["seed"] = c.seed;
  j["trials"] = c.trials ? json(*c.trials) : json(nullptr);
  j["extended"] = c.extended;
  j["bound"] = c.bound;
  return j;
}

json report_header(const std::string& command, const Config& c) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["timestamp"] = utc_timestamp();
  j["config"] = config_json(c);
  return j;
}

void emit(const json& report, const Config& c) {
  const std::string text = report.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out);
  if (!out) throw InputError("cannot write " + c.out);
  out << text;
}

// 1-based everywhere in reports.
json word_json(const ReducedWord& w) {
  json j = json::array();
  for (auto letter : w) j.push_back(letter + 1);
  return j;
}

json labels_json(const std::vector<std::size_t>& labels) {
  json j = json::array();
  for (auto l : labels) j.push_back(l);
  return j;
}

json subdegrees_json(const CosetSpace& cs) {
  json j = json::array();
  for (std::size_t k = 0; k < cs.rank(); ++k) j.push_back(cs.suborbit_size(k));
  return j;
}

PermGroup symmetric_group(std::size_t n, std::size_t degree) {
  std::vector<Point> cycle(n);
  for (std::size_t k = 0; k < n; ++k) cycle[k] = static_cast<Point>(k + 1);
  return PermGroup(degree, {Permutation::from_cycles(degree, {{1, 2}}),
                            Permutation::from_cycles(degree, {cycle})});
}

GroupFile load_named(const Config& c, const std::string& name) {
  return load_group_file(c.data_dir + "/" + name + ".perm");
}

// ---------------------------------------------------------------------------
// coxeter-table

/// Expected verdicts: positive for A_n (n>=2), B_n (n>=3), D_n, E_6..E_8, H_4;
/// negative for A_1, B_2, F_4, H_3 and I2(m), m > 4. I2(3) = A2, I2(4) = B2.
bool expected_coxeter_verdict(const CoxeterType& t) {
  switch (t.family) {
    case CoxeterFamily::A:
      return t.n >= 2;
    case CoxeterFamily::B:
      return t.n >= 3;
    case CoxeterFamily::D:
    case CoxeterFamily::E:
      return true;
    case CoxeterFamily::F:
      return false;
    case CoxeterFamily::H:
      return t.n == 4;
    case CoxeterFamily::I2:
      return t.n == 3;
  }
  return false;
}

std::vector<std::string> default_coxeter_types(bool extended) {
  std::vector<std::string> types = {"A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4",
                                    "B5", "D4", "D5", "D6", "F4", "H3", "H4", "I2(5)", "I2(6)",
                                    "I2(7)", "I2(8)", "E6"};
  if (extended) {
    types.push_back("E7");
    types.push_back("E8");
  }
  return types;
}

int cmd_coxeter_table(const Config& c, std::vector<std::string> types) {
  if (types.empty()) types = default_coxeter_types(c.extended);
  json report = report_header("coxeter-table", c);
  json rows = json::array();
  bool all_match = true;
  for (const auto& symbol : types) {
    const CoxeterSystem cs = build_coxeter(symbol);
    const auto result = parabolic_factorization_check(cs, c.bound);
    const bool expected = expected_coxeter_verdict(cs.type());
    json row;
    row["type"] = cs.type().name();
    row["order"] = cs.order();
    row["verdict"] = result.overall;
    row["expected"] = expected;
    row["match"] = result.overall == expected;
    json succeeding = json::array();
    for (auto k : result.succeeding_parabolics()) succeeding.push_back(k + 1);
    row["succeeding_parabolics"] = succeeding;
    json parabolics = json::array();
    for (const auto& p : result.parabolics) {
      json pj;
      pj["omitted"] = p.omitted + 1;
      pj["index"] = p.index;
      pj["rank"] = p.rank;
      pj["succeeding_labels"] = labels_json(p.succeeding_labels);
      json witnesses = json::array();
      for (const auto& w : p.witnesses) witnesses.push_back(word_json(w));
      pj["witness_words"] = witnesses;
      parabolics.push_back(pj);
    }
    row["parabolics"] = parabolics;
    all_match = all_match && result.overall == expected;
    rows.push_back(row);
  }
  report["rows"] = rows;
  report["status"] = all_match ? "pass" : "fail";
  emit(report, c);
  return all_match ? kExitPass : kExitMismatch;
}

// ---------------------------------------------------------------------------
// square-dc / triple-check / hecke

struct LoadedPair {
  GroupFile g;
  GroupFile a;
  CosetSpace cs;
};

LoadedPair load_pair(const std::string& gpath, const std::string& apath, std::uint64_t bound) {
  GroupFile g = load_group_file(gpath);
  GroupFile a = load_group_file(apath);
  if (g.group.degree() != a.group.degree()) {
    throw DataError(apath + ": degree " + std::to_string(a.group.degree()) +
                    " differs from the group degree " + std::to_string(g.group.degree()));
  }
  if (!g.group.contains_all(a.group)) {
    throw DataError(apath + ": subgroup is not contained in " + gpath);
  }
  CosetSpace cs = CosetSpace::build(g.group, a.group, bound);
  return {std::move(g), std::move(a), std::move(cs)};
}

json space_json(const CosetSpace& cs) {
  json j;
  j["group_order"] = cs.group().order();
  j["subgroup_order"] = cs.subgroup().order();
  j["index"] = cs.index();
  j["rank"] = cs.rank();
  j["subdegrees"] = subdegrees_json(cs);
  return j;
}

int cmd_square_dc(const Config& c, const std::string& gpath, const std::string& apath,
                  bool probabilistic) {
  const auto pair = load_pair(gpath, apath, c.bound);
  const CosetSpace& cs = pair.cs;
  json report = report_header("square-dc", c);
  report["space"] = space_json(cs);
  std::optional<std::size_t> witness;
  json attempts = json::array();
  if (probabilistic) {
    const std::uint64_t trials = c.trials.value_or(default_trials(cs.rank()));
    SplitMix64 streams(c.seed);
    for (std::size_t j = 1; j < cs.rank(); ++j) {
      if (!inverse_in_double_coset(cs, j)) continue;
      const std::uint64_t seed = streams.next();
      const auto v = square_dc_probabilistic(cs, cs.rep(j), trials, seed);
      json aj;
      aj["label"] = j;
      aj["seed"] = seed;
      aj["verdict"] = v.certain ? "certain-true" : "inconclusive";
      aj["unmarked"] = labels_json(v.unmarked);
      attempts.push_back(aj);
      if (v.certain) {
        witness = j;
        break;
      }
    }
    report["method"] = {{"kind", "probabilistic"}, {"trials", trials}, {"seed", c.seed}};
    report["attempts"] = attempts;
  } else {
    witness = square_dc_search_label(cs);
    report["method"] = {{"kind", "exact"}};
  }
  if (witness) {
    json wj;
    wj["label"] = *witness;
    wj["subdegree"] = cs.suborbit_size(*witness);
    wj["representative"] = cs.rep(*witness).to_cycles();
    wj["exact_recheck"] = square_dc_check_rep(cs, *witness);
    const auto inv = find_involution_in_double_coset(cs, *witness);
    wj["involution"] = inv ? json(inv->to_cycles()) : json(nullptr);
    report["witness"] = wj;
  } else {
    report["witness"] = nullptr;
  }
  const bool consistent = !witness || square_dc_check_rep(cs, *witness);
  report["status"] = consistent ? "pass" : "fail";
  emit(report, c);
  return consistent ? kExitPass : kExitMismatch;
}

int cmd_triple_check(const Config& c, const std::string& gpath, const std::string& apath,
                     const std::string& element) {
  const auto pair = load_pair(gpath, apath, c.bound);
  const CosetSpace& cs = pair.cs;
  json report = report_header("triple-check", c);
  report["space"] = space_json(cs);
  if (!element.empty()) {
    const Permutation x = parse_cycles(element, cs.group().degree());
    report["element"] = x.to_cycles();
    report["label"] = cs.dc_index(x);
    report["factorizes"] = triple_check(cs, x);
  }
  json labels = json::array();
  for (std::size_t j = 0; j < cs.rank(); ++j) {
    json lj;
    lj["label"] = j;
    lj["representative"] = cs.rep(j).to_cycles();
    lj["inverse_label"] = cs.inverse_label(j);
    lj["triple"] = triple_check_rep(cs, j);
    lj["square"] = square_dc_check_rep(cs, j);
    labels.push_back(lj);
  }
  report["labels"] = labels;
  report["status"] = "pass";
  emit(report, c);
  return kExitPass;
}

json matrix_json(const std::vector<std::vector<std::uint64_t>>& m) {
  json j = json::array();
  for (const auto& row : m) j.push_back(row);
  return j;
}

int cmd_hecke(const Config& c, const std::string& gpath, const std::string& apath) {
  const auto pair = load_pair(gpath, apath, c.bound);
  const CosetSpace& cs = pair.cs;
  const CollapsedAdjacency ca(cs);
  json report = report_header("hecke", c);
  report["space"] = space_json(cs);
  json hecke = json::array(), orbital = json::array(), squares = json::array();
  for (std::size_t y = 0; y < ca.rank(); ++y) {
    hecke.push_back(matrix_json(ca.matrix(y)));
    orbital.push_back(matrix_json(ca.orbital_matrix(y)));
    squares.push_back(squares_to_group(ca, y));
  }
  report["inverse_labels"] = json::array();
  for (std::size_t y = 0; y < ca.rank(); ++y) report["inverse_labels"].push_back(cs.inverse_label(y));
  report["hecke_matrices"] = hecke;
  report["orbital_matrices"] = orbital;
  report["squares_to_group"] = squares;
  const bool conserved = mass_conserved(ca);
  report["mass_conserved"] = conserved;
  report["status"] = conserved ? "pass" : "fail";
  emit(report, c);
  return conserved ? kExitPass : kExitMismatch;
}

// ---------------------------------------------------------------------------
// suites shared by dioid-verify and verify-all

struct Suite {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  json details = json::object();

  void check(bool ok) {
    ++checks;
    if (!ok) ++failures;
  }
  json to_json() const {
    json j;
    j["suite"] = name;
    j["passed"] = failures == 0;
    j["checks"] = checks;
    j["failures"] = failures;
    if (!details.empty()) j["details"] = details;
    return j;
  }
};

DioidElement random_dioid_element(const BruhatDioid& d, SplitMix64& rng, std::uint64_t density) {
  std::vector<std::size_t> members;
  for (std::size_t w = 0; w < d.size(); ++w) {
    if (rng.below(density) == 0) members.push_back(w);
  }
  return d.from_indices(members);
}

void check_axioms(Suite& s, const BruhatDioid& d, const DioidElement& a, const DioidElement& b,
                  const DioidElement& c) {
  s.check(d.mult(d.mult(a, b), c) == d.mult(a, d.mult(b, c)));
  s.check(d.mult(a, b + c) == d.mult(a, b) + d.mult(a, c));
  s.check(d.mult(a + b, c) == d.mult(a, c) + d.mult(b, c));
  s.check(a + a == a);
  s.check(d.mult(d.zero(), a) == d.zero() && d.mult(a, d.zero()) == d.zero());
  s.check(d.mult(d.one(), a) == a && d.mult(a, d.one()) == a);
  s.check(d.star(d.mult(a, b)) == d.mult(d.star(b), d.star(a)));
}

Suite suite_dioid_axioms(std::uint64_t seed) {
  Suite s{"dioid-axioms"};
  {
    const BruhatDioid d(build_coxeter("A2"));
    // Exhaustive over all triples of subsets of W(A2).
    std::vector<DioidElement> all;
    for (std::uint64_t m = 0; m < 64; ++m) all.push_back(d.from_mask(m));
    for (const auto& a : all) {
      for (const auto& b : all) {
        for (const auto& c : all) check_axioms(s, d, a, b, c);
      }
    }
    s.details["A2"] = "exhaustive, 262144 triples";
  }
  SplitMix64 rng(seed);
  for (const char* name : {"B3", "F4"}) {
    const BruhatDioid d(build_coxeter(name));
    const std::uint64_t density = d.size() > 100 ? 64 : 4;
    for (int k = 0; k < 200; ++k) {
      const auto a = random_dioid_element(d, rng, density);
      const auto b = random_dioid_element(d, rng, density);
      const auto c = random_dioid_element(d, rng, density);
      check_axioms(s, d, a, b, c);
    }
    s.details[name] = "200 seeded triples";
  }
  return s;
}

std::vector<std::string> theorem4_types() {
  return {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "F4", "H3", "H4",
          "I2(5)", "I2(6)", "I2(7)", "I2(8)", "E6"};
}

Suite suite_theorem4(std::uint64_t bound) {
  Suite s{"longest-element-square"};
  for (const auto& name : theorem4_types()) {
    const bool ok = verify_theorem4(build_coxeter(name), bound);
    s.check(ok);
    s.details[name] = ok;
  }
  return s;
}

Suite suite_bn_oracle(const Config& c) {
  Suite s{"bn-oracle"};
  const auto g = load_named(c, "psl27");
  const auto b = load_named(c, "psl27_borel");
  const CosetSpace oracle = CosetSpace::build(g.group, b.group, c.bound);
  const BruhatDioid d(build_coxeter("A2"));
  s.check(oracle.rank() == d.size());
  const auto cmp = bn_oracle_compare_detail(oracle, d);
  s.checks += cmp.pairs_checked;
  s.failures += cmp.mismatches;
  const bool squares = square_dc_check_rep(oracle, cmp.label_of[d.table().longest()]);
  s.check(squares);
  s.details["rank"] = oracle.rank();
  s.details["pairs"] = cmp.pairs_checked;
  s.details["longest_double_coset_squares"] = squares;
  return s;
}

Suite suite_equivalences(const Config& c) {
  Suite s{"conjugate-product-equivalences"};
  struct Setup {
    std::string name;
    PermGroup g;
    PermGroup a;
  };
  const auto psl = load_named(c, "psl27");
  const auto borel = load_named(c, "psl27_borel");
  const std::vector<Setup> setups = {
      {"S4/<(1,2)>", symmetric_group(4, 4), PermGroup(4, {Permutation::from_cycles(4, {{1, 2}})})},
      {"S5/S4", symmetric_group(5, 5), symmetric_group(4, 5)},
      {"PSL(2,7)/B", psl.group, borel.group}};
  SplitMix64 rng(c.seed);
  for (const auto& setup : setups) {
    const CosetSpace cs = CosetSpace::build(setup.g, setup.a, c.bound);
    for (int t = 0; t < 100; ++t) {
      const Permutation x = setup.g.random_element(rng);
      const Permutation y = setup.a.random_element(rng) * x.inverse() * setup.a.random_element(rng) * x;
      const auto rec = theorem1_equivalences(cs, x, y);
      s.check(rec.y_in_a_ax && rec.a == rec.b && rec.b == rec.c && rec.c == triple_check(cs, x));
    }
  }
  return s;
}

const std::vector<std::pair<std::string, std::string>>& shipped_pairs() {
  static const std::vector<std::pair<std::string, std::string>> pairs = {
      {"alt5", "alt5_stab"}, {"alt6", "alt6_stab"}, {"alt7", "alt7_stab"}, {"alt8", "alt8_stab"},
      {"m11", "m11_stab"},   {"m12", "m12_stab"},   {"psl27", "psl27_borel"}};
  return pairs;
}

Suite suite_hecke(const Config& c) {
  Suite s{"hecke-mass-conservation"};
  for (const auto& [gname, aname] : shipped_pairs()) {
    const CosetSpace cs = CosetSpace::build(load_named(c, gname).group, load_named(c, aname).group, c.bound);
    const CollapsedAdjacency ca(cs);
    const bool ok = mass_conserved(ca);
    s.check(ok);
    s.details[gname] = ok;
  }
  return s;
}

Suite suite_square_dc(const Config& c) {
  Suite s{"square-dc-witnesses"};
  for (const auto& [gname, aname] : shipped_pairs()) {
    if (gname == "psl27") continue;
    const CosetSpace cs = CosetSpace::build(load_named(c, gname).group, load_named(c, aname).group, c.bound);
    const auto label = square_dc_search_label(cs);
    s.check(label.has_value());
    json dj;
    dj["witness_label"] = label ? json(*label) : json(nullptr);
    if (label && gname.rfind("alt", 0) == 0) {
      const auto inv = find_involution_in_double_coset(cs, *label);
      s.check(inv.has_value() && square_dc_check(cs, *inv));
      dj["involution"] = inv ? json(inv->to_cycles()) : json(nullptr);
    }
    s.details[gname] = dj;
  }
  return s;
}

Suite suite_probabilistic(const Config& c) {
  Suite s{"probabilistic-marker"};
  for (const auto& [gname, aname] : std::vector<std::pair<std::string, std::string>>{
           {"m12", "m12_stab"}, {"alt7", "alt7_stab"}}) {
    const CosetSpace cs = CosetSpace::build(load_named(c, gname).group, load_named(c, aname).group, c.bound);
    const std::uint64_t trials = c.trials.value_or(default_trials(cs.rank()));
    for (std::size_t j = 1; j < cs.rank(); ++j) {
      if (!inverse_in_double_coset(cs, j)) continue;
      const bool exact = square_dc_check_rep(cs, j);
      const auto v = square_dc_probabilistic(cs, cs.rep(j), trials, c.seed + j);
      s.check(!v.certain || exact);
    }
  }
  return s;
}

int finish_suites(const std::string& command, const Config& c, const std::vector<Suite>& suites) {
  json report = report_header(command, c);
  json list = json::array();
  bool ok = true;
  for (const auto& s : suites) {
    list.push_back(s.to_json());
    ok = ok && s.failures == 0;
  }
  report["suites"] = list;
  report["status"] = ok ? "pass" : "fail";
  emit(report, c);
  return ok ? kExitPass : kExitMismatch;
}

int cmd_dioid_verify(const Config& c) {
  return finish_suites("dioid-verify", c,
                       {suite_theorem4(c.bound), suite_bn_oracle(c), suite_dioid_axioms(c.seed)});
}

int cmd_verify_all(const Config& c) {
  return finish_suites("verify-all", c,
                       {suite_dioid_axioms(c.seed), suite_theorem4(c.bound), suite_bn_oracle(c),
                        suite_equivalences(c), suite_hecke(c), suite_square_dc(c),
                        suite_probabilistic(c)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization checks for permutation groups, Coxeter groups and Bruhat dioids"};
  app.require_subcommand(1);
  Config config;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Seed for every randomized step");
    sub->add_option("--trials", config.trials, "Trials for the probabilistic marker")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--extended", config.extended, "Include E7 and E8");
    sub->add_option("--out", config.out, "Write the JSON report here instead of stdout");
    sub->add_option("--bound", config.bound, "Coset index / enumeration bound")
        ->check(CLI::PositiveNumber);
    sub->add_option("--data", config.data_dir, "Directory with the shipped .perm files");
  };

  std::vector<std::string> types;
  auto* coxeter = app.add_subcommand("coxeter-table", "Parabolic triple factorizations per Coxeter type");
  add_common(coxeter);
  coxeter->add_option("--types", types, "Comma-separated type list, e.g. A3,B4,I2(5)")->delimiter(',');

  std::string gpath, apath, element;
  bool probabilistic = false;
  auto* square = app.add_subcommand("square-dc", "Search a double coset whose square is the group");
  add_common(square);
  square->add_option("group", gpath, "Group .perm file")->required();
  square->add_option("subgroup", apath, "Subgroup .perm file")->required();
  square->add_flag("--probabilistic", probabilistic, "Use the random marker instead of the exact check");

  auto* triple = app.add_subcommand("triple-check", "Check G = A A^x A over double coset representatives");
  add_common(triple);
  triple->add_option("group", gpath, "Group .perm file")->required();
  triple->add_option("subgroup", apath, "Subgroup .perm file")->required();
  triple->add_option("--element", element, "Also check this element, in cycle notation");

  auto* hecke = app.add_subcommand("hecke", "Intersection numbers and collapsed adjacency matrices");
  add_common(hecke);
  hecke->add_option("group", gpath, "Group .perm file")->required();
  hecke->add_option("subgroup", apath, "Subgroup .perm file")->required();

  auto* dioid = app.add_subcommand("dioid-verify", "Bruhat dioid checks and the BN-pair oracle");
  add_common(dioid);
  auto* all = app.add_subcommand("verify-all", "Run every invariant suite");
  add_common(all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*coxeter) return cmd_coxeter_table(config, types);
    if (*square) return cmd_square_dc(config, gpath, apath, probabilistic);
    if (*triple) return cmd_triple_check(config, gpath, apath, element);
    if (*hecke) return cmd_hecke(config, gpath, apath);
    if (*dioid) return cmd_dioid_verify(config);
    if (*all) return cmd_verify_all(config);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource bound exceeded: " << e.what() << "\n";
    return kExitResource;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitInput;
}
