// nottingham: exact computation in groups of formal power series under
// substitution over F_p, with a verification battery for the commutator
// calculus driving the just-infinite structure results.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "nott/binomial.hpp"
#include "nott/commutator.hpp"
#include "nott/index_set.hpp"
#include "nott/lemmas.hpp"
#include "nott/series_text.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace nott;

struct Common {
  uint32_t p = 3;
  uint32_t q = 0;  // defaults to p
  uint32_t prec = 32;
  uint64_t seed = 0;
  std::string format = "text";
  std::string profile = "quick";
  bool truncate = false;

  uint32_t q_or_p() const { return q ? q : p; }

  void validate() const {
    require_prime(p);
    if (q && power_of(q, p) == 0)
      throw ArgumentError("q = " + std::to_string(q) +
                          " is not a positive power of p = " + std::to_string(p));
    if (prec < 2) throw ArgumentError("precision must be >= 2");
  }

  void header(std::ostream& os) const {
    os << "# nottingham " << kVersion << " p=" << p << " q=" << q_or_p()
       << " prec=" << prec << " seed=" << seed << "\n";
  }
  json meta() const {
    return json{{"tool", "nottingham"}, {"version", kVersion}, {"p", p},
                {"q", q_or_p()},        {"precision", prec},   {"seed", seed}};
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--p", c.p, "prime modulus");
  cmd->add_option("--q", c.q, "power of p for the T machinery (defaults to p)");
  cmd->add_option("--prec", c.prec, "series precision N");
  cmd->add_option("--seed", c.seed, "PRNG seed (echoed into every report)");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "tsv", "json"}));
  cmd->add_option("--profile", c.profile, "parameter profile")
      ->check(CLI::IsMember({"quick", "full"}));
  cmd->add_flag("--truncate", c.truncate,
                "drop series terms beyond the precision instead of failing");
}

int g_status = 0;

// --- lambda family plumbing --------------------------------------------------

struct FamilyArgs {
  std::string family;
  uint32_t d = 2;
  uint32_t i = 1;
  std::string set_csv;
  uint32_t horizon = IndexSet::kDefaultHorizon;
};

void add_family(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--family", f.family, "A, B, C, D, qN, explicit or full")
      ->required()
      ->check(CLI::IsMember({"A", "B", "C", "D", "qN", "explicit", "full"}));
  cmd->add_option("--d", f.d, "divisor for family A");
  cmd->add_option("--i", f.i, "exponent for family C");
  cmd->add_option("--set", f.set_csv, "comma-separated explicit set");
  cmd->add_option("--horizon", f.horizon, "membership horizon");
}

IndexSet make_family(const FamilyArgs& f, const Common& c) {
  if (f.family == "A") return IndexSet::family_a(c.p, f.d, f.horizon);
  if (f.family == "B") return IndexSet::family_b(c.p, f.horizon);
  if (f.family == "C") return IndexSet::family_c(c.p, f.i, f.horizon);
  if (f.family == "D") return IndexSet::family_d(c.p, f.horizon);
  if (f.family == "qN") return IndexSet::multiples(c.p, c.q_or_p(), f.horizon);
  if (f.family == "full") return IndexSet::full(c.p, f.horizon);
  std::set<uint32_t> elements;
  std::stringstream ss(f.set_csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      elements.insert(static_cast<uint32_t>(std::stoul(item)));
  if (elements.empty())
    throw ArgumentError("explicit family needs --set \"l1,l2,...\"");
  return IndexSet::explicit_set(c.p, elements, f.horizon);
}

// --- verify plumbing ----------------------------------------------------------

LemmaCheckConfig profile_config(const Common& c) {
  LemmaCheckConfig cfg;
  cfg.p = c.p;
  cfg.q = c.q_or_p();
  cfg.seed = c.seed;
  const uint32_t q2 = cfg.q * cfg.q;
  if (c.profile == "full") {
    cfg.trials = 100;
    cfg.j_max = 4;
    cfg.e_max = 3;
    cfg.i_max = 6;
    cfg.l41_j_lo = q2;
    cfg.l41_j_hi = q2 + 3;
    cfg.l41_i_hi = q2 + 6;
    cfg.l42_j_lo = q2;
    cfg.l42_j_hi = q2 + 3;
    cfg.l42_i_hi = q2 + 6;
  } else {
    cfg.trials = 15;
    cfg.j_max = 2;
    cfg.e_max = 2;
    cfg.i_max = 4;
    cfg.l41_j_lo = q2;
    cfg.l41_j_hi = q2 + 1;
    cfg.l41_i_hi = q2 + 4;
    cfg.l42_j_lo = q2;
    cfg.l42_j_hi = q2;
    cfg.l42_i_hi = q2 + 2;
  }
  return cfg;
}

std::vector<CheckReport> run_lemma(const std::string& id,
                                   const LemmaCheckConfig& cfg) {
  if (id == "2.1") return {verify_lemma_21(cfg)};
  if (id == "2.2") return {verify_lemma_22(cfg)};
  if (id == "3.2" || id == "3.3") return {verify_prop_32_33(cfg)};
  if (id == "3.4") return {verify_prop_34(cfg)};
  if (id == "4.1") return {verify_lemma_41(cfg)};
  if (id == "4.2") return {verify_lemma_42(cfg)};
  if (id == "5.1") return {verify_lemma_51(cfg)};
  if (id == "5.2") return {verify_lemma_52(cfg)};
  if (id == "5.3") return {verify_lemma_53(cfg)};
  if (id == "5.5") return {verify_theorem_55(cfg)};
  throw ArgumentError("unknown lemma id " + id +
                      " (known: 2.1 2.2 3.2 3.3 3.4 4.1 4.2 5.1 5.2 5.3 5.5)");
}

void emit_reports(const std::vector<CheckReport>& reports, const Common& c) {
  bool all_passed = true;
  for (const auto& r : reports) all_passed &= r.passed;
  if (c.format == "json") {
    json doc = c.meta();
    doc["reports"] = json::array();
    for (const auto& r : reports) {
      json rows = json::array();
      for (const auto& row : r.rows)
        rows.push_back({{"params", row.params},
                        {"status", row.passed ? "pass" : "fail"},
                        {"witness", row.witness}});
      doc["reports"].push_back({{"lemma", r.lemma},
                                {"passed", r.passed},
                                {"instances", r.instances},
                                {"rows", rows}});
    }
    doc["passed"] = all_passed;
    std::cout << doc.dump(2) << "\n";
  } else {
    c.header(std::cout);
    std::cout << "lemma\tparams\tstatus\twitness\n";
    for (const auto& r : reports)
      for (const auto& row : r.rows)
        std::cout << r.lemma << "\t" << row.params << "\t"
                  << (row.passed ? "pass" : "fail") << "\t" << row.witness
                  << "\n";
  }
  if (!all_passed) g_status = 1;
}

GroupSeries parse_arg(const std::string& text, const Common& c) {
  return parse_group_series(text, c.p, c.prec, c.truncate);
}

void emit_series(const GroupSeries& s, const Common& c) {
  if (c.format == "json") {
    json doc = c.meta();
    doc["series"] = json::parse(to_json(s));
    std::cout << doc.dump() << "\n";
  } else {
    c.header(std::cout);
    std::cout << print_series(s) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computation in groups of power series under substitution"};
  app.require_subcommand(1);

  // binom
  Common binom_c;
  uint64_t binom_a = 0, binom_b = 0;
  auto* binom_cmd = app.add_subcommand("binom", "binomial coefficient mod p");
  binom_cmd->add_option("a", binom_a)->required();
  binom_cmd->add_option("b", binom_b)->required();
  add_common(binom_cmd, binom_c);
  binom_cmd->callback([&] {
    binom_c.validate();
    auto r = binom_mod_p(binom_a, binom_b, binom_c.p);
    if (binom_c.format == "json") {
      json doc = binom_c.meta();
      doc["a"] = binom_a;
      doc["b"] = binom_b;
      doc["residue"] = r.value();
      std::cout << doc.dump() << "\n";
    } else {
      binom_c.header(std::cout);
      std::cout << r.value() << "\n";
    }
  });

  // compose
  Common compose_c;
  std::vector<std::string> compose_args;
  auto* compose_cmd = app.add_subcommand("compose", "substitute: first o second");
  compose_cmd->add_option("series", compose_args)->expected(2);
  add_common(compose_cmd, compose_c);
  compose_cmd->callback([&] {
    compose_c.validate();
    auto u = parse_arg(compose_args[0], compose_c);
    auto v = parse_arg(compose_args[1], compose_c);
    emit_series(compose(u, v), compose_c);
  });

  // invert
  Common invert_c;
  std::string invert_arg;
  auto* invert_cmd = app.add_subcommand("invert", "compositional inverse");
  invert_cmd->add_option("series", invert_arg)->required();
  add_common(invert_cmd, invert_c);
  invert_cmd->callback([&] {
    invert_c.validate();
    emit_series(invert(parse_arg(invert_arg, invert_c)), invert_c);
  });

  // power
  Common power_c;
  std::string power_arg;
  uint64_t power_e = 1;
  auto* power_cmd = app.add_subcommand("power", "e-fold group composition");
  power_cmd->add_option("series", power_arg)->required();
  power_cmd->add_option("--e", power_e, "exponent (>= 1)")->required();
  add_common(power_cmd, power_c);
  power_cmd->callback([&] {
    power_c.validate();
    emit_series(group_pow(parse_arg(power_arg, power_c), power_e), power_c);
  });

  // commutator
  Common comm_c;
  std::vector<std::string> comm_args;
  std::string comm_method = "both";
  bool comm_fault = false;
  auto* comm_cmd = app.add_subcommand("commutator", "[v,u] = v o u o v^-1 o u^-1");
  comm_cmd->add_option("series", comm_args, "v then u")->expected(2);
  comm_cmd->add_option("--method", comm_method)
      ->check(CLI::IsMember({"direct", "recurrence", "both"}));
  comm_cmd->add_flag("--inject-fault", comm_fault,
                     "corrupt the recurrence result (mismatch-path testing)")
      ->group("");  // hidden
  add_common(comm_cmd, comm_c);
  comm_cmd->callback([&] {
    comm_c.validate();
    auto v = parse_arg(comm_args[0], comm_c);
    auto u = parse_arg(comm_args[1], comm_c);
    auto corrupt = [&](GroupSeries s) {
      if (!comm_fault) return s;
      std::vector<uint32_t> c = s.formal().coeffs();
      c[s.precision()] = (c[s.precision()] + 1) % comm_c.p;
      return GroupSeries(FormalSeries(comm_c.p, std::move(c)));
    };
    if (comm_c.format != "json") comm_c.header(std::cout);
    json doc = comm_c.meta();
    std::optional<GroupSeries> direct, recurrence;
    if (comm_method != "recurrence") {
      direct = commutator_direct(v, u).value;
      if (comm_c.format == "json")
        doc["direct"] = json::parse(to_json(*direct));
      else
        std::cout << "direct\t" << print_series(*direct) << "\n";
    }
    if (comm_method != "direct") {
      recurrence = corrupt(commutator_recurrence(v, u).value);
      if (comm_c.format == "json")
        doc["recurrence"] = json::parse(to_json(*recurrence));
      else
        std::cout << "recurrence\t" << print_series(*recurrence) << "\n";
    }
    if (direct && recurrence) {
      bool match = *direct == *recurrence;
      if (comm_c.format == "json")
        doc["match"] = match;
      else
        std::cout << "verdict\t" << (match ? "match" : "MISMATCH") << "\n";
      if (!match) g_status = 1;
    }
    if (comm_c.format == "json") std::cout << doc.dump() << "\n";
  });

  // depth
  Common depth_c;
  std::string depth_arg, depth_kind = "J";
  auto* depth_cmd = app.add_subcommand("depth", "filtration level of a series");
  depth_cmd->add_option("series", depth_arg)->required();
  depth_cmd->add_option("--kind", depth_kind)
      ->check(CLI::IsMember({"J", "T", "S"}));
  add_common(depth_cmd, depth_c);
  depth_cmd->callback([&] {
    depth_c.validate();
    auto u = parse_arg(depth_arg, depth_c);
    FiltrationKind kind = depth_kind == "J"   ? FiltrationKind::J
                          : depth_kind == "T" ? FiltrationKind::T
                                              : FiltrationKind::S;
    auto d = depth(u, kind, depth_c.q_or_p());
    if (depth_c.format == "json") {
      json doc = depth_c.meta();
      doc["kind"] = depth_kind;
      if (d.level)
        doc["level"] = *d.level;
      else
        doc["level"] = "IDENTITY";
      std::cout << doc.dump() << "\n";
    } else {
      depth_c.header(std::cout);
      std::cout << depth_kind << "\t"
                << (d.level ? std::to_string(*d.level) : "IDENTITY") << "\n";
    }
  });

  // torsion
  Common torsion_c;
  std::string torsion_arg;
  auto* torsion_cmd =
      app.add_subcommand("torsion", "torsion classification at precision");
  torsion_cmd->add_option("series", torsion_arg)->required();
  add_common(torsion_cmd, torsion_c);
  torsion_cmd->callback([&] {
    torsion_c.validate();
    auto verdict = torsion_verdict(parse_arg(torsion_arg, torsion_c));
    if (torsion_c.format == "json") {
      json doc = torsion_c.meta();
      doc["verdict"] = to_string(verdict.verdict);
      doc["exponent_trace"] = verdict.exponent_trace;
      std::cout << doc.dump() << "\n";
    } else {
      torsion_c.header(std::cout);
      std::cout << to_string(verdict.verdict);
      for (uint32_t e : verdict.exponent_trace) std::cout << "\t" << e;
      std::cout << "\n";
    }
  });

  // lambda check / probe / member
  auto* lambda_cmd = app.add_subcommand("lambda", "index subgroups J(Lambda)");
  lambda_cmd->require_subcommand(1);

  Common lcheck_c;
  FamilyArgs lcheck_f;
  uint32_t lcheck_scan = 200;
  bool lcheck_all = false;
  auto* lcheck_cmd =
      lambda_cmd->add_subcommand("check", "scan the subgroup criterion");
  add_family(lcheck_cmd, lcheck_f);
  lcheck_cmd->add_option("--scan", lcheck_scan,
                         "criterion scan bound (defaults to 200)");
  lcheck_cmd->add_flag("--all-witnesses", lcheck_all);
  add_common(lcheck_cmd, lcheck_c);
  lcheck_cmd->callback([&] {
    lcheck_c.validate();
    auto set = make_family(lcheck_f, lcheck_c);
    uint32_t scan = std::min(lcheck_scan, lcheck_f.horizon);
    auto report = klopsch_check(set, scan, lcheck_all);
    if (lcheck_c.format == "json") {
      json doc = lcheck_c.meta();
      doc["lambda_family"] = set.describe();
      doc["horizon"] = report.horizon;
      doc["passed"] = report.passed;
      doc["witnesses"] = json::array();
      for (const auto& w : report.witnesses)
        doc["witnesses"].push_back(
            {{"lambda", w.lambda}, {"mu", w.mu}, {"k", w.k}});
      std::cout << doc.dump(2) << "\n";
    } else {
      lcheck_c.header(std::cout);
      std::cout << "lambda_family\tp\thorizon\tpassed\tn_witnesses\n";
      std::cout << set.describe() << "\t" << lcheck_c.p << "\t" << report.horizon
                << "\t" << (report.passed ? "true" : "false") << "\t"
                << report.witnesses.size() << "\n";
      for (const auto& w : report.witnesses)
        std::cout << "witness\t" << w.lambda << "\t" << w.mu << "\t" << w.k
                  << "\n";
    }
    if (!report.passed) g_status = 1;
  });

  Common lprobe_c;
  FamilyArgs lprobe_f;
  uint32_t lprobe_trials = 500;
  auto* lprobe_cmd =
      lambda_cmd->add_subcommand("probe", "closure probe with random pairs");
  add_family(lprobe_cmd, lprobe_f);
  lprobe_cmd->add_option("--trials", lprobe_trials);
  add_common(lprobe_cmd, lprobe_c);
  lprobe_cmd->callback([&] {
    lprobe_c.validate();
    auto set = make_family(lprobe_f, lprobe_c);
    auto report = closure_probe(set, lprobe_trials, lprobe_c.prec, lprobe_c.seed);
    if (lprobe_c.format == "json") {
      json doc = lprobe_c.meta();
      doc["lambda_family"] = set.describe();
      doc["trials"] = report.trials;
      doc["violations"] = json::array();
      for (const auto& v : report.violations)
        doc["violations"].push_back({{"trial", v.trial},
                                     {"operation", v.operation},
                                     {"detail", v.detail}});
      std::cout << doc.dump(2) << "\n";
    } else {
      lprobe_c.header(std::cout);
      std::cout << "lambda_family\tp\tprec\ttrials\tn_violations\n";
      std::cout << set.describe() << "\t" << lprobe_c.p << "\t" << lprobe_c.prec
                << "\t" << report.trials << "\t" << report.violations.size()
                << "\n";
      for (const auto& v : report.violations)
        std::cout << "violation\t" << v.trial << "\t" << v.operation << "\t"
                  << v.detail << "\n";
    }
    if (!report.violations.empty()) g_status = 1;
  });

  Common lmember_c;
  FamilyArgs lmember_f;
  std::string lmember_arg;
  auto* lmember_cmd =
      lambda_cmd->add_subcommand("member", "membership of a series in J(Lambda)");
  add_family(lmember_cmd, lmember_f);
  lmember_cmd->add_option("series", lmember_arg)->required();
  add_common(lmember_cmd, lmember_c);
  lmember_cmd->callback([&] {
    lmember_c.validate();
    auto set = make_family(lmember_f, lmember_c);
    bool ok = member(parse_arg(lmember_arg, lmember_c), set);
    if (lmember_c.format == "json") {
      json doc = lmember_c.meta();
      doc["lambda_family"] = set.describe();
      doc["member"] = ok;
      std::cout << doc.dump() << "\n";
    } else {
      lmember_c.header(std::cout);
      std::cout << (ok ? "member" : "non-member") << "\n";
    }
    if (!ok) g_status = 1;
  });

  // verify
  Common verify_c;
  std::string verify_lemma;
  bool verify_all = false;
  uint32_t verify_trials = 0;
  auto* verify_cmd =
      app.add_subcommand("verify", "mechanical checks of the lemma battery");
  verify_cmd->add_option("--lemma", verify_lemma,
                         "2.1 2.2 3.2 3.3 3.4 4.1 4.2 5.1 5.2 5.3 5.5");
  verify_cmd->add_flag("--all", verify_all, "run the whole battery");
  verify_cmd->add_option("--trials", verify_trials, "override trial count");
  add_common(verify_cmd, verify_c);
  verify_cmd->callback([&] {
    verify_c.validate();
    if (verify_lemma.empty() && !verify_all)
      throw ArgumentError("verify needs --lemma <id> or --all");
    auto cfg = profile_config(verify_c);
    if (verify_trials) cfg.trials = verify_trials;
    std::vector<CheckReport> reports;
    if (verify_all) {
      for (const char* id : {"2.1", "2.2", "3.2", "3.4", "4.1", "4.2"})
        for (auto& r : run_lemma(id, cfg)) reports.push_back(std::move(r));
      if (verify_c.p != 2) {
        for (const char* id : {"5.1", "5.2", "5.3", "5.5"})
          for (auto& r : run_lemma(id, cfg)) reports.push_back(std::move(r));
      } else {
        CheckReport skip;
        skip.lemma = "5.x";
        skip.add("p=2", true, "skipped: the 5.x battery runs at odd p");
        reports.push_back(std::move(skip));
      }
    } else {
      reports = run_lemma(verify_lemma, cfg);
    }
    emit_reports(reports, verify_c);
  });

  // explore
  Common explore_c;
  std::string explore_arg;
  uint32_t explore_level = 1;
  ClosureCaps explore_caps;
  bool explore_json = false;
  auto* explore_cmd =
      app.add_subcommand("explore", "normal-closure depth exploration");
  explore_cmd->add_option("series", explore_arg, "generator")->required();
  explore_cmd->add_option("--level", explore_level,
                          "conjugators come from S_level");
  explore_cmd->add_option("--max-elements", explore_caps.max_elements);
  explore_cmd->add_flag("--json", explore_json, "shorthand for --format json");
  add_common(explore_cmd, explore_c);
  explore_cmd->callback([&] {
    explore_c.validate();
    auto g = parse_arg(explore_arg, explore_c);
    auto report =
        closure_explore(g, explore_level, explore_caps, explore_c.seed);
    if (explore_json || explore_c.format == "json") {
      json doc = explore_c.meta();
      doc["generator"] = report.generator;
      doc["element_count"] = report.element_count;
      doc["capped"] = report.capped;
      doc["depths"] = report.depths;
      doc["tail_start"] = report.tail_start;
      doc["tail_end"] = report.tail_end;
      std::cout << doc.dump(2) << "\n";
    } else {
      explore_c.header(std::cout);
      std::cout << "elements\t" << report.element_count << "\n";
      std::cout << "capped\t" << (report.capped ? "true" : "false") << "\n";
      std::cout << "tail\t[" << report.tail_start << ", " << report.tail_end
                << "]\n";
      std::cout << "depths";
      for (uint32_t d : report.depths) std::cout << "\t" << d;
      std::cout << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const nott::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_status;
}
