#include "nilcap_tools/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "nilcap/arith.hpp"
#include "nilcap/capability.hpp"
#include "nilcap/engine.hpp"
#include "nilcap/oracle.hpp"
#include "nilcap/polycyclic.hpp"
#include "nilcap/wordlang.hpp"

namespace nilcap::tools {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string spec_path;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  bool json = false;
  bool strict = false;
};

// ---- rendering -------------------------------------------------------------

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_flat(const Json& j) {
  return std::all_of(j.begin(), j.end(), [](const Json& x) { return !x.is_structured(); });
}

void render(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (!v.is_structured()) {
      out << pad << it.key() << ": " << scalar_text(v) << "\n";
    } else if (v.is_array() && is_flat(v)) {
      out << pad << it.key() << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
      out << "]\n";
    } else if (v.is_array()) {
      out << pad << it.key() << ":\n";
      for (const auto& item : v) {
        if (item.is_object()) {
          out << pad << "  -\n";
          render(out, item, indent + 4);
        } else {
          out << pad << "  - " << item.dump() << "\n";
        }
      }
    } else {
      out << pad << it.key() << ":\n";
      render(out, v, indent + 2);
    }
  }
}

void emit(std::ostream& out, const Json& record, bool json) {
  if (json) {
    out << record.dump() << "\n";
  } else {
    render(out, record, 0);
    out << "\n";
  }
}

// ---- inputs ----------------------------------------------------------------

GroupSpec load_spec(const std::string& path) {
  if (path.empty()) throw std::invalid_argument("--spec FILE is required for this command");
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_spec(ss.str());
}

Json spec_json(const GroupSpec& spec) { return Json::parse(group_spec_to_json(spec)); }

Json order_json(std::uint64_t p, int log_p) {
  Json j;
  j["log_p"] = log_p;
  try {
    j["value"] = arith::checked_pow(p, static_cast<std::uint64_t>(log_p));
  } catch (const std::overflow_error&) {
    j["value"] = nullptr;
  }
  return j;
}

int log_of(std::uint64_t p, std::uint64_t n) { return static_cast<int>(arith::floor_log(p, n)); }

bool plain_product(const GroupSpec& spec) { return spec.relators.empty() && !spec.presentation11; }

std::vector<int> sorted_orders(const GroupSpec& spec) {
  std::vector<int> sorted;
  sort_by_order(spec.orders, sorted);
  return sorted;
}

std::shared_ptr<const HallBasis> basis_of(const GroupSpec& spec) {
  return std::make_shared<const HallBasis>(
      HallBasis::make(spec.prime, spec.nilpotency_class, sorted_orders(spec), spec.variant));
}

// Names usable in words: x1..xr always, a and b for the two-generator presentation.
template <class T>
std::map<std::string, T> with_aliases(const GroupSpec& spec, std::map<std::string, T> names) {
  if (spec.presentation11) {
    names.emplace("a", names.at("x1"));
    names.emplace("b", names.at("x2"));
  }
  return names;
}

Json subgroup_json(const GroupView& g, const Subgroup& s) {
  Json j;
  j["order"] = s.order();
  Json gens = Json::array();
  for (auto x : s.generators()) gens.push_back(g.format(x));
  j["generators"] = gens;
  return j;
}

Json witness_json(const WitnessReport& w) {
  Json j;
  j["construction"] = w.construction;
  j["method"] = w.method;
  j["k_class"] = w.k_class;
  j["k_orders"] = w.k_orders;
  j["k_variant"] = to_string(w.k_variant);
  j["m"] = w.m_description;
  j["order_k"] = order_json(w.prime, w.log_order_k);
  j["order_m"] = order_json(w.prime, w.log_order_m);
  j["order_q"] = order_json(w.prime, w.log_order_q);
  j["order_center_q"] = order_json(w.prime, w.log_order_center);
  j["order_central_quotient"] = order_json(w.prime, w.log_central_quotient);
  j["order_target"] = order_json(w.prime, w.log_target);
  j["relators_central"] = w.relators_central;
  j["center_matches_formula"] = w.center_matches_formula;
  j["verified"] = w.verified;
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["justification"] = to_string(v.justification);
  j["detail"] = v.detail;
  if (v.witness) j["witness"] = witness_json(*v.witness);
  return j;
}

Json check_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check_id;
  j["group"] = r.group;
  j["method"] = r.method;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["status"] = to_string(r.status);
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["failures"] = r.failures;
  return j;
}

Json record(const std::string& command, const Options& o, Json inputs) {
  Json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["seed"] = o.seed;
  return j;
}

// ---- commands --------------------------------------------------------------

int cmd_describe(const Options& o, std::ostream& out) {
  const GroupSpec spec = load_spec(o.spec_path);
  spec.validate();
  const auto basis = basis_of(spec);
  Json rec = record("describe", o, spec_json(spec));
  Json res;
  Json entries = Json::array();
  int log_product = 0;
  for (int t = 0; t < basis->size(); ++t) {
    entries.push_back({{"name", basis->name(t)}, {"weight", basis->weight(t)}, {"modulus", basis->modulus(t)}});
    log_product += log_of(spec.prime, basis->modulus(t));
  }
  res["generator_orders_log_p"] = basis->orders();
  res["basis"] = entries;
  res["product_order"] = order_json(spec.prime, log_product);
  if (plain_product(spec)) {
    res["order"] = order_json(spec.prime, log_product);
    res["order_method"] = "product of the moduli";
  } else {
    try {
      const BuiltGroup g = build_group(spec, o.budget);
      res["order"] = order_json(spec.prime, log_of(spec.prime, g.group->order()));
      res["order_method"] = "enumeration";
    } catch (const BudgetExceeded&) {
      if (spec.variant != BasisVariant::kStandard) throw;
      res["order"] = order_json(spec.prime, build_pc_group(spec).log_order());
      res["order_method"] = "power-commutator series";
    }
  }
  rec["outputs"] = res;
  emit(out, rec, o.json);
  return kExitOk;
}

int cmd_mul(const Options& o, const std::string& left, const std::string& right, std::ostream& out) {
  const GroupSpec spec = load_spec(o.spec_path);
  spec.validate();
  const WordAST a = parse_word(left);
  const WordAST b = parse_word(right);
  Json in = spec_json(spec);
  in["left"] = left;
  in["right"] = right;
  Json rec = record("mul", o, in);
  Json res;
  if (plain_product(spec)) {
    const Collector c(basis_of(spec));
    std::vector<int> sorted;
    const auto index = sort_by_order(spec.orders, sorted);
    std::map<std::string, NormalForm> names;
    for (std::size_t i = 0; i < index.size(); ++i) names["x" + std::to_string(i + 1)] = c.generator(index[i]);
    const NormalForm x = c.evaluate_word(a, names);
    const NormalForm y = c.evaluate_word(b, names);
    res["left"] = format_normal_form(x);
    res["right"] = format_normal_form(y);
    res["product"] = format_normal_form(c.mul(x, y));
  } else {
    const BuiltGroup g = build_group(spec, o.budget);
    const auto names = with_aliases(spec, g.assignment());
    const ElementId x = evaluate(*g.group, a, names);
    const ElementId y = evaluate(*g.group, b, names);
    res["left"] = g.group->format(x);
    res["right"] = g.group->format(y);
    res["product"] = g.group->format(g.group->mul(x, y));
  }
  rec["outputs"] = res;
  emit(out, rec, o.json);
  return kExitOk;
}

int cmd_center(const Options& o, std::ostream& out) {
  const GroupSpec spec = load_spec(o.spec_path);
  spec.validate();
  Json rec = record("center", o, spec_json(spec));
  Json res;
  try {
    const BuiltGroup g = build_group(spec, o.budget);
    const Subgroup z = center(*g.group);
    res["method"] = "enumeration";
    res["order_group"] = order_json(spec.prime, log_of(spec.prime, g.group->order()));
    res["center"] = subgroup_json(*g.group, z);
  } catch (const BudgetExceeded&) {
    if (spec.variant != BasisVariant::kStandard) throw;
    const PcPresentedGroup g = build_pc_group(spec);
    const PcSubgroup z = g.center_preimage();
    res["method"] = "power-commutator series";
    res["order_group"] = order_json(spec.prime, g.log_order());
    Json gens = Json::array();
    for (const auto& x : z.elements()) {
      const NormalForm r = g.pc->reduce(g.relators, x);
      if (!r.is_identity()) gens.push_back(format_normal_form(r));
    }
    res["center"] = {{"order", order_json(spec.prime, z.rank() - g.relators.rank())}, {"generators", gens}};
  }
  rec["outputs"] = res;
  emit(out, rec, o.json);
  return kExitOk;
}

int cmd_lcs(const Options& o, std::ostream& out) {
  const GroupSpec spec = load_spec(o.spec_path);
  const BuiltGroup g = build_group(spec, o.budget);
  Json rec = record("lcs", o, spec_json(spec));
  Json terms = Json::array();
  const auto series = lower_central_series(*g.group);
  for (std::size_t i = 0; i < series.size(); ++i) {
    Json t = subgroup_json(*g.group, series[i]);
    t["term"] = i + 1;
    terms.push_back(t);
  }
  rec["outputs"] = {{"series", terms}};
  emit(out, rec, o.json);
  return kExitOk;
}

int cmd_quotient(const Options& o, const std::vector<std::string>& by, std::ostream& out) {
  const GroupSpec spec = load_spec(o.spec_path);
  const BuiltGroup g = build_group(spec, o.budget);
  const auto names = with_aliases(spec, g.assignment());
  std::vector<ElementId> gens;
  for (const auto& w : by) gens.push_back(evaluate(*g.group, parse_word(w), names));
  const Subgroup n = normal_closure(*g.group, gens);
  const auto q = quotient(g.group, n);
  const Subgroup zq = center(*q);
  Json in = spec_json(spec);
  in["by"] = by;
  Json rec = record("quotient", o, in);
  Json res;
  res["normal_closure"] = subgroup_json(*g.group, n);
  res["order_quotient"] = q->order();
  res["center_quotient"] = subgroup_json(*q, zq);
  res["order_central_quotient"] = q->order() / zq.order();
  rec["outputs"] = res;
  emit(out, rec, o.json);
  return kExitOk;
}

int verdict_exit(const Options& o, const Verdict& v) {
  return o.strict && v.status == Status::kNotCapable ? kExitNegative : kExitOk;
}

int cmd_capable(const Options& o, bool witness, std::ostream& out) {
  const GroupSpec spec = load_spec(o.spec_path);
  spec.validate();
  Json in = spec_json(spec);
  in["witness"] = witness;
  Json rec = record("capable", o, in);
  Verdict v;
  if (spec.presentation11) {
    const Presentation11& q = *spec.presentation11;
    v = capable_presentation11(spec.prime, q);
    if (witness && q.alpha == q.beta && q.sigma < q.gamma) {
      v.witness = witness_presentation11(spec.prime, q.alpha, q.gamma, q.sigma, o.budget);
    }
  } else if (!spec.relators.empty()) {
    v.detail = "no criterion applies to groups given by extra relators";
    if (witness) {
      v.witness = witness_search(spec, std::nullopt, o.budget);
      if (v.witness->verified) {
        v.status = Status::kCapable;
        v.justification = Justification::kVerifiedWitness;
        v.detail = "verified witness";
      }
    }
  } else {
    if (spec.variant != BasisVariant::kStandard) {
      throw std::invalid_argument("capable: give the group itself (standard variant); the modified basis is for witnesses");
    }
    v = capable_nilprod(spec.prime, spec.nilpotency_class, sorted_orders(spec), {witness, o.budget});
  }
  rec["outputs"] = verdict_json(v);
  emit(out, rec, o.json);
  return verdict_exit(o, v);
}

int cmd_witness(const Options& o, const std::string& construction, const std::vector<int>& k_orders,
                const std::vector<std::string>& betas, std::ostream& out) {
  const GroupSpec spec = load_spec(o.spec_path);
  spec.validate();
  Json in = spec_json(spec);
  in["construction"] = construction;
  WitnessReport w;
  if (construction == "search") {
    if (!k_orders.empty()) in["k_orders"] = k_orders;
    w = witness_search(spec, k_orders.empty() ? std::nullopt : std::optional<std::vector<int>>(k_orders), o.budget);
  } else if (construction == "quotient-family") {
    std::map<std::pair<int, int>, int> table;
    for (const auto& text : betas) {
      int j = 0, i = 0, b = 0;
      char c1 = 0, c2 = 0;
      std::istringstream ss(text);
      if (!(ss >> j >> c1 >> i >> c2 >> b) || c1 != ',' || c2 != '=' || !ss.eof()) {
        throw std::invalid_argument("--beta expects J,I=B, got '" + text + "'");
      }
      table[{j, i}] = b;
    }
    in["beta"] = betas;
    if (!plain_product(spec)) throw std::invalid_argument("quotient-family takes a plain product spec");
    w = witness_quotient_family(spec.prime, spec.orders, table, o.budget);
  } else {
    if (!spec.presentation11) throw std::invalid_argument("presentation11 construction needs a presentation11 spec");
    const auto& q = *spec.presentation11;
    if (q.alpha != q.beta) throw std::invalid_argument("the witness chain needs alpha = beta");
    w = witness_presentation11(spec.prime, q.alpha, q.gamma, q.sigma, o.budget);
  }
  Json rec = record("witness", o, in);
  rec["outputs"] = witness_json(w);
  emit(out, rec, o.json);
  return kExitOk;
}

int cmd_presentation11(const Options& o, std::uint64_t p, const Presentation11& q, bool witness, std::ostream& out) {
  Json in = {{"prime", p}, {"alpha", q.alpha}, {"beta", q.beta}, {"gamma", q.gamma}, {"sigma", q.sigma}};
  in["witness"] = witness;
  Json rec = record("presentation11", o, in);
  GroupSpec spec;
  spec.prime = p;
  spec.nilpotency_class = 2;
  spec.orders = {q.alpha, q.beta};
  spec.presentation11 = q;
  spec.validate();
  Json res;
  try {
    const BuiltGroup g = build_presentation11(p, q, o.budget);
    res["order"] = order_json(p, log_of(p, g.group->order()));
    res["order_center"] = order_json(p, log_of(p, center(*g.group).order()));
    res["order_method"] = "enumeration";
  } catch (const BudgetExceeded&) {
    const PcPresentedGroup g = build_pc_group(spec);
    res["order"] = order_json(p, g.log_order());
    res["order_center"] = order_json(p, g.center_preimage().rank() - g.relators.rank());
    res["order_method"] = "power-commutator series";
  }
  Verdict v = capable_presentation11(p, q);
  if (witness) {
    if (q.alpha == q.beta && q.sigma < q.gamma) {
      v.witness = witness_presentation11(p, q.alpha, q.gamma, q.sigma, o.budget);
    } else {
      v.witness = witness_search(spec, std::nullopt, o.budget);
    }
  }
  res["verdict"] = verdict_json(v);
  rec["outputs"] = res;
  emit(out, rec, o.json);
  return verdict_exit(o, v);
}

int cmd_extraspecial(const Options& o, std::uint64_t p, bool witness, std::ostream& out) {
  Json rec = record("extraspecial", o, {{"prime", p}, {"witness", witness}});
  const BuiltGroup g = build_extraspecial_p5(p, o.budget);
  const Subgroup z = center(*g.group);
  Json res;
  res["order"] = g.group->order();
  res["center"] = subgroup_json(*g.group, z);
  Json gen_orders = Json::array();
  for (const auto& [name, id] : g.assignment()) gen_orders.push_back({{"generator", name}, {"order", g.group->element_order(id)}});
  res["generator_orders"] = gen_orders;
  res["necessity_check"] = necessity_check(p, 2, {1, 1, 1, 1});
  Verdict v = capable_extraspecial(p, 5, ExtraspecialKind::kExponentP);
  if (witness) {
    try {
      v.witness = witness_search(g.spec, std::nullopt, o.budget);
    } catch (const BudgetExceeded& e) {
      res["witness_note"] = std::string("inconclusive: ") + e.what();
    }
  }
  res["verdict"] = verdict_json(v);
  rec["outputs"] = res;
  emit(out, rec, o.json);
  return verdict_exit(o, v);
}

int cmd_verify(const Options& o, const std::string& suite, const std::vector<std::string>& ids, std::uint64_t samples,
               int a, std::ostream& out) {
  const GroupSpec spec = load_spec(o.spec_path);
  spec.validate();
  auto wants = [&](const char* s) { return suite == "all" || suite == s; };
  std::vector<CheckReport> reports;
  std::vector<std::string> skipped;
  const bool plain = plain_product(spec);

  if (plain && (wants("identities") || wants("exponents") || wants("confluence"))) {
    const TestGroup g = TestGroup::make(spec, o.budget);
    if (wants("identities")) {
      std::vector<IdentityId> list;
      for (const auto& s : ids) list.push_back(parse_identity_id(s));
      if (list.empty()) list = all_identities();
      for (auto id : list) reports.push_back(verify_identity(id, g, samples, o.seed));
    }
    if (wants("exponents")) {
      if (g.basis().rank() < 2 || !g.enumerable()) {
        skipped.push_back("exponents: needs two generators and an enumerable group");
      } else {
        const int threshold = a >= 0 ? a : g.basis().orders()[1];
        reports.push_back(verify_exponent_bounds(g, g.generator(1), g.generator(0), threshold));
      }
    }
    if (wants("confluence")) reports.push_back(verify_confluence(g, samples, o.seed));
  } else if (!plain) {
    skipped.push_back("identities, exponents, confluence: need a product without relators");
  }
  if (wants("center")) {
    if (!plain) {
      skipped.push_back("center: needs a product without relators");
    } else {
      try {
        reports.push_back(verify_center_theorem(spec, o.budget));
      } catch (const BudgetExceeded&) {
        throw;
      } catch (const std::invalid_argument& e) {
        skipped.push_back(std::string("center: ") + e.what());
      }
    }
  }
  if (wants("order")) {
    if (plain) {
      reports.push_back(verify_struik_order(spec, o.budget));
    } else {
      skipped.push_back("order: needs a product without relators");
    }
  }
  if (wants("associativity")) {
    try {
      const BuiltGroup g = build_group(spec, o.budget);
      reports.push_back(verify_associativity(*g.group, 100000, o.seed));
    } catch (const BudgetExceeded&) {
      if (!plain) throw;
      reports.push_back(verify_associativity(TestGroup::make(spec, o.budget), 100000, o.seed));
    }
  }
  if (wants("magnus")) {
    reports.push_back(verify_against_magnus(static_cast<int>(spec.orders.size()), spec.nilpotency_class, samples, o.seed));
  }

  int failed = 0;
  Json in = spec_json(spec);
  in["suite"] = suite;
  in["samples"] = samples;
  if (!ids.empty()) in["ids"] = ids;
  for (const auto& r : reports) {
    Json rec = record("verify", o, in);
    rec["outputs"] = check_json(r);
    emit(out, rec, o.json);
    if (r.status == CheckStatus::kFail) ++failed;
  }
  Json summary = record("verify", o, in);
  summary["outputs"] = {{"checks", reports.size()}, {"failed", failed}, {"skipped", skipped}};
  emit(out, summary, o.json);
  return failed ? kExitNegative : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computation in nilpotent products of cyclic p-groups", "nilcap"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--spec", o.spec_path, "GroupSpec JSON file");
  app.add_option("--budget", o.budget, "largest group to enumerate")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for sampled checks")->capture_default_str();
  app.add_flag("--json", o.json, "one JSON record per line");
  app.add_flag("--strict", o.strict, "exit 1 on NOT_CAPABLE");

  auto* describe = app.add_subcommand("describe", "basis, moduli and order");
  auto* mul = app.add_subcommand("mul", "product of two words");
  std::string left, right;
  mul->add_option("left", left)->required();
  mul->add_option("right", right)->required();
  auto* center_cmd = app.add_subcommand("center", "center of the group");
  auto* lcs = app.add_subcommand("lcs", "lower central series");
  auto* quotient_cmd = app.add_subcommand("quotient", "quotient by the normal closure of words");
  std::vector<std::string> by;
  quotient_cmd->add_option("--by", by, "word (repeatable)")->required()->allow_extra_args(false);
  auto* capable = app.add_subcommand("capable", "capability verdict");
  bool witness = false;
  capable->add_flag("--witness", witness, "search for and verify a witness");
  auto* witness_cmd = app.add_subcommand("witness", "build and check a witness");
  std::string construction = "search";
  std::vector<int> k_orders;
  std::vector<std::string> betas;
  witness_cmd->add_option("--construction", construction)
      ->check(CLI::IsMember({"search", "quotient-family", "presentation11"}))
      ->capture_default_str();
  witness_cmd->add_option("--k-orders", k_orders, "orders of the covering product (log p, sorted)")->delimiter(',');
  witness_cmd->add_option("--beta", betas, "J,I=B: [x_J,x_I]^{p^B} in the quotient family")->allow_extra_args(false);
  auto* pres = app.add_subcommand("presentation11", "two-generator class-2 presentation");
  std::uint64_t p = 3;
  Presentation11 q;
  pres->add_option("--p", p)->required();
  pres->add_option("--alpha", q.alpha)->required();
  pres->add_option("--beta", q.beta)->required();
  pres->add_option("--gamma", q.gamma)->required();
  pres->add_option("--sigma", q.sigma)->required();
  pres->add_flag("--witness", witness);
  auto* extra = app.add_subcommand("extraspecial", "extra-special group of order p^5 and exponent p");
  extra->add_option("--p", p)->capture_default_str();
  extra->add_flag("--witness", witness);
  auto* verify = app.add_subcommand("verify", "brute-force checks");
  std::string suite = "all";
  std::vector<std::string> ids;
  std::uint64_t samples = 1000;
  int threshold = -1;
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember(
          {"all", "identities", "exponents", "confluence", "center", "order", "associativity", "magnus"}))
      ->capture_default_str();
  verify->add_option("--id", ids, "identity id (repeatable)")->allow_extra_args(false);
  verify->add_option("--samples", samples)->capture_default_str();
  verify->add_option("--a", threshold, "threshold for the exponent bounds (default: order of x2)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (*describe) code = cmd_describe(o, out);
    else if (*mul) code = cmd_mul(o, left, right, out);
    else if (*center_cmd) code = cmd_center(o, out);
    else if (*lcs) code = cmd_lcs(o, out);
    else if (*quotient_cmd) code = cmd_quotient(o, by, out);
    else if (*capable) code = cmd_capable(o, witness, out);
    else if (*witness_cmd) code = cmd_witness(o, construction, k_orders, betas, out);
    else if (*pres) code = cmd_presentation11(o, p, q, witness, out);
    else if (*extra) code = cmd_extraspecial(o, p, witness, out);
    else if (*verify) code = cmd_verify(o, suite, ids, samples, threshold, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  err << "elapsed_ms: " << ms.count() << "\n";
  return code;
}

}  // namespace nilcap::tools
