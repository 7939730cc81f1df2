// bpg: pure Nash equilibria of the budgeted single-buyer pricing game.
//
// Every subcommand loads a game file (JSON, string-encoded exact numbers),
// runs one engine operation and reports either human-readable text or, with
// --format json, a machine-readable document. Exit codes: 0 success (or
// positive verdict), 1 negative verdict (non-PNE, constraint fails,
// validation fails), 2 input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bpg/demand.hpp"
#include "bpg/equilibrium.hpp"
#include "bpg/game_io.hpp"
#include "bpg/oracle.hpp"
#include "bpg/repro.hpp"
#include "bpg/verifier.hpp"
#include "bpg/welfare.hpp"

using nlohmann::json;
using namespace bpg;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

std::string fmt(const Rational& r) { return format_decimal_or_fraction(r); }

json prices_json(const PriceVector& p) {
  json out = json::array();
  for (const auto& x : p) out.push_back(fmt(x));
  return out;
}

std::string prices_text(const PriceVector& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += fmt(p[i]);
  }
  return out + ")";
}

json outcome_json(const DemandOutcome& o) {
  return json{{"chosen", format_set(o.chosen)},
              {"cost", fmt(o.cost)},
              {"buyer_utility", fmt(o.buyer_utility)},
              {"positively_priced", format_set(o.positively_priced)},
              {"num_optima", o.num_optima},
              {"num_max_size_optima", o.num_max_size_optima}};
}

json verify_json(const VerifyReport& report) {
  json vendors = json::array();
  for (const auto& v : report.vendors) {
    json entry{{"vendor", v.vendor},
               {"current_utility", fmt(v.current_utility)},
               {"sup_deviation_utility", fmt(v.sup_deviation_utility)},
               {"sup_attained", v.sup_attained}};
    if (v.witness) {
      entry["witness"] = {{"price", fmt(v.witness->price)},
                          {"gain", fmt(v.witness->gain)},
                          {"outcome", outcome_json(v.witness->outcome)}};
    }
    vendors.push_back(entry);
  }
  return json{{"is_pne", report.is_pne}, {"vendors", vendors}};
}

json welfare_json(const WelfareReport& report) {
  return json{{"welfare", fmt(report.welfare)},
              {"chosen", format_set(report.chosen)},
              {"excluded_free_items", format_set(report.excluded_free_items)},
              {"market_clearing", report.market_clearing}};
}

struct Options {
  std::string game_path;
  std::string prices_arg;
  std::string set_arg;
  std::string format = "text";
  bool json_out() const { return format == "json"; }
};

Game load(const Options& opt) {
  if (opt.game_path.empty()) throw std::invalid_argument("a game file is required (--game)");
  return load_game(opt.game_path);
}

// Additive games use the item values as weights, everything else the item
// marginals v_N(i); this is the weight vector the constraint and the
// equal-utility construction are stated with.
std::vector<Rational> natural_weights(const Game& game) {
  if (const auto* add = std::get_if<AdditiveValuation>(&game.valuation.kind)) return add->values;
  return item_marginals(game.valuation);
}

void emit(const Options& opt, const json& doc, const std::string& text) {
  if (opt.json_out()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int cmd_validate(const Options& opt) {
  Game game = load(opt);
  ValidationReport report = validate(game.valuation);
  json doc{{"ok", report.ok()},
           {"normalized", report.normalized},
           {"monotone", report.monotone},
           {"negative_entries", report.negative_entries}};
  std::string text = report.ok() ? "valid\n" : "invalid\n";
  if (report.submodular) {
    doc["submodular"] = *report.submodular;
    text += std::string("declared submodular: ") + (*report.submodular ? "holds" : "violated") + "\n";
  }
  if (!report.monotonicity_violations.empty()) {
    json v = json::array();
    for (auto [s, t] : report.monotonicity_violations) {
      v.push_back({format_set(s), format_set(t)});
      text += "monotonicity violated: v" + format_set(s) + " > v" + format_set(t) + "\n";
    }
    doc["monotonicity_violations"] = v;
  }
  for (auto [s, x, y] : report.submodularity_violations) {
    text += "diminishing returns violated at S=" + format_set(s) + ", x=" + std::to_string(x) +
            ", y=" + std::to_string(y) + "\n";
  }
  emit(opt, doc, text);
  return report.ok() ? kOk : kNegative;
}

int cmd_demand(const Options& opt) {
  Game game = load(opt);
  PriceVector p = parse_prices(opt.prices_arg, game.n());
  DemandOutcome outcome = demand(game, p);
  std::string text = "chosen " + format_set(outcome.chosen) + ", cost " + fmt(outcome.cost) +
                     ", buyer utility " + fmt(outcome.buyer_utility) + "\npaid items " +
                     format_set(outcome.positively_priced) + ", optima " +
                     std::to_string(outcome.num_optima) + " (max-size " +
                     std::to_string(outcome.num_max_size_optima) + ")\n";
  emit(opt, outcome_json(outcome), text);
  return kOk;
}

int cmd_constraint(const Options& opt) {
  Game game = load(opt);
  ItemSet s = opt.set_arg.empty() ? full_set(game.n()) : parse_set(opt.set_arg, game.n());
  ConstraintReport report = check_constraint(game, s, natural_weights(game));
  json items = json::array();
  std::string text;
  for (std::size_t k = 0; k < report.items.size(); ++k) {
    items.push_back({{"item", report.items[k]},
                     {"weight", fmt(report.weights[k])},
                     {"threshold", fmt(report.per_item_threshold[k])},
                     {"holds", static_cast<bool>(report.holds_per_item[k])}});
    text += "item " + std::to_string(report.items[k]) + ": weight " + fmt(report.weights[k]) +
            (report.holds_per_item[k] ? " > " : " <= ") + "threshold " +
            fmt(report.per_item_threshold[k]) + "\n";
  }
  text += std::string("constraint on ") + format_set(s) + ": " +
          (report.holds ? "holds" : "fails") + "\n";
  emit(opt, json{{"set", format_set(s)}, {"holds", report.holds}, {"items", items}}, text);
  return report.holds ? kOk : kNegative;
}

int cmd_prices(const Options& opt) {
  Game game = load(opt);
  ItemSet s = opt.set_arg.empty() ? full_set(game.n()) : parse_set(opt.set_arg, game.n());
  std::vector<Rational> weights = natural_weights(game);
  Rational total = 0;
  for (int i : set_items(s)) total += weights[i];
  if (total <= game.budget) {
    throw std::invalid_argument(
        "total weight " + fmt(total) + " does not exceed the budget " + fmt(game.budget) +
        "; equal-utility prices are undefined in this regime, see bnl-prices");
  }
  PriceVector p = equal_utility_prices(game, s, weights);
  emit(opt, json{{"set", format_set(s)}, {"prices", prices_json(p)}}, prices_text(p) + "\n");
  return kOk;
}

int cmd_base_set(const Options& opt) {
  Game game = load(opt);
  BaseSet l = base_set(game);
  json doc{{"items", format_set(l.items)}, {"order", l.order}};
  std::string text = "base set " + format_set(l.items) + "\n";
  if (l.stop_witness) {
    doc["stopped_at"] = {{"item", l.stop_witness->first},
                         {"threshold", fmt(l.stop_witness->second)}};
    text += "greedy stopped at item " + std::to_string(l.stop_witness->first) + " (value <= " +
            fmt(l.stop_witness->second) + ")\n";
  }
  emit(opt, doc, text);
  return kOk;
}

int cmd_bnl_prices(const Options& opt) {
  Game game = load(opt);
  PriceVector p = bnl_prices(game);
  Rational total = 0;
  for (const auto& x : p) total += x;
  emit(opt, json{{"prices", prices_json(p)}, {"total", fmt(total)},
                 {"within_budget", total <= game.budget}},
       prices_text(p) + "\ntotal " + fmt(total) +
           (total <= game.budget ? " (within budget)\n" : " (exceeds the budget)\n"));
  return kOk;
}

int cmd_verify(const Options& opt) {
  Game game = load(opt);
  PriceVector p = parse_prices(opt.prices_arg, game.n());
  VerifyReport report = verify_pne(game, p);
  DemandOutcome outcome = demand(game, p);
  std::string text;
  if (report.is_pne) {
    text = "PNE; chosen " + format_set(outcome.chosen) + "\n";
  } else {
    text = "not a PNE\n";
    for (const auto& v : report.vendors) {
      if (!v.witness) continue;
      text += "vendor " + std::to_string(v.vendor) + " deviates to " + fmt(v.witness->price) +
              " (utility " + fmt(v.current_utility) + " -> " + fmt(v.witness->price) +
              ", gain " + fmt(v.witness->gain) + ")\n";
    }
  }
  emit(opt, verify_json(report), text);
  return report.is_pne ? kOk : kNegative;
}

int cmd_enumerate(const Options& opt, const std::string& step, const std::string& epsilon,
                  std::uint64_t max_evals) {
  Game game = load(opt);
  GridSpec grid;
  grid.step = parse_rational(step);
  grid.epsilon = parse_rational(epsilon);
  grid.max_evals = max_evals;
  auto survivors = grid_enumerate(game, grid);
  json list = json::array();
  std::string text;
  for (const auto& s : survivors) {
    list.push_back({{"prices", prices_json(s.prices)},
                    {"exact_pne", s.exact_pne},
                    {"outcome", outcome_json(s.outcome)}});
    text += prices_text(s.prices) + (s.exact_pne ? "  PNE" : "  grid-stable only") + ", chosen " +
            format_set(s.outcome.chosen) + "\n";
  }
  text += std::to_string(survivors.size()) + " survivor(s)\n";
  emit(opt, json{{"step", fmt(grid.step)}, {"epsilon", fmt(grid.epsilon)}, {"survivors", list}},
       text);
  return kOk;
}

int cmd_welfare(const Options& opt) {
  Game game = load(opt);
  PriceVector p = parse_prices(opt.prices_arg, game.n());
  WelfareReport report = social_welfare(game, p);
  std::string text = "welfare " + fmt(report.welfare) + " on paid items " +
                     format_set(report.chosen & ~report.excluded_free_items) +
                     (report.market_clearing ? " (market clearing)\n" : "\n");
  emit(opt, welfare_json(report), text);
  return kOk;
}

int cmd_ratio(const Options& opt, const std::string& candidates_path) {
  Game game = load(opt);
  std::ifstream in(candidates_path);
  if (!in) throw std::invalid_argument("cannot open candidates file: " + candidates_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("candidates file is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("candidates file must be an array of price vectors");
  std::vector<PriceVector> candidates;
  for (const auto& entry : j) {
    PriceVector p;
    for (const auto& x : entry) p.push_back(parse_rational(x.get<std::string>()));
    check_prices(game, p);
    candidates.push_back(std::move(p));
  }
  RatioReport report = equilibrium_ratio(game, candidates);
  json list = json::array();
  std::string text;
  for (const auto& [p, w] : report.equilibria) {
    list.push_back({{"prices", prices_json(p)}, {"welfare", fmt(w)}});
    text += prices_text(p) + "  welfare " + fmt(w) + "\n";
  }
  text += "best " + fmt(report.best) + ", worst " + fmt(report.worst) + ", ratio " +
          fmt(report.ratio) + "\n";
  emit(opt,
       json{{"equilibria", list}, {"best", fmt(report.best)}, {"worst", fmt(report.worst)},
            {"ratio", fmt(report.ratio)}},
       text);
  return kOk;
}

int cmd_family(const Options& opt, int n, int scale, const std::string& out_path) {
  PoaFamily family = poa_family(n, scale);
  json doc{{"game", game_to_json(family.game)},
           {"worst", prices_json(family.worst)},
           {"best", prices_json(family.best)}};
  if (!out_path.empty()) {
    save_game(family.game, out_path);
  }
  std::string text = "worst " + prices_text(family.worst) + "\nbest  " + prices_text(family.best) +
                     "\nwelfare ratio " +
                     fmt(social_welfare(family.game, family.best).welfare /
                         social_welfare(family.game, family.worst).welfare) +
                     "\n";
  if (opt.json_out()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    if (out_path.empty()) std::cout << doc["game"].dump(2) << "\n";
    std::cout << text;
  }
  return kOk;
}

int cmd_generate(const Options& opt, const GeneratorSpec& spec, const std::string& out_path) {
  Game game = generate(spec);
  if (!out_path.empty()) {
    save_game(game, out_path);
    if (!opt.json_out()) std::cout << "wrote " << out_path << "\n";
  }
  if (opt.json_out() || out_path.empty()) std::cout << game_to_json(game).dump(2) << "\n";
  return kOk;
}

int cmd_repro(const Options& opt, const std::string& only_case) {
  json list = json::array();
  int failed = 0;
  bool matched = false;
  for (const auto& rc : repro::all_cases()) {
    if (!only_case.empty() && rc.id != only_case) continue;
    matched = true;
    repro::CaseResult result = rc.run();
    if (result.status == repro::Status::kFailed) ++failed;
    list.push_back({{"id", rc.id},
                    {"summary", rc.summary},
                    {"status", repro::status_name(result.status)},
                    {"notes", result.notes}});
    if (!opt.json_out()) {
      std::printf("%-28s %-34s %s\n", rc.id.c_str(), repro::status_name(result.status),
                  rc.summary.c_str());
      for (const auto& note : result.notes) std::printf("    %s\n", note.c_str());
    }
  }
  if (!matched) throw std::invalid_argument("unknown repro case: " + only_case);
  if (opt.json_out()) std::cout << json{{"cases", list}, {"failed", failed}}.dump(2) << "\n";
  return failed == 0 ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pure Nash equilibria of the budgeted single-buyer pricing game"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool needs_game = true) {
    if (needs_game) sub->add_option("--game", opt.game_path, "game file (JSON)")->required();
    sub->add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    return sub;
  };
  auto add_prices = [&](CLI::App* sub) {
    sub->add_option("--prices", opt.prices_arg, "comma-separated prices, decimals or fractions")
        ->required();
    return sub;
  };

  add_common(app.add_subcommand("validate", "check normalization/monotonicity/declared class"));
  add_prices(add_common(app.add_subcommand("demand", "the buyer's chosen set at given prices")));
  add_common(app.add_subcommand("constraint", "relative valuation constraint report"))
      ->add_option("--set", opt.set_arg, "item subset, e.g. 0,1,3 (default: all items)");
  add_common(app.add_subcommand("prices", "equal-utility price construction"))
      ->add_option("--set", opt.set_arg, "item subset to price (default: all items)");
  add_common(app.add_subcommand("base-set", "greedy base set of an additive game"));
  add_common(app.add_subcommand("bnl-prices", "unbudgeted marginal benchmark prices"));
  add_prices(add_common(app.add_subcommand("verify", "exact PNE check with deviation witnesses")));

  auto* enumerate = add_common(app.add_subcommand("enumerate", "grid equilibrium enumeration"));
  std::string grid_step = "1/8", grid_epsilon = "0";
  std::uint64_t max_evals = 10'000'000;
  enumerate->add_option("--grid-step", grid_step, "grid spacing (default 1/8)");
  enumerate->add_option("--epsilon", grid_epsilon, "on-grid improvement tolerance (default 0)");
  enumerate->add_option("--max-evals", max_evals, "evaluation budget");

  add_prices(add_common(app.add_subcommand("welfare", "social welfare of the sold, paid-for set")));

  auto* ratio = add_common(app.add_subcommand("ratio", "best/worst equilibrium welfare ratio"));
  std::string candidates_path;
  ratio->add_option("--candidates", candidates_path, "JSON array of candidate price vectors")
      ->required();

  auto* family = add_common(app.add_subcommand("family", "welfare-gap game family"), false);
  int family_n = 9, family_scale = 2;
  std::string out_path;
  family->add_option("--n", family_n, "number of items (>= 9)")->required();
  family->add_option("--scale", family_scale, "top item value (default 2)");
  family->add_option("--out", out_path, "write the game file here");

  auto* gen = add_common(app.add_subcommand("generate", "seeded random game"), false);
  GeneratorSpec spec;
  std::string gen_class = "additive", gen_rule = "below-total";
  gen->add_option("--n", spec.n, "number of items")->required();
  gen->add_option("--class", gen_class, "additive, coverage or xos")
      ->check(CLI::IsMember({"additive", "coverage", "xos"}));
  gen->add_option("--budget-rule", gen_rule, "below-total, constraint-holds or constraint-fails")
      ->check(CLI::IsMember({"below-total", "constraint-holds", "constraint-fails"}));
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("--out", out_path, "write the game file here");

  auto* repro_cmd = add_common(app.add_subcommand("repro", "run the bundled worked examples"), false);
  std::string only_case;
  repro_cmd->add_option("--case", only_case, "run a single case by id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (app.got_subcommand("validate")) return cmd_validate(opt);
    if (app.got_subcommand("demand")) return cmd_demand(opt);
    if (app.got_subcommand("constraint")) return cmd_constraint(opt);
    if (app.got_subcommand("prices")) return cmd_prices(opt);
    if (app.got_subcommand("base-set")) return cmd_base_set(opt);
    if (app.got_subcommand("bnl-prices")) return cmd_bnl_prices(opt);
    if (app.got_subcommand("verify")) return cmd_verify(opt);
    if (app.got_subcommand("enumerate")) return cmd_enumerate(opt, grid_step, grid_epsilon, max_evals);
    if (app.got_subcommand("welfare")) return cmd_welfare(opt);
    if (app.got_subcommand("ratio")) return cmd_ratio(opt, candidates_path);
    if (app.got_subcommand("family")) return cmd_family(opt, family_n, family_scale, out_path);
    if (app.got_subcommand("generate")) {
      if (gen_class == "coverage") spec.valuation_class = ValuationClass::kSubmodularCoverage;
      if (gen_class == "xos") spec.valuation_class = ValuationClass::kXos;
      if (gen_rule == "constraint-holds") spec.budget_rule = BudgetRule::kConstraintHolds;
      if (gen_rule == "constraint-fails") spec.budget_rule = BudgetRule::kConstraintFails;
      return cmd_generate(opt, spec, out_path);
    }
    if (app.got_subcommand("repro")) return cmd_repro(opt, only_case);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
