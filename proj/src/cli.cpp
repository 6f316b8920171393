// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vldsrc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vldsrc/asymptotics.hpp"
#include "vldsrc/coding.hpp"
#include "vldsrc/cutoff.hpp"
#include "vldsrc/errors.hpp"
#include "vldsrc/fixtures.hpp"
#include "vldsrc/flawed_trace.hpp"
#include "vldsrc/guessing.hpp"
#include "vldsrc/product_lift.hpp"

namespace vldsrc {

using json = nlohmann::json;

Rational parse_eps(std::string_view text) {
  try {
    return parse_probability(text);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("eps: ") + e.what());
  }
}

std::vector<Rational> parse_eps_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_eps(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

namespace {

unsigned parse_positive(std::string_view text, std::string_view what) {
  unsigned long v = 0;
  std::size_t used = 0;
  try {
    v = std::stoul(std::string(text), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || v == 0 || v > 1000000) {
    throw ValidationError(std::string(what) + ": expected a positive integer, got '" +
                          std::string(text) + "'");
  }
  return static_cast<unsigned>(v);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json quantity_json(const Quantity& q) {
  return q.exact ? json(format_rational(*q.exact)) : number(q.value);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << content;
}

std::string criterion_list_text(const std::vector<Criterion>& cs) {
  std::string s;
  for (Criterion c : cs) s += (s.empty() ? "" : ",") + std::string(criterion_name(c));
  return s;
}

}  // namespace

std::vector<unsigned> parse_n_list(std::string_view text) {
  std::vector<unsigned> out;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    unsigned a = parse_positive(text.substr(0, colon), "n");
    unsigned b = parse_positive(text.substr(colon + 1), "n");
    if (a > b) throw ValidationError("n: empty range '" + std::string(text) + "'");
    for (unsigned long n = a; n <= b; n *= 2) out.push_back(static_cast<unsigned>(n));
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_positive(text.substr(start, comma - start), "n"));
    start = comma + 1;
  }
  return out;
}

JointSource resolve_source(const std::string& spec) {
  if (spec.empty()) throw ValidationError("source: missing --source");
  if (std::filesystem::exists(spec)) return load_source_file(spec);
  if (has_fixture(spec)) return fixture(spec).source;
  throw ValidationError("source: '" + spec + "' is neither a file nor a fixture name");
}

namespace {

struct Common {
  std::string source;
  std::string eps = "0";
  std::string criterion = "avg";
  unsigned n = 1;
  std::uint64_t max_types = 0;
  unsigned workers = 1;
  std::string out_path;

  LiftOptions lift() const {
    LiftOptions o;
    if (max_types != 0) o.max_types = max_types;
    o.workers = workers;
    return o;
  }
};

void add_source(CLI::App* cmd, Common& c) {
  cmd->add_option("--source", c.source, "Source document path or fixture name")->required();
}

void add_lift(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "Blocklength")->check(CLI::PositiveNumber);
  cmd->add_option("--max-types", c.max_types,
                  "Type-class budget (default 1e8 or VLDSRC_MAX_TYPES)");
  cmd->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
}

json measures_json(const JointSource& src) {
  const MeasureSet m = measures(src);
  json j;
  j["mode"] = std::string(mode_name(src.mode()));
  j["H"] = m.H;
  j["V_c"] = m.V_c;
  j["V_u"] = m.V_u;
  j["T_u"] = m.T_u;
  json per = json::array();
  for (std::size_t y = 0; y < m.per_y.size(); ++y) {
    per.push_back({{"y", src.y_alphabet()[y]},
                   {"P_y", number(to_double(src.exact().marginal_y[y]))},
                   {"H", m.per_y[y].entropy},
                   {"V", m.per_y[y].variance},
                   {"T", m.per_y[y].third_moment}});
  }
  j["per_y"] = per;
  return j;
}

json rule_json(const KeepRule& r) {
  return {{"kappa", r.kappa.get_str()},
          {"gamma", format_rational(r.gamma)},
          {"boundary_mass", format_rational(r.boundary_mass)},
          {"boundary_keep", format_rational(r.boundary_keep)}};
}

json plan_json(const JointSource& src, const CodePlan& plan) {
  json j;
  j["criterion"] = std::string(criterion_name(plan.criterion));
  j["n"] = plan.n;
  j["eps"] = format_rational(plan.eps);
  j["expected_length"] = format_rational(plan.expected_length);
  j["drop_probability"] = format_rational(plan.drop_probability);
  j["error_probability"] = format_rational(plan.error_probability);
  json rules = json::array();
  for (std::size_t t = 0; t < plan.rules.size(); ++t) {
    json r = rule_json(plan.rules[t]);
    if (plan.criterion == Criterion::kMax) r["y_type"] = plan.y_types[t];
    rules.push_back(r);
  }
  j["rules"] = rules;
  if (plan.n == 1) {
    // Full single-letter code table.
    json table = json::array();
    for (const auto& row : sorted_rows<Rational>(src)) {
      const KeepRule& rule = plan.rule_for(plan.type_index({row.y}));
      json entries = json::array();
      for (std::size_t k = 0; k < row.perm.size(); ++k) {
        const BigInt rank(static_cast<unsigned long>(k + 1));
        Rational keep = rank <= rule.kappa ? Rational(1)
                        : rank == rule.kappa + 1 ? rule.boundary_keep
                                                 : Rational(0);
        entries.push_back({{"rank", k + 1},
                           {"x", src.x_alphabet()[row.perm[k]]},
                           {"codeword", codeword(rank)},
                           {"keep_probability", format_rational(keep)}});
      }
      table.push_back({{"y", src.y_alphabet()[row.y]}, {"entries", entries}});
    }
    j["table"] = table;
  }
  return j;
}

json stats_json(const SimulationStats& s, const char* mean_name, const char* mean_err_name) {
  return {{"trials", s.trials},
          {mean_name, number(s.mean)},
          {mean_err_name, number(s.mean_stderr)},
          {"error_rate", number(s.error_rate)},
          {"error_stderr", number(s.error_stderr)}};
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal variable-length coding with side information and allowed error"};
  app.require_subcommand(1);
  Common c;
  std::function<void()> action;

  // measures
  {
    auto* cmd = app.add_subcommand("measures", "Entropy and varentropy measures");
    add_source(cmd, c);
    cmd->add_option("--out", c.out_path, "Write per-y measures as CSV");
    cmd->callback([&] {
      action = [&] {
        JointSource src = resolve_source(c.source);
        json j = measures_json(src);
        if (!c.out_path.empty()) {
          std::ostringstream csv;
          csv << "y,P_y,H,V,T\n";
          for (const auto& row : j["per_y"]) {
            csv << row["y"].get<std::string>() << ',' << format_double(row["P_y"].get<double>())
                << ',' << format_double(row["H"].get<double>()) << ','
                << format_double(row["V"].get<double>()) << ','
                << format_double(row["T"].get<double>()) << '\n';
          }
          write_file(c.out_path, csv.str());
        }
        out << j.dump(2) << '\n';
      };
    });
  }

  // cutoff-entropy
  std::string spectrum_out;
  {
    auto* cmd = app.add_subcommand("cutoff-entropy", "Conditional and unconditional cutoff entropies");
    add_source(cmd, c);
    add_lift(cmd, c);
    cmd->add_option("--eps", c.eps, "Error probability (p/q or decimal)")->required();
    cmd->add_option("--spectrum-out", spectrum_out,
                    "Write the n-letter information-density spectrum as CSV");
    cmd->callback([&] {
      action = [&] {
        JointSource src = resolve_source(c.source);
        const Rational eps = parse_eps(c.eps);
        auto e = cutoff_entropies(src, c.n, {eps}, c.lift()).front();
        if (!spectrum_out.empty()) {
          write_file(spectrum_out, src.is_exact()
                                       ? iota_spectrum_n<Rational>(src, c.n, c.lift()).to_csv()
                                       : iota_spectrum_n<double>(src, c.n, c.lift()).to_csv());
        }
        json j{{"n", c.n},
               {"eps", format_rational(eps)},
               {"conditional", number(e.conditional)},
               {"unconditional", number(e.unconditional)}};
        out << j.dump(2) << '\n';
      };
    });
  }

  // lstar
  {
    auto* cmd = app.add_subcommand("lstar", "Optimal expected codeword length");
    add_source(cmd, c);
    add_lift(cmd, c);
    cmd->add_option("--eps", c.eps, "Error probability")->required();
    cmd->add_option("--criterion", c.criterion, "max or avg")->required();
    cmd->callback([&] {
      action = [&] {
        JointSource src = resolve_source(c.source);
        const Rational eps = parse_eps(c.eps);
        const Criterion crit = parse_criterion(c.criterion);
        const BigInt types = joint_type_count(src, c.n);
        Quantity q = lstar(src, c.n, eps, crit, c.lift());
        json j{{"n", c.n},
               {"eps", format_rational(eps)},
               {"criterion", c.criterion},
               {"type_classes", types.get_str()},
               {"exact", quantity_json(q)},
               {"value", number(q.value)}};
        out << j.dump(2) << '\n';
      };
    });
  }

  // bounds
  {
    auto* cmd = app.add_subcommand("bounds", "One-shot cutoff-entropy bounds on the optimal length");
    add_source(cmd, c);
    add_lift(cmd, c);
    cmd->add_option("--eps", c.eps, "Error probability")->required();
    cmd->add_option("--criterion", c.criterion, "max or avg")->required();
    cmd->add_option("--out", c.out_path, "Write lower,exact,upper as CSV");
    cmd->callback([&] {
      action = [&] {
        JointSource src = resolve_source(c.source);
        const Rational eps = parse_eps(c.eps);
        const Criterion crit = parse_criterion(c.criterion);
        OneShotBounds b = one_shot_bounds(src, c.n, eps, crit, c.lift());
        const bool holds = b.lower <= b.exact.value + 1e-12 && b.exact.value <= b.upper + 1e-12;
        json j{{"n", c.n},
               {"eps", format_rational(eps)},
               {"criterion", c.criterion},
               {"lower", number(b.lower)},
               {"exact", quantity_json(b.exact)},
               {"exact_value", number(b.exact.value)},
               {"upper", number(b.upper)},
               {"holds", holds}};
        if (!c.out_path.empty()) {
          write_file(c.out_path, "n,eps,criterion,lower,exact,upper\n" + std::to_string(c.n) +
                                     "," + format_double(to_double(eps)) + "," + c.criterion +
                                     "," + format_double(b.lower) + "," +
                                     format_double(b.exact.value) + "," + format_double(b.upper) +
                                     "\n");
        }
        out << j.dump(2) << '\n';
      };
    });
  }

  // build-code
  {
    auto* cmd = app.add_subcommand("build-code", "Construct the optimal stochastic code");
    add_source(cmd, c);
    add_lift(cmd, c);
    cmd->add_option("--eps", c.eps, "Error probability, below 1")->required();
    cmd->add_option("--criterion", c.criterion, "max or avg")->required();
    cmd->callback([&] {
      action = [&] {
        JointSource src = resolve_source(c.source);
        CodePlan plan = build_code(src, c.n, parse_eps(c.eps), parse_criterion(c.criterion),
                                   c.lift());
        out << plan_json(src, plan).dump(2) << '\n';
      };
    });
  }

  // simulate
  std::uint64_t trials = 0, seed = 0;
  {
    auto* cmd = app.add_subcommand("simulate", "Monte Carlo of the optimal code");
    add_source(cmd, c);
    add_lift(cmd, c);
    cmd->add_option("--eps", c.eps, "Error probability, below 1")->required();
    cmd->add_option("--criterion", c.criterion, "max or avg")->required();
    cmd->add_option("--trials", trials, "Number of trials")->required();
    cmd->add_option("--seed", seed, "64-bit seed")->required();
    cmd->callback([&] {
      action = [&] {
        JointSource src = resolve_source(c.source);
        CodePlan plan = build_code(src, c.n, parse_eps(c.eps), parse_criterion(c.criterion),
                                   c.lift());
        SimulationStats s = simulate_code(src, plan, trials, seed, c.workers);
        json j = stats_json(s, "mean_length", "length_stderr");
        j["seed"] = seed;
        j["analytic"] = {{"expected_length", format_rational(plan.expected_length)},
                         {"error_probability", format_rational(plan.error_probability)}};
        out << j.dump(2) << '\n';
      };
    });
  }

  // guess
  std::string cost_text;
  std::uint64_t guess_trials = 0;
  {
    auto* cmd = app.add_subcommand("guess", "Guessing with a giving-up policy");
    add_source(cmd, c);
    add_lift(cmd, c);
    cmd->add_option("--eps", c.eps, "Error probability, below 1")->required();
    cmd->add_option("--criterion", c.criterion, "max or avg")->required();
    cmd->add_option("--cost", cost_text, "Error cost c_e (positive, not an integer)")->required();
    cmd->add_option("--simulate", guess_trials, "Also simulate this many trials");
    cmd->add_option("--seed", seed, "64-bit seed for --simulate");
    cmd->callback([&] {
      action = [&] {
        JointSource src = resolve_source(c.source);
        const Rational eps = parse_eps(c.eps);
        const Criterion crit = parse_criterion(c.criterion);
        Rational cost_q;
        try {
          cost_q = parse_rational(cost_text);
        } catch (const ValidationError& e) {
          throw ValidationError(std::string("cost: ") + e.what());
        }
        const double cost = to_double(cost_q);
        if (cost_q.get_den() == 1) throw ValidationError("cost: error cost must not be an integer");
        GivingUpStrategy s = build_strategy(src, c.n, eps, crit, cost, c.lift());
        StrategyValue v = evaluate_strategy(s, src, c.lift());
        BracketResult b = bracket_check(src, c.n, eps, crit, cost, c.lift());
        json j{{"n", c.n},
               {"eps", format_rational(eps)},
               {"criterion", c.criterion},
               {"cost", number(cost)},
               {"expected_log_guess", number(v.expected_log_guess)},
               {"error_probability", format_rational(v.error_probability)},
               {"lstar", number(b.lstar)},
               {"bound", number(b.bound)},
               {"holds", b.holds}};
        if (c.n == 1) {
          json policy = json::array();
          for (const auto& row : sorted_rows<Rational>(src)) {
            json give_up = json::array();
            json order = json::array();
            const std::size_t t = s.plan.type_index({row.y});
            for (std::size_t k = 0; k < row.perm.size(); ++k) {
              order.push_back(src.x_alphabet()[row.perm[k]]);
              give_up.push_back(
                  format_rational(s.give_up(BigInt(static_cast<unsigned long>(k + 1)), t)));
            }
            policy.push_back({{"y", src.y_alphabet()[row.y]}, {"order", order},
                              {"give_up", give_up}});
          }
          j["policy"] = policy;
        }
        if (guess_trials > 0) {
          SimulationStats st = simulate_guessing(s, src, guess_trials, seed, c.workers);
          j["simulation"] = stats_json(st, "mean_log_guess", "log_guess_stderr");
          j["simulation"]["seed"] = seed;
        }
        out << j.dump(2) << '\n';
      };
    });
  }

  // second-order
  {
    auto* cmd = app.add_subcommand("second-order", "Dispersion approximation of the optimal length");
    add_source(cmd, c);
    cmd->add_option("--n", c.n, "Blocklength")->check(CLI::PositiveNumber);
    cmd->add_option("--eps", c.eps, "Error probability")->required();
    cmd->add_option("--criterion", c.criterion, "max or avg")->required();
    cmd->callback([&] {
      action = [&] {
        JointSource src = resolve_source(c.source);
        SecondOrderEstimate e =
            second_order(src, c.n, parse_eps(c.eps), parse_criterion(c.criterion));
        json j{{"n", e.n},
               {"eps", number(e.eps)},
               {"criterion", c.criterion},
               {"variance", number(e.variance)},
               {"first_order", number(e.first_order)},
               {"dispersion_term", number(e.dispersion_term)},
               {"approx", number(e.approx)},
               {"warnings", e.warnings}};
        out << j.dump(2) << '\n';
      };
    });
  }

  // scan
  std::string n_spec = "4:64";
  std::string eps_spec;
  std::string criteria_spec = "max,avg";
  std::optional<double> threshold;
  bool float_lstar = false;
  {
    auto* cmd = app.add_subcommand("scan", "Residuals of the dispersion approximation over n");
    add_source(cmd, c);
    cmd->add_option("--n", n_spec, "Blocklengths: 8, 4,8,16, or a:b (doubling)");
    cmd->add_option("--eps", eps_spec, "Comma-separated error probabilities")->required();
    cmd->add_option("--criterion", criteria_spec, "Comma-separated criteria");
    cmd->add_option("--threshold", threshold, "Flag rows with |residual|/log2 n above this");
    cmd->add_flag("--float-lstar", float_lstar, "Evaluate L* in float arithmetic");
    cmd->add_option("--out", c.out_path, "Write the residual table as CSV");
    cmd->add_option("--max-types", c.max_types, "Type-class budget");
    cmd->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
    cmd->callback([&] {
      action = [&] {
        JointSource src = resolve_source(c.source);
        std::vector<Criterion> crits;
        std::stringstream ss(criteria_spec);
        for (std::string part; std::getline(ss, part, ',');) crits.push_back(parse_criterion(part));
        ResidualReport r = residual_scan(src, parse_eps_list(eps_spec), crits,
                                         parse_n_list(n_spec), threshold, c.lift(), float_lstar);
        json rows = json::array();
        std::ostringstream csv;
        csv << "n,eps,criterion,exact,first_order,dispersion_term,approx,residual,"
               "residual_per_log_n,residual_per_sqrt_n\n";
        for (const auto& row : r.rows) {
          json jr{{"n", row.n},
                  {"eps", number(row.eps)},
                  {"criterion", std::string(criterion_name(row.criterion))},
                  {"computed", row.computed}};
          if (!row.computed) {
            jr["note"] = row.note;
            csv << row.n << ',' << format_double(row.eps) << ',' << criterion_name(row.criterion)
                << ",,,,,,,\n";
          } else {
            jr["exact"] = quantity_json(row.exact);
            jr["exact_value"] = number(row.exact.value);
            jr["first_order"] = number(row.first_order);
            jr["dispersion_term"] = number(row.dispersion_term);
            jr["approx"] = number(row.approx);
            jr["residual"] = number(row.residual);
            jr["residual_per_log_n"] = number(row.residual_per_log_n);
            jr["residual_per_sqrt_n"] = number(row.residual_per_sqrt_n);
            jr["cutoff_entropy"] = number(row.cutoff_entropy);
            jr["cutoff_approx"] = number(row.cutoff_approx);
            jr["cutoff_residual"] = number(row.cutoff_residual);
            jr["flagged"] = row.flagged;
            csv << row.n << ',' << format_double(row.eps) << ',' << criterion_name(row.criterion)
                << ',' << format_double(row.exact.value) << ',' << format_double(row.first_order)
                << ',' << format_double(row.dispersion_term) << ',' << format_double(row.approx)
                << ',' << format_double(row.residual) << ','
                << format_double(row.residual_per_log_n) << ','
                << format_double(row.residual_per_sqrt_n) << '\n';
          }
          rows.push_back(jr);
        }
        if (!c.out_path.empty()) write_file(c.out_path, csv.str());
        json j{{"criteria", criterion_list_text(crits)}, {"rows", rows}, {"flagged", r.any_flagged}};
        j["threshold"] = threshold ? number(*threshold) : json(nullptr);
        out << j.dump(2) << '\n';
      };
    });
  }

  // fixtures
  std::string fixture_name;
  unsigned y_max = 50;
  double tail_tol = 1e-9;
  {
    auto* cmd = app.add_subcommand("fixtures", "List fixtures or print one as a source document");
    cmd->add_option("--name", fixture_name, "Fixture to print");
    auto* ym = cmd->add_option("--y-max", y_max, "geometric-zeta: largest y");
    auto* tt = cmd->add_option("--tail-tol", tail_tol, "geometric-zeta: per-row tail cut");
    cmd->callback([&, ym, tt] {
      action = [&, ym, tt] {
        if (fixture_name.empty()) {
          json list = json::array();
          for (const auto& name : fixture_names()) {
            list.push_back({{"name", name}, {"note", fixture(name).note}});
          }
          out << json{{"fixtures", list}}.dump(2) << '\n';
          return;
        }
        if (fixture_name == "geometric-zeta") {
          out << dump_source(truncated_geometric_zeta(y_max, tail_tol)) << '\n';
          return;
        }
        if (ym->count() > 0 || tt->count() > 0) {
          throw ValidationError("--y-max and --tail-tol only apply to geometric-zeta");
        }
        out << dump_source(fixture(fixture_name).source) << '\n';
      };
    });
  }

  // flawed-trace
  {
    auto* cmd = app.add_subcommand("flawed-trace",
                                   "Replay the flawed optimality argument on the (1/2,1/3,1/6) source");
    c.eps = "1/6";
    cmd->add_option("--eps", c.eps, "Error probability (default 1/6)");
    cmd->callback([&] {
      action = [&] {
        const Rational eps = parse_eps(c.eps);
        const Fixture f = fixture("triple");
        const auto& m = f.source.exact().joint;
        auto trace = flawed_procedure_trace({m[0], m[1], m[2]}, eps, counterexample_code());
        json steps = json::array();
        for (const auto& s : trace) {
          steps.push_back({{"step", s.label},
                           {"mean_length", format_rational(s.mean_length)},
                           {"error", format_rational(s.error)},
                           {"violates", s.violates}});
        }
        Quantity opt = lstar(f.source, 1, eps, Criterion::kAvg);
        json j{{"eps", format_rational(eps)},
               {"steps", steps},
               {"final_violates", trace.back().violates},
               {"optimum", {{"mean_length", quantity_json(opt)}, {"error", format_rational(eps)}}}};
        out << j.dump(2) << '\n';
      };
    });
  }

  std::vector<std::string> argv_store{"vldsrc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  if (action) action();
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace vldsrc
