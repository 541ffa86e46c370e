#include "opacity/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "opacity/automata.hpp"
#include "opacity/disclosure.hpp"
#include "opacity/dpa_io.hpp"
#include "opacity/errors.hpp"
#include "opacity/measure.hpp"
#include "opacity/modal.hpp"
#include "opacity/model_io.hpp"
#include "opacity/relations.hpp"
#include "opacity/witness_io.hpp"

namespace opacity::cli {

namespace {

struct Options {
  std::vector<std::string> format{"exact"};
  std::size_t budget = DeterminizeOptions{}.state_budget;
  int digits() const { return format.size() == 2 ? std::stoi(format[1]) : -1; }
};

/// Key-value report: a human-readable summary first, then `key=value` lines.
class Report {
 public:
  Report(std::ostream& out, const Options& opt) : out_(out), opt_(opt) {}

  void say(const std::string& line) { out_ << line << '\n'; }
  void field(const std::string& key, const std::string& value) { fields_.push_back({key, value}); }
  void field(const std::string& key, bool value) { field(key, std::string(value ? "yes" : "no")); }
  void field(const std::string& key, std::size_t value) { field(key, std::to_string(value)); }
  void value(const std::string& key, const Rational& v) {
    field(key, to_string(v));
    if (opt_.digits() >= 0) field(key + "_decimal", to_decimal(v, opt_.digits()));
  }
  std::string render(const Rational& v) const {
    return opt_.digits() >= 0 ? to_string(v) + " (" + to_decimal(v, opt_.digits()) + ")"
                              : to_string(v);
  }
  void flush() {
    out_ << "--\n";
    for (const auto& [k, v] : fields_) out_ << k << '=' << v << '\n';
  }

 private:
  std::ostream& out_;
  const Options& opt_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

Pts load_pts(const std::string& path) {
  auto m = load_model(path);
  if (auto* p = std::get_if<Pts>(&m)) return std::move(*p);
  throw InvalidModel(path + ": expected a pts model");
}

Idtmc load_idtmc(const std::string& path) {
  auto m = load_model(path);
  if (auto* s = std::get_if<Idtmc>(&m)) return std::move(*s);
  throw InvalidModel(path + ": expected an idtmc model");
}

template <typename Model>
void require_valid(const Model& m, const std::string& path) {
  const auto report = validate_model(m);
  if (!report.ok()) throw InvalidModel(path + ": " + report.violations.front().message);
}

std::vector<std::string> split_letters(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Observation make_observation(const Alphabet& sigma, const std::string& list) {
  const auto letters = split_letters(list);
  for (const auto& l : letters) sigma.at(l);
  return Observation(sigma, letters);
}

std::string word_text(const Alphabet& sigma, const std::vector<Letter>& word) {
  std::string s;
  for (auto l : word) s += (s.empty() ? "" : " ") + sigma.name(l);
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(path, 0, "cannot open file");
  return f;
}

void report_refutation(Report& r, const Refutation& ref,
                       const std::function<std::string(const StatePair&)>& name) {
  r.say("reason: " + ref.reason);
  r.field("reason", ref.reason);
  if (!ref.removed.empty()) r.field("failing_pair", name(ref.removed.front()));
  r.field("removed_pairs", ref.removed.size());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opacity analysis of interval Markov chains"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("OPACITY_STATE_BUDGET")) {
    try {
      opt.budget = std::stoull(env);
    } catch (const std::exception&) {
      err << "OPACITY_STATE_BUDGET: not a number: " << env << '\n';
      return InputError;
    }
  }
  app.add_option("--format", opt.format, "exact, or decimal N")
      ->expected(1, 2)
      ->check([](const std::string& s) {
        if (s == "exact" || s == "decimal") return std::string();
        return std::all_of(s.begin(), s.end(), ::isdigit) && !s.empty()
                   ? std::string()
                   : std::string("expected 'exact' or 'decimal N'");
      });
  app.add_option("--budget", opt.budget, "state budget for determinization");

  std::function<int(Report&)> action;
  auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  std::string model, spec, phi, dpa_path, observe, s1_path, s2_path, witness_out, witness_in,
      choice_path, policy_out, dpa_out, weighting = "coupling";
  std::size_t samples = 0, horizon = 10'000, depth = 4;
  std::uint64_t seed = 1;
  bool symmetric = false;

  auto* validate = sub("validate", "check a model file");
  validate->add_option("--model", model)->required();
  validate->callback([&] {
    action = [&](Report& r) {
      const auto m = load_model(model);
      const auto rep = std::visit([](const auto& x) { return validate_model(x); }, m);
      r.field("kind", std::string(std::holds_alternative<Pts>(m) ? "pts" : "idtmc"));
      r.field("states", std::visit([](const auto& x) { return x.size(); }, m));
      for (const auto& v : rep.violations) r.say(v.kind + ": " + v.message);
      r.say(rep.ok() ? "valid" : "invalid");
      r.field("valid", rep.ok());
      if (!rep.ok()) r.field("reason", rep.violations.front().message);
      return rep.ok() ? Positive : Negative;
    };
  });

  auto* modal = sub("modal", "classify the edges of an IDTMC");
  modal->add_option("--model", model)->required();
  modal->callback([&] {
    action = [&](Report& r) {
      const auto s = load_idtmc(model);
      require_valid(s, model);
      const auto rep = modal_edges(s);
      r.say("edge\tinterval\tmin\tattainable\tmodal");
      std::string list;
      for (const auto& e : rep.edges) {
        const auto edge = s.state_names[e.from] + "->" + s.state_names[e.to];
        r.say(edge + "\t" + to_string(s.interval(e.from, e.to)) + "\t" + r.render(e.min.value) +
              "\t" + (e.min.attainable ? "yes" : "no") + "\t" + (e.modal ? "yes" : "no"));
        if (e.modal) list += (list.empty() ? "" : ", ") + edge;
      }
      r.field("edges", rep.edges.size());
      r.field("modal", !list.empty());
      if (!list.empty()) r.field("reason", "modal edges: " + list);
      return list.empty() ? Positive : Negative;
    };
  });

  auto* disclosure = sub("disclosure", "worst-case disclosure of an IDTMC");
  disclosure->add_option("--model", model)->required();
  disclosure->add_option("--phi", phi, "secret DPA")->required();
  disclosure->add_option("--observe", observe, "observable letters, comma separated")->required();
  disclosure->add_option("--policy-out", policy_out, "write the witness policy");
  disclosure->add_option("--dpa-out", dpa_out, "write the disclosure DPA");
  disclosure->callback([&] {
    action = [&](Report& r) {
      const auto s = load_idtmc(model);
      const auto secret = load_dpa(phi);
      const auto obs = make_observation(s.alphabet, observe);
      DisclosureResult res;
      try {
        res = max_disclosure(s, obs, secret, {opt.budget});
      } catch (const ModalEdgesPresent& e) {
        r.say(e.what());
        r.field("reason", std::string(e.what()));
        return Negative;
      }
      r.say(r.render(res.value));
      r.value("value", res.value);
      r.field("closure_applied", res.closure_applied);
      r.field("supremum_attained", res.supremum_attained);
      r.field("secret_violation_nba", res.automata.secret_violation_nba);
      r.field("observed_nba", res.automata.observed_nba);
      r.field("masking_dpa", res.automata.masking_dpa);
      r.field("product_nba", res.automata.product_nba);
      r.field("disclosure_dpa", res.automata.disclosure_dpa);
      r.field("mdp_states", res.mdp_states);
      r.field("mdp_actions", res.mdp_actions);
      if (!policy_out.empty()) {
        auto f = open_out(policy_out);
        for (std::size_t i = 0; i < res.product_states.size(); ++i) {
          const auto [q, d] = res.product_states[i];
          for (const auto& [t, p] : res.policy[i]) {
            f << "policy " << s.state_names[q] << ' ' << res.disclosure_dpa.state_name(d) << ' '
              << s.state_names[t] << ' ' << to_string(p) << '\n';
          }
        }
      }
      if (!dpa_out.empty()) {
        auto f = open_out(dpa_out);
        write_dpa(f, res.disclosure_dpa);
      }
      return Positive;
    };
  });

  auto* disclose_pts = sub("disclose-pts", "disclosure of a PTS");
  disclose_pts->add_option("--model", model)->required();
  disclose_pts->add_option("--phi", phi)->required();
  disclose_pts->add_option("--observe", observe)->required();
  disclose_pts->add_flag("--symmetric", symmetric, "add the disclosure of the complement");
  disclose_pts->callback([&] {
    action = [&](Report& r) {
      const auto p = load_pts(model);
      require_valid(p, model);
      const auto secret = load_dpa(phi);
      const auto obs = make_observation(p.alphabet, observe);
      DisclosureStats stats;
      Rational v = disclosure_pts(p, obs, secret, {opt.budget}, &stats);
      if (symmetric) v += disclosure_pts(p, obs, dpa_complement(secret), {opt.budget});
      r.say(r.render(v));
      r.value("value", v);
      r.field("disclosure_dpa", stats.disclosure_dpa);
      return Positive;
    };
  });

  auto* prob = sub("prob", "probability of an omega-regular property");
  prob->add_option("--model", model)->required();
  prob->add_option("--dpa", dpa_path)->required();
  prob->add_option("--samples", samples, "also estimate by Monte Carlo");
  prob->add_option("--seed", seed);
  prob->add_option("--horizon", horizon);
  prob->callback([&] {
    action = [&](Report& r) {
      const auto p = load_pts(model);
      require_valid(p, model);
      const auto a = load_dpa(dpa_path);
      const auto v = omega_probability(p, a);
      r.say(r.render(v));
      r.value("value", v);
      if (samples > 0) {
        const auto mc = monte_carlo_probability(p, a, samples, horizon, seed);
        std::ostringstream est;
        est << mc.estimate << " [" << mc.lower << ", " << mc.upper << "]";
        r.say("monte carlo: " + est.str());
        r.field("mc_samples", mc.samples);
        r.field("mc_hits", mc.hits);
        r.field("mc_interval", est.str());
      }
      return Positive;
    };
  });

  auto* sat = sub("sat", "does a PTS satisfy an IDTMC?");
  sat->add_option("--model", model, "the PTS")->required();
  sat->add_option("--spec", spec, "the IDTMC")->required();
  sat->add_option("--witness-out", witness_out);
  sat->add_option("--witness-in", witness_in, "validate this witness instead of searching");
  sat->callback([&] {
    action = [&](Report& r) {
      const auto p = load_pts(model);
      const auto s = load_idtmc(spec);
      auto name = [&](const StatePair& x) { return p.state_names[x.first] + "," + s.state_names[x.second]; };
      if (!witness_in.empty()) {
        auto f = open_in(witness_in);
        const auto w = parse_sat_witness(f, p, s, witness_in);
        std::string why;
        const bool ok = validate_sat_witness(p, s, w, &why);
        r.say(ok ? "witness valid" : "witness invalid: " + why);
        r.field("valid", ok);
        if (!ok) r.field("reason", why);
        return ok ? Positive : Negative;
      }
      const auto res = check_satisfaction(p, s);
      r.say(res.holds() ? "satisfies" : "does not satisfy");
      r.field("satisfies", res.holds());
      if (!res.holds()) {
        report_refutation(r, res.refutation, name);
        return Negative;
      }
      r.field("pairs", res.witness->relation.size());
      if (!witness_out.empty()) {
        auto f = open_out(witness_out);
        write_sat_witness(f, p, s, *res.witness);
      }
      return Positive;
    };
  });

  auto* sim = sub("sim", "does the second model simulate the first?");
  sim->add_option("--s1", s1_path)->required();
  sim->add_option("--s2", s2_path)->required();
  sim->add_option("--witness-out", witness_out);
  sim->add_option("--witness-in", witness_in, "validate this witness instead of searching");
  sim->callback([&] {
    action = [&](Report& r) {
      const auto m1 = load_model(s1_path);
      const auto m2 = load_model(s2_path);
      if (m1.index() != m2.index()) throw InvalidModel("sim needs two models of the same kind");
      const bool pts = std::holds_alternative<Pts>(m1);
      const Idtmc i1 = pts ? as_idtmc(std::get<Pts>(m1)) : std::get<Idtmc>(m1);
      const Idtmc i2 = pts ? as_idtmc(std::get<Pts>(m2)) : std::get<Idtmc>(m2);
      auto name = [&](const StatePair& x) { return i1.state_names[x.first] + "," + i2.state_names[x.second]; };
      if (!witness_in.empty()) {
        auto f = open_in(witness_in);
        const auto w = parse_sim_witness(f, i1, i2, witness_in);
        std::string why;
        const bool ok = pts ? validate_sim_witness(std::get<Pts>(m1), std::get<Pts>(m2), w, &why)
                            : validate_sim_witness(i1, i2, w, &why);
        r.say(ok ? "witness valid" : "witness invalid: " + why);
        r.field("valid", ok);
        if (!ok) r.field("reason", why);
        return ok ? Positive : Negative;
      }
      const auto res = pts ? check_simulation_pts(std::get<Pts>(m1), std::get<Pts>(m2))
                           : check_simulation_idtmc(i1, i2);
      r.say(res.holds() ? "simulates" : "does not simulate");
      r.field("simulates", res.holds());
      if (!res.holds()) {
        report_refutation(r, res.refutation, name);
        return Negative;
      }
      r.field("pairs", res.witness->relation.size());
      if (!witness_out.empty()) {
        auto f = open_out(witness_out);
        write_sim_witness(f, i1, i2, *res.witness);
      }
      return Positive;
    };
  });

  auto* bisim = sub("bisim", "probabilistic bisimilarity of two PTSs");
  bisim->add_option("--a1", s1_path)->required();
  bisim->add_option("--a2", s2_path)->required();
  bisim->callback([&] {
    action = [&](Report& r) {
      const auto a1 = load_pts(s1_path);
      const auto a2 = load_pts(s2_path);
      require_valid(a1, s1_path);
      require_valid(a2, s2_path);
      const auto res = check_prob_bisimulation(a1, a2);
      r.say(res.bisimilar ? "bisimilar" : "not bisimilar");
      r.field("bisimilar", res.bisimilar);
      r.field("blocks", res.blocks);
      if (!res.bisimilar) {
        r.field("reason", "initial states " + a1.state_names[a1.init] + " and " +
                              a2.state_names[a2.init] + " lie in different blocks");
        return Negative;
      }
      return Positive;
    };
  });

  auto* transfer = sub("transfer", "move a scheduler of S1 to S2 and compare cones");
  transfer->add_option("--s1", s1_path)->required();
  transfer->add_option("--s2", s2_path)->required();
  transfer->add_option("--choice", choice_path, "memoryless choice for S1")->required();
  transfer->add_option("--depth", depth, "compare words up to this length");
  transfer->add_option("--weighting", weighting)->check(CLI::IsMember({"coupling", "run-probability"}));
  transfer->callback([&] {
    action = [&](Report& r) {
      const auto s1 = load_idtmc(s1_path);
      const auto s2 = load_idtmc(s2_path);
      auto f = open_in(choice_path);
      const auto choice = parse_choice(f, s1, choice_path);
      const auto res = check_simulation_idtmc(s1, s2);
      if (!res.holds()) {
        r.say("does not simulate");
        report_refutation(r, res.refutation, [&](const StatePair& x) {
          return s1.state_names[x.first] + "," + s2.state_names[x.second];
        });
        return Negative;
      }
      const auto a1 = memoryless_scheduler(s1, choice, depth);
      const auto a2 = transfer_scheduler(
          s1, s2, *res.witness, a1, depth,
          weighting == "coupling" ? TransferWeighting::Coupling : TransferWeighting::RunProbability);
      const auto cones = verify_cone_equality(unfold(s1, a1, depth), unfold(s2, a2, depth), depth);
      r.say(cones.equal() ? "cone probabilities agree" : "cone probabilities differ");
      r.field("runs", a2.choice.size());
      r.value("max_discrepancy", cones.max_discrepancy);
      r.field("equal", cones.equal());
      if (!cones.equal()) {
        const auto& w = !cones.worst_word.empty() ? cones.worst_word
                        : !cones.only_first.empty() ? cones.only_first.front()
                                                    : cones.only_second.front();
        r.field("reason", "counterexample word: " + word_text(s1.alphabet, w));
        return Negative;
      }
      return Positive;
    };
  });

  auto* monotonic = sub("monotonic", "check Disc(S1) <= Disc(S2) for a simulating pair");
  monotonic->add_option("--s1", s1_path)->required();
  monotonic->add_option("--s2", s2_path)->required();
  monotonic->add_option("--phi", phi)->required();
  monotonic->add_option("--observe", observe)->required();
  monotonic->callback([&] {
    action = [&](Report& r) {
      const auto s1 = load_idtmc(s1_path);
      const auto s2 = load_idtmc(s2_path);
      const auto secret = load_dpa(phi);
      const auto res = check_simulation_idtmc(s1, s2);
      r.field("simulates", res.holds());
      if (!res.holds()) {
        r.say("no simulation witness");
        report_refutation(r, res.refutation, [&](const StatePair& x) {
          return s1.state_names[x.first] + "," + s2.state_names[x.second];
        });
        return Negative;
      }
      r.say("simulation witness found");
      const auto d1 = max_disclosure(s1, make_observation(s1.alphabet, observe), secret, {opt.budget});
      const auto d2 = max_disclosure(s2, make_observation(s2.alphabet, observe), secret, {opt.budget});
      const bool ok = d1.value <= d2.value;
      r.say("Disc(S1) = " + r.render(d1.value) + (ok ? " <= " : " > ") + "Disc(S2) = " +
            r.render(d2.value));
      r.value("disc_s1", d1.value);
      r.value("disc_s2", d2.value);
      r.field("monotonic", ok);
      if (!ok) r.field("reason", "disclosure of S1 exceeds that of S2");
      return ok ? Positive : Negative;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Positive;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return InputError;
  }
  if (opt.format.size() == 2 && opt.format[0] != "decimal") {
    err << "--format: expected 'exact' or 'decimal N'\n";
    return InputError;
  }
  if (opt.format.size() == 1 && opt.format[0] != "exact") {
    err << "--format: 'decimal' needs a digit count\n";
    return InputError;
  }

  try {
    Report r(out, opt);
    const int code = action(r);
    r.flush();
    return code;
  } catch (const StateBudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return BudgetExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return InputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return InputError;
  }
}

}  // namespace opacity::cli
