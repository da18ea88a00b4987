// Copyright 2026 The sweepsf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sweepsf/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sweepsf/combinatorics.hpp"
#include "sweepsf/errors.hpp"
#include "sweepsf/formula.hpp"
#include "sweepsf/joint_pmf.hpp"
#include "sweepsf/numerics.hpp"
#include "sweepsf/params.hpp"
#include "sweepsf/parallel.hpp"
#include "sweepsf/rng.hpp"
#include "sweepsf/simulation.hpp"
#include "sweepsf/sweep_diffusion.hpp"

namespace sweepsf {

std::uint64_t default_seed() {
  const char* env = std::getenv("SWEEPSF_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') return kDefaultSeed;
  return v;
}

namespace {

using nlohmann::json;
using std::string;

// Flags that were given explicitly, for mutually exclusive groups.
struct Given {
  bool alpha = false, gamma = false, N = false, s = false, r = false;
};

class Runner {
 public:
  Runner(const RunConfig& cfg, const Given& given) : cfg_(cfg), given_(given) {
    if (cfg_.format != "csv" && cfg_.format != "json") {
      throw ConfigError("--format must be csv or json");
    }
  }

  string run() {
    const string& c = cfg_.subcommand;
    if (c == "formula") return formula();
    if (c == "simulate") return simulate();
    if (c == "compare") return compare();
    if (c == "table1") return table1();
    if (c == "duration") return duration();
    if (c == "identities") return identities();
    throw ConfigError("unknown subcommand " + c);
  }

 private:
  SweepParams params(bool need_gamma = true) const {
    if (given_.N || given_.s || given_.r) {
      if (given_.alpha || given_.gamma) {
        throw ConfigError("give either --alpha/--gamma or --N/--s/--r, not both");
      }
      if (!(given_.N && given_.s && given_.r)) {
        throw ConfigError("--N, --s and --r must be given together");
      }
      return map_moran_params(cfg_.N, cfg_.s, cfg_.r, cfg_.n);
    }
    // A grid alone supplies alpha; its first value stands in for --alpha.
    const bool from_grid = !given_.alpha && !cfg_.alpha_grid.empty();
    if (!given_.alpha && !from_grid) {
      throw ConfigError("--alpha (or --N/--s/--r) is required");
    }
    if (need_gamma && !given_.gamma) throw ConfigError("--gamma is required");
    SweepParams p{from_grid ? cfg_.alpha_grid.front() : cfg_.alpha, cfg_.gamma, cfg_.n};
    p.validate();
    return p;
  }

  std::vector<double> grid(const std::vector<double>& fallback) const {
    if (!cfg_.alpha_grid.empty()) return cfg_.alpha_grid;
    if (given_.alpha) return {cfg_.alpha};
    return fallback;
  }

  // Canonical description of the run: every flag that affects the numbers,
  // and none that does not (threads, output path).
  string command_line(const SweepParams* p) const {
    std::ostringstream os;
    os << cfg_.subcommand;
    if (p) os << ' ' << p->to_string();
    if (cfg_.subcommand == "simulate" || cfg_.subcommand == "compare") {
      os << " reps=" << cfg_.reps;
    }
    if (cfg_.subcommand == "simulate") os << " model=" << cfg_.model;
    if (cfg_.dt > 0) os << " dt=" << format_double(cfg_.dt);
    if (!cfg_.alpha_grid.empty()) {
      os << " alpha_grid=";
      for (std::size_t k = 0; k < cfg_.alpha_grid.size(); ++k) {
        os << (k ? "," : "") << format_double(cfg_.alpha_grid[k]);
      }
    }
    if (!cfg_.layers.empty()) {
      os << " layers=";
      for (std::size_t k = 0; k < cfg_.layers.size(); ++k) {
        os << (k ? "," : "") << cfg_.layers[k];
      }
    }
    if (cfg_.subcommand == "duration") {
      os << " eps=" << format_double(cfg_.eps) << " mc_reps=" << cfg_.mc_reps;
    }
    if (cfg_.subcommand == "identities") os << " n_max=" << cfg_.n_max;
    return os.str();
  }

  string meta_csv(const SweepParams* p) const {
    std::ostringstream os;
    os << "# sweepsf " << kVersion << '\n'
       << "# command: " << command_line(p) << '\n'
       << "# seed: " << cfg_.seed << '\n';
    return os.str();
  }

  json meta_json(const SweepParams* p) const {
    return {{"version", kVersion},
            {"command", command_line(p)},
            {"seed", cfg_.seed}};
  }

  static json pmf_json(const JointPmf& pmf) { return json::parse(to_json(pmf)); }

  string formula() {
    const SweepParams p = params();
    const Thm1Law law(p);
    const JointPmf exact = joint_pmf_exact_sum(law);
    const JointPmf printed = joint_pmf_printed(law);
    const auto diff = diff_report(exact, printed);
    const Marginals marg = marginals(law, exact);
    const double tail = f_survival(p.n, law.f_cap());
    if (cfg_.format == "json") {
      json j;
      j["metadata"] = meta_json(&p);
      j["cor27_exact_sum"] = pmf_json(exact);
      j["cor27_printed"] = pmf_json(printed);
      j["diff"] = json::array();
      for (const auto& d : diff) {
        j["diff"].push_back({{"e", d.e},
                             {"l", d.l},
                             {"exact_sum", d.reference},
                             {"printed", d.other},
                             {"diff", d.diff}});
      }
      j["marginals"] = {{"L", marg.L}, {"S", marg.S}, {"E", marg.E}};
      j["f_tail"] = {{"f_cap", law.f_cap()},
                     {"mass_beyond_cap", tail},
                     {"treatment", "exact, p_F = 1 beyond f_cap"}};
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << meta_csv(&p);
    os << "# f_tail: P[F > " << law.f_cap() << "] = " << format_double(tail)
       << " carried exactly with p_F = 1\n";
    os << "# section: joint cor27_exact_sum total_mass="
       << format_double(exact.total_mass()) << '\n';
    write_csv(os, exact);
    os << "# section: joint cor27_printed total_mass="
       << format_double(printed.total_mass()) << '\n';
    write_csv(os, printed);
    os << "# section: diff cor27_printed - cor27_exact_sum\n"
       << "e,l,exact_sum,printed,diff\n";
    for (const auto& d : diff) {
      os << d.e << ',' << d.l << ',' << format_double(d.reference) << ','
         << format_double(d.other) << ',' << format_double(d.diff) << '\n';
    }
    os << "# section: marginals\nvariable,value,p\n";
    auto put = [&](const char* name, const std::vector<double>& v) {
      for (std::size_t k = 0; k < v.size(); ++k) {
        os << name << ',' << k << ',' << format_double(v[k]) << '\n';
      }
    };
    put("L", marg.L);
    put("S", marg.S);
    put("E", marg.E);
    return os.str();
  }

  string simulate() {
    if (cfg_.model == "diffusion") return simulate_diffusion();
    const Model model = model_from_string(cfg_.model);
    const SweepParams p = params();
    const auto recs =
        simulate_replicates(model, p, cfg_.reps, cfg_.seed, cfg_.dt, cfg_.threads);
    const JointPmf emp = empirical_joint_pmf(stats_of(recs), p.n, producer_of(model));
    json cmp = json::array();
    string cmp_note;
    try {
      const JointPmf exact = joint_pmf_exact_sum(p);
      const double tv = total_variation(emp, exact);
      const double bound = tv_noise_bound(exact.table().size(), cfg_.reps);
      cmp.push_back({{"reference", "cor27_exact_sum"}, {"tv", tv}, {"noise_bound", bound}});
    } catch (const std::exception& e) {
      cmp_note = e.what();
    }
    if (cfg_.format == "json") {
      json j;
      j["metadata"] = meta_json(&p);
      if (!cfg_.no_replicates) {
        j["replicates"] = json::array();
        for (std::size_t r = 0; r < recs.size(); ++r) {
          const auto& s = recs[r].stats;
          j["replicates"].push_back({{"rep", r}, {"M", s.M}, {"S", s.S}, {"L", s.L},
                                     {"E", s.E}, {"n_nonrec", s.n_nonrec},
                                     {"exceptional_count", s.exceptional_count}});
        }
      }
      j["aggregate"] = pmf_json(emp);
      j["comparison"] = cmp;
      if (!cmp_note.empty()) j["comparison_note"] = cmp_note;
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << meta_csv(&p);
    if (!cfg_.no_replicates) {
      os << "# section: replicates\nrep,M,S,L,E,n_nonrec,exceptional_count\n";
      for (std::size_t r = 0; r < recs.size(); ++r) {
        const auto& s = recs[r].stats;
        os << r << ',' << s.M << ',' << s.S << ',' << s.L << ',' << s.E << ','
           << s.n_nonrec << ',' << s.exceptional_count << '\n';
      }
    }
    os << "# section: aggregate\n";
    write_csv(os, emp);
    os << "# section: comparison\nreference,tv,noise_bound\n";
    for (const auto& c : cmp) {
      os << c["reference"].get<string>() << ',' << format_double(c["tv"].get<double>())
         << ',' << format_double(c["noise_bound"].get<double>()) << '\n';
    }
    if (!cmp_note.empty()) os << "# comparison unavailable: " << cmp_note << '\n';
    return os.str();
  }

  string simulate_diffusion() {
    const SweepParams p = params(/*need_gamma=*/false);
    const double dt = cfg_.dt > 0 ? cfg_.dt : 1.0 / (50.0 * p.alpha);
    const SweepParams path_params{p.alpha, 0.0, 1};
    struct Sample {
      double T, Teps;
    };
    const auto samples = run_replicates(cfg_.reps, cfg_.threads, [&](std::uint64_t r) {
      const SweepPath path =
          simulate_sweep_path(path_params, dt, derive_seed(cfg_.seed, r, Stream::path));
      return Sample{path.fixation_time, path.hitting_time(cfg_.eps)};
    });
    std::vector<double> T, Te;
    for (const auto& s : samples) {
      T.push_back(s.T);
      Te.push_back(s.Teps);
    }
    const SampleMoments mT = sample_moments(T), mE = sample_moments(Te);
    const DurationStats q = duration_mean_quadrature(p.alpha, cfg_.eps);
    std::ostringstream os;
    if (cfg_.format == "json") {
      json j;
      j["metadata"] = meta_json(&p);
      j["dt"] = dt;
      if (!cfg_.no_replicates) j["T"] = T;
      j["moments"] = {{"mean_T", mT.mean}, {"se_mean_T", mT.se_mean()},
                      {"var_T", mT.var}, {"mean_T_eps", mE.mean},
                      {"se_mean_T_eps", mE.se_mean()}};
      j["quadrature"] = {{"mean_T", q.mean_T}, {"var_T", q.var_T},
                         {"mean_T_eps", q.mean_T_to_eps}};
      return j.dump(2) + "\n";
    }
    os << meta_csv(&p) << "# dt: " << format_double(dt) << '\n';
    if (!cfg_.no_replicates) {
      os << "# section: samples\nrep,T,T_eps\n";
      for (std::size_t r = 0; r < samples.size(); ++r) {
        os << r << ',' << format_double(T[r]) << ',' << format_double(Te[r]) << '\n';
      }
    }
    os << "# section: moments\nstat,monte_carlo,se,quadrature,z\n";
    auto row = [&](const char* name, double mc, double se, double quad) {
      os << name << ',' << format_double(mc) << ',' << format_double(se) << ','
         << format_double(quad) << ',' << format_double(se > 0 ? (mc - quad) / se : 0.0)
         << '\n';
    };
    row("mean_T", mT.mean, mT.se_mean(), q.mean_T);
    NeumaierSum m4;
    for (double t : T) m4 += std::pow(t - mT.mean, 4);
    const double se_var = std::sqrt(std::max(
        0.0, (m4.value() / static_cast<double>(T.size()) - mT.var * mT.var) /
                 static_cast<double>(T.size())));
    row("var_T", mT.var, se_var, q.var_T);
    row("mean_T_eps", mE.mean, mE.se_mean(), q.mean_T_to_eps);
    return os.str();
  }

  struct Layer {
    string name;
    JointPmf pmf;
    bool empirical = false;
  };

  string compare() {
    std::vector<string> names = cfg_.layers;
    if (names.empty()) names = {"yule", "exact"};
    const SweepParams base = params();
    std::ostringstream os;
    json rows = json::array();
    for (double alpha : grid({})) {
      SweepParams p = base;
      p.alpha = alpha;
      p.validate();
      std::vector<Layer> layers;
      for (const auto& name : names) {
        if (name == "exact") {
          layers.push_back({name, joint_pmf_exact_sum(p), false});
        } else if (name == "printed") {
          layers.push_back({name, joint_pmf_printed(p), false});
        } else {
          const Model m = model_from_string(name);
          const auto recs =
              simulate_replicates(m, p, cfg_.reps, cfg_.seed, cfg_.dt, cfg_.threads);
          layers.push_back({name, empirical_joint_pmf(stats_of(recs), p.n, producer_of(m)),
                            true});
        }
      }
      // Cells with e + l <= n.
      const std::size_t cells = static_cast<std::size_t>((p.n + 1) * (p.n + 2) / 2);
      for (std::size_t a = 0; a < layers.size(); ++a) {
        for (std::size_t b = a + 1; b < layers.size(); ++b) {
          double bound = 0.0;
          if (layers[a].empirical) bound += tv_noise_bound(cells, cfg_.reps);
          if (layers[b].empirical) bound += tv_noise_bound(cells, cfg_.reps);
          rows.push_back({{"alpha", alpha}, {"layer_a", layers[a].name},
                          {"layer_b", layers[b].name},
                          {"tv", total_variation(layers[a].pmf, layers[b].pmf)},
                          {"noise_bound", bound}});
        }
      }
    }
    if (cfg_.format == "json") {
      json j;
      j["metadata"] = meta_json(&base);
      j["comparisons"] = rows;
      return j.dump(2) + "\n";
    }
    os << meta_csv(&base) << "alpha,layer_a,layer_b,tv,noise_bound\n";
    for (const auto& r : rows) {
      os << format_double(r["alpha"].get<double>()) << ',' << r["layer_a"].get<string>()
         << ',' << r["layer_b"].get<string>() << ',' << format_double(r["tv"].get<double>())
         << ',' << format_double(r["noise_bound"].get<double>()) << '\n';
    }
    return os.str();
  }

  string table1() {
    // Published values of the approximate law for the two parameter sets
    // (s = 0.1, population size 1e4): pinb, p2inb, p2cinb, p1B1b.
    struct Set {
      double r;
      double ref[4];
    };
    static constexpr Set kSets[] = {
        {0.001064, {0.08249, 0.00659, 0.01867, 0.11515}},
        {0.005158, {0.32973, 0.10857, 0.05662, 0.34157}},
    };
    static constexpr const char* kStats[] = {"pinb", "p2inb", "p2cinb", "p1B1b"};
    const double s = 0.1;
    json rows = json::array();
    for (std::size_t set = 0; set < 2; ++set) {
      for (double two_n : {1e4, 2e4}) {
        const SweepParams p = map_moran_params(two_n / 2.0, s, kSets[set].r);
        const auto st = table1_stats(p.alpha, p.gamma);
        for (int k = 0; k < 4; ++k) {
          const double v = st.at(kStats[k]);
          const double ref = kSets[set].ref[k];
          rows.push_back({{"set", set + 1}, {"s", s}, {"r", kSets[set].r},
                          {"two_N", two_n}, {"alpha", p.alpha}, {"gamma", p.gamma},
                          {"stat", kStats[k]}, {"computed", v}, {"reference", ref},
                          {"rel_err", (v - ref) / ref}});
        }
      }
    }
    if (cfg_.format == "json") {
      json j;
      j["metadata"] = meta_json(nullptr);
      j["rows"] = rows;
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << meta_csv(nullptr)
       << "set,s,r,two_N,alpha,gamma,stat,computed,reference,rel_err\n";
    for (const auto& r : rows) {
      os << r["set"].get<int>() << ',' << format_double(r["s"].get<double>()) << ','
         << format_double(r["r"].get<double>()) << ','
         << format_double(r["two_N"].get<double>()) << ','
         << format_double(r["alpha"].get<double>()) << ','
         << format_double(r["gamma"].get<double>()) << ',' << r["stat"].get<string>()
         << ',' << format_double(r["computed"].get<double>()) << ','
         << format_double(r["reference"].get<double>()) << ','
         << format_double(r["rel_err"].get<double>()) << '\n';
    }
    return os.str();
  }

  string duration() {
    const auto alphas = grid({1e2, 1e3, 1e4, 1e5});
    json rows = json::array();
    for (double alpha : alphas) {
      const DurationStats q = duration_mean_quadrature(alpha, cfg_.eps);
      const double la = std::log(alpha);
      json row = {{"alpha", alpha},
                  {"mean_T", q.mean_T},
                  {"alpha_mean_T_minus_2log_alpha", alpha * q.mean_T - 2.0 * la},
                  {"var_T", q.var_T},
                  {"alpha2_var_T", alpha * alpha * q.var_T},
                  {"mean_T_eps", q.mean_T_to_eps},
                  {"alpha_mean_T_eps_minus_log_alpha", alpha * q.mean_T_to_eps - la}};
      if (cfg_.mc_reps > 0) {
        const double dt = cfg_.dt > 0 ? cfg_.dt : 1.0 / (50.0 * alpha);
        const DurationStats mc = duration_monte_carlo(alpha, dt, cfg_.mc_reps, cfg_.seed,
                                                      cfg_.eps, cfg_.threads);
        row["mc_paths"] = mc.paths;
        row["mc_mean_T"] = mc.mean_T;
        row["mc_se_mean_T"] = mc.se_mean_T;
        row["mc_var_T"] = mc.var_T;
        row["mc_se_var_T"] = mc.se_var_T;
      }
      rows.push_back(row);
    }
    if (cfg_.format == "json") {
      json j;
      j["metadata"] = meta_json(nullptr);
      j["rows"] = rows;
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << meta_csv(nullptr);
    static const char* kCols[] = {"alpha", "mean_T", "alpha_mean_T_minus_2log_alpha",
                                  "var_T", "alpha2_var_T", "mean_T_eps",
                                  "alpha_mean_T_eps_minus_log_alpha"};
    static const char* kMc[] = {"mc_paths", "mc_mean_T", "mc_se_mean_T", "mc_var_T",
                                "mc_se_var_T"};
    for (std::size_t k = 0; k < 7; ++k) os << (k ? "," : "") << kCols[k];
    if (cfg_.mc_reps > 0) {
      for (const char* c : kMc) os << ',' << c;
    }
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < 7; ++k) {
        os << (k ? "," : "") << format_double(r[kCols[k]].get<double>());
      }
      if (cfg_.mc_reps > 0) {
        for (const char* c : kMc) os << ',' << format_double(r[c].get<double>());
      }
      os << '\n';
    }
    return os.str();
  }

  string identities() {
    const auto alphas = grid({1e3, 1e4, 1e5});
    const IdentityReport rep = identity_suite(cfg_.n_max, alphas);
    json j;
    j["metadata"] = meta_json(nullptr);
    j["report"] = json::parse(rep.to_json());
    return j.dump(2) + "\n";
  }

  const RunConfig& cfg_;
  Given given_;
};

void add_model_flags(CLI::App* sc, RunConfig& cfg, std::map<string, CLI::Option*>& opt) {
  opt["n"] = sc->add_option("--n", cfg.n, "sample size")->check(CLI::PositiveNumber);
  opt["alpha"] = sc->add_option("--alpha", cfg.alpha, "scaled selection coefficient");
  opt["gamma"] = sc->add_option("--gamma", cfg.gamma, "scaled recombination (rho log(alpha)/alpha)");
  opt["N"] = sc->add_option("--N", cfg.N, "population size; alpha = 2 N s");
  opt["s"] = sc->add_option("--s", cfg.s, "selection coefficient");
  opt["r"] = sc->add_option("--r", cfg.r, "recombination probability");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.seed = default_seed();
  CLI::App app{"Sampling formula and simulators for the neutral genealogy after a sweep",
               "sweepsf"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  std::map<string, std::map<string, CLI::Option*>> opts;
  auto common = [&](CLI::App* sc) {
    sc->add_option("--seed", cfg.seed, "root seed (default SWEEPSF_SEED or 20060401)");
    sc->add_option("-o,--output", cfg.output, "output file (default stdout)");
    sc->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  };

  auto* formula = app.add_subcommand("formula", "exact joint law of (E, L) and marginals");
  add_model_flags(formula, cfg, opts["formula"]);
  common(formula);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo replicates of one model");
  add_model_flags(simulate, cfg, opts["simulate"]);
  common(simulate);
  simulate->add_option("--model", cfg.model, "coalescent, marked, yule, thm1 or diffusion")
      ->check(CLI::IsMember({"coalescent", "marked", "yule", "thm1", "diffusion"}));
  simulate->add_option("--reps", cfg.reps, "replicates");
  simulate->add_option("--dt", cfg.dt, "path step (default 1/(50 alpha))");
  simulate->add_option("--eps", cfg.eps, "level for T_eps (diffusion)");
  simulate->add_flag("--no-replicates", cfg.no_replicates, "aggregate output only");

  auto* compare = app.add_subcommand("compare", "total variation between layers");
  add_model_flags(compare, cfg, opts["compare"]);
  common(compare);
  compare->add_option("--layers", cfg.layers,
                      "comma list of exact, printed, thm1, yule, marked, coalescent")
      ->delimiter(',');
  compare->add_option("--alpha-grid", cfg.alpha_grid, "comma list of alpha values")
      ->delimiter(',');
  compare->add_option("--reps", cfg.reps, "replicates per simulated layer");
  compare->add_option("--dt", cfg.dt, "path step (default 1/(50 alpha))");

  auto* table1 = app.add_subcommand("table1", "two-locus summaries for both size mappings");
  common(table1);

  auto* duration = app.add_subcommand("duration", "sweep duration moments over an alpha grid");
  common(duration);
  duration->add_option("--alpha-grid", cfg.alpha_grid, "comma list of alpha values")
      ->delimiter(',');
  duration->add_option("--eps", cfg.eps, "level for T_eps");
  duration->add_option("--mc-reps", cfg.mc_reps, "Monte Carlo paths per alpha (0: none)");
  duration->add_option("--dt", cfg.dt, "path step (default 1/(50 alpha))");

  auto* identities = app.add_subcommand("identities", "finite-sum identities report (JSON)");
  common(identities);
  identities->add_option("--n-max", cfg.n_max, "largest n (<= 8)");
  identities->add_option("--alpha-grid", cfg.alpha_grid, "comma list of alpha values")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitFlags;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitFlags;
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitFlags;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitFlags;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  Given given;
  if (auto it = opts.find(cfg.subcommand); it != opts.end()) {
    auto& o = it->second;
    given.alpha = o["alpha"]->count() > 0;
    given.gamma = o["gamma"]->count() > 0;
    given.N = o["N"]->count() > 0;
    given.s = o["s"]->count() > 0;
    given.r = o["r"]->count() > 0;
  }

  try {
    Runner runner(cfg, given);
    const string text = runner.run();
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw ConfigError("cannot open " + cfg.output + " for writing");
      f << text;
    }
    return kExitOk;
  } catch (const ValidityError& e) {
    err << "validity error: " << e.what() << '\n';
    return kExitValidity;
  } catch (const StepSizeError& e) {
    err << "step-size error: " << e.what() << '\n';
    return kExitStepSize;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFlags;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFlags;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace sweepsf
