#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "shocknet/errors.hpp"
#include "shocknet/format.hpp"
#include "shocknet/ordering.hpp"
#include "shocknet/reliability.hpp"
#include "shocknet/report.hpp"
#include "shocknet/shock_model.hpp"
#include "shocknet/signature.hpp"
#include "shocknet/simulation.hpp"

namespace shocknet::cli {

namespace {

constexpr std::size_t kDefaultGridPoints = 200;

// Grid spec: "auto", "auto:<points>", "<start>:<stop>:<points>" or "t1,t2,...".
struct GridSpec {
  bool automatic = true;
  std::size_t points = kDefaultGridPoints;
  std::vector<double> explicit_grid;
};

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ValidationError(what + ": '" + s + "' is not a number");
  return v;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v < 2 || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw ValidationError(what + ": point count must be an integer >= 2");
  return static_cast<std::size_t>(v);
}

GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  if (spec == "auto") return g;
  if (spec.rfind("auto:", 0) == 0) {
    g.points = parse_count(spec.substr(5), "grid");
    return g;
  }
  g.automatic = false;
  if (spec.find(',') != std::string::npos) {
    std::istringstream in(spec);
    for (std::string item; std::getline(in, item, ',');) g.explicit_grid.push_back(parse_double(item, "grid"));
  } else {
    std::vector<std::string> parts;
    std::istringstream in(spec);
    for (std::string item; std::getline(in, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw ValidationError("grid must be auto, auto:N, start:stop:N or a comma list");
    const double a = parse_double(parts[0], "grid start");
    const double b = parse_double(parts[1], "grid stop");
    const std::size_t n = parse_count(parts[2], "grid");
    if (!(b > a)) throw ValidationError("grid stop must exceed start");
    for (std::size_t i = 0; i < n; ++i)
      g.explicit_grid.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  validate_grid(g.explicit_grid);
  return g;
}

std::vector<double> resolve_grid(const GridSpec& g, const std::function<double(double)>& reliability) {
  if (!g.automatic) return g.explicit_grid;
  return uniform_grid(find_t_max(reliability), g.points);
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "shocknet";
  for (const auto& a : args) s += ' ' + a;
  return s;
}

// Signature source: a network file or a signature CSV.
struct ModelInput {
  std::string net_path;
  std::string sig_path;

  std::optional<Network> network() const {
    if (net_path.empty()) return std::nullopt;
    return load_network(net_path);
  }

  SignatureVector signature(SignatureKind kind) const {
    if (!sig_path.empty()) {
      std::ifstream in(sig_path);
      if (!in) throw ValidationError("cannot open signature file '" + sig_path + "'");
      for (auto& sig : read_signature_csv(in))
        if (sig.kind == kind) return sig;
      throw ValidationError("signature file has no " + std::string(to_string(kind)) + " rows");
    }
    if (net_path.empty()) throw ValidationError("give a network (--net) or a signature file (--sig)");
    const Network net = load_network(net_path);
    switch (kind) {
      case SignatureKind::classical: return classical_signature(net);
      case SignatureKind::tie: return t_signature(net);
      case SignatureKind::fatal: return fatal_signature(net);
    }
    return t_signature(net);
  }
};

void add_model_input(CLI::App* cmd, ModelInput& in) {
  auto* net = cmd->add_option("--net", in.net_path, "Network description file");
  auto* sig = cmd->add_option("--sig", in.sig_path, "Signature CSV (as written by 'signature')");
  net->excludes(sig);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ValidationError("cannot write '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

// -- subcommands --------------------------------------------------------------

struct SignatureArgs {
  std::string network;
  std::string kind = "all";
  std::uint64_t mc = 0;
  std::uint64_t seed = 1;
  std::size_t limit = kDefaultEnumerationLimit;
  std::string output;
};

void cmd_signature(const SignatureArgs& a, const std::string& manifest, std::ostream& out_default) {
  const Network net = load_network(a.network);
  if (a.kind != "all") parse_signature_kind(a.kind);
  Output out(a.output, out_default);
  write_manifest(*out, manifest);

  if (a.mc > 0) {
    if (a.kind == "classical") throw ValidationError("--mc estimates tie and fatal signatures only");
    bool first = true;
    for (auto kind : {SignatureKind::tie, SignatureKind::fatal}) {
      if (a.kind != "all" && parse_signature_kind(a.kind) != kind) continue;
      const auto est = kind == SignatureKind::tie ? t_signature_mc(net, a.mc, a.seed)
                                                  : fatal_signature_mc(net, a.mc, a.seed);
      std::ostringstream block;
      write_signature_estimate_csv(block, est);
      std::string text = block.str();
      if (!first) text.erase(0, text.find('\n') + 1);  // one header only
      *out << text;
      first = false;
    }
    return;
  }

  SignatureOptions opts;
  opts.enumeration_limit = a.limit;
  std::vector<SignatureVector> sigs;
  try {
    if (a.kind == "all" || a.kind == "classical") {
      if (a.kind == "classical" || net.link_count() <= kClassicalLimit) sigs.push_back(classical_signature(net));
    }
    if (a.kind == "all" || a.kind == "tie") sigs.push_back(t_signature(net, opts));
    if (a.kind == "all" || a.kind == "fatal") sigs.push_back(fatal_signature(net, opts));
  } catch (const LimitError& e) {
    throw LimitError(std::string(e.what()) + " (rerun with --mc <trials> --seed <s>)");
  }
  write_signature_csv(*out, sigs);
}

struct CurveArgs {
  ModelInput input;
  std::string law;
  std::string damage;
  std::string grid = "auto";
  std::string model = "shock";
  std::string output;
};

ReliabilityCurve evaluate_model(const CurveArgs& a, const std::vector<double>& grid) {
  const FirstArrivalLaw law = parse_law(a.law);
  if (a.model == "shock") {
    if (a.damage.empty()) throw ValidationError("--model shock needs --damage binomial:p=<p> or one-per-shock");
    const DamageModel damage = parse_damage(a.damage);
    if (damage.is_fatal()) throw ValidationError("fatal damage requires --model fatal");
    return reliability_shock_model(a.input.signature(SignatureKind::tie), law, damage, grid);
  }
  if (a.model == "component") {
    if (!a.damage.empty() && parse_damage(a.damage).is_binomial())
      throw ValidationError("--model component counts single failures; binomial damage is incompatible");
    if (!a.damage.empty() && parse_damage(a.damage).is_fatal())
      throw ValidationError("--model component is incompatible with fatal damage");
    return reliability_component_model(a.input.signature(SignatureKind::classical), law, grid);
  }
  if (a.model == "fatal") {
    if (!a.damage.empty() && !parse_damage(a.damage).is_fatal())
      throw ValidationError("--model fatal is incompatible with --damage " + a.damage);
    return reliability_fatal(a.input.signature(SignatureKind::fatal), law, grid);
  }
  throw ValidationError("unknown model '" + a.model + "' (expected shock, component or fatal)");
}

std::vector<double> curve_grid(const CurveArgs& a) {
  const GridSpec spec = parse_grid(a.grid);
  if (!spec.automatic) return spec.explicit_grid;
  return resolve_grid(spec, [&](double t) {
    const std::vector<double> g{t};
    return evaluate_model(a, g).values.front();
  });
}

void cmd_reliability(const CurveArgs& a, const std::string& manifest, std::ostream& out_default) {
  const auto grid = curve_grid(a);
  const auto curve = evaluate_model(a, grid);
  Output out(a.output, out_default);
  write_manifest(*out, manifest);
  write_curve_csv(*out, curve);
}

void cmd_hazard(const CurveArgs& a, const std::string& manifest, std::ostream& out_default,
                std::ostream& err) {
  if (a.model != "shock") throw ValidationError("hazard supports --model shock only");
  const auto grid = curve_grid(a);
  const auto hz = hazard_curve(a.input.signature(SignatureKind::tie), parse_law(a.law),
                               parse_damage(a.damage), grid);
  if (hz.truncated_at)
    err << "warning: reliability underflow; hazard curve truncated at t=" << *hz.truncated_at << '\n';
  Output out(a.output, out_default);
  write_manifest(*out, manifest);
  write_hazard_csv(*out, hz);
}

struct CheckArgs {
  std::string network;
  std::string check;
  std::optional<double> q;
  std::optional<double> p;
  std::optional<std::size_t> K;
  std::string law;
  std::string grid = "auto";
};

void cmd_check(const CheckArgs& a, std::ostream& out) {
  if (a.check == "tp2") {
    if (a.law.empty()) throw ValidationError("--check tp2 needs --law");
    const FirstArrivalLaw law = parse_law(a.law);
    const GridSpec spec = parse_grid(a.grid);
    auto grid = resolve_grid(spec, [&](double t) { return law.survival(t); });
    const std::size_t kmax = a.K.value_or(30);
    const auto verdict = tp2_check(count_pmf_matrix(law, grid, kmax));
    out << "tp2 (P(xi(t)=k), " << grid.size() << " times x k=0.." << kmax << "): ";
    if (verdict.holds) out << "holds\n";
    else
      out << "violated at rows " << verdict.row << "," << verdict.row + 1 << " cols " << verdict.col << ","
          << verdict.col + 1 << " (minor " << verdict.minor << ")\n";
    return;
  }

  if (a.network.empty()) throw ValidationError("--check " + a.check + " needs a network file");
  if (a.q && a.p) throw ValidationError("give either --q or --p");
  const double q = a.q ? *a.q : (a.p ? 1 - *a.p : 0.5);
  if (!(q >= 0 && q < 1)) throw ValidationError("q must lie in [0, 1)");
  const auto sig = t_signature(load_network(a.network));
  const auto damage = DamageModel::binomial(1 - q);

  if (a.check == "ihra") {
    const std::size_t K = a.K.value_or(50);
    const auto beta = make_beta_sequence(tail(sig), damage, K);
    const auto verdict = ihra_check(beta, K);
    out << "ihra (beta*_k^(1/k) non-increasing, q=" << q << ", k<=" << K << "): ";
    if (verdict.holds) out << "holds\n";
    else out << "violated at k=" << *verdict.first_violation << '\n';
    return;
  }
  if (a.check == "ihr-ratio") {
    const std::size_t K = a.K.value_or(30);
    const auto beta = make_beta_sequence(tail(sig), damage, K);
    const auto prof = ihr_ratio_profile(beta, K);
    out << "ihr-ratio (beta*_{k+1}/beta*_k, q=" << q << ", k<" << K << "): ";
    if (!prof.non_increasing) out << "NOT monotone (first increase at k=" << *prof.first_increase << ")\n";
    else if (prof.constant) out << "monotone (constant)\n";
    else out << "monotone\n";
    out << "k,ratio\n";
    for (std::size_t k = 0; k < prof.ratios.size(); ++k)
      out << k << ',' << format_double(prof.ratios[k]) << '\n';
    return;
  }
  throw ValidationError("unknown check '" + a.check + "' (expected ihra, ihr-ratio or tp2)");
}

struct CompareArgs {
  ModelInput first;
  ModelInput second;
  std::string law1, law2, damage1, damage2;
  std::string grid = "auto";
};

void cmd_compare(const CompareArgs& a, std::ostream& out) {
  auto config = [](const ModelInput& in, const std::string& law, const std::string& damage,
                   const std::string& label) {
    const DamageModel d = parse_damage(damage);
    if (d.is_fatal()) throw ValidationError("compare evaluates shock models; fatal damage is not supported");
    return ModelConfig{label, in.signature(SignatureKind::tie), parse_law(law), d};
  };
  const ModelConfig c1 = config(a.first, a.law1, a.damage1, "1");
  const ModelConfig c2 = config(a.second, a.law2, a.damage2, "2");

  const GridSpec spec = parse_grid(a.grid);
  std::vector<double> grid = spec.explicit_grid;
  if (spec.automatic) {
    auto t_max_of = [](const ModelConfig& c) {
      return find_t_max([&](double t) {
        const std::vector<double> g{t};
        return reliability_shock_model(c.tie, c.law, c.damage, g).values.front();
      });
    };
    grid = uniform_grid(std::max(t_max_of(c1), t_max_of(c2)), spec.points);
  }
  const auto rep = compare_networks(c1, c2, grid);
  out << "model 1: " << c1.law.describe() << ' ' << c1.damage.describe() << '\n';
  out << "model 2: " << c2.law.describe() << ' ' << c2.damage.describe() << '\n';
  out << "grid: " << grid.size() << " points on [" << grid.front() << ", " << grid.back() << "]\n\n";
  out << rep.to_text();
}

struct SimulateArgs {
  ModelInput input;
  std::string law;
  std::string damage;
  std::string mode = "model-faithful";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string grid = "auto";
  std::string output;
};

void cmd_simulate(const SimulateArgs& a, const std::string& manifest, std::ostream& out_default) {
  if (a.damage.empty()) throw ValidationError("simulate needs --damage");
  SimConfig cfg{parse_law(a.law), parse_damage(a.damage), parse_sim_mode(a.mode), a.trials, a.seed, {}, {}};
  if (cfg.mode == SimMode::mechanistic && a.input.net_path.empty())
    throw ValidationError("mechanistic mode needs a network file (--net)");
  cfg.network = a.input.network();
  const SignatureKind kind = cfg.damage.is_fatal() ? SignatureKind::fatal : SignatureKind::tie;
  if (!a.input.sig_path.empty() || cfg.mode == SimMode::model_faithful)
    cfg.signature = a.input.signature(kind);

  const GridSpec spec = parse_grid(a.grid);
  std::vector<double> grid = spec.explicit_grid;
  if (spec.automatic) {
    // Scale the grid from the analytic model-faithful curve.
    const SignatureVector sig = cfg.signature ? *cfg.signature : a.input.signature(kind);
    grid = resolve_grid(spec, [&](double t) {
      const std::vector<double> g{t};
      return cfg.damage.is_fatal() ? reliability_fatal(sig, cfg.law, g).values.front()
                                   : reliability_shock_model(sig, cfg.law, cfg.damage, g).values.front();
    });
  }
  const auto curve = mc_reliability_curve(cfg, grid);
  Output out(a.output, out_default);
  write_manifest(*out, manifest + "\n" + cfg.describe());
  write_curve_csv(*out, curve);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"shocknet: signatures and shock-model reliability of two-state networks", "shocknet"};
  app.require_subcommand(1);

  SignatureArgs sig_args;
  auto* sig_cmd = app.add_subcommand("signature", "Classical, tie and fatal-shock signatures");
  sig_cmd->add_option("network", sig_args.network, "Network description file")->required();
  sig_cmd->add_option("--kind", sig_args.kind, "classical | tie | fatal | all")
      ->check(CLI::IsMember({"classical", "tie", "fatal", "all"}));
  sig_cmd->add_option("--mc", sig_args.mc, "Estimate by sampling this many ordered partitions");
  sig_cmd->add_option("--seed", sig_args.seed, "Seed for --mc");
  sig_cmd->add_option("--limit", sig_args.limit, "Exact enumeration limit on the number of links");
  sig_cmd->add_option("-o,--output", sig_args.output, "Output CSV (default stdout)");

  const std::string law_help =
      "First-arrival law: exp:rate=R | weibull:shape=K,scale=S | linhaz:a=A,b=B | mvf:file=PATH. "
      "linhaz has hazard a+2bt, i.e. Lambda(t)=a t+b t^2; linhaz:a=1,b=1 gives Gbar(t)=exp(-t-t^2)";
  const std::string grid_help = "auto | auto:N | start:stop:N | t1,t2,...";

  CurveArgs rel_args;
  auto* rel_cmd = app.add_subcommand("reliability", "Reliability curve P(T > t)");
  add_model_input(rel_cmd, rel_args.input);
  rel_cmd->add_option("--law", rel_args.law, law_help)->required();
  rel_cmd->add_option("--damage", rel_args.damage, "binomial:p=P | one-per-shock | fatal");
  rel_cmd->add_option("--grid", rel_args.grid, grid_help);
  rel_cmd->add_option("--model", rel_args.model, "shock | component | fatal")
      ->check(CLI::IsMember({"shock", "component", "fatal"}));
  rel_cmd->add_option("-o,--output", rel_args.output, "Output CSV (default stdout)");

  CurveArgs hz_args;
  auto* hz_cmd = app.add_subcommand("hazard", "Hazard rate of the shock-model lifetime");
  add_model_input(hz_cmd, hz_args.input);
  hz_cmd->add_option("--law", hz_args.law, law_help)->required();
  hz_cmd->add_option("--damage", hz_args.damage, "binomial:p=P | one-per-shock")->required();
  hz_cmd->add_option("--grid", hz_args.grid, grid_help);
  hz_cmd->add_option("-o,--output", hz_args.output, "Output CSV (default stdout)");

  CheckArgs chk_args;
  double q_value = 0, p_value = 0;
  std::size_t k_value = 0;
  auto* chk_cmd = app.add_subcommand("check", "Aging and total-positivity checks");
  chk_cmd->add_option("network", chk_args.network, "Network description file");
  chk_cmd->add_option("--check", chk_args.check, "ihra | ihr-ratio | tp2")
      ->required()
      ->check(CLI::IsMember({"ihra", "ihr-ratio", "tp2"}));
  auto* q_opt = chk_cmd->add_option("--q", q_value, "Per-shock survival probability of a link");
  auto* p_opt = chk_cmd->add_option("--p", p_value, "Per-shock failure probability of a link");
  auto* k_opt = chk_cmd->add_option("--K", k_value, "Largest shock count examined");
  chk_cmd->add_option("--law", chk_args.law, law_help);
  chk_cmd->add_option("--grid", chk_args.grid, grid_help);

  CompareArgs cmp_args;
  auto* cmp_cmd = app.add_subcommand("compare", "Stochastic comparison of two shock models");
  cmp_cmd->add_option("--net1", cmp_args.first.net_path, "Network file of model 1");
  cmp_cmd->add_option("--sig1", cmp_args.first.sig_path, "Signature CSV of model 1");
  cmp_cmd->add_option("--net2", cmp_args.second.net_path, "Network file of model 2");
  cmp_cmd->add_option("--sig2", cmp_args.second.sig_path, "Signature CSV of model 2");
  cmp_cmd->add_option("--law1", cmp_args.law1, law_help)->required();
  cmp_cmd->add_option("--law2", cmp_args.law2, law_help)->required();
  cmp_cmd->add_option("--damage1", cmp_args.damage1, "binomial:p=P | one-per-shock")->required();
  cmp_cmd->add_option("--damage2", cmp_args.damage2, "binomial:p=P | one-per-shock")->required();
  cmp_cmd->add_option("--grid", cmp_args.grid, grid_help);

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo reliability curve");
  add_model_input(sim_cmd, sim_args.input);
  sim_cmd->add_option("--law", sim_args.law, law_help)->required();
  sim_cmd->add_option("--damage", sim_args.damage, "binomial:p=P | one-per-shock | fatal");
  sim_cmd->add_option("--mode", sim_args.mode, "model-faithful | mechanistic")
      ->check(CLI::IsMember({"model-faithful", "mechanistic"}));
  sim_cmd->add_option("--trials", sim_args.trials, "Number of simulated lifetimes");
  sim_cmd->add_option("--seed", sim_args.seed, "Seed; identical seeds give identical output");
  sim_cmd->add_option("--grid", sim_args.grid, grid_help);
  sim_cmd->add_option("-o,--output", sim_args.output, "Output CSV (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string manifest = join_args(args);
  try {
    if (*sig_cmd) {
      if (sig_args.mc == 0 && sig_cmd->count("--seed"))
        throw ValidationError("--seed only applies with --mc");
      cmd_signature(sig_args, manifest, out);
    } else if (*rel_cmd) {
      cmd_reliability(rel_args, manifest, out);
    } else if (*hz_cmd) {
      cmd_hazard(hz_args, manifest, out, err);
    } else if (*chk_cmd) {
      if (*q_opt) chk_args.q = q_value;
      if (*p_opt) chk_args.p = p_value;
      if (*k_opt) chk_args.K = k_value;
      cmd_check(chk_args, out);
    } else if (*cmp_cmd) {
      cmd_compare(cmp_args, out);
    } else if (*sim_cmd) {
      if (sim_args.trials == 0) throw ValidationError("--trials must be at least 1");
      cmd_simulate(sim_args, manifest, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace shocknet::cli
