#include "sdperc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sdperc/catastrophe.hpp"
#include "sdperc/coloring.hpp"
#include "sdperc/error.hpp"
#include "sdperc/estimator.hpp"
#include "sdperc/lattice.hpp"
#include "sdperc/oracle.hpp"
#include "sdperc/sdp.hpp"
#include "sdperc/table.hpp"

#ifndef SDPERC_VERSION
#define SDPERC_VERSION "0.0.0"
#endif

namespace sdperc::cli {

namespace {

struct Options {
  std::string lattice = "square-site";
  int L = 32;
  std::vector<int> L_list;
  double p = -1.0;
  std::vector<double> p_grid;
  double delta = -1.0;
  std::vector<double> delta_grid;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string proxy = "spans";
  std::string event = "spanning";
  unsigned threads = 1;
  double tol = 0.005;
  double epsilon = -1.0;
  double pc = -1.0;
  int pc_L = 64;
  std::int64_t pc_trials = 10000;
  std::string patch_spec = "2:3";
  std::string mode = "patch";
  double q = -1.0;
  bool allow_subcritical = false;
  std::string out_path;
  std::string config_path;
};

// Rows plus the "# ..." provenance line written above them.
struct Output {
  std::vector<std::pair<std::string, std::string>> header;
  Table table;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

bool flag_given(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

// Config-file pairs become flags unless the command line already sets them.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  auto kv = read_config_file(*path);
  std::vector<std::string> extra;
  for (const auto& [key, value] : kv) {
    if (key == "config") throw UsageError("config files cannot include other config files");
    if (flag_given(args, key)) continue;
    extra.push_back("--" + key);
    extra.push_back(value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("SDPERC_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || env[0] == '-')
    throw UsageError(std::string("SDPERC_SEED is not an unsigned integer: '") + env + "'");
  return v;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_real(v[i]);
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void require_p(double p, const char* name = "--p") {
  require(p >= 0.0 && p <= 1.0, std::string(name) + " must be given and lie in [0,1]");
}

std::string site_label(const FiniteGraph& g, FiniteGraph::Index v, FiniteGraph::Index center) {
  Vertex a = g.vertex(v), c = g.vertex(center);
  return std::to_string(a.x - c.x) + ":" + std::to_string(a.y - c.y);
}

std::string patch_label(const FiniteGraph& g, const std::vector<FiniteGraph::Index>& F,
                        FiniteGraph::Index v) {
  std::string s;
  for (std::size_t i = 0; i < F.size(); ++i) s += (i ? ";" : "") + site_label(g, F[i], v);
  return s;
}

std::string pattern_label(const std::vector<std::uint8_t>& pattern) {
  std::string s;
  for (auto b : pattern) s += b ? '1' : '0';
  return s;
}

std::pair<int, int> parse_patch_spec(const std::string& spec) {
  auto colon = spec.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("no colon");
    std::size_t used = 0;
    int radius = std::stoi(spec.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("radius");
    std::string rest = spec.substr(colon + 1);
    int size = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("size");
    require(radius >= 0 && size >= 1 && size <= 16,
            "--patch-spec needs radius >= 0 and 1 <= size <= 16");
    return {radius, size};
  } catch (const std::logic_error&) {
    throw UsageError("--patch-spec must look like RADIUS:MAXSIZE, got '" + spec + "'");
  }
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kSimulateColumns = {
    "lattice", "L", "p", "delta", "trials", "seed",
    "theta_hat", "theta_stderr", "spanning_hat", "spanning_stderr"};

void simulate_row(Table& t, LatticeKind kind, int L, double p, double delta, const Options& o,
                  InfinityProxy proxy) {
  FiniteGraph g = build_box(kind, L);
  SimulationResult r = simulate(g, {p, delta, o.seed, o.trials}, proxy, o.threads);
  t.add_row({std::string(to_string(kind)), std::to_string(L), format_real(p), format_real(delta),
             std::to_string(o.trials), std::to_string(o.seed), format_real(r.theta.value),
             format_real(r.theta.std_error), format_real(r.spanning.value),
             format_real(r.spanning.std_error)});
}

Output cmd_simulate(const Options& o, std::ostream& err) {
  require_p(o.p);
  require_p(o.delta, "--delta");
  LatticeKind kind = parse_lattice_kind(o.lattice);
  Output out;
  out.header = {{"lattice", o.lattice}, {"L", std::to_string(o.L)}, {"p", format_real(o.p)},
                {"delta", format_real(o.delta)}, {"trials", std::to_string(o.trials)},
                {"infinity-proxy", o.proxy}};
  out.table.columns = kSimulateColumns;
  err << "simulate: " << o.lattice << " L=" << o.L << '\n';
  simulate_row(out.table, kind, o.L, o.p, o.delta, o, parse_infinity_proxy(o.proxy));
  return out;
}

Output cmd_sweep(const Options& o, std::ostream& err) {
  require(!o.p_grid.empty(), "sweep needs --p-grid");
  require(!o.delta_grid.empty(), "sweep needs --delta-grid");
  for (double p : o.p_grid) require_p(p, "--p-grid values");
  for (double d : o.delta_grid) require_p(d, "--delta-grid values");
  std::vector<int> sizes = o.L_list.empty() ? std::vector<int>{o.L} : o.L_list;
  LatticeKind kind = parse_lattice_kind(o.lattice);
  InfinityProxy proxy = parse_infinity_proxy(o.proxy);
  for (int L : sizes) require(L >= 1, "L values must be positive");
  Output out;
  out.header = {{"lattice", o.lattice}, {"L-list", join(sizes)}, {"p-grid", join(o.p_grid)},
                {"delta-grid", join(o.delta_grid)}, {"trials", std::to_string(o.trials)},
                {"infinity-proxy", o.proxy}};
  out.table.columns = kSimulateColumns;
  for (int L : sizes)
    for (double p : o.p_grid)
      for (double d : o.delta_grid) {
        err << "sweep: L=" << L << " p=" << p << " delta=" << d << '\n';
        simulate_row(out.table, kind, L, p, d, o, proxy);
      }
  return out;
}

Output cmd_estimate_pc(const Options& o, std::ostream& err) {
  std::vector<int> sizes = o.L_list.empty() ? std::vector<int>{o.L} : o.L_list;
  LatticeKind kind = parse_lattice_kind(o.lattice);
  Output out;
  out.header = {{"lattice", o.lattice}, {"L-list", join(sizes)},
                {"trials", std::to_string(o.trials)}, {"tol", format_real(o.tol)}};
  out.table.columns = {"lattice", "L",     "trials", "seed",  "pc_hat",
                       "uncertainty", "lower", "upper",  "steps", "method"};
  for (int L : sizes) {
    err << "estimate-pc: " << o.lattice << " L=" << L << '\n';
    CriticalEstimate e = estimate_pc(kind, L, o.trials, o.tol, o.seed, o.threads);
    out.table.add_row({o.lattice, std::to_string(L), std::to_string(o.trials),
                       std::to_string(o.seed), format_real(e.value), format_real(e.uncertainty),
                       format_real(e.lower), format_real(e.upper), std::to_string(e.steps),
                       e.method});
  }
  return out;
}

Output cmd_estimate_deltac(const Options& o, std::ostream& err) {
  require(o.p >= 0.0 || !o.p_grid.empty(), "estimate-deltac needs --p or --p-grid");
  require(!(o.p >= 0.0 && !o.p_grid.empty()), "--p and --p-grid are mutually exclusive");
  std::vector<double> ps = o.p_grid.empty() ? std::vector<double>{o.p} : o.p_grid;
  for (double p : ps) require_p(p);
  LatticeKind kind = parse_lattice_kind(o.lattice);
  DeltaCOptions dco;
  dco.proxy = parse_infinity_proxy(o.proxy);
  dco.event = parse_crossing_event(o.event);
  dco.threads = o.threads;
  if (o.pc >= 0.0) dco.p_c = o.pc;
  Output out;
  out.header = {{"lattice", o.lattice}, {"L", std::to_string(o.L)}, {"p-grid", join(ps)},
                {"trials", std::to_string(o.trials)}, {"tol", format_real(o.tol)},
                {"event", o.event}, {"infinity-proxy", o.proxy},
                {"pc", o.pc >= 0.0 ? format_real(o.pc) : "none"}};
  out.table.columns = {"lattice", "L",           "p",     "trials", "seed", "event",
                       "deltac_hat", "uncertainty", "lower", "upper",  "steps"};
  for (double p : ps) {
    err << "estimate-deltac: " << o.lattice << " L=" << o.L << " p=" << p << '\n';
    CriticalEstimate e = estimate_delta_c(kind, p, o.L, o.trials, o.tol, o.seed, dco);
    out.table.add_row({o.lattice, std::to_string(o.L), format_real(p), std::to_string(o.trials),
                       std::to_string(o.seed), o.event, format_real(e.value),
                       format_real(e.uncertainty), format_real(e.lower), format_real(e.upper),
                       std::to_string(e.steps)});
  }
  return out;
}

Output cmd_bound_report(const Options& o, std::ostream& err) {
  require(!o.p_grid.empty(), "bound-report needs --p-grid");
  std::vector<int> sizes = o.L_list.empty() ? std::vector<int>{o.L} : o.L_list;
  LatticeKind kind = parse_lattice_kind(o.lattice);
  BoundReportOptions bro;
  bro.tol = o.tol;
  bro.proxy = parse_infinity_proxy(o.proxy);
  bro.event = parse_crossing_event(o.event);
  bro.threads = o.threads;
  Output out;
  out.header = {{"lattice", o.lattice}, {"L-list", join(sizes)}, {"p-grid", join(o.p_grid)},
                {"trials", std::to_string(o.trials)}, {"tol", format_real(o.tol)},
                {"event", o.event}, {"infinity-proxy", o.proxy}};
  err << "bound-report: " << o.lattice << " (" << sizes.size() << " sizes, " << o.p_grid.size()
      << " p values)\n";
  out.table = bound_report(kind, o.p_grid, sizes, o.trials, o.seed, bro);
  return out;
}

double resolve_pc(const Options& o, LatticeKind kind, std::ostream& err) {
  if (o.pc >= 0.0) return o.pc;
  err << "estimating p_c for " << o.lattice << " at L=" << o.pc_L << '\n';
  return estimate_pc(kind, o.pc_L, o.pc_trials, o.tol, o.seed, o.threads).value;
}

Output cmd_verify_lemma(const Options& o, std::ostream& err) {
  require_p(o.p);
  require_p(o.delta, "--delta");
  LatticeKind kind = parse_lattice_kind(o.lattice);
  auto [radius, size] = parse_patch_spec(o.patch_spec);
  const double eps = o.epsilon > 0.0 ? o.epsilon : (1.0 - o.p) / 2.0;
  const double pc = resolve_pc(o, kind, err);
  FiniteGraph g = build_box(kind, o.L);
  const auto v = g.origin();
  Output out;
  out.header = {{"lattice", o.lattice}, {"L", std::to_string(o.L)}, {"p", format_real(o.p)},
                {"delta", format_real(o.delta)}, {"epsilon", format_real(eps)},
                {"pc", format_real(pc)}, {"patch-spec", o.patch_spec}};
  out.table.columns = {"patch", "pattern", "case",        "conditional",
                       "bound", "ratio",   "tight_bound", "pass"};
  auto family = patch_family(g, v, radius, size, true);
  err << "verify-lemma: " << family.size() << " patches\n";
  for (const auto& F : family) {
    LemmaReport rep = verify_lemma_bound(g, v, F, o.p, o.delta, eps, pc);
    for (const auto& row : rep.rows)
      out.table.add_row({patch_label(g, F, v), pattern_label(row.pattern),
                         std::string(to_string(row.lemma_case)), format_real(row.conditional),
                         format_real(row.bound), format_real(row.ratio),
                         format_real(row.tight_bound), format_flag(row.pass)});
  }
  return out;
}

Output cmd_verify_domination(const Options& o, std::ostream& err) {
  require_p(o.p);
  require(o.mode == "patch" || o.mode == "scale", "--mode must be patch or scale");
  require(!(o.delta >= 0.0 && o.q >= 0.0), "--delta and --q are mutually exclusive");
  require(o.delta >= 0.0 || o.q >= 0.0, "verify-domination needs --delta or --q");
  LatticeKind kind = parse_lattice_kind(o.lattice);
  const double eps = o.epsilon > 0.0 ? o.epsilon : (1.0 - o.p) / 2.0;
  const double pc = resolve_pc(o, kind, err);
  FiniteGraph g = build_box(kind, o.L);
  LemmaConstant c = lemma_constant(eps, pc, g.degree());
  const double delta = o.delta >= 0.0 ? o.delta : delta_for_domination_level(o.p, o.q, c);
  Output out;
  out.header = {{"lattice", o.lattice}, {"L", std::to_string(o.L)}, {"p", format_real(o.p)},
                {"delta", format_real(delta)}, {"epsilon", format_real(eps)},
                {"pc", format_real(pc)}, {"mode", o.mode}};
  if (o.mode == "patch") {
    auto [radius, size] = parse_patch_spec(o.patch_spec);
    out.header.emplace_back("patch-spec", o.patch_spec);
    out.table.columns = {"patch", "pattern", "conditional", "lower_bound", "margin", "pass"};
    const auto v = g.origin();
    auto family = patch_family(g, v, radius, size, false);
    err << "verify-domination: " << family.size() << " patches\n";
    for (const auto& F : family) {
      DominationPatchReport rep = verify_domination_patch(g, v, F, o.p, delta, eps, pc);
      for (const auto& row : rep.rows)
        out.table.add_row({patch_label(g, F, v), pattern_label(row.pattern),
                           format_real(row.conditional), format_real(rep.lower_bound),
                           format_real(row.conditional - rep.lower_bound), format_flag(row.pass)});
    }
  } else {
    out.header.emplace_back("trials", std::to_string(o.trials));
    out.header.emplace_back("allow-subcritical", o.allow_subcritical ? "1" : "0");
    out.table.columns = {"lattice", "L", "p", "delta", "epsilon", "pc", "q",
                         "red_spanning", "red_stderr", "iid_spanning", "iid_stderr",
                         "combined_sigma", "pass"};
    err << "verify-domination: scale check at L=" << o.L << '\n';
    DominationScaleReport r = verify_domination_scale(g, o.p, delta, eps, pc, o.trials, o.seed,
                                                      o.threads, o.allow_subcritical);
    out.table.add_row({o.lattice, std::to_string(o.L), format_real(o.p), format_real(delta),
                       format_real(eps), format_real(pc), format_real(r.q),
                       format_real(r.red_spanning.value), format_real(r.red_spanning.std_error),
                       format_real(r.iid_spanning.value), format_real(r.iid_spanning.std_error),
                       format_real(r.combined_sigma), format_flag(r.pass)});
  }
  return out;
}

Output cmd_oracle(const Options& o, std::ostream& err) {
  require_p(o.p);
  require_p(o.delta, "--delta");
  LatticeKind kind = parse_lattice_kind(o.lattice);
  OracleEvent event = parse_oracle_event(o.event);
  InfinityProxy proxy = parse_infinity_proxy(o.proxy);
  FiniteGraph g = build_box(kind, o.L);
  Output out;
  out.header = {{"lattice", o.lattice}, {"L", std::to_string(o.L)}, {"p", format_real(o.p)},
                {"delta", format_real(o.delta)}, {"event", o.event}, {"infinity-proxy", o.proxy}};
  out.table.columns = {"lattice", "L", "p", "delta", "infinity_proxy", "event", "probability",
                       "configurations"};
  err << "oracle: enumerating " << g.vertex_count() << " sites\n";
  ExactResult r = enumerate_event(g, o.p, o.delta, proxy, event);
  out.table.add_row({o.lattice, std::to_string(o.L), format_real(o.p), format_real(o.delta),
                     o.proxy, r.event, format_real(r.probability),
                     std::to_string(r.configurations)});
  return out;
}

void write_output(const std::string& command, const Options& o, const Output& result,
                  std::ostream& os) {
  os << "# sdperc " << SDPERC_VERSION << " command=" << command;
  for (const auto& [k, v] : result.header) os << ' ' << k << '=' << v;
  os << " seed=" << o.seed << '\n';
  result.table.write_csv(os);
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  try {
    o.seed = default_seed();
    std::vector<std::string> args = merge_config(raw_args);

    CLI::App app{"Self-destructive percolation simulator", "sdperc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SDPERC_VERSION);

    auto common = [&](CLI::App* sub) {
      sub->add_option("--lattice", o.lattice, "lattice kind")
          ->check(CLI::IsMember({"square-site", "square-bond", "triangular-site",
                                 "triangular-bond", "star-square-site", "star-honeycomb-site",
                                 "honeycomb-site"}));
      sub->add_option("--seed", o.seed, "master seed (default $SDPERC_SEED or 1)");
      sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
      sub->add_option("--out", o.out_path, "write CSV here instead of standard output");
      sub->add_option("--config", o.config_path, "key=value file; flags override it");
    };
    auto proxy = [&](CLI::App* sub) {
      sub->add_option("--infinity-proxy", o.proxy, "spans|touches")
          ->check(CLI::IsMember({"spans", "touches"}));
    };

    auto* simulate_cmd = app.add_subcommand("simulate", "theta and spanning estimates at one point");
    common(simulate_cmd);
    proxy(simulate_cmd);
    simulate_cmd->add_option("--L", o.L, "box side");
    simulate_cmd->add_option("--p", o.p, "occupation probability")->required();
    simulate_cmd->add_option("--delta", o.delta, "enhancement probability")->required();
    simulate_cmd->add_option("--trials", o.trials, "samples");

    auto* sweep_cmd = app.add_subcommand("sweep", "simulate over a grid");
    common(sweep_cmd);
    proxy(sweep_cmd);
    sweep_cmd->add_option("--L", o.L, "box side");
    sweep_cmd->add_option("--L-list", o.L_list, "box sides")->delimiter(',');
    sweep_cmd->add_option("--p-grid", o.p_grid, "p values")->delimiter(',')->required();
    sweep_cmd->add_option("--delta-grid", o.delta_grid, "delta values")->delimiter(',')->required();
    sweep_cmd->add_option("--trials", o.trials, "samples per cell");

    auto* pc_cmd = app.add_subcommand("estimate-pc", "spanning-crossing estimate of p_c");
    common(pc_cmd);
    pc_cmd->add_option("--L", o.L, "box side");
    pc_cmd->add_option("--L-list", o.L_list, "box sides")->delimiter(',');
    pc_cmd->add_option("--trials", o.trials, "samples");
    pc_cmd->add_option("--tol", o.tol, "bracket width");

    auto* dc_cmd = app.add_subcommand("estimate-deltac", "crossing estimate of delta_c(p)");
    common(dc_cmd);
    proxy(dc_cmd);
    dc_cmd->add_option("--L", o.L, "box side");
    dc_cmd->add_option("--p", o.p, "occupation probability");
    dc_cmd->add_option("--p-grid", o.p_grid, "p values")->delimiter(',');
    dc_cmd->add_option("--trials", o.trials, "samples");
    dc_cmd->add_option("--tol", o.tol, "bracket width");
    dc_cmd->add_option("--event", o.event, "spanning|theta")
        ->check(CLI::IsMember({"spanning", "theta"}));
    dc_cmd->add_option("--pc", o.pc, "reject p below this value");

    auto* br_cmd = app.add_subcommand("bound-report", "delta_c against the lower and upper bounds");
    common(br_cmd);
    proxy(br_cmd);
    br_cmd->add_option("--L", o.L, "box side");
    br_cmd->add_option("--L-list", o.L_list, "box sides")->delimiter(',');
    br_cmd->add_option("--p-grid", o.p_grid, "p values")->delimiter(',')->required();
    br_cmd->add_option("--trials", o.trials, "samples");
    br_cmd->add_option("--tol", o.tol, "bracket width");
    br_cmd->add_option("--event", o.event, "spanning|theta")
        ->check(CLI::IsMember({"spanning", "theta"}));

    auto lemma_flags = [&](CLI::App* sub) {
      sub->add_option("--L", o.L, "box side holding the patch");
      sub->add_option("--p", o.p, "occupation probability")->required();
      sub->add_option("--epsilon", o.epsilon, "lemma epsilon (default (1-p)/2)");
      sub->add_option("--pc", o.pc, "p_c value (default: estimated)");
      sub->add_option("--pc-L", o.pc_L, "box side for the p_c estimate");
      sub->add_option("--pc-trials", o.pc_trials, "samples for the p_c estimate");
      sub->add_option("--tol", o.tol, "bracket width for the p_c estimate");
      sub->add_option("--patch-spec", o.patch_spec, "RADIUS:MAXSIZE patch family around the origin");
    };
    auto* lemma_cmd = app.add_subcommand("verify-lemma", "exact conditional Y bound on patches");
    common(lemma_cmd);
    lemma_flags(lemma_cmd);
    lemma_cmd->add_option("--delta", o.delta, "enhancement probability")->required();

    auto* dom_cmd = app.add_subcommand("verify-domination", "red process against i.i.d. fields");
    common(dom_cmd);
    lemma_flags(dom_cmd);
    dom_cmd->add_option("--delta", o.delta, "enhancement probability");
    dom_cmd->add_option("--q", o.q, "choose delta so the domination level equals q");
    dom_cmd->add_option("--mode", o.mode, "patch|scale")->check(CLI::IsMember({"patch", "scale"}));
    dom_cmd->add_option("--trials", o.trials, "samples for the scale check");
    dom_cmd->add_flag("--allow-subcritical", o.allow_subcritical,
                      "run the scale check even when q <= p_c");

    auto* oracle_cmd = app.add_subcommand("oracle", "exact probability by enumeration");
    common(oracle_cmd);
    proxy(oracle_cmd);
    oracle_cmd->add_option("--L", o.L, "box side")->required();
    oracle_cmd->add_option("--p", o.p, "occupation probability")->required();
    oracle_cmd->add_option("--delta", o.delta, "enhancement probability")->required();
    oracle_cmd->add_option("--event", o.event, "theta|spanning|origin|always")
        ->check(CLI::IsMember({"theta", "spanning", "origin", "always"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::CallForVersion& e) {
      out << SDPERC_VERSION << '\n';
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      throw UsageError(e.what());
    }

    require(o.trials >= 1, "--trials must be at least 1");
    require(o.L >= 1, "--L must be positive");

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    Output result;
    if (command == "simulate") result = cmd_simulate(o, err);
    else if (command == "sweep") result = cmd_sweep(o, err);
    else if (command == "estimate-pc") result = cmd_estimate_pc(o, err);
    else if (command == "estimate-deltac") result = cmd_estimate_deltac(o, err);
    else if (command == "bound-report") result = cmd_bound_report(o, err);
    else if (command == "verify-lemma") result = cmd_verify_lemma(o, err);
    else if (command == "verify-domination") result = cmd_verify_domination(o, err);
    else result = cmd_oracle(o, err);

    std::ostringstream buffer;
    write_output(command, o, result, buffer);
    if (o.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot open --out file '" + o.out_path + "'");
      file << buffer.str();
      if (!file) throw NumericalError("failed writing '" + o.out_path + "'");
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error,usage," << csv_quote(e.what()) << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "error,numerical," << csv_quote(e.what()) << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error,numerical," << csv_quote(e.what()) << '\n';
    return kExitNumerical;
  }
}

}  // namespace sdperc::cli
