#include "sdf/arcs.hpp"
#include "sdf/increment.hpp"
#include "sdf/level_d.hpp"
#include "sdf/lower_bound.hpp"
#include "sdf/report.hpp"
#include "sdf/sets.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace sdf;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kPrecondition = 3 };

struct Outcome {
  Json result;
  int exit = kOk;
};

struct Globals {
  std::string format;
  std::uint64_t seed = 0;
  std::string cache_dir;
  bool no_cache = false;
  bool verbose = false;
};

// Portable uniform doubles in [0, 1) from a seeded engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const auto v = std::stoll(item, &used);
    if (used != item.size()) throw Error(ErrorKind::InvalidArgument, "bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::int64_t> read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::vector<std::int64_t> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const auto token = line.substr(first, last - first + 1);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw Error(ErrorKind::InvalidArgument, "bad line '" + token + "' in " + path);
    out.push_back(v);
  }
  return out;
}

// Indicator of a random subset of [X] with each element kept with probability alpha.
std::vector<Complex> random_indicator(std::int64_t big_x, double alpha, Rng& rng) {
  std::vector<Complex> f(static_cast<std::size_t>(big_x));
  for (auto& v : f) v = rng.uniform() < alpha ? 1.0 : 0.0;
  return f;
}

std::vector<Complex> indicator_from_file(const std::string& path, std::int64_t big_x) {
  std::vector<Complex> f(static_cast<std::size_t>(big_x), 0.0);
  for (auto e : read_set_file(path)) {
    if (e < 1 || e > big_x) throw Error(ErrorKind::OutOfUniverse, "element " + std::to_string(e) + " outside [1, X]");
    f[static_cast<std::size_t>(e - 1)] = 1.0;
  }
  return f;
}

Json progression_json(const Progression& p) { return {{"start", p.start}, {"step", p.step}, {"length", p.length}}; }

Json violated_json(bool in_regime, const std::vector<std::string>& violated) {
  return {{"in_regime", in_regime}, {"violated", violated}};
}

int exit_for(const Error& e) {
  return e.kind() == ErrorKind::InvalidArgument ? kUsage : kPrecondition;
}

// --- sets -------------------------------------------------------------------

Outcome sets_greedy(std::int64_t limit, std::int64_t start) {
  const auto g = greedy_sequence(limit, start);
  return {{{"size", g.size()}, {"elements", g.elements()}}};
}

Outcome sets_exact(std::int64_t x, std::int64_t cap) {
  const auto r = max_sdf_exact(x, {cap});
  return {{{"x", x}, {"size", r.size}, {"elements", r.witness.elements()}, {"table", r.table}}};
}

Outcome sets_check(const std::string& file, std::int64_t x) {
  auto elements = read_set_file(file);
  std::int64_t universe = x;
  for (auto e : elements) universe = std::max(universe, e);
  const IntegerSet a(elements, universe);
  const auto sq = find_square_difference(a);
  Json out{{"size", a.size()}, {"elements", a.elements()}, {"square_difference_free", !sq}};
  out["witness"] = sq ? Json{{"larger", sq->larger}, {"smaller", sq->smaller}, {"root", sq->root}} : Json(nullptr);
  const bool positive = a.empty() || a.elements().front() >= 1;
  out["weighted_square_count"] = positive ? Json(weighted_square_count(a, universe)) : Json(nullptr);
  return {out, sq ? kFailed : kOk};
}

// --- fourier ----------------------------------------------------------------

Outcome fourier_energy(std::int64_t x, double alpha, int d, const std::string& moduli, double offset,
                       const std::string& file, std::uint64_t seed) {
  if (x < 1) throw Error(ErrorKind::InvalidArgument, "X must be >= 1");
  const ModulusSet q(parse_list(moduli));
  Rng rng(seed);
  const auto f = file.empty() ? random_indicator(x, alpha, rng) : indicator_from_file(file, x);
  const double direct = level_d_energy(f, q, d, offset);
  Json out{{"x", x}, {"d", d}, {"moduli", q.moduli()}, {"offset", offset}, {"energy", direct}};
  try {
    const double lifted = level_d_energy_lifted(f, q, d, offset);
    out["energy_lifted"] = lifted;
    out["relative_mismatch"] = std::abs(lifted - direct) / std::max(1.0, std::abs(direct));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInjective) throw;
    out["energy_lifted"] = nullptr;
    out["relative_mismatch"] = nullptr;
  }
  const auto gp = global_params(alpha, d);
  out["bound"] = static_cast<double>(x) * static_cast<double>(x) * gp.gamma * gp.gamma;
  return {out};
}

Outcome fourier_dichotomy(std::int64_t x, double alpha, int d, const std::string& moduli, bool relaxed,
                          const std::string& file, std::uint64_t seed) {
  if (x < 1) throw Error(ErrorKind::InvalidArgument, "X must be >= 1");
  const ModulusSet q(parse_list(moduli));
  Rng rng(seed);
  const auto f = file.empty() ? random_indicator(x, alpha, rng) : indicator_from_file(file, x);
  DichotomyOptions opt;
  opt.regime = relaxed ? Regime::Relaxed : Regime::Strict;
  const auto v = level_d_dichotomy(f, q, alpha, d, opt);
  Json out{{"x", x}, {"d", d}, {"alpha", alpha}, {"moduli", q.moduli()}, {"clause", to_string(v.clause)},
           {"energy", v.energy}, {"bound", v.bound}};
  if (v.witness)
    out["witness"] = {{"subset", v.witness->subset}, {"residue", v.witness->residue},
                      {"class_size", v.witness->class_size}, {"density", v.witness->density},
                      {"threshold", v.witness->threshold}};
  else
    out["witness"] = nullptr;
  out["regime"] = violated_json(v.in_regime, v.violated);
  return {out, v.clause == DichotomyClause::BothFailed ? kFailed : kOk};
}

Outcome fourier_hyper(const std::string& moduli, int support, double r, double gamma, std::uint64_t seed) {
  const ModulusSet q(parse_list(moduli));
  const auto order = q.order();
  if (support < 1 || support > order) throw Error(ErrorKind::InvalidArgument, "support must lie in [1, |G|]");
  Rng rng(seed);
  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(order);
  for (int k = 0; k < support; ++k) {
    const auto at = static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(order));
    values(at) = Complex(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
  }
  const GroupFunction f(q, values);
  const auto schedule = standard_schedule(r);
  const double g = gamma > 0 ? gamma : fitted_gamma(f, r);
  const auto rep = hypercontractivity_verify(f, r, g, schedule.p, schedule.rho);
  Json out{{"moduli", q.moduli()}, {"r", r}, {"gamma", g}, {"m", schedule.m}, {"p", schedule.p},
           {"rho", schedule.rho}, {"rho_max", rep.rho_max}, {"lhs", rep.lhs}, {"rhs", rep.rhs}, {"pass", rep.pass},
           {"function", group_function_json(f)}};
  return {out, rep.pass ? kOk : kFailed};
}

// --- circle -----------------------------------------------------------------

Outcome circle_spectrum(std::int64_t x, std::int64_t grid, const std::string& arcs_spec) {
  if (grid < 1) throw Error(ErrorKind::InvalidArgument, "theta grid must be >= 1");
  std::optional<ArcDecomposition> arcs;
  if (!arcs_spec.empty()) {
    const auto comma = arcs_spec.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--arcs expects alpha,C1");
    arcs.emplace(std::stod(arcs_spec.substr(0, comma)), x, std::stod(arcs_spec.substr(comma + 1)));
  }
  Json rows = Json::array();
  for (std::int64_t k = 0; k < grid; ++k) {
    const double theta = static_cast<double>(k) / static_cast<double>(grid);
    // g is even, so its transform is real.
    Json row{{"theta", theta}, {"re", square_weight_spectrum(theta, x)}, {"im", 0.0}};
    if (arcs) {
      const auto hit = arcs->locate(theta);
      row["major"] = hit.has_value();
      row["q"] = hit ? hit->q : 0;
    }
    rows.push_back(row);
  }
  Json out{{"x", x}, {"grid", grid}};
  if (arcs) out["arcs"] = {{"tau", arcs->tau()}, {"max_denominator", arcs->max_denominator()},
                           {"overlapping", arcs->overlapping()}};
  out["rows"] = rows;
  return {out};
}

Outcome circle_weyl(double theta, std::int64_t x, double delta, double c, double c_fit) {
  const double measured = quadratic_average(theta, x);
  const double d = delta > 0 ? delta : measured;
  const auto loc = weyl_locate(theta, d, x, {c, c_fit});
  Json out{{"theta", theta}, {"x", x}, {"delta", d}, {"average", loc.average}, {"q", loc.q}, {"a", loc.a},
           {"distance", loc.distance}, {"qcap", loc.qcap}, {"q_constant", loc.q_constant},
           {"distance_constant", loc.distance_constant}, {"c_fit", c_fit}, {"pass", loc.pass}};
  return {out, loc.pass ? kOk : kFailed};
}

Outcome circle_gauss(std::int64_t a, std::int64_t q) {
  const auto g = gauss_sum(a, q);
  Json out{{"a", a}, {"q", q}, {"re", g.real()}, {"im", g.imag()}, {"abs", std::abs(g)},
           {"sqrt_q", std::sqrt(static_cast<double>(q))}};
  if (q > 2 && is_prime(q)) {
    const auto direct = square_indicator_fourier(a, q);
    const auto via_gauss = square_indicator_fourier_gauss(a, q);
    out["square_indicator"] = {{"direct", {direct.real(), direct.imag()}},
                               {"gauss", {via_gauss.real(), via_gauss.imag()}}};
  } else {
    out["square_indicator"] = nullptr;
  }
  return {out};
}

// --- increment --------------------------------------------------------------

Outcome increment_run(const std::string& file, std::int64_t x, double c0, double c1, int xi_steps) {
  const IntegerSet a(read_set_file(file), x);
  DriverOptions opt;
  opt.constants.c = c0;
  opt.c1 = c1;
  opt.xi_steps = xi_steps;
  const auto outcome = increment_driver(a, x, opt);
  Json out{{"x", x}, {"size", a.size()}};
  const Rational alpha(static_cast<std::int64_t>(a.size()), x);
  out["alpha"] = to_double(alpha);
  out["alpha_num"] = numerator(alpha).str();
  out["alpha_den"] = denominator(alpha).str();
  if (const auto* w = std::get_if<IncrementWitness>(&outcome)) {
    std::vector<std::string> satisfied;
    for (auto c : w->satisfied) satisfied.emplace_back(to_string(c));
    out["clause"] = to_string(w->clause);
    out["satisfied"] = satisfied;
    out["progression"] = progression_json(w->progression);
    out["density_num"] = numerator(w->measured).str();
    out["density_den"] = denominator(w->measured).str();
    out["density"] = to_double(w->measured);
    out["claimed_num"] = numerator(w->claimed).str();
    out["claimed_den"] = denominator(w->claimed).str();
    out["route"] = w->route;
    out["q"] = w->q;
    out["xi"] = w->xi;
    out["eta"] = w->eta;
    out["reverified"] = reverify(*w, a, x);
    return {out};
  }
  if (const auto* c = std::get_if<SmallDensityCertificate>(&outcome)) {
    out["clause"] = to_string(IncrementClause::C1);
    out["certificate"] = {{"threshold", c->threshold}, {"c", c->c}, {"shape", c->shape}};
    return {out};
  }
  const auto& none = std::get<NoWitnessReport>(outcome);
  out["clause"] = "none";
  out["error"] = to_string(ErrorKind::NoWitnessFound);
  Json profile = Json::array();
  for (const auto& s : none.profile)
    profile.push_back({{"q", s.q}, {"xi", s.xi}, {"single_eta", s.single_eta}, {"l2_eta", s.l2_eta}});
  out["profile"] = profile;
  return {out, kFailed};
}

Outcome increment_bound(double x, double c0, int points) {
  if (points < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 points");
  bound_curve(x, c0);
  Json rows = Json::array();
  const double lo = std::log(10.0), hi = std::log(x);
  for (int i = 0; i < points; ++i) {
    const double lx = lo + (hi - lo) * i / (points - 1);
    const auto b = bound_curve(std::exp(lx), c0);
    rows.push_back({{"x", std::exp(lx)}, {"log_x", lx}, {"shape", b.shape}, {"bound", b.bound}});
  }
  return {{{"x", x}, {"c0", c0}, {"rows", rows}}};
}

// --- lowerbound -------------------------------------------------------------

Json lower_bound_json(const LowerBoundFunction& f) {
  const auto& t = f.trace();
  // Runs over one period f(1..N); the tail beyond N floor(X/N) is the constant alpha.
  Json runs = Json::array();
  const double c = to_double(f.c());
  for (std::int64_t x = 1; x <= f.n();) {
    const double v = c * f.psi_at(x % f.n());
    std::int64_t count = 1;
    while (x + count <= f.n() && c * f.psi_at((x + count) % f.n()) == v) ++count;
    runs.push_back({v, count});
    x += count;
  }
  Json out{{"x", f.x()}, {"n", f.n()}, {"c_num", numerator(f.c()).str()}, {"c_den", denominator(f.c()).str()},
           {"primes", f.primes()}, {"epsilon", to_double(f.eps())}, {"epsilon_num", numerator(f.eps()).str()},
           {"epsilon_den", denominator(f.eps()).str()}};
  out["values_rle"] = {{"period", f.n()}, {"repeats", f.x() / f.n()}, {"runs", runs},
                       {"tail", {to_double(f.alpha()), f.x() - f.periodic_end()}}};
  out["trace"] = {{"T", t.t}, {"C", t.c_constant}, {"epsilon_raw", t.eps_raw}, {"M", t.m}, {"M_used", t.m_used},
                  {"candidate_primes", t.primes}, {"epsilon_clamped", t.eps_clamped}, {"truncated", t.truncated},
                  {"violated", t.violated}};
  return out;
}

LowerBoundParams lb_params(double t, double c, bool strict) {
  LowerBoundParams p;
  if (t > 0) p.t = t;
  p.c = c;
  p.regime = strict ? Regime::Strict : Regime::Relaxed;
  return p;
}

Outcome lowerbound_build(std::int64_t x, const std::string& alpha, double t, double c, bool strict) {
  const auto f = build_lower_bound(x, parse_rational(alpha), lb_params(t, c, strict));
  return {lower_bound_json(f)};
}

Outcome lowerbound_verify(std::int64_t x, const std::string& alpha, double t, double c, bool strict) {
  const auto f = build_lower_bound(x, parse_rational(alpha), lb_params(t, c, strict));
  const auto r = verify_lb_properties(f);
  auto hit = [](const WindowHit& w) {
    return Json{{"start", w.start}, {"step", w.step}, {"length", w.length}, {"density", w.density}};
  };
  Json per_prime = Json::array();
  for (const auto& s : r.per_prime)
    per_prime.push_back({{"p", s.p}, {"direct", s.direct}, {"identity", s.identity}, {"bound", s.bound},
                         {"pass", s.pass}, {"in_regime", s.in_regime}});
  Json congruence = Json::array();
  for (const auto& k : r.congruence)
    congruence.push_back({{"subset", k.subset}, {"max_average", k.max_average}, {"bound", k.bound}, {"pass", k.pass}});
  Json out{{"x", f.x()}, {"n", f.n()}, {"primes", f.primes()}, {"epsilon", to_double(f.eps())},
           {"c_num", numerator(f.c()).str()}, {"c_den", denominator(f.c()).str()}};
  out["prop1"] = {{"pass", r.prop1}, {"mean_num", numerator(r.mean_exact).str()},
                  {"mean_den", denominator(r.mean_exact).str()}, {"mean_numeric", r.mean_numeric}};
  out["prop2"] = {{"pass", r.prop2},
                  {"count", r.square_count},
                  {"bound", r.square_bound},
                  {"ratio", r.square_ratio},
                  {"avg_squares", r.avg_squares},
                  {"avg_squares_direct", r.avg_squares_direct >= 0 ? Json(r.avg_squares_direct) : Json(nullptr)},
                  {"avg_squares_product", r.avg_squares_product},
                  {"avg_squares_pass", r.avg_squares_pass},
                  {"per_prime", per_prime}};
  out["prop3"] = {{"pass", r.prop3},
                  {"window_length", r.window_length},
                  {"window_max_density", r.window_max_density},
                  {"violating", r.violating ? hit(*r.violating) : Json(nullptr)},
                  {"longest", hit(r.longest)},
                  {"longest_steps", r.longest_steps.size()}};
  out["congruence"] = {{"pass", r.congruence_pass}, {"classes", congruence}};
  out["trace"] = lower_bound_json(f)["trace"];
  const bool ok = r.prop1 && r.avg_squares_pass && r.congruence_pass && r.prop3;
  return {out, ok ? kOk : kFailed};
}

// --- dispatch ---------------------------------------------------------------

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::vector<const std::string*> inputs;  // paths of input files, empty when unused
  std::string default_format = "json";
  std::function<Outcome()> run;
};

std::map<std::string, std::string> collect_params(const CLI::App* app) {
  std::map<std::string, std::string> params;
  for (const auto* opt : app->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
      if (!opt->get_expected_min()) value = "true";
    } else {
      value = opt->get_default_str();
    }
    params[opt->get_name()] = value;
  }
  return params;
}

std::string render(const Json& result, const std::string& format, const Command& cmd, const RunManifest& m,
                   double elapsed_ms) {
  if (format == "csv") return to_csv(result);
  Json out{{"command", cmd.name}};
  for (const auto& [k, v] : result.items()) out[k] = v;
  out["manifest"] = {{"hash", m.hash()}, {"version", m.version}, {"params", m.params}, {"input_hash", m.input_hash}};
  out["elapsed_ms"] = elapsed_ms;
  return out.dump() + "\n";
}

int execute(const Command& cmd, const Globals& g) {
  const std::string format = g.format.empty() ? cmd.default_format : g.format;
  RunManifest m;
  m.command = cmd.name;
  m.params = collect_params(cmd.app);
  m.params["format"] = format;
  m.params["seed"] = std::to_string(g.seed);
  m.timestamp = utc_timestamp();
  std::string inputs;
  for (const auto* f : cmd.inputs)
    if (!f->empty()) inputs += file_sha256(*f);
  m.input_hash = sha256_hex(inputs);
  if (g.verbose) std::cerr << "manifest " << m.to_json().dump() << '\n';

  std::optional<ResultCache> cache;
  if (!g.no_cache)
    if (auto dir = resolve_cache_dir(g.cache_dir)) cache.emplace(*dir);
  const auto key = m.hash();
  if (cache) {
    auto hit = cache->lookup(key);
    for (const auto& w : cache->warnings()) std::cerr << "warning: " << w << '\n';
    if (hit) {
      const auto stored = Json::parse(hit->output);
      std::cout << stored.at("stdout").get<std::string>();
      if (g.verbose) std::cerr << "cache hit " << key << '\n';
      return stored.at("exit").get<int>();
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto outcome = cmd.run();
  const double elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const auto text = render(outcome.result, format, cmd, m, elapsed);
  std::cout << text;
  if (cache) {
    cache->store({key, Json{{"stdout", text}, {"exit", outcome.exit}}.dump(), elapsed});
    for (const auto& w : cache->warnings()) std::cerr << "warning: " << w << '\n';
  }
  return outcome.exit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square-difference-free sets: exact search, Fourier analysis on cyclic products, circle-method "
               "spectra, density increments and the lower-bound construction."};
  app.require_subcommand(1);
  app.fallthrough();
  static Globals g;
  app.add_option("--format", g.format, "Output format (default: json, csv for grid commands)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "Seed for randomized inputs");
  app.add_option("--cache-dir", g.cache_dir, "Result cache directory (else $SDFLAB_CACHE_DIR)");
  app.add_flag("--no-cache", g.no_cache, "Bypass the result cache");
  app.add_flag("--verbose", g.verbose, "Print the run manifest to stderr");

  std::vector<Command> commands;
  auto add = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    commands.push_back({parent->get_name() + " " + name, parent->add_subcommand(name, help), {}, "json", {}});
    return &commands.back();
  };
  commands.reserve(16);

  auto* sets = app.add_subcommand("sets", "Square-difference-free sets")->require_subcommand(1);
  {
    auto* c = add(sets, "greedy", "Greedy square-difference-free sequence");
    static std::int64_t limit = 0, start = 0;
    c->app->add_option("--limit", limit, "Largest integer scanned")->required();
    c->app->add_option("--start", start, "First integer scanned")->capture_default_str();
    c->run = [] { return sets_greedy(limit, start); };
  }
  {
    auto* c = add(sets, "exact", "Maximum square-difference-free subset of {1..X}");
    static std::int64_t x = 0, cap = 200;
    c->app->add_option("--x", x, "X")->required();
    c->app->add_option("--cap", cap, "Largest X accepted")->capture_default_str();
    c->run = [] { return sets_exact(x, cap); };
  }
  {
    auto* c = add(sets, "check", "Check a set file for square differences");
    static std::string file;
    static std::int64_t x = 0;
    c->app->add_option("--file", file, "Newline-delimited integers")->required()->check(CLI::ExistingFile);
    c->app->add_option("--x", x, "Universe [1, X] (default: largest element)")->capture_default_str();
    c->inputs = {&file};
    c->run = [] { return sets_check(file, x); };
  }

  auto* fourier = app.add_subcommand("fourier", "Fourier analysis on products of cyclic groups")->require_subcommand(1);
  static std::string set_file;
  {
    auto* c = add(fourier, "energy", "Level-d Fourier energy of a random set or a set file");
    static std::int64_t x = 0;
    static double alpha = 0.1, offset = 0;
    static int d = 1;
    static std::string moduli;
    c->app->add_option("--x", x, "X")->required();
    c->app->add_option("--alpha", alpha, "Density of the random set")->capture_default_str();
    c->app->add_option("--d", d, "Level")->capture_default_str();
    c->app->add_option("--moduli", moduli, "Pairwise coprime moduli, comma separated")->required();
    c->app->add_option("--offset", offset, "Frequency offset xi_0")->capture_default_str();
    c->app->add_option("--file", set_file, "Use this set instead of a random one")->check(CLI::ExistingFile);
    c->run = [] { return fourier_energy(x, alpha, d, moduli, offset, set_file, g.seed); };
    c->inputs = {&set_file};
  }
  {
    auto* c = add(fourier, "dichotomy", "Which alternative of the level-d dichotomy holds");
    static std::int64_t x = 0;
    static double alpha = 0.1;
    static int d = 1;
    static std::string moduli;
    static bool relaxed = false;
    c->app->add_option("--x", x, "X")->required();
    c->app->add_option("--alpha", alpha, "alpha")->capture_default_str();
    c->app->add_option("--d", d, "Level")->capture_default_str();
    c->app->add_option("--moduli", moduli, "Pairwise coprime moduli, comma separated")->required();
    c->app->add_flag("--relaxed", relaxed, "Report size hypotheses instead of enforcing them");
    c->app->add_option("--file", set_file, "Use this set instead of a random one")->check(CLI::ExistingFile);
    c->run = [] { return fourier_dichotomy(x, alpha, d, moduli, relaxed, set_file, g.seed); };
    c->inputs = {&set_file};
  }
  {
    auto* c = add(fourier, "hyper", "Hypercontractive inequality for a random sparse function");
    static std::string moduli = "3,5,7";
    static int support = 3;
    static double r = 0.5, gamma = 0;
    c->app->add_option("--moduli", moduli, "Pairwise coprime moduli")->capture_default_str();
    c->app->add_option("--support", support, "Number of random nonzero points")->capture_default_str();
    c->app->add_option("--r", r, "Globalness r; sets m = ceil(r^-2), p = 2m, rho = m^-1/2 / 20")
        ->capture_default_str();
    c->app->add_option("--gamma", gamma, "Globalness gamma (default: smallest certified)")->capture_default_str();
    c->run = [] { return fourier_hyper(moduli, support, r, gamma, g.seed); };
  }

  auto* circle = app.add_subcommand("circle", "Circle method on the weighted squares")->require_subcommand(1);
  {
    auto* c = add(circle, "spectrum", "Transform of the square weight on a theta grid (CSV)");
    static std::int64_t x = 0, grid = 0;
    static std::string arcs;
    c->app->add_option("--x", x, "X")->required();
    c->app->add_option("--theta-grid", grid, "Number of grid points k/N in [0, 1)")->required();
    c->app->add_option("--arcs", arcs, "alpha,C1: tag major-arc points");
    c->default_format = "csv";
    c->run = [] { return circle_spectrum(x, grid, arcs); };
  }
  {
    auto* c = add(circle, "weyl", "Locate a rational approximation from a large quadratic sum");
    static double theta = 0, delta = 0, cc = 1, c_fit = 2;
    static std::int64_t x = 0;
    c->app->add_option("--theta", theta, "theta")->required();
    c->app->add_option("--x", x, "X")->required();
    c->app->add_option("--delta", delta, "delta (default: the measured average)")->capture_default_str();
    c->app->add_option("--c", cc, "Qcap constant")->capture_default_str();
    c->app->add_option("--c-fit", c_fit, "Acceptance constant")->capture_default_str();
    c->run = [] { return circle_weyl(theta, x, delta, cc, c_fit); };
  }
  {
    auto* c = add(circle, "gauss", "Quadratic Gauss sum");
    static std::int64_t a = 1, q = 0;
    c->app->add_option("--a", a, "a")->capture_default_str();
    c->app->add_option("--q", q, "q")->required();
    c->run = [] { return circle_gauss(a, q); };
  }

  auto* increment = app.add_subcommand("increment", "Density increments")->require_subcommand(1);
  {
    auto* c = add(increment, "run", "Search for a verified density increment");
    static std::string file;
    static std::int64_t x = 0;
    static double c0 = 0.01, c1 = 1;
    static int xi_steps = 2;
    c->app->add_option("--set", file, "Set file")->required()->check(CLI::ExistingFile);
    c->app->add_option("--x", x, "X")->required();
    c->app->add_option("--c0", c0, "Small-density constant c")->capture_default_str();
    c->app->add_option("--c1", c1, "Major-arc constant")->capture_default_str();
    c->app->add_option("--xi-steps", xi_steps, "Offsets per arc radius")->capture_default_str();
    c->inputs = {&file};
    c->run = [] { return increment_run(file, x, c0, c1, xi_steps); };
  }
  {
    auto* c = add(increment, "bound", "The bound X exp(-c0 F(X)) on a log grid (CSV)");
    static double x = 0, c0 = 0.01;
    static int points = 50;
    c->app->add_option("--x", x, "Largest X")->required();
    c->app->add_option("--c0", c0, "c0")->capture_default_str();
    c->app->add_option("--points", points, "Grid points")->capture_default_str();
    c->default_format = "csv";
    c->run = [] { return increment_bound(x, c0, points); };
  }

  auto* lb = app.add_subcommand("lowerbound", "The construction limiting density increments")->require_subcommand(1);
  static std::int64_t lb_x = 0;
  static std::string lb_alpha;
  static double lb_t = 0, lb_c = 1;
  static bool lb_strict = false;
  for (const std::string name : {"build", "verify"}) {
    auto* c = add(lb, name, name == "build" ? "Construct f" : "Construct f and verify its three properties");
    c->app->add_option("--x", lb_x, "X")->required();
    c->app->add_option("--alpha", lb_alpha, "Target density (decimal or a/b)")->required();
    c->app->add_option("--T", lb_t, "T (default: searched)")->capture_default_str();
    c->app->add_option("--C", lb_c, "C")->capture_default_str();
    c->app->add_flag("--strict", lb_strict, "Enforce every hypothesis instead of reporting it");
    if (name == "build")
      c->run = [] { return lowerbound_build(lb_x, lb_alpha, lb_t, lb_c, lb_strict); };
    else
      c->run = [] { return lowerbound_verify(lb_x, lb_alpha, lb_t, lb_c, lb_strict); };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kUsage;
  }

  for (auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      return execute(cmd, g);
    } catch (const Error& e) {
      Json err{{"command", cmd.name}, {"error", to_string(e.kind())}, {"message", e.what()}};
      std::cout << err.dump() << '\n';
      std::cerr << "error: " << e.what() << '\n';
      return exit_for(e);
    } catch (const std::exception& e) {
      Json err{{"command", cmd.name}, {"error", "InvalidArgument"}, {"message", e.what()}};
      std::cout << err.dump() << '\n';
      std::cerr << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  std::cerr << app.help();
  return kUsage;
}
