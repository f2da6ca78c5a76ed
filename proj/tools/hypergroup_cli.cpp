// Command-line front end: coefficient tables, linearization, Haar weights,
// polynomial values, characters, the q-measure, chain sequences and the
// verification suites. Exit codes: 0 pass, 1 fail, 2 indeterminate, 3 usage.

#include <hypergroup/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace hypergroup;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kCacheVersion = "hypergroup-cache/1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  unsigned precision = 256;
  std::string mode = "auto";
  std::string cache_dir;
  bool no_cache = false;
  std::string format = "pretty";
  std::uint64_t seed = 1;
  std::string output;
};

// Family parameters as typed on the command line, in a fixed order.
struct FamilyArgs {
  std::string family;
  std::map<std::string, std::string> values;
  bool tilde = false;
};

const std::map<std::string, std::vector<std::string>> kFamilyParams = {
    {"qleg", {"q"}},
    {"pollaczek", {"alpha", "lambda", "nu"}},
    {"ultraspherical", {"alpha"}},
    {"random-walk", {"a", "b", "nu"}},
    {"constant", {"c"}},
};

const std::map<std::string, std::string> kParamDefaults = {{"nu", "0"}};

/// A table plus metadata, rendered as json, csv or an aligned text table.
struct Document {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render(const Document& d, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json j;
    j["command"] = d.command;
    json m = json::object();
    for (const auto& [k, v] : d.meta) m[k] = v;
    j["metadata"] = m;
    j["columns"] = d.columns;
    j["rows"] = json::array();
    for (const auto& r : d.rows) j["rows"].push_back(r);
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    for (std::size_t i = 0; i < d.columns.size(); ++i) os << (i ? "," : "") << d.columns[i];
    os << "\n";
    for (const auto& r : d.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << "\n";
    }
  } else {
    for (const auto& [k, v] : d.meta) os << "# " << k << ": " << v << "\n";
    std::vector<std::size_t> w(d.columns.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = d.columns[i].size();
    for (const auto& r : d.rows)
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        os << (i ? "  " : "") << r[i];
        if (i + 1 < r.size()) os << std::string(w[i] - r[i].size(), ' ');
      }
      os << "\n";
    };
    line(d.columns);
    for (const auto& r : d.rows) line(r);
  }
  return os.str();
}

void emit(const std::string& text, const Config& cfg) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + cfg.output);
  out << text;
}

// ---------------------------------------------------------------------------
// parameters and mode

struct Resolved {
  bool use_float = false;
  std::vector<std::pair<std::string, std::string>> params;  // canonical text
};

Resolved resolve(const FamilyArgs& fa, const Config& cfg, bool needs_sqrt = false) {
  const auto spec = kFamilyParams.find(fa.family);
  if (spec == kFamilyParams.end()) throw UsageError("unknown family '" + fa.family + "'");
  for (const auto& [k, v] : fa.values)
    if (std::find(spec->second.begin(), spec->second.end(), k) == spec->second.end())
      throw UsageError("family " + fa.family + " takes no --" + k);
  if (fa.tilde && fa.family != "random-walk") throw UsageError("--tilde applies to random-walk only");
  Resolved r;
  bool decimals = false;
  for (const auto& name : spec->second) {
    auto it = fa.values.find(name);
    std::string text;
    if (it != fa.values.end()) text = it->second;
    else if (kParamDefaults.count(name)) text = kParamDefaults.at(name);
    else throw UsageError("family " + fa.family + " needs --" + name);
    Rational v;
    try {
      v = parse_rational(text);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    if (!is_fraction_literal(text)) decimals = true;
    r.params.emplace_back(name, to_string(v));
  }
  if (cfg.mode == "rational" && decimals) throw UsageError("--mode rational needs p/q parameters, not decimals");
  if (cfg.mode == "rational" && needs_sqrt) throw UsageError("--mode rational cannot evaluate square roots");
  r.use_float = cfg.mode == "float" || (cfg.mode == "auto" && decimals);
  return r;
}

template <class T>
T param(const Resolved& r, const std::string& name) {
  for (const auto& [k, v] : r.params)
    if (k == name) return from_rational<T>(parse_rational(v));
  throw UsageError("missing parameter " + name);
}

template <class T>
SequencePtr<T> build_family(const FamilyArgs& fa, const Resolved& r) {
  if (fa.family == "qleg") return little_q_legendre(param<T>(r, "q"));
  if (fa.family == "pollaczek")
    return assoc_pollaczek(PollaczekParams<T>(param<T>(r, "alpha"), param<T>(r, "lambda"), param<T>(r, "nu")));
  if (fa.family == "ultraspherical") return ultraspherical(param<T>(r, "alpha"));
  if (fa.family == "random-walk")
    return random_walk(RandomWalkParams<T>(param<T>(r, "a"), param<T>(r, "b"), param<T>(r, "nu"), fa.tilde));
  if (fa.family == "constant") return constant_family(param<T>(r, "c"));
  throw UsageError("unknown family '" + fa.family + "'");
}

void describe(Document& d, const FamilyArgs& fa, const Resolved& r, const Config& cfg) {
  d.meta.emplace_back("family", fa.family + (fa.tilde ? " (tilde)" : ""));
  for (const auto& [k, v] : r.params) d.meta.emplace_back(k, v);
  d.meta.emplace_back("mode", r.use_float ? "float" : "rational");
  if (r.use_float) d.meta.emplace_back("precision", std::to_string(cfg.precision));
}

// ---------------------------------------------------------------------------
// content-addressed cache

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::optional<fs::path> cache_root(const Config& cfg) {
  if (cfg.no_cache) return std::nullopt;
  if (!cfg.cache_dir.empty()) return fs::path(cfg.cache_dir);
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "hypergroup";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "hypergroup";
  return std::nullopt;
}

class Cache {
 public:
  Cache(const Config& cfg, std::string key) : key_(std::move(key)) {
    if (auto root = cache_root(cfg)) {
      char name[32];
      std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a(key_)));
      path_ = *root / name;
    }
  }

  /// Rows stored under this key, or nothing.
  std::optional<std::vector<std::vector<std::string>>> load() {
    if (!path_) return std::nullopt;
    std::ifstream in(*path_);
    if (!in) return std::nullopt;
    try {
      const json j = json::parse(in);
      if (j.at("version") != kCacheVersion || j.at("key") != key_) return std::nullopt;
      return j.at("rows").get<std::vector<std::vector<std::string>>>();
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entries are recomputed and overwritten
    }
  }

  void store(const std::vector<std::vector<std::string>>& rows) {
    if (!path_) return;
    std::error_code ec;
    fs::create_directories(path_->parent_path(), ec);
    if (ec) return;
    json j;
    j["version"] = kCacheVersion;
    j["key"] = key_;
    j["rows"] = rows;
    const fs::path tmp = path_->string() + ".tmp" + std::to_string(fnv1a(key_ + std::to_string(std::rand())));
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) return;
      out << j.dump() << "\n";
    }
    fs::rename(tmp, *path_, ec);
    if (ec) fs::remove(tmp, ec);
  }

  std::string status(bool hit) const { return path_ ? (hit ? "hit" : "miss") : "off"; }

 private:
  std::string key_;
  std::optional<fs::path> path_;
};

std::string cache_key(const std::string& command, const FamilyArgs& fa, const Resolved& r, const Config& cfg,
                      const std::string& extra) {
  std::string k = std::string(kCacheVersion) + "|" + command + "|" + fa.family + (fa.tilde ? "~" : "");
  for (const auto& [name, v] : r.params) k += "|" + name + "=" + v;
  k += r.use_float ? "|float/" + std::to_string(cfg.precision) : "|rational";
  return k + "|" + extra;
}

// ---------------------------------------------------------------------------
// commands

template <class T>
Document cmd_coeffs(const FamilyArgs& fa, const Resolved& r, const Config& cfg, std::size_t N) {
  Document d{"coeffs", {}, {"n", "a", "b", "c"}, {}};
  describe(d, fa, r, cfg);
  auto cs = build_family<T>(fa, r);
  for (std::size_t n = 0; n <= N; ++n)
    d.rows.push_back({std::to_string(n), to_string(cs->a(n)), to_string(cs->b(n)), to_string(cs->c(n))});
  return d;
}

template <class T>
Document cmd_linearize(const FamilyArgs& fa, const Resolved& r, const Config& cfg, std::size_t m, std::size_t n) {
  Document d{"linearize", {}, {"k", "g"}, {}};
  describe(d, fa, r, cfg);
  d.meta.emplace_back("m", std::to_string(m));
  d.meta.emplace_back("n", std::to_string(n));
  Cache cache(cfg, cache_key("linearize", fa, r, cfg, std::to_string(std::min(m, n)) + "," + std::to_string(std::max(m, n))));
  auto rows = cache.load();
  const bool hit = rows.has_value();
  if (!hit) {
    LinearizationTable<T> table(build_family<T>(fa, r));
    const auto& row = table.linearize(m, n);
    rows.emplace();
    for (std::size_t i = 0; i < row.values.size(); ++i)
      rows->push_back({std::to_string(row.lo + i), to_string(row.values[i])});
    cache.store(*rows);
  }
  d.rows = std::move(*rows);
  d.meta.emplace_back("cache", cache.status(hit));
  return d;
}

template <class T>
Document cmd_haar(const FamilyArgs& fa, const Resolved& r, const Config& cfg, std::size_t N) {
  Document d{"haar", {}, {"n", "h"}, {}};
  describe(d, fa, r, cfg);
  Cache cache(cfg, cache_key("haar", fa, r, cfg, std::to_string(N)));
  auto rows = cache.load();
  const bool hit = rows.has_value();
  if (!hit) {
    LinearizationTable<T> table(build_family<T>(fa, r));
    rows.emplace();
    for (std::size_t n = 0; n <= N; ++n) rows->push_back({std::to_string(n), to_string(table.haar(n))});
    cache.store(*rows);
  }
  d.rows = std::move(*rows);
  d.meta.emplace_back("cache", cache.status(hit));
  return d;
}

template <class T>
Document cmd_eval(const FamilyArgs& fa, const Resolved& r, const Config& cfg, std::size_t N, const std::string& xs,
                  PolyForm form) {
  Document d{"eval", {}, {"n", to_string(form)}, {}};
  describe(d, fa, r, cfg);
  const T x = from_rational<T>(parse_rational(xs));
  d.meta.emplace_back("x", to_string(x));
  auto cs = build_family<T>(fa, r);
  for (std::size_t n = 0; n <= N; ++n) d.rows.push_back({std::to_string(n), eval_poly(*cs, n, x, form).str()});
  return d;
}

template <class T>
Document cmd_character(const FamilyArgs& fa, const Resolved& r, const Config& cfg, std::size_t K, const std::string& xs,
                       bool bounded) {
  Document d{"character", {}, {"n", "value"}, {}};
  describe(d, fa, r, cfg);
  const T x = from_rational<T>(parse_rational(xs));
  d.meta.emplace_back("x", to_string(x));
  const auto ch = character(*build_family<T>(fa, r), x, K, {bounded, false});
  if (ch.bound_checked)
    d.meta.emplace_back("bounded", ch.bound_violation ? "violated at n=" + std::to_string(*ch.bound_violation) : "yes");
  for (std::size_t n = 0; n <= K; ++n) d.rows.push_back({std::to_string(n), to_string(ch.values[n])});
  return d;
}

template <class T>
Document cmd_measure(const FamilyArgs& fa, const Resolved& r, const Config& cfg, std::size_t K) {
  if (fa.family != "qleg") throw UsageError("measure is available for qleg only");
  Document d{"measure", {}, {"m", "location", "mass"}, {}};
  describe(d, fa, r, cfg);
  const auto mu = q_measure(param<T>(r, "q"), K);
  d.meta.emplace_back("tail_bound", to_string(mu.tail_bound));
  for (std::size_t m = 0; m < mu.atoms.size(); ++m)
    d.rows.push_back({std::to_string(m), to_string(mu.atoms[m].location), to_string(mu.atoms[m].mass)});
  return d;
}

/// Chain sequence Lambda(n) = c_n a_{n-1} of a family, or a constant.
template <class T>
Document cmd_chain(const FamilyArgs* fa, const Resolved& r, const Config& cfg, const std::optional<std::string>& value,
                   std::size_t N, const std::string& kind, std::size_t horizon, const std::string& tol) {
  Document d{"chain", {}, {"n", "Lambda", kind == "minimal" ? "m" : "M"}, {}};
  ChainSequenceProbe<T> probe;
  if (value) {
    const T v = from_rational<T>(parse_rational(*value));
    probe.lambda = [v](std::size_t) { return v; };
    probe.label = "constant " + to_string(v);
    d.meta.emplace_back("sequence", probe.label);
    d.meta.emplace_back("mode", r.use_float ? "float" : "rational");
  } else {
    describe(d, *fa, r, cfg);
    auto cs = build_family<T>(*fa, r);
    probe.lambda = [cs](std::size_t n) { return T(cs->c(n) * cs->a(n - 1)); };
    probe.label = "c_n a_{n-1}";
    d.meta.emplace_back("sequence", probe.label);
  }
  const auto ps = kind == "minimal" ? minimal_parameters(probe, N)
                                    : maximal_parameters(probe, N, std::max(horizon, 2 * N), from_rational<T>(parse_rational(tol)));
  d.meta.emplace_back("kind", kind);
  d.meta.emplace_back("certified", ps.certified ? "yes" : "no");
  if (ps.failure) d.meta.emplace_back("left_unit_interval_at", std::to_string(*ps.failure));
  if (kind == "maximal") {
    d.meta.emplace_back("horizon", std::to_string(ps.horizon));
    d.meta.emplace_back("converged", ps.converged ? "yes" : "no");
    if (ps.cauchy_gap) d.meta.emplace_back("cauchy_gap", to_string(*ps.cauchy_gap));
  }
  for (std::size_t n = 0; n < ps.values.size(); ++n)
    d.rows.push_back({std::to_string(n), n == 0 ? "-" : to_string(probe.lambda(n)), to_string(ps.values[n])});
  return d;
}

std::string render_report(const Report& rep, const std::string& format) {
  if (format != "pretty") return serialize(rep, format);
  std::ostringstream os;
  os << "suite " << rep.suite << " (" << rep.mode;
  if (rep.mode == "float") os << ", " << rep.precision << " bits";
  os << "): " << to_string(rep.status()) << "\n";
  for (const auto& [k, v] : rep.params) os << "  " << k << " = " << v << "\n";
  for (const auto& e : rep.entries) {
    os << "[" << to_string(e.status) << "] " << e.claim << "  (" << e.anchor << ")";
    if (!e.range.empty()) os << "  " << e.range;
    os << "\n";
    if (e.kind != EntryKind::info) {
      os << "    checked " << e.checked;
      if (e.worst_margin_approx)
        os << ", " << (e.kind == EntryKind::equality ? "max residual " : "worst margin ") << *e.worst_margin_approx;
      if (e.witness) os << " at " << *e.witness;
      os << "\n";
    }
    if (e.first_failure) os << "    first failure: " << *e.first_failure << "\n";
    if (!e.note.empty()) os << "    " << e.note << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial hypergroups on N_0: tables, characters, chain sequences and verification suites"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--precision", cfg.precision, "float precision in bits (>= 64)")->capture_default_str();
  app.add_option("--mode", cfg.mode, "auto | rational | float")
      ->check(CLI::IsMember({"auto", "rational", "float"}))
      ->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir, "cache directory (default $XDG_CACHE_HOME/hypergroup)");
  app.add_flag("--no-cache", cfg.no_cache, "disable the table cache");
  app.add_option("--format", cfg.format, "json | csv | pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized trials")->capture_default_str();
  app.add_option("-o,--output", cfg.output, "write to a file instead of stdout");

  FamilyArgs fa;
  auto add_family = [&](CLI::App* sub, bool positional_required = true) {
    auto* opt = sub->add_option("family", fa.family, "qleg | pollaczek | ultraspherical | random-walk | constant");
    if (positional_required) opt->required();
    for (const char* p : {"q", "alpha", "lambda", "nu", "a", "b", "c"}) {
      sub->add_option_function<std::string>(std::string("--") + p, [&fa, p](const std::string& v) { fa.values[p] = v; },
                                            "family parameter (p/q or decimal)");
    }
    sub->add_flag("--tilde", fa.tilde, "random-walk: the tilde family");
  };

  std::size_t N = 10, K = 40, m = 0, n = 0, horizon = 0;
  std::string x = "1", form = "normalized", kind = "minimal", tol = "1/100000000";
  std::optional<std::string> value;
  bool bounded = false;

  auto* coeffs = app.add_subcommand("coeffs", "recurrence coefficients (n, a_n, b_n, c_n)");
  add_family(coeffs);
  coeffs->add_option("-N", N, "largest n")->capture_default_str();

  auto* lin = app.add_subcommand("linearize", "linearization coefficients g(m,n;k)");
  add_family(lin);
  lin->add_option("-m", m, "first index")->required();
  lin->add_option("-n", n, "second index")->required();

  auto* haar = app.add_subcommand("haar", "Haar weights h(0..N)");
  add_family(haar);
  haar->add_option("-N", N, "largest n")->capture_default_str();

  auto* ev = app.add_subcommand("eval", "polynomial values P_0(x)..P_N(x)");
  add_family(ev);
  ev->add_option("-N", N, "largest n")->capture_default_str();
  ev->add_option("-x,--x", x, "evaluation point")->capture_default_str();
  ev->add_option("--form", form, "normalized | orthonormal | monic | derivative")
      ->check(CLI::IsMember({"normalized", "orthonormal", "monic", "derivative"}))
      ->capture_default_str();

  auto* chr = app.add_subcommand("character", "character values alpha_x(0..K)");
  add_family(chr);
  chr->add_option("-K", K, "truncation")->capture_default_str();
  chr->add_option("-x,--x", x, "character parameter")->capture_default_str();
  chr->add_flag("--bounded", bounded, "check |alpha_x(n)| <= 1");

  auto* meas = app.add_subcommand("measure", "atoms of the orthogonalization measure (qleg)");
  add_family(meas);
  meas->add_option("-K", K, "last atom index")->capture_default_str();

  auto* chain = app.add_subcommand("chain", "minimal or maximal parameter sequence of a chain sequence");
  add_family(chain, false);
  chain->add_option("--value", value, "constant chain sequence instead of a family");
  chain->add_option("-N", N, "largest n")->capture_default_str();
  chain->add_option("--kind", kind, "minimal | maximal")->check(CLI::IsMember({"minimal", "maximal"}))->capture_default_str();
  chain->add_option("--horizon", horizon, "starting horizon for maximal parameters (default 2N)");
  chain->add_option("--tol", tol, "maximal parameters: horizon convergence tolerance")->capture_default_str();

  std::string suite;
  std::vector<std::string> size_args;
  std::map<std::string, std::string> suite_params;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite, "suite name (see list-suites)")->required();
  for (const char* p : {"q", "alpha", "lambda", "nu", "a", "b"})
    ver->add_option_function<std::string>(std::string("--") + p,
                                          [&suite_params, p](const std::string& v) { suite_params[p] = v; },
                                          "suite parameter; comma-separated values form a grid axis");
  ver->add_option("--size", size_args, "sweep size override name=value (repeatable)");

  auto* ls = app.add_subcommand("list-suites", "list the verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (cfg.precision < 64) throw UsageError("--precision must be at least 64");
    PrecisionGuard guard(cfg.precision);

    if (ls->parsed()) {
      if (cfg.format == "json") {
        json j = json::array();
        for (const auto& s : list_suites()) {
          json e;
          e["name"] = s.name;
          e["title"] = s.title;
          json ps = json::array();
          for (const auto& p : s.params) ps.push_back({{"name", p.name}, {"range", p.description}, {"defaults", p.defaults}});
          e["params"] = ps;
          json sz = json::object();
          for (const auto& [k, v] : s.sizes) sz[k] = v;
          e["sizes"] = sz;
          json tl = json::object();
          for (const auto& [k, v] : s.tolerances) tl[k] = v;
          e["tolerances"] = tl;
          j.push_back(e);
        }
        emit(j.dump(2) + "\n", cfg);
      } else {
        Document d{"list-suites", {}, {"suite", "parameters", "sizes", "title"}, {}};
        for (const auto& s : list_suites()) {
          std::string ps, sz;
          for (const auto& p : s.params) ps += (ps.empty() ? "" : " ") + p.name;
          for (const auto& [k, v] : s.sizes) sz += (sz.empty() ? "" : " ") + k + "=" + std::to_string(v);
          d.rows.push_back({s.name, ps, sz, s.title});
        }
        emit(render(d, cfg.format), cfg);
      }
      return 0;
    }

    if (ver->parsed()) {
      if (!find_suite(suite)) throw UsageError("unknown suite '" + suite + "' (see list-suites)");
      SizeOverrides sizes;
      for (const auto& s : size_args) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("--size expects name=value, got '" + s + "'");
        try {
          sizes[s.substr(0, eq)] = std::stol(s.substr(eq + 1));
        } catch (const std::exception&) {
          throw UsageError("--size value must be an integer: '" + s + "'");
        }
      }
      Report rep;
      try {
        rep = run_suite(suite, suite_params, sizes, {cfg.mode, cfg.precision, cfg.seed});
      } catch (const ParameterError& e) {
        throw UsageError(e.what());
      }
      emit(render_report(rep, cfg.format), cfg);
      return exit_code(rep);
    }

    Document doc;
    const bool is_chain = chain->parsed();
    if (is_chain && value && !fa.family.empty()) throw UsageError("chain takes a family or --value, not both");
    if (is_chain && !value && fa.family.empty()) throw UsageError("chain needs a family or --value");

    Resolved r;
    if (is_chain && value) {
      if (!fa.values.empty()) throw UsageError("family parameters given without a family");
      const bool dec = !is_fraction_literal(*value);
      if (cfg.mode == "rational" && dec) throw UsageError("--mode rational needs p/q parameters, not decimals");
      r.use_float = cfg.mode == "float" || (cfg.mode == "auto" && dec);
    } else {
      const bool sqrt_needed = ev->parsed() && form == "orthonormal";
      r = resolve(fa, cfg, sqrt_needed);
    }

    auto dispatch = [&](auto tag) {
      using T = decltype(tag);
      if (coeffs->parsed()) return cmd_coeffs<T>(fa, r, cfg, N);
      if (lin->parsed()) return cmd_linearize<T>(fa, r, cfg, m, n);
      if (haar->parsed()) return cmd_haar<T>(fa, r, cfg, N);
      if (ev->parsed()) return cmd_eval<T>(fa, r, cfg, N, x, parse_poly_form(form));
      if (chr->parsed()) return cmd_character<T>(fa, r, cfg, K, x, bounded);
      if (meas->parsed()) return cmd_measure<T>(fa, r, cfg, K);
      return cmd_chain<T>(value ? nullptr : &fa, r, cfg, value, N, kind, horizon, tol);
    };
    doc = r.use_float ? dispatch(BigFloat{}) : dispatch(Rational{});
    emit(render(doc, cfg.format), cfg);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
