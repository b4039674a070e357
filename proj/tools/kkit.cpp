// kkit: evaluation, tables and verification sweeps.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kkit/addition.hpp"
#include "kkit/components.hpp"
#include "kkit/errors.hpp"
#include "kkit/krawtchouk.hpp"
#include "kkit/spherical.hpp"

using json = nlohmann::ordered_json;
using namespace kkit;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------- parsing

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": not an integer: '" + s + "'");
  }
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: '" + s + "'");
  }
}

/// "2,3,5", "1..4" or a mix of both.
std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (const auto& item : split(s, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(parse_long(item, what)));
      continue;
    }
    const long lo = parse_long(item.substr(0, dots), what);
    const long hi = parse_long(item.substr(dots + 2), what);
    if (hi < lo) throw ConfigError(what + ": empty range '" + item + "'");
    for (long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  std::vector<int> unique;
  for (int v : out)
    if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(v);
  return unique;
}

/// A single value N means 1..N.
std::vector<int> parse_N_list(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find("..") == std::string::npos) {
    const long N = parse_long(s, "--N");
    if (N < 1) throw ConfigError("--N must be >= 1");
    std::vector<int> out;
    for (int v = 1; v <= N; ++v) out.push_back(v);
    return out;
  }
  auto out = parse_int_list(s, "--N");
  for (int v : out)
    if (v < 1) throw ConfigError("--N entries must be >= 1");
  return out;
}

BigRational parse_rational(const std::string& s, const std::string& what) {
  try {
    return BigRational::parse(s);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a rational: '" + s + "'");
  }
}

MultiIndex parse_index(const std::string& s, const std::string& what) {
  try {
    return parse_multi_index(s);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a multi-index: '" + s + "'");
  }
}

/// "1,0;1,1" -> {(1,0), (1,1)}
std::vector<MultiIndex> parse_index_list(const std::string& s, const std::string& what) {
  std::vector<MultiIndex> out;
  for (const auto& item : split(s, ';')) out.push_back(parse_index(item, what));
  return out;
}

bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------- options

/// Every option is held as text so that a config file can fill the ones not
/// given on the command line before anything is interpreted.
struct Options {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  bool timing = false;
  std::string config;

  void add(CLI::App* app, const std::string& name, const std::string& help, const std::string& def = "") {
    values[name] = def;
    opts[name] = app->add_option("--" + name, values[name], help);
  }
  bool given(const std::string& name) const { return !values.at(name).empty(); }
  const std::string& get(const std::string& name) const { return values.at(name); }

  void merge_config() {
    if (config.empty()) return;
    std::ifstream in(config);
    if (!in) throw ConfigError("--config: cannot open '" + config + "'");
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("--config: ") + e.what());
    }
    if (!file.is_object()) throw ConfigError("--config: top level must be an object");
    for (auto it = file.begin(); it != file.end(); ++it) {
      std::string key = it.key();
      for (auto& ch : key)
        if (ch == '_') ch = '-';
      if (key == "timing") {
        if (!it->is_boolean()) throw ConfigError("--config: timing must be a boolean");
        if (!timing) timing = it->get<bool>();
        continue;
      }
      if (!opts.count(key)) throw ConfigError("--config: unknown key '" + it.key() + "'");
      if (opts[key]->count() > 0) continue;  // flags override the file
      values[key] = to_text(*it, key == "u" ? ';' : ',');
    }
  }

  static std::string to_text(const json& v, char sep) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    if (v.is_number()) {
      std::ostringstream os;
      os << v.get<double>();
      return os.str();
    }
    if (v.is_array()) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += to_text(v[i], ',');
      }
      return out;
    }
    throw ConfigError("--config: unsupported value " + v.dump());
  }
};

// ---------------------------------------------------------------- records

struct Record {
  std::string instance;
  bool pass = true;
  std::optional<std::string> lhs;
  std::optional<std::string> rhs;
  std::optional<double> discrepancy;
  json detail = json::object();
  double micros = 0;
};

template <class Task>
std::vector<Record> run_parallel(const std::vector<Task>& tasks, int jobs, bool timing,
                                 const std::function<Record(const Task&, std::size_t)>& fn) {
  std::vector<Record> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        out[i] = fn(tasks[i], i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
      if (timing)
        out[i].micros = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------- verify

struct Sweep {
  std::string suite;
  std::vector<int> qs;
  std::vector<int> ells;
  std::vector<int> Ns;
  std::optional<std::vector<MultiIndex>> n_filter;
  std::optional<std::vector<MultiIndex>> u_filter;
  std::optional<std::vector<int>> t_filter;
  std::string backend = "complexHP";
  int bits = kDefaultPrecisionBits;
  double tolerance = 0;
  int jobs = 1;
  int cases = 0;
  unsigned long seed = 1;
  bool timing = false;
};

double default_tolerance(const std::string& suite) {
  if (suite == "gamma") return 1e-30;
  if (suite == "translation") return 1e-25;
  return 1e-20;
}

int default_cases(const std::string& suite) {
  if (suite == "translation") return 100;
  if (suite == "inner-product") return 3;
  return 0;
}

bool keep(const std::optional<std::vector<MultiIndex>>& filter, const MultiIndex& m) {
  if (!filter) return true;
  for (const auto& f : *filter)
    if (f == m) return true;
  return false;
}

void require_prime(int q, const std::string& suite) {
  if (!is_prime(q)) throw ConfigError("verify " + suite + ": q = " + std::to_string(q) + " must be a prime");
}

/// Group-oracle suites enumerate R^N; refuse before building anything.
void guard(int p, int ell, int N) { checked_table_size(RingSpec(p, ell), N); }

std::mt19937_64 task_rng(unsigned long seed, std::size_t index) {
  std::seed_seq seq{static_cast<unsigned>(seed), static_cast<unsigned>(seed >> 32), static_cast<unsigned>(index)};
  return std::mt19937_64(seq);
}

std::string ring_label(int p, int ell, int N) {
  return "p=" + std::to_string(p) + " ell=" + std::to_string(ell) + " N=" + std::to_string(N);
}

struct RingTask {
  int p = 0;
  int ell = 0;
  int N = 0;
};

std::vector<RingTask> ring_tasks(const Sweep& s, bool with_N) {
  std::vector<RingTask> out;
  for (int q : s.qs)
    for (int ell : s.ells) {
      if (!with_N) {
        out.push_back({q, ell, 0});
        continue;
      }
      for (int N : s.Ns) out.push_back({q, ell, N});
    }
  return out;
}

std::vector<Record> verify_zonal(const Sweep& s) {
  for (int q : s.qs) require_prime(q, s.suite);
  auto tasks = ring_tasks(s, true);
  for (const auto& t : tasks) guard(t.p, t.ell, t.N);
  return run_parallel<RingTask>(tasks, s.jobs, s.timing, [&](const RingTask& t, std::size_t) {
    Record rec;
    rec.instance = ring_label(t.p, t.ell, t.N);
    const RingSpec R(t.p, t.ell);
    const ZonalOracle oracle(R, t.N);
    const auto p = ParamVector::uniform(t.ell, BigRational(t.p - 1, t.p));
    long pairs = 0;
    json mismatches = json::array();
    for (const auto& x : oracle.labels()) {
      const auto row = oracle.values(canonical_point(R, t.N, x));
      for (std::size_t j = 0; j < row.size(); ++j) {
        const MultiIndex& n = oracle.labels()[j];
        if (!keep(s.n_filter, n)) continue;
        ++pairs;
        const BigRational k = kraw_multi(n, x, p, t.N);
        if (k != row[j])
          mismatches.push_back({{"n", n.to_string()}, {"x", x.to_string()}, {"oracle", row[j].to_string()},
                                {"krawtchouk", k.to_string()}});
      }
    }
    rec.pass = mismatches.empty();
    rec.detail["pairs"] = pairs;
    if (!rec.pass) rec.detail["mismatches"] = mismatches;
    return rec;
  });
}

std::vector<Record> verify_gamma(const Sweep& s) {
  for (int q : s.qs) require_prime(q, s.suite);
  return run_parallel<RingTask>(ring_tasks(s, false), s.jobs, s.timing, [&](const RingTask& t, std::size_t) {
    Record rec;
    rec.instance = "p=" + std::to_string(t.p) + " ell=" + std::to_string(t.ell);
    const Lab lab(RingSpec(t.p, t.ell), s.bits);
    const auto rep = gamma_table_check(lab, s.tolerance);
    double worst = rep.reconstruction_residual;
    json failed = json::array();
    for (const auto& c : rep.checks) {
      worst = std::max(worst, c.deviation);
      if (!c.ok)
        failed.push_back({{"check", c.what}, {"r", c.r}, {"s", c.s}, {"i", c.i}, {"deviation", sci(c.deviation)}});
    }
    rec.pass = rep.ok();
    rec.discrepancy = worst;
    rec.detail["checks"] = rep.checks.size();
    rec.detail["reconstruction_residual"] = sci(rep.reconstruction_residual);
    if (!failed.empty()) rec.detail["failed"] = failed;
    return rec;
  });
}

struct IndexTask {
  int p = 0;
  int ell = 0;
  int N = 0;
  MultiIndex n;
  MultiIndex u;
  int t = 0;
};

std::vector<IndexTask> index_tasks(const Sweep& s, bool with_u, bool with_t) {
  std::vector<IndexTask> out;
  for (const auto& r : ring_tasks(s, true))
    for (const auto& n : enumerate_X(r.ell, r.N)) {
      if (!keep(s.n_filter, n)) continue;
      if (!with_u) {
        out.push_back({r.p, r.ell, r.N, n, {}, 0});
        continue;
      }
      for (const auto& u : enumerate_X(r.ell, r.N)) {
        if (!keep(s.u_filter, u)) continue;
        if (!with_t) {
          out.push_back({r.p, r.ell, r.N, n, u, 0});
          continue;
        }
        for (int t = 0; t <= u[0]; ++t) {
          if (s.t_filter && std::find(s.t_filter->begin(), s.t_filter->end(), t) == s.t_filter->end()) continue;
          out.push_back({r.p, r.ell, r.N, n, u, t});
        }
      }
    }
  return out;
}

/// Labs and oracles are shared read-only between workers.
struct Cache {
  std::map<std::pair<int, int>, std::unique_ptr<Lab>> labs;
  std::map<std::tuple<int, int, int>, std::unique_ptr<ZonalOracle>> oracles;

  void build(const std::vector<IndexTask>& tasks, int bits, bool need_lab) {
    for (const auto& t : tasks) {
      if (need_lab && !labs.count({t.p, t.ell})) labs[{t.p, t.ell}] = std::make_unique<Lab>(RingSpec(t.p, t.ell), bits);
      if (!oracles.count({t.p, t.ell, t.N}))
        oracles[{t.p, t.ell, t.N}] = std::make_unique<ZonalOracle>(RingSpec(t.p, t.ell), t.N);
    }
  }
  const Lab& lab(const IndexTask& t) const { return *labs.at({t.p, t.ell}); }
  const ZonalOracle& oracle(const IndexTask& t) const { return *oracles.at({t.p, t.ell, t.N}); }
};

std::vector<Record> verify_decomposition(const Sweep& s) {
  for (int q : s.qs) require_prime(q, s.suite);
  for (const auto& r : ring_tasks(s, true)) guard(r.p, r.ell, r.N);
  const auto tasks = index_tasks(s, false, false);
  Cache cache;
  for (const auto& t : tasks)
    if (!cache.labs.count({t.p, t.ell})) cache.labs[{t.p, t.ell}] = std::make_unique<Lab>(RingSpec(t.p, t.ell), s.bits);
  return run_parallel<IndexTask>(tasks, s.jobs, s.timing, [&](const IndexTask& t, std::size_t) {
    Record rec;
    rec.instance = ring_label(t.p, t.ell, t.N) + " n=" + t.n.to_string();
    const auto d = vna_decomposition(cache.lab(t), t.N, t.n);
    rec.pass = d.ok();
    rec.lhs = d.dim_sum.to_string();
    rec.rhs = d.dim_formula.to_string();
    rec.detail["dim_count"] = d.dim_count;
    rec.detail["blocks"] = d.blocks.size();
    return rec;
  });
}

std::vector<Record> verify_component(const Sweep& s) {
  for (int q : s.qs) require_prime(q, s.suite);
  for (const auto& r : ring_tasks(s, true)) guard(r.p, r.ell, r.N);
  const auto tasks = index_tasks(s, true, false);
  Cache cache;
  cache.build(tasks, s.bits, true);
  return run_parallel<IndexTask>(tasks, s.jobs, s.timing, [&](const IndexTask& t, std::size_t) {
    Record rec;
    rec.instance = ring_label(t.p, t.ell, t.N) + " n=" + t.n.to_string() + " u=" + t.u.to_string();
    const auto rep = verify_component_formula(cache.lab(t), cache.oracle(t), t.n, t.u, s.tolerance);
    rec.pass = rep.ok();
    rec.discrepancy = rep.max_discrepancy;
    rec.detail["components"] = rep.records.size();
    rec.detail["completeness_residual"] = sci(rep.completeness_residual);
    long corollary = 0;
    for (const auto& r : rep.records) corollary += r.corollary_checked || r.forced_zero;
    rec.detail["corollary_checked"] = corollary;
    return rec;
  });
}

std::vector<Record> verify_translation(const Sweep& s) {
  for (int q : s.qs) require_prime(q, s.suite);
  for (const auto& r : ring_tasks(s, true)) guard(r.p, r.ell, r.N);
  const auto tasks = index_tasks(s, false, false);
  const bool exact = s.backend == "exact";
  Cache cache;
  cache.build(tasks, s.bits, !exact);
  return run_parallel<IndexTask>(tasks, s.jobs, s.timing, [&](const IndexTask& t, std::size_t index) {
    Record rec;
    rec.instance = ring_label(t.p, t.ell, t.N) + " n=" + t.n.to_string();
    const ZonalOracle& oracle = cache.oracle(t);
    const RingSpec& R = oracle.spec();
    const UnitGroup units(R);
    auto rng = task_rng(s.seed, index);
    std::uniform_int_distribution<long> coord(0, R.order() - 1);
    std::uniform_int_distribution<std::size_t> unit(0, units.elements().size() - 1);
    double worst = 0;
    long failed = 0;
    json first_failure;
    for (int c = 0; c < s.cases; ++c) {
      Point a(static_cast<std::size_t>(t.N)), b(static_cast<std::size_t>(t.N));
      for (auto& v : a) v = coord(rng);
      for (auto& v : b) v = coord(rng);
      GroupElement g = GroupElement::identity(t.N);
      for (auto& v : g.units) v = units.elements()[unit(rng)];
      std::shuffle(g.perm.begin(), g.perm.end(), rng);
      const auto r = exact ? verify_translation_identity_exact(oracle, t.n, a, b, g)
                           : verify_translation_identity(cache.lab(t), oracle, t.n, a, b, g, s.tolerance);
      worst = std::max(worst, r.discrepancy);
      if (!r.ok && failed++ == 0)
        first_failure = {{"a", point_to_string(a)}, {"b", point_to_string(b)}, {"lhs", r.lhs.to_string()},
                         {"rhs", r.rhs}};
    }
    rec.pass = failed == 0;
    rec.discrepancy = worst;
    rec.detail["cases"] = s.cases;
    rec.detail["failed"] = failed;
    if (failed) rec.detail["first_failure"] = first_failure;
    return rec;
  });
}

std::vector<Record> verify_orthogonality(const Sweep& s) {
  for (int q : s.qs)
    if (q < 2) throw ConfigError("verify orthogonality: q must be >= 2");
  return run_parallel<RingTask>(ring_tasks(s, true), s.jobs, s.timing, [&](const RingTask& t, std::size_t) {
    Record rec;
    rec.instance = "q=" + std::to_string(t.p) + " ell=" + std::to_string(t.ell) + " N=" + std::to_string(t.N);
    const auto rep = orthogonality_check(t.ell, t.N, t.p);
    rec.pass = rep.ok();
    rec.detail["pairs"] = rep.pairs_checked;
    if (!rep.ok()) {
      const auto& f = rep.failures.front();
      rec.lhs = f.lhs.to_string();
      rec.rhs = f.rhs.to_string();
      rec.detail["first_failure"] = {{"n", f.n.to_string()}, {"m", f.m.to_string()}};
    }
    return rec;
  });
}

std::vector<Record> verify_addition(const Sweep& s) {
  AdditionSweep sweep;
  for (int q : s.qs) sweep.qs.push_back(BigRational(q));
  for (int q : s.qs)
    if (q == 1) throw ConfigError("verify addition: q = 1 divides by q - 1");
  sweep.ells = s.ells;
  sweep.jobs = s.jobs;
  sweep.timing = s.timing;
  std::vector<Record> out;
  for (int N : s.Ns) {
    sweep.N_min = sweep.N_max = N;
    const auto rep = theorem_verify(sweep);
    for (const auto& g : rep.groups) {
      Record rec;
      rec.instance = "q=" + g.q.to_string() + " ell=" + std::to_string(g.ell) + " N=" + std::to_string(g.N);
      rec.pass = g.passed == g.instances && g.instances == g.predicted && g.support_violations == 0;
      rec.detail["instances"] = g.instances;
      rec.detail["predicted"] = g.predicted;
      rec.detail["passed"] = g.passed;
      rec.detail["support_violations"] = g.support_violations;
      if (!is_prime(static_cast<int>(g.q.numerator().get_si())) || !g.q.is_integer())
        rec.detail["note"] = "q is not prime";
      rec.micros = g.micros;
      json failures = json::array();
      for (const auto& f : rep.failures)
        if (f.inst.ell() == g.ell && f.inst.q == g.q && f.inst.N == g.N && failures.size() < 20)
          failures.push_back({{"instance", f.inst.to_string()}, {"lhs", f.lhs.to_string()}, {"rhs", f.rhs.to_string()}});
      if (!failures.empty()) rec.detail["failures"] = failures;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<Record> verify_inner_product(const Sweep& s) {
  for (int q : s.qs) require_prime(q, s.suite);
  for (const auto& r : ring_tasks(s, true)) guard(r.p, r.ell, r.N);
  const auto tasks = index_tasks(s, true, true);
  Cache cache;
  cache.build(tasks, s.bits, true);
  return run_parallel<IndexTask>(tasks, s.jobs, s.timing, [&](const IndexTask& t, std::size_t index) {
    Record rec;
    rec.instance = ring_label(t.p, t.ell, t.N) + " n=" + t.n.to_string() + " t=" + std::to_string(t.t) +
                   " u=" + t.u.to_string();
    const Lab& lab = cache.lab(t);
    const auto& units = lab.units().elements();
    auto rng = task_rng(s.seed, index);
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    double worst = 0;
    double sum_worst = 0;
    long failed = 0;
    for (int c = 0; c < s.cases; ++c) {
      std::vector<long> cv(static_cast<std::size_t>(t.N));
      for (auto& v : cv) v = units[pick(rng)];
      const auto rep = inner_product_formula_check(lab, cache.oracle(t), t.n, t.t, t.u, cv, s.tolerance);
      worst = std::max(worst, rep.max_discrepancy);
      sum_worst = std::max(sum_worst, rep.sum_residual);
      failed += !rep.ok();
    }
    rec.pass = failed == 0;
    rec.discrepancy = worst;
    rec.detail["cases"] = s.cases;
    rec.detail["failed"] = failed;
    rec.detail["sum_residual"] = sci(sum_worst);
    return rec;
  });
}

json config_echo(const Sweep& s) {
  json c;
  c["q"] = s.qs;
  c["ell"] = s.ells;
  c["N"] = s.Ns;
  if (s.n_filter) {
    json n = json::array();
    for (const auto& m : *s.n_filter) n.push_back(m.to_string());
    c["n"] = n;
  }
  if (s.u_filter) {
    json u = json::array();
    for (const auto& m : *s.u_filter) u.push_back(m.to_string());
    c["u"] = u;
  }
  if (s.t_filter) c["t"] = *s.t_filter;
  c["backend"] = s.backend;
  c["precision_bits"] = s.bits;
  c["tolerance"] = sci(s.tolerance);
  c["jobs"] = s.jobs;
  if (s.cases) c["cases"] = s.cases;
  c["seed"] = s.seed;
  return c;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("--out: cannot write '" + path + "'");
  out << text;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

int cmd_verify(const std::string& suite, const Options& o) {
  Sweep s;
  s.suite = suite;
  if (!o.given("q")) throw ConfigError("verify: --q is required");
  if (!o.given("ell")) throw ConfigError("verify: --ell is required");
  if (!o.given("N")) throw ConfigError("verify: --N is required");
  s.qs = parse_int_list(o.get("q"), "--q");
  s.ells = parse_int_list(o.get("ell"), "--ell");
  for (int l : s.ells)
    if (l < 1) throw ConfigError("--ell entries must be >= 1");
  s.Ns = parse_N_list(o.get("N"));
  if (o.given("n")) s.n_filter = parse_index_list(o.get("n"), "--n");
  if (o.given("u")) s.u_filter = parse_index_list(o.get("u"), "--u");
  if (o.given("t")) s.t_filter = parse_int_list(o.get("t"), "--t");
  s.backend = o.given("backend") ? o.get("backend") : "complexHP";
  if (s.backend != "exact" && s.backend != "complexHP") throw ConfigError("--backend must be exact or complexHP");
  s.bits = o.given("precision-bits") ? static_cast<int>(parse_long(o.get("precision-bits"), "--precision-bits"))
                                     : kDefaultPrecisionBits;
  if (s.bits < 64) throw ConfigError("--precision-bits must be >= 64");
  s.tolerance = o.given("tolerance") ? parse_double(o.get("tolerance"), "--tolerance") : default_tolerance(suite);
  if (!(s.tolerance > 0)) throw ConfigError("--tolerance must be > 0");
  s.jobs = o.given("jobs") ? static_cast<int>(parse_long(o.get("jobs"), "--jobs")) : 1;
  if (s.jobs < 1) throw ConfigError("--jobs must be >= 1");
  s.cases = o.given("cases") ? static_cast<int>(parse_long(o.get("cases"), "--cases")) : default_cases(suite);
  if (s.cases < 0) throw ConfigError("--cases must be >= 0");
  s.seed = o.given("seed") ? static_cast<unsigned long>(parse_long(o.get("seed"), "--seed")) : 1;
  s.timing = o.timing;
  const std::string format = o.given("format") ? o.get("format") : "json";
  if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
  for (int q : s.qs)
    if (q < 2) throw ConfigError("--q entries must be >= 2 (q = " + std::to_string(q) + ")");

  static const std::map<std::string, std::function<std::vector<Record>(const Sweep&)>> suites = {
      {"zonal", verify_zonal},           {"gamma", verify_gamma},
      {"decomposition", verify_decomposition}, {"component", verify_component},
      {"translation", verify_translation}, {"orthogonality", verify_orthogonality},
      {"addition", verify_addition},     {"inner-product", verify_inner_product}};
  const auto records = suites.at(suite)(s);

  long passed = 0;
  for (const auto& r : records) passed += r.pass;
  const long failed = static_cast<long>(records.size()) - passed;

  std::string text;
  if (format == "json") {
    json report;
    report["command"] = "verify " + suite;
    report["config"] = config_echo(s);
    json recs = json::array();
    for (const auto& r : records) {
      json j;
      j["instance"] = r.instance;
      j["status"] = r.pass ? "pass" : "fail";
      if (r.lhs) j["lhs"] = *r.lhs;
      if (r.rhs) j["rhs"] = *r.rhs;
      if (r.discrepancy) j["discrepancy"] = sci(*r.discrepancy);
      for (auto it = r.detail.begin(); it != r.detail.end(); ++it) j[it.key()] = it.value();
      if (s.timing) j["micros"] = static_cast<long>(r.micros);
      recs.push_back(j);
    }
    report["records"] = recs;
    report["summary"] = {{"total", records.size()}, {"passed", passed}, {"failed", failed}};
    report["version"] = kVersion;
    report["timestamp"] = timestamp();
    text = report.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "instance,status,lhs,rhs,discrepancy" << (s.timing ? ",micros" : "") << "\n";
    for (const auto& r : records) {
      os << csv_quote(r.instance) << "," << (r.pass ? "pass" : "fail") << "," << csv_quote(r.lhs.value_or("")) << ","
         << csv_quote(r.rhs.value_or("")) << "," << (r.discrepancy ? sci(*r.discrepancy) : "");
      if (s.timing) os << "," << static_cast<long>(r.micros);
      os << "\n";
    }
    text = os.str();
  }
  write_output(text, o.get("out"));
  std::cerr << "verify " << suite << ": " << passed << "/" << records.size() << " passed\n";
  return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- eval, table

int cmd_eval(const std::string& kind, const Options& o) {
  for (const char* name : {"n", "x", "p", "N"})
    if (!o.given(name)) throw ConfigError(std::string("eval: --") + name + " is required");
  const long N = parse_long(o.get("N"), "--N");
  BigRational value;
  if (kind == "kraw1") {
    const long n = parse_long(o.get("n"), "--n");
    const BigRational x = parse_rational(o.get("x"), "--x");
    const BigRational p = parse_rational(o.get("p"), "--p");
    if (N < 0) throw ConfigError("eval kraw1: N must be >= 0");
    if (n < 0 || n > N) throw ConfigError("eval kraw1: need 0 <= n <= N");
    value = kraw1(static_cast<int>(n), x, p, static_cast<int>(N));
  } else {
    const MultiIndex n = parse_index(o.get("n"), "--n");
    const MultiIndex x = parse_index(o.get("x"), "--x");
    ParamVector p;
    for (const auto& item : split(o.get("p"), ',')) p.probs.push_back(parse_rational(item, "--p"));
    if (p.ell() != n.ell() || x.ell() != n.ell()) throw ConfigError("eval krawL: --n, --x, --p must have equal length");
    value = kraw_multi(n, x, p, static_cast<int>(N));
  }
  std::cout << value.to_string() << "\n";
  std::cout << "approx " << value.to_decimal(20) << "\n";
  return 0;
}

int cmd_table(const Options& o) {
  for (const char* name : {"ell", "N", "q"})
    if (!o.given(name)) throw ConfigError(std::string("table: --") + name + " is required");
  const int ell = static_cast<int>(parse_long(o.get("ell"), "--ell"));
  const int N = static_cast<int>(parse_long(o.get("N"), "--N"));
  const BigRational q = parse_rational(o.get("q"), "--q");
  if (ell < 1 || N < 0) throw ConfigError("table: need ell >= 1 and N >= 0");
  if (q.is_zero()) throw ConfigError("table: q must be nonzero");
  const std::string format = o.given("format") ? o.get("format") : "csv";
  if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
  const long side = binomial(N + ell, ell);
  if (side * side > max_table_size())
    throw SizeGuardError("table: " + std::to_string(side) + "^2 entries exceed the limit " +
                         std::to_string(max_table_size()) + " (set KKIT_MAX_TABLE to raise it)");
  const auto labels = enumerate_X(ell, N);
  const auto p = ParamVector::uniform(ell, (q - BigRational(1)) / q);
  std::vector<std::vector<std::string>> rows;
  for (const auto& n : labels) {
    std::vector<std::string> row;
    for (const auto& x : labels) row.push_back(kraw_multi(n, x, p, N).to_string());
    rows.push_back(std::move(row));
  }
  std::string text;
  if (format == "csv") {
    std::ostringstream os;
    os << csv_quote("n\\x");
    for (const auto& x : labels) os << "," << csv_quote(x.to_string());
    os << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      os << csv_quote(labels[i].to_string());
      for (const auto& v : rows[i]) os << "," << v;
      os << "\n";
    }
    text = os.str();
  } else {
    json j;
    j["ell"] = ell;
    j["N"] = N;
    j["q"] = q.to_string();
    json l = json::array();
    for (const auto& x : labels) l.push_back(x.to_string());
    j["labels"] = l;
    j["values"] = rows;
    text = j.dump(2) + "\n";
  }
  write_output(text, o.get("out"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate Krawtchouk polynomials: evaluation, tables, verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options eval_o, table_o, verify_o;
  std::string eval_kind, suite;

  auto* eval = app.add_subcommand("eval", "evaluate one polynomial exactly");
  eval->add_option("kind", eval_kind, "kraw1 or krawL")->required()->check(CLI::IsMember({"kraw1", "krawL"}));
  for (const char* name : {"n", "x", "p", "N"}) eval_o.add(eval, name, std::string("value of ") + name);
  eval->add_option("--config", eval_o.config, "JSON file with option values");

  auto* table = app.add_subcommand("table", "tabulate K_n(x; (q-1)/q; N) over X(ell, N)^2");
  table_o.add(table, "ell", "number of variables");
  table_o.add(table, "N", "size parameter");
  table_o.add(table, "q", "residue field size (any nonzero rational)");
  table_o.add(table, "format", "csv (default) or json");
  table_o.add(table, "out", "output path (default stdout)");
  table->add_option("--config", table_o.config, "JSON file with option values");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"zonal", "gamma", "decomposition", "component", "translation", "orthogonality",
                             "addition", "inner-product"}));
  verify_o.add(verify, "q", "q values, e.g. 2,3 or 2..5");
  verify_o.add(verify, "ell", "ell values, e.g. 1,2 or 1..3");
  verify_o.add(verify, "N", "N values; a single value N means 1..N");
  verify_o.add(verify, "n", "restrict to these n, e.g. \"1,1;0,2\"");
  verify_o.add(verify, "u", "restrict to these u, e.g. \"1,0;1,1\"");
  verify_o.add(verify, "t", "restrict to these t");
  verify_o.add(verify, "backend", "exact or complexHP (translation suite)");
  verify_o.add(verify, "precision-bits", "MPFR precision (default 256)");
  verify_o.add(verify, "tolerance", "numeric tolerance (suite default if omitted)");
  verify_o.add(verify, "jobs", "worker threads (default 1)");
  verify_o.add(verify, "format", "json (default) or csv");
  verify_o.add(verify, "out", "output path (default stdout)");
  verify_o.add(verify, "seed", "seed for randomized suites (default 1)");
  verify_o.add(verify, "cases", "random cases per instance (translation, inner-product)");
  verify->add_flag("--timing", verify_o.timing, "include per-record timings");
  verify->add_option("--config", verify_o.config, "JSON file with option values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval) {
      eval_o.merge_config();
      return cmd_eval(eval_kind, eval_o);
    }
    if (*table) {
      table_o.merge_config();
      return cmd_table(table_o);
    }
    verify_o.merge_config();
    return cmd_verify(suite, verify_o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
