#include "kkit/addition.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "kkit/errors.hpp"
#include "kkit/krawtchouk.hpp"

namespace kkit {

namespace {

void check_q(const BigRational& q) {
  if (q == BigRational(1)) throw DomainError("q = 1: the formula divides by q - 1");
  if (q.is_zero()) throw DomainError("q = 0: the parameter (q-1)/q is undefined");
}

std::vector<int> key_of(std::initializer_list<const MultiIndex*> parts, std::initializer_list<int> extra) {
  std::vector<int> key;
  for (const MultiIndex* m : parts) key.insert(key.end(), m->parts().begin(), m->parts().end());
  key.insert(key.end(), extra.begin(), extra.end());
  return key;
}

std::size_t X_size(int ell, int N) { return static_cast<std::size_t>(binomial(N + ell, ell)); }

}  // namespace

void AdditionInstance::validate() const {
  check_q(q);
  const int l = ell();
  if (l < 1) throw DomainError("addition instance: ell must be >= 1");
  if (N < 1) throw DomainError("addition instance: N must be >= 1");
  if (u.ell() != l || y.ell() != l) throw DomainError("addition instance: n, u, y must have the same length");
  if (!n.in_X(N)) throw DomainError("addition instance: n must lie in X(ell, N)");
  if (t < 0 || t > N) throw DomainError("addition instance: t must satisfy 0 <= t <= N");
  if (!u.in_X(N)) throw DomainError("addition instance: u must lie in X(ell, N)");
  if (t > u[0]) throw DomainError("addition instance: t <= u_0 is required");
  if (!y.in_X(t)) throw DomainError("addition instance: y must lie in X(ell, t)");
  if (!lhs_argument().in_X(N)) throw DomainError("addition instance: u + y - t e_0 must lie in X(ell, N)");
}

MultiIndex AdditionInstance::lhs_argument() const { return ShiftedIndex{u + y, -t}.value(); }

std::string AdditionInstance::to_string() const {
  std::ostringstream os;
  os << "q=" << q << " N=" << N << " n=" << n << " t=" << t << " u=" << u << " y=" << y;
  return os.str();
}

BigRational theorem_lhs(const AdditionInstance& inst) {
  inst.validate();
  AdditionEvaluator ev(inst.q, inst.ell(), inst.N);
  return ev.lhs(inst.n, inst.t, inst.u, inst.y);
}

BigRational theorem_rhs(const AdditionInstance& inst, SupportAudit* audit) {
  inst.validate();
  AdditionEvaluator ev(inst.q, inst.ell(), inst.N);
  return ev.rhs(inst.n, inst.t, inst.u, inst.y, audit);
}

AdditionEvaluator::AdditionEvaluator(BigRational q, int ell, int N)
    : q_(std::move(q)), ell_(ell), N_(N), alphas_(enumerate_X(ell, N)) {
  check_q(q_);
  p_ = (q_ - BigRational(1)) / q_;
}

BigRational AdditionEvaluator::lhs(const MultiIndex& n, int t, const MultiIndex& u, const MultiIndex& y) {
  return kraw_multi(n, ShiftedIndex{u + y, -t}.value(), ParamVector::uniform(ell_, p_), N_);
}

const BigRational& AdditionEvaluator::left_factor(const MultiIndex& alpha, int z, int t, const MultiIndex& u) {
  auto key = key_of({&alpha, &u}, {z, t});
  auto it = left_.find(key);
  if (it != left_.end()) return it->second;
  const MultiIndex az = ShiftedIndex{alpha, -z}.value();
  BigRational v = multinomial(N_ - t, az);
  if (!v.is_zero()) {
    const MultiIndex ut = ShiftedIndex{u, -t}.value();
    v *= kraw_multi(az, ut, ParamVector::uniform(ell_, p_), N_ - t);
    v /= (q_ - BigRational(1)).pow(2 * z);
  }
  return left_.emplace(std::move(key), std::move(v)).first->second;
}

const BigRational& AdditionEvaluator::right_factor(const MultiIndex& m, const MultiIndex& y, int t) {
  auto key = key_of({&m, &y}, {t});
  auto it = right_.find(key);
  if (it != right_.end()) return it->second;
  const BigRational one(1);
  const BigRational qm1 = q_ - one;
  const BigRational qm2 = q_ - BigRational(2);

  // r = 0: (q(q-2)/(q-1)^2)^e (-N_0)_e K_e(y_0; (q-2)/(q-1); N_0), with (q-2)^e
  // cancelled against the k-th power of the parameter.
  const int e = m[0];
  const int N0 = t - m.suffix_sum(1);
  BigRational f0;
  for (int k = 0; k <= e; ++k) {
    BigRational term = pochhammer(BigRational(-e), k) * pochhammer(BigRational(-y[0]), k) *
                       pochhammer(BigRational(-N0 + k), e - k) / factorial(k);
    if (term.is_zero()) continue;
    f0 += term * qm2.pow(e - k) * qm1.pow(k);
  }
  f0 *= q_.pow(e) / qm1.pow(2 * e);

  BigRational v = f0;
  for (int r = 1; r < ell_ && !v.is_zero(); ++r) {
    const int Nr = t - y.prefix_sum(r - 1) - m.suffix_sum(r + 1);
    v *= scaled_kraw1(m[r], BigRational(y[r]), p_, Nr);
  }
  if (!v.is_zero()) v /= pochhammer(BigRational(-t), m.total());
  return right_.emplace(std::move(key), std::move(v)).first->second;
}

BigRational AdditionEvaluator::rhs(const MultiIndex& n, int t, const MultiIndex& u, const MultiIndex& y,
                                   SupportAudit* audit) {
  BigRational sum;
  std::vector<int> parts;
  for (const auto& alpha : alphas_) {
    const MultiIndex m = n - alpha;
    for (int z = 0; z <= t; ++z) {
      if (audit) ++audit->terms;
      parts = m.parts();
      parts.push_back(z);
      const BigRational m1 = multinomial(t, parts);
      if (m1.is_zero()) continue;
      const BigRational& left = left_factor(alpha, z, t, u);
      if (left.is_zero()) continue;
      const BigRational& right = right_factor(m, y, t);
      if (right.is_zero()) continue;
      if (audit) {
        ++audit->nonzero;
        if (!m.nonnegative() || m.total() + z > t) ++audit->violations;
      }
      sum += m1 * left * right;
    }
  }
  return sum / multinomial(N_, n);
}

long predicted_instance_count(int ell, int N) {
  long per_n = 0;
  for (int t = 0; t <= N; ++t) per_n += static_cast<long>(X_size(ell, N - t) * X_size(ell, t));
  return static_cast<long>(X_size(ell, N)) * per_n;
}

namespace {

struct SweepTask {
  std::size_t group = 0;
  MultiIndex n;
};

struct TaskResult {
  long instances = 0;
  long passed = 0;
  long violations = 0;
  double micros = 0;
  std::vector<AdditionFailure> failures;
};

TaskResult run_task(const AdditionGroup& g, const MultiIndex& n, bool timing) {
  TaskResult res;
  const auto start = std::chrono::steady_clock::now();
  AdditionEvaluator ev(g.q, g.ell, g.N);
  for (int t = 0; t <= g.N; ++t)
    for (const auto& ut : enumerate_X(g.ell, g.N - t)) {
      const MultiIndex u = ShiftedIndex{ut, t}.value();
      for (const auto& y : enumerate_X(g.ell, t)) {
        SupportAudit audit;
        const BigRational lhs = ev.lhs(n, t, u, y);
        const BigRational rhs = ev.rhs(n, t, u, y, &audit);
        ++res.instances;
        res.violations += audit.violations;
        if (lhs == rhs)
          ++res.passed;
        else
          res.failures.push_back({AdditionInstance{g.q, g.N, n, t, u, y}, lhs, rhs});
      }
    }
  if (timing)
    res.micros = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace

AdditionReport theorem_verify(const AdditionSweep& sweep) {
  if (sweep.qs.empty() || sweep.ells.empty()) throw ConfigError("addition sweep: empty q or ell list");
  if (sweep.N_min < 1 || sweep.N_max < sweep.N_min) throw ConfigError("addition sweep: need 1 <= N_min <= N_max");
  for (const auto& q : sweep.qs) check_q(q);
  for (int l : sweep.ells)
    if (l < 1) throw ConfigError("addition sweep: ell must be >= 1");

  AdditionReport report;
  std::vector<SweepTask> tasks;
  for (const auto& q : sweep.qs)
    for (int l : sweep.ells)
      for (int N = sweep.N_min; N <= sweep.N_max; ++N) {
        AdditionGroup g;
        g.q = q;
        g.ell = l;
        g.N = N;
        g.predicted = predicted_instance_count(l, N);
        report.groups.push_back(g);
        for (const auto& n : enumerate_X(l, N)) tasks.push_back({report.groups.size() - 1, n});
      }

  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++)
      results[i] = run_task(report.groups[tasks[i].group], tasks[i].n, sweep.timing);
  };
  const int jobs = std::max(1, sweep.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    AdditionGroup& g = report.groups[tasks[i].group];
    TaskResult& r = results[i];
    g.instances += r.instances;
    g.passed += r.passed;
    g.support_violations += r.violations;
    g.micros += r.micros;
    for (auto& f : r.failures) report.failures.push_back(std::move(f));
  }
  for (const auto& g : report.groups) {
    report.predicted += g.predicted;
    report.instances += g.instances;
    report.passed += g.passed;
    report.support_violations += g.support_violations;
    report.micros += g.micros;
  }
  return report;
}

std::vector<long> realizing_units(const RingSpec& spec, int N, int t, const MultiIndex& y) {
  if (!y.in_X(t) || t > N) throw DomainError("realizing units: need y in X(ell, t) and t <= N");
  if (y[0] > 0 && spec.p() == 2) return {};
  std::vector<long> c(static_cast<std::size_t>(N), 1);
  std::size_t k = 0;
  for (int r = 0; r < spec.ell(); ++r)
    for (int j = 0; j < y[r]; ++j) c[k++] = r == 0 ? 2 : spec.reduce(1 + spec.uniformizer_power(r));
  return c;
}

HarmonicReport harmonic_consistency_check(int p, int ell, int N) {
  const RingSpec spec(p, ell);
  const ZonalOracle oracle(spec, N);
  AdditionEvaluator ev(BigRational(p), ell, N);
  HarmonicReport rep;
  rep.p = p;
  rep.ell = ell;
  rep.N = N;
  for (int t = 0; t <= N; ++t)
    for (const auto& ut : enumerate_X(ell, N - t)) {
      const MultiIndex u = ShiftedIndex{ut, t}.value();
      const Point pu = canonical_point(spec, N, u);
      for (const auto& y : enumerate_X(ell, t)) {
        const auto c = realizing_units(spec, N, t, y);
        if (c.empty()) {
          rep.skipped += static_cast<long>(oracle.labels().size());
          continue;
        }
        Point a(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k) {
          const long ck = k < t ? c[static_cast<std::size_t>(k)] : 0;
          a[static_cast<std::size_t>(k)] = spec.reduce(ck - pu[static_cast<std::size_t>(k)]);
        }
        const auto omega = oracle.values(a);
        for (std::size_t j = 0; j < omega.size(); ++j) {
          const MultiIndex& n = oracle.labels()[j];
          const BigRational lhs = ev.lhs(n, t, u, y);
          ++rep.checked;
          if (lhs != omega[j]) rep.mismatches.push_back({AdditionInstance{BigRational(p), N, n, t, u, y}, a, lhs, omega[j]});
        }
      }
    }
  return rep;
}

bool InnerProductReport::ok() const {
  if (!(sum_residual <= tolerance)) return false;
  for (const auto& r : records)
    if (!r.ok) return false;
  return true;
}

InnerProductReport inner_product_formula_check(const Lab& lab, const ZonalOracle& oracle, const MultiIndex& n,
                                               int t, const MultiIndex& u, const std::vector<long>& c,
                                               double tolerance) {
  const RingSpec& spec = lab.spec();
  const int ell = spec.ell();
  const int N = oracle.N();
  const int bits = lab.bits();
  if (!(oracle.spec() == spec)) throw DomainError("inner product check: oracle and lab disagree on the ring");
  if (!n.in_X(N) || !u.in_X(N)) throw DomainError("inner product check: n and u must lie in X(ell, N)");
  if (t < 0 || t > u[0]) throw DomainError("inner product check: 0 <= t <= u_0 is required");
  if (static_cast<int>(c.size()) != N) throw DomainError("inner product check: c must have N entries");
  for (long ck : c)
    if (!is_unit(spec, ck)) throw DomainError("inner product check: c must be a vector of units");

  InnerProductReport rep;
  rep.n = n;
  rep.t = t;
  rep.u = u;
  rep.c = c;
  rep.tolerance = tolerance;

  const HPTable omega = omega_table(lab, oracle, n);
  const Point ones = ones_point(N, t);
  const Point pu = canonical_point(spec, N, u);
  const BasisCoefficients left(lab, translate(omega, ones));
  const BasisCoefficients right(lab, translate(omega, pu));
  GroupElement g = GroupElement::identity(N);
  g.units = c;

  // Prefactor 1/(multinomial(N, n)^2 prod_r I_r^{n_r}); gamma_{1,1}^(1) is gamma_{r,r}^(1) for any r.
  BigRational scale = multinomial(N, n).pow(2);
  for (int r = 0; r < ell; ++r) scale *= BigRational(spec.orbit_count(r)).pow(n[r]);
  const ComplexHP g11 = lab.gamma(0, 0, 1);
  auto C = [bits](long a, long b) { return ComplexHP(BigRational(binomial(a, b)), bits); };
  auto g11_pow = [&](int k) {
    ComplexHP v(BigRational(1), bits);
    for (int j = 0; j < k; ++j) v *= g11;
    return v;
  };

  ComplexHP total(bits);
  for (const auto& alpha : enumerate_compositions(spec, n)) {
    InnerProductRecord rec;
    rec.alpha = alpha;
    rec.excluded = !admissible_for_ones(spec, alpha);
    const ComplexHP direct = inner_product(act(g, left.project(alpha)), right.project(alpha), bits);
    total += direct;
    rec.direct = direct.to_string(30);
    rec.direct_abs = direct.abs().to_double();
    if (rec.excluded) {
      rec.discrepancy = rec.direct_abs;
      rec.ok = rec.discrepancy <= tolerance;
      rep.max_discrepancy = std::max(rep.max_discrepancy, rec.discrepancy);
      rep.records.push_back(std::move(rec));
      continue;
    }

    const MultiIndex a1 = alpha.first();
    ComplexHP val(BigRational(1) / scale, bits);
    std::vector<int> word;
    for (int r = 0; r < ell; ++r) {
      const auto [lo, hi] = gamma_window(spec, r, 0);
      for (long i = lo + 1; i <= hi; ++i) {
        const int ii = static_cast<int>(i);
        const HpReal mod2 = lab.gamma(r, 0, ii).norm();
        for (int k = 0; k < alpha.at(r, ii); ++k) {
          val *= mod2;
          word.push_back(lab.basis_id(r, ii));
        }
      }
    }

    // sum over disjoint placements of the window characters among the first t coordinates
    ComplexHP xs(bits);
    if (static_cast<int>(word.size()) <= t) {
      word.resize(static_cast<std::size_t>(t), 0);
      for (const auto& perm : distinct_permutations(word)) {
        ComplexHP prod(BigRational(1), bits);
        for (int k = 0; k < t; ++k) {
          const int id = perm[static_cast<std::size_t>(k)];
          if (id != 0) prod *= lab.xi(lab.basis_label(id).i).value(c[static_cast<std::size_t>(k)]);
        }
        xs += prod;
      }
    }
    val *= xs;

    for (int s = 1; s < ell; ++s) {
      ComplexHP f(bits);
      for (int k = 0; k <= N; ++k)
        f += C(u[s], k) * C(N - u.prefix_sum(s) - a1.suffix_sum(s + 1), a1[s] - k) * g11_pow(k);
      val *= f;
    }
    ComplexHP f0(bits);
    for (int z = 0; z <= N; ++z)
      for (int k = 0; k <= N; ++k)
        f0 += C(t - n.total() + a1.total(), z) * C(u[0] - t, k) * C(N - u[0] - a1.suffix_sum(1), a1[0] - z - k) *
              g11_pow(2 * z + k);
    val *= f0;

    rec.formula = val.to_string(30);
    rec.discrepancy = distance(direct, val);
    rec.ok = rec.discrepancy <= tolerance;
    rep.max_discrepancy = std::max(rep.max_discrepancy, rec.discrepancy);
    rep.records.push_back(std::move(rec));
  }

  Point diff(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    diff[kk] = spec.reduce(c[kk] * ones[kk] - pu[kk]);
  }
  total *= HpReal(oracle.orbit_size(n), bits);
  rep.sum_residual = distance(total, ComplexHP(oracle.value(n, diff), bits));
  return rep;
}

}  // namespace kkit
