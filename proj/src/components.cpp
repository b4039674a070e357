#include "kkit/components.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "kkit/krawtchouk.hpp"

namespace kkit {

MultiIndex Composition::first() const {
  std::vector<int> out;
  for (const auto& level : parts) out.push_back(level.empty() ? 0 : level.front());
  return MultiIndex(std::move(out));
}

std::string Composition::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < parts.size(); ++r) {
    if (r) os << ";";
    for (std::size_t i = 0; i < parts[r].size(); ++i) os << (i ? "," : "") << parts[r][i];
  }
  os << "]";
  return os.str();
}

namespace {

void compositions_of(int total, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions_of(total - v, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Composition> enumerate_compositions(const RingSpec& spec, const MultiIndex& n) {
  if (n.ell() != spec.ell() || !n.nonnegative()) throw DomainError("compositions: bad n = " + n.to_string());
  std::vector<std::vector<std::vector<int>>> per_level;
  for (int r = 0; r < spec.ell(); ++r) {
    std::vector<std::vector<int>> cs;
    std::vector<int> cur;
    compositions_of(n[r], static_cast<int>(spec.orbit_count(r)), cur, cs);
    per_level.push_back(std::move(cs));
  }
  std::vector<Composition> out;
  Composition cur;
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == per_level.size()) {
      out.push_back(cur);
      return;
    }
    for (const auto& c : per_level[r]) {
      cur.parts.push_back(c);
      rec(r + 1);
      cur.parts.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<int> composition_word(const Lab& lab, const Composition& alpha, int N) {
  std::vector<int> word;
  for (int r = 0; r < lab.spec().ell(); ++r)
    for (int i = 1; i <= lab.spec().orbit_count(r); ++i) word.insert(word.end(), static_cast<std::size_t>(alpha.at(r, i)), lab.basis_id(r, i));
  if (static_cast<int>(word.size()) > N) throw DomainError("composition " + alpha.to_string() + " does not fit in N slots");
  word.resize(static_cast<std::size_t>(N), 0);
  std::sort(word.begin(), word.end());
  return word;
}

std::vector<std::vector<int>> distinct_permutations(std::vector<int> word) {
  std::sort(word.begin(), word.end());
  std::vector<std::vector<int>> out;
  do out.push_back(word);
  while (std::next_permutation(word.begin(), word.end()));
  return out;
}

bool VnaDecomposition::ok() const {
  for (const auto& b : blocks)
    if (!(BigRational(b.basis_count) == b.dim_formula)) return false;
  return dim_sum == dim_formula && dim_formula == BigRational(dim_count);
}

VnaDecomposition vna_decomposition(const Lab& lab, int N, const MultiIndex& n) {
  const RingSpec& spec = lab.spec();
  if (!n.in_X(N) || n.ell() != spec.ell()) throw DomainError("decomposition: n = " + n.to_string() + " is not in X(ell, N)");
  VnaDecomposition d;
  d.n = n;
  d.dim_formula = spherical_dimension(n, N, spec.q());
  d.dim_count = character_orbit_count(spec, N, n);
  for (auto& alpha : enumerate_compositions(spec, n)) {
    VnaBlock b;
    b.dim_formula = multinomial(N, n);
    for (int r = 0; r < spec.ell(); ++r) b.dim_formula *= multinomial(n[r], alpha.parts[static_cast<std::size_t>(r)]);
    std::vector<int> word = composition_word(lab, alpha, N);
    do ++b.basis_count;
    while (std::next_permutation(word.begin(), word.end()));
    d.dim_sum += b.dim_formula;
    b.alpha = std::move(alpha);
    d.blocks.push_back(std::move(b));
  }
  return d;
}

std::vector<std::vector<int>> vna_basis_words(const Lab& lab, int N, const Composition& alpha) {
  return distinct_permutations(composition_word(lab, alpha, N));
}

HPTable materialize(const Lab& lab, const std::vector<int>& word) {
  std::vector<const HPTable*> factors;
  for (int id : word) factors.push_back(&lab.basis(id));
  return tensor(factors);
}

// ---------------------------------------------------------------------------
// Symmetrization

namespace {

template <class T, class Same>
FnTable<T> symmetrize_impl(const std::vector<FnTable<T>>& factors, int N, const T& one, Same same) {
  if (factors.empty()) throw DomainError("symmetrize: no factors");
  if (static_cast<int>(factors.size()) > N) throw DomainError("symmetrize: more factors than coordinates");
  const RingSpec& spec = factors.front().spec();
  std::vector<const FnTable<T>*> palette;
  std::vector<int> ids;
  const FnTable<T> constant(spec, 1, one);
  for (const auto& f : factors) {
    if (f.N() != 1 || !(f.spec() == spec)) throw DomainError("symmetrize: factors must be functions on R");
    if (same(constant, f)) {
      ids.push_back(-1);
      continue;
    }
    int id = -1;
    for (std::size_t j = 0; j < palette.size(); ++j)
      if (same(*palette[j], f)) id = static_cast<int>(j);
    if (id < 0) {
      id = static_cast<int>(palette.size());
      palette.push_back(&f);
    }
    ids.push_back(id);
  }
  ids.resize(static_cast<std::size_t>(N), -1);  // -1: the constant 1
  FnTable<T> out(spec, N, one);
  bool first = true;
  for (const auto& perm : distinct_permutations(ids)) {
    FnTable<T> term(spec, N, one);
    for (std::size_t i = 0; i < term.size(); ++i) {
      const Point a = point_at(spec, N, i);
      for (int k = 0; k < N; ++k) {
        const int j = perm[static_cast<std::size_t>(k)];
        if (j >= 0) term[i] *= (*palette[static_cast<std::size_t>(j)])[static_cast<std::size_t>(a[static_cast<std::size_t>(k)])];
      }
    }
    if (first) {
      out = std::move(term);
      first = false;
    } else {
      out += term;
    }
  }
  return out;
}

}  // namespace

ExactTable symmetrize(const std::vector<ExactTable>& factors, int N) {
  if (factors.empty()) throw DomainError("symmetrize: no factors");
  const RingSpec& spec = factors.front().spec();
  return symmetrize_impl(factors, N, CycloNumber::from_rational(spec.p(), spec.ell(), 1),
                         [](const ExactTable& a, const ExactTable& b) { return a.values() == b.values(); });
}

HPTable symmetrize(const std::vector<HPTable>& factors, int N, double tolerance) {
  if (factors.empty()) throw DomainError("symmetrize: no factors");
  const int bits = factors.front()[0].precision();
  return symmetrize_impl(factors, N, ComplexHP(BigRational(1), bits),
                         [tolerance](const HPTable& a, const HPTable& b) { return max_distance(a, b) <= tolerance; });
}

HPTable block_symmetrize(const Lab& lab, int N, const std::vector<SymBlock>& blocks) {
  const RingSpec& spec = lab.spec();
  const int bits = lab.bits();
  int covered = 0;
  std::vector<std::vector<std::vector<int>>> perms;
  for (const auto& b : blocks) {
    if (b.start != covered || b.length < 0) throw DomainError("block symmetrization: blocks must tile the coordinates");
    if (static_cast<int>(b.ids.size()) > b.length) throw DomainError("block symmetrization: block overfull");
    covered += b.length;
    std::vector<int> word = b.ids;
    word.resize(static_cast<std::size_t>(b.length), 0);
    perms.push_back(distinct_permutations(word));
  }
  if (covered != N) throw DomainError("block symmetrization: blocks must tile the coordinates");
  HPTable out(spec, N, ComplexHP(bits));
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const Point a = point_at(spec, N, idx);
    ComplexHP v(BigRational(1), bits);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      if (blocks[bi].length == 0) continue;
      ComplexHP s(bits);
      for (const auto& perm : perms[bi]) {
        ComplexHP t(BigRational(1), bits);
        for (int k = 0; k < blocks[bi].length; ++k) {
          const int id = perm[static_cast<std::size_t>(k)];
          if (id != 0) t *= lab.basis(id)[static_cast<std::size_t>(a[static_cast<std::size_t>(blocks[bi].start + k)])];
        }
        s += t;
      }
      v *= s;
    }
    out[idx] = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Projection onto V_{n,alpha}

namespace {

// Axis-wise change of basis on a dense M^N array:
//   forward: out[.., j, ..] = M^{-1} sum_a in[.., a, ..] conj(B_j(a))
//   inverse: out[.., a, ..] = sum_j in[.., j, ..] B_j(a)
std::vector<ComplexHP> transform(const Lab& lab, int N, std::vector<ComplexHP> data, bool forward) {
  const auto M = static_cast<std::size_t>(lab.spec().order());
  const int bits = lab.bits();
  std::vector<std::vector<ComplexHP>> mat(M, std::vector<ComplexHP>(M, ComplexHP(bits)));  // mat[out][in]
  const HpReal invM = HpReal(1, bits) / HpReal(static_cast<long>(M), bits);
  for (std::size_t j = 0; j < M; ++j)
    for (std::size_t a = 0; a < M; ++a) {
      const ComplexHP& b = lab.basis(static_cast<int>(j))[a];
      if (forward)
        mat[j][a] = conj(b) * invM;
      else
        mat[a][j] = b;
    }
  std::size_t stride = data.size();
  for (int k = 0; k < N; ++k) {
    stride /= M;
    std::vector<ComplexHP> next(data.size(), ComplexHP(bits));
    for (std::size_t base = 0; base < data.size(); ++base) {
      if ((base / stride) % M != 0) continue;
      for (std::size_t o = 0; o < M; ++o) {
        ComplexHP acc(bits);
        for (std::size_t i = 0; i < M; ++i) acc += mat[o][i] * data[base + i * stride];
        next[base + o * stride] = acc;
      }
    }
    data = std::move(next);
  }
  return data;
}

std::vector<int> digits(std::size_t index, int N, std::size_t M) {
  std::vector<int> d(static_cast<std::size_t>(N));
  for (int k = N - 1; k >= 0; --k) {
    d[static_cast<std::size_t>(k)] = static_cast<int>(index % M);
    index /= M;
  }
  return d;
}

}  // namespace

BasisCoefficients::BasisCoefficients(const Lab& lab, const HPTable& f) : lab_(&lab), N_(f.N()) {
  if (!(f.spec() == lab.spec())) throw DomainError("coefficients: table over a different ring");
  coeffs_ = transform(lab, N_, f.values(), true);
}

double BasisCoefficients::mass_outside(const MultiIndex& n) const {
  const auto M = static_cast<std::size_t>(lab_->spec().order());
  HpReal mass(lab_->bits());
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    MultiIndex level = MultiIndex::zeros(lab_->spec().ell());
    for (int j : digits(idx, N_, M))
      if (j != 0) ++level[lab_->basis_label(j).r];
    if (!(level == n)) mass += coeffs_[idx].norm();
  }
  return mass.to_double();
}

HPTable BasisCoefficients::project(const Composition& alpha) const {
  const auto M = static_cast<std::size_t>(lab_->spec().order());
  const std::vector<int> target = composition_word(*lab_, alpha, N_);
  std::vector<ComplexHP> masked(coeffs_.size(), ComplexHP(lab_->bits()));
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    auto d = digits(idx, N_, M);
    std::sort(d.begin(), d.end());
    if (d == target) masked[idx] = coeffs_[idx];
  }
  const auto values = transform(*lab_, N_, std::move(masked), false);
  HPTable out(lab_->spec(), N_, ComplexHP(lab_->bits()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i];
  return out;
}

HPTable component_projection(const Lab& lab, const HPTable& f, const MultiIndex& n, const Composition& alpha,
                             double tolerance) {
  const BasisCoefficients c(lab, f);
  const double outside = c.mass_outside(n);
  if (outside > tolerance * tolerance)
    throw DomainError("component projection: f has squared mass " + std::to_string(outside) + " outside V_n");
  return c.project(alpha);
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

HpReal normalizer(const Lab& lab, int N, const MultiIndex& n) {
  // multinomial(N, n) * Q, Q = prod_r sqrt(I_r^{n_r})
  BigRational q2(1);
  for (int r = 0; r < n.ell(); ++r) q2 *= BigRational(lab.spec().orbit_count(r)).pow(n[r]);
  return HpReal(multinomial(N, n), lab.bits()) * sqrt(HpReal(q2, lab.bits()));
}

ComplexHP power(const ComplexHP& z, int e, int bits) {
  ComplexHP out(BigRational(1), bits);
  for (int k = 0; k < e; ++k) out *= z;
  return out;
}

}  // namespace

HPTable component_closed_form(const Lab& lab, int N, const MultiIndex& n, const MultiIndex& u,
                              const Composition& alpha, long* w_count) {
  const RingSpec& spec = lab.spec();
  const int ell = spec.ell();
  const int bits = lab.bits();
  if (!u.in_X(N) || u.ell() != ell) throw DomainError("closed form: u = " + u.to_string() + " is not in X(ell, N)");
  const MultiIndex a1 = alpha.first();

  // window mass sum_{r >= s} sum_{i in window(r, s)} alpha_r^(i), and the gamma prefactor
  std::vector<int> window_mass(static_cast<std::size_t>(ell), 0);
  ComplexHP prefactor(BigRational(1), bits);
  for (int s = 0; s < ell; ++s)
    for (int r = s; r < ell; ++r) {
      const auto [lo, hi] = gamma_window(spec, r, s);
      for (long i = lo + 1; i <= hi; ++i) {
        const int e = alpha.at(r, static_cast<int>(i));
        window_mass[static_cast<std::size_t>(s)] += e;
        prefactor *= power(lab.gamma(r, s, static_cast<int>(i)), e, bits);
      }
    }
  prefactor /= normalizer(lab, N, n);

  std::vector<std::pair<int, int>> slots;  // (r, s), r <= s
  for (int r = 0; r < ell; ++r)
    for (int s = r; s < ell; ++s) slots.emplace_back(r, s);
  std::vector<int> w(slots.size(), 0);
  auto W = [&](int r, int s) {
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (slots[k] == std::pair(r, s)) return w[k];
    return 0;
  };

  HPTable total(spec, N, ComplexHP(bits));
  long count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k < slots.size()) {
      for (int v = 0; v <= a1[slots[k].first]; ++v) {
        w[k] = v;
        rec(k + 1);
      }
      w[k] = 0;
      return;
    }
    // (i)
    for (int r = 0; r < ell; ++r) {
      int sum = 0;
      for (int s = r; s < ell; ++s) sum += W(r, s);
      if (sum > a1[r]) return;
    }
    // (ii)
    for (int s = 0; s < ell; ++s) {
      int sum = 0;
      for (int r = 0; r <= s; ++r) sum += W(r, s);
      if (sum > u[s] - window_mass[static_cast<std::size_t>(s)]) return;
    }
    // (iii)
    int wsum = 0;
    for (int v : w) wsum += v;
    if (u.total() + a1.total() - N > wsum) return;
    ++count;

    ComplexHP coef(BigRational(1), bits);
    for (int r = 0; r < ell; ++r) coef *= power(lab.gamma(r, r, 1), W(r, r), bits);
    std::vector<SymBlock> blocks;
    int start = 0;
    for (int s = 0; s < ell; ++s) {
      SymBlock b{start, u[s], {}};
      for (int r = 0; r <= s; ++r) b.ids.insert(b.ids.end(), static_cast<std::size_t>(W(r, s)), lab.basis_id(r, 1));
      for (int r = s; r < ell; ++r) {
        const auto [lo, hi] = gamma_window(spec, r, s);
        for (long i = lo + 1; i <= hi; ++i)
          b.ids.insert(b.ids.end(), static_cast<std::size_t>(alpha.at(r, static_cast<int>(i))), lab.basis_id(r, static_cast<int>(i)));
      }
      blocks.push_back(std::move(b));
      start += u[s];
    }
    SymBlock last{start, N - start, {}};
    for (int r = 0; r < ell; ++r) {
      int rest = a1[r];
      for (int s = r; s < ell; ++s) rest -= W(r, s);
      last.ids.insert(last.ids.end(), static_cast<std::size_t>(rest), lab.basis_id(r, 1));
    }
    blocks.push_back(std::move(last));
    HPTable term = block_symmetrize(lab, N, blocks);
    term.scale(coef);
    total += term;
  };
  rec(0);
  total.scale(prefactor);
  if (w_count) *w_count = count;
  return total;
}

bool admissible_for_ones(const RingSpec& spec, const Composition& alpha) {
  for (int r = 1; r < spec.ell(); ++r)
    for (long i = 2; i <= spec.orbit_count(r - 1); ++i)
      if (alpha.at(r, static_cast<int>(i)) != 0) return false;
  return true;
}

HPTable component_corollary_form(const Lab& lab, int N, const MultiIndex& n, int t, const Composition& alpha) {
  const RingSpec& spec = lab.spec();
  const int ell = spec.ell();
  const int bits = lab.bits();
  if (t < 0 || t > N) throw DomainError("corollary form: t must lie in [0, N]");
  if (!admissible_for_ones(spec, alpha)) throw DomainError("corollary form: alpha violates the 1^t support condition");
  const MultiIndex a1 = alpha.first();

  ComplexHP prefactor(BigRational(1), bits);
  std::vector<int> inner_ids;
  for (int r = 0; r < ell; ++r) {
    const auto [lo, hi] = gamma_window(spec, r, 0);
    for (long i = lo + 1; i <= hi; ++i) {
      const int e = alpha.at(r, static_cast<int>(i));
      prefactor *= power(lab.gamma(r, 0, static_cast<int>(i)), e, bits);
      inner_ids.insert(inner_ids.end(), static_cast<std::size_t>(e), lab.basis_id(r, static_cast<int>(i)));
    }
  }
  prefactor /= normalizer(lab, N, n);

  HPTable total(spec, N, ComplexHP(bits));
  const int z_lo = std::max(0, t + a1.total() - N);
  const int z_hi = std::min(a1[0], t + a1.total() - n.total());
  for (int z = z_lo; z <= z_hi; ++z) {
    SymBlock head{0, t, inner_ids};
    head.ids.insert(head.ids.end(), static_cast<std::size_t>(z), lab.basis_id(0, 1));
    SymBlock tail{t, N - t, {}};
    tail.ids.insert(tail.ids.end(), static_cast<std::size_t>(a1[0] - z), lab.basis_id(0, 1));
    for (int r = 1; r < ell; ++r) tail.ids.insert(tail.ids.end(), static_cast<std::size_t>(a1[r]), lab.basis_id(r, 1));
    HPTable term = block_symmetrize(lab, N, {head, tail});
    term.scale(power(lab.gamma(0, 0, 1), z, bits));
    total += term;
  }
  total.scale(prefactor);
  return total;
}

HPTable omega_table(const Lab& lab, const ZonalOracle& oracle, const MultiIndex& n) {
  return to_hp(oracle.table(n), lab.bits());
}

bool ComponentReport::ok() const {
  return std::all_of(records.begin(), records.end(), [](const ComponentRecord& r) { return r.ok; });
}

namespace {

double max_abs(const HPTable& f) {
  double m = 0;
  for (const auto& v : f.values()) m = std::max(m, v.abs().to_double());
  return m;
}

}  // namespace

ComponentReport verify_component_formula(const Lab& lab, const ZonalOracle& oracle, const MultiIndex& n,
                                         const MultiIndex& u, double tolerance) {
  const RingSpec& spec = lab.spec();
  const int N = oracle.N();
  ComponentReport rep;
  rep.n = n;
  rep.u = u;
  const HPTable f = translate(omega_table(lab, oracle, n), canonical_point(spec, N, u));
  const BasisCoefficients coeffs(lab, f);
  if (coeffs.mass_outside(n) > tolerance * tolerance)
    throw DomainError("translated zonal function has mass outside V_n");

  bool ones_form = true;  // u = t e_0
  for (int s = 1; s < spec.ell(); ++s) ones_form = ones_form && u[s] == 0;

  HPTable sum(spec, N, ComplexHP(lab.bits()));
  for (const auto& alpha : enumerate_compositions(spec, n)) {
    ComponentRecord rec;
    rec.alpha = alpha;
    const HPTable direct = coeffs.project(alpha);
    sum += direct;
    rec.direct_norm = max_abs(direct);
    const HPTable closed = component_closed_form(lab, N, n, u, alpha, &rec.w_count);
    rec.discrepancy = max_distance(direct, closed);
    rec.ok = rec.discrepancy <= tolerance;
    if (ones_form) {
      if (admissible_for_ones(spec, alpha)) {
        rec.corollary_checked = true;
        rec.corollary_discrepancy = max_distance(direct, component_corollary_form(lab, N, n, u[0], alpha));
        rec.ok = rec.ok && rec.corollary_discrepancy <= tolerance;
      } else {
        rec.forced_zero = true;
        rec.ok = rec.ok && rec.direct_norm <= tolerance;
      }
    }
    rep.max_discrepancy = std::max({rep.max_discrepancy, rec.discrepancy, rec.corollary_discrepancy});
    rep.records.push_back(std::move(rec));
  }
  rep.completeness_residual = max_distance(sum, f);
  if (rep.completeness_residual > tolerance) {
    ComponentRecord bad;
    bad.ok = false;
    bad.discrepancy = rep.completeness_residual;
    rep.records.push_back(std::move(bad));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Translation identity

namespace {

Point difference(const RingSpec& spec, const Point& a, const Point& b) {
  Point d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = spec.reduce(a[k] - b[k]);
  return d;
}

}  // namespace

TranslationRecord verify_translation_identity(const Lab& lab, const ZonalOracle& oracle, const MultiIndex& n,
                                              const Point& a, const Point& b, const GroupElement& g,
                                              double tolerance) {
  const RingSpec& spec = lab.spec();
  TranslationRecord rec;
  rec.lhs = oracle.value(n, orbit_index(spec, difference(spec, g.apply(spec, a), b)));
  const HPTable omega = omega_table(lab, oracle, n);
  const HPTable left = act(g, translate(omega, a));
  const HPTable right = translate(omega, b);
  ComplexHP rhs = inner_product(left, right, lab.bits());
  rhs *= HpReal(oracle.orbit_size(n), lab.bits());
  rec.rhs = rhs.to_string(30);
  rec.discrepancy = distance(rhs, ComplexHP(rec.lhs, lab.bits()));
  rec.ok = rec.discrepancy <= tolerance;
  return rec;
}

TranslationRecord verify_translation_identity_exact(const ZonalOracle& oracle, const MultiIndex& n,
                                                    const Point& a, const Point& b, const GroupElement& g) {
  const RingSpec& spec = oracle.spec();
  TranslationRecord rec;
  rec.lhs = oracle.value(n, orbit_index(spec, difference(spec, g.apply(spec, a), b)));
  const ExactTable omega = oracle.table(n);
  CycloNumber rhs = inner_product(act(g, translate(omega, a)), translate(omega, b));
  rhs *= BigRational(oracle.orbit_size(n));
  try {
    const BigRational value = cyclo_to_rational(rhs);
    rec.rhs = value.to_string();
    rec.ok = value == rec.lhs;
    rec.discrepancy = std::abs((value - rec.lhs).to_double());
  } catch (const NotRational&) {
    std::ostringstream os;
    os << rhs;
    rec.rhs = os.str();
    rec.ok = false;
    rec.discrepancy = 1;
  }
  return rec;
}

}  // namespace kkit
