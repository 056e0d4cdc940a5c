#include "genss/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "genss/errors.hpp"
#include "genss/quadrature.hpp"

namespace genss {

namespace {

class RateTable {
 public:
  cplx snap(cplx rate) {
    const double mag = std::max(1.0, std::abs(rate));
    if (std::abs(rate.real()) <= 1e-13 * mag) rate.real(0.0);
    if (std::abs(rate.imag()) <= 1e-13 * mag) rate.imag(0.0);
    const double tol = kRateSnapTol * mag;

    std::lock_guard lock(mutex_);
    for (const cplx& e : rates_)
      if (std::abs(rate - e) <= tol) return e;
    for (const cplx& e : rates_) {
      for (const cplx& candidate : {std::conj(e), -e, -std::conj(e)}) {
        if (std::abs(rate - candidate) <= tol) {
          rates_.push_back(candidate);
          return candidate;
        }
      }
    }
    rates_.push_back(rate);
    return rate;
  }

 private:
  std::mutex mutex_;
  std::vector<cplx> rates_;
};

RateTable& rate_table() {
  static RateTable table;
  return table;
}

constexpr AtomId kAtomS = 0;
constexpr AtomId kAtomLambda = 1;
constexpr AtomId kAtomRodOmega = 2;
constexpr AtomId kAtomRodSine = 3;
constexpr AtomId kAtomRodCosine = 4;

class AtomTable {
 public:
  AtomTable() {
    atoms_.push_back({AtomKind::S, 0, {}});
    atoms_.push_back({AtomKind::Lambda, 0, {}});
    atoms_.push_back({AtomKind::RodOmega, 0, {}});
    atoms_.push_back({AtomKind::RodSine, 0, {}});
    atoms_.push_back({AtomKind::RodCosine, 0, {}});
  }

  AtomId delta_even(int k) {
    std::unique_lock lock(mutex_);
    auto it = delta_even_.find(k);
    if (it != delta_even_.end()) return it->second;
    const auto id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back({AtomKind::DeltaEven, k, {}});
    delta_even_.emplace(k, id);
    return id;
  }

  AtomId kernel_odd(AtomKind kind, int m, cplx canonical_rate) {
    const auto key = std::make_tuple(kind == AtomKind::KernelOddSin, m, canonical_rate.real(), canonical_rate.imag());
    std::unique_lock lock(mutex_);
    auto it = kernel_odd_.find(key);
    if (it != kernel_odd_.end()) return it->second;
    const auto id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back({kind, m, canonical_rate});
    kernel_odd_.emplace(key, id);
    return id;
  }

  AtomInfo info(AtomId id) const {
    std::shared_lock lock(mutex_);
    if (id >= atoms_.size()) throw InvalidArgument(fmt::format("unknown atom id {}", id));
    return atoms_[id];
  }

 private:
  mutable std::shared_mutex mutex_;
  std::deque<AtomInfo> atoms_;
  std::map<int, AtomId> delta_even_;
  std::map<std::tuple<bool, int, double, double>, AtomId> kernel_odd_;
};

AtomTable& atom_table() {
  static AtomTable table;
  return table;
}


double lambda_at(const MollifierSpec& m) { return -std::log(m.eps); }

double rod_omega_at(const MollifierSpec& m) {
  const double lam = lambda_at(m);
  if (!(lam > 1.0)) {
    throw InvalidArgument(fmt::format("rod frequency needs eps < 1/e (lambda > 1), got eps = {}", m.eps));
  }
  return lam * lam * std::sqrt(1.0 - 1.0 / (lam * lam));
}

}  // namespace

cplx snap_rate(cplx rate) { return rate_table().snap(rate); }

int compare_magnitude(Order a, Order b) {
  if (a.eps_power != b.eps_power) return a.eps_power > b.eps_power ? -1 : 1;
  if (a.log_power != b.log_power) return a.log_power < b.log_power ? -1 : 1;
  return 0;
}

AtomInfo atom_info(AtomId id) { return atom_table().info(id); }

Order atom_order(AtomId id) {
  const AtomInfo a = atom_info(id);
  switch (a.kind) {
    case AtomKind::S:
      return {1, 0};
    case AtomKind::DeltaEven:
      return {-(2 * a.index + 1), 0};
    case AtomKind::KernelOddCos:
      // leading terms a*mu_{m+1} (m even), mu_m (m odd)
      return {a.index % 2 == 0 ? a.index + 1 : a.index, 0};
    case AtomKind::KernelOddSin:
      // w*mu_{m+1} (m even), a*w*mu_{m+2} (m odd)
      return {a.index % 2 == 0 ? a.index + 1 : a.index + 2, 0};
    case AtomKind::Lambda:
      return {0, 1};
    case AtomKind::RodOmega:
      return {0, 2};
    case AtomKind::RodSine:
      return {1, 2};
    case AtomKind::RodCosine:
      return {0, 0};
  }
  return {};
}

bool atom_invertible(AtomId id) {
  switch (atom_info(id).kind) {
    case AtomKind::S:
    case AtomKind::DeltaEven:
    case AtomKind::Lambda:
    case AtomKind::RodOmega:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::atom(AtomId id, int exponent) {
  Monomial m;
  if (exponent != 0) m.factors_.emplace_back(id, exponent);
  return m;
}

Order Monomial::order() const {
  Order o;
  for (const auto& [id, e] : factors_) {
    const Order a = atom_order(id);
    o.eps_power += e * a.eps_power;
    o.log_power += e * a.log_power;
  }
  return o;
}

bool Monomial::invertible() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return atom_invertible(f.first); });
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto& f : r.factors_) f.second = -f.second;
  return r;
}

bool Monomial::contains(AtomKind kind) const {
  return std::any_of(factors_.begin(), factors_.end(), [kind](const Factor& f) { return atom_info(f.first).kind == kind; });
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      const int e = i->second + j->second;
      if (e != 0) r.factors_.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

const char* to_string(AsymptoticClass::Tag tag) {
  switch (tag) {
    case AsymptoticClass::Tag::Zero:
      return "zero";
    case AsymptoticClass::Tag::Infinitesimal:
      return "infinitesimal";
    case AsymptoticClass::Tag::Finite:
      return "finite";
    case AsymptoticClass::Tag::Infinite:
      return "infinite";
    case AsymptoticClass::Tag::Unknown:
      return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------------- GenScalar

GenScalar::GenScalar(cplx c) {
  if (c != cplx(0.0)) terms_.emplace(Monomial{}, c);
}

GenScalar GenScalar::term(cplx coefficient, Monomial m) {
  GenScalar r;
  if (coefficient != cplx(0.0)) r.terms_.emplace(std::move(m), coefficient);
  return r;
}

GenScalar GenScalar::s(int exponent) { return term(1.0, Monomial::atom(kAtomS, exponent)); }

GenScalar GenScalar::delta_even(int k) {
  if (k < 0) throw InvalidArgument("delta_even index must be nonnegative");
  return term(1.0, Monomial::atom(atom_table().delta_even(k)));
}

GenScalar GenScalar::kernel_odd(int m, cplx rate) {
  rate = snap_rate(rate);
  return kernel_odd_cos(m, rate.real(), rate.imag()) + kernel_odd_sin(m, rate.real(), rate.imag()) * cplx(0.0, 1.0);
}

// y^m e^{-a y} trig(w y) is (-1)^m (or (-1)^{m+1} for sin) times the same
// function at -y, which flips the sign of its odd part.
GenScalar GenScalar::kernel_odd_cos(int m, double a, double w) {
  if (m < 0) throw InvalidArgument("kernel power must be nonnegative");
  a += 0.0;
  w += 0.0;
  if (m % 2 == 0 && a == 0.0) return {};
  const double sign = (a < 0.0 && m % 2 == 0) ? -1.0 : 1.0;
  return term(sign, Monomial::atom(atom_table().kernel_odd(AtomKind::KernelOddCos, m, {std::abs(a), std::abs(w)})));
}

GenScalar GenScalar::kernel_odd_sin(int m, double a, double w) {
  if (m < 0) throw InvalidArgument("kernel power must be nonnegative");
  a += 0.0;
  w += 0.0;
  if (w == 0.0 || (m % 2 == 1 && a == 0.0)) return {};
  double sign = w < 0.0 ? -1.0 : 1.0;
  if (a < 0.0 && m % 2 == 1) sign = -sign;
  return term(sign, Monomial::atom(atom_table().kernel_odd(AtomKind::KernelOddSin, m, {std::abs(a), std::abs(w)})));
}

GenScalar GenScalar::lambda(int exponent) { return term(1.0, Monomial::atom(kAtomLambda, exponent)); }
GenScalar GenScalar::rod_omega(int exponent) { return term(1.0, Monomial::atom(kAtomRodOmega, exponent)); }
GenScalar GenScalar::rod_sine() { return term(1.0, Monomial::atom(kAtomRodSine)); }
GenScalar GenScalar::rod_cosine() { return term(1.0, Monomial::atom(kAtomRodCosine)); }

bool GenScalar::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

std::optional<cplx> GenScalar::constant() const {
  if (terms_.empty()) return cplx(0.0);
  if (!is_constant()) return std::nullopt;
  return terms_.begin()->second;
}

bool GenScalar::contains(AtomKind kind) const {
  return std::any_of(terms_.begin(), terms_.end(), [kind](const auto& t) { return t.first.contains(kind); });
}

double GenScalar::scale() const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s = std::max(s, std::abs(c));
  return s;
}

void GenScalar::add_term(const Monomial& m, cplx c) {
  if (c == cplx(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  const cplx before = it->second;
  const cplx sum = before + c;
  if (std::abs(sum) <= kCancelTol * (std::abs(before) + std::abs(c))) {
    terms_.erase(it);
  } else {
    it->second = sum;
  }
}

GenScalar& GenScalar::operator+=(const GenScalar& rhs) {
  if (this == &rhs) return *this *= 2.0;
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

GenScalar& GenScalar::operator-=(const GenScalar& rhs) {
  if (this == &rhs) {
    terms_.clear();
    return *this;
  }
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

GenScalar& GenScalar::operator*=(cplx c) {
  if (c == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

GenScalar& GenScalar::operator*=(const GenScalar& rhs) { return *this = *this * rhs; }

GenScalar operator*(const GenScalar& a, const GenScalar& b) {
  GenScalar r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

GenScalar GenScalar::operator-() const {
  GenScalar r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

GenScalar gs_from_complex(cplx c) { return GenScalar(c); }

GenScalar gs_invert(const GenScalar& x) {
  if (x.is_zero()) throw NotInvertibleHere("division by zero generalized scalar");
  if (x.terms().size() != 1) {
    throw NotInvertibleHere("inversion of a multi-term generalized scalar is not supported");
  }
  const auto& [m, c] = *x.terms().begin();
  if (!m.invertible()) throw NotInvertibleHere("monomial contains non-invertible atoms");
  return GenScalar::term(1.0 / c, m.inverse());
}

GenScalar pow(const GenScalar& x, int n) {
  if (n < 0) return pow(gs_invert(x), -n);
  GenScalar r(1.0);
  GenScalar base = x;
  while (n > 0) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return r;
}

bool approx_equal(const GenScalar& a, const GenScalar& b, double tol) {
  const double floor = 1e-12 * std::max({a.scale(), b.scale(), 1e-300});
  auto check = [&](const GenScalar& x, const GenScalar& y) {
    for (const auto& [m, cx] : x.terms()) {
      auto it = y.terms().find(m);
      const cplx cy = it == y.terms().end() ? cplx(0.0) : it->second;
      const double diff = std::abs(cx - cy);
      if (diff > tol * std::max(std::abs(cx), std::abs(cy)) && diff > floor) return false;
    }
    return true;
  };
  return check(a, b) && check(b, a);
}

AsymptoticClass classify(const GenScalar& x) {
  using Tag = AsymptoticClass::Tag;
  if (x.is_zero()) return {Tag::Zero, {}};

  Order dominant{1 << 20, 0};
  int at_dominant = 0;
  for (const auto& [m, c] : x.terms()) {
    const Order o = m.order();
    const int cmp = compare_magnitude(o, dominant);
    if (cmp > 0) {
      dominant = o;
      at_dominant = 1;
    } else if (cmp == 0) {
      ++at_dominant;
    }
  }

  if (dominant.infinite()) return {at_dominant == 1 ? Tag::Infinite : Tag::Unknown, {}};
  if (dominant.infinitesimal()) return {Tag::Infinitesimal, {}};

  // Dominant order is eps^0: finite only if the constant term is the sole order-0 term.
  const auto constant = x.terms().find(Monomial{});
  if (constant != x.terms().end() && at_dominant == 1) return {Tag::Finite, constant->second};
  return {Tag::Unknown, {}};
}

cplx numeric_eval_atom(AtomId id, const MollifierSpec& ms) {
  const AtomInfo a = atom_info(id);
  const double eps = ms.eps;
  switch (a.kind) {
    case AtomKind::S:
      return eps;
    case AtomKind::DeltaEven:
      return bump_derivative(ms.profile, 2 * a.index, 0.0) / std::pow(eps, 2 * a.index + 1);
    case AtomKind::KernelOddCos:
    case AtomKind::KernelOddSin: {
      const int m = a.index;
      const double al = a.rate.real();
      const double w = a.rate.imag();
      const bool sine = a.kind == AtomKind::KernelOddSin;
      // odd part of y^m e^{al y} trig(w y), written without cancellation
      return integrate(
                 [&](double u) {
                   const double y = eps * u;
                   const bool use_sinh = (m % 2 == 0) != sine;
                   const double hyp = use_sinh ? std::sinh(al * y) : std::cosh(al * y);
                   const double trig = sine ? std::sin(w * y) : std::cos(w * y);
                   return std::pow(y, m) * hyp * trig * bump(ms.profile, u);
                 },
                 0.0, 1.0, ms.quad_tol)
          .value;
    }
    case AtomKind::Lambda:
      return lambda_at(ms);
    case AtomKind::RodOmega:
      return rod_omega_at(ms);
    case AtomKind::RodSine:
    case AtomKind::RodCosine: {
      const double lam = lambda_at(ms);
      const double om = rod_omega_at(ms);
      const bool sine = a.kind == AtomKind::RodSine;
      return integrate(
                 [&](double u) {
                   const double x = eps * u;
                   const double osc = sine ? std::sin(om * x) : std::cos(om * x);
                   return std::exp(lam * x) * osc * bump(ms.profile, u);
                 },
                 -1.0, 0.0, ms.quad_tol)
          .value;
    }
  }
  return {};
}

cplx numeric_eval_scalar(const GenScalar& x, const MollifierSpec& ms) {
  ms.validate();
  std::unordered_map<AtomId, cplx> cache;
  cplx total = 0.0;
  for (const auto& [m, c] : x.terms()) {
    cplx v = c;
    for (const auto& [id, e] : m.factors()) {
      auto it = cache.find(id);
      if (it == cache.end()) it = cache.emplace(id, numeric_eval_atom(id, ms)).first;
      v *= std::pow(it->second, e);
    }
    total += v;
  }
  return total;
}

std::optional<double> first_order_bound(const GenScalar& x) {
  cplx s_coeff = 0.0;
  cplx mu1_coeff = 0.0;
  for (const auto& [m, c] : x.terms()) {
    const Order o = m.order();
    if (!o.infinitesimal()) return std::nullopt;
    if (!(o == Order{1, 0})) {
      if (o.eps_power < 1) return std::nullopt;
      continue;  // o(s)
    }
    if (m.factors().size() != 1 || m.factors()[0].second != 1) return std::nullopt;
    const AtomInfo a = atom_info(m.factors()[0].first);
    if (a.kind == AtomKind::S) {
      s_coeff += c;
    } else if (a.kind == AtomKind::KernelOddCos) {
      mu1_coeff += c * (a.index == 0 ? a.rate.real() : 1.0);
    } else if (a.kind == AtomKind::KernelOddSin) {
      mu1_coeff += c * a.rate.imag();
    } else {
      return std::nullopt;
    }
  }
  return std::abs(s_coeff) + 0.5 * std::abs(mu1_coeff);
}

}  // namespace genss
