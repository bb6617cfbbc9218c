#pragma once

// Exact coefficient ring of the symbolic layer.
//
// A Scalar is P / M^k where P is a Laurent polynomial with Gaussian-rational
// coefficients in the physical symbols (hbar, l_P, masses, per-particle
// constants, gamma~, alpha~) and M = m_1 + ... + m_N is the total mass of an
// N-particle system. The pair is kept reduced (M does not divide P), which
// makes the representation canonical: two scalars are equal iff their
// members compare equal.

#include <boost/rational.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncps/errors.hpp"

namespace ncps {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational(0)) : re_(re), im_(im) {}
  GaussianRational(std::int64_t re) : re_(re) {}  // NOLINT(google-explicit-constructor)

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.numerator() == 0 && im_.numerator() == 0; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    const Rational norm = b.re_ * b.re_ + b.im_ * b.im_;
    if (norm.numerator() == 0) throw InvalidBinding("division by zero Gaussian rational");
    return {(a.re_ * b.re_ + a.im_ * b.im_) / norm, (a.im_ * b.re_ - a.re_ * b.im_) / norm};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string to_string() const {
    if (im_.numerator() == 0) return ncps::to_string(re_);
    std::string imag;
    if (im_ == Rational(1)) {
      imag = "I";
    } else if (im_ == Rational(-1)) {
      imag = "-I";
    } else {
      imag = ncps::to_string(im_) + "*I";
    }
    if (re_.numerator() == 0) return imag;
    std::string out = "(" + ncps::to_string(re_);
    if (imag.front() != '-') out += "+";
    return out + imag + ")";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

enum class SymbolKind : std::uint8_t { hbar, planck_length, gamma_tilde, alpha_tilde, mass, c_theta, c_eta };

/// A commuting scalar symbol. `particle` is nonzero only for per-particle symbols.
struct Symbol {
  SymbolKind kind = SymbolKind::hbar;
  int particle = 0;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;

  std::string name() const {
    switch (kind) {
      case SymbolKind::hbar: return "hbar";
      case SymbolKind::planck_length: return "l_P";
      case SymbolKind::gamma_tilde: return "gamma~";
      case SymbolKind::alpha_tilde: return "alpha~";
      case SymbolKind::mass: return "m[" + std::to_string(particle) + "]";
      case SymbolKind::c_theta: return "c_theta[" + std::to_string(particle) + "]";
      case SymbolKind::c_eta: return "c_eta[" + std::to_string(particle) + "]";
    }
    return "?";
  }
};

namespace sym {
inline Symbol hbar() { return {SymbolKind::hbar, 0}; }
inline Symbol planck_length() { return {SymbolKind::planck_length, 0}; }
inline Symbol gamma_tilde() { return {SymbolKind::gamma_tilde, 0}; }
inline Symbol alpha_tilde() { return {SymbolKind::alpha_tilde, 0}; }
inline Symbol mass(int n) { return {SymbolKind::mass, n}; }
inline Symbol c_theta(int n) { return {SymbolKind::c_theta, n}; }
inline Symbol c_eta(int n) { return {SymbolKind::c_eta, n}; }
}  // namespace sym

/// Product of integer (possibly negative) powers of symbols, sorted by symbol.
class LaurentMonomial {
 public:
  LaurentMonomial() = default;
  explicit LaurentMonomial(Symbol s, int exponent = 1) {
    if (exponent != 0) factors_.emplace_back(s, exponent);
  }

  const std::vector<std::pair<Symbol, int>>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  int exponent(const Symbol& s) const {
    for (const auto& [f, e] : factors_) {
      if (f == s) return e;
    }
    return 0;
  }

  LaurentMonomial without(const Symbol& s) const {
    LaurentMonomial out;
    for (const auto& f : factors_) {
      if (f.first != s) out.factors_.push_back(f);
    }
    return out;
  }

  LaurentMonomial inverse() const {
    LaurentMonomial out = *this;
    for (auto& f : out.factors_) f.second = -f.second;
    return out;
  }

  friend LaurentMonomial operator*(const LaurentMonomial& a, const LaurentMonomial& b) {
    LaurentMonomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto ia = a.factors_.begin();
    auto ib = b.factors_.begin();
    while (ia != a.factors_.end() || ib != b.factors_.end()) {
      if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
        out.factors_.push_back(*ia++);
      } else if (ia == a.factors_.end() || ib->first < ia->first) {
        out.factors_.push_back(*ib++);
      } else {
        const int e = ia->second + ib->second;
        if (e != 0) out.factors_.emplace_back(ia->first, e);
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  friend auto operator<=>(const LaurentMonomial&, const LaurentMonomial&) = default;

  std::string to_string() const {
    std::string out;
    for (const auto& [s, e] : factors_) {
      if (!out.empty()) out += "*";
      out += s.name();
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  std::vector<std::pair<Symbol, int>> factors_;
};

/// Laurent polynomial over the Gaussian rationals; zero coefficients are never stored.
class LaurentPoly {
 public:
  using TermMap = std::map<LaurentMonomial, GaussianRational>;

  LaurentPoly() = default;
  LaurentPoly(GaussianRational c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(LaurentMonomial{}, c);
  }
  LaurentPoly(const LaurentMonomial& m, GaussianRational c = 1) {
    if (!c.is_zero()) terms_.emplace(m, c);
  }
  explicit LaurentPoly(Symbol s, int exponent = 1) : LaurentPoly(LaurentMonomial(s, exponent)) {}

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const LaurentMonomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Nonzero single-term polynomials are the units of the ring.
  std::optional<LaurentPoly> inverse() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [m, c] = *terms_.begin();
    return LaurentPoly(m.inverse(), GaussianRational(1) / c);
  }

  std::optional<GaussianRational> as_constant() const {
    if (terms_.empty()) return GaussianRational(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
    return std::nullopt;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      std::string term;
      if (m.is_one()) {
        term = c.to_string();
      } else if (c == GaussianRational(1)) {
        term = m.to_string();
      } else if (c == GaussianRational(-1)) {
        term = "-" + m.to_string();
      } else {
        term = c.to_string() + "*" + m.to_string();
      }
      if (!out.empty()) out += term.front() == '-' ? " " : " + ";
      out += term;
    }
    return out;
  }

 private:
  TermMap terms_;
};

namespace detail {

inline LaurentPoly pow(const LaurentPoly& base, int e) {
  LaurentPoly out(GaussianRational(1));
  for (int k = 0; k < e; ++k) out = out * base;
  return out;
}

inline LaurentPoly total_mass_poly(int arity) {
  LaurentPoly m;
  for (int n = 1; n <= arity; ++n) m += LaurentPoly(sym::mass(n));
  return m;
}

/// Exact quotient p / (m_1 + ... + m_arity) in the Laurent ring, if it exists.
inline std::optional<LaurentPoly> divide_by_total_mass(const LaurentPoly& p, int arity) {
  if (p.is_zero()) return p;
  const Symbol pivot = sym::mass(arity);
  if (arity == 1) return p * LaurentPoly(pivot, -1);

  // Clear negative exponents so the division happens in the polynomial ring.
  std::map<Symbol, int> lowest;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [s, e] : m.factors()) {
      if (e < 0) lowest[s] = std::min(lowest[s], e);
    }
  }
  LaurentMonomial shift;
  for (const auto& [s, e] : lowest) shift = shift * LaurentMonomial(s, -e);
  const LaurentPoly shifted = p * LaurentPoly(shift);

  std::map<int, LaurentPoly> by_power;
  for (const auto& [m, c] : shifted.terms()) by_power[m.exponent(pivot)].add_term(m.without(pivot), c);
  const int degree = by_power.rbegin()->first;
  if (degree == 0) return std::nullopt;

  const LaurentPoly rest = total_mass_poly(arity - 1);
  auto coeff = [&](int j) {
    auto it = by_power.find(j);
    return it == by_power.end() ? LaurentPoly{} : it->second;
  };
  // Synthetic division by (pivot + rest).
  std::vector<LaurentPoly> quotient(static_cast<std::size_t>(degree));
  quotient[degree - 1] = coeff(degree);
  for (int j = degree - 1; j >= 1; --j) quotient[j - 1] = coeff(j) - rest * quotient[j];
  if (!(coeff(0) - rest * quotient[0]).is_zero()) return std::nullopt;

  LaurentPoly result;
  for (int j = 0; j < degree; ++j) result += quotient[j] * LaurentPoly(pivot, j);
  return result * LaurentPoly(shift.inverse());
}

}  // namespace detail

class Scalar;
using ScalarBindings = std::map<Symbol, Scalar>;

class Scalar {
 public:
  Scalar() = default;
  Scalar(GaussianRational c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  Scalar(std::int64_t c) : num_(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Symbol s, int exponent = 1) : num_(s, exponent) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(LaurentPoly num) : num_(std::move(num)) {}

  static Scalar i() { return Scalar(GaussianRational::i()); }
  static Scalar rational(std::int64_t p, std::int64_t q) { return Scalar(GaussianRational(Rational(p, q))); }

  /// 1 / (m_1 + ... + m_arity)
  static Scalar inverse_total_mass(int arity, int power = 1) {
    if (arity < 1) throw InvalidParameter("total mass needs at least one particle");
    Scalar s(GaussianRational(1));
    s.inv_mass_power_ = power;
    s.mass_arity_ = arity;
    s.normalize();
    return s;
  }

  /// m_n / (m_1 + ... + m_arity)
  static Scalar mass_fraction(int n, int arity) { return Scalar(sym::mass(n)) * inverse_total_mass(arity); }

  /// m_1 + ... + m_arity as a polynomial.
  static Scalar total_mass(int arity) { return Scalar(detail::total_mass_poly(arity)); }

  const LaurentPoly& numerator() const { return num_; }
  int inverse_mass_power() const { return inv_mass_power_; }
  int mass_arity() const { return mass_arity_; }
  bool is_zero() const { return num_.is_zero(); }

  Scalar operator-() const {
    Scalar out = *this;
    out.num_ = -num_;
    return out;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int arity = merged_arity(a, b);
    const int k = std::max(a.inv_mass_power_, b.inv_mass_power_);
    Scalar out;
    out.num_ = lift(a, k, arity) + lift(b, k, arity);
    out.inv_mass_power_ = k;
    out.mass_arity_ = arity;
    out.normalize();
    return out;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Scalar out;
    out.num_ = a.num_ * b.num_;
    out.inv_mass_power_ = a.inv_mass_power_ + b.inv_mass_power_;
    out.mass_arity_ = merged_arity(a, b);
    out.normalize();
    return out;
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.inv_mass_power_ == b.inv_mass_power_ &&
           (a.inv_mass_power_ == 0 || a.mass_arity_ == b.mass_arity_);
  }

  /// Inverse of a unit (single-term numerator, no total-mass denominator).
  std::optional<Scalar> inverse() const {
    if (inv_mass_power_ != 0) return std::nullopt;
    auto inv = num_.inverse();
    if (!inv) return std::nullopt;
    return Scalar(*inv);
  }

  std::optional<GaussianRational> as_constant() const {
    if (inv_mass_power_ != 0) return std::nullopt;
    return num_.as_constant();
  }

  Scalar pow(int e) const {
    if (e >= 0) {
      Scalar out(GaussianRational(1));
      for (int k = 0; k < e; ++k) out *= *this;
      return out;
    }
    auto inv = inverse();
    if (!inv) throw InvalidBinding("negative power of a non-invertible scalar");
    return inv->pow(-e);
  }

  /// Rewrites symbols by `bindings`; symbols without a binding are kept.
  Scalar substitute(const ScalarBindings& bindings) const {
    for (const auto& [s, value] : bindings) {
      if (s.kind == SymbolKind::mass && value.is_zero()) {
        throw InvalidBinding("mass symbol " + s.name() + " bound to zero");
      }
    }
    if (bindings.empty()) return *this;

    Scalar out;
    for (const auto& [m, c] : num_.terms()) {
      Scalar term(c);
      for (const auto& [s, e] : m.factors()) {
        auto it = bindings.find(s);
        if (it == bindings.end()) {
          term *= Scalar(s, e);
          continue;
        }
        if (e < 0 && it->second.is_zero()) {
          throw InvalidBinding("symbol " + s.name() + " appears in a denominator and is bound to zero");
        }
        term *= it->second.pow(e);
      }
      out += term;
    }
    if (inv_mass_power_ == 0) return out;

    int bound = 0;
    GaussianRational total(0);
    for (int n = 1; n <= mass_arity_; ++n) {
      auto it = bindings.find(sym::mass(n));
      if (it == bindings.end()) continue;
      ++bound;
      auto c = it->second.as_constant();
      if (!c) throw InvalidBinding("total-mass denominator needs numeric mass bindings");
      total += *c;
    }
    if (bound == 0) return out * inverse_total_mass(mass_arity_, inv_mass_power_);
    if (bound != mass_arity_) throw InvalidBinding("total-mass denominator needs every mass bound");
    if (total.is_zero()) throw InvalidBinding("masses bound to a zero total mass");
    return out * Scalar(GaussianRational(1) / total).pow(inv_mass_power_);
  }

  std::string to_string() const {
    if (inv_mass_power_ == 0) return num_.to_string();
    std::string out = "(" + num_.to_string() + ")/M";
    if (inv_mass_power_ != 1) out += "^" + std::to_string(inv_mass_power_);
    return out;
  }

 private:
  static int merged_arity(const Scalar& a, const Scalar& b) {
    if (a.inv_mass_power_ > 0 && b.inv_mass_power_ > 0 && a.mass_arity_ != b.mass_arity_) {
      throw std::logic_error("scalars refer to total masses of different systems");
    }
    return a.inv_mass_power_ > 0 ? a.mass_arity_ : b.mass_arity_;
  }

  static LaurentPoly lift(const Scalar& s, int k, int arity) {
    if (s.inv_mass_power_ == k) return s.num_;
    return s.num_ * detail::pow(detail::total_mass_poly(arity), k - s.inv_mass_power_);
  }

  void normalize() {
    if (num_.is_zero()) inv_mass_power_ = 0;
    while (inv_mass_power_ > 0) {
      auto q = detail::divide_by_total_mass(num_, mass_arity_);
      if (!q) break;
      num_ = std::move(*q);
      --inv_mass_power_;
    }
    if (inv_mass_power_ == 0) mass_arity_ = 0;
  }

  LaurentPoly num_;
  int inv_mass_power_ = 0;
  int mass_arity_ = 0;
};

}  // namespace ncps
