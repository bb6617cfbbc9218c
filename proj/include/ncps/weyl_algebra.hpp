#pragma once

// Normal-ordered polynomials in canonical phase-space generators.
//
// Generators are particle coordinates/momenta x_i^(n), p_i^(n) and the shared
// auxiliary oscillator variables a~, pa~, b~, pb~. Every OperatorExpr is kept
// in normal form: each word is nondecreasing under the generator order and no
// coefficient is zero, so structural equality is operator equality.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncps/errors.hpp"
#include "ncps/scalar.hpp"

namespace ncps {

/// Order of the enumerators is the normal-ordering order.
enum class GeneratorKind : std::uint8_t { x, p, a, pa, b, pb };

struct Generator {
  GeneratorKind kind = GeneratorKind::x;
  int particle = 0;  ///< 1-based for x and p, 0 for auxiliary generators
  int axis = 1;      ///< 1, 2 or 3

  friend auto operator<=>(const Generator&, const Generator&) = default;

  bool is_particle() const { return kind == GeneratorKind::x || kind == GeneratorKind::p; }

  std::string name() const {
    const std::string ax = std::to_string(axis);
    switch (kind) {
      case GeneratorKind::x: return "x" + ax + "[" + std::to_string(particle) + "]";
      case GeneratorKind::p: return "p" + ax + "[" + std::to_string(particle) + "]";
      case GeneratorKind::a: return "a~" + ax;
      case GeneratorKind::pa: return "pa~" + ax;
      case GeneratorKind::b: return "b~" + ax;
      case GeneratorKind::pb: return "pb~" + ax;
    }
    return "?";
  }
};

namespace gen {

namespace detail {
inline int checked_axis(int axis) {
  if (axis < 1 || axis > 3) throw InvalidParameter("axis must be 1, 2 or 3");
  return axis;
}
inline int checked_particle(int n) {
  if (n < 1) throw UnknownParticle("particle index must be >= 1");
  return n;
}
}  // namespace detail

inline Generator x(int n, int axis) { return {GeneratorKind::x, detail::checked_particle(n), detail::checked_axis(axis)}; }
inline Generator p(int n, int axis) { return {GeneratorKind::p, detail::checked_particle(n), detail::checked_axis(axis)}; }
inline Generator a(int axis) { return {GeneratorKind::a, 0, detail::checked_axis(axis)}; }
inline Generator pa(int axis) { return {GeneratorKind::pa, 0, detail::checked_axis(axis)}; }
inline Generator b(int axis) { return {GeneratorKind::b, 0, detail::checked_axis(axis)}; }
inline Generator pb(int axis) { return {GeneratorKind::pb, 0, detail::checked_axis(axis)}; }

}  // namespace gen

/// [g, h] for two generators; always a c-number.
inline Scalar base_commutator_scalar(const Generator& g, const Generator& h) {
  if (g.axis != h.axis || g.particle != h.particle) return {};
  const Scalar ihbar = Scalar::i() * Scalar(sym::hbar());
  using K = GeneratorKind;
  if (g.kind == K::x && h.kind == K::p) return ihbar;
  if (g.kind == K::p && h.kind == K::x) return -ihbar;
  if ((g.kind == K::a && h.kind == K::pa) || (g.kind == K::b && h.kind == K::pb)) return Scalar::i();
  if ((g.kind == K::pa && h.kind == K::a) || (g.kind == K::pb && h.kind == K::b)) return -Scalar::i();
  return {};
}

using Word = std::vector<Generator>;

struct AlgebraOptions {
  /// Largest word length a product may produce before DegreeOverflow is raised.
  std::size_t max_degree = 8;
};

class OperatorExpr {
 public:
  using TermMap = std::map<Word, Scalar>;

  OperatorExpr() = default;
  OperatorExpr(const Scalar& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Word{}, c);
  }
  OperatorExpr(const Generator& g) { terms_.emplace(Word{g}, Scalar(1)); }  // NOLINT(google-explicit-constructor)

  /// Builds c * w1 w2 ... and normal-orders the word.
  static OperatorExpr product(const Word& word, const Scalar& c = Scalar(1), const AlgebraOptions& opts = {}) {
    if (word.size() > opts.max_degree) throw DegreeOverflow("word of degree " + std::to_string(word.size()));
    OperatorExpr out;
    if (!c.is_zero()) out.normal_order_into(word, c);
    return out;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
  }

  /// Coefficient of an already normal-ordered word (zero if absent).
  Scalar coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar{} : it->second;
  }

  OperatorExpr operator-() const {
    OperatorExpr out;
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
  }
  OperatorExpr& operator+=(const OperatorExpr& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  OperatorExpr& operator-=(const OperatorExpr& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(const Scalar& s, const OperatorExpr& a) {
    OperatorExpr out;
    if (s.is_zero()) return out;
    for (const auto& [w, c] : a.terms_) out.add_term(w, s * c);
    return out;
  }
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) { return multiply(a, b); }

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) { return a.terms_ == b.terms_; }

  friend OperatorExpr multiply(const OperatorExpr& a, const OperatorExpr& b, const AlgebraOptions& opts = {}) {
    OperatorExpr out;
    Word joined;
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) {
        if (wa.size() + wb.size() > opts.max_degree) {
          throw DegreeOverflow("product of degree " + std::to_string(wa.size() + wb.size()) +
                               " exceeds the limit " + std::to_string(opts.max_degree));
        }
        joined.assign(wa.begin(), wa.end());
        joined.insert(joined.end(), wb.begin(), wb.end());
        out.normal_order_into(joined, ca * cb);
      }
    }
    return out;
  }

 private:
  void add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // Bubble the first out-of-order adjacent pair: g h = h g + [g, h].
  void normal_order_into(Word w, const Scalar& c) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!(w[i + 1] < w[i])) continue;
      const Scalar contraction = base_commutator_scalar(w[i], w[i + 1]);
      if (!contraction.is_zero()) {
        Word shorter;
        shorter.reserve(w.size() - 2);
        shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
        normal_order_into(std::move(shorter), c * contraction);
      }
      std::swap(w[i], w[i + 1]);
      // Restart just before the swap: the moved generator may still be out of order.
      i = i == 0 ? static_cast<std::size_t>(-1) : i - 2;
    }
    add_term(w, c);
  }

  TermMap terms_;
};

/// [g, h] as an expression.
inline OperatorExpr base_commutator(const Generator& g, const Generator& h) {
  return OperatorExpr(base_commutator_scalar(g, h));
}

/// a + s * b
inline OperatorExpr add_scaled(const OperatorExpr& a, const Scalar& s, const OperatorExpr& b) { return a + s * b; }

inline OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b, const AlgebraOptions& opts = {}) {
  return multiply(a, b, opts) - multiply(b, a, opts);
}

inline bool equals(const OperatorExpr& a, const OperatorExpr& b) { return (a - b).is_zero(); }

inline OperatorExpr substitute_scalars(const OperatorExpr& a, const ScalarBindings& bindings) {
  OperatorExpr out;
  for (const auto& [w, c] : a.terms()) out += OperatorExpr::product(w, c.substitute(bindings), {w.size()});
  return out;
}

/// One term per line: coefficient, then " | ", then the factor list ("1" for the identity).
inline std::string to_text(const OperatorExpr& a) {
  if (a.is_zero()) return "0\n";
  std::string out;
  for (const auto& [w, c] : a.terms()) {
    out += c.to_string();
    out += " |";
    if (w.empty()) out += " 1";
    for (const auto& g : w) out += " " + g.name();
    out += "\n";
  }
  return out;
}

}  // namespace ncps
