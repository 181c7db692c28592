#pragma once

// Q-divisors over a finite set of prime labels, and explicit stand-ins for the
// surfaces Y that carry them.
//
// A YModel does not know any geometry beyond what principality needs:
//   affine       trivial class group, every integral divisor is principal.
//   blowup_a2    blow-up of A^2 at the origin. A divisor sum(a_i C_i) + b E is
//                principal iff b == sum(a_i * m_i), m_i the multiplicity of the
//                curve C_i at the origin (standard blow-up bookkeeping).
//   quot_blowup  cyclic quotient of a blow-up. Same rule with per-prime weights
//                that the model file supplies; these are not derived here and
//                every check that relies on them is flagged as such.

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppdiv/number.hpp"

namespace ppdiv {

struct PrimeLabel {
  std::string name;

  friend auto operator<=>(const PrimeLabel&, const PrimeLabel&) = default;
  friend bool operator==(const PrimeLabel&, const PrimeLabel&) = default;
};

/// Finitely supported rational combination of prime labels. Zero coefficients
/// are never stored.
class QDivisor {
 public:
  QDivisor() = default;
  QDivisor(std::initializer_list<std::pair<const std::string, Rational>> terms) {
    for (const auto& [name, c] : terms) add(PrimeLabel{name}, c);
  }

  void add(const PrimeLabel& p, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  Rational coefficient(const PrimeLabel& p) const {
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  const std::map<PrimeLabel, Rational>& terms() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return ppdiv::is_integral(kv.second); });
  }

  friend QDivisor operator+(QDivisor a, const QDivisor& b) {
    for (const auto& [p, c] : b.coeffs_) a.add(p, c);
    return a;
  }
  friend QDivisor operator-(QDivisor a, const QDivisor& b) {
    for (const auto& [p, c] : b.coeffs_) a.add(p, -c);
    return a;
  }
  friend QDivisor operator*(const Rational& r, const QDivisor& d) {
    QDivisor out;
    for (const auto& [p, c] : d.coeffs_) out.add(p, r * c);
    return out;
  }
  friend bool operator==(const QDivisor&, const QDivisor&) = default;

  /// Coefficientwise a <= b.
  friend bool operator<=(const QDivisor& a, const QDivisor& b) {
    QDivisor diff = b - a;
    return std::all_of(diff.coeffs_.begin(), diff.coeffs_.end(),
                       [](const auto& kv) { return kv.second >= 0; });
  }

 private:
  std::map<PrimeLabel, Rational> coeffs_;
};

enum class ModelKind { AffinePlane, BlowupA2, QuotBlowup };

constexpr std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::AffinePlane: return "affine";
    case ModelKind::BlowupA2: return "blowup_a2";
    case ModelKind::QuotBlowup: return "quot_blowup";
  }
  return "?";
}

struct PrimeInfo {
  PrimeLabel label;
  Rational weight = 0;  // multiplicity at the blown-up point, or supplied weight
  bool exceptional = false;

  friend bool operator==(const PrimeInfo&, const PrimeInfo&) = default;
};

struct KnownFunction {
  std::string name;
  QDivisor divisor;

  friend bool operator==(const KnownFunction&, const KnownFunction&) = default;
};

class YModel {
 public:
  static YModel make(std::string name, ModelKind kind, std::vector<PrimeInfo> primes,
                     std::vector<KnownFunction> functions = {}) {
    YModel m;
    m.name_ = std::move(name);
    m.kind_ = kind;
    m.primes_ = std::move(primes);
    std::size_t exceptional = 0;
    for (std::size_t i = 0; i < m.primes_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (m.primes_[j].label == m.primes_[i].label)
          fail(ErrorKind::InvalidArgument, "duplicate prime '" + m.primes_[i].label.name + "'");
      if (m.primes_[i].exceptional) ++exceptional;
      if (kind == ModelKind::BlowupA2 && !ppdiv::is_integral(m.primes_[i].weight))
        fail(ErrorKind::NonIntegral, "blow-up multiplicities must be integers");
    }
    if (kind != ModelKind::AffinePlane && exceptional != 1)
      fail(ErrorKind::InvalidArgument, "model '" + m.name_ + "' needs exactly one exceptional prime");
    if (kind == ModelKind::AffinePlane && exceptional != 0)
      fail(ErrorKind::InvalidArgument, "affine model '" + m.name_ + "' has no exceptional prime");
    for (auto& f : functions) m.add_function(std::move(f));
    return m;
  }

  const std::string& name() const noexcept { return name_; }
  ModelKind kind() const noexcept { return kind_; }
  const std::vector<PrimeInfo>& primes() const noexcept { return primes_; }
  const std::vector<KnownFunction>& functions() const noexcept { return functions_; }

  /// True when principality rests on weights supplied with the model rather
  /// than on a derived rule.
  bool principality_supplied() const noexcept { return kind_ == ModelKind::QuotBlowup; }

  std::optional<std::size_t> index_of(const PrimeLabel& p) const {
    for (std::size_t i = 0; i < primes_.size(); ++i)
      if (primes_[i].label == p) return i;
    return std::nullopt;
  }
  bool has(const PrimeLabel& p) const { return index_of(p).has_value(); }

  const PrimeInfo& prime(const PrimeLabel& p) const {
    auto i = index_of(p);
    if (!i) fail(ErrorKind::UnknownLabel, "prime '" + p.name + "' is not in model '" + name_ + "'");
    return primes_[*i];
  }

  std::optional<PrimeLabel> exceptional() const {
    for (const auto& p : primes_)
      if (p.exceptional) return p.label;
    return std::nullopt;
  }

  const QDivisor& function(const std::string& fname) const {
    for (const auto& f : functions_)
      if (f.name == fname) return f.divisor;
    fail(ErrorKind::UnknownFunction, "function '" + fname + "' is not registered in model '" + name_ + "'");
  }
  bool has_function(const std::string& fname) const {
    return std::any_of(functions_.begin(), functions_.end(),
                       [&](const KnownFunction& f) { return f.name == fname; });
  }

  void check_labels(const QDivisor& d) const {
    for (const auto& [p, c] : d.terms()) prime(p);
  }

  bool is_principal(const QDivisor& d) const {
    check_labels(d);
    if (!d.is_integral()) fail(ErrorKind::NonIntegral, "principality is tested on integral divisors");
    if (kind_ == ModelKind::AffinePlane) return true;
    Rational expected = 0, actual = 0;
    for (const auto& [p, c] : d.terms()) {
      const auto& info = prime(p);
      if (info.exceptional)
        actual = c;
      else
        expected += c * info.weight;
    }
    return actual == expected;
  }

  /// Orders labels the way the model declares them.
  std::vector<PrimeLabel> ordered(const std::vector<PrimeLabel>& labels) const {
    std::vector<PrimeLabel> out = labels;
    std::sort(out.begin(), out.end(), [&](const PrimeLabel& a, const PrimeLabel& b) {
      auto ia = index_of(a), ib = index_of(b);
      if (ia && ib) return *ia < *ib;
      if (ia != ib) return ia.has_value();
      return a < b;
    });
    return out;
  }

  friend bool operator==(const YModel&, const YModel&) = default;

 private:
  void add_function(KnownFunction f) {
    if (has_function(f.name)) fail(ErrorKind::InvalidArgument, "duplicate function '" + f.name + "'");
    if (!is_principal(f.divisor))
      fail(ErrorKind::InvalidArgument, "function '" + f.name + "' has a non-principal divisor");
    functions_.push_back(std::move(f));
  }

  std::string name_;
  ModelKind kind_ = ModelKind::AffinePlane;
  std::vector<PrimeInfo> primes_;
  std::vector<KnownFunction> functions_;
};

using ModelRef = std::shared_ptr<const YModel>;

inline bool same_model(const ModelRef& a, const ModelRef& b) {
  return a == b || (a && b && *a == *b);
}

inline bool is_principal(const YModel& m, const QDivisor& d) { return m.is_principal(d); }

struct FiberEntry {
  PrimeLabel source;
  Integer ramification;

  friend bool operator==(const FiberEntry&, const FiberEntry&) = default;
};

/// A finite quotient map Y -> Y' described on prime divisors: each target prime
/// pulls back to a sum of source primes with ramification indices.
class CoverData {
 public:
  static CoverData make(ModelRef source, ModelRef target,
                        std::map<PrimeLabel, std::vector<FiberEntry>> prime_map, Integer group_order) {
    CoverData c;
    c.source_ = std::move(source);
    c.target_ = std::move(target);
    c.prime_map_ = std::move(prime_map);
    c.order_ = std::move(group_order);
    if (c.order_ < 1) fail(ErrorKind::InvalidArgument, "group order must be positive");
    std::map<PrimeLabel, int> seen;
    for (const auto& [t, fiber] : c.prime_map_) {
      c.target_->prime(t);
      for (const auto& e : fiber) {
        c.source_->prime(e.source);
        if (e.ramification < 1) fail(ErrorKind::InvalidArgument, "ramification index must be >= 1");
        ++seen[e.source];
      }
    }
    for (const auto& p : c.source_->primes())
      if (seen[p.label] != 1)
        fail(ErrorKind::InvalidArgument,
             "source prime '" + p.label.name + "' must lie in exactly one fiber");
    return c;
  }

  static CoverData identity(const ModelRef& model) {
    std::map<PrimeLabel, std::vector<FiberEntry>> pm;
    for (const auto& p : model->primes()) pm[p.label] = {FiberEntry{p.label, 1}};
    return make(model, model, std::move(pm), 1);
  }

  const ModelRef& source() const noexcept { return source_; }
  const ModelRef& target() const noexcept { return target_; }
  const Integer& group_order() const noexcept { return order_; }
  const std::map<PrimeLabel, std::vector<FiberEntry>>& prime_map() const noexcept { return prime_map_; }

  const std::vector<FiberEntry>& fiber(const PrimeLabel& t) const {
    static const std::vector<FiberEntry> empty;
    target_->prime(t);
    auto it = prime_map_.find(t);
    return it == prime_map_.end() ? empty : it->second;
  }

  bool is_identity() const {
    if (!same_model(source_, target_) || order_ != 1) return false;
    for (const auto& [t, fiber] : prime_map_)
      if (fiber.size() != 1 || fiber[0].source != t || fiber[0].ramification != 1) return false;
    return true;
  }

  friend bool operator==(const CoverData& a, const CoverData& b) {
    return same_model(a.source_, b.source_) && same_model(a.target_, b.target_) &&
           a.prime_map_ == b.prime_map_ && a.order_ == b.order_;
  }

 private:
  ModelRef source_, target_;
  std::map<PrimeLabel, std::vector<FiberEntry>> prime_map_;
  Integer order_ = 1;
};

/// phi^*(d): each target prime contributes r times its coefficient to every
/// source prime above it.
inline QDivisor pullback_qdivisor(const CoverData& c, const QDivisor& d) {
  c.target()->check_labels(d);
  QDivisor out;
  for (const auto& [t, coeff] : d.terms())
    for (const auto& e : c.fiber(t)) out.add(e.source, coeff * e.ramification);
  return out;
}

/// second ∘ first, for first: Y -> Y' and second: Y' -> Y''.
inline CoverData compose(const CoverData& second, const CoverData& first) {
  if (!same_model(first.target(), second.source()))
    fail(ErrorKind::ChainMismatch, "covers do not chain: '" + first.target()->name() + "' vs '" +
                                       second.source()->name() + "'");
  std::map<PrimeLabel, std::vector<FiberEntry>> pm;
  for (const auto& [t2, fiber2] : second.prime_map()) {
    auto& out = pm[t2];
    for (const auto& mid : fiber2)
      for (const auto& e : first.fiber(mid.source))
        out.push_back(FiberEntry{e.source, e.ramification * mid.ramification});
  }
  return CoverData::make(first.source(), second.target(), std::move(pm),
                         first.group_order() * second.group_order());
}

/// Coefficients printed in model order: "3*D3 - 2*D2 - E", or "0".
inline std::string format(const QDivisor& d, const YModel* model = nullptr) {
  std::vector<PrimeLabel> labels;
  for (const auto& [p, c] : d.terms()) labels.push_back(p);
  if (model) labels = model->ordered(labels);
  if (labels.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Rational c = d.coefficient(labels[i]);
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (i == 0)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (mag != 1) s += format(mag) + "*";
    s += labels[i].name;
  }
  return s;
}

}  // namespace ppdiv
