#pragma once

// Polyhedral divisors D = sum(Delta_i (x) D_i) over a YModel, their evaluation,
// push-forward, pull-back, linear equivalence and map triples.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ppdiv/divisor.hpp"
#include "ppdiv/polyhedron.hpp"
#include "ppdiv/smith.hpp"

namespace ppdiv {

class PPDivisor {
 public:
  using Term = std::pair<PrimeLabel, Polyhedron>;

  PPDivisor() = default;

  /// Repeated labels are Minkowski-added; trivial coefficients are dropped.
  static PPDivisor make(ModelRef model, const Cone& tail, const std::vector<Term>& terms) {
    if (!model) fail(ErrorKind::InvalidArgument, "pp-divisor without a model");
    if (!tail.is_pointed()) fail(ErrorKind::NotPointed, "tail cone " + tail.to_string() + " is not pointed");
    PPDivisor d;
    d.model_ = std::move(model);
    d.tail_ = tail;
    for (const auto& [label, poly] : terms) {
      d.model_->prime(label);
      if (poly.rank() != tail.rank())
        fail(ErrorKind::RankMismatch, "coefficient of " + label.name + " has the wrong rank");
      if (!(poly.tail() == tail))
        fail(ErrorKind::TailMismatch, "coefficient of " + label.name + " has tail " +
                                          poly.tail().to_string() + ", expected " + tail.to_string());
      auto it = d.terms_.find(label);
      if (it == d.terms_.end())
        d.terms_.emplace(label, poly);
      else
        it->second = minkowski_sum(it->second, poly);
    }
    std::erase_if(d.terms_, [](const auto& kv) { return kv.second.is_trivial(); });
    return d;
  }

  static PPDivisor zero(ModelRef model, const Cone& tail) { return make(std::move(model), tail, {}); }

  const ModelRef& model() const noexcept { return model_; }
  const Cone& tail() const noexcept { return tail_; }
  std::size_t rank() const noexcept { return tail_.rank(); }
  const std::map<PrimeLabel, Polyhedron>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Polyhedron coefficient(const PrimeLabel& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Polyhedron::trivial(tail_) : it->second;
  }

  /// Terms in the order the model declares its primes.
  std::vector<Term> ordered_terms() const {
    std::vector<PrimeLabel> labels;
    for (const auto& [p, poly] : terms_) labels.push_back(p);
    std::vector<Term> out;
    for (const auto& p : model_->ordered(labels)) out.emplace_back(p, terms_.at(p));
    return out;
  }

  friend bool operator==(const PPDivisor& a, const PPDivisor& b) {
    return same_model(a.model_, b.model_) && a.tail_ == b.tail_ && a.terms_ == b.terms_;
  }

 private:
  ModelRef model_;
  Cone tail_;
  std::map<PrimeLabel, Polyhedron> terms_;
};

/// Bracket notation, e.g. "{1/2}D3 + {-1/3}D2 + [0,1/6]E"; "0" when empty.
inline std::string format(const PPDivisor& d) {
  auto terms = d.ordered_terms();
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    s += format_coefficient(terms[i].second) + terms[i].first.name;
  }
  return s;
}

inline QDivisor evaluate(const PPDivisor& d, const RatVector& u) {
  if (u.size() != d.rank()) fail(ErrorKind::RankMismatch, "evaluate: weight has the wrong rank");
  if (!d.tail().dual().contains(u))
    fail(ErrorKind::OutsideWeightCone, "weight " + format_tuple(u) + " is outside the weight cone");
  QDivisor out;
  for (const auto& [p, poly] : d.terms()) out.add(p, *poly.support_min(u).value);
  return out;
}

inline QDivisor evaluate(const PPDivisor& d, const IntVector& u) { return evaluate(d, to_rational(u)); }

inline void require_same_frame(const PPDivisor& a, const PPDivisor& b, const char* op) {
  if (!same_model(a.model(), b.model()))
    fail(ErrorKind::InvalidArgument, std::string(op) + ": pp-divisors live on different models");
  if (a.rank() != b.rank()) fail(ErrorKind::RankMismatch, std::string(op) + ": lattice ranks differ");
  if (!(a.tail() == b.tail())) fail(ErrorKind::TailMismatch, std::string(op) + ": tails differ");
}

/// Termwise Minkowski sum; a missing term counts as the trivial polyhedron.
inline PPDivisor add(const PPDivisor& a, const PPDivisor& b) {
  require_same_frame(a, b, "add");
  std::vector<PPDivisor::Term> terms;
  for (const auto& t : a.terms()) terms.push_back(t);
  for (const auto& t : b.terms()) terms.push_back(t);
  return PPDivisor::make(a.model(), a.tail(), terms);
}

/// F(Delta_i) + target_tail for every term. F is (rank' x rank).
inline PPDivisor pushforward(const IntMatrix& f, const PPDivisor& d, const Cone& target_tail) {
  if (f.cols() != d.rank() || f.rows() != target_tail.rank())
    fail(ErrorKind::RankMismatch, "pushforward: lattice map has shape " + std::to_string(f.rows()) + "x" +
                                      std::to_string(f.cols()));
  if (!target_tail.contains(d.tail().image(f)))
    fail(ErrorKind::TailViolation, "F maps the tail " + d.tail().to_string() + " outside " +
                                       target_tail.to_string());
  std::vector<PPDivisor::Term> terms;
  for (const auto& [p, poly] : d.terms()) terms.emplace_back(p, poly.image(f, target_tail));
  return PPDivisor::make(d.model(), target_tail, terms);
}

/// Source coefficient of s over the target prime t with ramification r is r * Delta'_t.
inline PPDivisor pullback(const CoverData& c, const PPDivisor& d) {
  if (!same_model(c.target(), d.model()))
    fail(ErrorKind::ChainMismatch, "pullback: pp-divisor lives on '" + d.model()->name() +
                                       "', cover targets '" + c.target()->name() + "'");
  std::vector<PPDivisor::Term> terms;
  for (const auto& [t, poly] : d.terms()) {
    const auto& fiber = c.fiber(t);
    if (fiber.empty()) fail(ErrorKind::EmptyFiber, "prime '" + t.name + "' has an empty fiber");
    for (const auto& e : fiber) terms.emplace_back(e.source, poly.scale(Rational(e.ramification)));
  }
  return PPDivisor::make(c.source(), d.tail(), terms);
}

/// Element of N (x) C(Y)^*: for each basis direction of N, a monomial in named
/// rational functions. Every name carries its principal divisor, so products
/// and pull-backs stay explicit.
class Plurifunction {
 public:
  using Monomial = std::map<std::string, Integer>;

  Plurifunction() = default;

  static Plurifunction one(std::size_t rank) {
    Plurifunction f;
    f.components_.assign(rank, {});
    return f;
  }

  /// Monomials in functions registered in `model`.
  static Plurifunction from_model(const YModel& model, const std::vector<Monomial>& components) {
    Plurifunction f = one(components.size());
    for (std::size_t j = 0; j < components.size(); ++j)
      for (const auto& [name, e] : components[j]) {
        f.dictionary_[name] = model.function(name);
        f.set(j, name, e);
      }
    return f;
  }

  /// Monomials in functions given directly by their divisors.
  static Plurifunction from_divisors(std::map<std::string, QDivisor> dictionary,
                                     const std::vector<Monomial>& components) {
    Plurifunction f = one(components.size());
    f.dictionary_ = std::move(dictionary);
    for (std::size_t j = 0; j < components.size(); ++j)
      for (const auto& [name, e] : components[j]) {
        if (!f.dictionary_.count(name)) fail(ErrorKind::UnknownFunction, "function '" + name + "' has no divisor");
        f.set(j, name, e);
      }
    return f;
  }

  std::size_t rank() const noexcept { return components_.size(); }
  const std::vector<Monomial>& components() const noexcept { return components_; }
  const std::map<std::string, QDivisor>& dictionary() const noexcept { return dictionary_; }

  bool is_one() const {
    return std::all_of(components_.begin(), components_.end(), [](const Monomial& m) { return m.empty(); });
  }

  /// div(f_j) for the basis direction j.
  QDivisor divisor(std::size_t j) const {
    QDivisor out;
    for (const auto& [name, e] : components_.at(j)) out = out + Rational(e) * dictionary_.at(name);
    return out;
  }

  std::vector<QDivisor> divisors() const {
    std::vector<QDivisor> out;
    for (std::size_t j = 0; j < rank(); ++j) out.push_back(divisor(j));
    return out;
  }

  friend Plurifunction operator*(const Plurifunction& a, const Plurifunction& b) {
    if (a.rank() != b.rank()) fail(ErrorKind::RankMismatch, "plurifunction product: ranks differ");
    Plurifunction out = a;
    out.merge_dictionary(b.dictionary_);
    for (std::size_t j = 0; j < b.rank(); ++j)
      for (const auto& [name, e] : b.components_[j]) out.set(j, name, out.exponent(j, name) + e);
    return out;
  }

  /// F_*(f) for F: N -> N' given as a (rank' x rank) matrix.
  Plurifunction pushforward(const IntMatrix& f) const {
    if (f.cols() != rank()) fail(ErrorKind::ChainMismatch, "plurifunction pushforward: rank mismatch");
    Plurifunction out = one(f.rows());
    out.dictionary_ = dictionary_;
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t j = 0; j < rank(); ++j)
        for (const auto& [name, e] : components_[j]) out.set(i, name, out.exponent(i, name) + f(i, j) * e);
    return out;
  }

  /// phi^*(f): every function is replaced by its pull-back along the cover.
  Plurifunction pullback(const CoverData& c) const {
    if (c.is_identity()) return *this;
    Plurifunction out = one(rank());
    for (const auto& [name, div] : dictionary_) out.dictionary_["phi*(" + name + ")"] = pullback_qdivisor(c, div);
    for (std::size_t j = 0; j < rank(); ++j)
      for (const auto& [name, e] : components_[j]) out.set(j, "phi*(" + name + ")", e);
    return out;
  }

  /// Functions are compared through their divisors, i.e. up to constants.
  friend bool operator==(const Plurifunction& a, const Plurifunction& b) {
    return a.rank() == b.rank() && a.divisors() == b.divisors();
  }

 private:
  Integer exponent(std::size_t j, const std::string& name) const {
    auto it = components_[j].find(name);
    return it == components_[j].end() ? Integer(0) : it->second;
  }

  void set(std::size_t j, const std::string& name, const Integer& e) {
    if (e == 0)
      components_[j].erase(name);
    else
      components_[j][name] = e;
  }

  void merge_dictionary(const std::map<std::string, QDivisor>& other) {
    for (const auto& [name, div] : other) {
      auto [it, inserted] = dictionary_.emplace(name, div);
      if (!inserted && !(it->second == div))
        fail(ErrorKind::InvalidArgument, "function '" + name + "' is defined with two different divisors");
    }
  }

  std::vector<Monomial> components_;
  std::map<std::string, QDivisor> dictionary_;
};

/// "u * g^-1" per direction, positive exponents first; rank > 1 prints a tuple. The constant 1 prints "1".
inline std::string format(const Plurifunction& f) {
  auto monomial = [](const Plurifunction::Monomial& m) {
    if (m.empty()) return std::string("1");
    std::string s;
    for (bool positive : {true, false})
      for (const auto& [name, e] : m) {
        if ((e > 0) != positive) continue;
        if (!s.empty()) s += " * ";
        s += name;
        if (e != 1) s += "^" + e.str();
      }
    return s;
  };
  if (f.rank() == 1) return monomial(f.components()[0]);
  std::string s = "(";
  for (std::size_t j = 0; j < f.rank(); ++j) {
    if (j) s += ", ";
    s += monomial(f.components()[j]);
  }
  return s + ")";
}

/// D + div(f): the coefficient of each prime p is translated by (ord_p f_j)_j.
inline PPDivisor translate_by_div(const PPDivisor& d, const Plurifunction& f) {
  if (f.rank() != d.rank()) fail(ErrorKind::RankMismatch, "translate_by_div: plurifunction rank");
  auto divs = f.divisors();
  std::set<PrimeLabel> primes;
  for (const auto& [p, poly] : d.terms()) primes.insert(p);
  for (const auto& div : divs) {
    d.model()->check_labels(div);
    for (const auto& [p, c] : div.terms()) primes.insert(p);
  }
  std::vector<PPDivisor::Term> terms;
  for (const auto& p : primes) {
    RatVector shift(d.rank());
    for (std::size_t j = 0; j < d.rank(); ++j) shift[j] = divs[j].coefficient(p);
    terms.emplace_back(p, d.coefficient(p).translate(shift));
  }
  return PPDivisor::make(d.model(), d.tail(), terms);
}

struct Equivalence {
  bool equivalent = false;
  std::vector<QDivisor> difference;       // div(f_j) needed, per direction of N
  std::optional<Plurifunction> witness;   // D2 == D1 + div(witness)
  bool principality_supplied = false;     // relies on supplied model weights
  std::string reason;
};

namespace detail {

// Integer combination of the model's known functions with the given divisor.
inline std::optional<Plurifunction::Monomial> solve_known(const YModel& model, const QDivisor& target) {
  const auto& fns = model.functions();
  const auto& primes = model.primes();
  IntMatrix a(primes.size(), fns.size());
  IntVector b(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    b[i] = numerator(target.coefficient(primes[i].label));
    for (std::size_t j = 0; j < fns.size(); ++j) a(i, j) = numerator(fns[j].divisor.coefficient(primes[i].label));
  }
  if (fns.empty()) {
    if (target.is_zero()) return Plurifunction::Monomial{};
    return std::nullopt;
  }
  auto x = solve_integer(a, b);
  if (!x) return std::nullopt;
  Plurifunction::Monomial m;
  for (std::size_t j = 0; j < fns.size(); ++j)
    if ((*x)[j] != 0) m[fns[j].name] = (*x)[j];
  return m;
}

}  // namespace detail

/// Decides whether d2 == d1 + div(f) for some plurifunction f. Each pair of
/// coefficients must differ by a point translation t_p; then for every lattice
/// direction j the divisor sum_p t_p[j] * p must be integral and principal. A
/// witness is returned when the model's known functions produce it.
inline Equivalence linearly_equivalent(const PPDivisor& d1, const PPDivisor& d2) {
  Equivalence r;
  if (!same_model(d1.model(), d2.model()) || d1.rank() != d2.rank() || !(d1.tail() == d2.tail())) {
    r.reason = "different model, rank or tail";
    return r;
  }
  const YModel& model = *d1.model();
  r.principality_supplied = model.principality_supplied();
  std::set<PrimeLabel> primes;
  for (const auto& [p, poly] : d1.terms()) primes.insert(p);
  for (const auto& [p, poly] : d2.terms()) primes.insert(p);
  r.difference.assign(d1.rank(), QDivisor{});
  for (const auto& p : primes) {
    Polyhedron a = d1.coefficient(p), b = d2.coefficient(p);
    if (a.vertices().size() != b.vertices().size()) {
      r.reason = "coefficients of " + p.name + " are not translates";
      return r;
    }
    RatVector t(d1.rank());
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = b.lex_min_vertex()[j] - a.lex_min_vertex()[j];
    if (!(a.translate(t) == b)) {
      r.reason = "coefficients of " + p.name + " are not translates";
      return r;
    }
    for (std::size_t j = 0; j < t.size(); ++j) r.difference[j].add(p, t[j]);
  }
  for (std::size_t j = 0; j < r.difference.size(); ++j) {
    if (!r.difference[j].is_integral()) {
      r.reason = "translation " + format(r.difference[j], &model) + " is not integral";
      return r;
    }
    if (!model.is_principal(r.difference[j])) {
      r.reason = "translation " + format(r.difference[j], &model) + " is not principal";
      return r;
    }
  }
  r.equivalent = true;
  std::vector<Plurifunction::Monomial> comps;
  for (const auto& diff : r.difference) {
    auto m = detail::solve_known(model, diff);
    if (!m) {
      r.reason = "principal, but not spanned by the registered functions";
      return r;
    }
    comps.push_back(*m);
  }
  r.witness = Plurifunction::from_model(model, comps);
  return r;
}

/// Morphism triple (phi, F, f). An empty cover means the identity of Y.
struct PPMap {
  std::optional<CoverData> cover;
  IntMatrix F;
  Plurifunction f;

  static PPMap identity(std::size_t rank) { return {std::nullopt, IntMatrix::identity(rank), Plurifunction::one(rank)}; }

  friend bool operator==(const PPMap& a, const PPMap& b) {
    auto is_id = [](const std::optional<CoverData>& c) { return !c || c->is_identity(); };
    bool covers = (is_id(a.cover) && is_id(b.cover)) || (a.cover && b.cover && *a.cover == *b.cover);
    return covers && a.F == b.F && a.f == b.f;
  }
};

/// D <= D' termwise: every coefficient of D' lies inside the matching one of D.
inline bool less_equal(const PPDivisor& lower, const PPDivisor& upper) {
  require_same_frame(lower, upper, "comparison");
  std::set<PrimeLabel> primes;
  for (const auto& [p, poly] : lower.terms()) primes.insert(p);
  for (const auto& [p, poly] : upper.terms()) primes.insert(p);
  return std::all_of(primes.begin(), primes.end(), [&](const PrimeLabel& p) {
    return lower.coefficient(p).contains(upper.coefficient(p));
  });
}

/// phi^*(D') <= F_*(D) + div(f).
inline bool is_valid_map(const PPMap& m, const PPDivisor& d, const PPDivisor& target) {
  if (m.F.cols() != d.rank() || m.F.rows() != target.rank() || m.f.rank() != target.rank())
    fail(ErrorKind::ChainMismatch, "map triple does not match the lattice ranks");
  if (m.cover) {
    if (!same_model(m.cover->source(), d.model()) || !same_model(m.cover->target(), target.model()))
      fail(ErrorKind::ChainMismatch, "cover does not connect the two models");
  } else if (!same_model(d.model(), target.model())) {
    fail(ErrorKind::ChainMismatch, "identity cover between different models");
  }
  if (!target.tail().contains(d.tail().image(m.F))) return false;
  PPDivisor lower = m.cover ? pullback(*m.cover, target) : target;
  PPDivisor upper = translate_by_div(pushforward(m.F, d, target.tail()), m.f);
  return less_equal(lower, upper);
}

/// second after first: (phi' o phi, F' F, F'_*(f) * phi^*(f')).
inline PPMap compose(const PPMap& second, const PPMap& first) {
  if (second.F.cols() != first.F.rows())
    fail(ErrorKind::ChainMismatch, "lattice maps do not chain");
  PPMap out;
  if (first.cover && second.cover)
    out.cover = compose(*second.cover, *first.cover);
  else
    out.cover = first.cover ? first.cover : second.cover;
  out.F = second.F * first.F;
  Plurifunction pulled = first.cover ? second.f.pullback(*first.cover) : second.f;
  out.f = first.f.pushforward(second.F) * pulled;
  return out;
}

enum class Tri { True, False, Unknown };

constexpr std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct ValidityReport {
  bool pointed = false;
  bool shared_tail = false;
  bool labels_known = false;
  bool effective_primes = false;
  Tri semiample = Tri::Unknown;
  Tri big = Tri::Unknown;
  std::vector<std::string> notes;

  bool structurally_valid() const { return pointed && shared_tail && labels_known && effective_primes; }
};

/// Structural checks on raw pp-divisor data. Semi-ampleness and bigness are
/// only decided on the affine model, where the class group is trivial.
inline ValidityReport validity_report(const YModel& model, const Cone& tail,
                                      const std::vector<PPDivisor::Term>& terms) {
  ValidityReport r;
  r.pointed = tail.is_pointed();
  if (!r.pointed) r.notes.push_back("tail cone " + tail.to_string() + " contains a line");
  r.shared_tail = std::all_of(terms.begin(), terms.end(),
                              [&](const PPDivisor::Term& t) { return t.second.tail() == tail; });
  if (!r.shared_tail) r.notes.push_back("coefficients do not share the tail cone");
  r.labels_known = std::all_of(terms.begin(), terms.end(),
                               [&](const PPDivisor::Term& t) { return model.has(t.first); });
  if (!r.labels_known) r.notes.push_back("some labels are not primes of '" + model.name() + "'");
  // Labels name prime divisors, so each D_i is effective by construction.
  r.effective_primes = r.labels_known;
  if (model.kind() == ModelKind::AffinePlane) {
    r.semiample = r.big = Tri::True;
    r.notes.push_back("trivial class group: every evaluation is semi-ample and big");
  } else {
    r.notes.push_back("semi-ampleness and bigness are not checked on model kind " +
                      std::string(to_string(model.kind())));
  }
  return r;
}

inline ValidityReport validity_report(const PPDivisor& d) {
  std::vector<PPDivisor::Term> terms(d.terms().begin(), d.terms().end());
  return validity_report(*d.model(), d.tail(), terms);
}

}  // namespace ppdiv
