#pragma once

// Line-oriented session files. See docs/session-format.md for the grammar.
//
//   model russell blowup_a2
//   prime russell D3 1
//   prime russell E exceptional
//   function russell g = D3 + E
//   divisor cubic russell = {1/2}D3 + {-1/3}D2 + [0,1/6]E
//   weights ambient [[6],[-6],[3],[2]] model=russell labels=2:E,3:D3,4:D2
//   cover descend up down 2 : Ep <- E^2, Dp <- D

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppdiv/downgrade.hpp"
#include "ppdiv/ppdivisor.hpp"

namespace ppdiv {

namespace text {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Splits at `sep` outside any (), [], {} nesting.
inline std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth < 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
  out.push_back(trim(s.substr(start)));
  return out;
}

inline std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool is_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline bool is_label(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!is_label_char(c)) return false;
  return true;
}

inline std::string_view strip(std::string_view s, char open, char close, std::string_view what) {
  s = trim(s);
  if (s.size() < 2 || s.front() != open || s.back() != close)
    throw ParseError("expected " + std::string(what) + ", got '" + std::string(s) + "'");
  return s.substr(1, s.size() - 2);
}

}  // namespace text

inline RatVector parse_rat_tuple(std::string_view s) {
  auto inner = text::strip(s, '(', ')', "a tuple");
  RatVector v;
  if (text::trim(inner).empty()) return v;
  for (auto part : text::split_top(inner, ',')) v.push_back(parse_rational(part));
  return v;
}

inline IntVector parse_int_tuple(std::string_view s) {
  auto inner = text::strip(s, '(', ')', "a tuple");
  IntVector v;
  if (text::trim(inner).empty()) return v;
  for (auto part : text::split_top(inner, ',')) v.push_back(parse_integer(part));
  return v;
}

/// A rational vector written either as "(a,b,...)" or, in rank one, as "a".
inline RatVector parse_weight(std::string_view s) {
  s = text::trim(s);
  if (!s.empty() && s.front() == '(') return parse_rat_tuple(s);
  return RatVector{parse_rational(s)};
}

/// "[[1,2],[3,4]]"; "[]" is a matrix with no rows and `cols` columns.
template <typename T>
Matrix<T> parse_matrix(std::string_view s, std::size_t empty_cols = 0) {
  auto inner = text::strip(s, '[', ']', "a matrix");
  if (text::trim(inner).empty()) return Matrix<T>(0, empty_cols);
  std::vector<std::vector<T>> rows;
  for (auto row : text::split_top(inner, ',')) {
    auto entries = text::strip(row, '[', ']', "a matrix row");
    std::vector<T> r;
    if (!text::trim(entries).empty())
      for (auto e : text::split_top(entries, ',')) {
        if constexpr (std::is_same_v<T, Integer>)
          r.push_back(parse_integer(e));
        else
          r.push_back(parse_rational(e));
      }
    rows.push_back(std::move(r));
  }
  std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw ParseError("ragged matrix '" + std::string(s) + "'");
  return Matrix<T>::from_rows(rows, cols);
}

/// "cone()" or "cone((1,0),(1,2))".
inline Cone parse_cone(std::string_view s, std::size_t rank) {
  s = text::trim(s);
  if (s.substr(0, 4) != "cone") throw ParseError("expected cone(...), got '" + std::string(s) + "'");
  auto inner = text::strip(s.substr(4), '(', ')', "cone(...)");
  std::vector<IntVector> gens;
  if (!text::trim(inner).empty())
    for (auto g : text::split_top(inner, ',')) gens.push_back(parse_int_tuple(g));
  for (const auto& g : gens)
    if (g.size() != rank) throw ParseError("cone generator " + format_tuple(g) + " does not have rank " +
                                           std::to_string(rank));
  return Cone::from_generators(rank, gens);
}

/// One coefficient: {q}, [a,b], {(x,y)}, conv((..),(..)). Returns the vertex list.
inline std::vector<RatVector> parse_coefficient(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) throw ParseError("empty coefficient");
  if (s.front() == '{') {
    auto inner = text::trim(text::strip(s, '{', '}', "{point}"));
    if (!inner.empty() && inner.front() == '(') return {parse_rat_tuple(inner)};
    return {RatVector{parse_rational(inner)}};
  }
  if (s.front() == '[') {
    auto parts = text::split_top(text::strip(s, '[', ']', "[a,b]"), ',');
    if (parts.size() != 2) throw ParseError("interval needs two endpoints: '" + std::string(s) + "'");
    return {RatVector{parse_rational(parts[0])}, RatVector{parse_rational(parts[1])}};
  }
  if (s.substr(0, 4) == "conv") {
    std::vector<RatVector> pts;
    for (auto p : text::split_top(text::strip(s.substr(4), '(', ')', "conv(...)"), ','))
      pts.push_back(parse_rat_tuple(p));
    return pts;
  }
  throw ParseError("unrecognized coefficient '" + std::string(s) + "'");
}

/// Terms "{1/2}D3 + [0,1/6]E" or "0". The tail defaults to {0}; `rank` is
/// inferred from the first term when not given.
inline PPDivisor parse_ppdivisor(std::string_view s, const ModelRef& model, std::optional<std::size_t> rank = {},
                                 std::optional<std::string_view> tail_text = {}) {
  s = text::trim(s);
  std::vector<std::pair<PrimeLabel, std::vector<RatVector>>> raw;
  if (s != "0") {
    for (auto term : text::split_top(s, '+')) {
      if (term.empty()) throw ParseError("empty term in '" + std::string(s) + "'");
      std::size_t cut = term.size();
      while (cut > 0 && text::is_label_char(term[cut - 1])) --cut;
      auto label = term.substr(cut);
      if (!text::is_label(label)) throw ParseError("term '" + std::string(term) + "' has no label");
      raw.emplace_back(PrimeLabel{std::string(label)}, parse_coefficient(term.substr(0, cut)));
    }
  }
  std::size_t n = rank ? *rank : raw.empty() ? 1 : raw.front().second.front().size();
  Cone tail = tail_text ? parse_cone(*tail_text, n) : Cone::zero(n);
  std::vector<PPDivisor::Term> terms;
  for (const auto& [label, pts] : raw) {
    for (const auto& p : pts)
      if (p.size() != n) throw ParseError("coefficient of " + label.name + " does not have rank " + std::to_string(n));
    terms.emplace_back(label, Polyhedron::make(pts, tail));
  }
  return PPDivisor::make(model, tail, terms);
}

/// "3*D3 - 2*D2 - E", "1/2*E", "0".
inline QDivisor parse_qdivisor(std::string_view s) {
  s = text::trim(s);
  QDivisor d;
  if (s == "0") return d;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  bool first = true;
  while (true) {
    skip();
    if (i == s.size()) break;
    Rational sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("expected + or - in '" + std::string(s) + "'");
    }
    Rational coeff = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
      coeff = parse_rational(s.substr(i, j - i));
      i = j;
      skip();
      if (i == s.size() || s[i] != '*') throw ParseError("expected '*' after coefficient in '" + std::string(s) + "'");
      ++i;
      skip();
    }
    std::size_t j = i;
    while (j < s.size() && text::is_label_char(s[j])) ++j;
    auto label = s.substr(i, j - i);
    if (!text::is_label(label)) throw ParseError("expected a prime label in '" + std::string(s) + "'");
    d.add(PrimeLabel{std::string(label)}, sign * coeff);
    i = j;
    first = false;
  }
  if (first) throw ParseError("empty divisor");
  return d;
}

/// Insertion-ordered name -> value table.
template <typename T>
class Named {
 public:
  void add(const std::string& name, T value, std::size_t line = 0) {
    if (find(name)) throw ParseError("'" + name + "' is defined twice", line);
    items_.emplace_back(name, std::move(value));
  }
  const T* find(const std::string& name) const {
    for (const auto& [n, v] : items_)
      if (n == name) return &v;
    return nullptr;
  }
  const T& at(const std::string& name) const {
    if (const T* v = find(name)) return *v;
    throw ParseError("no entry named '" + name + "'");
  }
  const std::vector<std::pair<std::string, T>>& items() const noexcept { return items_; }
  bool empty() const noexcept { return items_.empty(); }

 private:
  std::vector<std::pair<std::string, T>> items_;
};

struct NamedWeights {
  WeightData data;
  std::string model;  // may be empty
};

struct Session {
  Named<ModelRef> models;
  Named<PPDivisor> divisors;
  Named<CoverData> covers;
  Named<NamedWeights> weights;

  const ModelRef& model(const std::string& name) const { return models.at(name); }
  const PPDivisor& divisor(const std::string& name) const { return divisors.at(name); }
  const CoverData& cover(const std::string& name) const { return covers.at(name); }
  const NamedWeights& weight(const std::string& name) const { return weights.at(name); }

  std::string model_name(const ModelRef& m) const {
    for (const auto& [name, ref] : models.items())
      if (same_model(ref, m)) return name;
    return m ? m->name() : "";
  }
};

namespace detail {

struct ModelDraft {
  ModelKind kind;
  std::vector<PrimeInfo> primes;
  std::vector<KnownFunction> functions;
};

inline ModelKind parse_kind(std::string_view s, std::size_t line) {
  if (s == "affine") return ModelKind::AffinePlane;
  if (s == "blowup_a2") return ModelKind::BlowupA2;
  if (s == "quot_blowup") return ModelKind::QuotBlowup;
  throw ParseError("unknown model kind '" + std::string(s) + "'", line);
}

// "key=value" options after the positional words.
inline std::map<std::string, std::string> options(const std::vector<std::string_view>& ws, std::size_t from,
                                                  std::size_t line) {
  std::map<std::string, std::string> out;
  for (std::size_t i = from; i < ws.size(); ++i) {
    auto eq = ws[i].find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(ws[i]) + "'", line);
    out[std::string(ws[i].substr(0, eq))] = std::string(ws[i].substr(eq + 1));
  }
  return out;
}

}  // namespace detail

/// Parses session text and appends it to `session`. Models may be referenced by
/// later files; every other reference must resolve.
inline void parse_session(std::string_view content, Session& session) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::istringstream in{std::string(content)};
    std::string l;
    std::size_t n = 0;
    while (std::getline(in, l)) {
      ++n;
      auto hash = l.find('#');
      if (hash != std::string::npos) l.erase(hash);
      if (!text::trim(l).empty()) lines.emplace_back(n, std::string(text::trim(l)));
    }
  }
  // Pass 1: models, their primes and functions.
  std::vector<std::pair<std::string, detail::ModelDraft>> drafts;
  auto draft = [&](std::string_view name, std::size_t line) -> detail::ModelDraft& {
    for (auto& [n, d] : drafts)
      if (n == name) return d;
    throw ParseError("unknown model '" + std::string(name) + "'", line);
  };
  for (const auto& [n, l] : lines) {
    auto ws = text::words(l);
    if (ws[0] == "model") {
      if (ws.size() != 3) throw ParseError("usage: model NAME KIND", n);
      if (session.models.find(std::string(ws[1])))
        throw ParseError("'" + std::string(ws[1]) + "' is defined twice", n);
      for (const auto& [name, d] : drafts)
        if (name == ws[1]) throw ParseError("'" + std::string(ws[1]) + "' is defined twice", n);
      drafts.emplace_back(std::string(ws[1]), detail::ModelDraft{detail::parse_kind(ws[2], n), {}, {}});
    } else if (ws[0] == "prime") {
      if (ws.size() != 4) throw ParseError("usage: prime MODEL LABEL WEIGHT|exceptional", n);
      if (!text::is_label(ws[2])) throw ParseError("bad prime label '" + std::string(ws[2]) + "'", n);
      PrimeInfo p{PrimeLabel{std::string(ws[2])}, 0, ws[3] == "exceptional"};
      if (!p.exceptional) p.weight = parse_rational(ws[3]);
      draft(ws[1], n).primes.push_back(p);
    } else if (ws[0] == "function") {
      auto eq = l.find('=');
      if (ws.size() < 5 || eq == std::string::npos) throw ParseError("usage: function MODEL NAME = DIVISOR", n);
      draft(ws[1], n).functions.push_back(
          KnownFunction{std::string(ws[2]), parse_qdivisor(std::string_view(l).substr(eq + 1))});
    }
  }
  for (auto& [name, d] : drafts)
    session.models.add(name, std::make_shared<const YModel>(YModel::make(name, d.kind, d.primes, d.functions)));

  // Pass 2: everything that refers to models.
  auto model = [&](std::string_view name, std::size_t line) -> const ModelRef& {
    if (const ModelRef* m = session.models.find(std::string(name))) return *m;
    throw ParseError("unknown model '" + std::string(name) + "'", line);
  };
  for (const auto& [n, l] : lines) {
    auto ws = text::words(l);
    try {
      if (ws[0] == "model" || ws[0] == "prime" || ws[0] == "function") continue;
      if (ws[0] == "divisor") {
        // Options contain '=' without spaces; " = " starts the expression.
        std::size_t expr = l.find(" = ");
        auto head = text::words(std::string_view(l).substr(0, expr));
        if (expr == std::string::npos || head.size() < 3)
          throw ParseError("usage: divisor NAME MODEL [rank=K] [tail=cone(...)] = TERMS", n);
        auto o = detail::options(head, 3, n);
        std::optional<std::size_t> rank;
        if (o.count("rank")) rank = static_cast<std::size_t>(parse_integer(o["rank"]));
        std::optional<std::string_view> tail;
        if (o.count("tail")) tail = o["tail"];
        session.divisors.add(std::string(head[1]),
                             parse_ppdivisor(std::string_view(l).substr(expr + 3), model(head[2], n), rank, tail), n);
      } else if (ws[0] == "weights") {
        if (ws.size() < 3) throw ParseError("usage: weights NAME MATRIX [model=M] [labels=i:L,...] [section=MATRIX]", n);
        NamedWeights w;
        w.data.F = parse_matrix<Integer>(ws[2]);
        auto o = detail::options(ws, 3, n);
        if (o.count("model")) {
          model(o["model"], n);
          w.model = o["model"];
        }
        if (o.count("labels"))
          for (auto entry : text::split_top(o["labels"], ',')) {
            auto colon = entry.find(':');
            if (colon == std::string_view::npos) throw ParseError("label entries look like 3:E", n);
            w.data.ray_labels[static_cast<std::size_t>(parse_integer(entry.substr(0, colon)))] =
                PrimeLabel{std::string(entry.substr(colon + 1))};
          }
        if (o.count("section")) w.data.section = parse_matrix<Rational>(o["section"]);
        session.weights.add(std::string(ws[1]), std::move(w), n);
      } else if (ws[0] == "cover") {
        auto colon = l.find(':');
        auto head = text::words(std::string_view(l).substr(0, colon));
        if (head.size() != 5 || colon == std::string::npos)
          throw ParseError("usage: cover NAME SOURCE TARGET ORDER : T <- S^r + S2, ...", n);
        std::map<PrimeLabel, std::vector<FiberEntry>> pm;
        for (auto fiber : text::split_top(std::string_view(l).substr(colon + 1), ',')) {
          auto arrow = fiber.find("<-");
          if (arrow == std::string_view::npos) throw ParseError("fiber entries look like T <- S^r", n);
          PrimeLabel t{std::string(text::trim(fiber.substr(0, arrow)))};
          auto& out = pm[t];
          auto rhs = text::trim(fiber.substr(arrow + 2));
          if (rhs.empty()) continue;
          for (auto src : text::split_top(rhs, '+')) {
            auto caret = src.find('^');
            Integer r = caret == std::string_view::npos ? Integer(1) : parse_integer(src.substr(caret + 1));
            out.push_back(FiberEntry{PrimeLabel{std::string(text::trim(src.substr(0, caret)))}, r});
          }
        }
        session.covers.add(std::string(head[1]),
                           CoverData::make(model(head[2], n), model(head[3], n), pm, parse_integer(head[4])), n);
      } else {
        throw ParseError("unknown directive '" + std::string(ws[0]) + "'", n);
      }
    } catch (const ParseError& e) {
      if (e.line()) throw;
      throw ParseError(e.what(), n);
    }
  }
}

inline Session parse_session(std::string_view content) {
  Session s;
  parse_session(content, s);
  return s;
}

inline void load_session_file(const std::filesystem::path& path, Session& session) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read session file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    parse_session(buf.str(), session);
  } catch (const ParseError& e) {
    throw ParseError(path.filename().string() + ": " + e.what());
  }
}

/// Every *.session file in `dir`, in file-name order.
inline void load_session_dir(const std::filesystem::path& dir, Session& session) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".session") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) load_session_file(f, session);
}

inline std::string format_ppdivisor_line(const std::string& name, const std::string& model_name, const PPDivisor& d) {
  std::string s = "divisor " + name + " " + model_name;
  if (d.rank() != 1 || d.is_zero()) s += " rank=" + std::to_string(d.rank());
  if (!d.tail().is_zero()) s += " tail=" + d.tail().to_string();
  return s + " = " + format(d);
}

/// Canonical text; parse_session(serialize(s)) reproduces s.
inline std::string serialize(const Session& s) {
  std::string out;
  for (const auto& [name, m] : s.models.items()) {
    out += "model " + name + " " + std::string(to_string(m->kind())) + "\n";
    for (const auto& p : m->primes())
      out += "prime " + name + " " + p.label.name + " " + (p.exceptional ? "exceptional" : format(p.weight)) + "\n";
    for (const auto& f : m->functions()) out += "function " + name + " " + f.name + " = " + format(f.divisor, m.get()) + "\n";
  }
  for (const auto& [name, w] : s.weights.items()) {
    out += "weights " + name + " " + format(w.data.F);
    if (!w.model.empty()) out += " model=" + w.model;
    if (!w.data.ray_labels.empty()) {
      out += " labels=";
      bool first = true;
      for (const auto& [c, l] : w.data.ray_labels) {
        out += (first ? "" : ",") + std::to_string(c) + ":" + l.name;
        first = false;
      }
    }
    if (w.data.section) out += " section=" + format(*w.data.section);
    out += "\n";
  }
  for (const auto& [name, d] : s.divisors.items()) out += format_ppdivisor_line(name, s.model_name(d.model()), d) + "\n";
  for (const auto& [name, c] : s.covers.items()) {
    out += "cover " + name + " " + s.model_name(c.source()) + " " + s.model_name(c.target()) + " " +
           c.group_order().str() + " :";
    bool first = true;
    for (const auto& t : c.target()->primes()) {
      auto it = c.prime_map().find(t.label);
      if (it == c.prime_map().end()) continue;
      out += std::string(first ? " " : ", ") + t.label.name + " <-";
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        const auto& e = it->second[i];
        out += std::string(i ? " + " : " ") + e.source.name;
        if (e.ramification != 1) out += "^" + e.ramification.str();
      }
      first = false;
    }
    out += "\n";
  }
  return out;
}

}  // namespace ppdiv
