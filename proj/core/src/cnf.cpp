#include "magma/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace magma {

namespace {

class Builder {
 public:
  explicit Builder(int n) : n_(n) {
    doc_.n = n;
    doc_.variable_count = n * n * n;
    true_ = conj({});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) one_hot(i, j);
    }
  }

  int n() const noexcept { return n_; }
  Literal truth() const noexcept { return true_; }
  Literal x(int i, int j, int v) const noexcept { return cell_variable(n_, i, j, v); }

  void clause(Clause c) { doc_.clauses.push_back(std::move(c)); }
  void comment(std::string text) { doc_.comments.push_back(std::move(text)); }

  Literal conj(std::vector<Literal> inputs) { return gate(Gate::Kind::conjunction, std::move(inputs)); }
  Literal disj(std::vector<Literal> inputs) { return gate(Gate::Kind::disjunction, std::move(inputs)); }

  // Cell (i, j) equals cell (k, l).
  Literal same_cell(int i, int j, int k, int l) {
    auto key = std::minmax(i * n_ + j, k * n_ + l);
    if (key.first == key.second) return true_;
    auto it = same_cache_.find(key);
    if (it != same_cache_.end()) return it->second;
    std::vector<Literal> options;
    for (int w = 0; w < n_; ++w) options.push_back(conj({x(i, j, w), x(k, l, w)}));
    Literal out = disj(std::move(options));
    same_cache_.emplace(key, out);
    return out;
  }

  // Cell (i, j) lies in {0, 1}.
  Literal absorbing_cell(int i, int j) { return disj({x(i, j, 0), x(i, j, 1)}); }

  CnfDocument finish() && { return std::move(doc_); }

 private:
  Literal gate(Gate::Kind kind, std::vector<Literal> inputs) {
    const int out = ++doc_.variable_count;
    if (kind == Gate::Kind::conjunction) {
      Clause back{out};
      for (Literal in : inputs) {
        doc_.clauses.push_back({-out, in});
        back.push_back(-in);
      }
      doc_.clauses.push_back(std::move(back));
    } else {
      Clause forth{-out};
      for (Literal in : inputs) {
        doc_.clauses.push_back({out, -in});
        forth.push_back(in);
      }
      doc_.clauses.push_back(std::move(forth));
    }
    doc_.gates.push_back({kind, out, std::move(inputs)});
    return out;
  }

  void one_hot(int i, int j) {
    Clause some;
    for (int v = 0; v < n_; ++v) some.push_back(x(i, j, v));
    doc_.clauses.push_back(std::move(some));
    for (int v = 0; v < n_; ++v) {
      for (int w = v + 1; w < n_; ++w) doc_.clauses.push_back({-x(i, j, v), -x(i, j, w)});
    }
  }

  int n_;
  CnfDocument doc_;
  Literal true_ = 0;
  std::map<std::pair<int, int>, Literal> same_cache_;
};

std::vector<Element> core_candidates(int n, const std::optional<Element>& fixed) {
  if (fixed) return {*fixed};
  std::vector<Element> out;
  for (Element e = 2; e < n; ++e) out.push_back(e);
  return out;
}

Literal encode_e2pm(Builder& b) {
  const int n = b.n();
  if (n < 2) return -b.truth();
  std::vector<Literal> parts;
  for (int j = 0; j < n; ++j) {
    parts.push_back(b.x(0, j, 0));
    parts.push_back(b.x(1, j, 1));
  }
  for (int a = 2; a < n; ++a) {
    std::vector<Literal> leaves_self;
    for (int j = 0; j < n; ++j) leaves_self.push_back(-b.x(a, j, a));
    parts.push_back(b.disj(std::move(leaves_self)));
  }
  for (int a = 0; a < n; ++a) {
    for (int c = a + 1; c < n; ++c) {
      std::vector<Literal> differs;
      for (int j = 0; j < n; ++j) differs.push_back(-b.same_cell(a, j, c, j));
      parts.push_back(b.disj(std::move(differs)));
    }
  }
  return b.conj(std::move(parts));
}

// outer·(inner·x) = x for every core x.
Literal encode_retracts(Builder& b, int inner, int outer) {
  const int n = b.n();
  std::vector<Literal> parts;
  for (int x = 2; x < n; ++x) {
    std::vector<Literal> via;
    for (int w = 0; w < n; ++w) via.push_back(b.conj({b.x(inner, x, w), b.x(outer, w, x)}));
    parts.push_back(b.disj(std::move(via)));
  }
  return b.conj(std::move(parts));
}

Literal encode_retraction(Builder& b, bool mutual, const FixedRoles& roles) {
  const int n = b.n();
  std::vector<Literal> pairs;
  for (Element s : core_candidates(n, roles.s)) {
    for (Element r : core_candidates(n, roles.r)) {
      std::vector<Literal> parts{b.x(r, 0, 0), encode_retracts(b, s, r)};
      if (mutual) parts.push_back(encode_retracts(b, r, s));
      pairs.push_back(b.conj(std::move(parts)));
    }
  }
  return b.disj(std::move(pairs));
}

Literal encode_dichotomy(Builder& b, const FixedRoles& roles, bool strict) {
  const int n = b.n();
  std::vector<Literal> parts;
  std::vector<Literal> some_nonclassifier;
  for (int y = 2; y < n; ++y) {
    std::vector<Literal> classifies;
    std::vector<Literal> preserves;
    for (int x = 2; x < n; ++x) {
      Literal in_abs = b.absorbing_cell(y, x);
      classifies.push_back(in_abs);
      preserves.push_back(-in_abs);
    }
    Literal nonclassifier = b.conj(std::move(preserves));
    parts.push_back(b.disj({b.conj(std::move(classifies)), nonclassifier}));
    some_nonclassifier.push_back(nonclassifier);
  }
  parts.push_back(b.disj(std::move(some_nonclassifier)));

  std::vector<Literal> some_classifier;
  for (Element tau : core_candidates(n, roles.tau)) {
    std::vector<Literal> into_absorbers;
    for (int x = strict ? 0 : 2; x < n; ++x) into_absorbers.push_back(b.absorbing_cell(tau, x));
    some_classifier.push_back(b.conj(std::move(into_absorbers)));
  }
  parts.push_back(b.disj(std::move(some_classifier)));
  return b.conj(std::move(parts));
}

struct IcpShape {
  bool distinct = true;
  bool nontrivial = true;
};

Literal encode_icp(Builder& b, IcpShape shape, const FixedRoles& roles) {
  const int n = b.n();
  if (shape.distinct && n - 2 < 3) return -b.truth();
  std::vector<Literal> triples;
  for (Element a : core_candidates(n, roles.a)) {
    for (Element g : core_candidates(n, roles.b)) {
      if (shape.distinct && g == a) continue;
      for (Element c : core_candidates(n, roles.c)) {
        if (shape.distinct && (c == a || c == g)) continue;
        std::vector<Literal> parts;
        for (int x = 2; x < n; ++x) {
          parts.push_back(-b.absorbing_cell(g, x));
          for (int w = 2; w < n; ++w) {
            parts.push_back(b.disj({-b.x(g, x, w), b.same_cell(c, w, a, x)}));
          }
        }
        if (shape.nontrivial) {
          std::vector<Literal> split;
          for (int x = 2; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) split.push_back(-b.same_cell(a, x, a, y));
          }
          parts.push_back(b.disj(std::move(split)));
        }
        triples.push_back(b.conj(std::move(parts)));
      }
    }
  }
  return b.disj(std::move(triples));
}

Literal encode_associative(Builder& b) {
  const int n = b.n();
  std::vector<Literal> parts;
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      for (int d = 0; d < n; ++d) {
        for (int u = 0; u < n; ++u) {
          for (int v = 0; v < n; ++v) {
            parts.push_back(b.disj({-b.x(a, c, u), -b.x(c, d, v), b.same_cell(u, d, a, v)}));
          }
        }
      }
    }
  }
  return b.conj(std::move(parts));
}

Literal encode_right_identity(Builder& b) {
  const int n = b.n();
  std::vector<Literal> candidates;
  for (int e = 0; e < n; ++e) {
    std::vector<Literal> fixes;
    for (int a = 0; a < n; ++a) fixes.push_back(b.x(a, e, a));
    candidates.push_back(b.conj(std::move(fixes)));
  }
  return b.disj(std::move(candidates));
}

Literal encode_commutative(Builder& b) {
  const int n = b.n();
  std::vector<Literal> parts;
  for (int a = 0; a < n; ++a) {
    for (int c = a + 1; c < n; ++c) parts.push_back(b.same_cell(a, c, c, a));
  }
  return b.conj(std::move(parts));
}

Literal encode_k_combinator(Builder& b) {
  const int n = b.n();
  std::vector<Literal> candidates;
  for (int k = 0; k < n; ++k) {
    std::vector<Literal> parts;
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) {
        std::vector<Literal> via;
        for (int w = 0; w < n; ++w) via.push_back(b.conj({b.x(k, a, w), b.x(w, c, a)}));
        parts.push_back(b.disj(std::move(via)));
      }
    }
    candidates.push_back(b.conj(std::move(parts)));
  }
  return b.disj(std::move(candidates));
}

Literal encode_constraint(Builder& b, const Constraint& constraint, const FixedRoles& fixed,
                          const CapabilityOptions& options) {
  const FixedRoles none;
  const FixedRoles& roles = constraint.required ? fixed : none;
  switch (constraint.predicate) {
    case Predicate::e2pm: return encode_e2pm(b);
    case Predicate::r_mutual: return encode_retraction(b, true, roles);
    case Predicate::r_onesided: return encode_retraction(b, false, roles);
    case Predicate::d: return encode_dichotomy(b, roles, options.strict_classifier);
    case Predicate::h:
    case Predicate::compose_inert: return encode_icp(b, {true, true}, roles);
    case Predicate::weak_icp_no_distinct: return encode_icp(b, {false, true}, roles);
    case Predicate::weak_icp_no_nontrivial: return encode_icp(b, {true, false}, roles);
    case Predicate::associative: return encode_associative(b);
    case Predicate::right_identity: return encode_right_identity(b);
    case Predicate::commutative: return encode_commutative(b);
    case Predicate::k_combinator: return encode_k_combinator(b);
  }
  return -b.truth();
}

std::string format_roles(const FixedRoles& roles) {
  std::string out;
  auto add = [&](const char* name, const std::optional<Element>& v) {
    if (!v) return;
    if (!out.empty()) out += ' ';
    out += std::string(name) + "=" + std::to_string(*v);
  };
  add("s", roles.s);
  add("r", roles.r);
  add("tau", roles.tau);
  add("a", roles.a);
  add("b", roles.b);
  add("c", roles.c);
  return out;
}

}  // namespace

CnfDocument encode(const SearchSpec& spec) {
  validate_spec(spec);
  const int n = spec.n;
  Builder b(n);
  b.comment("magma table of order " + std::to_string(n) + ", absorbers z1 = 0, z2 = 1");
  b.comment("cell variable x(i,j,v) = 1 + (i*" + std::to_string(n) + " + j)*" + std::to_string(n) +
            " + v is true iff i*j = v, for 0 <= i,j,v < " + std::to_string(n));
  b.comment("variables 1.." + std::to_string(n * n * n) + " are cells, the rest are gate outputs");
  b.comment("variable " + std::to_string(b.truth()) + " is constant true");

  if (spec.demands(Predicate::e2pm)) {
    for (int j = 0; j < n; ++j) {
      b.clause({b.x(0, j, 0)});
      b.clause({b.x(1, j, 1)});
    }
  }
  for (const auto& c : spec.constraints) {
    Literal lit = encode_constraint(b, c, spec.roles, spec.options);
    b.clause({c.required ? lit : -lit});
    b.comment(std::string("constraint ") + std::string(to_string(c.predicate)) + (c.required ? " +" : " -") +
              " asserted by literal " + std::to_string(c.required ? lit : -lit));
  }
  if (!spec.roles.empty()) b.comment("fixed roles (required constraints only): " + format_roles(spec.roles));
  if (spec.demands(Predicate::d) || spec.forbids(Predicate::d)) {
    b.comment(std::string("classifier reading: ") + (spec.options.strict_classifier ? "strict" : "core-only"));
  }
  return std::move(b).finish();
}

std::string to_dimacs(const CnfDocument& doc) {
  std::ostringstream out;
  for (const auto& c : doc.comments) out << "c " << c << '\n';
  out << "p cnf " << doc.variable_count << ' ' << doc.clauses.size() << '\n';
  for (const auto& clause : doc.clauses) {
    for (Literal lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

Model parse_model(std::string_view text) {
  Model model;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::size_t i = 0;
    auto skip_space = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    skip_space();
    if (i == line.size()) continue;
    if (line[i] == 's' || line[i] == 'c') continue;
    if (line[i] == 'v') ++i;
    while (true) {
      skip_space();
      if (i == line.size()) break;
      const char* first = line.data() + i;
      const char* last = line.data() + line.size();
      int value = 0;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || (ptr != last && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
        throw ParseError(ErrorCode::parse_error, line_no, i + 1, "expected a signed integer literal");
      }
      if (value != 0) model.push_back(value);
      i = static_cast<std::size_t>(ptr - line.data());
    }
  }
  return model;
}

CayleyTable decode(const Model& model, int n) {
  if (n < 1 || n > kMaxOrder) throw Error(ErrorCode::spec_invalid, "order out of range");
  const int cells = n * n * n;
  std::vector<bool> truth(static_cast<std::size_t>(cells) + 1, false);
  for (Literal lit : model) {
    if (lit > 0 && lit <= cells) truth[lit] = true;
  }
  std::vector<Element> values(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int count = 0;
      for (int v = 0; v < n; ++v) {
        if (truth[cell_variable(n, i, j, v)]) {
          values[i * n + j] = v;
          ++count;
        }
      }
      if (count != 1) {
        throw Error(ErrorCode::model_inconsistent, "cell (" + std::to_string(i) + ", " + std::to_string(j) +
                                                       ") has " + std::to_string(count) + " true values");
      }
    }
  }
  return CayleyTable(n, std::move(values));
}

std::vector<bool> extend_assignment(const CnfDocument& doc, const CayleyTable& table) {
  if (table.size() != doc.n) throw Error(ErrorCode::size_mismatch, "table order differs from the CNF");
  const int n = doc.n;
  std::vector<bool> value(static_cast<std::size_t>(doc.variable_count) + 1, false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) value[cell_variable(n, i, j, table.at(i, j))] = true;
  }
  auto holds = [&](Literal lit) { return lit > 0 ? value[lit] : !value[-lit]; };
  for (const auto& g : doc.gates) {
    bool out = g.kind == Gate::Kind::conjunction;
    for (Literal in : g.inputs) {
      if (g.kind == Gate::Kind::conjunction && !holds(in)) out = false;
      if (g.kind == Gate::Kind::disjunction && holds(in)) out = true;
    }
    value[g.output] = out;
  }
  return value;
}

Model extend_model(const CnfDocument& doc, const CayleyTable& table) {
  auto value = extend_assignment(doc, table);
  Model model;
  for (int v = 1; v <= doc.variable_count; ++v) model.push_back(value[v] ? v : -v);
  return model;
}

bool satisfied_by(const CnfDocument& doc, const std::vector<bool>& assignment) {
  if (assignment.size() < static_cast<std::size_t>(doc.variable_count) + 1) return false;
  for (const auto& clause : doc.clauses) {
    bool sat = false;
    for (Literal lit : clause) {
      if (lit > 0 ? assignment[lit] : !assignment[-lit]) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::vector<Clause> table_units(const CayleyTable& table) {
  const int n = table.size();
  std::vector<Clause> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.push_back({cell_variable(n, i, j, table.at(i, j))});
  }
  return out;
}

}  // namespace magma
