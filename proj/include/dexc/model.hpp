#pragma once
// Finite models.  A model interprets each base type by a finite carrier and
// each declared operation by a lookup table.  Tagging and untagging are not
// tabulated: their interpretation is forced by the exception declarations
// (tagging wraps the parameter, untagging matches on the index).
//
// Values come in two flavours.  Ordinary values inhabit pure types (unit,
// atoms, left/right for sums on the explicit side).  Exception values carry
// an index and a parameter; on the decorated side they travel alongside
// ordinary values, on the explicit side they inhabit the type E.

#include <functional>
#include <map>

#include "dexc/spec.hpp"

namespace dexc {

struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& m) : std::runtime_error(m) {}
};

struct Value {
  enum class K { unit, atom, inl, inr, exc };
  K k = K::unit;
  std::string base, atom;             // K::atom
  int index = 0;                      // K::exc
  std::shared_ptr<const Value> sub;   // K::inl, K::inr, K::exc

  static Value u() { return Value{}; }
  static Value at(std::string b, std::string a) {
    Value v;
    v.k = K::atom;
    v.base = std::move(b);
    v.atom = std::move(a);
    return v;
  }
  static Value inl(Value s) {
    Value v;
    v.k = K::inl;
    v.sub = std::make_shared<Value>(std::move(s));
    return v;
  }
  static Value inr(Value s) {
    Value v;
    v.k = K::inr;
    v.sub = std::make_shared<Value>(std::move(s));
    return v;
  }
  static Value exc(int i, Value p) {
    Value v;
    v.k = K::exc;
    v.index = i;
    v.sub = std::make_shared<Value>(std::move(p));
    return v;
  }
  bool is_exc() const { return k == K::exc; }
};

inline bool value_eq(const Value& a, const Value& b) {
  if (a.k != b.k) return false;
  switch (a.k) {
    case Value::K::unit: return true;
    case Value::K::atom: return a.base == b.base && a.atom == b.atom;
    case Value::K::inl:
    case Value::K::inr: return value_eq(*a.sub, *b.sub);
    case Value::K::exc: return a.index == b.index && value_eq(*a.sub, *b.sub);
  }
  return false;
}

inline std::string print_value(const Value& v) {
  switch (v.k) {
    case Value::K::unit: return "*";
    case Value::K::atom: return v.atom;
    case Value::K::inl: return "in(" + print_value(*v.sub) + ")";
    case Value::K::inr: return "ina(" + print_value(*v.sub) + ")";
    case Value::K::exc:
      return "exc " + std::to_string(v.index) + "(" + print_value(*v.sub) +
             ")";
  }
  return "?";
}

class FiniteModel {
public:
  std::string name;
  std::map<std::string, std::vector<std::string>> carriers;
  // operation name -> rows (input, output); outputs of propagator rows may
  // be exception values, catcher rows may also take exception inputs
  std::map<std::string, std::vector<std::pair<Value, Value>>> tables;
  // fault-injection hook for tests: untagging at this index stops
  // recovering its own exceptions (it re-raises them instead)
  std::optional<int> corrupt_untag;

  const Value* lookup(const std::string& op, const Value& in) const {
    auto it = tables.find(op);
    if (it == tables.end()) return nullptr;
    for (const auto& row : it->second)
      if (value_eq(row.first, in)) return &row.second;
    return nullptr;
  }
};

// All ordinary values of a type, in a deterministic order.  Exception
// values (the inhabitants of E) enumerate indices in declaration order.
inline std::vector<Value> values_of(const DecoratedSpec& s,
                                    const FiniteModel& m, const TypePtr& t) {
  std::vector<Value> out;
  switch (t->kind) {
    case TypeKind::Zero: break;
    case TypeKind::Unit: out.push_back(Value::u()); break;
    case TypeKind::Base: {
      auto it = m.carriers.find(t->name);
      if (it == m.carriers.end())
        throw ModelError("model has no carrier for type " + t->name);
      for (const auto& a : it->second) out.push_back(Value::at(t->name, a));
      break;
    }
    case TypeKind::Coprod: {
      for (auto& v : values_of(s, m, t->left))
        out.push_back(Value::inl(std::move(v)));
      for (auto& v : values_of(s, m, t->right))
        out.push_back(Value::inr(std::move(v)));
      break;
    }
    case TypeKind::Exc: {
      for (const auto& e : s.excs)
        for (auto& p : values_of(s, m, e.param))
          out.push_back(Value::exc(e.index, std::move(p)));
      break;
    }
  }
  return out;
}

inline std::vector<Value> exception_values(const DecoratedSpec& s,
                                           const FiniteModel& m) {
  return values_of(s, m, ObjType::exc());
}

namespace detail {
inline int tag_index_of(const DecoratedSpec& s, const std::string& n,
                        bool untag) {
  for (const auto& e : s.excs)
    if (n == (untag ? DecoratedSpec::untag_name(e.index)
                    : DecoratedSpec::tag_name(e.index)))
      return e.index;
  return -1;
}

inline Value untag_result(const FiniteModel& m, int i, const Value& in,
                          bool as_sum) {
  // in is an exception value; recover the parameter iff the index matches.
  // The fault injection breaks untagging on the explicit side only (as_sum),
  // leaving decorated evaluation intact, so the two sides drift apart.
  bool corrupted = as_sum && m.corrupt_untag && *m.corrupt_untag == i;
  if (in.index == i && !corrupted) return as_sum ? Value::inl(*in.sub) : *in.sub;
  return as_sum ? Value::inr(in) : in;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// decorated evaluation: inputs and outputs are ordinary values or
// exception values; anything up to propagator strength forwards an
// incoming exception untouched, catchers get to inspect it

inline Value eval_decorated(const DecoratedSpec& s, const FiniteModel& m,
                            const TermPtr& t, const Value& in) {
  if (!t->decorated())
    throw ModelError("eval_decorated applied to an explicit term");
  if (in.is_exc() && deco_le(*t->deco, Deco::ppg)) return in;
  switch (t->kind) {
    case TermKind::Gen: {
      int i = detail::tag_index_of(s, t->name, false);
      if (i >= 0) return Value::exc(i, in);
      i = detail::tag_index_of(s, t->name, true);
      if (i >= 0) {
        if (!in.is_exc())
          throw ModelError("untagging applied to an ordinary value");
        return detail::untag_result(m, i, in, false);
      }
      const Value* out = m.lookup(t->name, in);
      if (!out)
        throw ModelError("model " + m.name + " has no row for " + t->name +
                         " at " + print_value(in));
      return *out;
    }
    case TermKind::Id: return in;
    case TermKind::Comp:
      return eval_decorated(s, m, t->kids[0],
                            eval_decorated(s, m, t->kids[1], in));
    case TermKind::EmptyMap:
      throw ModelError("empty map evaluated on an ordinary value");
    case TermKind::Copi1: return Value::inl(in);
    case TermKind::Copi2: return Value::inr(in);
    case TermKind::Downcast: return eval_decorated(s, m, t->kids[0], in);
    case TermKind::Cotuple: {
      if (in.is_exc()) return eval_decorated(s, m, t->kids[1], in);
      if (is_zero(t->kids[1]->src))  // recovery position takes exceptions only
        return eval_decorated(s, m, t->kids[0], in);
      if (in.k == Value::K::inl)
        return eval_decorated(s, m, t->kids[0], *in.sub);
      if (in.k == Value::K::inr)
        return eval_decorated(s, m, t->kids[1], *in.sub);
      throw ModelError("case split applied to a non-sum value");
    }
    case TermKind::TagCotuple: {
      if (!in.is_exc())
        throw ModelError("tag case split applied to an ordinary value");
      for (size_t i = 0; i < s.excs.size(); ++i)
        if (s.excs[i].index == in.index)
          return eval_decorated(s, m, t->kids[i], *in.sub);
      throw ModelError("exception index " + std::to_string(in.index) +
                       " not covered by tag case split");
    }
    case TermKind::SumMap: return eval_decorated(s, m, unfold_sum(t), in);
    default:
      throw ModelError("explicit construct inside a decorated term");
  }
}

// ---------------------------------------------------------------------------
// explicit evaluation: types are taken literally, E is inhabited by the
// exception values, and there is no implicit propagation

inline Value eval_explicit(const DecoratedSpec& s, const FiniteModel& m,
                           const TermPtr& t, const Value& in) {
  if (t->decorated())
    throw ModelError("eval_explicit applied to a decorated term");
  switch (t->kind) {
    case TermKind::Gen: {
      int i = detail::tag_index_of(s, t->name, false);
      if (i >= 0) return Value::exc(i, in);
      i = detail::tag_index_of(s, t->name, true);
      if (i >= 0) {
        if (!in.is_exc()) throw ModelError("untagging needs an E value");
        return detail::untag_result(m, i, in, true);
      }
      // declared operations: pure ones map ordinary to ordinary; the
      // explicit face of a hypothetical ppg/ctc operation converts between
      // sum values and the decorated rows
      TermPtr d = s.find_gen(t->name);
      if (!d) throw ModelError("unknown operation " + t->name);
      Value key = in;
      if (*d->deco == Deco::ctc) {
        if (in.k == Value::K::inl || in.k == Value::K::inr) key = *in.sub;
        else if (in.is_exc()) key = in;  // a 0+E source collapses to E
        else throw ModelError("catcher input is not a sum value");
      }
      const Value* out = m.lookup(t->name, key);
      if (!out)
        throw ModelError("model " + m.name + " has no row for " + t->name +
                         " at " + print_value(key));
      if (*d->deco == Deco::pure) return *out;
      return out->is_exc() ? Value::inr(*out) : Value::inl(*out);
    }
    case TermKind::Id: return in;
    case TermKind::Comp:
      return eval_explicit(s, m, t->kids[0],
                           eval_explicit(s, m, t->kids[1], in));
    case TermKind::EmptyMap:
      throw ModelError("empty map evaluated on a value");
    case TermKind::In: return Value::inl(in);
    case TermKind::Ina: return Value::inr(in);
    case TermKind::Copi1: return Value::inl(in);
    case TermKind::Copi2: return Value::inr(in);
    case TermKind::ExplCotuple:
    case TermKind::GenCotuple: {
      if (in.k == Value::K::inl)
        return eval_explicit(s, m, t->kids[0], *in.sub);
      if (in.k == Value::K::inr)
        return eval_explicit(s, m, t->kids[1], *in.sub);
      // E sits unboxed on the right of X + E
      if (in.is_exc() && type_eq(t->kids[1]->src, ObjType::exc()))
        return eval_explicit(s, m, t->kids[1], in);
      throw ModelError("case split applied to a non-sum value");
    }
    default:
      throw ModelError("decorated construct inside an explicit term");
  }
}

// ---------------------------------------------------------------------------
// axiom checking

struct AxiomViolation {
  std::string axiom;
  Value witness;  // input on which the two sides disagree
  Value lhs, rhs;
};

// Domain an equation quantifies over: ordinary inputs for weak equations,
// ordinary and exception inputs for strong ones, literal inputs for
// explicit ones.
inline std::vector<Value> equation_domain(const DecoratedSpec& s,
                                          const FiniteModel& m,
                                          const Equation& e) {
  std::vector<Value> dom = values_of(s, m, e.lhs->src);
  if (e.strength == Strength::strong)
    for (auto& v : exception_values(s, m)) dom.push_back(std::move(v));
  return dom;
}

inline bool oracle_holds(const DecoratedSpec& s, const FiniteModel& m,
                         const Equation& e, Value* witness = nullptr,
                         Value* lv = nullptr, Value* rv = nullptr) {
  for (const auto& x : equation_domain(s, m, e)) {
    Value a = e.strength == Strength::expl ? eval_explicit(s, m, e.lhs, x)
                                           : eval_decorated(s, m, e.lhs, x);
    Value b = e.strength == Strength::expl ? eval_explicit(s, m, e.rhs, x)
                                           : eval_decorated(s, m, e.rhs, x);
    if (!value_eq(a, b)) {
      if (witness) *witness = x;
      if (lv) *lv = a;
      if (rv) *rv = b;
      return false;
    }
  }
  return true;
}

// First axiom the model falsifies, if any, with the offending input.
inline std::optional<AxiomViolation> find_axiom_violation(
    const DecoratedSpec& s, const FiniteModel& m) {
  for (const auto& a : s.axioms) {
    AxiomViolation av;
    av.axiom = a.name;
    if (!oracle_holds(s, m, a.eq, &av.witness, &av.lhs, &av.rhs)) return av;
  }
  return std::nullopt;
}

// Structural checks on a model against its spec: carriers for every base,
// exhaustive non-redundant tables, outputs inside the carriers.
inline std::vector<std::string> validate_model(const DecoratedSpec& s,
                                               const FiniteModel& m) {
  std::vector<std::string> v;
  for (const auto& b : s.bases)
    if (!m.carriers.count(b)) v.push_back("missing carrier for type " + b);
  for (const auto& [b, atoms] : m.carriers) {
    if (!s.has_base(b)) v.push_back("carrier for undeclared type " + b);
    for (size_t i = 0; i < atoms.size(); ++i)
      for (size_t j = i + 1; j < atoms.size(); ++j)
        if (atoms[i] == atoms[j])
          v.push_back("duplicate element " + atoms[i] + " in carrier " + b);
  }
  if (!v.empty()) return v;  // value enumeration below needs carriers
  for (const auto& [op, rows] : m.tables) {
    bool declared = false;
    for (const auto& g : s.sig) declared |= g.name == op;
    if (!declared) v.push_back("table for undeclared operation " + op);
  }
  auto contains = [](const std::vector<Value>& vs, const Value& x) {
    for (const auto& v2 : vs)
      if (value_eq(v2, x)) return true;
    return false;
  };
  for (const auto& g : s.sig) {
    std::vector<Value> dom = values_of(s, m, g.src);
    if (g.deco == Deco::ctc)
      for (auto& e : exception_values(s, m)) dom.push_back(std::move(e));
    std::vector<Value> ordinary_out = values_of(s, m, g.tgt);
    auto it = m.tables.find(g.name);
    const std::vector<std::pair<Value, Value>> empty_rows;
    const auto& rows = it == m.tables.end() ? empty_rows : it->second;
    for (const auto& x : dom) {
      int n = 0;
      for (const auto& r : rows)
        if (value_eq(r.first, x)) ++n;
      if (n == 0)
        v.push_back("operation " + g.name + " has no row for input " +
                    print_value(x));
      if (n > 1)
        v.push_back("operation " + g.name + " has duplicate rows for input " +
                    print_value(x));
    }
    for (const auto& r : rows) {
      if (!contains(dom, r.first))
        v.push_back("operation " + g.name + " has a row for foreign input " +
                    print_value(r.first));
      if (r.second.is_exc()) {
        if (g.deco == Deco::pure) {
          v.push_back("pure operation " + g.name + " raises an exception");
        } else {
          const ExcDecl* e = s.find_exc(r.second.index);
          if (!e || !contains(values_of(s, m, e->param), *r.second.sub))
            v.push_back("operation " + g.name +
                        " raises an undeclared exception value " +
                        print_value(r.second));
        }
      } else if (!contains(ordinary_out, r.second)) {
        v.push_back("operation " + g.name + " outputs a foreign value " +
                    print_value(r.second));
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// exhaustive enumeration of models with bounded carriers

namespace detail {
inline const std::vector<std::string>& atom_pool() {
  static const std::vector<std::string> pool{"a", "b", "c", "d", "e", "f"};
  return pool;
}
}  // namespace detail

// Calls fn for every model whose carriers have size at most max_size
// (empty carriers included); fn returns false to stop early.  Returns
// false if the enumeration was stopped.
inline bool for_each_model(const DecoratedSpec& s, int max_size,
                           const std::function<bool(const FiniteModel&)>& fn) {
  size_t nb = s.bases.size();
  std::vector<int> sizes(nb, 0);
  while (true) {
    FiniteModel m;
    m.name = "enum";
    for (size_t i = 0; i < nb; ++i) {
      std::vector<std::string> atoms(detail::atom_pool().begin(),
                                     detail::atom_pool().begin() + sizes[i]);
      m.carriers[s.bases[i]] = atoms;
    }
    // choice slots: one output per (operation, input)
    struct Slot {
      std::string op;
      Value in;
      std::vector<Value> outs;
      size_t pick = 0;
    };
    std::vector<Slot> slots;
    bool impossible = false;
    for (const auto& g : s.sig) {
      std::vector<Value> dom = values_of(s, m, g.src);
      if (g.deco == Deco::ctc)
        for (auto& e : exception_values(s, m)) dom.push_back(std::move(e));
      std::vector<Value> outs = values_of(s, m, g.tgt);
      if (g.deco != Deco::pure)
        for (auto& e : exception_values(s, m)) outs.push_back(std::move(e));
      if (!dom.empty() && outs.empty()) {
        impossible = true;  // an operation with nothing to map to
        break;
      }
      for (const auto& x : dom) slots.push_back({g.name, x, outs, 0});
    }
    if (!impossible) {
      while (true) {
        m.tables.clear();
        for (const auto& sl : slots)
          m.tables[sl.op].push_back({sl.in, sl.outs[sl.pick]});
        if (!fn(m)) return false;
        // odometer
        size_t i = 0;
        for (; i < slots.size(); ++i) {
          if (++slots[i].pick < slots[i].outs.size()) break;
          slots[i].pick = 0;
        }
        if (i == slots.size()) break;
      }
    }
    // next carrier size tuple
    size_t i = 0;
    for (; i < nb; ++i) {
      if (++sizes[i] <= max_size) break;
      sizes[i] = 0;
    }
    if (i == nb) break;
    if (nb == 0) break;
  }
  return true;
}

}  // namespace dexc
