#pragma once
// Decorated specifications: a pure signature, an ordered family of
// exception indices with parameter types, and equational axioms.  The two
// tagging/untagging operations per index are canonical and come with the
// index declarations; the axioms section is expected to contain the weak
// axioms that relate them.
//
// Hypothetical operations with ppg or ctc decoration are allowed in the
// signature.  They act as universally quantified premises ("for every
// propagator f ...") when writing derivations, and are interpreted by
// explicit graphs in finite models.

#include <algorithm>
#include <map>

#include "dexc/term.hpp"

namespace dexc {

enum class Strength { weak, strong, expl };

struct Equation {
  Strength strength;
  TermPtr lhs, rhs;
};

inline bool eq_eq(const Equation& a, const Equation& b) {
  return a.strength == b.strength && term_eq(a.lhs, b.lhs) &&
         term_eq(a.rhs, b.rhs);
}

inline std::string print_equation(const Equation& e) {
  const char* op = e.strength == Strength::weak ? " ~ " : " == ";
  return print_term(e.lhs) + op + print_term(e.rhs);
}

struct GenDecl {
  std::string name;
  TypePtr src, tgt;
  Deco deco;
};

struct ExcDecl {
  int index;
  TypePtr param;
};

struct NamedEq {
  std::string name;
  Equation eq;
};

struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& m) : std::runtime_error(m) {}
};

class DecoratedSpec {
public:
  std::string name;
  std::vector<std::string> bases;
  std::vector<GenDecl> sig;    // as declared; tag/untag decls may shadow here
  std::vector<ExcDecl> excs;   // ordered index set
  std::vector<NamedEq> axioms;

  const ExcDecl* find_exc(int index) const {
    for (const auto& e : excs)
      if (e.index == index) return &e;
    return nullptr;
  }

  bool has_base(const std::string& n) const {
    return std::find(bases.begin(), bases.end(), n) != bases.end();
  }

  TypePtr resolve_base(const std::string& n) const {
    if (n == "0") return ObjType::zero();
    if (n == "1") return ObjType::unit();
    if (!has_base(n)) throw SpecError("unknown type " + n);
    return ObjType::base(n);
  }

  static std::string tag_name(int i) { return "t" + std::to_string(i); }
  static std::string untag_name(int i) { return "c" + std::to_string(i); }

  // Canonical tagging/untagging operations.
  TermPtr tag(int i) const {
    const ExcDecl* e = find_exc(i);
    if (!e) throw SpecError("unknown exception index " + std::to_string(i));
    return gen(tag_name(i), e->param, ObjType::zero(), Deco::ppg);
  }
  TermPtr untag(int i) const {
    const ExcDecl* e = find_exc(i);
    if (!e) throw SpecError("unknown exception index " + std::to_string(i));
    return gen(untag_name(i), ObjType::zero(), e->param, Deco::ctc);
  }

  // Resolves a generator name; tag/untag names resolve to the canonical
  // operations, everything else looks up the declared signature.
  TermPtr find_gen(const std::string& n) const {
    for (const auto& e : excs) {
      if (n == tag_name(e.index)) return tag(e.index);
      if (n == untag_name(e.index)) return untag(e.index);
    }
    for (const auto& g : sig)
      if (g.name == n) return gen(g.name, g.src, g.tgt, g.deco);
    return nullptr;
  }

  std::vector<TypePtr> param_types() const {
    std::vector<TypePtr> ps;
    for (const auto& e : excs) ps.push_back(e.param);
    return ps;
  }

  const NamedEq* find_axiom(const std::string& n) const {
    for (const auto& a : axioms)
      if (a.name == n) return &a;
    return nullptr;
  }
};

// The canonical weak axioms: untagging its own tag recovers the parameter,
// untagging a foreign tag propagates it.
inline Equation untag_tag_axiom(const DecoratedSpec& s, int i) {
  return {Strength::weak, comp(s.untag(i), s.tag(i)),
          id(s.find_exc(i)->param)};
}
inline Equation untag_other_axiom(const DecoratedSpec& s, int i, int j) {
  return {Strength::weak, comp(s.untag(i), s.tag(j)),
          comp(empty_map(s.find_exc(i)->param), s.tag(j))};
}

// Builds a spec with the canonical axioms filled in.
inline DecoratedSpec make_deco_spec(std::string name,
                                    std::vector<std::string> bases,
                                    std::vector<GenDecl> sig,
                                    std::vector<ExcDecl> excs,
                                    std::vector<NamedEq> extra_axioms = {}) {
  DecoratedSpec s;
  s.name = std::move(name);
  s.bases = std::move(bases);
  s.sig = std::move(sig);
  s.excs = std::move(excs);
  for (const auto& e : s.excs) {
    s.axioms.push_back({"ut_" + std::to_string(e.index),
                        untag_tag_axiom(s, e.index)});
    for (const auto& f : s.excs)
      if (f.index != e.index)
        s.axioms.push_back({"cross_" + std::to_string(e.index) + "_" +
                                std::to_string(f.index),
                            untag_other_axiom(s, e.index, f.index)});
  }
  for (auto& a : extra_axioms) s.axioms.push_back(std::move(a));
  return s;
}

// ---------------------------------------------------------------------------
// well-formedness

namespace detail {
inline bool is_sig_type(const DecoratedSpec& s, const TypePtr& t) {
  return t->kind == TypeKind::Unit ||
         (t->kind == TypeKind::Base && s.has_base(t->name));
}

inline void scan_gens(const TermPtr& t, const DecoratedSpec& s,
                      std::vector<std::string>& out) {
  if (t->kind == TermKind::Gen) {
    TermPtr d = s.find_gen(t->name);
    if (!d)
      out.push_back("axiom uses undeclared operation " + t->name);
    else if (!term_eq(d, t))
      out.push_back("axiom uses operation " + t->name +
                    " at a type or decoration that differs from its "
                    "declaration");
  }
  for (const auto& k : t->kids) scan_gens(k, s, out);
}
}  // namespace detail

// Returns human-readable violations; empty means well-formed.
inline std::vector<std::string> check_wellformed(const DecoratedSpec& s) {
  std::vector<std::string> v;
  for (size_t i = 0; i < s.bases.size(); ++i)
    for (size_t j = i + 1; j < s.bases.size(); ++j)
      if (s.bases[i] == s.bases[j]) v.push_back("duplicate type " + s.bases[i]);
  for (size_t i = 0; i < s.excs.size(); ++i) {
    const auto& e = s.excs[i];
    for (size_t j = i + 1; j < s.excs.size(); ++j)
      if (s.excs[j].index == e.index)
        v.push_back("duplicate exception index " + std::to_string(e.index));
    if (!detail::is_sig_type(s, e.param))
      v.push_back("exception parameter type for index " +
                  std::to_string(e.index) + " is not a declared pure type");
  }
  for (size_t i = 0; i < s.sig.size(); ++i) {
    const auto& g = s.sig[i];
    for (size_t j = i + 1; j < s.sig.size(); ++j)
      if (s.sig[j].name == g.name) v.push_back("duplicate operation " + g.name);
    // tag arity: a declared operation named like a canonical one must match it
    bool canonical_name = false;
    for (const auto& e : s.excs) {
      if (g.name == DecoratedSpec::tag_name(e.index)) {
        canonical_name = true;
        if (!type_eq(g.src, e.param) || !is_zero(g.tgt) || g.deco != Deco::ppg)
          v.push_back("tag arity: " + g.name + " must be declared " +
                      print_type(e.param) + " -> 0 [ppg]");
      } else if (g.name == DecoratedSpec::untag_name(e.index)) {
        canonical_name = true;
        if (!is_zero(g.src) || !type_eq(g.tgt, e.param) || g.deco != Deco::ctc)
          v.push_back("tag arity: " + g.name + " must be declared 0 -> " +
                      print_type(e.param) + " [ctc]");
      }
    }
    if (!canonical_name &&
        (!detail::is_sig_type(s, g.src) || !detail::is_sig_type(s, g.tgt)))
      v.push_back("operation " + g.name +
                  " must be a constant or unary over declared pure types");
  }
  // canonical axioms present exactly once per index pair
  for (const auto& e : s.excs) {
    Equation want = untag_tag_axiom(s, e.index);
    int n = 0;
    for (const auto& a : s.axioms)
      if (eq_eq(a.eq, want)) ++n;
    if (n == 0)
      v.push_back("missing self axiom for index " + std::to_string(e.index));
    if (n > 1)
      v.push_back("duplicated self axiom for index " + std::to_string(e.index));
    for (const auto& f : s.excs) {
      if (f.index == e.index) continue;
      Equation cross = untag_other_axiom(s, e.index, f.index);
      int m = 0;
      for (const auto& a : s.axioms)
        if (eq_eq(a.eq, cross)) ++m;
      if (m == 0)
        v.push_back("missing cross axiom for indices " +
                    std::to_string(e.index) + "," + std::to_string(f.index));
      if (m > 1)
        v.push_back("duplicated cross axiom for indices " +
                    std::to_string(e.index) + "," + std::to_string(f.index));
    }
  }
  for (const auto& a : s.axioms) {
    if (a.eq.strength == Strength::expl) {
      v.push_back("axiom " + a.name + " uses explicit equality");
      continue;
    }
    if (!a.eq.lhs->decorated() || !a.eq.rhs->decorated()) {
      v.push_back("axiom " + a.name + " mixes in explicit terms");
      continue;
    }
    if (!type_eq(a.eq.lhs->src, a.eq.rhs->src) ||
        !type_eq(a.eq.lhs->tgt, a.eq.rhs->tgt))
      v.push_back("axiom " + a.name + " equates non-parallel terms");
    detail::scan_gens(a.eq.lhs, s, v);
    detail::scan_gens(a.eq.rhs, s, v);
  }
  return v;
}

// ---------------------------------------------------------------------------
// the apparent signature: what a program sees, with all catching machinery
// hidden behind raising operations and the handling construction

struct ApparentSpec {
  struct Op {
    std::string name;
    TypePtr src, tgt;
  };
  std::vector<std::string> types;
  std::vector<Op> ops;
  std::vector<std::string> schemas;  // formation schemas, pretty-printed
};

inline ApparentSpec undecorate(const DecoratedSpec& s) {
  ApparentSpec a;
  a.types = s.bases;
  for (const auto& g : s.sig)
    if (g.deco != Deco::ctc) a.ops.push_back({g.name, g.src, g.tgt});
  if (!s.excs.empty()) {
    std::vector<TypePtr> targets{ObjType::unit()};
    for (const auto& b : s.bases) targets.push_back(ObjType::base(b));
    for (const auto& e : s.excs)
      for (const auto& y : targets)
        a.ops.push_back({"throw_" + std::to_string(e.index) + "_" +
                             print_type(y),
                         e.param, y});
    a.schemas.push_back(
        "try f catch(i1 => g1 | ... | in => gn) : X -> Y  "
        "for f : X -> Y and gk : P(ik) -> Y");
  }
  return a;
}

// ---------------------------------------------------------------------------
// explicit specifications

struct XGenDecl {
  std::string name;
  TypePtr src, tgt;
};

struct ExplicitSpec {
  std::string name;
  std::vector<std::string> bases;
  std::vector<XGenDecl> sig;
  std::vector<ExcDecl> excs;      // kept so E can be interpreted
  std::vector<NamedEq> axioms;    // Strength::expl

  TermPtr find_gen(const std::string& n) const {
    for (const auto& g : sig)
      if (g.name == n) return xgen(g.name, g.src, g.tgt);
    return nullptr;
  }
};

// The direct construction of the explicit counterpart: tags become
// operations into E, untags become case analyses out of E, and the two
// axiom families state exactly how they compose.
inline ExplicitSpec direct_explicit_spec(const DecoratedSpec& s) {
  ExplicitSpec x;
  x.name = s.name;
  x.bases = s.bases;
  x.excs = s.excs;
  TypePtr E = ObjType::exc();
  for (const auto& g : s.sig) {
    switch (g.deco) {
      case Deco::pure: x.sig.push_back({g.name, g.src, g.tgt}); break;
      case Deco::ppg:
        x.sig.push_back({g.name, g.src, ObjType::coprod(g.tgt, E)});
        break;
      case Deco::ctc:
        x.sig.push_back({g.name, ObjType::coprod(g.src, E),
                         ObjType::coprod(g.tgt, E)});
        break;
    }
  }
  for (const auto& e : s.excs)
    x.sig.push_back({DecoratedSpec::tag_name(e.index), e.param, E});
  for (const auto& e : s.excs)
    x.sig.push_back({DecoratedSpec::untag_name(e.index), E,
                     ObjType::coprod(e.param, E)});
  auto xtag = [&](const ExcDecl& e) {
    return xgen(DecoratedSpec::tag_name(e.index), e.param, E);
  };
  auto xuntag = [&](const ExcDecl& e) {
    return xgen(DecoratedSpec::untag_name(e.index), E,
                ObjType::coprod(e.param, E));
  };
  for (const auto& e : s.excs) {
    x.axioms.push_back({"ut_" + std::to_string(e.index),
                        {Strength::expl, xcomp(xuntag(e), xtag(e)),
                         xin(e.param)}});
    for (const auto& f : s.excs)
      if (f.index != e.index)
        x.axioms.push_back(
            {"cross_" + std::to_string(e.index) + "_" +
                 std::to_string(f.index),
             {Strength::expl, xcomp(xuntag(e), xtag(f)),
              xcomp(xina(e.param), xtag(f))}});
  }
  return x;
}

inline bool explicit_spec_eq(const ExplicitSpec& a, const ExplicitSpec& b) {
  if (a.bases != b.bases) return false;
  if (a.sig.size() != b.sig.size() || a.axioms.size() != b.axioms.size())
    return false;
  for (size_t i = 0; i < a.sig.size(); ++i)
    if (a.sig[i].name != b.sig[i].name ||
        !type_eq(a.sig[i].src, b.sig[i].src) ||
        !type_eq(a.sig[i].tgt, b.sig[i].tgt))
      return false;
  for (size_t i = 0; i < a.axioms.size(); ++i)
    if (!eq_eq(a.axioms[i].eq, b.axioms[i].eq)) return false;
  return true;
}

}  // namespace dexc
