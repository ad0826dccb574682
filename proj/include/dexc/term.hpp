#pragma once
// Terms of the decorated language and of its explicit counterpart.
//
// Both levels share one immutable node type.  Decorated terms carry a
// decoration on every node (computed once, at construction, by the factory
// functions below, which are the single authority for decoration
// inference).  Explicit terms carry no decoration and may use the
// exception type E plus the injections in/ina.
//
// The factories enforce well-typedness and the decoration side conditions,
// so an ill-formed tree cannot be represented at all.

#include <optional>
#include <sstream>

#include "dexc/types.hpp"

namespace dexc {

enum class TermKind {
  // shared between the two levels
  Gen, Id, Comp, EmptyMap, Copi1, Copi2,
  // decorated level only
  Downcast, Cotuple, TagCotuple, SumMap,
  // explicit level only
  In, Ina, ExplCotuple, GenCotuple,
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
public:
  TermKind kind;
  std::string name;            // Gen only
  TypePtr src, tgt;
  std::optional<Deco> deco;    // set iff the term is decorated
  std::vector<TermPtr> kids;   // composition order: Comp(g,f) stores {g, f}

  bool decorated() const { return deco.has_value(); }
};

namespace detail {
inline TermPtr mk(TermKind k, TypePtr src, TypePtr tgt,
                  std::optional<Deco> d, std::vector<TermPtr> kids = {},
                  std::string name = {}) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->name = std::move(name);
  t->src = std::move(src);
  t->tgt = std::move(tgt);
  t->deco = d;
  t->kids = std::move(kids);
  return t;
}

inline void want_deco_types(const TypePtr& t, const char* who) {
  if (mentions_exc(t))
    throw TypeError(std::string(who) + ": decorated terms cannot mention E");
}
}  // namespace detail

inline std::string print_term(const TermPtr& t);

// ---------------------------------------------------------------------------
// decorated factories

inline TermPtr gen(std::string name, TypePtr src, TypePtr tgt, Deco d) {
  detail::want_deco_types(src, "gen");
  detail::want_deco_types(tgt, "gen");
  return detail::mk(TermKind::Gen, std::move(src), std::move(tgt), d, {},
                    std::move(name));
}

inline TermPtr id(TypePtr at) {
  detail::want_deco_types(at, "id");
  return detail::mk(TermKind::Id, at, at, Deco::pure);
}

inline TermPtr empty_map(TypePtr into) {
  detail::want_deco_types(into, "[]");
  return detail::mk(TermKind::EmptyMap, ObjType::zero(), std::move(into),
                    Deco::pure);
}

inline TermPtr comp(TermPtr outer, TermPtr inner) {
  if (outer->decorated() != inner->decorated())
    throw TypeError("comp: cannot mix decorated and explicit terms");
  if (!type_eq(inner->tgt, outer->src))
    throw TypeError("comp: " + print_term(outer) + " o " + print_term(inner) +
                    ": middle types differ (" + print_type(inner->tgt) +
                    " vs " + print_type(outer->src) + ")");
  std::optional<Deco> d;
  if (outer->decorated()) d = deco_join(*outer->deco, *inner->deco);
  TypePtr src = inner->src, tgt = outer->tgt;
  return detail::mk(TermKind::Comp, std::move(src), std::move(tgt), d,
                    {std::move(outer), std::move(inner)});
}

inline TermPtr downcast(TermPtr body) {
  if (!body->decorated()) throw TypeError("down: body must be decorated");
  TypePtr src = body->src, tgt = body->tgt;
  return detail::mk(TermKind::Downcast, std::move(src), std::move(tgt),
                    Deco::ppg, {std::move(body)});
}

// Case split [l | r].  The left component is the propagator branch; when the
// right component has source 0 the split is over X ~ X+0 and the whole term
// has source src(l), otherwise it is the case split over src(l)+src(r).
// Decoration collapses to ppg when both branches are at most propagators.
inline TermPtr cotuple(TermPtr l, TermPtr r) {
  if (!l->decorated() || !r->decorated())
    throw TypeError("[ | ]: both components must be decorated");
  if (!type_eq(l->tgt, r->tgt))
    throw TypeError("[ | ]: components target different types");
  if (is_zero(l->src))
    throw TypeError("[ | ]: left component must not have source 0 "
                    "(put the recovery branch on the right)");
  if (!deco_le(*l->deco, Deco::ppg))
    throw TypeError("[ | ]: left component must be at most a propagator");
  TypePtr src = ObjType::coprod(l->src, r->src);
  TypePtr tgt = l->tgt;
  Deco d = deco_le(*r->deco, Deco::ppg) ? Deco::ppg : Deco::ctc;
  return detail::mk(TermKind::Cotuple, std::move(src), std::move(tgt), d,
                    {std::move(l), std::move(r)});
}

// Family case split {f_1 | ... | f_n} over the tag family: member k handles
// exceptions of the k-th declared index and must be a propagator P_k -> Y.
inline TermPtr tag_cotuple(std::vector<TermPtr> members,
                           const std::vector<TypePtr>& params) {
  if (members.empty()) throw TypeError("{ | }: empty member list");
  if (members.size() != params.size())
    throw TypeError("{ | }: expected one member per exception index");
  for (size_t k = 0; k < members.size(); ++k) {
    const auto& m = members[k];
    if (!m->decorated()) throw TypeError("{ | }: members must be decorated");
    if (!deco_le(*m->deco, Deco::ppg))
      throw TypeError("{ | }: members must be at most propagators");
    if (!type_eq(m->src, params[k]))
      throw TypeError("{ | }: member " + std::to_string(k + 1) +
                      " must have source " + print_type(params[k]));
    if (!type_eq(m->tgt, members[0]->tgt))
      throw TypeError("{ | }: members target different types");
  }
  TypePtr tgt = members[0]->tgt;
  return detail::mk(TermKind::TagCotuple, ObjType::zero(), std::move(tgt),
                    Deco::ctc, std::move(members));
}

inline TermPtr copi1(TypePtr a, TypePtr b) {
  detail::want_deco_types(a, "copi1");
  detail::want_deco_types(b, "copi1");
  if (is_zero(a) || is_zero(b))
    throw TypeError("copi1: coproduct sides must be nonempty types");
  return detail::mk(TermKind::Copi1, a, ObjType::coprod(a, b), Deco::pure);
}

inline TermPtr copi2(TypePtr a, TypePtr b) {
  detail::want_deco_types(a, "copi2");
  detail::want_deco_types(b, "copi2");
  if (is_zero(a) || is_zero(b))
    throw TypeError("copi2: coproduct sides must be nonempty types");
  return detail::mk(TermKind::Copi2, b, ObjType::coprod(a, b), Deco::pure);
}

// Smart injections into a possibly collapsing coproduct C+D.
inline TermPtr inj1(const TypePtr& c, const TypePtr& d) {
  if (is_zero(d)) return id(c);
  if (is_zero(c)) return empty_map(d);
  return copi1(c, d);
}
inline TermPtr inj2(const TypePtr& c, const TypePtr& d) {
  if (is_zero(c)) return id(d);
  if (is_zero(d)) return empty_map(c);
  return copi2(c, d);
}

// f + k, kept as its own node and unfolded on demand.  The unfolding places
// the branch with source 0 (if any) in recovery position, so a sum with a
// catcher on either side still forms a valid case split.
inline TermPtr unfold_sum(const TermPtr& f, const TermPtr& k) {
  const TypePtr &c = f->tgt, &d = k->tgt;
  if (is_zero(f->src) && is_zero(k->src))
    throw TypeError("+: at most one summand may have source 0");
  TermPtr l = comp(inj1(c, d), f);
  TermPtr r = comp(inj2(c, d), k);
  if (is_zero(f->src)) std::swap(l, r);
  return cotuple(std::move(l), std::move(r));
}

inline TermPtr summap(TermPtr f, TermPtr k) {
  if (!f->decorated() || !k->decorated())
    throw TypeError("+: both summands must be decorated");
  TermPtr u = unfold_sum(f, k);
  return detail::mk(TermKind::SumMap, u->src, u->tgt, u->deco,
                    {std::move(f), std::move(k)});
}

inline TermPtr unfold_sum(const TermPtr& s) {
  return unfold_sum(s->kids[0], s->kids[1]);
}

// ---------------------------------------------------------------------------
// explicit factories (no decorations, E allowed)

inline TermPtr xgen(std::string name, TypePtr src, TypePtr tgt) {
  return detail::mk(TermKind::Gen, std::move(src), std::move(tgt),
                    std::nullopt, {}, std::move(name));
}

inline TermPtr xid(TypePtr at) {
  return detail::mk(TermKind::Id, at, at, std::nullopt);
}

inline TermPtr xempty(TypePtr into) {
  return detail::mk(TermKind::EmptyMap, ObjType::zero(), std::move(into),
                    std::nullopt);
}

inline TermPtr xcomp(TermPtr outer, TermPtr inner) {
  if (outer->decorated() || inner->decorated())
    throw TypeError("xcomp: expected explicit terms");
  if (!type_eq(inner->tgt, outer->src))
    throw TypeError("xcomp: middle types differ (" + print_type(inner->tgt) +
                    " vs " + print_type(outer->src) + ")");
  TypePtr src = inner->src, tgt = outer->tgt;
  return detail::mk(TermKind::Comp, std::move(src), std::move(tgt),
                    std::nullopt, {std::move(outer), std::move(inner)});
}

// in_X : X -> X+E.  in_0 collapses to []_E under the 0+E ~ E identification.
inline TermPtr xin(TypePtr x) {
  if (mentions_exc(x)) throw TypeError("in: argument type already mentions E");
  if (is_zero(x)) return xempty(ObjType::exc());
  return detail::mk(TermKind::In, x, ObjType::coprod(x, ObjType::exc()),
                    std::nullopt);
}

// ina_X : E -> X+E.  ina_0 collapses to id_E.
inline TermPtr xina(TypePtr x) {
  if (mentions_exc(x)) throw TypeError("ina: argument type already mentions E");
  if (is_zero(x)) return xid(ObjType::exc());
  return detail::mk(TermKind::Ina, ObjType::exc(),
                    ObjType::coprod(x, ObjType::exc()), std::nullopt);
}

// Case split over X+E.  When X is 0 the split collapses to its E branch.
inline TermPtr xcot(TermPtr f, TermPtr k) {
  if (f->decorated() || k->decorated())
    throw TypeError("xcot: expected explicit terms");
  if (!type_eq(f->tgt, k->tgt))
    throw TypeError("xcot: components target different types");
  if (k->src->kind != TypeKind::Exc)
    throw TypeError("xcot: right component must have source E");
  if (mentions_exc(f->src))
    throw TypeError("xcot: left component source must not mention E");
  if (is_zero(f->src)) return k;
  TypePtr src = ObjType::coprod(f->src, ObjType::exc());
  TypePtr tgt = f->tgt;
  return detail::mk(TermKind::ExplCotuple, std::move(src), std::move(tgt),
                    std::nullopt, {std::move(f), std::move(k)});
}

// Case split over a plain coproduct A+B of exception-free types; collapses
// when a side is empty.
inline TermPtr xgcot(TermPtr u, TermPtr v) {
  if (u->decorated() || v->decorated())
    throw TypeError("xgcot: expected explicit terms");
  if (!type_eq(u->tgt, v->tgt))
    throw TypeError("xgcot: components target different types");
  if (mentions_exc(u->src) || mentions_exc(v->src))
    throw TypeError("xgcot: component sources must not mention E");
  if (is_zero(u->src)) return v;
  if (is_zero(v->src)) return u;
  TypePtr src = ObjType::coprod(u->src, v->src);
  TypePtr tgt = u->tgt;
  return detail::mk(TermKind::GenCotuple, std::move(src), std::move(tgt),
                    std::nullopt, {std::move(u), std::move(v)});
}

inline TermPtr xcopi1(TypePtr a, TypePtr b) {
  if (is_zero(a) || is_zero(b))
    throw TypeError("copi1: coproduct sides must be nonempty types");
  return detail::mk(TermKind::Copi1, a, ObjType::coprod(a, b), std::nullopt);
}

inline TermPtr xcopi2(TypePtr a, TypePtr b) {
  if (is_zero(a) || is_zero(b))
    throw TypeError("copi2: coproduct sides must be nonempty types");
  return detail::mk(TermKind::Copi2, b, ObjType::coprod(a, b), std::nullopt);
}

// ---------------------------------------------------------------------------

inline bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->decorated() != b->decorated()) return false;
  if (!type_eq(a->src, b->src) || !type_eq(a->tgt, b->tgt)) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!term_eq(a->kids[i], b->kids[i])) return false;
  return true;
}

// Rebuilds the tree through the factories; returns the (re)inferred
// decoration of the root.  This is the checkable face of the rule that the
// stored decorations are exactly the inferred ones.
inline TermPtr reinfer(const TermPtr& t, const std::vector<TypePtr>& params) {
  switch (t->kind) {
    case TermKind::Gen: return gen(t->name, t->src, t->tgt, *t->deco);
    case TermKind::Id: return id(t->src);
    case TermKind::EmptyMap: return empty_map(t->tgt);
    case TermKind::Comp:
      return comp(reinfer(t->kids[0], params), reinfer(t->kids[1], params));
    case TermKind::Downcast: return downcast(reinfer(t->kids[0], params));
    case TermKind::Cotuple:
      return cotuple(reinfer(t->kids[0], params), reinfer(t->kids[1], params));
    case TermKind::TagCotuple: {
      std::vector<TermPtr> ms;
      for (const auto& m : t->kids) ms.push_back(reinfer(m, params));
      return tag_cotuple(std::move(ms), params);
    }
    case TermKind::Copi1: return copi1(t->src, t->tgt->right);
    case TermKind::Copi2: return copi2(t->tgt->left, t->src);
    case TermKind::SumMap:
      return summap(reinfer(t->kids[0], params), reinfer(t->kids[1], params));
    default:
      throw TypeError("reinfer: not a decorated term");
  }
}

inline Deco infer_decoration(const TermPtr& t, const std::vector<TypePtr>& params) {
  return *reinfer(t, params)->deco;
}

// ---------------------------------------------------------------------------
// printing; output parses back to a structurally identical term

namespace detail {
// precedence levels: 0 = sum (+), 1 = comp (o), 2 = atom
inline std::string print_at(const TermPtr& t, int level);

inline std::string atomize(const TermPtr& t) { return print_at(t, 2); }

inline std::string print_at(const TermPtr& t, int level) {
  std::string s;
  int mine;
  switch (t->kind) {
    case TermKind::SumMap:
      mine = 0;
      // left-associated chains print flat
      s = print_at(t->kids[0], t->kids[0]->kind == TermKind::SumMap ? 0 : 1) +
          " + " + print_at(t->kids[1], 1);
      break;
    case TermKind::Comp: {
      mine = 1;
      // right-associated chains print flat
      s = print_at(t->kids[0], 2) + " o " +
          print_at(t->kids[1], t->kids[1]->kind == TermKind::Comp ? 1 : 2);
      break;
    }
    case TermKind::Gen: return t->name;
    case TermKind::Id: return "id{" + print_type(t->src) + "}";
    case TermKind::EmptyMap: return "[]{" + print_type(t->tgt) + "}";
    case TermKind::Downcast: return "down(" + print_at(t->kids[0], 0) + ")";
    case TermKind::Cotuple:
    case TermKind::ExplCotuple:
    case TermKind::GenCotuple:
      return "[" + print_at(t->kids[0], 0) + " | " + print_at(t->kids[1], 0) + "]";
    case TermKind::TagCotuple: {
      s = "{";
      for (size_t i = 0; i < t->kids.size(); ++i)
        s += (i ? " | " : "") + print_at(t->kids[i], 0);
      return s + "}";
    }
    case TermKind::Copi1: return "copi1{" + print_type(t->tgt) + "}";
    case TermKind::Copi2: return "copi2{" + print_type(t->tgt) + "}";
    case TermKind::In: return "in{" + print_type(t->src) + "}";
    case TermKind::Ina: return "ina{" + print_type(t->tgt->left) + "}";
    default: return "?";
  }
  if (mine < level) return "(" + s + ")";
  return s;
}
}  // namespace detail

inline std::string print_term(const TermPtr& t) { return detail::print_at(t, 0); }

}  // namespace dexc
