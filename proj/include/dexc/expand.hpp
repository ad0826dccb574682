#pragma once
// The expansion translation from decorated to explicit syntax.  Every
// decorated term has a catcher form X+E -> Y+E; propagators additionally
// have the precomposed form f1 = f o in : X -> Y+E and pure terms the
// plain form f0 : X -> Y.  Equations expand strength-wise: strong ones
// compare catcher forms, weak ones compare the f1 forms.
//
// The normalizer orients the coproduct laws left to right ([u|v] o in -> u
// and [u|v] o ina -> v), removes identities, flattens composition, applies
// the narrow eta rule ([in|ina] -> id), and collapses any term with source
// 0 to the empty map (initiality).  Each step strictly reduces node count,
// so normalization terminates; it is applied to a fixpoint.

#include "dexc/model.hpp"

namespace dexc {

struct ExpandError : std::runtime_error {
  explicit ExpandError(const std::string& m) : std::runtime_error(m) {}
};

// ---------------------------------------------------------------------------
// composition spines

namespace detail {

inline void flatten_comp(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->kind == TermKind::Comp) {
    flatten_comp(t->kids[0], out);
    flatten_comp(t->kids[1], out);
  } else {
    out.push_back(t);
  }
}

inline std::vector<TermPtr> spine_of(const TermPtr& t) {
  std::vector<TermPtr> s;
  flatten_comp(t, s);
  return s;
}

inline TermPtr rebuild_spine(const std::vector<TermPtr>& atoms,
                             const TypePtr& src_whole) {
  if (atoms.empty()) return xid(src_whole);
  TermPtr t = atoms.back();
  for (size_t i = atoms.size() - 1; i-- > 0;) t = xcomp(atoms[i], t);
  return t;
}

// Resolves a case split applied directly to an injection.  In/Copi1 pick
// the left branch, Ina/Copi2 the right one; In and Ina are the A+E
// instances of the general coprojections, so cross pairings also reduce.
inline TermPtr select_branch(const TermPtr& cot, const TermPtr& inj) {
  bool split = cot->kind == TermKind::ExplCotuple ||
               cot->kind == TermKind::GenCotuple;
  if (!split) return nullptr;
  switch (inj->kind) {
    case TermKind::In:
    case TermKind::Copi1: return cot->kids[0];
    case TermKind::Ina:
    case TermKind::Copi2: return cot->kids[1];
    default: return nullptr;
  }
}

}  // namespace detail

inline TermPtr normalize_explicit(const TermPtr& t) {
  if (t->decorated())
    throw ExpandError("normalize_explicit applied to a decorated term");
  TypePtr src = t->src, tgt = t->tgt;
  TermPtr result;
  if (t->kind == TermKind::Comp) {
    std::vector<TermPtr> atoms;
    for (const auto& raw : detail::spine_of(t))
      detail::flatten_comp(normalize_explicit(raw), atoms);
    bool changed = true;
    while (changed) {
      changed = false;
      // identity elimination
      for (size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i]->kind == TermKind::Id) {
          atoms.erase(atoms.begin() + i);
          changed = true;
          break;
        }
      }
      if (changed) continue;
      // beta: a case split meeting its injection
      for (size_t i = 0; i + 1 < atoms.size(); ++i) {
        TermPtr b = detail::select_branch(atoms[i], atoms[i + 1]);
        if (b) {
          std::vector<TermPtr> repl;
          detail::flatten_comp(b, repl);
          atoms.erase(atoms.begin() + i, atoms.begin() + i + 2);
          atoms.insert(atoms.begin() + i, repl.begin(), repl.end());
          changed = true;
          break;
        }
      }
      if (changed) continue;
      // initiality: everything after an empty map factors through 0
      for (size_t i = 1; i < atoms.size(); ++i) {
        if (atoms[i]->kind == TermKind::EmptyMap) {
          std::vector<TermPtr> repl{xempty(atoms[0]->tgt)};
          repl.insert(repl.end(), atoms.begin() + i + 1, atoms.end());
          atoms = std::move(repl);
          changed = true;
          break;
        }
      }
    }
    result = detail::rebuild_spine(atoms, src);
  } else {
    switch (t->kind) {
      case TermKind::ExplCotuple: {
        TermPtr l = normalize_explicit(t->kids[0]);
        TermPtr r = normalize_explicit(t->kids[1]);
        if (l->kind == TermKind::In && r->kind == TermKind::Ina &&
            type_eq(l->src, r->tgt->left))
          result = xid(src);
        else
          result = xcot(l, r);
        break;
      }
      case TermKind::GenCotuple: {
        TermPtr l = normalize_explicit(t->kids[0]);
        TermPtr r = normalize_explicit(t->kids[1]);
        if (l->kind == TermKind::Copi1 && r->kind == TermKind::Copi2 &&
            type_eq(l->src, r->tgt->left) && type_eq(r->src, l->tgt->right))
          result = xid(src);
        else
          result = xgcot(l, r);
        break;
      }
      default: result = t; break;
    }
  }
  if (is_zero(result->src) && result->kind != TermKind::EmptyMap)
    result = xempty(tgt);
  return result;
}

// ---------------------------------------------------------------------------
// the expansion of terms

// Catcher form of any decorated term: an explicit term X+E -> Y+E (the
// coproduct factory silently identifies 0+E with E).  Not normalized.
inline TermPtr catcher_form(const DecoratedSpec& s, const TermPtr& t) {
  if (!t->decorated())
    throw ExpandError("catcher_form applied to an explicit term");
  TypePtr E = ObjType::exc();
  auto lift_src = ObjType::coprod(t->src, E);
  switch (t->kind) {
    case TermKind::Gen:
      switch (*t->deco) {
        case Deco::pure:
          return xcot(xcomp(xin(t->tgt), xgen(t->name, t->src, t->tgt)),
                      xina(t->tgt));
        case Deco::ppg:
          // the explicit face X -> Y+E, propagating on E
          return xcot(xgen(t->name, t->src, ObjType::coprod(t->tgt, E)),
                      xina(t->tgt));
        case Deco::ctc:
          return xgen(t->name, lift_src, ObjType::coprod(t->tgt, E));
      }
      break;
    case TermKind::Id: return xid(lift_src);
    case TermKind::Comp:
      return xcomp(catcher_form(s, t->kids[0]), catcher_form(s, t->kids[1]));
    case TermKind::EmptyMap: return xina(t->tgt);
    case TermKind::Copi1:
      return xcot(xcomp(xin(t->tgt), xcopi1(t->src, t->tgt->right)),
                  xina(t->tgt));
    case TermKind::Copi2:
      return xcot(xcomp(xin(t->tgt), xcopi2(t->tgt->left, t->src)),
                  xina(t->tgt));
    case TermKind::Downcast:
      return xcot(xcomp(catcher_form(s, t->kids[0]), xin(t->src)),
                  xina(t->tgt));
    case TermKind::Cotuple: {
      const TermPtr& g = t->kids[0];
      const TermPtr& k = t->kids[1];
      TermPtr ck = catcher_form(s, k);
      if (is_zero(k->src))
        // case split on X+E itself
        return xcot(xcomp(catcher_form(s, g), xin(g->src)), ck);
      // semi-pure split of A+B: ordinary values case-split, exceptions
      // go to the catcher side
      TermPtr g1 = xcomp(catcher_form(s, g), xin(g->src));
      return xcot(xgcot(g1, xcomp(ck, xin(k->src))),
                  xcomp(ck, xina(k->src)));
    }
    case TermKind::TagCotuple: {
      // untag one index after the other; exhausted means impossible,
      // since the tags cover all of E
      if (t->kids.size() != s.excs.size())
        throw ExpandError("tag case split arity differs from the spec");
      TermPtr acc = xina(t->tgt);
      for (size_t m = s.excs.size(); m-- > 0;) {
        TermPtr member = t->kids[m];
        TermPtr m1 = xcomp(catcher_form(s, member), xin(member->src));
        acc = xcomp(xcot(m1, acc), catcher_form(s, s.untag(s.excs[m].index)));
      }
      return acc;
    }
    case TermKind::SumMap: return catcher_form(s, unfold_sum(t));
    default:
      throw ExpandError("explicit construct inside a decorated term");
  }
  throw ExpandError("unhandled decorated term");
}

// Plain form of a pure term (structure preserving).
inline TermPtr pure_form(const TermPtr& t) {
  if (!t->decorated() || *t->deco != Deco::pure)
    throw ExpandError("pure_form applied to a non-pure term");
  switch (t->kind) {
    case TermKind::Gen: return xgen(t->name, t->src, t->tgt);
    case TermKind::Id: return xid(t->src);
    case TermKind::Comp:
      return xcomp(pure_form(t->kids[0]), pure_form(t->kids[1]));
    case TermKind::EmptyMap: return xempty(t->tgt);
    case TermKind::Copi1: return xcopi1(t->src, t->tgt->right);
    case TermKind::Copi2: return xcopi2(t->tgt->left, t->src);
    default:
      throw ExpandError("pure terms contain no case splits");
  }
}

inline TermPtr propagator_form(const DecoratedSpec& s, const TermPtr& t) {
  return normalize_explicit(xcomp(catcher_form(s, t), xin(t->src)));
}

// Canonical representative per decoration: f0 for pure, f1 for
// propagators, the catcher form for catchers.  Normalized.
inline TermPtr expand_term(const DecoratedSpec& s, const TermPtr& t) {
  if (!t->decorated())
    throw ExpandError("expand_term applied to an explicit term");
  switch (*t->deco) {
    case Deco::pure: return normalize_explicit(pure_form(t));
    case Deco::ppg: return propagator_form(s, t);
    case Deco::ctc: return normalize_explicit(catcher_form(s, t));
  }
  throw ExpandError("unhandled decoration");
}

inline Equation expand_equation(const DecoratedSpec& s, const Equation& e) {
  if (e.strength == Strength::expl)
    throw ExpandError("expand_equation applied to an explicit equation");
  if (e.strength == Strength::weak)
    return {Strength::expl,
            normalize_explicit(xcomp(catcher_form(s, e.lhs), xin(e.lhs->src))),
            normalize_explicit(xcomp(catcher_form(s, e.rhs), xin(e.rhs->src)))};
  Deco d = deco_join(*e.lhs->deco, *e.rhs->deco);
  switch (d) {
    case Deco::pure:
      return {Strength::expl, normalize_explicit(pure_form(e.lhs)),
              normalize_explicit(pure_form(e.rhs))};
    case Deco::ppg:
      return {Strength::expl, propagator_form(s, e.lhs),
              propagator_form(s, e.rhs)};
    case Deco::ctc:
      return {Strength::expl, normalize_explicit(catcher_form(s, e.lhs)),
              normalize_explicit(catcher_form(s, e.rhs))};
  }
  throw ExpandError("unhandled decoration");
}

// Expansion of a whole specification: operations take their explicit
// faces, axioms expand equation-wise.
inline ExplicitSpec expand_spec(const DecoratedSpec& s) {
  ExplicitSpec x = direct_explicit_spec(s);
  x.axioms.clear();
  for (const auto& a : s.axioms)
    x.axioms.push_back({a.name, expand_equation(s, a.eq)});
  return x;
}

// ---------------------------------------------------------------------------
// syntactic entailment: rewriting with ground premise equations
//
// Premises are used as rewrite rules in both orientations, replacing
// whole terms, contiguous segments of composition spines, or matches
// inside case-split branches.  The search is a bounded breadth-first
// walk; everything stays normalized, so reaching the conclusion's right
// side syntactically discharges the obligation.

namespace detail {

inline void single_rewrites(const TermPtr& t, const TermPtr& from,
                            const TermPtr& to, std::vector<TermPtr>& out) {
  if (term_eq(t, from)) out.push_back(to);
  std::vector<TermPtr> spine = spine_of(t);
  std::vector<TermPtr> pat = spine_of(from);
  if (spine.size() > 1 && pat.size() <= spine.size()) {
    for (size_t i = 0; i + pat.size() <= spine.size(); ++i) {
      bool hit = !(pat.size() == spine.size() && i == 0);  // whole done above
      for (size_t j = 0; hit && j < pat.size(); ++j)
        hit = term_eq(spine[i + j], pat[j]);
      if (!hit) continue;
      std::vector<TermPtr> next(spine.begin(), spine.begin() + i);
      flatten_comp(to, next);
      next.insert(next.end(), spine.begin() + i + pat.size(), spine.end());
      out.push_back(rebuild_spine(next, t->src));
    }
  }
  // descend into case-split branches and spine atoms
  for (size_t a = 0; a < spine.size(); ++a) {
    const TermPtr& atom = spine[a];
    if (atom->kind != TermKind::ExplCotuple &&
        atom->kind != TermKind::GenCotuple)
      continue;
    for (int side = 0; side < 2; ++side) {
      std::vector<TermPtr> inner;
      single_rewrites(atom->kids[side], from, to, inner);
      for (const auto& repl : inner) {
        TermPtr rebuilt =
            atom->kind == TermKind::ExplCotuple
                ? xcot(side ? atom->kids[0] : repl, side ? repl : atom->kids[1])
                : xgcot(side ? atom->kids[0] : repl,
                        side ? repl : atom->kids[1]);
        std::vector<TermPtr> next(spine);
        next[a] = rebuilt;
        out.push_back(rebuild_spine(next, t->src));
      }
    }
  }
}

}  // namespace detail

inline bool syntactic_entails(const std::vector<Equation>& premises,
                              const Equation& concl, int depth = 4,
                              size_t frontier_cap = 600) {
  TermPtr goal = normalize_explicit(concl.rhs);
  std::vector<TermPtr> frontier{normalize_explicit(concl.lhs)};
  std::vector<std::string> seen{print_term(frontier[0])};
  auto known = [&](const TermPtr& t) {
    std::string k = print_term(t);
    for (const auto& s2 : seen)
      if (s2 == k) return true;
    seen.push_back(k);
    return false;
  };
  if (term_eq(frontier[0], goal)) return true;
  for (int d = 0; d < depth; ++d) {
    std::vector<TermPtr> next;
    for (const auto& cur : frontier) {
      for (const auto& p : premises) {
        for (int ori = 0; ori < 2; ++ori) {
          TermPtr from = ori ? p.rhs : p.lhs;
          TermPtr to = ori ? p.lhs : p.rhs;
          std::vector<TermPtr> cands;
          detail::single_rewrites(cur, from, to, cands);
          for (const auto& c : cands) {
            TermPtr n = normalize_explicit(c);
            if (term_eq(n, goal)) return true;
            if (!known(n) && next.size() < frontier_cap) next.push_back(n);
          }
        }
      }
    }
    if (next.empty()) return false;
    frontier = std::move(next);
  }
  return false;
}

}  // namespace dexc
