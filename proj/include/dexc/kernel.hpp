#pragma once
// The proof kernel.  A derivation is a tree of named inference steps; each
// step is checked in isolation against its rule, so the only trusted code
// is the per-rule checker below plus the term factories.
//
// Judgments come in two forms: a declaration `t : X -> Y [d]` claims that t
// is a term whose decoration is at most d, and an equation relates two
// parallel terms weakly (~) or strongly (==).  Rules that depend on
// decorations ask for premises at an exact claim; the conversion rules
// (pure terms are propagators, propagators are catchers) make weakening a
// claim an explicit proof step.  Composition premises are taken inner
// first, matching the order in which the composite is written right to
// left.

#include "dexc/spec.hpp"

namespace dexc {

struct TermDecl {
  TermPtr term;
  Deco claim;
};

struct Judgment {
  enum class K { decl, eq };
  K k = K::decl;
  TermDecl decl;  // K::decl
  Equation eq;    // K::eq, weak or strong

  static Judgment of(TermPtr t, Deco claim) {
    Judgment j;
    j.k = K::decl;
    j.decl = {std::move(t), claim};
    return j;
  }
  static Judgment of(Strength s, TermPtr l, TermPtr r) {
    Judgment j;
    j.k = K::eq;
    j.eq = {s, std::move(l), std::move(r)};
    return j;
  }
};

inline std::string print_judgment(const Judgment& j) {
  if (j.k == Judgment::K::decl)
    return print_term(j.decl.term) + " : " + print_type(j.decl.term->src) +
           " -> " + print_type(j.decl.term->tgt) + " [" +
           print_deco(j.decl.claim) + "]";
  return print_equation(j.eq);
}

inline bool judgment_eq(const Judgment& a, const Judgment& b) {
  if (a.k != b.k) return false;
  if (a.k == Judgment::K::decl)
    return term_eq(a.decl.term, b.decl.term) && a.decl.claim == b.decl.claim;
  return eq_eq(a.eq, b.eq);
}

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  std::string rule;  // rule token, or "hyp" / "axiom <name>" / "def sum"
  Judgment concl;
  std::vector<DerivPtr> premises;
};

inline DerivPtr step(std::string rule, Judgment concl,
                     std::vector<DerivPtr> premises = {}) {
  auto d = std::make_shared<Derivation>();
  d->rule = std::move(rule);
  d->concl = std::move(concl);
  d->premises = std::move(premises);
  return d;
}

// ---------------------------------------------------------------------------
// the per-rule checker

namespace detail {

struct RuleCheck {
  const DecoratedSpec& s;
  const std::vector<Judgment>& prem;
  const Judgment& concl;
  std::optional<std::string> err;

  bool fail(const std::string& m) {
    if (!err) err = m;
    return false;
  }
  bool need(size_t n) {
    if (prem.size() != n)
      return fail("expected " + std::to_string(n) + " premises, got " +
                  std::to_string(prem.size()));
    return true;
  }
  // premise accessors; on mismatch they record an error and return null
  const TermDecl* decl(size_t i, std::optional<Deco> claim = std::nullopt) {
    if (prem[i].k != Judgment::K::decl) {
      fail("premise " + std::to_string(i + 1) + " must be a declaration");
      return nullptr;
    }
    const TermDecl& d = prem[i].decl;
    if (claim && d.claim != *claim) {
      fail("premise " + std::to_string(i + 1) + " must be claimed [" +
           print_deco(*claim) + "], got [" + print_deco(d.claim) + "]");
      return nullptr;
    }
    return &d;
  }
  const Equation* eq(size_t i, Strength st) {
    if (prem[i].k != Judgment::K::eq || prem[i].eq.strength != st) {
      fail("premise " + std::to_string(i + 1) + " must be a " +
           (st == Strength::weak ? "weak" : "strong") + " equation");
      return nullptr;
    }
    return &prem[i].eq;
  }
  // conclusion accessors
  const TermDecl* cdecl(Deco claim) {
    if (concl.k != Judgment::K::decl) {
      fail("conclusion must be a declaration");
      return nullptr;
    }
    if (concl.decl.claim != claim) {
      fail("conclusion must be claimed [" + print_deco(claim) + "]");
      return nullptr;
    }
    return &concl.decl;
  }
  const Equation* ceq(Strength st) {
    if (concl.k != Judgment::K::eq || concl.eq.strength != st) {
      fail(std::string("conclusion must be a ") +
           (st == Strength::weak ? "weak" : "strong") + " equation");
      return nullptr;
    }
    return &concl.eq;
  }
  bool same(const TermPtr& a, const TermPtr& b, const char* what) {
    if (!term_eq(a, b))
      return fail(std::string(what) + ": expected " + print_term(a) +
                  ", got " + print_term(b));
    return true;
  }
};

}  // namespace detail

// Checks one inference step.  Returns std::nullopt on success, otherwise a
// description of the violation.
inline std::optional<std::string> check_rule(const DecoratedSpec& s,
                                             const std::string& rule,
                                             const std::vector<Judgment>& prem,
                                             const Judgment& concl) {
  detail::RuleCheck c{s, prem, concl, std::nullopt};
  auto guarded = [&](auto&& body) -> std::optional<std::string> {
    try {
      body();
    } catch (const TypeError& e) {
      return std::string(e.what());
    } catch (const SpecError& e) {
      return std::string(e.what());
    }
    return c.err;
  };

  // ---- leaves ---------------------------------------------------------
  if (rule == "hyp")
    return guarded([&] {
      if (!c.need(0)) return;
      if (concl.k != Judgment::K::decl) {
        c.fail("hypothesis must be a declaration");
        return;
      }
      const TermPtr& t = concl.decl.term;
      if (t->kind != TermKind::Gen) {
        c.fail("hypothesis must be a declared operation");
        return;
      }
      TermPtr d = s.find_gen(t->name);
      if (!d) {
        c.fail("operation " + t->name + " is not declared");
        return;
      }
      if (!term_eq(d, t)) {
        c.fail("operation " + t->name + " is used at a different arity");
        return;
      }
      if (concl.decl.claim != *t->deco)
        c.fail("hypothesis claim must equal the declared decoration [" +
               print_deco(*t->deco) + "]");
    });
  if (rule.rfind("axiom ", 0) == 0)
    return guarded([&] {
      if (!c.need(0)) return;
      std::string name = rule.substr(6);
      const NamedEq* ax = s.find_axiom(name);
      if (!ax) {
        c.fail("no axiom named " + name);
        return;
      }
      if (concl.k != Judgment::K::eq || !eq_eq(concl.eq, ax->eq))
        c.fail("conclusion differs from axiom " + name + ": " +
               print_equation(ax->eq));
    });
  if (rule == "def sum")
    return guarded([&] {
      if (!c.need(0)) return;
      if (concl.k == Judgment::K::decl) {
        const TermPtr& t = concl.decl.term;
        if (t->kind != TermKind::SumMap) {
          c.fail("declaration leaves are for sum maps only");
          return;
        }
        reinfer(t, s.param_types());  // throws if ill-formed
        if (concl.decl.claim != *t->deco)
          c.fail("sum map claim must equal its decoration [" +
                 print_deco(*t->deco) + "]");
        return;
      }
      if (!c.ceq(Strength::strong)) return;
      if (concl.eq.lhs->kind != TermKind::SumMap) {
        c.fail("left side of a sum unfolding must be a sum map");
        return;
      }
      c.same(unfold_sum(concl.eq.lhs), concl.eq.rhs, "sum unfolding");
    });

  // ---- family (a): categorical structure, strong equality -------------
  if (rule == "a.comp")
    return guarded([&] {
      if (!c.need(2)) return;
      auto f = c.decl(0);  // inner, any claim
      auto g = c.decl(1);  // outer, any claim
      if (!f || !g || !c.cdecl(Deco::ctc)) return;
      c.same(comp(g->term, f->term), concl.decl.term, "composite");
    });
  if (rule == "a.id")
    return guarded([&] {
      if (!c.need(0) || !c.cdecl(Deco::ctc)) return;
      c.same(id(concl.decl.term->src), concl.decl.term, "identity");
    });
  if (rule == "a.assoc")
    return guarded([&] {
      if (!c.need(3)) return;
      auto f = c.decl(0);
      auto g = c.decl(1);
      auto h = c.decl(2);
      if (!f || !g || !h || !c.ceq(Strength::strong)) return;
      c.same(comp(h->term, comp(g->term, f->term)), concl.eq.lhs,
             "left side");
      c.same(comp(comp(h->term, g->term), f->term), concl.eq.rhs,
             "right side");
    });
  if (rule == "a.unitr")
    return guarded([&] {
      if (!c.need(1)) return;
      auto f = c.decl(0);
      if (!f || !c.ceq(Strength::strong)) return;
      c.same(comp(f->term, id(f->term->src)), concl.eq.lhs, "left side");
      c.same(f->term, concl.eq.rhs, "right side");
    });
  if (rule == "a.unitl")
    return guarded([&] {
      if (!c.need(1)) return;
      auto f = c.decl(0);
      if (!f || !c.ceq(Strength::strong)) return;
      c.same(comp(id(f->term->tgt), f->term), concl.eq.lhs, "left side");
      c.same(f->term, concl.eq.rhs, "right side");
    });
  if (rule == "a.refl")
    return guarded([&] {
      if (!c.need(1)) return;
      auto f = c.decl(0);
      if (!f || !c.ceq(Strength::strong)) return;
      c.same(f->term, concl.eq.lhs, "left side");
      c.same(f->term, concl.eq.rhs, "right side");
    });
  if (rule == "a.sym")
    return guarded([&] {
      if (!c.need(1)) return;
      auto e = c.eq(0, Strength::strong);
      if (!e || !c.ceq(Strength::strong)) return;
      c.same(e->rhs, concl.eq.lhs, "left side");
      c.same(e->lhs, concl.eq.rhs, "right side");
    });
  if (rule == "a.trans")
    return guarded([&] {
      if (!c.need(2)) return;
      auto e1 = c.eq(0, Strength::strong);
      auto e2 = c.eq(1, Strength::strong);
      if (!e1 || !e2 || !c.ceq(Strength::strong)) return;
      if (!c.same(e1->rhs, e2->lhs, "middle terms")) return;
      c.same(e1->lhs, concl.eq.lhs, "left side");
      c.same(e2->rhs, concl.eq.rhs, "right side");
    });
  if (rule == "a.subst")
    return guarded([&] {
      if (!c.need(2)) return;
      auto f = c.decl(0);
      auto e = c.eq(1, Strength::strong);
      if (!f || !e || !c.ceq(Strength::strong)) return;
      c.same(comp(e->lhs, f->term), concl.eq.lhs, "left side");
      c.same(comp(e->rhs, f->term), concl.eq.rhs, "right side");
    });
  if (rule == "a.repl")
    return guarded([&] {
      if (!c.need(2)) return;
      auto e = c.eq(0, Strength::strong);
      auto g = c.decl(1);
      if (!e || !g || !c.ceq(Strength::strong)) return;
      c.same(comp(g->term, e->lhs), concl.eq.lhs, "left side");
      c.same(comp(g->term, e->rhs), concl.eq.rhs, "right side");
    });

  // ---- family (b): the decoration hierarchy and weak equality ---------
  if (rule == "b.toppg")
    return guarded([&] {
      if (!c.need(1)) return;
      auto f = c.decl(0, Deco::pure);
      if (!f || !c.cdecl(Deco::ppg)) return;
      c.same(f->term, concl.decl.term, "term");
    });
  if (rule == "b.toctc")
    return guarded([&] {
      if (!c.need(1)) return;
      auto f = c.decl(0, Deco::ppg);
      if (!f || !c.cdecl(Deco::ctc)) return;
      c.same(f->term, concl.decl.term, "term");
    });
  if (rule == "b.idpure")
    return guarded([&] {
      if (!c.need(0) || !c.cdecl(Deco::pure)) return;
      c.same(id(concl.decl.term->src), concl.decl.term, "identity");
    });
  if (rule == "b.comppure" || rule == "b.compppg")
    return guarded([&] {
      Deco d = rule == "b.comppure" ? Deco::pure : Deco::ppg;
      if (!c.need(2)) return;
      auto f = c.decl(0, d);  // inner
      auto g = c.decl(1, d);  // outer
      if (!f || !g || !c.cdecl(d)) return;
      c.same(comp(g->term, f->term), concl.decl.term, "composite");
    });
  if (rule == "b.w2s")
    return guarded([&] {
      if (!c.need(3)) return;
      auto e = c.eq(0, Strength::weak);
      auto f = c.decl(1, Deco::ppg);
      auto g = c.decl(2, Deco::ppg);
      if (!e || !f || !g || !c.ceq(Strength::strong)) return;
      if (!c.same(e->lhs, f->term, "left declaration")) return;
      if (!c.same(e->rhs, g->term, "right declaration")) return;
      c.same(e->lhs, concl.eq.lhs, "left side");
      c.same(e->rhs, concl.eq.rhs, "right side");
    });
  if (rule == "b.s2w")
    return guarded([&] {
      if (!c.need(1)) return;
      auto e = c.eq(0, Strength::strong);
      if (!e || !c.ceq(Strength::weak)) return;
      c.same(e->lhs, concl.eq.lhs, "left side");
      c.same(e->rhs, concl.eq.rhs, "right side");
    });
  if (rule == "b.wrefl")
    return guarded([&] {
      if (!c.need(1)) return;
      auto f = c.decl(0);
      if (!f || !c.ceq(Strength::weak)) return;
      c.same(f->term, concl.eq.lhs, "left side");
      c.same(f->term, concl.eq.rhs, "right side");
    });
  if (rule == "b.wsym")
    return guarded([&] {
      if (!c.need(1)) return;
      auto e = c.eq(0, Strength::weak);
      if (!e || !c.ceq(Strength::weak)) return;
      c.same(e->rhs, concl.eq.lhs, "left side");
      c.same(e->lhs, concl.eq.rhs, "right side");
    });
  if (rule == "b.wtrans")
    return guarded([&] {
      if (!c.need(2)) return;
      auto e1 = c.eq(0, Strength::weak);
      auto e2 = c.eq(1, Strength::weak);
      if (!e1 || !e2 || !c.ceq(Strength::weak)) return;
      if (!c.same(e1->rhs, e2->lhs, "middle terms")) return;
      c.same(e1->lhs, concl.eq.lhs, "left side");
      c.same(e2->rhs, concl.eq.rhs, "right side");
    });
  if (rule == "b.wsubst")
    return guarded([&] {
      // weak equations survive precomposition with pure terms only: a
      // non-pure f could raise, and the two sides may differ on exceptions
      if (!c.need(2)) return;
      auto f = c.decl(0, Deco::pure);
      auto e = c.eq(1, Strength::weak);
      if (!f || !e || !c.ceq(Strength::weak)) return;
      c.same(comp(e->lhs, f->term), concl.eq.lhs, "left side");
      c.same(comp(e->rhs, f->term), concl.eq.rhs, "right side");
    });
  if (rule == "b.wrepl")
    return guarded([&] {
      if (!c.need(2)) return;
      auto e = c.eq(0, Strength::weak);
      auto g = c.decl(1);  // any claim: postcomposition is harmless
      if (!e || !g || !c.ceq(Strength::weak)) return;
      c.same(comp(g->term, e->lhs), concl.eq.lhs, "left side");
      c.same(comp(g->term, e->rhs), concl.eq.rhs, "right side");
    });

  // ---- family (c): downcasting a catcher to a propagator --------------
  if (rule == "c.form")
    return guarded([&] {
      if (!c.need(1)) return;
      auto k = c.decl(0, Deco::ctc);
      if (!k || !c.cdecl(Deco::ppg)) return;
      c.same(downcast(k->term), concl.decl.term, "downcast");
    });
  if (rule == "c.weak")
    return guarded([&] {
      if (!c.need(1)) return;
      auto k = c.decl(0, Deco::ctc);
      if (!k || !c.ceq(Strength::weak)) return;
      c.same(downcast(k->term), concl.eq.lhs, "left side");
      c.same(k->term, concl.eq.rhs, "right side");
    });

  // ---- family (d): the empty type is initial --------------------------
  if (rule == "d.form" || rule == "d.pure")
    return guarded([&] {
      if (!c.need(0)) return;
      if (!c.cdecl(rule == "d.form" ? Deco::ctc : Deco::pure)) return;
      if (concl.decl.term->kind != TermKind::EmptyMap)
        c.fail("conclusion must declare an empty map");
    });
  if (rule == "d.weak")
    return guarded([&] {
      if (!c.need(1)) return;
      auto f = c.decl(0);  // any claim
      if (!f || !c.ceq(Strength::weak)) return;
      if (!is_zero(f->term->src)) {
        c.fail("source must be the empty type");
        return;
      }
      c.same(f->term, concl.eq.lhs, "left side");
      c.same(empty_map(f->term->tgt), concl.eq.rhs, "right side");
    });

  // ---- family (e): case splitting over X ~ X+0 ------------------------
  auto e_shape = [&](const TermDecl*& g, const TermDecl*& k) {
    g = c.decl(0, Deco::ppg);
    k = c.decl(1, Deco::ctc);
    if (!g || !k) return false;
    if (!is_zero(k->term->src))
      return c.fail("recovery branch must have source 0");
    if (!type_eq(g->term->tgt, k->term->tgt))
      return c.fail("branches must target the same type");
    return true;
  };
  if (rule == "e.form")
    return guarded([&] {
      if (!c.need(2)) return;
      const TermDecl *g, *k;
      if (!e_shape(g, k) || !c.cdecl(Deco::ctc)) return;
      c.same(cotuple(g->term, k->term), concl.decl.term, "case split");
    });
  if (rule == "e.weak")
    return guarded([&] {
      if (!c.need(2)) return;
      const TermDecl *g, *k;
      if (!e_shape(g, k) || !c.ceq(Strength::weak)) return;
      c.same(cotuple(g->term, k->term), concl.eq.lhs, "left side");
      c.same(g->term, concl.eq.rhs, "right side");
    });
  if (rule == "e.strong")
    return guarded([&] {
      if (!c.need(2)) return;
      const TermDecl *g, *k;
      if (!e_shape(g, k) || !c.ceq(Strength::strong)) return;
      c.same(comp(cotuple(g->term, k->term), empty_map(g->term->src)),
             concl.eq.lhs, "left side");
      c.same(k->term, concl.eq.rhs, "right side");
    });
  if (rule == "e.unique")
    return guarded([&] {
      if (!c.need(5)) return;
      const TermDecl *g, *k;
      if (!e_shape(g, k)) return;
      auto f = c.decl(2, Deco::ctc);
      auto ew = c.eq(3, Strength::weak);
      auto es = c.eq(4, Strength::strong);
      if (!f || !ew || !es || !c.ceq(Strength::strong)) return;
      if (!c.same(f->term, ew->lhs, "weak premise left")) return;
      if (!c.same(g->term, ew->rhs, "weak premise right")) return;
      if (!c.same(comp(f->term, empty_map(f->term->src)), es->lhs,
                  "strong premise left"))
        return;
      if (!c.same(k->term, es->rhs, "strong premise right")) return;
      c.same(f->term, concl.eq.lhs, "left side");
      c.same(cotuple(g->term, k->term), concl.eq.rhs, "right side");
    });

  // ---- family (f): case splitting over the tag family -----------------
  auto members = [&](size_t n) -> std::optional<std::vector<TermPtr>> {
    std::vector<TermPtr> ms;
    for (size_t i = 0; i < n; ++i) {
      auto m = c.decl(i, Deco::ppg);
      if (!m) return std::nullopt;
      ms.push_back(m->term);
    }
    return ms;
  };
  if (rule == "f.form")
    return guarded([&] {
      size_t n = s.excs.size();
      if (!c.need(n)) return;
      auto ms = members(n);
      if (!ms || !c.cdecl(Deco::ctc)) return;
      c.same(tag_cotuple(*ms, s.param_types()), concl.decl.term,
             "tag case split");
    });
  if (rule == "f.weak")
    return guarded([&] {
      size_t n = s.excs.size();
      if (!c.need(n)) return;
      auto ms = members(n);
      if (!ms || !c.ceq(Strength::weak)) return;
      TermPtr split = tag_cotuple(*ms, s.param_types());
      for (size_t i = 0; i < n; ++i) {
        if (term_eq(comp(split, s.tag(s.excs[i].index)), concl.eq.lhs) &&
            term_eq((*ms)[i], concl.eq.rhs))
          return;
      }
      c.fail("conclusion must recover one member through its tag");
    });
  if (rule == "f.unique")
    return guarded([&] {
      size_t n = s.excs.size();
      if (!c.need(2 * n + 1)) return;
      auto ms = members(n);
      if (!ms) return;
      auto f = c.decl(n, Deco::ctc);
      if (!f || !c.ceq(Strength::strong)) return;
      for (size_t i = 0; i < n; ++i) {
        auto e = c.eq(n + 1 + i, Strength::weak);
        if (!e) return;
        if (!c.same(comp(f->term, s.tag(s.excs[i].index)), e->lhs,
                    "precomposed tag"))
          return;
        if (!c.same((*ms)[i], e->rhs, "member")) return;
      }
      c.same(f->term, concl.eq.lhs, "left side");
      c.same(tag_cotuple(*ms, s.param_types()), concl.eq.rhs, "right side");
    });

  // ---- semi-pure case splitting over A+B -------------------------------
  if (rule == "sp.copi1" || rule == "sp.copi2")
    return guarded([&] {
      if (!c.need(0) || !c.cdecl(Deco::pure)) return;
      TermKind want =
          rule == "sp.copi1" ? TermKind::Copi1 : TermKind::Copi2;
      if (concl.decl.term->kind != want)
        c.fail("conclusion must declare a coprojection");
    });
  auto sp_shape = [&](const TermDecl*& f, const TermDecl*& k) {
    f = c.decl(0, Deco::ppg);
    k = c.decl(1, Deco::ctc);
    if (!f || !k) return false;
    if (is_zero(f->term->src) || is_zero(k->term->src))
      return c.fail("case split branches must have nonempty sources");
    if (!type_eq(f->term->tgt, k->term->tgt))
      return c.fail("branches must target the same type");
    return true;
  };
  if (rule == "sp.form")
    return guarded([&] {
      if (!c.need(2)) return;
      const TermDecl *f, *k;
      if (!sp_shape(f, k) || !c.cdecl(Deco::ctc)) return;
      c.same(cotuple(f->term, k->term), concl.decl.term, "case split");
    });
  if (rule == "sp.weak" || rule == "sp.strong")
    return guarded([&] {
      if (!c.need(2)) return;
      const TermDecl *f, *k;
      bool strong = rule == "sp.strong";
      if (!sp_shape(f, k) || !c.ceq(strong ? Strength::strong : Strength::weak))
        return;
      const TypePtr &a = f->term->src, &b = k->term->src;
      TermPtr inj = strong ? copi2(a, b) : copi1(a, b);
      c.same(comp(cotuple(f->term, k->term), inj), concl.eq.lhs, "left side");
      c.same(strong ? k->term : f->term, concl.eq.rhs, "right side");
    });
  if (rule == "sp.unique")
    return guarded([&] {
      if (!c.need(5)) return;
      const TermDecl *f, *k;
      if (!sp_shape(f, k)) return;
      auto h = c.decl(2, Deco::ctc);
      auto ew = c.eq(3, Strength::weak);
      auto es = c.eq(4, Strength::strong);
      if (!h || !ew || !es || !c.ceq(Strength::strong)) return;
      const TypePtr &a = f->term->src, &b = k->term->src;
      if (!c.same(comp(h->term, copi1(a, b)), ew->lhs, "weak premise left"))
        return;
      if (!c.same(f->term, ew->rhs, "weak premise right")) return;
      if (!c.same(comp(h->term, copi2(a, b)), es->lhs, "strong premise left"))
        return;
      if (!c.same(k->term, es->rhs, "strong premise right")) return;
      c.same(h->term, concl.eq.lhs, "left side");
      c.same(cotuple(f->term, k->term), concl.eq.rhs, "right side");
    });

  return "unknown rule " + rule;
}

// ---------------------------------------------------------------------------
// checking whole derivations

struct CheckResult {
  bool ok = true;
  std::string path;    // premise indices from the root, e.g. "2.1"
  std::string rule;    // rule at the offending node
  std::string reason;
};

namespace detail {
inline bool check_node(const DecoratedSpec& s, const DerivPtr& d,
                       const std::string& path, CheckResult& out) {
  for (size_t i = 0; i < d->premises.size(); ++i) {
    std::string sub = path.empty() ? std::to_string(i + 1)
                                   : path + "." + std::to_string(i + 1);
    if (!check_node(s, d->premises[i], sub, out)) return false;
  }
  std::vector<Judgment> prem;
  for (const auto& p : d->premises) prem.push_back(p->concl);
  // every declaration must respect its claim
  if (d->concl.k == Judgment::K::decl) {
    const TermPtr& t = d->concl.decl.term;
    if (!t->decorated()) {
      out = {false, path, d->rule, "declarations are about decorated terms"};
      return false;
    }
    if (!deco_le(*t->deco, d->concl.decl.claim)) {
      out = {false, path, d->rule,
             "declared claim is below the decoration of " + print_term(t)};
      return false;
    }
  }
  if (auto err = check_rule(s, d->rule, prem, d->concl)) {
    out = {false, path, d->rule, *err};
    return false;
  }
  return true;
}
}  // namespace detail

inline CheckResult check_derivation(const DecoratedSpec& s,
                                    const DerivPtr& d) {
  CheckResult r;
  detail::check_node(s, d, "", r);
  return r;
}

// ---------------------------------------------------------------------------
// forward application: construct the conclusion a rule yields
//
// Most rules determine their conclusion from the premises; the remaining
// ones take a hint (a type for the premise-free formations, an index for
// recovering one member of a tag case split).

struct ApplyHints {
  TypePtr at;                 // a.id, b.idpure, d.form, d.pure
  TypePtr at2;                // sp.copi1 / sp.copi2 (the other summand)
  std::optional<int> index;   // f.weak
};

inline Judgment apply_rule(const DecoratedSpec& s, const std::string& rule,
                           const std::vector<Judgment>& prem,
                           const ApplyHints& h = {}) {
  auto decl_term = [&](size_t i) { return prem.at(i).decl.term; };
  Judgment concl;
  if (rule == "a.comp")
    concl = Judgment::of(comp(decl_term(1), decl_term(0)), Deco::ctc);
  else if (rule == "a.id")
    concl = Judgment::of(id(h.at), Deco::ctc);
  else if (rule == "a.assoc")
    concl = Judgment::of(
        Strength::strong,
        comp(decl_term(2), comp(decl_term(1), decl_term(0))),
        comp(comp(decl_term(2), decl_term(1)), decl_term(0)));
  else if (rule == "a.unitr")
    concl = Judgment::of(Strength::strong,
                         comp(decl_term(0), id(decl_term(0)->src)),
                         decl_term(0));
  else if (rule == "a.unitl")
    concl = Judgment::of(Strength::strong,
                         comp(id(decl_term(0)->tgt), decl_term(0)),
                         decl_term(0));
  else if (rule == "a.refl")
    concl = Judgment::of(Strength::strong, decl_term(0), decl_term(0));
  else if (rule == "a.sym")
    concl = Judgment::of(Strength::strong, prem.at(0).eq.rhs,
                         prem.at(0).eq.lhs);
  else if (rule == "a.trans")
    concl = Judgment::of(Strength::strong, prem.at(0).eq.lhs,
                         prem.at(1).eq.rhs);
  else if (rule == "a.subst")
    concl = Judgment::of(Strength::strong,
                         comp(prem.at(1).eq.lhs, decl_term(0)),
                         comp(prem.at(1).eq.rhs, decl_term(0)));
  else if (rule == "a.repl")
    concl = Judgment::of(Strength::strong,
                         comp(decl_term(1), prem.at(0).eq.lhs),
                         comp(decl_term(1), prem.at(0).eq.rhs));
  else if (rule == "b.toppg")
    concl = Judgment::of(decl_term(0), Deco::ppg);
  else if (rule == "b.toctc")
    concl = Judgment::of(decl_term(0), Deco::ctc);
  else if (rule == "b.idpure")
    concl = Judgment::of(id(h.at), Deco::pure);
  else if (rule == "b.comppure")
    concl = Judgment::of(comp(decl_term(1), decl_term(0)), Deco::pure);
  else if (rule == "b.compppg")
    concl = Judgment::of(comp(decl_term(1), decl_term(0)), Deco::ppg);
  else if (rule == "b.w2s")
    concl = Judgment::of(Strength::strong, prem.at(0).eq.lhs,
                         prem.at(0).eq.rhs);
  else if (rule == "b.s2w")
    concl = Judgment::of(Strength::weak, prem.at(0).eq.lhs,
                         prem.at(0).eq.rhs);
  else if (rule == "b.wrefl")
    concl = Judgment::of(Strength::weak, decl_term(0), decl_term(0));
  else if (rule == "b.wsym")
    concl = Judgment::of(Strength::weak, prem.at(0).eq.rhs,
                         prem.at(0).eq.lhs);
  else if (rule == "b.wtrans")
    concl = Judgment::of(Strength::weak, prem.at(0).eq.lhs,
                         prem.at(1).eq.rhs);
  else if (rule == "b.wsubst")
    concl = Judgment::of(Strength::weak,
                         comp(prem.at(1).eq.lhs, decl_term(0)),
                         comp(prem.at(1).eq.rhs, decl_term(0)));
  else if (rule == "b.wrepl")
    concl = Judgment::of(Strength::weak,
                         comp(decl_term(1), prem.at(0).eq.lhs),
                         comp(decl_term(1), prem.at(0).eq.rhs));
  else if (rule == "c.form")
    concl = Judgment::of(downcast(decl_term(0)), Deco::ppg);
  else if (rule == "c.weak")
    concl = Judgment::of(Strength::weak, downcast(decl_term(0)),
                         decl_term(0));
  else if (rule == "d.form")
    concl = Judgment::of(empty_map(h.at), Deco::ctc);
  else if (rule == "d.pure")
    concl = Judgment::of(empty_map(h.at), Deco::pure);
  else if (rule == "d.weak")
    concl = Judgment::of(Strength::weak, decl_term(0),
                         empty_map(decl_term(0)->tgt));
  else if (rule == "e.form" || rule == "sp.form")
    concl = Judgment::of(cotuple(decl_term(0), decl_term(1)), Deco::ctc);
  else if (rule == "e.weak")
    concl = Judgment::of(Strength::weak,
                         cotuple(decl_term(0), decl_term(1)), decl_term(0));
  else if (rule == "e.strong")
    concl = Judgment::of(
        Strength::strong,
        comp(cotuple(decl_term(0), decl_term(1)), empty_map(decl_term(0)->src)),
        decl_term(1));
  else if (rule == "e.unique")
    concl = Judgment::of(Strength::strong, decl_term(2),
                         cotuple(decl_term(0), decl_term(1)));
  else if (rule == "f.form") {
    std::vector<TermPtr> ms;
    for (size_t i = 0; i < s.excs.size(); ++i) ms.push_back(decl_term(i));
    concl = Judgment::of(tag_cotuple(ms, s.param_types()), Deco::ctc);
  } else if (rule == "f.weak") {
    std::vector<TermPtr> ms;
    for (size_t i = 0; i < s.excs.size(); ++i) ms.push_back(decl_term(i));
    size_t pos = 0;
    for (; pos < s.excs.size(); ++pos)
      if (h.index && s.excs[pos].index == *h.index) break;
    if (pos == s.excs.size())
      throw SpecError("f.weak needs a declared index hint");
    concl = Judgment::of(
        Strength::weak,
        comp(tag_cotuple(ms, s.param_types()), s.tag(*h.index)), ms[pos]);
  } else if (rule == "f.unique") {
    std::vector<TermPtr> ms;
    for (size_t i = 0; i < s.excs.size(); ++i) ms.push_back(decl_term(i));
    concl = Judgment::of(Strength::strong, decl_term(s.excs.size()),
                         tag_cotuple(ms, s.param_types()));
  } else if (rule == "sp.copi1")
    concl = Judgment::of(copi1(h.at, h.at2), Deco::pure);
  else if (rule == "sp.copi2")
    concl = Judgment::of(copi2(h.at, h.at2), Deco::pure);
  else if (rule == "sp.weak")
    concl = Judgment::of(
        Strength::weak,
        comp(cotuple(decl_term(0), decl_term(1)),
             copi1(decl_term(0)->src, decl_term(1)->src)),
        decl_term(0));
  else if (rule == "sp.strong")
    concl = Judgment::of(
        Strength::strong,
        comp(cotuple(decl_term(0), decl_term(1)),
             copi2(decl_term(0)->src, decl_term(1)->src)),
        decl_term(1));
  else if (rule == "sp.unique")
    concl = Judgment::of(Strength::strong, decl_term(2),
                         cotuple(decl_term(0), decl_term(1)));
  else
    throw SpecError("apply_rule: unknown rule " + rule);
  if (auto err = check_rule(s, rule, prem, concl))
    throw SpecError("apply_rule " + rule + ": " + *err);
  return concl;
}

inline const std::vector<std::string>& all_rule_tokens() {
  static const std::vector<std::string> rules{
      "a.comp",     "a.id",     "a.assoc",  "a.unitr",   "a.unitl",
      "a.refl",     "a.sym",    "a.trans",  "a.subst",   "a.repl",
      "b.toppg",    "b.toctc",  "b.idpure", "b.comppure", "b.compppg",
      "b.w2s",      "b.s2w",    "b.wrefl",  "b.wsym",    "b.wtrans",
      "b.wsubst",   "b.wrepl",  "c.form",   "c.weak",    "d.form",
      "d.pure",     "d.weak",   "e.form",   "e.weak",    "e.strong",
      "e.unique",   "f.form",   "f.weak",   "f.unique",  "sp.copi1",
      "sp.copi2",   "sp.form",  "sp.weak",  "sp.strong", "sp.unique"};
  return rules;
}

}  // namespace dexc
