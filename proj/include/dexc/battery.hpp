#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dexc/handler.hpp"
#include "dexc/model.hpp"

namespace dexc {

// Deterministic batteries.  Everything below is either enumerated
// exhaustively in a fixed order or drawn from a seeded generator, so two
// runs of the same build quantify over identical collections of models,
// terms and specifications.

constexpr uint32_t battery_seed = 0xd3c05eedu;

inline std::mt19937 seeded(uint32_t salt) {
  return std::mt19937(battery_seed ^ (salt * 0x9e3779b9u));
}

namespace detail {
inline size_t draw(std::mt19937& rng, size_t n) {
  return n == 0 ? 0 : static_cast<size_t>(rng() % n);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// specifications

// A signature holding nothing but its tags and untags; models of it are
// choices of parameter carriers and nothing else.  This is the stage on
// which the constitutive equations of the tag family are checked.
inline DecoratedSpec tags_only_spec(int n_excs) {
  std::vector<std::string> bases;
  std::vector<ExcDecl> excs;
  for (int i = 1; i <= n_excs; ++i) {
    bases.push_back("P" + std::to_string(i));
    excs.push_back({i, ObjType::base(bases.back())});
  }
  return make_deco_spec("tags" + std::to_string(n_excs), std::move(bases), {},
                        std::move(excs));
}

// The two handler stages for differential testing, both with two
// exception indices.  The first sizes the block's carrier and keeps unit
// parameters; the second sizes the parameter carriers so recovery has to
// pick the right value back out.
inline DecoratedSpec handler_spec_unit() {
  TypePtr X = ObjType::base("X"), Y = ObjType::base("Y"), U = ObjType::unit();
  return make_deco_spec("handler_unit", {"X", "Y"},
                        {{"f", X, Y, Deco::ppg},
                         {"g1", U, Y, Deco::ppg},
                         {"g2", U, Y, Deco::ppg}},
                        {{1, U}, {2, U}});
}

inline DecoratedSpec handler_spec_params() {
  TypePtr Y = ObjType::base("Y"), P1 = ObjType::base("P1"),
          P2 = ObjType::base("P2"), U = ObjType::unit();
  return make_deco_spec("handler_params", {"Y", "P1", "P2"},
                        {{"f", U, Y, Deco::ppg},
                         {"g1", P1, Y, Deco::ppg},
                         {"g2", P2, Y, Deco::ppg}},
                        {{1, P1}, {2, P2}});
}

// A generated specification of pure operations (constants and unary maps
// over the bases) with up to four exception indices and only the
// constitutive axioms.  Drawing many of these exercises the translation
// of specifications across the range of shapes it quantifies over.
inline DecoratedSpec random_pure_spec(std::mt19937& rng, int serial) {
  using detail::draw;
  int nb = 1 + static_cast<int>(draw(rng, 3));
  std::vector<std::string> bases;
  for (int i = 0; i < nb; ++i) bases.push_back("B" + std::to_string(i + 1));
  auto some_base = [&] {
    return ObjType::base(bases[draw(rng, bases.size())]);
  };
  std::vector<GenDecl> sig;
  int nops = static_cast<int>(draw(rng, 4));
  for (int i = 0; i < nops; ++i) {
    std::string name = "op" + std::to_string(i + 1);
    if (draw(rng, 3) == 0)
      sig.push_back({name, ObjType::unit(), some_base(), Deco::pure});
    else
      sig.push_back({name, some_base(), some_base(), Deco::pure});
  }
  int ni = 1 + static_cast<int>(draw(rng, 4));
  std::vector<ExcDecl> excs;
  for (int i = 1; i <= ni; ++i)
    excs.push_back({i, draw(rng, 4) == 0 ? ObjType::unit() : some_base()});
  return make_deco_spec("gen" + std::to_string(serial), std::move(bases),
                        std::move(sig), std::move(excs));
}

// ---------------------------------------------------------------------------
// models

// One random model: carrier sizes drawn up to max_size (at least min_size),
// tables filled uniformly from the admissible outputs.
inline FiniteModel random_model(const DecoratedSpec& s, std::mt19937& rng,
                                int max_size, int min_size = 0) {
  using detail::draw;
  FiniteModel m;
  for (const auto& b : s.bases) {
    int size =
        min_size + static_cast<int>(draw(rng, max_size - min_size + 1));
    std::vector<std::string> atoms(detail::atom_pool().begin(),
                                   detail::atom_pool().begin() + size);
    m.carriers[b] = std::move(atoms);
  }
  for (const auto& g : s.sig) {
    std::vector<Value> dom = values_of(s, m, g.src);
    if (g.deco == Deco::ctc)
      for (auto& e : exception_values(s, m)) dom.push_back(std::move(e));
    std::vector<Value> outs = values_of(s, m, g.tgt);
    if (g.deco != Deco::pure)
      for (auto& e : exception_values(s, m)) outs.push_back(std::move(e));
    if (!dom.empty() && outs.empty()) {
      // nothing to map to; redraw with inhabited carriers
      return random_model(s, rng, max_size, 1);
    }
    auto& rows = m.tables[g.name];
    for (const auto& x : dom)
      rows.push_back({x, outs[draw(rng, outs.size())]});
  }
  return m;
}

// A deterministic collection of n random models.  The first one has every
// carrier inhabited, so properties needing a nonempty witness always get
// their chance.
inline std::vector<FiniteModel> random_models(const DecoratedSpec& s, int n,
                                              uint32_t salt, int max_size) {
  std::mt19937 rng = seeded(salt);
  std::vector<FiniteModel> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(random_model(s, rng, max_size, i == 0 ? 1 : 0));
    out.back().name = "rnd" + std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// terms

// Enumerated decorated terms, stratified by tree depth.  The universe of
// source and target types is the spec's bases, 0, 1, and the coproduct of
// the first two exception parameters (so the semi-pure splits,
// coprojections and formal sums all get instances).  Each (source, target,
// depth) slot keeps the first per_slot distinct terms in a fixed
// generation order; the full term algebra grows much too fast to walk
// whole.
struct TermBatteryOptions {
  int max_depth = 5;
  int per_slot = 24;
};

inline std::vector<TermPtr> term_battery(const DecoratedSpec& s,
                                         TermBatteryOptions opt = {}) {
  std::vector<TypePtr> uni{ObjType::zero(), ObjType::unit()};
  for (const auto& b : s.bases) uni.push_back(ObjType::base(b));
  TypePtr psum;
  if (s.excs.size() >= 2) {
    psum = ObjType::coprod(s.excs[0].param, s.excs[1].param);
    uni.push_back(psum);
  }
  auto type_at = [&](const TypePtr& t) -> int {
    for (size_t i = 0; i < uni.size(); ++i)
      if (type_eq(uni[i], t)) return static_cast<int>(i);
    return -1;
  };
  size_t nt = uni.size();
  auto slot_of = [&](int a, int b) { return static_cast<size_t>(a) * nt + b; };

  // layers[d][slot] holds the terms of depth exactly d+1
  std::vector<std::vector<std::vector<TermPtr>>> layers;
  std::vector<std::vector<std::string>> seen(nt * nt);
  std::vector<std::vector<TermPtr>>* current = nullptr;
  auto add = [&](const TermPtr& t) {
    int a = type_at(t->src), b = type_at(t->tgt);
    if (a < 0 || b < 0) return;
    auto& lst = (*current)[slot_of(a, b)];
    if (lst.size() >= static_cast<size_t>(opt.per_slot)) return;
    std::string k = print_term(t);
    auto& sn = seen[slot_of(a, b)];
    for (const auto& other : sn)
      if (other == k) return;
    sn.push_back(std::move(k));
    lst.push_back(t);
  };
  auto guarded = [&](const std::function<TermPtr()>& mk) {
    try {
      add(mk());
    } catch (const TypeError&) {
    }
  };

  std::vector<std::vector<TermPtr>> atoms(nt * nt);
  current = &atoms;
  for (const auto& g : s.sig) add(s.find_gen(g.name));
  for (const auto& e : s.excs) {
    add(s.tag(e.index));
    add(s.untag(e.index));
  }
  for (const auto& t : uni) {
    if (!is_zero(t)) add(id(t));
    if (!is_zero(t)) add(empty_map(t));
    if (t->kind == TypeKind::Coprod) {
      guarded([&] { return copi1(t->left, t->right); });
      guarded([&] { return copi2(t->left, t->right); });
    }
  }
  layers.push_back(std::move(atoms));

  auto upto = [&](int d, size_t sl) {
    std::vector<TermPtr> out;
    for (int l = 0; l <= d && l < static_cast<int>(layers.size()); ++l)
      for (const auto& t : layers[l][sl]) out.push_back(t);
    return out;
  };

  for (int d = 1; d < opt.max_depth; ++d) {
    std::vector<std::vector<TermPtr>> layer(nt * nt);
    current = &layer;
    // at least one side from the newest layer keeps the depth exact
    auto fresh_pairs = [&](size_t sl_l, size_t sl_r,
                           const std::function<void(const TermPtr&,
                                                    const TermPtr&)>& fn) {
      for (const auto& l : layers[d - 1][sl_l])
        for (const auto& r : upto(d - 1, sl_r)) fn(l, r);
      for (const auto& l : upto(d - 2, sl_l))
        for (const auto& r : layers[d - 1][sl_r]) fn(l, r);
    };
    for (size_t a = 0; a < nt; ++a)
      for (size_t m = 0; m < nt; ++m)
        for (size_t b = 0; b < nt; ++b)
          fresh_pairs(slot_of(static_cast<int>(m), static_cast<int>(b)),
                      slot_of(static_cast<int>(a), static_cast<int>(m)),
                      [&](const TermPtr& o, const TermPtr& i) {
                        guarded([&] { return comp(o, i); });
                      });
    for (size_t a1 = 0; a1 < nt; ++a1)
      for (size_t a2 = 0; a2 < nt; ++a2)
        for (size_t b = 0; b < nt; ++b)
          fresh_pairs(slot_of(static_cast<int>(a1), static_cast<int>(b)),
                      slot_of(static_cast<int>(a2), static_cast<int>(b)),
                      [&](const TermPtr& l, const TermPtr& r) {
                        guarded([&] { return cotuple(l, r); });
                      });
    if (psum) {
      int b1 = type_at(s.excs[0].param), b2 = type_at(s.excs[1].param);
      for (size_t a1 = 0; a1 < nt; ++a1)
        for (size_t a2 = 0; a2 < nt; ++a2)
          fresh_pairs(slot_of(static_cast<int>(a1), b1),
                      slot_of(static_cast<int>(a2), b2),
                      [&](const TermPtr& l, const TermPtr& r) {
                        guarded([&] { return summap(l, r); });
                      });
      for (size_t b = 0; b < nt; ++b)
        fresh_pairs(slot_of(b1, static_cast<int>(b)),
                    slot_of(b2, static_cast<int>(b)),
                    [&](const TermPtr& m1, const TermPtr& m2) {
                      guarded([&] {
                        return tag_cotuple({m1, m2}, s.param_types());
                      });
                    });
    }
    for (size_t sl = 0; sl < nt * nt; ++sl)
      for (const auto& t : layers[d - 1][sl])
        guarded([&] { return downcast(t); });
    layers.push_back(std::move(layer));
  }

  std::vector<TermPtr> out;
  for (const auto& layer : layers)
    for (const auto& lst : layer)
      for (const auto& t : lst) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------
// equations of the tag family

// Untagging right after tagging annihilates: t_i o c_i == id at 0.
inline Equation untag_tag_equation(const DecoratedSpec& s, int i) {
  return {Strength::strong, comp(s.tag(i), s.untag(i)), id(ObjType::zero())};
}

// Two untags commute past each other through the formal sum.
inline Equation untag_commute_equation(const DecoratedSpec& s, int i, int j) {
  const ExcDecl *ei = s.find_exc(i), *ej = s.find_exc(j);
  return {Strength::strong,
          comp(summap(s.untag(i), id(ej->param)), s.untag(j)),
          comp(summap(id(ei->param), s.untag(j)), s.untag(i))};
}

// ---------------------------------------------------------------------------
// handler clause lists

// Every clause list of length 1..max_n over the spec's indices, bodies
// looked up by name g<i>; duplicate indices included on purpose (the later
// duplicate must never run).
inline std::vector<std::vector<CatchClause>> handler_clause_lists(
    const DecoratedSpec& s, int max_n) {
  std::vector<int> idx;
  for (const auto& e : s.excs) idx.push_back(e.index);
  std::vector<std::vector<int>> lists{{}};
  std::vector<std::vector<CatchClause>> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::vector<int>> next;
    for (const auto& l : lists)
      for (int i : idx) {
        auto e = l;
        e.push_back(i);
        next.push_back(std::move(e));
      }
    for (const auto& l : next) {
      std::vector<CatchClause> cl;
      for (int i : l) cl.push_back({i, s.find_gen("g" + std::to_string(i))});
      out.push_back(std::move(cl));
    }
    lists = std::move(next);
  }
  return out;
}

}  // namespace dexc
