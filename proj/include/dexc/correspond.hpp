#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dexc/expand.hpp"
#include "dexc/handler.hpp"
#include "dexc/model.hpp"

namespace dexc {

// A model read through decorated eyes and the same model read through
// explicit eyes must agree: evaluating a decorated term equals evaluating
// its expansion on the corresponding sum value.  This check realizes that
// correspondence pointwise for every operation of the specification and
// for the canonical derived operations (raising, and handler chains
// assembled from whatever the signature offers).

struct CorrespondenceFailure {
  std::string item;
  Value input, decorated, expanded;
};

struct CorrespondenceReport {
  long items = 0;
  long points = 0;
  std::optional<CorrespondenceFailure> failure;
  bool ok() const { return !failure.has_value(); }
};

namespace detail {

inline Value as_sum(const Value& v) {
  return v.is_exc() ? Value::inr(v) : Value::inl(v);
}

// One decorated term against its expansion.  The expansion's domain
// depends on the decoration: the plain form of a pure term takes ordinary
// values as they are, a propagator form still takes ordinary values but
// answers in the sum, and a catcher form takes the sum on both ends.
inline bool corresponds(const DecoratedSpec& s, const FiniteModel& m,
                        const TermPtr& t, const std::string& label,
                        CorrespondenceReport& rep) {
  TermPtr xt = expand_term(s, t);
  ++rep.items;
  Deco d = *t->deco;
  // a target of 0 lifts to 0+E = E, so the explicit side answers with a
  // bare exception there instead of a sum
  auto boxed = [&](const Value& dec) {
    return is_zero(t->tgt) ? dec : as_sum(dec);
  };
  for (const auto& x : values_of(s, m, t->src)) {
    Value dec = eval_decorated(s, m, t, x);
    Value in = d == Deco::ctc ? Value::inl(x) : x;
    Value exp = eval_explicit(s, m, xt, in);
    ++rep.points;
    bool agree = d == Deco::pure ? value_eq(dec, exp)
                                 : value_eq(boxed(dec), exp);
    if (!agree) {
      rep.failure = CorrespondenceFailure{label, x, dec, exp};
      return false;
    }
  }
  if (d == Deco::ctc) {
    for (const auto& e : exception_values(s, m)) {
      Value dec = eval_decorated(s, m, t, e);
      Value in = is_zero(t->src) ? e : Value::inr(e);
      Value exp = eval_explicit(s, m, xt, in);
      ++rep.points;
      if (!value_eq(boxed(dec), exp)) {
        rep.failure = CorrespondenceFailure{label, e, dec, exp};
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// Checks the whole signature plus the derived raising and handling
// operations; stops at the first disagreement and reports it.
inline CorrespondenceReport correspondence_check(const DecoratedSpec& s,
                                                 const FiniteModel& m) {
  CorrespondenceReport rep;
  auto check = [&](const TermPtr& t, const std::string& label) {
    return detail::corresponds(s, m, t, label, rep);
  };
  for (const auto& g : s.sig)
    if (!check(s.find_gen(g.name), g.name)) return rep;
  for (const auto& e : s.excs) {
    if (!check(s.tag(e.index), DecoratedSpec::tag_name(e.index))) return rep;
    if (!check(s.untag(e.index), DecoratedSpec::untag_name(e.index)))
      return rep;
  }
  for (const auto& e : s.excs)
    for (const auto& b : s.bases) {
      TermPtr thr = build_throw(s, e.index, ObjType::base(b));
      std::string label =
          "throw{" + std::to_string(e.index) + "," + b + "}";
      if (!check(thr, label)) return rep;
    }
  // handler chains: any propagator or catcher of the signature can be the
  // block, any operation from a parameter type at most a propagator can
  // recover that index
  for (const auto& g : s.sig) {
    if (g.deco == Deco::pure) continue;
    TermPtr f = s.find_gen(g.name);
    std::vector<CatchClause> single;
    for (const auto& e : s.excs)
      for (const auto& h : s.sig) {
        if (!deco_le(h.deco, Deco::ppg)) continue;
        if (!type_eq(h.src, e.param) || !type_eq(h.tgt, g.tgt)) continue;
        single.push_back({e.index, s.find_gen(h.name)});
      }
    auto label = [&](const std::vector<CatchClause>& cls) {
      std::string l = "try " + g.name + " catch(";
      for (size_t i = 0; i < cls.size(); ++i) {
        if (i) l += " | ";
        l += std::to_string(cls[i].index) + " => " +
             print_term(cls[i].body);
      }
      return l + ")";
    };
    for (const auto& c : single)
      if (!check(build_try_catch(s, f, {c}), label({c}))) return rep;
    for (const auto& c1 : single)
      for (const auto& c2 : single)
        if (!check(build_try_catch(s, f, {c1, c2}), label({c1, c2})))
          return rep;
  }
  return rep;
}

}  // namespace dexc
