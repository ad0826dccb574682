#pragma once
// Exception handlers.  Throwing is raising behind an empty map, so the
// handler's target type is free; handling is untagging behind a case
// split, tried clause by clause, with the whole chain downcast back to
// propagator strength at the end.
//
// The definitional form keeps the last link of the chain as a case split
// against []_Y (an uncaught exception stays raised).  The shorter forms
// usually written for one or two clauses are provable consequences, not
// definitions; tests assert them as equations, never structurally.

#include "dexc/expand.hpp"

namespace dexc {

struct HandlerError : std::runtime_error {
  explicit HandlerError(const std::string& m) : std::runtime_error(m) {}
};

struct CatchClause {
  int index;
  TermPtr body;  // P(index) -> Y, at most a propagator
};

// throw_{i,Y} : P_i -> Y raises exception i into an arbitrary target type.
inline TermPtr build_throw(const DecoratedSpec& s, int index,
                           const TypePtr& y) {
  if (!s.find_exc(index))
    throw HandlerError("throw: unknown exception index " +
                       std::to_string(index));
  return comp(empty_map(y), s.tag(index));
}

inline TermPtr build_throw_explicit(const DecoratedSpec& s, int index,
                                    const TypePtr& y) {
  const ExcDecl* e = s.find_exc(index);
  if (!e)
    throw HandlerError("throw: unknown exception index " +
                       std::to_string(index));
  return xcomp(xina(y), xgen(DecoratedSpec::tag_name(index), e->param,
                             ObjType::exc()));
}

namespace detail {
inline void check_clauses(const DecoratedSpec& s, const TermPtr& f,
                          const std::vector<CatchClause>& clauses) {
  if (clauses.empty())
    throw HandlerError("try: at least one catch clause is required");
  if (!f->decorated() || !deco_le(*f->deco, Deco::ppg))
    throw HandlerError("try: the handled term must be at most a propagator");
  for (const auto& cl : clauses) {
    const ExcDecl* e = s.find_exc(cl.index);
    if (!e)
      throw HandlerError("catch: unknown exception index " +
                         std::to_string(cl.index));
    if (!cl.body->decorated() || !deco_le(*cl.body->deco, Deco::ppg))
      throw HandlerError("catch: clause bodies must be at most propagators");
    if (!type_eq(cl.body->src, e->param))
      throw HandlerError("catch: clause for index " +
                         std::to_string(cl.index) + " must have source " +
                         print_type(e->param));
    if (!type_eq(cl.body->tgt, f->tgt))
      throw HandlerError("catch: clause bodies must target " +
                         print_type(f->tgt));
  }
}
}  // namespace detail

// The catcher that tries the clauses in order: an uncaught exception
// reaches []_Y, i.e. stays raised.
inline TermPtr build_handler_chain(const DecoratedSpec& s, const TypePtr& y,
                                   const std::vector<CatchClause>& clauses) {
  TermPtr k = empty_map(y);
  for (size_t p = clauses.size(); p-- > 0;)
    k = comp(cotuple(clauses[p].body, k), s.untag(clauses[p].index));
  return k;
}

// try f catch(i1 => g1 | ... | in => gn), the definitional form
//   down([id_Y | k_1] o f)   with   k_p = [g_p | k_{p+1}] o c_{i_p},
//   k_{n+1} = []_Y.
inline TermPtr build_try_catch(const DecoratedSpec& s, const TermPtr& f,
                               const std::vector<CatchClause>& clauses) {
  detail::check_clauses(s, f, clauses);
  TermPtr k1 = build_handler_chain(s, f->tgt, clauses);
  return downcast(comp(cotuple(id(f->tgt), k1), f));
}

// The shorter display form: the last clause drops its [ | []_Y ] wrapper.
// Provably strongly equal to the definitional form, structurally distinct.
inline TermPtr simplified_try_catch(const DecoratedSpec& s, const TermPtr& f,
                                    const std::vector<CatchClause>& clauses) {
  detail::check_clauses(s, f, clauses);
  size_t n = clauses.size();
  TermPtr k = comp(clauses[n - 1].body, s.untag(clauses[n - 1].index));
  for (size_t p = n - 1; p-- > 0;)
    k = comp(cotuple(clauses[p].body, k), s.untag(clauses[p].index));
  return downcast(comp(cotuple(id(f->tgt), k), f));
}

// The explicit twin, built directly over the explicit faces
// (xf : X -> Y+E, bodies P_i -> Y+E); uncaught exceptions re-enter via
// ina_Y.  The expansion of build_try_catch normalizes to exactly this.
inline TermPtr build_try_catch_explicit(
    const DecoratedSpec& s, const TypePtr& y, const TermPtr& xf,
    const std::vector<std::pair<int, TermPtr>>& clauses) {
  if (clauses.empty())
    throw HandlerError("try: at least one catch clause is required");
  TermPtr k = xina(y);
  for (size_t p = clauses.size(); p-- > 0;) {
    const ExcDecl* e = s.find_exc(clauses[p].first);
    if (!e)
      throw HandlerError("catch: unknown exception index " +
                         std::to_string(clauses[p].first));
    TermPtr untag = xgen(DecoratedSpec::untag_name(e->index), ObjType::exc(),
                         ObjType::coprod(e->param, ObjType::exc()));
    k = xcomp(xcot(clauses[p].second, k), untag);
  }
  return xcomp(xcot(xin(y), k), xf);
}

// ---------------------------------------------------------------------------
// the reference semantics of a handler, written the way a Java programmer
// would read it: run the block; if it completes abruptly because of
// exception j, the first clause declared for j (left to right) runs on the
// parameter and the whole statement completes like that clause; with no
// matching clause the exception keeps propagating.

inline Value java_reference_eval(const DecoratedSpec& s, const FiniteModel& m,
                                 const TermPtr& f,
                                 const std::vector<CatchClause>& clauses,
                                 const Value& in) {
  if (in.is_exc()) return in;  // already abrupt: the statement is skipped
  Value r = eval_decorated(s, m, f, in);
  if (!r.is_exc()) return r;
  for (const auto& cl : clauses)
    if (cl.index == r.index) return eval_decorated(s, m, cl.body, *r.sub);
  return r;
}

// Pointwise comparison of the decorated handler against the reference
// semantics; returns the first diverging input, if any.
struct HandlerDivergence {
  Value input, decorated, reference;
};

inline std::optional<HandlerDivergence> handler_divergence(
    const DecoratedSpec& s, const FiniteModel& m, const TermPtr& f,
    const std::vector<CatchClause>& clauses) {
  TermPtr t = build_try_catch(s, f, clauses);
  for (const auto& x : values_of(s, m, f->src)) {
    Value a = eval_decorated(s, m, t, x);
    Value b = java_reference_eval(s, m, f, clauses, x);
    if (!value_eq(a, b)) return HandlerDivergence{x, a, b};
  }
  return std::nullopt;
}

}  // namespace dexc
