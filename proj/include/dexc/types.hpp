#pragma once
// Type expressions and decorations for the two-level term language.
//
// The decorated level knows base types, the empty type 0, the unit type 1
// and formal binary coproducts.  The explicit level additionally has the
// exception type E.  Coproducts are kept in a normal form that never has a
// 0 summand: the factory absorbs 0 on either side, so X+0 and 0+X are the
// same type object as X.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dexc {

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& m) : std::runtime_error(m) {}
};

enum class TypeKind { Base, Zero, Unit, Coprod, Exc };

class ObjType;
using TypePtr = std::shared_ptr<const ObjType>;

class ObjType {
public:
  TypeKind kind;
  std::string name;      // Base only
  TypePtr left, right;   // Coprod only

  static TypePtr base(std::string n) {
    auto t = std::make_shared<ObjType>();
    t->kind = TypeKind::Base;
    t->name = std::move(n);
    return t;
  }
  static TypePtr zero() { return singleton(TypeKind::Zero); }
  static TypePtr unit() { return singleton(TypeKind::Unit); }
  static TypePtr exc() { return singleton(TypeKind::Exc); }

  // 0 is absorbed: coprod(0,B)=B, coprod(A,0)=A.
  static TypePtr coprod(TypePtr a, TypePtr b) {
    if (a->kind == TypeKind::Zero) return b;
    if (b->kind == TypeKind::Zero) return a;
    auto t = std::make_shared<ObjType>();
    t->kind = TypeKind::Coprod;
    t->left = std::move(a);
    t->right = std::move(b);
    return t;
  }

private:
  static TypePtr singleton(TypeKind k) {
    auto t = std::make_shared<ObjType>();
    t->kind = k;
    return t;
  }
};

inline bool type_eq(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Base: return a->name == b->name;
    case TypeKind::Coprod:
      return type_eq(a->left, b->left) && type_eq(a->right, b->right);
    default: return true;
  }
}

inline bool is_zero(const TypePtr& t) { return t->kind == TypeKind::Zero; }

inline bool mentions_exc(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Exc: return true;
    case TypeKind::Coprod: return mentions_exc(t->left) || mentions_exc(t->right);
    default: return false;
  }
}

inline std::string print_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Base: return t->name;
    case TypeKind::Zero: return "0";
    case TypeKind::Unit: return "1";
    case TypeKind::Exc: return "E";
    case TypeKind::Coprod: {
      std::string l = print_type(t->left);
      std::string r = print_type(t->right);
      if (t->right->kind == TypeKind::Coprod) r = "(" + r + ")";
      return l + "+" + r;
    }
  }
  return "?";
}

// Decorations, totally ordered: pure < ppg < ctc.  A propagator forwards
// every exception; a catcher may also recover from one.
enum class Deco { pure = 0, ppg = 1, ctc = 2 };

inline Deco deco_join(Deco a, Deco b) { return a < b ? b : a; }
inline bool deco_le(Deco a, Deco b) { return static_cast<int>(a) <= static_cast<int>(b); }

inline std::string print_deco(Deco d) {
  switch (d) {
    case Deco::pure: return "pure";
    case Deco::ppg: return "ppg";
    case Deco::ctc: return "ctc";
  }
  return "?";
}

}  // namespace dexc
