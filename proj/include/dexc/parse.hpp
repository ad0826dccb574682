#pragma once
// Text formats: .dexc specifications, .dmodel finite models, .dproof
// derivation scripts.  All three are line oriented with # comments; proof
// scripts encode the tree through two-space indentation.
//
// Terms parse back to structurally identical trees (printing is the
// inverse), and the term grammar accepts raising/handling sugar that
// elaborates to the core constructions at parse time.

#include <fstream>

#include "dexc/handler.hpp"
#include "dexc/kernel.hpp"

namespace dexc {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int ln, const std::string& m)
      : std::runtime_error("line " + std::to_string(ln) + ": " + m),
        line(ln) {}
};

namespace parsing {

// a cursor over one logical line
class Lex {
public:
  Lex(std::string text, int line) : s_(std::move(text)), line_(line) {}

  int line() const { return line_; }
  void skip() {
    while (i_ < s_.size() && s_[i_] == ' ') ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool try_eat(const std::string& tok) {
    skip();
    if (s_.compare(i_, tok.size(), tok) != 0) return false;
    // identifier-like tokens must not continue
    if (isalnum(static_cast<unsigned char>(tok.back())) &&
        i_ + tok.size() < s_.size() &&
        (isalnum(static_cast<unsigned char>(s_[i_ + tok.size()])) ||
         s_[i_ + tok.size()] == '_'))
      return false;
    i_ += tok.size();
    return true;
  }
  void eat(const std::string& tok) {
    if (!try_eat(tok)) err("expected '" + tok + "'");
  }
  std::string ident() {
    skip();
    size_t b = i_;
    while (i_ < s_.size() &&
           (isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
      ++i_;
    if (b == i_) err("expected a name");
    return s_.substr(b, i_ - b);
  }
  int number() {
    skip();
    size_t b = i_;
    while (i_ < s_.size() && isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (b == i_) err("expected a number");
    return std::stoi(s_.substr(b, i_ - b));
  }
  std::string rest() {
    skip();
    return s_.substr(i_);
  }
  [[noreturn]] void err(const std::string& m) {
    throw ParseError(line_, m + " at '" + s_.substr(i_, 12) + "'");
  }
  void expect_done() {
    if (!done()) err("trailing input");
  }

private:
  std::string s_;
  size_t i_ = 0;
  int line_;
};

// --------------------------------------------------------------------
// types

inline TypePtr parse_type(const DecoratedSpec& s, Lex& lx, bool allow_exc);

inline TypePtr parse_type_atom(const DecoratedSpec& s, Lex& lx,
                               bool allow_exc) {
  if (lx.try_eat("(")) {
    TypePtr t = parse_type(s, lx, allow_exc);
    lx.eat(")");
    return t;
  }
  if (lx.try_eat("0")) return ObjType::zero();
  if (lx.try_eat("1")) return ObjType::unit();
  if (allow_exc && lx.try_eat("E")) return ObjType::exc();
  std::string n = lx.ident();
  if (!s.has_base(n)) lx.err("unknown type " + n);
  return ObjType::base(n);
}

inline TypePtr parse_type(const DecoratedSpec& s, Lex& lx, bool allow_exc) {
  TypePtr t = parse_type_atom(s, lx, allow_exc);
  while (lx.try_eat("+")) t = ObjType::coprod(t, parse_type_atom(s, lx, allow_exc));
  return t;
}

inline Deco parse_deco(Lex& lx) {
  lx.eat("[");
  Deco d;
  if (lx.try_eat("pure")) d = Deco::pure;
  else if (lx.try_eat("ppg")) d = Deco::ppg;
  else if (lx.try_eat("ctc")) d = Deco::ctc;
  else lx.err("expected pure, ppg or ctc");
  lx.eat("]");
  return d;
}

// --------------------------------------------------------------------
// terms

inline TermPtr parse_term(const DecoratedSpec& s, Lex& lx, bool expl);

inline TermPtr parse_term_atom(const DecoratedSpec& s, Lex& lx, bool expl) {
  int line = lx.line();
  auto rethrow = [&](const auto& e) -> TermPtr {
    throw ParseError(line, e.what());
  };
  try {
    if (lx.try_eat("(")) {
      TermPtr t = parse_term(s, lx, expl);
      lx.eat(")");
      return t;
    }
    if (lx.try_eat("[")) {
      if (lx.try_eat("]")) {  // the empty map []{Y}
        lx.eat("{");
        TypePtr y = parse_type(s, lx, expl);
        lx.eat("}");
        return expl ? xempty(y) : empty_map(y);
      }
      TermPtr l = parse_term(s, lx, expl);
      lx.eat("|");
      TermPtr r = parse_term(s, lx, expl);
      lx.eat("]");
      if (!expl) return cotuple(l, r);
      return r->src->kind == TypeKind::Exc ? xcot(l, r) : xgcot(l, r);
    }
    if (lx.try_eat("{")) {
      std::vector<TermPtr> ms{parse_term(s, lx, expl)};
      while (lx.try_eat("|")) ms.push_back(parse_term(s, lx, expl));
      lx.eat("}");
      if (expl) lx.err("tag case splits are decorated terms");
      return tag_cotuple(ms, s.param_types());
    }
    if (lx.try_eat("id")) {
      lx.eat("{");
      TypePtr t = parse_type(s, lx, expl);
      lx.eat("}");
      return expl ? xid(t) : id(t);
    }
    if (lx.try_eat("down")) {
      lx.eat("(");
      TermPtr t = parse_term(s, lx, expl);
      lx.eat(")");
      if (expl) lx.err("downcasts are decorated terms");
      return downcast(t);
    }
    bool c1 = lx.try_eat("copi1");
    if (c1 || lx.try_eat("copi2")) {
      lx.eat("{");
      TypePtr t = parse_type(s, lx, expl);
      lx.eat("}");
      if (t->kind != TypeKind::Coprod)
        lx.err("coprojections are written with their whole coproduct type");
      // the printed form carries the target coproduct; with + associating
      // to the left the split point is its top node
      const TypePtr &a = t->left, &b = t->right;
      if (expl) return c1 ? xcopi1(a, b) : xcopi2(a, b);
      return c1 ? copi1(a, b) : copi2(a, b);
    }
    if (lx.try_eat("in")) {
      lx.eat("{");
      TypePtr t = parse_type(s, lx, false);
      lx.eat("}");
      if (!expl) lx.err("in{...} is an explicit term");
      return xin(t);
    }
    if (lx.try_eat("ina")) {
      lx.eat("{");
      TypePtr t = parse_type(s, lx, false);
      lx.eat("}");
      if (!expl) lx.err("ina{...} is an explicit term");
      return xina(t);
    }
    if (lx.try_eat("throw")) {
      lx.eat("{");
      int i = lx.number();
      lx.eat(",");
      TypePtr y = parse_type(s, lx, false);
      lx.eat("}");
      if (expl) return build_throw_explicit(s, i, y);
      return build_throw(s, i, y);
    }
    if (lx.try_eat("try")) {
      if (expl) lx.err("try sugar elaborates to a decorated term");
      lx.eat("(");
      TermPtr f = parse_term(s, lx, false);
      std::vector<CatchClause> cls;
      while (lx.try_eat("|")) {
        int i = lx.number();
        lx.eat("=>");
        cls.push_back({i, parse_term(s, lx, false)});
      }
      lx.eat(")");
      return build_try_catch(s, f, cls);
    }
    std::string n = lx.ident();
    if (!expl) {
      TermPtr g = s.find_gen(n);
      if (!g) lx.err("unknown operation " + n);
      return g;
    }
    // explicit faces of the declared operations
    ExplicitSpec x = direct_explicit_spec(s);
    TermPtr g = x.find_gen(n);
    if (!g) lx.err("unknown operation " + n);
    return g;
  } catch (const TypeError& e) {
    return rethrow(e);
  } catch (const SpecError& e) {
    return rethrow(e);
  } catch (const HandlerError& e) {
    return rethrow(e);
  }
}

inline TermPtr parse_term_comp(const DecoratedSpec& s, Lex& lx, bool expl) {
  std::vector<TermPtr> atoms{parse_term_atom(s, lx, expl)};
  while (lx.try_eat("o")) atoms.push_back(parse_term_atom(s, lx, expl));
  int line = lx.line();
  try {
    TermPtr t = atoms.back();
    for (size_t i = atoms.size() - 1; i-- > 0;)
      t = expl ? xcomp(atoms[i], t) : comp(atoms[i], t);
    return t;
  } catch (const TypeError& e) {
    throw ParseError(line, e.what());
  }
}

inline TermPtr parse_term(const DecoratedSpec& s, Lex& lx, bool expl) {
  TermPtr t = parse_term_comp(s, lx, expl);
  while (lx.try_eat("+")) {
    if (expl) lx.err("sum maps are decorated terms");
    int line = lx.line();
    try {
      t = summap(t, parse_term_comp(s, lx, expl));
    } catch (const TypeError& e) {
      throw ParseError(line, e.what());
    }
  }
  return t;
}

}  // namespace parsing

// parse one term from a string (the whole string must be consumed)
inline TermPtr parse_term(const DecoratedSpec& s, const std::string& text,
                          bool expl = false, int line = 1) {
  parsing::Lex lx(text, line);
  TermPtr t = parsing::parse_term(s, lx, expl);
  lx.expect_done();
  return t;
}

// ---------------------------------------------------------------------------
// line splitting shared by the file formats

namespace parsing {

struct Line {
  int no;
  int indent;
  std::string text;  // stripped of indentation and comments
};

inline std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  int no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string raw = text.substr(
        pos, nl == std::string::npos ? std::string::npos : nl - pos);
    ++no;
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
    size_t ind = 0;
    while (ind < raw.size() && raw[ind] == ' ') ++ind;
    if (ind < raw.size() && raw[ind] == '\t')
      throw ParseError(no, "tabs are not allowed, indent with spaces");
    size_t end = raw.find_last_not_of(" \r");
    if (end == std::string::npos) continue;  // blank
    out.push_back({no, static_cast<int>(ind), raw.substr(ind, end - ind + 1)});
  }
  return out;
}

}  // namespace parsing

// ---------------------------------------------------------------------------
// .dexc specifications

inline DecoratedSpec parse_spec(const std::string& text) {
  DecoratedSpec s;
  auto lines = parsing::split_lines(text);
  size_t i = 0;
  auto want = [&](const char* kw) {
    if (i >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().no,
                       std::string("missing section ") + kw);
    parsing::Lex lx(lines[i].text, lines[i].no);
    lx.eat(kw);
    return lx;
  };
  {
    parsing::Lex lx = want("spec");
    s.name = lx.ident();
    lx.expect_done();
    ++i;
  }
  {
    parsing::Lex lx = want("types");
    while (!lx.done()) s.bases.push_back(lx.ident());
    ++i;
  }
  want("ops").expect_done();
  ++i;
  while (i < lines.size() && lines[i].indent > 0) {
    parsing::Lex lx(lines[i].text, lines[i].no);
    GenDecl g;
    g.name = lx.ident();
    lx.eat(":");
    g.src = parsing::parse_type(s, lx, false);
    lx.eat("->");
    g.tgt = parsing::parse_type(s, lx, false);
    g.deco = parsing::parse_deco(lx);
    lx.expect_done();
    s.sig.push_back(std::move(g));
    ++i;
  }
  want("exceptions").expect_done();
  ++i;
  while (i < lines.size() && lines[i].indent > 0) {
    parsing::Lex lx(lines[i].text, lines[i].no);
    ExcDecl e;
    e.index = lx.number();
    lx.eat(":");
    e.param = parsing::parse_type(s, lx, false);
    lx.expect_done();
    s.excs.push_back(std::move(e));
    ++i;
  }
  want("axioms").expect_done();
  ++i;
  while (i < lines.size() && lines[i].indent > 0) {
    parsing::Lex lx(lines[i].text, lines[i].no);
    NamedEq a;
    a.name = lx.ident();
    lx.eat(":");
    a.eq.lhs = parsing::parse_term(s, lx, false);
    if (lx.try_eat("~")) a.eq.strength = Strength::weak;
    else if (lx.try_eat("==")) a.eq.strength = Strength::strong;
    else lx.err("expected ~ or ==");
    a.eq.rhs = parsing::parse_term(s, lx, false);
    lx.expect_done();
    s.axioms.push_back(std::move(a));
    ++i;
  }
  if (i < lines.size())
    throw ParseError(lines[i].no, "unexpected content after axioms");
  return s;
}

inline std::string print_spec(const DecoratedSpec& s) {
  std::string out = "spec " + s.name + "\ntypes";
  for (const auto& b : s.bases) out += " " + b;
  out += "\nops\n";
  for (const auto& g : s.sig)
    out += "  " + g.name + " : " + print_type(g.src) + " -> " +
           print_type(g.tgt) + " [" + print_deco(g.deco) + "]\n";
  out += "exceptions\n";
  for (const auto& e : s.excs)
    out += "  " + std::to_string(e.index) + " : " + print_type(e.param) + "\n";
  out += "axioms\n";
  for (const auto& a : s.axioms)
    out += "  " + a.name + " : " + print_term(a.eq.lhs) +
           (a.eq.strength == Strength::weak ? " ~ " : " == ") +
           print_term(a.eq.rhs) + "\n";
  return out;
}

// The explicit counterpart rendered in the same layout; operations carry
// their lifted types and no decorations, equations are plain.
inline std::string print_explicit_spec(const ExplicitSpec& s) {
  std::string out = "explicit spec " + s.name + "\ntypes";
  for (const auto& b : s.bases) out += " " + b;
  out += "\nops\n";
  for (const auto& g : s.sig)
    out += "  " + g.name + " : " + print_type(g.src) + " -> " +
           print_type(g.tgt) + "\n";
  out += "exceptions\n";
  for (const auto& e : s.excs)
    out += "  " + std::to_string(e.index) + " : " + print_type(e.param) + "\n";
  out += "axioms\n";
  for (const auto& a : s.axioms)
    out += "  " + a.name + " : " + print_term(a.eq.lhs) + " == " +
           print_term(a.eq.rhs) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// .dmodel finite models

inline Value parse_value(const DecoratedSpec& s, parsing::Lex& lx,
                         const TypePtr& expect) {
  if (lx.try_eat("exc")) {
    int idx = lx.number();
    const ExcDecl* e = s.find_exc(idx);
    if (!e) lx.err("unknown exception index " + std::to_string(idx));
    lx.eat("(");
    Value p = parse_value(s, lx, e->param);
    lx.eat(")");
    return Value::exc(idx, p);
  }
  if (lx.try_eat("*")) {
    if (expect->kind != TypeKind::Unit) lx.err("* inhabits the unit type");
    return Value::u();
  }
  std::string n = lx.ident();
  if (expect->kind != TypeKind::Base)
    lx.err("value " + n + " where type " + print_type(expect) + " expected");
  return Value::at(expect->name, n);
}

inline FiniteModel parse_model(const DecoratedSpec& s,
                               const std::string& text) {
  FiniteModel m;
  auto lines = parsing::split_lines(text);
  size_t i = 0;
  auto want = [&](const char* kw) {
    if (i >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().no,
                       std::string("missing section ") + kw);
    parsing::Lex lx(lines[i].text, lines[i].no);
    lx.eat(kw);
    return lx;
  };
  {
    parsing::Lex lx = want("model");
    m.name = lx.ident();
    lx.expect_done();
    ++i;
  }
  want("carriers").expect_done();
  ++i;
  while (i < lines.size() && lines[i].indent > 0) {
    parsing::Lex lx(lines[i].text, lines[i].no);
    std::string base = lx.ident();
    lx.eat("=");
    std::vector<std::string> atoms;
    while (!lx.done()) atoms.push_back(lx.ident());
    m.carriers[base] = std::move(atoms);
    ++i;
  }
  want("ops").expect_done();
  ++i;
  while (i < lines.size() && lines[i].indent > 0) {
    parsing::Lex lx(lines[i].text, lines[i].no);
    std::string op = lx.ident();
    TermPtr g = s.find_gen(op);
    if (!g) lx.err("unknown operation " + op);
    if (g->kind == TermKind::Gen && !op.empty()) {
      bool canonical = false;
      for (const auto& e : s.excs)
        canonical |= op == DecoratedSpec::tag_name(e.index) ||
                     op == DecoratedSpec::untag_name(e.index);
      if (canonical)
        lx.err("tagging and untagging are not tabulated; their "
               "interpretation is canonical");
    }
    lx.eat(":");
    // the exc branch of parse_value does not consult the expected type, so
    // exception-valued rows parse here and validate_model rejects them
    // where they are not allowed
    Value in = parse_value(s, lx, g->src);
    lx.eat("->");
    Value out = parse_value(s, lx, g->tgt);
    lx.expect_done();
    m.tables[op].push_back({in, out});
    ++i;
  }
  if (i < lines.size())
    throw ParseError(lines[i].no, "unexpected content after ops");
  return m;
}

inline std::string print_model(const DecoratedSpec& s, const FiniteModel& m) {
  std::string out = "model " + m.name + "\ncarriers\n";
  for (const auto& [b, atoms] : m.carriers) {
    out += "  " + b + " =";
    for (const auto& a : atoms) out += " " + a;
    out += "\n";
  }
  out += "ops\n";
  (void)s;
  for (const auto& [op, rows] : m.tables)
    for (const auto& r : rows)
      out += "  " + op + " : " + print_value(r.first) + " -> " +
             print_value(r.second) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// .dproof derivation scripts

struct NamedDerivation {
  std::string name;
  DerivPtr deriv;
};

namespace parsing {

// a judgment: either `term : T -> T [deco]` or `lhs (==|~) rhs`,
// recognized by the first top-level separator
inline Judgment parse_judgment(const DecoratedSpec& s, Lex& lx) {
  // scan the rest for a top-level == or ~ before deciding
  std::string rest = lx.rest();
  int depth = 0;
  size_t split = std::string::npos;
  bool weak = false;
  for (size_t j = 0; j < rest.size(); ++j) {
    char ch = rest[j];
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    if (depth != 0) continue;
    if (rest.compare(j, 4, " == ") == 0) {
      split = j;
      weak = false;
      break;
    }
    if (rest.compare(j, 3, " ~ ") == 0) {
      split = j;
      weak = true;
      break;
    }
  }
  if (split != std::string::npos) {
    Lex llx(rest.substr(0, split), lx.line());
    Lex rlx(rest.substr(split + (weak ? 3 : 4)), lx.line());
    TermPtr l = parse_term(s, llx, false);
    llx.expect_done();
    TermPtr r = parse_term(s, rlx, false);
    rlx.expect_done();
    if (!type_eq(l->src, r->src) || !type_eq(l->tgt, r->tgt))
      throw ParseError(lx.line(), "equation relates non-parallel terms");
    return Judgment::of(weak ? Strength::weak : Strength::strong, l, r);
  }
  TermPtr t = parse_term(s, lx, false);
  lx.eat(":");
  TypePtr src = parse_type(s, lx, false);
  lx.eat("->");
  TypePtr tgt = parse_type(s, lx, false);
  Deco claim = parse_deco(lx);
  lx.expect_done();
  if (!type_eq(t->src, src) || !type_eq(t->tgt, tgt))
    throw ParseError(lx.line(), "declared arity " + print_type(src) + " -> " +
                                    print_type(tgt) + " differs from the " +
                                    "term's " + print_type(t->src) + " -> " +
                                    print_type(t->tgt));
  return Judgment::of(t, claim);
}

}  // namespace parsing

// Parses the proof blocks of one file.  A `use <name>` step splices the
// derivation of an earlier block, looked up first among the blocks of this
// file and then in `prior` (blocks from files loaded before this one).
inline std::vector<NamedDerivation> parse_proofs(
    const DecoratedSpec& s, const std::string& text,
    const std::vector<NamedDerivation>& prior = {}) {
  std::vector<NamedDerivation> out;
  auto lines = parsing::split_lines(text);

  struct Node {
    std::string rule;
    Judgment concl;
    int line;
    std::vector<std::unique_ptr<Node>> kids;
  };
  auto find_block = [&](const std::string& n) -> const NamedDerivation* {
    for (const auto& b : out)
      if (b.name == n) return &b;
    for (const auto& b : prior)
      if (b.name == n) return &b;
    return nullptr;
  };
  std::function<DerivPtr(const Node&)> build = [&](const Node& nd) {
    if (nd.rule.rfind("use ", 0) == 0) {
      std::string ref = nd.rule.substr(4);
      const NamedDerivation* b = find_block(ref);
      if (!b) throw ParseError(nd.line, "use of unknown proof " + ref);
      if (!nd.kids.empty())
        throw ParseError(nd.line, "a use step takes no premises");
      if (!judgment_eq(b->deriv->concl, nd.concl))
        throw ParseError(nd.line, "use " + ref + " concludes " +
                                      print_judgment(b->deriv->concl) +
                                      ", not " + print_judgment(nd.concl));
      return b->deriv;
    }
    std::vector<DerivPtr> prem;
    for (const auto& k : nd.kids) prem.push_back(build(*k));
    return step(nd.rule, nd.concl, std::move(prem));
  };

  size_t i = 0;
  while (i < lines.size()) {
    parsing::Lex hl(lines[i].text, lines[i].no);
    if (lines[i].indent != 0) throw ParseError(lines[i].no, "expected proof");
    hl.eat("proof");
    std::string name = hl.ident();
    hl.expect_done();
    if (find_block(name))
      throw ParseError(lines[i].no, "duplicate proof name " + name);
    ++i;
    std::unique_ptr<Node> root;
    std::vector<Node*> stack;  // stack[d] = last node at depth d+1
    while (i < lines.size() && lines[i].indent > 0) {
      const auto& ln = lines[i];
      if (ln.indent % 2)
        throw ParseError(ln.no, "indentation must step by two spaces");
      int depth = ln.indent / 2;
      auto sep = ln.text.find(" |- ");
      if (sep == std::string::npos)
        throw ParseError(ln.no, "expected '<rule> |- <judgment>'");
      std::string rule = ln.text.substr(0, sep);
      while (!rule.empty() && rule.back() == ' ') rule.pop_back();
      parsing::Lex jlx(ln.text.substr(sep + 4), ln.no);
      auto node = std::make_unique<Node>();
      node->rule = rule;
      node->concl = parsing::parse_judgment(s, jlx);
      node->line = ln.no;
      if (depth == 1) {
        if (root) throw ParseError(ln.no, "a proof has exactly one root step");
        root = std::move(node);
        stack = {root.get()};
      } else {
        if (static_cast<size_t>(depth) > stack.size() + 1)
          throw ParseError(ln.no, "indentation skips a level");
        Node* parent = stack[depth - 2];
        parent->kids.push_back(std::move(node));
        stack.resize(depth - 1);
        stack.push_back(parent->kids.back().get());
      }
      ++i;
    }
    if (!root) throw ParseError(lines[i - 1].no, "empty proof " + name);
    out.push_back({name, build(*root)});
  }
  return out;
}

inline std::string print_proof(const std::string& name, const DerivPtr& d) {
  std::string out = "proof " + name + "\n";
  std::function<void(const DerivPtr&, int)> rec = [&](const DerivPtr& n,
                                                      int depth) {
    out += std::string(2 * depth, ' ') + n->rule + " |- " +
           print_judgment(n->concl) + "\n";
    for (const auto& p : n->premises) rec(p, depth + 1);
  };
  rec(d, 1);
  return out;
}

// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return text;
}

}  // namespace dexc
