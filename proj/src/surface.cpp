#include "mrx/surface.hpp"

#include <cctype>
#include <sstream>

namespace mrx {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { LParen, RParen, LAngle, RAngle, Semi, Proj1, Proj2, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  size_t line, col;
};

bool sym_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'' ||
         c == '+' || c == '=';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  size_t line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string s, size_t l, size_t c) {
    out.push_back(Token{k, std::move(s), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    size_t l = line, cl = col;
    switch (c) {
      case '(': push(Tok::LParen, "(", l, cl); ++i; ++col; continue;
      case ')': push(Tok::RParen, ")", l, cl); ++i; ++col; continue;
      case '<': push(Tok::LAngle, "<", l, cl); ++i; ++col; continue;
      case '>': push(Tok::RAngle, ">", l, cl); ++i; ++col; continue;
      case ';': push(Tok::Semi, ";", l, cl); ++i; ++col; continue;
      case '.': {
        if (i + 1 < text.size() && (text[i + 1] == '1' || text[i + 1] == '2')) {
          push(text[i + 1] == '1' ? Tok::Proj1 : Tok::Proj2, text.substr(i, 2), l, cl);
          i += 2;
          col += 2;
          continue;
        }
        throw SyntaxError("stray '.'", l, cl);
      }
      default: break;
    }
    if (sym_char(c)) {
      size_t start = i;
      while (i < text.size() && sym_char(text[i])) {
        ++i;
        ++col;
      }
      push(Tok::Sym, text.substr(start, i - start), l, cl);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
  }
  push(Tok::End, "", line, col);
  return out;
}

// ---------------------------------------------------------------------------
// Reader

struct SExpr {
  enum Kind { Sym, List, PairForm } kind = Sym;
  std::string sym;
  std::vector<SExpr> items;
  size_t line = 0, col = 0;
};

struct Reader {
  const std::vector<Token>& toks;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  Token next() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().col);
  }

  SExpr read() {
    SExpr e = read_core();
    // postfix projections attach to the expression just read
    for (;;) {
      if (peek().kind == Tok::Proj1 || peek().kind == Tok::Proj2) {
        Token t = next();
        SExpr wrap;
        wrap.kind = SExpr::List;
        wrap.line = e.line;
        wrap.col = e.col;
        SExpr head;
        head.kind = SExpr::Sym;
        head.sym = (t.kind == Tok::Proj1) ? "fst" : "snd";
        head.line = t.line;
        head.col = t.col;
        wrap.items.push_back(std::move(head));
        wrap.items.push_back(std::move(e));
        e = std::move(wrap);
        continue;
      }
      break;
    }
    return e;
  }

  SExpr read_core() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Sym: {
        Token s = next();
        SExpr e;
        e.kind = SExpr::Sym;
        e.sym = s.text;
        e.line = s.line;
        e.col = s.col;
        return e;
      }
      case Tok::LParen: {
        Token open = next();
        SExpr e;
        e.kind = SExpr::List;
        e.line = open.line;
        e.col = open.col;
        while (peek().kind != Tok::RParen) {
          if (peek().kind == Tok::End) fail("unterminated '('");
          e.items.push_back(read());
        }
        next();
        return e;
      }
      case Tok::LAngle: {
        Token open = next();
        SExpr e;
        e.kind = SExpr::PairForm;
        e.line = open.line;
        e.col = open.col;
        for (;;) {
          // a segment is one or more expressions; several form an application
          std::vector<SExpr> seg;
          while (peek().kind != Tok::Semi && peek().kind != Tok::RAngle) {
            if (peek().kind == Tok::End) fail("unterminated '<'");
            seg.push_back(read());
          }
          if (seg.empty()) fail("empty pair component");
          if (seg.size() == 1) {
            e.items.push_back(std::move(seg[0]));
          } else {
            SExpr app;
            app.kind = SExpr::List;
            app.line = seg[0].line;
            app.col = seg[0].col;
            app.items = std::move(seg);
            e.items.push_back(std::move(app));
          }
          if (peek().kind == Tok::Semi) {
            next();
            continue;
          }
          next();  // RAngle
          break;
        }
        if (e.items.size() < 2) fail("a pair needs at least two components");
        return e;
      }
      default:
        fail("expected an expression");
    }
  }
};

[[noreturn]] void fail_at(const SExpr& e, const std::string& msg) {
  throw SyntaxError(msg, e.line, e.col);
}

bool is_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

const char* reserved[] = {
    "empty", "unit",  "nat",    "fin",   "sum",   "prod",  "fun",   "pi",    "sigma",
    "holds", "bot",   "atom",   "and",   "or",    "imp",   "forall", "exists", "lam",
    "pair",  "fst",   "snd",    "inl",   "inr",   "case",  "elt",   "e",     "zero",
    "succ",  "rec",   "add",    "=",     "le",    "band",  "bor",   "bnot",  "absurd",
    "true",  "false", "quoted",
};

bool is_reserved(const std::string& s) {
  for (const char* r : reserved)
    if (s == r) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Parsing context

struct Defs {
  const SourceFile* file = nullptr;  // null for the single-category parsers
};

struct Scope {
  std::vector<std::string> names;  // binder names, outermost first

  std::optional<size_t> lookup(const std::string& n) const {
    for (size_t i = names.size(); i-- > 0;)
      if (names[i] == n) return names.size() - 1 - i;
    return std::nullopt;
  }
};

TermPtr parse_term_sx(const SExpr& e, Scope& scope, const Defs& defs);
TypePtr parse_type_sx(const SExpr& e, Scope& scope, const Defs& defs);
PropPtr parse_prop_sx(const SExpr& e, Scope& scope, const Defs& defs);
ProofPtr parse_proof_sx(const SExpr& e, Scope& scope, const Defs& defs);

const SExpr& arg(const SExpr& e, size_t i, const char* form, size_t expect) {
  if (e.items.size() != expect)
    fail_at(e, std::string("'") + form + "' takes " + std::to_string(expect - 1) + " arguments");
  return e.items[i];
}

// (lam x BODY) under some category parser
template <class F>
auto parse_binder(const SExpr& e, Scope& scope, const char* what, F body_parser) {
  if (e.kind != SExpr::List || e.items.size() != 3 || e.items[0].kind != SExpr::Sym ||
      e.items[0].sym != "lam")
    fail_at(e, std::string("expected a one-variable binder (lam x ...) in ") + what);
  if (e.items[1].kind != SExpr::Sym) fail_at(e.items[1], "binder variable must be a name");
  if (is_reserved(e.items[1].sym)) fail_at(e.items[1], "binder variable shadows a keyword");
  scope.names.push_back(e.items[1].sym);
  auto out = body_parser(e.items[2]);
  scope.names.pop_back();
  return out;
}

// ---------------------------------------------------------------------------
// Terms

TermPtr parse_term_sx(const SExpr& e, Scope& scope, const Defs& defs) {
  if (e.kind == SExpr::Sym) {
    const std::string& s = e.sym;
    if (is_digits(s)) return tm_nat(std::stoull(s));
    if (s == "zero") return tm_zero();
    if (s == "elt" || s == "e") return tm_elt();
    if (s == "true") return tm_fin(1, 2);
    if (s == "false") return tm_fin(0, 2);
    if (auto idx = scope.lookup(s)) return tm_var(*idx);
    if (defs.file) {
      auto it = defs.file->terms.find(s);
      if (it != defs.file->terms.end()) return it->second;
    }
    throw UnboundNameError("unbound name '" + s + "' at " + std::to_string(e.line) + ":" +
                           std::to_string(e.col));
  }
  if (e.kind == SExpr::PairForm) {
    TermPtr out = parse_term_sx(e.items.back(), scope, defs);
    for (size_t i = e.items.size() - 1; i-- > 0;)
      out = tm_pair(parse_term_sx(e.items[i], scope, defs), out);
    return out;
  }
  if (e.items.empty()) fail_at(e, "empty term");
  const SExpr& head = e.items[0];
  if (head.kind == SExpr::Sym) {
    const std::string& h = head.sym;
    if (h == "lam")
      return tm_lam(parse_binder(e, scope, "a term",
                                 [&](const SExpr& b) { return parse_term_sx(b, scope, defs); }));
    if (h == "pair") {
      return tm_pair(parse_term_sx(arg(e, 1, "pair", 3), scope, defs),
                     parse_term_sx(arg(e, 2, "pair", 3), scope, defs));
    }
    if (h == "fst") return tm_fst(parse_term_sx(arg(e, 1, "fst", 2), scope, defs));
    if (h == "snd") return tm_snd(parse_term_sx(arg(e, 1, "snd", 2), scope, defs));
    if (h == "inl") return tm_inl(parse_term_sx(arg(e, 1, "inl", 2), scope, defs));
    if (h == "inr") return tm_inr(parse_term_sx(arg(e, 1, "inr", 2), scope, defs));
    if (h == "succ") return tm_succ(parse_term_sx(arg(e, 1, "succ", 2), scope, defs));
    if (h == "absurd") return tm_absurd(parse_term_sx(arg(e, 1, "absurd", 2), scope, defs));
    if (h == "add" || h == "=" || h == "le" || h == "band" || h == "bor") {
      PrimOp op = h == "add"  ? PrimOp::Add
                  : h == "="  ? PrimOp::Eq
                  : h == "le" ? PrimOp::Le
                  : h == "band" ? PrimOp::BAnd
                                : PrimOp::BOr;
      return tm_prim(op, parse_term_sx(arg(e, 1, h.c_str(), 3), scope, defs),
                     parse_term_sx(arg(e, 2, h.c_str(), 3), scope, defs));
    }
    if (h == "bnot")
      return tm_prim(PrimOp::BNot, parse_term_sx(arg(e, 1, "bnot", 2), scope, defs));
    if (h == "fin") {
      const SExpr& k = arg(e, 1, "fin", 3);
      const SExpr& n = arg(e, 2, "fin", 3);
      if (k.kind != SExpr::Sym || !is_digits(k.sym) || n.kind != SExpr::Sym || !is_digits(n.sym))
        fail_at(e, "fin takes two numeric literals");
      uint64_t kk = std::stoull(k.sym), nn = std::stoull(n.sym);
      if (kk >= nn) fail_at(e, "fin literal out of range");
      return tm_fin(kk, nn);
    }
    if (h == "case") {
      if (e.items.size() != 4) fail_at(e, "'case' takes a scrutinee and two clauses");
      TermPtr scrut = parse_term_sx(e.items[1], scope, defs);
      auto clause = [&](const SExpr& c, std::string* pat, std::string* var) -> const SExpr& {
        if (c.kind != SExpr::List || c.items.size() != 2 || c.items[0].kind != SExpr::List ||
            c.items[0].items.empty() || c.items[0].items[0].kind != SExpr::Sym)
          fail_at(c, "a case clause looks like ((inl x) body)");
        const SExpr& p = c.items[0];
        *pat = p.items[0].sym;
        if (p.items.size() == 2) {
          if (p.items[1].kind != SExpr::Sym) fail_at(p, "pattern variable must be a name");
          *var = p.items[1].sym;
        } else if (p.items.size() > 2) {
          fail_at(p, "a pattern binds at most one variable");
        }
        return c.items[1];
      };
      std::string pat1, var1, pat2, var2;
      const SExpr& b1 = clause(e.items[2], &pat1, &var1);
      const SExpr& b2 = clause(e.items[3], &pat2, &var2);
      auto under = [&](const std::string& var, const SExpr& b) {
        scope.names.push_back(var.empty() ? "_" : var);
        TermPtr t = parse_term_sx(b, scope, defs);
        scope.names.pop_back();
        return t;
      };
      if (pat1 == "inl" && pat2 == "inr") {
        if (var1.empty() || var2.empty()) fail_at(e, "sum patterns bind a variable");
        return tm_case(scrut, under(var1, b1), under(var2, b2));
      }
      if (pat1 == "zero" && pat2 == "succ") {
        if (!var1.empty()) fail_at(e, "the zero pattern binds no variable");
        if (var2.empty()) fail_at(e, "the succ pattern binds the predecessor");
        return tm_natcase(scrut, parse_term_sx(b1, scope, defs), under(var2, b2));
      }
      fail_at(e, "case clauses must be (inl, inr) or (zero, succ)");
    }
    if (h == "rec") {
      if (e.items.size() != 5) fail_at(e, "'rec' takes a motive, target, base and step");
      TypeFamily motive(parse_binder(e.items[1], scope, "a rec motive", [&](const SExpr& b) {
        return parse_type_sx(b, scope, defs);
      }));
      return tm_rec(std::move(motive), parse_term_sx(e.items[2], scope, defs),
                    parse_term_sx(e.items[3], scope, defs),
                    parse_term_sx(e.items[4], scope, defs));
    }
    if (h == "quoted") fail_at(e, "quoted values cannot be written in source");
  }
  // juxtaposition is application
  TermPtr out = parse_term_sx(e.items[0], scope, defs);
  for (size_t i = 1; i < e.items.size(); ++i)
    out = tm_app(out, parse_term_sx(e.items[i], scope, defs));
  return out;
}

// ---------------------------------------------------------------------------
// Types

TypePtr parse_type_sx(const SExpr& e, Scope& scope, const Defs& defs) {
  if (e.kind == SExpr::Sym) {
    const std::string& s = e.sym;
    if (s == "empty") return ty_empty();
    if (s == "unit") return ty_unit();
    if (s == "nat") return ty_nat();
    if (defs.file) {
      auto it = defs.file->types.find(s);
      if (it != defs.file->types.end()) return it->second;
    }
    throw UnboundNameError("unknown type '" + s + "' at " + std::to_string(e.line) + ":" +
                           std::to_string(e.col));
  }
  if (e.kind != SExpr::List || e.items.empty() || e.items[0].kind != SExpr::Sym)
    fail_at(e, "expected a type");
  const std::string& h = e.items[0].sym;
  if (h == "fin") {
    const SExpr& n = arg(e, 1, "fin", 2);
    if (n.kind != SExpr::Sym || !is_digits(n.sym)) fail_at(n, "fin takes a numeric size");
    uint64_t size = std::stoull(n.sym);
    if (size == 0) fail_at(n, "fin size must be positive");
    return ty_fin(size);
  }
  if (h == "sum")
    return ty_sum(parse_type_sx(arg(e, 1, "sum", 3), scope, defs),
                  parse_type_sx(arg(e, 2, "sum", 3), scope, defs));
  if (h == "prod")
    return ty_prod(parse_type_sx(arg(e, 1, "prod", 3), scope, defs),
                   parse_type_sx(arg(e, 2, "prod", 3), scope, defs));
  if (h == "fun")
    return ty_fun(parse_type_sx(arg(e, 1, "fun", 3), scope, defs),
                  parse_type_sx(arg(e, 2, "fun", 3), scope, defs));
  if (h == "pi" || h == "sigma") {
    TypePtr dom = parse_type_sx(arg(e, 1, h.c_str(), 3), scope, defs);
    TypeFamily fam(parse_binder(e.items[2], scope, h.c_str(), [&](const SExpr& b) {
      return parse_type_sx(b, scope, defs);
    }));
    return h == "pi" ? ty_pi(dom, std::move(fam)) : ty_sigma(dom, std::move(fam));
  }
  if (h == "holds") return ty_holds(parse_term_sx(arg(e, 1, "holds", 2), scope, defs));
  fail_at(e, "unknown type form '" + h + "'");
}

// ---------------------------------------------------------------------------
// Propositions

PropPtr instantiate_template(const PropTemplate& tpl, const std::vector<TermPtr>& args) {
  PropPtr body = tpl.body;
  for (size_t j = args.size(); j-- > 0;)
    body = open_prop(body, shift_term(args[j], static_cast<int64_t>(j)));
  return body;
}

PropPtr parse_prop_sx(const SExpr& e, Scope& scope, const Defs& defs) {
  if (e.kind == SExpr::Sym) {
    if (e.sym == "bot") return p_absurd();
    if (defs.file) {
      auto it = defs.file->props.find(e.sym);
      if (it != defs.file->props.end()) {
        if (!it->second.params.empty())
          fail_at(e, "proposition '" + e.sym + "' expects arguments");
        return it->second.body;
      }
    }
    throw UnboundNameError("unknown proposition '" + e.sym + "' at " + std::to_string(e.line) +
                           ":" + std::to_string(e.col));
  }
  if (e.kind != SExpr::List || e.items.empty() || e.items[0].kind != SExpr::Sym)
    fail_at(e, "expected a proposition");
  const std::string& h = e.items[0].sym;
  if (h == "atom") return p_atom(parse_type_sx(arg(e, 1, "atom", 2), scope, defs));
  if (h == "and")
    return p_and(parse_prop_sx(arg(e, 1, "and", 3), scope, defs),
                 parse_prop_sx(arg(e, 2, "and", 3), scope, defs));
  if (h == "or")
    return p_or(parse_prop_sx(arg(e, 1, "or", 3), scope, defs),
                parse_prop_sx(arg(e, 2, "or", 3), scope, defs));
  if (h == "imp")
    return p_implies(parse_prop_sx(arg(e, 1, "imp", 3), scope, defs),
                     parse_prop_sx(arg(e, 2, "imp", 3), scope, defs));
  if (h == "forall" || h == "exists") {
    TypePtr dom = parse_type_sx(arg(e, 1, h.c_str(), 3), scope, defs);
    PropPtr body = parse_binder(e.items[2], scope, h.c_str(), [&](const SExpr& b) {
      return parse_prop_sx(b, scope, defs);
    });
    return h == "forall" ? p_forall(dom, body) : p_exists(dom, body);
  }
  // template application (Name t1 ... tk)
  if (defs.file) {
    auto it = defs.file->props.find(h);
    if (it != defs.file->props.end()) {
      const PropTemplate& tpl = it->second;
      if (e.items.size() != tpl.params.size() + 1)
        fail_at(e, "proposition '" + h + "' takes " + std::to_string(tpl.params.size()) +
                       " arguments");
      std::vector<TermPtr> args;
      for (size_t i = 1; i < e.items.size(); ++i)
        args.push_back(parse_term_sx(e.items[i], scope, defs));
      return instantiate_template(tpl, args);
    }
  }
  fail_at(e, "unknown proposition form '" + h + "'");
}

// ---------------------------------------------------------------------------
// Proofs

ProofPtr parse_proof_sx(const SExpr& e, Scope& scope, const Defs& defs) {
  if (e.kind == SExpr::Sym) {
    if (defs.file) {
      auto it = defs.file->proofs.find(e.sym);
      if (it != defs.file->proofs.end()) return it->second;
    }
    throw UnboundNameError("unknown proof '" + e.sym + "' at " + std::to_string(e.line) + ":" +
                           std::to_string(e.col));
  }
  if (e.kind != SExpr::List || e.items.empty() || e.items[0].kind != SExpr::Sym)
    fail_at(e, "expected a proof");
  const std::string& h = e.items[0].sym;
  auto prop = [&](const SExpr& x) { return parse_prop_sx(x, scope, defs); };
  auto type = [&](const SExpr& x) { return parse_type_sx(x, scope, defs); };
  auto term = [&](const SExpr& x) { return parse_term_sx(x, scope, defs); };
  auto pf = [&](const SExpr& x) { return parse_proof_sx(x, scope, defs); };

  if (h == "id") return proof({PrIdentity{prop(arg(e, 1, "id", 2))}});
  if (h == "cut") return proof({PrCut{pf(arg(e, 1, "cut", 3)), pf(arg(e, 2, "cut", 3))}});
  if (h == "inhabited-atom")
    return proof({PrInhabitedAtom{prop(arg(e, 1, "inhabited-atom", 4)),
                                  type(arg(e, 2, "inhabited-atom", 4)),
                                  term(arg(e, 3, "inhabited-atom", 4))}});
  if (h == "and-elim-l")
    return proof({PrAndElimL{prop(arg(e, 1, "and-elim-l", 3)), prop(arg(e, 2, "and-elim-l", 3))}});
  if (h == "and-elim-r")
    return proof({PrAndElimR{prop(arg(e, 1, "and-elim-r", 3)), prop(arg(e, 2, "and-elim-r", 3))}});
  if (h == "and-intro")
    return proof({PrAndIntro{pf(arg(e, 1, "and-intro", 3)), pf(arg(e, 2, "and-intro", 3))}});
  if (h == "weak-absurd") return proof({PrWeakAbsurd{type(arg(e, 1, "weak-absurd", 2))}});
  if (h == "or-intro-l")
    return proof({PrOrIntroL{prop(arg(e, 1, "or-intro-l", 3)), prop(arg(e, 2, "or-intro-l", 3))}});
  if (h == "or-intro-r")
    return proof({PrOrIntroR{prop(arg(e, 1, "or-intro-r", 3)), prop(arg(e, 2, "or-intro-r", 3))}});
  if (h == "or-elim")
    return proof({PrOrElim{pf(arg(e, 1, "or-elim", 3)), pf(arg(e, 2, "or-elim", 3))}});
  if (h == "imp-intro") return proof({PrImpIntro{pf(arg(e, 1, "imp-intro", 2))}});
  if (h == "imp-elim") return proof({PrImpElim{pf(arg(e, 1, "imp-elim", 2))}});
  if (h == "forall-intro") {
    TypePtr dom = type(arg(e, 1, "forall-intro", 3));
    ProofPtr premise = parse_binder(e.items[2], scope, "forall-intro", pf);
    return proof({PrForallIntro{dom, premise}});
  }
  if (h == "forall-elim")
    return proof({PrForallElim{pf(arg(e, 1, "forall-elim", 3)), term(arg(e, 2, "forall-elim", 3))}});
  if (h == "exists-elim") {
    TypePtr dom = type(arg(e, 1, "exists-elim", 3));
    ProofPtr premise = parse_binder(e.items[2], scope, "exists-elim", pf);
    return proof({PrExistsElim{dom, premise}});
  }
  if (h == "exists-intro")
    return proof({PrExistsIntro{pf(arg(e, 2, "exists-intro", 3)), term(arg(e, 1, "exists-intro", 3))}});
  if (h == "exists-right") {
    // sugar: A |- P(t) gives A |- ex(S,P), via cut with the inversion rule
    if (e.items.size() != 4) fail_at(e, "'exists-right' takes a witness, the existential and a premise");
    TermPtr t = term(e.items[1]);
    PropPtr ex = prop(e.items[2]);
    if (!std::holds_alternative<PExists>(ex->v))
      fail_at(e.items[2], "'exists-right' needs an existential proposition");
    ProofPtr premise = pf(e.items[3]);
    ProofPtr intro = proof({PrExistsIntro{proof({PrIdentity{ex}}), t}});
    return proof({PrCut{premise, intro}});
  }
  if (h == "full-absurd") return proof({PrFullAbsurd{prop(arg(e, 1, "full-absurd", 2))}});
  if (h == "induction") {
    PropPtr ante = prop(arg(e, 1, "induction", 3));
    PropPtr fam = parse_binder(e.items[2], scope, "induction", [&](const SExpr& b) {
      return parse_prop_sx(b, scope, defs);
    });
    return proof({PrInduction{ante, PropFamily{fam}}});
  }
  if (h == "choice") {
    if (e.items.size() != 5 && e.items.size() != 6)
      fail_at(e, "'choice' takes an antecedent, two domains, a binary family and an optional fallback");
    PropPtr ante = prop(e.items[1]);
    TypePtr dom = type(e.items[2]);
    TypePtr cod = type(e.items[3]);
    PropPtr body = parse_binder(e.items[4], scope, "choice", [&](const SExpr& inner) {
      return parse_binder(inner, scope, "choice", [&](const SExpr& b) {
        return parse_prop_sx(b, scope, defs);
      });
    });
    TermPtr fallback = e.items.size() == 6 ? term(e.items[5]) : nullptr;
    return proof({PrChoice{ante, dom, cod, body, fallback}});
  }
  if (h == "trivial-transfer")
    return proof({PrTrivialTransfer{prop(arg(e, 1, "trivial-transfer", 3)),
                                    prop(arg(e, 2, "trivial-transfer", 3))}});
  fail_at(e, "unknown proof rule '" + h + "'");
}

// ---------------------------------------------------------------------------
// Files

std::vector<SExpr> read_all(const std::string& text) {
  std::vector<Token> toks = lex(text);
  Reader r{toks};
  std::vector<SExpr> out;
  while (r.peek().kind != Tok::End) out.push_back(r.read());
  return out;
}

void declare(SourceFile& f, const std::string& name, const SExpr& at) {
  if (f.types.count(name) || f.terms.count(name) || f.props.count(name) || f.proofs.count(name))
    fail_at(at, "duplicate name '" + name + "'");
  if (is_reserved(name)) fail_at(at, "'" + name + "' is reserved");
}
}  // namespace

SourceFile parse_file(const std::string& text) {
  SourceFile f;
  Defs defs{&f};
  for (const SExpr& e : read_all(text)) {
    if (e.kind != SExpr::List || e.items.empty() || e.items[0].kind != SExpr::Sym)
      fail_at(e, "expected a top-level declaration");
    const std::string& h = e.items[0].sym;
    Scope scope;
    if (h == "type") {
      const SExpr& n = arg(e, 1, "type", 3);
      if (n.kind != SExpr::Sym) fail_at(n, "type name must be a symbol");
      declare(f, n.sym, n);
      f.types[n.sym] = parse_type_sx(e.items[2], scope, defs);
      continue;
    }
    if (h == "def") {
      const SExpr& n = arg(e, 1, "def", 3);
      if (n.kind != SExpr::Sym) fail_at(n, "definition name must be a symbol");
      declare(f, n.sym, n);
      f.terms[n.sym] = parse_term_sx(e.items[2], scope, defs);
      continue;
    }
    if (h == "prop") {
      const SExpr& n = arg(e, 1, "prop", 3);
      PropTemplate tpl;
      std::string name;
      if (n.kind == SExpr::Sym) {
        name = n.sym;
      } else if (n.kind == SExpr::List && !n.items.empty() && n.items[0].kind == SExpr::Sym) {
        name = n.items[0].sym;
        for (size_t i = 1; i < n.items.size(); ++i) {
          if (n.items[i].kind != SExpr::Sym) fail_at(n.items[i], "parameter must be a name");
          tpl.params.push_back(n.items[i].sym);
        }
      } else {
        fail_at(n, "proposition name must be a symbol or (name params...)");
      }
      declare(f, name, n);
      for (const auto& p : tpl.params) scope.names.push_back(p);
      tpl.body = parse_prop_sx(e.items[2], scope, defs);
      f.props[name] = std::move(tpl);
      continue;
    }
    if (h == "axioms") {
      if (e.items.size() < 3) fail_at(e, "'axioms' takes a name and at least one proposition");
      const SExpr& n = e.items[1];
      if (n.kind != SExpr::Sym) fail_at(n, "axiom bundle name must be a symbol");
      declare(f, n.sym, n);
      PropPtr combined = parse_prop_sx(e.items.back(), scope, defs);
      for (size_t i = e.items.size() - 1; i-- > 2;)
        combined = p_and(parse_prop_sx(e.items[i], scope, defs), combined);
      f.props[n.sym] = PropTemplate{{}, combined};
      continue;
    }
    if (h == "proof") {
      const SExpr& n = arg(e, 1, "proof", 3);
      if (n.kind != SExpr::Sym) fail_at(n, "proof name must be a symbol");
      declare(f, n.sym, n);
      f.proofs[n.sym] = parse_proof_sx(e.items[2], scope, defs);
      f.proof_order.push_back(n.sym);
      continue;
    }
    if (h == "extract") {
      const SExpr& n = arg(e, 1, "extract", 3);
      const SExpr& p = arg(e, 2, "extract", 3);
      if (n.kind != SExpr::Sym || p.kind != SExpr::Sym)
        fail_at(e, "'extract' takes two names");
      if (!f.proofs.count(p.sym))
        throw UnboundNameError("unknown proof '" + p.sym + "' in extract directive");
      f.extracts.push_back({n.sym, p.sym});
      continue;
    }
    if (h == "normalise") {
      if (e.items.size() != 4) fail_at(e, "'normalise' takes a name, a term and a type");
      const SExpr& n = e.items[1];
      if (n.kind != SExpr::Sym) fail_at(n, "name must be a symbol");
      f.normalises.push_back(
          {n.sym, parse_term_sx(e.items[2], scope, defs), parse_type_sx(e.items[3], scope, defs)});
      continue;
    }
    fail_at(e, "unknown declaration '" + h + "'");
  }
  return f;
}

static SExpr read_one(const std::string& text, const char* what) {
  std::vector<SExpr> all = read_all(text);
  if (all.size() != 1) throw SyntaxError(std::string("expected exactly one ") + what, 1, 1);
  return all[0];
}

TypePtr parse_type(const std::string& text) {
  Scope scope;
  Defs defs;
  return parse_type_sx(read_one(text, "type"), scope, defs);
}
PropPtr parse_prop(const std::string& text) {
  Scope scope;
  Defs defs;
  return parse_prop_sx(read_one(text, "proposition"), scope, defs);
}
TermPtr parse_term(const std::string& text) {
  Scope scope;
  Defs defs;
  return parse_term_sx(read_one(text, "term"), scope, defs);
}
ProofPtr parse_proof(const std::string& text) {
  Scope scope;
  Defs defs;
  return parse_proof_sx(read_one(text, "proof"), scope, defs);
}

}  // namespace mrx
