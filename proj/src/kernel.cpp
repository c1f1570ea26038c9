#include "mrx/kernel.hpp"

#include <algorithm>

namespace mrx {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

// ---------------------------------------------------------------------------
// Constructors

static TypePtr mk_ty(TypeExpr e) { return std::make_shared<TypeExpr>(std::move(e)); }
static TermPtr mk_tm(TermExpr e) { return std::make_shared<TermExpr>(std::move(e)); }
static Value mk_v(ValueExpr e) { return std::make_shared<ValueExpr>(std::move(e)); }
static NeutralPtr mk_n(NeutralExpr e) { return std::make_shared<NeutralExpr>(std::move(e)); }

TypePtr ty_empty() { static TypePtr t = mk_ty({TEmpty{}}); return t; }
TypePtr ty_unit() { static TypePtr t = mk_ty({TUnit{}}); return t; }
TypePtr ty_nat() { static TypePtr t = mk_ty({TNat{}}); return t; }
TypePtr ty_fin(uint64_t size) {
  if (size == 0) throw Error("Fin(0) is not a type; use empty");
  return mk_ty({TFin{size}});
}
TypePtr ty_sum(TypePtr l, TypePtr r) { return mk_ty({TSum{std::move(l), std::move(r)}}); }
TypePtr ty_prod(TypePtr a, TypePtr b) { return mk_ty({TProd{std::move(a), std::move(b)}}); }
TypePtr ty_fun(TypePtr dom, TypePtr cod) { return mk_ty({TFun{std::move(dom), std::move(cod)}}); }
TypePtr ty_pi(TypePtr dom, TypeFamily fam) { return mk_ty({TPi{std::move(dom), std::move(fam)}}); }
TypePtr ty_sigma(TypePtr dom, TypeFamily fam) { return mk_ty({TSigma{std::move(dom), std::move(fam)}}); }
TypePtr ty_holds(TermPtr cond) { return mk_ty({THolds{std::move(cond)}}); }

TermPtr tm_var(size_t i) { return mk_tm({TmVar{i}}); }
TermPtr tm_lam(TermPtr body) { return mk_tm({TmLam{std::move(body)}}); }
TermPtr tm_app(TermPtr f, TermPtr a) { return mk_tm({TmApp{std::move(f), std::move(a)}}); }
TermPtr tm_pair(TermPtr a, TermPtr b) { return mk_tm({TmPair{std::move(a), std::move(b)}}); }
TermPtr tm_fst(TermPtr t) { return mk_tm({TmFst{std::move(t)}}); }
TermPtr tm_snd(TermPtr t) { return mk_tm({TmSnd{std::move(t)}}); }
TermPtr tm_inl(TermPtr t) { return mk_tm({TmInl{std::move(t)}}); }
TermPtr tm_inr(TermPtr t) { return mk_tm({TmInr{std::move(t)}}); }
TermPtr tm_case(TermPtr s, TermPtr l, TermPtr r) {
  return mk_tm({TmCase{std::move(s), std::move(l), std::move(r)}});
}
TermPtr tm_natcase(TermPtr s, TermPtr z, TermPtr sc) {
  return mk_tm({TmNatCase{std::move(s), std::move(z), std::move(sc)}});
}
TermPtr tm_elt() { static TermPtr t = mk_tm({TmElt{}}); return t; }
TermPtr tm_zero() { static TermPtr t = mk_tm({TmZero{}}); return t; }
TermPtr tm_succ(TermPtr t) { return mk_tm({TmSucc{std::move(t)}}); }
TermPtr tm_nat(uint64_t n) {
  TermPtr t = tm_zero();
  for (uint64_t i = 0; i < n; ++i) t = tm_succ(t);
  return t;
}
TermPtr tm_rec(TypeFamily motive, TermPtr target, TermPtr base, TermPtr step) {
  return mk_tm({TmRec{std::move(motive), std::move(target), std::move(base), std::move(step)}});
}
TermPtr tm_fin(uint64_t index, uint64_t size) {
  if (index >= size) throw Error("fin literal out of range");
  return mk_tm({TmFinLit{index, size}});
}
TermPtr tm_prim(PrimOp op, TermPtr a, TermPtr b) {
  return mk_tm({TmPrim{op, std::move(a), std::move(b)}});
}
TermPtr tm_absurd(TermPtr t) { return mk_tm({TmAbsurd{std::move(t)}}); }
TermPtr tm_quoted(Value v) { return mk_tm({TmQuoted{std::move(v)}}); }

Value v_elt() { static Value v = mk_v({VElt{}}); return v; }
Value v_nat(uint64_t n) { return mk_v({VNat{n}}); }
Value v_fin(uint64_t index, uint64_t size) { return mk_v({VFin{index, size}}); }
Value v_bool(bool b) { return v_fin(b ? 1 : 0, 2); }
Value v_pair(Value a, Value b) { return mk_v({VPair{std::move(a), std::move(b)}}); }
Value v_inl(Value v) { return mk_v({VInl{std::move(v)}}); }
Value v_inr(Value v) { return mk_v({VInr{std::move(v)}}); }
Value v_closure(EnvPtr env, TermPtr body) { return mk_v({VClosure{std::move(env), std::move(body)}}); }
Value v_table(std::vector<Value> keys, std::vector<Value> vals) {
  return mk_v({VTable{std::move(keys), std::move(vals)}});
}
Value v_native(std::string tag, std::function<Value(const Value&)> fn) {
  return mk_v({VNative{std::move(tag), std::move(fn)}});
}
Value v_neutral(NeutralPtr n) { return mk_v({VNeutral{std::move(n)}}); }
Value v_neutral_var(size_t level) { return v_neutral(mk_n({NVar{level}})); }

// ---------------------------------------------------------------------------
// Environments

EnvPtr env_push(const EnvPtr& env, Value v) {
  return std::make_shared<Env>(Env{std::move(v), env});
}
const Value& env_get(const EnvPtr& env, size_t index) {
  const Env* e = env.get();
  while (e) {
    if (index == 0) return e->head;
    --index;
    e = e->tail.get();
  }
  throw UnboundVariable("unbound variable (environment too short)");
}
size_t env_size(const EnvPtr& env) {
  size_t n = 0;
  for (const Env* e = env.get(); e; e = e->tail.get()) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Shifting and substitution

TermPtr shift_term(const TermPtr& t, int64_t d, size_t cutoff) {
  if (d == 0) return t;
  return std::visit(
      overloaded{
          [&](const TmVar& v) -> TermPtr {
            if (v.index < cutoff) return t;
            return tm_var(static_cast<size_t>(static_cast<int64_t>(v.index) + d));
          },
          [&](const TmLam& l) { return tm_lam(shift_term(l.body, d, cutoff + 1)); },
          [&](const TmApp& a) { return tm_app(shift_term(a.fn, d, cutoff), shift_term(a.arg, d, cutoff)); },
          [&](const TmPair& p) { return tm_pair(shift_term(p.first, d, cutoff), shift_term(p.second, d, cutoff)); },
          [&](const TmFst& f) { return tm_fst(shift_term(f.t, d, cutoff)); },
          [&](const TmSnd& s) { return tm_snd(shift_term(s.t, d, cutoff)); },
          [&](const TmInl& i) { return tm_inl(shift_term(i.t, d, cutoff)); },
          [&](const TmInr& i) { return tm_inr(shift_term(i.t, d, cutoff)); },
          [&](const TmCase& c) {
            return tm_case(shift_term(c.scrut, d, cutoff), shift_term(c.left, d, cutoff + 1),
                           shift_term(c.right, d, cutoff + 1));
          },
          [&](const TmNatCase& c) {
            return tm_natcase(shift_term(c.scrut, d, cutoff), shift_term(c.zero, d, cutoff),
                              shift_term(c.succ, d, cutoff + 1));
          },
          [&](const TmElt&) { return t; },
          [&](const TmZero&) { return t; },
          [&](const TmSucc& s) { return tm_succ(shift_term(s.t, d, cutoff)); },
          [&](const TmRec& r) {
            TypeFamily m = r.motive;
            if (!m.computed()) m = TypeFamily(shift_type(m.body, d, cutoff + 1));
            return tm_rec(std::move(m), shift_term(r.target, d, cutoff), shift_term(r.base, d, cutoff),
                          shift_term(r.step, d, cutoff));
          },
          [&](const TmFinLit&) { return t; },
          [&](const TmPrim& p) {
            return tm_prim(p.op, shift_term(p.a, d, cutoff), p.b ? shift_term(p.b, d, cutoff) : nullptr);
          },
          [&](const TmAbsurd& a) { return tm_absurd(shift_term(a.t, d, cutoff)); },
          [&](const TmQuoted&) { return t; },
      },
      t->v);
}

TypePtr shift_type(const TypePtr& t, int64_t d, size_t cutoff) {
  if (d == 0) return t;
  return std::visit(
      overloaded{
          [&](const TEmpty&) { return t; },
          [&](const TUnit&) { return t; },
          [&](const TNat&) { return t; },
          [&](const TFin&) { return t; },
          [&](const TSum& s) { return ty_sum(shift_type(s.left, d, cutoff), shift_type(s.right, d, cutoff)); },
          [&](const TProd& p) { return ty_prod(shift_type(p.first, d, cutoff), shift_type(p.second, d, cutoff)); },
          [&](const TFun& f) { return ty_fun(shift_type(f.dom, d, cutoff), shift_type(f.cod, d, cutoff)); },
          [&](const TPi& p) {
            TypeFamily fam = p.fam;
            if (!fam.computed()) fam = TypeFamily(shift_type(fam.body, d, cutoff + 1));
            return ty_pi(shift_type(p.dom, d, cutoff), std::move(fam));
          },
          [&](const TSigma& s) {
            TypeFamily fam = s.fam;
            if (!fam.computed()) fam = TypeFamily(shift_type(fam.body, d, cutoff + 1));
            return ty_sigma(shift_type(s.dom, d, cutoff), std::move(fam));
          },
          [&](const THolds& h) { return ty_holds(shift_term(h.cond, d, cutoff)); },
      },
      t->v);
}

// Generic single-variable substitution. When `remove_binder` is set this is
// the usual instantiation (indices above the cutoff drop by one); otherwise
// variable `cutoff` is replaced and the depth is preserved.
static TermPtr subst_term(const TermPtr& t, const TermPtr& arg, size_t cutoff, bool remove_binder);
static TypePtr subst_type(const TypePtr& t, const TermPtr& arg, size_t cutoff, bool remove_binder);

static TermPtr subst_term(const TermPtr& t, const TermPtr& arg, size_t cutoff, bool remove_binder) {
  return std::visit(
      overloaded{
          [&](const TmVar& v) -> TermPtr {
            if (v.index == cutoff) return shift_term(arg, static_cast<int64_t>(cutoff));
            if (remove_binder && v.index > cutoff) return tm_var(v.index - 1);
            return t;
          },
          [&](const TmLam& l) { return tm_lam(subst_term(l.body, arg, cutoff + 1, remove_binder)); },
          [&](const TmApp& a) {
            return tm_app(subst_term(a.fn, arg, cutoff, remove_binder),
                          subst_term(a.arg, arg, cutoff, remove_binder));
          },
          [&](const TmPair& p) {
            return tm_pair(subst_term(p.first, arg, cutoff, remove_binder),
                           subst_term(p.second, arg, cutoff, remove_binder));
          },
          [&](const TmFst& f) { return tm_fst(subst_term(f.t, arg, cutoff, remove_binder)); },
          [&](const TmSnd& s) { return tm_snd(subst_term(s.t, arg, cutoff, remove_binder)); },
          [&](const TmInl& i) { return tm_inl(subst_term(i.t, arg, cutoff, remove_binder)); },
          [&](const TmInr& i) { return tm_inr(subst_term(i.t, arg, cutoff, remove_binder)); },
          [&](const TmCase& c) {
            return tm_case(subst_term(c.scrut, arg, cutoff, remove_binder),
                           subst_term(c.left, arg, cutoff + 1, remove_binder),
                           subst_term(c.right, arg, cutoff + 1, remove_binder));
          },
          [&](const TmNatCase& c) {
            return tm_natcase(subst_term(c.scrut, arg, cutoff, remove_binder),
                              subst_term(c.zero, arg, cutoff, remove_binder),
                              subst_term(c.succ, arg, cutoff + 1, remove_binder));
          },
          [&](const TmElt&) { return t; },
          [&](const TmZero&) { return t; },
          [&](const TmSucc& s) { return tm_succ(subst_term(s.t, arg, cutoff, remove_binder)); },
          [&](const TmRec& r) {
            TypeFamily m = r.motive;
            if (!m.computed()) m = TypeFamily(subst_type(m.body, arg, cutoff + 1, remove_binder));
            return tm_rec(std::move(m), subst_term(r.target, arg, cutoff, remove_binder),
                          subst_term(r.base, arg, cutoff, remove_binder),
                          subst_term(r.step, arg, cutoff, remove_binder));
          },
          [&](const TmFinLit&) { return t; },
          [&](const TmPrim& p) {
            return tm_prim(p.op, subst_term(p.a, arg, cutoff, remove_binder),
                           p.b ? subst_term(p.b, arg, cutoff, remove_binder) : nullptr);
          },
          [&](const TmAbsurd& a) { return tm_absurd(subst_term(a.t, arg, cutoff, remove_binder)); },
          [&](const TmQuoted&) { return t; },
      },
      t->v);
}

static TypePtr subst_type(const TypePtr& t, const TermPtr& arg, size_t cutoff, bool remove_binder) {
  return std::visit(
      overloaded{
          [&](const TEmpty&) { return t; },
          [&](const TUnit&) { return t; },
          [&](const TNat&) { return t; },
          [&](const TFin&) { return t; },
          [&](const TSum& s) {
            return ty_sum(subst_type(s.left, arg, cutoff, remove_binder),
                          subst_type(s.right, arg, cutoff, remove_binder));
          },
          [&](const TProd& p) {
            return ty_prod(subst_type(p.first, arg, cutoff, remove_binder),
                           subst_type(p.second, arg, cutoff, remove_binder));
          },
          [&](const TFun& f) {
            return ty_fun(subst_type(f.dom, arg, cutoff, remove_binder),
                          subst_type(f.cod, arg, cutoff, remove_binder));
          },
          [&](const TPi& p) {
            TypeFamily fam = p.fam;
            if (!fam.computed()) fam = TypeFamily(subst_type(fam.body, arg, cutoff + 1, remove_binder));
            return ty_pi(subst_type(p.dom, arg, cutoff, remove_binder), std::move(fam));
          },
          [&](const TSigma& s) {
            TypeFamily fam = s.fam;
            if (!fam.computed()) fam = TypeFamily(subst_type(fam.body, arg, cutoff + 1, remove_binder));
            return ty_sigma(subst_type(s.dom, arg, cutoff, remove_binder), std::move(fam));
          },
          [&](const THolds& h) { return ty_holds(subst_term(h.cond, arg, cutoff, remove_binder)); },
      },
      t->v);
}

TermPtr open_term(const TermPtr& body, const TermPtr& arg) { return subst_term(body, arg, 0, true); }
TypePtr open_type(const TypePtr& body, const TermPtr& arg) { return subst_type(body, arg, 0, true); }
TermPtr replace0_term(const TermPtr& body, const TermPtr& arg) { return subst_term(body, arg, 0, false); }
TypePtr replace0_type(const TypePtr& body, const TermPtr& arg) { return subst_type(body, arg, 0, false); }
TermPtr subst_term_at(const TermPtr& t, const TermPtr& arg, size_t cutoff, bool remove_binder) {
  return subst_term(t, arg, cutoff, remove_binder);
}
TypePtr subst_type_at(const TypePtr& t, const TermPtr& arg, size_t cutoff, bool remove_binder) {
  return subst_type(t, arg, cutoff, remove_binder);
}

bool term_mentions_var(const TermPtr& t, size_t index) {
  return std::visit(
      overloaded{
          [&](const TmVar& v) { return v.index == index; },
          [&](const TmLam& l) { return term_mentions_var(l.body, index + 1); },
          [&](const TmApp& a) { return term_mentions_var(a.fn, index) || term_mentions_var(a.arg, index); },
          [&](const TmPair& p) {
            return term_mentions_var(p.first, index) || term_mentions_var(p.second, index);
          },
          [&](const TmFst& f) { return term_mentions_var(f.t, index); },
          [&](const TmSnd& s) { return term_mentions_var(s.t, index); },
          [&](const TmInl& i) { return term_mentions_var(i.t, index); },
          [&](const TmInr& i) { return term_mentions_var(i.t, index); },
          [&](const TmCase& c) {
            return term_mentions_var(c.scrut, index) || term_mentions_var(c.left, index + 1) ||
                   term_mentions_var(c.right, index + 1);
          },
          [&](const TmNatCase& c) {
            return term_mentions_var(c.scrut, index) || term_mentions_var(c.zero, index) ||
                   term_mentions_var(c.succ, index + 1);
          },
          [&](const TmElt&) { return false; },
          [&](const TmZero&) { return false; },
          [&](const TmSucc& s) { return term_mentions_var(s.t, index); },
          [&](const TmRec& r) {
            bool m = !r.motive.computed() && type_mentions_var(r.motive.body, index + 1);
            return m || term_mentions_var(r.target, index) || term_mentions_var(r.base, index) ||
                   term_mentions_var(r.step, index);
          },
          [&](const TmFinLit&) { return false; },
          [&](const TmPrim& p) {
            return term_mentions_var(p.a, index) || (p.b && term_mentions_var(p.b, index));
          },
          [&](const TmAbsurd& a) { return term_mentions_var(a.t, index); },
          [&](const TmQuoted&) { return false; },
      },
      t->v);
}

bool type_mentions_var(const TypePtr& t, size_t index) {
  return std::visit(
      overloaded{
          [&](const TEmpty&) { return false; },
          [&](const TUnit&) { return false; },
          [&](const TNat&) { return false; },
          [&](const TFin&) { return false; },
          [&](const TSum& s) { return type_mentions_var(s.left, index) || type_mentions_var(s.right, index); },
          [&](const TProd& p) {
            return type_mentions_var(p.first, index) || type_mentions_var(p.second, index);
          },
          [&](const TFun& f) { return type_mentions_var(f.dom, index) || type_mentions_var(f.cod, index); },
          [&](const TPi& p) {
            bool b = !p.fam.computed() && type_mentions_var(p.fam.body, index + 1);
            return b || type_mentions_var(p.dom, index);
          },
          [&](const TSigma& s) {
            bool b = !s.fam.computed() && type_mentions_var(s.fam.body, index + 1);
            return b || type_mentions_var(s.dom, index);
          },
          [&](const THolds& h) { return term_mentions_var(h.cond, index); },
      },
      t->v);
}

TypePtr instantiate(const TypeFamily& fam, const Value& v, size_t depth) {
  if (fam.computed()) return fam.compute(v);
  return open_type(fam.body, quote(v, depth));
}

bool fun_like(const TypePtr& t, TypePtr* dom, TypeFamily* fam) {
  if (const auto* f = std::get_if<TFun>(&t->v)) {
    if (dom) *dom = f->dom;
    if (fam) *fam = TypeFamily(shift_type(f->cod, 1));
    return true;
  }
  if (const auto* p = std::get_if<TPi>(&t->v)) {
    if (dom) *dom = p->dom;
    if (fam) *fam = p->fam;
    return true;
  }
  return false;
}

bool pair_like(const TypePtr& t, TypePtr* first, TypeFamily* fam) {
  if (const auto* p = std::get_if<TProd>(&t->v)) {
    if (first) *first = p->first;
    if (fam) *fam = TypeFamily(shift_type(p->second, 1));
    return true;
  }
  if (const auto* s = std::get_if<TSigma>(&t->v)) {
    if (first) *first = s->dom;
    if (fam) *fam = s->fam;
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Evaluation

static Value do_natcase(const Value& s, const Clo& z, const Clo& sc, EvalContext& ctx);
static Value do_rec(const TypeFamily& motive, const EnvPtr& menv, const Value& target,
                    const Value& base, const Value& step, EvalContext& ctx);

Value eval(const TermPtr& t, const EnvPtr& env, EvalContext& ctx) {
  ctx.tick();
  return std::visit(
      overloaded{
          [&](const TmVar& v) -> Value { return env_get(env, v.index); },
          [&](const TmLam&) -> Value { return v_closure(env, t); },
          [&](const TmApp& a) -> Value {
            Value f = eval(a.fn, env, ctx);
            Value x = eval(a.arg, env, ctx);
            return apply(f, x, ctx);
          },
          [&](const TmPair& p) -> Value {
            return v_pair(eval(p.first, env, ctx), eval(p.second, env, ctx));
          },
          [&](const TmFst& f) -> Value { return vfst(eval(f.t, env, ctx), ctx); },
          [&](const TmSnd& s) -> Value { return vsnd(eval(s.t, env, ctx), ctx); },
          [&](const TmInl& i) -> Value { return v_inl(eval(i.t, env, ctx)); },
          [&](const TmInr& i) -> Value { return v_inr(eval(i.t, env, ctx)); },
          [&](const TmCase& c) -> Value {
            Value s = eval(c.scrut, env, ctx);
            if (const auto* l = std::get_if<VInl>(&s->v))
              return eval(c.left, env_push(env, l->v), ctx);
            if (const auto* r = std::get_if<VInr>(&s->v))
              return eval(c.right, env_push(env, r->v), ctx);
            if (const auto* n = std::get_if<VNeutral>(&s->v))
              return v_neutral(mk_n({NCase{n->n, Clo{env, c.left}, Clo{env, c.right}}}));
            throw StuckTerm("case on a non-sum value");
          },
          [&](const TmNatCase& c) -> Value {
            Value s = eval(c.scrut, env, ctx);
            return do_natcase(s, Clo{env, c.zero}, Clo{env, c.succ}, ctx);
          },
          [&](const TmElt&) -> Value { return v_elt(); },
          [&](const TmZero&) -> Value { return v_nat(0); },
          [&](const TmSucc& s) -> Value {
            Value n = eval(s.t, env, ctx);
            if (const auto* nn = std::get_if<VNat>(&n->v)) return v_nat(nn->n + 1);
            if (const auto* ns = std::get_if<VNatSucc>(&n->v))
              return mk_v({VNatSucc{ns->offset + 1, ns->base}});
            if (const auto* nu = std::get_if<VNeutral>(&n->v))
              return mk_v({VNatSucc{1, nu->n}});
            throw StuckTerm("succ of a non-natural");
          },
          [&](const TmRec& r) -> Value {
            Value tgt = eval(r.target, env, ctx);
            Value base = eval(r.base, env, ctx);
            Value step = eval(r.step, env, ctx);
            return do_rec(r.motive, env, tgt, base, step, ctx);
          },
          [&](const TmFinLit& f) -> Value { return v_fin(f.index, f.size); },
          [&](const TmPrim& p) -> Value {
            Value a = eval(p.a, env, ctx);
            Value b = p.b ? eval(p.b, env, ctx) : nullptr;
            auto num = [](const Value& v, uint64_t* out) {
              if (const auto* n = std::get_if<VNat>(&v->v)) { *out = n->n; return true; }
              if (const auto* f = std::get_if<VFin>(&v->v)) { *out = f->index; return true; }
              return false;
            };
            uint64_t x = 0, y = 0;
            switch (p.op) {
              case PrimOp::Add:
                if (num(a, &x) && num(b, &y)) return v_nat(x + y);
                break;
              case PrimOp::Eq:
                if (num(a, &x) && num(b, &y)) return v_bool(x == y);
                break;
              case PrimOp::Le:
                if (num(a, &x) && num(b, &y)) return v_bool(x <= y);
                break;
              case PrimOp::BAnd:
                if (num(a, &x) && num(b, &y)) return v_bool(x == 1 && y == 1);
                break;
              case PrimOp::BOr:
                if (num(a, &x) && num(b, &y)) return v_bool(x == 1 || y == 1);
                break;
              case PrimOp::BNot:
                if (num(a, &x)) return v_bool(x == 0);
                break;
            }
            bool neutral_arg = std::holds_alternative<VNeutral>(a->v) ||
                               std::holds_alternative<VNatSucc>(a->v) ||
                               (b && (std::holds_alternative<VNeutral>(b->v) ||
                                      std::holds_alternative<VNatSucc>(b->v)));
            if (neutral_arg) return v_neutral(mk_n({NPrim{p.op, a, b}}));
            throw StuckTerm("primitive applied to non-numeric values");
          },
          [&](const TmAbsurd& a) -> Value {
            Value x = eval(a.t, env, ctx);
            if (const auto* n = std::get_if<VNeutral>(&x->v))
              return v_neutral(mk_n({NAbsurd{v_neutral(n->n)}}));
            throw EmptyElimination("absurdity eliminator reached with a value");
          },
          [&](const TmQuoted& q) -> Value { return q.v; },
      },
      t->v);
}

static Value do_natcase(const Value& s, const Clo& z, const Clo& sc, EvalContext& ctx) {
  if (const auto* n = std::get_if<VNat>(&s->v)) {
    if (n->n == 0) return eval(z.body, z.env, ctx);
    return eval(sc.body, env_push(sc.env, v_nat(n->n - 1)), ctx);
  }
  if (const auto* ns = std::get_if<VNatSucc>(&s->v)) {
    Value pred = ns->offset == 1 ? v_neutral(ns->base) : mk_v({VNatSucc{ns->offset - 1, ns->base}});
    return eval(sc.body, env_push(sc.env, pred), ctx);
  }
  if (const auto* nu = std::get_if<VNeutral>(&s->v))
    return v_neutral(mk_n({NNatCase{nu->n, z, sc}}));
  throw StuckTerm("case on a non-natural");
}

static Value do_rec(const TypeFamily& motive, const EnvPtr& menv, const Value& target,
                    const Value& base, const Value& step, EvalContext& ctx) {
  if (const auto* n = std::get_if<VNat>(&target->v)) {
    Value acc = base;
    for (uint64_t i = 0; i < n->n; ++i) {
      ctx.tick();
      acc = apply(apply(step, v_nat(i), ctx), acc, ctx);
    }
    return acc;
  }
  if (const auto* ns = std::get_if<VNatSucc>(&target->v)) {
    // unfold the known successors down to the neutral core
    Value core = v_neutral(ns->base);
    Value acc = v_neutral(mk_n({NRec{motive, menv, core, base, step}}));
    for (uint64_t i = 0; i < ns->offset; ++i) {
      ctx.tick();
      Value idx = i == 0 ? core : mk_v({VNatSucc{i, ns->base}});
      acc = apply(apply(step, idx, ctx), acc, ctx);
    }
    return acc;
  }
  if (std::holds_alternative<VNeutral>(target->v))
    return v_neutral(mk_n({NRec{motive, menv, target, base, step}}));
  throw StuckTerm("rec on a non-natural");
}

Value apply(const Value& f, const Value& arg, EvalContext& ctx) {
  if (const auto* c = std::get_if<VClosure>(&f->v)) {
    const auto* lam = std::get_if<TmLam>(&c->body->v);
    if (!lam) throw StuckTerm("closure body is not a lambda");
    return eval(lam->body, env_push(c->env, arg), ctx);
  }
  if (const auto* n = std::get_if<VNative>(&f->v)) return n->fn(arg);
  if (const auto* t = std::get_if<VTable>(&f->v)) {
    for (size_t i = 0; i < t->keys.size(); ++i)
      if (value_equal(t->keys[i], arg)) return t->vals[i];
    throw StuckTerm("graph function applied outside its domain");
  }
  if (const auto* n = std::get_if<VNeutral>(&f->v))
    return v_neutral(mk_n({NApp{n->n, arg}}));
  throw StuckTerm("application of a non-function value");
}

Value vfst(const Value& v, EvalContext& ctx) {
  (void)ctx;
  if (const auto* p = std::get_if<VPair>(&v->v)) return p->first;
  if (const auto* n = std::get_if<VNeutral>(&v->v)) return v_neutral(mk_n({NFst{n->n}}));
  throw StuckTerm("first projection of a non-pair");
}
Value vsnd(const Value& v, EvalContext& ctx) {
  (void)ctx;
  if (const auto* p = std::get_if<VPair>(&v->v)) return p->second;
  if (const auto* n = std::get_if<VNeutral>(&v->v)) return v_neutral(mk_n({NSnd{n->n}}));
  throw StuckTerm("second projection of a non-pair");
}

Value eval(const TermPtr& t, const EnvPtr& env) {
  EvalContext ctx;
  return eval(t, env, ctx);
}
Value apply(const Value& f, const Value& arg) {
  EvalContext ctx;
  return apply(f, arg, ctx);
}
Value vfst(const Value& v) {
  EvalContext ctx;
  return vfst(v, ctx);
}
Value vsnd(const Value& v) {
  EvalContext ctx;
  return vsnd(v, ctx);
}

// ---------------------------------------------------------------------------
// Readback

static TermPtr quote_neutral(const NeutralPtr& n, size_t depth);

// close an open body over `env`, keeping `binders` variables bound
static TermPtr close_term(const TermPtr& t, const EnvPtr& env, size_t binders, size_t depth) {
  return std::visit(
      overloaded{
          [&](const TmVar& v) -> TermPtr {
            if (v.index < binders) return t;
            return shift_term(quote(env_get(env, v.index - binders), depth), static_cast<int64_t>(binders));
          },
          [&](const TmLam& l) { return tm_lam(close_term(l.body, env, binders + 1, depth)); },
          [&](const TmApp& a) {
            return tm_app(close_term(a.fn, env, binders, depth), close_term(a.arg, env, binders, depth));
          },
          [&](const TmPair& p) {
            return tm_pair(close_term(p.first, env, binders, depth),
                           close_term(p.second, env, binders, depth));
          },
          [&](const TmFst& f) { return tm_fst(close_term(f.t, env, binders, depth)); },
          [&](const TmSnd& s) { return tm_snd(close_term(s.t, env, binders, depth)); },
          [&](const TmInl& i) { return tm_inl(close_term(i.t, env, binders, depth)); },
          [&](const TmInr& i) { return tm_inr(close_term(i.t, env, binders, depth)); },
          [&](const TmCase& c) {
            return tm_case(close_term(c.scrut, env, binders, depth),
                           close_term(c.left, env, binders + 1, depth),
                           close_term(c.right, env, binders + 1, depth));
          },
          [&](const TmNatCase& c) {
            return tm_natcase(close_term(c.scrut, env, binders, depth),
                              close_term(c.zero, env, binders, depth),
                              close_term(c.succ, env, binders + 1, depth));
          },
          [&](const TmElt&) { return t; },
          [&](const TmZero&) { return t; },
          [&](const TmSucc& s) { return tm_succ(close_term(s.t, env, binders, depth)); },
          [&](const TmRec& r) {
            TypeFamily m = r.motive;
            if (!m.computed()) m = TypeFamily(close_type(m.body, env, binders + 1, depth));
            return tm_rec(std::move(m), close_term(r.target, env, binders, depth),
                          close_term(r.base, env, binders, depth),
                          close_term(r.step, env, binders, depth));
          },
          [&](const TmFinLit&) { return t; },
          [&](const TmPrim& p) {
            return tm_prim(p.op, close_term(p.a, env, binders, depth),
                           p.b ? close_term(p.b, env, binders, depth) : nullptr);
          },
          [&](const TmAbsurd& a) { return tm_absurd(close_term(a.t, env, binders, depth)); },
          [&](const TmQuoted&) { return t; },
      },
      t->v);
}

TypePtr close_type(const TypePtr& t, const EnvPtr& env, size_t binders, size_t depth) {
  return std::visit(
      overloaded{
          [&](const TEmpty&) { return t; },
          [&](const TUnit&) { return t; },
          [&](const TNat&) { return t; },
          [&](const TFin&) { return t; },
          [&](const TSum& s) {
            return ty_sum(close_type(s.left, env, binders, depth), close_type(s.right, env, binders, depth));
          },
          [&](const TProd& p) {
            return ty_prod(close_type(p.first, env, binders, depth),
                           close_type(p.second, env, binders, depth));
          },
          [&](const TFun& f) {
            return ty_fun(close_type(f.dom, env, binders, depth), close_type(f.cod, env, binders, depth));
          },
          [&](const TPi& p) {
            TypeFamily fam = p.fam;
            if (!fam.computed()) fam = TypeFamily(close_type(fam.body, env, binders + 1, depth));
            return ty_pi(close_type(p.dom, env, binders, depth), std::move(fam));
          },
          [&](const TSigma& s) {
            TypeFamily fam = s.fam;
            if (!fam.computed()) fam = TypeFamily(close_type(fam.body, env, binders + 1, depth));
            return ty_sigma(close_type(s.dom, env, binders, depth), std::move(fam));
          },
          [&](const THolds& h) { return ty_holds(close_term(h.cond, env, binders, depth)); },
      },
      t->v);
}

TermPtr quote(const Value& v, size_t depth) {
  return std::visit(
      overloaded{
          [&](const VElt&) { return tm_elt(); },
          [&](const VNat& n) { return tm_nat(n.n); },
          [&](const VNatSucc& s) {
            TermPtr t = quote_neutral(s.base, depth);
            for (uint64_t i = 0; i < s.offset; ++i) t = tm_succ(t);
            return t;
          },
          [&](const VFin& f) { return tm_fin(f.index, f.size); },
          [&](const VPair& p) { return tm_pair(quote(p.first, depth), quote(p.second, depth)); },
          [&](const VInl& i) { return tm_inl(quote(i.v, depth)); },
          [&](const VInr& i) { return tm_inr(quote(i.v, depth)); },
          [&](const VClosure& c) {
            EvalContext ctx;
            Value body = eval(std::get<TmLam>(c.body->v).body,
                              env_push(c.env, v_neutral_var(depth)), ctx);
            return tm_lam(quote(body, depth + 1));
          },
          [&](const VTable&) { return tm_quoted(v); },
          [&](const VNative&) { return tm_quoted(v); },
          [&](const VNeutral& n) { return quote_neutral(n.n, depth); },
      },
      v->v);
}

static TermPtr quote_clo(const Clo& c, size_t binders, size_t depth) {
  // the branch body evaluated under fresh neutrals for its binders
  EvalContext ctx;
  EnvPtr env = c.env;
  for (size_t i = 0; i < binders; ++i) env = env_push(env, v_neutral_var(depth + i));
  Value body = eval(c.body, env, ctx);
  return quote(body, depth + binders);
}

static TermPtr quote_neutral(const NeutralPtr& n, size_t depth) {
  return std::visit(
      overloaded{
          [&](const NVar& v) -> TermPtr {
            if (v.level >= depth) throw NonNormalisable("neutral variable escapes its scope");
            return tm_var(depth - 1 - v.level);
          },
          [&](const NApp& a) { return tm_app(quote_neutral(a.fn, depth), quote(a.arg, depth)); },
          [&](const NFst& f) { return tm_fst(quote_neutral(f.t, depth)); },
          [&](const NSnd& s) { return tm_snd(quote_neutral(s.t, depth)); },
          [&](const NCase& c) {
            return tm_case(quote_neutral(c.scrut, depth), quote_clo(c.left, 1, depth),
                           quote_clo(c.right, 1, depth));
          },
          [&](const NNatCase& c) {
            return tm_natcase(quote_neutral(c.scrut, depth), quote_clo(c.zero, 0, depth),
                              quote_clo(c.succ, 1, depth));
          },
          [&](const NRec& r) {
            TypeFamily m = r.motive;
            if (!m.computed()) m = TypeFamily(close_type(m.body, r.motive_env, 1, depth));
            return tm_rec(std::move(m), quote(r.target, depth), quote(r.base, depth),
                          quote(r.step, depth));
          },
          [&](const NPrim& p) {
            return tm_prim(p.op, quote(p.a, depth), p.b ? quote(p.b, depth) : nullptr);
          },
          [&](const NAbsurd& a) { return tm_absurd(quote(a.t, depth)); },
      },
      n->v);
}

// ---------------------------------------------------------------------------
// Equality

bool value_equal(const Value& a, const Value& b) {
  if (a == b) return true;
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      overloaded{
          [&](const VElt&) { return true; },
          [&](const VNat& x) { return x.n == std::get<VNat>(b->v).n; },
          [&](const VNatSucc&) { return false; },
          [&](const VFin& x) {
            const auto& y = std::get<VFin>(b->v);
            return x.index == y.index && x.size == y.size;
          },
          [&](const VPair& x) {
            const auto& y = std::get<VPair>(b->v);
            return value_equal(x.first, y.first) && value_equal(x.second, y.second);
          },
          [&](const VInl& x) { return value_equal(x.v, std::get<VInl>(b->v).v); },
          [&](const VInr& x) { return value_equal(x.v, std::get<VInr>(b->v).v); },
          [&](const VClosure&) { return false; },
          [&](const VTable& x) {
            const auto& y = std::get<VTable>(b->v);
            if (x.keys.size() != y.keys.size()) return false;
            for (size_t i = 0; i < x.keys.size(); ++i)
              if (!value_equal(x.keys[i], y.keys[i]) || !value_equal(x.vals[i], y.vals[i]))
                return false;
            return true;
          },
          [&](const VNative&) { return false; },
          [&](const VNeutral&) { return false; },
      },
      a->v);
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      overloaded{
          [&](const TmVar& x) { return x.index == std::get<TmVar>(b->v).index; },
          [&](const TmLam& x) { return term_equal(x.body, std::get<TmLam>(b->v).body); },
          [&](const TmApp& x) {
            const auto& y = std::get<TmApp>(b->v);
            return term_equal(x.fn, y.fn) && term_equal(x.arg, y.arg);
          },
          [&](const TmPair& x) {
            const auto& y = std::get<TmPair>(b->v);
            return term_equal(x.first, y.first) && term_equal(x.second, y.second);
          },
          [&](const TmFst& x) { return term_equal(x.t, std::get<TmFst>(b->v).t); },
          [&](const TmSnd& x) { return term_equal(x.t, std::get<TmSnd>(b->v).t); },
          [&](const TmInl& x) { return term_equal(x.t, std::get<TmInl>(b->v).t); },
          [&](const TmInr& x) { return term_equal(x.t, std::get<TmInr>(b->v).t); },
          [&](const TmCase& x) {
            const auto& y = std::get<TmCase>(b->v);
            return term_equal(x.scrut, y.scrut) && term_equal(x.left, y.left) &&
                   term_equal(x.right, y.right);
          },
          [&](const TmNatCase& x) {
            const auto& y = std::get<TmNatCase>(b->v);
            return term_equal(x.scrut, y.scrut) && term_equal(x.zero, y.zero) &&
                   term_equal(x.succ, y.succ);
          },
          [&](const TmElt&) { return true; },
          [&](const TmZero&) { return true; },
          [&](const TmSucc& x) { return term_equal(x.t, std::get<TmSucc>(b->v).t); },
          [&](const TmRec& x) {
            const auto& y = std::get<TmRec>(b->v);
            bool motives = !x.motive.computed() && !y.motive.computed() &&
                           type_equal(x.motive.body, y.motive.body);
            return motives && term_equal(x.target, y.target) && term_equal(x.base, y.base) &&
                   term_equal(x.step, y.step);
          },
          [&](const TmFinLit& x) {
            const auto& y = std::get<TmFinLit>(b->v);
            return x.index == y.index && x.size == y.size;
          },
          [&](const TmPrim& x) {
            const auto& y = std::get<TmPrim>(b->v);
            if (x.op != y.op) return false;
            if (!term_equal(x.a, y.a)) return false;
            if (!x.b && !y.b) return true;
            return x.b && y.b && term_equal(x.b, y.b);
          },
          [&](const TmAbsurd& x) { return term_equal(x.t, std::get<TmAbsurd>(b->v).t); },
          [&](const TmQuoted& x) { return value_equal(x.v, std::get<TmQuoted>(b->v).v); },
      },
      a->v);
}

// view a type as (dom, family) if it is any Pi/Fun; constant families are
// recognised so that Fun(A,B) equals Pi(A, const B)
static bool family_view(const TypePtr& t, bool pi, TypePtr* dom, TypePtr* body, bool* constant) {
  if (pi) {
    if (const auto* f = std::get_if<TFun>(&t->v)) {
      *dom = f->dom;
      *body = shift_type(f->cod, 1);
      *constant = true;
      return true;
    }
    if (const auto* p = std::get_if<TPi>(&t->v)) {
      if (p->fam.computed()) return false;
      *dom = p->dom;
      *body = p->fam.body;
      *constant = !type_mentions_var(p->fam.body, 0);
      return true;
    }
    return false;
  }
  if (const auto* pr = std::get_if<TProd>(&t->v)) {
    *dom = pr->first;
    *body = shift_type(pr->second, 1);
    *constant = true;
    return true;
  }
  if (const auto* s = std::get_if<TSigma>(&t->v)) {
    if (s->fam.computed()) return false;
    *dom = s->dom;
    *body = s->fam.body;
    *constant = !type_mentions_var(s->fam.body, 0);
    return true;
  }
  return false;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  for (bool pi : {true, false}) {
    TypePtr da, db, ba, bb;
    bool ca = false, cb = false;
    if (family_view(a, pi, &da, &ba, &ca) && family_view(b, pi, &db, &bb, &cb))
      return type_equal(da, db) && type_equal(ba, bb);
  }
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      overloaded{
          [&](const TEmpty&) { return true; },
          [&](const TUnit&) { return true; },
          [&](const TNat&) { return true; },
          [&](const TFin& x) { return x.size == std::get<TFin>(b->v).size; },
          [&](const TSum& x) {
            const auto& y = std::get<TSum>(b->v);
            return type_equal(x.left, y.left) && type_equal(x.right, y.right);
          },
          [&](const TProd&) { return false; },  // handled by family_view
          [&](const TFun&) { return false; },
          [&](const TPi&) { return false; },
          [&](const TSigma&) { return false; },
          [&](const THolds& x) { return term_equal(x.cond, std::get<THolds>(b->v).cond); },
      },
      a->v);
}

// ---------------------------------------------------------------------------
// Enumeration

static bool holds_true(const TermPtr& cond) {
  EvalContext ctx;
  Value v = eval(cond, nullptr, ctx);
  if (const auto* f = std::get_if<VFin>(&v->v)) {
    if (f->size == 2) return f->index == 1;
  }
  throw StuckTerm("holds condition did not evaluate to a boolean");
}

Enumeration enumerate(const TypePtr& t, uint64_t nat_bound) {
  return std::visit(
      overloaded{
          [&](const TEmpty&) { return Enumeration{}; },
          [&](const TUnit&) { return Enumeration{{v_elt()}, true}; },
          [&](const TNat&) {
            Enumeration e;
            e.complete = false;
            for (uint64_t i = 0; i <= nat_bound; ++i) e.values.push_back(v_nat(i));
            return e;
          },
          [&](const TFin& f) {
            Enumeration e;
            for (uint64_t i = 0; i < f.size; ++i) e.values.push_back(v_fin(i, f.size));
            return e;
          },
          [&](const TSum& s) {
            Enumeration l = enumerate(s.left, nat_bound);
            Enumeration r = enumerate(s.right, nat_bound);
            Enumeration e;
            e.complete = l.complete && r.complete;
            for (auto& v : l.values) e.values.push_back(v_inl(std::move(v)));
            for (auto& v : r.values) e.values.push_back(v_inr(std::move(v)));
            return e;
          },
          [&](const TProd& p) {
            Enumeration a = enumerate(p.first, nat_bound);
            Enumeration e;
            e.complete = a.complete;
            for (const auto& av : a.values) {
              Enumeration b = enumerate(p.second, nat_bound);
              e.complete = e.complete && b.complete;
              for (auto& bv : b.values) e.values.push_back(v_pair(av, std::move(bv)));
            }
            return e;
          },
          [&](const TSigma& s) {
            Enumeration a = enumerate(s.dom, nat_bound);
            Enumeration e;
            e.complete = a.complete;
            for (const auto& av : a.values) {
              Enumeration b = enumerate(instantiate(s.fam, av), nat_bound);
              e.complete = e.complete && b.complete;
              for (auto& bv : b.values) e.values.push_back(v_pair(av, std::move(bv)));
            }
            return e;
          },
          [&](const TFun& f) {
            return enumerate(ty_pi(f.dom, TypeFamily(shift_type(f.cod, 1))), nat_bound);
          },
          [&](const TPi& p) {
            Enumeration dom = enumerate(p.dom, nat_bound);
            if (!dom.complete)
              throw NotEnumerable("function space over a truncated domain");
            Enumeration e;
            std::vector<Enumeration> cods;
            cods.reserve(dom.values.size());
            for (const auto& dv : dom.values) {
              cods.push_back(enumerate(instantiate(p.fam, dv), nat_bound));
              e.complete = e.complete && cods.back().complete;
              if (cods.back().values.empty()) return e;  // no total functions
            }
            // odometer over codomain choices, first domain point slowest
            if (dom.values.empty()) {
              e.values.push_back(v_table({}, {}));
              return e;
            }
            std::vector<size_t> idx(dom.values.size(), 0);
            for (;;) {
              std::vector<Value> vals;
              vals.reserve(idx.size());
              for (size_t i = 0; i < idx.size(); ++i) vals.push_back(cods[i].values[idx[i]]);
              e.values.push_back(v_table(dom.values, std::move(vals)));
              if (e.values.size() > 4'000'000)
                throw NotEnumerable("function space too large to enumerate");
              size_t i = idx.size();
              while (i > 0) {
                --i;
                if (++idx[i] < cods[i].values.size()) break;
                idx[i] = 0;
                if (i == 0) return e;
              }
            }
          },
          [&](const THolds& h) {
            if (holds_true(h.cond)) return Enumeration{{v_elt()}, true};
            return Enumeration{};
          },
      },
      t->v);
}

std::optional<uint64_t> type_cardinality(const TypePtr& t) {
  using R = std::optional<uint64_t>;
  return std::visit(
      overloaded{
          [&](const TEmpty&) -> R { return 0; },
          [&](const TUnit&) -> R { return 1; },
          [&](const TNat&) -> R { return std::nullopt; },
          [&](const TFin& f) -> R { return f.size; },
          [&](const TSum& s) -> R {
            R l = type_cardinality(s.left), r = type_cardinality(s.right);
            if (!l || !r) return std::nullopt;
            return *l + *r;
          },
          [&](const TProd& p) -> R {
            R a = type_cardinality(p.first), b = type_cardinality(p.second);
            if (a && *a == 0) return 0;
            if (b && *b == 0) return 0;
            if (!a || !b) return std::nullopt;
            return *a * *b;
          },
          [&](const TSigma& s) -> R {
            R a = type_cardinality(s.dom);
            if (!a) return std::nullopt;
            uint64_t total = 0;
            Enumeration dom = enumerate(s.dom, 0);
            for (const auto& dv : dom.values) {
              R b = type_cardinality(instantiate(s.fam, dv));
              if (!b) return std::nullopt;
              total += *b;
            }
            return total;
          },
          [&](const TFun& f) -> R {
            R a = type_cardinality(f.dom), b = type_cardinality(f.cod);
            if (a && *a == 0) return 1;
            if (!a || !b) return std::nullopt;
            uint64_t total = 1;
            for (uint64_t i = 0; i < *a; ++i) total *= *b;
            return total;
          },
          [&](const TPi& p) -> R {
            R a = type_cardinality(p.dom);
            if (!a) return std::nullopt;
            uint64_t total = 1;
            Enumeration dom = enumerate(p.dom, 0);
            for (const auto& dv : dom.values) {
              R b = type_cardinality(instantiate(p.fam, dv));
              if (!b) return std::nullopt;
              total *= *b;
            }
            return total;
          },
          [&](const THolds& h) -> R {
            try {
              return holds_true(h.cond) ? 1 : 0;
            } catch (const Error&) {
              return std::nullopt;
            }
          },
      },
      t->v);
}

// ---------------------------------------------------------------------------
// Value checking

static bool callable(const Value& v) {
  return std::holds_alternative<VClosure>(v->v) || std::holds_alternative<VNative>(v->v) ||
         std::holds_alternative<VTable>(v->v);
}

bool check_value(const Value& v, const TypePtr& t, uint64_t nat_bound) {
  return std::visit(
      overloaded{
          [&](const TEmpty&) { return false; },
          [&](const TUnit&) { return std::holds_alternative<VElt>(v->v); },
          [&](const TNat&) { return std::holds_alternative<VNat>(v->v); },
          [&](const TFin& f) {
            const auto* x = std::get_if<VFin>(&v->v);
            return x && x->size == f.size && x->index < f.size;
          },
          [&](const TSum& s) {
            if (const auto* l = std::get_if<VInl>(&v->v)) return check_value(l->v, s.left, nat_bound);
            if (const auto* r = std::get_if<VInr>(&v->v)) return check_value(r->v, s.right, nat_bound);
            return false;
          },
          [&](const TProd& p) {
            const auto* x = std::get_if<VPair>(&v->v);
            return x && check_value(x->first, p.first, nat_bound) &&
                   check_value(x->second, p.second, nat_bound);
          },
          [&](const TSigma& s) {
            const auto* x = std::get_if<VPair>(&v->v);
            if (!x || !check_value(x->first, s.dom, nat_bound)) return false;
            return check_value(x->second, instantiate(s.fam, x->first), nat_bound);
          },
          [&](const TFun& f) {
            return check_value(v, ty_pi(f.dom, TypeFamily(shift_type(f.cod, 1))), nat_bound);
          },
          [&](const TPi& p) {
            if (!callable(v)) return false;
            Enumeration dom;
            try {
              dom = enumerate(p.dom, nat_bound);
            } catch (const NotEnumerable&) {
              return true;  // shallow: structurally a function
            }
            for (const auto& dv : dom.values) {
              Value out;
              try {
                out = apply(v, dv);
              } catch (const Error&) {
                return false;
              }
              if (!check_value(out, instantiate(p.fam, dv), nat_bound)) return false;
            }
            return true;
          },
          [&](const THolds& h) {
            try {
              return holds_true(h.cond) && std::holds_alternative<VElt>(v->v);
            } catch (const Error&) {
              return false;
            }
          },
      },
      t->v);
}

}  // namespace mrx
