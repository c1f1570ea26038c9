#include "mrx/realisability.hpp"

namespace mrx {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

TypePtr cr_v(Variant v, const PropPtr& s) { return v == Variant::MR ? cr(s) : cr_prime(s); }

// ---------------------------------------------------------------------------
// MR / MR'

static TypePtr mr_impl(Variant variant, const PropPtr& s, const Value& r, const MRFlags& flags) {
  return std::visit(
      overloaded{
          [&](const PAbsurd&) { return ty_empty(); },
          [&](const PAtom& a) { return a.type; },
          [&](const PAnd& x) -> TypePtr {
            const auto* p = std::get_if<VPair>(&r->v);
            if (!p) throw IllTypedRealiser("conjunction realiser is not a pair");
            return ty_prod(mr_impl(variant, x.left, p->first, flags),
                           mr_impl(variant, x.right, p->second, flags));
          },
          [&](const POr& x) -> TypePtr {
            if (const auto* l = std::get_if<VInl>(&r->v))
              return mr_impl(variant, flags.swap_or_clauses ? x.right : x.left, l->v, flags);
            if (const auto* rr = std::get_if<VInr>(&r->v))
              return mr_impl(variant, flags.swap_or_clauses ? x.left : x.right, rr->v, flags);
            throw IllTypedRealiser("disjunction realiser is not an injection");
          },
          [&](const PImplies& x) -> TypePtr {
            // (Tp(A) -> Tp(B)) and (Pi s: Cr(A)) (MR(A,s) -> MR(B, r(s)))
            TypePtr truth = ty_fun(tp(x.left), tp(x.right));
            PropPtr a = x.left, b = x.right;
            Value rv = r;
            TypeFamily fam([variant, a, b, rv, flags](const Value& sv) {
              Value out = apply(rv, sv);
              return ty_fun(mr_impl(variant, a, sv, flags), mr_impl(variant, b, out, flags));
            });
            return ty_prod(truth, ty_pi(cr_v(variant, x.left), std::move(fam)));
          },
          [&](const PForall& x) -> TypePtr {
            PropFamily fam = x.fam;
            Value rv = r;
            TypeFamily tf([variant, fam, rv, flags](const Value& xv) {
              return mr_impl(variant, instantiate(fam, xv), apply(rv, xv), flags);
            });
            return ty_pi(x.dom, std::move(tf));
          },
          [&](const PExists& x) -> TypePtr {
            if (variant == Variant::MR) {
              const auto* p = std::get_if<VPair>(&r->v);
              if (!p) throw IllTypedRealiser("existential realiser is not a pair");
              return mr_impl(variant, instantiate(x.fam, p->first), p->second, flags);
            }
            if (std::get_if<VInl>(&r->v)) return ty_empty();
            if (const auto* t = std::get_if<VInr>(&r->v)) {
              const auto* p = std::get_if<VPair>(&t->v->v);
              if (!p) throw IllTypedRealiser("existential realiser payload is not a pair");
              return mr_impl(variant, instantiate(x.fam, p->first), p->second, flags);
            }
            throw IllTypedRealiser("existential realiser is not an injection");
          },
      },
      s->v);
}

TypePtr mr_type(const PropPtr& s, const Value& r, const MRFlags& flags) {
  return mr_impl(Variant::MR, s, r, flags);
}
TypePtr mr_prime_type(const PropPtr& s, const Value& r, const MRFlags& flags) {
  return mr_impl(Variant::MRPrime, s, r, flags);
}
TypePtr mr_type_v(Variant v, const PropPtr& s, const Value& r, const MRFlags& flags) {
  return mr_impl(v, s, r, flags);
}

MRJudgement make_judgement(Variant v, const PropPtr& s, const Value& r, uint64_t nat_bound) {
  if (!check_value(r, cr_v(v, s), nat_bound))
    throw IllTypedRealiser("realiser does not inhabit the crude type");
  return MRJudgement{s, r, v, mr_type_v(v, s, r)};
}

// ---------------------------------------------------------------------------
// Inhabitation search

std::optional<Value> decide_inhabited(const TypePtr& t, uint64_t nat_bound) {
  using R = std::optional<Value>;
  return std::visit(
      overloaded{
          [&](const TEmpty&) -> R { return std::nullopt; },
          [&](const TUnit&) -> R { return v_elt(); },
          [&](const TNat&) -> R { return v_nat(0); },
          [&](const TFin& f) -> R { return v_fin(0, f.size); },
          [&](const TSum& s) -> R {
            if (auto l = decide_inhabited(s.left, nat_bound)) return v_inl(*l);
            if (auto r = decide_inhabited(s.right, nat_bound)) return v_inr(*r);
            return std::nullopt;
          },
          [&](const TProd& p) -> R {
            auto a = decide_inhabited(p.first, nat_bound);
            if (!a) return std::nullopt;
            auto b = decide_inhabited(p.second, nat_bound);
            if (!b) return std::nullopt;
            return v_pair(*a, *b);
          },
          [&](const TSigma& s) -> R {
            // the first component matters: walk the domain until an instance
            // of the family is inhabited
            Enumeration dom = enumerate(s.dom, nat_bound);
            for (const auto& dv : dom.values) {
              if (auto b = decide_inhabited(instantiate(s.fam, dv), nat_bound))
                return v_pair(dv, *b);
            }
            return std::nullopt;
          },
          [&](const TFun& f) -> R {
            return decide_inhabited(ty_pi(f.dom, TypeFamily(shift_type(f.cod, 1))), nat_bound);
          },
          [&](const TPi& p) -> R {
            Enumeration dom;
            dom = enumerate(p.dom, nat_bound);
            if (!dom.complete) throw NotEnumerable("function space over a truncated domain");
            std::vector<Value> vals;
            vals.reserve(dom.values.size());
            for (const auto& dv : dom.values) {
              auto b = decide_inhabited(instantiate(p.fam, dv), nat_bound);
              if (!b) return std::nullopt;
              vals.push_back(*b);
            }
            return v_table(dom.values, std::move(vals));
          },
          [&](const THolds& h) -> R {
            EvalContext ctx;
            Value c = eval(h.cond, nullptr, ctx);
            if (const auto* f = std::get_if<VFin>(&c->v); f && f->size == 2)
              return f->index == 1 ? R{v_elt()} : std::nullopt;
            throw StuckTerm("holds condition did not evaluate to a boolean");
          },
      },
      t->v);
}

// ---------------------------------------------------------------------------
// Correctness (Theorem 1)

static Value corr(Variant variant, const PropPtr& s, const Value& r, const Value& w) {
  return std::visit(
      overloaded{
          [&](const PAbsurd&) { return w; },
          [&](const PAtom&) { return w; },
          [&](const PAnd& x) -> Value {
            const auto* rp = std::get_if<VPair>(&r->v);
            const auto* wp = std::get_if<VPair>(&w->v);
            if (!rp) throw IllTypedRealiser("conjunction realiser is not a pair");
            if (!wp) throw IllTypedWitness("conjunction witness is not a pair");
            return v_pair(corr(variant, x.left, rp->first, wp->first),
                          corr(variant, x.right, rp->second, wp->second));
          },
          [&](const POr& x) -> Value {
            if (const auto* l = std::get_if<VInl>(&r->v))
              return v_inl(corr(variant, x.left, l->v, w));
            if (const auto* rr = std::get_if<VInr>(&r->v))
              return v_inr(corr(variant, x.right, rr->v, w));
            throw IllTypedRealiser("disjunction realiser is not an injection");
          },
          [&](const PImplies&) -> Value {
            // realisability with truth carries the Tp-level function directly
            const auto* wp = std::get_if<VPair>(&w->v);
            if (!wp) throw IllTypedWitness("implication witness is not a pair");
            return wp->first;
          },
          [&](const PForall& x) -> Value {
            PropFamily fam = x.fam;
            Value rv = r, wv = w;
            return v_native("correctness.forall", [variant, fam, rv, wv](const Value& a) {
              return corr(variant, instantiate(fam, a), apply(rv, a), apply(wv, a));
            });
          },
          [&](const PExists& x) -> Value {
            if (variant == Variant::MR) {
              const auto* rp = std::get_if<VPair>(&r->v);
              if (!rp) throw IllTypedRealiser("existential realiser is not a pair");
              return v_pair(rp->first,
                            corr(variant, instantiate(x.fam, rp->first), rp->second, w));
            }
            if (std::get_if<VInl>(&r->v))
              throw EmptyElimination("correctness at an unrealised existential");
            const auto* t = std::get_if<VInr>(&r->v);
            if (!t) throw IllTypedRealiser("existential realiser is not an injection");
            const auto* rp = std::get_if<VPair>(&t->v->v);
            if (!rp) throw IllTypedRealiser("existential realiser payload is not a pair");
            return v_pair(rp->first, corr(variant, instantiate(x.fam, rp->first), rp->second, w));
          },
      },
      s->v);
}

Value correctness(const PropPtr& s, const Value& r, const Value& w) {
  return corr(Variant::MR, s, r, w);
}
Value correctness_prime(const PropPtr& s, const Value& r, const Value& w) {
  return corr(Variant::MRPrime, s, r, w);
}
Value correctness_v(Variant v, const PropPtr& s, const Value& r, const Value& w) {
  return corr(v, s, r, w);
}

// ---------------------------------------------------------------------------
// Witness search

std::optional<Value> mr_witness_search(Variant variant, const PropPtr& s, const Value& r,
                                       uint64_t nat_bound) {
  using R = std::optional<Value>;
  return std::visit(
      overloaded{
          [&](const PAbsurd&) -> R { return std::nullopt; },
          [&](const PAtom& a) -> R {
            try {
              return decide_inhabited(a.type, nat_bound);
            } catch (const NotEnumerable&) {
              return std::nullopt;
            }
          },
          [&](const PAnd& x) -> R {
            const auto* rp = std::get_if<VPair>(&r->v);
            if (!rp) return std::nullopt;
            auto l = mr_witness_search(variant, x.left, rp->first, nat_bound);
            if (!l) return std::nullopt;
            auto rr = mr_witness_search(variant, x.right, rp->second, nat_bound);
            if (!rr) return std::nullopt;
            return v_pair(*l, *rr);
          },
          [&](const POr& x) -> R {
            if (const auto* l = std::get_if<VInl>(&r->v))
              return mr_witness_search(variant, x.left, l->v, nat_bound);
            if (const auto* rr = std::get_if<VInr>(&r->v))
              return mr_witness_search(variant, x.right, rr->v, nat_bound);
            return std::nullopt;
          },
          [&](const PImplies& x) -> R {
            // lazy: the truth function decides the conclusion when forced, and
            // the transformer recurses on demand
            PropPtr a = x.left, b = x.right;
            Value rv = r;
            Value truth = v_native("witness.truth", [b, nat_bound](const Value&) {
              auto w = decide_inhabited(tp(b), nat_bound);
              if (!w) throw Error("witness search forced on a false implication");
              return *w;
            });
            Value transf = v_native("witness.transformer", [variant, a, b, rv, nat_bound](const Value& sv) {
              return v_native("witness.transformer.inner", [variant, b, rv, sv, nat_bound](const Value&) {
                auto w = mr_witness_search(variant, b, apply(rv, sv), nat_bound);
                if (!w) throw Error("witness search forced on a false conclusion");
                return *w;
              });
            });
            return v_pair(truth, transf);
          },
          [&](const PForall& x) -> R {
            PropFamily fam = x.fam;
            Value rv = r;
            return v_native("witness.forall", [variant, fam, rv, nat_bound](const Value& a) {
              auto w = mr_witness_search(variant, instantiate(fam, a), apply(rv, a), nat_bound);
              if (!w) throw Error("witness search forced on a false instance");
              return *w;
            });
          },
          [&](const PExists& x) -> R {
            if (variant == Variant::MR) {
              const auto* rp = std::get_if<VPair>(&r->v);
              if (!rp) return std::nullopt;
              return mr_witness_search(variant, instantiate(x.fam, rp->first), rp->second, nat_bound);
            }
            if (std::get_if<VInl>(&r->v)) return std::nullopt;  // MR' of inl is absurd
            const auto* t = std::get_if<VInr>(&r->v);
            if (!t) return std::nullopt;
            const auto* rp = std::get_if<VPair>(&t->v->v);
            if (!rp) return std::nullopt;
            return mr_witness_search(variant, instantiate(x.fam, rp->first), rp->second, nat_bound);
          },
      },
      s->v);
}

}  // namespace mrx
