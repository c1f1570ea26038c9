#include "mrx/logic.hpp"

namespace mrx {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

Sequent conclusion_of(const ProofPtr& p);  // logic_check.cpp

// ---------------------------------------------------------------------------
// Helpers

// Reindex a premise realiser written in context [bound, ambient...] so that
// the bound variable lands at `bound_target` and the ambient block starts at
// `ambient_start` (bound_target < ambient_start).
static TermPtr reindex1(const TermPtr& t, size_t bound_target, size_t ambient_start) {
  TermPtr shifted = shift_term(t, static_cast<int64_t>(ambient_start - 1), 1);
  return replace0_term(shifted, tm_var(bound_target));
}

static Value nat_of(const Value& v, const char* who) {
  if (const auto* n = std::get_if<VNat>(&v->v)) return v;
  (void)who;
  throw IllTypedWitness(std::string(who) + ": expected a numeral");
}

using WitnessFn = std::function<Value(const EnvPtr&)>;

struct NodeExtract {
  TermPtr realiser;  // open in the ambient binders
  WitnessFn witness;
};

struct ExtractCtx {
  Variant variant;
  CheckOptions opts;
};

static Value pair2(Value a, Value b) { return v_pair(std::move(a), std::move(b)); }

static Value nat1(const char* tag, std::function<Value(const Value&)> f) {
  return v_native(tag, std::move(f));
}
static Value nat2(const char* tag, std::function<Value(const Value&, const Value&)> f) {
  return v_native(tag, [tag, f](const Value& a) {
    return v_native(tag, [f, a](const Value& b) { return f(a, b); });
  });
}

// ---------------------------------------------------------------------------
// Per-rule extraction

static NodeExtract ex(const ProofPtr& p, const ExtractCtx& ctx);

static NodeExtract ex_identity(const PrIdentity&) {
  NodeExtract out;
  out.realiser = tm_lam(tm_var(0));
  out.witness = [](const EnvPtr&) {
    return pair2(nat1("id.tp", [](const Value& a) { return a; }),
                 nat2("id.mr", [](const Value&, const Value& m) { return m; }));
  };
  return out;
}

static NodeExtract ex_cut(const PrCut& n, const ExtractCtx& ctx) {
  NodeExtract l = ex(n.left, ctx), r = ex(n.right, ctx);
  NodeExtract out;
  out.realiser = tm_lam(
      tm_app(shift_term(r.realiser, 1), tm_app(shift_term(l.realiser, 1), tm_var(0))));
  TermPtr lr = l.realiser;
  out.witness = [l, r, lr](const EnvPtr& env) {
    Value wl = l.witness(env), wr = r.witness(env);
    Value rl = eval(lr, env);
    return pair2(nat1("cut.tp",
                      [wl, wr](const Value& a) {
                        return apply(vfst(wr), apply(vfst(wl), a));
                      }),
                 nat2("cut.mr", [wl, wr, rl](const Value& s, const Value& m) {
                   Value mid = apply(rl, s);
                   return apply(apply(vsnd(wr), mid), apply(apply(vsnd(wl), s), m));
                 }));
  };
  return out;
}

static NodeExtract ex_inhabited_atom(const PrInhabitedAtom& n) {
  NodeExtract out;
  out.realiser = tm_lam(tm_elt());
  TermPtr wt = n.witness;
  out.witness = [wt](const EnvPtr& env) {
    Value w = eval(wt, env);
    return pair2(nat1("atom.tp", [w](const Value&) { return w; }),
                 nat2("atom.mr", [w](const Value&, const Value&) { return w; }));
  };
  return out;
}

static NodeExtract ex_and_elim(bool left) {
  NodeExtract out;
  out.realiser = tm_lam(left ? tm_fst(tm_var(0)) : tm_snd(tm_var(0)));
  out.witness = [left](const EnvPtr&) {
    return pair2(nat1("andelim.tp", [left](const Value& a) { return left ? vfst(a) : vsnd(a); }),
                 nat2("andelim.mr",
                      [left](const Value&, const Value& m) { return left ? vfst(m) : vsnd(m); }));
  };
  return out;
}

static NodeExtract ex_and_intro(const PrAndIntro& n, const ExtractCtx& ctx) {
  NodeExtract l = ex(n.left, ctx), r = ex(n.right, ctx);
  NodeExtract out;
  out.realiser = tm_lam(tm_pair(tm_app(shift_term(l.realiser, 1), tm_var(0)),
                                tm_app(shift_term(r.realiser, 1), tm_var(0))));
  out.witness = [l, r](const EnvPtr& env) {
    Value wl = l.witness(env), wr = r.witness(env);
    return pair2(nat1("andintro.tp",
                      [wl, wr](const Value& a) {
                        return pair2(apply(vfst(wl), a), apply(vfst(wr), a));
                      }),
                 nat2("andintro.mr", [wl, wr](const Value& s, const Value& m) {
                   return pair2(apply(apply(vsnd(wl), s), m), apply(apply(vsnd(wr), s), m));
                 }));
  };
  return out;
}

static NodeExtract ex_weak_absurd() {
  NodeExtract out;
  out.realiser = tm_lam(tm_elt());
  out.witness = [](const EnvPtr&) {
    // both components eliminate from the empty type; they can never be forced
    return pair2(nat1("absurd.tp",
                      [](const Value&) -> Value {
                        throw EmptyElimination("absurdity witness was forced");
                      }),
                 nat2("absurd.mr", [](const Value&, const Value&) -> Value {
                   throw EmptyElimination("absurdity witness was forced");
                 }));
  };
  return out;
}

static NodeExtract ex_or_intro(bool left) {
  NodeExtract out;
  out.realiser = tm_lam(left ? tm_inl(tm_var(0)) : tm_inr(tm_var(0)));
  out.witness = [left](const EnvPtr&) {
    return pair2(
        nat1("orintro.tp", [left](const Value& a) { return left ? v_inl(a) : v_inr(a); }),
        nat2("orintro.mr", [](const Value&, const Value& m) { return m; }));
  };
  return out;
}

static NodeExtract ex_or_elim(const PrOrElim& n, const ExtractCtx& ctx) {
  NodeExtract l = ex(n.left, ctx), r = ex(n.right, ctx);
  NodeExtract out;
  out.realiser = tm_lam(tm_case(tm_var(0), tm_app(shift_term(l.realiser, 2), tm_var(0)),
                                tm_app(shift_term(r.realiser, 2), tm_var(0))));
  out.witness = [l, r](const EnvPtr& env) {
    Value wl = l.witness(env), wr = r.witness(env);
    return pair2(nat1("orelim.tp",
                      [wl, wr](const Value& d) -> Value {
                        if (const auto* a = std::get_if<VInl>(&d->v))
                          return apply(vfst(wl), a->v);
                        if (const auto* b = std::get_if<VInr>(&d->v))
                          return apply(vfst(wr), b->v);
                        throw IllTypedWitness("or-elim: not an injection");
                      }),
                 nat2("orelim.mr", [wl, wr](const Value& s, const Value& m) -> Value {
                   if (const auto* a = std::get_if<VInl>(&s->v))
                     return apply(apply(vsnd(wl), a->v), m);
                   if (const auto* b = std::get_if<VInr>(&s->v))
                     return apply(apply(vsnd(wr), b->v), m);
                   throw IllTypedRealiser("or-elim: realiser is not an injection");
                 }));
  };
  return out;
}

static NodeExtract ex_imp_intro(const PrImpIntro& n, const ExtractCtx& ctx) {
  NodeExtract pr = ex(n.premise, ctx);
  Sequent ps = conclusion_of(n.premise);
  const auto* conj = std::get_if<PAnd>(&ps.antecedent->v);
  if (!conj) throw MalformedRule("imp-intro: premise antecedent is not a conjunction");
  PropPtr a_prop = conj->left;
  Variant variant = ctx.variant;
  NodeExtract out;
  out.realiser =
      tm_lam(tm_lam(tm_app(shift_term(pr.realiser, 2), tm_pair(tm_var(1), tm_var(0)))));
  out.witness = [pr, a_prop, variant](const EnvPtr& env) {
    Value wp = pr.witness(env);
    PropPtr a_closed = close_prop(a_prop, env);
    return pair2(
        nat1("impintro.tp",
             [wp](const Value& ta) {
               return nat1("impintro.tp.in",
                           [wp, ta](const Value& tb) { return apply(vfst(wp), pair2(ta, tb)); });
             }),
        nat2("impintro.mr", [wp, a_closed, variant](const Value& s, const Value& ms) {
          // the inner truth component needs Tp(A); Theorem 1 supplies it
          Value truth = nat1("impintro.mr.tp", [wp, a_closed, variant, s, ms](const Value& tb) {
            Value ta = correctness_v(variant, a_closed, s, ms);
            return apply(vfst(wp), pair2(ta, tb));
          });
          Value transf = nat2("impintro.mr.in", [wp, s, ms](const Value& b, const Value& mb) {
            return apply(apply(vsnd(wp), pair2(s, b)), pair2(ms, mb));
          });
          return pair2(truth, transf);
        }));
  };
  return out;
}

static NodeExtract ex_imp_elim(const PrImpElim& n, const ExtractCtx& ctx) {
  NodeExtract pr = ex(n.premise, ctx);
  NodeExtract out;
  out.realiser = tm_lam(
      tm_app(tm_app(shift_term(pr.realiser, 1), tm_fst(tm_var(0))), tm_snd(tm_var(0))));
  out.witness = [pr](const EnvPtr& env) {
    Value wp = pr.witness(env);
    return pair2(nat1("impelim.tp",
                      [wp](const Value& t) {
                        return apply(apply(vfst(wp), vfst(t)), vsnd(t));
                      }),
                 nat2("impelim.mr", [wp](const Value& s, const Value& m) {
                   Value inner = apply(apply(vsnd(wp), vfst(s)), vfst(m));
                   return apply(apply(vsnd(inner), vsnd(s)), vsnd(m));
                 }));
  };
  return out;
}

static NodeExtract ex_forall_intro(const PrForallIntro& n, const ExtractCtx& ctx) {
  NodeExtract pr = ex(n.premise, ctx);
  NodeExtract out;
  // \s. \x. R(x) s   with R the schematic premise realiser
  out.realiser = tm_lam(tm_lam(tm_app(reindex1(pr.realiser, 0, 2), tm_var(1))));
  out.witness = [pr](const EnvPtr& env) {
    auto wp_at = [pr, env](const Value& x) { return pr.witness(env_push(env, x)); };
    return pair2(nat1("forallintro.tp",
                      [wp_at](const Value& a) {
                        return nat1("forallintro.tp.at", [wp_at, a](const Value& x) {
                          return apply(vfst(wp_at(x)), a);
                        });
                      }),
                 nat2("forallintro.mr", [wp_at](const Value& s, const Value& m) {
                   return nat1("forallintro.mr.at", [wp_at, s, m](const Value& x) {
                     return apply(apply(vsnd(wp_at(x)), s), m);
                   });
                 }));
  };
  return out;
}

static NodeExtract ex_forall_elim(const PrForallElim& n, const ExtractCtx& ctx) {
  NodeExtract pr = ex(n.premise, ctx);
  NodeExtract out;
  out.realiser =
      tm_lam(tm_app(tm_app(shift_term(pr.realiser, 1), tm_var(0)), shift_term(n.at, 1)));
  TermPtr at = n.at;
  out.witness = [pr, at](const EnvPtr& env) {
    Value wp = pr.witness(env);
    Value tv = eval(at, env);
    return pair2(nat1("forallelim.tp",
                      [wp, tv](const Value& a) { return apply(apply(vfst(wp), a), tv); }),
                 nat2("forallelim.mr", [wp, tv](const Value& s, const Value& m) {
                   return apply(apply(apply(vsnd(wp), s), m), tv);
                 }));
  };
  return out;
}

static NodeExtract ex_exists_elim(const PrExistsElim& n, const ExtractCtx& ctx) {
  NodeExtract pr = ex(n.premise, ctx);
  Sequent ps = conclusion_of(n.premise);
  PropPtr succedent = shift_prop(ps.succedent, -1, 0);  // closed w.r.t. the binder
  NodeExtract out;
  if (ctx.variant == Variant::MR) {
    // \s. (\x. \c. R(x) c) s.1 s.2
    out.realiser = tm_lam(
        tm_app(tm_app(tm_lam(tm_lam(tm_app(reindex1(pr.realiser, 1, 3), tm_var(0)))),
                      tm_fst(tm_var(0))),
               tm_snd(tm_var(0))));
    out.witness = [pr](const EnvPtr& env) {
      auto wp_at = [pr, env](const Value& x) { return pr.witness(env_push(env, x)); };
      return pair2(nat1("existselim.tp",
                        [wp_at](const Value& d) {
                          return apply(vfst(wp_at(vfst(d))), vsnd(d));
                        }),
                   nat2("existselim.mr", [wp_at](const Value& s, const Value& m) {
                     return apply(apply(vsnd(wp_at(vfst(s))), vsnd(s)), m);
                   }));
    };
    return out;
  }
  // MR': the inl summand is discharged with the canonical element of the
  // succedent's crude type, the inr payload feeds the schematic premise
  TermPtr element_branch = shift_term(element_term(succedent), 2);
  out.realiser = tm_lam(tm_case(
      tm_var(0), element_branch,
      tm_app(tm_app(tm_lam(tm_lam(tm_app(reindex1(pr.realiser, 1, 4), tm_var(0)))),
                    tm_fst(tm_var(0))),
             tm_snd(tm_var(0)))));
  out.witness = [pr](const EnvPtr& env) {
    auto wp_at = [pr, env](const Value& x) { return pr.witness(env_push(env, x)); };
    return pair2(nat1("existselim.tp",
                      [wp_at](const Value& d) {
                        return apply(vfst(wp_at(vfst(d))), vsnd(d));
                      }),
                 nat2("existselim.mr", [wp_at](const Value& s, const Value& m) -> Value {
                   if (std::get_if<VInl>(&s->v))
                     throw EmptyElimination("exists-elim: witness forced on the unit summand");
                   const auto* t = std::get_if<VInr>(&s->v);
                   if (!t) throw IllTypedRealiser("exists-elim: realiser is not an injection");
                   Value payload = t->v;
                   return apply(apply(vsnd(wp_at(vfst(payload))), vsnd(payload)), m);
                 }));
  };
  return out;
}

static NodeExtract ex_exists_intro(const PrExistsIntro& n, const ExtractCtx& ctx) {
  NodeExtract pr = ex(n.premise, ctx);
  NodeExtract out;
  TermPtr witness_pair = tm_pair(shift_term(n.at, 1), tm_var(0));
  if (ctx.variant == Variant::MR) {
    out.realiser = tm_lam(tm_app(shift_term(pr.realiser, 1), witness_pair));
  } else {
    out.realiser = tm_lam(tm_app(shift_term(pr.realiser, 1), tm_inr(witness_pair)));
  }
  TermPtr at = n.at;
  Variant variant = ctx.variant;
  out.witness = [pr, at, variant](const EnvPtr& env) {
    Value wp = pr.witness(env);
    Value tv = eval(at, env);
    return pair2(nat1("existsintro.tp",
                      [wp, tv](const Value& d) { return apply(vfst(wp), pair2(tv, d)); }),
                 nat2("existsintro.mr", [wp, tv, variant](const Value& c, const Value& m) {
                   Value s = pair2(tv, c);
                   if (variant == Variant::MRPrime) s = v_inr(s);
                   return apply(apply(vsnd(wp), s), m);
                 }));
  };
  return out;
}

static NodeExtract ex_full_absurd(const PrFullAbsurd& n, const ExtractCtx& ctx) {
  if (ctx.variant == Variant::MR)
    throw UsesFullAbsurd("the full absurdity axiom is only realised under the primed variant");
  NodeExtract out;
  out.realiser = tm_lam(shift_term(element_term(n.prop), 1));
  out.witness = [](const EnvPtr&) {
    return pair2(nat1("fullabsurd.tp",
                      [](const Value&) -> Value {
                        throw EmptyElimination("full-absurdity witness was forced");
                      }),
                 nat2("fullabsurd.mr", [](const Value&, const Value&) -> Value {
                   throw EmptyElimination("full-absurdity witness was forced");
                 }));
  };
  return out;
}

// the induction realiser: \c. \x. rec (cr o P) x c.1 (\m. \y. c.2 m y),
// written under `extra` ambient-facing binders
static TermPtr induction_body(const PropFamily& fam, Variant variant, size_t extra) {
  TypePtr motive = variant == Variant::MR ? cr(fam.body) : cr_prime(fam.body);
  // context inside \c.\x: x=0, c=1, then `extra` binders, then ambient
  TypeFamily m(shift_type(motive, static_cast<int64_t>(extra) + 2, 1));
  TermPtr step = tm_lam(tm_lam(tm_app(tm_app(tm_snd(tm_var(3)), tm_var(1)), tm_var(0))));
  return tm_lam(tm_lam(tm_rec(std::move(m), tm_var(0), tm_fst(tm_var(1)), step)));
}

// witness of MR(IndProp, rec-realiser); shared by the node and the lemma
static Value induction_witness() {
  auto truth = nat1("induction.tp", [](const Value& tc) {
    return nat1("induction.tp.at", [tc](const Value& x) {
      uint64_t n = std::get<VNat>(nat_of(x, "induction")->v).n;
      Value acc = vfst(tc);
      for (uint64_t i = 0; i < n; ++i) acc = apply(apply(vsnd(tc), v_nat(i)), acc);
      return acc;
    });
  });
  auto transf = nat2("induction.mr", [](const Value& c, const Value& m) {
    return nat1("induction.mr.at", [c, m](const Value& x) {
      uint64_t n = std::get<VNat>(nat_of(x, "induction")->v).n;
      Value r = vfst(c), w = vfst(m);
      for (uint64_t i = 0; i < n; ++i) {
        Value step_w = apply(vsnd(m), v_nat(i));  // MR(P(i) -> P(S i), c.2 i)
        w = apply(apply(vsnd(step_w), r), w);
        r = apply(apply(vsnd(c), v_nat(i)), r);
      }
      return w;
    });
  });
  return pair2(truth, transf);
}

static NodeExtract ex_induction(const PrInduction& n, const ExtractCtx& ctx) {
  NodeExtract out;
  // the antecedent realiser is ignored
  out.realiser = tm_lam(induction_body(n.family, ctx.variant, 1));
  out.witness = [](const EnvPtr&) {
    Value inner = induction_witness();
    return pair2(nat1("induction.seq.tp", [inner](const Value&) { return vfst(inner); }),
                 nat2("induction.seq.mr",
                      [inner](const Value&, const Value&) { return vsnd(inner); }));
  };
  return out;
}

// the choice realiser under `extra` ambient-facing binders; MR swaps the
// components, MR' routes through the fallback on the unit summand
static TermPtr choice_body(const PrChoice& n, Variant variant, size_t extra) {
  if (variant == Variant::MR) {
    return tm_lam(tm_pair(tm_lam(tm_fst(tm_app(tm_var(1), tm_var(0)))),
                          tm_lam(tm_snd(tm_app(tm_var(1), tm_var(0))))));
  }
  if (!n.fallback)
    throw MissingDefault("choice under the primed variant needs a fallback element");
  // f(x, w) = case w of inl u -> <b0, element(P(x, b0))>; inr y -> y
  // element commutes with substitution, so build element(P) open in (y, x)
  TermPtr el = element_term(n.body);  // context [y, x, ambient...]
  // substitute y := b0 (written under the x binder)
  TermPtr b0_under_x = shift_term(n.fallback, 1);
  TermPtr el1 = open_term(el, b0_under_x);  // context [x, ambient...]
  // target context inside \c.\x + case binder: [u=0, x=1, c=2, then extra+ambient]
  TermPtr el2 = reindex1(el1, 1, 3 + extra);
  TermPtr b0_in_branch = shift_term(n.fallback, static_cast<int64_t>(3 + extra));
  TermPtr fallback_pair = tm_pair(b0_in_branch, el2);
  TermPtr case_term = tm_case(tm_app(tm_var(1), tm_var(0)), fallback_pair, tm_var(0));
  return tm_lam(tm_inr(tm_pair(tm_lam(tm_fst(case_term)), tm_lam(tm_snd(case_term)))));
}

static Value choice_witness(Variant variant) {
  auto truth = nat1("choice.tp", [](const Value& tc) {
    return pair2(nat1("choice.tp.fn", [tc](const Value& x) { return vfst(apply(tc, x)); }),
                 nat1("choice.tp.wit", [tc](const Value& x) { return vsnd(apply(tc, x)); }));
  });
  auto transf = nat2("choice.mr", [variant](const Value& c, const Value& m) {
    return nat1("choice.mr.at", [variant, c, m](const Value& x) -> Value {
      if (variant == Variant::MR) return apply(m, x);
      Value cx = apply(c, x);
      if (std::get_if<VInl>(&cx->v)) {
        // bottom-elimination: MR'(exists, inl) is absurd, so this point can
        // only be reached on an unrealised input
        (void)apply(m, x);
        throw EmptyElimination("choice: witness forced on the unit summand");
      }
      return apply(m, x);
    });
  });
  return pair2(truth, transf);
}

static NodeExtract ex_choice(const PrChoice& n, const ExtractCtx& ctx) {
  NodeExtract out;
  out.realiser = tm_lam(choice_body(n, ctx.variant, 1));
  Variant variant = ctx.variant;
  out.witness = [variant](const EnvPtr&) {
    Value inner = choice_witness(variant);
    return pair2(nat1("choice.seq.tp", [inner](const Value&) { return vfst(inner); }),
                 nat2("choice.seq.mr", [inner](const Value&, const Value&) { return vsnd(inner); }));
  };
  return out;
}

static NodeExtract ex_trivial_transfer(const PrTrivialTransfer& n, const ExtractCtx& ctx) {
  NodeExtract out;
  out.realiser = tm_lam(tm_elt());
  PropPtr q = n.antecedent, c = n.conclusion;
  Variant variant = ctx.variant;
  uint64_t bound = ctx.opts.nat_bound;
  out.witness = [q, c, variant, bound](const EnvPtr& env) {
    PropPtr qc = close_prop(q, env);
    PropPtr cc = close_prop(c, env);
    Value truth = nat1("transfer.tp", [cc, bound](const Value&) -> Value {
      auto w = decide_inhabited(tp(cc), bound);
      if (!w) throw EmptyElimination("transfer: conclusion forced while false");
      return *w;
    });
    Value transf =
        nat2("transfer.mr", [cc, bound](const Value&, const Value&) -> Value {
          auto w = decide_inhabited(tp(cc), bound);
          if (!w) throw EmptyElimination("transfer: conclusion forced while false");
          return *w;
        });
    (void)qc;
    (void)variant;
    return pair2(truth, transf);
  };
  return out;
}

static NodeExtract ex(const ProofPtr& p, const ExtractCtx& ctx) {
  return std::visit(
      overloaded{
          [&](const PrIdentity& n) { return ex_identity(n); },
          [&](const PrCut& n) { return ex_cut(n, ctx); },
          [&](const PrInhabitedAtom& n) { return ex_inhabited_atom(n); },
          [&](const PrAndElimL&) { return ex_and_elim(true); },
          [&](const PrAndElimR&) { return ex_and_elim(false); },
          [&](const PrAndIntro& n) { return ex_and_intro(n, ctx); },
          [&](const PrWeakAbsurd&) { return ex_weak_absurd(); },
          [&](const PrOrIntroL&) { return ex_or_intro(true); },
          [&](const PrOrIntroR&) { return ex_or_intro(false); },
          [&](const PrOrElim& n) { return ex_or_elim(n, ctx); },
          [&](const PrImpIntro& n) { return ex_imp_intro(n, ctx); },
          [&](const PrImpElim& n) { return ex_imp_elim(n, ctx); },
          [&](const PrForallIntro& n) { return ex_forall_intro(n, ctx); },
          [&](const PrForallElim& n) { return ex_forall_elim(n, ctx); },
          [&](const PrExistsElim& n) { return ex_exists_elim(n, ctx); },
          [&](const PrExistsIntro& n) { return ex_exists_intro(n, ctx); },
          [&](const PrFullAbsurd& n) { return ex_full_absurd(n, ctx); },
          [&](const PrInduction& n) { return ex_induction(n, ctx); },
          [&](const PrChoice& n) { return ex_choice(n, ctx); },
          [&](const PrTrivialTransfer& n) { return ex_trivial_transfer(n, ctx); },
      },
      p->v);
}

// ---------------------------------------------------------------------------
// Entry points

ExtractionResult extract_v(Variant v, const ProofPtr& p, const CheckOptions& opts) {
  Sequent s = check(p, opts);
  if (v == Variant::MR && proof_uses_full_absurd(p))
    throw UsesFullAbsurd("proof uses the full absurdity axiom");
  ExtractCtx ctx{v, opts};
  NodeExtract e = ex(p, ctx);
  ExtractionResult out;
  out.prop = p_implies(s.antecedent, s.succedent);
  out.variant = v;
  out.realiser_term = e.realiser;
  out.realiser = eval(e.realiser, nullptr);
  out.witness = e.witness(nullptr);
  return out;
}

ExtractionResult extract(const ProofPtr& p, const CheckOptions& opts) {
  return extract_v(Variant::MR, p, opts);
}
ExtractionResult extract_prime(const ProofPtr& p, const CheckOptions& opts) {
  return extract_v(Variant::MRPrime, p, opts);
}

// ---------------------------------------------------------------------------
// forall/exists extraction (the program of Corollary 2)

AEProgram ae_extract(const PropPtr& goal, const ExtractionResult& res,
                     const TermPtr& assumptions_realiser, uint64_t nat_bound) {
  const auto* fa = std::get_if<PForall>(&goal->v);
  if (!fa) throw WrongShape("goal is not a forall/exists proposition");
  const auto* exb = std::get_if<PExists>(&fa->fam.body->v);
  if (!exb) throw WrongShape("goal is not a forall/exists proposition");

  // the realiser of the goal itself, and the MR witness for it
  Value goal_realiser;
  Value goal_witness;
  TermPtr goal_realiser_term;
  if (prop_equal(res.prop, goal)) {
    goal_realiser = res.realiser;
    goal_witness = res.witness;
    goal_realiser_term = res.realiser_term;
  } else {
    const auto* imp = std::get_if<PImplies>(&res.prop->v);
    if (!imp || !prop_equal(imp->right, goal))
      throw WrongShape("extraction result does not conclude the goal");
    if (!assumptions_realiser)
      throw WrongShape("an assumption realiser is required for a sequent-style result");
    Value nc = eval(assumptions_realiser, nullptr);
    auto m_nc = mr_witness_search(res.variant, imp->left, nc, nat_bound);
    if (!m_nc) throw WrongShape("the assumptions admit no realisability witness");
    goal_realiser = apply(res.realiser, nc);
    goal_witness = apply(apply(vsnd(res.witness), nc), *m_nc);
    goal_realiser_term = tm_app(res.realiser_term, assumptions_realiser);
  }

  AEProgram out;
  out.dom = fa->dom;
  out.cod = exb->dom;
  Variant variant = res.variant;
  if (variant == Variant::MR) {
    out.program = tm_lam(tm_fst(tm_app(shift_term(goal_realiser_term, 1), tm_var(0))));
  } else {
    // the inl branch is impossible on a realised goal; eliminate it
    out.program = tm_lam(tm_case(tm_app(shift_term(goal_realiser_term, 1), tm_var(0)),
                                 tm_absurd(tm_var(0)), tm_fst(tm_var(0))));
  }
  Value gr = goal_realiser;
  out.fn = v_native("ae.fn", [gr, variant](const Value& x) -> Value {
    Value at = apply(gr, x);
    if (variant == Variant::MR) return vfst(at);
    if (const auto* t = std::get_if<VInr>(&at->v)) return vfst(t->v);
    throw InlBranchReached("extracted program hit the impossible unit summand");
  });

  // per-point truth witnesses via the correctness transformer
  PropPtr goal_p = goal;
  Value corr = correctness_v(variant, goal_p, goal_realiser, goal_witness);
  out.witness_at = [corr](const Value& x) { return vsnd(apply(corr, x)); };
  return out;
}

// ---------------------------------------------------------------------------
// Realised axiom schemes

ExtractionResult induction_realiser(const PropFamily& family, Variant v) {
  PropPtr base = open_prop(family.body, tm_zero());
  PropPtr step =
      p_forall(ty_nat(), p_implies(family.body, replace0_prop(family.body, tm_succ(tm_var(0)))));
  ExtractionResult out;
  out.prop = p_implies(p_and(base, step), p_forall(ty_nat(), family.body));
  out.variant = v;
  out.realiser_term = induction_body(family, v, 0);
  out.realiser = eval(out.realiser_term, nullptr);
  out.witness = induction_witness();
  return out;
}

ExtractionResult choice_realiser(const TypePtr& dom, const TypePtr& cod, const PropPtr& body,
                                 const TermPtr& fallback, Variant v) {
  PrChoice node{nullptr, dom, cod, body, fallback};
  PropPtr lhs = p_forall(dom, p_exists(shift_type(cod, 1), body));
  PropPtr opened = open_prop(shift_prop(body, 1, 2), tm_app(tm_var(1), tm_var(0)));
  PropPtr rhs = p_exists(ty_fun(dom, cod), p_forall(shift_type(dom, 1), opened));
  ExtractionResult out;
  out.prop = p_implies(lhs, rhs);
  out.variant = v;
  out.realiser_term = choice_body(node, v, 0);
  out.realiser = eval(out.realiser_term, nullptr);
  out.witness = choice_witness(v);
  return out;
}

// witness of the trivial transfer scheme: peel the quantifier prefix
// pointwise, then compose the evidence with the correctness transformer
static Value trivial_witness(Variant v, const Value& ev, const PropPtr& s, size_t remaining,
                             const EnvPtr& env) {
  if (remaining == 0) {
    const auto* imp = std::get_if<PImplies>(&s->v);
    if (!imp) throw WrongShape("trivial transfer: expected an implication");
    PropPtr qq = close_prop(imp->left, env);
    Value transf = nat2("trivial.mr", [v, qq, ev](const Value& r, const Value& m) {
      return apply(ev, correctness_v(v, qq, r, m));
    });
    return pair2(ev, transf);
  }
  const auto* fa = std::get_if<PForall>(&s->v);
  if (!fa) throw WrongShape("trivial transfer: expected a universal prefix");
  PropFamily fam = fa->fam;
  return nat1("trivial.at", [v, ev, fam, remaining, env](const Value& x) {
    return trivial_witness(v, apply(ev, x), fam.body, remaining - 1, env_push(env, x));
  });
}

ExtractionResult trivial_realiser(const std::vector<TypePtr>& prefix, const PropPtr& q,
                                  const PropPtr& p, const Value& truth_evidence, Variant v) {
  bool atomic =
      std::holds_alternative<PAtom>(p->v) || std::holds_alternative<PAbsurd>(p->v);
  if (!atomic) throw NotAtomicConclusion("transfer conclusion must be atomic or absurd");

  // (all x1) ... (all xn) [Q -> P], realised by (\x1)...(\xn)(\r) elt
  PropPtr full = p_implies(q, p);
  TermPtr realiser = tm_lam(tm_elt());
  for (size_t i = prefix.size(); i-- > 0;) {
    full = p_forall(prefix[i], full);
    realiser = tm_lam(realiser);
  }
  ExtractionResult out;
  out.prop = full;
  out.variant = v;
  out.realiser_term = realiser;
  out.realiser = eval(realiser, nullptr);
  out.witness = trivial_witness(v, truth_evidence, full, prefix.size(), nullptr);
  return out;
}

// ---------------------------------------------------------------------------
// Deriving the full absurdity rule in the restricted system

static bool type_closed_below(const TypePtr& t, size_t depth) {
  for (size_t i = 0; i < depth; ++i)
    if (type_mentions_var(t, i)) return false;
  return true;
}

static ProofPtr derive_fa(const PropPtr& a, size_t depth, uint64_t nat_bound) {
  return std::visit(
      overloaded{
          [&](const PAtom& n) { return proof({PrWeakAbsurd{n.type}}); },
          [&](const PAbsurd&) { return proof({PrIdentity{p_absurd()}}); },
          [&](const PAnd& n) {
            return proof({PrAndIntro{derive_fa(n.left, depth, nat_bound),
                                     derive_fa(n.right, depth, nat_bound)}});
          },
          [&](const POr& n) {
            return proof({PrCut{derive_fa(n.left, depth, nat_bound),
                                proof({PrOrIntroL{n.left, n.right}})}});
          },
          [&](const PImplies& n) {
            // bot & B |- bot, then cut with bot |- C
            ProofPtr fst_proj = proof({PrAndElimL{p_absurd(), n.left}});
            ProofPtr body = proof({PrCut{fst_proj, derive_fa(n.right, depth, nat_bound)}});
            return proof({PrImpIntro{body}});
          },
          [&](const PForall& n) {
            auto card = type_closed_below(n.dom, depth)
                            ? type_cardinality(shift_type(n.dom, -static_cast<int64_t>(depth), 0))
                            : std::nullopt;
            if (card && *card == 0)
              throw EmptyDomainQuantifier("universal quantification over an empty domain");
            return proof({PrForallIntro{n.dom, derive_fa(n.fam.body, depth + 1, nat_bound)}});
          },
          [&](const PExists& n) -> ProofPtr {
            if (!type_closed_below(n.dom, depth))
              throw EmptyDomainQuantifier(
                  "cannot choose a uniform witness for a dependent existential domain");
            TypePtr dom = shift_type(n.dom, -static_cast<int64_t>(depth), 0);
            std::optional<Value> w;
            try {
              w = decide_inhabited(dom, nat_bound);
            } catch (const NotEnumerable&) {
              w = std::nullopt;
            }
            if (!w) throw EmptyDomainQuantifier("existential quantification over an empty domain");
            TermPtr t = shift_term(quote(*w), static_cast<int64_t>(depth));
            ProofPtr intro = proof({PrExistsIntro{proof({PrIdentity{a}}), t}});
            return proof({PrCut{derive_fa(open_prop(n.fam.body, t), depth, nat_bound), intro}});
          },
      },
      a->v);
}

ProofPtr derive_full_absurd(const PropPtr& a, uint64_t nat_bound) {
  return derive_fa(a, 0, nat_bound);
}

}  // namespace mrx
