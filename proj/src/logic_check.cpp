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

ProofPtr proof(Proof p) { return std::make_shared<Proof>(std::move(p)); }

// ---------------------------------------------------------------------------
// Symbolic conclusions

// the conclusion of the induction node for a family P over Nat
static PropPtr induction_prop(const PropFamily& fam) {
  PropPtr base = open_prop(fam.body, tm_zero());
  PropPtr step =
      p_forall(ty_nat(), p_implies(fam.body, replace0_prop(fam.body, tm_succ(tm_var(0)))));
  PropPtr concl = p_forall(ty_nat(), fam.body);
  return p_implies(p_and(base, step), concl);
}

static PropPtr choice_prop(const TypePtr& dom, const TypePtr& cod, const PropPtr& body) {
  PropPtr lhs = p_forall(dom, p_exists(shift_type(cod, 1), body));
  PropPtr opened = open_prop(shift_prop(body, 1, 2), tm_app(tm_var(1), tm_var(0)));
  PropPtr rhs = p_exists(ty_fun(dom, cod), p_forall(shift_type(dom, 1), opened));
  return p_implies(lhs, rhs);
}

Sequent conclusion_of(const ProofPtr& p);

Sequent conclusion_of(const ProofPtr& p) {
  return std::visit(
      overloaded{
          [&](const PrIdentity& n) { return Sequent{n.prop, n.prop}; },
          [&](const PrCut& n) {
            Sequent l = conclusion_of(n.left), r = conclusion_of(n.right);
            if (!prop_equal(l.succedent, r.antecedent))
              throw MalformedRule("cut: premises do not meet");
            return Sequent{l.antecedent, r.succedent};
          },
          [&](const PrInhabitedAtom& n) { return Sequent{n.antecedent, p_atom(n.atom)}; },
          [&](const PrAndElimL& n) { return Sequent{p_and(n.left, n.right), n.left}; },
          [&](const PrAndElimR& n) { return Sequent{p_and(n.left, n.right), n.right}; },
          [&](const PrAndIntro& n) {
            Sequent l = conclusion_of(n.left), r = conclusion_of(n.right);
            if (!prop_equal(l.antecedent, r.antecedent))
              throw MalformedRule("and-intro: premises have different antecedents");
            return Sequent{l.antecedent, p_and(l.succedent, r.succedent)};
          },
          [&](const PrWeakAbsurd& n) { return Sequent{p_absurd(), p_atom(n.atom)}; },
          [&](const PrOrIntroL& n) { return Sequent{n.left, p_or(n.left, n.right)}; },
          [&](const PrOrIntroR& n) { return Sequent{n.right, p_or(n.left, n.right)}; },
          [&](const PrOrElim& n) {
            Sequent l = conclusion_of(n.left), r = conclusion_of(n.right);
            if (!prop_equal(l.succedent, r.succedent))
              throw MalformedRule("or-elim: premises have different succedents");
            return Sequent{p_or(l.antecedent, r.antecedent), l.succedent};
          },
          [&](const PrImpIntro& n) {
            Sequent s = conclusion_of(n.premise);
            const auto* a = std::get_if<PAnd>(&s.antecedent->v);
            if (!a) throw MalformedRule("imp-intro: premise antecedent is not a conjunction");
            return Sequent{a->left, p_implies(a->right, s.succedent)};
          },
          [&](const PrImpElim& n) {
            Sequent s = conclusion_of(n.premise);
            const auto* i = std::get_if<PImplies>(&s.succedent->v);
            if (!i) throw MalformedRule("imp-elim: premise succedent is not an implication");
            return Sequent{p_and(s.antecedent, i->left), i->right};
          },
          [&](const PrForallIntro& n) {
            Sequent s = conclusion_of(n.premise);
            if (prop_mentions_var(s.antecedent, 0))
              throw MalformedRule("forall-intro: antecedent mentions the bound variable");
            PropPtr ante = shift_prop(s.antecedent, -1, 0);
            return Sequent{ante, p_forall(n.dom, s.succedent)};
          },
          [&](const PrForallElim& n) {
            Sequent s = conclusion_of(n.premise);
            const auto* f = std::get_if<PForall>(&s.succedent->v);
            if (!f) throw MalformedRule("forall-elim: premise succedent is not universal");
            return Sequent{s.antecedent, open_prop(f->fam.body, n.at)};
          },
          [&](const PrExistsElim& n) {
            Sequent s = conclusion_of(n.premise);
            if (prop_mentions_var(s.succedent, 0))
              throw MalformedRule("exists-elim: succedent mentions the bound variable");
            PropPtr succ = shift_prop(s.succedent, -1, 0);
            return Sequent{p_exists(n.dom, s.antecedent), succ};
          },
          [&](const PrExistsIntro& n) {
            Sequent s = conclusion_of(n.premise);
            const auto* e = std::get_if<PExists>(&s.antecedent->v);
            if (!e) throw MalformedRule("exists-intro: premise antecedent is not existential");
            return Sequent{open_prop(e->fam.body, n.at), s.succedent};
          },
          [&](const PrFullAbsurd& n) { return Sequent{p_absurd(), n.prop}; },
          [&](const PrInduction& n) { return Sequent{n.antecedent, induction_prop(n.family)}; },
          [&](const PrChoice& n) {
            return Sequent{n.antecedent, choice_prop(n.dom, n.cod, n.body)};
          },
          [&](const PrTrivialTransfer& n) {
            bool atomic = std::holds_alternative<PAtom>(n.conclusion->v) ||
                          std::holds_alternative<PAbsurd>(n.conclusion->v);
            if (!atomic)
              throw MalformedRule("trivial-transfer: conclusion is not atomic or absurd");
            return Sequent{n.antecedent, n.conclusion};
          },
      },
      p->v);
}

// ---------------------------------------------------------------------------
// Pointwise validation

// does the subtree carry side conditions that require concrete instances?
static bool needs_points(const ProofPtr& p) {
  return std::visit(
      overloaded{
          [&](const PrIdentity&) { return false; },
          [&](const PrCut& n) { return needs_points(n.left) || needs_points(n.right); },
          [&](const PrInhabitedAtom&) { return true; },
          [&](const PrAndElimL&) { return false; },
          [&](const PrAndElimR&) { return false; },
          [&](const PrAndIntro& n) { return needs_points(n.left) || needs_points(n.right); },
          [&](const PrWeakAbsurd&) { return false; },
          [&](const PrOrIntroL&) { return false; },
          [&](const PrOrIntroR&) { return false; },
          [&](const PrOrElim& n) { return needs_points(n.left) || needs_points(n.right); },
          [&](const PrImpIntro& n) { return needs_points(n.premise); },
          [&](const PrImpElim& n) { return needs_points(n.premise); },
          [&](const PrForallIntro& n) { return true; },
          [&](const PrForallElim&) { return true; },
          [&](const PrExistsElim& n) { return true; },
          [&](const PrExistsIntro&) { return true; },
          [&](const PrFullAbsurd&) { return false; },
          [&](const PrInduction&) { return false; },
          [&](const PrChoice& n) { return n.fallback != nullptr; },
          [&](const PrTrivialTransfer&) { return true; },
      },
      p->v);
}

static void validate(const ProofPtr& p, const EnvPtr& env, const CheckOptions& opts);

// enumerate a schematic binder's domain and validate the premise per point
static void validate_family(const TypePtr& dom, const ProofPtr& premise, const EnvPtr& env,
                            const CheckOptions& opts) {
  TypePtr dom_c = close_type(dom, env, 0, 0);
  Enumeration points;
  try {
    points = enumerate(dom_c, opts.nat_bound);
  } catch (const NotEnumerable& e) {
    if (needs_points(premise))
      throw NonEnumerableDomain(std::string("infinitary premise family over a non-enumerable "
                                            "domain: ") +
                                e.what());
    return;  // purely structural subtree; the symbolic pass suffices
  }
  for (const auto& v : points.values) validate(premise, env_push(env, v), opts);
}

static void validate(const ProofPtr& p, const EnvPtr& env, const CheckOptions& opts) {
  std::visit(
      overloaded{
          [&](const PrIdentity&) {},
          [&](const PrCut& n) {
            validate(n.left, env, opts);
            validate(n.right, env, opts);
          },
          [&](const PrInhabitedAtom& n) {
            TypePtr atom = close_type(n.atom, env, 0, 0);
            Value w;
            try {
              w = eval(n.witness, env);
            } catch (const Error& e) {
              throw MalformedRule(std::string("inhabited-atom: witness evaluation failed: ") +
                                  e.what());
            }
            if (!check_value(w, atom, opts.nat_bound))
              throw MalformedRule("inhabited-atom: witness does not inhabit the atom");
          },
          [&](const PrAndElimL&) {},
          [&](const PrAndElimR&) {},
          [&](const PrAndIntro& n) {
            validate(n.left, env, opts);
            validate(n.right, env, opts);
          },
          [&](const PrWeakAbsurd&) {},
          [&](const PrOrIntroL&) {},
          [&](const PrOrIntroR&) {},
          [&](const PrOrElim& n) {
            validate(n.left, env, opts);
            validate(n.right, env, opts);
          },
          [&](const PrImpIntro& n) { validate(n.premise, env, opts); },
          [&](const PrImpElim& n) { validate(n.premise, env, opts); },
          [&](const PrForallIntro& n) { validate_family(n.dom, n.premise, env, opts); },
          [&](const PrForallElim& n) {
            validate(n.premise, env, opts);
            Sequent s = conclusion_of(n.premise);
            const auto* f = std::get_if<PForall>(&s.succedent->v);
            if (!f) return;  // already rejected symbolically
            TypePtr dom = close_type(f->dom, env, 0, 0);
            Value tv;
            try {
              tv = eval(n.at, env);
            } catch (const Error& e) {
              throw MalformedRule(std::string("forall-elim: instantiation term failed: ") +
                                  e.what());
            }
            if (!check_value(tv, dom, opts.nat_bound))
              throw MalformedRule("forall-elim: instance is not in the quantifier domain");
          },
          [&](const PrExistsElim& n) { validate_family(n.dom, n.premise, env, opts); },
          [&](const PrExistsIntro& n) {
            validate(n.premise, env, opts);
            Sequent s = conclusion_of(n.premise);
            const auto* e = std::get_if<PExists>(&s.antecedent->v);
            if (!e) return;
            TypePtr dom = close_type(e->dom, env, 0, 0);
            Value tv;
            try {
              tv = eval(n.at, env);
            } catch (const Error& err) {
              throw MalformedRule(std::string("exists-intro: instantiation term failed: ") +
                                  err.what());
            }
            if (!check_value(tv, dom, opts.nat_bound))
              throw MalformedRule("exists-intro: instance is not in the quantifier domain");
          },
          [&](const PrFullAbsurd&) {},
          [&](const PrInduction&) {},
          [&](const PrChoice& n) {
            if (!n.fallback) return;
            TypePtr cod = close_type(n.cod, env, 0, 0);
            Value b0;
            try {
              b0 = eval(n.fallback, env);
            } catch (const Error& e) {
              throw MalformedRule(std::string("choice: fallback evaluation failed: ") + e.what());
            }
            if (!check_value(b0, cod, opts.nat_bound))
              throw MalformedRule("choice: fallback is not in the codomain");
          },
          [&](const PrTrivialTransfer& n) {
            PropPtr q = close_prop(n.antecedent, env);
            PropPtr c = close_prop(n.conclusion, env);
            std::optional<Value> concl_inhabited, ante_inhabited;
            try {
              concl_inhabited = decide_inhabited(tp(c), opts.nat_bound);
              if (!concl_inhabited) ante_inhabited = decide_inhabited(tp(q), opts.nat_bound);
            } catch (const NotEnumerable& e) {
              throw NonEnumerableDomain(
                  std::string("trivial-transfer: truth is not decidable here: ") + e.what());
            }
            if (!concl_inhabited && ante_inhabited)
              throw MalformedRule("trivial-transfer: the transfer implication is not true");
          },
      },
      p->v);
}

Sequent check(const ProofPtr& p, const CheckOptions& opts) {
  Sequent s = conclusion_of(p);
  validate(p, nullptr, opts);
  return s;
}

bool proof_uses_full_absurd(const ProofPtr& p) {
  return std::visit(
      overloaded{
          [&](const PrFullAbsurd&) { return true; },
          [&](const PrCut& n) {
            return proof_uses_full_absurd(n.left) || proof_uses_full_absurd(n.right);
          },
          [&](const PrAndIntro& n) {
            return proof_uses_full_absurd(n.left) || proof_uses_full_absurd(n.right);
          },
          [&](const PrOrElim& n) {
            return proof_uses_full_absurd(n.left) || proof_uses_full_absurd(n.right);
          },
          [&](const PrImpIntro& n) { return proof_uses_full_absurd(n.premise); },
          [&](const PrImpElim& n) { return proof_uses_full_absurd(n.premise); },
          [&](const PrForallIntro& n) { return proof_uses_full_absurd(n.premise); },
          [&](const PrForallElim& n) { return proof_uses_full_absurd(n.premise); },
          [&](const PrExistsElim& n) { return proof_uses_full_absurd(n.premise); },
          [&](const PrExistsIntro& n) { return proof_uses_full_absurd(n.premise); },
          [&](const auto&) { return false; },
      },
      p->v);
}

bool proof_equal(const ProofPtr& a, const ProofPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->v.index() != b->v.index()) return false;
  auto fam_eq = [](const PropFamily& x, const PropFamily& y) {
    return prop_equal(x.body, y.body);
  };
  return std::visit(
      overloaded{
          [&](const PrIdentity& x) { return prop_equal(x.prop, std::get<PrIdentity>(b->v).prop); },
          [&](const PrCut& x) {
            const auto& y = std::get<PrCut>(b->v);
            return proof_equal(x.left, y.left) && proof_equal(x.right, y.right);
          },
          [&](const PrInhabitedAtom& x) {
            const auto& y = std::get<PrInhabitedAtom>(b->v);
            return prop_equal(x.antecedent, y.antecedent) && type_equal(x.atom, y.atom) &&
                   term_equal(x.witness, y.witness);
          },
          [&](const PrAndElimL& x) {
            const auto& y = std::get<PrAndElimL>(b->v);
            return prop_equal(x.left, y.left) && prop_equal(x.right, y.right);
          },
          [&](const PrAndElimR& x) {
            const auto& y = std::get<PrAndElimR>(b->v);
            return prop_equal(x.left, y.left) && prop_equal(x.right, y.right);
          },
          [&](const PrAndIntro& x) {
            const auto& y = std::get<PrAndIntro>(b->v);
            return proof_equal(x.left, y.left) && proof_equal(x.right, y.right);
          },
          [&](const PrWeakAbsurd& x) {
            return type_equal(x.atom, std::get<PrWeakAbsurd>(b->v).atom);
          },
          [&](const PrOrIntroL& x) {
            const auto& y = std::get<PrOrIntroL>(b->v);
            return prop_equal(x.left, y.left) && prop_equal(x.right, y.right);
          },
          [&](const PrOrIntroR& x) {
            const auto& y = std::get<PrOrIntroR>(b->v);
            return prop_equal(x.left, y.left) && prop_equal(x.right, y.right);
          },
          [&](const PrOrElim& x) {
            const auto& y = std::get<PrOrElim>(b->v);
            return proof_equal(x.left, y.left) && proof_equal(x.right, y.right);
          },
          [&](const PrImpIntro& x) {
            return proof_equal(x.premise, std::get<PrImpIntro>(b->v).premise);
          },
          [&](const PrImpElim& x) {
            return proof_equal(x.premise, std::get<PrImpElim>(b->v).premise);
          },
          [&](const PrForallIntro& x) {
            const auto& y = std::get<PrForallIntro>(b->v);
            return type_equal(x.dom, y.dom) && proof_equal(x.premise, y.premise);
          },
          [&](const PrForallElim& x) {
            const auto& y = std::get<PrForallElim>(b->v);
            return proof_equal(x.premise, y.premise) && term_equal(x.at, y.at);
          },
          [&](const PrExistsElim& x) {
            const auto& y = std::get<PrExistsElim>(b->v);
            return type_equal(x.dom, y.dom) && proof_equal(x.premise, y.premise);
          },
          [&](const PrExistsIntro& x) {
            const auto& y = std::get<PrExistsIntro>(b->v);
            return proof_equal(x.premise, y.premise) && term_equal(x.at, y.at);
          },
          [&](const PrFullAbsurd& x) {
            return prop_equal(x.prop, std::get<PrFullAbsurd>(b->v).prop);
          },
          [&](const PrInduction& x) {
            const auto& y = std::get<PrInduction>(b->v);
            return prop_equal(x.antecedent, y.antecedent) && fam_eq(x.family, y.family);
          },
          [&](const PrChoice& x) {
            const auto& y = std::get<PrChoice>(b->v);
            bool fb = (!x.fallback && !y.fallback) ||
                      (x.fallback && y.fallback && term_equal(x.fallback, y.fallback));
            return prop_equal(x.antecedent, y.antecedent) && type_equal(x.dom, y.dom) &&
                   type_equal(x.cod, y.cod) && prop_equal(x.body, y.body) && fb;
          },
          [&](const PrTrivialTransfer& x) {
            const auto& y = std::get<PrTrivialTransfer>(b->v);
            return prop_equal(x.antecedent, y.antecedent) && prop_equal(x.conclusion, y.conclusion);
          },
      },
      p->v);
}

}  // namespace mrx
