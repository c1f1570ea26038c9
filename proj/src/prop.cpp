#include "mrx/prop.hpp"

namespace mrx {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

static PropPtr mk_p(Prop p) { return std::make_shared<Prop>(std::move(p)); }

PropPtr p_atom(TypePtr t) { return mk_p({PAtom{std::move(t)}}); }
PropPtr p_absurd() {
  static PropPtr p = mk_p({PAbsurd{}});
  return p;
}
PropPtr p_and(PropPtr l, PropPtr r) { return mk_p({PAnd{std::move(l), std::move(r)}}); }
PropPtr p_or(PropPtr l, PropPtr r) { return mk_p({POr{std::move(l), std::move(r)}}); }
PropPtr p_implies(PropPtr l, PropPtr r) { return mk_p({PImplies{std::move(l), std::move(r)}}); }
PropPtr p_forall(TypePtr dom, PropPtr body) {
  return mk_p({PForall{std::move(dom), PropFamily{std::move(body)}}});
}
PropPtr p_exists(TypePtr dom, PropPtr body) {
  return mk_p({PExists{std::move(dom), PropFamily{std::move(body)}}});
}

PropPtr shift_prop(const PropPtr& p, int64_t d, size_t cutoff) {
  if (d == 0) return p;
  return std::visit(
      overloaded{
          [&](const PAtom& a) { return p_atom(shift_type(a.type, d, cutoff)); },
          [&](const PAbsurd&) { return p; },
          [&](const PAnd& x) { return p_and(shift_prop(x.left, d, cutoff), shift_prop(x.right, d, cutoff)); },
          [&](const POr& x) { return p_or(shift_prop(x.left, d, cutoff), shift_prop(x.right, d, cutoff)); },
          [&](const PImplies& x) {
            return p_implies(shift_prop(x.left, d, cutoff), shift_prop(x.right, d, cutoff));
          },
          [&](const PForall& x) {
            return p_forall(shift_type(x.dom, d, cutoff), shift_prop(x.fam.body, d, cutoff + 1));
          },
          [&](const PExists& x) {
            return p_exists(shift_type(x.dom, d, cutoff), shift_prop(x.fam.body, d, cutoff + 1));
          },
      },
      p->v);
}

static PropPtr subst_prop(const PropPtr& p, const TermPtr& arg, size_t cutoff, bool remove) {
  return std::visit(
      overloaded{
          [&](const PAtom& a) { return p_atom(subst_type_at(a.type, arg, cutoff, remove)); },
          [&](const PAbsurd&) { return p; },
          [&](const PAnd& x) {
            return p_and(subst_prop(x.left, arg, cutoff, remove), subst_prop(x.right, arg, cutoff, remove));
          },
          [&](const POr& x) {
            return p_or(subst_prop(x.left, arg, cutoff, remove), subst_prop(x.right, arg, cutoff, remove));
          },
          [&](const PImplies& x) {
            return p_implies(subst_prop(x.left, arg, cutoff, remove),
                             subst_prop(x.right, arg, cutoff, remove));
          },
          [&](const PForall& x) {
            return p_forall(subst_type_at(x.dom, arg, cutoff, remove),
                            subst_prop(x.fam.body, arg, cutoff + 1, remove));
          },
          [&](const PExists& x) {
            return p_exists(subst_type_at(x.dom, arg, cutoff, remove),
                            subst_prop(x.fam.body, arg, cutoff + 1, remove));
          },
      },
      p->v);
}

PropPtr open_prop(const PropPtr& body, const TermPtr& arg) { return subst_prop(body, arg, 0, true); }
PropPtr replace0_prop(const PropPtr& body, const TermPtr& arg) {
  return subst_prop(body, arg, 0, false);
}

bool prop_mentions_var(const PropPtr& p, size_t index) {
  return std::visit(
      overloaded{
          [&](const PAtom& a) { return type_mentions_var(a.type, index); },
          [&](const PAbsurd&) { return false; },
          [&](const PAnd& x) {
            return prop_mentions_var(x.left, index) || prop_mentions_var(x.right, index);
          },
          [&](const POr& x) {
            return prop_mentions_var(x.left, index) || prop_mentions_var(x.right, index);
          },
          [&](const PImplies& x) {
            return prop_mentions_var(x.left, index) || prop_mentions_var(x.right, index);
          },
          [&](const PForall& x) {
            return type_mentions_var(x.dom, index) || prop_mentions_var(x.fam.body, index + 1);
          },
          [&](const PExists& x) {
            return type_mentions_var(x.dom, index) || prop_mentions_var(x.fam.body, index + 1);
          },
      },
      p->v);
}

bool prop_equal(const PropPtr& a, const PropPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      overloaded{
          [&](const PAtom& x) { return type_equal(x.type, std::get<PAtom>(b->v).type); },
          [&](const PAbsurd&) { return true; },
          [&](const PAnd& x) {
            const auto& y = std::get<PAnd>(b->v);
            return prop_equal(x.left, y.left) && prop_equal(x.right, y.right);
          },
          [&](const POr& x) {
            const auto& y = std::get<POr>(b->v);
            return prop_equal(x.left, y.left) && prop_equal(x.right, y.right);
          },
          [&](const PImplies& x) {
            const auto& y = std::get<PImplies>(b->v);
            return prop_equal(x.left, y.left) && prop_equal(x.right, y.right);
          },
          [&](const PForall& x) {
            const auto& y = std::get<PForall>(b->v);
            return type_equal(x.dom, y.dom) && prop_equal(x.fam.body, y.fam.body);
          },
          [&](const PExists& x) {
            const auto& y = std::get<PExists>(b->v);
            return type_equal(x.dom, y.dom) && prop_equal(x.fam.body, y.fam.body);
          },
      },
      a->v);
}

PropPtr instantiate(const PropFamily& fam, const Value& v, size_t depth) {
  return open_prop(fam.body, quote(v, depth));
}

PropPtr close_prop(const PropPtr& p, const EnvPtr& env, size_t binders, size_t depth) {
  PropPtr out = p;
  // substitute the environment entries for the free variables, innermost first
  size_t n = env_size(env);
  for (size_t i = 0; i < n; ++i) {
    TermPtr q = shift_term(quote(env_get(env, i), depth), static_cast<int64_t>(binders));
    out = subst_prop(out, q, binders, true);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translations

// emit the non-dependent constructor when the family is constant
static TypePtr sigma_or_prod(const TypePtr& dom, const PropPtr& body, TypePtr (*tr)(const PropPtr&)) {
  TypePtr b = tr(body);
  if (!type_mentions_var(b, 0)) return ty_prod(dom, shift_type(b, -1, 1));
  return ty_sigma(dom, TypeFamily(b));
}
static TypePtr pi_or_fun(const TypePtr& dom, const PropPtr& body, TypePtr (*tr)(const PropPtr&)) {
  TypePtr b = tr(body);
  if (!type_mentions_var(b, 0)) return ty_fun(dom, shift_type(b, -1, 1));
  return ty_pi(dom, TypeFamily(b));
}

TypePtr tp(const PropPtr& s) {
  return std::visit(
      overloaded{
          [&](const PAtom& a) { return a.type; },
          [&](const PAbsurd&) { return ty_empty(); },
          [&](const PAnd& x) { return ty_prod(tp(x.left), tp(x.right)); },
          [&](const POr& x) { return ty_sum(tp(x.left), tp(x.right)); },
          [&](const PImplies& x) { return ty_fun(tp(x.left), tp(x.right)); },
          [&](const PForall& x) { return pi_or_fun(x.dom, x.fam.body, &tp); },
          [&](const PExists& x) { return sigma_or_prod(x.dom, x.fam.body, &tp); },
      },
      s->v);
}

TypePtr cr(const PropPtr& s) {
  return std::visit(
      overloaded{
          [&](const PAtom&) { return ty_unit(); },
          [&](const PAbsurd&) { return ty_unit(); },
          [&](const PAnd& x) { return ty_prod(cr(x.left), cr(x.right)); },
          [&](const POr& x) { return ty_sum(cr(x.left), cr(x.right)); },
          [&](const PImplies& x) { return ty_fun(cr(x.left), cr(x.right)); },
          [&](const PForall& x) { return pi_or_fun(x.dom, x.fam.body, &cr); },
          [&](const PExists& x) { return sigma_or_prod(x.dom, x.fam.body, &cr); },
      },
      s->v);
}

TypePtr cr_prime(const PropPtr& s) {
  return std::visit(
      overloaded{
          [&](const PAtom&) { return ty_unit(); },
          [&](const PAbsurd&) { return ty_unit(); },
          [&](const PAnd& x) { return ty_prod(cr_prime(x.left), cr_prime(x.right)); },
          [&](const POr& x) { return ty_sum(cr_prime(x.left), cr_prime(x.right)); },
          [&](const PImplies& x) { return ty_fun(cr_prime(x.left), cr_prime(x.right)); },
          [&](const PForall& x) { return pi_or_fun(x.dom, x.fam.body, &cr_prime); },
          [&](const PExists& x) {
            return ty_sum(ty_unit(), sigma_or_prod(x.dom, x.fam.body, &cr_prime));
          },
      },
      s->v);
}

// ---------------------------------------------------------------------------
// The element device

TermPtr element_term(const PropPtr& s) {
  return std::visit(
      overloaded{
          [&](const PAtom&) { return tm_elt(); },
          [&](const PAbsurd&) { return tm_elt(); },
          [&](const PAnd& x) { return tm_pair(element_term(x.left), element_term(x.right)); },
          [&](const POr& x) { return tm_inl(element_term(x.left)); },
          [&](const PImplies& x) {
            return tm_lam(shift_term(element_term(x.right), 1));
          },
          [&](const PForall& x) { return tm_lam(element_term(x.fam.body)); },
          [&](const PExists&) { return tm_inl(tm_elt()); },
      },
      s->v);
}

Value element(const PropPtr& s) {
  EvalContext ctx;
  return eval(element_term(s), nullptr, ctx);
}

TermPtr nocontent_term(const PropPtr& s) {
  return std::visit(
      overloaded{
          [&](const PAtom&) { return tm_elt(); },
          [&](const PAbsurd&) { return tm_elt(); },
          [&](const PAnd& x) { return tm_pair(nocontent_term(x.left), nocontent_term(x.right)); },
          [&](const POr& x) { return tm_inl(nocontent_term(x.left)); },
          [&](const PImplies& x) { return tm_lam(shift_term(nocontent_term(x.right), 1)); },
          [&](const PForall& x) { return tm_lam(nocontent_term(x.fam.body)); },
          [&](const PExists&) -> TermPtr {
            throw Error("no content-free realiser for an existential under cr");
          },
      },
      s->v);
}

}  // namespace mrx
