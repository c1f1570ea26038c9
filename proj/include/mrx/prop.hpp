#pragma once

// The inductive type of simple propositions and its three homomorphic
// translations into small types: the truth reading tp, the crude realiser
// types cr / cr_prime, and the canonical element of every cr_prime type.

#include "mrx/kernel.hpp"

namespace mrx {

struct Prop;
using PropPtr = std::shared_ptr<const Prop>;

// a proposition with one bound value variable (de Bruijn index 0 in `body`)
struct PropFamily {
  PropPtr body;
};

struct PAtom { TypePtr type; };
struct PAbsurd {};
struct PAnd { PropPtr left, right; };
struct POr { PropPtr left, right; };
struct PImplies { PropPtr left, right; };
struct PForall { TypePtr dom; PropFamily fam; };
struct PExists { TypePtr dom; PropFamily fam; };

struct Prop {
  std::variant<PAtom, PAbsurd, PAnd, POr, PImplies, PForall, PExists> v;
};

PropPtr p_atom(TypePtr t);
PropPtr p_absurd();
PropPtr p_and(PropPtr l, PropPtr r);
PropPtr p_or(PropPtr l, PropPtr r);
PropPtr p_implies(PropPtr l, PropPtr r);
PropPtr p_forall(TypePtr dom, PropPtr body);
PropPtr p_exists(TypePtr dom, PropPtr body);

PropPtr shift_prop(const PropPtr& p, int64_t d, size_t cutoff = 0);
PropPtr open_prop(const PropPtr& body, const TermPtr& arg);
PropPtr replace0_prop(const PropPtr& body, const TermPtr& arg);
bool prop_mentions_var(const PropPtr& p, size_t index);
bool prop_equal(const PropPtr& a, const PropPtr& b);
PropPtr instantiate(const PropFamily& fam, const Value& v, size_t depth = 0);
// substitute an environment for the free variables of an open proposition
PropPtr close_prop(const PropPtr& p, const EnvPtr& env, size_t binders = 0, size_t depth = 0);

// the propositions-as-types reading
TypePtr tp(const PropPtr& s);
// crude type of potential realisers (atoms and absurdity collapse to Unit)
TypePtr cr(const PropPtr& s);
// as cr, except existentials gain a unit summand so the type is never empty
TypePtr cr_prime(const PropPtr& s);

// the canonical element of cr_prime(s); total on all propositions
Value element(const PropPtr& s);
// the same element as a term; defined structurally, so open propositions
// yield open terms over the same variables
TermPtr element_term(const PropPtr& s);

// content-free realiser of cr(s) for existential-free propositions
// (the "nc" of an axiom bundle); throws Error when s contains an existential
TermPtr nocontent_term(const PropPtr& s);

}  // namespace mrx
