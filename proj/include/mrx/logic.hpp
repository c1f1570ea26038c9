#pragma once

// The infinitary intuitionistic sequent calculus (proof syntax and checker)
// and the soundness machinery: per-rule realiser extraction, forall/exists
// program extraction, and the induction / choice / trivial-transfer
// realisers.

#include "mrx/realisability.hpp"

namespace mrx {

struct MalformedRule : Error { using Error::Error; };
struct NonEnumerableDomain : Error { using Error::Error; };
struct UsesFullAbsurd : Error { using Error::Error; };
struct WrongShape : Error { using Error::Error; };
struct InlBranchReached : Error { using Error::Error; };
struct MissingDefault : Error { using Error::Error; };
struct NotAtomicConclusion : Error { using Error::Error; };
struct EmptyDomainQuantifier : Error { using Error::Error; };

struct Sequent {
  PropPtr antecedent, succedent;
};

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

// One node per rule. Terms stored in nodes (instantiation witnesses, atom
// inhabitants) may mention variables bound by enclosing infinitary rules;
// the checker evaluates them at every enumerated point of those binders.
struct PrIdentity { PropPtr prop; };                                  // A |- A
struct PrCut { ProofPtr left, right; };                               // A|-B, B|-C => A|-C
struct PrInhabitedAtom { PropPtr antecedent; TypePtr atom; TermPtr witness; };  // A |- atom(P)
struct PrAndElimL { PropPtr left, right; };                           // A&B |- A
struct PrAndElimR { PropPtr left, right; };                           // A&B |- B
struct PrAndIntro { ProofPtr left, right; };                          // C|-A, C|-B => C|-A&B
struct PrWeakAbsurd { TypePtr atom; };                                // bot |- atom(P)
struct PrOrIntroL { PropPtr left, right; };                           // A |- A v B
struct PrOrIntroR { PropPtr left, right; };                           // B |- A v B
struct PrOrElim { ProofPtr left, right; };                            // A|-C, B|-C => AvB|-C
struct PrImpIntro { ProofPtr premise; };                              // A&B|-C => A|-B->C
struct PrImpElim { ProofPtr premise; };                               // A|-B->C => A&B|-C
// schematic premise family: the premise proof is uniform in one bound value
struct PrForallIntro { TypePtr dom; ProofPtr premise; };              // A|-P(t) (t:S) => A|-all(S,P)
struct PrForallElim { ProofPtr premise; TermPtr at; };                // A|-all(S,P), t:S => A|-P(t)
struct PrExistsElim { TypePtr dom; ProofPtr premise; };               // P(t)|-A (t:S) => ex(S,P)|-A
struct PrExistsIntro { ProofPtr premise; TermPtr at; };               // ex(S,P)|-A, t:S => P(t)|-A
struct PrFullAbsurd { PropPtr prop; };                                // bot |- A   (IPC-infinity only)
struct PrInduction { PropPtr antecedent; PropFamily family; };        // G |- Ind(P)
struct PrChoice {
  PropPtr antecedent;
  TypePtr dom, cod;
  PropPtr body;  // two binders: index 1 is x:dom, index 0 is y:cod
  TermPtr fallback;  // b0, required for the MR' extraction when used
};
struct PrTrivialTransfer { PropPtr antecedent; PropPtr conclusion; };  // Q |- P, P atomic or bot

struct Proof {
  std::variant<PrIdentity, PrCut, PrInhabitedAtom, PrAndElimL, PrAndElimR, PrAndIntro,
               PrWeakAbsurd, PrOrIntroL, PrOrIntroR, PrOrElim, PrImpIntro, PrImpElim,
               PrForallIntro, PrForallElim, PrExistsElim, PrExistsIntro, PrFullAbsurd,
               PrInduction, PrChoice, PrTrivialTransfer>
      v;
};

ProofPtr proof(Proof p);

struct CheckOptions {
  uint64_t nat_bound = 8;
};

// Structural validity of every rule instance plus pointwise validation of the
// truth side conditions under all enumerable instantiations of the schematic
// binders. Returns the conclusion sequent.
Sequent check(const ProofPtr& p, const CheckOptions& opts = {});
bool proof_uses_full_absurd(const ProofPtr& p);
bool proof_equal(const ProofPtr& a, const ProofPtr& b);

struct ExtractionResult {
  PropPtr prop;  // the realised proposition; Implies(A, B) for a sequent A |- B
  Variant variant = Variant::MR;
  TermPtr realiser_term;  // closed
  Value realiser;
  Value witness;  // inhabitant of mr_type_v(variant, prop, realiser)
};

ExtractionResult extract(const ProofPtr& p, const CheckOptions& opts = {});
ExtractionResult extract_prime(const ProofPtr& p, const CheckOptions& opts = {});
ExtractionResult extract_v(Variant v, const ProofPtr& p, const CheckOptions& opts = {});

// forall/exists program extraction. `res` realises either the goal itself or
// Implies(assumptions, goal); in the latter case `assumptions_realiser` must
// be supplied (a closed term, e.g. the nocontent realiser of an axiom bundle).
struct AEProgram {
  TypePtr dom, cod;
  TermPtr program;  // closed; evaluates to the extracted f composed with .1
  Value fn;
  std::function<Value(const Value&)> witness_at;  // x -> inhabitant of tp(P(x, f(x)))
};
AEProgram ae_extract(const PropPtr& goal, const ExtractionResult& res,
                     const TermPtr& assumptions_realiser, uint64_t nat_bound);

// the induction scheme P(0) & (all x)[P(x) -> P(S x)] -> (all x) P(x)
ExtractionResult induction_realiser(const PropFamily& family, Variant v);
// the choice principle (all x:A)(ex y:B) P -> (ex g:A->B)(all x:A) P(x, g x);
// MR' requires the fallback b0 : B
ExtractionResult choice_realiser(const TypePtr& dom, const TypePtr& cod, const PropPtr& body,
                                 const TermPtr& fallback, Variant v);
// (all x1:A1)...(all xn:An)[Q -> P] with P atomic or absurd, realised by the
// trivial function; truth_evidence inhabits the tp-translation
ExtractionResult trivial_realiser(const std::vector<TypePtr>& prefix, const PropPtr& q,
                                  const PropPtr& p, const Value& truth_evidence, Variant v);

// derive bot |- A in the restricted system, for A without quantification over
// empty domains
ProofPtr derive_full_absurd(const PropPtr& a, uint64_t nat_bound);

}  // namespace mrx
