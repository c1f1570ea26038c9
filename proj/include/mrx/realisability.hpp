#pragma once

// Modified realisability with truth: the witness-type maps MR and MR',
// brute-force inhabitation on enumerable types, and the correctness
// transformers (realised implies true).

#include "mrx/prop.hpp"

namespace mrx {

struct IllTypedRealiser : Error { using Error::Error; };
struct IllTypedWitness : Error { using Error::Error; };

enum class Variant { MR, MRPrime };

// test hook: deliberately corrupt a clause to make the soundness harness
// report violations (mutation test mode)
struct MRFlags {
  bool swap_or_clauses = false;
};

// The small type MR(S, r) (resp. MR'(S, r)). Projections and applications of
// the realiser are computed eagerly; the Pi clause for implication produces a
// computed family, checked only at enumerated points.
TypePtr mr_type(const PropPtr& s, const Value& r, const MRFlags& flags = {});
TypePtr mr_prime_type(const PropPtr& s, const Value& r, const MRFlags& flags = {});
TypePtr mr_type_v(Variant v, const PropPtr& s, const Value& r, const MRFlags& flags = {});

TypePtr cr_v(Variant v, const PropPtr& s);

struct MRJudgement {
  PropPtr prop;
  Value realiser;
  Variant variant;
  TypePtr witness_type;
};
// validates the realiser against the crude type before building the judgement
MRJudgement make_judgement(Variant v, const PropPtr& s, const Value& r, uint64_t nat_bound);

// first canonical inhabitant within the bound, if any; sound always and
// complete on fully finite types
std::optional<Value> decide_inhabited(const TypePtr& t, uint64_t nat_bound);

// Theorem-1 transformers: a witness of MR(S, r) becomes an inhabitant of
// tp(S). Quantified cases are produced pointwise as host functions.
Value correctness(const PropPtr& s, const Value& r, const Value& w);
Value correctness_prime(const PropPtr& s, const Value& r, const Value& w);
Value correctness_v(Variant v, const PropPtr& s, const Value& r, const Value& w);

// Attempt to build a witness of MR(S, r) by deciding the decidable parts.
// Function-typed components are produced lazily; forcing one at a point where
// the underlying proposition is false raises an Error.
std::optional<Value> mr_witness_search(Variant v, const PropPtr& s, const Value& r,
                                       uint64_t nat_bound);

}  // namespace mrx
