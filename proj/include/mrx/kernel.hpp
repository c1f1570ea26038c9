#pragma once

// Core term/type language and evaluator: a closed finitary type language,
// canonical values, call-by-value evaluation with a step counter, exhaustive
// enumeration of finite types, and normalisation by evaluation.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mrx {

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundVariable : Error { using Error::Error; };
struct StuckTerm : Error { using Error::Error; };
// The absurdity eliminator was reached with an actual value. If this fires
// outside of a deliberately broken test, something is unsound.
struct EmptyElimination : Error { using Error::Error; };
struct NotEnumerable : Error { using Error::Error; };
struct NonNormalisable : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Syntax

struct TypeExpr;
struct TermExpr;
struct ValueExpr;
struct NeutralExpr;
struct Env;

using TypePtr = std::shared_ptr<const TypeExpr>;
using TermPtr = std::shared_ptr<const TermExpr>;
using Value = std::shared_ptr<const ValueExpr>;
using NeutralPtr = std::shared_ptr<const NeutralExpr>;
using EnvPtr = std::shared_ptr<const Env>;

// A type with one bound value variable (de Bruijn index 0 in `body`).
// `compute` is an internal alternative used by the realisability translation,
// whose witness families are genuinely value-indexed; the parser never
// produces it.
struct TypeFamily {
  TypePtr body;
  std::function<TypePtr(const Value&)> compute;

  TypeFamily() = default;
  explicit TypeFamily(TypePtr b) : body(std::move(b)) {}
  explicit TypeFamily(std::function<TypePtr(const Value&)> f)
      : compute(std::move(f)) {}
  bool computed() const { return body == nullptr; }
};

struct TEmpty {};
struct TUnit {};
struct TNat {};
struct TFin { uint64_t size; };  // size >= 1
struct TSum { TypePtr left, right; };
struct TProd { TypePtr first, second; };
struct TFun { TypePtr dom, cod; };
struct TPi { TypePtr dom; TypeFamily fam; };
struct TSigma { TypePtr dom; TypeFamily fam; };
struct THolds { TermPtr cond; };  // Unit if cond evaluates true, Empty if false

struct TypeExpr {
  std::variant<TEmpty, TUnit, TNat, TFin, TSum, TProd, TFun, TPi, TSigma,
               THolds>
      v;
};

enum class PrimOp { Add, Eq, Le, BAnd, BOr, BNot };

struct TmVar { size_t index; };
struct TmLam { TermPtr body; };
struct TmApp { TermPtr fn, arg; };
struct TmPair { TermPtr first, second; };
struct TmFst { TermPtr t; };
struct TmSnd { TermPtr t; };
struct TmInl { TermPtr t; };
struct TmInr { TermPtr t; };
// case on sums; each branch binds one variable
struct TmCase { TermPtr scrut, left, right; };
// case on naturals; succ branch binds the predecessor
struct TmNatCase { TermPtr scrut, zero, succ; };
struct TmElt {};
struct TmZero {};
struct TmSucc { TermPtr t; };
// primitive recursion over Nat, fully applied to its target
struct TmRec { TypeFamily motive; TermPtr target, base, step; };
struct TmFinLit { uint64_t index, size; };
struct TmPrim { PrimOp op; TermPtr a, b; };  // b null for BNot
struct TmAbsurd { TermPtr t; };
// a value spliced into syntax; produced by instantiation, never by the parser
struct TmQuoted { Value v; };

struct TermExpr {
  std::variant<TmVar, TmLam, TmApp, TmPair, TmFst, TmSnd, TmInl, TmInr, TmCase,
               TmNatCase, TmElt, TmZero, TmSucc, TmRec, TmFinLit, TmPrim,
               TmAbsurd, TmQuoted>
      v;
};

// ---------------------------------------------------------------------------
// Values

struct Env {
  Value head;
  EnvPtr tail;
};

EnvPtr env_push(const EnvPtr& env, Value v);
const Value& env_get(const EnvPtr& env, size_t index);
size_t env_size(const EnvPtr& env);

struct VElt {};
struct VNat { uint64_t n; };
// offset >= 1 successors stacked on a neutral
struct VNatSucc { uint64_t offset; NeutralPtr base; };
struct VFin { uint64_t index, size; };
struct VPair { Value first, second; };
struct VInl { Value v; };
struct VInr { Value v; };
struct VClosure { EnvPtr env; TermPtr body; };
// finite function graph; keys in canonical enumeration order of the domain
struct VTable { std::vector<Value> keys, vals; };
// host-level function; used by the realisability witnesses
struct VNative { std::string tag; std::function<Value(const Value&)> fn; };
struct VNeutral { NeutralPtr n; };

struct ValueExpr {
  std::variant<VElt, VNat, VNatSucc, VFin, VPair, VInl, VInr, VClosure, VTable,
               VNative, VNeutral>
      v;
};

// an unevaluated branch body together with its environment
struct Clo {
  EnvPtr env;
  TermPtr body;
};

struct NVar { size_t level; };
struct NApp { NeutralPtr fn; Value arg; };
struct NFst { NeutralPtr t; };
struct NSnd { NeutralPtr t; };
struct NCase { NeutralPtr scrut; Clo left, right; };
struct NNatCase { NeutralPtr scrut; Clo zero, succ; };
struct NRec { TypeFamily motive; EnvPtr motive_env; Value target, base, step; };
struct NPrim { PrimOp op; Value a, b; };
struct NAbsurd { Value t; };

struct NeutralExpr {
  std::variant<NVar, NApp, NFst, NSnd, NCase, NNatCase, NRec, NPrim, NAbsurd> v;
};

// ---------------------------------------------------------------------------
// Constructors

TypePtr ty_empty();
TypePtr ty_unit();
TypePtr ty_nat();
TypePtr ty_fin(uint64_t size);
TypePtr ty_sum(TypePtr l, TypePtr r);
TypePtr ty_prod(TypePtr a, TypePtr b);
TypePtr ty_fun(TypePtr dom, TypePtr cod);
TypePtr ty_pi(TypePtr dom, TypeFamily fam);
TypePtr ty_sigma(TypePtr dom, TypeFamily fam);
TypePtr ty_holds(TermPtr cond);

TermPtr tm_var(size_t i);
TermPtr tm_lam(TermPtr body);
TermPtr tm_app(TermPtr f, TermPtr a);
TermPtr tm_pair(TermPtr a, TermPtr b);
TermPtr tm_fst(TermPtr t);
TermPtr tm_snd(TermPtr t);
TermPtr tm_inl(TermPtr t);
TermPtr tm_inr(TermPtr t);
TermPtr tm_case(TermPtr s, TermPtr l, TermPtr r);
TermPtr tm_natcase(TermPtr s, TermPtr z, TermPtr sc);
TermPtr tm_elt();
TermPtr tm_zero();
TermPtr tm_succ(TermPtr t);
TermPtr tm_nat(uint64_t n);
TermPtr tm_rec(TypeFamily motive, TermPtr target, TermPtr base, TermPtr step);
TermPtr tm_fin(uint64_t index, uint64_t size);
TermPtr tm_prim(PrimOp op, TermPtr a, TermPtr b = nullptr);
TermPtr tm_absurd(TermPtr t);
TermPtr tm_quoted(Value v);

Value v_elt();
Value v_nat(uint64_t n);
Value v_fin(uint64_t index, uint64_t size);
Value v_bool(bool b);  // Fin(2) encoding: 0 false, 1 true
Value v_pair(Value a, Value b);
Value v_inl(Value v);
Value v_inr(Value v);
Value v_closure(EnvPtr env, TermPtr body);
Value v_table(std::vector<Value> keys, std::vector<Value> vals);
Value v_native(std::string tag, std::function<Value(const Value&)> fn);
Value v_neutral(NeutralPtr n);
Value v_neutral_var(size_t level);

// ---------------------------------------------------------------------------
// de Bruijn operations

TermPtr shift_term(const TermPtr& t, int64_t d, size_t cutoff = 0);
TypePtr shift_type(const TypePtr& t, int64_t d, size_t cutoff = 0);
// instantiate variable 0 with `arg`, decrementing the remaining free variables
TermPtr open_term(const TermPtr& body, const TermPtr& arg);
TypePtr open_type(const TypePtr& body, const TermPtr& arg);
// replace variable 0 with `arg` without removing the binder
TermPtr replace0_term(const TermPtr& body, const TermPtr& arg);
TypePtr replace0_type(const TypePtr& body, const TermPtr& arg);
// generic substitution at an explicit cutoff; when remove_binder is set the
// variables above the cutoff drop by one
TermPtr subst_term_at(const TermPtr& t, const TermPtr& arg, size_t cutoff, bool remove_binder);
TypePtr subst_type_at(const TypePtr& t, const TermPtr& arg, size_t cutoff, bool remove_binder);

bool term_mentions_var(const TermPtr& t, size_t index);
bool type_mentions_var(const TypePtr& t, size_t index);

TypePtr instantiate(const TypeFamily& fam, const Value& v, size_t depth = 0);
// family domain/codomain view of a Pi/Fun (resp. Sigma/Prod) type
bool fun_like(const TypePtr& t, TypePtr* dom, TypeFamily* fam);
bool pair_like(const TypePtr& t, TypePtr* first, TypeFamily* fam);

// ---------------------------------------------------------------------------
// Evaluation

struct EvalContext {
  uint64_t steps = 0;
  uint64_t limit = 0;  // 0 = unlimited
  void tick() {
    ++steps;
    if (limit && steps > limit) throw Error("evaluation step limit exceeded");
  }
};

Value eval(const TermPtr& t, const EnvPtr& env, EvalContext& ctx);
Value eval(const TermPtr& t, const EnvPtr& env = nullptr);  // fresh context

Value apply(const Value& f, const Value& arg, EvalContext& ctx);
Value apply(const Value& f, const Value& arg);
Value vfst(const Value& v, EvalContext& ctx);
Value vsnd(const Value& v, EvalContext& ctx);
Value vfst(const Value& v);
Value vsnd(const Value& v);

// readback of a value into syntax; `depth` is the number of enclosing binders
// (neutral levels are converted to indices relative to it)
TermPtr quote(const Value& v, size_t depth = 0);

// close an open type over an environment, keeping `binders` variables bound
TypePtr close_type(const TypePtr& t, const EnvPtr& env, size_t binders, size_t depth);

// structural equality on canonical forms (closures, natives and neutrals
// compare equal only when pointer-identical)
bool value_equal(const Value& a, const Value& b);
bool term_equal(const TermPtr& a, const TermPtr& b);
// syntactic equality modulo the identifications Fun(A,B) = Pi(A, const B)
// and Prod(A,B) = Sigma(A, const B)
bool type_equal(const TypePtr& a, const TypePtr& b);

// ---------------------------------------------------------------------------
// Enumeration and checking

struct Enumeration {
  std::vector<Value> values;
  bool complete = true;  // false when a Nat component was truncated
};

// Every canonical inhabitant exactly once. Nat is truncated to {0..nat_bound}
// and flagged partial; Pi/Fun domains must enumerate completely.
Enumeration enumerate(const TypePtr& t, uint64_t nat_bound);

// Analytic cardinality of a closed type; nullopt for infinite (or
// non-enumerable) types.
std::optional<uint64_t> type_cardinality(const TypePtr& t);

// True iff `v` is a canonical inhabitant of `t`. Function values are checked
// by application at every enumerable domain point; a function over a
// non-enumerable domain passes the (shallow) structural check.
bool check_value(const Value& v, const TypePtr& t, uint64_t nat_bound);

// ---------------------------------------------------------------------------
// Normalisation by evaluation

// beta-normal, eta-long form of a closed term at the given type; idempotent.
TermPtr normalise(const TermPtr& t, const TypePtr& ty);

}  // namespace mrx
