#include "mrx/kernel.hpp"

namespace mrx {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// environment of fresh neutrals for a binder stack of the given depth
EnvPtr env_of_depth(size_t depth) {
  EnvPtr env;
  for (size_t level = 0; level < depth; ++level) env = env_push(env, v_neutral_var(level));
  return env;
}

// Type-directed readback: beta-normal and eta-long at every position where
// the type is informative. Neutral spines fall back to untyped readback.
TermPtr readback(const Value& v, const TypePtr& ty, size_t depth) {
  if (!ty) return quote(v, depth);
  TypePtr dom;
  TypeFamily fam;
  if (fun_like(ty, &dom, &fam)) {
    if (std::holds_alternative<VNeutral>(v->v) || std::holds_alternative<VClosure>(v->v) ||
        std::holds_alternative<VNative>(v->v) || std::holds_alternative<VTable>(v->v)) {
      Value fresh = v_neutral_var(depth);
      Value body;
      try {
        body = apply(v, fresh);
      } catch (const StuckTerm&) {
        return quote(v, depth);  // graph function: cannot eta-expand at a neutral
      }
      TypePtr body_ty = fam.computed() ? nullptr : fam.body;
      return tm_lam(readback(body, body_ty, depth + 1));
    }
    return quote(v, depth);
  }
  TypePtr first;
  if (pair_like(ty, &first, &fam)) {
    Value a = vfst(v);
    Value b = vsnd(v);
    TypePtr second_ty = nullptr;
    if (!fam.computed()) second_ty = open_type(fam.body, quote(a, depth));
    return tm_pair(readback(a, first, depth), readback(b, second_ty, depth));
  }
  return std::visit(
      overloaded{
          [&](const TUnit&) { return tm_elt(); },
          [&](const THolds& h) -> TermPtr {
            EvalContext ctx;
            try {
              Value c = eval(h.cond, env_of_depth(depth), ctx);
              if (const auto* f = std::get_if<VFin>(&c->v); f && f->size == 2) {
                if (f->index == 1) return tm_elt();
                throw NonNormalisable("value at an uninhabited decidable type");
              }
            } catch (const StuckTerm&) {
            } catch (const UnboundVariable&) {
            }
            return quote(v, depth);  // open condition: leave the value as-is
          },
          [&](const TSum& s) -> TermPtr {
            if (const auto* l = std::get_if<VInl>(&v->v))
              return tm_inl(readback(l->v, s.left, depth));
            if (const auto* r = std::get_if<VInr>(&v->v))
              return tm_inr(readback(r->v, s.right, depth));
            return quote(v, depth);
          },
          [&](const auto&) { return quote(v, depth); },
      },
      ty->v);
}
}  // namespace

TermPtr normalise(const TermPtr& t, const TypePtr& ty) {
  if (!t) throw NonNormalisable("missing term");
  EvalContext ctx;
  try {
    Value v = eval(t, nullptr, ctx);
    return readback(v, ty, 0);
  } catch (const EmptyElimination&) {
    throw;
  } catch (const NonNormalisable&) {
    throw;
  } catch (const UnboundVariable& e) {
    throw NonNormalisable(std::string("open term: ") + e.what());
  } catch (const Error& e) {
    throw NonNormalisable(std::string("evaluation got stuck: ") + e.what());
  }
}

}  // namespace mrx
