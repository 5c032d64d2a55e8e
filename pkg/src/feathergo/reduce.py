"""Small-step call-by-value interpreters for FG(-extended) and FGG.

Evaluation is deterministic: the evaluation context decomposes a term at the
leftmost non-value position. The stepper holds no global state; distinct
runs are independent.

Outcomes:

* ``Stepped(expr, rule, redex)`` -- one reduction happened; ``rule`` names the
  contraction (r-fields, r-call, r-assert, r-ext-*) and ``redex`` is the
  subterm that contracted.
* ``Value(value)`` -- the term is a value; no rule fires.
* ``PanicOutcome`` -- a type assertion failed (or explicit ``panic``); once
  raised, a run halts immediately.
* ``Stuck`` -- no rule applies; never happens on typechecked input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Binop,
    BoolLit,
    Expr,
    FieldSel,
    If,
    IntLit,
    MethodCall,
    Neq,
    Panic,
    Program,
    Seq,
    StructLit,
    Type,
    TypeApp,
    TypeAssert,
    Var,
    print_expr,
    print_type,
)
from .typecheck import Decls, fg_subtype, fgg_subtype, subst_type


@dataclass(frozen=True)
class Stepped:
    expr: Expr
    rule: str
    redex: Expr


@dataclass(frozen=True)
class Value:
    value: Expr


@dataclass(frozen=True)
class PanicOutcome:
    value_type: Type | None
    target: Type | None
    message: str


@dataclass(frozen=True)
class Stuck:
    reason: str


StepOutcome = Stepped | Value | PanicOutcome | Stuck


def is_value(e: Expr) -> bool:
    if isinstance(e, (IntLit, BoolLit)):
        return True
    return isinstance(e, StructLit) and all(is_value(a) for a in e.args)


def vtype(v: Expr) -> TypeApp:
    if isinstance(v, IntLit):
        return TypeApp("int")
    if isinstance(v, BoolLit):
        return TypeApp("bool")
    if isinstance(v, StructLit):
        return v.type
    raise ValueError("vtype of non-value %r" % (v,))


def subst_expr(e: Expr, varmap: dict, typemap: dict) -> Expr:
    """Capture-free substitution of variables and type parameters. Method
    bodies contain no binders, so no renaming is ever needed."""
    ts = lambda t: subst_type(t, typemap) if typemap else t
    if isinstance(e, Var):
        return varmap.get(e.name, e)
    if isinstance(e, (IntLit, BoolLit, Panic)):
        return e
    if isinstance(e, StructLit):
        return StructLit(ts(e.type), tuple(subst_expr(a, varmap, typemap) for a in e.args))
    if isinstance(e, FieldSel):
        return FieldSel(subst_expr(e.recv, varmap, typemap), e.fieldname, origin=e.origin)
    if isinstance(e, MethodCall):
        return MethodCall(
            subst_expr(e.recv, varmap, typemap),
            e.name,
            tuple(ts(t) for t in e.targs),
            tuple(subst_expr(a, varmap, typemap) for a in e.args),
            origin=e.origin,
        )
    if isinstance(e, TypeAssert):
        return TypeAssert(subst_expr(e.recv, varmap, typemap), ts(e.type), origin=e.origin)
    if isinstance(e, Binop):
        return Binop(e.op, subst_expr(e.left, varmap, typemap), subst_expr(e.right, varmap, typemap))
    if isinstance(e, Neq):
        return Neq(subst_expr(e.left, varmap, typemap), subst_expr(e.right, varmap, typemap), origin=e.origin)
    if isinstance(e, If):
        return If(
            subst_expr(e.cond, varmap, typemap),
            subst_expr(e.then, varmap, typemap),
            subst_expr(e.els, varmap, typemap),
            origin=e.origin,
        )
    if isinstance(e, Seq):
        return Seq(subst_expr(e.first, varmap, typemap), subst_expr(e.rest, varmap, typemap), origin=e.origin)
    raise ValueError("cannot substitute in %r" % (e,))


def instantiate_body(m, recv: Expr, args, targs) -> Expr:
    """body(vtype(v).m): substitute receiver, value arguments and type
    actuals into the declared body. Used by r-call and, with unevaluated
    arguments, by dictionary resolution."""
    varmap = {m.recv_name: recv}
    varmap.update({p.name: a for p, a in zip(m.sig.params, args)})
    rtargs = vtype(recv).args if is_value(recv) else ()
    typemap = {r: t for r, t in zip(m.recv_params, rtargs)}
    typemap.update({fp.name: t for fp, t in zip(m.sig.tformal, targs)})
    return subst_expr(m.body, varmap, typemap)


def _assert_panic(v: Expr, target: Type) -> PanicOutcome:
    return PanicOutcome(
        vtype(v),
        target,
        "Unable to assert %s as type %s" % (print_type(vtype(v)), print_type(target)),
    )


def _step(e: Expr, decls: Decls, generic: bool) -> StepOutcome:
    if is_value(e):
        return Value(e)

    def ctx(inner: Expr, rebuild) -> StepOutcome:
        out = _step(inner, decls, generic)
        if isinstance(out, Stepped):
            return Stepped(rebuild(out.expr), out.rule, out.redex)
        return out  # panic / stuck propagate; Value impossible here

    if isinstance(e, StructLit):
        for i, a in enumerate(e.args):
            if not is_value(a):
                return ctx(a, lambda a2, i=i: StructLit(e.type, e.args[:i] + (a2,) + e.args[i + 1:]))
        raise AssertionError("unreachable: value literal")

    if isinstance(e, FieldSel):
        if not is_value(e.recv):
            return ctx(e.recv, lambda r: FieldSel(r, e.fieldname, origin=e.origin))
        v = e.recv
        if not isinstance(v, StructLit):
            return Stuck("field select on %s" % print_expr(v))
        d = decls.structs.get(v.type.name)
        if d is None:
            return Stuck("unknown struct %s" % v.type.name)
        for i, f in enumerate(d.fields):
            if f.name == e.fieldname:
                return Stepped(v.args[i], "r-fields", e)
        return Stuck("no field %s on %s" % (e.fieldname, v.type.name))

    if isinstance(e, MethodCall):
        if not is_value(e.recv):
            return ctx(e.recv, lambda r: MethodCall(r, e.name, e.targs, e.args, origin=e.origin))
        for i, a in enumerate(e.args):
            if not is_value(a):
                return ctx(
                    a,
                    lambda a2, i=i: MethodCall(e.recv, e.name, e.targs, e.args[:i] + (a2,) + e.args[i + 1:], origin=e.origin),
                )
        m = decls.methods.get((vtype(e.recv).name, e.name))
        if m is None:
            return Stuck("no method %s on %s" % (e.name, print_type(vtype(e.recv))))
        if len(m.sig.params) != len(e.args):
            return Stuck("arity mismatch calling %s" % e.name)
        return Stepped(instantiate_body(m, e.recv, e.args, e.targs), "r-call", e)

    if isinstance(e, TypeAssert):
        if not is_value(e.recv):
            return ctx(e.recv, lambda r: TypeAssert(r, e.type, origin=e.origin))
        v = e.recv
        if generic:
            ok = fgg_subtype(vtype(v), e.type, {}, decls)
        else:
            ok = isinstance(e.type, TypeApp) and fg_subtype(vtype(v).name, e.type.name, decls)
        if ok:
            return Stepped(v, "r-assert", e)
        return _assert_panic(v, e.type)

    if isinstance(e, Binop):
        if not is_value(e.left):
            return ctx(e.left, lambda l: Binop(e.op, l, e.right))
        if not is_value(e.right):
            return ctx(e.right, lambda r: Binop(e.op, e.left, r))
        if not (isinstance(e.left, IntLit) and isinstance(e.right, IntLit)):
            return Stuck("binop %s on non-int values" % e.op)
        a, b = e.left.value, e.right.value
        res: Expr
        if e.op == "<":
            res = BoolLit(a < b)
        elif e.op == ">":
            res = BoolLit(a > b)
        elif e.op == "+":
            res = IntLit(a + b)
        else:
            res = IntLit(a - b)
        return Stepped(res, "r-ext-binop", e)

    if isinstance(e, Neq):
        if not is_value(e.left):
            return ctx(e.left, lambda l: Neq(l, e.right, origin=e.origin))
        if not is_value(e.right):
            return ctx(e.right, lambda r: Neq(e.left, r, origin=e.origin))
        return Stepped(BoolLit(e.left != e.right), "r-ext-neq", e)

    if isinstance(e, If):
        if not is_value(e.cond):
            return ctx(e.cond, lambda c: If(c, e.then, e.els, origin=e.origin))
        if not isinstance(e.cond, BoolLit):
            return Stuck("if condition is not a bool")
        return Stepped(e.then if e.cond.value else e.els, "r-ext-if", e)

    if isinstance(e, Seq):
        if not is_value(e.first):
            return ctx(e.first, lambda f: Seq(f, e.rest, origin=e.origin))
        return Stepped(e.rest, "r-ext-seq", e)

    if isinstance(e, Panic):
        return PanicOutcome(None, None, "panic")

    if isinstance(e, Var):
        return Stuck("free variable %s" % e.name)
    return Stuck("no rule for %r" % type(e).__name__)


def fg_step(e: Expr, decls: Decls) -> StepOutcome:
    return _step(e, decls, generic=False)


def fgg_step(e: Expr, decls: Decls) -> StepOutcome:
    return _step(e, decls, generic=True)


DEFAULT_MAX_STEPS = 1_000_000


@dataclass(frozen=True)
class RunResult:
    kind: str  # "value" | "panic" | "budget_exhausted"
    steps: int
    value: Expr | None = None
    panic: PanicOutcome | None = None

    def describe(self) -> str:
        if self.kind == "value":
            return print_expr(self.value)
        if self.kind == "panic":
            return "panic: %s" % self.panic.message
        return "budget exhausted after %d steps" % self.steps


def run(program: Program, max_steps: int = DEFAULT_MAX_STEPS, lang: str = "fgg", trace=None) -> RunResult:
    """Iterate the step function from main's expression.

    ``lang`` selects the stepper ("fgg" or any fg dialect). ``trace`` is an
    optional callback invoked with (rule, redex) per step. Never exceeds
    ``max_steps``; exhausting the budget signals possible divergence.
    """
    decls = Decls(program)
    generic = lang == "fgg"
    e = program.main
    for i in range(max_steps):
        out = _step(e, decls, generic)
        if isinstance(out, Value):
            return RunResult("value", i, value=out.value)
        if isinstance(out, PanicOutcome):
            return RunResult("panic", i, panic=out)
        if isinstance(out, Stuck):
            raise RuntimeError("stuck: %s (non-typechecked input?)" % out.reason)
        if trace is not None:
            trace(out.rule, out.redex)
        e = out.expr
    return RunResult("budget_exhausted", max_steps)


def step_count(program: Program, max_steps: int = DEFAULT_MAX_STEPS, lang: str = "fgg"):
    """Number of small steps to reach a value or panic, or None when the
    budget is exhausted."""
    res = run(program, max_steps, lang)
    return None if res.kind == "budget_exhausted" else res.steps
