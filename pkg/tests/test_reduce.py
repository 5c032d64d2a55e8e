import pytest

from feathergo.parser import parse_fgg
from feathergo.reduce import (
    PanicOutcome,
    Stepped,
    Value,
    fg_step,
    fgg_step,
    is_value,
    run,
    step_count,
    vtype,
)
from feathergo.syntax import (
    Binop,
    BoolLit,
    FieldSel,
    If,
    IntLit,
    MethodCall,
    Neq,
    Seq,
    StructLit,
    TypeApp,
    TypeAssert,
)
from feathergo.typecheck import Decls

from conftest import TERMINATING, load, read


@pytest.fixture(scope="module")
def fgg_list_decls():
    return Decls(load("fgg_list.fgg"))


def test_field_projection(fgg_list_decls):
    cons = StructLit(TypeApp("Cons", (TypeApp("int"),)), (IntLit(1), StructLit(TypeApp("Nil", (TypeApp("int"),)))))
    out = fgg_step(FieldSel(cons, "head"), fgg_list_decls)
    assert isinstance(out, Stepped) and out.rule == "r-fields" and out.expr == IntLit(1)


def test_values_do_not_step(fgg_list_decls):
    nil = StructLit(TypeApp("Nil", (TypeApp("int"),)))
    out = fgg_step(nil, fgg_list_decls)
    assert isinstance(out, Value) and out.value == nil
    assert is_value(nil) and vtype(nil) == TypeApp("Nil", (TypeApp("int"),))


def test_fg_list_panics_at_second_map():
    # the listing's comment: the bool list cannot be mapped again
    res = run(load("fg_list.fg"), lang="fg")
    assert res.kind == "panic"
    assert res.panic.message == "Unable to assert bool as type Ord"
    assert res.panic.value_type == TypeApp("bool")
    assert res.panic.target == TypeApp("Ord")


def test_fgg_list_never_reaches_runtime_error():
    res = run(load("fgg_list.fgg"), lang="fgg")
    assert res.kind == "value"


def test_gtfunc_apply_reduces_to_false():
    # hand trace: Apply(7) -> 5.Gt(7) -> 7 < 5 -> false
    res = run(load("gtfunc.fgg"), lang="fgg")
    assert res.kind == "value" and res.value == BoolLit(False)


def test_box_nest_trace_oracle():
    # hand small-step trace of Nest with n=2, frozen as the expected value
    res = run(load("box.fgg"), lang="fgg")
    bi = TypeApp("Box", (TypeApp("int"),))
    bbi = TypeApp("Box", (bi,))
    bbbi = TypeApp("Box", (bbi,))
    want = StructLit(bbbi, (StructLit(bbi, (StructLit(bi, (IntLit(0),)),)),))
    assert res.kind == "value" and res.value == want


def test_budget_exhaustion_on_divergence():
    res = run(load("omega.fgg"), max_steps=300, lang="fgg")
    assert res.kind == "budget_exhausted" and res.steps == 300
    assert step_count(load("omega.fgg"), max_steps=300) is None


def test_step_count_zero_for_value_main():
    assert step_count(load("nilmain.fgg")) == 0


def test_box_nest_steps_strictly_increase_with_depth():
    # run both depths and compare
    template = read("box.fgg")
    counts = []
    for k in (1, 2, 3):
        p = parse_fgg(template.replace("Nest(2)", "Nest(%d)" % k))
        counts.append(step_count(p))
    assert counts[0] < counts[1] < counts[2]


def test_panic_permanence(fgg_list_decls):
    # once a panic occurs the whole run halts with it, even under context
    bad = TypeAssert(BoolLit(True), TypeApp("Ord", (TypeApp("bool"),)))
    e = MethodCall(StructLit(TypeApp("Nil", (TypeApp("bool"),))), "Map", (TypeApp("bool"),), (bad,))
    out = fgg_step(e, fgg_list_decls)
    assert isinstance(out, PanicOutcome)


def test_extended_forms(fgg_list_decls):
    d = fgg_list_decls
    assert fg_step(Binop("<", IntLit(1), IntLit(2)), d).expr == BoolLit(True)
    assert fg_step(Binop("-", IntLit(1), IntLit(2)), d).expr == IntLit(-1)
    assert fg_step(Neq(IntLit(1), IntLit(1)), d).expr == BoolLit(False)
    assert fg_step(Neq(IntLit(1), IntLit(2)), d).expr == BoolLit(True)
    assert fg_step(If(BoolLit(True), IntLit(1), IntLit(2)), d).expr == IntLit(1)
    assert fg_step(Seq(IntLit(9), IntLit(1)), d).expr == IntLit(1)
    out = fg_step(Seq(Binop("+", IntLit(1), IntLit(1)), IntLit(0)), d)
    assert out.rule == "r-ext-binop"  # head evaluated before being discarded


# -- determinism: unique decomposition ------------------------------------------
#
# Independent oracle: enumerate every evaluation position admitted by the
# context grammar and count the ones whose subterm can contract. The stepper
# is deterministic iff there is never a second candidate.


def evaluation_positions(e):
    """All (path, subterm) pairs reachable by the evaluation context."""
    out = [((), e)]
    if isinstance(e, StructLit):
        for i, a in enumerate(e.args):
            if not is_value(a):
                out += [((("args", i),) + p, s) for p, s in evaluation_positions(a)]
                break
    elif isinstance(e, (FieldSel, TypeAssert)):
        if not is_value(e.recv):
            out += [((("recv", None),) + p, s) for p, s in evaluation_positions(e.recv)]
    elif isinstance(e, MethodCall):
        if not is_value(e.recv):
            out += [((("recv", None),) + p, s) for p, s in evaluation_positions(e.recv)]
        else:
            for i, a in enumerate(e.args):
                if not is_value(a):
                    out += [((("args", i),) + p, s) for p, s in evaluation_positions(a)]
                    break
    elif isinstance(e, (Binop, Neq)):
        if not is_value(e.left):
            out += [((("left", None),) + p, s) for p, s in evaluation_positions(e.left)]
        elif not is_value(e.right):
            out += [((("right", None),) + p, s) for p, s in evaluation_positions(e.right)]
    elif isinstance(e, If):
        if not is_value(e.cond):
            out += [((("cond", None),) + p, s) for p, s in evaluation_positions(e.cond)]
    elif isinstance(e, Seq):
        if not is_value(e.first):
            out += [((("first", None),) + p, s) for p, s in evaluation_positions(e.first)]
    return out


def can_contract(e, decls, generic) -> bool:
    """Pattern-level contractibility of a subterm whose parts are values."""
    from feathergo.syntax import Panic

    if isinstance(e, FieldSel):
        return is_value(e.recv)
    if isinstance(e, MethodCall):
        return is_value(e.recv) and all(is_value(a) for a in e.args)
    if isinstance(e, TypeAssert):
        return is_value(e.recv)
    if isinstance(e, (Binop, Neq)):
        return is_value(e.left) and is_value(e.right)
    if isinstance(e, If):
        return is_value(e.cond)
    if isinstance(e, Seq):
        return is_value(e.first)
    return isinstance(e, Panic)


def assert_unique_decomposition(e, decls, generic=True):
    redexes = [(p, s) for p, s in evaluation_positions(e) if can_contract(s, decls, generic)]
    assert len(redexes) <= 1, "multiple evaluation redexes: %r" % (redexes,)
    step = fgg_step if generic else fg_step
    out = step(e, decls)
    if redexes:
        assert isinstance(out, (Stepped, PanicOutcome))
        if isinstance(out, Stepped):
            assert out.redex == redexes[0][1]
    else:
        assert isinstance(out, Value) or not is_value(e)


@pytest.mark.parametrize("path", TERMINATING, ids=lambda p: p.name)
def test_determinism_along_corpus_runs(path):
    program = parse_fgg(path.read_text())
    decls = Decls(program)
    e = program.main
    for _ in range(10_000):
        assert_unique_decomposition(e, decls)
        out = fgg_step(e, decls)
        if not isinstance(out, Stepped):
            break
        e = out.expr
