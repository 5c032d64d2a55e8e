"""Abstract syntax for the FG / FGG toolchain.

A single node set covers both dialects: a plain FG tree simply carries no
type parameters, no type actuals and no statement forms beyond `return`.
Named types are always represented as ``TypeApp``; an FG type is a
``TypeApp`` with an empty argument tuple and prints as a bare name.

All nodes are frozen dataclasses, so trees are immutable values that can be
shared freely across threads and compared structurally.

Some nodes carry an ``origin`` tag ("erase", "sim" or "dict") identifying
the translator rule that emitted them; the co-simulation harness uses the
tags to classify redexes. Tags never participate in equality or hashing,
so a re-parsed tree compares equal to the tree that printed it even though
parsing drops the tags.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field


def _origin():
    return field(default=None, compare=False, kw_only=True)


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class TypeParam:
    """A type parameter occurrence (FGG only)."""

    name: str


@dataclass(frozen=True)
class TypeApp:
    """A named type, instantiated with type actuals.

    FG types and zero-formal FGG types have ``args == ()`` and print as the
    bare name.
    """

    name: str
    args: tuple = ()


Type = TypeParam | TypeApp

ANY = TypeApp("Any")
INT = TypeApp("int")
BOOL = TypeApp("bool")


@dataclass(frozen=True)
class FormalParam:
    """One entry of a type formal: a parameter name and its interface bound."""

    name: str
    bound: Type


Formal = tuple  # tuple[FormalParam, ...]


@dataclass(frozen=True)
class Param:
    """A named, typed binding: method parameter or struct field."""

    name: str
    type: Type


@dataclass(frozen=True)
class MethodSig:
    """Method signature: type formal, value parameters, return type."""

    tformal: Formal = ()
    params: tuple = ()
    ret: Type = ANY


@dataclass(frozen=True)
class MethodSpec:
    """A named method signature, as listed in an interface."""

    name: str
    sig: MethodSig


# ---------------------------------------------------------------------------
# Expressions


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class StructLit:
    """``t{e...}`` or ``t[tau...]{e...}``; a value once every arg is a value."""

    type: TypeApp
    args: tuple = ()


@dataclass(frozen=True)
class FieldSel:
    recv: "Expr"
    fieldname: str
    origin: str | None = _origin()


@dataclass(frozen=True)
class MethodCall:
    recv: "Expr"
    name: str
    targs: tuple = ()
    args: tuple = ()
    origin: str | None = _origin()


@dataclass(frozen=True)
class TypeAssert:
    recv: "Expr"
    type: Type = ANY
    origin: str | None = _origin()


@dataclass(frozen=True)
class Binop:
    """Primitive int operation, ``op`` one of ``< > + -``."""

    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neq:
    """Structural inequality ``left != right`` (extended dialect)."""

    left: "Expr"
    right: "Expr"
    origin: str | None = _origin()


@dataclass(frozen=True)
class If:
    """``if (cond) {...} else {...}``; an else-less source ``if`` absorbs the
    statements that follow it as its else branch."""

    cond: "Expr"
    then: "Expr"
    els: "Expr"
    origin: str | None = _origin()


@dataclass(frozen=True)
class Seq:
    """Evaluate ``first`` for effect, discard it, continue with ``rest``."""

    first: "Expr"
    rest: "Expr"
    origin: str | None = _origin()


@dataclass(frozen=True)
class Panic:
    pass


Expr = (
    Var
    | IntLit
    | BoolLit
    | StructLit
    | FieldSel
    | MethodCall
    | TypeAssert
    | Binop
    | Neq
    | If
    | Seq
    | Panic
)


# ---------------------------------------------------------------------------
# Declarations and programs


@dataclass(frozen=True)
class StructDecl:
    name: str
    formal: Formal = ()
    fields: tuple = ()  # tuple[Param, ...]


@dataclass(frozen=True)
class InterfaceDecl:
    name: str
    formal: Formal = ()
    specs: tuple = ()  # tuple[MethodSpec, ...]


@dataclass(frozen=True)
class MethodDecl:
    """``func (recv_name recv_type[recv_params]) name sig { body }``.

    The receiver type-parameter list is a bare name list; the bounds come
    from the receiver struct's declaration.
    """

    recv_name: str
    recv_type: str
    recv_params: tuple  # tuple[str, ...]
    name: str
    sig: MethodSig
    body: Expr


Decl = StructDecl | InterfaceDecl | MethodDecl


@dataclass(frozen=True)
class Program:
    decls: tuple  # tuple[Decl, ...]
    main: Expr


# ---------------------------------------------------------------------------
# Pretty printer
#
# The canonical text form: `package main` header, one declaration per block,
# `func main() { _ = e }` footer. Output re-parses to a structurally equal
# tree (origin tags excepted, which do not take part in equality).

_PREC_NEQ = 1
_PREC_CMP = 2
_PREC_ADD = 3
_PREC_PRIMARY = 4

_BINOP_PREC = {"<": _PREC_CMP, ">": _PREC_CMP, "+": _PREC_ADD, "-": _PREC_ADD}


def print_type(t: Type) -> str:
    if isinstance(t, TypeParam):
        return t.name
    if not t.args:
        return t.name
    return "%s[%s]" % (t.name, ", ".join(print_type(a) for a in t.args))


def print_formal(formal: Formal) -> str:
    if not formal:
        return ""
    return "[%s]" % ", ".join("%s %s" % (fp.name, print_type(fp.bound)) for fp in formal)


def _print_sig(name: str, sig: MethodSig) -> str:
    params = ", ".join("%s %s" % (p.name, print_type(p.type)) for p in sig.params)
    return "%s%s(%s) %s" % (name, print_formal(sig.tformal), params, print_type(sig.ret))


def print_expr(e: Expr, prec: int = 0) -> str:
    if isinstance(e, Var):
        return e.name
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, StructLit):
        return "%s{%s}" % (print_type(e.type), ", ".join(print_expr(a) for a in e.args))
    if isinstance(e, FieldSel):
        return "%s.%s" % (print_expr(e.recv, _PREC_PRIMARY), e.fieldname)
    if isinstance(e, MethodCall):
        targs = "[%s]" % ", ".join(print_type(t) for t in e.targs) if e.targs else ""
        args = ", ".join(print_expr(a) for a in e.args)
        return "%s.%s%s(%s)" % (print_expr(e.recv, _PREC_PRIMARY), e.name, targs, args)
    if isinstance(e, TypeAssert):
        return "%s.(%s)" % (print_expr(e.recv, _PREC_PRIMARY), print_type(e.type))
    if isinstance(e, Binop):
        p = _BINOP_PREC[e.op]
        s = "%s %s %s" % (print_expr(e.left, p), e.op, print_expr(e.right, p + 1))
        return "(%s)" % s if p < prec else s
    if isinstance(e, Neq):
        s = "%s != %s" % (print_expr(e.left, _PREC_NEQ + 1), print_expr(e.right, _PREC_NEQ + 1))
        return "(%s)" % s if _PREC_NEQ < prec else s
    raise ValueError("cannot print %r in expression position" % type(e).__name__)


def _print_body(e: Expr, ind: str, out: list) -> None:
    while True:
        if isinstance(e, Seq):
            out.append("%s%s" % (ind, print_expr(e.first)))
            e = e.rest
            continue
        if isinstance(e, If) and isinstance(e.then, Panic) and not isinstance(e.els, Panic):
            out.append("%sif (%s) { panic }" % (ind, print_expr(e.cond)))
            e = e.els
            continue
        if isinstance(e, If):
            out.append("%sif (%s) {" % (ind, print_expr(e.cond)))
            _print_body(e.then, ind + "\t", out)
            out.append("%s} else {" % ind)
            _print_body(e.els, ind + "\t", out)
            out.append("%s}" % ind)
            return
        if isinstance(e, Panic):
            out.append("%spanic" % ind)
            return
        out.append("%sreturn %s" % (ind, print_expr(e)))
        return


def _print_main_body(e: Expr, ind: str, out: list) -> None:
    while isinstance(e, Seq):
        out.append("%s_ = %s" % (ind, print_expr(e.first)))
        e = e.rest
    out.append("%s_ = %s" % (ind, print_expr(e)))


def print_decl(d: Decl) -> str:
    if isinstance(d, StructDecl):
        head = "type %s%s struct" % (d.name, print_formal(d.formal))
        if not d.fields:
            return head + " {}"
        lines = ["\t%s %s" % (f.name, print_type(f.type)) for f in d.fields]
        return "%s {\n%s\n}" % (head, "\n".join(lines))
    if isinstance(d, InterfaceDecl):
        head = "type %s%s interface" % (d.name, print_formal(d.formal))
        if not d.specs:
            return head + " {}"
        lines = ["\t" + _print_sig(s.name, s.sig) for s in d.specs]
        return "%s {\n%s\n}" % (head, "\n".join(lines))
    if isinstance(d, MethodDecl):
        recv = d.recv_type
        if d.recv_params:
            recv += "[%s]" % ", ".join(d.recv_params)
        body: list = []
        _print_body(d.body, "\t", body)
        return "func (%s %s) %s {\n%s\n}" % (d.recv_name, recv, _print_sig(d.name, d.sig), "\n".join(body))
    raise TypeError(d)


def pretty_print(program: Program) -> str:
    """Render a program in the canonical concrete syntax.

    Deterministic: structurally equal trees print to identical text, and the
    output re-parses to an equal tree.
    """
    blocks = ["package main"]
    blocks.extend(print_decl(d) for d in program.decls)
    body: list = []
    _print_main_body(program.main, "\t", body)
    blocks.append("func main() {\n%s\n}" % "\n".join(body))
    return "\n\n".join(blocks) + "\n"


def show_expr(e: Expr) -> str:
    """Single-line rendering for traces and diagnostics. Unlike print_expr
    it renders the statement forms inline, so the output is not guaranteed
    to re-parse."""
    if isinstance(e, If):
        return "if (%s) { %s } else { %s }" % (show_expr(e.cond), show_expr(e.then), show_expr(e.els))
    if isinstance(e, Seq):
        return "%s; %s" % (show_expr(e.first), show_expr(e.rest))
    if isinstance(e, Panic):
        return "panic"
    if isinstance(e, StructLit):
        return "%s{%s}" % (print_type(e.type), ", ".join(show_expr(a) for a in e.args))
    if isinstance(e, FieldSel):
        return "%s.%s" % (show_expr(e.recv), e.fieldname)
    if isinstance(e, MethodCall):
        targs = "[%s]" % ", ".join(print_type(t) for t in e.targs) if e.targs else ""
        return "%s.%s%s(%s)" % (show_expr(e.recv), e.name, targs, ", ".join(show_expr(a) for a in e.args))
    if isinstance(e, TypeAssert):
        return "%s.(%s)" % (show_expr(e.recv), print_type(e.type))
    if isinstance(e, Binop):
        return "(%s %s %s)" % (show_expr(e.left), e.op, show_expr(e.right))
    if isinstance(e, Neq):
        return "(%s != %s)" % (show_expr(e.left), show_expr(e.right))
    return print_expr(e)


# ---------------------------------------------------------------------------
# Node counting


def node_count(node) -> int:
    """Total number of AST nodes (types, expressions, declarations).

    Additive over declarations and strictly monotone under adding one, which
    makes it a usable code-size proxy for translated output.
    """
    if dataclasses.is_dataclass(node):
        n = 1
        for f in dataclasses.fields(node):
            if f.name == "origin":
                continue
            n += node_count(getattr(node, f.name))
        return n
    if isinstance(node, tuple):
        return sum(node_count(x) for x in node)
    return 0
