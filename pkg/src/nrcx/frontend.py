"""ASTs, parsers, and printers for the five input languages.

Concrete syntax is s-expressions throughout (see docs/grammar.md).
``parse`` / ``print_expr`` round-trip on ASTs; variables are bare
symbols, atom literals are written ``(lit a)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import sexpr
from .sexpr import ParseError
from .values import Atom
from .typeterms import (AtomT, CollT, DataT, ElemT, KAtom, KColl, KData,
                        KElem, KProd, KSum, KIND_ANY, ProdT, SingleT, SumT,
                        VoidT)

LANGUAGES = ("rx", "pure-rx", "penrc", "ra", "deps")


# ---------------------------------------------------------------------------
# RX / pure RX expressions.  Pure RX shares the constructors and adds
# the singleton constructor Sing; sugar forms MultiFor and CondIf
# desugar to core (see desugar()).


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class AtomLit:
    atom: Atom


@dataclass(frozen=True)
class Text:
    body: object


@dataclass(frozen=True)
class Elem:
    name_expr: object
    content: object


@dataclass(frozen=True)
class DataF:
    body: object


@dataclass(frozen=True)
class NameF:
    body: object


@dataclass(frozen=True)
class ChildrenF:
    body: object


@dataclass(frozen=True)
class EmptySeq:
    pass


@dataclass(frozen=True)
class Seq:
    left: object
    right: object


@dataclass(frozen=True)
class Sing:
    body: object


@dataclass(frozen=True)
class For:
    var: str
    kind: object
    source: object
    body: object


@dataclass(frozen=True)
class IfEq:
    left: object
    right: object
    then: object
    els: object


@dataclass(frozen=True)
class IfEmpty:
    cond: object
    then: object
    els: object


@dataclass(frozen=True)
class IfType:
    cond: object
    type: object
    then: object
    els: object


@dataclass(frozen=True)
class MultiFor:
    bindings: tuple  # ((var, source_expr), ...)
    kind: object
    body: object


@dataclass(frozen=True)
class CondIf:
    cond: object
    then: object
    els: object


@dataclass(frozen=True)
class CEq:
    left: object
    right: object


@dataclass(frozen=True)
class CAnd:
    left: object
    right: object


@dataclass(frozen=True)
class COr:
    left: object
    right: object


@dataclass(frozen=True)
class CNot:
    arg: object


RX_CORE = (Var, AtomLit, Text, Elem, DataF, NameF, ChildrenF, EmptySeq,
           Seq, Sing, For, IfEq, IfEmpty, IfType)
RX_SUGAR = (MultiFor, CondIf)


# ---------------------------------------------------------------------------
# PENRC[kind] expressions (plus the full-NRC emptiness test NEmptyCond,
# which the evaluator accepts but the decision procedures reject).


@dataclass(frozen=True)
class NVar:
    name: str


@dataclass(frozen=True)
class NAtomLit:
    atom: Atom


@dataclass(frozen=True)
class NPair:
    left: object
    right: object


@dataclass(frozen=True)
class NProj1:
    body: object


@dataclass(frozen=True)
class NProj2:
    body: object


@dataclass(frozen=True)
class NEmpty:
    pass


@dataclass(frozen=True)
class NSing:
    body: object


@dataclass(frozen=True)
class NUnion:
    left: object
    right: object


@dataclass(frozen=True)
class NFlatten:
    body: object


@dataclass(frozen=True)
class NComp:
    var: str
    source: object
    body: object


@dataclass(frozen=True)
class NEqCond:
    left: object
    right: object
    then: object
    els: object


@dataclass(frozen=True)
class NKindCond:
    subject: object
    kind: object
    then: object
    els: object


@dataclass(frozen=True)
class NEmptyCond:
    cond: object
    then: object
    els: object


# ---------------------------------------------------------------------------
# Relational algebra and dependencies.


@dataclass(frozen=True)
class Relation:
    name: str


@dataclass(frozen=True)
class Select:
    attr1: str
    attr2: str
    arg: object


@dataclass(frozen=True)
class Project:
    attrs: tuple
    arg: object


@dataclass(frozen=True)
class Product:
    left: object
    right: object


@dataclass(frozen=True)
class Rename:
    old: str
    new: str
    arg: object


@dataclass(frozen=True)
class RaUnion:
    left: object
    right: object


@dataclass(frozen=True)
class Diff:
    left: object
    right: object


@dataclass(frozen=True)
class FD:
    lhs: tuple
    rhs: tuple


@dataclass(frozen=True)
class IND:
    lhs: tuple
    rhs: tuple

    def __post_init__(self):
        if len(self.lhs) != len(self.rhs):
            raise ValueError("inclusion dependency lists must have equal length")


# ---------------------------------------------------------------------------
# Free variables.


def free_vars(e) -> frozenset:
    if isinstance(e, (Var, NVar)):
        return frozenset([e.name])
    if isinstance(e, (AtomLit, NAtomLit, EmptySeq, NEmpty)):
        return frozenset()
    if isinstance(e, (For, NComp)):
        src = e.source
        return free_vars(src) | (free_vars(e.body) - {e.var})
    if isinstance(e, MultiFor):
        out = frozenset()
        bound = set()
        for var, src in e.bindings:
            out |= free_vars(src) - bound
            bound.add(var)
        return out | (free_vars(e.body) - bound)
    if isinstance(e, CondIf):
        return _cond_free_vars(e.cond) | free_vars(e.then) | free_vars(e.els)
    if isinstance(e, Relation):
        return frozenset([e.name])
    out = frozenset()
    for child in _children(e):
        out |= free_vars(child)
    return out


def _cond_free_vars(c):
    if isinstance(c, CEq):
        return free_vars(c.left) | free_vars(c.right)
    if isinstance(c, (CAnd, COr)):
        return _cond_free_vars(c.left) | _cond_free_vars(c.right)
    if isinstance(c, CNot):
        return _cond_free_vars(c.arg)
    raise TypeError(f"not a condition: {c!r}")


def _children(e):
    """Direct subexpressions of e (not conditions, kinds, or types)."""
    if isinstance(e, (Text, DataF, NameF, ChildrenF, Sing, NProj1, NProj2,
                      NSing, NFlatten)):
        return (e.body,)
    if isinstance(e, Elem):
        return (e.name_expr, e.content)
    if isinstance(e, (Seq, NPair, NUnion, RaUnion, Diff, Product)):
        return (e.left, e.right)
    if isinstance(e, (IfEq, NEqCond)):
        return (e.left, e.right, e.then, e.els)
    if isinstance(e, (IfEmpty, NEmptyCond)):
        return (e.cond, e.then, e.els)
    if isinstance(e, IfType):
        return (e.cond, e.then, e.els)
    if isinstance(e, NKindCond):
        return (e.subject, e.then, e.els)
    if isinstance(e, (Select, Project, Rename)):
        return (e.arg,)
    if isinstance(e, (Var, NVar, AtomLit, NAtomLit, EmptySeq, NEmpty,
                      Relation)):
        return ()
    raise TypeError(f"not an expression: {e!r}")


def literals(e) -> frozenset:
    """All atoms occurring as literals in e."""
    if isinstance(e, (AtomLit, NAtomLit)):
        return frozenset([e.atom])
    if isinstance(e, (For, NComp)):
        return literals(e.source) | literals(e.body)
    if isinstance(e, MultiFor):
        out = literals(e.body)
        for _, src in e.bindings:
            out |= literals(src)
        return out
    if isinstance(e, CondIf):
        return _cond_literals(e.cond) | literals(e.then) | literals(e.els)
    out = frozenset()
    for child in _children(e):
        out |= literals(child)
    return out


def _cond_literals(c):
    if isinstance(c, CEq):
        return literals(c.left) | literals(c.right)
    if isinstance(c, (CAnd, COr)):
        return _cond_literals(c.left) | _cond_literals(c.right)
    if isinstance(c, CNot):
        return _cond_literals(c.arg)
    raise TypeError(f"not a condition: {c!r}")


# ---------------------------------------------------------------------------
# Desugaring (RX / pure RX sugar -> core constructors).


def desugar(e):
    """Unroll MultiFor into nested For and boolean conditions into
    nested IfEq with shared branches; identity on core constructors."""
    if isinstance(e, MultiFor):
        body = desugar(e.body)
        for var, src in reversed(e.bindings):
            body = For(var, e.kind, desugar(src), body)
        return body
    if isinstance(e, CondIf):
        return _desugar_cond(e.cond, desugar(e.then), desugar(e.els))
    if isinstance(e, (Var, AtomLit, EmptySeq, NVar, NAtomLit, NEmpty)):
        return e
    if isinstance(e, For):
        return For(e.var, e.kind, desugar(e.source), desugar(e.body))
    if isinstance(e, NComp):
        return NComp(e.var, desugar(e.source), desugar(e.body))
    if isinstance(e, Text):
        return Text(desugar(e.body))
    if isinstance(e, Elem):
        return Elem(desugar(e.name_expr), desugar(e.content))
    if isinstance(e, DataF):
        return DataF(desugar(e.body))
    if isinstance(e, NameF):
        return NameF(desugar(e.body))
    if isinstance(e, ChildrenF):
        return ChildrenF(desugar(e.body))
    if isinstance(e, Seq):
        return Seq(desugar(e.left), desugar(e.right))
    if isinstance(e, Sing):
        return Sing(desugar(e.body))
    if isinstance(e, IfEq):
        return IfEq(desugar(e.left), desugar(e.right),
                    desugar(e.then), desugar(e.els))
    if isinstance(e, IfEmpty):
        return IfEmpty(desugar(e.cond), desugar(e.then), desugar(e.els))
    if isinstance(e, IfType):
        return IfType(desugar(e.cond), e.type, desugar(e.then), desugar(e.els))
    if isinstance(e, NPair):
        return NPair(desugar(e.left), desugar(e.right))
    if isinstance(e, NProj1):
        return NProj1(desugar(e.body))
    if isinstance(e, NProj2):
        return NProj2(desugar(e.body))
    if isinstance(e, NSing):
        return NSing(desugar(e.body))
    if isinstance(e, NUnion):
        return NUnion(desugar(e.left), desugar(e.right))
    if isinstance(e, NFlatten):
        return NFlatten(desugar(e.body))
    if isinstance(e, NEqCond):
        return NEqCond(desugar(e.left), desugar(e.right),
                       desugar(e.then), desugar(e.els))
    if isinstance(e, NKindCond):
        return NKindCond(desugar(e.subject), e.kind,
                         desugar(e.then), desugar(e.els))
    if isinstance(e, NEmptyCond):
        return NEmptyCond(desugar(e.cond), desugar(e.then), desugar(e.els))
    raise TypeError(f"not an expression: {e!r}")


def _desugar_cond(c, then, els):
    if isinstance(c, CEq):
        return IfEq(desugar(c.left), desugar(c.right), then, els)
    if isinstance(c, CAnd):
        return _desugar_cond(c.left, _desugar_cond(c.right, then, els), els)
    if isinstance(c, COr):
        return _desugar_cond(c.left, then, _desugar_cond(c.right, then, els))
    if isinstance(c, CNot):
        return _desugar_cond(c.arg, els, then)
    raise TypeError(f"not a condition: {c!r}")


def seq_of(exprs):
    """Right-fold a list of RX expressions into Seq; () for the empty list."""
    exprs = list(exprs)
    if not exprs:
        return EmptySeq()
    out = exprs[-1]
    for e in reversed(exprs[:-1]):
        out = Seq(e, out)
    return out


# ---------------------------------------------------------------------------
# Type / kind concrete syntax.


def parse_type(sx):
    if isinstance(sx, str):
        raise ParseError(f"expected a type, got symbol {sx!r}")
    if not sx:
        raise ParseError("empty type form")
    head = sx[0]
    if head == "atom" and len(sx) == 1:
        return AtomT()
    if head == "data" and len(sx) == 1:
        return DataT()
    if head == "void" and len(sx) == 1:
        return VoidT()
    if head == "elem":
        if len(sx) == 1:
            return ElemT(VoidT())
        parts = [parse_type(p) for p in sx[1:]]
        if len(parts) == 1 and isinstance(parts[0], (CollT, SingleT)):
            return ElemT(parts[0])
        content = parts[-1]
        for p in reversed(parts[:-1]):
            content = SumT(p, content)
        return ElemT(content)
    if head == "coll" and len(sx) == 2:
        return CollT(parse_type(sx[1]))
    if head == "single" and len(sx) == 2:
        return SingleT(parse_type(sx[1]))
    if head == "prod" and len(sx) == 3:
        return ProdT(parse_type(sx[1]), parse_type(sx[2]))
    if head == "sum" and len(sx) >= 3:
        parts = [parse_type(p) for p in sx[1:]]
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = SumT(p, out)
        return out
    raise ParseError(f"malformed type form {sexpr.write(sx)!r}")


def print_type(t):
    if isinstance(t, AtomT):
        return ["atom"]
    if isinstance(t, DataT):
        return ["data"]
    if isinstance(t, VoidT):
        return ["void"]
    if isinstance(t, ElemT):
        if isinstance(t.content, VoidT):
            return ["elem"]
        return ["elem", print_type(t.content)]
    if isinstance(t, CollT):
        return ["coll", print_type(t.item)]
    if isinstance(t, SingleT):
        return ["single", print_type(t.item)]
    if isinstance(t, ProdT):
        return ["prod", print_type(t.left), print_type(t.right)]
    if isinstance(t, SumT):
        return ["sum", print_type(t.left), print_type(t.right)]
    raise TypeError(f"not a type term: {t!r}")


def parse_kind(sx):
    if isinstance(sx, str):
        raise ParseError(f"expected a kind, got symbol {sx!r}")
    if not sx:
        raise ParseError("empty kind form")
    head = sx[0]
    if head == "kind-atom":
        return KAtom()
    if head == "kind-data":
        return KData()
    if head == "kind-elem":
        return KElem()
    if head == "kind-coll":
        return KColl()
    if head == "kind-any":
        return KIND_ANY
    if head == "kind-prod" and len(sx) == 3:
        return KProd(parse_kind(sx[1]), parse_kind(sx[2]))
    if head == "kind-sum" and len(sx) >= 3:
        parts = [parse_kind(p) for p in sx[1:]]
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = KSum(p, out)
        return out
    raise ParseError(f"malformed kind form {sexpr.write(sx)!r}")


def print_kind(k):
    if isinstance(k, KAtom):
        return ["kind-atom"]
    if isinstance(k, KData):
        return ["kind-data"]
    if isinstance(k, KElem):
        return ["kind-elem"]
    if isinstance(k, KColl):
        return ["kind-coll"]
    if isinstance(k, KProd):
        return ["kind-prod", print_kind(k.left), print_kind(k.right)]
    if isinstance(k, KSum):
        return ["kind-sum", print_kind(k.left), print_kind(k.right)]
    raise TypeError(f"not a kind term: {k!r}")


# ---------------------------------------------------------------------------
# Expression parsing.


def parse(text: str, language: str):
    """Parse source text in the given language into an AST."""
    if language not in LANGUAGES:
        raise ValueError(f"unknown language tag {language!r}")
    sx = sexpr.read(text)
    if language in ("rx", "pure-rx"):
        return _build_rx(sx, pure=(language == "pure-rx"))
    if language == "penrc":
        return _build_nrc(sx)
    if language == "ra":
        return _build_ra(sx)
    return _build_dep(sx)


def _symbol(sx, what):
    if not isinstance(sx, str):
        raise ParseError(f"expected {what}, got {sexpr.write(sx)!r}")
    return sx


def _arity(sx, n):
    if len(sx) != n + 1:
        raise ParseError(
            f"form {sx[0]!r} takes {n} argument(s), got {len(sx) - 1}")


def _build_rx(sx, pure):
    if isinstance(sx, str):
        return Var(sx)
    if not sx:
        raise ParseError("empty expression form")
    head = sx[0]
    if not isinstance(head, str):
        raise ParseError(f"malformed form {sexpr.write(sx)!r}")
    build = lambda s: _build_rx(s, pure)  # noqa: E731
    if head == "lit":
        _arity(sx, 1)
        return AtomLit(Atom(_symbol(sx[1], "an atom token")))
    if head == "text":
        _arity(sx, 1)
        return Text(build(sx[1]))
    if head == "elem":
        _arity(sx, 2)
        return Elem(build(sx[1]), build(sx[2]))
    if head == "data":
        _arity(sx, 1)
        return DataF(build(sx[1]))
    if head == "name":
        _arity(sx, 1)
        return NameF(build(sx[1]))
    if head == "children":
        _arity(sx, 1)
        return ChildrenF(build(sx[1]))
    if head == "empty":
        _arity(sx, 0)
        return EmptySeq()
    if head == "seq":
        if len(sx) < 3:
            raise ParseError("seq takes at least 2 arguments")
        parts = [build(p) for p in sx[1:]]
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = Seq(p, out)
        return out
    if head == "sing":
        if not pure:
            raise ParseError("singleton constructor is pure RX only")
        _arity(sx, 1)
        return Sing(build(sx[1]))
    if head == "for":
        _arity(sx, 4)
        return For(_symbol(sx[1], "a variable"), parse_kind(sx[2]),
                   build(sx[3]), build(sx[4]))
    if head == "for*":
        _arity(sx, 3)
        if isinstance(sx[1], str):
            raise ParseError("for* bindings must be a list")
        bindings = []
        for b in sx[1]:
            if isinstance(b, str) or len(b) != 2:
                raise ParseError("for* binding must be (var source)")
            bindings.append((_symbol(b[0], "a variable"), build(b[1])))
        return MultiFor(tuple(bindings), parse_kind(sx[2]), build(sx[3]))
    if head == "ifeq":
        _arity(sx, 4)
        return IfEq(build(sx[1]), build(sx[2]), build(sx[3]), build(sx[4]))
    if head == "ifempty":
        _arity(sx, 3)
        return IfEmpty(build(sx[1]), build(sx[2]), build(sx[3]))
    if head == "iftype":
        _arity(sx, 4)
        return IfType(build(sx[1]), parse_type(sx[2]), build(sx[3]),
                      build(sx[4]))
    if head == "cond":
        _arity(sx, 3)
        return CondIf(_build_cond(sx[1], pure), build(sx[2]), build(sx[3]))
    raise ParseError(f"unknown form {head!r}")


def _build_cond(sx, pure):
    if isinstance(sx, str) or not sx:
        raise ParseError(f"malformed condition {sexpr.write(sx)!r}")
    head = sx[0]
    if head == "eq":
        _arity(sx, 2)
        return CEq(_build_rx(sx[1], pure), _build_rx(sx[2], pure))
    if head in ("and", "or"):
        if len(sx) < 3:
            raise ParseError(f"{head} takes at least 2 conditions")
        ctor = CAnd if head == "and" else COr
        parts = [_build_cond(p, pure) for p in sx[1:]]
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = ctor(p, out)
        return out
    if head == "not":
        _arity(sx, 1)
        return CNot(_build_cond(sx[1], pure))
    raise ParseError(f"unknown condition form {head!r}")


def _build_nrc(sx):
    if isinstance(sx, str):
        return NVar(sx)
    if not sx:
        raise ParseError("empty expression form")
    head = sx[0]
    if not isinstance(head, str):
        raise ParseError(f"malformed form {sexpr.write(sx)!r}")
    if head == "lit":
        _arity(sx, 1)
        return NAtomLit(Atom(_symbol(sx[1], "an atom token")))
    if head == "pair":
        _arity(sx, 2)
        return NPair(_build_nrc(sx[1]), _build_nrc(sx[2]))
    if head == "fst":
        _arity(sx, 1)
        return NProj1(_build_nrc(sx[1]))
    if head == "snd":
        _arity(sx, 1)
        return NProj2(_build_nrc(sx[1]))
    if head == "empty":
        _arity(sx, 0)
        return NEmpty()
    if head == "sing":
        _arity(sx, 1)
        return NSing(_build_nrc(sx[1]))
    if head == "union":
        _arity(sx, 2)
        return NUnion(_build_nrc(sx[1]), _build_nrc(sx[2]))
    if head == "flatten":
        _arity(sx, 1)
        return NFlatten(_build_nrc(sx[1]))
    if head == "for":
        _arity(sx, 3)
        return NComp(_symbol(sx[1], "a variable"), _build_nrc(sx[2]),
                     _build_nrc(sx[3]))
    if head == "ifeq":
        _arity(sx, 4)
        return NEqCond(_build_nrc(sx[1]), _build_nrc(sx[2]),
                       _build_nrc(sx[3]), _build_nrc(sx[4]))
    if head == "ifkind":
        _arity(sx, 4)
        return NKindCond(_build_nrc(sx[1]), parse_kind(sx[2]),
                         _build_nrc(sx[3]), _build_nrc(sx[4]))
    if head == "ifempty":
        _arity(sx, 3)
        return NEmptyCond(_build_nrc(sx[1]), _build_nrc(sx[2]),
                          _build_nrc(sx[3]))
    raise ParseError(f"unknown form {head!r}")


def _build_ra(sx):
    if isinstance(sx, str) or not sx:
        raise ParseError(f"malformed relational form {sexpr.write(sx)!r}")
    head = sx[0]
    if head == "rel":
        _arity(sx, 1)
        return Relation(_symbol(sx[1], "a relation name"))
    if head == "select":
        _arity(sx, 3)
        return Select(_symbol(sx[1], "an attribute"),
                      _symbol(sx[2], "an attribute"), _build_ra(sx[3]))
    if head == "project":
        _arity(sx, 2)
        if isinstance(sx[1], str):
            raise ParseError("project attribute list must be a list")
        return Project(tuple(_symbol(a, "an attribute") for a in sx[1]),
                       _build_ra(sx[2]))
    if head == "product":
        _arity(sx, 2)
        return Product(_build_ra(sx[1]), _build_ra(sx[2]))
    if head == "rename":
        _arity(sx, 3)
        return Rename(_symbol(sx[1], "an attribute"),
                      _symbol(sx[2], "an attribute"), _build_ra(sx[3]))
    if head == "ra-union":
        _arity(sx, 2)
        return RaUnion(_build_ra(sx[1]), _build_ra(sx[2]))
    if head == "diff":
        _arity(sx, 2)
        return Diff(_build_ra(sx[1]), _build_ra(sx[2]))
    raise ParseError(f"unknown relational form {head!r}")


def _build_dep(sx):
    if isinstance(sx, str) or not sx:
        raise ParseError(f"malformed dependency {sexpr.write(sx)!r}")
    head = sx[0]
    if head in ("fd", "ind"):
        _arity(sx, 2)
        if isinstance(sx[1], str) or isinstance(sx[2], str):
            raise ParseError(f"{head} takes two attribute lists")
        lhs = tuple(_symbol(a, "an attribute") for a in sx[1])
        rhs = tuple(_symbol(a, "an attribute") for a in sx[2])
        return FD(lhs, rhs) if head == "fd" else IND(lhs, rhs)
    raise ParseError(f"unknown dependency form {head!r}")


# ---------------------------------------------------------------------------
# Printing.


def to_sexpr(e):
    if isinstance(e, (Var, NVar)):
        return e.name
    if isinstance(e, (AtomLit, NAtomLit)):
        return ["lit", e.atom.token]
    if isinstance(e, Text):
        return ["text", to_sexpr(e.body)]
    if isinstance(e, Elem):
        return ["elem", to_sexpr(e.name_expr), to_sexpr(e.content)]
    if isinstance(e, DataF):
        return ["data", to_sexpr(e.body)]
    if isinstance(e, NameF):
        return ["name", to_sexpr(e.body)]
    if isinstance(e, ChildrenF):
        return ["children", to_sexpr(e.body)]
    if isinstance(e, (EmptySeq, NEmpty)):
        return ["empty"]
    if isinstance(e, Seq):
        return ["seq", to_sexpr(e.left), to_sexpr(e.right)]
    if isinstance(e, Sing):
        return ["sing", to_sexpr(e.body)]
    if isinstance(e, For):
        return ["for", e.var, print_kind(e.kind), to_sexpr(e.source),
                to_sexpr(e.body)]
    if isinstance(e, MultiFor):
        return ["for*", [[v, to_sexpr(s)] for v, s in e.bindings],
                print_kind(e.kind), to_sexpr(e.body)]
    if isinstance(e, IfEq):
        return ["ifeq", to_sexpr(e.left), to_sexpr(e.right),
                to_sexpr(e.then), to_sexpr(e.els)]
    if isinstance(e, IfEmpty):
        return ["ifempty", to_sexpr(e.cond), to_sexpr(e.then),
                to_sexpr(e.els)]
    if isinstance(e, IfType):
        return ["iftype", to_sexpr(e.cond), print_type(e.type),
                to_sexpr(e.then), to_sexpr(e.els)]
    if isinstance(e, CondIf):
        return ["cond", _cond_to_sexpr(e.cond), to_sexpr(e.then),
                to_sexpr(e.els)]
    if isinstance(e, NPair):
        return ["pair", to_sexpr(e.left), to_sexpr(e.right)]
    if isinstance(e, NProj1):
        return ["fst", to_sexpr(e.body)]
    if isinstance(e, NProj2):
        return ["snd", to_sexpr(e.body)]
    if isinstance(e, NSing):
        return ["sing", to_sexpr(e.body)]
    if isinstance(e, NUnion):
        return ["union", to_sexpr(e.left), to_sexpr(e.right)]
    if isinstance(e, NFlatten):
        return ["flatten", to_sexpr(e.body)]
    if isinstance(e, NComp):
        return ["for", e.var, to_sexpr(e.source), to_sexpr(e.body)]
    if isinstance(e, NEqCond):
        return ["ifeq", to_sexpr(e.left), to_sexpr(e.right),
                to_sexpr(e.then), to_sexpr(e.els)]
    if isinstance(e, NKindCond):
        return ["ifkind", to_sexpr(e.subject), print_kind(e.kind),
                to_sexpr(e.then), to_sexpr(e.els)]
    if isinstance(e, NEmptyCond):
        return ["ifempty", to_sexpr(e.cond), to_sexpr(e.then),
                to_sexpr(e.els)]
    if isinstance(e, Relation):
        return ["rel", e.name]
    if isinstance(e, Select):
        return ["select", e.attr1, e.attr2, to_sexpr(e.arg)]
    if isinstance(e, Project):
        return ["project", list(e.attrs), to_sexpr(e.arg)]
    if isinstance(e, Product):
        return ["product", to_sexpr(e.left), to_sexpr(e.right)]
    if isinstance(e, Rename):
        return ["rename", e.old, e.new, to_sexpr(e.arg)]
    if isinstance(e, RaUnion):
        return ["ra-union", to_sexpr(e.left), to_sexpr(e.right)]
    if isinstance(e, Diff):
        return ["diff", to_sexpr(e.left), to_sexpr(e.right)]
    if isinstance(e, FD):
        return ["fd", list(e.lhs), list(e.rhs)]
    if isinstance(e, IND):
        return ["ind", list(e.lhs), list(e.rhs)]
    raise TypeError(f"not an expression: {e!r}")


def _cond_to_sexpr(c):
    if isinstance(c, CEq):
        return ["eq", to_sexpr(c.left), to_sexpr(c.right)]
    if isinstance(c, CAnd):
        return ["and", _cond_to_sexpr(c.left), _cond_to_sexpr(c.right)]
    if isinstance(c, COr):
        return ["or", _cond_to_sexpr(c.left), _cond_to_sexpr(c.right)]
    if isinstance(c, CNot):
        return ["not", _cond_to_sexpr(c.arg)]
    raise TypeError(f"not a condition: {c!r}")


def print_expr(e) -> str:
    return sexpr.write(to_sexpr(e))
