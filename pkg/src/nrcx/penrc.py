"""Evaluator for the positive-existential nested calculus with kind
tests, and the k-complexity measure used by the decision procedures."""

from __future__ import annotations

from .frontend import (NAtomLit, NComp, NEmpty, NEmptyCond, NEqCond,
                       NFlatten, NKindCond, NPair, NProj1, NProj2, NSing,
                       NUnion, NVar)
from .rx import Defined, Undefined, _Undef
from .typeterms import kind_member
from .values import Atom, Pair, VSet, vset

PROJ_ON_NONPAIR = "proj-on-nonpair"
UNION_ON_NONSET = "union-on-nonset"
FLATTEN_ON_NONSET = "flatten-on-nonset"
FLATTEN_ON_NONSET_OF_SETS = "flatten-on-nonset-of-sets"
EQ_ON_NONATOM = "eq-on-nonatom"
COMPREHENSION_ON_NONSET = "comprehension-on-nonset"


def eval_penrc(e, sigma):
    """Evaluate e under sigma; returns Defined(value) or
    Undefined(reason, failing subexpression)."""
    try:
        return Defined(_ev(e, dict(sigma)))
    except _Undef as u:
        return Undefined(u.reason, u.expr)


def _ev(e, sigma):
    try:
        if isinstance(e, NVar):
            return sigma[e.name]
        if isinstance(e, NAtomLit):
            return e.atom
        if isinstance(e, NPair):
            return Pair(_ev(e.left, sigma), _ev(e.right, sigma))
        if isinstance(e, NProj1):
            v = _ev(e.body, sigma)
            if not isinstance(v, Pair):
                raise _Undef(PROJ_ON_NONPAIR, e)
            return v.fst
        if isinstance(e, NProj2):
            v = _ev(e.body, sigma)
            if not isinstance(v, Pair):
                raise _Undef(PROJ_ON_NONPAIR, e)
            return v.snd
        if isinstance(e, NEmpty):
            return VSet()
        if isinstance(e, NSing):
            return vset(_ev(e.body, sigma))
        if isinstance(e, NUnion):
            l = _ev(e.left, sigma)
            r = _ev(e.right, sigma)
            if not (isinstance(l, VSet) and isinstance(r, VSet)):
                raise _Undef(UNION_ON_NONSET, e)
            return l.union(r)
        if isinstance(e, NFlatten):
            v = _ev(e.body, sigma)
            if not isinstance(v, VSet):
                raise _Undef(FLATTEN_ON_NONSET, e)
            parts = []
            for s in v:
                if not isinstance(s, VSet):
                    raise _Undef(FLATTEN_ON_NONSET_OF_SETS, e)
                parts.extend(s)
            return VSet(parts)
        if isinstance(e, NComp):
            src = _ev(e.source, sigma)
            if not isinstance(src, VSet):
                raise _Undef(COMPREHENSION_ON_NONSET, e)
            parts = []
            for v in src:
                inner = dict(sigma)
                inner[e.var] = v
                parts.append(_ev(e.body, inner))
            return VSet(parts)
        if isinstance(e, NEqCond):
            a = _ev(e.left, sigma)
            b = _ev(e.right, sigma)
            if not (isinstance(a, Atom) and isinstance(b, Atom)):
                raise _Undef(EQ_ON_NONATOM, e)
            return _ev(e.then if a == b else e.els, sigma)
        if isinstance(e, NKindCond):
            v = _ev(e.subject, sigma)
            return _ev(e.then if kind_member(v, e.kind) else e.els, sigma)
        if isinstance(e, NEmptyCond):
            # Full-NRC extension; rejected by the decision procedures.
            v = _ev(e.cond, sigma)
            empty = isinstance(v, VSet) and len(v) == 0
            return _ev(e.then if empty else e.els, sigma)
    except _Undef as u:
        if u.expr is None:
            u.expr = e
        raise
    raise TypeError(f"not a nested-calculus expression: {e!r}")


def complexity(e, k: int) -> int:
    """The k-complexity c(e, k): witnesses of set-cardinality <= k in
    the output trace back to environments whose sets have cardinality
    at most c(e, k).  Exact (unbounded) integer arithmetic."""
    if isinstance(e, NVar):
        return k
    if isinstance(e, (NEmpty, NAtomLit)):
        return 0
    if isinstance(e, (NPair, NUnion)):
        return complexity(e.left, k) + complexity(e.right, k)
    if isinstance(e, (NProj1, NProj2, NFlatten)):
        return complexity(e.body, k)
    if isinstance(e, NSing):
        return k * complexity(e.body, k)
    if isinstance(e, NComp):
        return (complexity(e.source, max(k, complexity(e.body, k)))
                + k * complexity(e.body, k))
    if isinstance(e, NEqCond):
        return max(complexity(e.then, k), complexity(e.els, k))
    if isinstance(e, NKindCond):
        return max(complexity(e.then, k), complexity(e.els, k))
    if isinstance(e, NEmptyCond):
        raise ValueError(
            "k-complexity is not defined for the emptiness test")
    raise TypeError(f"not a nested-calculus expression: {e!r}")
