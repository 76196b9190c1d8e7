"""Double-index tensor expressions: parsing, label checking, planning, evaluation.

Grammar (whitespace between factors means composition)::

    expr   := term (('+' | '-') term)*
    term   := scalar? factor (('.' | '∘' | '⊗' | '&')? factor)*
    factor := name ('_' labels)? ('^' labels)? | '(' expr ')'
    scalar := '-'? digits ('/' digits)?

A label is a letter, optional digits, optional ``*`` (dual space) and
any number of primes, e.g. ``a``, ``b2``, ``c*``, ``a''``.  Labels may be
wrapped in braces: ``t_{ab}^{c}``.  ``⊗`` (ASCII ``&``) is the outer
product; ``.``/``∘``/juxtaposition compose, matching every label that is a
free subscript on the left and a free superscript on the right.

Index discipline:

* a label may not repeat on the same side of one factor; a label written
  both as a subscript and a superscript of one factor is a self-contraction;
* in a composition a matched label must be a subscript on the left and a
  superscript on the right (``s_a t^a``); ``t^a . s_a`` is rejected;
* within one product chain a label occurs at most twice;
* an outer product may not share free labels;
* both terms of a sum carry the same free subscripts and superscripts, in
  any order; the right term is permuted to the order of the left one.

The free labels of a composite are ordered as in ``compose_general``:
subscripts (left unmatched, then right), superscripts (left, then right
unmatched).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .errors import LabelError, ParseError, ValidationError
from .numeric import Array
from .tensormap import IndexLabel, TensorMap, _fmt, compose_general, contract, outer, parse_labels, permute

__all__ = [
    "GRAMMAR",
    "Factor",
    "Compose",
    "Outer",
    "Scale",
    "Sum",
    "Expr",
    "LoadStep",
    "ContractStep",
    "MulStep",
    "ScaleStep",
    "AddStep",
    "Plan",
    "parse",
    "pretty_print",
    "free_labels",
    "factors",
    "validate",
    "evaluate",
    "evaluate_text",
    "reference_evaluate",
]

GRAMMAR = """\
expr   := term (('+' | '-') term)*
term   := scalar? factor (('.' | '∘' | '⊗' | '&')? factor)*
factor := name ('_' labels)? ('^' labels)? | '(' expr ')'
scalar := '-'? digits ('/' digits)?
name   := letter (letter | digit)*
label  := letter digit* '*'? "'"*      (labels may be wrapped in braces)

juxtaposition, '.' and '∘' compose with automatic matching of a left
subscript against a right superscript; '⊗' or '&' is the outer product."""


# ---------------------------------------------------------------- syntax tree

@dataclass(frozen=True)
class Factor:
    name: str
    subs: tuple = ()
    supers: tuple = ()
    span: tuple | None = field(default=None, compare=False)

    def describe(self) -> str:
        text = pretty_print(self)
        if self.span is None:
            return text
        return f"{text} at columns {self.span[0] + 1}-{self.span[1]}"


@dataclass(frozen=True)
class Compose:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Outer:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Scale:
    k: Fraction
    expr: "Expr"


@dataclass(frozen=True)
class Sum:
    left: "Expr"
    right: "Expr"


Expr = Union[Factor, Compose, Outer, Scale, Sum]


def _scale(k, e):
    if isinstance(e, Scale):
        return Scale(Fraction(k) * e.k, e.expr)
    return Scale(Fraction(k), e)


# ---------------------------------------------------------------- lexer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<idx>[_^])(?:\{(?P<braced>[^}]*)\}|(?P<bare>[A-Za-z0-9*']*))
  | (?P<op>[.∘⊗&+\-()])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: object
    pos: int
    end: int


def _lex(text: str) -> list:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup if m.lastgroup not in ("braced", "bare") else "idx"
        if kind == "ws":
            pass
        elif kind == "num":
            n, _, d = m.group("num").partition("/")
            if d and int(d) == 0:
                raise ParseError("zero denominator", pos)
            out.append(_Tok("num", Fraction(int(n), int(d or 1)), pos, m.end()))
        elif kind == "name":
            out.append(_Tok("name", m.group("name"), pos, m.end()))
        elif kind == "idx":
            raw = m.group("braced") if m.group("braced") is not None else m.group("bare")
            if not raw:
                raise ParseError(f"expected labels after {m.group('idx')!r}", pos)
            try:
                labels = parse_labels(raw)
            except LabelError as exc:
                raise ParseError(str(exc), pos) from None
            out.append(_Tok(m.group("idx"), labels, pos, m.end()))
        else:
            out.append(_Tok(m.group("op"), m.group("op"), pos, m.end()))
        pos = m.end()
    out.append(_Tok("end", None, len(text), len(text)))
    return out


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, text):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self):
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.take().kind
            right = self.term()
            node = Sum(node, right if op == "+" else _scale(-1, right))
        return node

    def term(self):
        k = None
        if self.tok.kind == "-":
            self.take()
            k = Fraction(-1)
            if self.tok.kind == "num":
                k *= self.take().value
        elif self.tok.kind == "num":
            k = self.take().value
        node = self.factor()
        while True:
            kind = self.tok.kind
            if kind in (".", "∘", "⊗", "&"):
                self.take()
                right = self.factor()
                node = Outer(node, right) if kind in ("⊗", "&") else Compose(node, right)
            elif kind in ("name", "("):
                node = Compose(node, self.factor())
            else:
                break
        return node if k is None else _scale(k, node)

    def factor(self):
        t = self.tok
        if t.kind == "name":
            self.take()
            subs = supers = None
            end = t.end
            while self.tok.kind in ("_", "^"):
                idx = self.take()
                if idx.kind == "_":
                    if subs is not None:
                        raise ParseError("second subscript group", idx.pos)
                    subs = idx.value
                else:
                    if supers is not None:
                        raise ParseError("second superscript group", idx.pos)
                    supers = idx.value
                end = idx.end
            return Factor(t.value, subs or (), supers or (), (t.pos, end))
        if t.kind == "(":
            self.take()
            node = self.expr()
            if self.tok.kind != ")":
                raise ParseError("expected ')'", self.tok.pos)
            self.take()
            return node
        if t.kind == "end":
            raise ParseError("unexpected end of expression", t.pos)
        if t.kind == "num":
            raise ParseError("a scalar may only start a term", t.pos)
        raise ParseError(f"expected a tensor name or '(' but found {t.value!r}", t.pos)


def parse(text: str, check: bool = True) -> Expr:
    """Parse ``text``; with ``check`` also enforce the index discipline."""
    p = _Parser(text)
    node = p.expr()
    if p.tok.kind != "end":
        raise ParseError(f"unexpected {p.tok.value!r}", p.tok.pos)
    if check:
        validate(node)
    return node


# ---------------------------------------------------------------- printing

def _fmt_scalar(k: Fraction) -> str:
    return str(k)


def pretty_print(e: Expr) -> str:
    if isinstance(e, Factor):
        out = e.name
        if e.subs:
            out += "_" + _fmt(e.subs)
        if e.supers:
            out += "^" + _fmt(e.supers)
        return out
    if isinstance(e, (Compose, Outer)):
        left = pretty_print(e.left)
        if isinstance(e.left, (Sum, Scale)):
            left = f"({left})"
        right = pretty_print(e.right)
        if not isinstance(e.right, Factor):
            right = f"({right})"
        return f"{left} {'.' if isinstance(e, Compose) else '⊗'} {right}"
    if isinstance(e, Scale):
        inner = pretty_print(e.expr)
        if isinstance(e.expr, (Sum, Scale)):
            inner = f"({inner})"
        return f"{_fmt_scalar(e.k)} {inner}"
    if isinstance(e, Sum):
        right = pretty_print(e.right)
        if isinstance(e.right, Sum):
            right = f"({right})"
        return f"{pretty_print(e.left)} + {right}"
    raise TypeError(f"not an expression node: {e!r}")


def factors(e: Expr) -> list:
    """Factors in left-to-right order."""
    if isinstance(e, Factor):
        return [e]
    if isinstance(e, Scale):
        return factors(e.expr)
    return factors(e.left) + factors(e.right)


# ---------------------------------------------------------------- plans

@dataclass(frozen=True)
class LoadStep:
    name: str
    subs: tuple
    supers: tuple


@dataclass(frozen=True)
class ContractStep:
    src: int
    labels: tuple
    subs: tuple
    supers: tuple


@dataclass(frozen=True)
class MulStep:
    left: int
    right: int
    matched: tuple
    outer: bool
    subs: tuple
    supers: tuple


@dataclass(frozen=True)
class ScaleStep:
    src: int
    k: Fraction
    subs: tuple
    supers: tuple


@dataclass(frozen=True)
class AddStep:
    left: int
    right: int
    subs: tuple
    supers: tuple


Step = Union[LoadStep, ContractStep, MulStep, ScaleStep, AddStep]


def _sig(subs, supers) -> str:
    out = ""
    if subs:
        out += "_" + _fmt(subs)
    if supers:
        out += "^" + _fmt(supers)
    return out or "(scalar)"


@dataclass(frozen=True)
class Plan:
    """Register program: step ``k`` writes register ``%k``; the last step is the result."""

    steps: tuple
    dim: int | None = None
    basis: str | None = None

    @property
    def subs(self) -> tuple:
        return self.steps[-1].subs

    @property
    def supers(self) -> tuple:
        return self.steps[-1].supers

    def __str__(self):
        lines = []
        for k, s in enumerate(self.steps):
            if isinstance(s, LoadStep):
                body = f"load {s.name}{_sig(s.subs, s.supers)}"
            elif isinstance(s, ContractStep):
                body = f"contract %{s.src} over {_fmt(s.labels)}"
            elif isinstance(s, MulStep):
                how = "outer" if s.outer else ("match " + (",".join(map(str, s.matched)) or "none"))
                body = f"mul %{s.left} %{s.right} {how}"
            elif isinstance(s, ScaleStep):
                body = f"scale %{s.src} by {s.k}"
            else:
                body = f"add %{s.left} %{s.right}"
            lines.append(f"%{k} = {body} -> {_sig(s.subs, s.supers)}")
        return "\n".join(lines)


class _Compiler:
    def __init__(self, env):
        self.env = env
        self.steps: list = []
        self.dim = None
        self.basis = None
        self.basis_from = None

    def emit(self, step) -> int:
        self.steps.append(step)
        return len(self.steps) - 1

    def run(self, e):
        """Return (register, subs, supers, label use counts)."""
        if isinstance(e, Factor):
            return self.factor(e)
        if isinstance(e, Scale):
            reg, subs, supers, used = self.run(e.expr)
            return self.emit(ScaleStep(reg, e.k, subs, supers)), subs, supers, used
        if isinstance(e, Sum):
            return self.sum(e)
        return self.product(e)

    def factor(self, f: Factor):
        for side, labels in (("subscript", f.subs), ("superscript", f.supers)):
            dup = [x for x, c in Counter(labels).items() if c > 1]
            if dup:
                raise ValidationError(f"label repeated as a {side} of one factor",
                                      dup[0], f.describe())
        if self.env is not None:
            self.bind(f)
        reg = self.emit(LoadStep(f.name, f.subs, f.supers))
        loops = tuple(x for x in f.subs if x in f.supers)
        subs = tuple(x for x in f.subs if x not in loops)
        supers = tuple(x for x in f.supers if x not in loops)
        if loops:
            reg = self.emit(ContractStep(reg, loops, subs, supers))
        return reg, subs, supers, Counter(f.subs + f.supers)

    def bind(self, f: Factor):
        if f.name not in self.env:
            raise ValidationError(f"unbound tensor name {f.name!r}", None, f.describe())
        t = self.env[f.name]
        if (len(t.subs), len(t.supers)) != (len(f.subs), len(f.supers)):
            raise ValidationError(
                f"{f.name} is bound with {len(t.subs)} subscript(s) and {len(t.supers)} "
                f"superscript(s), written with {len(f.subs)} and {len(f.supers)}",
                None, f.describe())
        if self.dim is None:
            self.dim, self.basis, self.basis_from = t.dim, t.basis, f.name
        elif t.dim != self.dim:
            raise ValidationError(f"{f.name} has dim {t.dim}, {self.basis_from} has dim {self.dim}",
                                  None, f.describe())
        elif t.basis != self.basis:
            raise ValidationError(f"{f.name} is in basis {t.basis!r}, {self.basis_from} in "
                                  f"{self.basis!r}", None, f.describe())

    def product(self, e):
        lreg, ls, lu, lused = self.run(e.left)
        rreg, rs, ru, rused = self.run(e.right)
        used = lused + rused
        for x, c in used.items():
            if c > 2:
                raise ValidationError("ambiguous: label occurs more than twice in one product",
                                      x, _locate(e.right, x) or _locate(e.left, x))
        if isinstance(e, Outer):
            shared = [x for x in ls + lu if x in rs + ru]
            if shared:
                raise ValidationError("outer product factors share a free label", shared[0],
                                      _locate(e.right, shared[0]))
            return (self.emit(MulStep(lreg, rreg, (), True, ls + rs, lu + ru)),
                    ls + rs, lu + ru, used)
        backwards = [x for x in lu if x in rs]
        if backwards:
            raise ValidationError("a repeated label must be a subscript on the earlier factor "
                                  "and a superscript on the later one", backwards[0],
                                  _locate(e.right, backwards[0]))
        for side, a, b in (("subscript", ls, rs), ("superscript", lu, ru)):
            clash = [x for x in a if x in b]
            if clash:
                raise ValidationError(f"label occurs twice as a free {side}", clash[0],
                                      _locate(e.right, clash[0]))
        matched = tuple(x for x in ls if x in ru)
        subs = tuple(x for x in ls if x not in matched) + rs
        supers = lu + tuple(x for x in ru if x not in matched)
        return self.emit(MulStep(lreg, rreg, matched, False, subs, supers)), subs, supers, used

    def sum(self, e):
        lreg, ls, lu, _ = self.run(e.left)
        rreg, rs, ru, _ = self.run(e.right)
        for side, a, b in (("subscripts", ls, rs), ("superscripts", lu, ru)):
            if sorted(a) != sorted(b):
                extra = sorted(set(a) ^ set(b)) or [None]
                raise ValidationError(f"terms of a sum need the same free {side} "
                                      f"({_fmt(a) or '-'} vs {_fmt(b) or '-'})", extra[0],
                                      _locate(e, extra[0]) if extra[0] else None)
        return self.emit(AddStep(lreg, rreg, ls, lu)), ls, lu, Counter(ls + lu)


def _locate(e, label):
    """Description of the first factor in ``e`` that writes ``label``."""
    for f in factors(e):
        if label in f.subs or label in f.supers:
            return f.describe()
    return None


def free_labels(e: Expr) -> tuple:
    """``(subs, supers)`` of the value ``e`` denotes."""
    _, subs, supers, _ = _Compiler(None).run(e)
    return subs, supers


def validate(e: Expr, env: Mapping | None = None) -> Plan:
    """Check the index discipline (and, given ``env``, the bindings) and compile a plan."""
    c = _Compiler(env)
    c.run(e)
    return Plan(tuple(c.steps), c.dim, c.basis)


# ---------------------------------------------------------------- evaluation

def _bind(labels, idx):
    d = {}
    for x, i in zip(labels, idx):
        if d.setdefault(x, i) != i:
            return None
    return d


def _labelled(operands, out_labels, out_subs, dim) -> Array:
    """Sum of products over all index values consistent with the slot labels.

    ``operands`` is one or two ``(Array, slot labels)``; a label repeated
    anywhere forces equal values and is summed unless it appears in
    ``out_labels``.
    """
    entries = [Fraction(0)] * dim ** len(out_labels)

    def put(d, v):
        pos = 0
        for x in out_labels:
            pos = pos * dim + d[x]
        entries[pos] += v

    (a, al), *rest = operands
    a_terms = [(d, v) for idx, v in a.nonzero() if (d := _bind(al, idx)) is not None]
    if not rest:
        for d, v in a_terms:
            put(d, v)
    else:
        (b, bl), = rest
        shared = [x for x in dict.fromkeys(al) if x in bl]
        groups: dict = {}
        for idx, w in b.nonzero():
            d = _bind(bl, idx)
            if d is not None:
                groups.setdefault(tuple(d[x] for x in shared), []).append((d, w))
        for d, v in a_terms:
            for d2, w in groups.get(tuple(d[x] for x in shared), ()):
                put({**d, **d2}, v * w)
    return Array(dim, out_subs, len(out_labels) - out_subs, tuple(entries))


def evaluate(plan: Plan, env: Mapping) -> TensorMap:
    """Run ``plan`` on the tensors bound in ``env``."""
    if plan.dim is None:
        plan = _rebind(plan, env)
    dim = plan.dim
    regs: list = []
    for s in plan.steps:
        out = s.subs + s.supers
        if isinstance(s, LoadStep):
            regs.append(env[s.name].coeffs)
            continue
        if isinstance(s, ContractStep):
            src = plan.steps[s.src]
            arr = _labelled([(regs[s.src], src.subs + src.supers)], out, len(s.subs), dim)
        elif isinstance(s, MulStep):
            lt, rt = plan.steps[s.left], plan.steps[s.right]
            arr = _labelled([(regs[s.left], lt.subs + lt.supers),
                             (regs[s.right], rt.subs + rt.supers)], out, len(s.subs), dim)
        elif isinstance(s, ScaleStep):
            arr = s.k * regs[s.src]
        else:
            rt = plan.steps[s.right]
            arr = regs[s.left] + _labelled([(regs[s.right], rt.subs + rt.supers)], out,
                                           len(s.subs), dim)
        regs.append(arr)
    return TensorMap(regs[-1], plan.subs, plan.supers, plan.basis)


def _rebind(plan: Plan, env) -> Plan:
    names = [s.name for s in plan.steps if isinstance(s, LoadStep)]
    missing = [n for n in names if n not in env]
    if missing:
        raise ValidationError(f"unbound tensor name {missing[0]!r}")
    first = env[names[0]]
    return Plan(plan.steps, first.dim, first.basis)


def evaluate_text(text: str, env: Mapping) -> TensorMap:
    return evaluate(validate(parse(text), env), env)


def reference_evaluate(e: Expr, env: Mapping) -> TensorMap:
    """Fold ``e`` with the tensor-map operations (composition, contraction, permutation)."""
    if isinstance(e, Factor):
        t = env[e.name]
        loops = [x for x in e.subs if x in e.supers]
        taken = set(e.subs) | set(e.supers)
        stand_in = {}
        for n, x in enumerate(loops, 1):
            y = IndexLabel("z", x.dual, n)
            while y in taken:
                y = IndexLabel("z", x.dual, y.generation + len(loops))
            taken.add(y)
            stand_in[x] = y
        t = t.relabel(subs=e.subs, supers=tuple(stand_in.get(x, x) for x in e.supers))
        return contract(t, [(x, stand_in[x]) for x in loops]) if loops else t
    if isinstance(e, Scale):
        return e.k * reference_evaluate(e.expr, env)
    left = reference_evaluate(e.left, env)
    right = reference_evaluate(e.right, env)
    if isinstance(e, Compose):
        return compose_general(left, right, [x for x in left.subs if x in right.supers])
    if isinstance(e, Outer):
        return outer(left, right)
    return left + permute(right, left.subs, left.supers)
