"""Pseudo-Boolean polynomials in canonical form.

A polynomial over binary variables ``x_0 .. x_{n-1}`` is stored as a map from
strictly increasing index tuples to non-zero coefficients, plus a constant
offset.  Because ``x_i * x_i == x_i`` on binary inputs, repeated variables in
a monomial are collapsed on construction.

Text format (``.hobo``)::

    # comment
    vars 3
    -10 x0
    +1 x0 x1
    -1 x0 x1 x2
    3              # constant, goes to the offset

Several terms may share a line when separated by ``+``/``-`` (``1 x0 + 1 x1``).
"""

from __future__ import annotations

import json
import math
import re
import types
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

Monomial = tuple[int, ...]
Assignment = tuple[int, ...]


class HoboError(ValueError):
    """Invalid input to one of the solver operations."""


class ParseError(HoboError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class Term(NamedTuple):
    vars: Monomial
    coef: float


def _canonical_key(vars_: Iterable[int]) -> Monomial:
    out = []
    for v in vars_:
        if isinstance(v, (bool, np.bool_)) or not isinstance(v, (int, np.integer)):
            raise HoboError(f"variable index must be an integer, got {v!r}")
        if v < 0:
            raise HoboError(f"negative variable index {v}")
        out.append(int(v))
    return tuple(sorted(set(out)))


@dataclass(frozen=True)
class Polynomial:
    """Canonical pseudo-Boolean polynomial.

    ``terms`` keys must already be sorted and duplicate free; use
    :meth:`from_terms` to build from raw (possibly repetitive) term lists.
    Zero coefficients are dropped.
    """

    num_vars: int
    terms: Mapping[Monomial, float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self):
        if self.num_vars < 0:
            raise HoboError("num_vars must be non-negative")
        clean = {}
        for key, coef in self.terms.items():
            key = tuple(key)
            if not key:
                raise HoboError("empty monomial; put constants in offset")
            if any(b <= a for a, b in zip(key, key[1:])):
                raise HoboError(f"monomial {key} is not strictly increasing")
            if key[0] < 0:
                raise HoboError(f"negative variable index {key[0]}")
            if key[-1] >= self.num_vars:
                raise HoboError(
                    f"variable index {key[-1]} out of range for num_vars={self.num_vars}"
                )
            coef = float(coef)
            if not math.isfinite(coef):
                raise HoboError(f"non-finite coefficient {coef} on {key}")
            if coef != 0.0:
                clean[key] = coef
        ordered = dict(sorted(clean.items(), key=lambda kv: (len(kv[0]), kv[0])))
        object.__setattr__(self, "terms", types.MappingProxyType(ordered))
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(self, "num_vars", int(self.num_vars))

    @classmethod
    def from_terms(
        cls,
        raw: Iterable[tuple[Sequence[int], float]],
        num_vars: int | None = None,
        offset: float = 0.0,
    ) -> Polynomial:
        """Reduce a raw term list: collapse ``x*x``, sum duplicates, drop zeros.

        Terms with no variables are added to the offset.
        """
        acc: dict[Monomial, float] = {}
        for vars_, coef in raw:
            key = _canonical_key(vars_)
            if not key:
                offset += float(coef)
                continue
            acc[key] = acc.get(key, 0.0) + float(coef)
        if num_vars is None:
            num_vars = 1 + max((k[-1] for k in acc), default=-1)
        return cls(num_vars, acc, offset)

    @property
    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def iter_terms(self) -> Iterator[Term]:
        for k, c in self.terms.items():
            yield Term(k, c)

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, x) -> float:
        return evaluate(self, x)

    def _combine(self, other: Polynomial, a: float, b: float) -> Polynomial:
        acc = {k: a * c for k, c in self.terms.items()}
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0.0) + b * c
        return Polynomial(
            max(self.num_vars, other.num_vars), acc, a * self.offset + b * other.offset
        )

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._combine(other, 1.0, 1.0)

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._combine(other, 1.0, -1.0)

    def __mul__(self, scalar: float) -> Polynomial:
        if not isinstance(scalar, (int, float, np.number)):
            return NotImplemented
        s = float(scalar)
        return Polynomial(
            self.num_vars, {k: s * c for k, c in self.terms.items()}, s * self.offset
        )

    __rmul__ = __mul__

    def __neg__(self) -> Polynomial:
        return self * -1.0

    def without_offset(self) -> Polynomial:
        return Polynomial(self.num_vars, dict(self.terms), 0.0)

    def with_num_vars(self, num_vars: int) -> Polynomial:
        return Polynomial(num_vars, dict(self.terms), self.offset)


def degree(p: Polynomial) -> int:
    return p.degree


def as_assignment(x, n: int) -> np.ndarray:
    """Validate a binary vector of length ``n`` and return it as uint8."""
    arr = np.asarray(x)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise HoboError(f"assignment length {arr.size} does not match num_vars={n}")
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise HoboError("assignment entries must be 0 or 1")
    return arr.astype(np.uint8)


def evaluate(p: Polynomial, x) -> float:
    """Cost of assignment ``x``: offset plus the sum of monomials that are all ones."""
    bits = as_assignment(x, p.num_vars).tolist()
    total = p.offset
    for key, coef in p.terms.items():
        for i in key:
            if not bits[i]:
                break
        else:
            total += coef
    return total


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<var>x(?P<idx>-?[\w.]*))
  | (?P<op>[+-])
  | (?P<star>\*)
  | (?P<ws>\s+)
    """,
    re.VERBOSE,
)
_INDEX = re.compile(r"\d+")


def _tokenize(line: str, lineno: int):
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None:
            raise ParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            yield kind, m.group(0), pos + 1, m
        pos = m.end()


def _parse_index(text: str, lineno: int, col: int) -> int:
    if _INDEX.fullmatch(text):
        return int(text)
    if text.startswith("-") and _INDEX.fullmatch(text[1:]):
        raise ParseError(f"negative variable index x{text}", lineno, col)
    raise ParseError(f"variable index must be a non-negative integer, got x{text}", lineno, col)


def _parse_line(line: str, lineno: int) -> list[tuple[list[int], float, int]]:
    """Split one line into ``(vars, coef, column)`` terms."""
    terms: list[tuple[list[int], float, int]] = []
    cur: list | None = None  # [vars, coef, col, has_coef]
    sign = 1.0
    pending_op = False
    for kind, text, col, m in _tokenize(line, lineno):
        if kind == "op":
            if pending_op:
                raise ParseError(f"unexpected operator {text!r}", lineno, col)
            if cur is not None:
                terms.append((cur[0], cur[1], cur[2]))
                cur = None
            sign = -1.0 if text == "-" else 1.0
            pending_op = True
        elif kind == "num":
            signed = text[0] in "+-"
            if cur is not None:
                if not signed:
                    raise ParseError(f"unexpected number {text!r}", lineno, col)
                terms.append((cur[0], cur[1], cur[2]))
                cur = None
                sign = 1.0
            if pending_op and signed:
                raise ParseError(f"unexpected signed number {text!r}", lineno, col)
            cur = [[], sign * float(text), col, True]
            sign, pending_op = 1.0, False
        elif kind == "var":
            idx = _parse_index(m.group("idx"), lineno, col)
            if cur is None:
                cur = [[], sign, col, False]
                sign, pending_op = 1.0, False
            cur[0].append(idx)
        elif kind == "star":
            if cur is None:
                raise ParseError("unexpected '*'", lineno, col)
    if pending_op:
        raise ParseError("dangling operator", lineno, len(line) + 1)
    if cur is not None:
        terms.append((cur[0], cur[1], cur[2]))
    return terms


def parse_text(source: str) -> Polynomial:
    """Parse ``.hobo`` text into a canonical :class:`Polynomial`."""
    declared: int | None = None
    raw: list[tuple[list[int], float]] = []
    for lineno, full in enumerate(source.splitlines(), start=1):
        line = full.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        if stripped.startswith("vars"):
            col = len(line) - len(stripped) + 1
            parts = stripped.split()
            if parts[0] != "vars":
                raise ParseError(f"unknown keyword {parts[0]!r}", lineno, col)
            if declared is not None:
                raise ParseError("duplicate 'vars' header", lineno, col)
            if raw:
                raise ParseError("'vars' header must precede all terms", lineno, col)
            if len(parts) != 2 or not _INDEX.fullmatch(parts[1]):
                raise ParseError("expected 'vars <n>' with non-negative integer n", lineno, col)
            declared = int(parts[1])
            continue
        for vars_, coef, col in _parse_line(line, lineno):
            if declared is not None and vars_ and max(vars_) >= declared:
                raise ParseError(
                    f"variable index {max(vars_)} exceeds declared vars {declared}", lineno, col
                )
            raw.append((vars_, coef))
    return Polynomial.from_terms(raw, num_vars=declared)


def _fmt_coef(c: float) -> str:
    if c.is_integer() and abs(c) < 1e15:
        return f"{int(c):+d}"
    return ("+" if c >= 0 else "") + repr(c)


def format_text(p: Polynomial) -> str:
    """Render ``p`` in ``.hobo`` form; ``parse_text`` inverts this exactly."""
    lines = [f"vars {p.num_vars}"]
    for key, coef in p.terms.items():
        lines.append(" ".join([_fmt_coef(coef)] + [f"x{i}" for i in key]))
    if p.offset != 0.0:
        lines.append(_fmt_coef(p.offset))
    return "\n".join(lines) + "\n"


# -- JSON form ---------------------------------------------------------------

def to_json(p: Polynomial) -> dict:
    return {
        "num_vars": p.num_vars,
        "offset": p.offset,
        "terms": [{"vars": list(k), "coef": c} for k, c in p.terms.items()],
    }


def from_json(obj: Mapping) -> Polynomial:
    try:
        raw = [(t["vars"], t["coef"]) for t in obj.get("terms", [])]
        p = Polynomial.from_terms(raw, offset=float(obj.get("offset", 0.0)))
        n = obj.get("num_vars")
    except (KeyError, TypeError, AttributeError) as exc:
        raise HoboError(f"malformed polynomial JSON: {exc}") from exc
    if n is not None:
        if n < p.num_vars:
            raise HoboError(f"variable index {p.num_vars - 1} exceeds num_vars {n}")
        p = p.with_num_vars(n)
    return p


def load(path: str | Path) -> Polynomial:
    """Read a ``.hobo`` or ``.json`` file (JSON is sniffed by a leading ``{``)."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
        return from_json(obj)
    return parse_text(text)


# -- instance generator ------------------------------------------------------

def random_instance(
    n: int,
    max_degree: int,
    terms: int,
    coef_range: tuple[float, float] = (-10.0, 10.0),
    seed: int = 0,
    integer: bool = False,
) -> Polynomial:
    """Random canonical polynomial with ``terms`` distinct monomials.

    Monomials are drawn uniformly from all monomials of degree
    ``1..max_degree``; coefficients are uniform on ``coef_range`` (integers
    when ``integer``), redrawn while zero.
    """
    if n < 1:
        raise HoboError("n must be >= 1")
    if not 1 <= max_degree <= n:
        raise HoboError("max_degree must satisfy 1 <= max_degree <= n")
    if terms < 1:
        raise HoboError("terms must be >= 1")
    lo, hi = coef_range
    if lo > hi or (lo == hi == 0):
        raise HoboError(f"bad coefficient range {coef_range}")
    counts = np.array([math.comb(n, d) for d in range(1, max_degree + 1)], dtype=float)
    if terms > counts.sum():
        raise HoboError(
            f"cannot draw {terms} distinct monomials; only {int(counts.sum())} exist"
        )
    rng = np.random.default_rng(seed)
    weights = counts / counts.sum()
    chosen: dict[Monomial, float] = {}
    while len(chosen) < terms:
        d = 1 + int(rng.choice(max_degree, p=weights))
        key = tuple(sorted(int(i) for i in rng.choice(n, size=d, replace=False)))
        if key in chosen:
            continue
        coef = 0.0
        while coef == 0.0:
            coef = float(rng.integers(int(lo), int(hi) + 1)) if integer else float(rng.uniform(lo, hi))
        chosen[key] = coef
    return Polynomial(n, chosen)


def all_monomials(n: int, max_degree: int) -> Iterator[Monomial]:
    for d in range(1, max_degree + 1):
        yield from combinations(range(n), d)
