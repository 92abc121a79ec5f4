"""Exact multiset algebra and the un-normalized entropy ``w``.

A multiset is an immutable map from symbols to positive integer counts.
Symbols are either atoms (non-empty strings) or flat tuples of atoms; the
product of two multisets pairs symbols by concatenating their components,
so ``(a, b) x c`` lands on ``(a, b, c)``.

Entropy values are in bits and use the non-negative convention
``w(X) = |X| log2 |X| - sum_a n_a log2 n_a``, which vanishes on monomials
and equals the Huffman weight on scalar multiples of dyadic multisets.
"""
from __future__ import annotations

import enum
import math
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .errors import ZeroMultisetError

Symbol = Union[str, Tuple[str, ...]]

_RESERVED = re.compile(r"[\s(),*+]")
_COEF = re.compile(r"^(\d+)(\D.*)$", re.S)


def check_atom(atom: str) -> str:
    if not isinstance(atom, str) or not atom:
        raise ValueError(f"atom must be a non-empty string, got {atom!r}")
    if _RESERVED.search(atom):
        raise ValueError(f"atom {atom!r} contains whitespace or one of ( ) , * +")
    return atom


def check_symbol(sym) -> Symbol:
    if isinstance(sym, tuple):
        if len(sym) < 2:
            raise ValueError(f"tuple symbols need at least two atoms, got {sym!r}")
        for part in sym:
            check_atom(part)
        return sym
    return check_atom(sym)


def symbol_parts(sym: Symbol) -> Tuple[str, ...]:
    return sym if isinstance(sym, tuple) else (sym,)


def symbol_key(sym: Symbol) -> Tuple[str, ...]:
    """Sort key: atoms compare as 1-tuples, tuples componentwise."""
    return symbol_parts(sym)


def render_symbol(sym: Symbol) -> str:
    if isinstance(sym, tuple):
        return "(" + ",".join(sym) + ")"
    return sym


def pair_symbols(a: Symbol, b: Symbol) -> Symbol:
    return symbol_parts(a) + symbol_parts(b)


def _render_term(sym: Symbol, count: int) -> str:
    text = render_symbol(sym)
    if text[0].isdigit():
        # a bare leading digit would read back as a coefficient
        return f"{count}*{text}"
    if count == 1:
        return text
    return f"{count}{text}"


def parse_symbol(text: str) -> Symbol:
    if text.startswith("(") and text.endswith(")"):
        return check_symbol(tuple(p.strip() for p in text[1:-1].split(",")))
    return check_atom(text)


class Multiset(Mapping):
    """Immutable finite map ``Symbol -> count`` with counts >= 1.

    Zero counts passed to the constructor are dropped, so ``Multiset()`` and
    ``Multiset({"a": 0})`` are both the zero multiset.
    """

    __slots__ = ("_counts", "_hash", "_text", "_norm")

    def __init__(self, entries: Union[Mapping, Iterable, None] = None, **kwargs: int):
        counts: dict = {}
        items = entries.items() if isinstance(entries, Mapping) else (entries or ())
        for sym, n in list(items) + list(kwargs.items()):
            check_symbol(sym)
            if isinstance(n, bool) or not isinstance(n, int):
                raise TypeError(f"count for {sym!r} must be an int, got {n!r}")
            if n < 0:
                raise ValueError(f"count for {sym!r} is negative: {n}")
            if n:
                counts[sym] = counts.get(sym, 0) + n
        self._init(counts)

    def _init(self, counts: dict) -> None:
        self._counts = counts
        self._hash = None
        self._text = None
        self._norm = None

    @classmethod
    def _trusted(cls, counts: dict) -> "Multiset":
        obj = cls.__new__(cls)
        obj._init(counts)
        return obj

    @classmethod
    def parse(cls, text: str) -> "Multiset":
        """Read the ``a+b+2c`` rendering (also accepts ``3*x`` and ``2(a,b)``)."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        counts: dict = {}
        for raw in _split_terms(text):
            term = raw.strip()
            if not term:
                raise ValueError(f"empty term in {text!r}")
            if "*" in term:
                coef, _, rest = term.partition("*")
                n, sym = int(coef), parse_symbol(rest.strip())
            else:
                m = _COEF.match(term)
                if m:
                    n, sym = int(m.group(1)), parse_symbol(m.group(2))
                else:
                    n, sym = 1, parse_symbol(term)
            if n:
                counts[sym] = counts.get(sym, 0) + n
        return cls._trusted(counts)

    def __getitem__(self, sym: Symbol) -> int:
        return self._counts[sym]

    def __iter__(self):
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other) -> bool:
        if isinstance(other, Multiset):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __str__(self) -> str:
        if self._text is None:
            if not self._counts:
                self._text = "0"
            else:
                terms = sorted(self._counts.items(), key=lambda kv: symbol_key(kv[0]))
                self._text = "+".join(_render_term(s, n) for s, n in terms)
        return self._text

    def __repr__(self) -> str:
        return f"Multiset({str(self)!r})"

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __add__(self, other: "Multiset") -> "Multiset":
        if not isinstance(other, Multiset):
            return NotImplemented
        return add(self, other)

    def __rmul__(self, k: int) -> "Multiset":
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return scalar_mul(k, self)

    @property
    def norm(self) -> int:
        if self._norm is None:
            self._norm = sum(self._counts.values())
        return self._norm

    def is_monomial(self) -> bool:
        return len(self._counts) == 1

    def symbols(self) -> list:
        """Support in rendering order."""
        return sorted(self._counts, key=symbol_key)


def _split_terms(text: str) -> list:
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            terms.append(text[start:i])
            start = i + 1
    terms.append(text[start:])
    return terms


ZERO = Multiset()


def norm(X: Multiset) -> int:
    return X.norm


def add(X: Multiset, Y: Multiset) -> Multiset:
    counts = dict(X._counts)
    for sym, n in Y._counts.items():
        counts[sym] = counts.get(sym, 0) + n
    return Multiset._trusted(counts)


def scalar_mul(k: int, X: Multiset) -> Multiset:
    if k < 0:
        raise ValueError(f"scalar must be a natural number, got {k}")
    if k == 0:
        return ZERO
    return Multiset._trusted({s: k * n for s, n in X._counts.items()})


def product(X: Multiset, Y: Multiset) -> Multiset:
    """``X x Y``: count of ``(a, b)`` is ``n_a * m_b``.

    Tuple components are concatenated, so iterated products stay flat.
    """
    counts: dict = {}
    for a, n in X._counts.items():
        pa = symbol_parts(a)
        for b, m in Y._counts.items():
            sym = pa + symbol_parts(b)
            counts[sym] = counts.get(sym, 0) + n * m
    return Multiset._trusted(counts)


def power(X: Multiset, n: int) -> Multiset:
    if n < 1:
        raise ValueError("power needs n >= 1")
    out = X
    for _ in range(n - 1):
        out = product(out, X)
    return out


def intersect(X: Multiset, Y: Multiset) -> Multiset:
    if len(Y) < len(X):
        X, Y = Y, X
    return Multiset._trusted({s: n * Y._counts[s] for s, n in X._counts.items() if s in Y._counts})


def disjoint(X: Multiset, Y: Multiset) -> bool:
    if len(Y) < len(X):
        X, Y = Y, X
    return not any(s in Y._counts for s in X._counts)


def divide(X: Multiset, k: int) -> Multiset:
    """Exact inverse of :func:`scalar_mul`; every count must be divisible by ``k``."""
    if k < 1 or any(n % k for n in X._counts.values()):
        raise ValueError(f"{X} is not divisible by {k}")
    return Multiset._trusted({s: n // k for s, n in X._counts.items()})


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0 else 0.0


def entropy_w(X: Multiset) -> float:
    """Un-normalized entropy of the counts of ``X`` in bits (``>= 0``)."""
    total = X.norm
    if total == 0:
        return 0.0
    log_total = math.log2(total)
    # per-term form keeps every summand non-negative
    return math.fsum(n * (log_total - math.log2(n)) for n in X._counts.values())


def entropy_w_seq(xs: Iterable[float]) -> float:
    """Same quantity as :func:`entropy_w` on a raw sequence of non-negative reals."""
    xs = list(xs)
    for x in xs:
        if x < 0 or math.isnan(x):
            raise ValueError(f"entropy is undefined for negative input {x!r}")
    total = math.fsum(xs)
    if total == 0:
        return 0.0
    log_total = math.log2(total)
    return math.fsum(x * (log_total - math.log2(x)) for x in xs if x > 0)


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def odd_part(n: int) -> int:
    return n // (n & -n)


class DyadicKind(enum.Enum):
    NOT_DYADIC = "NotDyadic"
    DYADIC = "Dyadic"
    SCALAR_DYADIC = "ScalarDyadic"


@dataclass(frozen=True)
class DyadicClass:
    kind: DyadicKind
    k: int = 1
    base: Optional[Multiset] = None

    def __str__(self) -> str:
        if self.kind is DyadicKind.SCALAR_DYADIC:
            return f"ScalarDyadic k={self.k} base={self.base}"
        return self.kind.value

    @property
    def is_scalar_dyadic(self) -> bool:
        """True for both dyadic and proper scalar multiples of dyadic."""
        return self.kind is not DyadicKind.NOT_DYADIC


NOT_DYADIC = DyadicClass(DyadicKind.NOT_DYADIC)


def classify_dyadic(X: Multiset) -> DyadicClass:
    """Decide whether ``X`` is dyadic or ``k`` times a dyadic multiset.

    ``X = k * D`` with ``D`` dyadic exactly when all counts share one odd part
    ``m`` and ``|X| / m`` is a power of two; the smallest such ``k`` is ``m``.
    """
    if not X:
        raise ZeroMultisetError("classify_dyadic needs a non-zero multiset")
    parts = {odd_part(n) for n in X.values()}
    if len(parts) != 1:
        return NOT_DYADIC
    (m,) = parts
    if not is_power_of_two(X.norm // m):
        return NOT_DYADIC
    if m == 1:
        return DyadicClass(DyadicKind.DYADIC, 1, X)
    return DyadicClass(DyadicKind.SCALAR_DYADIC, m, divide(X, m))
