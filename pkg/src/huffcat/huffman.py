"""Greedy Huffman construction over multisets and prefix codes read off it.

Ties between equal-norm candidates are broken by the rendered text of the
root contents, so the same multiset always yields the same tree. The weight
does not depend on how ties are broken.
"""
from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Set

from .errors import InvalidCodeword, NotMonomial, TooLarge, TruncatedStream, UnknownSymbol, ZeroMultisetError
from .multiset import Multiset, Symbol, render_symbol
from .tree import Tree, is_monomial_tree, join, leaf, leaves

DEFAULT_MAX_STATES = 200_000


def _require_nonzero(X: Multiset, what: str) -> None:
    if not X:
        raise ZeroMultisetError(f"{what} needs a non-zero multiset")


def _seed_forest(X: Multiset) -> List[Tree]:
    return [leaf(Multiset._trusted({sym: X[sym]})) for sym in X.symbols()]


def _key(t: Tree):
    return (t.content.norm, str(t.content))


def huffman_tree(X: Multiset) -> Tree:
    """Deterministic Huffman tree over ``X``.

    Repeatedly merges the two roots with the smallest ``(norm, rendering)``
    keys; the smaller key becomes the left child.
    """
    _require_nonzero(X, "huffman_tree")
    tick = itertools.count()
    heap = [(*_key(t), next(tick), t) for t in _seed_forest(X)]
    heapq.heapify(heap)
    while len(heap) > 1:
        a = heapq.heappop(heap)[-1]
        b = heapq.heappop(heap)[-1]
        merged = join(a, b)
        heapq.heappush(heap, (*_key(merged), next(tick), merged))
    return heap[0][-1]


def huffman_tree_pairwise(X: Multiset) -> Tree:
    """Literal pairwise scan: join the pair with least ``|X_i + X_j|``.

    Quadratic per step; kept as a reference for :func:`huffman_tree`.
    """
    _require_nonzero(X, "huffman_tree_pairwise")
    forest = _seed_forest(X)
    while len(forest) > 1:
        best = None
        for i, j in itertools.combinations(range(len(forest)), 2):
            ki, kj = sorted((_key(forest[i]), _key(forest[j])))
            cand = (ki[0] + kj[0], ki, kj)
            if best is None or cand < best[0]:
                best = (cand, i, j)
        _, i, j = best
        a, b = sorted((forest[i], forest[j]), key=_key)
        forest = [t for n, t in enumerate(forest) if n not in (i, j)]
        forest.append(join(a, b))
    return forest[0]


def huffman_weight(X: Multiset) -> int:
    """Weight of any Huffman tree over ``X``, computed from the counts alone."""
    _require_nonzero(X, "huffman_weight")
    heap = list(X.values())
    heapq.heapify(heap)
    total = 0
    while len(heap) > 1:
        s = heapq.heappop(heap) + heapq.heappop(heap)
        total += s
        heapq.heappush(heap, s)
    return total


def _min_pairs(forest) -> list:
    norms = [t.content.norm for t in forest]
    pairs = list(itertools.combinations(range(len(forest)), 2))
    best = min(norms[i] + norms[j] for i, j in pairs)
    return [(i, j) for i, j in pairs if norms[i] + norms[j] == best]


def all_huffman_trees(X: Multiset, max_states: int = DEFAULT_MAX_STATES) -> Dict[str, Tree]:
    """Every tree reachable by some sequence of minimal-pair merges.

    Returns a dict keyed by canonical form. At each step every pair whose
    combined norm is minimal is tried, not only the two smallest roots.
    Forest states are memoized; exploring more than ``max_states`` of them
    raises :class:`TooLarge`.
    """
    _require_nonzero(X, "all_huffman_trees")
    results: Dict[str, Tree] = {}
    seen: Set[frozenset] = set()
    stack = [tuple(_seed_forest(X))]
    while stack:
        forest = stack.pop()
        state = frozenset(t.canonical for t in forest)
        if state in seen:
            continue
        seen.add(state)
        if len(seen) > max_states:
            raise TooLarge(f"all_huffman_trees explored more than {max_states} forest states")
        if len(forest) == 1:
            results.setdefault(forest[0].canonical, forest[0])
            continue
        for i, j in _min_pairs(forest):
            rest = tuple(t for n, t in enumerate(forest) if n not in (i, j))
            stack.append(rest + (join(forest[i], forest[j]),))
    return dict(sorted(results.items()))


def is_huffman_tree(t: Tree) -> bool:
    """Whether some run of the greedy construction produces ``t``.

    Replays the construction on ``t``'s leaves, only ever merging a
    minimal-norm pair that are siblings in ``t``. Merging any such pair keeps
    every other one minimal, so the first valid choice is as good as any.
    """
    if not is_monomial_tree(t):
        return False
    parent_of: Dict[str, str] = {}
    stack = [t]
    while stack:
        node = stack.pop()
        for child in node.children():
            parent_of[child.canonical] = node.canonical
            stack.append(child)
    forest = [leaf(c) for c, _ in leaves(t)]
    by_key = {n.canonical: n for n in _iter_nodes(t)}
    while len(forest) > 1:
        for i, j in _min_pairs(forest):
            pi = parent_of.get(forest[i].canonical)
            if pi is not None and pi == parent_of.get(forest[j].canonical):
                rest = [f for n, f in enumerate(forest) if n not in (i, j)]
                forest = rest + [by_key[pi]]
                break
        else:
            return False
    return True


def _iter_nodes(t: Tree):
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node.children())


@dataclass(frozen=True)
class CodeTable:
    """Symbol -> codeword (a string over ``0``/``1``)."""

    codes: Dict[Symbol, str]

    def __getitem__(self, sym: Symbol) -> str:
        return self.codes[sym]

    def __len__(self) -> int:
        return len(self.codes)

    def lengths(self) -> Dict[Symbol, int]:
        return {s: len(c) for s, c in self.codes.items()}

    def kraft_sum(self) -> Fraction:
        return sum(Fraction(1, 2 ** len(c)) for c in self.codes.values())

    def is_prefix_free(self) -> bool:
        words = sorted(self.codes.values())
        return all(not b.startswith(a) for a, b in zip(words, words[1:]))

    def rows(self, counts: Optional[Multiset] = None) -> List[dict]:
        out = []
        for sym in sorted(self.codes, key=render_symbol):
            code = self.codes[sym]
            out.append({
                "symbol": render_symbol(sym),
                "count": counts[sym] if counts is not None else None,
                "code": code,
                "depth": len(code),
            })
        return out

    def to_json(self, counts: Optional[Multiset] = None) -> str:
        return json.dumps(self.rows(counts), indent=2)


def code_table(t: Tree) -> CodeTable:
    """Root-to-leaf paths under canonical child order (first child is ``0``)."""
    if not is_monomial_tree(t):
        raise NotMonomial(f"{t} has a leaf with more than one symbol")
    codes: Dict[Symbol, str] = {}
    stack = [(t, "")]
    while stack:
        node, path = stack.pop()
        if node.left is None:
            (sym,) = node.content.keys()
            codes[sym] = path
        else:
            a, b = node.ordered_children()
            stack.append((b, path + "1"))
            stack.append((a, path + "0"))
    return CodeTable(codes)


def byte_symbol(b: int) -> str:
    return f"b{b:02x}"


def byte_multiset(data: bytes) -> Multiset:
    """Occurrence counts of each byte value, as atoms ``b00`` .. ``bff``."""
    counts = [0] * 256
    for b in data:
        counts[b] += 1
    return Multiset._trusted({byte_symbol(b): n for b, n in enumerate(counts) if n})


_BYTE_OF = {byte_symbol(b): b for b in range(256)}


def encode(data: bytes, table: CodeTable) -> str:
    """Concatenated codewords of ``data``; each byte is looked up as ``b<hex>``."""
    lut = [table.codes.get(byte_symbol(b)) for b in range(256)]
    try:
        return "".join([lut[b] for b in data])
    except TypeError:
        missing = next(b for b in data if lut[b] is None)
        raise UnknownSymbol(f"byte 0x{missing:02x} has no codeword") from None


_TABLE_BITS = 16


def decode(bits: str, t: Tree, length: Optional[int] = None) -> bytes:
    """Inverse of :func:`encode` for the code table of ``t``.

    ``length`` is the number of symbols to emit; it is required when ``t`` is
    a single leaf (whose codeword is empty) and is checked otherwise.
    """
    table = code_table(t)
    symbols = {code: _BYTE_OF[sym] if sym in _BYTE_OF else None for sym, code in table.codes.items()}
    if None in symbols.values():
        raise UnknownSymbol("decode only handles byte atoms b00..bff")
    if t.is_leaf:
        if bits:
            raise InvalidCodeword("a single-symbol code has no codewords to read")
        if length is None:
            raise ValueError("decoding a single-symbol code needs the symbol count")
        return bytes([next(iter(symbols.values()))]) * length
    if bits.strip("01"):
        raise InvalidCodeword("bitstring may only contain 0 and 1")
    max_len = max(len(c) for c in symbols)
    out = bytearray()
    if max_len <= _TABLE_BITS:
        _decode_table(bits, symbols, max_len, out)
    else:
        _decode_walk(bits, symbols, out)
    if length is not None and len(out) != length:
        raise TruncatedStream(f"decoded {len(out)} symbols, expected {length}")
    return bytes(out)


def _decode_table(bits: str, symbols: Dict[str, int], width: int, out: bytearray) -> None:
    lut: list = [None] * (1 << width)
    for code, sym in symbols.items():
        pad = width - len(code)
        start = int(code, 2) << pad
        entry = (sym, len(code))
        for i in range(start, start + (1 << pad)):
            lut[i] = entry
    n = len(bits)
    padded = bits + "0" * width
    pos = 0
    while pos < n:
        sym, size = lut[int(padded[pos:pos + width], 2)]
        if pos + size > n:
            raise TruncatedStream(f"stream ends inside a codeword at bit {pos}")
        out.append(sym)
        pos += size


def _decode_walk(bits: str, symbols: Dict[str, int], out: bytearray) -> None:
    prefixes = {code[:i] for code in symbols for i in range(len(code))}
    current = ""
    for bit in bits:
        if bit not in "01":
            raise InvalidCodeword(f"unexpected character {bit!r} in bitstring")
        current += bit
        sym = symbols.get(current)
        if sym is not None:
            out.append(sym)
            current = ""
        elif current not in prefixes:
            raise InvalidCodeword(f"{current!r} is not a codeword prefix")
    if current:
        raise TruncatedStream("stream ends inside a codeword")
