"""Binary trees whose nodes carry multisets.

Every node's content is the sum of its two children's contents, and the two
children have disjoint supports. Children are unordered: trees compare equal
when their canonical forms agree, where each node lists its children ordered
by the rendered text of their contents. The construction order is kept for
display (``str(tree)``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Tuple

from .errors import DisjointnessViolation, NotALeaf, ZeroMultisetError
from .multiset import Multiset, add, disjoint, product, scalar_mul


@dataclass(frozen=True, eq=False)
class Tree:
    content: Multiset
    left: Optional["Tree"] = None
    right: Optional["Tree"] = None

    def __post_init__(self):
        if not self.content:
            raise ZeroMultisetError("tree nodes cannot carry the zero multiset")
        if (self.left is None) != (self.right is None):
            raise ValueError("a node needs both children or neither")
        if self.left is not None:
            lc, rc = self.left.content, self.right.content
            if not disjoint(lc, rc):
                raise DisjointnessViolation(f"cannot join {lc} and {rc}: supports overlap")
            if lc.norm + rc.norm != self.content.norm or add(lc, rc) != self.content:
                raise ValueError(f"node content {self.content} is not {lc} + {rc}")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def children(self) -> Tuple["Tree", ...]:
        return () if self.left is None else (self.left, self.right)

    def ordered_children(self) -> Tuple["Tree", ...]:
        """Children in canonical order (by rendered content)."""
        if self.left is None:
            return ()
        if str(self.right.content) < str(self.left.content):
            return (self.right, self.left)
        return (self.left, self.right)

    @cached_property
    def canonical(self) -> str:
        if self.left is None:
            return f"({self.content})"
        a, b = self.ordered_children()
        return f"({a.canonical}+{b.canonical})"

    def __eq__(self, other) -> bool:
        if isinstance(other, Tree):
            return self.canonical == other.canonical
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __str__(self) -> str:
        if self.left is None:
            return f"({self.content})"
        return f"({self.left}+{self.right})"

    def __repr__(self) -> str:
        return f"Tree({self})"


def leaf(X: Multiset) -> Tree:
    return Tree(X)


def join(L: Tree, R: Tree) -> Tree:
    """Tree over ``L.content + R.content``; raises if the supports overlap."""
    return Tree(add(L.content, R.content), L, R)


def _walk(t: Tree, depth: int = 0) -> Iterator[Tuple[Tree, int]]:
    stack = [(t, depth)]
    while stack:
        node, d = stack.pop()
        yield node, d
        if node.left is not None:
            stack.append((node.right, d + 1))
            stack.append((node.left, d + 1))


def leaves(t: Tree) -> List[Tuple[Multiset, int]]:
    """Leaf contents with their depths, left to right in construction order."""
    return [(node.content, d) for node, d in _walk(t) if node.left is None]


def depth_of(X: Multiset, t: Tree) -> int:
    for content, d in leaves(t):
        if content == X:
            return d
    raise NotALeaf(f"{X} is not a leaf of {t}")


def weight(t: Tree) -> int:
    """Depth-weighted sum of leaf norms."""
    return sum(node.content.norm * d for node, d in _walk(t) if node.left is None)


def internal_sum(t: Tree) -> int:
    """Sum of the norms of all internal nodes; always equal to ``weight(t)``."""
    return sum(node.content.norm for node, _ in _walk(t) if node.left is not None)


def _map_contents(t: Tree, f) -> Tree:
    if t.left is None:
        return Tree(f(t.content))
    return Tree(f(t.content), _map_contents(t.left, f), _map_contents(t.right, f))


def scalar_thicken(k: int, t: Tree) -> Tree:
    if k < 1:
        raise ValueError(f"scalar thickening needs k >= 1, got {k}")
    if k == 1:
        return t
    return _map_contents(t, lambda X: scalar_mul(k, X))


def multiset_thicken(X: Multiset, t: Tree) -> Tree:
    """Replace every node content ``Y`` with ``X x Y``."""
    if not X:
        raise ZeroMultisetError("cannot thicken a tree by the zero multiset")
    return _map_contents(t, lambda Y: product(X, Y))


def attach(host: Tree, sub: Tree) -> Tree:
    """Graft ``sub`` onto the leaf of ``host`` that equals ``sub.content``."""
    target = sub.content
    if not any(c == target for c, _ in leaves(host)):
        raise NotALeaf(f"{target} is not a leaf of {host}")

    def graft(node: Tree) -> Tree:
        if node.left is None:
            return sub if node.content == target else node
        # the leaf lives under the child whose support covers it
        if target.keys() <= node.left.content.keys():
            return Tree(node.content, graft(node.left), node.right)
        if target.keys() <= node.right.content.keys():
            return Tree(node.content, node.left, graft(node.right))
        return node

    return graft(host)


def tree_product(tX: Tree, tY: Tree) -> Tree:
    """Product tree over ``X x Y``.

    The upper part is ``tX`` thickened on the right by ``Y``; each of its
    leaves ``L x Y`` is then expanded into ``L``-thickened ``tY``.
    """
    Y = tY.content

    def expand(node: Tree) -> Tree:
        if node.left is None:
            return multiset_thicken(node.content, tY)
        return Tree(product(node.content, Y), expand(node.left), expand(node.right))

    return expand(tX)


def tree_power(t: Tree, n: int) -> Tree:
    if n < 1:
        raise ValueError("tree_power needs n >= 1")
    out = t
    for _ in range(n - 1):
        out = tree_product(out, t)
    return out


def is_monomial_tree(t: Tree) -> bool:
    return all(node.content.is_monomial() for node, _ in _walk(t) if node.left is None)


def validate(t: Tree) -> None:
    """Re-check the node invariants on every vertex; raises on the first violation."""
    for node, _ in _walk(t):
        if not node.content:
            raise ZeroMultisetError(f"zero content in {t}")
        if node.left is not None:
            lc, rc = node.left.content, node.right.content
            if not disjoint(lc, rc):
                raise DisjointnessViolation(f"{lc} and {rc} overlap")
            if add(lc, rc) != node.content:
                raise ValueError(f"{node.content} != {lc} + {rc}")


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(t: Tree, name: str = "tree") -> str:
    """Graphviz source; children follow canonical order, edges labelled 0/1."""
    lines = [f"digraph {name} {{", '  node [fontname="monospace"];']
    counter = 0

    def emit(node: Tree) -> int:
        nonlocal counter
        ident = counter
        counter += 1
        shape = "box" if node.left is None else "ellipse"
        lines.append(f'  n{ident} [label="{_dot_escape(str(node.content))}", shape={shape}];')
        for bit, child in enumerate(node.ordered_children()):
            child_id = emit(child)
            lines.append(f'  n{ident} -> n{child_id} [label="{bit}"];')
        return ident

    emit(t)
    lines.append("}")
    return "\n".join(lines) + "\n"
