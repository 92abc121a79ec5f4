"""Brute-force ground truth and executable law checks.

The enumerator lists every monomial tree over a small multiset exactly once,
which gives an independent minimum-weight oracle for the greedy
construction. ``check_law`` runs one named identity over an exhaustive or
seeded random family of inputs and reports every failing instance.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .errors import TooLarge, UnknownLaw, ZeroMultisetError
from .huffman import (
    all_huffman_trees,
    huffman_tree,
    huffman_tree_pairwise,
    huffman_weight,
    is_huffman_tree,
)
from .multiset import (
    DyadicClass,
    DyadicKind,
    Multiset,
    NOT_DYADIC,
    classify_dyadic,
    divide,
    entropy_w,
    entropy_w_seq,
    is_power_of_two,
    product,
    scalar_mul,
)
from .tree import (
    Tree,
    internal_sum,
    is_monomial_tree,
    join,
    leaf,
    leaves,
    multiset_thicken,
    scalar_thicken,
    tree_power,
    tree_product,
    validate,
    weight,
)

DEFAULT_SEED = 1729
DEFAULT_MAX_SUPPORT = 7
DEFAULT_MAX_PRODUCT = 100_000


# ---------------------------------------------------------------------------
# enumeration and minimum weight


def double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def tree_count(support: int) -> int:
    """Number of unordered full binary trees on ``support`` labelled leaves."""
    return double_factorial(2 * support - 3)


def enumerate_monomial_trees(X: Multiset, max_support: int = DEFAULT_MAX_SUPPORT) -> List[Tree]:
    """Every monomial tree over ``X``, one per canonical form.

    Each root split is the unordered bipartition of the monomials, identified
    by the side holding the first monomial, so child swaps never repeat.
    """
    if not X:
        raise ZeroMultisetError("cannot enumerate trees over the zero multiset")
    if len(X) > max_support:
        raise TooLarge(f"support {len(X)} exceeds enumeration cap {max_support}")
    monos = [leaf(Multiset._trusted({s: X[s]})) for s in X.symbols()]
    memo: Dict[Tuple[int, ...], List[Tree]] = {}

    def trees(idx: Tuple[int, ...]) -> List[Tree]:
        if idx in memo:
            return memo[idx]
        if len(idx) == 1:
            out = [monos[idx[0]]]
        else:
            pivot, rest = idx[0], idx[1:]
            out = []
            for r in range(len(rest)):
                for chosen in itertools.combinations(rest, r):
                    right = tuple(i for i in rest if i not in chosen)
                    for lt in trees((pivot,) + chosen):
                        for rt in trees(right):
                            out.append(join(lt, rt))
        memo[idx] = out
        return out

    return trees(tuple(range(len(monos))))


def min_weight(X: Multiset, max_support: int = DEFAULT_MAX_SUPPORT) -> Tuple[int, Tree]:
    """Least weight over all monomial trees, with the first witness found."""
    best = None
    for t in enumerate_monomial_trees(X, max_support):
        w = weight(t)
        if best is None or w < best[0]:
            best = (w, t)
    return best


def minimal_trees(X: Multiset, max_support: int = DEFAULT_MAX_SUPPORT) -> List[Tree]:
    trees = enumerate_monomial_trees(X, max_support)
    weights = [weight(t) for t in trees]
    lo = min(weights)
    return [t for t, w in zip(trees, weights) if w == lo]


def is_dyadic_literal(X: Multiset) -> bool:
    """Counts are powers of two and so is their sum."""
    return all(is_power_of_two(n) for n in X.values()) and is_power_of_two(X.norm)


def classify_dyadic_brute(X: Multiset) -> DyadicClass:
    """Try every common divisor ``k`` of the counts, smallest first."""
    if not X:
        raise ZeroMultisetError("classify needs a non-zero multiset")
    g = math.gcd(*X.values())
    for k in range(1, g + 1):
        if g % k == 0 and is_dyadic_literal(divide(X, k)):
            if k == 1:
                return DyadicClass(DyadicKind.DYADIC, 1, X)
            return DyadicClass(DyadicKind.SCALAR_DYADIC, k, divide(X, k))
    return NOT_DYADIC


# ---------------------------------------------------------------------------
# instance families


def atoms(prefix: str, n: int) -> List[str]:
    if prefix:
        return [f"{prefix}{i}" for i in range(n)]
    letters = "abcdefghijklmnopqrstuvwxyz"
    if n <= len(letters):
        return list(letters[:n])
    return [f"s{i}" for i in range(n)]


def count_family(max_support: int, max_count: int, min_support: int = 1) -> Iterator[Multiset]:
    """All multisets up to relabelling: non-decreasing count vectors."""
    for size in range(min_support, max_support + 1):
        names = atoms("", size)
        for counts in itertools.combinations_with_replacement(range(1, max_count + 1), size):
            yield Multiset._trusted(dict(zip(names, counts)))


def binary_partitions(total: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of ``total`` into powers of two, in non-increasing order."""
    if total == 0:
        yield ()
        return
    part = largest if largest is not None else 1 << (total.bit_length() - 1)
    while part >= 1:
        if part <= total:
            for rest in binary_partitions(total - part, part):
                yield (part,) + rest
        part //= 2


def dyadic_family(max_norm: int, prefix: str = "") -> Iterator[Multiset]:
    """Every dyadic multiset with norm at most ``max_norm``, up to relabelling."""
    total = 1
    while total <= max_norm:
        for parts in binary_partitions(total):
            yield Multiset._trusted(dict(zip(atoms(prefix, len(parts)), parts)))
        total *= 2


def random_multiset(rng: random.Random, max_support: int, max_count: int, prefix: str = "a") -> Multiset:
    size = rng.randint(1, max_support)
    return Multiset._trusted({f"{prefix}{i}": rng.randint(1, max_count) for i in range(size)})


def random_tree_over(rng: random.Random, X: Multiset, monomial: bool = False) -> Tree:
    """Random tree over ``X``; leaves are random groups of symbols unless ``monomial``."""
    syms = X.symbols()
    rng.shuffle(syms)
    if monomial:
        groups = [[s] for s in syms]
    else:
        groups = []
        for s in syms:
            if groups and rng.random() < 0.3:
                rng.choice(groups).append(s)
            else:
                groups.append([s])
    forest = [leaf(Multiset._trusted({s: X[s] for s in g})) for g in groups]
    while len(forest) > 1:
        i, j = rng.sample(range(len(forest)), 2)
        a, b = forest[i], forest[j]
        forest = [t for n, t in enumerate(forest) if n not in (i, j)]
        forest.append(join(a, b))
    return forest[0]


def random_tree(rng: random.Random, max_support: int = 6, max_count: int = 8, prefix: str = "a",
                monomial: bool = False) -> Tree:
    return random_tree_over(rng, random_multiset(rng, max_support, max_count, prefix), monomial)


def random_dyadic(rng: random.Random, max_norm: int, prefix: str = "a") -> Multiset:
    """Random dyadic multiset: split a power of two into halves at random."""
    top = max_norm.bit_length() - 1
    parts = [1 << rng.randint(0, top)]
    for _ in range(rng.randint(0, 2 * top)):
        splittable = [i for i, p in enumerate(parts) if p > 1]
        if not splittable:
            break
        i = rng.choice(splittable)
        half = parts.pop(i) // 2
        parts += [half, half]
    return Multiset._trusted({f"{prefix}{i}": p for i, p in enumerate(parts)})


def random_scalar_dyadic(rng: random.Random, max_norm: int, prefix: str = "a") -> Multiset:
    D = random_dyadic(rng, max_norm, prefix)
    return scalar_mul(rng.randint(1, max_norm // D.norm), D)


# ---------------------------------------------------------------------------
# law checks


@dataclass(frozen=True)
class Family:
    """Bounds for a law's instance generator; ``None`` keeps the law default."""

    max_support: Optional[int] = None
    max_count: Optional[int] = None
    max_norm: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None

    def over(self, defaults: "Family") -> "Family":
        merged = {k: v if v is not None else getattr(defaults, k) for k, v in asdict(self).items()}
        if merged["seed"] is None:
            merged["seed"] = DEFAULT_SEED
        return Family(**merged)


@dataclass
class Failure:
    input: str
    expected: str
    actual: str


@dataclass
class LawReport:
    law: str
    instances: int = 0
    failures: List[Failure] = field(default_factory=list)
    seed: Optional[int] = None
    family: Dict[str, Optional[int]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "passed": self.passed,
            "instances": self.instances,
            "seed": self.seed,
            "family": self.family,
            "failures": [asdict(f) for f in self.failures],
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.law}: {self.instances} instances, {len(self.failures)} failures"


# one checked instance: (input rendering, expected, actual, ok)
Case = Tuple[str, object, object, bool]


@dataclass(frozen=True)
class Law:
    id: str
    title: str
    defaults: Family
    run: Callable[[Family, Callable[[Tree], int]], Iterable[Case]]


def _close(a: float, b: float, rel: float = 1e-9) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=1e-12)


def _fmt(x) -> str:
    return f"{x:.9f}" if isinstance(x, float) else str(x)


def _law_eq1(fam, _w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        xs = [rng.choice((0.0, rng.uniform(0, 10), float(rng.randint(1, 64)))) for _ in range(rng.randint(1, 12))]
        cuts = sorted(rng.sample(range(1, len(xs)), rng.randint(0, len(xs) - 1))) if len(xs) > 1 else []
        blocks = [xs[i:j] for i, j in zip([0] + cuts, cuts + [len(xs)])]
        lhs = entropy_w_seq(xs)
        rhs = entropy_w_seq([math.fsum(b) for b in blocks]) + math.fsum(entropy_w_seq(b) for b in blocks)
        yield f"{blocks}", lhs, rhs, _close(lhs, rhs)


def _law_eq2(fam, _w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        X = random_multiset(rng, fam.max_support, fam.max_count)
        k = rng.randint(1, 16)
        lhs, rhs = entropy_w(scalar_mul(k, X)), k * entropy_w(X)
        yield f"{k}*({X})", rhs, lhs, _close(lhs, rhs)
        c = rng.uniform(0, 16)
        xs = [float(n) for n in X.values()]
        lhs, rhs = entropy_w_seq([c * x for x in xs]), c * entropy_w_seq(xs)
        yield f"{c!r}*{xs}", rhs, lhs, _close(lhs, rhs)


def _law_eq3(fam, _w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        X = random_multiset(rng, fam.max_support, fam.max_count, "x")
        Y = random_multiset(rng, fam.max_support, fam.max_count, "y")
        lhs = entropy_w(product(X, Y))
        rhs = X.norm * entropy_w(Y) + entropy_w(X) * Y.norm
        yield f"({X}) x ({Y})", rhs, lhs, _close(lhs, rhs)


def _law_thm7(fam, w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        t = random_tree(rng, fam.max_support, fam.max_count)
        k = rng.randint(1, 8)
        Y = random_multiset(rng, 3, 3, "y")
        while Y.norm > 8:
            Y = random_multiset(rng, 3, 3, "y")
        lhs = w(scalar_thicken(k, t))
        yield f"{k} . {t}", k * w(t), lhs, lhs == k * w(t)
        lhs = w(multiset_thicken(Y, t))
        yield f"({Y}) . {t}", Y.norm * w(t), lhs, lhs == Y.norm * w(t)


def _law_thm8(fam, w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        tX = random_tree(rng, fam.max_support, fam.max_count, "x")
        tY = random_tree(rng, fam.max_support, fam.max_count, "y")
        lhs = w(tree_product(tX, tY))
        rhs = tX.content.norm * w(tY) + w(tX) * tY.content.norm
        yield f"{tX} x {tY}", rhs, lhs, lhs == rhs


def _law_cute(fam, w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        t = random_tree(rng, fam.max_support, fam.max_count)
        n = rng.randint(1, 4)
        lhs = w(tree_power(t, n))
        rhs = n * t.content.norm ** (n - 1) * w(t)
        yield f"{t}^{n}", rhs, lhs, lhs == rhs


def _law_lemma10(fam, _w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        tX = random_tree(rng, fam.max_support, fam.max_count, "x", monomial=True)
        tY = random_tree(rng, fam.max_support, fam.max_count, "y", monomial=True)
        p = tree_product(tX, tY)
        validate(p)
        yield f"{tX} x {tY}", True, is_monomial_tree(p), is_monomial_tree(p)


def _law_path_length(fam, w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        t = random_tree(rng, fam.max_support, fam.max_count)
        yield str(t), internal_sum(t), w(t), w(t) == internal_sum(t)


def _law_thm11(fam, w):
    for X in count_family(fam.max_support, fam.max_count):
        h = entropy_w(X)
        for t in enumerate_monomial_trees(X, fam.max_support):
            yield str(t), f">= {h:.9f}", w(t), h <= w(t) + 1e-9
        if not classify_dyadic(X).is_scalar_dyadic:
            W = huffman_weight(X)
            yield f"gap({X})", "> 1e-6", W - h, W - h > 1e-6


def _law_thm13(fam, w):
    for X in count_family(fam.max_support, fam.max_count):
        lo, _ = min_weight(X, fam.max_support)
        yield f"W({X})", lo, huffman_weight(X), huffman_weight(X) == lo
        got = w(huffman_tree(X))
        yield f"weight(huffman_tree({X}))", lo, got, got == lo


def _law_thm13_converse(fam, w):
    for X in count_family(fam.max_support, fam.max_count):
        reachable = all_huffman_trees(X)
        for t in minimal_trees(X, fam.max_support):
            yield f"{t} over {X}", "reachable", "reachable" if t.canonical in reachable else "unreachable", \
                t.canonical in reachable


def _law_cor14(fam, w):
    for X in count_family(fam.max_support, fam.max_count):
        weights = sorted({w(t) for t in all_huffman_trees(X).values()})
        yield f"{X}", [huffman_weight(X)], weights, weights == [huffman_weight(X)]


def _law_thm16(fam, _w):
    for X in count_family(fam.max_support, fam.max_count):
        cls = classify_dyadic(X)
        gap = huffman_weight(X) - entropy_w(X)
        if cls.is_scalar_dyadic:
            yield f"{X} [{cls}]", "gap <= 1e-9", gap, abs(gap) <= 1e-9
        else:
            yield f"{X} [{cls}]", "gap > 1e-6", gap, gap > 1e-6


def _law_dyadic_classifier(fam, _w):
    for X in count_family(fam.max_support, fam.max_count):
        fast, slow = classify_dyadic(X), classify_dyadic_brute(X)
        ok = fast == slow
        if fast.kind is DyadicKind.SCALAR_DYADIC:
            ok = ok and scalar_mul(fast.k, fast.base) == X and classify_dyadic(fast.base).kind is DyadicKind.DYADIC
        yield str(X), str(slow), str(fast), ok


def _law_greedy_pairwise(fam, _w):
    for X in count_family(fam.max_support, fam.max_count):
        a, b = huffman_tree(X), huffman_tree_pairwise(X)
        yield str(X), b.canonical, a.canonical, a == b


def _law_cor17(fam, w):
    for X in dyadic_family(fam.max_norm):
        G = huffman_tree(X)
        for k in range(1, 6):
            kX, kG = scalar_mul(k, X), scalar_thicken(k, G)
            W = huffman_weight(kX)
            yield f"{k} . Gamma({X})", W, w(kG), w(kG) == W == w(huffman_tree(kX)) == k * w(G)
            yield f"{k} . Gamma({X}) is Huffman", True, is_huffman_tree(kG), is_huffman_tree(kG)


def _law_thm18(fam, w):
    pairs = []
    norm = 1
    while 2 * norm <= fam.max_norm:
        xs = [X for X in dyadic_family(norm, "x") if X.norm == norm]
        ys = [Y for Y in dyadic_family(norm, "y") if Y.norm == norm]
        pairs += itertools.product(xs, ys)
        norm *= 2
    for X, Y in pairs:
        GX, GY = huffman_tree(X), huffman_tree(Y)
        lhs = huffman_weight(X + Y)
        rhs = w(join(GX, leaf(Y))) + huffman_weight(Y)
        yield f"X={X}, Y={Y}", rhs, lhs, lhs == rhs
        joined = join(GX, GY)
        yield f"Tree(X+Y, Gamma_X, Gamma_Y) for X={X}, Y={Y}", True, is_huffman_tree(joined), is_huffman_tree(joined)


def _law_thm19(fam, w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        X = random_scalar_dyadic(rng, fam.max_norm, "x")
        Y = random_scalar_dyadic(rng, fam.max_norm, "y")
        P = tree_product(huffman_tree(X), huffman_tree(Y))
        XY = product(X, Y)
        derived = X.norm * huffman_weight(Y) + huffman_weight(X) * Y.norm
        got = w(P)
        ok = got == huffman_weight(XY) == derived
        if ok and len(XY) <= fam.max_support:
            lo, _ = min_weight(XY, fam.max_support)
            ok = got == lo
        yield f"Gamma({X}) x Gamma({Y})", derived, got, ok


def _law_thm19_reachable(fam, _w):
    rng = random.Random(fam.seed)
    for _ in range(fam.samples):
        X = random_scalar_dyadic(rng, fam.max_norm, "x")
        Y = random_scalar_dyadic(rng, fam.max_norm, "y")
        P = tree_product(huffman_tree(X), huffman_tree(Y))
        yield f"Gamma({X}) x Gamma({Y})", True, is_huffman_tree(P), is_huffman_tree(P)


def _law_depth(fam, _w):
    for X in dyadic_family(fam.max_norm):
        top = X.norm.bit_length() - 1
        for content, d in leaves(huffman_tree(X)):
            (n,) = content.values()
            want = top - (n.bit_length() - 1)
            yield f"depth of {content} in Gamma({X})", want, d, d == want


LAWS: Dict[str, Law] = {law.id: law for law in [
    Law("eq1", "grouping law of w on real sequences", Family(samples=500), _law_eq1),
    Law("eq2", "homogeneity of w", Family(samples=500, max_support=6, max_count=64), _law_eq2),
    Law("eq3", "w is a derivation over multiset products", Family(samples=500, max_support=5, max_count=64),
        _law_eq3),
    Law("thm7", "weight respects scalar and multiset thickening", Family(samples=500, max_support=6, max_count=8),
        _law_thm7),
    Law("thm8", "weight is a derivation on tree products", Family(samples=500, max_support=4, max_count=8),
        _law_thm8),
    Law("cute", "W(t^n) = n |X|^(n-1) W(t)", Family(samples=500, max_support=3, max_count=6), _law_cute),
    Law("lemma10", "products of monomial trees are monomial", Family(samples=200, max_support=4, max_count=8),
        _law_lemma10),
    Law("path_length", "weight equals the sum of internal norms", Family(samples=1000, max_support=7, max_count=9),
        _law_path_length),
    Law("thm11", "w(X) <= W(t) for every monomial tree", Family(max_support=5, max_count=6), _law_thm11),
    Law("thm13", "Huffman weight equals the brute-force minimum", Family(max_support=5, max_count=6), _law_thm13),
    Law("thm13_converse", "every minimum-weight monomial tree is a Huffman tree", Family(max_support=4, max_count=4),
        _law_thm13_converse),
    Law("cor14", "all Huffman trees over X share one weight", Family(max_support=4, max_count=4), _law_cor14),
    Law("thm16", "w(X) = W(X) iff X is a scalar multiple of a dyadic multiset", Family(max_support=5, max_count=6),
        _law_thm16),
    Law("dyadic_classifier", "odd-part classifier agrees with divisor search", Family(max_support=4, max_count=12),
        _law_dyadic_classifier),
    Law("greedy_pairwise", "heap construction matches the literal pairwise scan", Family(max_support=6, max_count=5),
        _law_greedy_pairwise),
    Law("cor17", "k . Gamma_X is a Huffman tree for kX (X dyadic)", Family(max_norm=32), _law_cor17),
    Law("thm18", "Huffman weight splits over disjoint dyadic sums", Family(max_norm=32), _law_thm18),
    Law("thm19", "product of scalar-dyadic Huffman trees is optimal",
        Family(samples=200, max_norm=16, max_support=6), _law_thm19),
    Law("thm19_reachable", "product of scalar-dyadic Huffman trees is itself a greedy output",
        Family(samples=200, max_norm=16), _law_thm19_reachable),
    Law("depth_law", "leaf 2^j a of a dyadic X sits at depth log2|X| - j", Family(max_norm=32), _law_depth),
]}


def check_law(law: str, family: Optional[Family] = None,
              weight_fn: Callable[[Tree], int] = weight) -> LawReport:
    """Run one law over its instance family and collect failures.

    ``weight_fn`` replaces the tree weight wherever the law evaluates it,
    which lets the harness be tested against a broken implementation.
    """
    try:
        spec = LAWS[law]
    except KeyError:
        raise UnknownLaw(law) from None
    fam = (family or Family()).over(spec.defaults)
    report = LawReport(law, seed=fam.seed, family={k: v for k, v in asdict(fam).items() if k != "seed"})
    for rendered, expected, actual, ok in spec.run(fam, weight_fn):
        report.instances += 1
        if not ok:
            report.failures.append(Failure(rendered, _fmt(expected), _fmt(actual)))
    return report


def check_all(family: Optional[Family] = None) -> List[LawReport]:
    return [check_law(law, family) for law in LAWS]


# ---------------------------------------------------------------------------
# convergence of W(X^n) / (n |X|^(n-1))


@dataclass(frozen=True)
class ConvergencePoint:
    n: int
    weight: int
    denominator: int
    ratio: float

    @property
    def exact_ratio(self) -> Fraction:
        return Fraction(self.weight, self.denominator)


def convergence(X: Multiset, n_max: int, max_product: int = DEFAULT_MAX_PRODUCT) -> List[ConvergencePoint]:
    """Ratios ``W(X^n) / (n |X|^(n-1))`` for ``n = 1 .. n_max``."""
    if not X:
        raise ZeroMultisetError("convergence needs a non-zero multiset")
    if len(X) ** n_max > max_product:
        raise TooLarge(f"X^{n_max} would have {len(X) ** n_max} symbols (cap {max_product})")
    points = []
    Xn = X
    for n in range(1, n_max + 1):
        if n > 1:
            Xn = product(Xn, X)
        W = huffman_weight(Xn)
        den = n * X.norm ** (n - 1)
        points.append(ConvergencePoint(n, W, den, W / den))
    return points


def convergence_csv(points: List[ConvergencePoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "weight", "denominator", "ratio"])
    for p in points:
        writer.writerow([p.n, p.weight, p.denominator, f"{p.ratio:.9f}"])
    return buf.getvalue()


def convergence_json(points: List[ConvergencePoint]) -> str:
    return json.dumps([asdict(p) for p in points], indent=2)


def reports_json(reports: List[LawReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)
