"""Exit criteria for the package, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion
is printed in the terminal summary.
"""
import math
import random
import time
from fractions import Fraction

from huffcat.codec import compress, decompress, read_header
from huffcat.huffman import all_huffman_trees, byte_multiset, code_table, huffman_tree, huffman_weight
from huffcat.multiset import Multiset, classify_dyadic, entropy_w, product
from huffcat.oracle import (
    Family,
    check_law,
    convergence,
    count_family,
    min_weight,
    minimal_trees,
    random_scalar_dyadic,
)
from huffcat.tree import tree_product, weight

from conftest import ACCEPTANCE

SEED = 20211


def record(number, passed, detail):
    ACCEPTANCE.append((number, passed, detail))
    assert passed, f"criterion {number}: {detail}"


def test_01_paper_example():
    X = Multiset.parse("a+b+2c+4d")
    W, w = huffman_weight(X), entropy_w(X)
    record(1, W == 14 and abs(w - 14.0) <= 1e-9, f"W = {W}, w = {w!r}")


def test_02_oracle_equivalence():
    start = time.perf_counter()
    bad, n = [], 0
    for X in count_family(5, 6):
        n += 1
        lo, _ = min_weight(X)
        if huffman_weight(X) != lo:
            bad.append(str(X))
    elapsed = time.perf_counter() - start
    record(2, not bad and elapsed < 60, f"{n} multisets, {len(bad)} mismatches, {elapsed:.1f}s {bad[:3]}")


def test_03_converse_micro():
    start = time.perf_counter()
    missing, n = [], 0
    for X in count_family(4, 4):
        reachable = all_huffman_trees(X)
        for t in minimal_trees(X):
            n += 1
            if t.canonical not in reachable:
                missing.append(f"{t.canonical} over {X}")
    elapsed = time.perf_counter() - start
    record(3, not missing and elapsed < 60,
           f"{n} minimal trees, {len(missing)} not reachable by the greedy merge, {elapsed:.1f}s; "
           f"e.g. {missing[:2]}")


def test_04_huffman_trees_share_weight():
    bad = []
    for X in count_family(4, 4):
        weights = {weight(t) for t in all_huffman_trees(X).values()}
        if len(weights) != 1:
            bad.append((str(X), sorted(weights)))
    record(4, not bad, f"{len(bad)} multisets with more than one Huffman weight")


def test_05_entropy_laws():
    reports = [check_law(law, Family(samples=500, seed=SEED)) for law in ("eq1", "eq2", "eq3")]
    record(5, all(r.passed for r in reports), "; ".join(r.summary() for r in reports))


def test_06_tree_derivation_thickening_cute():
    reports = [check_law(law, Family(samples=500, seed=SEED)) for law in ("thm7", "thm8", "cute")]
    record(6, all(r.passed for r in reports), "; ".join(r.summary() for r in reports))


def test_07_dyadic_iff_equality():
    bad, n = [], 0
    for X in count_family(5, 6):
        n += 1
        gap = huffman_weight(X) - entropy_w(X)
        if classify_dyadic(X).is_scalar_dyadic:
            ok = abs(gap) <= 1e-9
        else:
            ok = gap > 1e-6
        if not ok:
            bad.append((str(X), gap))
    record(7, not bad, f"{n} multisets, {len(bad)} violations")


def test_08_dyadic_sum_and_scalar():
    reports = [check_law(law, Family(max_norm=32)) for law in ("thm18", "cor17")]
    record(8, all(r.passed for r in reports), "; ".join(r.summary() for r in reports))


def test_09_product_of_huffman_trees():
    rng = random.Random(SEED)
    bad, oracle_checked = [], 0
    for _ in range(200):
        X = random_scalar_dyadic(rng, 16, "x")
        Y = random_scalar_dyadic(rng, 16, "y")
        P = tree_product(huffman_tree(X), huffman_tree(Y))
        XY = product(X, Y)
        derived = X.norm * huffman_weight(Y) + huffman_weight(X) * Y.norm
        ok = weight(P) == huffman_weight(XY) == derived
        if len(XY) <= 6:
            oracle_checked += 1
            ok = ok and weight(P) == min_weight(XY)[0]
        if not ok:
            bad.append((str(X), str(Y)))
    record(9, not bad, f"200 pairs, {oracle_checked} oracle-checked, {len(bad)} failures")


def uniform_code_weight(n):
    # n equiprobable symbols: 2^(k+1) - n codewords of length k, the rest k + 1
    k = n.bit_length() - 1
    short = 2 ** (k + 1) - n
    return short * k + (n - short) * (k + 1)


def test_10_convergence():
    points = convergence(Multiset.parse("a+b+c"), 3)
    ratios = [p.exact_ratio for p in points]
    independent = [Fraction(uniform_code_weight(3 ** n), n * 3 ** (n - 1)) for n in (1, 2, 3)]
    bound = 3 * math.log2(3)
    ok = ratios == [Fraction(5), Fraction(29, 6), Fraction(130, 27)] == independent
    ok = ok and ratios[0] > ratios[1] > ratios[2]
    ok = ok and all(p.ratio >= bound - 1e-9 for p in points)
    dyadic = convergence(Multiset.parse("a+b+2c+4d"), 4)
    ok = ok and all(p.exact_ratio == 14 and p.ratio == 14.0 for p in dyadic)
    record(10, ok, f"a+b+c ratios {[str(r) for r in ratios]}; a+b+2c+4d ratios {[p.ratio for p in dyadic]}")


def random_file(rng):
    size = rng.randint(0, 64 * 1024)
    alphabet = rng.sample(range(256), rng.choice([1, 2, 3, 16, 64, 256]))
    weights = [rng.random() ** rng.choice([1, 4]) for _ in alphabet]
    return bytes(rng.choices(alphabet, weights, k=size))


def test_11_codec_roundtrip():
    rng = random.Random(SEED)
    bad = []
    for i in range(100):
        data = random_file(rng)
        blob = compress(data)
        if decompress(blob) != data:
            bad.append((i, "roundtrip"))
            continue
        if data:
            counts, bit_length, _ = read_header(blob)
            table = code_table(huffman_tree(byte_multiset(data)))
            if bit_length != sum(n * len(table[s]) for s, n in counts.items()):
                bad.append((i, "bit length"))
    record(11, not bad, f"100 files, {len(bad)} failures {bad[:3]}")


def test_12_path_length_identity():
    report = check_law("path_length", Family(samples=1000, seed=SEED))
    record(12, report.passed, report.summary())


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
