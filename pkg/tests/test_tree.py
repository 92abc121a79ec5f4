import pytest
from hypothesis import assume, given, strategies as st

from huffcat.errors import DisjointnessViolation, NotALeaf, ZeroMultisetError
from huffcat.huffman import huffman_tree
from huffcat.multiset import Multiset, product, scalar_mul
from huffcat.tree import (
    Tree,
    attach,
    depth_of,
    internal_sum,
    is_monomial_tree,
    join,
    leaf,
    leaves,
    multiset_thicken,
    scalar_thicken,
    to_dot,
    tree_power,
    tree_product,
    validate,
    weight,
)

from conftest import multisets, trees

M = Multiset.parse
L = lambda text: leaf(M(text))  # noqa: E731


@pytest.fixture
def abc():
    """The (((a)+(b))+(2c)) example."""
    return join(join(L("a"), L("b")), L("2c"))


@pytest.fixture
def dyadic():
    return huffman_tree(M("a+b+2c+4d"))


def test_leaf():
    assert leaves(L("2c")) == [(M("2c"), 0)]
    with pytest.raises(ZeroMultisetError):
        leaf(Multiset())


def test_join(abc):
    assert str(join(L("a+b"), L("2c"))) == "((a+b)+(2c))"
    assert str(abc) == "(((a)+(b))+(2c))"
    assert abc.content == M("a+b+2c")
    with pytest.raises(DisjointnessViolation):
        join(L("a"), L("a"))
    with pytest.raises(DisjointnessViolation):
        join(L("a+b"), L("2b+c"))


def test_join_commutes_canonically():
    x, y = L("a+b"), L("2c")
    assert join(x, y) == join(y, x)
    assert hash(join(x, y)) == hash(join(y, x))
    assert join(x, y) != join(L("a"), L("b+2c"))


def test_direct_construction_checks_content():
    with pytest.raises(ValueError):
        Tree(M("a+b+c"), L("a"), L("b"))
    with pytest.raises(ValueError):
        Tree(M("a"), L("a"), None)


def test_leaves_and_depths(abc, dyadic):
    assert leaves(abc) == [(M("a"), 2), (M("b"), 2), (M("2c"), 1)]
    assert sorted((str(c), d) for c, d in leaves(dyadic)) == [("2c", 2), ("4d", 1), ("a", 3), ("b", 3)]
    assert depth_of(M("2c"), abc) == 1
    assert depth_of(M("a+b"), L("a+b")) == 0
    with pytest.raises(NotALeaf):
        depth_of(M("a+b"), abc)


def test_weight_examples(abc, dyadic):
    assert weight(dyadic) == 14
    assert weight(L("a+b+c")) == 0
    assert weight(abc) == 6
    assert internal_sum(dyadic) == 14
    assert internal_sum(L("7x")) == 0


def test_scalar_thicken(abc, dyadic):
    assert scalar_thicken(2, L("a")) == L("2a")
    assert scalar_thicken(1, abc) is abc
    assert weight(scalar_thicken(3, dyadic)) == 42
    with pytest.raises(ValueError):
        scalar_thicken(0, abc)


def test_multiset_thicken(abc):
    assert multiset_thicken(M("a+b"), L("2c")) == leaf(Multiset({("a", "c"): 2, ("b", "c"): 2}))
    e = multiset_thicken(M("e"), abc)
    assert weight(e) == weight(abc)
    assert e.content == Multiset({("e", "a"): 1, ("e", "b"): 1, ("e", "c"): 2})
    assert weight(multiset_thicken(M("a+b"), abc)) == 12
    with pytest.raises(ZeroMultisetError):
        multiset_thicken(Multiset(), abc)


def test_attach(abc):
    host = join(L("a+b"), L("2c"))
    assert attach(host, join(L("a"), L("b"))) == abc
    assert str(attach(host, join(L("a"), L("b")))) == "(((a)+(b))+(2c))"
    assert attach(abc, L("2c")) == abc
    assert attach(L("x"), L("x")) == L("x")
    with pytest.raises(NotALeaf):
        attach(abc, join(L("a"), L("2c")))


def test_attach_deep_leaf():
    host = join(join(L("a+b"), L("c")), L("d"))
    sub = join(L("a"), L("b"))
    out = attach(host, sub)
    assert sorted((str(c), d) for c, d in leaves(out)) == [("a", 3), ("b", 3), ("c", 2), ("d", 1)]
    assert out.content == host.content


def test_tree_product_examples():
    ab = join(L("a"), L("b"))
    cd = join(L("c"), L("d"))
    p = tree_product(ab, cd)
    assert weight(p) == 8
    assert p.content == product(M("a+b"), M("c+d"))
    assert tree_product(L("a+b"), cd) == multiset_thicken(M("a+b"), cd)
    right = tree_product(ab, L("c+d"))
    assert sorted(str(c) for c, _ in leaves(right)) == ["(a,c)+(a,d)", "(b,c)+(b,d)"]


def test_is_monomial(abc):
    assert is_monomial_tree(abc)
    assert not is_monomial_tree(join(L("a+b"), L("2c")))
    assert is_monomial_tree(L("2c"))


def test_dot_is_deterministic(abc):
    other = join(L("2c"), join(L("b"), L("a")))
    assert to_dot(abc) == to_dot(other)
    dot = to_dot(abc)
    assert dot.count("shape=box") == 3 and dot.count("shape=ellipse") == 2
    assert '[label="0"]' in dot and '[label="1"]' in dot


@given(trees(max_support=7, max_count=9))
def test_weight_equals_internal_sum(t):
    validate(t)
    assert weight(t) == internal_sum(t)


@given(trees(), st.integers(1, 8), multisets("y", 3, 3))
def test_thickening_scales_weight(t, k, Y):
    assert weight(scalar_thicken(k, t)) == k * weight(t)
    assert weight(multiset_thicken(Y, t)) == Y.norm * weight(t)
    validate(multiset_thicken(Y, t))


@given(trees("x", 4), trees("y", 4))
def test_product_is_derivation(tX, tY):
    p = tree_product(tX, tY)
    validate(p)
    assert weight(p) == tX.content.norm * weight(tY) + weight(tX) * tY.content.norm


@given(trees(max_support=3, max_count=5), st.integers(1, 4))
def test_cute_formula(t, n):
    assert weight(tree_power(t, n)) == n * t.content.norm ** (n - 1) * weight(t)


@given(trees("x", 4, monomial=True), trees("y", 4, monomial=True))
def test_monomial_products_stay_monomial(tX, tY):
    assert is_monomial_tree(tree_product(tX, tY))


@given(trees(max_support=6), st.data())
def test_attach_shifts_subtree_depths(t, data):
    # detach a random internal subtree, then graft it back
    internal = []
    stack = [(t, 0)]
    while stack:
        node, d = stack.pop()
        if node.left is not None:
            internal.append((node, d))
            stack += [(node.left, d + 1), (node.right, d + 1)]
    assume(internal)
    sub, depth = data.draw(st.sampled_from(internal))

    def prune(node):
        if node is sub:
            return leaf(sub.content)
        if node.left is None:
            return node
        return Tree(node.content, prune(node.left), prune(node.right))

    host = prune(t)
    out = attach(host, sub)
    assert out == t
    expected = [(c, d) for c, d in leaves(host) if c != sub.content]
    expected += [(c, d + depth) for c, d in leaves(sub)]
    key = lambda cd: (str(cd[0]), cd[1])  # noqa: E731
    assert sorted(leaves(out), key=key) == sorted(expected, key=key)


def test_scalar_thicken_of_huffman_tree_matches_content():
    t = huffman_tree(M("a+b+2c+4d"))
    assert scalar_thicken(3, t).content == scalar_mul(3, t.content)
