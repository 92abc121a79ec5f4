import random

from hypothesis import strategies as st

from huffcat.multiset import Multiset
from huffcat.oracle import random_tree_over


def multisets(prefix="a", max_support=5, max_count=64, min_support=1):
    names = [f"{prefix}{i}" for i in range(max_support)]
    return st.dictionaries(
        st.sampled_from(names), st.integers(1, max_count), min_size=min_support, max_size=max_support
    ).map(Multiset)


@st.composite
def trees(draw, prefix="a", max_support=5, max_count=8, monomial=False):
    X = draw(multisets(prefix, max_support, max_count))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tree_over(random.Random(seed), X, monomial=monomial)


# acceptance criteria append (number, passed, detail) here; printed after the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {detail}")
