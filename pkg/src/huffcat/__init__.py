"""Multisets, trees over multisets, Huffman trees and the entropy laws they satisfy."""
from .errors import (
    CodecError,
    DisjointnessViolation,
    InvalidCodeword,
    NotALeaf,
    NotMonomial,
    TooLarge,
    TruncatedStream,
    UnknownLaw,
    UnknownSymbol,
    ZeroMultisetError,
)
from .huffman import (
    CodeTable,
    all_huffman_trees,
    code_table,
    decode,
    encode,
    huffman_tree,
    huffman_weight,
    is_huffman_tree,
)
from .multiset import (
    DyadicClass,
    DyadicKind,
    Multiset,
    add,
    classify_dyadic,
    disjoint,
    entropy_w,
    entropy_w_seq,
    intersect,
    norm,
    product,
    scalar_mul,
)
from .oracle import check_law, convergence, enumerate_monomial_trees, min_weight
from .tree import (
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
    tree_product,
    weight,
)

__version__ = "0.1.0"
