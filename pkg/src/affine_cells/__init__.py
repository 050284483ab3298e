"""Lowest two-sided cells and Kazhdan-Lusztig cells of affine Weyl groups with
unequal (possibly zero) parameters."""

from .group import AffineWeylGroup, Element
from .ordered import Laurent, OrderedGroupSpec, WeightFunction
from .geometry import WeightedGeometry
from .lowest import LowestCell, in_cmin_algebraic, in_cmin_geometric, wmax_set
from .kl import HeckeAlgebra, KLTable, cell_preorder, kl_table

__all__ = [
    "AffineWeylGroup",
    "Element",
    "HeckeAlgebra",
    "KLTable",
    "Laurent",
    "LowestCell",
    "OrderedGroupSpec",
    "WeightFunction",
    "WeightedGeometry",
    "cell_preorder",
    "in_cmin_algebraic",
    "in_cmin_geometric",
    "kl_table",
    "wmax_set",
]
