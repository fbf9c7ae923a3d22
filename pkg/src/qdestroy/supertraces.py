"""Supertraces: trace-preserving maps into the vacuum sector.

The single-space supertrace sends any operator L to Tr(L) |0><0|.  On a
product space there are one full and four partial variants, defined on basis
endomorphisms |a><a'| x |b><b'| (extended indices, vacuum matches vacuum):

    full:      delta_aa' delta_bb'  ->  |0><0| x |0><0|
    left:      delta_a'a            ->  |0><0| x |b><b'|
    right:     delta_b'b            ->  |a><a'| x |0><0|
    inner:     delta_a'b            ->  |a><0|  x |0><b'|
    external:  delta_b'a            ->  |0><a'| x |b><0|

and extended linearly.  The inner/external deltas compare a left basis label
with a right basis label, so those two maps exist only when both factors are
the same physical space; requesting them across distinct spaces raises
instead of silently returning zero.

All five act on the full extended product space, so compositions are
well-typed without re-embedding.  They are applied as direct index
contractions, never as materialized superoperator matrices (the `verify`
module materializes them separately as its oracle).
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import InnerExternalOnDistinctSpacesError
from .operators import Operator
from .spaces import ExtendedSpace, PhysicalSpace, ProductSpace, make_extended


class SupertraceKind(Enum):
    FULL_SINGLE = "full_single"
    FULL_PRODUCT = "full_product"
    LEFT = "left"
    RIGHT = "right"
    INNER = "inner"
    EXTERNAL = "external"

    @property
    def index_alias(self) -> str:
        """Two-digit name of a partial kind: the scalar product is made from
        the i-th ket and j-th bra, which are replaced by vacuum."""
        return _ALIASES[self]

    @classmethod
    def from_index_alias(cls, alias: str) -> "SupertraceKind":
        for kind, name in _ALIASES.items():
            if name == alias:
                return kind
        raise ValueError(f"unknown partial supertrace alias {alias!r}")


_ALIASES = {
    SupertraceKind.LEFT: "11",
    SupertraceKind.RIGHT: "22",
    SupertraceKind.INNER: "21",
    SupertraceKind.EXTERNAL: "12",
}

_PARTIAL_KINDS = frozenset(_ALIASES)


def _as_tensor(matrix: np.ndarray, dl: int, dr: int) -> np.ndarray:
    # T[i, j, k, l] = M[i*dr + j, k*dr + l]
    return matrix.reshape(dl, dr, dl, dr)


def _left_matrix(matrix: np.ndarray, dl: int, dr: int) -> np.ndarray:
    t = _as_tensor(matrix, dl, dr)
    out = np.zeros_like(t)
    out[dl - 1, :, dl - 1, :] = np.einsum("abad->bd", t)
    return out.reshape(dl * dr, dl * dr)


def _right_matrix(matrix: np.ndarray, dl: int, dr: int) -> np.ndarray:
    t = _as_tensor(matrix, dl, dr)
    out = np.zeros_like(t)
    out[:, dr - 1, :, dr - 1] = np.einsum("abcb->ac", t)
    return out.reshape(dl * dr, dl * dr)


def _inner_matrix(matrix: np.ndarray, dl: int, dr: int) -> np.ndarray:
    t = _as_tensor(matrix, dl, dr)
    out = np.zeros_like(t)
    # delta_{a'b}: contract the left bra with the right ket.
    out[:, dr - 1, dl - 1, :] = np.einsum("ammb->ab", t)
    return out.reshape(dl * dr, dl * dr)


def _external_matrix(matrix: np.ndarray, dl: int, dr: int) -> np.ndarray:
    t = _as_tensor(matrix, dl, dr)
    out = np.zeros_like(t)
    # delta_{b'a}: contract the left ket with the right bra; s[a', b].
    s = np.einsum("mbam->ab", t)
    out[dl - 1, :, :, dr - 1] = s.T
    return out.reshape(dl * dr, dl * dr)


def _full_product_matrix(matrix: np.ndarray, dl: int, dr: int) -> np.ndarray:
    out = np.zeros_like(matrix)
    vac = (dl - 1) * dr + (dr - 1)
    out[vac, vac] = np.trace(matrix)
    return out


_MATRIX_MAPS = {
    SupertraceKind.LEFT: _left_matrix,
    SupertraceKind.RIGHT: _right_matrix,
    SupertraceKind.INNER: _inner_matrix,
    SupertraceKind.EXTERNAL: _external_matrix,
    SupertraceKind.FULL_PRODUCT: _full_product_matrix,
}


def supertrace_single(op: Operator) -> Operator:
    """Tr(L) |0><0| on the extended space.

    Accepts an operator on a physical space (the result is lifted) or on an
    extended space (the trace then includes any vacuum weight).
    """
    if isinstance(op.space, PhysicalSpace):
        target = make_extended(op.space)
    elif isinstance(op.space, ExtendedSpace):
        target = op.space
    else:
        raise ValueError("supertrace_single acts on single-particle operators")
    out = np.zeros((target.dim, target.dim), dtype=np.complex128)
    out[target.vacuum_index, target.vacuum_index] = np.trace(op.matrix)
    return Operator(out, target)


def supertrace_product(op: Operator) -> Operator:
    """Tr(L) at the double-vacuum cell of the extended product space."""
    space = _require_product(op)
    out = _full_product_matrix(op.matrix, space.left.dim, space.right.dim)
    return Operator(out, space)


def partial_supertrace(kind: SupertraceKind, op: Operator) -> Operator:
    """Apply one of the four partial supertraces on a product-space operator.

    Left and right preserve the trace.  Inner and external have vanishing
    diagonals on two-particle input and require identical particles.
    """
    if kind not in _PARTIAL_KINDS:
        raise ValueError(
            f"{kind} is not a partial supertrace; use supertrace_single or "
            f"supertrace_product"
        )
    space = _require_product(op)
    if kind in (SupertraceKind.INNER, SupertraceKind.EXTERNAL) and not space.identical:
        raise InnerExternalOnDistinctSpacesError(
            f"{kind.value} partial supertrace compares left and right basis "
            f"labels; the factors are distinct physical spaces"
        )
    out = _MATRIX_MAPS[kind](op.matrix, space.left.dim, space.right.dim)
    return Operator(out, space)


def _require_product(op: Operator) -> ProductSpace:
    if not isinstance(op.space, ProductSpace):
        raise ValueError("expected an operator on an extended product space")
    return op.space


__all__ = [
    "SupertraceKind",
    "partial_supertrace",
    "supertrace_product",
    "supertrace_single",
]
