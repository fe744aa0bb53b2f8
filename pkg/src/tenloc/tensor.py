"""Sparse storage for higher-order tensors and their row-radius quantities.

An order-m, dimension-n tensor is a hypermatrix indexed by m-tuples over
``{1, ..., n}``.  Storage is a sparse map from index tuples to complex
values; any absent tuple is zero.  The row radius (off-diagonal absolute
row sum), its deleted variant, and the subset-split variants computed here
are the inputs to every localization region and dominance test in this
package.

All radius sums walk a row's stored entries in lexicographic index order
with plain float accumulation, so repeated evaluation reproduces the same
value bit for bit.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Mapping, Sequence

__all__ = [
    "Block",
    "RadiiCache",
    "SPLIT_RADIUS_NOTE",
    "SubsetPartition",
    "Tensor",
    "build_tensor",
    "deleted_row_radius",
    "entry",
    "is_symmetric",
    "row_radius",
    "split_radii",
]

#: Convention note for split-radius tables.  A block radius sums the
#: magnitude of every stored index tuple whose trailing indices all lie in
#: the chosen subset, so each permuted copy of a symmetric entry counts
#: separately.  The two blocks of a row always add up to the row radius;
#: hand-worked splits that collapse permuted copies will agree on the total
#: but not on the per-block values.
SPLIT_RADIUS_NOTE = (
    "split radii count every permuted index tuple whose trailing indices all "
    "lie in the chosen subset; the two blocks add up to the row radius, but "
    "presentations that collapse permuted copies report a different per-block "
    "split of the same total"
)

Block = Literal["inside", "outside"]

IndexTuple = tuple[int, ...]


def _as_component(c) -> int:
    if isinstance(c, bool):
        raise IndexError(f"index component {c!r} is not an integer")
    try:
        return operator.index(c)
    except TypeError:
        raise IndexError(f"index component {c!r} is not an integer") from None


def _check_index(idx: Sequence[int], order: int, dim: int) -> IndexTuple:
    key = tuple(_as_component(c) for c in idx)
    if len(key) != order:
        raise IndexError(
            f"index {key!r} has {len(key)} components, expected {order}"
        )
    for c in key:
        if c < 1 or c > dim:
            raise IndexError(f"index {key!r} out of range 1..{dim}")
    return key


@dataclass(frozen=True)
class SubsetPartition:
    """A nonempty proper subset of ``{1, ..., dim}``; the complement is derived.

    Requires ``dim >= 2``: a subset that is both nonempty and proper cannot
    exist otherwise.
    """

    s: tuple[int, ...]
    dim: int

    def __post_init__(self):
        members = tuple(sorted({_as_component(i) for i in self.s}))
        object.__setattr__(self, "s", members)
        if self.dim < 2:
            raise ValueError("a nonempty proper subset requires dim >= 2")
        if not members:
            raise ValueError("subset must be nonempty")
        if members[0] < 1 or members[-1] > self.dim:
            raise ValueError(f"subset members must lie in 1..{self.dim}")
        if len(members) == self.dim:
            raise ValueError("subset must be a proper subset")

    @property
    def complement(self) -> tuple[int, ...]:
        inside = set(self.s)
        return tuple(i for i in range(1, self.dim + 1) if i not in inside)

    def swapped(self) -> "SubsetPartition":
        """The partition with the roles of subset and complement exchanged."""
        return SubsetPartition(self.complement, self.dim)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.s) + "}"


class Tensor:
    """Immutable sparse hypermatrix of order ``order`` and dimension ``dim``.

    ``symmetric`` records that the tensor was produced by symmetric expansion
    of sorted representatives, in which case every permutation of a stored
    tuple carries the same value by construction.  Instances are never
    mutated after construction, so they are safe to share across threads.
    """

    __slots__ = (
        "order",
        "dim",
        "symmetric",
        "_entries",
        "_rows",
        "_radii",
        "_contraction",
        "_region",
    )

    def __init__(
        self,
        order: int,
        dim: int,
        entries: Mapping[Sequence[int], complex],
        symmetric: bool = False,
    ):
        order = _as_component(order)
        dim = _as_component(dim)
        if order < 2:
            raise ValueError(f"order must be at least 2, got {order}")
        if dim < 1:
            raise ValueError(f"dim must be at least 1, got {dim}")
        store: dict[IndexTuple, complex] = {}
        for idx, value in entries.items():
            store[_check_index(idx, order, dim)] = complex(value)
        self.order = order
        self.dim = dim
        self.symmetric = bool(symmetric)
        self._entries = store
        rows: list[list[tuple[IndexTuple, complex]]] = [[] for _ in range(dim)]
        for key in sorted(store):
            rows[key[0] - 1].append((key[1:], store[key]))
        self._rows = rows
        self._radii: RadiiCache | None = None
        self._contraction = None
        self._region = None

    def entry(self, idx: Sequence[int]) -> complex:
        """Stored value at ``idx`` (1-based m-tuple), or zero if absent."""
        return self._entries.get(_check_index(idx, self.order, self.dim), 0j)

    def items(self) -> Iterator[tuple[IndexTuple, complex]]:
        """Stored (index, value) pairs in lexicographic index order."""
        return iter(sorted(self._entries.items()))

    def diagonal(self) -> list[complex]:
        m = self.order
        return [self._entries.get((i,) * m, 0j) for i in range(1, self.dim + 1)]

    @property
    def nnz(self) -> int:
        return len(self._entries)

    @property
    def is_real(self) -> bool:
        return all(v.imag == 0.0 for v in self._entries.values())

    @property
    def radii(self) -> "RadiiCache":
        if self._radii is None:
            self._radii = RadiiCache(self)
        return self._radii

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self.order == other.order
            and self.dim == other.dim
            and self.symmetric == other.symmetric
            and self._entries == other._entries
        )

    __hash__ = None  # mutable-adjacent container semantics

    def __repr__(self) -> str:
        kind = "symmetric " if self.symmetric else ""
        return (
            f"Tensor(order={self.order}, dim={self.dim}, "
            f"{kind}nnz={self.nnz})"
        )


def build_tensor(
    order: int,
    dim: int,
    representative_entries: Iterable[tuple[Sequence[int], complex]],
    symmetrize: bool = False,
) -> Tensor:
    """Construct a tensor from literal entries or symmetric representatives.

    With ``symmetrize`` set, each representative index tuple must be sorted
    non-decreasing and is expanded so every permutation of it carries the
    representative's value.  Without it, exactly the listed tuples are
    stored.  Duplicate tuples are rejected in both modes.
    """
    order = _as_component(order)
    dim = _as_component(dim)
    if order < 2:
        raise ValueError(f"order must be at least 2, got {order}")
    if dim < 1:
        raise ValueError(f"dim must be at least 1, got {dim}")
    entries: dict[IndexTuple, complex] = {}
    seen: set[IndexTuple] = set()
    for idx, value in representative_entries:
        key = _check_index(idx, order, dim)
        if symmetrize:
            if tuple(sorted(key)) != key:
                raise ValueError(
                    f"unsorted representative {key!r}: symmetric input must "
                    "list each orbit once, indices non-decreasing"
                )
            if key in seen:
                raise ValueError(f"duplicate representative {key!r}")
            seen.add(key)
            for perm in set(itertools.permutations(key)):
                entries[perm] = complex(value)
        else:
            if key in entries:
                raise ValueError(f"duplicate entry {key!r}")
            entries[key] = complex(value)
    return Tensor(order, dim, entries, symmetric=symmetrize)


def entry(t: Tensor, idx: Sequence[int]) -> complex:
    """Value of ``t`` at the 1-based index tuple ``idx`` (zero if absent)."""
    return t.entry(idx)


def is_symmetric(t: Tensor, rel_tol: float = 1e-12) -> bool:
    """Whether every permutation of each stored index carries the same value.

    Tensors built by symmetric expansion are symmetric by construction and
    short-circuit; literal tensors are checked entry by entry against all
    permutations within ``rel_tol`` relative.
    """
    if t.symmetric:
        return True
    for idx, value in t.items():
        for perm in set(itertools.permutations(idx)):
            other = t._entries.get(perm, 0j)
            if abs(other - value) > rel_tol * max(abs(value), abs(other)):
                return False
    return True


class RadiiCache:
    """Memoized row, deleted-row, and split radii for one tensor.

    Every value is a plain left-to-right float accumulation over the row's
    stored entries in lexicographic suffix order, so regeneration reproduces
    cached values exactly.
    """

    def __init__(self, tensor: Tensor):
        self._t = tensor
        self._row: dict[int, float] = {}
        self._deleted: dict[tuple[int, int], float] = {}
        self._split: dict[tuple[int, tuple[int, ...], str], float] = {}

    def row(self, i: int) -> float:
        val = self._row.get(i)
        if val is None:
            t = self._t
            diag = (i,) * (t.order - 1)
            total = 0.0
            for suffix, value in t._rows[i - 1]:
                if suffix != diag:
                    total += abs(value)
            self._row[i] = val = total
        return val

    def deleted(self, i: int, j: int) -> float:
        key = (i, j)
        val = self._deleted.get(key)
        if val is None:
            t = self._t
            skip = {(i,) * (t.order - 1), (j,) * (t.order - 1)}
            total = 0.0
            for suffix, value in t._rows[i - 1]:
                if suffix not in skip:
                    total += abs(value)
            self._deleted[key] = val = total
        return val

    def split(self, i: int, members: tuple[int, ...], block: Block) -> float:
        key = (i, members, block)
        val = self._split.get(key)
        if val is None:
            t = self._t
            inside_set = frozenset(members)
            diag = (i,) * (t.order - 1)
            want_inside = block == "inside"
            total = 0.0
            for suffix, value in t._rows[i - 1]:
                if suffix == diag:
                    continue  # excluded from whichever block holds it
                inside = all(c in inside_set for c in suffix)
                if inside == want_inside:
                    total += abs(value)
            self._split[key] = val = total
        return val


def _check_row(t: Tensor, i: int) -> int:
    i = _as_component(i)
    if i < 1 or i > t.dim:
        raise IndexError(f"row index {i} out of range 1..{t.dim}")
    return i


def row_radius(t: Tensor, i: int) -> float:
    """Off-diagonal absolute row sum of row ``i``.

    Sums ``|a[i, i2, ..., im]|`` over every index tuple in the row except
    the diagonal tuple ``(i, ..., i)``.
    """
    return t.radii.row(_check_row(t, i))

def deleted_row_radius(t: Tensor, i: int, j: int) -> float:
    """Row radius of ``i`` with the entry at suffix ``(j, ..., j)`` removed.

    Equals ``row_radius(t, i) - |a[i, j, ..., j]|`` up to summation rounding,
    and is never negative.
    """
    i = _check_row(t, i)
    j = _check_row(t, j)
    if i == j:
        raise ValueError("deleted row radius requires two distinct indices")
    return t.radii.deleted(i, j)


def split_radii(
    t: Tensor, i: int, part: SubsetPartition, block: Block = "inside"
) -> float:
    """Portion of row ``i``'s radius carried by suffix tuples of ``part.s``.

    ``block="inside"`` sums entries whose trailing indices all lie in the
    partition's subset; ``"outside"`` sums the rest.  The diagonal tuple is
    excluded from whichever block contains it, so the two blocks always add
    up to ``row_radius(t, i)``.  For quantities split along the complement,
    pass ``part.swapped()``.
    """
    i = _check_row(t, i)
    if part.dim != t.dim:
        raise ValueError(
            f"partition is over 1..{part.dim}, tensor dimension is {t.dim}"
        )
    if block not in ("inside", "outside"):
        raise ValueError(f"block must be 'inside' or 'outside', got {block!r}")
    return t.radii.split(i, part.s, block)
