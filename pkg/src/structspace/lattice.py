"""The lattice of all normal subgroups of a finite group.

Members are bitmasks, deduplicated and sorted by (cardinality, mask), so the
trivial subgroup is member 0 and the whole group is the last member.  The
lattice is complete (every normal subgroup appears) and closed under meet,
join, and the commutator product; those three operations are precomputed as
index tables.

Enumeration builds the join-closure of the normal closures of the conjugacy
classes: every normal subgroup is a union of classes, hence the join of the
class closures it contains.  A brute-force all-subgroups scan is kept as an
independent oracle for small orders.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .bitset import cardinality, indices_from_mask, is_subset, mask_from_indices
from .groups import Group, commutator_set, is_normal, subgroup_closure

_DATA_CACHE: dict[bytes, "_LatticeData"] = {}


@dataclass(frozen=True)
class _LatticeData:
    """Index-level lattice structure; reusable across groups with equal tables."""

    members: tuple[int, ...]
    meet_table: np.ndarray
    join_table: np.ndarray
    comm_table: np.ndarray
    class_closure_index: tuple[int, ...]  # member index of ncl(class), per class


class NormalLattice:
    """All normal subgroups of ``group`` with their multiplicative structure."""

    def __init__(self, group: Group, data: _LatticeData):
        self.group = group
        self._data = data
        self.members = list(data.members)
        self.index_of = {mask: i for i, mask in enumerate(self.members)}
        self.meet_table = data.meet_table
        self.join_table = data.join_table
        self.comm_table = data.comm_table
        self.class_closure_index = list(data.class_closure_index)

    # -- basic views ------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def trivial_index(self) -> int:
        return 0

    @property
    def top_index(self) -> int:
        return len(self.members) - 1

    def mask(self, i: int) -> int:
        return self.members[i]

    def card(self, i: int) -> int:
        return cardinality(self.members[i])

    def proper_indices(self) -> range:
        return range(len(self.members) - 1)

    def contains(self, i: int, j: int) -> bool:
        """True iff member j is a subgroup of member i."""
        return is_subset(self.members[j], self.members[i])

    def member_label(self, i: int) -> str:
        return f"N{i}(|{self.card(i)}|)"

    # -- lattice operations --------------------------------------------------------

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def join(self, family: Iterable[int]) -> int:
        """Smallest member containing every member of the family; 0 if empty."""
        out = 0
        for i in family:
            out = int(self.join_table[out, i])
        return out

    def commutator(self, a: int, b: int) -> int:
        return int(self.comm_table[a, b])

    def meet_all(self, family: Iterable[int]) -> int:
        """Meet of a family of members; the empty meet is the whole group."""
        out = self.top_index
        for i in family:
            out = int(self.meet_table[out, i])
        return out

    def principal_indices(self) -> list[int]:
        """Members of the form ncl({a}) for a single element a (sorted, deduplicated)."""
        return sorted(set(self.class_closure_index))

    # -- radicals ---------------------------------------------------------------------

    def radical(self, n: int, primes: Iterable[int]) -> int:
        """Meet of the prime members containing n; the top member if none do."""
        prime_indices = getattr(primes, "members", primes)
        return self.meet_all(p for p in prime_indices if self.contains(p, n))

    def hull_kernel(self, spectrum_members: Iterable[int], x: int) -> int:
        """Intersection of the spectrum members containing x, as a bitmask.

        Returns the whole group when no member contains x, so the result is
        always a member mask.
        """
        members = getattr(spectrum_members, "members", spectrum_members)
        out = self.members[self.top_index]
        for s in members:
            if self.contains(s, x):
                out &= self.members[s]
        return out

    def __repr__(self) -> str:
        return f"NormalLattice({self.group.name}, {self.size} members)"


# -- construction ---------------------------------------------------------------------


def enumerate_normal_subgroups(group: Group) -> NormalLattice:
    """Compute the full normal-subgroup lattice of ``group``.

    Structure for identical multiplication tables is computed once and shared.
    """
    digest = hashlib.sha256(np.ascontiguousarray(group.table).tobytes()).digest()
    data = _DATA_CACHE.get(digest)
    if data is None:
        data = _build_lattice_data(group)
        _DATA_CACHE[digest] = data
    return NormalLattice(group, data)


def _build_lattice_data(group: Group) -> _LatticeData:
    classes = group.conjugacy_classes()
    closure_masks = [subgroup_closure(group, mask_from_indices(c)) for c in classes]

    members: set[int] = {1} | set(closure_masks)
    frontier = sorted(members)
    while frontier:
        fresh: list[int] = []
        snapshot = sorted(members)
        for a in frontier:
            for b in snapshot:
                j = _join_masks(group, a, b)
                if j not in members:
                    members.add(j)
                    fresh.append(j)
        frontier = fresh

    ordered = sorted(members, key=lambda m: (cardinality(m), m))
    index_of = {m: i for i, m in enumerate(ordered)}
    m = len(ordered)

    meet_table = np.zeros((m, m), dtype=np.int32)
    join_table = np.zeros((m, m), dtype=np.int32)
    comm_table = np.zeros((m, m), dtype=np.int32)
    for i in range(m):
        for j in range(i, m):
            meet_table[i, j] = meet_table[j, i] = index_of[ordered[i] & ordered[j]]
            join_table[i, j] = join_table[j, i] = index_of[_join_masks(group, ordered[i], ordered[j])]
            comm = subgroup_closure(group, commutator_set(group, ordered[i], ordered[j]))
            comm_table[i, j] = comm_table[j, i] = index_of[comm]
    for t in (meet_table, join_table, comm_table):
        t.setflags(write=False)

    return _LatticeData(
        members=tuple(ordered),
        meet_table=meet_table,
        join_table=join_table,
        comm_table=comm_table,
        class_closure_index=tuple(index_of[c] for c in closure_masks),
    )


def _join_masks(group: Group, a: int, b: int) -> int:
    """Join of two normal subgroups: their setwise product is already a subgroup."""
    if is_subset(a, b):
        return b
    if is_subset(b, a):
        return a
    ia, ib = indices_from_mask(a), indices_from_mask(b)
    return mask_from_indices(np.unique(group.table[np.ix_(ia, ib)]))


# -- independent small-order oracle ------------------------------------------------------


def brute_force_normal_subgroups(group: Group) -> list[int]:
    """All-subgroups scan filtered by normality; exponential, small orders only.

    Kept deliberately independent of the class-closure construction so the two
    can cross-check each other.
    """
    subgroups: set[int] = {1}
    frontier = [1]
    while frontier:
        fresh = []
        for h in frontier:
            h_idx = set(indices_from_mask(h).tolist())
            for x in range(1, group.order):
                if x in h_idx:
                    continue
                ext = subgroup_closure(group, h | (1 << x))
                if ext not in subgroups:
                    subgroups.add(ext)
                    fresh.append(ext)
        frontier = fresh
    normals = [h for h in sorted(subgroups) if is_normal(group, h)]
    return sorted(normals, key=lambda m: (cardinality(m), m))


# -- exports ------------------------------------------------------------------------------


def hasse_edges(lat: NormalLattice) -> list[tuple[int, int]]:
    """Covering pairs (i, j) with member i properly below member j, nothing between."""
    m = lat.size
    edges = []
    for i in range(m):
        for j in range(m):
            if i == j or not lat.contains(j, i):
                continue
            if any(lat.contains(j, k) and lat.contains(k, i) and k not in (i, j) for k in range(m)):
                continue
            edges.append((i, j))
    return sorted(edges)


def lattice_document(lat: NormalLattice) -> dict:
    """JSON-ready description: members by element indices plus Hasse edges."""
    return {
        "group": lat.group.name,
        "order": lat.group.order,
        "member_count": lat.size,
        "members": [
            {
                "index": i,
                "cardinality": lat.card(i),
                "elements": indices_from_mask(lat.mask(i)).tolist(),
            }
            for i in range(lat.size)
        ],
        "hasse_edges": [list(e) for e in hasse_edges(lat)],
    }


def hasse_dot(lat: NormalLattice, name: Optional[str] = None) -> str:
    """Hasse diagram in DOT format, bottom-up."""
    lines = [f'digraph "{name or lat.group.name}_lattice" {{', "  rankdir=BT;"]
    for i in range(lat.size):
        lines.append(f'  n{i} [label="{lat.member_label(i)}"];')
    for i, j in hasse_edges(lat):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
