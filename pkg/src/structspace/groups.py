"""Finite-group arithmetic on element indices.

A group is carried by its full multiplication table over indices 0..order-1
with the identity pinned at index 0.  Groups described by permutation
generators are materialized to the same table form, so every downstream
computation (subgroup closure, conjugation, quotients) runs on one code path,
vectorized with numpy.  Element subsets are int bitmasks (see ``bitset``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .bitset import (
    cardinality,
    full_mask,
    indices_from_mask,
    is_subset,
    mask_from_bool,
    mask_from_indices,
)
from .config import CAPS
from .errors import (
    GeneratorNotBijective,
    NoIdentity,
    NonAssociative,
    NotHomomorphism,
    NotLatinSquare,
    NotNormal,
    NotSubgroup,
    OrderMismatch,
)

_ASSOC_FULL_CHECK_LIMIT = 512


def _table_dtype(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


class Group:
    """Immutable finite group on element indices 0..order-1, identity at 0.

    Construct through :func:`load_group` or the helpers below; the raw
    constructor trusts its inputs (used for tables that are associative by
    construction, e.g. quotients and permutation closures).
    """

    def __init__(
        self,
        name: str,
        table: np.ndarray,
        *,
        perms: Optional[np.ndarray] = None,
        generators: Optional[np.ndarray] = None,
        element_names: Optional[Sequence[str]] = None,
    ):
        self.name = name
        self.table = table
        self.order = int(table.shape[0])
        self.perms = perms          # (order, degree) images, or None
        self.generators = generators
        self.element_names = list(element_names) if element_names else None
        self.inv = self._compute_inverses()
        self.table.setflags(write=False)
        self.inv.setflags(write=False)
        if self.perms is not None:
            self.perms.setflags(write=False)
        self._classes: Optional[list[np.ndarray]] = None

    # -- derived structure --------------------------------------------------

    def _compute_inverses(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == 0)
        inv = np.empty(self.order, dtype=self.table.dtype)
        inv[rows] = cols
        if not np.array_equal(self.table[inv, np.arange(self.order)], np.zeros(self.order)):
            raise NotLatinSquare(f"{self.name}: inverses are not two-sided")
        return inv

    @property
    def degree(self) -> Optional[int]:
        return None if self.perms is None else int(self.perms.shape[1])

    @property
    def is_permutation_group(self) -> bool:
        return self.perms is not None

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def full_mask(self) -> int:
        return full_mask(self.order)

    def element_name(self, i: int) -> str:
        if self.element_names is not None:
            return self.element_names[i]
        if self.perms is not None:
            return _cycle_notation(self.perms[i])
        return str(i)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.table[x, a])
            k += 1
        return k

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"

    # -- conjugacy ------------------------------------------------------------

    def conjugacy_classes(self) -> list[np.ndarray]:
        """Partition of element indices into conjugacy classes.

        Classes are sorted internally and listed by smallest member, so the
        identity's singleton class always comes first.
        """
        if self._classes is None:
            table, inv, n = self.table, self.inv, self.order
            seen = np.zeros(n, dtype=bool)
            classes = []
            for x in range(n):
                if seen[x]:
                    continue
                orbit = np.unique(table[table[inv, x], np.arange(n)])
                seen[orbit] = True
                classes.append(orbit.astype(np.int64))
            self._classes = classes
        return self._classes


# -- loading / construction ---------------------------------------------------


def load_group(description: dict) -> Group:
    """Build a validated Group from one of the two input schemas.

    ``{"name", "kind": "cayley", "order", "table"}`` or
    ``{"name", "kind": "perm", "degree", "order", "generators"}`` where each
    generator lists the images of 0..degree-1.  An optional ``element_names``
    list is honored for the table form.
    """
    kind = description.get("kind")
    name = description.get("name", "G")
    if kind == "cayley":
        return _load_cayley(name, description)
    if kind == "perm":
        return _load_perm(name, description)
    raise ValueError(f"unknown group kind {kind!r}")


def _load_cayley(name: str, description: dict) -> Group:
    table = np.asarray(description["table"], dtype=np.int64)
    order = int(description["order"])
    if table.ndim != 2 or table.shape != (order, order):
        raise OrderMismatch(f"{name}: table shape {table.shape} does not match order {order}")
    if table.min(initial=0) < 0 or table.max(initial=0) >= order:
        raise NotLatinSquare(f"{name}: entries outside 0..{order - 1}")

    expect = np.arange(order)
    if not (np.array_equal(np.sort(table, axis=1), np.broadcast_to(expect, table.shape))
            and np.array_equal(np.sort(table, axis=0), np.broadcast_to(expect[:, None], table.shape))):
        raise NotLatinSquare(f"{name}: some row or column repeats an element")

    identity = _find_identity(table)
    if identity is None:
        raise NoIdentity(f"{name}: no two-sided identity element")
    if identity != 0:
        table = _reindex_identity(table, identity)

    _check_associative(name, table)
    names = description.get("element_names")
    if names is not None and identity != 0:
        names = list(names)
        names[0], names[identity] = names[identity], names[0]
    return Group(name, table.astype(_table_dtype(order)), element_names=names)


def _find_identity(table: np.ndarray) -> Optional[int]:
    n = table.shape[0]
    expect = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], expect) and np.array_equal(table[:, e], expect):
            return e
    return None


def _reindex_identity(table: np.ndarray, e: int) -> np.ndarray:
    # relabel by the transposition (0 e) so the identity sits at index 0
    sigma = np.arange(table.shape[0])
    sigma[0], sigma[e] = e, 0
    return sigma[table[np.ix_(sigma, sigma)]]


def _check_associative(name: str, table: np.ndarray) -> None:
    n = table.shape[0]
    if n <= _ASSOC_FULL_CHECK_LIMIT:
        for i in range(n):
            if not np.array_equal(table[table[i], :], table[i, table]):
                j, k = np.argwhere(table[table[i], :] != table[i, table])[0]
                raise NonAssociative(f"{name}: ({i}*{j})*{k} != {i}*({j}*{k})")
        return
    # beyond the full-check limit an n^3 scan is infeasible; spot-check triples
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, 1_000_000))
    if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
        bad = np.nonzero(table[table[a, b], c] != table[a, table[b, c]])[0][0]
        raise NonAssociative(f"{name}: ({a[bad]}*{b[bad]})*{c[bad]} != {a[bad]}*({b[bad]}*{c[bad]})")


def _load_perm(name: str, description: dict) -> Group:
    degree = int(description["degree"])
    generators = [tuple(int(x) for x in gen) for gen in description["generators"]]
    for gen in generators:
        if len(gen) != degree or sorted(gen) != list(range(degree)):
            raise GeneratorNotBijective(f"{name}: {gen} is not a permutation of 0..{degree - 1}")

    declared = int(description["order"])
    cap = max(declared, CAPS.max_order)
    elements = _permutation_closure(generators, degree, cap, name)
    if len(elements) != declared:
        raise OrderMismatch(f"{name}: generators close to {len(elements)} elements, declared {declared}")

    perms = np.array(sorted(elements), dtype=np.int64)  # identity is lex-least
    table = _composition_table(perms)
    gen_indices = np.array([_perm_index(perms, np.array(g)) for g in generators], dtype=np.int64)
    return Group(name, table, perms=perms, generators=gen_indices)


def _permutation_closure(generators, degree: int, cap: int, name: str) -> set[tuple]:
    identity = tuple(range(degree))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = tuple(g[x] for x in p)
                if q not in elements:
                    elements.add(q)
                    nxt.append(q)
                    if len(elements) > cap:
                        raise OrderMismatch(f"{name}: closure exceeded cap {cap}")
        frontier = nxt
    return elements


def _perm_keys(perms: np.ndarray) -> np.ndarray:
    d = perms.shape[1]
    weights = d ** np.arange(d, dtype=np.int64)
    return perms @ weights


def _perm_index(perms: np.ndarray, p: np.ndarray) -> int:
    matches = np.nonzero((perms == p).all(axis=1))[0]
    return int(matches[0])


def _composition_table(perms: np.ndarray) -> np.ndarray:
    n, d = perms.shape
    if d ** d > np.iinfo(np.int64).max:
        raise OrderMismatch(f"degree {d} too large to index")
    keys = _perm_keys(perms)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    table = np.empty((n, n), dtype=_table_dtype(n))
    weights = perms.shape[1] ** np.arange(perms.shape[1], dtype=np.int64)
    for a in range(n):
        composed = perms[a][perms]            # (a*b)(x) = a(b(x))
        pos = np.searchsorted(sorted_keys, composed @ weights)
        table[a] = order[pos]
    return table


def _cycle_notation(perm: np.ndarray) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        seen.add(start)
        x = int(perm[start])
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = int(perm[x])
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) if parts else "()"


def cyclic_table(n: int) -> np.ndarray:
    return (np.arange(n)[:, None] + np.arange(n)[None, :]) % n


def direct_product_table(ta: np.ndarray, tb: np.ndarray) -> np.ndarray:
    """Table of A x B with index i*|B| + j; identity stays at 0."""
    na, nb = ta.shape[0], tb.shape[0]
    ia, ja = np.divmod(np.arange(na * nb), nb)
    left = ta[np.ix_(ia, ia)].astype(np.int64)
    right = tb[np.ix_(ja, ja)].astype(np.int64)
    return left * nb + right


# -- subgroup machinery ---------------------------------------------------------


def subgroup_closure(g: Group, seed: int) -> int:
    """Smallest subgroup (as a bitmask) containing the seed set."""
    cur = np.unique(np.append(indices_from_mask(seed), 0))
    while True:
        prods = np.unique(g.table[np.ix_(cur, cur)])
        if prods.size == cur.size:
            return mask_from_indices(cur)
        cur = prods


def conjugation_closure(g: Group, seed: int) -> int:
    """Union of the conjugacy classes meeting the seed set."""
    idx = indices_from_mask(seed)
    if idx.size == 0:
        return 0
    t1 = g.table[np.ix_(g.inv, idx)]
    conj = g.table[t1, np.arange(g.order)[:, None]]
    return mask_from_indices(np.unique(conj))


def normal_closure(g: Group, seed: int) -> int:
    """Smallest normal subgroup containing the seed set.

    The conjugation closure of the seed is stable under conjugation, so one
    subgroup closure of it already yields a normal subgroup.
    """
    return subgroup_closure(g, conjugation_closure(g, seed))


def is_subgroup(g: Group, mask: int) -> bool:
    if mask & 1 == 0:
        return False
    idx = indices_from_mask(mask)
    prods = np.unique(g.table[np.ix_(idx, idx)])
    return prods.size == idx.size and bool(np.all(np.isin(prods, idx)))


def is_normal(g: Group, mask: int) -> bool:
    return is_subgroup(g, mask) and conjugation_closure(g, mask) == mask


def is_abelian_subset(g: Group, mask: int) -> bool:
    idx = indices_from_mask(mask)
    return bool(np.array_equal(g.table[np.ix_(idx, idx)], g.table[np.ix_(idx, idx)].T))


def commutator_set(g: Group, a: int, b: int) -> int:
    """All commutators x y x^-1 y^-1 with x in a, y in b, as a bitmask."""
    ia, ib = indices_from_mask(a), indices_from_mask(b)
    xy = g.table[np.ix_(ia, ib)]
    xy_xinv = g.table[xy, g.inv[ia][:, None]]
    comms = g.table[xy_xinv, g.inv[ib][None, :]]
    return mask_from_indices(np.unique(comms))


# -- homomorphisms ---------------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """Total map source -> target on element indices, checked multiplicative."""

    source: Group
    target: Group
    mapping: np.ndarray
    name: str = "phi"
    _trusted: bool = field(default=False, repr=False)

    def __post_init__(self):
        f = np.asarray(self.mapping, dtype=np.int64)
        object.__setattr__(self, "mapping", f)
        if f.shape != (self.source.order,):
            raise NotHomomorphism(f"{self.name}: mapping has wrong length")
        if f[0] != 0:
            raise NotHomomorphism(f"{self.name}: identity does not map to identity")
        if not self._trusted:
            st, tt = self.source.table, self.target.table
            # f(a*b) == f(a)*f(b), row-chunked to bound memory on big sources
            chunk = max(1, 2 ** 22 // max(self.source.order, 1))
            for lo in range(0, self.source.order, chunk):
                hi = min(lo + chunk, self.source.order)
                if not np.array_equal(f[st[lo:hi]], tt[np.ix_(f[lo:hi], f)]):
                    raise NotHomomorphism(f"{self.name}: not multiplicative")
        f.setflags(write=False)

    def __call__(self, a: int) -> int:
        return int(self.mapping[a])

    @property
    def is_surjective(self) -> bool:
        return np.unique(self.mapping).size == self.target.order

    def image_mask(self, mask: Optional[int] = None) -> int:
        if mask is None:
            src = self.mapping
        else:
            src = self.mapping[indices_from_mask(mask)]
        flags = np.zeros(self.target.order, dtype=bool)
        flags[src] = True
        return mask_from_bool(flags)

    def preimage_mask(self, mask: int) -> int:
        flags = np.zeros(self.target.order, dtype=bool)
        flags[indices_from_mask(mask)] = True
        return mask_from_bool(flags[self.mapping])

    def kernel_mask(self) -> int:
        return self.preimage_mask(1)  # fiber over the identity

    def compose(self, inner: "GroupHom", name: Optional[str] = None) -> "GroupHom":
        """self after inner: (self.compose(inner))(x) = self(inner(x))."""
        if inner.target is not self.source:
            raise NotHomomorphism("composition mismatch: inner.target is not self.source")
        return GroupHom(
            inner.source,
            self.target,
            self.mapping[inner.mapping],
            name=name or f"{self.name}.{inner.name}",
            _trusted=True,
        )


def identity_hom(g: Group) -> GroupHom:
    return GroupHom(g, g, np.arange(g.order), name=f"id_{g.name}", _trusted=True)


def hom_preimage(h: GroupHom, s: int) -> int:
    """Preimage of a subgroup of the target; normal inputs give normal outputs."""
    if not is_subgroup(h.target, s):
        raise NotSubgroup(f"{h.name}: preimage argument is not a subgroup of {h.target.name}")
    return h.preimage_mask(s)


def hom_kernel(h: GroupHom) -> int:
    return h.kernel_mask()


# -- quotients ---------------------------------------------------------------------


def quotient(g: Group, n: int, name: Optional[str] = None) -> tuple[Group, GroupHom]:
    """Quotient group on coset representatives plus the canonical surjection."""
    if not is_normal(g, n):
        raise NotNormal(f"{g.name}: quotient by a non-normal subgroup")
    n_idx = indices_from_mask(n)
    coset_id = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if coset_id[x] >= 0:
            continue
        coset = g.table[x, n_idx]
        coset_id[coset] = len(reps)
        reps.append(x)
    reps_arr = np.array(reps, dtype=np.int64)
    q_table = coset_id[np.asarray(g.table)[np.ix_(reps_arr, reps_arr)]]
    q_name = name or f"{g.name}/N{cardinality(n)}"
    q = Group(q_name, q_table.astype(_table_dtype(len(reps))))
    hom = GroupHom(g, q, coset_id, name=f"{g.name}->{q_name}", _trusted=True)
    return q, hom
