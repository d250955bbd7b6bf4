"""Classes of proper normal subgroups ("spectra") and their membership tests.

Every predicate quantifies over the full lattice, including the whole group
itself; a spectrum never contains the whole group.  Primality carries two
independent criteria (the member-pair test and the element-wise test through
principal closures) that are required to agree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .bitset import indices_from_mask
from .errors import NotProper, RegRequiresPermGroup, PmtvBoundsMissing
from .lattice import NormalLattice


class SpectrumKind(enum.Enum):
    PROPER = "proper"
    PRIME = "prime"
    MIN_PRIME = "minimal-prime"
    MAXIMAL = "maximal"
    MINIMAL = "minimal"
    PRIMARY = "primary"
    RADICAL = "radical"
    STRONGLY_IRREDUCIBLE = "strongly-irreducible"
    IRREDUCIBLE = "irreducible"
    PRINCIPAL = "principal"
    FINITELY_GENERATED = "finitely-generated"
    REGULAR = "regular"
    PRIMITIVE = "primitive"

    def __str__(self) -> str:  # report/CLI friendly
        return self.value


KIND_BY_VALUE = {k.value: k for k in SpectrumKind}


@dataclass(frozen=True)
class Spectrum:
    """A tagged set of lattice member indices, never containing the top member."""

    lattice: NormalLattice
    kind: SpectrumKind
    members: tuple[int, ...]
    provenance: str = ""
    detail: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.lattice.top_index in self.members:
            raise ValueError("a spectrum may not contain the whole group")

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, i: int) -> bool:
        return i in set(self.members)

    def masks(self) -> list[int]:
        return [self.lattice.mask(i) for i in self.members]

    def hull_kernel(self, x: int) -> int:
        """Intersection of the members containing x (the whole group if none)."""
        return self.lattice.hull_kernel(self.members, x)


# -- membership predicates ----------------------------------------------------------


def _require_proper(lat: NormalLattice, i: int) -> None:
    if i == lat.top_index:
        raise NotProper(f"{lat.group.name}: member {i} is the whole group")


def is_prime(lat: NormalLattice, p: int) -> bool:
    """Member-pair criterion: [n, n'] below p forces n or n' below p."""
    _require_proper(lat, p)
    for a in range(lat.size):
        if lat.contains(p, a):
            continue
        for b in range(a, lat.size):
            if lat.contains(p, b):
                continue
            if lat.contains(p, lat.commutator(a, b)):
                return False
    return True


def is_prime_elementwise(lat: NormalLattice, p: int) -> bool:
    """Element-wise criterion through principal closures.

    Quantifying over elements a, b reduces to quantifying over the normal
    closures of single elements, which are finitely many lattice members.
    """
    _require_proper(lat, p)
    principal = lat.principal_indices()
    for a in principal:
        if lat.contains(p, a):
            continue
        for b in principal:
            if lat.contains(p, b):
                continue
            if lat.contains(p, lat.commutator(a, b)):
                return False
    return True


def is_primary(lat: NormalLattice, q: int, primes: Iterable[int]) -> bool:
    """[n, n'] below q with n not below q forces n' below the radical of q."""
    _require_proper(lat, q)
    rad = lat.radical(q, primes)
    for a in range(lat.size):
        if lat.contains(q, a):
            continue  # n below q: nothing required
        for b in range(lat.size):
            if lat.contains(q, lat.commutator(a, b)) and not lat.contains(rad, b):
                return False
    return True


def is_radical_member(lat: NormalLattice, n: int, primes: Iterable[int]) -> bool:
    _require_proper(lat, n)
    return lat.radical(n, primes) == n


def is_irreducible(lat: NormalLattice, n: int) -> bool:
    """Meet-irreducible: n = a ∩ b forces n = a or n = b."""
    _require_proper(lat, n)
    for a in range(lat.size):
        if a == n:
            continue
        for b in range(a, lat.size):
            if b != n and lat.meet(a, b) == n:
                return False
    return True


def is_strongly_irreducible(lat: NormalLattice, n: int) -> bool:
    """a ∩ b below n forces a or b below n."""
    _require_proper(lat, n)
    for a in range(lat.size):
        if lat.contains(n, a):
            continue
        for b in range(a, lat.size):
            if lat.contains(n, b):
                continue
            if lat.contains(n, lat.meet(a, b)):
                return False
    return True


# -- spectrum computation ---------------------------------------------------------------


def prime_indices(lat: NormalLattice) -> list[int]:
    return [p for p in lat.proper_indices() if is_prime(lat, p)]


def minimal_primes_over(lat: NormalLattice, n: int, primes: Optional[Iterable[int]] = None) -> list[int]:
    """Primes containing n with no strictly smaller prime still containing n."""
    ps = list(primes) if primes is not None else prime_indices(lat)
    over = [p for p in ps if lat.contains(p, n)]
    return [
        p for p in over
        if not any(q != p and lat.contains(p, q) for q in over)
    ]


def compute_spectrum(
    lat: NormalLattice,
    kind: SpectrumKind,
    *,
    primes: Optional[list[int]] = None,
    pmtv_bounds: Optional[tuple[int, int]] = None,
) -> Spectrum:
    """Materialize one spectrum of the lattice.

    ``primes`` may be passed to reuse an already-computed prime list; the
    primitive kind requires explicit ``pmtv_bounds`` (max prime, max dimension)
    and the regular kind requires a permutation-represented group.
    """
    proper = list(lat.proper_indices())

    if kind is SpectrumKind.PROPER:
        return Spectrum(lat, kind, tuple(proper))

    if kind is SpectrumKind.FINITELY_GENERATED:
        return Spectrum(
            lat, kind, tuple(proper),
            provenance="every subgroup of a finite group is finitely generated",
        )

    if kind is SpectrumKind.PRINCIPAL:
        members = [i for i in lat.principal_indices() if i != lat.top_index]
        return Spectrum(lat, kind, tuple(sorted(members)),
                        provenance="normal closures of single elements")

    if kind is SpectrumKind.MAXIMAL:
        members = [
            i for i in proper
            if not any(j != i and j != lat.top_index and lat.contains(j, i) for j in proper)
        ]
        return Spectrum(lat, kind, tuple(members))

    if kind is SpectrumKind.MINIMAL:
        members = [
            i for i in proper
            if i != lat.trivial_index
            and not any(j not in (lat.trivial_index, i) and lat.contains(i, j) for j in proper)
        ]
        return Spectrum(lat, kind, tuple(members))

    if kind is SpectrumKind.REGULAR:
        return _regular_spectrum(lat)

    if kind is SpectrumKind.PRIMITIVE:
        if pmtv_bounds is None:
            raise PmtvBoundsMissing("primitive spectrum needs (max_p, max_d) bounds")
        from .modules import enumerate_primitive

        return enumerate_primitive(lat, pmtv_bounds)

    ps = primes if primes is not None else prime_indices(lat)

    if kind is SpectrumKind.PRIME:
        return Spectrum(lat, kind, tuple(ps))

    if kind is SpectrumKind.MIN_PRIME:
        members = minimal_primes_over(lat, lat.trivial_index, ps)
        return Spectrum(lat, kind, tuple(sorted(members)),
                        provenance="minimal primes over the trivial subgroup")

    if kind is SpectrumKind.PRIMARY:
        return Spectrum(lat, kind, tuple(q for q in proper if is_primary(lat, q, ps)))

    if kind is SpectrumKind.RADICAL:
        return Spectrum(lat, kind, tuple(n for n in proper if is_radical_member(lat, n, ps)))

    if kind is SpectrumKind.STRONGLY_IRREDUCIBLE:
        return Spectrum(lat, kind, tuple(n for n in proper if is_strongly_irreducible(lat, n)))

    if kind is SpectrumKind.IRREDUCIBLE:
        return Spectrum(lat, kind, tuple(n for n in proper if is_irreducible(lat, n)))

    raise ValueError(f"unhandled kind {kind}")


def _regular_spectrum(lat: NormalLattice) -> Spectrum:
    group = lat.group
    if group.perms is None:
        raise RegRequiresPermGroup(
            f"{group.name} carries no permutation action; the regular spectrum is undefined"
        )
    degree = group.degree
    members = []
    for i in lat.proper_indices():
        if lat.card(i) != degree:
            continue
        idx = indices_from_mask(lat.mask(i))
        orbit = {int(group.perms[e][0]) for e in idx}
        if len(orbit) == degree:
            members.append(i)
    return Spectrum(lat, SpectrumKind.REGULAR, tuple(members),
                    provenance=f"regular on the natural degree-{degree} action")


# -- universal conditions over a spectrum ----------------------------------------------------


class MipResult(NamedTuple):
    holds: bool
    witness: Optional[tuple[int, int, int]]  # (n, n', s) member indices


def mip_holds(s: Spectrum) -> MipResult:
    """Meet-prime condition: n ∩ n' below a member forces n or n' below it.

    Pairs are scanned from the largest members down so the reported witness
    uses the coarsest failing pair.
    """
    lat = s.lattice
    order = sorted(range(lat.size), reverse=True)
    for a in order:
        for b in order:
            if b > a:
                continue
            meet = lat.meet(a, b)
            for t in s.members:
                if lat.contains(t, meet) and not (lat.contains(t, a) or lat.contains(t, b)):
                    return MipResult(False, (a, b, t))
    return MipResult(True, None)


class ContractionResult(NamedTuple):
    holds: bool
    witness: Optional[int]  # member index in the target group's spectrum


def contraction_closed(
    kind: SpectrumKind,
    hom,
    *,
    source_spectrum: Spectrum,
    target_spectrum: Spectrum,
) -> ContractionResult:
    """Whether preimages of the target group's spectrum stay in the source's.

    ``source_spectrum`` lives over the hom's source group and
    ``target_spectrum`` over its target group.
    """
    source_lat = source_spectrum.lattice
    source_members = set(source_spectrum.members)
    for j in target_spectrum.members:
        pre = hom.preimage_mask(target_spectrum.lattice.mask(j))
        idx = source_lat.index_of.get(pre)
        if idx is None or idx not in source_members:
            return ContractionResult(False, j)
    return ContractionResult(True, None)
