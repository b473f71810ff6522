"""Spectra of normal Cayley digraphs via the character formula.

For a connection set C that is a union of conjugacy classes, each irreducible
character chi contributes the eigenvalue (1/chi(1)) * sum of chi over C with
multiplicity chi(1)^2.  Eigenvalues are kept exact: a cyclotomic-integer
numerator paired with the degree divisor.  On top of the formula sit the two
equivalence checks: integrality against power closure of C, and membership in
a subfield against closure of C under the matching Galois power action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .characters import CharacterTable, InducedCharacter, induced_character_from_cyclic
from .cyclotomic import (
    CycInt,
    as_rational,
    embed,
    get_context,
    is_fixed_by,
    reduce_raw,
)
from .errors import InternalConsistencyError
from .galois import (
    GaloisConjugacyClasses,
    GaloisSubgroup,
    _power_closure_witness,
    galois_conjugacy_classes,
    is_union_of_galois_classes,
)
from .group_core import ClassData, Group

__all__ = [
    "ConnectionSet",
    "EigenValue",
    "IntegralityReport",
    "MembershipReport",
    "PowerConjugationCounts",
    "Spectrum",
    "SpectrumEntry",
    "all_eigenvalues_in_subfield",
    "all_eigenvalues_integral",
    "check_coefficient_symmetry",
    "check_integrality",
    "check_membership",
    "eigenvalues_via_characters",
    "make_connection_set",
    "power_conjugation_counts",
]


@dataclass(frozen=True)
class ConnectionSet:
    """A union of conjugacy classes, stored both as class indices and elements."""

    class_indices: tuple[int, ...]
    elements: tuple[int, ...]
    contains_identity: bool

    @property
    def size(self) -> int:
        return len(self.elements)


def make_connection_set(spec, group: Group, cd: ClassData) -> ConnectionSet:
    """Build a connection set from class indices, representatives or elements.

    Accepted forms: {"classes": [...]}, {"representatives": [...]},
    {"elements": [...]} or the string "all-nonidentity".  Explicit element
    lists must be unions of whole classes; the first broken class is named.
    """
    if spec == "all-nonidentity":
        return _from_classes(range(1, cd.k), cd)
    if isinstance(spec, dict):
        if "classes" in spec:
            idxs = spec["classes"]
            for j in idxs:
                if not 0 <= int(j) < cd.k:
                    raise ValueError(f"class index {j} out of range 0..{cd.k - 1}")
            return _from_classes((int(j) for j in idxs), cd)
        if "representatives" in spec:
            for g in spec["representatives"]:
                if not 0 <= int(g) < group.n:
                    raise ValueError(f"element {g} out of range 0..{group.n - 1}")
            return _from_classes((int(cd.class_of[int(g)]) for g in spec["representatives"]), cd)
        if "elements" in spec:
            elems = sorted({int(g) for g in spec["elements"]})
            for g in elems:
                if not 0 <= g < group.n:
                    raise ValueError(f"element {g} out of range 0..{group.n - 1}")
            chosen = set(elems)
            idxs = sorted({int(cd.class_of[g]) for g in elems})
            for j in idxs:
                missing = [x for x in cd.classes[j] if x not in chosen]
                if missing:
                    raise ValueError(
                        f"element list is not closed under conjugation: class {j} "
                        f"(representative {cd.representatives[j]}) is only partly included"
                    )
            return _from_classes(idxs, cd)
        raise ValueError("connection spec dict needs 'classes', 'representatives' or 'elements'")
    raise ValueError(f"cannot parse connection spec from {type(spec).__name__}")


def _from_classes(indices, cd: ClassData) -> ConnectionSet:
    idxs = tuple(sorted(set(int(j) for j in indices)))
    elements = tuple(sorted(x for j in idxs for x in cd.classes[j]))
    return ConnectionSet(
        class_indices=idxs,
        elements=elements,
        contains_identity=0 in idxs,
    )


@dataclass(frozen=True)
class EigenValue:
    """Exact eigenvalue: cyclotomic numerator over the character degree."""

    numerator: CycInt
    denominator: int

    def as_fraction(self) -> Optional[Fraction]:
        r = as_rational(self.numerator)
        if r is None:
            return None
        return Fraction(r, self.denominator)

    @property
    def is_rational(self) -> bool:
        return self.as_fraction() is not None

    def to_complex(self) -> complex:
        return self.numerator.to_complex() / self.denominator


@dataclass(frozen=True)
class SpectrumEntry:
    character: int
    degree: int
    multiplicity: int
    value: EigenValue


@dataclass(eq=False)
class Spectrum:
    """All eigenvalues of one Cayley digraph, in character-table order."""

    entries: tuple[SpectrumEntry, ...]
    group_order: int
    connection_size: int
    contains_identity: bool


def eigenvalues_via_characters(
    connection: ConnectionSet, table: CharacterTable, cd: ClassData
) -> Spectrum:
    """Evaluate the character formula for every irreducible character.

    The per-entry numerator is the plain character sum over C, the divisor is
    the degree.  Construction re-checks the exact trace identities, so a
    returned Spectrum is internally consistent.
    """
    ctx = get_context(table.m)
    n = sum(cd.sizes)
    entries = []
    for r, row in enumerate(table.values):
        acc = ctx.zero
        for j in connection.class_indices:
            acc = acc + row[j] * cd.sizes[j]
        d = table.degrees[r]
        entries.append(
            SpectrumEntry(
                character=r,
                degree=d,
                multiplicity=d * d,
                value=EigenValue(numerator=acc, denominator=d),
            )
        )
    spectrum = Spectrum(
        entries=tuple(entries),
        group_order=n,
        connection_size=connection.size,
        contains_identity=connection.contains_identity,
    )
    _check_spectrum_identities(spectrum, ctx)
    return spectrum


def _check_spectrum_identities(sp: Spectrum, ctx) -> None:
    if sum(e.multiplicity for e in sp.entries) != sp.group_order:
        raise InternalConsistencyError("multiplicities do not sum to the group order")
    triv = sp.entries[0].value.as_fraction()
    if triv != Fraction(sp.connection_size):
        raise InternalConsistencyError("trivial eigenvalue differs from |C|")
    trace = ctx.zero
    for e in sp.entries:
        trace = trace + e.value.numerator * e.degree
    expected = sp.group_order if sp.contains_identity else 0
    if as_rational(trace) != expected:
        raise InternalConsistencyError("trace identity fails")


def all_eigenvalues_integral(sp: Spectrum) -> bool:
    """Whether every eigenvalue is a rational integer (exact test)."""
    return _first_non_integral(sp) is None


def _first_non_integral(sp: Spectrum) -> Optional[int]:
    for e in sp.entries:
        f = e.value.as_fraction()
        if f is None:
            return e.character
        if f.denominator != 1:
            raise InternalConsistencyError(
                f"rational non-integer eigenvalue {f} for character {e.character}"
            )
    return None


def all_eigenvalues_in_subfield(sp: Spectrum, gamma: GaloisSubgroup) -> bool:
    """Whether every eigenvalue lies in the subfield fixed by gamma."""
    return _first_outside_subfield(sp, gamma) is None


def _first_outside_subfield(sp: Spectrum, gamma: GaloisSubgroup) -> Optional[int]:
    for e in sp.entries:
        if not is_fixed_by(e.value.numerator, gamma):
            return e.character
    return None


@dataclass(frozen=True)
class IntegralityReport:
    """Both sides of the integrality equivalence plus disagreement witnesses."""

    integral: bool
    power_closed: bool
    agree: bool
    offending_character: Optional[int] = None
    offending_power: Optional[tuple[int, int]] = None


def check_integrality(
    group: Group, cd: ClassData, connection: ConnectionSet, table: CharacterTable
) -> IntegralityReport:
    """Evaluate eigenvalue integrality and power closure independently."""
    sp = eigenvalues_via_characters(connection, table, cd)
    bad_char = _first_non_integral(sp)
    witness = _power_closure_witness(connection.elements, group)
    integral = bad_char is None
    closed = witness is None
    return IntegralityReport(
        integral=integral,
        power_closed=closed,
        agree=integral == closed,
        offending_character=bad_char,
        offending_power=witness,
    )


@dataclass(frozen=True)
class MembershipReport:
    """Both sides of the subfield-membership equivalence with witnesses."""

    in_subfield: bool
    class_closed: bool
    agree: bool
    offending_character: Optional[int] = None
    offending_class: Optional[int] = None


def check_membership(
    group: Group,
    cd: ClassData,
    connection: ConnectionSet,
    table: CharacterTable,
    gamma: GaloisSubgroup,
    merged: Optional[GaloisConjugacyClasses] = None,
) -> MembershipReport:
    """Evaluate subfield membership against Galois-class closure of C."""
    sp = eigenvalues_via_characters(connection, table, cd)
    bad_char = _first_outside_subfield(sp, gamma)
    if merged is None:
        merged = galois_conjugacy_classes(group, cd, gamma)
    elif merged.gamma.m != gamma.m or merged.gamma.elements != gamma.elements:
        raise ValueError("precomputed class merge does not belong to gamma")
    closed, bad_class = is_union_of_galois_classes(connection.class_indices, cd, merged)
    in_subfield = bad_char is None
    return MembershipReport(
        in_subfield=in_subfield,
        class_closed=closed,
        agree=in_subfield == closed,
        offending_character=bad_char,
        offending_class=bad_class,
    )


# ---------------------------------------------------------------------------
# conjugation counts into a cyclic subgroup


@dataclass(eq=False)
class PowerConjugationCounts:
    """Counts a_i of pairs (z, y) with z in C and y^-1 z y = x^i.

    weighted_sum is sum(a_i * eta^i) at conductor |x|, embedded at the group
    exponent; it equals |x| times the sum of the induced character over C.
    """

    base: int
    counts: tuple[int, ...]
    weighted_sum: CycInt


def power_conjugation_counts(
    x: int,
    connection: ConnectionSet,
    group: Group,
    cd: ClassData,
    induced: Optional[InducedCharacter] = None,
) -> PowerConjugationCounts:
    """Tally conjugations of C into <x> and verify the induced-sum identity."""
    n = group.n
    m = group.exponent
    o = int(group.orders[x])
    power_index = np.full(n, -1, dtype=np.int64)
    cur = 0
    for i in range(o):
        power_index[cur] = i
        cur = int(group.mul[cur, x])
    mul, inv = group.mul, group.inv
    all_y = np.arange(n)
    counts = np.zeros(o, dtype=np.int64)
    for z in connection.elements:
        conjugates = mul[mul[inv, z], all_y]  # y^-1 z y over all y
        hits = power_index[conjugates]
        hits = hits[hits >= 0]
        counts += np.bincount(hits, minlength=o)
    raw = [0] * m
    step = m // o
    for i, a in enumerate(counts):
        raw[i * step] += int(a)
    weighted = reduce_raw(raw, get_context(m))

    if induced is None:
        induced = induced_character_from_cyclic(x, group, cd)
    elif induced.base != x:
        raise ValueError(f"induced character was built for {induced.base}, not {x}")
    acc = get_context(m).zero
    for j in connection.class_indices:
        acc = acc + induced.values[j] * cd.sizes[j]
    if weighted != acc * o:
        raise InternalConsistencyError("conjugation counts disagree with the induced sum")

    return PowerConjugationCounts(
        base=x,
        counts=tuple(int(a) for a in counts),
        weighted_sum=weighted,
    )


def check_coefficient_symmetry(counts: PowerConjugationCounts, gamma: GaloisSubgroup) -> bool:
    """Whether a_i = a_(i*t mod |x|) for all i and every t in gamma.

    Expected to hold whenever the owning connection set is a union of
    gamma classes.
    """
    o = len(counts.counts)
    for t in gamma.elements:
        for i in range(o):
            if counts.counts[i] != counts.counts[(i * t) % o]:
                return False
    return True
