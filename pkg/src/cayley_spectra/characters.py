"""Exact complex character tables of finite groups.

The table is computed modulo a split prime: class-sum structure constants
give a family of commuting matrices whose simultaneous eigenvectors are the
central characters mod p; degrees come out of the orthogonality relation and
the actual cyclotomic values are recovered through a discrete Fourier
inversion over the power classes of each representative.  Every table is
validated against the exact orthogonality relations before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional, Sequence

import numpy as np

from . import _modp
from .cyclotomic import (
    CycInt,
    as_rational,
    conjugate,
    divide_exact,
    embed,
    galois_apply,
    get_context,
    reduce_raw,
)
from .errors import InternalConsistencyError
from .group_core import ClassData, Group

__all__ = [
    "CharacterTable",
    "ClassMatrices",
    "InducedCharacter",
    "character_multiplicities",
    "class_matrices",
    "dixon_character_table",
    "induced_character_from_cyclic",
    "verify_galois_character_identity",
]


@dataclass(eq=False)
class ClassMatrices:
    """Structure constants of the class sums.

    c[i, j, l] counts pairs (a, b) with a in class i, b in class j and
    a*b equal to the representative of class l.
    """

    k: int
    sizes: tuple[int, ...]
    c: np.ndarray  # shape (k, k, k), int64


def class_matrices(group: Group, cd: ClassData) -> ClassMatrices:
    """Count products landing on each class representative, by direct enumeration."""
    n = group.n
    k = cd.k
    c = np.zeros((k, k, k), dtype=np.int64)
    a_cls = cd.class_of
    for l, g in enumerate(cd.representatives):
        b = group.mul[group.inv, g]  # b[a] = a^-1 * g_l, so a * b[a] = g_l
        np.add.at(c[:, :, l], (a_cls, a_cls[b]), 1)
    return ClassMatrices(k=k, sizes=cd.sizes, c=c)


@dataclass(eq=False)
class CharacterTable:
    """Irreducible character values as cyclotomic integers at conductor m.

    Rows are sorted with the trivial character first, then by degree and
    lexicographically by reduced value vectors.  values[r][j] is the value of
    character r on the representative of class j.
    """

    m: int
    degrees: tuple[int, ...]
    values: tuple[tuple[CycInt, ...], ...]
    prime: int

    @property
    def k(self) -> int:
        return len(self.degrees)


def _least_dixon_prime(n: int, m: int) -> int:
    ceil_sqrt = isqrt(n)
    if ceil_sqrt * ceil_sqrt < n:
        ceil_sqrt += 1
    lower = 2 * ceil_sqrt
    cand = m + 1
    while cand <= lower or not _is_prime(cand):
        cand += m
    return cand


def _is_prime(x: int) -> bool:
    if x < 2:
        return False
    if x % 2 == 0:
        return x == 2
    f = 3
    while f * f <= x:
        if x % f == 0:
            return False
        f += 2
    return True


def _prime_factors(x: int) -> list[int]:
    out = []
    f = 2
    while f * f <= x:
        if x % f == 0:
            out.append(f)
            while x % f == 0:
                x //= f
        f += 1
    if x > 1:
        out.append(x)
    return out


def _element_of_order(m: int, p: int) -> int:
    if m == 1:
        return 1
    facs = _prime_factors(m)
    for c in range(2, p):
        z = pow(c, (p - 1) // m, p)
        if all(pow(z, m // q, p) != 1 for q in facs):
            return z
    raise InternalConsistencyError(f"no element of order {m} in F_{p}")


def _common_eigenrows(mats: list[list[list[int]]], p: int) -> list[list[int]]:
    """Split F_p^k into common one-dimensional eigenspaces of commuting matrices."""
    k = len(mats[0])
    spaces: list[tuple[list[list[int]], list[int]]] = [
        ([[1 if i == j else 0 for j in range(k)] for i in range(k)], list(range(k)))
    ]
    for mat in mats:
        right = _modp.transpose(mat)  # row vectors act by v -> v . mat^T
        nxt: list[tuple[list[list[int]], list[int]]] = []
        for basis, pivots in spaces:
            r = len(basis)
            if r == 1:
                nxt.append((basis, pivots))
                continue
            image = _modp.mat_mul(basis, right, p)
            restricted = [[image[i][c] for c in pivots] for i in range(r)]
            roots = _modp.poly_roots(_modp.charpoly(restricted, p), p)
            covered = 0
            for lam in roots:
                shifted = [
                    [(x - (lam if i == j else 0)) % p for j, x in enumerate(row)]
                    for i, row in enumerate(restricted)
                ]
                left_null = _modp.nullspace(_modp.transpose(shifted), p)
                if not left_null:
                    raise InternalConsistencyError("eigenvalue with empty eigenspace")
                sub_basis, sub_pivots = _modp.rref(_modp.mat_mul(left_null, basis, p), p)
                covered += len(sub_basis)
                nxt.append((sub_basis, sub_pivots))
            if covered != r:
                raise InternalConsistencyError("class algebra failed to split over F_p")
        spaces = nxt
        if all(len(b) == 1 for b, _ in spaces):
            break
    if len(spaces) != k or any(len(b) != 1 for b, _ in spaces):
        raise InternalConsistencyError("expected one common eigenvector per class")
    return [b[0] for b, _ in spaces]


def dixon_character_table(group: Group, cd: ClassData, cm: Optional[ClassMatrices] = None) -> CharacterTable:
    """Compute the full character table exactly; hard error if validation fails."""
    if cm is None:
        cm = class_matrices(group, cd)
    n = group.n
    k = cd.k
    m = group.exponent
    p = _least_dixon_prime(n, m)
    z = _element_of_order(m, p)
    mats = [[[int(x) % p for x in row] for row in cm.c[i]] for i in range(k)]
    rows = _common_eigenrows(mats, p)

    sizes = cd.sizes
    inv_sizes = [pow(s % p, p - 2, p) for s in sizes]
    sqrt_cap = isqrt(n)
    characters = []
    for v in rows:
        v0 = v[0] % p
        if v0 == 0:
            raise InternalConsistencyError("eigenvector vanishes on the identity class")
        scale = pow(v0, p - 2, p)
        omega = [x * scale % p for x in v]
        denom = sum(omega[j] * omega[cd.inverse_class[j]] % p * inv_sizes[j] for j in range(k)) % p
        if denom == 0:
            raise InternalConsistencyError("degenerate norm in degree recovery")
        d_sq = n % p * pow(denom, p - 2, p) % p
        degree = next((d for d in range(1, sqrt_cap + 1) if d * d % p == d_sq), None)
        if degree is None:
            raise InternalConsistencyError("no admissible degree lift")
        chi_p = [degree * omega[j] % p * inv_sizes[j] % p for j in range(k)]
        values = _lift_character(chi_p, degree, cd, group, m, p, z)
        characters.append((degree, values))

    ctx = get_context(m)
    trivial_row = tuple(ctx.one for _ in range(k))
    ordered = _sort_characters(characters, trivial_row)
    degrees = tuple(d for d, _ in ordered)
    values = tuple(vals for _, vals in ordered)
    table = CharacterTable(m=m, degrees=degrees, values=values, prime=p)
    _validate_table(table, cd, n)
    return table


def _lift_character(
    chi_p: Sequence[int],
    degree: int,
    cd: ClassData,
    group: Group,
    m: int,
    p: int,
    z: int,
) -> tuple[CycInt, ...]:
    """Recover exact values from mod-p ones by Fourier inversion over power classes."""
    ctx = get_context(m)
    values = []
    for j, rep in enumerate(cd.representatives):
        o = int(group.orders[rep])
        zeta_inv = pow(pow(z, m // o, p), p - 2, p)
        inv_o = pow(o % p, p - 2, p)
        raw = [0] * m
        for l in range(o):
            s = 0
            for i in range(o):
                s += chi_p[int(cd.power_class[j, i])] * pow(zeta_inv, i * l, p)
            mult = s % p * inv_o % p
            if mult > degree:
                raise InternalConsistencyError(
                    f"root-of-unity multiplicity {mult} exceeds degree {degree}"
                )
            raw[l * (m // o)] += mult
        values.append(reduce_raw(raw, ctx))
    return tuple(values)


def _sort_characters(characters, trivial_row):
    """Trivial character first, the rest by degree then value vectors."""
    trivial = None
    rest = []
    for degree, vals in characters:
        if degree == 1 and vals == trivial_row and trivial is None:
            trivial = (degree, vals)
        else:
            rest.append((degree, vals))
    if trivial is None:
        raise InternalConsistencyError("trivial character missing from table")
    rest.sort(key=lambda dv: (dv[0], tuple(v.coeffs for v in dv[1])))
    return [trivial] + rest


def _validate_table(table: CharacterTable, cd: ClassData, n: int) -> None:
    k = table.k
    if sum(d * d for d in table.degrees) != n:
        raise InternalConsistencyError("degree squares do not sum to the group order")
    sizes = cd.sizes
    ctx = get_context(table.m)
    conj_rows = [tuple(conjugate(v) for v in row) for row in table.values]
    for r in range(k):
        for s in range(k):
            acc = ctx.zero
            for j in range(k):
                acc = acc + table.values[r][j] * conj_rows[s][j] * sizes[j]
            expected = n if r == s else 0
            if as_rational(acc) != expected:
                raise InternalConsistencyError(f"row orthogonality fails at ({r},{s})")
    for i in range(k):
        for j in range(k):
            acc = ctx.zero
            for r in range(k):
                acc = acc + table.values[r][i] * conj_rows[r][j]
            expected = n // sizes[i] if i == j else 0
            if as_rational(acc) != expected:
                raise InternalConsistencyError(f"column orthogonality fails at ({i},{j})")


def verify_orthogonality(table: CharacterTable, cd: ClassData, group_order: int) -> bool:
    """Exact row and column orthogonality plus the degree-square sum."""
    try:
        _validate_table(table, cd, group_order)
    except InternalConsistencyError:
        return False
    return True


def verify_galois_character_identity(
    table: CharacterTable, cd: ClassData, gamma
) -> bool:
    """Check that applying z -> z^t to values matches evaluating on t-th powers."""
    m = table.m
    for t in gamma.elements:
        if gcd(t, m) != 1:
            raise ValueError(f"exponent {t} not coprime to conductor {m}")
        for row in table.values:
            for j in range(cd.k):
                if galois_apply(t, row[j]) != row[int(cd.power_class[j, t % m])]:
                    return False
    return True


# ---------------------------------------------------------------------------
# induced characters from cyclic subgroups


@dataclass(eq=False)
class InducedCharacter:
    """Character induced from a faithful linear character of <x>."""

    base: int
    values: tuple[CycInt, ...]  # one per conjugacy class, conductor = group exponent

    @property
    def degree(self) -> int:
        d = as_rational(self.values[0])
        if d is None:
            raise InternalConsistencyError("induced degree is not rational")
        return d


def induced_character_from_cyclic(x: int, group: Group, cd: ClassData) -> InducedCharacter:
    """Induce z -> z^i on <x> up to the whole group, by direct enumeration."""
    n = group.n
    m = group.exponent
    o = int(group.orders[x])
    powers = [0] * o
    cur = 0
    for i in range(o):
        powers[i] = cur
        cur = int(group.mul[cur, x])
    power_index = {g: i for i, g in enumerate(powers)}
    octx = get_context(o)
    mul, inv = group.mul, group.inv
    values = []
    for rep in cd.representatives:
        counts = [0] * o
        col = mul[mul[inv, rep], np.arange(n)]  # y^-1 * rep * y over all y
        for y in range(n):
            i = power_index.get(int(col[y]))
            if i is not None:
                counts[i] += 1
        total = divide_exact(reduce_raw(counts, octx), o)
        values.append(embed(total, m))
    return InducedCharacter(base=x, values=tuple(values))


def character_multiplicities(
    values: Sequence[CycInt], table: CharacterTable, cd: ClassData
) -> tuple[int, ...]:
    """Inner products of a class function with each irreducible character.

    The function must decompose integrally; a fractional or irrational inner
    product is reported as a hard error.
    """
    n = sum(cd.sizes)
    out = []
    for row in table.values:
        acc = get_context(table.m).zero
        for j, v in enumerate(values):
            acc = acc + v * conjugate(row[j]) * cd.sizes[j]
        r = as_rational(acc)
        if r is None or r % n:
            raise InternalConsistencyError("class function does not decompose integrally")
        out.append(r // n)
    return tuple(out)
