import pytest

from cayley_spectra import (
    GroupSpec,
    build_group,
    conjugacy_classes,
    dixon_character_table,
)

CORPUS = [
    "cyclic(1)",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "cyclic(7)",
    "cyclic(8)",
    "cyclic(9)",
    "cyclic(10)",
    "cyclic(11)",
    "cyclic(12)",
    "dihedral(2)",
    "dihedral(3)",
    "dihedral(4)",
    "dihedral(5)",
    "dihedral(6)",
    "dihedral(7)",
    "dihedral(8)",
    "symmetric(3)",
    "symmetric(4)",
    "alternating(4)",
    "alternating(5)",
    "quaternion(8)",
    "generalized-quaternion(16)",
    "product(cyclic(2),cyclic(4))",
    "product(cyclic(3),cyclic(3))",
    "product(symmetric(3),cyclic(2))",
]


def nonidentity_subsets(cd):
    """All 2^(k-1) subsets of non-identity class indices, bitmask order."""
    rest = range(1, cd.k)
    for mask in range(1 << (cd.k - 1)):
        yield tuple(j for i, j in enumerate(rest) if mask >> i & 1)


@pytest.fixture(scope="session")
def corpus():
    """spec string -> (group, class data, character table) for every corpus group."""
    out = {}
    for text in CORPUS:
        group = build_group(GroupSpec.from_json(text))
        cd = conjugacy_classes(group)
        out[text] = (group, cd, dixon_character_table(group, cd))
    return out
