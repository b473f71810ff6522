import dataclasses

import numpy as np
import pytest

from cayley_spectra import (
    GroupSpec,
    adjacency_matrix,
    build_group,
    compare_spectra,
    conjugacy_classes,
    dixon_character_table,
    eigenvalues_via_characters,
    integer_charpoly,
    make_connection_set,
    oracle_power_closed,
    oracle_spectrum,
    verify_spectrum_exact,
)


def _bundle(text):
    g = build_group(GroupSpec.from_json(text))
    cd = conjugacy_classes(g)
    return g, cd, dixon_character_table(g, cd)


def test_adjacency_from_definition():
    g, cd, _ = _bundle("symmetric(3)")
    conn = make_connection_set({"classes": [1]}, g, cd)
    adj = adjacency_matrix(g, conn.elements)
    chosen = set(conn.elements)
    for a in range(g.n):
        for b in range(g.n):
            arc = int(g.mul[a, g.inv[b]]) in chosen
            assert adj[a, b] == (1 if arc else 0)


def test_adjacency_row_sums_equal_connection_size():
    g, cd, _ = _bundle("dihedral(5)")
    conn = make_connection_set("all-nonidentity", g, cd)
    adj = adjacency_matrix(g, conn.elements)
    assert (adj.sum(axis=0) == conn.size).all()
    assert (adj.sum(axis=1) == conn.size).all()


def test_adjacency_cap():
    g = build_group(GroupSpec.named("symmetric", 5))
    with pytest.raises(ValueError, match="cap"):
        adjacency_matrix(g, [1], cap=100)


def test_integer_charpoly_known_polynomials():
    # complete graph on 4 vertices: (x - 3)(x + 1)^3
    g, cd, _ = _bundle("cyclic(4)")
    conn = make_connection_set("all-nonidentity", g, cd)
    adj = adjacency_matrix(g, conn.elements)
    assert integer_charpoly(adj) == (-3, -8, -6, 0, 1)
    # directed 5-cycle: x^5 - 1
    g, cd, _ = _bundle("cyclic(5)")
    conn = make_connection_set({"classes": [1]}, g, cd)
    adj = adjacency_matrix(g, conn.elements)
    assert integer_charpoly(adj) == (-1, 0, 0, 0, 0, 1)
    # zero matrix: x^n
    assert integer_charpoly(np.zeros((3, 3), dtype=np.int64)) == (0, 0, 0, 1)


def test_integer_charpoly_against_numpy_on_random_matrices():
    rng = np.random.default_rng(7)
    for _ in range(12):
        n = int(rng.integers(1, 7))
        mat = rng.integers(-3, 4, size=(n, n))
        exact = integer_charpoly(mat)
        approx = np.poly(mat.astype(float))[::-1]
        assert np.allclose([float(c) for c in exact], approx, atol=1e-6)


def test_exact_verification_accepts_true_spectra():
    for text in ("symmetric(4)", "quaternion(8)", "dihedral(6)"):
        g, cd, table = _bundle(text)
        conn = make_connection_set("all-nonidentity", g, cd)
        sp = eigenvalues_via_characters(conn, table, cd)
        adj = adjacency_matrix(g, conn.elements)
        report = verify_spectrum_exact(sp, adj)
        assert report.passed
        assert report.degree == g.n
        assert report.mismatch_power is None


def test_exact_verification_rejects_tampered_spectrum():
    g, cd, table = _bundle("symmetric(3)")
    conn = make_connection_set({"classes": [1]}, g, cd)
    sp = eigenvalues_via_characters(conn, table, cd)
    adj = adjacency_matrix(g, conn.elements)
    entries = list(sp.entries)
    swapped = dataclasses.replace(
        entries[2], value=entries[0].value, degree=entries[0].degree
    )
    tampered = dataclasses.replace(sp, entries=(entries[0], entries[1], swapped))
    report = verify_spectrum_exact(tampered, adj)
    assert not report.passed
    assert report.mismatch_power is not None


def test_compare_spectra_handles_conjugate_pairs():
    # the 5th roots of unity: conjugate pairs share a real part exactly,
    # which defeats naive lexicographic pairing of noisy floats
    g, cd, table = _bundle("cyclic(5)")
    conn = make_connection_set({"classes": [1]}, g, cd)
    sp = eigenvalues_via_characters(conn, table, cd)
    adj = adjacency_matrix(g, conn.elements)
    res = compare_spectra(sp, oracle_spectrum(adj))
    assert res.passed
    assert res.max_distance < 1e-10
    assert res.size == 5


def test_compare_spectra_flags_perturbation():
    g, cd, table = _bundle("symmetric(3)")
    conn = make_connection_set({"classes": [1]}, g, cd)
    sp = eigenvalues_via_characters(conn, table, cd)
    numeric = list(oracle_spectrum(adjacency_matrix(g, conn.elements)))
    numeric[0] += 1e-4
    res = compare_spectra(sp, numeric, tolerance=1e-8)
    assert not res.passed
    assert res.worst_index is not None
    assert res.max_distance > 1e-5


def test_compare_spectra_size_mismatch():
    g, cd, table = _bundle("symmetric(3)")
    conn = make_connection_set({"classes": [1]}, g, cd)
    sp = eigenvalues_via_characters(conn, table, cd)
    with pytest.raises(ValueError, match="size mismatch"):
        compare_spectra(sp, [0.0, 1.0])


def test_oracle_power_closed():
    g = build_group(GroupSpec.named("cyclic", 6))
    assert not oracle_power_closed({1}, g)
    assert oracle_power_closed({1, 5}, g)
    assert oracle_power_closed({0}, g)
    assert oracle_power_closed(set(), g)
    # every single conjugacy class of the quaternion group is power closed:
    # x and x^-1 are always conjugate there
    from cayley_spectra import is_power_closed

    q8 = build_group(GroupSpec.named("quaternion", 8))
    cd = conjugacy_classes(q8)
    for j in range(cd.k):
        members = set(cd.classes[j])
        assert oracle_power_closed(members, q8)
        assert is_power_closed(members, q8)


def test_float_oracle_matches_characters_on_sample(corpus):
    for text in ("dihedral(8)", "alternating(5)", "product(cyclic(3),cyclic(3))"):
        group, cd, table = corpus[text]
        conn = make_connection_set("all-nonidentity", group, cd)
        sp = eigenvalues_via_characters(conn, table, cd)
        adj = adjacency_matrix(group, conn.elements)
        assert compare_spectra(sp, oracle_spectrum(adj)).passed
