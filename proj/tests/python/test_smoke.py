"""Smoke tests for the native module: a few known values per exposed call."""

import os
import sys

sys.path.insert(0, os.environ.get("EXTNFS_MODULE_DIR", "build/python"))

import _extnfs as ext  # noqa: E402


def test_roots_mod():
    assert ext.roots_mod([1, 0, 1], 5) == [2, 3]
    assert ext.roots_mod([1, 0, 1], 7) == []
    assert ext.roots_mod([1, -1, 1], 7) == [3, 5]


def test_irreducibility():
    assert ext.is_irreducible_mod([1, -1, 1], 5)
    assert not ext.is_irreducible_mod([1, -1, 1], 7)
    assert ext.irreducible_over_q([1, 0, 0, 0, 1])  # x^4 + 1
    assert not ext.irreducible_over_q([1, 2, 1])


def test_resultant():
    assert ext.resultant([-2, 1], [-3, 1]) == -1
    assert ext.resultant([1, 0, 1], [0, 1]) == 1


def test_unit_rank():
    assert ext.unit_rank([1, 0, 1]) == 0
    assert ext.count_real_roots([-2, 0, 0, 0, 1]) == 2


def test_cross4():
    assert ext.cross4([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]) == [0, 0, 0, 1]
    n = ext.cross4([3, -1, 2, 7], [0, 4, 4, -2], [5, 1, 0, 3])
    u = [3, -1, 2, 7]
    assert sum(a * b for a, b in zip(n, u)) == 0


def test_lll_preserves_determinant():
    cols = [[11, 0, 0, 0], [-3, 1, 0, 0], [-5, 0, 1, 0], [0, -5, 0, 1]]
    red = ext.lll_reduce(cols)

    def det4(m):
        import itertools

        rows = [[m[c][r] for c in range(4)] for r in range(4)]
        total = 0
        for perm in itertools.permutations(range(4)):
            sign = 1
            seen = list(perm)
            for i in range(4):
                for j in range(i + 1, 4):
                    if seen[i] > seen[j]:
                        sign = -sign
            term = 1
            for i in range(4):
                term *= rows[i][perm[i]]
            total += sign * term
        return total

    assert abs(det4(red)) == 11


def test_smooth_factor():
    assert ext.smooth_factor(15360, 7) == [(2, 10), (3, 1), (5, 1)]
    assert ext.smooth_factor(202, 97) == "exceeds-bound"
    assert ext.is_prime(2**61 - 1)


def test_enumerate_box_counts():
    identity = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert len(ext.enumerate_box(identity, 2)) == 256
    doubled = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]
    assert len(ext.enumerate_box(doubled, 2)) == 16


def test_subspace_intersects_box():
    assert ext.subspace_intersects_box([0, 0, 0, 1], [0, 0, 0, 0], 2)
    assert not ext.subspace_intersects_box([0, 0, 0, 1], [0, 0, 0, 5], 2)


def test_record_verification():
    fixture = os.environ.get("EXTNFS_RECORD_FIXTURE", "data/record_fp4_512.txt")
    rep = ext.verify_paper_record(fixture)
    assert rep["all_pass"]
    assert rep["verification_identity"]
