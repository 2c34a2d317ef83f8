"""Matrix-algebra helpers: block elements, sigma, real spans."""
import numpy as np
import pytest

from lkholonomy import classify as C
from lkholonomy.lie import (
    ABZCElement,
    MatrixAlgebra,
    in_real_span,
    real_span_basis,
    sigma_involution,
)


def _random_abzc(rng, n):
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    A = 0.5 * (A - A.conj().T)
    return ABZCElement(
        complex(rng.standard_normal(), rng.standard_normal()),
        A,
        rng.standard_normal(n) + 1j * rng.standard_normal(n),
        float(rng.standard_normal()),
    )


def test_abzc_roundtrip(rng):
    for n in (0, 1, 3):
        el = _random_abzc(rng, n)
        back = ABZCElement.from_matrix(el.to_matrix())
        assert abs(back.a - el.a) < 1e-12
        assert abs(back.c - el.c) < 1e-12
        if n:
            assert np.abs(back.A - el.A).max() < 1e-12
            assert np.abs(back.Z - el.Z).max() < 1e-12


def test_abzc_matrix_shape(rng):
    el = _random_abzc(rng, 2)
    m = el.to_matrix()
    assert m.shape == (4, 4)
    assert np.abs(m[1:, 0]).max() < 1e-15      # first column below diagonal
    assert np.abs(m[3, 1:3]).max() < 1e-15     # last row translation block
    assert abs(m[3, 3] + np.conj(m[0, 0])) < 1e-15


def test_sigma_involution(rng):
    for n in (0, 2):
        w = _random_abzc(rng, n).to_matrix()
        assert np.abs(sigma_involution(sigma_involution(w)) - w).max() < 1e-12
        fixed = w + sigma_involution(w)
        assert np.abs(sigma_involution(fixed) - fixed).max() < 1e-12


def test_sigma_rejects_bad_pattern():
    bad = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
    with pytest.raises(ValueError):
        sigma_involution(bad)


def test_real_span_basis_dimensions():
    a = np.array([[1.0, 0], [0, 0]], dtype=complex)
    b = np.array([[1j, 0], [0, 0]], dtype=complex)
    span = real_span_basis([a, b, a + b, 2.0 * a])
    assert len(span) == 2
    assert in_real_span(3 * a - b, span)
    assert not in_real_span(np.array([[0, 1.0], [0, 0]], complex), span)


def test_family_algebras_are_bracket_closed(suite):
    for d in suite:
        alg = C.build_family(d)
        assert alg.dim == C.family_dim(d)
        for x in alg.basis:
            for y in alg.basis:
                w = x @ y - y @ x
                assert in_real_span(w, alg.basis), d.family
