"""Family constructors and the matcher: build -> match round trips."""
import numpy as np
import pytest

from lkholonomy import classify as C
from lkholonomy import geometry as G
from lkholonomy import potentials as P


def test_build_match_roundtrip_algebra_only(suite):
    for d in suite:
        alg = C.build_family(d)
        got = C.match_algebra(alg)
        assert C.same_descriptor(got, d), (d.family, getattr(got, "reason", ""))


def test_n0_matches():
    tags = [("G0", None), ("G1", None), ("G2", None), ("G3", 1.0), ("G3", 0.0)]
    for fam, gamma in tags:
        d = {"G0": C.G0Descriptor(), "G1": C.G1Descriptor(),
             "G2": C.G2Descriptor()}.get(fam)
        if d is None:
            d = C.G3Descriptor(gamma=gamma)
        alg = C.build_family(d)
        got = C.match_algebra(alg)
        assert C.same_descriptor(got, d), fam


def test_same_descriptor_distinguishes():
    d1 = C.GKLDescriptor(2, 0, [])
    d2 = C.GKLDescriptor(2, 1, [])
    assert not C.same_descriptor(d1, d2)
    assert C.same_descriptor(d1, C.GKLDescriptor(2, 0, []))


def test_family_dim_equals_algebra_dim(suite):
    for d in suite:
        assert C.family_dim(d) == C.build_family(d).dim


def test_realizability_gate():
    d_ok = C.GKDescriptor(1, [(1.0, np.zeros((1, 1), complex))])
    assert C.is_holonomy_realizable(d_ok) == "yes"
    from lkholonomy.hermitian import RealFormData
    d_berger = C.BergerGKDescriptor(
        2, 0, [(0.0, 1.0, np.zeros((0, 0), complex))],
        real_form=RealFormData.from_lambdas([0.5], 2))
    assert C.is_holonomy_realizable(d_berger) == "berger_only"


def test_match_rejects_garbage():
    from lkholonomy.lie import MatrixAlgebra
    # not weakly irreducible: no c-line present
    alg = MatrixAlgebra(1, [np.diag([1j, 0, -1j])])
    got = C.match_algebra(alg)
    assert got.family == "UNKNOWN"


def test_gamma_normalization():
    assert C._normalize_gamma(2.0) == C._normalize_gamma(1.0)
    assert C._normalize_gamma(2j) == C._normalize_gamma(1j)
    assert C._normalize_gamma(0.0) == 0.0
