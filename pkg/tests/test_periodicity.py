import math

import numpy as np
import pytest

from owalk import build_graph, decompose, eigenvalue_support, is_periodic, verify_period
from owalk.errors import DisconnectedGraphError
from owalk.spectral import propagator_column


def _cert(sd, v):
    return is_periodic(sd, eigenvalue_support(sd, v))


def test_k3_certificate(k3_sd):
    cert = _cert(k3_sd, 0)
    assert cert is not None
    assert cert.delta == 3
    assert cert.g == 1
    assert cert.phase == 1
    assert abs(cert.sigma - 2 * math.pi / math.sqrt(3)) < 1e-12
    assert cert.zero_in_support
    assert sorted(cert.b_coeffs.values()) == [1, 1]


def test_single_edge_certificate(single_edge_sd):
    cert = _cert(single_edge_sd, 0)
    assert cert is not None
    assert cert.delta == 1
    assert cert.g == 1
    assert cert.phase == -1  # no zero eigenvalue, all b odd
    assert abs(cert.sigma - math.pi) < 1e-12
    assert not cert.zero_in_support


def test_irrational5_certificate(irrational5_sd):
    cert = _cert(irrational5_sd, 3)
    assert cert is not None
    assert cert.delta == 7
    assert cert.g == 1
    assert cert.phase == 1
    assert abs(cert.sigma - 2 * math.pi / math.sqrt(7)) < 1e-12
    assert cert.zero_in_support


def test_mst8_certificate(mst8_sd):
    cert = _cert(mst8_sd, 0)
    assert cert is not None
    assert cert.delta == 1
    assert sorted(cert.b_coeffs.values()) == [2, 2, 4, 4]
    assert cert.g == 2
    assert cert.phase == 1  # zero lies in the support
    assert abs(cert.sigma - math.pi) < 1e-12
    assert cert.zero_in_support


def test_p4_not_periodic(p4_sd):
    for v in range(4):
        assert _cert(p4_sd, v) is None


def test_verify_period_builtin(k3_sd, irrational5_sd, mst8_sd, single_edge_sd):
    for sd in (k3_sd, irrational5_sd, mst8_sd, single_edge_sd):
        cert = _cert(sd, 0)
        assert verify_period(sd, cert)


def test_verify_period_rejects_wrong_sigma(k3_sd):
    from dataclasses import replace

    cert = _cert(k3_sd, 0)
    assert not verify_period(k3_sd, replace(cert, sigma=cert.sigma * 0.9))
    assert not verify_period(k3_sd, replace(cert, phase=-cert.phase))
    # half the true period is not a period either
    assert not verify_period(k3_sd, replace(cert, sigma=cert.sigma / 2))


def test_period_phase_repeats(k3_sd, single_edge_sd, mst8_sd):
    # U(k sigma) e_a = phase^k e_a
    for sd in (k3_sd, single_edge_sd, mst8_sd):
        cert = _cert(sd, 0)
        basis = np.zeros(sd.n)
        basis[0] = 1.0
        for k in range(1, 5):
            col = propagator_column(sd, 0, k * cert.sigma)
            assert np.linalg.norm(col - (cert.phase**k) * basis) < 1e-7


def test_minimality_against_scan(k3_sd, mst8_sd):
    # no return to +-e_0 strictly inside (0, sigma)
    for sd in (k3_sd, mst8_sd):
        cert = _cert(sd, 0)
        for t in np.linspace(0.05 * cert.sigma, 0.95 * cert.sigma, 121):
            col = propagator_column(sd, 0, float(t))
            basis = np.zeros(sd.n)
            basis[0] = 1.0
            assert np.linalg.norm(col - basis) > 1e-3
            assert np.linalg.norm(col + basis) > 1e-3


def test_star_center_phase_minus_one():
    # star 0 -> {1, 2, 3}: y = +-sqrt3, kernel avoids the center, so the
    # center has no zero in its support and odd b gives phase -1
    sd = decompose(build_graph(4, [(0, 1), (0, 2), (0, 3)]))
    cert = _cert(sd, 0)
    assert cert is not None
    assert cert.delta == 3
    assert cert.g == 1
    assert cert.phase == -1
    assert not cert.zero_in_support
    assert abs(cert.sigma - math.pi / math.sqrt(3)) < 1e-12
    assert verify_period(sd, cert)


def test_even_b_with_zero_support():
    # alternating 4-cycle 0 -> 1 <- 2 -> 3 <- 0: y in {-2, 0, 2}, b = 2
    sd = decompose(build_graph(4, [(0, 1), (2, 1), (2, 3), (0, 3)]))
    cert = is_periodic(sd, eigenvalue_support(sd, 0))
    assert cert is not None
    assert cert.delta == 1
    assert cert.g == 2
    assert cert.phase == 1
    assert cert.zero_in_support
    assert abs(cert.sigma - math.pi) < 1e-12
    assert verify_period(sd, cert)


def test_disconnected_graph_rejected():
    g = build_graph(4, [(0, 1), (2, 3)])
    sd = decompose(g)
    with pytest.raises(DisconnectedGraphError):
        is_periodic(sd, eigenvalue_support(sd, 0))
