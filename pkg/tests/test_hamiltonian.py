"""Structure of the assembled 8x8 matrix."""

import math

import numpy as np
import pytest

from ohcross.hamiltonian import (angular_coupling, assemble, build_blocks,
                                 build_hamiltonian, format_matrix)
from ohcross.model import ScaledParameters


def params(b=1.0, e=1.0, theta=0.5):
    return ScaledParameters(b_tilde=b, e_tilde=e, delta_tilde=8.335, theta=theta)


def test_angular_coupling_rows():
    theta = 0.7
    c, s = math.cos(theta), math.sin(theta)
    m = angular_coupling(theta)
    expected = np.array([
        [-3.0 * c, math.sqrt(3.0) * s, 0.0, 0.0],
        [math.sqrt(3.0) * s, -c, 2.0 * s, 0.0],
        [0.0, 2.0 * s, c, math.sqrt(3.0) * s],
        [0.0, 0.0, math.sqrt(3.0) * s, 3.0 * c],
    ])
    assert np.array_equal(m, expected)


def test_angular_coupling_is_read_only():
    m = angular_coupling(0.3)
    with pytest.raises(ValueError):
        m[0, 0] = 1.0


def test_block_contents():
    p = params(b=2.0, e=3.0, theta=0.0)
    blocks = build_blocks(p)
    assert np.array_equal(blocks.a1, 0.2 * np.diag([-3.0, -1.0, 1.0, 3.0]))
    assert np.array_equal(blocks.a2, (8.335 / 10.0) * np.eye(4))
    assert np.array_equal(blocks.c, 0.3 * angular_coupling(0.0))


def test_assembled_layout():
    p = params(b=2.0, e=3.0, theta=1.1)
    blocks = build_blocks(p)
    h = assemble(blocks)
    assert h.shape == (8, 8)
    assert np.array_equal(h[:4, :4], blocks.a1 - blocks.a2)
    assert np.array_equal(h[4:, 4:], blocks.a1 + blocks.a2)
    assert np.array_equal(h[:4, 4:], -blocks.c)
    assert np.array_equal(h[4:, :4], -blocks.c)


def test_hamiltonian_exactly_symmetric():
    rng = np.random.default_rng(42)
    for _ in range(25):
        p = params(b=float(rng.uniform(-20, 20)),
                   e=float(rng.uniform(0, 10)),
                   theta=float(rng.uniform(0, math.pi)))
        h = build_hamiltonian(p)
        assert np.array_equal(h, h.T)
        with pytest.raises(ValueError):
            h[1, 2] = 9.9


def test_zero_fields_give_pure_splitting():
    h = build_hamiltonian(params(b=0.0, e=0.0))
    half = 8.335 / 10.0
    assert np.array_equal(h[:4, :4], -half * np.eye(4))
    assert np.array_equal(h[4:, 4:], half * np.eye(4))
    assert not h[:4, 4:].any()


def test_trace_is_zero():
    p = params(b=3.7, e=2.1, theta=0.9)
    assert build_hamiltonian(p).trace() == pytest.approx(0.0, abs=1e-14)


def test_format_matrix_layout():
    text = format_matrix(build_hamiltonian(params(b=1.0, e=0.0, theta=0.0)))
    lines = text.splitlines()
    assert len(lines) == 8
    assert all(len(line.split()) == 8 for line in lines)
    assert text.endswith("\n")
    # no negative zeros in the dump
    assert "-0 " not in text and not text.endswith("-0\n")
    first = [float(v) for v in lines[0].split()]
    assert first[0] == pytest.approx(-0.3 - 0.8335, rel=1e-12)
