"""The QFL_TOLERANCE_SCALE environment variable rescales every tolerance."""

import numpy as np
import pytest

import povmkit as pk
from povmkit.config import tol
from povmkit.errors import BadCompleteness


def test_default_scale_is_one(monkeypatch):
    monkeypatch.delenv("QFL_TOLERANCE_SCALE", raising=False)
    assert tol("completeness") == 1e-9


def test_scale_is_read_at_call_time(monkeypatch):
    monkeypatch.setenv("QFL_TOLERANCE_SCALE", "10")
    assert tol("completeness") == 1e-8
    monkeypatch.setenv("QFL_TOLERANCE_SCALE", "0.5")
    assert tol("completeness") == 0.5e-9


def test_scaling_loosens_povm_validation(monkeypatch):
    # misses the identity by ~2.8e-8 in Frobenius norm
    effects = [pk.Effect(np.eye(2) * (0.5 - 1e-8))] * 2
    monkeypatch.delenv("QFL_TOLERANCE_SCALE", raising=False)
    with pytest.raises(BadCompleteness):
        pk.validate_povm(effects)
    monkeypatch.setenv("QFL_TOLERANCE_SCALE", "100")
    assert pk.validate_povm(effects).dim == 2
