import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tricoin import (
    LatticeSpec,
    WalkState,
    as_coefficient_matrix,
    builtin_unanimous,
    evolve,
    from_coefficient_matrix,
    global_offset,
    make_state,
    norm_squared,
)
from tricoin.errors import LatticeError, NormalizationError
from tricoin.state import coin_bits, coin_index

from conftest import E0, E7, GHZ


class TestLatticeSpec:
    def test_site_count_is_odd(self):
        for n in (1, 2, 7, 50):
            assert LatticeSpec(n).site_count == 2 * n + 1

    @pytest.mark.parametrize("bad", [0, -3, 1.5])
    def test_rejects_bad_half_width(self, bad):
        with pytest.raises(LatticeError):
            LatticeSpec(bad)

    def test_offset_bijection(self):
        lat = LatticeSpec(3)
        assert [lat.offset(j) for j in lat.sites] == list(range(7))


class TestGlobalOffset:
    def test_corners(self):
        lat = LatticeSpec(2)
        assert global_offset(0, -2, lat) == 0
        assert global_offset(7, 2, lat) == 39
        assert global_offset(3, 0, lat) == 17

    def test_out_of_range_site(self):
        with pytest.raises(LatticeError):
            global_offset(0, 3, LatticeSpec(2))

    @given(st.integers(1, 12))
    def test_bijective(self, n):
        lat = LatticeSpec(n)
        offsets = [global_offset(c, j, lat) for c in range(8) for j in range(-n, n + 1)]
        assert sorted(offsets) == list(range(8 * (2 * n + 1)))


def test_coin_index_msb_is_coin_one():
    assert coin_index("000") == 0
    assert coin_index("100") == 4
    assert coin_index("111") == 7
    assert coin_bits(3) == "011"
    with pytest.raises(ValueError):
        coin_index("0a1")


class TestMakeState:
    def test_basis_placement(self):
        s = make_state(E0, 0, LatticeSpec(2))
        expected = np.zeros(40, dtype=complex)
        expected[2] = 1.0
        assert np.array_equal(s.amplitudes, expected)

    def test_ghz_has_two_entries(self):
        s = make_state(GHZ, 0, LatticeSpec(2))
        nz = np.flatnonzero(s.amplitudes)
        assert list(nz) == [2, 7 * 5 + 2]
        np.testing.assert_allclose(s.amplitudes[nz], 1 / math.sqrt(2), atol=0)

    def test_rejects_unnormalized_and_reports_norm(self):
        with pytest.raises(NormalizationError) as err:
            make_state(E0 * math.sqrt(0.5), 0, LatticeSpec(2))
        assert err.value.norm_sq == pytest.approx(0.5)
        assert "0.5" in str(err.value)

    def test_site_out_of_range(self):
        with pytest.raises(LatticeError):
            make_state(E0, 5, LatticeSpec(2))


class TestNorm:
    def test_basis_state(self):
        assert norm_squared(make_state(E7, 1, LatticeSpec(2))) == 1.0

    def test_quadratic_scaling(self):
        s = make_state(GHZ, 0, LatticeSpec(2))
        assert norm_squared(2 * s) == pytest.approx(4.0, abs=1e-15)

    def test_after_ten_steps(self):
        s = evolve(make_state(GHZ, 0, LatticeSpec(10)), builtin_unanimous(), 10)
        assert abs(norm_squared(s) - 1.0) <= 1e-12


class TestCoefficientMatrix:
    def test_basis_state_layout(self):
        lat = LatticeSpec(3)
        m = as_coefficient_matrix(make_state(E0, 0, lat))
        assert m.shape == (8, 7)
        assert m[0, 3] == 1 and np.count_nonzero(m) == 1

    def test_round_trip_is_exact(self, rng):
        lat = LatticeSpec(4)
        amps = rng.normal(size=lat.dim) + 1j * rng.normal(size=lat.dim)
        s = WalkState(lat, amps / np.linalg.norm(amps))
        back = from_coefficient_matrix(as_coefficient_matrix(s), lat)
        assert np.array_equal(back.amplitudes, s.amplitudes)

    def test_frobenius_norm(self, rng):
        lat = LatticeSpec(4)
        amps = rng.normal(size=lat.dim) + 1j * rng.normal(size=lat.dim)
        s = WalkState(lat, amps / np.linalg.norm(amps))
        assert abs(np.linalg.norm(as_coefficient_matrix(s)) ** 2 - 1) <= 1e-12
