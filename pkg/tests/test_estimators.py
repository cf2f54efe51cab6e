"""Scikit-learn protocol conformance of the estimator wrappers."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from helpers import rel_scale
from stpt.decomp import reconstruct_hosvd, reconstruct_svd_stp
from stpt.estimators import HosvdStp, SvdStp
from stpt.exceptions import RankOutOfRangeError


class TestSvdStpEstimator:
    def test_get_params_round_trip(self):
        est = SvdStp(s1=2, s2=5, rank=50)
        assert est.get_params() == {"s1": 2, "s2": 5, "rank": 50}
        est.set_params(rank=3)
        assert est.rank == 3

    def test_clone_preserves_params(self):
        est = SvdStp(s1=2, s2=3, rank=4)
        twin = clone(est)
        assert twin.get_params() == est.get_params()
        assert not hasattr(twin, "factors_")

    def test_unfitted_raises(self, rng):
        est = SvdStp()
        with pytest.raises(NotFittedError):
            est.transform(rng.standard_normal((4, 4)))
        with pytest.raises(NotFittedError):
            est.reconstruct()

    def test_fit_stores_factors(self, rng):
        a = rng.standard_normal((8, 12))
        est = SvdStp(s1=2, s2=3, rank=2).fit(a)
        assert est.factors_.r == 2
        assert est.factors_.shape == (8, 12)
        assert np.array_equal(est.reconstruct(), reconstruct_svd_stp(est.factors_))

    def test_fit_returns_self(self, rng):
        a = rng.standard_normal((4, 4))
        est = SvdStp(s1=2, s2=2)
        assert est.fit(a) is est

    def test_rank_none_keeps_everything(self, rng):
        a = rng.standard_normal((6, 6))
        est = SvdStp(s1=2, s2=2).fit(a)
        assert est.factors_.r == est.factors_.max_rank

    def test_transform_shapes_and_projection(self, rng):
        a = rng.standard_normal((8, 12))
        est = SvdStp(s1=2, s2=3, rank=2).fit(a)
        z = est.transform(a)
        assert z.shape == (8, 2 * 3)
        f = est.factors_
        want = a @ np.kron(f.v, np.eye(3))
        assert np.allclose(z, want, atol=1e-12 * rel_scale(a))

    def test_fit_transform_equals_fit_then_transform(self, rng):
        a = rng.standard_normal((8, 12))
        z1 = SvdStp(s1=2, s2=3, rank=2).fit_transform(a)
        z2 = SvdStp(s1=2, s2=3, rank=2).fit(a).transform(a)
        assert np.array_equal(z1, z2)

    def test_inverse_transform_is_projection(self, rng):
        """transform followed by inverse_transform projects onto the
        fitted right basis."""
        a = rng.standard_normal((8, 12))
        est = SvdStp(s1=2, s2=3, rank=4).fit(a)
        back = est.inverse_transform(est.transform(a))
        assert back.shape == a.shape
        twice = est.inverse_transform(est.transform(back))
        assert np.allclose(back, twice, atol=1e-11 * rel_scale(a))

    def test_transform_column_mismatch(self, rng):
        est = SvdStp(s1=2, s2=3, rank=2).fit(rng.standard_normal((8, 12)))
        with pytest.raises(ValueError, match="columns"):
            est.transform(rng.standard_normal((8, 10)))

    def test_invalid_rank_surfaces_at_fit(self, rng):
        with pytest.raises(RankOutOfRangeError):
            SvdStp(s1=2, s2=2, rank=10).fit(rng.standard_normal((4, 4)))


class TestHosvdStpEstimator:
    def test_get_params_round_trip(self):
        est = HosvdStp(s=(2, 2, 2), rank=(3, 3, 3))
        assert est.get_params() == {"s": (2, 2, 2), "rank": (3, 3, 3)}

    def test_clone(self):
        est = HosvdStp(s=(2, 3), rank=None)
        assert clone(est).get_params() == est.get_params()

    def test_unfitted_raises(self, rng):
        with pytest.raises(NotFittedError):
            HosvdStp().transform(rng.standard_normal((4, 4)))

    def test_full_fit_reconstructs(self, rng):
        t = rng.standard_normal((4, 6, 4))
        est = HosvdStp(s=(2, 3, 2)).fit(t)
        err = np.linalg.norm((est.reconstruct() - t).ravel())
        assert err <= 1e-11 * rel_scale(t)
        assert np.array_equal(est.reconstruct(), reconstruct_hosvd(est.factors_))

    def test_transform_matches_core_on_training_tensor(self, rng):
        t = rng.standard_normal((8, 8, 8))
        est = HosvdStp(s=(2, 2, 2), rank=(2, 3, 1)).fit(t)
        z = est.transform(t)
        assert z.shape == est.factors_.core.shape
        assert np.allclose(z, est.factors_.core, atol=1e-12 * rel_scale(t))

    def test_inverse_transform_of_core_is_reconstruction(self, rng):
        t = rng.standard_normal((8, 8, 8))
        est = HosvdStp(s=(2, 2, 2), rank=(2, 2, 2)).fit(t)
        assert np.allclose(
            est.inverse_transform(est.factors_.core),
            est.reconstruct(),
            atol=1e-12 * rel_scale(t),
        )

    def test_fit_transform_equivalence(self, rng):
        t = rng.standard_normal((4, 4, 4))
        z1 = HosvdStp(s=(2, 2, 2)).fit_transform(t)
        z2 = HosvdStp(s=(2, 2, 2)).fit(t).transform(t)
        assert np.array_equal(z1, z2)
