import numpy as np
import pytest
from sklearn.base import clone

from mrlrc import MaximallyRecoverableLRC, NotAdmissibleError, PlanError


def test_params_and_clone():
    est = MaximallyRecoverableLRC(n=9, r=3, h=2, a=1)
    assert est.get_params()["n"] == 9
    other = clone(est).set_params(h=1)
    assert other.h == 1 and est.h == 2


def test_fit_transform_inverse():
    est = MaximallyRecoverableLRC(n=8, r=4, h=2, a=1, q=4, m=3).fit()
    assert est.n_features_in_ == 4 and est.field_size_ == 4**6
    rng = np.random.default_rng(0)
    X = rng.integers(0, est.field_size_, size=(20, 4))
    Y = est.transform(X)
    assert Y.shape == (20, 8) and Y.dtype == np.int64
    damaged = Y.copy()
    damaged[:, 0] = -1
    damaged[:, 5] = -1
    damaged[:, 6] = -1
    assert np.array_equal(est.decode(damaged), Y)
    assert np.array_equal(est.inverse_transform(damaged), X)
    assert est.verify().passed


def test_fit_transform_shortcut_and_nan():
    est = MaximallyRecoverableLRC(n=9, r=3, h=2, a=1)
    X = np.array([[1, 2, 3, 4]])
    Y = est.fit_transform(X)
    D = Y.astype(float)
    D[0, 2] = np.nan
    assert np.array_equal(est.inverse_transform(D), X)


def test_generator_form():
    est = MaximallyRecoverableLRC(n=8, r=4, h=1, a=1, q=2, m=4, form="generator").fit()
    X = np.arange(5).reshape(1, 5) + 1
    Y = est.transform(X)
    Z = Y.astype(object)
    Z[0, 3] = None
    assert np.array_equal(est.inverse_transform(Z), X)
    assert est.verify().passed


def test_object_dtype_for_huge_fields():
    est = MaximallyRecoverableLRC(n=16, r=8, h=2, a=1, q=2, m=33).fit()
    assert est.field_size_ == 2**66
    X = [[est.field_size_ - 1] + [0] * (est.n_features_in_ - 1)]
    Y = est.transform(X)
    assert Y.dtype == object
    Y[0, 0] = None
    assert est.inverse_transform(Y).tolist() == X


def test_validation_errors():
    with pytest.raises(PlanError):
        MaximallyRecoverableLRC(n=7, r=4).fit()
    with pytest.raises(PlanError):
        MaximallyRecoverableLRC(n=8.0).fit()
    with pytest.raises(PlanError):
        MaximallyRecoverableLRC(form="weird").fit()
    est = MaximallyRecoverableLRC().fit()
    with pytest.raises(ValueError):
        est.transform([[0, 1, 2]])
    with pytest.raises(ValueError):
        est.transform([[0, 1, 2, 64]])
    with pytest.raises(ValueError):
        est.transform([[0, 1, 2, -1]])
    with pytest.raises(ValueError):
        est.transform([[0, 1, 2, 1.5]])
    with pytest.raises(NotAdmissibleError):
        est.decode([[-1, -1, -1, -1, 0, 0, 0, 0]])


def test_unfitted_raises():
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        MaximallyRecoverableLRC().transform([[0, 0, 0, 0]])
