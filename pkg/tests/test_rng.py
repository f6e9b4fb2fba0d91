"""Reproducibility contract of the seeded stream source."""

import pytest

from isingworlds import InvalidParameterError, RngStream


def test_same_seed_same_sequence():
    a = RngStream(42)
    b = RngStream(42)
    assert [a.uniform() for _ in range(50)] == [b.uniform() for _ in range(50)]


def test_distinct_streams_differ():
    a = RngStream(42, 0)
    b = RngStream(42, 1)
    assert [a.uniform() for _ in range(10)] != [b.uniform() for _ in range(10)]


def test_distinct_seeds_differ():
    assert RngStream(1).uniform() != RngStream(2).uniform()


def test_substream_deterministic():
    parent = RngStream(7, 3)
    child_a = parent.substream(5)
    child_b = RngStream(7, 3).substream(5)
    assert [child_a.uniform() for _ in range(10)] == [child_b.uniform() for _ in range(10)]


def test_substream_independent_of_parent_consumption():
    p1 = RngStream(7)
    p1.uniform()
    p2 = RngStream(7)
    assert p1.substream(0).uniform() == p2.substream(0).uniform()


def test_draw_counting():
    rng = RngStream(0)
    rng.uniform()
    rng.bernoulli(0.5)
    rng.randrange(10)
    assert rng.draws == 3


def test_degenerate_bernoulli_consumes_nothing():
    rng = RngStream(0)
    assert rng.bernoulli(0.0) is False
    assert rng.bernoulli(1.0) is True
    assert rng.draws == 0


def test_bernoulli_validates_parameter():
    rng = RngStream(0)
    with pytest.raises(InvalidParameterError):
        rng.bernoulli(1.5)
    with pytest.raises(InvalidParameterError):
        rng.bernoulli(-0.1)
    with pytest.raises(InvalidParameterError):
        rng.bernoulli(float("nan"))


def test_negative_seed_rejected():
    with pytest.raises(InvalidParameterError):
        RngStream(-1)


def test_bernoulli_frequency_sane():
    rng = RngStream(123)
    hits = sum(rng.bernoulli(0.3) for _ in range(20000))
    assert abs(hits / 20000 - 0.3) < 0.02
