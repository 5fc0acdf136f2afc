"""Shared fixtures: expensive complexes are built once per session."""

import pytest

from polyfold.complexes import init_complex
from polyfold.facetypes import build_class_table


@pytest.fixture(scope="session")
def flagship_r10():
    """abABcdCD saturated to radius 10; decides words up to length 6.

    Tests must not mutate it (solve_on with grow=False, read-only
    audits and classifications are fine).
    """
    return init_complex("abABcdCD").build_to_radius(10)


@pytest.fixture(scope="session")
def flagship_table(flagship_r10):
    """The closed class table for abABcdCD, sharing the session complex.

    Closure happens to need exactly radius 10, so building the table
    on the shared complex never grows it; the assertion keeps that
    reuse honest.
    """
    table = build_class_table(flagship_r10)
    assert flagship_r10.saturated_radius == 10
    return table
