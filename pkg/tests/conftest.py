import functools

import pytest

from rootscope import catalog, rootspace


@functools.lru_cache(maxsize=None)
def setup(spec_string, seed=42):
    L, C = catalog.build(catalog.parse_spec(spec_string))
    return L, C, rootspace.decompose(L, C, seed=seed)


@pytest.fixture(scope="session")
def algebra():
    return setup


CATALOG = [s.spec_string for s in catalog.list_catalog()]
