import pytest

A1 = ((0,),)
A2 = ((0, 1), (-1, 0))
B2 = ((0, -1), (2, 0))
G2 = ((0, -1), (3, 0))
A3 = ((0, 1, 0), (-1, 0, 1), (0, -1, 0))
B3 = ((0, 1, 0), (-1, 0, 1), (0, -2, 0))
C3 = ((0, 1, 0), (-1, 0, 2), (0, -1, 0))

FIXTURES = {"A1": A1, "A2": A2, "B2": B2, "G2": G2, "A3": A3, "B3": B3, "C3": C3}

# (cluster variables, clusters) for finite types
COUNTS = {"A1": (2, 2), "A2": (5, 5), "B2": (6, 6), "G2": (8, 8), "A3": (9, 14), "B3": (12, 20), "C3": (12, 20)}


@pytest.fixture(params=sorted(FIXTURES))
def fixture_name(request):
    return request.param


@pytest.fixture
def fixture_matrix(fixture_name):
    return FIXTURES[fixture_name]
