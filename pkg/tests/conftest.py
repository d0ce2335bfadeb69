import pytest

from transversal_lab.catalog import parse_group_ref
from transversal_lab.groups import subgroup_generated
from transversal_lab.transversal import Transversal, find_generating_transversal, induced_loop


def index_of(G, word):
    return next(i for i in G.elements if G.label(i) == word)


@pytest.fixture(scope="session")
def s3_case():
    """S3, H = <(1 2)>, S = {e, (1 3), (2 3)}: the order-3 example loop."""
    G = parse_group_ref("S3")
    H = subgroup_generated(G, [index_of(G, "(1 2)")])
    S = Transversal(G, H, (0, index_of(G, "(1 3)"), index_of(G, "(2 3)")))
    return G, H, S, induced_loop(G, H, S)


@pytest.fixture(scope="session")
def d4_case():
    """D4, H = <s> and its first generating transversal."""
    G = parse_group_ref("D4")
    H = subgroup_generated(G, [4])
    S = find_generating_transversal(G, H)
    return G, H, S, induced_loop(G, H, S)


ORDER3_TABLE = ((0, 1, 2), (1, 0, 1), (2, 2, 0))
