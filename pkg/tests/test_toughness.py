from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from spectral_hamilton_clt.toughness import (ToughnessWitness,
                                             bipartite_toughness,
                                             count_components, is_one_tough)
from spectral_hamilton_clt.utils.bigraph import extremal_gnn, u, v
from spectral_hamilton_clt.utils.errors import (DomainError,
                                                ResourceLimitError)
from tests.oracles import balanced_graphs, brute_toughness


def test_six_cycle(c6):
    witness = bipartite_toughness(c6)
    assert witness.ratio == 1
    assert witness.S == (u(1), u(2))
    assert witness.components == 2
    assert witness.verify(c6)
    assert is_one_tough(c6) == (True, None)


def test_path_is_not_one_tough(p4):
    one_tough, witness = is_one_tough(p4)
    assert not one_tough
    assert witness.S == (u(2),)
    assert witness.components == 2
    assert bipartite_toughness(p4).ratio == Fraction(1, 2)


def test_complete_graphs(k33):
    assert is_one_tough(k33) == (True, None)
    with pytest.raises(DomainError):
        bipartite_toughness(k33)


def test_component_counts(c6, gnn16):
    assert count_components(c6, []) == 1
    assert count_components(c6, [u(1), u(2)]) == 2
    # v4..v16 gone: u1..u4 hold together through the specials
    cut = [v(j) for j in range(4, 17)]
    assert count_components(gnn16, cut) == 1 + 12


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_extremal_graph_is_one_tough(n):
    assert is_one_tough(extremal_gnn(n)).one_tough


def test_part_size_limit():
    with pytest.raises(ResourceLimitError):
        is_one_tough(extremal_gnn(25))
    with pytest.raises(ResourceLimitError):
        bipartite_toughness(extremal_gnn(8), limit=6)


def test_witness_verification(c6):
    assert not ToughnessWitness((u(1), v(1)), 2, Fraction(1)).verify(c6)
    assert not ToughnessWitness((u(1), u(2)), 3, Fraction(2, 3)).verify(c6)


@settings(max_examples=150, deadline=None)
@given(balanced_graphs(max_n=4))
def test_toughness_matches_subset_enumeration(G):
    expected = brute_toughness(G)
    if G.is_complete():
        assert is_one_tough(G).one_tough
        with pytest.raises(DomainError):
            bipartite_toughness(G)
        return

    witness = bipartite_toughness(G)
    assert (witness.ratio, witness.S) == expected
    assert witness.verify(G)
    one_tough, violation = is_one_tough(G)
    assert one_tough == (expected[0] >= 1)
    if violation is not None:
        assert violation.verify(G)
        assert violation.components > max(len(violation.S), 1)


@settings(max_examples=100, deadline=None)
@given(balanced_graphs(min_n=2, max_n=5), st.data())
def test_adding_an_edge_never_lowers_toughness(G, data):
    missing = [(i, j) for i in range(G.nx) for j in range(G.ny)
               if not G.has_edge(i, j)]
    assume(len(missing) > 1)
    denser = G.with_edges([data.draw(st.sampled_from(missing))])
    assert bipartite_toughness(denser).ratio >= bipartite_toughness(G).ratio
