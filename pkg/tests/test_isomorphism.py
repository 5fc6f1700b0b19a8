import networkx as nx
import numpy as np
import pytest

from design.design import BlockDesign, ResolvableDesign, concurrence_matrix, dual, relabel
from enums import Variant
from families.catalog import CatalogManager
from families.families import delta, gamma, galaxy_replicate
from isomorphism.isomorphism import (
	are_isomorphic, automorphism_order, canonical_form, concurrence_equivalent, graph_as_design,
	is_sylvester_design, is_sylvester_graph, same_spectrum,
)
from sylvester.sylvester import build_sylvester
from utils.errors import ShapeError


def embedded(name):
	return CatalogManager.Get(name).design


def shuffled(design, seed):
	permutation = (np.random.default_rng(seed).permutation(design.v) + 1).tolist()
	return relabel(design, permutation)


def test_canonical_form_is_relabelling_invariant():
	theta = embedded("theta-8")
	form = canonical_form(theta)
	for seed in range(50):
		assert canonical_form(shuffled(theta, seed)) == form


def test_canonical_form_is_idempotent():
	design = gamma(4, Variant.RC)
	form = canonical_form(design)
	renamed = relabel(design, list(form.labelling))
	assert canonical_form(renamed) == form


def test_isomorphism_witness_maps_blocks():
	design = delta(4, Variant.RC)
	other = shuffled(design, 7)
	verdict = are_isomorphic(design, other)
	assert verdict
	assert sorted(relabel(design, list(verdict.witness)).blocks) == sorted(other.blocks)


@pytest.mark.parametrize("r", [2, 7])
def test_gamma_r_and_c_isomorphic(r):
	assert are_isomorphic(gamma(r, Variant.R), gamma(r, Variant.C))


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_gamma_r_and_c_not_isomorphic(r):
	assert not are_isomorphic(gamma(r, Variant.R), gamma(r, Variant.C))
	assert same_spectrum(gamma(r, Variant.R), gamma(r, Variant.C))


@pytest.mark.parametrize("r, expected", [(2, True), (3, True), (4, False), (5, True), (6, False), (7, True)])
def test_delta_r_and_c(r, expected):
	assert bool(are_isomorphic(delta(r, Variant.R), delta(r, Variant.C))) is expected


def test_gamma_6_and_delta_6():
	assert same_spectrum(gamma(6), delta(6))
	assert not are_isomorphic(gamma(6), delta(6))


def test_different_spectra():
	assert not same_spectrum(gamma(2), delta(2))
	assert not are_isomorphic(gamma(2), delta(2))


@pytest.mark.parametrize("name, order", [("gamma-rc-8", 1440), ("theta-8", 1), ("delta-rc-8", 144)])
def test_automorphism_orders(name, order):
	assert automorphism_order(embedded(name)).order == order


def test_sylvester_graph_group():
	assert automorphism_order(graph_as_design(build_sylvester())).order == 1440


def test_isomorphic_designs_share_group_order():
	design = embedded("delta-rc-8")
	assert automorphism_order(shuffled(design, 3)).order == 144


def test_repeated_blocks_are_a_multiset():
	once = BlockDesign(4, ((1, 2), (3, 4), (1, 3), (2, 4)))
	twice = BlockDesign(4, ((1, 2), (1, 2), (3, 4), (1, 3), (2, 4), (3, 4)))
	assert not are_isomorphic(once, twice)
	assert canonical_form(twice).blocks != canonical_form(once).blocks


def test_dual_of_dual_is_isomorphic():
	design = delta(3, Variant.RC)
	back = dual(dual(design))
	assert are_isomorphic(design.as_block_design(), back)


@pytest.mark.parametrize("name", ["gamma-rc-8", "theta-8", "delta-rc-8"])
def test_sylvester_designs(name):
	verdict = is_sylvester_design(embedded(name))
	assert verdict
	assert sorted(verdict.witness) == list(range(1, 37))


def test_sylvester_witness_is_an_isomorphism():
	verdict = is_sylvester_design(embedded("theta-8"))
	sigma = build_sylvester().variety_graph()
	mapping = dict(zip(range(1, 37), verdict.witness))
	concurrence_two = nx.relabel_nodes(_concurrence_graph(embedded("theta-8")), mapping)
	assert set(map(frozenset, concurrence_two.edges())) == set(map(frozenset, sigma.edges()))


def _concurrence_graph(design):
	concurrence = concurrence_matrix(design)
	graph = nx.Graph()
	graph.add_nodes_from(range(1, 37))
	graph.add_edges_from((i + 1, j + 1) for i in range(36) for j in range(i + 1, 36) if concurrence[i, j] == 2)
	return graph


def test_repeated_galaxy_is_not_sylvester():
	design = gamma(7, Variant.RC)
	repeated = ResolvableDesign.from_lists(36, 6, list(design.replicates) + [galaxy_replicate(5)])
	verdict = is_sylvester_design(repeated)
	assert not verdict
	assert "1 or 2" in verdict.reason


def test_triangle_graph_is_not_sylvester():
	cliques = nx.disjoint_union_all([nx.complete_graph(6) for _ in range(6)])
	cliques = nx.relabel_nodes(cliques, {u: u + 1 for u in cliques.nodes()})
	verdict = is_sylvester_graph(cliques)
	assert not verdict
	assert "triangle" in verdict.reason


def test_sylvester_shape_is_checked():
	with pytest.raises(ShapeError):
		is_sylvester_design(gamma(7, Variant.RC))


def test_concurrence_equivalence():
	assert concurrence_equivalent(embedded("gamma-rc-8"), embedded("theta-8"))
	assert not concurrence_equivalent(gamma(2), delta(2))
	assert concurrence_equivalent(delta(4), shuffled(delta(4), 11))
