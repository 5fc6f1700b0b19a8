from collections import Counter
from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from enums import Relation
from sylvester.sylvester import (
	Cell, Duad, Graph36, OneFactor, all_one_factors, build_sylvester, cell_variety, common_factor, edge_list,
	enumerate_one_factorizations, galaxy, relation_matrices, search_one_factorizations, starfish, variety_cell,
	verify_sylvester,
)
from utils.errors import ShapeError


@pytest.fixture(scope="module")
def sigma():
	return build_sylvester()


def test_fifteen_one_factors():
	assert len(all_one_factors()) == 15


def test_exactly_six_factorizations():
	assert len(search_one_factorizations()) == 6
	factors = all_one_factors()
	everything = frozenset(Duad.of(a, b) for a, b in combinations(range(1, 7), 2))
	brute = [
		choice for choice in combinations(factors, 5)
		if frozenset().union(*(f.duads for f in choice)) == everything
	]
	assert len(brute) == 6


def test_factorizations_cover_every_duad_once():
	for d in enumerate_one_factorizations():
		assert len(d.duad_set()) == 15


def test_published_labels():
	factorizations = enumerate_one_factorizations()
	assert [d.label for d in factorizations] == [f"d{i}" for i in range(1, 7)]
	assert OneFactor.parse("12|36|45") in factorizations[0].factors
	assert str(factorizations[0]) == "12|36|45 13|24|56 14|26|35 15|23|46 16|25|34"


@pytest.mark.parametrize("i, j, shared", [
	(0, 1, "12|36|45"),
	(2, 3, "12|34|56"),
	(1, 2, "13|25|46"),
	(4, 5, "12|35|46"),
])
def test_common_factor(i, j, shared):
	factorizations = enumerate_one_factorizations()
	assert common_factor(factorizations[i], factorizations[j]) == OneFactor.parse(shared)


def test_common_factor_is_a_bijection():
	factorizations = enumerate_one_factorizations()
	shared = {common_factor(a, b) for a, b in combinations(factorizations, 2)}
	assert shared == set(all_one_factors())


def test_common_factor_with_itself():
	d1 = enumerate_one_factorizations()[0]
	with pytest.raises(ShapeError):
		common_factor(d1, d1)


def test_graph_shape(sigma):
	assert sigma.graph.number_of_nodes() == 36
	assert sigma.graph.number_of_edges() == 90
	assert all(d == 5 for _, d in sigma.graph.degree())
	assert nx.girth(sigma.graph) == 5


def test_edges_between_d3_and_d4(sigma):
	# d3 and d4 share 12|34|56
	assert sigma.graph.has_edge(Cell(1, 3), Cell(2, 4))
	assert sigma.graph.has_edge(Cell(2, 3), Cell(1, 4))
	assert not sigma.graph.has_edge(Cell(1, 3), Cell(3, 4))


def test_verification_passes(sigma):
	report = verify_sylvester(sigma)
	assert report.passed, report.failures()


def test_verification_names_failures(sigma):
	broken = sigma.graph.copy()
	u, w = next(iter(broken.edges()))
	broken.remove_edge(u, w)
	report = verify_sylvester(Graph36(broken, sigma.factorizations))
	assert not report.passed
	regular = next(c for c in report.checks if c.name.startswith("regular"))
	assert not regular.passed
	assert str(u) in regular.witness and str(w) in regular.witness


def test_association_scheme_relations_partition(sigma):
	relations = relation_matrices(sigma)
	assert np.array_equal(sum(relations.values()), np.ones((36, 36), dtype=np.int64))
	assert relations[Relation.OTHER].sum(axis=1).tolist() == [20] * 36


def test_cell_numbering():
	assert cell_variety(1, 1) == 1
	assert cell_variety(2, 1) == 7
	assert cell_variety(6, 6) == 36
	assert variety_cell(14) == Cell(3, 2)
	with pytest.raises(ShapeError):
		variety_cell(37)


def test_starfish_d3_row1(sigma):
	fish = starfish(sigma, Cell(1, 3))
	assert sorted(c.variety for c in fish) == [3, 10, 14, 19, 29, 36]


@pytest.mark.parametrize("column", range(1, 7))
def test_galaxies_are_latin(column, sigma):
	found = galaxy(sigma, column)
	assert len(found.starfish) == 6
	for row in found.square:
		assert sorted(row) == [1, 2, 3, 4, 5, 6]
	for col in zip(*found.square):
		assert sorted(col) == [1, 2, 3, 4, 5, 6]


@pytest.mark.parametrize("first, second", list(combinations(range(1, 7), 2)))
def test_two_galaxies_concur_twice_on_edges(first, second, sigma):
	counts = Counter()
	for column in (first, second):
		for fish in galaxy(sigma, column).starfish:
			counts.update(frozenset(pair) for pair in combinations(sorted(c.variety for c in fish), 2))
	assert max(counts.values()) <= 2

	twice = {pair for pair, count in counts.items() if count == 2}
	between = {
		frozenset(edge) for edge in edge_list(sigma)
		if {variety_cell(x).column for x in edge} == {first, second}
	}
	assert len(between) == 6
	assert twice == between


def test_edge_list_is_one_based(sigma):
	edges = edge_list(sigma)
	assert len(edges) == 90
	assert all(1 <= u < w <= 36 for u, w in edges)
