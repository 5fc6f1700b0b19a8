from fractions import Fraction
from math import comb

import pytest

from design.design import ResolvableDesign, canonical, dual, take_replicates, validate
from efficiency.efficiency import a_value
from enums import Variant
from families.catalog import CatalogManager
from families.families import (
	best_square_subset, catalog, columns_replicate, delta, delta_from_squares, design_by_name, gamma,
	is_semi_latin, latin_squares, roy_check, rows_replicate, square_lattice,
)
from utils.errors import ShapeError


def test_rows_and_columns():
	assert rows_replicate()[1] == (7, 8, 9, 10, 11, 12)
	assert columns_replicate()[0] == (1, 7, 13, 19, 25, 31)


@pytest.mark.parametrize("build", [gamma, delta])
@pytest.mark.parametrize("variant, low, high", [
	(Variant.PLAIN, 0, 6), (Variant.R, 1, 7), (Variant.C, 1, 7), (Variant.RC, 2, 8),
])
def test_variant_ranges(build, variant, low, high):
	for r in range(max(low, 1), high + 1):
		design = build(r, variant)
		assert design.r == r
		assert validate(design) == []
	with pytest.raises(ShapeError):
		build(high + 1, variant)
	with pytest.raises(ShapeError):
		build(low - 1, variant)


def test_gamma_zero_is_empty():
	assert gamma(0).r == 0


def test_constructions_match_embedded_designs():
	assert canonical(gamma(8, Variant.RC)).replicates == canonical(CatalogManager.Get("gamma-rc-8").design).replicates
	assert delta(8, Variant.RC).replicates == CatalogManager.Get("delta-rc-8").design.replicates


@pytest.mark.parametrize("build", [gamma, delta])
def test_prefix_property(build):
	for r in range(3, 9):
		longer = build(r, Variant.RC)
		assert take_replicates(longer, range(r - 1)).replicates == build(r - 1, Variant.RC).replicates
		assert take_replicates(longer, range(1, r)).replicates == build(r - 1, Variant.R).replicates


def test_latin_squares():
	squares = latin_squares()
	assert len(squares) == 6
	for a in squares:
		assert len({row for row in a.grid}) == 6


def test_square_subsets_attain_published_choice():
	for r in range(2, 7):
		best, value, results = best_square_subset(r)
		assert value == a_value(delta(r))
		assert len(results) == comb(6, r)
		assert max(results.values()) == value


def test_delta_from_squares_matches_delta():
	assert delta_from_squares([1, 2, 3]).replicates == delta(3).replicates


def test_square_lattice_three():
	design = square_lattice(3)
	assert validate(design) == []
	assert a_value(design) == Fraction(14, 17)
	with pytest.raises(ShapeError):
		square_lattice(4)


def test_dual_of_six_squares_is_semi_latin():
	check = is_semi_latin(dual(delta(6)))
	assert check.is_semi_latin
	assert all(len(cell) == 6 for row in check.square.cells for cell in row)


def test_dual_of_lattice_is_not_semi_latin():
	assert not is_semi_latin(dual(gamma(2, Variant.RC)))


def test_semi_latin_shape():
	with pytest.raises(ShapeError):
		is_semi_latin(dual(ResolvableDesign.from_lists(4, 2, [[[1, 2], [3, 4]]])))


@pytest.mark.parametrize("design", [delta(4, Variant.RC), gamma(3), gamma(4, Variant.RC), delta(6)], ids=lambda d: d.label)
def test_roy_identity(design):
	assert roy_check(design).residual == 0


@pytest.mark.parametrize("build", [gamma, delta], ids=["gamma", "delta"])
@pytest.mark.parametrize("r", range(2, 7))
def test_roy_identity_across_plain_families(build, r):
	assert roy_check(build(r)).holds


@pytest.mark.parametrize("build", [gamma, delta], ids=["gamma", "delta"])
def test_six_replicates_match_their_dual(build):
	roy = roy_check(build(6))
	assert roy.a_value == roy.dual_a_value


def test_catalog_contents():
	entries = catalog()
	names = [e.name for e in entries]
	assert len(names) == len(set(names))
	for name in ("gamma-rc-8", "theta-8", "delta-rc-8", "gamma-c-7", "gamma-6", "delta-r-4", "square-lattice-2"):
		assert name in names
	for entry in entries:
		assert validate(entry.design) == []


def test_catalog_theta_entry():
	entry = CatalogManager.Get("theta-8")
	assert entry.design.replicates[0][0] == (2, 6, 17, 18, 29, 33)
	assert entry.provenance


@pytest.mark.parametrize("name, r", [("gamma-rc-5", 5), ("delta-c-3", 3), ("gamma-6", 6), ("square-lattice-3", 3)])
def test_design_by_name(name, r):
	assert design_by_name(name).r == r


def test_unknown_name():
	with pytest.raises(ShapeError):
		design_by_name("omega-3")
