import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from design.design import BlockDesign, ResolvableDesign, dual
from efficiency.efficiency import a_value, design_parameters
from enums import Family, Variant
from families.catalog import CatalogEntry, CatalogManager
from sylvester.sylvester import build_sylvester, cell_variety, galaxy
from utils.errors import DisconnectedError, InternalConsistencyError, ShapeError

SIDE = 6
V = SIDE * SIDE

# Replicate counts each variant is defined for.
RANGES = {
	Variant.PLAIN: range(0, 7),
	Variant.R: range(1, 8),
	Variant.C: range(1, 8),
	Variant.RC: range(2, 9),
}


@dataclass(frozen=True)
class LatinSquare6:
	grid: tuple[tuple[int, ...], ...]

	def __post_init__(self):
		symbols = set(range(1, SIDE + 1))
		if len(self.grid) != SIDE or any(set(row) != symbols for row in self.grid):
			raise ShapeError("Every Row Must Hold Each Symbol 1..6 Once")
		if any(set(column) != symbols for column in zip(*self.grid)):
			raise ShapeError("Every Column Must Hold Each Symbol 1..6 Once")

	def __str__(self):
		return "\n".join(" ".join(str(s) for s in row) for row in self.grid)


@dataclass(frozen=True)
class SemiLatinSquare:
	cells: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class SemiLatinCheck:
	is_semi_latin: bool
	square: SemiLatinSquare | None = None

	def __bool__(self):
		return self.is_semi_latin


@dataclass(frozen=True)
class RoyResult:
	a_value: Fraction
	dual_a_value: Fraction
	residual: Fraction

	@property
	def holds(self) -> bool:
		return self.residual == 0


def rows_replicate() -> tuple[tuple[int, ...], ...]:
	return tuple(tuple(cell_variety(row, column) for column in range(1, SIDE + 1)) for row in range(1, SIDE + 1))


def columns_replicate() -> tuple[tuple[int, ...], ...]:
	return tuple(tuple(cell_variety(row, column) for row in range(1, SIDE + 1)) for column in range(1, SIDE + 1))


def galaxy_replicate(column: int) -> tuple[tuple[int, ...], ...]:
	"""Blocks Are The Starfish Of Galaxy d_column, Ordered By Centre Row"""
	found = galaxy(build_sylvester(), column)
	return tuple(tuple(sorted(c.variety for c in fish)) for fish in found.starfish)


def latin_square_replicate(square: LatinSquare6) -> tuple[tuple[int, ...], ...]:
	"""Block s Holds The Cells Carrying Symbol s"""
	return tuple(
		tuple(
			cell_variety(row, column)
			for row in range(1, SIDE + 1)
			for column in range(1, SIDE + 1)
			if square.grid[row - 1][column - 1] == symbol
		)
		for symbol in range(1, SIDE + 1)
	)


def _catalog_design(name: str) -> ResolvableDesign:
	entry = CatalogManager.Get(name)
	if entry is None:
		raise InternalConsistencyError(f"Embedded Design '{name}' Is Missing From The Catalog")
	return entry.design


@lru_cache(maxsize=1)
def latin_squares() -> tuple[LatinSquare6, ...]:
	"""L1..L6, Read From The Last Six Replicates Of The Embedded delta-rc-8"""
	design = _catalog_design("delta-rc-8")
	squares = []
	for replicate in design.replicates[2:]:
		grid = [[0] * SIDE for _ in range(SIDE)]
		for symbol, block in enumerate(replicate, start=1):
			for x in block:
				grid[(x - 1) // SIDE][(x - 1) % SIDE] = symbol
		squares.append(LatinSquare6(tuple(tuple(row) for row in grid)))
	return tuple(squares)


def _check_range(r: int, variant: str):
	if r not in RANGES[variant]:
		allowed = RANGES[variant]
		raise ShapeError(f"Variant {variant} Needs {allowed.start} <= r <= {allowed.stop - 1}, Got {r}")


def _prefix(variant: str) -> list:
	if variant == Variant.R:
		return [rows_replicate()]
	if variant == Variant.C:
		return [columns_replicate()]
	if variant == Variant.RC:
		return [columns_replicate(), rows_replicate()]
	return []


def family_name(family: str, r: int, variant: str = Variant.PLAIN) -> str:
	if variant == Variant.PLAIN:
		return f"{family}-{r}"
	return f"{family}-{variant.lower()}-{r}"


def gamma(r: int, variant: str = Variant.PLAIN) -> ResolvableDesign:
	"""Galaxy Designs, Optionally Led By Rows, Columns Or Both

	Args:
		r (int): Total Number Of Replicates
		variant (str, optional): One Of Variant.ALL. Defaults to Variant.PLAIN.

	Raises:
		ShapeError: When r Is Outside The Range For The Variant
	"""
	_check_range(r, variant)
	replicates = _prefix(variant)
	replicates += [galaxy_replicate(column) for column in range(1, r - len(replicates) + 1)]
	return ResolvableDesign.from_lists(V, SIDE, replicates, label=family_name(Family.GAMMA, r, variant))


def delta_from_squares(indices, variant: str = Variant.PLAIN) -> ResolvableDesign:
	"""Superposes The Chosen Latin Squares (1-Based Indices Into L1..L6)"""
	squares = latin_squares()
	for i in indices:
		if not 1 <= i <= len(squares):
			raise ShapeError(f"Latin Square Index {i} Out Of Range 1..{len(squares)}")
	replicates = _prefix(variant) + [latin_square_replicate(squares[i - 1]) for i in indices]
	name = "delta-squares-" + "".join(str(i) for i in indices)
	return ResolvableDesign.from_lists(V, SIDE, replicates, label=name)


def delta(r: int, variant: str = Variant.PLAIN) -> ResolvableDesign:
	"""Latin Square Designs Built From L1..L(r - prefix)"""
	_check_range(r, variant)
	count = r - len(_prefix(variant))
	return delta_from_squares(range(1, count + 1), variant).with_label(family_name(Family.DELTA, r, variant))


def best_square_subset(r: int) -> tuple[tuple[int, ...], Fraction, dict]:
	"""Evaluates Every r-Subset Of The Six Latin Squares

	Returns:
		tuple: (Best Indices, Best A, A For Every Subset). Ties Go To The First Subset In Lexicographic Order.
	"""
	if not 2 <= r <= SIDE:
		raise ShapeError(f"Subset Size Must Be 2..6, Got {r}")
	results = {}
	for subset in combinations(range(1, SIDE + 1), r):
		results[subset] = a_value(delta_from_squares(subset))
	best = max(results, key=lambda s: (results[s], tuple(-i for i in s)))
	return best, results[best], results


def square_lattice(r: int) -> ResolvableDesign:
	"""Square Lattice For 36 Varieties From Columns, Rows And The Cyclic Latin Square"""
	if r not in (2, 3):
		raise ShapeError(f"Square Lattice Is Built For r = 2 Or 3, Got {r}")
	replicates = [columns_replicate(), rows_replicate()]
	if r == 3:
		cyclic = LatinSquare6(tuple(tuple((row + column) % SIDE + 1 for column in range(SIDE)) for row in range(SIDE)))
		replicates.append(latin_square_replicate(cyclic))
	return ResolvableDesign.from_lists(V, SIDE, replicates, label=f"square-lattice-{r}")


def is_semi_latin(dual_design: BlockDesign) -> SemiLatinCheck:
	"""Checks Whether A Dual Lays Out As A Semi-Latin Square

	Dual block i sits in the cell of variety i of the 6 x 6 array. The
	layout is semi-Latin when every dual variety appears exactly once in
	each row and once in each column.
	"""
	if dual_design.b != V:
		raise ShapeError(f"Expected The Dual Of A {V}-Variety Design, Got {dual_design.b} Blocks")
	cells = tuple(tuple(dual_design.blocks[cell_variety(row, column) - 1] for column in range(1, SIDE + 1)) for row in range(1, SIDE + 1))

	for line in list(cells) + [tuple(column) for column in zip(*cells)]:
		counts = {}
		for block in line:
			for symbol in block:
				counts[symbol] = counts.get(symbol, 0) + 1
		if set(counts) != set(range(1, dual_design.v + 1)) or any(c != 1 for c in counts.values()):
			return SemiLatinCheck(False)

	return SemiLatinCheck(True, SemiLatinSquare(cells))


def roy_check(design) -> RoyResult:
	"""Exact Residual Of (v-1)/A - (v-b) - (b-1)/A' For A Design And Its Dual

	Raises:
		DisconnectedError: If Either The Design Or Its Dual Is Disconnected
	"""
	a = a_value(design)
	dual_design = dual(design)
	design_parameters(dual_design)
	try:
		a_dual = a_value(dual_design)
	except DisconnectedError:
		raise DisconnectedError(f"Dual Of '{design.label}' Is Disconnected")
	v, b = design.v, len(design.blocks)
	residual = Fraction(v - 1) / a - (v - b) - Fraction(b - 1) / a_dual
	return RoyResult(a, a_dual, residual)


def catalog() -> list[CatalogEntry]:
	"""The Embedded Designs Followed By Every Family Member Not Already Embedded"""
	entries = [CatalogManager.Get(name) for name in CatalogManager.Get().get_names()]
	taken = {entry.name for entry in entries}

	for family, build in ((Family.GAMMA, gamma), (Family.DELTA, delta)):
		for variant in Variant.ALL:
			for r in RANGES[variant]:
				if r < 2:
					continue
				name = family_name(family, r, variant)
				if name not in taken:
					entries.append(CatalogEntry(name, build(r, variant), "constructed"))

	for r in (2, 3):
		entries.append(CatalogEntry(f"square-lattice-{r}", square_lattice(r), "constructed"))
	return entries


_NAME = re.compile(r"^(gamma|delta)(?:-(r|c|rc))?-(\d+)$")


def design_by_name(name: str) -> ResolvableDesign:
	"""Looks Up A Catalog Design By Its Kebab-Case Name

	Raises:
		ShapeError: If No Catalog Design Has That Name
	"""
	entry = CatalogManager.Get(name)
	if entry is not None:
		return entry.design

	lattice = re.match(r"^square-lattice-(\d+)$", name)
	if lattice:
		return square_lattice(int(lattice.group(1)))

	match = _NAME.match(name)
	if match is None:
		raise ShapeError(f"Unknown Catalog Design '{name}'")
	family, variant, r = match.groups()
	variant = Variant.parse(variant) if variant else Variant.PLAIN
	build = gamma if family == Family.GAMMA else delta
	return build(int(r), variant)
