from dataclasses import dataclass, field
from itertools import combinations
from functools import lru_cache

import networkx as nx
import numpy as np

from enums import Relation
from utils.errors import InternalConsistencyError, ShapeError

POINTS = tuple(range(1, 7))

# The six one-factorizations of K6 in their published order, d1 to d6.
PUBLISHED_FACTORIZATIONS = (
	"12|36|45 13|24|56 14|35|26 15|23|46 16|25|34",
	"12|36|45 13|25|46 14|23|56 15|26|34 16|24|35",
	"12|34|56 13|25|46 14|35|26 15|24|36 16|23|45",
	"12|34|56 13|26|45 14|25|36 15|23|46 16|24|35",
	"12|46|35 13|26|45 14|23|56 15|24|36 16|25|34",
	"12|46|35 13|24|56 14|25|36 15|26|34 16|23|45",
)


@dataclass(frozen=True, order=True)
class Duad:
	a: int
	b: int

	@classmethod
	def of(cls, x: int, y: int) -> "Duad":
		if x == y or x not in POINTS or y not in POINTS:
			raise ShapeError(f"Invalid Duad {x}{y}")
		return cls(min(x, y), max(x, y))

	def partner(self, x: int) -> int:
		if x == self.a:
			return self.b
		if x == self.b:
			return self.a
		raise ShapeError(f"{x} Is Not In Duad {self}")

	def __str__(self):
		return f"{self.a}{self.b}"


@dataclass(frozen=True)
class OneFactor:
	duads: frozenset

	@classmethod
	def parse(cls, text: str) -> "OneFactor":
		duads = frozenset(Duad.of(int(part[0]), int(part[1])) for part in text.split("|"))
		covered = sorted(x for d in duads for x in (d.a, d.b))
		if len(duads) != 3 or tuple(covered) != POINTS:
			raise ShapeError(f"'{text}' Is Not A One-Factor Of K6")
		return cls(duads)

	def partner(self, x: int) -> int:
		for duad in self.duads:
			if x in (duad.a, duad.b):
				return duad.partner(x)
		raise ShapeError(f"{x} Is Not Covered By {self}")

	def sort_key(self):
		return tuple(sorted(self.duads))

	def __str__(self):
		return "|".join(str(d) for d in sorted(self.duads))


@dataclass(frozen=True)
class OneFactorization:
	factors: tuple[OneFactor, ...]
	label: str = ""

	@classmethod
	def parse(cls, text: str, label: str = "") -> "OneFactorization":
		factors = tuple(OneFactor.parse(part) for part in text.split())
		return cls(_ordered(factors), label)

	def duad_set(self) -> frozenset:
		return frozenset().union(*(f.duads for f in self.factors))

	def __str__(self):
		return " ".join(str(f) for f in self.factors)


@dataclass(frozen=True, order=True)
class Cell:
	row: int
	column: int		# i for column d_i

	@property
	def variety(self) -> int:
		return cell_variety(self.row, self.column)

	def __str__(self):
		return f"({self.row},d{self.column})"


@dataclass(eq=False)
class Graph36:
	graph: nx.Graph
	factorizations: tuple[OneFactorization, ...]
	adjacency: np.ndarray = field(init=False)

	def __post_init__(self):
		adjacency = np.zeros((36, 36), dtype=np.int64)
		for u, w in self.graph.edges():
			adjacency[u.variety - 1, w.variety - 1] = 1
			adjacency[w.variety - 1, u.variety - 1] = 1
		adjacency.flags.writeable = False
		self.adjacency = adjacency

	def variety_graph(self) -> nx.Graph:
		"""The Same Graph With Vertices Renamed To Variety Numbers"""
		return nx.relabel_nodes(self.graph, {c: c.variety for c in self.graph.nodes()})


@dataclass(frozen=True)
class CheckResult:
	name: str
	passed: bool
	witness: str = ""


@dataclass(frozen=True)
class SylvesterReport:
	checks: tuple[CheckResult, ...]

	@property
	def passed(self) -> bool:
		return all(c.passed for c in self.checks)

	def failures(self) -> list[CheckResult]:
		return [c for c in self.checks if not c.passed]


@dataclass(frozen=True)
class Galaxy:
	column: int
	starfish: tuple[frozenset, ...]		# ordered by center row
	square: tuple[tuple[int, ...], ...]	# square[row - 1][col - 1] = center row of the covering starfish


def cell_variety(row: int, column: int) -> int:
	if row not in POINTS or column not in POINTS:
		raise ShapeError(f"Cell ({row},{column}) Out Of Range")
	return 6 * (row - 1) + column


def variety_cell(variety: int) -> Cell:
	if not 1 <= variety <= 36:
		raise ShapeError(f"Variety {variety} Out Of Range 1..36")
	return Cell((variety - 1) // 6 + 1, (variety - 1) % 6 + 1)


def _ordered(factors) -> tuple[OneFactor, ...]:
	# by the partner of point 1, which is distinct for every factor of a factorization
	return tuple(sorted(factors, key=lambda f: f.partner(1)))


@lru_cache(maxsize=1)
def all_one_factors() -> tuple[OneFactor, ...]:
	"""The 15 Perfect Matchings Of K6"""
	found = []

	def extend(remaining, duads):
		if not remaining:
			found.append(OneFactor(frozenset(duads)))
			return
		first = remaining[0]
		for other in remaining[1:]:
			rest = [x for x in remaining if x not in (first, other)]
			extend(rest, duads + [Duad.of(first, other)])

	extend(list(POINTS), [])
	return tuple(sorted(found, key=OneFactor.sort_key))


def search_one_factorizations() -> list[tuple[OneFactor, ...]]:
	"""Backtracks Over The One-Factors, Picking The Factor Through 1x For x = 2..6"""
	factors = all_one_factors()
	results = []

	def extend(chosen, used):
		if len(chosen) == 5:
			results.append(tuple(chosen))
			return
		x = len(chosen) + 2
		target = Duad.of(1, x)
		for factor in factors:
			if target in factor.duads and not (factor.duads & used):
				extend(chosen + [factor], used | factor.duads)

	extend([], frozenset())
	return results


@lru_cache(maxsize=1)
def enumerate_one_factorizations() -> tuple[OneFactorization, ...]:
	"""All One-Factorizations Of K6, Labelled d1..d6 In Published Order

	Raises:
		InternalConsistencyError: If The Search Disagrees With The Published List
	"""
	published = [OneFactorization.parse(text, f"d{i}") for i, text in enumerate(PUBLISHED_FACTORIZATIONS, start=1)]
	searched = {_ordered(f) for f in search_one_factorizations()}
	if searched != {d.factors for d in published} or len(searched) != 6:
		raise InternalConsistencyError("One-Factorization Search Disagrees With The Published List")
	return tuple(published)


def common_factor(di: OneFactorization, dj: OneFactorization) -> OneFactor:
	if di.factors == dj.factors:
		raise ShapeError("A One-Factorization Shares Every Factor With Itself")
	shared = set(di.factors) & set(dj.factors)
	if len(shared) != 1:
		raise InternalConsistencyError(f"{di.label} And {dj.label} Share {len(shared)} One-Factors")
	return shared.pop()


@lru_cache(maxsize=1)
def build_sylvester() -> Graph36:
	"""The Sylvester Graph On The 36 Cells Of The 6 x 6 Array

	(a, d_i) is joined to (b, d_j) when ab is a duad of the one-factor that
	d_i and d_j share.
	"""
	factorizations = enumerate_one_factorizations()
	graph = nx.Graph()
	graph.add_nodes_from(Cell(row, column) for row in POINTS for column in POINTS)

	for i, j in combinations(range(6), 2):
		shared = common_factor(factorizations[i], factorizations[j])
		for duad in shared.duads:
			graph.add_edge(Cell(duad.a, i + 1), Cell(duad.b, j + 1))
			graph.add_edge(Cell(duad.b, i + 1), Cell(duad.a, j + 1))

	return Graph36(graph=graph, factorizations=factorizations)


def edge_list(sigma: Graph36) -> list[tuple[int, int]]:
	return sorted(tuple(sorted((u.variety, w.variety))) for u, w in sigma.graph.edges())


def relation_matrices(sigma: Graph36) -> dict[int, np.ndarray]:
	"""0/1 Matrices Of The Five Relations, In Variety Order"""
	cells = [variety_cell(x) for x in range(1, 37)]
	rows = np.array([c.row for c in cells])
	columns = np.array([c.column for c in cells])

	identity = np.eye(36, dtype=np.int64)
	same_row = (rows[:, None] == rows[None, :]).astype(np.int64) - identity
	same_column = (columns[:, None] == columns[None, :]).astype(np.int64) - identity
	adjacent = np.asarray(sigma.adjacency, dtype=np.int64)
	other = np.ones((36, 36), dtype=np.int64) - identity - same_row - same_column - adjacent

	return {
		Relation.IDENTITY: identity,
		Relation.SAME_ROW: same_row,
		Relation.SAME_COLUMN: same_column,
		Relation.ADJACENT: adjacent,
		Relation.OTHER: other,
	}


def _check_regular(sigma):
	bad = [f"{c} has degree {d}" for c, d in sorted(sigma.graph.degree()) if d != 5]
	return CheckResult("regular of degree 5", not bad, "; ".join(bad))


def _check_girth(sigma):
	adjacency = np.asarray(sigma.adjacency, dtype=np.int64)
	square = adjacency @ adjacency
	triangles = np.argwhere((square * adjacency) > 0)
	if len(triangles):
		u, w = triangles[0]
		return CheckResult("girth at least 5", False, f"edge {u + 1}-{w + 1} lies on a triangle")
	off = square - np.diag(np.diag(square))
	quads = np.argwhere(off > 1)
	if len(quads):
		u, w = quads[0]
		return CheckResult("girth at least 5", False, f"{u + 1} and {w + 1} have {off[u, w]} common neighbours")
	return CheckResult("girth at least 5", True)


def _check_rows_columns(sigma):
	bad = []
	for cell in sorted(sigma.graph.nodes()):
		neighbours = list(sigma.graph.neighbors(cell))
		rows = {n.row for n in neighbours}
		columns = {n.column for n in neighbours}
		if len(rows) != len(neighbours) or len(columns) != len(neighbours) or cell.row in rows or cell.column in columns:
			bad.append(str(cell))
	return CheckResult("neighbours in distinct rows and columns", not bad, ", ".join(bad))


def _check_distance_two(sigma):
	bad = []
	for cell in sorted(sigma.graph.nodes()):
		reached = set(nx.single_source_shortest_path_length(sigma.graph, cell, cutoff=2))
		expected = {c for c in sigma.graph.nodes() if c == cell or (c.row != cell.row and c.column != cell.column)}
		if reached != expected:
			bad.append(str(cell))
	return CheckResult("distance two covers other rows and columns", not bad, ", ".join(bad))


def _check_scheme(sigma):
	relations = relation_matrices(sigma)
	names = sorted(relations)
	for i in names:
		for j in names:
			product = relations[i] @ relations[j]
			for c in names:
				values = np.unique(product[relations[c] == 1])
				if len(values) > 1:
					return CheckResult(
						"association scheme", False,
						f"product of relations {i} and {j} is not constant on relation {c}",
					)
	return CheckResult("association scheme", True)


def verify_sylvester(sigma: Graph36) -> SylvesterReport:
	"""Runs Every Structural Check, Never Stopping At The First Failure"""
	checks = [CheckResult("90 edges", sigma.graph.number_of_edges() == 90, f"{sigma.graph.number_of_edges()} edges")]
	checks.append(_check_regular(sigma))
	checks.append(_check_girth(sigma))
	checks.append(_check_rows_columns(sigma))
	checks.append(_check_distance_two(sigma))
	checks.append(_check_scheme(sigma))
	return SylvesterReport(tuple(checks))


def starfish(sigma: Graph36, center: Cell) -> frozenset:
	"""A Cell Together With Its Five Neighbours"""
	if center not in sigma.graph:
		raise ShapeError(f"{center} Is Not A Cell Of The Graph")
	return frozenset([center, *sigma.graph.neighbors(center)])


def galaxy(sigma: Graph36, column: int) -> Galaxy:
	"""The Six Starfish Centred In Column d_column

	Raises:
		InternalConsistencyError: If They Fail To Partition The Array Or To Form A Latin Square
	"""
	if column not in POINTS:
		raise ShapeError(f"Column d{column} Out Of Range")
	members = tuple(starfish(sigma, Cell(row, column)) for row in POINTS)

	grid = [[0] * 6 for _ in POINTS]
	for row, fish in enumerate(members, start=1):
		for cell in fish:
			if grid[cell.row - 1][cell.column - 1]:
				raise InternalConsistencyError(f"Galaxy d{column} Covers {cell} Twice")
			grid[cell.row - 1][cell.column - 1] = row

	for row, fish in enumerate(members, start=1):
		if len({c.row for c in fish}) != 6 or len({c.column for c in fish}) != 6:
			raise InternalConsistencyError(f"Starfish ({row},d{column}) Is Not A Transversal")

	return Galaxy(column, members, tuple(tuple(line) for line in grid))
