"""Individualization-Refinement Search On Variety-Block Incidence Graphs

Vertices 0..v-1 are varieties and v.. are the distinct blocks, each block
carrying its multiplicity as a colour. Ordered partitions are lists of cells;
refinement splits every cell by the sorted cell indices of its members'
neighbours until nothing splits.
"""
from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True)
class Node:
	cells: tuple[tuple[int, ...], ...]
	invariant: tuple

	@property
	def is_discrete(self) -> bool:
		return all(len(c) == 1 for c in self.cells)

	@property
	def target(self) -> int:
		for i, cell in enumerate(self.cells):
			if len(cell) > 1:
				return i
		return -1

	def labelling(self) -> list[int]:
		lab = [0] * len(self.cells)
		for position, cell in enumerate(self.cells):
			lab[cell[0]] = position
		return lab


class IncidenceStructure:
	def __init__(self, v: int, blocks):
		counts = Counter(tuple(sorted(block)) for block in blocks)
		self.v = v
		self.blocks = sorted(counts)
		self.multiplicity = [counts[block] for block in self.blocks]
		self.n = v + len(self.blocks)

		neighbors = [[] for _ in range(self.n)]
		for j, block in enumerate(self.blocks):
			for x in block:
				neighbors[x - 1].append(self.v + j)
				neighbors[self.v + j].append(x - 1)
		self.neighbors = [tuple(n) for n in neighbors]

	def initial_partition(self) -> list[list[int]]:
		cells = [list(range(self.v))]
		for m in sorted(set(self.multiplicity)):
			cells.append([self.v + j for j, count in enumerate(self.multiplicity) if count == m])
		return [c for c in cells if c]

	def refine(self, cells) -> Node:
		"""Splits Cells To The Coarsest Equitable Refinement, Order Preserving"""
		cells = [list(c) for c in cells]
		cell_of = [0] * self.n

		while True:
			for index, cell in enumerate(cells):
				for u in cell:
					cell_of[u] = index

			refined = []
			split = False
			for cell in cells:
				if len(cell) == 1:
					refined.append(cell)
					continue
				groups = {}
				for u in cell:
					signature = tuple(sorted(cell_of[w] for w in self.neighbors[u]))
					groups.setdefault(signature, []).append(u)
				if len(groups) == 1:
					refined.append(cell)
					continue
				split = True
				refined.extend(groups[signature] for signature in sorted(groups))
			cells = refined
			if not split:
				break

		invariant = tuple(
			(len(cell), tuple(sorted(cell_of[w] for w in self.neighbors[cell[0]])))
			for cell in cells
		)
		return Node(tuple(tuple(c) for c in cells), invariant)

	def individualize(self, node: Node, target: int, u: int) -> Node:
		cells = list(node.cells)
		rest = tuple(w for w in cells[target] if w != u)
		cells[target:target + 1] = [(u,), rest]
		return self.refine(cells)

	def certificate(self, lab: list[int]) -> tuple:
		"""Blocks In Label Order, Each As (multiplicity, sorted member labels)"""
		inverse = [0] * self.n
		for u, position in enumerate(lab):
			inverse[position] = u
		return tuple(
			(self.multiplicity[inverse[p] - self.v], tuple(sorted(lab[x] for x in self.neighbors[inverse[p]])))
			for p in range(self.v, self.n)
		)


def orbit(start: int, generators) -> set[int]:
	seen = {start}
	frontier = [start]
	while frontier:
		u = frontier.pop()
		for g in generators:
			w = g[u]
			if w not in seen:
				seen.add(w)
				frontier.append(w)
	return seen


def orbit_representatives(cell, generators) -> list[int]:
	"""First Member Of Each Orbit, In Cell Order"""
	covered = set()
	representatives = []
	for u in cell:
		if u not in covered:
			representatives.append(u)
			covered |= orbit(u, generators)
	return representatives


class SearchTree:
	"""Automorphism Group And Canonical Labelling Of One Incidence Structure"""

	def __init__(self, structure: IncidenceStructure):
		self.structure = structure
		self.path = []
		self.bases = []
		self.generators = []
		self.order = None
		self._first_lab = None
		self._first_certificate = None

	def _first_path(self):
		node = self.structure.refine(self.structure.initial_partition())
		self.path = [node]
		while not node.is_discrete:
			target = node.target
			base = node.cells[target][0]
			self.bases.append(base)
			node = self.structure.individualize(node, target, base)
			self.path.append(node)
		self._first_lab = node.labelling()
		self._first_certificate = self.structure.certificate(self._first_lab)

	def _equivalent_leaf(self, node: Node, depth: int) -> list[int] | None:
		"""A Leaf Below node With The First Leaf's Certificate, Else None"""
		if node.invariant != self.path[depth].invariant:
			return None
		if node.is_discrete:
			lab = node.labelling()
			if self.structure.certificate(lab) == self._first_certificate:
				return lab
			return None
		target = node.target
		for u in node.cells[target]:
			found = self._equivalent_leaf(self.structure.individualize(node, target, u), depth + 1)
			if found is not None:
				return found
		return None

	def automorphisms(self) -> tuple[list[tuple[int, ...]], int]:
		"""Generators And Order Of The Group, By Orbits Along The First Path

		Levels are handled deepest first so that each orbit is computed with
		generators fixing the bases above it; the order is the product of
		those orbit lengths.
		"""
		if self.order is not None:
			return [g for _, g in self.generators], self.order

		self._first_path()
		order = 1
		for level in reversed(range(len(self.bases))):
			node = self.path[level]
			target = node.target
			base = self.bases[level]
			usable = [g for found_at, g in self.generators if found_at >= level]
			reached = orbit(base, usable)

			for w in node.cells[target]:
				if w in reached:
					continue
				lab = self._equivalent_leaf(self.structure.individualize(node, target, w), level + 1)
				if lab is None:
					continue
				inverse = [0] * self.structure.n
				for u, position in enumerate(lab):
					inverse[position] = u
				generator = tuple(inverse[self._first_lab[u]] for u in range(self.structure.n))
				self.generators.append((level, generator))
				usable.append(generator)
				reached = orbit(base, usable)

			order *= len(reached)

		self.order = order
		return [g for _, g in self.generators], order

	def canonical(self) -> tuple[tuple, list[int]]:
		"""Smallest Certificate Over The Leaves Of Maximal Invariant

		Returns:
			tuple: (certificate, labelling) With labelling[u] The Canonical Position Of Vertex u
		"""
		generators, _ = self.automorphisms()
		best = []

		def visit(node, prefix):
			if node.is_discrete:
				lab = node.labelling()
				certificate = self.structure.certificate(lab)
				if not best or certificate < best[0]:
					best[:] = [certificate, lab]
				return
			target = node.target
			usable = [g for g in generators if all(g[p] == p for p in prefix)]
			representatives = orbit_representatives(node.cells[target], usable)
			children = [(u, self.structure.individualize(node, target, u)) for u in representatives]
			top = max(child.invariant for _, child in children)
			for u, child in children:
				if child.invariant == top:
					visit(child, prefix + [u])

		visit(self.path[0], [])
		return best[0], best[1]
