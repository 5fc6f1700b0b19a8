from collections import Counter
from dataclasses import dataclass

import numpy as np

from utils.errors import ShapeError, ValidationError

Block = tuple[int, ...]
Replicate = tuple[Block, ...]


@dataclass(frozen=True)
class Violation:
	message: str
	replicate: int | None = None	# 1-Based
	block: int | None = None		# 1-Based

	def __str__(self):
		where = []
		if self.replicate is not None:
			where.append(f"Replicate {self.replicate}")
		if self.block is not None:
			where.append(f"Block {self.block}")
		if where:
			return f"{', '.join(where)}: {self.message}"
		return self.message


@dataclass(frozen=True)
class BlockDesign:
	"""A Plain Block Design On Varieties 1..v, Blocks Kept In Order

	resolution holds groups of 0-based block indices when the blocks are known
	to split into groups that each contain every variety exactly once.
	"""
	v: int
	blocks: tuple[Block, ...]
	label: str = ""
	resolution: tuple[tuple[int, ...], ...] | None = None

	@property
	def b(self) -> int:
		return len(self.blocks)

	@property
	def is_resolvable(self) -> bool:
		return self.resolution is not None

	def replication(self) -> np.ndarray:
		counts = np.zeros(self.v, dtype=np.int64)
		for block in self.blocks:
			for x in block:
				counts[x - 1] += 1
		return counts

	def block_sizes(self) -> tuple[int, ...]:
		return tuple(len(block) for block in self.blocks)

	def as_block_design(self) -> "BlockDesign":
		return self


@dataclass(frozen=True)
class ResolvableDesign:
	v: int
	k: int
	replicates: tuple[Replicate, ...]
	label: str = ""

	@classmethod
	def from_lists(cls, v: int, k: int, replicates, label: str = "") -> "ResolvableDesign":
		"""Builds A Design From Nested Lists, Sorting The Members Of Each Block

		Args:
			v (int): Number Of Varieties
			k (int): Block Size
			replicates: Iterable Of Replicates, Each An Iterable Of Blocks
			label (str, optional): Free Text Label. Defaults to "".

		Returns:
			ResolvableDesign: The Design, Block And Replicate Order Preserved
		"""
		normalised = tuple(
			tuple(tuple(sorted(int(x) for x in block)) for block in replicate)
			for replicate in replicates
		)
		return cls(v=v, k=k, replicates=normalised, label=label)

	@property
	def r(self) -> int:
		return len(self.replicates)

	@property
	def b(self) -> int:
		return sum(len(replicate) for replicate in self.replicates)

	@property
	def blocks(self) -> tuple[Block, ...]:
		return tuple(block for replicate in self.replicates for block in replicate)

	def as_block_design(self) -> BlockDesign:
		groups = []
		start = 0
		for replicate in self.replicates:
			groups.append(tuple(range(start, start + len(replicate))))
			start += len(replicate)
		return BlockDesign(v=self.v, blocks=self.blocks, label=self.label, resolution=tuple(groups))

	def with_label(self, label: str) -> "ResolvableDesign":
		return ResolvableDesign(v=self.v, k=self.k, replicates=self.replicates, label=label)


def validate(design: ResolvableDesign) -> list[Violation]:
	"""Lists Every Broken Invariant Of A Resolvable Design

	Args:
		design (ResolvableDesign): The Design To Check

	Returns:
		list[Violation]: Empty When The Design Is Valid
	"""
	violations = []
	v, k = design.v, design.k

	if k < 1 or v < 1:
		violations.append(Violation(f"Variety Count {v} And Block Size {k} Must Be Positive"))
		return violations
	if v % k != 0:
		violations.append(Violation(f"Variety Count {v} Is Not A Multiple Of Block Size {k}"))
	if design.r == 0:
		violations.append(Violation("No Replicates"))

	for i, replicate in enumerate(design.replicates, start=1):
		if len(replicate) != v // k:
			violations.append(Violation(f"Replicate Has {len(replicate)} Blocks, Expected {v // k}", i))

		holders = {}
		for j, block in enumerate(replicate, start=1):
			if len(block) != k:
				violations.append(Violation(f"Block Has {len(block)} Varieties, Expected {k}", i, j))
			for x, count in sorted(Counter(block).items()):
				if not 1 <= x <= v:
					violations.append(Violation(f"Variety {x} Out Of Range 1..{v}", i, j))
					continue
				if count > 1:
					violations.append(Violation(f"Variety {x} Repeated In Block", i, j))
				holders.setdefault(x, []).append(j)

		for x in range(1, v + 1):
			found = holders.get(x, [])
			if not found:
				violations.append(Violation(f"Variety {x} Missing From Replicate", i))
			elif len(found) > 1:
				listed = ", ".join(str(j) for j in found)
				violations.append(Violation(f"Variety {x} Occurs In Blocks {listed}", i))

	return violations


def require_valid(design):
	if isinstance(design, ResolvableDesign):
		violations = validate(design)
		if violations:
			raise ValidationError(violations)
		return

	for j, block in enumerate(design.blocks, start=1):
		for x in block:
			if not 1 <= x <= design.v:
				raise ValidationError([Violation(f"Variety {x} Out Of Range 1..{design.v}", block=j)])
		if len(set(block)) != len(block):
			raise ValidationError([Violation("Repeated Variety In Block", block=j)])


def incidence_matrix(design) -> np.ndarray:
	"""Returns The v x b Variety-By-Block Incidence Matrix"""
	blocks = design.blocks
	incidence = np.zeros((design.v, len(blocks)), dtype=np.int64)
	for j, block in enumerate(blocks):
		for x in block:
			incidence[x - 1, j] += 1
	return incidence


def concurrence_matrix(design) -> np.ndarray:
	"""Computes The Concurrence Matrix, Diagonal Holding Replications

	Args:
		design (ResolvableDesign | BlockDesign): A Valid Design

	Returns:
		np.ndarray: Read-Only v x v Integer Matrix
	"""
	require_valid(design)
	incidence = incidence_matrix(design)
	concurrence = incidence @ incidence.T
	concurrence.flags.writeable = False
	return concurrence


def canonical(design: ResolvableDesign) -> ResolvableDesign:
	"""Sorts The Blocks Inside Every Replicate, Keeping Replicate Order"""
	return ResolvableDesign(
		v=design.v,
		k=design.k,
		replicates=tuple(tuple(sorted(replicate)) for replicate in design.replicates),
		label=design.label,
	)


def take_replicates(design: ResolvableDesign, indices, label: str = "") -> ResolvableDesign:
	replicates = tuple(design.replicates[i] for i in indices)
	return ResolvableDesign(v=design.v, k=design.k, replicates=replicates, label=label)


def drop_replicate(design: ResolvableDesign, index: int) -> ResolvableDesign:
	"""Removes The Replicate At A 0-Based Index"""
	if not 0 <= index < design.r:
		raise ShapeError(f"Replicate Index {index} Out Of Range 0..{design.r - 1}")
	kept = [i for i in range(design.r) if i != index]
	return take_replicates(design, kept, label=f"{design.label} without replicate {index + 1}")


def relabel(design, permutation):
	"""Renames Varieties, permutation[x - 1] Is The New Name Of Variety x"""
	if sorted(permutation) != list(range(1, design.v + 1)):
		raise ShapeError("Relabelling Is Not A Permutation Of The Varieties")

	def rename(block):
		return tuple(sorted(permutation[x - 1] for x in block))

	if isinstance(design, ResolvableDesign):
		replicates = tuple(tuple(rename(block) for block in replicate) for replicate in design.replicates)
		return ResolvableDesign(v=design.v, k=design.k, replicates=replicates, label=design.label)
	return BlockDesign(
		v=design.v,
		blocks=tuple(rename(block) for block in design.blocks),
		label=design.label,
		resolution=design.resolution,
	)


def find_resolution(design: BlockDesign) -> tuple[tuple[int, ...], ...] | None:
	"""Searches For A Grouping Of The Blocks Into Parallel Classes

	Every group must contain each variety exactly once. Exact cover by
	backtracking; the lowest unused block always opens the next group.

	Returns:
		tuple | None: Groups Of 0-Based Block Indices, Or None If Impossible
	"""
	sizes = set(design.block_sizes())
	if len(sizes) != 1:
		return None
	k = sizes.pop()
	if k == 0 or design.v % k != 0:
		return None
	per_group = design.v // k
	if design.b % per_group != 0:
		return None

	block_sets = [frozenset(block) for block in design.blocks]
	if any(len(s) != k for s in block_sets):
		return None
	holders = {x: [] for x in range(1, design.v + 1)}
	for i, s in enumerate(block_sets):
		for x in s:
			holders[x].append(i)

	everything = frozenset(range(1, design.v + 1))
	unused = set(range(design.b))
	groups = []

	def open_group():
		if not unused:
			return True
		first = min(unused)
		unused.remove(first)
		if fill([first], block_sets[first]):
			return True
		unused.add(first)
		return False

	def fill(group, covered):
		if len(covered) == design.v:
			groups.append(tuple(sorted(group)))
			if open_group():
				return True
			groups.pop()
			return False

		x = min(everything - covered)
		for i in holders[x]:
			if i in unused and not (block_sets[i] & covered):
				unused.remove(i)
				group.append(i)
				if fill(group, covered | block_sets[i]):
					return True
				group.pop()
				unused.add(i)
		return False

	if open_group():
		return tuple(groups)
	return None


def dual(design) -> BlockDesign:
	"""Interchanges Blocks And Varieties

	Dual variety j is the j-th block of the design (in replicate order) and
	dual block i lists the blocks containing variety i.

	Args:
		design (ResolvableDesign | BlockDesign): A Valid Design

	Returns:
		BlockDesign: The Dual, With A Resolution When One Exists
	"""
	require_valid(design)
	holders = [[] for _ in range(design.v)]
	for j, block in enumerate(design.blocks, start=1):
		for x in block:
			holders[x - 1].append(j)

	blocks = tuple(tuple(sorted(h)) for h in holders)
	name = f"dual of {design.label}" if design.label else "dual"
	plain = BlockDesign(v=len(design.blocks), blocks=blocks, label=name)
	return BlockDesign(v=plain.v, blocks=plain.blocks, label=name, resolution=find_resolution(plain))
