import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from fractions import Fraction

import numpy as np

from design.design import ResolvableDesign, concurrence_matrix
from efficiency.efficiency import spectrum_of
from utils.alerts import AlertManager
from utils.errors import ShapeError
from utils.options import DEFAULT_OPTIONS, OptionsManager

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
SINGULAR = 1e-10


@dataclass(frozen=True)
class SearchConfig:
	v: int = 36
	k: int = 6
	r: int = 4
	initial_temperature: float = 0.05
	cooling_rate: float = 0.95
	moves_per_temperature: int = 200
	min_temperature: float = 1e-5
	restarts: int = 8
	seed: int = 42
	time_budget: float | None = 60.0
	recompute_interval: int = 256
	workers: int = 4

	def __post_init__(self):
		if self.k < 2 or self.v % self.k != 0 or self.v // self.k < 2:
			raise ShapeError(f"Need At Least Two Blocks Of Size >= 2, Got v={self.v}, k={self.k}")
		if self.r < 1 or self.restarts < 1 or self.workers < 1 or self.recompute_interval < 1:
			raise ShapeError("Replicates, Restarts, Workers And Recompute Interval Must Be Positive")
		if self.initial_temperature < 0 or not 0 < self.cooling_rate < 1 or self.min_temperature <= 0:
			raise ShapeError("Temperatures Must Be Non-Negative With A Cooling Rate In (0, 1)")
		if self.time_budget is not None and self.time_budget < 0:
			raise ShapeError(f"Time Budget Must Be Non-Negative, Got {self.time_budget}")

	@classmethod
	def from_options(cls, **overrides) -> "SearchConfig":
		"""Fills Every Field Not Overridden From The Persistent Options"""
		values = {}
		for f in fields(cls):
			if overrides.get(f.name) is not None:
				values[f.name] = overrides[f.name]
			elif f.name in DEFAULT_OPTIONS:
				values[f.name] = OptionsManager.Get(f.name)
		return cls(**values)


@dataclass(frozen=True)
class Proposal:
	replicate: int
	block_a: int
	block_b: int
	slot_a: int
	slot_b: int
	delta: float
	wu: np.ndarray | None = field(default=None, repr=False)
	k_inverse: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True)
class TraceRow:
	restart: int
	iteration: int
	temperature: float
	objective: float
	best_a: float


@dataclass(frozen=True)
class RestartResult:
	restart: int
	design: ResolvableDesign
	objective: float
	a_value: Fraction | None
	trace: tuple[TraceRow, ...]
	budget_exhausted: bool


@dataclass(frozen=True)
class SearchResult:
	design: ResolvableDesign
	a_value: Fraction | None
	objective: float
	restart: int
	budget_exhausted: bool
	trace: tuple[TraceRow, ...]
	restarts: tuple[RestartResult, ...]

	@property
	def a_float(self) -> float:
		return float(self.a_value) if self.a_value is not None else 0.0


def random_resolvable(v: int, k: int, r: int, rng: np.random.Generator) -> ResolvableDesign:
	"""Each Replicate Is An Independent Uniform Random Partition Into Blocks Of k"""
	replicates = []
	for _ in range(r):
		order = rng.permutation(v) + 1
		replicates.append(order.reshape(v // k, k).tolist())
	return ResolvableDesign.from_lists(v, k, replicates, label="random")


def objective(design) -> float:
	"""Sum Of Reciprocal Non-Zero Efficiency Factors, Infinite If Disconnected"""
	r, k = design.r, design.k
	information = np.eye(design.v) - concurrence_matrix(design) / float(r * k)
	eigenvalues = np.sort(np.linalg.eigvalsh(information))[1:]
	if eigenvalues[0] < 1e-9:
		return math.inf
	return float(np.sum(1.0 / eigenvalues))


class SearchState:
	"""A Design Under Search Plus The Inverse It Is Scored With

	W = (M + J/v)^-1 where M is the information matrix, so the objective is
	trace(W) - 1. W is kept current through rank-two updates and rebuilt
	from the concurrences every recompute_interval accepted moves.
	"""

	def __init__(self, design: ResolvableDesign, recompute_interval: int = 256):
		self.v, self.k, self.r = design.v, design.k, design.r
		self.scale = float(self.r * self.k)
		self.label = design.label
		self.groups = np.array(design.replicates, dtype=np.int64) - 1
		self.concurrence = np.array(concurrence_matrix(design), dtype=np.int64)
		self.recompute_interval = recompute_interval
		self.accepted = 0
		self.recompute()

	def recompute(self):
		information = np.eye(self.v) - self.concurrence / self.scale
		shifted = information + np.full((self.v, self.v), 1.0 / self.v)
		try:
			self.inverse = np.linalg.inv(shifted)
			self.objective = float(np.trace(self.inverse)) - 1.0
			if np.linalg.cond(shifted) > 1e12:
				raise np.linalg.LinAlgError("near singular")
		except np.linalg.LinAlgError:
			self.inverse = None
			self.objective = math.inf

	def design(self, label: str | None = None) -> ResolvableDesign:
		return ResolvableDesign.from_lists(self.v, self.k, (self.groups + 1).tolist(), label=label or self.label)

	def propose(self, replicate: int, block_a: int, block_b: int, slot_a: int, slot_b: int) -> Proposal:
		"""Scores Swapping Two Varieties Between Two Blocks Of One Replicate"""
		move = (replicate, block_a, block_b, slot_a, slot_b)
		blocks = self.groups[replicate]
		x, y = blocks[block_a, slot_a], blocks[block_b, slot_b]

		if self.inverse is None:
			trial = self.groups.copy()
			trial[replicate, block_a, slot_a], trial[replicate, block_b, slot_b] = y, x
			before = self.objective
			after = objective(ResolvableDesign.from_lists(self.v, self.k, (trial + 1).tolist()))
			delta = -math.inf if math.isinf(before) and not math.isinf(after) else after - before
			if math.isinf(before) and math.isinf(after):
				delta = 0.0
			return Proposal(*move, delta)

		rest_a = np.delete(blocks[block_a], slot_a)
		rest_b = np.delete(blocks[block_b], slot_b)
		w = self.inverse
		# U = [e_y - e_x, 1_{rest_a} - 1_{rest_b}]
		wu = np.column_stack((w[:, y] - w[:, x], w[:, rest_a].sum(axis=1) - w[:, rest_b].sum(axis=1)))
		utwu = np.array([
			wu[y] - wu[x],
			wu[rest_a].sum(axis=0) - wu[rest_b].sum(axis=0),
		])
		capacitance = -self.scale * SWAP + utwu
		if abs(np.linalg.det(capacitance)) < SINGULAR * self.scale * self.scale:
			return Proposal(*move, math.inf)
		k_inverse = np.linalg.inv(capacitance)
		delta = -float(np.trace(k_inverse @ (wu.T @ wu)))
		return Proposal(*move, delta, wu, k_inverse)

	def apply(self, proposal: Proposal):
		blocks = self.groups[proposal.replicate]
		x = blocks[proposal.block_a, proposal.slot_a]
		y = blocks[proposal.block_b, proposal.slot_b]
		rest_a = np.delete(blocks[proposal.block_a], proposal.slot_a)
		rest_b = np.delete(blocks[proposal.block_b], proposal.slot_b)

		self.concurrence[x, rest_a] -= 1
		self.concurrence[rest_a, x] -= 1
		self.concurrence[y, rest_b] -= 1
		self.concurrence[rest_b, y] -= 1
		self.concurrence[y, rest_a] += 1
		self.concurrence[rest_a, y] += 1
		self.concurrence[x, rest_b] += 1
		self.concurrence[rest_b, x] += 1
		blocks[proposal.block_a, proposal.slot_a] = y
		blocks[proposal.block_b, proposal.slot_b] = x

		self.accepted += 1
		if proposal.wu is None or self.accepted % self.recompute_interval == 0:
			self.recompute()
			return
		self.inverse = self.inverse - proposal.wu @ proposal.k_inverse @ proposal.wu.T
		self.objective += proposal.delta


def neighbor_move(state: SearchState, rng: np.random.Generator) -> Proposal:
	"""Draws A Uniform Swap: Replicate, Two Distinct Blocks, One Slot In Each"""
	replicate = int(rng.integers(state.r))
	block_a, block_b = (int(b) for b in rng.choice(state.v // state.k, size=2, replace=False))
	slot_a, slot_b = (int(s) for s in rng.integers(state.k, size=2))
	return state.propose(replicate, block_a, block_b, slot_a, slot_b)


def local_search(state: SearchState, tolerance: float = 1e-10) -> SearchState:
	"""First-Improvement Descent Over Every Swap Until None Improves"""
	improved = True
	while improved:
		improved = False
		for replicate in range(state.r):
			for block_a in range(state.v // state.k):
				for block_b in range(block_a + 1, state.v // state.k):
					for slot_a in range(state.k):
						for slot_b in range(state.k):
							proposal = state.propose(replicate, block_a, block_b, slot_a, slot_b)
							if proposal.delta < -tolerance:
								state.apply(proposal)
								improved = True
	state.recompute()
	return state


def _best_a(value: float, v: int) -> float:
	return (v - 1) / value if math.isfinite(value) and value > 0 else 0.0


def _past(deadline: float | None) -> bool:
	return deadline is not None and time.monotonic() >= deadline


def _run_restart(config: SearchConfig, index: int, seed: np.random.SeedSequence, deadline: float | None) -> RestartResult:
	rng = np.random.default_rng(seed)
	state = SearchState(random_resolvable(config.v, config.k, config.r, rng), config.recompute_interval)
	best_objective = state.objective
	best_groups = state.groups.copy()
	trace = []
	exhausted = False

	temperature = config.initial_temperature
	iteration = 0
	while temperature >= config.min_temperature:
		if _past(deadline):
			exhausted = True
			break
		for _ in range(config.moves_per_temperature):
			proposal = neighbor_move(state, rng)
			if math.isinf(proposal.delta) and proposal.delta > 0:
				continue
			if proposal.delta <= 0 or rng.random() < math.exp(-proposal.delta / temperature):
				state.apply(proposal)
				if state.objective < best_objective:
					best_objective = state.objective
					best_groups = state.groups.copy()
		iteration += 1
		trace.append(TraceRow(index, iteration, temperature, state.objective, _best_a(best_objective, config.v)))
		temperature *= config.cooling_rate

	state.groups = best_groups
	state.concurrence = np.array(concurrence_matrix(state.design()), dtype=np.int64)
	state.recompute()
	if not exhausted and _past(deadline):
		exhausted = True
	if not exhausted:
		local_search(state)
		trace.append(TraceRow(index, iteration + 1, 0.0, state.objective, _best_a(state.objective, config.v)))

	design = state.design(label=f"search-r{config.r}-restart{index}")
	spectrum = spectrum_of(design)
	AlertManager.Get().CreateDebug(f"Restart {index} Finished With A = {spectrum.a_value}")
	return RestartResult(index, design, state.objective, spectrum.a_value, tuple(trace), exhausted)


def anneal(config: SearchConfig) -> SearchResult:
	"""Simulated Annealing Over Resolvable Designs, Maximising A

	Every restart draws from its own child of SeedSequence(seed), so results
	do not depend on how the thread pool schedules restarts. The winner has
	the largest exact A, ties going to the lowest restart index.

	Args:
		config (SearchConfig): Search Parameters

	Returns:
		SearchResult: The Winning Design, Its Exact A And The Merged Trace
	"""
	seeds = np.random.SeedSequence(config.seed).spawn(config.restarts)
	deadline = time.monotonic() + config.time_budget if config.time_budget is not None else None
	AlertManager.Get().CreateAlert(
		f"Searching v={config.v}, k={config.k}, r={config.r} With {config.restarts} Restarts On {config.workers} Workers"
	)

	with ThreadPoolExecutor(max_workers=config.workers) as pool:
		results = list(pool.map(lambda i: _run_restart(config, i, seeds[i], deadline), range(config.restarts)))

	best = None
	for result in results:
		if result.a_value is None:
			continue
		if best is None or result.a_value > best.a_value:
			best = result
	if best is None:
		best = results[0]
		AlertManager.Get().CreateWarning("Every Restart Ended Disconnected")

	exhausted = any(r.budget_exhausted for r in results)
	if exhausted:
		AlertManager.Get().CreateWarning(f"Time Budget Of {config.time_budget}s Exhausted, Result May Be Suboptimal")

	trace = tuple(row for result in results for row in result.trace)
	return SearchResult(
		design=best.design.with_label(f"search-r{config.r}"),
		a_value=best.a_value,
		objective=best.objective,
		restart=best.restart,
		budget_exhausted=exhausted,
		trace=trace,
		restarts=tuple(results),
	)
