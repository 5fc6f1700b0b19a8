import math
from fractions import Fraction

import numpy as np
import pytest

from design.design import ResolvableDesign, validate
from efficiency.efficiency import a_value, a_value_float_oracle
from enums import Variant
from families.families import gamma
from search.annealer import (
	SearchConfig, SearchState, anneal, local_search, neighbor_move, objective, random_resolvable,
)
from utils.errors import ShapeError
from utils.options import OptionsManager


def test_random_designs_are_valid():
	rng = np.random.default_rng(1)
	for r in (1, 3, 8):
		assert validate(random_resolvable(36, 6, r, rng)) == []


def test_objective_matches_a_value():
	design = gamma(4, Variant.RC)
	assert objective(design) == pytest.approx(35 / float(a_value(design)))
	assert math.isinf(objective(gamma(1, Variant.R)))


def test_incremental_deltas_match_full_recomputation():
	rng = np.random.default_rng(5)
	state = SearchState(random_resolvable(36, 6, 4, rng))
	for _ in range(100):
		before = objective(state.design())
		proposal = neighbor_move(state, rng)
		state.apply(proposal)
		after = objective(state.design())
		assert proposal.delta == pytest.approx(after - before, abs=1e-8)
		assert state.objective == pytest.approx(after, abs=1e-8)


def test_inverse_move_restores_objective():
	rng = np.random.default_rng(9)
	state = SearchState(random_resolvable(36, 6, 3, rng))
	start = state.objective
	proposal = neighbor_move(state, rng)
	state.apply(proposal)
	undo = state.propose(proposal.replicate, proposal.block_a, proposal.block_b, proposal.slot_a, proposal.slot_b)
	assert undo.delta == pytest.approx(-proposal.delta, abs=1e-9)
	state.apply(undo)
	assert state.objective == pytest.approx(start, abs=1e-9)


def test_disconnecting_move_is_infinite():
	# swapping makes the second replicate repeat the first
	design = ResolvableDesign.from_lists(4, 2, [[[1, 2], [3, 4]], [[1, 3], [2, 4]]])
	state = SearchState(design)
	assert math.isfinite(state.objective)
	proposal = state.propose(1, 0, 1, 1, 0)
	assert proposal.delta == math.inf


def test_local_search_reaches_local_optimum():
	rng = np.random.default_rng(3)
	state = local_search(SearchState(random_resolvable(12, 3, 3, rng)))
	for replicate in range(state.r):
		for a in range(4):
			for b in range(a + 1, 4):
				for i in range(3):
					for j in range(3):
						assert state.propose(replicate, a, b, i, j).delta >= -1e-9


def test_config_validation():
	with pytest.raises(ShapeError):
		SearchConfig(v=36, k=5)
	with pytest.raises(ShapeError):
		SearchConfig(cooling_rate=1.5)


def test_config_reads_options():
	OptionsManager.Set("restarts", 3)
	config = SearchConfig.from_options(r=5)
	assert config.restarts == 3
	assert config.r == 5


def test_search_is_reproducible():
	config = SearchConfig(v=12, k=3, r=3, restarts=3, workers=2, seed=17, moves_per_temperature=50, time_budget=None)
	first = anneal(config)
	second = anneal(SearchConfig(v=12, k=3, r=3, restarts=3, workers=1, seed=17, moves_per_temperature=50, time_budget=None))
	assert first.design.replicates == second.design.replicates
	assert first.a_value == second.a_value
	assert first.trace == second.trace


def test_search_result_is_exact():
	result = anneal(SearchConfig(v=12, k=3, r=3, restarts=2, workers=2, seed=4, moves_per_temperature=30, time_budget=None))
	assert isinstance(result.a_value, Fraction)
	assert result.a_value == a_value(result.design)
	assert abs(result.a_float - a_value_float_oracle(result.design)) < 1e-9
	assert result.a_value == max(r.a_value for r in result.restarts)
	assert not result.budget_exhausted


def test_zero_temperature_is_pure_descent():
	result = anneal(SearchConfig(v=12, k=3, r=2, restarts=1, workers=1, seed=2, initial_temperature=0.0, time_budget=None))
	assert len(result.trace) == 1
	assert result.trace[0].temperature == 0.0


def test_tiny_budget_is_flagged():
	result = anneal(SearchConfig(v=36, k=6, r=3, restarts=2, workers=2, seed=1, time_budget=1e-6))
	assert result.budget_exhausted
	assert validate(result.design) == []


def test_zero_budget_returns_at_once():
	result = anneal(SearchConfig(v=12, k=3, r=2, restarts=2, workers=1, seed=1, time_budget=0.0))
	assert result.budget_exhausted
	assert validate(result.design) == []


def test_negative_budget_is_rejected():
	with pytest.raises(ShapeError):
		SearchConfig(v=12, k=3, r=2, time_budget=-1.0)


@pytest.mark.slow
def test_four_replicate_search_is_competitive():
	result = anneal(SearchConfig(r=4, seed=42, time_budget=60.0))
	assert result.a_value >= Fraction(836, 1000)
	assert result.a_value <= Fraction(21, 25)


def test_config_unbounded_budget_from_options():
	OptionsManager.Set("time_budget", None)
	assert SearchConfig.from_options().time_budget is None
