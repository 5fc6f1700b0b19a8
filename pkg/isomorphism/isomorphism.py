from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from design.design import BlockDesign, ResolvableDesign, concurrence_matrix
from efficiency.efficiency import design_parameters, spectrum_of
from isomorphism.refinement import IncidenceStructure, SearchTree
from sylvester.sylvester import Graph36, build_sylvester
from utils.alerts import AlertManager
from utils.errors import DisconnectedError, ShapeError


@dataclass(frozen=True)
class CanonicalForm:
	v: int
	blocks: tuple		# (multiplicity, 1-based sorted block) in canonical order
	labelling: tuple[int, ...] = field(compare=False)		# labelling[x - 1] is the canonical name of variety x

	def __str__(self):
		lines = []
		for multiplicity, block in self.blocks:
			lines.extend([" ".join(str(x) for x in block)] * multiplicity)
		return "\n".join(lines)


@dataclass(frozen=True)
class GroupOrder:
	order: int
	generators: tuple = field(default=(), compare=False)

	def __int__(self):
		return self.order


@dataclass(frozen=True)
class Verdict:
	result: bool
	reason: str = ""
	witness: tuple | None = None

	def __bool__(self):
		return self.result


def _tree(design) -> SearchTree:
	return SearchTree(IncidenceStructure(design.v, design.blocks))


def canonical_form(design) -> CanonicalForm:
	"""Relabelling-Invariant Form Of A Design's Block Multiset"""
	certificate, lab = _tree(design).canonical()
	blocks = tuple((multiplicity, tuple(x + 1 for x in members)) for multiplicity, members in certificate)
	return CanonicalForm(design.v, blocks, tuple(lab[x] + 1 for x in range(design.v)))


def automorphism_order(design) -> GroupOrder:
	"""Order Of The Group Of Variety Permutations Preserving The Block Multiset"""
	generators, order = _tree(design).automorphisms()
	AlertManager.Get().CreateDebug(f"|Aut({design.label})| = {order} From {len(generators)} Generators")
	varieties = tuple(tuple(g[x] + 1 for x in range(design.v)) for g in generators)
	return GroupOrder(order, varieties)


def _row_profile(design) -> tuple:
	concurrence = concurrence_matrix(design)
	return tuple(sorted(tuple(sorted(row)) for row in concurrence.tolist()))


def are_isomorphic(d1, d2) -> Verdict:
	"""Whether A Variety Permutation Maps One Block Multiset Onto The Other

	Cheap invariants reject first: shape, sorted concurrence rows, then the
	full canonical forms decide.
	"""
	shape1 = (d1.v, len(d1.blocks), sorted(len(b) for b in d1.blocks))
	shape2 = (d2.v, len(d2.blocks), sorted(len(b) for b in d2.blocks))
	if shape1 != shape2:
		return Verdict(False, "different shapes")
	if isinstance(d1, ResolvableDesign) and isinstance(d2, ResolvableDesign) and d1.r != d2.r:
		return Verdict(False, "different replicate counts")
	if _row_profile(d1) != _row_profile(d2):
		return Verdict(False, "concurrence rows differ")

	form1, form2 = canonical_form(d1), canonical_form(d2)
	if form1 != form2:
		return Verdict(False, "canonical forms differ")

	# map variety x of d1 to the variety of d2 with the same canonical name
	back = {name: x for x, name in enumerate(form2.labelling, start=1)}
	return Verdict(True, "canonical forms agree", tuple(back[name] for name in form1.labelling))


def _characteristic_in_lambda(design) -> tuple[Fraction, ...]:
	spectrum = spectrum_of(design)
	if not spectrum.connected:
		raise DisconnectedError(f"Design '{design.label}' Is Disconnected")
	s = spectrum.scale
	return tuple(Fraction(c, s ** i) for i, c in enumerate(spectrum.characteristic))


def same_spectrum(d1, d2) -> Verdict:
	"""Whether The Information Matrices Share A Characteristic Polynomial"""
	if d1.v != d2.v:
		return Verdict(False, "different variety counts")
	if _characteristic_in_lambda(d1) != _characteristic_in_lambda(d2):
		return Verdict(False, "characteristic polynomials differ")
	return Verdict(True, "characteristic polynomials agree")


def concurrence_design(design) -> BlockDesign:
	"""Pairs As Blocks Of Size Two, Each Repeated By Its Concurrence"""
	concurrence = concurrence_matrix(design)
	blocks = []
	for i in range(design.v):
		for j in range(i + 1, design.v):
			blocks.extend([(i + 1, j + 1)] * int(concurrence[i, j]))
	return BlockDesign(design.v, tuple(blocks), label=f"concurrences of {design.label}")


def concurrence_equivalent(d1, d2) -> Verdict:
	"""Whether A Variety Permutation Carries One Concurrence Matrix To The Other"""
	if d1.v != d2.v:
		return Verdict(False, "different variety counts")
	if sorted(np.diag(concurrence_matrix(d1)).tolist()) != sorted(np.diag(concurrence_matrix(d2)).tolist()):
		return Verdict(False, "replications differ")
	if _row_profile(d1) != _row_profile(d2):
		return Verdict(False, "concurrence rows differ")
	verdict = are_isomorphic(concurrence_design(d1), concurrence_design(d2))
	if not verdict:
		return Verdict(False, "concurrence graphs differ")
	return Verdict(True, "concurrence graphs agree", verdict.witness)


def graph_as_design(graph) -> BlockDesign:
	"""Edges As Blocks Of Size Two On Vertices Renamed 1..n In Sorted Order"""
	if isinstance(graph, Graph36):
		graph = graph.variety_graph()
	names = {u: i for i, u in enumerate(sorted(graph.nodes()), start=1)}
	blocks = tuple(tuple(sorted((names[u], names[w]))) for u, w in graph.edges())
	return BlockDesign(len(names), blocks, label="graph")


def is_sylvester_graph(graph: nx.Graph) -> Verdict:
	"""Whether A Graph On Varieties 1..36 Is A Copy Of The Sylvester Graph

	Returns:
		Verdict: With witness[x - 1] The Sylvester Variety Matched To x
	"""
	if graph.number_of_nodes() != 36 or graph.number_of_edges() != 90:
		return Verdict(False, "wrong vertex or edge count")
	if any(d != 5 for _, d in graph.degree()):
		return Verdict(False, "not regular of degree 5")
	if sum(nx.triangles(graph).values()):
		return Verdict(False, "contains a triangle")

	mapping = nx.vf2pp_isomorphism(graph, build_sylvester().variety_graph())
	if mapping is None:
		return Verdict(False, "not isomorphic to the Sylvester graph")
	return Verdict(True, "isomorphic to the Sylvester graph", tuple(mapping[x] for x in sorted(graph.nodes())))


def is_sylvester_design(design) -> Verdict:
	"""Whether Concurrences Are 7I + J + Adjacency Of A Sylvester Graph Copy

	Raises:
		ShapeError: Unless v = 36, k = 6 And r = 8
	"""
	r, k = design_parameters(design)
	if design.v != 36 or k != 6 or r != 8:
		raise ShapeError(f"Sylvester Designs Have v=36, k=6, r=8, Got v={design.v}, k={k}, r={r}")

	concurrence = concurrence_matrix(design)
	off = concurrence[~np.eye(36, dtype=bool)]
	if np.any(np.diag(concurrence) != 8) or not set(np.unique(off).tolist()) <= {1, 2}:
		return Verdict(False, "concurrences are not all 1 or 2")

	graph = nx.Graph()
	graph.add_nodes_from(range(1, 37))
	graph.add_edges_from((i + 1, j + 1) for i, j in zip(*np.nonzero(np.triu(concurrence == 2, 1))))
	return is_sylvester_graph(graph)
