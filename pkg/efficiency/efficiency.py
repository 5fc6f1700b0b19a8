from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from design.design import ResolvableDesign, concurrence_matrix, drop_replicate
from utils.alerts import AlertManager
from utils.errors import DisconnectedError, InternalConsistencyError, ShapeError
from utils.options import OptionsManager

CYCDESIGN_BOUND_R8 = Decimal("0.854931")

_MU = sympy.Symbol("mu")
ROOT_WIDTH = sympy.Rational(1, 10**15)


@dataclass(frozen=True)
class ScaledInformationMatrix:
	"""Exact Information Matrix M = N / scale, N = rk I - Concurrence"""
	scaled: np.ndarray
	scale: int

	@property
	def v(self) -> int:
		return self.scaled.shape[0]

	def entry(self, i: int, j: int) -> Fraction:
		return Fraction(int(self.scaled[i, j]), self.scale)

	def row_sums(self) -> list[Fraction]:
		return [Fraction(int(total), self.scale) for total in self.scaled.sum(axis=1)]

	def as_float(self) -> np.ndarray:
		return self.scaled.astype(np.float64) / self.scale


@dataclass(frozen=True)
class EfficiencyFactor:
	value: Fraction | float
	multiplicity: int
	exact: bool = True

	def __str__(self):
		return f"{self.value} x{self.multiplicity}"


@dataclass(frozen=True)
class EfficiencySpectrum:
	factors: tuple[EfficiencyFactor, ...]
	a_value: Fraction | None
	connected: bool
	characteristic: tuple[int, ...]
	scale: int

	def expanded(self) -> list[Fraction | float]:
		"""Every Factor Repeated By Its Multiplicity, Largest First"""
		return [f.value for f in self.factors for _ in range(f.multiplicity)]


@dataclass(frozen=True)
class DeletionResult:
	replicate: int		# 1-Based
	a_value: Fraction | None

	@property
	def connected(self) -> bool:
		return self.a_value is not None


@dataclass(frozen=True)
class RobustnessReport:
	deletions: tuple[DeletionResult, ...]
	worst: Fraction | None
	average: Fraction | None

	@property
	def failures(self) -> tuple[int, ...]:
		return tuple(d.replicate for d in self.deletions if not d.connected)


def design_parameters(design) -> tuple[int, int]:
	"""Returns (replication, block size), Rejecting Unequal Designs"""
	if isinstance(design, ResolvableDesign):
		return design.r, design.k

	sizes = set(design.block_sizes())
	replications = set(int(x) for x in design.replication())
	if len(sizes) != 1 or len(replications) != 1:
		raise ShapeError("Design Must Be Equireplicate With Equal Block Sizes")
	return replications.pop(), sizes.pop()


def information_matrix(concurrence: np.ndarray, r: int, k: int) -> ScaledInformationMatrix:
	"""Builds The Exact Information Matrix I - Concurrence / (rk)

	Args:
		concurrence (np.ndarray): v x v Concurrence Matrix
		r (int): Replication
		k (int): Block Size

	Returns:
		ScaledInformationMatrix: Integer Matrix With Its Scale
	"""
	if r < 1 or k < 1:
		raise ShapeError(f"Replication {r} And Block Size {k} Must Be Positive")
	scale = r * k
	v = concurrence.shape[0]
	scaled = scale * np.eye(v, dtype=np.int64) - np.asarray(concurrence, dtype=np.int64)
	if np.any(scaled.sum(axis=1) != 0):
		raise ShapeError("Concurrence Rows Do Not Sum To rk")
	scaled.flags.writeable = False
	return ScaledInformationMatrix(scaled=scaled, scale=scale)


@lru_cache(maxsize=1024)
def _characteristic(key: bytes, v: int) -> tuple[int, ...]:
	rows = np.frombuffer(key, dtype=np.int64).reshape(v, v)
	matrix = DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (v, v), ZZ)
	return tuple(int(c) for c in matrix.charpoly())


def characteristic(information: ScaledInformationMatrix) -> tuple[int, ...]:
	"""Characteristic Polynomial Coefficients Of N, Leading Coefficient First"""
	scaled = np.ascontiguousarray(information.scaled, dtype=np.int64)
	return _characteristic(scaled.tobytes(), information.v)


def _deflate(coefficients: tuple[int, ...], scale: int):
	"""Splits Off Every Integer Root In 0..scale, Returns (roots, remainder)"""
	poly = sympy.Poly(list(coefficients), _MU, domain=ZZ)
	roots = {}
	for mu in range(scale, -1, -1):
		divisor = sympy.Poly(_MU - mu, _MU, domain=ZZ)
		while poly.degree() > 0 and poly.eval(mu) == 0:
			poly = poly.quo(divisor)
			roots[mu] = roots.get(mu, 0) + 1
	return roots, poly


def _irrational_roots(remainder, scale: int) -> list[tuple[float, int]]:
	"""Roots Of The Leftover Factor As (factor value, multiplicity)

	The square-free decomposition fixes every multiplicity exactly; each
	square-free part has simple real roots, isolated to within ROOT_WIDTH
	and reported at 12 significant digits.
	"""
	if remainder.degree() <= 0:
		return []
	_, parts = remainder.sqf_list()
	found = []
	for part, multiplicity in parts:
		for (low, high), _ in part.intervals(eps=ROOT_WIDTH):
			middle = (low + high) / 2
			found.append((float(f"{float(middle) / scale:.12g}"), multiplicity))
	return found


def efficiency_spectrum_exact(information: ScaledInformationMatrix) -> EfficiencySpectrum:
	"""Canonical Efficiency Factors And The Exact A-Value

	N has integer entries so its characteristic polynomial is monic over the
	integers and every rational eigenvalue is an integer in 0..rk. Those are
	divided out exactly; the leftover factor has only irrational roots, which
	are isolated exactly and reported as flagged non-exact floats.

	Args:
		information (ScaledInformationMatrix): The Exact Information Matrix

	Returns:
		EfficiencySpectrum: Factors Largest First, A As A Fraction
	"""
	v, scale = information.v, information.scale
	coefficients = characteristic(information)
	if coefficients[-1] != 0:
		raise InternalConsistencyError("Information Matrix Has No Zero Eigenvalue")

	reduced = coefficients[:-1]
	c0 = reduced[-1] if v >= 2 else 0
	c1 = reduced[-2] if v >= 3 else 1
	connected = v >= 2 and c0 != 0
	a_value = Fraction((v - 1) * -c0, scale * c1) if connected else None

	roots, remainder = _deflate(reduced, scale)
	factors = {}
	for mu, multiplicity in roots.items():
		factors[Fraction(mu, scale)] = [multiplicity, True]

	for value, multiplicity in _irrational_roots(remainder, scale):
		entry = factors.setdefault(value, [0, False])
		entry[0] += multiplicity

	ordered = sorted(factors.items(), key=lambda item: float(item[0]), reverse=True)
	return EfficiencySpectrum(
		factors=tuple(EfficiencyFactor(value, m, exact) for value, (m, exact) in ordered),
		a_value=a_value,
		connected=connected,
		characteristic=coefficients,
		scale=scale,
	)


def spectrum_of(design) -> EfficiencySpectrum:
	r, k = design_parameters(design)
	return efficiency_spectrum_exact(information_matrix(concurrence_matrix(design), r, k))


def a_value(design) -> Fraction:
	"""Exact Harmonic Mean Of The Canonical Efficiency Factors

	Raises:
		DisconnectedError: When The Design Is Disconnected
	"""
	spectrum = spectrum_of(design)
	if not spectrum.connected:
		raise DisconnectedError(f"Design '{design.label}' Is Disconnected")
	AlertManager.Get().CreateDebug(f"A({design.label}) = {spectrum.a_value}")
	return spectrum.a_value


def a_value_float_oracle(design) -> float:
	"""Floating Point A-Value From Symmetric Eigenvalues, For Cross-Checks"""
	r, k = design_parameters(design)
	information = information_matrix(concurrence_matrix(design), r, k).as_float()
	eigenvalues = np.sort(np.linalg.eigvalsh(information))[1:]
	if eigenvalues.size == 0 or eigenvalues[0] < 1e-9:
		raise DisconnectedError(f"Design '{design.label}' Is Disconnected")
	return float(eigenvalues.size / np.sum(1.0 / eigenvalues))


def average_variance(a: Fraction | float, r: int, sigma2: float = 1.0) -> float:
	"""Average Pairwise Variance 2 sigma^2 / (r A)"""
	if a <= 0:
		raise ShapeError(f"A-Value Must Be Positive, Got {a}")
	if r < 1:
		raise ShapeError(f"Replication Must Be Positive, Got {r}")
	return 2.0 * sigma2 / (r * float(a))


def square_lattice_bound(n: int, r: int) -> Fraction:
	"""A-Value Of A Square Lattice Design For n^2 Varieties In r Replicates

	Its factors are (r-1)/r with multiplicity r(n-1) and 1 with multiplicity
	(n-1)(n+1-r).
	"""
	if n < 2 or not 2 <= r <= n + 1:
		raise ShapeError(f"Square Lattice Needs n >= 2 And 2 <= r <= n+1, Got n={n}, r={r}")
	reciprocal_sum = Fraction(r * (n - 1) * r, r - 1) + (n - 1) * (n + 1 - r)
	return Fraction(n * n - 1) / reciprocal_sum


def robustness(design: ResolvableDesign, exclude_disconnected: bool = False, workers: int | None = None) -> RobustnessReport:
	"""Evaluates A After Deleting Each Replicate In Turn

	Args:
		design (ResolvableDesign): Design With At Least Two Replicates
		exclude_disconnected (bool, optional): Leave Disconnected Deletions Out Of Worst And Mean Instead Of Failing Them
		workers (int, optional): Thread Count. Defaults To The 'workers' Option.

	Returns:
		RobustnessReport: Per Deletion Values In Replicate Order, Worst And Exact Mean
	"""
	if design.r < 2:
		raise ShapeError("Robustness Needs At Least Two Replicates")
	if workers is None:
		workers = int(OptionsManager.Get("workers"))

	def evaluate(index):
		spectrum = spectrum_of(drop_replicate(design, index))
		return DeletionResult(index + 1, spectrum.a_value)

	with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
		deletions = tuple(pool.map(evaluate, range(design.r)))

	values = [d.a_value for d in deletions if d.connected]
	if len(values) != len(deletions):
		AlertManager.Get().CreateWarning(
			f"Deleting Replicates {', '.join(str(d.replicate) for d in deletions if not d.connected)} Disconnects '{design.label}'"
		)
		if not exclude_disconnected or not values:
			return RobustnessReport(deletions, None, None)

	return RobustnessReport(deletions, min(values), sum(values, Fraction(0)) / len(values))


def rounded(value: Fraction | float | Decimal, places: int) -> Decimal:
	"""Rounds Half Away From Zero To A Fixed Number Of Decimal Places"""
	with localcontext() as context:
		context.prec = 80
		if isinstance(value, Fraction):
			exact = Decimal(value.numerator) / Decimal(value.denominator)
		else:
			exact = Decimal(str(value))
		return exact.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)
