import argparse
import os
import sys

from design.design import dual as dual_of, require_valid
from design.design_io import read_design_file, write_design
from efficiency.efficiency import (
	CYCDESIGN_BOUND_R8, a_value_float_oracle, average_variance, robustness, rounded, spectrum_of,
)
from enums import ExitCode, Family, ReportFormat, Variant
from families.families import catalog, delta, design_by_name, gamma, is_semi_latin, latin_squares, roy_check
from isomorphism.isomorphism import (
	are_isomorphic, automorphism_order, concurrence_equivalent, is_sylvester_design, same_spectrum,
)
from search.annealer import SearchConfig, anneal
from sylvester.sylvester import build_sylvester, edge_list, enumerate_one_factorizations, verify_sylvester
from utils.alerts import AlertManager
from utils.errors import DesignError, InternalConsistencyError
from utils.options import OptionsManager
from utils.report import Report


def seconds(text: str) -> float:
	"""Parses A Time Budget Such As 60 Or 60s"""
	value = text[:-1] if text.endswith("s") else text
	try:
		budget = float(value)
	except ValueError:
		raise argparse.ArgumentTypeError(f"Invalid Time Budget '{text}'")
	if budget < 0:
		raise argparse.ArgumentTypeError(f"Time Budget Must Be Non-Negative, Got '{text}'")
	return budget


class App():
	def __init__(self):
		self.parser = self._build_parser()
		self.out = sys.stdout

	def _build_parser(self) -> argparse.ArgumentParser:
		parser = argparse.ArgumentParser(prog="designs", description="Resolvable designs for 36 varieties in blocks of six")
		parser.add_argument("--precision", type=int, default=None, help="decimal places for A-values")
		parser.add_argument("--format", choices=[ReportFormat.TABLE, ReportFormat.KV, ReportFormat.CSV], default=None)
		parser.add_argument("--seed", type=int, default=None)
		parser.add_argument("--verbose", action="store_true")
		parser.add_argument("--save-defaults", action="store_true", help="persist --precision, --format and --seed to options.json")
		verbs = parser.add_subparsers(dest="verb", required=True)

		generate = verbs.add_parser("generate", help="print a family member")
		generate.add_argument("family_name", nargs="?", metavar="family", help="gamma or delta")
		generate.add_argument("replicates", nargs="?", metavar="r", type=int)
		generate.add_argument("variant_name", nargs="?", metavar="variant", type=Variant.parse)
		generate.add_argument("--family", choices=[Family.GAMMA, Family.DELTA], default=None)
		generate.add_argument("--r", type=int, default=None)
		generate.add_argument("--variant", type=Variant.parse, default=None)
		self.generate_parser = generate
		generate.set_defaults(handler=self.generate)

		evaluate = verbs.add_parser("evaluate", help="exact A-value and efficiency factors")
		evaluate.add_argument("design")
		evaluate.add_argument("--sigma2", type=float, default=1.0)
		evaluate.set_defaults(handler=self.evaluate)

		search = verbs.add_parser("search", help="simulated annealing for a high A-value")
		search.add_argument("--v", type=int, default=None, help="number of varieties")
		search.add_argument("--k", type=int, default=None, help="block size")
		search.add_argument("--r", type=int, default=None)
		search.add_argument("--restarts", type=int, default=None)
		search.add_argument("--workers", type=int, default=None)
		search.add_argument("--budget", "--time-budget", dest="time_budget", type=seconds, default=None, help="seconds, e.g. 60 or 60s")
		search.add_argument("--seed", dest="search_seed", type=int, default=None)
		search.add_argument("--temperature", type=float, default=None)
		search.add_argument("--trace", default=None, help="write the trace as CSV here")
		search.add_argument("--out", default=None, help="write the best design here")
		search.set_defaults(handler=self.search)

		robust = verbs.add_parser("robustness", help="A-value after losing each replicate")
		robust.add_argument("design")
		robust.add_argument("--exclude-disconnected", action="store_true")
		robust.set_defaults(handler=self.robustness)

		iso = verbs.add_parser("isomorphic", help="compare two designs")
		iso.add_argument("first")
		iso.add_argument("second")
		mode = iso.add_mutually_exclusive_group()
		mode.add_argument("--concurrence", action="store_true", help="compare concurrence matrices only")
		mode.add_argument("--spectrum", action="store_true", help="compare efficiency spectra only")
		iso.set_defaults(handler=self.isomorphic)

		autorder = verbs.add_parser("autorder", help="order of the automorphism group")
		autorder.add_argument("design")
		autorder.set_defaults(handler=self.autorder)

		sylvester = verbs.add_parser("sylvester-check", help="Sylvester design test, or verify the graph itself")
		sylvester.add_argument("design", nargs="?")
		sylvester.set_defaults(handler=self.sylvester_check)

		dual = verbs.add_parser("dual", help="dual design with resolvability, semi-Latin and Roy checks")
		dual.add_argument("design")
		dual.set_defaults(handler=self.dual)

		listing = verbs.add_parser("catalog", help="list catalog designs with their A-values")
		listing.set_defaults(handler=self.catalog)

		export = verbs.add_parser("export", help="print Sylvester structures")
		export.add_argument("what", choices=["edges", "factorizations", "squares"])
		export.set_defaults(handler=self.export)
		return parser

	def run(self, argv=None) -> int:
		args = self.parser.parse_args(argv)
		AlertManager.Get().SetVerbose(args.verbose)
		self.precision = args.precision if args.precision is not None else int(OptionsManager.Get("precision"))
		self.format = args.format or OptionsManager.Get("report_format")
		if args.save_defaults:
			self._save_defaults(args)

		try:
			return args.handler(args)
		except DesignError as e:
			AlertManager.Get().CreateWarning(str(e))
			return e.exit_code
		except InternalConsistencyError as e:
			AlertManager.Get().CreateWarning(f"Internal Consistency Failure: {e}")
			return ExitCode.INTERNAL

	def _save_defaults(self, args):
		for key, value in (("precision", args.precision), ("report_format", args.format), ("seed", args.seed)):
			if value is not None:
				OptionsManager.Set(key, value)
		AlertManager.Get().CreateAlert("Saved Defaults")

	def _emit(self, report: Report):
		self.out.write(report.render(self.format))

	def _load(self, argument: str):
		if os.path.exists(argument):
			design = read_design_file(argument)
		else:
			design = design_by_name(argument)
		require_valid(design)
		return design

	def generate(self, args) -> int:
		family = args.family or args.family_name
		r = args.r if args.r is not None else args.replicates
		variant = args.variant or args.variant_name or Variant.PLAIN
		if family not in (Family.GAMMA, Family.DELTA):
			self.generate_parser.error(f"family must be {Family.GAMMA} or {Family.DELTA}")
		if r is None:
			self.generate_parser.error("the number of replicates is required")

		build = gamma if family == Family.GAMMA else delta
		self.out.write(write_design(build(r, variant)))
		return ExitCode.OK

	def evaluate(self, args) -> int:
		design = self._load(args.design)
		spectrum = spectrum_of(design)
		report = Report(title=design.label)
		report.add("label", design.label).add("v", design.v).add("k", design.k).add("r", design.r)
		report.add("connected", str(spectrum.connected).lower())
		if spectrum.connected:
			report.add("a_exact", f"{spectrum.a_value.numerator}/{spectrum.a_value.denominator}")
			report.add("a", rounded(spectrum.a_value, self.precision))
			report.add("a_float", f"{a_value_float_oracle(design):.12f}")
			report.add("average_variance", f"{average_variance(spectrum.a_value, design.r, args.sigma2):.6f}")
		if design.r == 8:
			report.add("cycdesign_bound", CYCDESIGN_BOUND_R8)
		report.table(
			["factor", "multiplicity", "exact"],
			[[str(f.value), f.multiplicity, str(f.exact).lower()] for f in spectrum.factors],
		)
		self._emit(report)
		return ExitCode.OK if spectrum.connected else ExitCode.DISCONNECTED

	def search(self, args) -> int:
		seed = args.search_seed if args.search_seed is not None else args.seed
		config = SearchConfig.from_options(
			v=args.v, k=args.k, r=args.r, restarts=args.restarts, workers=args.workers, seed=seed,
			time_budget=args.time_budget, initial_temperature=args.temperature,
		)
		result = anneal(config)

		if args.trace:
			trace = Report().table(
				["restart", "iteration", "temperature", "objective", "best_a"],
				[[t.restart, t.iteration, f"{t.temperature:.6g}", f"{t.objective:.12f}", f"{t.best_a:.12f}"] for t in result.trace],
			)
			with open(args.trace, "w", encoding="utf-8", newline="") as f:
				f.write(trace.render(ReportFormat.CSV))
		if args.out:
			with open(args.out, "w", encoding="utf-8") as f:
				f.write(write_design(result.design))

		report = Report(title=result.design.label)
		report.add("v", config.v).add("k", config.k).add("r", config.r).add("seed", config.seed).add("restart", result.restart)
		if result.a_value is not None:
			report.add("a_exact", f"{result.a_value.numerator}/{result.a_value.denominator}")
			report.add("a", rounded(result.a_value, self.precision))
			report.add("a_float", f"{result.a_float:.12f}")
		report.add("budget_exhausted", str(result.budget_exhausted).lower())
		self._emit(report)
		if not args.out:
			self.out.write(write_design(result.design))
		return ExitCode.OK if result.a_value is not None else ExitCode.DISCONNECTED

	def robustness(self, args) -> int:
		design = self._load(args.design)
		result = robustness(design, exclude_disconnected=args.exclude_disconnected)
		report = Report(title=f"{design.label} after losing one replicate")
		if result.worst is not None:
			report.add("worst", rounded(result.worst, self.precision))
			report.add("average", rounded(result.average, self.precision))
		report.add("disconnected", ",".join(str(i) for i in result.failures) or "none")
		report.table(
			["replicate", "a"],
			[[d.replicate, rounded(d.a_value, self.precision) if d.connected else "disconnected"] for d in result.deletions],
		)
		self._emit(report)
		return ExitCode.OK if result.worst is not None else ExitCode.DISCONNECTED

	def isomorphic(self, args) -> int:
		first, second = self._load(args.first), self._load(args.second)
		if args.concurrence:
			verdict = concurrence_equivalent(first, second)
		elif args.spectrum:
			verdict = same_spectrum(first, second)
		else:
			verdict = are_isomorphic(first, second)
		report = Report().add("result", str(bool(verdict)).lower()).add("reason", verdict.reason)
		if verdict.witness:
			report.add("witness", " ".join(str(x) for x in verdict.witness))
		self._emit(report)
		return ExitCode.OK if verdict else ExitCode.FALSE

	def autorder(self, args) -> int:
		design = self._load(args.design)
		self._emit(Report().add("label", design.label).add("order", automorphism_order(design).order))
		return ExitCode.OK

	def sylvester_check(self, args) -> int:
		if args.design is None:
			verification = verify_sylvester(build_sylvester())
			report = Report(title="Sylvester graph").table(
				["check", "passed", "witness"],
				[[c.name, str(c.passed).lower(), c.witness] for c in verification.checks],
			)
			self._emit(report)
			return ExitCode.OK if verification.passed else ExitCode.FALSE

		verdict = is_sylvester_design(self._load(args.design))
		report = Report().add("result", str(bool(verdict)).lower()).add("reason", verdict.reason)
		if verdict.witness:
			report.add("witness", " ".join(str(x) for x in verdict.witness))
		self._emit(report)
		return ExitCode.OK if verdict else ExitCode.FALSE

	def dual(self, args) -> int:
		design = self._load(args.design)
		dual_design = dual_of(design)
		report = Report(title=dual_design.label)
		report.add("v", dual_design.v).add("b", dual_design.b)
		report.add("resolvable", str(dual_design.is_resolvable).lower())
		if design.v == 36 and design.k == 6:
			report.add("semi_latin", str(bool(is_semi_latin(dual_design))).lower())
		roy = roy_check(design)
		report.add("a", rounded(roy.a_value, self.precision)).add("a_dual", rounded(roy.dual_a_value, self.precision))
		report.add("roy_residual", roy.residual)
		report.table(["dual_block", "varieties"], [[i, " ".join(str(x) for x in block)] for i, block in enumerate(dual_design.blocks, start=1)])
		self._emit(report)
		return ExitCode.OK

	def catalog(self, args) -> int:
		rows = []
		for entry in catalog():
			spectrum = spectrum_of(entry.design)
			a = rounded(spectrum.a_value, self.precision) if spectrum.connected else "disconnected"
			rows.append([entry.name, entry.design.r, a, entry.provenance])
		self._emit(Report(title="catalog").table(["name", "r", "a", "provenance"], rows))
		return ExitCode.OK

	def export(self, args) -> int:
		if args.what == "edges":
			rows = [[u, w] for u, w in edge_list(build_sylvester())]
			self._emit(Report().table(["u", "v"], rows))
		elif args.what == "factorizations":
			rows = [[d.label, str(d)] for d in enumerate_one_factorizations()]
			self._emit(Report().table(["label", "factors"], rows))
		else:
			for i, square in enumerate(latin_squares(), start=1):
				self.out.write(f"# L{i}\n{square}\n\n")
		return ExitCode.OK


if __name__ == "__main__":
	sys.exit(App().run())
