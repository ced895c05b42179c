"""
-------------------------------------------------------------------------------

    hypermono - exact algebra for the monodromy of hypersurfaces in CP^4

    This script is licensed under the MIT License.

-------------------------------------------------------------------------------
Python script to run every hypermono computation for a degree d and assemble
the result: characteristic classes, the mapping class group table row, the
quadratic refinement and its automorphisms, the Pham/Looijenga coinvariants,
the James periodicity verdict and the Adams charts at p = 2 and p = 3.

The summary states the extension

    0 -> Theta_7/Ker -> Im(alpha) -> Aut(pi_3, lambda, mu) -> 0

with concrete groups, and whether Im(alpha) is residually finite.

Sub-computations that do not apply to d are reported as skipped, with the
reason. A skipped computation is not a failure. The exit code is 0 only when
nothing failed and every checked invariant holds.

-------
Requirements:
tabulate: https://pypi.org/project/tabulate/
numpy, galois (through steenrod_ext.py)
the other hypermono scripts in the same folder

-------
Usage:
python3 ./report.py <command> [options]

Commands:
report              full report for one degree (--d)
batch               cheap checks over a degree range (--from, --to)
mcg-table           mapping class group table over a range (--from, --to)
pham                Pham/Looijenga certificates for one degree (--d)
jtheory check       James periodicity verdict (--d, optional --m)
ext                 Adams E2 chart and E_infinity orders (--p, --d)
quadform scan       invariant subgroup scan (--n, --g, --arf)

The environment variable HYPERMONO_MAX_D moves the pham degree bound. Results
beyond the default bound carry no runtime guarantee.

-------
Options:
-h, --help          display this help
-d, --d=            degree of the hypersurface
--from=, --to=      degree range (inclusive)
-e, --emit=         output format: json or text (ext also takes svg)
                    default is json
-f, --out_file=     write the output to this file instead of stdout
--no-charts         report: skip the Adams charts
--dump=             pham: write the relation matrix to this file
--allow-large       pham: allow d up to the hard bound
--m=                jtheory check: exponent of the shift 2^m - 5
--p=                ext: prime, 2 or 3
--smax=, --nmax=    ext: chart range, default 6 and 9
--n=, --g=, --arf=  quadform scan: modulus, genus and Arf invariant
-l, --log_file=     define the filepath/filename where to write the logs
                    default is "./script.log"

-------
Examples:
python3 ./report.py report --d 4 --emit json
python3 ./report.py mcg-table --from 1 --to 32 --emit text
python3 ./report.py pham --d 3 --dump ./pham_3.txt
python3 ./report.py jtheory check --d 8
python3 ./report.py ext --p 3 --d 9 --smax 6 --nmax 9 --emit svg
python3 ./report.py quadform scan --n 4 --g 2 --arf 0
"""

#####################################################################
#### IMPORTS ####
import getopt
import json
import logging
import sys
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import hypersurface
import jtheory
import kreck_su
import pham
import quadform
import steenrod_ext
from exactalg import (
    BoundExceededError,
    DegreeError,
    FiniteAbelianGroup,
    HypermonoError,
    PatternError,
)

try:
    import tabulate
except:
    print("""
        Critical:
        \"tabulate\" package is missing. Please use the pip command to install it.

        # Linux/macOS
        python3 -m pip install tabulate

        # Windows
        py -m pip install tabulate
        """)
    sys.exit(2)

#####################################################################
#### PARAMETERS #####
LOG_FILE = "./script.log"
SCHEMA = "hypermono/1"
EMIT_FORMATS = ("json", "text")
CHART_FORMATS = ("json", "text", "svg")
COMMANDS = ("report", "batch", "mcg-table", "pham", "jtheory", "ext", "quadform")
MODULES = ("exactalg", "hypersurface", "kreck_su", "quadform", "pham", "jtheory", "steenrod_ext")
EXTENSION = "0 -> Theta_7/Ker -> Im(alpha) -> Aut(pi_3, lambda, mu) -> 0"
# stem -> E_infinity order at p = 2, by d mod 8
EINF_ORDERS_P2 = {0: {5: 4, 7: 32, 8: 4}, 4: {5: 4, 7: 16, 8: 4}}
EINF_ALTERNATIVES_P3 = {7: (9, 3)}

#####################################################################
#### LOGS ####
LOGGER = logging.getLogger(__name__)


#####################################################################
# CONSOLE STATUS
class ProgressBar():
    """Per-module status lines on stderr, so stdout only carries the output."""

    GLYPHS = {
        "running": " ",
        "ok": "\033[92m✔\033[0m",
        "skipped": "\033[33m-\033[0m",
        "failed": "\033[31m✖\033[0m",
    }
    WIDTH = 80

    def __init__(self, stream=None):
        self.stream = stream
        self.steps_total = 0
        self.steps_count = 0

    def _emit(self, text: str):
        print(text, file=self.stream or sys.stderr)

    def _counter(self) -> str:
        if not self.steps_total:
            return ""
        done = min(self.steps_count, self.steps_total)
        return f" [{done}/{self.steps_total}]"

    def _step(self, message: str, status: str, inc: bool = False, display_pbar: bool = True):
        if inc:
            self.steps_count += 1
        counter = self._counter() if display_pbar else ""
        self._emit(f"{message} ".ljust(self.WIDTH - 12, ".") + f" {self.GLYPHS[status]}{counter}")

    def set_steps_total(self, steps_total: int):
        self.steps_total = steps_total
        self.steps_count = 0

    def log_message(self, message, display_pbar: bool = True):
        self._step(message, "running", display_pbar=display_pbar)

    def log_success(self, message, inc: bool = False, display_pbar: bool = True):
        LOGGER.info(f"{message}: Success")
        self._step(message, "ok", inc=inc, display_pbar=display_pbar)

    def log_skipped(self, message, inc: bool = False, display_pbar: bool = True):
        LOGGER.info(f"{message}: Skipped")
        self._step(message, "skipped", inc=inc, display_pbar=display_pbar)

    def log_failure(self, message, inc: bool = False, display_pbar: bool = True):
        LOGGER.error(f"{message}: Failure")
        self._step(message, "failed", inc=inc, display_pbar=display_pbar)

    def log_title(self, message):
        LOGGER.info(message)
        self._emit(f" {message} ".center(self.WIDTH, "-"))


pb = ProgressBar()


#####################################################################
#### CONSTANTS REGISTRY ####
@dataclass(frozen=True)
class RegistryEntry:
    """A quoted constant: anchor says what it is, quote is the source text it is read from."""

    name: str
    value: object
    anchor: str
    quote: str

    def to_dict(self) -> dict:
        if isinstance(self.value, FiniteAbelianGroup):
            value = self.value.to_dict()
        else:
            value = self.value
        return {"name": self.name, "value": value, "anchor": self.anchor, "quote": self.quote}


SPLIT_SEQUENCE_QUOTE = "simplifies to a split short exact sequence"


@dataclass(frozen=True)
class ConstantsRegistry:
    """Quoted constants. Entries are read-only and each carries its anchor and quote."""

    entries: tuple

    @classmethod
    def default(cls) -> "ConstantsRegistry":
        z = FiniteAbelianGroup.from_cyclic_orders
        return cls(
            entries=(
                RegistryEntry(
                    "pi7s_sphere",
                    z([240]),
                    "stable 7-stem: pi_7^s(S^0) = Z/240{sigma}",
                    r"\pi_7^s(S^0) = \mathbb{Z}/240\{\sigma\}",
                ),
                RegistryEntry(
                    "pi7s_so_mod_so6",
                    z([4]),
                    "stable 7-stem of SO/SO(6): Z/4",
                    r"\mathbb{Z}/4 = \pi_7^s(\mathrm{SO}/\mathrm{SO}(6))",
                ),
                RegistryEntry(
                    "theta7",
                    z([kreck_su.THETA7_ORDER]),
                    "homotopy 7-spheres: Theta_7 = Z/28",
                    r"\Theta_7 = \mathbb{Z}/28",
                ),
                RegistryEntry(
                    "sigma_f3_adams_filtration",
                    2,
                    "mod 3 Adams chart of the sphere: sigma in filtration 2",
                    r"has $\mathbb{F}_3$-Adams filtration 2",
                ),
                RegistryEntry(
                    "w_g1_framed_h1_kernel",
                    z([4]),
                    "framed W_1 bordism, split sequence: Z/4 term",
                    SPLIT_SEQUENCE_QUOTE,
                ),
                RegistryEntry(
                    "w_g1_framed_h1_sphere",
                    z([240]),
                    "framed W_1 bordism, split sequence: Z/240 term",
                    SPLIT_SEQUENCE_QUOTE,
                ),
            )
        )

    def __getitem__(self, name: str) -> RegistryEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def names(self) -> list:
        return [entry.name for entry in self.entries]

    def to_dict(self) -> dict:
        return {entry.name: entry.to_dict() for entry in self.entries}


REGISTRY = ConstantsRegistry.default()


#####################################################################
#### REPORT TYPES ####
@dataclass(frozen=True)
class ModuleOutcome:
    """ok, skipped (with reason) or failed (with the raising module and message)."""

    module: str
    status: str
    data: Optional[dict] = None
    reason: Optional[str] = None
    checks: tuple = ()

    @property
    def failed_checks(self) -> list:
        return [name for name, value in self.checks if not value]

    def to_dict(self) -> dict:
        out = {"module": self.module, "status": self.status}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.checks:
            out["checks"] = {name: value for name, value in self.checks}
        if self.data is not None:
            out["data"] = self.data
        return out


@dataclass(frozen=True)
class DegreeReport:
    d: int
    outcomes: tuple
    theorem_summary: dict
    charts: tuple = ()

    def outcome(self, module: str) -> ModuleOutcome:
        for outcome in self.outcomes:
            if outcome.module == module:
                return outcome
        raise KeyError(module)

    @property
    def failures(self) -> list:
        return [o for o in self.outcomes if o.status == "failed"]

    @property
    def passed(self) -> bool:
        return not self.failures and not any(o.failed_checks for o in self.outcomes)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "d": self.d,
            "passed": self.passed,
            "constants": REGISTRY.to_dict(),
            "theorem_summary": self.theorem_summary,
            "modules": {o.module: o.to_dict() for o in self.outcomes},
        }


#####################################################################
#### SECTIONS ####
def _run(module: str, section, d: int, progress: ProgressBar = None) -> ModuleOutcome:
    message = f"{module} (d={d})"
    if progress:
        progress.log_message(message)
    try:
        outcome = section(d)
    except HypermonoError as err:
        LOGGER.error("Exception occurred", exc_info=True)
        outcome = ModuleOutcome(module, "failed", reason=f"{err.module}: {err}")
    except Exception as err:
        LOGGER.error("Exception occurred", exc_info=True)
        outcome = ModuleOutcome(module, "failed", reason=f"{module}: {type(err).__name__}: {err}")
    if progress:
        if outcome.status == "ok" and not outcome.failed_checks:
            progress.log_success(message, inc=True)
        elif outcome.status == "skipped":
            progress.log_skipped(message, inc=True)
        else:
            progress.log_failure(message, inc=True)
    return outcome


def _hypersurface_section(d: int) -> ModuleOutcome:
    invariants = hypersurface.compute_invariants(d)
    data = invariants.to_dict()
    data["cohomology_ranks"] = list(hypersurface.cohomology_ranks(d))
    data["eta_restriction"] = hypersurface.mu_restriction_on_eta(d).to_dict()
    data["degenerate_note"] = hypersurface.degenerate_note(d)
    expected = (5 - d, d * d - 5 * d + 10, -(d**3) + 5 * d * d - 10 * d + 10)
    checks = (
        ("chern_closed_form", invariants.chern == expected),
        ("b3_closed_form", invariants.b3 == _b3_closed_form(d)),
    )
    return ModuleOutcome("hypersurface", "ok", data=data, checks=checks)


def _b3_closed_form(d: int) -> int:
    return d**4 - 5 * d**3 + 10 * d**2 - 10 * d + 4


def _kreck_su_section(d: int) -> ModuleOutcome:
    data = kreck_su.table_row(d).to_dict()
    data.update(kreck_su.finite_residual(d))
    checks = (
        ("theta7_order", kreck_su.theta7_order_check(d)),
        ("quotient_cyclic", kreck_su.theta7_mod_ker(d).is_cyclic),
    )
    return ModuleOutcome("kreck_su", "ok", data=data, checks=checks)


@lru_cache(maxsize=None)
def _scans(arf_value: int) -> tuple:
    return tuple(
        quadform.invariant_subgroup_scan(n, quadform.MAX_GENUS_SCAN, arf_value)
        for n in quadform.SCAN_MODULI
    )


def _quadform_section(d: int) -> ModuleOutcome:
    g = hypersurface.compute_invariants(d).g
    if g == 0:
        return ModuleOutcome("quadform", "skipped", reason="b3 = 0, no S^3 x S^3 summands")
    arf_value = quadform.arf_of_hypersurface(d) if d % 2 else None
    genus = min(g, quadform.MAX_GENUS_SCAN)
    space = quadform.QuadraticSpace.standard(genus, arf_value or 0)
    orbits = quadform.orbit_check(space)
    scans = _scans(arf_value or 0)
    data = {
        "arf": arf_value,
        "genus": g,
        "genus_checked": genus,
        "pi3_model": quadform.Pi3Model.build(d, genus=genus).to_dict(),
        "ker_rho": quadform.ker_rho_description(d).label(),
        "orbits": orbits.to_dict(),
        "scans": [scan.to_dict() for scan in scans],
    }
    checks = (
        ("arf_zero_count", quadform.arf(space) == quadform.arf_by_zero_count(space)),
        ("orbits_transitive_on_levels", orbits.transitive_on_levels),
        ("invariant_subgroups", all(s.all_of_form_k_times_lattice for s in scans)),
    )
    return ModuleOutcome("quadform", "ok", data=data, checks=checks)


def _pham_section(d: int) -> ModuleOutcome:
    if d < 2:
        return ModuleOutcome("pham", "skipped", reason="the Pham module needs d >= 2")
    try:
        pham.check_degree(d)
    except BoundExceededError:
        return ModuleOutcome(
            "pham", "skipped", reason=f"d={d} above the Pham degree bound {pham.max_degree()}"
        )
    data = pham.pham_summary(d)
    checks = [
        ("pham_rank", data["pham_rank"] == data["pham_rank_expected"]),
        ("pham_torsion_free", data["pham_torsion_free"]),
        ("quotient_rank_is_b3", data["quotient_rank"] == data["b3"]),
        ("coinvariant_orders", data["quotient_map"]["source_order"] == d
         and data["quotient_map"]["target_order"] == d),
    ]
    # d = 2 is recorded, not asserted
    if d >= 3:
        checks.append(("eta_vanishing", data["eta_vanishing"]))
    return ModuleOutcome("pham", "ok", data=data, checks=tuple(checks))


def _jtheory_section(d: int) -> ModuleOutcome:
    if d % 4:
        return ModuleOutcome("jtheory", "skipped", reason="James periodicity applies when 4 | d")
    verdict = jtheory.james_periodicity_check(d)
    data = verdict.to_dict()
    data["lattice"] = [list(v) for v in jtheory.j2_kernel_lattice(jtheory.DEFAULT_KS)]
    checks = (
        ("james_periodicity", verdict.holds),
        ("psi_reduction", verdict.reduction_holds),
    )
    return ModuleOutcome("jtheory", "ok", data=data, checks=checks)


@lru_cache(maxsize=None)
def _residue_chart(p: int, representative: int) -> steenrod_ext.ExtChart:
    return steenrod_ext.compute_chart(p, representative)


def chart_for_degree(p: int, d: int) -> steenrod_ext.ExtChart:
    """
    The E2 chart depends on d only through its residue (d even at p = 2,
    d^2 mod 3 at p = 3), so one chart per residue is computed.
    """
    if p == 2:
        if d % 2:
            raise DegreeError(f"the mod 2 Thom module needs d even, got {d}", module="steenrod_ext")
        representative = 2
    else:
        representative = d % p or p
    chart = _residue_chart(p, representative)
    chart = replace(chart, d=d, residue=steenrod_ext.residue_tag(p, d))
    try:
        return steenrod_ext.apply_differential_pattern(chart, d)
    except PatternError:
        LOGGER.debug(f"report:chart_for_degree:p:{p}:d:{d}:no differential pattern")
        return chart


def _chart_checks(chart: steenrod_ext.ExtChart, d: int) -> list:
    checks = []
    orders = dict(chart.einf_column_orders)
    if chart.p == 2 and d % 4 == 0:
        for stem, order in EINF_ORDERS_P2[d % 8].items():
            checks.append((f"p2_einf_stem{stem}", orders.get(stem) == order))
    if chart.p == 3 and d % 3 == 0:
        alternatives = dict(chart.einf_alternatives)
        for stem, pair in EINF_ALTERNATIVES_P3.items():
            checks.append((f"p3_einf_stem{stem}", alternatives.get(stem) == pair))
        checks.append(
            ("p3_stem7_below_filtration2", steenrod_ext.filtration_quotient_rank(chart, 7, 2) == 1)
        )
    return checks


def _chart_primes(d: int) -> list:
    return [p for p in steenrod_ext.SUPPORTED_PRIMES if p != 2 or d % 2 == 0]


def _steenrod_section(d: int) -> ModuleOutcome:
    data, checks = {}, []
    if d % 2:
        data["p2"] = {"skipped": "the mod 2 Thom module needs d even"}
    for p in _chart_primes(d):
        chart = chart_for_degree(p, d)
        data[f"p{p}"] = chart.to_dict()
        checks.extend(_chart_checks(chart, d))
    return ModuleOutcome("steenrod_ext", "ok", data=data, checks=tuple(checks))


def theorem_summary(d: int) -> dict:
    """
    The extension of Im(alpha) with concrete groups, the cokernel of Phi as
    the obstruction detected by kappa, and the finite residual.
    """
    row = kreck_su.table_row(d)
    residual = kreck_su.finite_residual(d)
    note = hypersurface.degenerate_note(d)
    theta7 = REGISTRY["theta7"]
    consistent = row.theta7_mod_ker.order * row.ker_phi.order == theta7.value.order
    summary = {
        "extension": EXTENSION,
        "kernel": {
            "group": row.theta7_mod_ker.to_dict(),
            "source": "kreck_su.theta7_mod_ker",
        },
        "theta7": theta7.to_dict(),
        "ker_phi": {"group": row.ker_phi.to_dict(), "source": "kreck_su.ker_phi"},
        "obstruction": {
            "group": row.coker_phi.to_dict(),
            "source": "kreck_su.coker_phi, detected by kappa",
        },
        "order_consistent": consistent,
        "degenerate": note,
    }
    if note:
        summary["image"] = "trivial"
        summary["theorem_b"] = {
            "finite_residual": FiniteAbelianGroup().to_dict(),
            "residually_finite": True,
            "source": "hypersurface.degenerate_note",
        }
        summary["not_residually_finite"] = False
    else:
        summary["theorem_b"] = {
            "finite_residual": residual["finite_residual"],
            "residually_finite": residual["residually_finite"],
            "source": "kreck_su.finite_residual",
        }
        summary["not_residually_finite"] = not residual["residually_finite"]
    return summary


def build_report(d: int, charts: bool = True, progress: ProgressBar = None) -> DegreeReport:
    """
    Run every module for the degree d.

    PARAMS
    -------
    d : int
        degree, at least 1
    charts : bool
        compute the Adams charts (the slow part)
    progress : ProgressBar
        optional console progress

    RETURNS
    -------
    DegreeReport
        one outcome per module, in a fixed order, and the theorem summary
    """
    LOGGER.debug(f"report:build_report:parameter:d:{d}")
    if d < 1:
        raise DegreeError(f"degree must be at least 1, got {d}", module="report")
    sections = [
        ("hypersurface", _hypersurface_section),
        ("kreck_su", _kreck_su_section),
        ("quadform", _quadform_section),
        ("pham", _pham_section),
        ("jtheory", _jtheory_section),
    ]
    if charts:
        sections.append(("steenrod_ext", _steenrod_section))
    if progress:
        progress.set_steps_total(len(sections))
    outcomes = [_run(module, section, d, progress) for module, section in sections]
    computed = ()
    if charts:
        if outcomes[-1].status == "ok":
            computed = tuple(chart_for_degree(p, d) for p in _chart_primes(d))
    else:
        outcomes.append(ModuleOutcome("steenrod_ext", "skipped", reason="charts disabled"))
    return DegreeReport(d=d, outcomes=tuple(outcomes), theorem_summary=theorem_summary(d), charts=computed)


def batch(d_from: int, d_to: int) -> dict:
    """Cheap checks (kreck_su, hypersurface) over d_from..d_to."""
    LOGGER.debug(f"report:batch:parameter:from:{d_from}:to:{d_to}")
    if d_from > d_to:
        raise HypermonoError(f"empty degree range {d_from}..{d_to}", module="report")
    rows = kreck_su.mcg_table(d_from, d_to)
    invariants = hypersurface.invariants_table(d_from, d_to)
    checks = {
        "theta7_order": all(kreck_su.theta7_order_check(r.d) for r in rows),
        "quotient_cyclic": all(r.theta7_mod_ker.is_cyclic for r in rows),
        "coker_support": all(
            r.coker_phi.is_trivial or r.d % 4 == 0 or r.d % 3 == 0 for r in rows
        ),
        "b3_closed_form": all(inv.b3 == _b3_closed_form(inv.d) for inv in invariants),
    }
    return {
        "schema": SCHEMA,
        "range": [d_from, d_to],
        "passed": all(checks.values()),
        "checks": checks,
        "degenerate": [d for d in range(d_from, d_to + 1) if hypersurface.degenerate_note(d)],
        "rows": [
            dict(r.to_dict(), b3=inv.b3) for r, inv in zip(rows, invariants)
        ],
    }


#####################################################################
#### OUTPUT ####
def to_json(document) -> str:
    """Canonical JSON: indent 2, insertion key order, no timestamps."""
    if isinstance(document, DegreeReport):
        document = document.to_dict()
    return json.dumps(document, indent=2) + "\n"


def _mcg_rows(rows: list) -> list:
    return [
        [
            r["d"],
            r["ker_phi"]["label"],
            r["coker_phi"]["label"],
            r["theta7_mod_ker"]["label"],
            r["im_phi_order"],
            r["k_d_order"],
            r.get("k_constant", ""),
        ]
        for r in rows
    ]


MCG_HEADERS = ["d", "Ker(Phi)", "Coker(Phi)", "Theta_7/Ker", "|Im(Phi)|", "|K_d|", "k"]


def render_text(report: DegreeReport) -> str:
    lines = [f" hypermono report d={report.d} ".center(80, "-"), ""]
    status_rows = []
    for o in report.outcomes:
        note = o.reason or ", ".join(o.failed_checks)
        status_rows.append([o.module, o.status, len(o.checks), note])
    lines.append(tabulate.tabulate(status_rows, headers=["module", "status", "checks", "note"]))
    lines.append("")
    summary = report.theorem_summary
    summary_rows = [
        ["extension", summary["extension"]],
        ["Theta_7/Ker", summary["kernel"]["group"]["label"]],
        ["Ker(Phi)", summary["ker_phi"]["group"]["label"]],
        ["Coker(Phi)", summary["obstruction"]["group"]["label"]],
        ["finite residual", summary["theorem_b"]["finite_residual"]["label"]],
        ["residually finite", summary["theorem_b"]["residually_finite"]],
    ]
    if summary["degenerate"]:
        summary_rows.append(["degenerate", summary["degenerate"]])
    lines.append(tabulate.tabulate(summary_rows, headers=["summary", "value"]))
    lines.append("")
    invariants = report.outcome("hypersurface").data
    if invariants:
        rows = [[key, invariants[key]] for key in ("chern", "euler_char", "b3", "g", "p1_coeff", "spin")]
        lines.append(tabulate.tabulate(rows, headers=["invariant", "value"]))
        lines.append("")
    row = report.outcome("kreck_su").data
    if row:
        lines.append(tabulate.tabulate(_mcg_rows([row]), headers=MCG_HEADERS))
        lines.append("")
    for chart in report.charts:
        lines.append(steenrod_ext.emit_chart(chart, "text"))
    return "\n".join(lines) + "\n"


def render_batch(result: dict) -> str:
    lines = [tabulate.tabulate(_mcg_rows(result["rows"]), headers=MCG_HEADERS), ""]
    lines.append(tabulate.tabulate(list(result["checks"].items()), headers=["check", "passed"]))
    if result["degenerate"]:
        lines.append(f"degenerate degrees: {result['degenerate']}")
    return "\n".join(lines) + "\n"


def _write(text: str, out_file: str = None):
    if out_file:
        with open(out_file, "w", encoding="UTF8") as f:
            f.write(text)
        pb.log_success(f"Saved to {out_file}", display_pbar=False)
    else:
        sys.stdout.write(text)


#####################################################################
#### COMMANDS ####
def _require(options: dict, key: str) -> int:
    if options.get(key) is None:
        usage(f"missing --{key}", 2)
    return options[key]


def _cmd_report(options: dict) -> int:
    d = _require(options, "d")
    pb.log_title(f"hypermono report d={d}")
    report = build_report(d, charts=options["charts"], progress=pb)
    if options["emit"] == "text":
        _write(render_text(report), options["out_file"])
    else:
        _write(to_json(report), options["out_file"])
    return 0 if report.passed else 1


def _cmd_batch(options: dict) -> int:
    result = batch(_require(options, "from"), _require(options, "to"))
    text = render_batch(result) if options["emit"] == "text" else to_json(result)
    _write(text, options["out_file"])
    return 0 if result["passed"] else 1


def _cmd_mcg_table(options: dict) -> int:
    rows = kreck_su.mcg_table(_require(options, "from"), _require(options, "to"))
    dicts = [r.to_dict() for r in rows]
    if options["emit"] == "text":
        text = tabulate.tabulate(_mcg_rows(dicts), headers=MCG_HEADERS) + "\n"
    else:
        text = to_json({"schema": SCHEMA, "rows": dicts})
    _write(text, options["out_file"])
    return 0 if all(kreck_su.theta7_order_check(r.d) for r in rows) else 1


def _cmd_pham(options: dict) -> int:
    d = _require(options, "d")
    allow_large = options["allow_large"]
    message = f"Pham module d={d}"
    pb.log_message(message, display_pbar=False)
    summary = pham.pham_summary(d, allow_large)
    pb.log_success(message, display_pbar=False)
    if options["dump"]:
        with open(options["dump"], "w", encoding="UTF8") as f:
            pham.dump_sparse(pham.relation_matrix(d, allow_large), f)
        pb.log_success(f"Relation matrix saved to {options['dump']}", display_pbar=False)
    if options["emit"] == "text":
        rows = [[k, v] for k, v in summary.items() if not isinstance(v, dict)]
        text = tabulate.tabulate(rows, headers=["quantity", "value"]) + "\n"
    else:
        text = to_json(dict({"schema": SCHEMA}, **summary))
    _write(text, options["out_file"])
    holds = summary["pham_torsion_free"] and summary["pham_rank"] == summary["pham_rank_expected"]
    if d >= 3:
        holds = holds and summary["eta_vanishing"]
    return 0 if holds else 1


def _cmd_jtheory(options: dict) -> int:
    verdict = jtheory.james_periodicity_check(_require(options, "d"), options["m"])
    if options["emit"] == "text":
        text = tabulate.tabulate(list(verdict.to_dict().items()), headers=["field", "value"]) + "\n"
    else:
        text = to_json(dict({"schema": SCHEMA}, **verdict.to_dict()))
    _write(text, options["out_file"])
    return 0 if verdict.holds else 1


def _cmd_ext(options: dict) -> int:
    p = _require(options, "p")
    d = _require(options, "d")
    message = f"Adams E2 chart p={p} d={d}"
    pb.log_message(message, display_pbar=False)
    chart = steenrod_ext.compute_chart(p, d, options["smax"], options["nmax"])
    try:
        chart = steenrod_ext.apply_differential_pattern(chart, d)
    except PatternError:
        LOGGER.debug(f"report:_cmd_ext:no differential pattern at p:{p}:d:{d}")
    pb.log_success(message, display_pbar=False)
    if options["emit"] in ("text", "svg"):
        text = steenrod_ext.emit_chart(chart, options["emit"])
    else:
        text = to_json(dict({"schema": SCHEMA}, **chart.to_dict()))
    _write(text, options["out_file"])
    return 0


def _cmd_quadform(options: dict) -> int:
    scan = quadform.invariant_subgroup_scan(
        _require(options, "n"), options["g"], options["arf"]
    )
    if options["emit"] == "text":
        text = tabulate.tabulate(list(scan.to_dict().items()), headers=["field", "value"]) + "\n"
    else:
        text = to_json(dict({"schema": SCHEMA}, **scan.to_dict()))
    _write(text, options["out_file"])
    return 0 if scan.all_of_form_k_times_lattice else 1


DISPATCH = {
    "report": _cmd_report,
    "batch": _cmd_batch,
    "mcg-table": _cmd_mcg_table,
    "pham": _cmd_pham,
    "jtheory": _cmd_jtheory,
    "ext": _cmd_ext,
    "quadform": _cmd_quadform,
}
SUBCOMMANDS = {"jtheory": "check", "quadform": "scan"}


def usage(message: str = None, exit_code: int = 0):
    """Function to display Help"""
    print(__doc__)
    if message:
        print(f"ERROR: {message}")
    sys.exit(exit_code)


def parse_args(argv: list) -> tuple:
    """(command, options) from the command line."""
    if not argv or argv[0] in ["-h", "--help"]:
        usage()
    command, argv = argv[0], argv[1:]
    if command not in COMMANDS:
        usage(f"unknown command {command}", 2)
    if command in SUBCOMMANDS:
        if not argv or argv[0] != SUBCOMMANDS[command]:
            usage(f"{command} expects '{SUBCOMMANDS[command]}'", 2)
        argv = argv[1:]
    try:
        opts, args = getopt.getopt(
            argv,
            "hd:e:f:l:",
            [
                "help",
                "d=",
                "from=",
                "to=",
                "emit=",
                "out_file=",
                "no-charts",
                "dump=",
                "allow-large",
                "m=",
                "p=",
                "smax=",
                "nmax=",
                "n=",
                "g=",
                "arf=",
                "log_file=",
            ],
        )
    except getopt.GetoptError as err:
        usage(str(err), 2)

    options = {
        "d": None,
        "from": None,
        "to": None,
        "emit": "json",
        "out_file": None,
        "charts": True,
        "dump": None,
        "allow_large": False,
        "m": None,
        "p": None,
        "smax": steenrod_ext.DEFAULT_S_MAX,
        "nmax": steenrod_ext.DEFAULT_N_MAX,
        "n": None,
        "g": quadform.MAX_GENUS_SCAN,
        "arf": 0,
        "log_file": LOG_FILE,
    }
    integers = {
        "--d": "d", "-d": "d", "--from": "from", "--to": "to", "--m": "m", "--p": "p",
        "--smax": "smax", "--nmax": "nmax", "--n": "n", "--g": "g", "--arf": "arf",
    }
    for o, a in opts:
        if o in ["-h", "--help"]:
            usage()
        elif o in integers:
            try:
                options[integers[o]] = int(a)
            except ValueError:
                usage(f"{o} expects an integer, got {a}", 2)
        elif o in ["-e", "--emit"]:
            formats = CHART_FORMATS if command == "ext" else EMIT_FORMATS
            if a not in formats:
                usage(f"output format {a} not supported", 2)
            options["emit"] = a
        elif o in ["-f", "--out_file"]:
            options["out_file"] = a
        elif o == "--no-charts":
            options["charts"] = False
        elif o == "--dump":
            options["dump"] = a
        elif o == "--allow-large":
            options["allow_large"] = True
        elif o in ["-l", "--log_file"]:
            options["log_file"] = a
        else:
            assert False, "unhandled option"
    return command, options


def run(argv: list) -> int:
    command, options = parse_args(argv)
    #### LOGS ####
    logging.basicConfig(filename=options["log_file"], filemode="w")
    LOGGER.setLevel(logging.DEBUG)
    for name in MODULES:
        logging.getLogger(name).setLevel(logging.DEBUG)
    try:
        return DISPATCH[command](options)
    except HypermonoError as err:
        pb.log_failure(f"{err.module}: {err}", display_pbar=False)
        LOGGER.error("Exception occurred", exc_info=True)
        return 1


#####################################################################
##### ENTRY POINT ####
if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
