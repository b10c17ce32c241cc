"""
Main application class for Bratteli Kit: the command-line front end.

Every command prints one JSON document (or JSON lines for orbits) on stdout and
records the resolved run configuration in it. Errors go to stderr as a single JSON
object and select the exit code.
"""

import argparse
import json
import os
import sys
from typing import Any, Dict, List, Optional

import cv2

from ..bundles.catalog import BUNDLES, bundle_names, build_bundle, get_example
from ..certifier.certificate import INCONCLUSIVE, certify
from ..config.config_manager import ConfigManager, RunConfig
from ..config.constants import (
    EXIT_ERROR, EXIT_OK, EXIT_VALIDATION, MODE_FLOAT, SUPPORTED_EXTENSIONS, SUPPORTED_MODES,
    SUPPORTED_POLICIES,
)
from .errors import (
    BratteliKitError, InconclusiveStrict, NotPrimitive, ToleranceViolation, UnknownBundle, ValidationFailure,
)
from ..diagram.bidiagram import BiInfiniteDiagram, diagram_from_document
from ..diagram.sources import EventuallyPeriodicSource, MatrixSource, ProgrammaticSource, StationarySource
from ..dynamics.vershik import TAIL_FREE, TruncatedPath, orbit, start_path
from ..ordering.orders import EdgeOrders
from ..ordering.paths import FinitePath
from ..renormalization.schedule import renorm_times
from ..renormalization.shifting import shift_weighted
from ..surface.approximant import finite_approximant
from ..surface.export import export_json, export_svg, render_png, write_surface_files
from ..surface.model import build_surface, surface_deviation
from ..surface.pseudo_anosov import stationary_pA_report
from ..surface.renormalize import renorm_map
from ..utils.json_io import dumps, dumps_line, read_json, write_json
from ..utils.logging_config import LOGGER, set_level
from ..weights import cone
from ..weights.cone import solve_weights, unique_weight_report
from ..weights.perron import perron_data, pf_weights
from ..weights.series import mpn_weight_series
from ..weights.weight_function import validate_weight
from ..weights.weighted_diagram import WeightedDiagram


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the output document to this file instead of stdout")
    common.add_argument("--config", help="settings JSON file (default ~/.brattelikit_config/settings.json)")
    common.add_argument("--mode", choices=sorted(SUPPORTED_MODES), help="numeric mode")
    common.add_argument("--strict", action="store_true", default=None,
                        help="exit with code 4 on inconclusive results")
    common.add_argument("--depth", type=int, help="working depth")
    common.add_argument("--log-level", help="logging level for this run")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="brattelikit",
                                     description="Bi-infinite Bratteli diagrams, flat surfaces and renormalization.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="structural and weight validation")
    p.add_argument("spec", help="bundle name or JSON document")

    p = sub.add_parser("vershik", parents=[common], help="Vershik orbit as JSON lines")
    p.add_argument("spec")
    p.add_argument("--start", choices=["min", "max", "path"], default="min")
    p.add_argument("--vertex", type=int, default=0, help="end vertex of the starting prefix")
    p.add_argument("--path", help="edge list JSON [[level, source, range, copy], ...] for --start path")
    p.add_argument("--steps", type=int, default=10, help="negative values walk backwards")
    p.add_argument("--extension", choices=sorted(SUPPORTED_EXTENSIONS))

    p = sub.add_parser("weights", parents=[common], help="weight functions and the uniqueness oracle")
    p.add_argument("spec")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--solve", action="store_const", dest="method", const="solve")
    group.add_argument("--pf", action="store_const", dest="method", const="pf")
    group.add_argument("--series", action="store_const", dest="method", const="series")

    p = sub.add_parser("surface", parents=[common], help="flat surface export")
    p.add_argument("spec")
    p.add_argument("--svg", help="SVG output path")
    p.add_argument("--json", dest="json_path", help="surface JSON output path")
    p.add_argument("--png", nargs="?", const="", help="also render a PNG (optional path)")
    p.add_argument("--approximant", type=int, help="report the finite approximant at this level")

    p = sub.add_parser("renormalize", parents=[common], help="shift a bundle and check functoriality")
    p.add_argument("spec")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--check-functoriality", action="store_true")

    p = sub.add_parser("certify", parents=[common], help="unique-ergodicity certificate")
    p.add_argument("spec")
    p.add_argument("--eta", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--n-terms", type=int)
    p.add_argument("--orders", choices=sorted(SUPPORTED_POLICIES), help="edge order policy")

    p = sub.add_parser("examples", parents=[common], help="list or emit built-in bundles")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    return parser


def _periodic(source: MatrixSource) -> bool:
    """Sources whose Perron-Frobenius data describes every level."""
    return isinstance(source, (StationarySource, EventuallyPeriodicSource))


class BratteliKitApp:
    """Main application class for Bratteli Kit."""

    def __init__(self):
        self.parser = build_parser()
        self.config: Optional[RunConfig] = None

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Run one command; returns the process exit code."""
        args = self.parser.parse_args(argv)
        try:
            self.config = self._run_config(args)
            set_level(self.config.log_level)
            handler = getattr(self, f"cmd_{args.command}")
            return handler(args)
        except BratteliKitError as e:
            sys.stderr.write(dumps_line(e.to_dict()) + "\n")
            return e.exit_code
        except Exception as e:
            LOGGER.exception(f"unexpected failure in {args.command}")
            sys.stderr.write(dumps_line({"error": type(e).__name__, "message": str(e),
                                         "exitCode": EXIT_ERROR}) + "\n")
            return EXIT_ERROR

    # --- plumbing ---------------------------------------------------------

    def _run_config(self, args) -> RunConfig:
        overrides = {
            "mode": args.mode,
            "strict": args.strict,
            "log_level": args.log_level,
            "depth": args.depth,
            "eta": getattr(args, "eta", None),
            "epsilon": getattr(args, "epsilon", None),
            "mu": getattr(args, "mu", None),
            "n_terms": getattr(args, "n_terms", None),
            "order_policy": getattr(args, "orders", None),
            "extension": getattr(args, "extension", None),
        }
        try:
            return ConfigManager(args.config).run_config(**overrides)
        except ValueError as e:
            raise ValidationFailure(str(e)) from e

    def _emit(self, args, doc: Dict[str, Any]) -> None:
        doc = dict(doc, config=self.config.to_dict())
        if args.out:
            write_json(args.out, doc)
            LOGGER.info(f"wrote {args.out}")
        else:
            sys.stdout.write(dumps(doc) + "\n")

    def _document(self, spec: str) -> Dict[str, Any]:
        if os.path.exists(spec):
            return read_json(spec)
        if spec in BUNDLES:
            return build_bundle(spec, self.config.mode).to_dict()
        raise UnknownBundle(f"{spec!r} is neither a file nor a bundle; known bundles: {bundle_names()}", spec=spec)

    def _bundle(self, spec: str) -> WeightedDiagram:
        """A weighted diagram; bare diagrams get Perron-Frobenius or solved weights."""
        if not os.path.exists(spec) and spec in BUNDLES:
            return build_bundle(spec, self.config.mode)
        doc = self._document(spec)
        if "wPlus" in doc and "wMinus" in doc:
            return WeightedDiagram.from_dict(doc, self.config.mode)
        diagram = diagram_from_document(doc)
        orders = EdgeOrders.from_dict(diagram, doc.get("orders", self.config.order_policy))
        w_plus = self._side_weights(diagram, 1)
        w_minus = self._side_weights(diagram, -1)
        mode = w_plus.mode if w_plus.mode == w_minus.mode else MODE_FLOAT
        return WeightedDiagram(diagram, w_plus.converted(mode), w_minus.converted(mode), orders).normalized()

    def _side_weights(self, diagram: BiInfiniteDiagram, sign: int):
        side = diagram.side(sign)
        if _periodic(side.source):
            try:
                return pf_weights(side, self.config.mode)
            except NotPrimitive as e:
                LOGGER.info(f"no Perron-Frobenius weights on side {sign:+d} ({e.message}); solving instead")
        return solve_weights(side, self.config.depth, self.config.mode)

    def _strict(self, inconclusive: bool, message: str) -> None:
        if inconclusive and self.config.strict:
            raise InconclusiveStrict(message)

    # --- commands ---------------------------------------------------------

    def cmd_validate(self, args) -> int:
        doc = self._document(args.spec)
        diagram = diagram_from_document(doc)
        report = diagram.validate(self.config.depth)
        out: Dict[str, Any] = {"validation": report.to_dict()}
        passed = report.valid
        if report.valid and "wPlus" in doc and "wMinus" in doc:
            bundle = WeightedDiagram.from_dict(doc, self.config.mode)
            weights = bundle.validate(self.config.depth, self.config.tol)
            out["weights"] = {key: r.to_dict() for key, r in weights.items()}
            passed = weights["wPlus"].passed
        self._emit(args, out)
        return EXIT_OK if passed else EXIT_VALIDATION

    def cmd_vershik(self, args) -> int:
        bundle = self._bundle(args.spec)
        depth = self.config.depth
        side = bundle.orders.side(1)
        if args.start == "path":
            if not args.path:
                raise ValidationFailure("--start path needs --path")
            edges = json.loads(args.path) if not os.path.exists(args.path) else read_json(args.path)
            start = TruncatedPath(FinitePath.from_lists(edges), TAIL_FREE)
            depth = max(depth, start.depth)
        else:
            start = start_path(side, depth, args.vertex, args.start)
        trace = orbit(start, side, args.steps, depth, self.config.extension)
        lines = trace.json_lines(1 if args.steps >= 0 else -1)
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    def cmd_weights(self, args) -> int:
        doc = self._document(args.spec)
        diagram = diagram_from_document(doc)
        depth = self.config.depth
        method = args.method or ("pf" if _periodic(diagram.positive_side.source) else "solve")
        out: Dict[str, Any] = {"method": method}
        if method == "series":
            source = diagram.positive_side.source
            if not isinstance(source, ProgrammaticSource) or source.rule_id != "mpn-family":
                raise ValidationFailure("--series needs an mpn-family positive side")
            params = source.param_dict
            out["series"] = mpn_weight_series(int(params["p"]), params, depth).to_dict()
        else:
            if method == "pf":
                out["perron"] = perron_data(diagram, self.config.mode, self.config.tol,
                                            require_positive=False).to_dict()
                w = pf_weights(diagram, self.config.mode, self.config.tol, require_positive=False)
            else:
                w = solve_weights(diagram, depth, self.config.mode)
            out["wPlus"] = w.to_dict()
            out["report"] = validate_weight(w, diagram.positive_side, depth, self.config.tol).to_dict()
        oracle = unique_weight_report(diagram, self.config.cone_depth, self.config.tol, self.config.mode)
        out["uniqueWeight"] = oracle.to_dict()
        self._emit(args, out)
        self._strict(oracle.verdict == cone.INCONCLUSIVE, "weight oracle is inconclusive")
        return EXIT_OK

    def cmd_surface(self, args) -> int:
        bundle = self._bundle(args.spec)
        surface = build_surface(bundle, self.config.depth)
        out: Dict[str, Any] = {
            "name": bundle.name,
            "area": surface.area,
            "rectangles": len(surface.rectangles),
            "identifications": len(surface.identifications()),
            "singularSet": [[float(x), float(y)] for x, y in surface.singular_set()],
            "pseudoAnosov": stationary_pA_report(bundle.diagram, bundle.orders).to_dict(),
        }
        if args.approximant is not None:
            out["approximant"] = finite_approximant(bundle, args.approximant).to_dict()
        if args.svg:
            with open(args.svg, "w", encoding="utf-8") as f:
                f.write(export_svg(surface))
            out["svg"] = args.svg
        if args.json_path:
            write_json(args.json_path, export_json(surface))
            out["json"] = args.json_path
        if args.png is not None:
            if args.png:
                cv2.imwrite(args.png, render_png(surface))
                out["png"] = args.png
            else:
                out.update(write_surface_files(surface, self.config.output_dir, bundle.name or "surface", png=True))
        if not args.svg and not args.json_path and args.png is None:
            out["surface"] = export_json(surface)
        self._emit(args, out)
        return EXIT_OK

    def cmd_renormalize(self, args) -> int:
        bundle = self._bundle(args.spec)
        depth = max(self.config.depth, args.k)
        shifted = shift_weighted(bundle, args.k)
        schedule = renorm_times(bundle.diagram, bundle.w_plus, depth, self.config.tol)
        t_n = schedule.time(args.k)
        out: Dict[str, Any] = {
            "k": args.k,
            "bundle": shifted.to_dict(),
            "schedule": schedule.to_dict(),
            "timeCocycle": [schedule.time(args.k + j) - t_n for j in range(1, depth - args.k + 1)],
        }
        if args.check_functoriality:
            surface = build_surface(bundle, depth)
            moved = renorm_map(surface, bundle, args.k, check=False)
            expected = build_surface(shifted, moved.depth, moved.negative_depth)
            deviation = surface_deviation(moved, expected)
            out["functoriality"] = {"deviation": deviation, "tol": self.config.geometry_tol,
                                    "ok": deviation <= self.config.geometry_tol}
            if deviation > self.config.geometry_tol:
                self._emit(args, out)
                raise ToleranceViolation(f"R_{args.k} deviates from the shifted surface by {deviation:.3g}",
                                         deviation=deviation, tol=self.config.geometry_tol)
        self._emit(args, out)
        return EXIT_OK

    def cmd_certify(self, args) -> int:
        bundle = self._bundle(args.spec)
        if bundle.orders.policy != self.config.order_policy:
            bundle = bundle.with_policy(self.config.order_policy)
        cert = certify(bundle, self.config)
        self._emit(args, cert.to_dict())
        self._strict(cert.verdict == INCONCLUSIVE, "certificate is inconclusive")
        return EXIT_OK

    def cmd_examples(self, args) -> int:
        if args.action == "list":
            self._emit(args, {"examples": [BUNDLES[name].to_dict() for name in bundle_names()]})
            return EXIT_OK
        if not args.name:
            raise ValidationFailure("examples emit needs a bundle name")
        spec = get_example(args.name)
        self._emit(args, dict(spec.build(self.config.mode).to_dict(), example=spec.to_dict()))
        return EXIT_OK
