"""Command-line interface: classify covers, export Cayley balls and surfaces.

    leaftype classify --config cfg.json [--radius 2,4,6] [--search-bound 6]
    leaftype ball     --config cfg.json --radius 4 [--budget 1000000]
    leaftype surface  --config cfg.json [--radius 2,4,6]

One JSON config schema serves all entry points, discriminated by "kind":
logarithmic, homogeneous, riccati or representation. Symbols standing for
residues asserted Q-independent are declared once in a "symbols" array.
Exit codes: 0 classified, 1 invalid input, 2 budget exhausted,
3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Sequence

from .cayley import DEFAULT_VERTEX_BUDGET, build_ball, export_dot
from .classify import DEFAULT_RADII, DEFAULT_SEARCH_BOUND, classify_cover
from .foliations import (
    EXPLICIT_RATIOS,
    InvalidFoliationError,
    LogComponent,
    LogFoliationSpec,
    PROPORTIONAL,
    RiccatiSpec,
    classify_homogeneous,
    classify_logarithmic,
    classify_riccati,
    component_holonomy,
    validate_log_spec,
)
from .gluing import genus_growth
from .scalars import ExponentScalar, GaussianRational, as_fraction
from .targets import (
    BudgetExceededError,
    CIRCLE,
    CircleElement,
    MOEBIUS,
    MoebiusElement,
    PERMUTATION,
    PermutationElement,
    Representation,
)
from .words import SurfacePresentation

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BUDGET = 2
EXIT_INCONCLUSIVE = 3


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- config parsing -----------------------------------------------------------


def parse_scalar(obj, symbols: Sequence[str]) -> ExponentScalar:
    """Exact scalar from config JSON.

    Accepts a rational string/number, a declared symbol name, or the full
    form {"real": {"const": q, <sym>: q, ...}, "imag": {...}}.
    """
    if isinstance(obj, (int, str)):
        if isinstance(obj, str) and obj in symbols:
            return ExponentScalar.symbol(obj)
        return ExponentScalar.rational(as_fraction(obj))
    if isinstance(obj, dict):
        real = dict(obj.get("real", {}))
        imag = dict(obj.get("imag", {}))
        for part in (real, imag):
            for key in part:
                if key != "const" and key not in symbols:
                    raise ValueError(
                        "symbol %r is not declared in the symbols array" % key
                    )
        return ExponentScalar.make(
            real_const=real.pop("const", 0),
            real_syms={k: as_fraction(v) for k, v in real.items()},
            imag_const=imag.pop("const", 0),
            imag_syms={k: as_fraction(v) for k, v in imag.items()},
        )
    raise ValueError("cannot parse scalar from %r" % (obj,))


def parse_gaussian(obj) -> GaussianRational:
    if isinstance(obj, (int, str)):
        return GaussianRational.of(as_fraction(obj))
    if isinstance(obj, dict):
        return GaussianRational.of(obj.get("re", 0), obj.get("im", 0))
    raise ValueError("cannot parse Gaussian rational from %r" % (obj,))


def _build_representation(cfg: dict) -> Representation:
    symbols = cfg.get("symbols", [])
    target = cfg.get("target")
    if target not in (CIRCLE, MOEBIUS, PERMUTATION):
        raise ValueError("representation config needs target circle|moebius|permutation")
    pres = SurfacePresentation(int(cfg.get("genus", 0)), int(cfg.get("punctures", 0)))
    raw = cfg.get("images", {})
    images: Dict[str, object] = {}
    for gen, value in raw.items():
        if target == CIRCLE:
            images[gen] = CircleElement.of(parse_scalar(value, symbols))
        elif target == MOEBIUS:
            (a, b), (c, d) = value
            images[gen] = MoebiusElement.of(
                parse_gaussian(a), parse_gaussian(b), parse_gaussian(c), parse_gaussian(d)
            )
        else:
            images[gen] = PermutationElement.of(value)
    missing = [g for g in pres.free_gens if g not in images]
    if target == CIRCLE:
        for g in missing:
            images[g] = CircleElement.identity()
    elif missing:
        raise ValueError("missing images for generators: %s" % ", ".join(missing))
    return Representation(pres, target, images)


def _build_log_spec(cfg: dict) -> LogFoliationSpec:
    symbols = cfg.get("symbols", [])
    mode = cfg.get("mode", PROPORTIONAL)
    comps = []
    for entry in cfg.get("components", []):
        coeff = None
        if "coeff" in entry:
            coeff = parse_gaussian(entry["coeff"])
        comps.append(LogComponent(int(entry["degree"]), coeff, entry.get("label", "")))
    ratios: Dict[int, Dict[int, ExponentScalar]] = {}
    for j, row in cfg.get("ratios", {}).items():
        ratios[int(j)] = {int(k): parse_scalar(v, symbols) for k, v in row.items()}
    crossings: Dict[int, Dict[int, int]] = {}
    for j, row in cfg.get("crossings", {}).items():
        crossings[int(j)] = {int(k): int(v) for k, v in row.items()}
    return LogFoliationSpec(
        mode=mode,
        components=comps,
        scale_symbol=cfg.get("scale_symbol", "s"),
        ratios=ratios,
        normal_crossing=bool(cfg.get("normal_crossing", True)),
        generic_asserted=bool(cfg.get("assert_generic", False)),
        crossings=crossings,
    )


def _representation_from_config(cfg: dict) -> Representation:
    kind = cfg.get("kind")
    if kind == "representation":
        return _build_representation(cfg)
    if kind == "homogeneous":
        symbols = cfg.get("symbols", [])
        exponents = [parse_scalar(v, symbols) for v in cfg.get("exponents", [])]
        pres = SurfacePresentation(0, len(exponents))
        return Representation.circle_from_exponents(pres, exponents)
    if kind == "riccati":
        sub = dict(cfg)
        sub["target"] = MOEBIUS
        return _build_representation(sub)
    if kind == "logarithmic":
        spec = _build_log_spec(cfg)
        validate_and_raise(spec)
        j = int(cfg.get("component", 1))
        return component_holonomy(spec, j)
    raise ValueError("unknown config kind %r" % (kind,))


def validate_and_raise(spec: LogFoliationSpec) -> None:
    report = validate_log_spec(spec)
    if not report.valid:
        raise ValueError("; ".join(report.failures))


# -- commands -----------------------------------------------------------------


def cmd_classify(cfg: dict, radii, search_bound, budget, out_dir: Path) -> int:
    kind = cfg.get("kind")
    if kind == "logarithmic":
        spec = _build_log_spec(cfg)
        verdict = classify_logarithmic(spec, search_bound, radii, budget)
        payload = verdict.to_json_dict()
        classified = verdict.classified
    elif kind == "homogeneous":
        symbols = cfg.get("symbols", [])
        exponents = [parse_scalar(v, symbols) for v in cfg.get("exponents", [])]
        verdict = classify_homogeneous(exponents, search_bound, radii, budget)
        payload = verdict.to_json_dict()
        classified = verdict.classified
    elif kind == "riccati":
        rep = _representation_from_config(cfg)
        spec = RiccatiSpec(rep.presentation, {g: rep.image(g) for g in rep.presentation.free_gens})
        verdict = classify_riccati(spec, search_bound, radii, budget)
        payload = verdict.to_json_dict()
        classified = verdict.classified
    elif kind == "representation":
        rep = _representation_from_config(cfg)
        report, label = classify_cover(rep, search_bound, radii, budget)
        payload = {
            "label": label.to_json_dict() if label else None,
            "ends_report": report.to_json_dict(),
        }
        classified = label is not None
    else:
        raise ValueError("unknown config kind %r" % (kind,))
    text = _dump(payload)
    sys.stdout.write(text)
    (out_dir / "verdict.json").write_text(text, encoding="utf-8")
    return EXIT_OK if classified else EXIT_INCONCLUSIVE


def cmd_ball(cfg: dict, radii, budget, out_dir: Path) -> int:
    rep = _representation_from_config(cfg)
    radius = radii[-1]
    ball = build_ball(rep, radius, budget)
    dot = export_dot(ball)
    payload = _dump(ball.to_json_dict())
    (out_dir / "ball.json").write_text(payload, encoding="utf-8")
    (out_dir / "ball.dot").write_text(dot, encoding="utf-8")
    sys.stdout.write(
        _dump(
            {
                "radius": radius,
                "vertices": ball.vertex_count,
                "edges": len(ball.edges),
                "files": ["ball.json", "ball.dot"],
            }
        )
    )
    return EXIT_OK


def cmd_surface(cfg: dict, radii, budget, out_dir: Path) -> int:
    rep = _representation_from_config(cfg)
    rows = genus_growth(rep, radii, budget)
    payload = _dump({"rows": rows})
    (out_dir / "surface.json").write_text(payload, encoding="utf-8")
    sys.stdout.write(payload)
    return EXIT_OK


def _parse_radii(text: str):
    radii = tuple(int(part) for part in text.split(",") if part.strip())
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radius schedule must be strictly increasing")
    if radii[0] < 0:
        raise ValueError("radii must be non-negative")
    return radii


def main(argv: List[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="leaftype",
        description="classify regular covers and generic foliation leaf types",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("classify", "ball", "surface"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--radius", default=None, help="comma-separated radius schedule")
        p.add_argument("--search-bound", type=int, default=DEFAULT_SEARCH_BOUND)
        p.add_argument("--budget", type=int, default=DEFAULT_VERTEX_BUDGET)
        p.add_argument("--out", default=".", help="output directory")
    args = parser.parse_args(argv)
    try:
        raw = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        sys.stderr.write("cannot read config: %s\n" % exc)
        return EXIT_INVALID
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as exc:
        sys.stderr.write(
            "malformed JSON at line %d column %d: %s\n"
            % (exc.lineno, exc.colno, exc.msg)
        )
        return EXIT_INVALID
    try:
        radii = _parse_radii(args.radius) if args.radius else DEFAULT_RADII
        if args.budget < 1 or args.search_bound < 1:
            raise ValueError("budgets must be positive")
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "classify":
            return cmd_classify(cfg, radii, args.search_bound, args.budget, out_dir)
        if args.command == "ball":
            return cmd_ball(cfg, radii, args.budget, out_dir)
        return cmd_surface(cfg, radii, args.budget, out_dir)
    except BudgetExceededError as exc:
        sys.stderr.write("%s\n" % exc)
        return EXIT_BUDGET
    except InvalidFoliationError as exc:
        sys.stderr.write("invalid foliation spec: %s\n" % exc)
        return EXIT_INVALID
    except (ValueError, KeyError, TypeError) as exc:
        sys.stderr.write("invalid input: %s\n" % exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
