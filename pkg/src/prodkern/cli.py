"""Command-line front end: kernel evaluation, verification suites, rendering.

Exit codes are a stable contract: 0 success/pass, 1 usage error, 2 domain
error (point outside an admissible domain, budget exhausted), 3 I/O error,
4 verification suite failed.  Reports are JSON with every float serialized
to 17 significant digits.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from . import disk, halfplane
from .errors import BudgetError, DomainError, PoleError, ProdkernError
from .julia import (
    basin_to_pgm,
    basin_to_ppm,
    julia_map,
    render_basin,
    verify_juliarel,
)
from .kernels import TruncationPolicy, gram_matrix, verify_recursion
from .models import (
    MODEL_NAMES,
    PRODUCT_MODEL_NAMES,
    default_lphi_model,
    evaluate_named_kernel,
    product_model,
    representation,
    sample_in_domain,
    standard_cuntz_grid,
)
from .operators import (
    KernelSection,
    PointFunction,
    verify_orthogonality,
    verify_sum_identity,
)
from .rng import Lcg
from .words import partial_expansion

SUITES = (
    "cuntz",
    "recursion",
    "onb",
    "juliarel",
    "phi1",
    "paris",
    "parseval",
    "multi",
    "gram",
)

_IN_DOMAIN_RADIUS = {"julia": 0.4, "szego": 0.8, "bergman": 0.8}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# JSON with fixed float formatting


def _format_float(v: float) -> str:
    if math.isfinite(v):
        return format(v, ".17g")
    return '"%s"' % repr(v)


def dumps_json(obj, indent: int = 0) -> str:
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f'{pad}  "{key}": {dumps_json(val, indent + 2)}' for key, val in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = ",\n".join(f"{pad}  {dumps_json(val, indent + 2)}" for val in obj)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, complex):
        return '{"re": %s, "im": %s}' % (_format_float(obj.real), _format_float(obj.imag))
    if obj is None:
        return "null"
    text = str(obj)
    return '"%s"' % text.replace("\\", "\\\\").replace('"', '\\"')


# ---------------------------------------------------------------------------
# shared flag parsing


def _parse_point(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected a point as re,im, got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: {exc}") from exc


def _parse_rect(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"expected a rect as re_min,re_max,im_min,im_max, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"bad rect {text!r}: {exc}") from exc


def read_points_csv(path: str) -> list:
    """Points file: CSV with header ``re,im``, one point per line."""
    with open(path, "r", encoding="utf-8") as handle:
        lines = [line.strip() for line in handle if line.strip()]
    if not lines or lines[0].replace(" ", "") != "re,im":
        raise UsageError(f"points file {path!r} must start with the header 're,im'")
    points = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 2:
            raise UsageError(f"bad points row {line!r}")
        points.append(complex(float(parts[0]), float(parts[1])))
    return points


def _policy(args) -> TruncationPolicy:
    nmax = getattr(args, "nmax", None)
    tol = getattr(args, "tol", None)
    return TruncationPolicy(
        max_factors=256 if nmax is None else nmax,
        tail_tolerance=1e-12 if tol is None else tol,
    )


# ---------------------------------------------------------------------------
# kernel-eval


def _cmd_kernel_eval(args) -> int:
    policy = _policy(args)
    value = evaluate_named_kernel(args.model, args.z, args.w, truncation=policy)
    print(f"{value.value.real:.17g}{value.value.imag:+.17g}j")
    print(
        dumps_json(
            {
                "command": "kernel-eval",
                "model": args.model,
                "z": args.z,
                "w": args.w,
                "value": value.value,
                "factors_used": value.factors_used,
                "tail_bound": value.tail_bound,
            }
        )
    )
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _suite_cuntz(args, rng: Lcg):
    name = args.model or "julia"
    rep = representation(name)
    grid = standard_cuntz_grid(name, rng, args.samples or 50)
    probes = [PointFunction.one(), PointFunction.coordinate()]
    if name in ("julia", "szego"):
        probes.append(PointFunction(lambda z: z * z))
    if name == "julia":
        probes.append(KernelSection(rep.model, ((1.0, 0.2),)).as_point_function())
    ortho = verify_orthogonality(rep, grid, probes)
    residuals = {"orthogonality_max": float(ortho.max())}
    tolerances = {"orthogonality_max": 1e-8}
    if name in ("julia", "szego"):
        radius = _IN_DOMAIN_RADIUS[name]
        pair_pts = sample_in_domain(rep.model, rng, 20, radius)
        residuals["sum_identity_max"] = float(verify_sum_identity(rep, pair_pts))
        tolerances["sum_identity_max"] = 1e-8
    passed = all(residuals[k] <= tolerances[k] for k in residuals)
    extra = {}
    if name == "bergman":
        extra["expected_negative"] = True
        extra["witness_at_least_0.01"] = bool(residuals["orthogonality_max"] >= 0.01)
    return residuals, tolerances, passed, extra


def _suite_recursion(args, rng: Lcg):
    name = args.model or "julia"
    model = product_model(name)
    pts = sample_in_domain(model, rng, 2 * (args.samples or 100), _IN_DOMAIN_RADIUS[name])
    worst = 0.0
    for z, w in zip(pts[::2], pts[1::2]):
        worst = max(worst, verify_recursion(model, z, w))
    tol = 10.0 * model.truncation.tail_tolerance
    return {"recursion_max": worst}, {"recursion_max": tol}, worst <= tol, {}


def _suite_onb(args, rng: Lcg):
    name = args.model or "julia"
    if name == "bergman":
        raise UsageError("onb suite ships for the julia and szego representations")
    rep = representation(name)
    depth = args.depth or 5
    radius = _IN_DOMAIN_RADIUS[name]
    worst = 0.0
    for _ in range(args.samples or 50):
        z = rng.complex_in_disk(radius)
        w = rng.complex_in_disk(radius)
        for m in range(depth + 1):
            expansion = partial_expansion(rep, m, z, w)
            direct = 1 + 0j
            pz, pw = complex(z), complex(w)
            for _n in range(m):
                direct *= rep.model.factor.evaluate(pz, pw)
                pz = rep.mapping.evaluate(pz)
                pw = rep.mapping.evaluate(pw)
            worst = max(worst, abs(expansion - direct) / max(1.0, abs(direct)))
    return {"factorization_max": worst}, {"factorization_max": 1e-12}, worst <= 1e-12, {}


def _suite_juliarel(args, rng: Lcg):
    mapping = julia_map()
    samples = args.samples or 1000
    worst_sum = worst_sq = worst_sub = 0.0
    for _ in range(samples):
        z = rng.complex_in_disk(2.0)
        r1, r2, _ = verify_juliarel(z)
        worst_sum = max(worst_sum, r1)
        worst_sq = max(worst_sq, r2)
        for root in mapping.preimages(z):
            worst_sub = max(
                worst_sub, abs(mapping.evaluate(root) - z) / max(1.0, abs(z))
            )
    residuals = {
        "root_sum_max": worst_sum,
        "root_square_sum_max": worst_sq,
        "substitution_max": worst_sub,
    }
    tolerances = {k: 1e-9 for k in residuals}
    passed = all(residuals[k] <= tolerances[k] for k in residuals)
    return residuals, tolerances, passed, {}


def _random_herglotz(rng: Lcg) -> halfplane.HerglotzModel:
    count = 1 + int(rng.uniform() * 5.0)
    poles = []
    while len(poles) < count:
        t = rng.uniform_in(-3.0, 3.0)
        if all(abs(t - other) >= 0.5 for other in poles):
            poles.append(t)
    masses = [rng.uniform_in(0.2, 2.0) for _ in range(count)]
    return halfplane.HerglotzModel(masses=tuple(masses), poles=tuple(poles))


def _off_axis_pair(rng: Lcg):
    while True:
        z = _off_axis_point(rng)
        w = _off_axis_point(rng)
        if abs(z + w.conjugate()) >= 0.25:
            return z, w


def _off_axis_point(rng: Lcg) -> complex:
    re = rng.uniform_in(0.2, 1.5)
    if rng.uniform() < 0.5:
        re = -re
    return complex(re, rng.uniform_in(-2.0, 2.0))


def _suite_phi1(args, rng: Lcg):
    models = [_random_herglotz(rng) for _ in range(20)]
    pairs_per_model = max(1, (args.samples or 500) // len(models))
    worst_identity = 0.0
    worst_gram = 0.0
    for model in models:
        for _ in range(pairs_per_model):
            z, w = _off_axis_pair(rng)
            worst_identity = max(worst_identity, halfplane.verify_phi_identity(model, z, w))
        # probes aligned with the pole frequencies keep the Gram well conditioned
        probes = [complex(0.3, -t) for t in model.poles]
        worst_gram = max(worst_gram, halfplane.verify_phi2(model, probes))
    residuals = {"identity_max": worst_identity, "orthonormality_max": worst_gram}
    tolerances = {"identity_max": 1e-12, "orthonormality_max": 1e-10}
    passed = all(residuals[k] <= tolerances[k] for k in residuals)
    return residuals, tolerances, passed, {}


def _paris_pair(model, rng: Lcg):
    while True:
        z = complex(rng.uniform_in(0.3, 3.0), rng.uniform_in(-2.0, 2.0))
        w = complex(rng.uniform_in(0.3, 3.0), rng.uniform_in(-2.0, 2.0))
        ratio = halfplane.hardy_ratio(model.phi(z)) * halfplane.hardy_ratio(model.phi(w))
        if ratio <= 0.9:
            return z, w


def _suite_paris(args, rng: Lcg):
    model = default_lphi_model()
    worst = 0.0
    for _ in range(args.samples or 50):
        z, w = _paris_pair(model, rng)
        worst = max(worst, halfplane.verify_paris(model, z, w, hardy_terms=300))
    return {"paris_max": worst}, {"paris_max": 1e-10}, worst <= 1e-10, {}


def _suite_parseval(args, rng: Lcg):
    model = default_lphi_model()
    worst_half = 0.0
    for _ in range(args.samples or 100):
        terms = []
        for _t in range(1 + int(rng.uniform() * 4.0)):
            coeff = rng.complex_in_rect(-1.0, 1.0, -1.0, 1.0)
            center = complex(rng.uniform_in(0.3, 2.3), rng.uniform_in(-1.5, 1.5))
            terms.append((coeff, center))
        _, residual = halfplane.hardy_decompose(terms, model)
        worst_half = max(worst_half, residual)
    blaschke = disk.BlaschkeProduct(zeros=(0j, 0j))
    worst_disk = 0.0
    for _ in range(args.samples or 100):
        terms = []
        for _t in range(1 + int(rng.uniform() * 4.0)):
            coeff = rng.complex_in_rect(-1.0, 1.0, -1.0, 1.0)
            terms.append((coeff, rng.complex_in_disk(0.8)))
        _, residual = disk.hardy_disk_decompose(terms, blaschke)
        worst_disk = max(worst_disk, residual)
    residuals = {"halfplane_parseval_max": worst_half, "disk_parseval_max": worst_disk}
    tolerances = {k: 1e-10 for k in residuals}
    passed = all(residuals[k] <= tolerances[k] for k in residuals)
    return residuals, tolerances, passed, {}


def _suite_multi(args, rng: Lcg):
    worst = 0.0
    for _ in range(args.samples or 100):
        third = rng.complex_in_disk(0.8)
        blaschke = disk.BlaschkeProduct(zeros=(0j, 0j, third))
        z = rng.complex_in_disk(0.9)
        w = rng.complex_in_disk(0.9)
        worst = max(worst, disk.verify_multi(blaschke, z, w))
    return {"multi_max": worst}, {"multi_max": 1e-12}, worst <= 1e-12, {}


def _suite_gram(args, rng: Lcg):
    name = args.model or "julia"
    model = product_model(name)
    if args.points:
        points = read_points_csv(args.points)
    else:
        points = sample_in_domain(model, rng, args.samples or 50, _IN_DOMAIN_RADIUS[name])
    report = gram_matrix(model, points)
    deficit = max(0.0, -report.min_eigenvalue) / max(report.trace, 1e-300)
    residuals = {"eigenvalue_deficit": deficit}
    tolerances = {"eigenvalue_deficit": 1e-8}
    return residuals, tolerances, report.psd, {"min_eigenvalue": report.min_eigenvalue}


_SUITE_RUNNERS = {
    "cuntz": _suite_cuntz,
    "recursion": _suite_recursion,
    "onb": _suite_onb,
    "juliarel": _suite_juliarel,
    "phi1": _suite_phi1,
    "paris": _suite_paris,
    "parseval": _suite_parseval,
    "multi": _suite_multi,
    "gram": _suite_gram,
}


def _cmd_verify(args) -> int:
    start = time.perf_counter()
    rng = Lcg(args.seed)
    residuals, tolerances, passed, extra = _SUITE_RUNNERS[args.suite](args, rng)
    elapsed_ms = 1000.0 * (time.perf_counter() - start)
    report = {
        "command": "verify",
        "suite": args.suite,
        "model": args.model,
        "parameters": {
            "seed": args.seed,
            "samples": args.samples,
            "depth": args.depth,
        },
        "residuals": residuals,
        "tolerances": tolerances,
        "pass": passed,
        "wall_time_ms": elapsed_ms,
    }
    report.update(extra)
    text = dumps_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0 if passed else 4


# ---------------------------------------------------------------------------
# julia-render


def _cmd_render(args) -> int:
    rect = _parse_rect(args.rect)
    image = render_basin(
        rect,
        args.width,
        args.height,
        max_steps=args.max_iter,
        color_mode=args.color,
        threads=args.threads,
    )
    if args.color == "kernel":
        payload = basin_to_ppm(image)
    else:
        payload = basin_to_pgm(image, color_mode=args.color)
    with open(args.out, "wb") as handle:
        handle.write(payload)
    return 0


# ---------------------------------------------------------------------------
# entry points


def build_parser() -> _Parser:
    parser = _Parser(prog="prodkern", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("kernel-eval", help="evaluate a named kernel at a pair of points")
    p_eval.add_argument("--model", required=True, choices=MODEL_NAMES)
    p_eval.add_argument("--z", required=True, type=_parse_point)
    p_eval.add_argument("--w", required=True, type=_parse_point)
    p_eval.add_argument("--nmax", type=int, default=None, help="factor budget (default 256)")
    p_eval.add_argument("--tol", type=float, default=None, help="tail tolerance (default 1e-12)")
    p_eval.set_defaults(func=_cmd_kernel_eval)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("--suite", required=True, choices=SUITES)
    p_verify.add_argument("--model", choices=PRODUCT_MODEL_NAMES, default=None)
    p_verify.add_argument("--seed", type=int, default=1)
    p_verify.add_argument("--samples", type=int, default=None)
    p_verify.add_argument("--depth", type=int, default=None)
    p_verify.add_argument("--points", default=None, help="CSV points file with header re,im")
    p_verify.add_argument("--out", default=None, help="write the JSON report here")
    p_verify.set_defaults(func=_cmd_verify)

    p_render = sub.add_parser("julia-render", help="render the basin to PGM/PPM")
    p_render.add_argument("--rect", required=True, help="re_min,re_max,im_min,im_max")
    p_render.add_argument("--width", required=True, type=int)
    p_render.add_argument("--height", required=True, type=int)
    p_render.add_argument("--max-iter", type=int, default=200)
    p_render.add_argument("--color", choices=("status", "depth", "kernel"), default="status")
    p_render.add_argument("--threads", type=int, default=1)
    p_render.add_argument("--out", required=True)
    p_render.set_defaults(func=_cmd_render)

    return parser


#: flags whose values may start with a minus sign (points, rectangles)
_VALUE_FLAGS = ("--rect", "--z", "--w")


def _merge_value_flags(argv):
    """Rewrite ['--z', '-1,0'] as ['--z=-1,0'] so argparse accepts it."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_value_flags(list(argv))
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, BudgetError, PoleError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except ProdkernError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


def console_entry() -> None:
    sys.exit(main())
