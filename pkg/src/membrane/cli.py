"""``membrane`` command line: shuffle, verify, integrate, zeta.

Exit codes: 0 pass, 1 property failure, 2 usage, 3 domain, 4 accuracy.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import hopf
from .errors import AccuracyError, DomainError, EvaluationError, InvalidInput, UnsupportedError
from .perms import Permutation, restricted_shuffles, shuffles
from .quad.checks import (
    composition_identity_check,
    homotopy_suite,
    lemma21_check,
    lemma22_check,
    shuffle_relation_check,
)
from .quad.context import HorizontalPair, rectangle_realization
from .quad.forms import Form2, QuadratureConfig, Rectangle, form_from_json
from .quad.integrate import integrate
from .quad.oracle import exact_value
from .report import CheckReport, jsonable
from .scenarios import TARGET_FORMS, CocycleScenario, HomotopyScenario, polynomial_forms
from .zeta import (
    NumberFieldSpec,
    TruncationPolicy,
    completed_zeta,
    multiple_completed_dedekind_2d,
    multiple_completed_zeta_path,
    path_word_integral,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_ACCURACY = 0, 1, 2, 3, 4
SUITES = ("hopf", "shuffle-relation", "lemma21", "thm15", "homotopy", "cocycle", "group-like")


def _dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True)


def _perm(text: str | None, n: int, offset: int = 0) -> Permutation:
    if text is None:
        return Permutation.identity(n, offset)
    vals = Permutation.parse(text, offset) if _on_block(text, offset) else Permutation.parse(text)
    p = vals.shifted(offset)
    if p.n != n:
        raise InvalidInput(f"permutation {text} has size {p.n}, expected {n}")
    return p


def _on_block(text: str, offset: int) -> bool:
    """True when ``text`` is already written on ``{offset+1, ...}``."""
    try:
        Permutation.parse(text, offset)
    except InvalidInput:
        return False
    return offset > 0


# --- shuffle --------------------------------------------------------------------------


def cmd_shuffle(a: argparse.Namespace, out: Callable[[str], None]) -> int:
    if a.m < 0 or a.n < 0:
        raise InvalidInput("sizes must be non-negative")
    sigma = _perm(a.sigma, a.m)
    tau = _perm(a.tau, a.n, a.m)
    if a.restricted is not None:
        i, j = a.restricted
        rows = restricted_shuffles(sigma, tau, i, j)
    else:
        rows = shuffles(sigma, tau)
    listing = [list(r.images) for r in rows]
    if a.json:
        out(_dumps({
            "m": a.m, "n": a.n, "sigma": list(sigma.images), "tau": list(tau.images),
            "restricted": a.restricted, "count": len(listing), "shuffles": listing,
        }))
    else:
        for r in rows:
            out(str(r))
        out(f"count: {len(listing)}")
    return EXIT_PASS


# --- verify ---------------------------------------------------------------------------


def _suite_hopf(k: int, N: int, tol: float, rng: random.Random) -> Iterable[CheckReport]:
    mons = [m for n in range(N + 1) for m in hopf.classes(k, n)]
    yield CheckReport("coassociativity", all(hopf.coassociativity_defect(m) == 0 for m in mons), 0, 0.0, len(mons))
    yield CheckReport("counit", all(hopf.counit_defect(m) == 0 for m in mons), 0, 0.0, len(mons))
    for side in ("left", "right"):
        bad = [m for m in mons if len(hopf.antipode_defect(m, side)) != 0]
        yield CheckReport(f"antipode-{side}", not bad, len(bad), 0.0, len(mons))
    pairs = [(a, b) for a in mons for b in mons if a.degree + b.degree <= N]
    bad = sum(hopf.bialgebra_defect(a, b) != 0 for a, b in pairs)
    yield CheckReport("bialgebra", bad == 0, bad, 0.0, len(pairs))


def _random_poly(rng: random.Random, deg: int = 2) -> Form2:
    terms = {(0, 0): Fraction(1)}
    for _ in range(2):
        key = (rng.randint(0, deg), rng.randint(0, deg))
        terms[key] = terms.get(key, 0) + Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Form2.poly(terms)


def _suite_shuffle_relation(k: int, N: int, tol: float, rng: random.Random, trials: int = 20) -> Iterable[CheckReport]:
    cfg = QuadratureConfig(method="exact")
    worst, checked = Fraction(0), 0
    for _ in range(trials):
        for n1 in range(1, N):
            for n2 in range(1, N - n1 + 1):
                f1 = [_random_poly(rng) for _ in range(n1)]
                f2 = [_random_poly(rng) for _ in range(n2)]
                for sx1, sy1 in itertools.product(itertools.permutations(range(1, n1 + 1)), repeat=2):
                    for sx2, sy2 in itertools.product(itertools.permutations(range(1, n2 + 1)), repeat=2):
                        r = shuffle_relation_check(f1, sx1, sy1, f2, sx2, sy2, cfg=cfg)
                        worst = max(worst, r.max_deviation)
                        checked += 1
    yield CheckReport("shuffle-relation", worst == 0, worst, 0.0, checked, {"trials": trials})


def _suite_lemma21(k: int, N: int, tol: float, rng: random.Random) -> Iterable[CheckReport]:
    cfg = QuadratureConfig(method="exact")
    A, B = Rectangle(0, 1, 0, 1), Rectangle(1, 2, 0, 1)
    for name, fn in (("lemma2.1", _lemma21_all), ("lemma2.2", _lemma22_all)):
        worst, checked = fn(N, A, B, cfg, rng)
        yield CheckReport(name, worst == 0, worst, 0.0, checked)


def _lemma21_all(N, A, B, cfg, rng):
    worst, checked = Fraction(0), 0
    for n in range(1, N + 1):
        forms = [_random_poly(rng) for _ in range(n)]
        for sx in itertools.permutations(range(1, n + 1)):
            for sy in itertools.permutations(range(1, n + 1)):
                r = lemma21_check(forms, sx, sy, A, B, cfg)
                worst = max(worst, r.max_deviation)
                checked += 1
    return worst, checked


def _lemma22_all(N, A, B, cfg, rng):
    worst, checked = Fraction(0), 0
    for n1 in range(1, N):
        for n2 in range(1, N - n1 + 1):
            fa = [_random_poly(rng) for _ in range(n1)]
            fb = [_random_poly(rng) for _ in range(n2)]
            for sxa, sya in itertools.product(itertools.permutations(range(1, n1 + 1)), repeat=2):
                for sxb, syb in itertools.product(itertools.permutations(range(1, n2 + 1)), repeat=2):
                    r = lemma22_check(fa, sxa, sya, fb, sxb, syb, A, B, cfg)
                    worst = max(worst, r.max_deviation)
                    checked += 1
    return worst, checked


def _suite_thm15(k: int, N: int, tol: float, rng: random.Random) -> Iterable[CheckReport]:
    ctx = HorizontalPair(polynomial_forms(k), Rectangle(0, 1, 0, 1), Rectangle(1, 2, 0, 1), QuadratureConfig(method="exact"))
    yield hopf.verify_thm_1_5(k, N, ctx, 0.0)


def _suite_group_like(k: int, N: int, tol: float, rng: random.Random) -> Iterable[CheckReport]:
    real = rectangle_realization(polynomial_forms(k), Rectangle.unit(), QuadratureConfig(method="exact"))
    J = hopf.truncated_J(k, N, real)
    yield hopf.group_like_check(J, N, real, 0.0)


def _suite_homotopy(k: int, N: int, tol: float, rng: random.Random, eps: float = 0.1) -> Iterable[CheckReport]:
    s = HomotopyScenario(eps=eps, n=max(1, N))
    m0, m1 = s.membranes()
    yield homotopy_suite(m0, m1, TARGET_FORMS, s.n, s.quadrature, tol if tol is not None else s.tolerance)


def _suite_cocycle(k: int, N: int, tol: float, rng: random.Random, eps: float = 0.1) -> Iterable[CheckReport]:
    s = CocycleScenario(eps=eps, degree=max(1, N))
    yield composition_identity_check(*s.pieces(), TARGET_FORMS, s.degree, s.quadrature, tol if tol is not None else s.tolerance)


_DEFAULT_DEGREE = {"hopf": 4, "shuffle-relation": 4, "lemma21": 3, "thm15": 3, "homotopy": 2, "cocycle": 2, "group-like": 3}


def cmd_verify(a: argparse.Namespace, out: Callable[[str], None]) -> int:
    N = _DEFAULT_DEGREE[a.suite] if a.max_degree is None else a.max_degree
    if N < 0 or a.alphabet < 1:
        raise InvalidInput("need max-degree >= 0 and alphabet >= 1")
    rng = random.Random(a.seed)
    runners: dict[str, Callable[..., Iterable[CheckReport]]] = {
        "hopf": _suite_hopf,
        "shuffle-relation": _suite_shuffle_relation,
        "lemma21": _suite_lemma21,
        "thm15": _suite_thm15,
        "group-like": _suite_group_like,
        "homotopy": lambda *x: _suite_homotopy(*x, eps=a.epsilon),
        "cocycle": lambda *x: _suite_cocycle(*x, eps=a.epsilon),
    }
    ok = True
    for rep in runners[a.suite](a.alphabet, N, a.tolerance, rng):
        ok = ok and rep.passed
        if a.json:
            out(rep.line())
        else:
            status = "PASS" if rep.passed else "FAIL"
            out(f"{status} {rep.name}: max deviation {_fmt(rep.max_deviation)} (tolerance {rep.tolerance:g}, {rep.checked} checked)")
    return EXIT_PASS if ok else EXIT_FAIL


def _fmt(v) -> str:
    return str(v) if isinstance(v, (int, Fraction)) else f"{float(v):.3e}"


# --- integrate ------------------------------------------------------------------------


def _read_spec(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        spec = json.loads(text)
    except OSError as exc:
        raise InvalidInput(f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"spec file is not valid JSON: {exc}") from exc
    if not isinstance(spec, dict) or "forms" not in spec:
        raise InvalidInput("spec must be a JSON object with a 'forms' list")
    return spec


def _rect(spec: dict) -> Rectangle:
    r = spec.get("rectangle", [0, 1, 0, 1])
    try:
        ax, bx, ay, by = (Fraction(str(v)) for v in r)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad rectangle {r!r}") from exc
    return Rectangle(ax, bx, ay, by)


def cmd_integrate(a: argparse.Namespace, out: Callable[[str], None]) -> int:
    spec = _read_spec(a.spec)
    if not isinstance(spec["forms"], list) or not spec["forms"]:
        raise InvalidInput("'forms' must be a non-empty list")
    forms = [form_from_json(f) for f in spec["forms"]]
    n = len(forms)
    sx = _perm(a.sx if a.sx is not None else _spec_perm(spec, "sx"), n)
    sy = _perm(a.sy if a.sy is not None else _spec_perm(spec, "sy"), n)
    A = _rect(spec)
    poly = all(f.kind == "polynomial" for f in forms) and A.is_rational
    method = a.method if a.method != "auto" else ("exact" if poly else "gauss")
    if method == "exact" and not poly:
        raise InvalidInput("exact mode needs polynomial forms on a rational rectangle")
    cfg = QuadratureConfig(method=method, points=a.points, cells=a.cells, samples=a.samples, seed=a.seed, tolerance=a.tolerance or 1e-8)
    res = integrate(forms, sx, sy, (A.ax, A.bx), (A.ay, A.by), cfg, error_estimate=True)
    doc: dict[str, Any] = res.as_dict()
    doc.update({"n": n, "sx": list(sx.images), "sy": list(sy.images), "rectangle": [A.ax, A.bx, A.ay, A.by]})
    if method == "gauss":
        doc["points"], doc["cells"] = a.points, a.cells
    if method == "mc":
        doc["samples"] = a.samples
    if a.oracle:
        if not poly:
            raise InvalidInput("--oracle needs polynomial forms on a rational rectangle")
        exact = exact_value(forms, sx.images, sy.images, (A.ax, A.bx), (A.ay, A.by))
        doc["oracle"] = str(exact)
        doc["difference"] = float(Fraction(res.value) - exact) if not isinstance(res.value, Fraction) else str(res.value - exact)
    if a.json:
        out(_dumps(doc))
    else:
        out(f"value = {doc['value']}  (est_error {doc['est_error']:.3e}, method {method})")
        if a.oracle:
            out(f"oracle = {doc['oracle']}  difference = {doc['difference']}")
    return EXIT_PASS


def _spec_perm(spec: dict, key: str) -> str | None:
    v = spec.get(key)
    return None if v is None else json.dumps(v)


# --- zeta -----------------------------------------------------------------------------


def cmd_zeta(a: argparse.Namespace, out: Callable[[str], None]) -> int:
    K = NumberFieldSpec.parse(a.field)
    exps = a.s or [2.0]
    trunc = TruncationPolicy(radius=a.radius, t_min=a.tmin, t_max=a.tmax)
    cfg = QuadratureConfig(
        method="mc" if a.method == "mc" else "gauss", points=a.points, samples=a.samples, seed=a.seed,
        tolerance=a.tolerance or 1e-8,
    )
    d = len(exps)
    s1 = list(Permutation.parse(a.sigma1).images) if a.sigma1 else None
    s2 = list(Permutation.parse(a.sigma2).images) if a.sigma2 else None
    t0 = time.perf_counter()
    if a.word:
        value = path_word_integral(K, [w.strip() for w in a.word.split(",")], trunc, points=a.points)
        doc = {"experimental": "word-encoded path integral", "field": K.name, "word": a.word, "value": value,
               "truncation": trunc.as_dict()}
        out(_dumps(doc) if a.json else f"value = {value}")
        return EXIT_PASS
    if K.kind == "real_quadratic" or a.membrane:
        if K.kind != "real_quadratic":
            raise InvalidInput("--membrane needs a real quadratic field")
        if a.radius is not None or a.method == "mc":
            raise UnsupportedError("the membrane integral uses automatic lattice radii and Gauss rules")
        res = multiple_completed_dedekind_2d(K, exps, s1, s2, trunc, cfg)
    else:
        if s2 is not None:
            raise InvalidInput("--sigma2 applies to membrane (real quadratic) integrals only")
        if d == 1 and s1 in (None, [1]):
            res = completed_zeta(K, exps[0], trunc, cfg)
        elif a.method == "mc":
            raise UnsupportedError("Monte Carlo is available for single exponents only")
        else:
            res = multiple_completed_zeta_path(K, exps, trunc, cfg, s1)
    res.runtime_ms = 1e3 * (time.perf_counter() - t0)
    doc = res.as_dict(timing=a.timing)
    doc["truncation"] = trunc.as_dict()
    doc["points"] = a.points
    if a.json:
        out(_dumps(doc))
    else:
        out(f"value = {res.value:.12g}  (est_error {res.est_error:.3e}, field {K.name}, exponents {res.exponents})")
        out("tail bounds: " + ", ".join(f"{k}={v:.3e}" for k, v in res.tail_bounds.items()))
        if a.timing:
            out(f"runtime: {res.runtime_ms:.1f} ms")
    return EXIT_PASS


# --- parser ---------------------------------------------------------------------------


def _common(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    p.add_argument("--tolerance", type=float, default=d(None), help="override the check/accuracy tolerance")
    p.add_argument("--timing", action="store_true", default=d(False), help="report wall-clock runtime (not deterministic)")
    return p


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected i,j") from exc
    return i, j


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="membrane", description=__doc__, parents=[_common(False)])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(True)

    p = sub.add_parser("shuffle", parents=[common], help="list (restricted) shuffles")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--sigma", help="ordering of {1..m}, e.g. '[2,1]'")
    p.add_argument("--tau", help="ordering of the second block, written on {1..n}")
    p.add_argument("--restricted", nargs=2, type=int, metavar=("I", "J"))

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--epsilon", type=float, default=0.1, help="interior perturbation for homotopy/cocycle")

    p = sub.add_parser("integrate", parents=[common], help="evaluate an iterated integral from a JSON spec")
    p.add_argument("spec", help="JSON spec file ('-' for stdin)")
    p.add_argument("--sx")
    p.add_argument("--sy")
    p.add_argument("--method", choices=("auto", "exact", "gauss", "mc"), default="auto")
    p.add_argument("--points", type=int, default=8)
    p.add_argument("--cells", type=int, default=1)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--oracle", action="store_true", help="also print the exact polynomial oracle")

    p = sub.add_parser("zeta", parents=[common], help="completed and multiple completed zeta values")
    p.add_argument("--field", default="Q", help="Q, Qi or Q:sqrtD")
    p.add_argument("--s", type=float, action="append", help="exponent (repeat for multiple values)")
    p.add_argument("--sigma1")
    p.add_argument("--sigma2")
    p.add_argument("--radius", type=float)
    p.add_argument("--tmin", type=float, default=1e-4)
    p.add_argument("--tmax", type=float, default=50.0)
    p.add_argument("--method", choices=("gauss", "mc"), default="gauss")
    p.add_argument("--points", type=int, default=8)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--membrane", action="store_true", help="membrane integral (real quadratic fields)")
    p.add_argument("--word", help="experimental: comma-separated letters theta/dz along the geodesic")
    return parser


COMMANDS = {"shuffle": cmd_shuffle, "verify": cmd_verify, "integrate": cmd_integrate, "zeta": cmd_zeta}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def out(line: str) -> None:
        print(line, flush=True)

    try:
        return COMMANDS[args.command](args, out)
    except AccuracyError as exc:
        print(_dumps({"error": "accuracy", "message": str(exc), "diagnostics": exc.diagnostics}), file=sys.stderr)
        return EXIT_ACCURACY
    except (DomainError, EvaluationError) as exc:
        print(_dumps({"error": "domain", "message": str(exc)}), file=sys.stderr)
        return EXIT_DOMAIN
    except (InvalidInput, UnsupportedError) as exc:
        print(_dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
