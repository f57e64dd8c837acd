"""Batch command-line front end. Results go to stdout (or --out); progress goes to stderr."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .brandt import brandt_matrix, eigensystems, jl_compare, moduli_eigensystems, verify_periodicity
from .drinfeld import (
    ConsistencyError,
    DrinfeldError,
    DrinfeldModule,
    ResourceCap,
    ValuedModule,
    conjugation_identity_holds,
    frobenius_charpoly,
    height_at_v,
    is_supersingular,
    motive_charpoly,
    phi_of,
    stable_model,
    v_rank,
    weil_number_check,
)
from .eigen import NonCommuting
from .fields import GF, FieldError, embed, field
from .moduli import (
    DegenerationPath,
    HeckeEvaluator,
    InterpolationResidual,
    ModuliPoint,
    ModuliSpace,
    component_count,
    limit_module,
    module_from_point,
    ss_points_level_t,
)
from .polya import PolyA, PrimeP, gl_order, gl_order_field, monic_irreducibles, prime_power, primes_up_to
from .ratfunc import RatFunc
from .skew import SkewCapExceeded, SkewError
from .spherical_hecke import DoubleCoset, HeckeElement, commutativity_check, convolve, coset_reps
from .supersingular import DEFAULT_CAP, SSClass, dim_formula, enumerate_ss, leveled_ss_set, mass

log = logging.getLogger("drinfeld")

SCHEMA_VERSION = "1"
CACHE_ENV = "DRINFELD_CACHE_DIR"

EXIT_OK, EXIT_PRECONDITION, EXIT_CONSISTENCY, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class CheckFailed(Exception):
    """A verification command ran to completion but its identity failed; the result is still emitted."""

    def __init__(self, result: Result, message: str):
        super().__init__(message)
        self.result = result


class Result:
    def __init__(self, data: dict, rows: list[dict] | None = None):
        self.data = data
        self.rows = rows


# ---------------------------------------------------------------------------
# input parsing


def _prime_field_q(q: int) -> int:
    try:
        prime_power(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return q


def parse_poly(text: str, q: int, what: str = "polynomial") -> PolyA:
    try:
        f = PolyA.parse(text, q)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None
    if f.is_zero():
        raise UsageError(f"{what} is zero")
    return f.monic()


def parse_prime(text: str, q: int, what: str = "prime") -> PrimeP:
    f = parse_poly(text, q, what)
    if f.deg < 1 or not f.is_irreducible():
        raise UsageError(f"{what} {f} is not irreducible")
    return PrimeP(f)


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"cannot parse integer list {text!r}") from None


def parse_weights(text: str) -> list[int]:
    """'1-6', '1..6' or '1,2,5'."""
    s = text.replace(" ", "")
    for sep in ("..", "-"):
        if sep in s and not s.startswith("-"):
            a, b = s.split(sep, 1)
            try:
                lo, hi = int(a), int(b)
            except ValueError:
                raise UsageError(f"cannot parse weight range {text!r}") from None
            if hi < lo:
                raise UsageError("empty weight range")
            return list(range(lo, hi + 1))
    return parse_int_list(s)


def parse_element(L: GF, text: str) -> int:
    """Field element as comma-separated F_p digits, lowest power of the generator first."""
    try:
        return L.from_digits(parse_int_list(text))
    except FieldError as exc:
        raise UsageError(f"element {text!r}: {exc}") from None


def parse_elements(L: GF, text: str) -> list[int]:
    return [parse_element(L, part) for part in text.split(";")]


def parse_laurent(F: GF, text: str) -> RatFunc:
    """Laurent polynomial in pi over the prime field, e.g. 'pi^-1', '1+pi^2', '2pi'."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise UsageError("empty coefficient")
    if s[0] not in "+-":
        s = "+" + s
    terms: dict[int, int] = {}
    i = 0
    while i < len(s):
        sign = s[i]
        j = i + 1
        while j < len(s) and not (s[j] in "+-" and s[j - 1] != "^"):
            j += 1
        body = s[i + 1:j]
        i = j
        coef, exp = body, "0"
        if "pi" in body:
            coef, rest = body.split("pi", 1)
            exp = rest[1:] if rest.startswith("^") else ("1" if rest == "" else None)
            if exp is None:
                raise UsageError(f"cannot parse term {body!r}")
        try:
            c = int(coef) if coef else 1
            e = int(exp)
        except ValueError:
            raise UsageError(f"cannot parse term {body!r}") from None
        if sign == "-":
            c = -c
        terms[e] = (terms.get(e, 0) + c) % F.p
    lo = min(terms)
    shift = max(0, -lo)
    coeffs = [0] * (max(terms) + shift + 1)
    for e, c in terms.items():
        coeffs[e + shift] = c
    return RatFunc(F, tuple(coeffs), (0,) * shift + (1,))


# ---------------------------------------------------------------------------
# helpers


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _qrp(args) -> tuple[int, int, PrimeP]:
    _require(args, "q", "rank", "place")
    if args.rank < 1:
        raise UsageError("--rank must be positive")
    q = _prime_field_q(args.q)
    return q, args.rank, parse_prime(args.place, q, "place")


def _level(args, q: int, P: PrimeP) -> PolyA:
    _require(args, "level")
    n = parse_poly(args.level, q, "level")
    if n.deg < 1:
        raise UsageError("level must be a nonunit")
    if n.gcd(P.P).deg > 0:
        raise UsageError(f"level {n} is not coprime to the place {P}")
    return n


def _hecke_primes(args, q: int, exclude: Sequence[PolyA]) -> list[PrimeP]:
    if args.primes:
        ws = [parse_prime(s, q, "prime") for s in args.primes.split(",") if s.strip()]
        if len({str(w) for w in ws}) != len(ws):
            raise UsageError("repeated primes")
    elif args.prime_degree_max is not None:
        ws = primes_up_to(q, args.prime_degree_max)
        ws = [w for w in ws if all(w.P.gcd(x).deg == 0 for x in exclude)]
        return ws
    else:
        raise UsageError("give --primes or --prime-degree-max")
    for w in ws:
        for x in exclude:
            if w.P.gcd(x).deg > 0:
                raise UsageError(f"prime {w} is not coprime to {x}")
    return ws


def _single_prime(args, q: int, exclude: Sequence[PolyA]) -> PrimeP:
    _require(args, "primes")
    ws = _hecke_primes(args, q, exclude)
    if len(ws) != 1:
        raise UsageError("this command takes exactly one prime in --primes")
    return ws[0]


def _cache_dir() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    if not d:
        return None
    path = Path(d)
    path.mkdir(parents=True, exist_ok=True)
    return path


def load_classes(r: int, P: PrimeP, cap: int, workers: int) -> list[SSClass]:
    """enumerate_ss, memoized on disk under $DRINFELD_CACHE_DIR when set."""
    cdir = _cache_dir()
    fname = None
    if cdir is not None:
        fname = cdir / f"ss-v{SCHEMA_VERSION}-q{P.q}-r{r}-{str(P.P).replace('^', '')}.json"
        if fname.exists():
            try:
                raw = json.loads(fname.read_text())
                classes = [SSClass(c["index"], DrinfeldModule.from_json(c["module"]), c["aut_order"], c["aut_m"])
                           for c in raw]
                if sum(Fraction(1, c.aut_order) for c in classes) == mass(r, P):
                    log.info("loaded %d classes from %s", len(classes), fname)
                    return classes
            except (ValueError, KeyError, TypeError):
                pass
            log.warning("ignoring unreadable cache file %s", fname)
    t0 = time.perf_counter()
    classes = enumerate_ss(r, P, cap=cap, workers=workers)
    log.info("enumerated %d classes in %.2fs", len(classes), time.perf_counter() - t0)
    if fname is not None:
        fname.write_text(json.dumps([c.to_json() for c in classes], sort_keys=True))
    return classes


def _digits(L: GF, xs: Sequence[int]) -> list[list[int]]:
    return [L.to_digits(x) for x in xs]


def _module_from_args(args) -> DrinfeldModule:
    _require(args, "q", "field_degree", "coeffs")
    q = _prime_field_q(args.q)
    p, e = prime_power(q)
    L = field(p, e * args.field_degree)
    if args.gamma is not None:
        gamma = parse_element(L, args.gamma)
    elif args.place is not None:
        P = parse_prime(args.place, q, "place")
        if L.n % P.Fv.n:
            raise UsageError(f"F_{q}^{args.field_degree} does not contain the residue field of {P}")
        gamma = embed(P.gamma_t, P.Fv, L)
    else:
        raise UsageError("give --gamma or --place")
    coeffs = parse_elements(L, args.coeffs)
    return DrinfeldModule(L, q, gamma, tuple(coeffs))


# ---------------------------------------------------------------------------
# ss


def cmd_ss_mass(args) -> Result:
    q, r, P = _qrp(args)
    return Result({"mass": str(mass(r, P))})


def cmd_ss_enumerate(args) -> Result:
    q, r, P = _qrp(args)
    classes = load_classes(r, P, args.cap, args.workers)
    total = sum(Fraction(1, c.aut_order) for c in classes)
    data = {
        "q": q, "rank": r, "place": str(P),
        "mass": str(mass(r, P)), "enumerated_mass": str(total),
        "count": len(classes),
        "classes": [c.to_json() for c in classes],
    }
    rows = [{"index": c.index, "aut_order": c.aut_order, "field_degree": c.module.L.n,
             "coeffs": json.dumps(c.module.to_json()["coeffs"])} for c in classes]
    return Result(data, rows)


def cmd_ss_leveled(args) -> Result:
    q, r, P = _qrp(args)
    n = _level(args, q, P)
    S = leveled_ss_set(r, P, n, classes=load_classes(r, P, args.cap, args.workers))
    data = S.to_json()
    data["count"] = len(S)
    data["expected"] = str(gl_order(r, n) * mass(r, P))
    rows = [{"point": i, "class": pt.cls, "lambda": json.dumps(_digits(S.M, pt.lam))} for i, pt in enumerate(S.points)]
    return Result(data, rows)


def cmd_ss_dim(args) -> Result:
    q, r, P = _qrp(args)
    n = _level(args, q, P)
    d = dim_formula(r, P, n)
    data: dict[str, Any] = {"dim": d}
    if args.verify:
        S = leveled_ss_set(r, P, n, classes=load_classes(r, P, args.cap, args.workers))
        data["points"] = len(S)
        data["period"] = P.qv**r - 1
        data["consistent"] = d == (P.qv**r - 1) * len(S)
        if not data["consistent"]:
            raise CheckFailed(Result(data), "dimension formula disagrees with the point count")
    return Result(data)


# ---------------------------------------------------------------------------
# brandt


def _leveled(args):
    q, r, P = _qrp(args)
    n = _level(args, q, P)
    S = leveled_ss_set(r, P, n, classes=load_classes(r, P, args.cap, args.workers))
    log.info("leveled set with %d points over %s", len(S), S.M)
    return q, r, P, n, S


def cmd_brandt_matrix(args) -> Result:
    q, r, P, n, S = _leveled(args)
    w = _single_prime(args, q, [P.P, n])
    k = args.weight if args.weight is not None else 0
    B = brandt_matrix(S, w, args.j, k)
    data = B.to_json()
    data["size"] = B.size
    rows = [{"row": i, "col": j, "entry": json.dumps(S.M.to_digits(x))}
            for i, row in enumerate(B.entries) for j, x in enumerate(row)]
    return Result(data, rows)


def _k_window(args, P: PrimeP, r: int) -> list[int]:
    if args.weights:
        return parse_weights(args.weights)
    if args.weight is not None:
        return [args.weight]
    return list(range(1, P.qv**r))


def cmd_brandt_eigensystems(args) -> Result:
    q, r, P, n, S = _leveled(args)
    ws = _hecke_primes(args, q, [P.P, n])
    ks = _k_window(args, P, r)
    rep = eigensystems(S, ws, ks)
    bound = dim_formula(r, P, n)
    count = len(rep.systems)
    data = {
        "primes": [str(w) for w in ws], "weights": ks,
        "count": count, "dim_bound": bound, "within_bound": count <= bound,
        "systems": rep.to_json(),
    }
    rows = []
    for idx, s in enumerate(data["systems"]):
        for ent in s["entries"]:
            rows.append({"system": idx, "w": ent["w"], "j": ent["j"],
                         "field_degree": ent["eigenvalue"]["field_degree"],
                         "eigenvalue": json.dumps(ent["eigenvalue"]["digits"]),
                         "weights": json.dumps(s["weights"])})
    if count > bound:
        raise CheckFailed(Result(data, rows), "eigensystem count exceeds the dimension bound")
    return Result(data, rows)


def cmd_brandt_periodicity(args) -> Result:
    q, r, P, n, S = _leveled(args)
    ws = _hecke_primes(args, q, [P.P, n])
    ks = parse_weights(args.weights) if args.weights else [args.weight if args.weight is not None else 0]
    period = P.qv**r - 1
    checks = [{"k": k, "k_shifted": k + period, "equal": verify_periodicity(S, ws, k)} for k in ks]
    data = {"period": period, "primes": [str(w) for w in ws], "checks": checks,
            "all_equal": all(c["equal"] for c in checks)}
    if not data["all_equal"]:
        raise CheckFailed(Result(data, checks), "weight periodicity fails")
    return Result(data, checks)


# ---------------------------------------------------------------------------
# jl


def cmd_jl_verify(args) -> Result:
    q, r, P = _qrp(args)
    t = PolyA.t(q)
    if args.level is not None and parse_poly(args.level, q, "level") != t:
        raise UsageError("the comparison runs at level (t) only")
    if P.P == t:
        raise UsageError("the place must be coprime to t")
    if args.prime_degree_max is None and not args.primes:
        args.prime_degree_max = 3
    ws = _hecke_primes(args, q, [P.P, t])
    period = P.qv**r - 1
    ks_b = parse_weights(args.weights) if args.weights else list(range(1, period + 1))
    ks_m = parse_weights(args.moduli_weights) if args.moduli_weights else list(range(1, 2 * period + 1))
    S = leveled_ss_set(r, P, t, classes=load_classes(r, P, args.cap, args.workers))
    t0 = time.perf_counter()
    brandt = eigensystems(S, ws, ks_b)
    log.info("Brandt side: %d systems (%.1fs)", len(brandt.systems), time.perf_counter() - t0)
    space = ModuliSpace(q, r, P)
    t0 = time.perf_counter()
    moduli, dims = moduli_eigensystems(space, ws, ks_m, seed=args.seed)
    log.info("moduli side: %d systems (%.1fs)", len(moduli.systems), time.perf_counter() - t0)
    report = jl_compare(moduli, brandt)
    report.update({
        "primes": [str(w) for w in ws],
        "brandt_weights": ks_b,
        "moduli_weights": ks_m,
        "moduli_dims": {str(k): d for k, d in dims.items()},
        "monomial_counts": {str(k): len(space.monomials(k)) for k in ks_m},
        "brandt_points": len(S),
    })
    if not report["coincide"]:
        report["note"] = ("mismatch may reflect the gap between the span of u-monomials "
                          "and the full space of weight-k forms; see moduli_dims")
    rows = [{"side": side, "weights": json.dumps(s["weights"]), "entries": json.dumps(s["entries"])}
            for side in ("brandt_only", "moduli_only") for s in report[side]]
    return Result(report, rows)


# ---------------------------------------------------------------------------
# moduli


def _space(args) -> ModuliSpace:
    q, r, P = _qrp(args)
    if P.P == PolyA.t(q):
        raise UsageError("the place must be coprime to t")
    return ModuliSpace(q, r, P)


def _default_m(space: ModuliSpace) -> int:
    m = 1
    while space.F.order**m < 256:
        m += 1
    return m


def cmd_moduli_point(args) -> Result:
    space = _space(args)
    m = args.field_degree or _default_m(space)
    L = space.point_field(m)
    if args.lam:
        x = space.point(L, parse_elements(L, args.lam))
    else:
        x = space.random_point(random.Random(f"cli-point-{args.seed}"), L)
    phi, _ = module_from_point(x)
    h = space.stratum_of_point(x)
    data = {
        "point": x.to_json(), "module": phi.to_json(),
        "stratum": h, "height": height_at_v(phi, space.P),
        "coefficient_forms": [L.to_digits(space.coefficient_form(i).evaluate(x)) for i in range(1, space.r + 1)],
        "supersingular": h == space.r,
    }
    return Result(data)


def cmd_moduli_form_basis(args) -> Result:
    space = _space(args)
    ks = _k_window(args, space.P, space.r) if (args.weights or args.weight is not None) else [0]
    out = []
    for k in ks:
        fs = space.form_space(k, args.seed)
        out.append({"weight": k, "dim": fs.dim, "monomial_count": len(fs.monomials),
                    "basis": [list(e) for e in fs.basis]})
    rows = [{"weight": o["weight"], "dim": o["dim"], "monomial_count": o["monomial_count"]} for o in out]
    return Result({"u_index": [list(v) for v in space.vr0], "spaces": out}, rows)


def cmd_moduli_hecke(args) -> Result:
    space = _space(args)
    w = _single_prime(args, space.q, [space.P.P, PolyA.t(space.q)])
    k = args.weight if args.weight is not None else 0
    fs = space.form_space(k, args.seed)
    ev = HeckeEvaluator(space, w, args.j, seed=args.seed)
    mat = ev.matrix(k, fs)
    F = space.F
    data = {"w": str(w), "j": args.j, "k": k, "field": F.descriptor(), "dim": fs.dim,
            "basis": [list(e) for e in fs.basis],
            "matrix": [[F.to_digits(a) for a in row] for row in mat]}
    rows = [{"row": i, "col": j, "entry": json.dumps(F.to_digits(a))}
            for i, row in enumerate(mat) for j, a in enumerate(row)]
    return Result(data, rows)


def cmd_moduli_strata(args) -> Result:
    space = _space(args)
    m = args.field_degree or _default_m(space)
    L = space.point_field(m)
    rng = random.Random(f"cli-strata-{args.seed}")
    counts = {h: 0 for h in range(1, space.r + 1)}
    agree = True
    for _ in range(args.samples):
        x = space.random_point(rng, L)
        h = space.stratum_of_point(x)
        counts[h] += 1
        agree &= h == space.height(x)
    data: dict[str, Any] = {"field": L.descriptor(), "samples": args.samples,
                            "counts": {str(h): c for h, c in counts.items()}, "agrees_with_height": agree}
    if args.with_ss:
        pts = ss_points_level_t(space)
        expected = gl_order_field(space.r, space.q) * mass(space.r, space.P)
        data["supersingular_points"] = len(pts)
        data["expected_supersingular_points"] = str(expected)
        data["ss_count_consistent"] = len(pts) == expected
        agree &= data["ss_count_consistent"]
    rows = [{"stratum": h, "count": c} for h, c in counts.items()]
    if not agree:
        raise CheckFailed(Result(data, rows), "stratification check failed")
    return Result(data, rows)


def cmd_moduli_components(args) -> Result:
    _require(args, "q", "level")
    q = _prime_field_q(args.q)
    n = parse_poly(args.level, q, "level")
    if n.deg < 1:
        raise UsageError("level must be a nonunit")
    return Result({"components": component_count(n)})


def cmd_moduli_limit(args) -> Result:
    space = _space(args)
    m = args.field_degree or 1
    L = space.point_field(m)
    if args.lam:
        fixed = parse_elements(L, args.lam)
        if len(fixed) != space.r - 1:
            raise UsageError(f"--lambda takes the {space.r - 1} fixed coordinates; the last one runs to infinity")
        if not ModuliPoint(L, space.q, 1, tuple(fixed)).is_injective():
            raise UsageError("the fixed coordinates are F_q-dependent")
    else:
        rng = random.Random(f"cli-limit-{args.seed}")
        while True:
            fixed = [L.random(rng, nonzero=True) for _ in range(space.r - 1)]
            if ModuliPoint(L, space.q, 1, tuple(fixed)).is_injective():
                break
    lam = tuple(RatFunc.const(L, c) for c in fixed) + (RatFunc.poly(L, (0, 1)),)
    path = DegenerationPath(space.q, embed(space.gamma, space.F, L), lam)
    lim = limit_module(path)
    rank = max(i for i, c in enumerate(lim, 1) if c)
    return Result({"fixed": _digits(L, fixed), "field": L.descriptor(),
                   "coefficients": _digits(L, lim), "generic_rank": rank})


# ---------------------------------------------------------------------------
# hecke-local


def _mus(args, count: int | None = None) -> list[tuple[int, ...]]:
    _require(args, "q_w", "mu")
    _prime_field_q(args.q_w)
    mus = [tuple(parse_int_list(s)) for s in args.mu]
    for mu in mus:
        if args.rank is not None and len(mu) != args.rank:
            raise UsageError(f"cocharacter {mu} does not have length --rank {args.rank}")
        try:
            DoubleCoset(mu)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if len({len(mu) for mu in mus}) != 1:
        raise UsageError("cocharacters of different lengths")
    if count is not None and len(mus) != count:
        raise UsageError(f"give --mu exactly {count} time(s)")
    if count is None and len(mus) < 2:
        raise UsageError("give --mu at least twice")
    return mus


def cmd_local_reps(args) -> Result:
    (mu,) = _mus(args, 1)
    dc = DoubleCoset(mu)
    reps = coset_reps(dc.base, args.q_w, dc.r)
    mats = [[[list(e) for e in row] for row in m] for m in reps]
    data = {"mu": list(mu), "q_w": args.q_w, "shift": dc.shift, "count": len(reps), "representatives": mats}
    rows = [{"index": i, "matrix": json.dumps(m)} for i, m in enumerate(mats)]
    return Result(data, rows)


def cmd_local_convolve(args) -> Result:
    mus = _mus(args)
    r = len(mus[0])
    acc = HeckeElement.unit(args.q_w, r)
    for mu in mus:
        acc = acc * HeckeElement.basis(mu, args.q_w)
    data = {"factors": [list(mu) for mu in mus], "q_w": args.q_w, "product": acc.to_json(),
            "total_degree": acc.total_degree()}
    return Result(data, acc.to_json())


def cmd_local_commute(args) -> Result:
    a, b = (HeckeElement.basis(mu, args.q_w) for mu in _mus(args, 2))
    ok = commutativity_check(a, b)
    data = {"commute": ok, "ab": convolve(a, b).to_json(), "ba": convolve(b, a).to_json()}
    if not ok:
        raise CheckFailed(Result(data), "Hecke elements do not commute")
    return Result(data)


# ---------------------------------------------------------------------------
# drinfeld


def cmd_phi(args) -> Result:
    phi = _module_from_args(args)
    _require(args, "a")
    a = PolyA.parse(args.a, phi.q)
    fa = phi_of(phi, a)
    return Result({"module": phi.to_json(), "a": str(a), "phi_a": _digits(phi.L, fa.coeffs)})


def cmd_height(args) -> Result:
    phi = _module_from_args(args)
    _require(args, "place")
    P = parse_prime(args.place, phi.q, "place")
    h = height_at_v(phi, P)
    return Result({"height": h, "v_rank": v_rank(phi, P), "supersingular": is_supersingular(phi, P)})


def cmd_charpoly(args) -> Result:
    phi = _module_from_args(args)
    r, s = phi.rank, phi.s
    bound = max(-(-i * s // r) for i in range(r + 1))
    if args.primes:
        ws = [parse_prime(x, phi.q).P for x in args.primes.split(",") if x.strip()]
    else:
        ws, total, d = [], 0, 1
        while total <= bound:
            for w in monic_irreducibles(phi.q, d):
                if total > bound:
                    break
                if phi_of(phi, w).coeff(0) != 0:
                    ws.append(w)
                    total += d
            d += 1
    cp = frobenius_charpoly(phi, ws)
    mot = motive_charpoly(phi)
    data = {"module": phi.to_json(), "aux_primes": [str(w) for w in ws], "degree_bound": bound,
            "charpoly": [str(c) for c in cp], "motive_charpoly": [str(c) for c in mot],
            "routes_agree": cp == mot}
    if cp != mot:
        raise CheckFailed(Result(data), "torsion and motive characteristic polynomials differ")
    return Result(data)


def cmd_stable_model(args) -> Result:
    _require(args, "q", "coeffs")
    q = _prime_field_q(args.q)
    p, e = prime_power(q)
    F = field(p, e)
    coeffs = tuple(parse_laurent(F, s) for s in args.coeffs.split(";"))
    gamma = parse_laurent(F, args.gamma) if args.gamma else RatFunc.const(F, 1)
    vm = ValuedModule(q, gamma, coeffs)
    sm = stable_model(vm)
    model = sm.model
    ok = conjugation_identity_holds(vm, sm)
    unit = model.coeffs[sm.i0 - 1]
    data = {"nu": str(sm.nu), "i0": sm.i0, "e": sm.e, "c": sm.c.to_json(),
            "model": model.to_json(), "valuations": model.valuations(),
            "integral": model.is_integral(), "i0_unit": (not unit.is_zero()) and unit.val0() == 0,
            "tame": sm.e % p != 0, "conjugation_identity": ok}
    if not (ok and data["integral"] and data["i0_unit"] and data["tame"]):
        raise CheckFailed(Result(data), "stable model check failed")
    return Result(data)


def cmd_weil_check(args) -> Result:
    _require(args, "q", "minpoly", "m", "rank", "place")
    q = _prime_field_q(args.q)
    P = parse_prime(args.place, q, "place")
    try:
        mp = [PolyA.parse(s, q) if s.strip() not in ("", "0") else PolyA(q, ()) for s in args.minpoly.split(";")]
    except ValueError as exc:
        raise UsageError(f"minpoly: {exc}") from None
    rep = weil_number_check(mp, args.m, args.rank, P.P)
    rows = [{"condition": k, **v} for k, v in rep.items() if isinstance(v, dict)]
    return Result(rep, rows)


# ---------------------------------------------------------------------------
# argument parser and dispatch

COMMANDS: dict[tuple[str, str], tuple[Callable[[Any], Result], str]] = {
    ("ss", "enumerate"): (cmd_ss_enumerate, "supersingular classes with automorphism orders"),
    ("ss", "mass"): (cmd_ss_mass, "closed-form mass"),
    ("ss", "leveled"): (cmd_ss_leveled, "leveled supersingular set"),
    ("ss", "dim"): (cmd_ss_dim, "dimension of algebraic modular forms"),
    ("brandt", "matrix"): (cmd_brandt_matrix, "one Brandt matrix"),
    ("brandt", "eigensystems"): (cmd_brandt_eigensystems, "simultaneous eigensystems over a weight window"),
    ("brandt", "periodicity"): (cmd_brandt_periodicity, "weight periodicity of eigenvalue multisets"),
    ("jl", "verify"): (cmd_jl_verify, "compare moduli-side and Brandt eigensystems at level (t)"),
    ("moduli", "point"): (cmd_moduli_point, "a level-(t) point and its module"),
    ("moduli", "form-basis"): (cmd_moduli_form_basis, "monomial basis of weight-k forms"),
    ("moduli", "hecke"): (cmd_moduli_hecke, "Hecke matrix on weight-k forms"),
    ("moduli", "strata"): (cmd_moduli_strata, "Hasse stratification of random points"),
    ("moduli", "components"): (cmd_moduli_components, "connected components at level n"),
    ("moduli", "limit"): (cmd_moduli_limit, "boundary limit along lambda_r -> infinity"),
    ("hecke-local", "reps"): (cmd_local_reps, "coset representatives of K z^mu K / K"),
    ("hecke-local", "convolve"): (cmd_local_convolve, "convolution product of basis elements"),
    ("hecke-local", "commute"): (cmd_local_commute, "commutativity of two basis elements"),
    ("drinfeld", "phi"): (cmd_phi, "phi_a of a module"),
    ("drinfeld", "height"): (cmd_height, "height and v-rank"),
    ("drinfeld", "charpoly"): (cmd_charpoly, "characteristic polynomial of Frobenius"),
    ("drinfeld", "stable-model"): (cmd_stable_model, "semistable reduction of a valued module"),
    ("drinfeld", "weil-check"): (cmd_weil_check, "Weil-number conditions"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PRECONDITION, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    c = _Parser(add_help=False)
    g = c.add_argument_group("configuration")
    g.add_argument("--q", type=int, help="size of the constant field")
    g.add_argument("--rank", type=int, help="rank r")
    g.add_argument("--place", help="monic irreducible P, e.g. 't+1'")
    g.add_argument("--level", help="monic level n, e.g. 't^2+t+1'")
    g.add_argument("--weight", type=int, help="weight k")
    g.add_argument("--weights", help="weight list or range, e.g. '1-6'")
    g.add_argument("--moduli-weights", help="moduli-side weight window (jl verify)")
    g.add_argument("--primes", help="comma-separated Hecke primes")
    g.add_argument("--prime-degree-max", type=int, help="use all admissible primes up to this degree")
    g.add_argument("--j", type=int, default=1, help="Hecke operator index j")
    g.add_argument("--seed", type=int, default=0, help="seed for all sampling")
    g.add_argument("--workers", type=int, default=1, help="processes for enumeration")
    g.add_argument("--cap", type=int, default=DEFAULT_CAP, help="search-space cap")
    g.add_argument("--q_w", "--q-w", dest="q_w", type=int, help="residue field size at w (hecke-local)")
    g.add_argument("--mu", action="append", help="cocharacter, e.g. 1,0 (repeatable)")
    g.add_argument("--field-degree", type=int, help="degree of the point or base field")
    g.add_argument("--lambda", dest="lam", help="field elements as digit lists separated by ';'")
    g.add_argument("--gamma", help="characteristic map image of t (digits), or a Laurent polynomial in pi")
    g.add_argument("--coeffs", help="module coefficients g_1..g_r separated by ';'")
    g.add_argument("--a", help="element a of F_q[t]")
    g.add_argument("--m", type=int, help="Frobenius degree m (weil-check)")
    g.add_argument("--minpoly", help="minimal polynomial coefficients over F_q[t], low degree first, ';'-separated")
    g.add_argument("--samples", type=int, default=200, help="random points (moduli strata)")
    g.add_argument("--with-ss", action="store_true", help="also solve for supersingular points")
    g.add_argument("--verify", action="store_true", help="cross-check against enumeration")
    o = c.add_argument_group("output")
    o.add_argument("--format", choices=("json", "csv"), default="json")
    o.add_argument("--out", help="write the result here instead of stdout")
    o.add_argument("-v", "--verbose", action="count", default=0, help="progress on stderr (-vv for debug)")
    return c


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="drinfeld", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common()
    groups = parser.add_subparsers(dest="group", metavar="GROUP", parser_class=_Parser)
    groups.required = True
    subs: dict[str, argparse._SubParsersAction] = {}
    for (grp, act), (fn, help_) in COMMANDS.items():
        if grp not in subs:
            gp = groups.add_parser(grp, help=f"{grp} commands")
            subs[grp] = gp.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
            subs[grp].required = True
        sp = subs[grp].add_parser(act, parents=[common], help=help_)
        sp.set_defaults(func=fn)
    return parser


def schema_name(group: str, action: str) -> str:
    return f"{group}-{action}.schema.json"


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


def render(res: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(res.data, sort_keys=True, indent=2, default=_jsonable) + "\n"
    rows = res.rows
    if not rows:
        rows = [{"key": k, "value": v if isinstance(v, (int, str)) else json.dumps(v, sort_keys=True, default=_jsonable)}
                for k, v in sorted(res.data.items())]
    header: list[str] = []
    for row in rows:
        for k in row:
            if k not in header:
                header.append(k)
    buf = io.StringIO()
    wr = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    wr.writeheader()
    for row in rows:
        wr.writerow({k: (json.dumps(v, sort_keys=True, default=_jsonable) if isinstance(v, (list, dict)) else v)
                     for k, v in row.items()})
    return buf.getvalue()


def _emit(res: Result, args) -> None:
    text = render(res, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(asctime)s %(name)s: %(message)s")
    try:
        res = args.func(args)
    except CheckFailed as exc:
        _emit(exc.result, args)
        log.error("%s", exc)
        return EXIT_CONSISTENCY
    except ResourceCap as exc:
        print(f"drinfeld: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except SkewCapExceeded as exc:
        print(f"drinfeld: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ConsistencyError, NonCommuting, InterpolationResidual) as exc:
        print(f"drinfeld: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except ZeroDivisionError as exc:
        print(f"drinfeld: error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (UsageError, DrinfeldError, FieldError, SkewError, ValueError, TypeError) as exc:
        print(f"drinfeld: error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ArithmeticError as exc:
        print(f"drinfeld: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    _emit(res, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
