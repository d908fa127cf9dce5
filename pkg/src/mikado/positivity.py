"""Executable positivity statements and the sweep harness.

Each statement id is either of kind ``theorem`` (a violation is a failure) or
``evidence`` (the outcome is recorded, never treated as a failure).
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Sequence

from .biclosed import (
    BiclosedSet,
    Complement,
    DepthExceeded,
    DoubleTwist,
    ExplicitOnBall,
    HalfSpace,
    InversionSet,
    all_reflections,
    double_twist,
    is_biclosed_on_ball,
    twisted_length,
)
from .config import biclosed_from_config, system_label
from .coxeter import ConfigError, CoxeterSystem, Element
from .hecke import C_BASIS, expand_in_basis, hecke_algebra
from .laurent import LaurentPoly, monomial
from .lifts import TwistedT, t_twisted

__all__ = [
    "STATEMENTS",
    "PositivityReport",
    "SweepSpec",
    "SweepResult",
    "check_threeparam",
    "check_inverse_positivity",
    "check_doubletwist",
    "check_conjecture_evidence",
    "parity_validated",
    "validate_parity",
    "certificate",
    "run_statement",
    "sweep",
]


@dataclass(frozen=True)
class Statement:
    id: str
    kind: str  # "theorem" | "evidence"
    summary: str


STATEMENTS = {
    s.id: s
    for s in (
        Statement("threeparam", "theorem",
                  "C'_w has nonnegative coefficients in T_{x,A}, diagonal v^l_A(w), support below w, v=1 values free of A"),
        Statement("inverse-positivity", "theorem",
                  "T_x^-1 T_y and T_x T_y^-1 have nonnegative single-parity coefficients in the C basis"),
        Statement("doubletwist", "theorem",
                  "C'_w T_{y,A} is a nonnegative combination of T_{x,A}, matching the double-twisted expansion"),
        Statement("conjecture", "evidence",
                  "T_{x,A} is a nonnegative combination of C_w for an arbitrary biclosed A"),
    )
}


@dataclass
class PositivityReport:
    statement: str
    system: str
    parameters: dict[str, str]
    table: dict[Element, LaurentPoly] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    certificate: dict[str, Any] = field(default_factory=dict)
    notes: dict[str, Any] = field(default_factory=dict)
    error: str | None = None

    @property
    def kind(self) -> str:
        return STATEMENTS[self.statement].kind

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        return "violated" if self.violations else "holds"

    @property
    def is_failure(self) -> bool:
        """True for theorem violations and for errors; evidence never fails."""
        if self.error is not None:
            return True
        return self.kind == "theorem" and bool(self.violations)

    def sort_key(self):
        return (self.statement, self.system, tuple(sorted(self.parameters.items())))

    def table_rows(self) -> list[tuple[str, str]]:
        return [(str(x), str(p)) for x, p in sorted(self.table.items(), key=lambda kv: kv[0].sort_key())]

    def to_dict(self) -> dict:
        return {
            "statement": self.statement,
            "kind": self.kind,
            "system": self.system,
            "parameters": dict(sorted(self.parameters.items())),
            "verdict": self.verdict,
            "violations": list(self.violations),
            "coefficients": [list(r) for r in self.table_rows()],
            "certificate": self.certificate,
            "notes": self.notes,
            "error": self.error,
        }

    def summary_row(self) -> list[str]:
        params = ";".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        return [self.statement, self.kind, self.system, params, self.verdict, str(len(self.violations))]

    def to_text(self) -> str:
        lines = [f"statement: {self.statement} ({self.kind})", f"system:    {self.system}"]
        for k, v in sorted(self.parameters.items()):
            lines.append(f"{k + ':':<10} {v}")
        lines.append(f"verdict:   {self.verdict}")
        if self.error:
            lines.append(f"error:     {self.error}")
        rows = self.table_rows()
        if rows:
            width = max(len(r[0]) for r in rows)
            lines.append("coefficients:")
            lines.extend(f"  {x:<{width}}  {p}" for x, p in rows)
        for viol in self.violations:
            lines.append(f"  ! {viol}")
        return "\n".join(lines)


CSV_HEADER = ["statement", "kind", "system", "parameters", "verdict", "violations"]


# -- certificates ---------------------------------------------------------------


HALFSPACE_CHECK_RADIUS = 7


@lru_cache(maxsize=None)
def _ball_check(A: BiclosedSet, radius: int) -> tuple[int, bool]:
    rep = is_biclosed_on_ball(A, radius)
    return rep.roots_checked, rep.certified


def certificate(A: BiclosedSet) -> dict[str, Any]:
    """How biclosedness of ``A`` is known; ``valid`` is False only for a failed ball check."""
    if isinstance(A, InversionSet):
        return {"kind": "inversion-set", "valid": True, "depth": None}
    if isinstance(A, Complement):
        inner = certificate(A.inner)
        return {"kind": "complement", "valid": inner["valid"], "depth": inner["depth"], "inner": inner}
    if isinstance(A, HalfSpace):
        # biclosed by convexity; the finite check guards against bad input all the same
        n, ok = _ball_check(A, HALFSPACE_CHECK_RADIUS)
        return {"kind": "half-space", "valid": ok, "depth": None, "checked_radius": HALFSPACE_CHECK_RADIUS,
                "checked_roots": n}
    if isinstance(A, DoubleTwist):
        inner = certificate(A.inner)
        return {"kind": "double-twist", "valid": inner["valid"], "depth": A.certified_depth(), "inner": inner}
    if isinstance(A, ExplicitOnBall):
        n, ok = _ball_check(A, A.depth)
        return {"kind": "explicit", "valid": ok, "depth": A.depth, "checked_radius": A.depth, "checked_roots": n}
    return {"kind": type(A).__name__, "valid": False, "depth": A.certified_depth()}


def _cert_violation(A: BiclosedSet) -> tuple[dict, list[str]]:
    cert = certificate(A)
    if not cert["valid"]:
        return cert, [f"biclosedness certificate failed for {A.describe()}"]
    return cert, []


def _words(**kw) -> dict[str, str]:
    out = {}
    for k, v in kw.items():
        out[k] = v.describe() if isinstance(v, BiclosedSet) else str(v)
    return out


# -- statements -------------------------------------------------------------------


def _nonneg(table, label="coefficient") -> list[str]:
    return [f"{label} of {x} is {p}, not nonnegative" for x, p in sorted(table.items(), key=lambda kv: kv[0].sort_key())
            if not p.is_nonnegative()]


def check_threeparam(w: Element, A: BiclosedSet) -> PositivityReport:
    system = w.system
    rep = PositivityReport("threeparam", system_label(system), _words(w=w, A=A))
    rep.certificate, rep.violations = _cert_violation(A)
    alg = hecke_algebra(system)
    cw = alg.cprime(w)
    table = expand_in_basis(cw, TwistedT(A))
    rep.table = table
    rep.violations += _nonneg(table)
    lw = twisted_length(A, w)
    diag = table.get(w)
    if diag != monomial(lw):
        rep.violations.append(f"diagonal coefficient is {diag}, expected v^{lw}")
    for x in table:
        if not system.bruhat_leq(x, w):
            rep.violations.append(f"{x} in support but not below {w} in Bruhat order")
    at_one = {x: p.eval_at_one() for x, p in table.items() if p.eval_at_one()}
    plain = {x: p.eval_at_one() for x, p in cw.terms.items() if p.eval_at_one()}
    if at_one != plain:
        rep.violations.append("values at v=1 differ from the standard-basis values")
    if A == all_reflections(system):
        # costandard case: v^l(x) h_{x,w} is 1 on the diagonal and in v^-1 Z[v^-1] below
        for x, p in table.items():
            q = p.shift(x.length)
            if x != w and q and q.max_exponent() >= 0:
                rep.violations.append(f"costandard coefficient of {x} is {p}; v^{x.length} times it is not in v^-1 Z[v^-1]")
        rep.notes["costandard_normalization"] = "v^l(x) h_{x,w} in v^-1 Z[v^-1] for x < w"
    rep.notes["twisted_length"] = lw
    return rep


def _parity_violations(table) -> list[str]:
    out = []
    for z, p in sorted(table.items(), key=lambda kv: kv[0].sort_key()):
        want = "odd" if z.length % 2 else "even"
        par = p.exponent_parities()
        if par != frozenset([want]):
            out.append(f"coefficient of C_{z} is {p}; expected only {want} exponents")
    return out


def _inverse_product(x: Element, y: Element, side: str):
    alg = hecke_algebra(x.system)
    if side == "left":
        return alg.mul(alg.t_inverse(x), alg.t(y))
    if side == "right":
        return alg.mul(alg.t(x), alg.t_inverse(y))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def validate_parity(pairs: Iterable[tuple[Element, Element]]) -> tuple[int, list[str]]:
    """Brute-force the single-parity property on the given pairs, both sides."""
    checked = 0
    failures = []
    for x, y in pairs:
        for side in ("left", "right"):
            table = expand_in_basis(_inverse_product(x, y, side), C_BASIS)
            checked += 1
            bad = _parity_violations(table)
            if bad:
                failures.append(f"{side} x={x} y={y}: {bad[0]}")
    return checked, failures


@lru_cache(maxsize=1)
def parity_validated() -> bool:
    """Rank-2 validation pass: all pairs of B2 and of the infinite dihedral ball of radius 8."""
    from .coxeter import preset

    pairs = []
    for name, radius in (("B2", 4), ("I2inf", 8)):
        ball = preset(name).ball(radius)
        pairs += [(x, y) for x in ball for y in ball]
    _, failures = validate_parity(pairs)
    return not failures


def check_inverse_positivity(x: Element, y: Element, side: str = "left",
                             enforce_parity: bool | None = None) -> PositivityReport:
    """``side="left"``: ``T_x^-1 T_y``; ``side="right"``: ``T_x T_y^-1``; expanded in the C basis."""
    rep = PositivityReport("inverse-positivity", system_label(x.system), _words(x=x, y=y, side=side))
    table = expand_in_basis(_inverse_product(x, y, side), C_BASIS)
    rep.table = table
    rep.violations += _nonneg(table)
    if enforce_parity is None:
        enforce_parity = parity_validated()
    parity = _parity_violations(table)
    rep.notes["parity_enforced"] = bool(enforce_parity)
    rep.notes["parity_ok"] = not parity
    if enforce_parity:
        rep.violations += parity
    rep.certificate = {"kind": "none-needed", "valid": True, "depth": None}
    return rep


def check_doubletwist(w: Element, y: Element, A: BiclosedSet) -> PositivityReport:
    system = w.system
    rep = PositivityReport("doubletwist", system_label(system), _words(w=w, y=y, A=A))
    B = double_twist(A, y)
    cert_a, viol_a = _cert_violation(A)
    cert_b, viol_b = _cert_violation(B)
    rep.certificate = {"A": cert_a, "double_twist": cert_b, "valid": cert_a["valid"] and cert_b["valid"]}
    rep.violations += viol_a + viol_b
    alg = hecke_algebra(system)
    direct = expand_in_basis(alg.mul(alg.cprime(w), t_twisted(y, A)), TwistedT(A))
    rep.table = direct
    rep.violations += _nonneg(direct)
    twisted = expand_in_basis(alg.cprime(w), TwistedT(B))
    routed = {z * y: p for z, p in twisted.items()}
    if routed != direct:
        diff = sorted(set(routed) ^ set(direct) | {x for x in routed if x in direct and routed[x] != direct[x]},
                      key=Element.sort_key)
        rep.violations.append("double-twist route disagrees at " + ", ".join(str(x) for x in diff[:5]))
    rep.notes["double_twist"] = B.describe()
    return rep


def check_conjecture_evidence(x: Element, A: BiclosedSet) -> PositivityReport:
    rep = PositivityReport("conjecture", system_label(x.system), _words(x=x, A=A))
    rep.certificate, rep.violations = _cert_violation(A)
    table = expand_in_basis(t_twisted(x, A), C_BASIS)
    rep.table = table
    neg = _nonneg(table)
    rep.violations += neg
    if neg:
        rep.notes["counterexample_candidate"] = True
    rep.notes["single_parity"] = not _parity_violations(table)
    return rep


# -- sweeps ---------------------------------------------------------------------


FAMILIES = ("inversion", "complement", "configured")


@dataclass
class SweepSpec:
    system: CoxeterSystem
    radius: int
    statements: Sequence[str] = tuple(STATEMENTS)
    families: Sequence[str] = ("inversion",)
    configured: Sequence[BiclosedSet] = ()
    twist_radius: int | None = None  # ball for y in doubletwist (defaults to radius)
    limit: int | None = None  # keep the first N tasks per statement

    def validate(self):
        errors = []
        for s in self.statements:
            if s not in STATEMENTS:
                errors.append(f"unknown statement id {s!r}; known: {', '.join(STATEMENTS)}")
        for f in self.families:
            if f not in FAMILIES:
                errors.append(f"unknown biclosed family {f!r}; known: {', '.join(FAMILIES)}")
        if self.radius < 0:
            errors.append("radius must be nonnegative")
        if errors:
            raise ConfigError(errors)

    def biclosed_sets(self) -> list[BiclosedSet]:
        ball = self.system.ball(self.radius)
        out: list[BiclosedSet] = []
        if "inversion" in self.families:
            out += [InversionSet(y) for y in ball]
        if "complement" in self.families:
            out += [Complement(InversionSet(y)) for y in ball]
        if "configured" in self.families or self.configured:
            out += list(self.configured)
        seen = set()
        uniq = []
        for A in out:
            if A not in seen:
                seen.add(A)
                uniq.append(A)
        return uniq

    def tasks(self) -> list[tuple]:
        """Deterministic task list; parameters are transported as words and configs."""
        ball = self.system.ball(self.radius)
        ys = self.system.ball(self.twist_radius if self.twist_radius is not None else self.radius)
        sets = [A.to_config() for A in self.biclosed_sets()]
        out = []
        for st in self.statements:
            if st == "threeparam":
                batch = [(st, {"w": str(w), "A": a}) for a in sets for w in ball]
            elif st == "inverse-positivity":
                batch = [(st, {"x": str(x), "y": str(y), "side": side})
                         for x in ball for y in ball for side in ("left", "right")]
            elif st == "doubletwist":
                batch = [(st, {"w": str(w), "y": str(y), "A": a}) for a in sets for w in ball for y in ys]
            else:
                batch = [(st, {"x": str(x), "A": a}) for a in sets for x in ball]
            if self.limit is not None:
                batch = batch[:self.limit]
            out += batch
        return out


def run_statement(system: CoxeterSystem, statement: str, params: dict) -> PositivityReport:
    """Run one statement from transportable parameters; errors become error reports."""
    if statement not in STATEMENTS:
        raise ConfigError(f"unknown statement id {statement!r}; known: {', '.join(STATEMENTS)}")
    shown = {k: (json.dumps(v, sort_keys=True) if isinstance(v, dict) else str(v)) for k, v in params.items()}
    try:
        el = {k: system.element(params[k]) for k in ("w", "x", "y") if k in params}
        A = biclosed_from_config(system, params["A"]) if "A" in params else None
        if statement == "threeparam":
            return check_threeparam(el["w"], A)
        if statement == "inverse-positivity":
            return check_inverse_positivity(el["x"], el["y"], params.get("side", "left"))
        if statement == "doubletwist":
            return check_doubletwist(el["w"], el["y"], A)
        return check_conjecture_evidence(el["x"], A)
    except (DepthExceeded, ConfigError, ValueError, KeyError, ArithmeticError) as exc:
        msg = "; ".join(exc.errors) if isinstance(exc, ConfigError) else str(exc)
        if isinstance(exc, KeyError):
            msg = f"missing parameter {exc.args[0]!r}"
        kind = "depth exceeded" if isinstance(exc, DepthExceeded) else type(exc).__name__
        return PositivityReport(statement, system_label(system), shown, error=f"{kind}: {msg}")


_worker_systems: dict = {}


def _run_chunk(system: CoxeterSystem, chunk: list[tuple]) -> list[PositivityReport]:
    system = _worker_systems.setdefault(system, system)
    return [run_statement(system, st, params) for st, params in chunk]


@dataclass
class SweepResult:
    reports: list[PositivityReport]

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.reports:
            row = out.setdefault(r.statement, {"holds": 0, "violated": 0, "error": 0})
            row[r.verdict] += 1
        return dict(sorted(out.items()))

    @property
    def failures(self) -> list[PositivityReport]:
        return [r for r in self.reports if r.is_failure]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "reports": len(self.reports),
            "counts": self.counts(),
            "kinds": {s: STATEMENTS[s].kind for s in self.counts()},
            "theorem_failures": len(self.failures),
            "evidence_violations": sum(1 for r in self.reports if r.kind == "evidence" and r.violations),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(CSV_HEADER)
        for r in self.reports:
            wr.writerow(r.summary_row())
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for st, row in self.counts().items():
            lines.append(f"{st:<20} {STATEMENTS[st].kind:<9} holds={row['holds']} "
                         f"violated={row['violated']} error={row['error']}")
        for r in self.failures[:20]:
            lines.append("FAIL " + " | ".join(r.summary_row()) + (f" | {r.error}" if r.error else ""))
        ev = [r for r in self.reports if r.kind == "evidence" and r.violations]
        for r in ev[:20]:
            lines.append("EVIDENCE COUNTEREXAMPLE CANDIDATE " + " | ".join(r.summary_row()))
        return "\n".join(lines)


def sweep(spec: SweepSpec, jobs: int = 1, chunk_size: int = 64) -> SweepResult:
    spec.validate()
    tasks = spec.tasks()
    if jobs <= 1 or len(tasks) <= chunk_size:
        reports = _run_chunk(spec.system, tasks)
    else:
        chunks = [tasks[i:i + chunk_size] for i in range(0, len(tasks), chunk_size)]
        reports = []
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for part in ex.map(_run_chunk, [spec.system] * len(chunks), chunks):
                reports.extend(part)
    reports.sort(key=PositivityReport.sort_key)
    return SweepResult(reports)
