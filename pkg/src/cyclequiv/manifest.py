"""Code-parameter manifests: parse, build and verify.

One entry per line::

    label  q  n  k  d  level  construction

``level`` is ``exact`` (the distance must be certified equal to d) or
``upper`` (dimension must match and a codeword of weight exactly d must be
found; d is then only an upper bound). The construction is a chain of steps
separated by ``|``::

    cyclic(g=[...])            generator polynomial, length n of the entry
    cyclic(h=[...])            check polynomial instead
    qc(m=24, g=[...], f2=[...], f3=[...])
    @other-label               start from an earlier entry's code
    shorten(i) puncture(i) extend

Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import re
import time
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path

from .algebra import FieldError, gf, parse_poly
from .codes import (CodeError, CyclicCodeSpec, GeneratorMatrix, QCCodeSpec, extend,
                    puncture, shorten)
from .distance import DEFAULT_BUDGET, check_witness, min_distance, upper_bound_search

LEVELS = ("exact", "upper")


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    op: str
    args: tuple[tuple[str, str], ...] = ()

    def arg(self, key: str) -> str | None:
        return dict(self.args).get(key)


@dataclass(frozen=True)
class Entry:
    label: str
    q: int
    n: int
    k: int
    d: int
    level: str
    steps: tuple[Step, ...]
    text: str
    line: int = 0


_STEP = re.compile(r"\s*(@[\w.+-]+|[a-z]+)\s*")


def _split_args(body: str, offset: int, where: str) -> list[tuple[str, str]]:
    """Split ``k=v, k=v`` at commas outside brackets."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body + ","):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((start, body[start:i]))
            start = i + 1
    out = []
    for pos, part in parts:
        if not part.strip():
            continue
        if "=" not in part:
            out.append(("", part.strip()))
            continue
        key, val = part.split("=", 1)
        if not key.strip().isidentifier():
            raise ManifestError(f"{where}: bad argument name {key.strip()!r} at column {offset + pos + 1}")
        out.append((key.strip(), val.strip()))
    return out


def parse_chain(text: str, where: str = "construction") -> tuple[Step, ...]:
    steps = []
    pos = 0
    while pos < len(text):
        m = _STEP.match(text, pos)
        if not m:
            raise ManifestError(f"{where}: unexpected {text[pos:pos + 10]!r} at column {pos + 1}")
        name = m.group(1)
        pos = m.end()
        args: list[tuple[str, str]] = []
        if pos < len(text) and text[pos] == "(":
            depth, end = 0, pos
            for end in range(pos, len(text)):
                depth += {"(": 1, ")": -1}.get(text[end], 0)
                if depth == 0:
                    break
            if depth:
                raise ManifestError(f"{where}: unclosed '(' at column {pos + 1}")
            args = _split_args(text[pos + 1:end], pos + 1, where)
            pos = end + 1
        if name.startswith("@"):
            steps.append(Step("ref", (("label", name[1:]),)))
        elif name in ("cyclic", "qc", "shorten", "puncture", "extend"):
            steps.append(Step(name, tuple(args)))
        else:
            raise ManifestError(f"{where}: unknown step {name!r} at column {m.start(1) + 1}")
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos < len(text):
            if text[pos] != "|":
                raise ManifestError(f"{where}: expected '|' at column {pos + 1}, got {text[pos]!r}")
            pos += 1
    if not steps:
        raise ManifestError(f"{where}: empty construction")
    if steps[0].op not in ("cyclic", "qc", "ref"):
        raise ManifestError(f"{where}: construction must start with cyclic(...), qc(...) or @label")
    if any(s.op in ("cyclic", "qc", "ref") for s in steps[1:]):
        raise ManifestError(f"{where}: only the first step may create a code")
    return tuple(steps)


def parse_manifest(text: str) -> list[Entry]:
    entries: list[Entry] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 6)
        where = f"line {lineno}"
        if len(parts) < 7:
            raise ManifestError(f"{where}: expected 'label q n k d level construction'")
        label, *nums, level, chain = parts
        try:
            q, n, k, d = map(int, nums)
        except ValueError:
            raise ManifestError(f"{where}: q n k d must be integers, got {' '.join(nums)!r}") from None
        if level not in LEVELS:
            raise ManifestError(f"{where}: level must be one of {LEVELS}, got {level!r}")
        if label in seen:
            raise ManifestError(f"{where}: duplicate label {label!r}")
        steps = parse_chain(chain, where)
        if steps[0].op == "ref" and steps[0].arg("label") not in seen:
            raise ManifestError(f"{where}: reference to unknown or later label {steps[0].arg('label')!r}")
        seen.add(label)
        entries.append(Entry(label, q, n, k, d, level, steps, chain, lineno))
    return entries


def load_manifest(path: str | Path) -> list[Entry]:
    return parse_manifest(Path(path).read_text())


def _int_arg(step: Step, idx: int = 0) -> int:
    vals = [v for key, v in step.args if key == ""]
    if len(vals) != 1:
        raise ManifestError(f"{step.op} expects one integer position")
    return int(vals[idx])


def build(entry: Entry, known: dict[str, GeneratorMatrix]) -> GeneratorMatrix:
    """Generator matrix of an entry (parents looked up in ``known``)."""
    F = gf(entry.q)
    first, rest = entry.steps[0], entry.steps[1:]
    try:
        if first.op == "ref":
            parent = first.arg("label")
            if parent not in known:
                raise ManifestError(f"parent {parent!r} could not be built")
            M = known[parent]
        elif first.op == "cyclic":
            g, h = first.arg("g"), first.arg("h")
            if (g is None) == (h is None):
                raise ManifestError("cyclic(...) needs exactly one of g= or h=")
            n = int(first.arg("n") or entry.n)
            spec = (CyclicCodeSpec(F, n, parse_poly(g, F)) if g is not None
                    else CyclicCodeSpec.from_check(F, n, parse_poly(h, F)))
            M = spec.matrix()
        else:
            m = int(first.arg("m"))
            fs = []
            j = 2
            while first.arg(f"f{j}") is not None:
                fs.append(parse_poly(first.arg(f"f{j}"), F))
                j += 1
            M = QCCodeSpec(F, m, parse_poly(first.arg("g"), F), tuple(fs)).matrix()
        for s in rest:
            if s.op == "extend":
                M = extend(M)
            else:
                M = {"shorten": shorten, "puncture": puncture}[s.op](M, _int_arg(s))
    except (FieldError, TypeError) as exc:
        raise ManifestError(str(exc)) from None
    return M


@dataclass
class EntryResult:
    label: str
    claimed: str
    level: str
    ok: bool
    n: int | None = None
    k: int | None = None
    lb: int | None = None
    ub: int | None = None
    cert: str = ""
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        got = "-" if self.k is None else f"[{self.n},{self.k},{self.ub}]"
        bounds = "" if self.lb is None else f" lb={self.lb} ub={self.ub} cert={self.cert}"
        status = "PASS" if self.ok else "FAIL"
        return (f"{status} {self.label} claimed {self.claimed} ({self.level}) got {got}{bounds}"
                f" {self.seconds:.1f}s" + (f" :: {self.detail}" if self.detail else ""))

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class VerifyOptions:
    budget: int = DEFAULT_BUDGET
    ub_iterations: int = 400
    seed: int = 0
    only: set[str] = dc_field(default_factory=set)


def verify_entry(entry: Entry, M: GeneratorMatrix, opts: VerifyOptions) -> EntryResult:
    t0 = time.perf_counter()
    claimed = f"[{entry.n},{entry.k},{entry.d}]_{entry.q}"
    res = EntryResult(entry.label, claimed, entry.level, False, n=M.n, k=M.k)

    def done(ok: bool, detail: str = "") -> EntryResult:
        res.ok, res.detail = ok, detail
        res.seconds = time.perf_counter() - t0
        return res

    if M.field.q != entry.q:
        return done(False, f"field size {M.field.q} != {entry.q}")
    if (M.n, M.k) != (entry.n, entry.k):
        return done(False, f"length/dimension [{M.n},{M.k}] != [{entry.n},{entry.k}]")
    if not M.is_full_rank():
        return done(False, f"generator matrix has rank {M.rank} < {M.k}")
    if entry.level == "exact":
        dist = min_distance(M, opts.budget)
    else:
        dist = upper_bound_search(M, target=entry.d, seed=opts.seed, iterations=opts.ub_iterations)
    res.lb, res.ub, res.cert = dist.lb, dist.ub, dist.cert
    if not check_witness(M, dist):
        return done(False, "stored codeword failed the membership/weight check")
    if entry.level == "exact":
        if not dist.exact:
            return done(False, "budget exhausted before the bounds met")
        if dist.ub != entry.d:
            return done(False, f"exact distance {dist.ub} != {entry.d}")
        return done(True)
    if dist.ub < entry.d:
        return done(False, f"codeword of weight {dist.ub} < {entry.d} found")
    if dist.ub > entry.d:
        return done(False, f"no codeword of weight {entry.d} found within the search effort")
    return done(True, "d is an upper bound witnessed by a stored codeword")


def verify_manifest(entries: list[Entry], opts: VerifyOptions | None = None, progress=None):
    """Yield one :class:`EntryResult` per selected entry, in file order."""
    opts = opts or VerifyOptions()
    known: dict[str, GeneratorMatrix] = {}
    needed = _closure(entries, opts.only) if opts.only else None
    for e in entries:
        if needed is not None and e.label not in needed:
            continue
        if progress:
            progress(f"verifying {e.label} ...")
        try:
            M = build(e, known)
        except (ManifestError, CodeError, ValueError) as exc:
            if needed is None or e.label in opts.only:
                yield EntryResult(e.label, f"[{e.n},{e.k},{e.d}]_{e.q}", e.level, False,
                                  detail=f"construction failed: {exc}")
            continue
        known[e.label] = M
        if needed is not None and e.label not in opts.only:
            continue
        yield verify_entry(e, M, opts)


def _closure(entries: list[Entry], labels: set[str]) -> set[str]:
    by_label = {e.label: e for e in entries}
    unknown = labels - by_label.keys()
    if unknown:
        raise ManifestError(f"unknown labels: {', '.join(sorted(unknown))}")
    out, todo = set(), list(labels)
    while todo:
        lab = todo.pop()
        if lab in out:
            continue
        out.add(lab)
        first = by_label[lab].steps[0]
        if first.op == "ref":
            todo.append(first.arg("label"))
    return out


def shipped_manifest() -> str:
    from importlib import resources
    return resources.files("cyclequiv.data").joinpath("paper_codes.manifest").read_text()


__all__ = ["Entry", "EntryResult", "ManifestError", "Step", "VerifyOptions", "build",
           "load_manifest", "parse_chain", "parse_manifest", "shipped_manifest",
           "verify_entry", "verify_manifest"]
