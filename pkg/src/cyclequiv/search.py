"""Equivalence-aware code searches.

``cyclic_sweep`` computes one distance per affine class of cyclic codes;
``asr_search`` draws random multipliers f_2..f_ell coprime to the check
polynomial for every inequivalent generator g and evaluates the resulting
1-generator QC codes; ``derive_neighbors`` applies one shortening,
puncturing or extension step to a record.
"""
from __future__ import annotations

import io
import logging
import sys
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Iterable

import numpy as np

from .algebra import FieldSpec, Poly, parse_poly, poly_gcd
from .codes import (CodeError, CodeRecord, CyclicCodeSpec, GeneratorMatrix, QCCodeSpec,
                    coordinate_orbits, describe_cyclic, describe_qc, extend, puncture, shorten)
from .cosets import coset_to_poly, format_multiset
from .distance import DistanceResult, min_distance, upper_bound_search
from .partition import partition_cyclic

log = logging.getLogger(__name__)

RECORD_VERSION = 1
SEARCH_BUDGET = 10**7


class BKLCTable:
    """Best known minimum distances keyed by (q, n, k)."""

    def __init__(self, entries: dict[tuple[int, int, int], int] | None = None):
        self.entries = dict(entries or {})
        for key, d in self.entries.items():
            if d <= 0:
                raise ValueError(f"non-positive distance for {key}")

    def lookup(self, q: int, n: int, k: int) -> int | None:
        return self.entries.get((q, n, k))

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def parse(cls, text: str) -> BKLCTable:
        entries = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: expected 'q n k d', got {line!r}")
            q, n, k, d = map(int, parts)
            entries[(q, n, k)] = d
        return cls(entries)

    @classmethod
    def load(cls, path: str | Path | None = None) -> BKLCTable:
        if path is None:
            text = resources.files("cyclequiv.data").joinpath("bklc_snapshot.txt").read_text()
        else:
            text = Path(path).read_text()
        return cls.parse(text)

    def flag(self, rec: CodeRecord) -> str:
        """'new' beats the table, 'matches' ties it, '' otherwise or unknown."""
        best = self.lookup(rec.q, rec.n, rec.k)
        if best is None or rec.d is None or rec.cert != "exact":
            return ""
        if rec.d > best:
            return "new"
        return "matches" if rec.d == best else ""


@dataclass
class SearchConfig:
    field: FieldSpec
    n: int | None = None              # cyclic length
    m: int | None = None              # QC block length
    ell: int = 1
    kmin: int = 1
    kmax: int | None = None
    trials: int = 10
    seed: int = 0
    budget: int = SEARCH_BUDGET
    ub_iterations: int = 30
    bklc: BKLCTable = dc_field(default_factory=BKLCTable)
    forced: list[tuple[Poly, tuple[Poly, ...]]] = dc_field(default_factory=list)
    out: Path | None = None
    progress: bool = False

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ell must be >= 1")


def certify(M: GeneratorMatrix, budget: int, seed: int = 0, ub_iterations: int = 30,
            target: int | None = None) -> DistanceResult:
    """Exact distance within budget, otherwise information-set bounds
    sharpened by a random upper-bound search."""
    res = min_distance(M, budget)
    if not res.exact:
        res = upper_bound_search(M, target=target, seed=seed, iterations=ub_iterations, start=res)
    return res


def _record(M: GeneratorMatrix, res: DistanceResult, construction: list[str],
            bklc: BKLCTable, seed: int | None = None, block: int | None = None) -> CodeRecord:
    rec = CodeRecord(q=M.field.q, n=M.n, k=M.k, d=res.ub, cert=res.cert,
                     construction=construction, lb=res.lb, seed=seed,
                     witness=res.witness, matrix=M, block=block)
    rec.flag = bklc.flag(rec)
    return rec


def _progress(cfg: SearchConfig, msg: str) -> None:
    if cfg.progress:
        print(msg, file=sys.stderr, flush=True)


def cyclic_sweep(cfg: SearchConfig) -> list[CodeRecord]:
    """One record per affine class of cyclic codes of length cfg.n with
    kmin <= k <= kmax.

    The full space (empty multiset, a class of its own) comes first; the
    zero code is skipped since it has no minimum distance.
    """
    if cfg.n is None:
        raise ValueError("cyclic_sweep needs a length n")
    kmax = cfg.n if cfg.kmax is None else cfg.kmax
    if cfg.kmin > kmax:
        return []
    part = partition_cyclic(cfg.field, cfg.n)
    out = []
    classes = [part.table.empty()] + part.representatives
    for idx, ms in enumerate(classes):
        k = ms.dimension
        if k < 1 or not cfg.kmin <= k <= kmax:
            continue
        spec = CyclicCodeSpec(cfg.field, cfg.n, coset_to_poly(ms))
        M = spec.matrix()
        res = certify(M, cfg.budget, seed=cfg.seed + idx, ub_iterations=cfg.ub_iterations)
        rec = _record(M, res, [describe_cyclic(spec)], cfg.bklc, cfg.seed, block=cfg.n)
        rec.note = format_multiset(ms)
        out.append(rec)
        _progress(cfg, f"class {idx}: {rec.params}")
    return out


def random_multiplier(F: FieldSpec, m: int, h: Poly, rng: np.random.Generator,
                      max_tries: int = 10_000) -> Poly:
    """Uniform polynomial of degree < m coprime to h (rejection sampling)."""
    for _ in range(max_tries):
        f = Poly(F, rng.integers(0, F.q, size=m))
        if not f.is_zero() and poly_gcd(f, h).degree == 0:
            return f
    raise CodeError(f"no multiplier coprime to h found in {max_tries} draws")


def _evaluate_qc(cfg: SearchConfig, spec: QCCodeSpec, seed: int | None) -> CodeRecord:
    M = spec.matrix()
    res = certify(M, cfg.budget, seed=0 if seed is None else seed, ub_iterations=cfg.ub_iterations)
    return _record(M, res, [describe_qc(spec)], cfg.bklc, seed, block=spec.m)


def asr_search(cfg: SearchConfig) -> list[CodeRecord]:
    """Random 1-generator QC codes of index ell over inequivalent generators.

    Class index 0 is g = 1; class r >= 1 is the r-th partition representative.
    The multipliers for (class r, trial t) come from the stream seeded by
    (seed, r, t), so any subset of trials can be rerun in isolation.
    Forced (g, fs) tuples are evaluated first through the same pipeline.
    """
    if cfg.m is None:
        raise ValueError("asr_search needs a block length m")
    if cfg.ell < 2:
        raise ValueError("asr_search needs ell >= 2")
    F, m = cfg.field, cfg.m
    kmax = m if cfg.kmax is None else cfg.kmax
    out = []
    for g, fs in cfg.forced:
        spec = QCCodeSpec(F, m, g, tuple(fs))
        rec = _evaluate_qc(cfg, spec, None)
        rec.note = "forced"
        out.append(rec)
        _progress(cfg, f"forced: {rec.params}")
    if cfg.trials > 0 and cfg.kmin <= kmax:
        part = partition_cyclic(F, m)
        for ri, ms in enumerate([part.table.empty()] + part.representatives):
            k = ms.dimension
            if k < 1 or not cfg.kmin <= k <= kmax:
                continue
            g = coset_to_poly(ms)
            h = CyclicCodeSpec(F, m, g).h
            for t in range(cfg.trials):
                rng = np.random.default_rng([cfg.seed, ri, t])
                fs = tuple(random_multiplier(F, m, h, rng) for _ in range(cfg.ell - 1))
                rec = _evaluate_qc(cfg, QCCodeSpec(F, m, g, fs), cfg.seed)
                rec.note = f"class={ri} trial={t}"
                out.append(rec)
                _progress(cfg, f"class {ri} trial {t}: {rec.params}")
    out.sort(key=lambda r: (r.k, -(r.d or 0)))
    return out


def derive_neighbors(rec: CodeRecord, bklc: BKLCTable | None = None,
                     budget: int = SEARCH_BUDGET, positions: str = "orbits",
                     ub_iterations: int = 30) -> list[CodeRecord]:
    """All single-step shortenings, puncturings and the extension of rec.

    With ``positions="orbits"`` only one coordinate per orbit of the known
    block-shift symmetry is used (one per block for QC codes, one in total
    for cyclic codes); ``"all"`` uses every coordinate.
    """
    bklc = bklc or BKLCTable()
    M = rec.matrix
    if M is None or rec.k < 1:
        return []
    block = rec.block if positions == "orbits" else None
    out = []
    for pos in coordinate_orbits(M.n, block):
        for name, op in (("shorten", shorten), ("puncture", puncture)):
            if name == "shorten" and M.k < 2:
                continue
            try:
                child = op(M, pos)
            except CodeError as exc:
                log.info("%s(%d) skipped: %s", name, pos, exc)
                continue
            res = certify(child, budget, ub_iterations=ub_iterations)
            out.append(_record(child, res, rec.construction + [f"{name}({pos})"], bklc))
    child = extend(M)
    res = certify(child, budget, ub_iterations=ub_iterations)
    out.append(_record(child, res, rec.construction + ["extend"], bklc))
    return out


# ---------------------------------------------------------------------------
# record file: "q n k d cert seed | construction-chain"


def dumps_records(records: Iterable[CodeRecord], header: str = "") -> str:
    buf = io.StringIO()
    buf.write(f"# cyclequiv-records {RECORD_VERSION}\n")
    if header:
        buf.write(f"# {header}\n")
    buf.write("# q n k d lb cert seed flag | construction\n")
    for r in records:
        seed = "-" if r.seed is None else str(r.seed)
        flag = r.flag or "-"
        buf.write(f"{r.q} {r.n} {r.k} {r.d} {r.lb} {r.cert} {seed} {flag} | {r.chain()}\n")
    return buf.getvalue()


def loads_records(text: str) -> list[CodeRecord]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# cyclequiv-records"):
        raise ValueError("not a cyclequiv record file")
    out = []
    for line in lines[1:]:
        if not line.strip() or line.startswith("#"):
            continue
        head, chain = line.split("|", 1)
        q, n, k, d, lb, cert, seed, flag = head.split()
        out.append(CodeRecord(int(q), int(n), int(k), int(d), cert,
                              [s.strip() for s in chain.split(" | ")], lb=int(lb),
                              seed=None if seed == "-" else int(seed),
                              flag="" if flag == "-" else flag))
    return out


def forced_from_text(text: str, field: FieldSpec) -> list[tuple[Poly, tuple[Poly, ...]]]:
    """Lines of whitespace-separated polynomials: ``g f2 f3 ...``."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        polys = [parse_poly(tok, field) for tok in line.split()]
        out.append((polys[0], tuple(polys[1:])))
    return out
