"""Partition all cyclic codes of one length into affine-equivalence classes.

Every divisor of x^n - 1 is a coset multiset; multisets are numbered in
mixed radix (base p^i + 1, least significant digit = first coset) and
visited in index order. A multiset joins the first earlier representative it
is affine-equivalent to, otherwise it becomes a new representative.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Iterator

from .algebra import FieldSpec, format_poly, gf
from .cosets import CosetMultiset, CosetTable, coset_table, coset_to_poly, format_multiset, parse_multiset
from .equivalence import Mode, affine_equivalent, affine_orbit

FORMAT_VERSION = 1
DEFAULT_BUDGET = 2_000_000


class BudgetError(RuntimeError):
    pass


@dataclass
class PartitionRecord:
    field: FieldSpec
    n: int
    mode: str
    representatives: list[CosetMultiset]
    class_sizes: list[int]
    total_enumerated: int
    comparisons: int = 0
    # index -> class number, filled when the partition is computed here
    assignment: list[int] = dc_field(default_factory=list, repr=False)

    @property
    def table(self) -> CosetTable:
        return coset_table(self.field, self.n)

    def __len__(self) -> int:
        return len(self.representatives)


def total_multisets(table: CosetTable) -> int:
    return (table.max_multiplicity + 1) ** len(table) - 1


def index_to_multiset(idx: int, table: CosetTable) -> CosetMultiset:
    """The idx-th nonempty multiset in mixed-radix order."""
    total = total_multisets(table)
    if not 1 <= idx <= total:
        raise IndexError(f"index {idx} outside 1..{total}")
    base = table.max_multiplicity + 1
    mult = []
    for _ in range(len(table)):
        idx, d = divmod(idx, base)
        mult.append(d)
    return CosetMultiset(table, tuple(mult))


def multiset_to_index(ms: CosetMultiset) -> int:
    base = ms.table.max_multiplicity + 1
    return sum(d * base**j for j, d in enumerate(ms.mult))


def iter_multisets(table: CosetTable) -> Iterator[CosetMultiset]:
    for idx in range(1, total_multisets(table) + 1):
        yield index_to_multiset(idx, table)


def partition_cyclic(field: int | FieldSpec, n: int, mode: Mode = "strict",
                     budget: int = DEFAULT_BUDGET, method: str = "orbit") -> PartitionRecord:
    """Representatives of the affine classes of all cyclic codes of length n.

    ``method="pairwise"`` runs the literal compare-against-every-representative
    loop; ``method="orbit"`` (default) registers each new representative's
    whole affine orbit so later multisets are classified by lookup. Both give
    the same record because admitted maps form a group.
    """
    F = gf(field)
    table = coset_table(F, n)
    total = total_multisets(table)
    if total > budget:
        raise BudgetError(f"{total} multisets to enumerate exceeds the budget {budget}")
    reps: list[CosetMultiset] = []
    sizes: list[int] = []
    assignment = [-1] * (total + 1)
    comparisons = 0
    if method == "orbit":
        seen: dict[tuple[int, ...], int] = {}
        for idx in range(1, total + 1):
            ms = index_to_multiset(idx, table)
            cls = seen.get(ms.mult)
            comparisons += 1
            if cls is None:
                cls = len(reps)
                reps.append(ms)
                sizes.append(0)
                for key in affine_orbit(ms, mode):
                    seen.setdefault(key, cls)
            sizes[cls] += 1
            assignment[idx] = cls
    elif method == "pairwise":
        for idx in range(1, total + 1):
            ms = index_to_multiset(idx, table)
            cls = -1
            for j, r in enumerate(reps):
                comparisons += 1
                if affine_equivalent(ms, r, mode) is not None:
                    cls = j
                    break
            if cls < 0:
                cls = len(reps)
                reps.append(ms)
                sizes.append(0)
            sizes[cls] += 1
            assignment[idx] = cls
    else:
        raise ValueError(f"unknown method {method!r}")
    return PartitionRecord(F, n, mode, reps, sizes, total, comparisons, assignment)


# ---------------------------------------------------------------------------
# text format

def dumps(rec: PartitionRecord) -> str:
    buf = io.StringIO()
    buf.write(f"# cyclequiv-partition {FORMAT_VERSION}\n")
    buf.write(f"# q={rec.field.q} n={rec.n} mode={rec.mode} "
              f"classes={len(rec.representatives)} total={rec.total_enumerated}\n")
    if rec.field.q > 2:
        buf.write("# note: the affine partition may split some monomially equivalent codes "
                  "into separate classes (known for lengths divisible by 8 over GF(3), GF(5))\n")
    buf.write("# multiset\tclass_size\tdimension\tgenerator\n")
    for ms, size in zip(rec.representatives, rec.class_sizes):
        buf.write(f"{format_multiset(ms)}\t{size}\t{ms.dimension}\t{format_poly(coset_to_poly(ms))}\n")
    return buf.getvalue()


def write(rec: PartitionRecord, path: str | Path) -> None:
    Path(path).write_text(dumps(rec))


def loads(text: str) -> PartitionRecord:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# cyclequiv-partition"):
        raise ValueError("not a cyclequiv partition record")
    version = int(lines[0].split()[-1])
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported partition record version {version}")
    header = dict(tok.split("=", 1) for tok in lines[1][1:].split())
    F = gf(int(header["q"]))
    n = int(header["n"])
    table = coset_table(F, n)
    reps, sizes = [], []
    for line in lines[2:]:
        if not line.strip() or line.startswith("#"):
            continue
        ms_text, size, *_ = line.split("\t")
        reps.append(parse_multiset(ms_text, table))
        sizes.append(int(size))
    return PartitionRecord(F, n, header["mode"], reps, sizes, int(header["total"]))


def read(path: str | Path) -> PartitionRecord:
    return loads(Path(path).read_text())
