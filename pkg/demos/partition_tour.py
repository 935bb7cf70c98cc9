"""Partition every cyclic code of a few lengths into affine classes."""
import time

from cyclequiv import format_multiset, partition_cyclic

for q, n in [(2, 7), (2, 15), (3, 8), (3, 26), (5, 24)]:
    t0 = time.perf_counter()
    rec = partition_cyclic(q, n)
    dt = time.perf_counter() - t0
    print(f"q={q} n={n}: {rec.total_enumerated} codes -> {len(rec)} classes ({dt:.2f}s)")
    if len(rec) <= 6:
        for rep, size in zip(rec.representatives, rec.class_sizes):
            print(f"    {format_multiset(rep):<28} x{size}")
