"""Rebuild a ternary quasi-cyclic code, certify it, and derive its neighbours.

The three polynomials are forced as the first trial; a couple of random
trials follow to show the record format.
"""
from cyclequiv import gf
from cyclequiv.search import (BKLCTable, SearchConfig, asr_search, derive_neighbors, dumps_records,
                              forced_from_text)

F3 = gf(3)
forced = forced_from_text("[21] [2200021200110200111] [0012002212221102101]", F3)
cfg = SearchConfig(F3, m=20, ell=3, trials=2, seed=1, forced=forced, bklc=BKLCTable.load())
records = asr_search(cfg)
print(dumps_records(records, "forced trial plus two random ones"))

best = next(r for r in records if r.note == "forced")
print(f"forced code: {best.params} certified {best.cert}")
for kid in derive_neighbors(best, BKLCTable.load()):
    print(f"  {kid.params:<16} {kid.chain()}")
