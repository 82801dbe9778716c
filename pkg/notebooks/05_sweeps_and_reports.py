# %% [markdown]
# # Sweeps, cache and reports
#
# The same machinery the command line uses. Run
# `blockdist sweep --family barbell --t 3..10 --ell 2..5 --jobs 4` for the shell
# equivalent.

# %%
import tempfile
from pathlib import Path

from blockdist import SweepSpec, emit_report, run_sweep

# %%
cache = Path(tempfile.mkdtemp()) / "cache.jsonl"
spec = SweepSpec(family="windmill", ranges={"k": [2, 3, 4], "t": [3, 4]}, cache=str(cache))
stats = {}
records = run_sweep(spec, stats)
print(stats, all(r.ok for r in records))

# %%
stats = {}
run_sweep(spec, stats)
print("second run:", stats)

# %%
print(emit_report(records, "csv"))

# %%
enum = run_sweep(SweepSpec(enumerate="block", n=6, checks=("conjecture", "hierarchy")))
print(len(enum), "block graphs on 6 vertices, all ok:", all(r.ok for r in enum))
