# %% [markdown]
# # Command line round trip
# Write a canonical state to disk, then classify it and compute its invariants.

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path


def run(*args):
    out = subprocess.run([sys.executable, "-m", "fockspin.cli", *args], capture_output=True, text=True)
    return out.returncode, out.stdout


tmp = Path(tempfile.mkdtemp())
code, text = run("canonical", "--d", "6", "--sector", "even", "--label", "rank3")
(tmp / "w.json").write_text(text)
print(code, json.loads(run("classify", "--state", str(tmp / "w.json"))[1])["orbit_label"])
print(json.loads(run("invariants", "--state", str(tmp / "w.json"), "--k-max", "2")[1])["qk"])

# %%
print(run("selftest")[0])
