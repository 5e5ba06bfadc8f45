"""End-to-end CLI checks: exit codes, determinism, JSON shape."""

import json
import os
import subprocess
import sys

CLI = os.environ["CUSPED_CLI"]
FIX = os.environ["FIXTURE_DIR"]
FIG8 = os.path.join(FIX, "fig8.tri")
SIB = os.path.join(FIX, "fig8_sibling.tri")

failures = 0


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def check(name, cond, detail=""):
    global failures
    print(("ok  " if cond else "FAIL") + " " + name + (" " + detail if detail and not cond else ""))
    if not cond:
        failures += 1


r = run("validate", FIG8)
check("validate exit 0", r.returncode == 0, r.stderr)
check("validate mentions cusps", "cusps: 1" in r.stdout)

r = run("--json", "validate", FIG8)
j = json.loads(r.stdout)
check("validate json", j["tetrahedra"] == 2 and j["orientable"] and j["cusps"] == 1)

a = run("canon", FIG8)
b = run("canon", FIG8)
check("canon deterministic", a.returncode == 0 and a.stdout == b.stdout and a.stdout.strip())
check("canon differs between manifolds", run("canon", SIB).stdout != a.stdout)

r = run("systole", "--file", FIG8, "--theta0", "auto")
check("systole exit 0", r.returncode == 0, r.stderr)
check("systole value", "1.320649e-4" in r.stdout)

r = run("--json", "systole", "--file", FIG8, "--theta0", "auto")
j = json.loads(r.stdout)
check("systole json", abs(j["s0_simplified"]["value"] - 1.32e-4) < 1.32e-6)

r = run("systole", "--file", FIG8, "--theta0", "1.2")
check("theta0 above measured minimum fails", r.returncode == 1)

r = run("--json", "bounds", "--m1", "2", "--m2", "2", "--theta0", "1.0471975512")
j = json.loads(r.stdout)
check("bounds json N_simplified", abs(j["N_simplified"]["log10"] - 19.5999) < 1e-3)
check("bounds json validity flag", j["N_simplified_valid"] is True)
check("bounds desc strings", all("desc" in j[k] for k in ("l0", "f", "N_exact")))

r = run("--json", "bounds", "--m1", "1", "--m2", "1", "--theta0", "1.0")
check("bounds m=2 flags simplified", json.loads(r.stdout)["N_simplified_valid"] is False)

r = run("--json", "cusp", FIG8)
j = json.loads(r.stdout)
check("cusp json", len(j) == 1 and j[0]["triangles"] == 8 and j[0]["shortest"] == 1.0)
check("cusp area", abs(j[0]["area"] - 2 * 3 ** 0.5) < 1e-9)

r = run("thickness", FIG8, "--theta0", "1.0")
check("thickness ok", r.returncode == 0 and "thick" in r.stdout)

r = run("moves", "list", FIG8)
check("moves list", r.returncode == 0 and len(r.stdout.splitlines()) == 6)

seq = json.dumps({"moves": [{"kind": "2-3", "face": [0, 0]}]})
r = run("moves", "apply", FIG8, "--move", seq)
check("moves apply", r.returncode == 0 and "tetrahedra 3" in r.stdout)

r = run("moves", "apply", FIG8, "--move", json.dumps({"moves": [{"kind": "3-2", "edge": [0, 0, 1]}]}))
check("inapplicable move fails", r.returncode == 1)

# search connect: 1-move path to the expansion written by moves apply.
exp_path = os.path.join(os.environ.get("TMPDIR", "/tmp"), "fig8_expanded.tri")
with open(exp_path, "w") as f:
    f.write(run("moves", "apply", FIG8, "--move", seq).stdout)
r = run("--json", "search", "connect", FIG8, exp_path, "--max-moves", "4")
j = json.loads(r.stdout)
check("search connect", r.returncode == 0 and j["status"] == "found"
      and len(j["sequence"]["moves"]) == 1)

r = run("search", "connect", FIG8, SIB, "--max-moves", "2")
check("search negative exit 2", r.returncode == 2)

r = run("search", "connect", FIG8, SIB, "--max-moves", "8", "--max-states", "5")
check("search cap exit 3", r.returncode == 3)

r = run("search", "sphere", FIG8, "--radius", "2")
check("search sphere", r.returncode == 0 and r.stdout.splitlines()[0] == "0: 1")

r = run("canon", "/nonexistent.tri")
check("missing file exit 1", r.returncode == 1 and "error" in r.stderr)

r = run("bogus")
check("unknown subcommand exit 1", r.returncode == 1)

sys.exit(1 if failures else 0)
