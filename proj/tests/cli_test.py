"""End-to-end checks of the command-line front end: outputs, exit codes, JSON schema, determinism."""

import json
import subprocess
import sys

import jsonschema

BIN, SCHEMA = sys.argv[1], sys.argv[2]
with open(SCHEMA, encoding="utf-8") as fh:
    schema = json.load(fh)

failures = 0


def run(*args):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout


def report(*args):
    code, out = run(*args, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    code2, out2 = run(*args, "--json")
    check(code == code2 and out == out2, f"byte-identical reports for {args}")
    return code, doc


def check(cond, what):
    global failures
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures += 1


code, doc = report("parse", "dt*t")
check(code == 0 and doc["result"]["normal_form"] == "t*dt + 1", "parse dt*t")
code, doc = report("parse", "t^2*dt + 1")
check(doc["result"]["normal_form"] == "t^2*dt + 1", "parse t^2*dt + 1")
code, doc = report("parse", "dt**t")
check(code == 2 and doc["result"] is None and "position" in doc["diagnostics"][0], "parse error exit 2")

code, doc = report("mul", "dt", "t")
check(doc["result"]["product"] == "t*dt + 1", "mul")

code, doc = report("stationary-phase", "t^2*dt + 1")
r = doc["result"]
check(code == 0 and r["ledger"] == {"dhat": "2", "sum_m": "2", "nu_inf": "0", "ok": True}, "ledger 2 = 2 + 0")
part = r["partition"]
check((part["below_one"], part["equal_one"], part["above_one"]) == ("2", "0", "0") and part["ok"], "partition (2,0,0)")

code, doc = report("microlocalize", "t - 3", "--point", "3")
m = doc["result"]["module"]
check(m["dimension"] == "1" and m["connection"] == [["3*eta^2"]], "Dirac connection 3*eta^2")

code, doc = report("analyze", "(t^2+1)*dt - 1")
check(code == 3 and doc["diagnostics"][0].startswith("FieldExtensionRequired"), "analyze needs a field extension")

code, doc = report("stationary-phase", "dt^2 - t", "--certificate", "--depth", "8")
cert = doc["result"]["certificate"]
check(cert["residual_zero"] and cert["A_germ"] == [["eta^4"]] and cert["B"] == [["1"]], "Airy certificate")

code, doc = report("ramify", "t^2*dt + 1", "--q", "2")
check(doc["result"]["ramified_slopes_at_zero"] == [{"slope": "2", "multiplicity": "1"}], "ramified slope 2")

code, doc = report("divide", "t^2", "t - deta", "--flavor", "0")
check(code == 2, "divide rejects mixed variables")
code, doc = report("divide", "dt^2 - t", "t - 1", "--flavor", "1", "--depth", "6", "--zprec", "8")
check(code == 0 and doc["result"]["m"] == "1", "divide at a finite point")
code, doc = report("divide", "dt^2", "dt^2 - t", "--flavor", "inf", "--depth", "6", "--zprec", "8")
check(code == 0 and doc["diagnostics"], "divide at infinity with normalization")
code, doc = report("divide", "t", "t*dt", "--flavor", "inf0", "--depth", "6", "--zprec", "8")
check(code == 0, "divide in (inf,0)")

code, doc = report("fourier", "t*dt")
check(doc["result"]["fourier"] == "-eta*deta - 1", "formal Fourier")
code, doc = report("fourier", "t*dt", "--padic", "3")
check(doc["result"]["fourier"] == "-eta*deta - 1", "p-adic Fourier")

code, doc = report("padic", "--p", "3", "check", "t*dt - 1")
r = doc["result"]
check(code == 0 and r["ok"] and r["delta"] == "1" and r["q"] == "-eta" and r["unit"], "p-adic check t*dt - 1")
code, doc = report("padic", "--p", "3", "check", "t*dt - 1/3")
check(code == 3 and doc["diagnostics"][0].startswith("NotDominant"), "p-adic check rejects |lambda| > 1")
code, doc = report("padic", "--p", "3", "divide", "t^2", "t - 1/3*deta")
check(code == 2, "p-adic divide parse error")
code, doc = report("padic", "--p", "3", "divide", "t^2", "t")
check(code == 0 and doc["result"]["certificate"]["pass"], "p-adic divide certificate")

code, _ = run("microlocalize", "t*dt", "--point", "0", "--depth", "1", "--zprec", "1")
check(code in (0, 4), "tiny precision handled")

print(f"{failures} failure(s)")
sys.exit(1 if failures else 0)
